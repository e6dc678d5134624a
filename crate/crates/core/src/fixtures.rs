//! Groups, catalogs and models shipped with the crate, addressable by name.

use crate::catalog::ActionCatalog;
use crate::group::{FiniteGroup, GroupDesc, GroupError};
use crate::model::{BlowupCenter, ModelDescription};

pub const CATALOG_NAMES: [&str; 4] = [
    "hyperelliptic-Z2",
    "nonhyperelliptic-Z2-exotic",
    "elliptic-Z2",
    "Z3-basic",
];

pub const MODEL_NAMES: [&str; 7] = [
    "involution-SxP1",
    "three-nodal-cubic",
    "dp6-fibration",
    "quadric-bundle",
    "conic-bundle-exotic",
    "elliptic-fixed-curve",
    "elliptic-empty",
];

pub const CENTER_NAMES: [&str; 5] = [
    "elliptic-bullet-1",
    "elliptic-bullet-2",
    "elliptic-bullet-3",
    "elliptic-bullet-4",
    "elliptic-bullet-5",
];

pub const GROUP_NAMES: [&str; 5] = ["trivial", "Z2", "Z3", "Z2xZ2", "S3"];

pub fn catalog_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "hyperelliptic-Z2" => include_str!("../fixtures/catalogs/hyperelliptic-Z2.json"),
        "nonhyperelliptic-Z2-exotic" => {
            include_str!("../fixtures/catalogs/nonhyperelliptic-Z2-exotic.json")
        }
        "elliptic-Z2" => include_str!("../fixtures/catalogs/elliptic-Z2.json"),
        "Z3-basic" => include_str!("../fixtures/catalogs/Z3-basic.json"),
        _ => return None,
    })
}

pub fn group_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "trivial" => include_str!("../fixtures/groups/trivial.json"),
        "Z2" => include_str!("../fixtures/groups/Z2.json"),
        "Z3" => include_str!("../fixtures/groups/Z3.json"),
        "Z2xZ2" => include_str!("../fixtures/groups/Z2xZ2.json"),
        "S3" => include_str!("../fixtures/groups/S3.json"),
        _ => return None,
    })
}

pub fn model_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "involution-SxP1" => include_str!("../fixtures/models/involution-SxP1.json"),
        "three-nodal-cubic" => include_str!("../fixtures/models/three-nodal-cubic.json"),
        "dp6-fibration" => include_str!("../fixtures/models/dp6-fibration.json"),
        "quadric-bundle" => include_str!("../fixtures/models/quadric-bundle.json"),
        "conic-bundle-exotic" => include_str!("../fixtures/models/conic-bundle-exotic.json"),
        "elliptic-fixed-curve" => include_str!("../fixtures/models/elliptic-fixed-curve.json"),
        "elliptic-empty" => include_str!("../fixtures/models/elliptic-empty.json"),
        _ => return None,
    })
}

pub fn center_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "elliptic-bullet-1" => include_str!("../fixtures/centers/elliptic-bullet-1.json"),
        "elliptic-bullet-2" => include_str!("../fixtures/centers/elliptic-bullet-2.json"),
        "elliptic-bullet-3" => include_str!("../fixtures/centers/elliptic-bullet-3.json"),
        "elliptic-bullet-4" => include_str!("../fixtures/centers/elliptic-bullet-4.json"),
        "elliptic-bullet-5" => include_str!("../fixtures/centers/elliptic-bullet-5.json"),
        _ => return None,
    })
}

pub fn model(name: &str) -> Option<ModelDescription> {
    let json = model_json(name)?;
    Some(serde_json::from_str(json).expect("shipped model parses"))
}

pub fn center(name: &str) -> Option<BlowupCenter> {
    let json = center_json(name)?;
    Some(serde_json::from_str(json).expect("shipped center parses"))
}

pub fn catalog(name: &str) -> Option<ActionCatalog> {
    let json = catalog_json(name)?;
    Some(serde_json::from_str(json).expect("shipped catalog parses"))
}

pub fn group_desc(name: &str) -> Option<GroupDesc> {
    let json = group_json(name)?;
    Some(serde_json::from_str(json).expect("shipped group parses"))
}

pub fn group(name: &str) -> Option<Result<FiniteGroup, GroupError>> {
    group_desc(name).map(|d| FiniteGroup::build(&d))
}
