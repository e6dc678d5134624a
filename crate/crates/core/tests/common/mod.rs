//! Helpers shared by the integration test targets.
#![allow(dead_code)]

pub mod oracle;
pub mod scenario;

use burnloc::catalog::ActionCatalog;
use burnloc::fixtures;
use burnloc::group::FiniteGroup;
use burnloc::symbol::Context;

pub fn fixture_context(catalog: &str) -> Context {
    let catalog = fixtures::catalog(catalog).expect("fixture catalog");
    let desc = catalog.group.clone().expect("fixture catalogs name their group");
    let group = FiniteGroup::build(&desc).expect("group builds");
    Context::new(group, catalog).expect("context")
}

pub fn inline_context(group: FiniteGroup, json: &str) -> Context {
    let catalog: ActionCatalog = serde_json::from_str(json).unwrap();
    Context::new(group, catalog).unwrap()
}

pub const S3_CATALOG: &str = r#"{
  "curve": {"id": "C", "genus": 2, "hyperelliptic": true},
  "labels": [
    {"id": "trivC", "space": "curve", "group_shape": [], "flags": {"trivial": true}},
    {"id": "invC", "space": "curve", "group_shape": [2]},
    {"id": "rotC", "space": "curve", "group_shape": [3]},
    {"id": "trivCxP1", "space": "ruled_surface", "group_shape": [], "flags": {"trivial": true}},
    {"id": "trivJ", "space": "jacobian", "group_shape": [],
     "flags": {"trivial": true, "from_curve": true, "underlying_curve_action": "trivC"}},
    {"id": "invJ", "space": "jacobian", "group_shape": [2],
     "flags": {"from_curve": true, "underlying_curve_action": "invC"}},
    {"id": "rotJ", "space": "jacobian", "group_shape": [3],
     "flags": {"from_curve": true, "underlying_curve_action": "rotC"}},
    {"id": "s3J", "space": "jacobian", "group_shape": {"kind": "perm", "degree": 3, "gens": [[2, 1, 3], [2, 3, 1]]},
     "flags": {"from_curve": false}}
  ],
  "rules": {
    "induce": [
      {"source": "trivC", "stabilizer_shape": [2], "kernel_shape": [2], "target": "trivCxP1"},
      {"source": "trivC", "stabilizer_shape": [3], "kernel_shape": [3], "target": "trivCxP1"}
    ],
    "jacobian_of_curve": [
      {"source": "trivC", "target": "trivJ"},
      {"source": "invC", "target": "invJ"},
      {"source": "rotC", "target": "rotJ"}
    ]
  }
}"#;

pub const V4_CATALOG: &str = r#"{
  "curve": {"id": "C", "genus": 2, "hyperelliptic": true},
  "labels": [
    {"id": "trivC", "space": "curve", "group_shape": [], "flags": {"trivial": true}},
    {"id": "invC", "space": "curve", "group_shape": [2]},
    {"id": "trivCxP1", "space": "ruled_surface", "group_shape": [], "flags": {"trivial": true}},
    {"id": "invCxP1", "space": "ruled_surface", "group_shape": [2]},
    {"id": "trivJ", "space": "jacobian", "group_shape": [],
     "flags": {"trivial": true, "from_curve": true, "underlying_curve_action": "trivC"}},
    {"id": "invJ", "space": "jacobian", "group_shape": [2],
     "flags": {"from_curve": true, "underlying_curve_action": "invC"}}
  ],
  "rules": {
    "induce": [
      {"source": "trivC", "stabilizer_shape": [2], "target": "trivCxP1"},
      {"source": "trivC", "stabilizer_shape": [2, 2], "target": "invCxP1"},
      {"source": "invC", "target": "invCxP1"}
    ],
    "jacobian_of_curve": [
      {"source": "trivC", "target": "trivJ"},
      {"source": "invC", "target": "invJ"}
    ]
  }
}"#;

pub fn s3_context() -> Context {
    let g = FiniteGroup::from_permutations(3, &[vec![2, 1, 3], vec![2, 3, 1]]).unwrap();
    inline_context(g, S3_CATALOG)
}

pub fn v4_context() -> Context {
    inline_context(FiniteGroup::abelian(&[2, 2]).unwrap(), V4_CATALOG)
}
