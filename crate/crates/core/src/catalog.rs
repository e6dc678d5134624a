//! The curve `C` and the finite ledger of action classes that may occupy
//! symbol slots.
//!
//! Actions on `k(C)`, `k(C×ℙ¹)` and `J(C)` are opaque labels. The relations
//! only consume their group shape, flags, and the identifications declared
//! by the rules, so nothing here is ever synthesized: a missing rule is a
//! [`CatalogError::Incomplete`] error.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupDesc, GroupError, GroupShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog incomplete: missing {rule} for {detail}")]
    Incomplete { rule: &'static str, detail: String },
    #[error("ambiguous {rule} for {detail}")]
    Ambiguous { rule: &'static str, detail: String },
    #[error("invalid catalog: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("unknown action label `{0}`")]
    UnknownLabel(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveProfile {
    pub id: String,
    pub genus: u32,
    #[serde(default)]
    pub hyperelliptic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSpace {
    /// `Y ⟲ k(C)`
    Curve,
    /// `Y ⟲ k(C×ℙ¹)`
    RuledSurface,
    /// `J(C) ⟲ Y`
    Jacobian,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelFlags {
    #[serde(default = "yes")]
    pub faithful: bool,
    #[serde(default)]
    pub trivial: bool,
    #[serde(default)]
    pub from_curve: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub underlying_curve_action: Option<String>,
}

impl Default for LabelFlags {
    fn default() -> Self {
        LabelFlags {
            faithful: true,
            trivial: false,
            from_curve: false,
            underlying_curve_action: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionLabel {
    pub id: String,
    pub space: ActionSpace,
    pub group_shape: GroupShape,
    #[serde(default)]
    pub flags: LabelFlags,
}

/// Target of the action construction for a `Θ₂` term.
///
/// Matches on the curve label and, when given, the shapes of `H` and of
/// `H̄ = ker(b₁−b₂)` and the weight coordinates `(b₁, b₂)` (in either order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InduceRule {
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer_shape: Option<GroupShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_shape: Option<GroupShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[Vec<u64>; 2]>,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JacobianOfCurveRule {
    pub source: String,
    pub target: String,
}

/// Data for `(H, J ⟲ Y) = (H₁, J ⟲ Y/Y₁)` when `g(C) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusOneExtensionRule {
    pub stabilizer_shape: GroupShape,
    pub source: String,
    pub trivial_part: GroupShape,
    pub extension_shape: GroupShape,
    pub target: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRules {
    #[serde(default)]
    pub induce: Vec<InduceRule>,
    #[serde(default)]
    pub jacobian_of_curve: Vec<JacobianOfCurveRule>,
    #[serde(default)]
    pub genus_one_extension: Vec<GenusOneExtensionRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionCatalog {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Default ambient group for this catalog.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDesc>,
    pub curve: CurveProfile,
    #[serde(default)]
    pub labels: Vec<ActionLabel>,
    #[serde(default)]
    pub rules: CatalogRules,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<(), CatalogError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(CatalogError::Invalid(self.violations))
        }
    }
}

impl ActionCatalog {
    pub fn empty(curve: CurveProfile) -> Self {
        ActionCatalog {
            name: None,
            group: None,
            curve,
            labels: Vec::new(),
            rules: CatalogRules::default(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_catalog(self, &self.curve)
    }

    /// Same ledger over a different curve profile.
    pub fn with_curve(&self, curve: CurveProfile) -> Self {
        ActionCatalog {
            curve,
            ..self.clone()
        }
    }

    pub fn label(&self, id: &str) -> Result<&ActionLabel, CatalogError> {
        self.labels
            .iter()
            .find(|l| l.id == id)
            .ok_or_else(|| CatalogError::UnknownLabel(id.to_string()))
    }

    pub fn labels_in(&self, space: ActionSpace) -> impl Iterator<Item = &ActionLabel> {
        self.labels.iter().filter(move |l| l.space == space)
    }

    pub fn genus(&self) -> u32 {
        self.curve.genus
    }

    /// Action of `Y` on `J(C)` induced by a curve action.
    pub fn jacobian_of_curve_action(&self, curve_label: &str) -> Result<&ActionLabel, CatalogError> {
        let source = self.label(curve_label)?;
        if source.space != ActionSpace::Curve {
            return Err(CatalogError::Invalid(vec![format!(
                "`{curve_label}` is not a curve action"
            )]));
        }
        let rule = self
            .rules
            .jacobian_of_curve
            .iter()
            .find(|r| r.source == curve_label)
            .ok_or_else(|| CatalogError::Incomplete {
                rule: "JacobianOfCurveRule",
                detail: format!("curve action `{curve_label}`"),
            })?;
        self.label(&rule.target)
    }

    /// Ruled-surface label declared for the action construction on
    /// `(H, Y ⟲ K, (b₁, b₂))` with `H̄ = ker(b₁−b₂)`.
    pub fn induced_surface_action(
        &self,
        curve_label: &str,
        stabilizer: &FiniteGroup,
        kernel: &FiniteGroup,
        weights: (&[u64], &[u64]),
    ) -> Result<&ActionLabel, CatalogError> {
        let mut targets = BTreeSet::new();
        for rule in self.rules.induce.iter().filter(|r| r.source == curve_label) {
            if let Some(shape) = &rule.stabilizer_shape {
                if !shape.matches(stabilizer)? {
                    continue;
                }
            }
            if let Some(shape) = &rule.kernel_shape {
                if !shape.matches(kernel)? {
                    continue;
                }
            }
            if let Some([w1, w2]) = &rule.weights {
                let direct = w1.as_slice() == weights.0 && w2.as_slice() == weights.1;
                let swapped = w1.as_slice() == weights.1 && w2.as_slice() == weights.0;
                if !(direct || swapped) {
                    continue;
                }
            }
            targets.insert(rule.target.as_str());
        }
        let detail = || {
            format!(
                "curve action `{curve_label}`, |H| = {}, |ker(b1-b2)| = {}, weights ({:?}, {:?})",
                stabilizer.order(),
                kernel.order(),
                weights.0,
                weights.1
            )
        };
        match targets.len() {
            0 => Err(CatalogError::Incomplete {
                rule: "InduceRule",
                detail: detail(),
            }),
            1 => self.label(targets.into_iter().next().expect("one target")),
            _ => Err(CatalogError::Ambiguous {
                rule: "InduceRule",
                detail: detail(),
            }),
        }
    }
}

/// Checks every label and rule invariant against the given curve profile.
pub fn validate_catalog(catalog: &ActionCatalog, curve: &CurveProfile) -> ValidationReport {
    let mut v = Vec::new();
    if curve.genus < 1 {
        v.push(format!("curve `{}` has genus {} < 1", curve.id, curve.genus));
    }
    if curve.hyperelliptic && curve.genus < 2 {
        v.push(format!(
            "curve `{}` is flagged hyperelliptic but has genus {}",
            curve.id, curve.genus
        ));
    }

    let mut by_id: HashMap<&str, &ActionLabel> = HashMap::new();
    for label in &catalog.labels {
        if by_id.insert(label.id.as_str(), label).is_some() {
            v.push(format!("duplicate label id `{}`", label.id));
        }
    }
    let shape_order = |l: &ActionLabel| l.group_shape.order().ok();

    for label in &catalog.labels {
        let id = &label.id;
        if let Err(e) = label.group_shape.order() {
            v.push(format!("label `{id}` has an invalid group shape: {e}"));
            continue;
        }
        let nontrivial_group = !label.group_shape.is_trivial();
        if label.flags.trivial && label.flags.faithful && nontrivial_group {
            v.push(format!(
                "label `{id}` is flagged both trivial and faithful for a nontrivial group"
            ));
        }
        match label.space {
            ActionSpace::Curve | ActionSpace::RuledSurface => {
                if !label.flags.faithful {
                    v.push(format!("label `{id}` acts on a function field and must be faithful"));
                }
                if label.flags.from_curve || label.flags.underlying_curve_action.is_some() {
                    v.push(format!(
                        "label `{id}`: from_curve/underlying_curve_action apply to jacobian labels only"
                    ));
                }
            }
            ActionSpace::Jacobian => {
                if let Some(under) = &label.flags.underlying_curve_action {
                    match by_id.get(under.as_str()) {
                        None => v.push(format!(
                            "label `{id}` references missing curve action `{under}`"
                        )),
                        Some(u) if u.space != ActionSpace::Curve => v.push(format!(
                            "label `{id}`: underlying action `{under}` is not a curve action"
                        )),
                        Some(u) if shape_order(u) != shape_order(label) => v.push(format!(
                            "label `{id}`: underlying action `{under}` has a different group"
                        )),
                        Some(_) => {}
                    }
                }
                if curve.genus == 1 {
                    if label.flags.underlying_curve_action.is_none() {
                        v.push(format!(
                            "jacobian label `{id}` on a genus-1 curve must come from a curve action"
                        ));
                    }
                    if !label.flags.from_curve {
                        v.push(format!(
                            "jacobian label `{id}` on a genus-1 curve must be flagged from_curve"
                        ));
                    }
                } else if !label.flags.faithful {
                    v.push(format!(
                        "jacobian label `{id}` must be faithful when g(C) >= 2"
                    ));
                }
                if label.flags.from_curve {
                    let has_rule = catalog.rules.jacobian_of_curve.iter().any(|r| r.target == *id);
                    if !has_rule && label.flags.underlying_curve_action.is_none() {
                        v.push(format!(
                            "jacobian label `{id}` is flagged from_curve but no curve action maps to it"
                        ));
                    }
                }
            }
        }
    }

    let expect_space = |v: &mut Vec<String>, id: &str, space: ActionSpace, what: &str| -> Option<&ActionLabel> {
        match by_id.get(id) {
            None => {
                v.push(format!("{what} references missing label `{id}`"));
                None
            }
            Some(l) if l.space != space => {
                v.push(format!("{what}: label `{id}` is not a {space:?} label"));
                None
            }
            Some(l) => Some(l),
        }
    };

    for rule in &catalog.rules.induce {
        let what = format!("InduceRule {} -> {}", rule.source, rule.target);
        let source = expect_space(&mut v, &rule.source, ActionSpace::Curve, &what);
        let target = expect_space(&mut v, &rule.target, ActionSpace::RuledSurface, &what);
        if let (Some(s), Some(t), Some(hs), Some(ks)) =
            (source, target, &rule.stabilizer_shape, &rule.kernel_shape)
        {
            match (s.group_shape.order(), t.group_shape.order(), hs.order(), ks.order()) {
                (Ok(y), Ok(ybar), Ok(h), Ok(k)) => {
                    if k == 0 || h % k != 0 {
                        v.push(format!("{what}: |ker| = {k} does not divide |H| = {h}"));
                    } else if ybar != y * (h / k) {
                        v.push(format!(
                            "{what}: target group has order {ybar}, construction gives {}",
                            y * (h / k)
                        ));
                    }
                }
                _ => v.push(format!("{what}: invalid shapes")),
            }
        }
        if let Some(ks) = &rule.kernel_shape {
            if ks.is_trivial() || !ks.is_cyclic().unwrap_or(false) {
                v.push(format!("{what}: kernel shape must be nontrivial cyclic"));
            }
        }
    }

    let mut jac_sources = BTreeSet::new();
    for rule in &catalog.rules.jacobian_of_curve {
        let what = format!("JacobianOfCurveRule {} -> {}", rule.source, rule.target);
        if !jac_sources.insert(rule.source.as_str()) {
            v.push(format!("{what}: more than one rule for `{}`", rule.source));
        }
        let source = expect_space(&mut v, &rule.source, ActionSpace::Curve, &what);
        let target = expect_space(&mut v, &rule.target, ActionSpace::Jacobian, &what);
        if let (Some(s), Some(t)) = (source, target) {
            if !t.flags.from_curve {
                v.push(format!("{what}: target must be flagged from_curve"));
            }
            if shape_order(s) != shape_order(t) {
                v.push(format!("{what}: source and target act through different groups"));
            }
            if let Some(under) = &t.flags.underlying_curve_action {
                if under != &rule.source {
                    v.push(format!(
                        "{what}: target declares underlying action `{under}` instead"
                    ));
                }
            }
        }
    }

    for rule in &catalog.rules.genus_one_extension {
        let what = format!("GenusOneExtensionRule {} -> {}", rule.source, rule.target);
        if curve.genus != 1 {
            v.push(format!("{what}: only applies when g(C) = 1"));
        }
        let source = expect_space(&mut v, &rule.source, ActionSpace::Jacobian, &what);
        let target = expect_space(&mut v, &rule.target, ActionSpace::Jacobian, &what);
        let orders = (
            rule.stabilizer_shape.order(),
            rule.trivial_part.order(),
            rule.extension_shape.order(),
        );
        match orders {
            (Ok(h), Ok(y1), Ok(h1)) => {
                if h1 != h * y1 {
                    v.push(format!("{what}: |H1| = {h1} but |H|*|Y1| = {}", h * y1));
                }
                if let (Some(s), Some(t)) = (source, target) {
                    match (s.group_shape.order(), t.group_shape.order()) {
                        (Ok(y), Ok(yq)) if y1 == 0 || y % y1 != 0 || yq != y / y1 => v.push(format!(
                            "{what}: target group order {yq} is not |Y|/|Y1| = {y}/{y1}"
                        )),
                        (Ok(_), Ok(_)) => {}
                        _ => v.push(format!("{what}: invalid shapes")),
                    }
                    if s.flags.trivial && s.group_shape.order().ok() != Some(y1) {
                        v.push(format!(
                            "{what}: `{}` acts trivially, so Y1 must be all of Y",
                            s.id
                        ));
                    }
                }
            }
            _ => v.push(format!("{what}: invalid shapes")),
        }
    }

    // every label reachable through rules or references must exist
    let mut missing = BTreeSet::new();
    let mut edges: Vec<&str> = Vec::new();
    for r in &catalog.rules.induce {
        edges.extend([r.source.as_str(), r.target.as_str()]);
    }
    for r in &catalog.rules.jacobian_of_curve {
        edges.extend([r.source.as_str(), r.target.as_str()]);
    }
    for r in &catalog.rules.genus_one_extension {
        edges.extend([r.source.as_str(), r.target.as_str()]);
    }
    for l in &catalog.labels {
        if let Some(u) = &l.flags.underlying_curve_action {
            edges.push(u.as_str());
        }
    }
    for id in edges {
        if !by_id.contains_key(id) {
            missing.insert(id);
        }
    }
    if !missing.is_empty() {
        v.push(format!(
            "catalog is not closed; unreachable labels: {}",
            missing.into_iter().collect::<Vec<_>>().join(", ")
        ));
    }

    v.dedup();
    ValidationReport { violations: v }
}
