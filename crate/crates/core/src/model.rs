//! Threefold models given by their `C`-related strata and Jacobian factors:
//! their classes, the three blow-up cases, and the invariant `I`.

use serde::{Deserialize, Serialize};

use crate::catalog::{ActionCatalog, CurveProfile};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::{dual_generated_check, Character, FiniteGroup, GroupDesc, Subgroup};
use crate::relations::{filter_project, phi_g, FilterSpec, Presentation};
use crate::symbol::{BurnsideClass, Context, Symbol};

/// `"G"`, `"1"`, or a list of generating elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupRef {
    Named(String),
    Generators(Vec<usize>),
}

impl SubgroupRef {
    pub fn whole() -> Self {
        SubgroupRef::Named("G".into())
    }

    pub fn trivial() -> Self {
        SubgroupRef::Named("1".into())
    }

    pub fn resolve(&self, g: &FiniteGroup) -> Result<Subgroup> {
        match self {
            SubgroupRef::Named(n) if n == "G" => Ok(Subgroup::whole(g)),
            SubgroupRef::Named(n) if n == "1" => Ok(Subgroup::trivial()),
            SubgroupRef::Named(n) => Err(Error::Model(format!(
                "unknown subgroup `{n}`; use \"G\", \"1\" or a list of generators"
            ))),
            SubgroupRef::Generators(gens) => Ok(Subgroup::generated(g, gens)?),
        }
    }

    /// Shortest description: `G`, `1`, or a greedy generating set.
    pub fn of(g: &FiniteGroup, h: &Subgroup) -> Self {
        if h.is_whole(g) {
            return SubgroupRef::whole();
        }
        if h.is_trivial() {
            return SubgroupRef::trivial();
        }
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial();
        for &x in h.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = Subgroup::generated(g, &gens).expect("elements of a subgroup");
            }
        }
        SubgroupRef::Generators(gens)
    }
}

/// A character by its coordinates on the invariant-factor basis of `H`; a
/// bare integer is the single coordinate of a cyclic `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightRef {
    Cyclic(u64),
    Coords(Vec<u64>),
}

impl WeightRef {
    pub fn resolve(&self, ctx: &Context, h: &Subgroup) -> Result<Character> {
        match self {
            WeightRef::Cyclic(c) => ctx.character(h, &[*c]),
            WeightRef::Coords(v) => ctx.character(h, v),
        }
    }

    pub fn of(c: &Character) -> Self {
        match c.coords() {
            [x] => WeightRef::Cyclic(*x),
            v => WeightRef::Coords(v.to_vec()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumKind {
    FixedCurve,
    RuledDivisor,
}

/// One orbit of subvarieties birational to `C` or `C×ℙ¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDatum {
    pub kind: StratumKind,
    pub stabilizer: SubgroupRef,
    /// Label of the residual action on `k(F)` or `k(D)`.
    pub residual: String,
    /// Preimage of the residual group; defaults to the stabilizer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_group: Option<SubgroupRef>,
    pub weights: Vec<WeightRef>,
}

/// One orbit of factors of the intermediate Jacobian isomorphic to `J(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JacobianFactorDatum {
    pub stabilizer: SubgroupRef,
    pub residual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_group: Option<SubgroupRef>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counts {
    pub i1: u64,
    pub i2: u64,
    pub i3: u64,
}

impl Counts {
    pub fn new(i1: u64, i2: u64, i3: u64) -> Self {
        Counts { i1, i2, i3 }
    }

    /// Parses `i1,i2,i3`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse("counts", format!("`{text}`: {e}")))?;
        match parts[..] {
            [i1, i2, i3] => Ok(Counts { i1, i2, i3 }),
            _ => Err(Error::parse("counts", format!("`{text}`: expected three integers"))),
        }
    }

    /// `I = −I₁ − 2I₂ + I₃`
    pub fn invariant(&self) -> Result<i64> {
        let to_i = |x: u64| i64::try_from(x).map_err(|_| Error::Overflow("count".into()));
        let (i1, i2, i3) = (to_i(self.i1)?, to_i(self.i2)?, to_i(self.i3)?);
        i2.checked_mul(2)
            .and_then(|d| i3.checked_sub(i1)?.checked_sub(d))
            .ok_or_else(|| Error::Overflow("invariant I".into()))
    }
}

pub fn invariant_i(i1: u64, i2: u64, i3: u64) -> Result<i64> {
    Counts::new(i1, i2, i3).invariant()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Named(String),
    Desc(GroupDesc),
}

impl GroupRef {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Named(n) => fixtures::group(n)
                .ok_or_else(|| Error::Model(format!("unknown group fixture `{n}`")))?
                .map_err(Into::into),
            GroupRef::Desc(d) => Ok(FiniteGroup::build(d)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalogRef {
    Named(String),
    Inline(Box<ActionCatalog>),
}

impl CatalogRef {
    pub fn load(&self) -> Result<ActionCatalog> {
        match self {
            CatalogRef::Named(n) => {
                fixtures::catalog(n).ok_or_else(|| Error::Model(format!("unknown catalog fixture `{n}`")))
            }
            CatalogRef::Inline(c) => Ok((**c).clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDescription {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Defaults to the catalog's group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupRef>,
    /// Replaces the catalog's curve profile when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveProfile>,
    pub catalog: CatalogRef,
    #[serde(default)]
    pub strata: Vec<StratumDatum>,
    #[serde(default)]
    pub jacobian_factors: Vec<JacobianFactorDatum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
}

impl ModelDescription {
    pub fn empty(catalog: CatalogRef) -> Self {
        ModelDescription {
            name: None,
            description: None,
            group: None,
            curve: None,
            catalog,
            strata: Vec::new(),
            jacobian_factors: Vec::new(),
            counts: None,
        }
    }

    pub fn load_catalog(&self) -> Result<ActionCatalog> {
        let catalog = self.catalog.load()?;
        Ok(match &self.curve {
            Some(curve) => catalog.with_curve(curve.clone()),
            None => catalog,
        })
    }

    pub fn build_group(&self, catalog: &ActionCatalog) -> Result<FiniteGroup> {
        match (&self.group, &catalog.group) {
            (Some(g), _) => g.build(),
            (None, Some(d)) => Ok(FiniteGroup::build(d)?),
            (None, None) => Err(Error::Model("no group given and the catalog has no default".into())),
        }
    }

    /// Group and catalog of this model, validated together.
    pub fn context(&self) -> Result<Context> {
        let catalog = self.load_catalog()?;
        let group = self.build_group(&catalog)?;
        Context::new(group, catalog)
    }
}

impl StratumDatum {
    /// The symbol in the stratum's own coordinates, not canonicalized.
    pub fn raw_symbol(&self, ctx: &Context) -> Result<Symbol> {
        let g = ctx.group();
        let h = self.stabilizer.resolve(g)?;
        let y = match &self.residual_group {
            Some(r) => r.resolve(g)?,
            None => h.clone(),
        };
        let action = self.residual.clone();
        let weights = self
            .weights
            .iter()
            .map(|w| w.resolve(ctx, &h))
            .collect::<Result<Vec<_>>>()?;
        match (self.kind, &weights[..]) {
            (StratumKind::FixedCurve, [b1, b2]) => Ok(Symbol::Curve {
                weights: [b1.clone(), b2.clone()],
                h,
                y,
                action,
            }),
            (StratumKind::RuledDivisor, [b]) => Ok(Symbol::Surface {
                weight: b.clone(),
                h,
                y,
                action,
            }),
            (StratumKind::FixedCurve, _) => Err(Error::Model("a fixed curve needs two weights".into())),
            (StratumKind::RuledDivisor, _) => Err(Error::Model("a ruled divisor needs one weight".into())),
        }
    }

    pub fn symbol(&self, ctx: &Context) -> Result<Symbol> {
        ctx.canonicalize(&self.raw_symbol(ctx)?)
    }

    /// Datum recording a curve or surface symbol.
    pub fn of_symbol(ctx: &Context, s: &Symbol) -> Result<Self> {
        let g = ctx.group();
        let kind = match s {
            Symbol::Curve { .. } => StratumKind::FixedCurve,
            Symbol::Surface { .. } => StratumKind::RuledDivisor,
            Symbol::Jacobian { .. } => {
                return Err(Error::Model("a jacobian symbol is not a stratum".into()))
            }
        };
        Ok(StratumDatum {
            kind,
            stabilizer: SubgroupRef::of(g, s.stabilizer()),
            residual: s.action().to_string(),
            residual_group: (!s.has_trivial_residual()).then(|| SubgroupRef::of(g, s.residual())),
            weights: s.weights().into_iter().map(WeightRef::of).collect(),
        })
    }
}

impl JacobianFactorDatum {
    pub fn raw_symbol(&self, ctx: &Context) -> Result<Symbol> {
        let g = ctx.group();
        let h = self.stabilizer.resolve(g)?;
        let y = match &self.residual_group {
            Some(r) => r.resolve(g)?,
            None => h.clone(),
        };
        Ok(Symbol::Jacobian {
            h,
            y,
            action: self.residual.clone(),
        })
    }

    pub fn symbol(&self, ctx: &Context) -> Result<Symbol> {
        ctx.canonicalize(&self.raw_symbol(ctx)?)
    }

    pub fn of_symbol(ctx: &Context, s: &Symbol) -> Result<Self> {
        let g = ctx.group();
        match s {
            Symbol::Jacobian { h, y, action } => Ok(JacobianFactorDatum {
                stabilizer: SubgroupRef::of(g, h),
                residual: action.clone(),
                residual_group: (h != y).then(|| SubgroupRef::of(g, y)),
            }),
            _ => Err(Error::Model("not a jacobian symbol".into())),
        }
    }
}

fn applicable_to_counts(ctx: &Context) -> Result<()> {
    if !ctx.group().is_abelian() {
        return Err(Error::NotApplicable("the invariant I needs an abelian group".into()));
    }
    if ctx.genus() < 2 {
        return Err(Error::NotApplicable("the invariant I needs a curve of genus at least 2".into()));
    }
    Ok(())
}

/// Checks every datum and, when applicable, the declared counts.
pub fn validate_model(ctx: &Context, m: &ModelDescription) -> Result<()> {
    for (i, s) in m.strata.iter().enumerate() {
        s.symbol(ctx)
            .map_err(|e| Error::Model(format!("stratum {i}: {e}")))?;
    }
    for (i, j) in m.jacobian_factors.iter().enumerate() {
        j.symbol(ctx)
            .map_err(|e| Error::Model(format!("jacobian factor {i}: {e}")))?;
    }
    if let Some(declared) = m.counts {
        if applicable_to_counts(ctx).is_ok() {
            let derived = derived_counts(ctx, m)?;
            if declared != derived {
                return Err(Error::Model(format!(
                    "declared counts ({},{},{}) disagree with the data ({},{},{})",
                    declared.i1, declared.i2, declared.i3, derived.i1, derived.i2, derived.i3
                )));
            }
        }
    }
    Ok(())
}

/// Sum of the symbols of all strata and Jacobian factors.
pub fn class_of_action(ctx: &Context, m: &ModelDescription) -> Result<BurnsideClass> {
    let mut class = BurnsideClass::zero();
    for s in &m.strata {
        class.add_term(s.symbol(ctx)?, 1);
    }
    for j in &m.jacobian_factors {
        class.add_term(j.symbol(ctx)?, 1);
    }
    Ok(class)
}

fn derived_counts(ctx: &Context, m: &ModelDescription) -> Result<Counts> {
    let g = ctx.group();
    let mut counts = Counts::default();
    for s in &m.strata {
        if s.stabilizer.resolve(g)?.is_whole(g) {
            match s.kind {
                StratumKind::FixedCurve => counts.i1 += 1,
                StratumKind::RuledDivisor => counts.i2 += 1,
            }
        }
    }
    for j in &m.jacobian_factors {
        // with H = G the residual group is trivial
        if j.stabilizer.resolve(g)?.is_whole(g) {
            counts.i3 += 1;
        }
    }
    Ok(counts)
}

/// `(I₁, I₂, I₃)`: declared counts if present, otherwise read off the data.
pub fn invariant_counts(ctx: &Context, m: &ModelDescription) -> Result<Counts> {
    applicable_to_counts(ctx)?;
    match m.counts {
        Some(c) => Ok(c),
        None => derived_counts(ctx, m),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupCenter {
    /// 1: trivial generic stabilizer; 2: weights `(0, b)`; 3: a fixed curve
    /// with nontrivial weights.
    pub case: u8,
    /// Case 3: index of the fixed-curve stratum being blown up.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratum: Option<usize>,
    /// Case 2: generic stabilizer `H`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<SubgroupRef>,
    /// Cases 1 and 2: preimage of the group acting on the center.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_group: Option<SubgroupRef>,
    /// Cases 1 and 2: label of the residual action on `k(C)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_action: Option<String>,
    /// Case 2: the nonzero weight `b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightRef>,
}

impl BlowupCenter {
    pub fn free_curve(residual_group: SubgroupRef, curve_action: &str) -> Self {
        BlowupCenter {
            case: 1,
            stratum: None,
            stabilizer: None,
            residual_group: Some(residual_group),
            curve_action: Some(curve_action.into()),
            weight: None,
        }
    }

    pub fn curve_in_divisor(
        stabilizer: SubgroupRef,
        residual_group: SubgroupRef,
        curve_action: &str,
        weight: WeightRef,
    ) -> Self {
        BlowupCenter {
            case: 2,
            stratum: None,
            stabilizer: Some(stabilizer),
            residual_group: Some(residual_group),
            curve_action: Some(curve_action.into()),
            weight: Some(weight),
        }
    }

    pub fn fixed_curve(stratum: usize) -> Self {
        BlowupCenter {
            case: 3,
            stratum: Some(stratum),
            stabilizer: None,
            residual_group: None,
            curve_action: None,
            weight: None,
        }
    }
}

/// What a blow-up does to a model: at most one removed stratum and a list
/// of appended data.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupDelta {
    pub removed_stratum: Option<usize>,
    pub strata: Vec<StratumDatum>,
    pub jacobian_factors: Vec<JacobianFactorDatum>,
}

impl BlowupDelta {
    pub fn appended_len(&self) -> usize {
        self.strata.len() + self.jacobian_factors.len()
    }

    /// Applies the delta, optionally skipping one appended datum (strata
    /// first, then Jacobian factors).
    pub fn apply(&self, m: &ModelDescription, skip: Option<usize>) -> ModelDescription {
        let mut out = m.clone();
        out.counts = None;
        if let Some(i) = self.removed_stratum {
            out.strata.remove(i);
        }
        let n = self.strata.len();
        for (i, s) in self.strata.iter().enumerate() {
            if skip != Some(i) {
                out.strata.push(s.clone());
            }
        }
        for (i, j) in self.jacobian_factors.iter().enumerate() {
            if skip != Some(n + i) {
                out.jacobian_factors.push(j.clone());
            }
        }
        out
    }
}

fn center_field<'a, T>(field: &'a Option<T>, name: &str, case: u8) -> Result<&'a T> {
    field
        .as_ref()
        .ok_or_else(|| Error::Center(format!("case {case} needs `{name}`")))
}

/// The data appended (and removed) by blowing up the center.
pub fn blowup_delta(ctx: &Context, m: &ModelDescription, c: &BlowupCenter) -> Result<BlowupDelta> {
    let g = ctx.group();
    match c.case {
        1 => {
            let y = center_field(&c.residual_group, "residual_group", 1)?.resolve(g)?;
            let action = center_field(&c.curve_action, "curve_action", 1)?;
            let label = ctx.jacobian_label_of(action)?;
            let factor = JacobianFactorDatum {
                stabilizer: SubgroupRef::trivial(),
                residual: label.id.clone(),
                residual_group: (!y.is_trivial()).then(|| SubgroupRef::of(g, &y)),
            };
            factor
                .symbol(ctx)
                .map_err(|e| Error::Center(format!("case 1: {e}")))?;
            Ok(BlowupDelta {
                removed_stratum: None,
                strata: Vec::new(),
                jacobian_factors: vec![factor],
            })
        }
        2 => {
            let h_ref = center_field(&c.stabilizer, "stabilizer", 2)?;
            let h = h_ref.resolve(g)?;
            let y = match &c.residual_group {
                Some(r) => r.resolve(g)?,
                None => h.clone(),
            };
            let action = center_field(&c.curve_action, "curve_action", 2)?;
            let b = center_field(&c.weight, "weight", 2)?.resolve(ctx, &h)?;
            let curve = Symbol::Curve {
                h: h.clone(),
                y: y.clone(),
                action: action.clone(),
                weights: [b.clone(), b.neg()],
            };
            ctx.canonicalize(&curve)
                .map_err(|e| Error::Center(format!("case 2: {e}")))?;
            let label = ctx.jacobian_label_of(action)?;
            let residual_group = (y != h).then(|| SubgroupRef::of(g, &y));
            Ok(BlowupDelta {
                removed_stratum: None,
                strata: vec![StratumDatum {
                    kind: StratumKind::FixedCurve,
                    stabilizer: h_ref.clone(),
                    residual: action.clone(),
                    residual_group: residual_group.clone(),
                    weights: vec![WeightRef::of(&b), WeightRef::of(&b.neg())],
                }],
                jacobian_factors: vec![JacobianFactorDatum {
                    stabilizer: h_ref.clone(),
                    residual: label.id.clone(),
                    residual_group,
                }],
            })
        }
        3 => {
            let i = *center_field(&c.stratum, "stratum", 3)?;
            let datum = m
                .strata
                .get(i)
                .ok_or_else(|| Error::Center(format!("no stratum {i}")))?;
            if datum.kind != StratumKind::FixedCurve {
                return Err(Error::Center(format!("stratum {i} is not a fixed curve")));
            }
            let s = datum.raw_symbol(ctx)?;
            ctx.canonicalize(&s)
                .map_err(|e| Error::Center(format!("case 3: {e}")))?;
            let Symbol::Curve { h, y, action, weights: [b1, b2] } = &s else {
                unreachable!("fixed curves give curve symbols")
            };
            let mut strata = Vec::new();
            let weights_of = |a: &Character, b: &Character| vec![WeightRef::of(a), WeightRef::of(b)];
            if b1 != b2 {
                for (a, b) in [(b1, b2.sub(b1)?), (b2, b1.sub(b2)?)] {
                    strata.push(StratumDatum {
                        weights: weights_of(a, &b),
                        ..datum.clone()
                    });
                }
            }
            let d = b1.sub(b2)?;
            if !dual_generated_check(std::slice::from_ref(&d))? {
                let hbar = d.kernel();
                let label = ctx.induced_surface_action(h, y, action, b1, b2)?;
                let restricted = b1.restrict(ctx.structure(&hbar)?)?;
                strata.push(StratumDatum {
                    kind: StratumKind::RuledDivisor,
                    stabilizer: SubgroupRef::of(g, &hbar),
                    residual: label.id.clone(),
                    residual_group: (hbar != *y).then(|| SubgroupRef::of(g, y)),
                    weights: vec![WeightRef::of(&restricted)],
                });
            }
            let label = ctx.jacobian_label_of(action)?;
            Ok(BlowupDelta {
                removed_stratum: Some(i),
                strata,
                jacobian_factors: vec![JacobianFactorDatum {
                    stabilizer: datum.stabilizer.clone(),
                    residual: label.id.clone(),
                    residual_group: datum.residual_group.clone(),
                }],
            })
        }
        other => Err(Error::Center(format!("unknown case {other}"))),
    }
}

pub fn blowup(ctx: &Context, m: &ModelDescription, c: &BlowupCenter) -> Result<ModelDescription> {
    Ok(blowup_delta(ctx, m, c)?.apply(m, None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupCheck {
    pub before: BurnsideClass,
    pub after: BurnsideClass,
    pub delta: BlowupDelta,
    pub equal: bool,
}

pub fn check_blowup(
    ctx: &Context,
    p: &Presentation,
    m: &ModelDescription,
    c: &BlowupCenter,
) -> Result<BlowupCheck> {
    let delta = blowup_delta(ctx, m, c)?;
    let before = class_of_action(ctx, m)?;
    let after = class_of_action(ctx, &delta.apply(m, None))?;
    let equal = p.classes_equal(&before, &after)?;
    Ok(BlowupCheck {
        before,
        after,
        delta,
        equal,
    })
}

pub fn verify_blowup_invariance(
    ctx: &Context,
    p: &Presentation,
    m: &ModelDescription,
    c: &BlowupCenter,
) -> Result<bool> {
    Ok(check_blowup(ctx, p, m, c)?.equal)
}

pub const OBSTRUCTED: &str = "OBSTRUCTED (not linearizable, not projectively linearizable)";
pub const NO_OBSTRUCTION: &str = "NO OBSTRUCTION FROM THIS INVARIANT";
pub const EXOTIC_NOTE: &str = "exotic Jacobian symbol present, class nonzero";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub counts: Counts,
    pub invariant: i64,
    pub phi: i64,
    pub consistent: bool,
    pub verdict: String,
    pub class: String,
    pub filtered_class: String,
    pub notes: Vec<String>,
}

pub fn verdict(ctx: &Context, m: &ModelDescription) -> Result<VerdictReport> {
    validate_model(ctx, m)?;
    let counts = invariant_counts(ctx, m)?;
    let invariant = counts.invariant()?;
    let class = class_of_action(ctx, m)?;
    let filtered = filter_project(ctx, &class, &FilterSpec::MaximalStabilizer);
    let phi = phi_g(ctx, &filtered)?;
    let mut notes = Vec::new();
    let exotic = class.symbols().any(|s| {
        matches!(s, Symbol::Jacobian { .. })
            && ctx.catalog().label(s.action()).is_ok_and(|l| !l.flags.from_curve)
    });
    if exotic {
        let p = Presentation::new(ctx)?;
        if !p.reduce(&class)?.is_zero() {
            notes.push(EXOTIC_NOTE.to_string());
        }
    }
    Ok(VerdictReport {
        model: m.name.clone(),
        counts,
        invariant,
        phi,
        consistent: invariant == phi,
        verdict: if invariant != 0 { OBSTRUCTED } else { NO_OBSTRUCTION }.to_string(),
        class: ctx.render_class(&class),
        filtered_class: ctx.render_class(&filtered),
        notes,
    })
}
