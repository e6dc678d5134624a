//! Instances of the blow-up relations over a group and catalog, the
//! presented group, and the maximal-stabilizer quotient with its map to `ℤ`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{ActionLabel, CatalogError};
use crate::error::{Error, Result};
use crate::group::{dual_generated_check, Character, Subgroup};
use crate::lattice::{GroupStructure, RelationLattice};
use crate::symbol::{BurnsideClass, Context, Symbol, SymbolKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleKind {
    B1,
    B2,
    B3,
    B4,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A class asserted to vanish, with the rule and symbol it was generated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub vector: BurnsideClass,
    pub rule: RuleKind,
    pub source: Symbol,
}

impl Context {
    /// `J(C) ⟲ Y` label induced by a curve action.
    pub fn jacobian_label_of(&self, curve_label: &str) -> Result<&ActionLabel> {
        Ok(self.catalog().jacobian_of_curve_action(curve_label)?)
    }

    /// Ruled-surface label for `Θ₂` of `(H, Y ⟲ K, (b₁, b₂))`.
    pub fn induced_surface_action(
        &self,
        h: &Subgroup,
        y: &Subgroup,
        curve_label: &str,
        b1: &Character,
        b2: &Character,
    ) -> Result<&ActionLabel> {
        let kernel = b1.sub(b2)?.kernel();
        let trivial = Subgroup::trivial();
        let h_group = self.residual_group(&trivial, h)?;
        let k_group = self.residual_group(&trivial, &kernel)?;
        let label = self.catalog().induced_surface_action(
            curve_label,
            &h_group,
            &k_group,
            (b1.coords(), b2.coords()),
        )?;
        let ybar = self.residual_group(&kernel, y)?;
        if !label.group_shape.matches(&ybar)? {
            return Err(CatalogError::Invalid(vec![format!(
                "InduceRule target `{}` has shape {}, but the constructed group has order {}",
                label.id,
                label.group_shape,
                ybar.order()
            )])
            .into());
        }
        Ok(label)
    }

    /// `Θ₁`: zero if `b₁ = b₂`, else `(H, Y, (b₁, b₂−b₁)) + (H, Y, (b₂, b₁−b₂))`.
    pub fn theta1(&self, s: &Symbol) -> Result<BurnsideClass> {
        let Symbol::Curve { h, y, action, weights: [b1, b2] } = s else {
            return Err(Error::NotApplicable("theta1 needs a curve symbol".into()));
        };
        let mut out = BurnsideClass::zero();
        if b1 != b2 {
            out.add_term(self.curve_symbol(h, y, action, b1.clone(), b2.sub(b1)?)?, 1);
            out.add_term(self.curve_symbol(h, y, action, b2.clone(), b1.sub(b2)?)?, 1);
        }
        Ok(out)
    }

    /// `Θ₂`: zero if `⟨b₁−b₂⟩ = H^∨`, else the ruled-surface symbol on
    /// `H̄ = ker(b₁−b₂)` with residual `Y/H̄` and weight `b₁|H̄`.
    pub fn theta2(&self, s: &Symbol) -> Result<BurnsideClass> {
        let Symbol::Curve { h, y, action, weights: [b1, b2] } = s else {
            return Err(Error::NotApplicable("theta2 needs a curve symbol".into()));
        };
        let d = b1.sub(b2)?;
        if dual_generated_check(std::slice::from_ref(&d))? {
            return Ok(BurnsideClass::zero());
        }
        let hbar = d.kernel();
        let restricted = b1.restrict(self.structure(&hbar)?)?;
        let g = self.group();
        if hbar.is_trivial()
            || !hbar.is_cyclic(g)
            || !dual_generated_check(std::slice::from_ref(&restricted))?
        {
            return Err(Error::NotApplicable(format!(
                "ker(b1-b2) is not nontrivial cyclic with b1 generating its dual for {}",
                self.render(s)
            )));
        }
        let label = self.induced_surface_action(h, y, action, b1, b2)?;
        let sym = self.surface_symbol(&hbar, y, &label.id, restricted)?;
        Ok(BurnsideClass::from_symbol(sym))
    }

    /// `(H, J(C) ⟲ Y)` for the curve action of a curve symbol.
    pub fn jacobian_term(&self, s: &Symbol) -> Result<BurnsideClass> {
        let Symbol::Curve { h, y, action, .. } = s else {
            return Err(Error::NotApplicable("jacobian term needs a curve symbol".into()));
        };
        let label = self.jacobian_label_of(action)?;
        Ok(BurnsideClass::from_symbol(self.jacobian_symbol(h, y, &label.id)?))
    }

    /// Target of a genus-one extension rule applied to a jacobian symbol, if
    /// a rule applies.
    pub fn genus_one_extension(&self, s: &Symbol) -> Result<Option<Symbol>> {
        let Symbol::Jacobian { h, y, action } = s else {
            return Ok(None);
        };
        if self.genus() != 1 {
            return Ok(None);
        }
        let g = self.group();
        let trivial = Subgroup::trivial();
        let h_group = self.residual_group(&trivial, h)?;
        for rule in self.catalog().rules.genus_one_extension.iter().filter(|r| &r.source == action) {
            if !rule.stabilizer_shape.matches(&h_group)? {
                continue;
            }
            let target = self.catalog().label(&rule.target)?;
            let mut candidates = Vec::new();
            for y1 in self.lattice().between(h, y) {
                if !y1.is_normal_in(g, y)
                    || !rule.trivial_part.matches(&self.residual_group(h, y1)?)?
                    || !rule.extension_shape.matches(&self.residual_group(&trivial, y1)?)?
                    || !target.group_shape.matches(&self.residual_group(y1, y)?)?
                {
                    continue;
                }
                candidates.push(y1.clone());
            }
            let detail = || format!("{} with rule {} -> {}", self.render(s), rule.source, rule.target);
            return match candidates.len() {
                0 => Err(CatalogError::Invalid(vec![format!(
                    "no subgroup of Y fits GenusOneExtensionRule for {}",
                    detail()
                )])
                .into()),
                1 => Ok(Some(self.jacobian_symbol(&candidates[0], y, &rule.target)?)),
                _ => Err(CatalogError::Ambiguous {
                    rule: "GenusOneExtensionRule",
                    detail: detail(),
                }
                .into()),
            };
        }
        Ok(None)
    }
}

fn with_context(err: Error, rule: RuleKind, ctx: &Context, s: &Symbol) -> Error {
    match err {
        Error::Catalog(CatalogError::Incomplete { rule: r, detail }) => {
            Error::Catalog(CatalogError::Incomplete {
                rule: r,
                detail: format!("{detail} (needed by {rule} on {})", ctx.render(s)),
            })
        }
        other => other,
    }
}

/// Flips the sign so the first coefficient in symbol order is positive.
fn sign_normalized(v: BurnsideClass) -> BurnsideClass {
    let negative = v.terms().next().is_some_and(|(_, &c)| c < 0);
    if negative {
        -&v
    } else {
        v
    }
}

/// Every instance of B1–B4 over the enumerated symbols, sign-normalized and
/// without repeated vectors, in generation order.
pub fn generate_relations(ctx: &Context, symbols: &[Symbol]) -> Result<Vec<RelationInstance>> {
    let mut raw: Vec<(RuleKind, &Symbol, BurnsideClass)> = Vec::new();
    for s in symbols.iter().filter(|s| s.kind() == SymbolKind::Curve) {
        let Symbol::Curve { weights: [b1, b2], .. } = s else { unreachable!() };
        if *b2 == b1.neg() {
            let j = ctx.jacobian_term(s).map_err(|e| with_context(e, RuleKind::B1, ctx, s))?;
            raw.push((RuleKind::B1, s, &BurnsideClass::from_symbol(s.clone()) + &j));
        }
    }
    for s in symbols.iter().filter(|s| s.kind() == SymbolKind::Curve) {
        let wrap = |e| with_context(e, RuleKind::B2, ctx, s);
        let rhs = &(&ctx.theta1(s).map_err(wrap)? + &ctx.theta2(s).map_err(wrap)?)
            + &ctx.jacobian_term(s).map_err(wrap)?;
        raw.push((RuleKind::B2, s, &BurnsideClass::from_symbol(s.clone()) - &rhs));
    }
    for s in symbols.iter().filter(|s| s.kind() == SymbolKind::Jacobian) {
        if s.stabilizer().is_trivial() && ctx.catalog().label(s.action())?.flags.from_curve {
            raw.push((RuleKind::B3, s, BurnsideClass::from_symbol(s.clone())));
        }
    }
    for s in symbols.iter().filter(|s| s.kind() == SymbolKind::Jacobian) {
        if let Some(t) = ctx.genus_one_extension(s)? {
            let v = &BurnsideClass::from_symbol(s.clone()) - &BurnsideClass::from_symbol(t);
            raw.push((RuleKind::B4, s, v));
        }
    }

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (rule, s, v) in raw {
        let v = sign_normalized(v);
        if v.is_zero() || !seen.insert(v.terms().map(|(s, &c)| (s.clone(), c)).collect::<Vec<_>>()) {
            continue;
        }
        out.push(RelationInstance {
            vector: v,
            rule,
            source: s.clone(),
        });
    }
    Ok(out)
}

/// The group presented by the enumerated symbols and their relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub symbols: Vec<Symbol>,
    pub relations: Vec<RelationInstance>,
    pub lattice: RelationLattice,
}

impl Presentation {
    pub fn new(ctx: &Context) -> Result<Self> {
        let symbols = ctx.enumerate_symbols()?;
        Self::with_index(ctx, symbols)
    }

    /// Same presentation over a caller-chosen ordering of the symbols.
    pub fn with_index(ctx: &Context, symbols: Vec<Symbol>) -> Result<Self> {
        let mut sorted = symbols.clone();
        sorted.sort();
        let relations = generate_relations(ctx, &sorted)?;
        let lattice = RelationLattice::new(symbols.clone(), relations.iter().map(|r| &r.vector))?;
        Ok(Presentation {
            symbols,
            relations,
            lattice,
        })
    }

    pub fn structure(&self) -> GroupStructure {
        self.lattice.structure()
    }

    pub fn reduce(&self, class: &BurnsideClass) -> Result<BurnsideClass> {
        self.lattice.reduce(class)
    }

    pub fn classes_equal(&self, a: &BurnsideClass, b: &BurnsideClass) -> Result<bool> {
        self.lattice.classes_equal(a, b)
    }
}

/// Admitted `(H, Y)` pairs, up to conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterSpec {
    All,
    /// `{(G, 1)}`
    MaximalStabilizer,
    /// Explicit pairs `(H, Ŷ)` with `Ŷ` the preimage of `Y`.
    Pairs(Vec<(Subgroup, Subgroup)>),
}

impl FilterSpec {
    pub fn admits(&self, ctx: &Context, s: &Symbol) -> bool {
        let (h, y) = (s.stabilizer(), s.residual());
        match self {
            FilterSpec::All => true,
            FilterSpec::MaximalStabilizer => h.is_whole(ctx.group()) && y == h,
            FilterSpec::Pairs(pairs) => {
                let g = ctx.group();
                pairs.iter().any(|(ph, py)| {
                    g.elements()
                        .any(|x| &ph.conjugate(g, x) == h && &py.conjugate(g, x) == y)
                })
            }
        }
    }

    pub fn project(&self, ctx: &Context, class: &BurnsideClass) -> BurnsideClass {
        class.retain(|s| self.admits(ctx, s))
    }
}

/// The quotient generated by admitted symbols.
///
/// Its relations are the generated relations supported on admitted symbols.
/// A relation that mixes admitted and other symbols must project into their
/// span, otherwise the projection is refused.
#[derive(Clone, Debug)]
pub struct FilteredPresentation {
    pub filter: FilterSpec,
    pub lattice: RelationLattice,
    pub relations: Vec<BurnsideClass>,
}

impl FilteredPresentation {
    pub fn new(ctx: &Context, p: &Presentation, filter: FilterSpec) -> Result<Self> {
        let index: Vec<Symbol> = p.symbols.iter().filter(|s| filter.admits(ctx, s)).cloned().collect();
        let mut pure = Vec::new();
        let mut mixed = Vec::new();
        for r in &p.relations {
            let admitted = r.vector.symbols().filter(|s| filter.admits(ctx, s)).count();
            if admitted == r.vector.len() {
                pure.push(r.vector.clone());
            } else if admitted > 0 {
                mixed.push(r);
            }
        }
        let lattice = RelationLattice::new(index, pure.iter())?;
        for r in mixed {
            let projected = filter.project(ctx, &r.vector);
            if !lattice.contains(&projected)? {
                return Err(Error::FilterClosure(format!(
                    "{} relation from {} projects to {}, outside the admitted relations",
                    r.rule,
                    ctx.render(&r.source),
                    ctx.render_class(&projected)
                )));
            }
        }
        Ok(FilteredPresentation {
            filter,
            lattice,
            relations: pure,
        })
    }

    pub fn structure(&self) -> GroupStructure {
        self.lattice.structure()
    }
}

pub fn filter_project(ctx: &Context, class: &BurnsideClass, filter: &FilterSpec) -> BurnsideClass {
    filter.project(ctx, class)
}

pub fn filtered_structure(ctx: &Context, filter: FilterSpec) -> Result<GroupStructure> {
    let p = Presentation::new(ctx)?;
    Ok(FilteredPresentation::new(ctx, &p, filter)?.structure())
}

/// Value of a maximal-stabilizer symbol under `φ^G`.
pub fn phi_weight(ctx: &Context, s: &Symbol) -> Result<i64> {
    if !FilterSpec::MaximalStabilizer.admits(ctx, s) {
        return Err(Error::NotApplicable(format!(
            "{} is not a symbol with (H, Y) = (G, 1)",
            ctx.render(s)
        )));
    }
    Ok(match s.kind() {
        SymbolKind::Curve => -1,
        SymbolKind::Surface => -2,
        SymbolKind::Jacobian => 1,
    })
}

fn phi_applicable(ctx: &Context) -> Result<()> {
    if !ctx.group().is_abelian() {
        return Err(Error::NotApplicable("phi^G needs an abelian group".into()));
    }
    if ctx.genus() < 2 {
        return Err(Error::NotApplicable("phi^G needs a curve of genus at least 2".into()));
    }
    Ok(())
}

/// `φ^G` on a class already projected to `{(G, 1)}`.
pub fn phi_g(ctx: &Context, class: &BurnsideClass) -> Result<i64> {
    phi_applicable(ctx)?;
    let mut total: i64 = 0;
    for (s, &c) in class.terms() {
        let term = phi_weight(ctx, s)?
            .checked_mul(c)
            .ok_or_else(|| Error::Overflow("phi^G value".into()))?;
        total = total
            .checked_add(term)
            .ok_or_else(|| Error::Overflow("phi^G value".into()))?;
    }
    Ok(total)
}
