//! Random valid (model, center) pairs over a fixture catalog.

use rand::seq::SliceRandom;
use rand::Rng;

use burnloc::model::{
    blowup_delta, BlowupCenter, BlowupDelta, CatalogRef, JacobianFactorDatum, ModelDescription,
    StratumDatum, StratumKind, SubgroupRef, WeightRef,
};
use burnloc::catalog::ActionSpace;
use burnloc::symbol::{Context, Symbol, SymbolKind};

pub struct Scenario {
    pub model: ModelDescription,
    pub center: BlowupCenter,
    pub delta: BlowupDelta,
}

/// A random conjugate of a random symbol of the given kinds.
fn random_symbol<R: Rng>(ctx: &Context, pool: &[Symbol], rng: &mut R) -> Symbol {
    let s = pool.choose(rng).expect("nonempty pool");
    let x = rng.gen_range(0..ctx.group().order());
    ctx.conjugate(s, x).expect("conjugation of a valid symbol")
}

pub fn random_model<R: Rng>(ctx: &Context, catalog: &str, symbols: &[Symbol], rng: &mut R) -> ModelDescription {
    let strata_pool: Vec<Symbol> = symbols.iter().filter(|s| s.kind() != SymbolKind::Jacobian).cloned().collect();
    let jac_pool: Vec<Symbol> = symbols.iter().filter(|s| s.kind() == SymbolKind::Jacobian).cloned().collect();
    let mut m = ModelDescription::empty(CatalogRef::Named(catalog.into()));
    if !strata_pool.is_empty() {
        for _ in 0..rng.gen_range(0..=3) {
            let s = random_symbol(ctx, &strata_pool, rng);
            m.strata.push(StratumDatum::of_symbol(ctx, &s).expect("stratum of symbol"));
        }
    }
    if !jac_pool.is_empty() {
        for _ in 0..rng.gen_range(0..=2) {
            let s = random_symbol(ctx, &jac_pool, rng);
            m.jacobian_factors.push(JacobianFactorDatum::of_symbol(ctx, &s).expect("factor of symbol"));
        }
    }
    m
}

fn random_center<R: Rng>(ctx: &Context, m: &ModelDescription, rng: &mut R) -> BlowupCenter {
    let g = ctx.group();
    let subgroups = ctx.lattice().all();
    let curve_labels: Vec<&str> = ctx
        .catalog()
        .labels
        .iter()
        .filter(|l| l.space == ActionSpace::Curve)
        .map(|l| l.id.as_str())
        .collect();
    let fixed: Vec<usize> = m
        .strata
        .iter()
        .enumerate()
        .filter(|(_, s)| s.kind == StratumKind::FixedCurve)
        .map(|(i, _)| i)
        .collect();
    let case = if fixed.is_empty() { rng.gen_range(1..=2) } else { rng.gen_range(1..=3) };
    match case {
        1 => {
            let y = subgroups.choose(rng).unwrap();
            BlowupCenter::free_curve(SubgroupRef::of(g, y), curve_labels.choose(rng).unwrap())
        }
        2 => {
            let h = subgroups.choose(rng).unwrap();
            let y = subgroups.choose(rng).unwrap();
            let b = ctx
                .nontrivial_characters(h)
                .ok()
                .and_then(|cs| cs.choose(rng).cloned());
            let weight = match b {
                Some(b) => WeightRef::of(&b),
                None => WeightRef::Cyclic(1),
            };
            BlowupCenter::curve_in_divisor(
                SubgroupRef::of(g, h),
                SubgroupRef::of(g, y),
                curve_labels.choose(rng).unwrap(),
                weight,
            )
        }
        _ => BlowupCenter::fixed_curve(*fixed.choose(rng).unwrap()),
    }
}

/// Draws models and centers until the center is valid for the model.
pub fn random_scenario<R: Rng>(ctx: &Context, catalog: &str, symbols: &[Symbol], rng: &mut R) -> Scenario {
    for _ in 0..10_000 {
        let model = random_model(ctx, catalog, symbols, rng);
        let center = random_center(ctx, &model, rng);
        if let Ok(delta) = blowup_delta(ctx, &model, &center) {
            return Scenario { model, center, delta };
        }
    }
    panic!("no valid blow-up center found for {catalog}");
}
