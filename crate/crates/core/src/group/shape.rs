use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AbelianStructure, FiniteGroup, GroupDesc, GroupError, Subgroup};

/// Isomorphism type of a small group: abelian invariant factors, or an
/// explicit group description for anything else.
///
/// In JSON an array is read as abelian factors (`[]` is the trivial group)
/// and an object as a group description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupShape {
    Abelian(Vec<u64>),
    Explicit(GroupDesc),
}

impl GroupShape {
    pub fn trivial() -> Self {
        GroupShape::Abelian(Vec::new())
    }

    pub fn order(&self) -> Result<u64, GroupError> {
        match self {
            GroupShape::Abelian(f) => Ok(f.iter().product()),
            GroupShape::Explicit(desc) => Ok(FiniteGroup::build(desc)?.order() as u64),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Ok(1)
    }

    pub fn is_cyclic(&self) -> Result<bool, GroupError> {
        match self {
            GroupShape::Abelian(f) => Ok(normalize_factors(f).len() <= 1),
            GroupShape::Explicit(desc) => {
                let g = FiniteGroup::build(desc)?;
                Ok(Subgroup::whole(&g).is_cyclic(&g))
            }
        }
    }

    /// Whether `g` has this isomorphism type.
    pub fn matches(&self, g: &FiniteGroup) -> Result<bool, GroupError> {
        match self {
            GroupShape::Abelian(f) => {
                if !g.is_abelian() {
                    return Ok(false);
                }
                let s = AbelianStructure::of_group(g)?;
                Ok(s.factors() == normalize_factors(f).as_slice())
            }
            GroupShape::Explicit(desc) => Ok(is_isomorphic(&FiniteGroup::build(desc)?, g)),
        }
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupShape::Abelian(factors) => {
                let factors = normalize_factors(factors);
                if factors.is_empty() {
                    write!(f, "1")
                } else {
                    let parts: Vec<String> = factors.iter().map(|d| format!("Z/{d}")).collect();
                    write!(f, "{}", parts.join("x"))
                }
            }
            GroupShape::Explicit(desc) => write!(f, "{}", serde_json::to_string(desc).unwrap_or_default()),
        }
    }
}

/// Invariant factors `d₁ | … | d_k` (all ≥ 2) of `⊕ ℤ/fᵢ`.
pub fn normalize_factors(factors: &[u64]) -> Vec<u64> {
    // prime-power parts per prime, then recombine largest with largest
    let mut parts: Vec<(u64, Vec<u64>)> = Vec::new();
    for &f in factors {
        let mut n = f;
        let mut p = 2;
        while n > 1 {
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                match parts.iter_mut().find(|(pp, _)| *pp == p) {
                    Some((_, v)) => v.push(q),
                    None => parts.push((p, vec![q])),
                }
            }
            p += 1;
        }
    }
    for (_, v) in &mut parts {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    let k = parts.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..k)
        .map(|i| parts.iter().map(|(_, v)| v.get(i).copied().unwrap_or(1)).product())
        .collect();
    out.reverse();
    out
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

/// Brute-force isomorphism test for small groups.
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() {
        return false;
    }
    if order_profile(a) != order_profile(b) {
        return false;
    }
    if a.is_abelian() {
        let (sa, sb) = (
            AbelianStructure::of_group(a).expect("abelian"),
            AbelianStructure::of_group(b).expect("abelian"),
        );
        return sa.factors() == sb.factors();
    }
    // greedy generating set of `a`, large orders first
    let mut by_order: Vec<usize> = a.elements().collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(a.element_order(x)));
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial();
    for x in by_order {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(a, &gens).expect("in range");
            if span.is_whole(a) {
                break;
            }
        }
    }
    let mut images = Vec::with_capacity(gens.len());
    assign_generators(a, b, &gens, &mut images)
}

fn assign_generators(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        return extends_to_isomorphism(a, b, gens, images);
    }
    let want = a.element_order(gens[images.len()]);
    for y in b.elements() {
        if b.element_order(y) != want {
            continue;
        }
        images.push(y);
        if assign_generators(a, b, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn extends_to_isomorphism(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let mut map: Vec<Option<usize>> = vec![None; a.order()];
    map[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("queued elements are mapped");
        for (&s, &t) in gens.iter().zip(images) {
            let y = a.mul(x, s);
            let fy = b.mul(fx, t);
            match map[y] {
                Some(existing) if existing != fy => return false,
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    let mut hit = vec![false; b.order()];
    for m in map {
        match m {
            Some(y) if !hit[y] => hit[y] = true,
            _ => return false,
        }
    }
    true
}
