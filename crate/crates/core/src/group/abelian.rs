use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;

use super::{FiniteGroup, GroupError, Subgroup};

/// An element of ℚ/ℤ, kept as a reduced fraction `num/den` with `0 ≤ num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QZ {
    num: u64,
    den: u64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let num = num % den;
        let g = num.gcd(&den);
        QZ {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Invariant-factor decomposition of an abelian subgroup `H ≅ ⊕ ℤ/dᵢ`
/// with `d₁ | d₂ | … | d_k`, together with an explicit basis and the
/// coordinate isomorphism.
#[derive(Debug)]
pub struct AbelianStructure {
    subgroup: Subgroup,
    factors: Vec<u64>,
    basis: Vec<usize>,
    coords: HashMap<usize, Vec<u64>>,
    by_index: Vec<usize>,
}

impl AbelianStructure {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Result<Self, GroupError> {
        if !h.is_abelian(g) {
            return Err(GroupError::NotAbelian);
        }
        let factors = invariant_factors(g, h);
        let mut desc: Vec<u64> = factors.clone();
        desc.reverse();
        let mut span = vec![false; g.order()];
        span[0] = true;
        let basis_desc =
            find_basis(g, h, &desc, &span, 1).expect("an invariant-factor basis always exists");
        let basis: Vec<usize> = basis_desc.into_iter().rev().collect();

        let mut coords = HashMap::with_capacity(h.order());
        let mut by_index = Vec::with_capacity(h.order());
        for idx in 0..h.order() as u64 {
            let c = decode(idx, &factors);
            let x = c
                .iter()
                .zip(&basis)
                .fold(0, |acc, (&a, &b)| g.mul(acc, g.pow(b, a)));
            assert!(
                coords.insert(x, c).is_none(),
                "coordinate map must be injective"
            );
            by_index.push(x);
        }
        debug_assert_eq!(coords.len(), h.order());
        Ok(AbelianStructure {
            subgroup: h.clone(),
            factors,
            basis,
            coords,
            by_index,
        })
    }

    pub fn of_group(g: &FiniteGroup) -> Result<Self, GroupError> {
        Self::new(g, &Subgroup::whole(g))
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn coords_of(&self, x: usize) -> Option<&[u64]> {
        self.coords.get(&x).map(Vec::as_slice)
    }

    pub fn element_at(&self, coords: &[u64]) -> usize {
        self.by_index[encode(coords, &self.factors) as usize]
    }

    /// Every character, in mixed-radix order of coordinates.
    pub fn characters(self: &Arc<Self>) -> Vec<Character> {
        (0..self.order() as u64)
            .map(|i| Character {
                host: Arc::clone(self),
                coords: decode(i, &self.factors),
            })
            .collect()
    }
}

fn decode(mut idx: u64, factors: &[u64]) -> Vec<u64> {
    let mut c = vec![0; factors.len()];
    for (i, &d) in factors.iter().enumerate().rev() {
        c[i] = idx % d;
        idx /= d;
    }
    c
}

fn encode(coords: &[u64], factors: &[u64]) -> u64 {
    coords
        .iter()
        .zip(factors)
        .fold(0, |acc, (&a, &d)| acc * d + a % d)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors read off from the counts `#{x : x^{p^j} = 1}`.
fn invariant_factors(g: &FiniteGroup, h: &Subgroup) -> Vec<u64> {
    let n = h.order() as u64;
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(n) {
        let mut ranks = Vec::new(); // ranks[j-1] = #factors with exponent ≥ j
        let mut prev_log = 0u32;
        let mut j = 1u32;
        loop {
            let pj = p.pow(j);
            let count = h
                .elements()
                .iter()
                .filter(|&&x| g.pow(x, pj) == 0)
                .count() as u64;
            let log = count.ilog(p);
            if log == prev_log {
                break;
            }
            ranks.push(log - prev_log);
            prev_log = log;
            j += 1;
        }
        // exponents e with multiplicity ranks[e-1] - ranks[e], largest first
        let mut exps = Vec::new();
        for e in (1..=ranks.len()).rev() {
            let with_at_least = ranks[e - 1];
            let above = ranks.get(e).copied().unwrap_or(0);
            for _ in 0..(with_at_least - above) {
                exps.push(e as u32);
            }
        }
        per_prime.push((p, exps));
    }
    let k = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut desc: Vec<u64> = (0..k)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, exps)| exps.get(i).map_or(1, |&e| p.pow(e)))
                .product()
        })
        .collect();
    desc.reverse();
    desc
}

/// Backtracking search for elements of the given orders that are independent.
fn find_basis(
    g: &FiniteGroup,
    h: &Subgroup,
    orders: &[u64],
    span: &[bool],
    span_size: usize,
) -> Option<Vec<usize>> {
    let Some((&d, rest)) = orders.split_first() else {
        return Some(Vec::new());
    };
    for &x in h.elements() {
        if g.element_order(x) as u64 != d {
            continue;
        }
        let current: Vec<usize> = (0..g.order()).filter(|&y| span[y]).collect();
        let mut next = vec![false; g.order()];
        let mut power = 0;
        for _ in 0..d {
            for &s in &current {
                next[g.mul(s, power)] = true;
            }
            power = g.mul(power, x);
        }
        let size = next.iter().filter(|&&b| b).count();
        if size != span_size * d as usize {
            continue;
        }
        if let Some(mut tail) = find_basis(g, h, rest, &next, size) {
            tail.insert(0, x);
            return Some(tail);
        }
    }
    None
}

/// A character `H → ℚ/ℤ`, stored by its coordinates `(c₁ mod d₁, …)` in the
/// invariant-factor decomposition of its host: `h ↦ Σ cᵢaᵢ/dᵢ`.
///
/// The dual group is written additively.
#[derive(Clone)]
pub struct Character {
    host: Arc<AbelianStructure>,
    coords: Vec<u64>,
}

impl Character {
    pub fn new(host: Arc<AbelianStructure>, coords: &[u64]) -> Result<Self, GroupError> {
        if coords.len() != host.factors.len() {
            return Err(GroupError::Malformed(format!(
                "character needs {} coordinates, got {}",
                host.factors.len(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&host.factors)
            .map(|(&c, &d)| c % d)
            .collect();
        Ok(Character { host, coords })
    }

    pub fn trivial(host: Arc<AbelianStructure>) -> Self {
        let coords = vec![0; host.factors.len()];
        Character { host, coords }
    }

    /// Character determined by its values on the host's basis.
    pub fn from_basis_values(host: Arc<AbelianStructure>, values: &[QZ]) -> Self {
        let coords = values
            .iter()
            .zip(&host.factors)
            .map(|(v, &d)| {
                debug_assert_eq!((v.num * d) % v.den, 0, "value order must divide dᵢ");
                (v.num * d / v.den) % d
            })
            .collect();
        Character { host, coords }
    }

    pub fn host(&self) -> &Arc<AbelianStructure> {
        &self.host
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .zip(&self.host.factors)
            .map(|(&c, &d)| d / c.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Value at an ambient element of the host subgroup.
    pub fn eval(&self, x: usize) -> Option<QZ> {
        let a = self.host.coords_of(x)?;
        let e = self.host.exponent();
        let num = self
            .coords
            .iter()
            .zip(a)
            .zip(&self.host.factors)
            .fold(0u64, |acc, ((&c, &ai), &d)| (acc + c * ai % d * (e / d)) % e);
        Some(QZ::new(num, e))
    }

    fn check_host(&self, other: &Character) -> Result<(), GroupError> {
        if self.host.subgroup != other.host.subgroup {
            return Err(GroupError::HostMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Character) -> Result<Character, GroupError> {
        self.check_host(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.host.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(Character {
            host: Arc::clone(&self.host),
            coords,
        })
    }

    pub fn neg(&self) -> Character {
        let coords = self
            .coords
            .iter()
            .zip(&self.host.factors)
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        Character {
            host: Arc::clone(&self.host),
            coords,
        }
    }

    pub fn sub(&self, other: &Character) -> Result<Character, GroupError> {
        self.add(&other.neg())
    }

    pub fn kernel(&self) -> Subgroup {
        let elements: Vec<usize> = self
            .host
            .subgroup
            .elements()
            .iter()
            .copied()
            .filter(|&x| self.eval(x).is_some_and(|v| v.is_zero()))
            .collect();
        // sorted because the host's element list is
        Subgroup::from_sorted_unchecked(elements)
    }

    /// Restriction to a subgroup of the host.
    pub fn restrict(&self, target: &Arc<AbelianStructure>) -> Result<Character, GroupError> {
        if !target.subgroup.is_subgroup_of(&self.host.subgroup) {
            return Err(GroupError::HostMismatch);
        }
        let values: Vec<QZ> = target
            .basis
            .iter()
            .map(|&b| self.eval(b).expect("basis lies in host"))
            .collect();
        Ok(Character::from_basis_values(Arc::clone(target), &values))
    }

    /// `h' ↦ b(x⁻¹ h' x)` on `x H x⁻¹`, expressed on `target`'s coordinates.
    pub fn transport(
        &self,
        g: &FiniteGroup,
        x: usize,
        target: &Arc<AbelianStructure>,
    ) -> Result<Character, GroupError> {
        if target.subgroup != self.host.subgroup.conjugate(g, x) {
            return Err(GroupError::HostMismatch);
        }
        let xi = g.inv(x);
        let values: Vec<QZ> = target
            .basis
            .iter()
            .map(|&b| self.eval(g.conj(xi, b)).expect("conjugate lies in host"))
            .collect();
        Ok(Character::from_basis_values(Arc::clone(target), &values))
    }
}

/// Subgroup of the dual generated by `chars`, as a sorted list.
pub fn character_span(chars: &[Character]) -> Result<Vec<Character>, GroupError> {
    let Some(first) = chars.first() else {
        return Ok(Vec::new());
    };
    for c in chars {
        first.check_host(c)?;
    }
    let host = Arc::clone(&first.host);
    let mut seen = vec![false; host.order()];
    let zero = Character::trivial(Arc::clone(&host));
    seen[encode(&zero.coords, &host.factors) as usize] = true;
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        for c in chars {
            let next = out[i].add(c)?;
            let idx = encode(&next.coords, &host.factors) as usize;
            if !seen[idx] {
                seen[idx] = true;
                out.push(next);
            }
        }
        i += 1;
    }
    out.sort();
    Ok(out)
}

/// Whether `chars` generate the full dual group of their host.
pub fn dual_generated_check(chars: &[Character]) -> Result<bool, GroupError> {
    let Some(first) = chars.first() else {
        return Ok(false);
    };
    let order = first.host.order();
    Ok(character_span(chars)?.len() == order)
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.host.subgroup == other.host.subgroup && self.coords == other.coords
    }
}

impl Eq for Character {}

impl Hash for Character {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.host.subgroup.hash(state);
        self.coords.hash(state);
    }
}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Character {
    fn cmp(&self, other: &Self) -> Ordering {
        self.host
            .subgroup
            .cmp(&other.host.subgroup)
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({:?} on {:?})", self.coords, self.host.subgroup.elements())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(":"))
        }
    }
}
