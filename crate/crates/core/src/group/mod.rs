//! Finite groups given by explicit multiplication tables.
//!
//! Every group is stored as a dense `order × order` table over element
//! indices `0..order`, with element `0` always the identity. Subgroups,
//! quotients and character groups of abelian subgroups are computed by
//! exhaustive enumeration, so the order of any group is capped (64 by
//! default, overridable through `BURNLOC_ORDER_BOUND`).

mod abelian;
mod shape;
mod subgroup;

pub use abelian::{character_span, dual_generated_check, AbelianStructure, Character, QZ};
pub use shape::{is_isomorphic, normalize_factors, GroupShape};
pub use subgroup::{Quotient, Subgroup, SubgroupLattice};

use std::collections::HashMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_ORDER_BOUND: usize = 64;
pub const ORDER_BOUND_ENV: &str = "BURNLOC_ORDER_BOUND";
const MAX_PERM_DEGREE: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("multiplication table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("malformed group description: {0}")]
    Malformed(String),
    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal in the given overgroup")]
    NotNormal,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("characters are defined on different subgroups")]
    HostMismatch,
    #[error("element {0} is outside the group")]
    ElementOutOfRange(usize),
}

/// Group-order bound in effect: `BURNLOC_ORDER_BOUND` if set and valid, else 64.
pub fn order_bound() -> usize {
    std::env::var(ORDER_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_ORDER_BOUND)
}

/// JSON description of a group.
///
/// Permutation generators are image lists over the points `1..=degree`;
/// products compose right to left, `(a*b)(x) = a(b(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDesc {
    Cyclic { n: usize },
    Abelian { factors: Vec<usize> },
    Table { mul: Vec<Vec<usize>> },
    Perm { degree: usize, gens: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn build(desc: &GroupDesc) -> Result<Self, GroupError> {
        Self::build_with_bound(desc, order_bound())
    }

    pub fn build_with_bound(desc: &GroupDesc, bound: usize) -> Result<Self, GroupError> {
        match desc {
            GroupDesc::Cyclic { n } => Self::abelian_with_bound(&[*n], bound),
            GroupDesc::Abelian { factors } => Self::abelian_with_bound(factors, bound),
            GroupDesc::Table { mul } => Self::from_table_with_bound(mul, bound),
            GroupDesc::Perm { degree, gens } => Self::from_permutations_with_bound(*degree, gens, bound),
        }
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inverses: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        Self::abelian_with_bound(&[n], order_bound())
    }

    /// Direct product of cyclic groups, elements in mixed-radix order.
    pub fn abelian(factors: &[usize]) -> Result<Self, GroupError> {
        Self::abelian_with_bound(factors, order_bound())
    }

    fn abelian_with_bound(factors: &[usize], bound: usize) -> Result<Self, GroupError> {
        if factors.contains(&0) {
            return Err(GroupError::Malformed("cyclic factor of order 0".into()));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or(GroupError::OrderTooLarge {
                order: usize::MAX,
                bound,
            })?;
        if order > bound {
            return Err(GroupError::OrderTooLarge { order, bound });
        }
        let decode = |mut x: usize| -> Vec<usize> {
            let mut digits = vec![0; factors.len()];
            for (i, &d) in factors.iter().enumerate().rev() {
                digits[i] = x % d;
                x /= d;
            }
            digits
        };
        let encode = |digits: &[usize]| -> usize {
            digits
                .iter()
                .zip(factors)
                .fold(0, |acc, (&a, &d)| acc * d + a)
        };
        let mut table = vec![0; order * order];
        for a in 0..order {
            let da = decode(a);
            for b in 0..order {
                let db = decode(b);
                let sum: Vec<usize> = da
                    .iter()
                    .zip(&db)
                    .zip(factors)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                table[a * order + b] = encode(&sum);
            }
        }
        Ok(Self::from_validated_table(order, table))
    }

    pub fn from_table(mul: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_table_with_bound(mul, order_bound())
    }

    fn from_table_with_bound(mul: &[Vec<usize>], bound: usize) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::Malformed("empty multiplication table".into()));
        }
        if n > bound {
            return Err(GroupError::OrderTooLarge { order: n, bound });
        }
        for row in mul {
            if row.len() != n {
                return Err(GroupError::Malformed("table is not square".into()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::ElementOutOfRange(x));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        for (a, row) in mul.iter().enumerate() {
            if !(0..n).any(|b| row[b] == identity && mul[b][a] == identity) {
                return Err(GroupError::NoInverse(a));
            }
        }
        // relabel so that the identity is element 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(mul[a][b]);
            }
        }
        Ok(Self::from_validated_table(n, table))
    }

    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_permutations_with_bound(degree, gens, order_bound())
    }

    fn from_permutations_with_bound(
        degree: usize,
        gens: &[Vec<usize>],
        bound: usize,
    ) -> Result<Self, GroupError> {
        if degree == 0 || degree > MAX_PERM_DEGREE {
            return Err(GroupError::Malformed(format!(
                "permutation degree must be in 1..={MAX_PERM_DEGREE}, got {degree}"
            )));
        }
        let mut perms: Vec<Vec<u8>> = Vec::with_capacity(gens.len());
        for gen in gens {
            if gen.len() != degree {
                return Err(GroupError::Malformed(format!(
                    "generator {gen:?} does not have {degree} images"
                )));
            }
            let mut seen = vec![false; degree];
            let mut p = Vec::with_capacity(degree);
            for &img in gen {
                if img == 0 || img > degree || seen[img - 1] {
                    return Err(GroupError::Malformed(format!(
                        "generator {gen:?} is not a permutation of 1..={degree}"
                    )));
                }
                seen[img - 1] = true;
                p.push((img - 1) as u8);
            }
            perms.push(p);
        }
        let compose = |a: &[u8], b: &[u8]| -> Vec<u8> { b.iter().map(|&x| a[x as usize]).collect() };

        let identity: Vec<u8> = (0..degree as u8).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &perms {
                let next = compose(&elements[i], s);
                if !index.contains_key(&next) {
                    if elements.len() + 1 > bound {
                        return Err(GroupError::OrderTooLarge {
                            order: elements.len() + 1,
                            bound,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        Ok(Self::from_validated_table(n, table))
    }

    fn from_validated_table(order: usize, table: Vec<usize>) -> Self {
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == 0)
                    .expect("validated table has inverses")
            })
            .collect();
        FiniteGroup {
            order,
            table,
            inverses,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g h g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn to_desc(&self) -> GroupDesc {
        GroupDesc::Table { mul: self.table() }
    }
}
