//! Exact integer linear algebra for the quotient of the free group on the
//! symbol index by the relation lattice.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::{BurnsideClass, Symbol};

/// `ℤ^free_rank ⊕ ⨁ ℤ/tᵢ` with `t₁ | t₂ | …`, all `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructure {
    pub free_rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl GroupStructure {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, if finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

mod bigint_list {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    // plain JSON numbers when they fit, decimal strings otherwise
    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| match x.to_u64() {
                Some(n) => Entry::Small(n),
                None => Entry::Big(x.to_string()),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| match e {
                Entry::Small(n) => Ok(BigInt::from(n)),
                Entry::Big(s) => s.parse().map_err(D::Error::custom),
            })
            .collect()
    }
}

pub type Matrix = Vec<Vec<BigInt>>;

pub fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form of the row span: echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>], ncols: usize) -> Matrix {
    let mut m: Matrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    for r in &m {
        assert_eq!(r.len(), ncols, "row length");
    }
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    let (top, rest) = m.split_at_mut(i);
                    sub_multiple(&mut rest[0], &top[r], &q);
                    clean &= m[i][c].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in &mut m[r] {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let (top, rest) = m.split_at_mut(r);
                sub_multiple(&mut top[i], &rest[0], &q);
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Column of the first nonzero entry of each row of an echelon matrix.
pub fn pivots(echelon: &[Vec<BigInt>]) -> Vec<usize> {
    echelon
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect()
}

/// Reduces `v` modulo the row span of an HNF basis. The result is the unique
/// coset representative with every pivot entry in `[0, pivot)`.
pub fn hnf_reduce(basis: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for (row, p) in basis.iter().zip(pivots(basis)) {
        let q = v[p].div_floor(&row[p]);
        if !q.is_zero() {
            sub_multiple(&mut v, row, &q);
        }
    }
    v
}

pub fn in_row_span(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    hnf_reduce(basis, v).iter().all(Zero::is_zero)
}

/// Nonzero Smith invariants `d₁ | d₂ | …` (all positive) of a matrix.
pub fn smith_invariants(rows: &[Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut m: Matrix = rows.to_vec();
    let nrows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pi, pj)) = min_entry(&m, t..nrows, t..ncols) else {
            break;
        };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    let (top, rest) = m.split_at_mut(i);
                    sub_multiple(&mut rest[0], &top[t], &q);
                    clean &= m[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    for row in m.iter_mut() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    clean &= m[t][j].is_zero();
                }
            }
            if clean {
                break;
            }
            // a smaller remainder sits in row t or column t; make it the pivot
            let col = min_entry(&m, t..nrows, t..t + 1).expect("pivot nonzero");
            let row = min_entry(&m, t..t + 1, t..ncols).expect("pivot nonzero");
            let (ci, cj) = if m[col.0][col.1].abs() <= m[row.0][row.1].abs() { col } else { row };
            m.swap(t, ci);
            swap_cols(&mut m, t, cj);
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    // diag(a, b) ~ diag(gcd, lcm)
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn min_entry(
    m: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if m[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Structure of `ℤ^ncols / rowspan(rows)`.
pub fn cokernel_structure(rows: &[Vec<BigInt>], ncols: usize) -> GroupStructure {
    let d = smith_invariants(rows, ncols);
    GroupStructure {
        free_rank: ncols - d.len(),
        torsion: d.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// The relation lattice inside the free abelian group on an ordered symbol
/// index, kept as an HNF basis.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    index: Vec<Symbol>,
    position: HashMap<Symbol, usize>,
    basis: Matrix,
}

impl RelationLattice {
    pub fn new<'a>(index: Vec<Symbol>, relations: impl IntoIterator<Item = &'a BurnsideClass>) -> Result<Self> {
        let position: HashMap<Symbol, usize> =
            index.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut lattice = RelationLattice {
            index,
            position,
            basis: Vec::new(),
        };
        let rows = relations
            .into_iter()
            .map(|r| lattice.vector_of(r))
            .collect::<Result<Vec<_>>>()?;
        lattice.basis = hnf(&rows, lattice.index.len());
        Ok(lattice)
    }

    pub fn index(&self) -> &[Symbol] {
        &self.index
    }

    pub fn position(&self, s: &Symbol) -> Option<usize> {
        self.position.get(s).copied()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vector_of(&self, class: &BurnsideClass) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.index.len()];
        for (s, &c) in class.terms() {
            let i = self
                .position(s)
                .ok_or_else(|| Error::OutsideIndex(format!("{s:?}")))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn class_of(&self, v: &[BigInt]) -> Result<BurnsideClass> {
        let mut class = BurnsideClass::zero();
        for (s, x) in self.index.iter().zip(v) {
            let c = x
                .to_i64()
                .ok_or_else(|| Error::Overflow(format!("coefficient {x} exceeds 64 bits")))?;
            class.add_term(s.clone(), c);
        }
        Ok(class)
    }

    pub fn contains(&self, class: &BurnsideClass) -> Result<bool> {
        Ok(in_row_span(&self.basis, &self.vector_of(class)?))
    }

    /// Normal form of the coset `class + lattice`.
    pub fn reduce(&self, class: &BurnsideClass) -> Result<BurnsideClass> {
        self.class_of(&hnf_reduce(&self.basis, &self.vector_of(class)?))
    }

    pub fn classes_equal(&self, a: &BurnsideClass, b: &BurnsideClass) -> Result<bool> {
        self.contains(&(a - b))
    }

    pub fn structure(&self) -> GroupStructure {
        cokernel_structure(&self.basis, self.index.len())
    }
}
