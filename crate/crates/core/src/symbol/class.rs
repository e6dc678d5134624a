use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::Symbol;

/// Finitely supported integer combination of canonical symbols.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BurnsideClass {
    terms: BTreeMap<Symbol, i64>,
}

impl BurnsideClass {
    pub fn zero() -> Self {
        BurnsideClass::default()
    }

    pub fn from_symbol(s: Symbol) -> Self {
        let mut c = BurnsideClass::zero();
        c.add_term(s, 1);
        c
    }

    pub fn add_term(&mut self, s: Symbol, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let next = o.get().checked_add(coeff).expect("coefficient overflow");
                if next == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
            }
        }
    }

    pub fn coeff(&self, s: &Symbol) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &i64)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = BurnsideClass::zero();
        for (s, &c) in &self.terms {
            out.add_term(s.clone(), c.checked_mul(k).expect("coefficient overflow"));
        }
        out
    }

    /// Keeps only the terms whose symbol satisfies `keep`.
    pub fn retain(&self, mut keep: impl FnMut(&Symbol) -> bool) -> Self {
        BurnsideClass {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, &c)| (s.clone(), c))
                .collect(),
        }
    }
}

impl Add for &BurnsideClass {
    type Output = BurnsideClass;

    fn add(self, rhs: &BurnsideClass) -> BurnsideClass {
        let mut out = self.clone();
        for (s, &c) in &rhs.terms {
            out.add_term(s.clone(), c);
        }
        out
    }
}

impl Neg for &BurnsideClass {
    type Output = BurnsideClass;

    fn neg(self) -> BurnsideClass {
        self.scale(-1)
    }
}

impl Sub for &BurnsideClass {
    type Output = BurnsideClass;

    fn sub(self, rhs: &BurnsideClass) -> BurnsideClass {
        self + &(-rhs)
    }
}

impl FromIterator<(Symbol, i64)> for BurnsideClass {
    fn from_iter<I: IntoIterator<Item = (Symbol, i64)>>(iter: I) -> Self {
        let mut out = BurnsideClass::zero();
        for (s, c) in iter {
            out.add_term(s, c);
        }
        out
    }
}
