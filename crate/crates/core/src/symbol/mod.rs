//! Symbols of the curve-localized Burnside group and finite formal sums of
//! them.
//!
//! A residual group `Y ⊆ N_G(H)/H` is stored by its preimage `Ŷ` in `G`, so
//! `H ⊆ Ŷ` always. Weight pairs are kept sorted, which makes the permutation
//! relation a property of the representation.

mod class;
mod context;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::group::{Character, Subgroup};

pub use class::BurnsideClass;
pub use context::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    Curve,
    Surface,
    Jacobian,
}

impl SymbolKind {
    pub fn tag(self) -> &'static str {
        match self {
            SymbolKind::Curve => "curve",
            SymbolKind::Surface => "surface",
            SymbolKind::Jacobian => "jac",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// `(H, Y ⟲ k(C), (b₁, b₂))`
    Curve {
        h: Subgroup,
        y: Subgroup,
        action: String,
        weights: [Character; 2],
    },
    /// `(H, Y ⟲ k(C×ℙ¹), (b))`
    Surface {
        h: Subgroup,
        y: Subgroup,
        action: String,
        weight: Character,
    },
    /// `(H, J(C) ⟲ Y)`
    Jacobian {
        h: Subgroup,
        y: Subgroup,
        action: String,
    },
}

impl Symbol {
    pub fn kind(&self) -> SymbolKind {
        match self {
            Symbol::Curve { .. } => SymbolKind::Curve,
            Symbol::Surface { .. } => SymbolKind::Surface,
            Symbol::Jacobian { .. } => SymbolKind::Jacobian,
        }
    }

    pub fn stabilizer(&self) -> &Subgroup {
        match self {
            Symbol::Curve { h, .. } | Symbol::Surface { h, .. } | Symbol::Jacobian { h, .. } => h,
        }
    }

    /// Preimage in `G` of the residual group.
    pub fn residual(&self) -> &Subgroup {
        match self {
            Symbol::Curve { y, .. } | Symbol::Surface { y, .. } | Symbol::Jacobian { y, .. } => y,
        }
    }

    pub fn action(&self) -> &str {
        match self {
            Symbol::Curve { action, .. }
            | Symbol::Surface { action, .. }
            | Symbol::Jacobian { action, .. } => action,
        }
    }

    pub fn weights(&self) -> Vec<&Character> {
        match self {
            Symbol::Curve { weights, .. } => weights.iter().collect(),
            Symbol::Surface { weight, .. } => vec![weight],
            Symbol::Jacobian { .. } => Vec::new(),
        }
    }

    /// Whether the residual group is trivial, i.e. `Ŷ = H`.
    pub fn has_trivial_residual(&self) -> bool {
        self.residual() == self.stabilizer()
    }

    pub(crate) fn with_sorted_weights(mut self) -> Self {
        if let Symbol::Curve { weights, .. } = &mut self {
            if weights[1] < weights[0] {
                weights.swap(0, 1);
            }
        }
        self
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind()
            .cmp(&other.kind())
            .then_with(|| self.stabilizer().order().cmp(&other.stabilizer().order()))
            .then_with(|| self.stabilizer().cmp(other.stabilizer()))
            .then_with(|| self.residual().cmp(other.residual()))
            .then_with(|| self.action().cmp(other.action()))
            .then_with(|| self.weights().cmp(&other.weights()))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
