use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{BurnsideClass, Symbol, SymbolKind};
use crate::catalog::{ActionCatalog, ActionLabel, ActionSpace};
use crate::error::{Error, Result};
use crate::group::{
    dual_generated_check, AbelianStructure, Character, FiniteGroup, GroupError, Quotient,
    Subgroup, SubgroupLattice,
};

/// A group together with a validated catalog, and the subgroup data every
/// symbol computation needs.
#[derive(Clone, Debug)]
pub struct Context {
    group: FiniteGroup,
    catalog: ActionCatalog,
    lattice: SubgroupLattice,
    structures: HashMap<Subgroup, Arc<AbelianStructure>>,
}

impl Context {
    pub fn new(group: FiniteGroup, catalog: ActionCatalog) -> Result<Self> {
        catalog.validate().into_result()?;
        let lattice = SubgroupLattice::new(&group);
        let mut structures = HashMap::new();
        for h in lattice.all() {
            if h.is_abelian(&group) {
                structures.insert(h.clone(), Arc::new(AbelianStructure::new(&group, h)?));
            }
        }
        Ok(Context {
            group,
            catalog,
            lattice,
            structures,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn catalog(&self) -> &ActionCatalog {
        &self.catalog
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn genus(&self) -> u32 {
        self.catalog.curve.genus
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(&self.group)
    }

    /// Invariant-factor data of an abelian subgroup.
    pub fn structure(&self, h: &Subgroup) -> Result<&Arc<AbelianStructure>> {
        self.structures.get(h).ok_or(Error::Group(GroupError::NotAbelian))
    }

    pub fn character(&self, h: &Subgroup, coords: &[u64]) -> Result<Character> {
        Ok(Character::new(Arc::clone(self.structure(h)?), coords)?)
    }

    /// Nontrivial characters of an abelian subgroup, in sorted order.
    pub fn nontrivial_characters(&self, h: &Subgroup) -> Result<Vec<Character>> {
        let mut chars: Vec<Character> = self
            .structure(h)?
            .characters()
            .into_iter()
            .filter(|c| !c.is_trivial())
            .collect();
        chars.sort();
        Ok(chars)
    }

    /// The abstract group `Ŷ/H`.
    pub fn residual_group(&self, h: &Subgroup, y: &Subgroup) -> Result<FiniteGroup> {
        Ok(Quotient::new(&self.group, y, h)?.group().clone())
    }

    fn label_checked(&self, id: &str, space: ActionSpace, reasons: &mut Vec<String>) -> Option<&ActionLabel> {
        match self.catalog.label(id) {
            Ok(l) if l.space == space => Some(l),
            Ok(l) => {
                reasons.push(format!("label `{id}` acts on {:?}, expected {space:?}", l.space));
                None
            }
            Err(_) => {
                reasons.push(format!("unknown action label `{id}`"));
                None
            }
        }
    }

    /// Every violated validity condition; empty iff the symbol is valid.
    pub fn diagnose(&self, s: &Symbol) -> Vec<String> {
        let g = &self.group;
        let mut reasons = Vec::new();
        let (h, y) = (s.stabilizer(), s.residual());
        for sub in [h, y] {
            if Subgroup::from_elements(g, sub.elements()).is_err() {
                reasons.push(format!("{:?} is not a subgroup of G", sub.elements()));
                return reasons;
            }
        }
        if !h.is_subgroup_of(y) {
            reasons.push("H is not contained in the preimage of Y".into());
            return reasons;
        }
        let upper = match s.kind() {
            SymbolKind::Jacobian => h.normalizer(g),
            SymbolKind::Curve | SymbolKind::Surface => {
                if !h.is_abelian(g) {
                    reasons.push("H is not abelian".into());
                    return reasons;
                }
                h.centralizer(g)
            }
        };
        if !y.is_subgroup_of(&upper) {
            let name = if s.kind() == SymbolKind::Jacobian { "N_G(H)/H" } else { "Z_G(H)/H" };
            reasons.push(format!("Y is not a subgroup of {name}"));
            return reasons;
        }

        let space = match s.kind() {
            SymbolKind::Curve => ActionSpace::Curve,
            SymbolKind::Surface => ActionSpace::RuledSurface,
            SymbolKind::Jacobian => ActionSpace::Jacobian,
        };
        if let Some(label) = self.label_checked(s.action(), space, &mut reasons) {
            let shape_ok = self
                .residual_group(h, y)
                .and_then(|q| Ok(label.group_shape.matches(&q)?));
            match shape_ok {
                Ok(true) => {}
                Ok(false) => reasons.push(format!(
                    "Y has order {} and does not match the shape {} of `{}`",
                    y.order() / h.order(),
                    label.group_shape,
                    label.id
                )),
                Err(e) => reasons.push(e.to_string()),
            }
            match s.kind() {
                SymbolKind::Curve | SymbolKind::Surface if !label.flags.faithful => {
                    reasons.push(format!("action `{}` is not faithful", label.id))
                }
                SymbolKind::Jacobian if self.genus() >= 2 && !label.flags.faithful => {
                    reasons.push(format!("action `{}` on J(C) is not faithful", label.id))
                }
                SymbolKind::Jacobian
                    if self.genus() == 1 && label.flags.underlying_curve_action.is_none() =>
                {
                    reasons.push(format!(
                        "action `{}` on J(C) does not come from a curve action",
                        label.id
                    ))
                }
                _ => {}
            }
        }

        for w in s.weights() {
            if w.host().subgroup() != h {
                reasons.push("weight is not a character of H".into());
                return reasons;
            }
        }
        match s {
            Symbol::Curve { weights, .. } => {
                if weights.iter().any(Character::is_trivial) {
                    reasons.push("weights must be nontrivial characters".into());
                }
                if !dual_generated_check(weights).unwrap_or(false) {
                    reasons.push("weights do not generate the dual of H".into());
                }
            }
            Symbol::Surface { weight, .. } => {
                if h.is_trivial() {
                    reasons.push("H must be nontrivial".into());
                } else if !dual_generated_check(std::slice::from_ref(weight)).unwrap_or(false) {
                    reasons.push("weight does not generate the dual of H".into());
                }
            }
            Symbol::Jacobian { .. } => {}
        }
        reasons
    }

    pub fn validate_symbol(&self, s: &Symbol) -> bool {
        self.diagnose(s).is_empty()
    }

    fn check(&self, s: &Symbol) -> Result<()> {
        let reasons = self.diagnose(s);
        if reasons.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSymbol {
                text: self.render(s),
                reasons,
            })
        }
    }

    /// Conjugation by `x`: `(H, Y, b) ↦ (xHx⁻¹, xYx⁻¹, b(x⁻¹·x))`.
    pub fn conjugate(&self, s: &Symbol, x: usize) -> Result<Symbol> {
        let g = &self.group;
        if x >= g.order() {
            return Err(GroupError::ElementOutOfRange(x).into());
        }
        let h = s.stabilizer().conjugate(g, x);
        let y = s.residual().conjugate(g, x);
        let action = s.action().to_string();
        let transport = |c: &Character| -> Result<Character> {
            Ok(c.transport(g, x, self.structure(&h)?)?)
        };
        Ok(match s {
            Symbol::Curve { weights, .. } => Symbol::Curve {
                weights: [transport(&weights[0])?, transport(&weights[1])?],
                h,
                y,
                action,
            },
            Symbol::Surface { weight, .. } => Symbol::Surface {
                weight: transport(weight)?,
                h,
                y,
                action,
            },
            Symbol::Jacobian { .. } => Symbol::Jacobian { h, y, action },
        })
    }

    /// Minimal representative under weight swaps and conjugation.
    pub fn canonicalize(&self, s: &Symbol) -> Result<Symbol> {
        self.check(s)?;
        let mut best = s.clone().with_sorted_weights();
        for x in self.group.elements().skip(1) {
            let c = self.conjugate(s, x)?.with_sorted_weights();
            if c < best {
                best = c;
            }
        }
        Ok(best)
    }

    pub fn curve_symbol(
        &self,
        h: &Subgroup,
        y: &Subgroup,
        action: &str,
        b1: Character,
        b2: Character,
    ) -> Result<Symbol> {
        self.canonicalize(&Symbol::Curve {
            h: h.clone(),
            y: y.clone(),
            action: action.into(),
            weights: [b1, b2],
        })
    }

    pub fn surface_symbol(&self, h: &Subgroup, y: &Subgroup, action: &str, b: Character) -> Result<Symbol> {
        self.canonicalize(&Symbol::Surface {
            h: h.clone(),
            y: y.clone(),
            action: action.into(),
            weight: b,
        })
    }

    pub fn jacobian_symbol(&self, h: &Subgroup, y: &Subgroup, action: &str) -> Result<Symbol> {
        self.canonicalize(&Symbol::Jacobian {
            h: h.clone(),
            y: y.clone(),
            action: action.into(),
        })
    }

    fn labels_matching(&self, space: ActionSpace, h: &Subgroup, y: &Subgroup) -> Result<Vec<&ActionLabel>> {
        let q = self.residual_group(h, y)?;
        let mut out = Vec::new();
        for label in self.catalog.labels_in(space) {
            if label.group_shape.matches(&q)? {
                out.push(label);
            }
        }
        Ok(out)
    }

    /// Every valid symbol for this group and catalog, once each, in order.
    pub fn enumerate_symbols(&self) -> Result<Vec<Symbol>> {
        let g = &self.group;
        let mut found = BTreeSet::new();
        for h in self.lattice.abelian_up_to_conjugacy(g) {
            if h.is_trivial() {
                // no nontrivial characters, so no curve or surface symbols
                continue;
            }
            let chars = self.nontrivial_characters(&h)?;
            let generators: Vec<&Character> = chars
                .iter()
                .filter(|c| dual_generated_check(std::slice::from_ref(*c)).unwrap_or(false))
                .collect();
            let z = h.centralizer(g);
            for y in self.lattice.between(&h, &z) {
                for label in self.labels_matching(ActionSpace::Curve, &h, y)? {
                    for (i, b1) in chars.iter().enumerate() {
                        for b2 in &chars[i..] {
                            let s = Symbol::Curve {
                                h: h.clone(),
                                y: y.clone(),
                                action: label.id.clone(),
                                weights: [b1.clone(), b2.clone()],
                            };
                            if self.validate_symbol(&s) {
                                found.insert(self.canonicalize(&s)?);
                            }
                        }
                    }
                }
                for label in self.labels_matching(ActionSpace::RuledSurface, &h, y)? {
                    for b in &generators {
                        let s = Symbol::Surface {
                            h: h.clone(),
                            y: y.clone(),
                            action: label.id.clone(),
                            weight: (*b).clone(),
                        };
                        if self.validate_symbol(&s) {
                            found.insert(self.canonicalize(&s)?);
                        }
                    }
                }
            }
        }
        for h in self.lattice.up_to_conjugacy(g) {
            let n = h.normalizer(g);
            for y in self.lattice.between(&h, &n) {
                for label in self.labels_matching(ActionSpace::Jacobian, &h, y)? {
                    let s = Symbol::Jacobian {
                        h: h.clone(),
                        y: y.clone(),
                        action: label.id.clone(),
                    };
                    if self.validate_symbol(&s) {
                        found.insert(self.canonicalize(&s)?);
                    }
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// `G`, `1`, or the element set `{a,b,…}`.
    pub fn render_subgroup(&self, h: &Subgroup) -> String {
        if h.is_whole(&self.group) {
            "G".into()
        } else if h.is_trivial() {
            "1".into()
        } else {
            let parts: Vec<String> = h.elements().iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        }
    }

    pub fn parse_subgroup(&self, text: &str) -> Result<Subgroup> {
        let text = text.trim();
        match text {
            "G" => Ok(self.whole()),
            "1" => Ok(Subgroup::trivial()),
            _ => {
                let inner = text
                    .strip_prefix('{')
                    .and_then(|t| t.strip_suffix('}'))
                    .ok_or_else(|| Error::parse("subgroup", format!("`{text}`")))?;
                let elements = inner
                    .split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::parse("subgroup", format!("`{text}`: {e}")))?;
                Ok(Subgroup::from_elements(&self.group, &elements)?)
            }
        }
    }

    fn render_character(c: &Character) -> String {
        if c.coords().is_empty() {
            "0".into()
        } else {
            c.to_string()
        }
    }

    fn parse_character(&self, h: &Subgroup, text: &str) -> Result<Character> {
        let host = self.structure(h)?;
        let coords: Vec<u64> = if host.factors().is_empty() && text.trim() == "0" {
            Vec::new()
        } else {
            text.split(':')
                .map(|p| p.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::parse("character", format!("`{text}`: {e}")))?
        };
        Ok(Character::new(Arc::clone(host), &coords)?)
    }

    /// Stable text form, e.g. `curve[H=G;Y=1;act=trivC;w=1,1]`.
    ///
    /// `Y=1` means the residual group is trivial; otherwise `Y` shows the
    /// preimage of the residual group in `G`.
    pub fn render(&self, s: &Symbol) -> String {
        let y = if s.residual() == s.stabilizer() {
            "1".to_string()
        } else {
            self.render_subgroup(s.residual())
        };
        let mut out = format!(
            "{}[H={};Y={};act={}",
            s.kind().tag(),
            self.render_subgroup(s.stabilizer()),
            y,
            s.action()
        );
        let weights = s.weights();
        if !weights.is_empty() {
            let parts: Vec<String> = weights.iter().map(|c| Self::render_character(c)).collect();
            out.push_str(";w=");
            out.push_str(&parts.join(","));
        }
        out.push(']');
        out
    }

    /// Inverse of [`Context::render`]; the result is validated and canonical.
    pub fn parse_symbol(&self, text: &str) -> Result<Symbol> {
        let text = text.trim();
        let err = |d: &str| Error::parse("symbol", format!("`{text}`: {d}"));
        let open = text.find('[').ok_or_else(|| err("missing `[`"))?;
        let body = text[open + 1..]
            .strip_suffix(']')
            .ok_or_else(|| err("missing `]`"))?;
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for part in body.split(';') {
            let (k, v) = part.split_once('=').ok_or_else(|| err("field without `=`"))?;
            if fields.insert(k.trim(), v.trim()).is_some() {
                return Err(err("repeated field"));
            }
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| err(&format!("missing `{k}`")));
        let h = self.parse_subgroup(get("H")?)?;
        let y = match get("Y")? {
            "1" => h.clone(),
            other => self.parse_subgroup(other)?,
        };
        let action = get("act")?.to_string();
        let weights = |n: usize| -> Result<Vec<Character>> {
            let w = get("w")?;
            let parts: Vec<&str> = w.split(',').collect();
            if parts.len() != n {
                return Err(err(&format!("expected {n} weight(s)")));
            }
            parts.iter().map(|p| self.parse_character(&h, p)).collect()
        };
        let expected_fields = match &text[..open] {
            "curve" | "surface" => 4,
            _ => 3,
        };
        if fields.len() != expected_fields {
            return Err(err("unexpected fields"));
        }
        let s = match &text[..open] {
            "curve" => {
                let mut w = weights(2)?;
                let b2 = w.pop().expect("two weights");
                let b1 = w.pop().expect("two weights");
                Symbol::Curve { h, y, action, weights: [b1, b2] }
            }
            "surface" => {
                let b = weights(1)?.pop().expect("one weight");
                Symbol::Surface { h, y, action, weight: b }
            }
            "jac" => Symbol::Jacobian { h, y, action },
            other => return Err(err(&format!("unknown symbol kind `{other}`"))),
        };
        self.canonicalize(&s)
    }

    /// Canonicalizes each symbol and sums.
    pub fn class_of_terms<'a>(&self, terms: impl IntoIterator<Item = (&'a Symbol, i64)>) -> Result<BurnsideClass> {
        let mut class = BurnsideClass::zero();
        for (s, c) in terms {
            class.add_term(self.canonicalize(s)?, c);
        }
        Ok(class)
    }

    /// `c₁*sym₁ + c₂*sym₂ …` with unit coefficients written as signs only.
    pub fn render_class(&self, class: &BurnsideClass) -> String {
        if class.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (s, &c)) in class.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}*", c.abs()));
            }
            out.push_str(&self.render(s));
        }
        out
    }

    /// `{"terms": {"<symbol>": coefficient, …}}`
    pub fn class_to_json(&self, class: &BurnsideClass) -> serde_json::Value {
        let terms: serde_json::Map<String, serde_json::Value> = class
            .terms()
            .map(|(s, &c)| (self.render(s), serde_json::Value::from(c)))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn class_from_json(&self, value: &serde_json::Value) -> Result<BurnsideClass> {
        let terms = value
            .get("terms")
            .and_then(|t| t.as_object())
            .ok_or_else(|| Error::parse("class", "expected an object with a `terms` map"))?;
        let mut class = BurnsideClass::zero();
        for (text, c) in terms {
            let c = c
                .as_i64()
                .ok_or_else(|| Error::parse("class", format!("coefficient of `{text}` is not an integer")))?;
            class.add_term(self.parse_symbol(text)?, c);
        }
        Ok(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ctx(group: &str, catalog: &str) -> Context {
        Context::new(
            fixtures::group(group).unwrap().unwrap(),
            fixtures::catalog(catalog).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn hyperelliptic_involution_has_five_symbols() {
        let c = ctx("Z2", "hyperelliptic-Z2");
        let syms: Vec<String> = c.enumerate_symbols().unwrap().iter().map(|s| c.render(s)).collect();
        assert_eq!(
            syms,
            vec![
                "curve[H=G;Y=1;act=trivC;w=1,1]",
                "surface[H=G;Y=1;act=trivCxP1;w=1]",
                "jac[H=1;Y=1;act=trivJ]",
                "jac[H=1;Y=G;act=invJ]",
                "jac[H=G;Y=1;act=trivJ]",
            ]
        );
    }

    #[test]
    fn trivial_group_only_has_trivial_jacobian_symbols() {
        let c = ctx("trivial", "hyperelliptic-Z2");
        let syms = c.enumerate_symbols().unwrap();
        assert_eq!(syms.len(), 1);
        assert!(syms.iter().all(|s| s.kind() == SymbolKind::Jacobian
            && s.stabilizer().is_trivial()
            && s.residual().is_trivial()));
    }

    #[test]
    fn z3_basic_has_eight_symbols() {
        let c = ctx("Z3", "Z3-basic");
        assert_eq!(c.enumerate_symbols().unwrap().len(), 8);
    }

    #[test]
    fn invalid_weights_are_diagnosed() {
        let c = ctx("Z2", "hyperelliptic-Z2");
        let g = c.whole();
        let zero = c.character(&g, &[0]).unwrap();
        let one = c.character(&g, &[1]).unwrap();
        let s = Symbol::Curve {
            h: g.clone(),
            y: g.clone(),
            action: "trivC".into(),
            weights: [zero, one.clone()],
        };
        assert!(!c.validate_symbol(&s));
        let s1 = Symbol::Curve {
            h: g.clone(),
            y: g.clone(),
            action: "trivC".into(),
            weights: [one.clone(), one],
        };
        assert!(c.diagnose(&s1).is_empty());

        let z4 = Context::new(FiniteGroup::cyclic(4).unwrap(), fixtures::catalog("hyperelliptic-Z2").unwrap()).unwrap();
        let h = z4.whole();
        let b = z4.character(&h, &[2]).unwrap();
        let s = Symbol::Surface {
            h: h.clone(),
            y: h,
            action: "trivCxP1".into(),
            weight: b,
        };
        assert!(z4.diagnose(&s).iter().any(|r| r.contains("generate")));
    }

    #[test]
    fn residual_shape_must_match_label() {
        let c = ctx("Z2", "hyperelliptic-Z2");
        let s = Symbol::Jacobian {
            h: Subgroup::trivial(),
            y: c.whole(),
            action: "trivJ".into(),
        };
        assert!(c.diagnose(&s).iter().any(|r| r.contains("shape")));
    }

    #[test]
    fn text_form_round_trips() {
        for (group, catalog) in [("Z2", "hyperelliptic-Z2"), ("Z3", "Z3-basic"), ("S3", "hyperelliptic-Z2")] {
            let c = ctx(group, catalog);
            for s in c.enumerate_symbols().unwrap() {
                assert_eq!(c.parse_symbol(&c.render(&s)).unwrap(), s);
            }
        }
    }

    #[test]
    fn conjugate_involutions_in_s3_share_a_canonical_form() {
        let c = ctx("S3", "hyperelliptic-Z2");
        let g = c.group();
        let involutions: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 2).collect();
        assert_eq!(involutions.len(), 3);
        let forms: BTreeSet<Symbol> = involutions
            .iter()
            .map(|&t| {
                let h = Subgroup::generated(g, &[t]).unwrap();
                let b = c.character(&h, &[1]).unwrap();
                c.curve_symbol(&h, &h, "trivC", b.clone(), b).unwrap()
            })
            .collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn class_json_round_trips() {
        let c = ctx("Z2", "hyperelliptic-Z2");
        let syms = c.enumerate_symbols().unwrap();
        let class = c.class_of_terms([(&syms[0], 2), (&syms[4], -1)]).unwrap();
        let back = c.class_from_json(&c.class_to_json(&class)).unwrap();
        assert_eq!(back, class);
        assert_eq!(
            c.render_class(&class),
            "2*curve[H=G;Y=1;act=trivC;w=1,1] - jac[H=G;Y=1;act=trivJ]"
        );
    }
}
