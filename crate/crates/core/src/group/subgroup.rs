use std::collections::{HashSet, VecDeque};

use super::{FiniteGroup, GroupError};

/// A subgroup, stored as its sorted element indices in the ambient group.
///
/// The derived ordering is lexicographic on the sorted element list; it is
/// used to pick conjugacy-class representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: g.elements().collect(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Result<Self, GroupError> {
        if let Some(&x) = gens.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::ElementOutOfRange(x));
        }
        Ok(Self::closure(g, gens))
    }

    fn closure(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut found = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    found.push(y);
                    queue.push_back(y);
                }
            }
        }
        found.sort_unstable();
        Subgroup { elements: found }
    }

    /// Validates that `elements` is closed, contains the identity and inverses.
    pub fn from_elements(g: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::ElementOutOfRange(x));
        }
        let sub = Subgroup { elements };
        if !sub.contains(0) {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        for &a in &sub.elements {
            if !sub.contains(g.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &sub.elements {
                if !sub.contains(g.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self, g: &FiniteGroup) -> bool {
        self.elements.len() == g.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        let e = &self.elements;
        e.iter()
            .enumerate()
            .all(|(i, &a)| e[..i].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .any(|&x| g.element_order(x) == self.order())
    }

    /// `x H x⁻¹`
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| g.conj(x, h)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn centralizer(&self, g: &FiniteGroup) -> Subgroup {
        let elements = g
            .elements()
            .filter(|&x| self.elements.iter().all(|&h| g.mul(x, h) == g.mul(h, x)))
            .collect();
        Subgroup { elements }
    }

    pub fn normalizer(&self, g: &FiniteGroup) -> Subgroup {
        let elements = g
            .elements()
            .filter(|&x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
            .collect();
        Subgroup { elements }
    }

    pub fn is_normal_in(&self, g: &FiniteGroup, over: &Subgroup) -> bool {
        self.is_subgroup_of(over)
            && over
                .elements
                .iter()
                .all(|&x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    /// The conjugate of `self` with the lexicographically smallest element set.
    pub fn conjugacy_representative(&self, g: &FiniteGroup) -> Subgroup {
        g.elements()
            .map(|x| self.conjugate(g, x))
            .min()
            .expect("group is nonempty")
    }

    /// `over / self` as an abstract group.
    pub fn quotient_of(&self, g: &FiniteGroup, over: &Subgroup) -> Result<Quotient, GroupError> {
        Quotient::new(g, over, self)
    }
}

/// Quotient `N/H` together with the coset map from ambient elements.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FiniteGroup,
    coset_of: Vec<Option<usize>>,
    section: Vec<usize>,
}

impl Quotient {
    pub fn new(g: &FiniteGroup, n: &Subgroup, h: &Subgroup) -> Result<Self, GroupError> {
        if !h.is_normal_in(g, n) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![None; g.order()];
        let mut section = Vec::new();
        // cosets numbered by their smallest element, so the identity coset is 0
        for &x in n.elements() {
            if coset_of[x].is_none() {
                let idx = section.len();
                section.push(x);
                for &y in h.elements() {
                    coset_of[g.mul(x, y)] = Some(idx);
                }
            }
        }
        let k = section.len();
        let mut mul = vec![vec![0; k]; k];
        for (i, row) in mul.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = coset_of[g.mul(section[i], section[j])].expect("N is closed");
            }
        }
        let group = FiniteGroup::from_table_with_bound(&mul, usize::MAX)?;
        Ok(Quotient {
            group,
            coset_of,
            section,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coset_of(&self, x: usize) -> Option<usize> {
        self.coset_of.get(x).copied().flatten()
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }
}

/// Every subgroup of a finite group, ordered by (order, elements).
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    all: Vec<Subgroup>,
}

impl SubgroupLattice {
    /// Every subgroup is a join of cyclic subgroups; close the set of cyclic
    /// subgroups under joins with one more cyclic subgroup.
    pub fn new(g: &FiniteGroup) -> Self {
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        let mut seen_cyclic = HashSet::new();
        for x in g.elements() {
            let c = Subgroup::closure(g, &[x]);
            if seen_cyclic.insert(c.clone()) {
                cyclic.push((x, c));
            }
        }
        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut queue: VecDeque<(Vec<usize>, Subgroup)> = VecDeque::new();
        for (x, c) in &cyclic {
            if found.insert(c.clone()) {
                queue.push_back((vec![*x], c.clone()));
            }
        }
        while let Some((gens, sub)) = queue.pop_front() {
            for (x, c) in &cyclic {
                if c.is_subgroup_of(&sub) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.push(*x);
                let join = Subgroup::closure(g, &next_gens);
                if found.insert(join.clone()) {
                    queue.push_back((next_gens, join));
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        SubgroupLattice { all }
    }

    pub fn all(&self) -> &[Subgroup] {
        &self.all
    }

    /// Subgroups `K` with `lower ⊆ K ⊆ upper`.
    pub fn between<'a>(
        &'a self,
        lower: &'a Subgroup,
        upper: &'a Subgroup,
    ) -> impl Iterator<Item = &'a Subgroup> + 'a {
        self.all
            .iter()
            .filter(move |k| lower.is_subgroup_of(k) && k.is_subgroup_of(upper))
    }

    /// One representative per conjugacy class, lexicographically minimal.
    pub fn up_to_conjugacy(&self, g: &FiniteGroup) -> Vec<Subgroup> {
        self.representatives(g, |_| true)
    }

    pub fn abelian_up_to_conjugacy(&self, g: &FiniteGroup) -> Vec<Subgroup> {
        self.representatives(g, |h| h.is_abelian(g))
    }

    fn representatives(&self, g: &FiniteGroup, keep: impl Fn(&Subgroup) -> bool) -> Vec<Subgroup> {
        let mut reps: Vec<Subgroup> = self
            .all
            .iter()
            .filter(|h| keep(h))
            .map(|h| h.conjugacy_representative(g))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        reps.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        reps
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![2, 1, 3], vec![2, 3, 1]]).unwrap()
    }

    /// All subgroups by checking every subset for closure.
    fn subgroups_by_subsets(g: &FiniteGroup) -> Vec<Subgroup> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let elems: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if let Ok(s) = Subgroup::from_elements(g, &elems) {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn abelian_reps_of_small_cyclic_groups() {
        for n in [2, 3] {
            let g = FiniteGroup::cyclic(n).unwrap();
            let reps = SubgroupLattice::new(&g).abelian_up_to_conjugacy(&g);
            assert_eq!(reps, vec![Subgroup::trivial(), Subgroup::whole(&g)]);
        }
    }

    #[test]
    fn abelian_reps_of_s3_are_trivial_c2_c3() {
        let g = s3();
        let reps = SubgroupLattice::new(&g).abelian_up_to_conjugacy(&g);
        let orders: Vec<usize> = reps.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3]);
        // brute force: the abelian subgroups of S3 fall into exactly these classes
        let abelian: Vec<Subgroup> = subgroups_by_subsets(&g)
            .into_iter()
            .filter(|h| h.is_abelian(&g))
            .collect();
        assert_eq!(abelian.len(), 5);
        for h in &abelian {
            let matching = reps
                .iter()
                .filter(|r| g.elements().any(|x| h.conjugate(&g, x) == **r))
                .count();
            assert_eq!(matching, 1);
        }
    }

    #[test]
    fn lattice_matches_subset_enumeration() {
        let groups = [
            s3(),
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::abelian(&[2, 2, 2]).unwrap(),
            FiniteGroup::from_permutations(4, &[vec![2, 3, 4, 1], vec![4, 3, 2, 1]]).unwrap(),
        ];
        for g in &groups {
            let mut brute = subgroups_by_subsets(g);
            brute.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
            assert_eq!(SubgroupLattice::new(g).all(), brute.as_slice());
        }
    }

    #[test]
    fn centralizer_normalizer_quotient() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let whole = Subgroup::whole(&g);
        assert_eq!(whole.centralizer(&g), whole);

        let c4 = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::generated(&c4, &[2]).unwrap();
        let q = h.quotient_of(&c4, &Subgroup::whole(&c4)).unwrap();
        assert_eq!(q.group().order(), 2);
        assert!(is_cyclic_group(q.group()));
        assert_eq!(q.coset_of(2), Some(0));
        assert_eq!(q.coset_of(3), Some(1));

        let g = s3();
        let c3 = SubgroupLattice::new(&g)
            .all()
            .iter()
            .find(|h| h.order() == 3)
            .unwrap()
            .clone();
        assert_eq!(c3.normalizer(&g), Subgroup::whole(&g));
        let c2 = SubgroupLattice::new(&g)
            .all()
            .iter()
            .find(|h| h.order() == 2)
            .unwrap()
            .clone();
        assert_eq!(c2.normalizer(&g), c2);
        assert_eq!(
            c2.quotient_of(&g, &Subgroup::whole(&g)).unwrap_err(),
            GroupError::NotNormal
        );
    }

    fn is_cyclic_group(g: &FiniteGroup) -> bool {
        Subgroup::whole(g).is_cyclic(g)
    }

    #[test]
    fn conjugating_c2_in_s3_by_a_three_cycle_moves_it() {
        let g = s3();
        let c2 = SubgroupLattice::new(&g)
            .all()
            .iter()
            .find(|h| h.order() == 2)
            .unwrap()
            .clone();
        let three_cycle = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        let moved = c2.conjugate(&g, three_cycle);
        assert_eq!(moved.order(), 2);
        assert_ne!(moved, c2);
        assert_eq!(c2.conjugate(&g, 0), c2);
    }
}
