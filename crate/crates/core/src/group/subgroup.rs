use std::collections::VecDeque;

use super::{Elem, Group};
use crate::error::{Error, Result};

/// A subgroup of some parent [`Group`], stored as its sorted member list.
///
/// The member list starts with the identity, so the position of an element
/// in `members()` is its index in [`Group::subgroup_as_group`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub(crate) fn from_mask(mask: Vec<bool>) -> Subgroup {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    pub fn trivial(g: &Group) -> Subgroup {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Subgroup::from_mask(mask)
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup::from_mask(vec![true; g.order()])
    }

    /// Checks closure and returns the subgroup with the given members.
    pub fn from_members(g: &Group, members: &[Elem]) -> Result<Subgroup> {
        let mut mask = vec![false; g.order()];
        for &x in members {
            if x >= g.order() {
                return Err(Error::InvalidInput(format!("element {x} out of range")));
            }
            mask[x] = true;
        }
        let h = Subgroup::from_mask(mask);
        if !h.contains(0) {
            return Err(Error::InvalidInput(
                "subgroup must contain the identity".into(),
            ));
        }
        for &a in &h.members {
            if !h.contains(g.inv(a)) || h.members.iter().any(|&b| !h.contains(g.mul(a, b))) {
                return Err(Error::InvalidInput("member set is not closed".into()));
            }
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, g: Elem) -> bool {
        self.mask.get(g).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn index_in_parent(&self) -> usize {
        self.mask.len() / self.members.len()
    }

    /// Position of `g` in the member list.
    pub fn local_index(&self, g: Elem) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }
}

/// Partition of a group into right cosets `Hg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    coset_of: Vec<usize>,
    cosets: Vec<Vec<Elem>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g]
    }

    /// Members of coset `c`, ascending.
    pub fn members(&self, c: usize) -> &[Elem] {
        &self.cosets[c]
    }

    /// Minimal member of coset `c`.
    pub fn representative(&self, c: usize) -> Elem {
        self.cosets[c][0]
    }

    pub fn cosets(&self) -> &[Vec<Elem>] {
        &self.cosets
    }

    pub fn element_map(&self) -> &[usize] {
        &self.coset_of
    }
}

impl Group {
    /// Smallest subgroup containing `xs`.
    pub fn generated_subgroup(&self, xs: impl IntoIterator<Item = Elem>) -> Subgroup {
        let mut gens: Vec<Elem> = xs.into_iter().filter(|&x| x != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    /// `⟨s⁻¹t : s, t ∈ S⟩`, computed as `⟨a⁻¹S⟩` for the first entry `a`
    /// and cross-checked against every other choice of `a`.
    pub fn arc_forcing_subgroup(&self, s: &super::GenSet) -> Result<Subgroup> {
        let elems = s.elements();
        let Some(&a) = elems.first() else {
            return Err(Error::EmptyGenSet);
        };
        let h = self.generated_subgroup(elems.iter().map(|&x| self.mul(self.inv(a), x)));
        for &b in &elems[1..] {
            let other = self.generated_subgroup(elems.iter().map(|&x| self.mul(self.inv(b), x)));
            if other != h {
                return Err(Error::InternalInvariantViolation(
                    "arc-forcing subgroup depends on the chosen base generator".into(),
                ));
            }
        }
        Ok(h)
    }

    pub fn generates(&self, s: &super::GenSet) -> bool {
        self.generated_subgroup(s.elements()).is_whole()
    }

    pub(crate) fn require_generating(&self, s: &super::GenSet) -> Result<()> {
        let h = self.generated_subgroup(s.elements());
        if h.is_whole() {
            Ok(())
        } else {
            Err(Error::NotGenerating {
                generated: h.order(),
                order: self.order(),
            })
        }
    }

    /// Right cosets `Hg`, numbered by ascending minimal member.
    pub fn right_cosets(&self, h: &Subgroup) -> CosetTable {
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = Vec::with_capacity(h.index_in_parent());
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = cosets.len();
            let mut members: Vec<Elem> = h.members().iter().map(|&x| self.mul(x, g)).collect();
            members.sort_unstable();
            for &m in &members {
                coset_of[m] = c;
            }
            cosets.push(members);
        }
        CosetTable { coset_of, cosets }
    }

    /// Whether `g⁻¹Hg = H`.
    pub fn normalizes(&self, g: Elem, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| h.contains(self.conj(x, g)))
    }

    /// `N_G(H)` by a conjugation scan over all of `G`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_within(&Subgroup::whole(self), h)
    }

    /// `N_K(H) = { k ∈ K : k⁻¹Hk = H }`.
    pub fn normalizer_within(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.order()];
        for &g in k.members() {
            mask[g] = self.normalizes(g, h);
        }
        Subgroup::from_mask(mask)
    }

    /// First `(conjugator, element)` pair, in index order, with
    /// `conjugator ∈ K`, `element ∈ N` and `conjugator⁻¹ element conjugator ∉ N`.
    pub fn normality_witness(&self, n: &Subgroup, k: &Subgroup) -> Option<(Elem, Elem)> {
        k.members().iter().find_map(|&g| {
            n.members()
                .iter()
                .find(|&&x| !n.contains(self.conj(x, g)))
                .map(|&x| (g, x))
        })
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.normality_witness(n, &Subgroup::whole(self)).is_none()
    }

    /// Whether `N ◁ K` (requires `N ⊆ K`).
    pub fn is_normal_in(&self, n: &Subgroup, k: &Subgroup) -> bool {
        n.is_subset_of(k) && self.normality_witness(n, k).is_none()
    }

    pub fn require_normal(&self, n: &Subgroup) -> Result<()> {
        match self.normality_witness(n, &Subgroup::whole(self)) {
            None => Ok(()),
            Some((conjugator, element)) => Err(Error::NotNormal {
                element,
                conjugator,
            }),
        }
    }

    /// `H^G = ⟨g⁻¹hg : h ∈ H, g ∈ G⟩`.
    pub fn normal_closure(&self, h: &Subgroup) -> Subgroup {
        self.normal_closure_within(&Subgroup::whole(self), h)
    }

    /// `H^K`, conjugating only by elements of `K`.
    pub fn normal_closure_within(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        let mut conjugates = Vec::with_capacity(h.order() * k.order());
        for &g in k.members() {
            for &x in h.members() {
                conjugates.push(self.conj(x, g));
            }
        }
        self.generated_subgroup(conjugates)
    }

    /// `H` as a group in its own right, element `i` being `H.members()[i]`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Group {
        let members = h.members();
        let labels = members.iter().map(|&x| self.label(x).to_string()).collect();
        Group::from_fn(members.len(), labels, |a, b| {
            h.local_index(self.mul(members[a], members[b]))
                .expect("subgroup is closed")
        })
        .expect("subgroup of a group is a group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::group::GenSet;

    fn el(g: &Group, label: &str) -> Elem {
        g.find_label(label)
            .unwrap_or_else(|| panic!("no label {label}"))
    }

    fn set(g: &Group, labels: &[&str]) -> Vec<Elem> {
        let mut v: Vec<Elem> = labels.iter().map(|l| el(g, l)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn generated_subgroups() {
        let q8 = builtin::quaternion8();
        assert!(q8.generated_subgroup([]).is_trivial());
        let h = q8.generated_subgroup([el(&q8, "i")]);
        assert_eq!(h.members(), set(&q8, &["1", "i", "-1", "-i"]));

        let d4 = builtin::dihedral(8).unwrap();
        let h = d4.generated_subgroup([el(&d4, "r2"), el(&d4, "f")]);
        assert_eq!(h.members(), set(&d4, &["e", "r2", "f", "r2f"]));
    }

    #[test]
    fn arc_forcing_examples() {
        let z6 = builtin::cyclic(6);
        let one = GenSet::from_elements(&z6, &[1]).unwrap();
        assert!(z6.arc_forcing_subgroup(&one).unwrap().is_trivial());
        let s = GenSet::from_elements(&z6, &[2, 5]).unwrap();
        assert_eq!(z6.arc_forcing_subgroup(&s).unwrap().members(), &[0, 3]);

        let q8 = builtin::quaternion8();
        let s = GenSet::parse(&q8, "i,j").unwrap();
        assert_eq!(
            q8.arc_forcing_subgroup(&s).unwrap().members(),
            set(&q8, &["1", "k", "-1", "-k"])
        );
        let empty = GenSet::new(vec![]).unwrap();
        assert_eq!(q8.arc_forcing_subgroup(&empty), Err(Error::EmptyGenSet));
    }

    #[test]
    fn coset_tables() {
        let d4 = builtin::dihedral(8).unwrap();
        assert_eq!(d4.right_cosets(&Subgroup::whole(&d4)).len(), 1);
        let rot = d4.generated_subgroup([el(&d4, "r")]);
        assert_eq!(d4.right_cosets(&rot).len(), 2);
        let refl = d4.generated_subgroup([el(&d4, "f")]);
        let t = d4.right_cosets(&refl);
        assert_eq!(t.len(), 4);
        assert_eq!(t.coset_of(0), 0);
        for c in 0..t.len() {
            // Hg for the representative reproduces the coset.
            let rep = t.representative(c);
            let mut hg: Vec<Elem> = refl.members().iter().map(|&h| d4.mul(h, rep)).collect();
            hg.sort_unstable();
            assert_eq!(hg, t.members(c));
        }
    }

    #[test]
    fn normalizers() {
        let d4 = builtin::dihedral(8).unwrap();
        let rot = d4.generated_subgroup([el(&d4, "r")]);
        assert!(d4.normalizer(&rot).is_whole());
        let refl = d4.generated_subgroup([el(&d4, "f")]);
        assert_eq!(
            d4.normalizer(&refl).members(),
            set(&d4, &["e", "f", "r2", "r2f"])
        );

        let s3 = builtin::symmetric(3).unwrap();
        let t = s3.generated_subgroup([el(&s3, "(0 1)")]);
        assert_eq!(s3.normalizer(&t), t);
    }

    #[test]
    fn normal_closures() {
        let d4 = builtin::dihedral(8).unwrap();
        let rot = d4.generated_subgroup([el(&d4, "r")]);
        assert_eq!(d4.normal_closure(&rot), rot);
        let h = d4.generated_subgroup([el(&d4, "r3f")]);
        assert_eq!(
            d4.normal_closure(&h).members(),
            set(&d4, &["e", "r2", "rf", "r3f"])
        );
        let s3 = builtin::symmetric(3).unwrap();
        let t = s3.generated_subgroup([el(&s3, "(0 1)")]);
        assert!(s3.normal_closure(&t).is_whole());
    }

    #[test]
    fn normality_witness_for_reflection() {
        let d4 = builtin::dihedral(8).unwrap();
        let refl = d4.generated_subgroup([el(&d4, "f")]);
        assert_eq!(
            d4.require_normal(&refl),
            Err(Error::NotNormal {
                element: el(&d4, "f"),
                conjugator: el(&d4, "r")
            })
        );
        assert_eq!(d4.conj(el(&d4, "f"), el(&d4, "r")), el(&d4, "r2f"));
    }

    #[test]
    fn from_members_checks_closure() {
        let z4 = builtin::cyclic(4);
        assert!(Subgroup::from_members(&z4, &[0, 2]).is_ok());
        assert!(Subgroup::from_members(&z4, &[0, 1]).is_err());
        assert!(Subgroup::from_members(&z4, &[2]).is_err());
    }

    #[test]
    fn subgroup_as_group_keeps_order_of_members() {
        let q8 = builtin::quaternion8();
        let h = q8.generated_subgroup([el(&q8, "k")]);
        let hg = q8.subgroup_as_group(&h);
        assert_eq!(hg.order(), 4);
        assert!(hg.is_cyclic());
        for (i, &x) in h.members().iter().enumerate() {
            assert_eq!(hg.label(i), q8.label(x));
        }
    }
}
