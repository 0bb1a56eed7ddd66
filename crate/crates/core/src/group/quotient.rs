use super::{Elem, Group, Subgroup};
use crate::error::Result;

/// `K/N` for a normal subgroup `N` of `K`, on coset indices.
///
/// Cosets are numbered by ascending minimal member, so coset 0 is `N`
/// itself and `section` returns minimal representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    kernel: Subgroup,
    group: Group,
    project: Vec<usize>,
    section: Vec<Elem>,
}

impl QuotientGroup {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Coset index of an element of `K`.
    pub fn project(&self, x: Elem) -> usize {
        self.project[x]
    }

    /// Minimal representative of a coset.
    pub fn section(&self, c: usize) -> Elem {
        self.section[c]
    }

    pub fn projection(&self) -> &[usize] {
        &self.project
    }
}

impl Group {
    /// `self / n`, after checking `n ◁ self` by a conjugation scan.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        self.require_normal(n)?;
        let cosets = self.right_cosets(n);
        let project = cosets.element_map().to_vec();
        let section: Vec<Elem> = (0..cosets.len())
            .map(|c| cosets.representative(c))
            .collect();
        let labels = section
            .iter()
            .map(|&r| {
                if n.is_trivial() {
                    self.label(r).to_string()
                } else {
                    format!("[{}]", self.label(r))
                }
            })
            .collect();
        let group = Group::from_fn(section.len(), labels, |a, b| {
            project[self.mul(section[a], section[b])]
        })?;
        Ok(QuotientGroup {
            kernel: n.clone(),
            group,
            project,
            section,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::builtin;
    use crate::error::Error;
    use crate::group::Subgroup;

    #[test]
    fn trivial_quotient() {
        let q8 = builtin::quaternion8();
        let q = q8.quotient(&Subgroup::whole(&q8)).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn q8_mod_center_is_klein() {
        let q8 = builtin::quaternion8();
        let z = q8.generated_subgroup([q8.find_label("-1").unwrap()]);
        let q = q8.quotient(&z).unwrap();
        assert_eq!(q.order(), 4);
        for c in 1..4 {
            assert_eq!(q.group().element_order(c), 2);
        }
        // Projection is a homomorphism and section is a right inverse.
        for a in q8.elements() {
            for b in q8.elements() {
                assert_eq!(
                    q.project(q8.mul(a, b)),
                    q.group().mul(q.project(a), q.project(b))
                );
            }
        }
        for c in 0..4 {
            assert_eq!(q.project(q.section(c)), c);
        }
        let kernel: Vec<_> = q8.elements().filter(|&x| q.project(x) == 0).collect();
        assert_eq!(kernel, z.members());
    }

    #[test]
    fn non_normal_quotient_is_rejected() {
        let d4 = builtin::dihedral(8).unwrap();
        let f = d4.find_label("f").unwrap();
        let h = d4.generated_subgroup([f]);
        assert_eq!(
            d4.quotient(&h).unwrap_err(),
            Error::NotNormal {
                element: f,
                conjugator: d4.find_label("r").unwrap()
            }
        );
    }
}
