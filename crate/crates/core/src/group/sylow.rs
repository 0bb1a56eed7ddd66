use super::arith::{factorize, split_prime};
use super::{Elem, Group, Subgroup};

/// The set of `p`-elements of a group for one prime `p` dividing the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowFactor {
    pub prime: u64,
    /// Elements whose order is a power of `prime`, ascending.
    pub elements: Vec<Elem>,
    /// Whether `elements` is closed under multiplication.
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowDecomposition {
    pub factors: Vec<SylowFactor>,
    pub nilpotent: bool,
}

impl SylowDecomposition {
    /// The Sylow `p`-subgroup when the `p`-elements form a subgroup.
    pub fn subgroup(&self, g: &Group, p: u64) -> Option<Subgroup> {
        let f = self.factors.iter().find(|f| f.prime == p)?;
        f.closed
            .then(|| Subgroup::from_members(g, &f.elements).expect("closed p-element set"))
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.prime).collect()
    }
}

impl Group {
    /// Splits `G` into its sets of `p`-elements and decides nilpotency.
    ///
    /// `G` is reported nilpotent when every such set is a subgroup, the sets
    /// commute elementwise and meet trivially, and their orders multiply to
    /// `|G|`.
    pub fn sylow_decomposition(&self) -> SylowDecomposition {
        let orders: Vec<u64> = self
            .elements()
            .map(|g| self.element_order(g) as u64)
            .collect();
        let mut factors = Vec::new();
        for (p, _) in factorize(self.order() as u64) {
            let elements: Vec<Elem> = self
                .elements()
                .filter(|&g| split_prime(orders[g], p).1 == 1)
                .collect();
            let closed = elements.iter().all(|&a| {
                elements
                    .iter()
                    .all(|&b| split_prime(orders[self.mul(a, b)], p).1 == 1)
            });
            factors.push(SylowFactor {
                prime: p,
                elements,
                closed,
            });
        }
        let all_closed = factors.iter().all(|f| f.closed);
        let sizes_multiply =
            factors.iter().map(|f| f.elements.len()).product::<usize>() == self.order();
        let mut commute = true;
        let mut trivial_meet = true;
        'pairs: for (i, f) in factors.iter().enumerate() {
            for h in &factors[i + 1..] {
                for &a in &f.elements {
                    for &b in &h.elements {
                        if a == b && a != 0 {
                            trivial_meet = false;
                        }
                        if self.mul(a, b) != self.mul(b, a) {
                            commute = false;
                            break 'pairs;
                        }
                    }
                }
            }
        }
        SylowDecomposition {
            nilpotent: all_closed && sizes_multiply && commute && trivial_meet,
            factors,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.sylow_decomposition().nilpotent
    }

    /// The `p`-part of `g`: `g^e` with `e ≡ 1 (mod p^a)` and `e ≡ 0 (mod m)`,
    /// where `|g| = p^a m` and `p ∤ m`.
    pub fn prime_component(&self, g: Elem, p: u64) -> Elem {
        let (pa, m) = split_prime(self.element_order(g) as u64, p);
        if pa == 1 {
            return 0;
        }
        // m is invertible mod p^a; the multiplier is found by scanning.
        let k = (0..pa).find(|k| (m * k) % pa == 1).expect("coprime");
        self.pow(g, (m * k) as usize)
    }
}

#[cfg(test)]
mod tests {
    use crate::builtin;

    #[test]
    fn cyclic_six() {
        let z6 = builtin::cyclic(6);
        let d = z6.sylow_decomposition();
        assert!(d.nilpotent);
        assert_eq!(d.primes(), vec![2, 3]);
        assert_eq!(d.factors[0].elements, vec![0, 3]);
        assert_eq!(d.factors[1].elements, vec![0, 2, 4]);
    }

    #[test]
    fn symmetric_three_is_not_nilpotent() {
        let s3 = builtin::symmetric(3).unwrap();
        let d = s3.sylow_decomposition();
        assert!(!d.nilpotent);
        assert!(!d.factors[0].closed);
        assert!(d.subgroup(&s3, 2).is_none());
    }

    #[test]
    fn q8_is_a_two_group() {
        let q8 = builtin::quaternion8();
        let d = q8.sylow_decomposition();
        assert!(d.nilpotent);
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].elements.len(), 8);
        assert!(d.subgroup(&q8, 2).unwrap().is_whole());
    }

    #[test]
    fn prime_components() {
        let z6 = builtin::cyclic(6);
        assert_eq!(z6.prime_component(0, 2), 0);
        assert_eq!(z6.prime_component(1, 2), 3);
        assert_eq!(z6.prime_component(1, 3), 4);
        assert_eq!(z6.mul(3, 4), 1);
        let q8 = builtin::quaternion8();
        let i = q8.find_label("i").unwrap();
        assert_eq!(q8.prime_component(i, 2), i);
    }
}
