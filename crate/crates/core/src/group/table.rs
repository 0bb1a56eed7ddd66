use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Elem;
use crate::error::{Error, Result};

/// Default cap on the order of constructed groups.
pub const DEFAULT_MAX_ORDER: usize = 2048;

/// Up to this order associativity is checked over every triple; above it a
/// fixed-seed sample of triples is checked instead.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;

const SAMPLED_TRIPLES: usize = 1 << 21;

/// A finite group given by its full multiplication table.
///
/// Element `0` is the identity. Tables are validated on construction and the
/// type is immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl Group {
    /// Builds a group from a square multiplication table.
    ///
    /// If the identity is not at index 0 the table is reindexed by swapping
    /// the identity with element 0 (labels move with their elements).
    pub fn from_table(table: &[Vec<usize>], labels: Vec<String>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty multiplication table".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidInput("table too large".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} labels for a table of order {n}",
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate element label `{l}`"
                )));
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {r} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidInput(format!(
                        "entry {x} out of range in row {r}"
                    )));
                }
                flat.push(x as u32);
            }
        }
        Self::from_flat(n, flat, labels)
    }

    /// Builds a group of order `n` from a multiplication function. The
    /// result goes through the same validation as [`Group::from_table`].
    pub fn from_fn(
        n: usize,
        labels: Vec<String>,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Group> {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        Self::from_table(&table, labels)
    }

    fn from_flat(n: usize, mut mul: Vec<u32>, mut labels: Vec<String>) -> Result<Group> {
        // Latin square.
        let mut mark = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let x = mul[a * n + b] as usize;
                if mark[x] == a {
                    let first = (0..b).find(|&c| mul[a * n + c] as usize == x).unwrap_or(0);
                    return Err(Error::NotAGroup {
                        reason: "row is not a permutation",
                        witness: [a, first, b],
                    });
                }
                mark[x] = a;
            }
        }
        mark.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let x = mul[a * n + b] as usize;
                if mark[x] == b {
                    let first = (0..a).find(|&c| mul[c * n + b] as usize == x).unwrap_or(0);
                    return Err(Error::NotAGroup {
                        reason: "column is not a permutation",
                        witness: [first, a, b],
                    });
                }
                mark[x] = b;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] as usize == g && mul[g * n + e] as usize == g))
            .ok_or(Error::NotAGroup {
                reason: "no identity element",
                witness: [0, 0, 0],
            })?;
        if identity != 0 {
            let swap = |x: usize| match x {
                0 => identity,
                x if x == identity => 0,
                x => x,
            };
            let old = mul.clone();
            for a in 0..n {
                for b in 0..n {
                    mul[swap(a) * n + swap(b)] = swap(old[a * n + b] as usize) as u32;
                }
            }
            labels.swap(0, identity);
        }

        let mut inv = vec![0u32; n];
        for g in 0..n {
            // Latin rows contain 0 exactly once.
            let h = (0..n).find(|&h| mul[g * n + h] == 0).expect("latin row");
            if mul[h * n + g] != 0 {
                return Err(Error::NotAGroup {
                    reason: "right inverse is not a left inverse",
                    witness: [g, h, 0],
                });
            }
            inv[g] = h as u32;
        }

        let group = Group {
            order: n,
            mul,
            inv,
            labels,
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let fail = |a, b, c| Error::NotAGroup {
            reason: "multiplication is not associative",
            witness: [a, b, c],
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    let row_ab = &self.mul[ab * n..(ab + 1) * n];
                    let row_b = &self.mul[b * n..(b + 1) * n];
                    let row_a = &self.mul[a * n..(a + 1) * n];
                    for c in 0..n {
                        if row_ab[c] != row_a[row_b[c] as usize] {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6a09e667);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    /// Closes a set of permutations of `0..d` under composition.
    ///
    /// Elements are indexed in breadth-first discovery order from the
    /// identity: each discovered element is right-multiplied by the
    /// generators in the order given. Permutations act on the right, so
    /// `(p * q)[x] = q[p[x]]`.
    pub fn from_permutations(gens: &[Vec<usize>], cap: usize) -> Result<Group> {
        let degree = gens.first().map_or(0, Vec::len);
        for (i, p) in gens.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::InvalidInput(format!(
                    "generator {i} has degree {}, expected {degree}",
                    p.len()
                )));
            }
            let mut hit = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::InvalidInput(format!(
                        "generator {i} is not a bijection"
                    )));
                }
            }
        }
        let compose =
            |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&x| q[x]).collect() };

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let next = compose(&elements[i], s);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }

        let n = elements.len();
        let mut flat = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                flat.push(index[&compose(a, b)] as u32);
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::from_flat(n, flat, labels)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    /// `g⁻¹ h g`.
    #[inline]
    pub fn conj(&self, h: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub fn pow(&self, g: Elem, k: usize) -> Elem {
        let (mut acc, mut base, mut k) = (0, g, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn label(&self, g: Elem) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    /// The multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Least `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True when some element has order `|G|`.
    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order)
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
