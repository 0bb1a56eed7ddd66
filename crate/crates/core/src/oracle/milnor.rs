use crate::error::{Error, Result};
use crate::group::{is_prime, Elem, GenEntry, Group, DEFAULT_MAX_ORDER};

/// Whether `Cay(G;{a,b})` is ruled out from having a hamiltonian path by
/// the order inequality: `|a| = 2`, `|b| = 3` and `|G| > 9·|ab²|`.
///
/// `false` proves nothing either way.
pub fn milnor_nonexistence(g: &Group, a: Elem, b: Elem) -> Result<bool> {
    if a >= g.order() || b >= g.order() {
        return Err(Error::InvalidInput("element index out of range".into()));
    }
    let generated = g.generated_subgroup([a, b]);
    if !generated.is_whole() {
        return Err(Error::NotGenerating {
            generated: generated.order(),
            order: g.order(),
        });
    }
    if g.element_order(a) != 2 || g.element_order(b) != 3 {
        return Ok(false);
    }
    let abb = g.mul(a, g.mul(b, b));
    Ok(g.order() > 9 * g.element_order(abb))
}

/// `Z₆ ⋉ Z_p = ⟨u, t | u⁶ = t^p = 1, u⁻¹tu = t^ζ⟩` for a prime `p ≡ 1 mod 6`,
/// with `ζ` the least element of multiplicative order 6 mod `p`.
///
/// Elements are pairs `(x, y)` with `x mod 6`, `y mod p`, stored at index
/// `x·p + y` and multiplied as `(x₁,y₁)(x₂,y₂) = (x₁+x₂, y₁ζ^{x₂} + y₂)`.
/// Returns the group with `a = u³` (order 2) and `b = u²t` (order 3),
/// labeled `a` and `b`.
pub fn semidirect_fixture(p: u64) -> Result<(Group, GenEntry, GenEntry)> {
    if !is_prime(p) || p % 6 != 1 {
        return Err(Error::BadPrime(p));
    }
    if p.saturating_mul(6) > DEFAULT_MAX_ORDER as u64 {
        return Err(Error::OrderCapExceeded {
            cap: DEFAULT_MAX_ORDER,
        });
    }
    let p = p as usize;
    let zeta = (2..p)
        .find(|&z| multiplicative_order(z, p) == 6)
        .expect("Z_p^× is cyclic of order divisible by 6");
    let powers: Vec<usize> = (0..6)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = *acc * zeta % p;
            Some(cur)
        })
        .collect();
    let labels = (0..6 * p)
        .map(|i| format!("({},{})", i / p, i % p))
        .collect();
    let g = Group::from_fn(6 * p, labels, |u, v| {
        let (x1, y1) = (u / p, u % p);
        let (x2, y2) = (v / p, v % p);
        ((x1 + x2) % 6) * p + (y1 * powers[x2] + y2) % p
    })?;
    let a = 3 * p;
    let b = 2 * p + 1;
    debug_assert!(g.generated_subgroup([a, b]).is_whole());
    Ok((g, GenEntry::new("a", a), GenEntry::new("b", b)))
}

fn multiplicative_order(z: usize, p: usize) -> usize {
    let mut x = z % p;
    let mut k = 1;
    while x != 1 {
        x = x * z % p;
        k += 1;
    }
    k
}
