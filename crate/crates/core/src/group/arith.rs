/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Splits `n` as `p^a * m` with `p` not dividing `m`.
pub(crate) fn split_prime(mut n: u64, p: u64) -> (u64, u64) {
    let mut pa = 1;
    while n.is_multiple_of(p) {
        n /= p;
        pa *= p;
    }
    (pa, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisations() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(15));
        assert_eq!(split_prime(24, 2), (8, 3));
    }
}
