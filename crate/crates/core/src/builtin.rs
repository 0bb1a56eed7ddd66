//! Built-in group constructors and the `builtin:` naming scheme.
//!
//! Names accepted by [`parse`] (the `builtin:` prefix is optional):
//!
//! | name                 | group                                        |
//! |----------------------|----------------------------------------------|
//! | `cyclic:N`, `zN`     | cyclic group of order N                      |
//! | `q8`                 | quaternion group, elements `±1, ±i, ±j, ±k`  |
//! | `quaternion:N`, `qN` | dicyclic group of order N (generalized quaternion when N is a power of 2) |
//! | `dihedral:N`, `dN`   | dihedral group of order N (N even)           |
//! | `modular:N`, `mN`    | modular 2-group of order N ≥ 16              |
//! | `heisenberg:P`, `hP` | unitriangular 3×3 matrices over Z_P          |
//! | `symmetric:N`, `sN`  | symmetric group on N points                  |
//! | `semidirect:P`       | Z_6 ⋉ Z_P (see [`crate::oracle::semidirect_fixture`]) |
//! | `product:A,B,...`    | direct product of the listed components      |

use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_MAX_ORDER};
use crate::oracle::semidirect_fixture;

pub fn cyclic(n: usize) -> Group {
    assert!(n >= 1, "cyclic group needs positive order");
    let labels = (0..n).map(|i| i.to_string()).collect();
    Group::from_fn(n, labels, |a, b| (a + b) % n).expect("cyclic group")
}

/// The quaternion group with elements ordered `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> Group {
    // Units 1, i, j, k as 0..4; unit products as (sign, unit).
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
        .collect();
    Group::from_fn(8, labels, |a, b| {
        let (sign, unit) = UNIT[a / 2][b / 2];
        2 * unit + (sign + a % 2 + b % 2) % 2
    })
    .expect("quaternion group")
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        k => format!("{base}{k}"),
    }
}

fn word_label(parts: &[String]) -> String {
    let s: String = parts.concat();
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// Dihedral group of the given order, elements `r^a f^e` with `f r f = r⁻¹`.
pub fn dihedral(order: usize) -> Result<Group> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "dihedral order {order} must be even"
        )));
    }
    let n = order / 2;
    let labels = (0..order)
        .map(|x| word_label(&[power_label("r", x % n), power_label("f", x / n)]))
        .collect();
    Group::from_fn(order, labels, |x, y| {
        let (a, e) = (x % n, x / n);
        let (b, d) = (y % n, y / n);
        let rot = if e == 0 { a + b } else { a + n - b } % n;
        rot + n * ((e + d) % 2)
    })
}

/// Dicyclic group `⟨a, b | a^{2n} = 1, b² = aⁿ, b⁻¹ab = a⁻¹⟩` of order `4n`.
pub fn dicyclic(order: usize) -> Result<Group> {
    if order < 8 || !order.is_multiple_of(4) {
        return Err(Error::InvalidInput(format!(
            "dicyclic order {order} must be a multiple of 4, at least 8"
        )));
    }
    let m = order / 2;
    let n = m / 2;
    let labels = (0..order)
        .map(|x| word_label(&[power_label("a", x % m), power_label("b", x / m)]))
        .collect();
    Group::from_fn(order, labels, |x, y| {
        let (i, e) = (x % m, x / m);
        let (j, d) = (y % m, y / m);
        match (e, d) {
            (0, _) => (i + j) % m + m * d,
            (1, 0) => (i + m - j) % m + m,
            _ => (i + m - j + n) % m,
        }
    })
}

/// Modular 2-group `⟨a, b | a^{N/2} = b² = 1, bab = a^{1+N/4}⟩`.
pub fn modular(order: usize) -> Result<Group> {
    if order < 16 || !order.is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "modular group order {order} must be a power of 2, at least 16"
        )));
    }
    let m = order / 2;
    let r = 1 + m / 2;
    let labels = (0..order)
        .map(|x| word_label(&[power_label("a", x % m), power_label("b", x / m)]))
        .collect();
    Group::from_fn(order, labels, |x, y| {
        let (i, e) = (x % m, x / m);
        let (j, d) = (y % m, y / m);
        let twist = if e == 1 { (j * r) % m } else { j };
        (i + twist) % m + m * ((e + d) % 2)
    })
}

/// Upper unitriangular 3×3 matrices over `Z_p`, element `(x, y, z)` being
/// the matrix with superdiagonal `x, y` and corner `z`.
pub fn heisenberg(p: usize) -> Result<Group> {
    if !crate::group::is_prime(p as u64) {
        return Err(Error::InvalidInput(format!(
            "heisenberg needs a prime, got {p}"
        )));
    }
    let n = p * p * p;
    let coords = |v: usize| (v % p, (v / p) % p, v / (p * p));
    let labels = (0..n)
        .map(|v| {
            let (x, y, z) = coords(v);
            format!("({x},{y},{z})")
        })
        .collect();
    Group::from_fn(n, labels, |u, v| {
        let (x1, y1, z1) = coords(u);
        let (x2, y2, z2) = coords(v);
        ((x1 + x2) % p) + p * ((y1 + y2) % p) + p * p * ((z1 + z2 + x1 * y2) % p)
    })
}

/// Symmetric group on `n` points from a transposition and an `n`-cycle.
pub fn symmetric(n: usize) -> Result<Group> {
    if n < 2 {
        return Ok(cyclic(1));
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Group::from_permutations(&[swap, cycle], DEFAULT_MAX_ORDER.max(720))
}

/// Direct product; element tuples are indexed with the first factor most
/// significant and labeled `(l1,l2,...)`.
pub fn product(factors: &[Group]) -> Result<Group> {
    if factors.is_empty() {
        return Ok(cyclic(1));
    }
    let orders: Vec<usize> = factors.iter().map(Group::order).collect();
    let n: usize = orders.iter().product();
    let split = |mut x: usize| -> Vec<usize> {
        let mut digits = vec![0; orders.len()];
        for k in (0..orders.len()).rev() {
            digits[k] = x % orders[k];
            x /= orders[k];
        }
        digits
    };
    let labels = (0..n)
        .map(|x| {
            let parts: Vec<&str> = split(x)
                .iter()
                .zip(factors)
                .map(|(&d, g)| g.label(d))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Group::from_fn(n, labels, |x, y| {
        let (a, b) = (split(x), split(y));
        (0..orders.len()).fold(0, |acc, k| acc * orders[k] + factors[k].mul(a[k], b[k]))
    })
}

/// Parses a built-in group name with the default order cap.
pub fn parse(name: &str) -> Result<Group> {
    parse_with_cap(name, DEFAULT_MAX_ORDER)
}

pub fn parse_with_cap(name: &str, cap: usize) -> Result<Group> {
    let name = name.strip_prefix("builtin:").unwrap_or(name).trim();
    let order = expected_order(name)?;
    if order > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    if let Some(list) = name.strip_prefix("product:") {
        let factors = list
            .split(',')
            .map(|c| build_single(c.trim()))
            .collect::<Result<Vec<_>>>()?;
        return product(&factors);
    }
    build_single(name)
}

fn split_name(name: &str) -> Result<(&str, usize)> {
    let bad = || Error::InvalidInput(format!("unknown builtin group `{name}`"));
    if let Some((kind, arg)) = name.split_once(':') {
        return Ok((kind, arg.parse().map_err(|_| bad())?));
    }
    if name == "q8" {
        return Ok(("q8", 8));
    }
    let split = name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (short, digits) = name.split_at(split);
    let arg: usize = digits.parse().map_err(|_| bad())?;
    let kind = match short {
        "z" => "cyclic",
        "d" => "dihedral",
        "q" => "quaternion",
        "m" => "modular",
        "h" => "heisenberg",
        "s" => "symmetric",
        _ => return Err(bad()),
    };
    Ok((kind, arg))
}

fn expected_order(name: &str) -> Result<usize> {
    if let Some(list) = name.strip_prefix("product:") {
        return list.split(',').try_fold(1usize, |acc, c| {
            expected_order(c.trim()).map(|o| acc.saturating_mul(o))
        });
    }
    let (kind, arg) = split_name(name)?;
    Ok(match kind {
        "heisenberg" => arg.saturating_pow(3),
        "symmetric" => (1..=arg).fold(1usize, |a, k| a.saturating_mul(k)),
        "semidirect" => arg.saturating_mul(6),
        _ => arg,
    })
}

fn build_single(name: &str) -> Result<Group> {
    let (kind, arg) = split_name(name)?;
    match kind {
        "cyclic" if arg >= 1 => Ok(cyclic(arg)),
        "q8" => Ok(quaternion8()),
        "quaternion" if arg == 8 => Ok(quaternion8()),
        "quaternion" => dicyclic(arg),
        "dihedral" => dihedral(arg),
        "modular" => modular(arg),
        "heisenberg" => heisenberg(arg),
        "symmetric" => symmetric(arg),
        "semidirect" => semidirect_fixture(arg as u64).map(|(g, _, _)| g),
        _ => Err(Error::InvalidInput(format!(
            "unknown builtin group `{name}`"
        ))),
    }
}
