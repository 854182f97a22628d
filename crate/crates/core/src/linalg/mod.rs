//! Exact linear algebra over Z/NZ.
//!
//! Everything downstream (subgroups, kernels, cohomology groups, the extension
//! solver) reduces to three primitives implemented here:
//!
//! * [`RowSpace`]: an incrementally built Howell basis of a row module over
//!   Z/NZ. Unlike plain row echelon form, the Howell form supports complete
//!   membership tests and coefficient recovery in the presence of zero
//!   divisors.
//! * [`quotient_presentation`]: invariant factors of `(Z/N)^d / relations`
//!   with the change-of-basis matrices needed to normalize coordinates and
//!   lift basis vectors. This is a Smith normal form computation carried out
//!   mod N so entries never grow.
//! * [`FpScan`]: a stripped-down prime-field echelon builder used for rank
//!   certification of very large sparse matrices, where only the pivot count
//!   matters.

mod rowspace;
mod scan;
mod snf;

pub use rowspace::{left_kernel, solve_left, RowSpace};
pub use scan::FpScan;
pub use snf::{quotient_presentation, QuotientPresentation};

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g >= 0.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of a unit mod n. Panics if gcd(a, n) != 1.
pub fn mod_inverse(a: u64, n: u64) -> u64 {
    let (g, s, _) = xgcd(a as i128, n as i128);
    assert_eq!(g, 1, "{a} is not a unit mod {n}");
    s.rem_euclid(n as i128) as u64
}

/// A unit u mod n with u*a = gcd(a, n) (mod n).
///
/// This is the row normalization used by the Howell form: multiplying a row
/// by the unit turns its leading entry into a divisor of n.
pub fn normalizing_unit(a: u64, n: u64) -> u64 {
    debug_assert!(n > 0 && a < n);
    if a == 0 {
        return 1;
    }
    let g = gcd(a, n);
    let a1 = a / g;
    let n1 = n / g;
    // gcd(a1, n1) = 1 by maximality of g.
    let u0 = if n1 == 1 { 0 } else { mod_inverse(a1 % n1, n1) };
    // Lift u0 to a unit mod n; some u0 + t*n1 is coprime to n by CRT.
    let mut u = if u0 == 0 { n1 % n } else { u0 };
    let mut tries = 0u64;
    while gcd(u % n, n) != 1 {
        u = (u + n1) % n;
        tries += 1;
        assert!(tries <= n, "no normalizing unit found for {a} mod {n}");
    }
    u % n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_bezout() {
        for a in -20i128..=20 {
            for b in -20i128..=20 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert!(g >= 0);
                if a != 0 || b != 0 {
                    assert_eq!(g, gcd(a.unsigned_abs() as u64, b.unsigned_abs() as u64) as i128);
                }
            }
        }
    }

    #[test]
    fn normalizing_unit_all_small_moduli() {
        for n in 2u64..=36 {
            for a in 0..n {
                let u = normalizing_unit(a, n);
                assert_eq!(gcd(u, n), 1, "u={u} not a unit mod {n}");
                assert_eq!(u * a % n, gcd(a, n) % n, "a={a} n={n}");
            }
        }
    }
}
