use super::{gcd, mod_inverse, normalizing_unit, xgcd};

/// Invariant-factor presentation of `(Z/N)^dim / <relations>`.
///
/// `factors` are the invariant factors > 1 in ascending divisibility order
/// (a trailing factor N corresponds to a full Z/N summand). For a coefficient
/// vector c in (Z/N)^dim, its coordinates in the quotient are
/// `coord_rows[i] . c  mod factors[i]`; coordinates are zero exactly for
/// members of the relation span. `lift_cols[i]` lifts the i-th quotient basis
/// vector back to (Z/N)^dim.
pub struct QuotientPresentation {
    pub modulus: u64,
    pub dim: usize,
    pub factors: Vec<u64>,
    pub coord_rows: Vec<Vec<u64>>,
    pub lift_cols: Vec<Vec<u64>>,
}

impl QuotientPresentation {
    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&f| f as u128).product()
    }

    pub fn coords(&self, c: &[u64]) -> Vec<u64> {
        assert_eq!(c.len(), self.dim);
        self.coord_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, &f)| {
                let mut acc = 0u128;
                for (a, b) in row.iter().zip(c) {
                    acc += *a as u128 * *b as u128;
                }
                (acc % f as u128) as u64
            })
            .collect()
    }
}

/// Smith normal form of the relation matrix carried out mod N, tracking the
/// row transformation U and its inverse. Entries never leave [0, N).
pub fn quotient_presentation(
    dim: usize,
    relations: &[Vec<u64>],
    modulus: u64,
) -> QuotientPresentation {
    let n = modulus;
    let k = relations.len();
    // m[i][j] = relations[j][i]; relations are columns.
    let mut m: Vec<Vec<u64>> = (0..dim)
        .map(|i| relations.iter().map(|r| r[i] % n).collect())
        .collect();
    let mut u: Vec<Vec<u64>> = (0..dim)
        .map(|i| (0..dim).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut uinv = u.clone();

    // Row ops act on m and u; the inverse op is applied to uinv columns.
    let row_swap = |m: &mut Vec<Vec<u64>>, u: &mut Vec<Vec<u64>>, uinv: &mut Vec<Vec<u64>>, a: usize, b: usize| {
        m.swap(a, b);
        u.swap(a, b);
        for row in uinv.iter_mut() {
            row.swap(a, b);
        }
    };
    let row_scale = |m: &mut Vec<Vec<u64>>, u: &mut Vec<Vec<u64>>, uinv: &mut Vec<Vec<u64>>, a: usize, unit: u64| {
        let inv = mod_inverse(unit, n);
        for x in m[a].iter_mut() {
            *x = *x * unit % n;
        }
        for x in u[a].iter_mut() {
            *x = *x * unit % n;
        }
        for row in uinv.iter_mut() {
            row[a] = row[a] * inv % n;
        }
    };
    // row_a := s*row_a + t*row_b ; row_b := p*row_a_old + q*row_b_old,
    // with determinant s*q - t*p a unit (here always ±1).
    let row_pair = |m: &mut Vec<Vec<u64>>,
                    u: &mut Vec<Vec<u64>>,
                    uinv: &mut Vec<Vec<u64>>,
                    a: usize,
                    b: usize,
                    s: u64,
                    t: u64,
                    p: u64,
                    q: u64| {
        for mat in [&mut *m, &mut *u] {
            for j in 0..mat[a].len() {
                let x = mat[a][j];
                let y = mat[b][j];
                mat[a][j] = (s * x + t * y) % n;
                mat[b][j] = (p * x + q * y) % n;
            }
        }
        // Inverse of [[s,t],[p,q]] with det d (unit): (1/d)[[q,-t],[-p,s]],
        // applied to columns a, b of uinv.
        let det = ((s as i128 * q as i128 - t as i128 * p as i128).rem_euclid(n as i128)) as u64;
        let dinv = mod_inverse(det, n);
        for row in uinv.iter_mut() {
            let x = row[a];
            let y = row[b];
            row[a] = (x * q % n + y * (n - p) % n) % n * dinv % n;
            row[b] = (x * (n - t) % n + y * s % n) % n * dinv % n;
        }
    };

    let mut t_idx = 0usize;
    while t_idx < dim && t_idx < k {
        // Pick the nonzero entry whose gcd with N is smallest.
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t_idx..dim {
            for j in t_idx..k {
                if m[i][j] != 0 {
                    let g = gcd(m[i][j], n);
                    if best.map_or(true, |(_, _, bg)| g < bg) {
                        best = Some((i, j, g));
                    }
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        row_swap(&mut m, &mut u, &mut uinv, t_idx, bi);
        for row in m.iter_mut() {
            row.swap(t_idx, bj);
        }

        loop {
            // Clear column t_idx with gcd row transforms.
            for i in t_idx + 1..dim {
                let b = m[i][t_idx];
                if b == 0 {
                    continue;
                }
                let a = m[t_idx][t_idx];
                if a != 0 && b % a == 0 {
                    let q = b / a;
                    row_pair(&mut m, &mut u, &mut uinv, t_idx, i, 1, 0, (n - q) % n, 1);
                } else {
                    let (g, s, t) = xgcd(a as i128, b as i128);
                    let g = g as u64;
                    let s = s.rem_euclid(n as i128) as u64;
                    let t = t.rem_euclid(n as i128) as u64;
                    row_pair(
                        &mut m,
                        &mut u,
                        &mut uinv,
                        t_idx,
                        i,
                        s,
                        t,
                        (b / g) % n,
                        (n - (a / g) % n) % n,
                    );
                }
            }
            // Clear row t_idx with column transforms (untracked).
            let mut col_dirty = false;
            for j in t_idx + 1..k {
                let b = m[t_idx][j];
                if b == 0 {
                    continue;
                }
                let a = m[t_idx][t_idx];
                if a != 0 && b % a == 0 {
                    let q = b / a;
                    for row in m.iter_mut() {
                        row[j] = (row[j] + q * (n - row[t_idx]) % n) % n;
                    }
                } else {
                    let (g, s, t) = xgcd(a as i128, b as i128);
                    let g = g as u64;
                    let s = s.rem_euclid(n as i128) as u64;
                    let t = t.rem_euclid(n as i128) as u64;
                    let bg = (b / g) % n;
                    let ag = (a / g) % n;
                    for row in m.iter_mut() {
                        let x = row[t_idx];
                        let y = row[j];
                        row[t_idx] = (s * x + t * y) % n;
                        row[j] = (bg * x + (n - ag) * y % n) % n;
                    }
                    col_dirty = true;
                }
            }
            // Column ops may have disturbed the cleared column.
            let col_clear = (t_idx + 1..dim).all(|i| m[i][t_idx] == 0);
            if col_clear && !col_dirty {
                break;
            }
        }

        // Divisibility fix: the pivot must divide every remaining entry.
        let d = m[t_idx][t_idx];
        if d != 0 {
            let mut offender = None;
            'scan: for i in t_idx + 1..dim {
                for j in t_idx + 1..k {
                    if m[i][j] % gcd(d, n) != 0 {
                        offender = Some(j);
                        break 'scan;
                    }
                }
            }
            if let Some(j) = offender {
                for row in m.iter_mut() {
                    row[t_idx] = (row[t_idx] + row[j]) % n;
                }
                continue; // redo this pivot
            }
        }
        t_idx += 1;
    }

    // Normalize diagonal entries to divisors of N.
    for t in 0..t_idx {
        let d = m[t][t];
        if d != 0 {
            let unit = normalizing_unit(d, n);
            if unit != 1 {
                row_scale(&mut m, &mut u, &mut uinv, t, unit);
            }
        }
    }

    let mut factors = Vec::new();
    let mut coord_rows = Vec::new();
    let mut lift_cols = Vec::new();
    for i in 0..dim {
        let d = if i < k { m[i][i] } else { 0 };
        let f = if d == 0 { n } else { gcd(d, n) };
        if f > 1 {
            factors.push(f);
            coord_rows.push(u[i].clone());
            lift_cols.push(uinv.iter().map(|row| row[i]).collect());
        }
    }
    QuotientPresentation {
        modulus: n,
        dim,
        factors,
        coord_rows,
        lift_cols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_span(gens: &[Vec<u64>], dim: usize, n: u64) -> HashSet<Vec<u64>> {
        let mut span: HashSet<Vec<u64>> = HashSet::new();
        span.insert(vec![0; dim]);
        loop {
            let mut grew = false;
            let snapshot: Vec<Vec<u64>> = span.iter().cloned().collect();
            for v in &snapshot {
                for g in gens {
                    let sum: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % n).collect();
                    if span.insert(sum) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        span
    }

    fn check_case(dim: usize, relations: Vec<Vec<u64>>, n: u64) {
        let pres = quotient_presentation(dim, &relations, n);
        let span = brute_span(&relations, dim, n);
        let expected_order = (n as u128).pow(dim as u32) / span.len() as u128;
        assert_eq!(pres.order(), expected_order, "order");
        // Divisibility chain.
        for w in pres.factors.windows(2) {
            assert_eq!(w[1] % w[0], 0, "factors {:?}", pres.factors);
        }
        // coords are zero exactly on the span, constant on cosets, and take
        // exactly `order` distinct values.
        let mut seen = HashSet::new();
        let total = n.pow(dim as u32);
        for code in 0..total {
            let mut c = vec![0u64; dim];
            let mut rest = code;
            for slot in c.iter_mut() {
                *slot = rest % n;
                rest /= n;
            }
            let coords = pres.coords(&c);
            assert_eq!(
                coords.iter().all(|&x| x == 0),
                span.contains(&c),
                "zero-coords vs span at {c:?}"
            );
            seen.insert(coords);
        }
        assert_eq!(seen.len() as u128, expected_order, "coords not surjective");
        // Lifts of basis vectors have the expected coordinates.
        for (i, lift) in pres.lift_cols.iter().enumerate() {
            let coords = pres.coords(lift);
            for (j, &x) in coords.iter().enumerate() {
                assert_eq!(x, u64::from(i == j), "lift {i} coords {coords:?}");
            }
        }
    }

    #[test]
    fn quotient_small_cases() {
        check_case(2, vec![vec![2, 0]], 4); // Z/4 x Z/4 / <(2,0)> = Z/2 x Z/4
        check_case(2, vec![vec![1, 1]], 4); // = Z/4
        check_case(2, vec![vec![2, 1]], 4); // cyclic of order 4
        check_case(2, vec![vec![3, 0], vec![0, 2]], 6);
        check_case(3, vec![vec![2, 2, 0], vec![0, 3, 3]], 6);
        check_case(2, vec![], 5); // no relations: (Z/5)^2
        check_case(1, vec![vec![3]], 9); // Z/9 / <3> = Z/3
        check_case(2, vec![vec![1, 0], vec![0, 1]], 4); // trivial quotient
    }
}
