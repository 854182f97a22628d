use rayon::prelude::*;

use super::{gcd, normalizing_unit, xgcd};

/// Incrementally built Howell basis of a row module over Z/NZ.
///
/// Rows are kept in echelon order (strictly increasing pivot columns), each
/// row's pivot entry divides N, and after [`RowSpace::finalize`] the basis is
/// closed under the Howell property: every element of the span whose leading
/// entry sits in column >= j is generated by the stored rows with pivot
/// column >= j. Membership, coefficient recovery and canonical residues are
/// only sound on a finalized space; over a prime modulus finalization is a
/// no-op since every pivot normalizes to 1.
///
/// Rows are stored reduced in u32 (modulus must fit). Incoming rows are
/// carried as u64 so that for moduli below 2^16 the reduction loop can defer
/// the `% N` to the very end of each axpy chain.
#[derive(Clone, Debug)]
pub struct RowSpace {
    modulus: u64,
    n_cols: usize,
    rows: Vec<Vec<u32>>,
    pivot_cols: Vec<usize>,
    pivot_vals: Vec<u64>,
    finalized: bool,
    canonical: bool,
}

impl RowSpace {
    pub fn new(modulus: u64, n_cols: usize) -> Self {
        assert!(modulus >= 2 && modulus < (1 << 31), "modulus out of range");
        RowSpace {
            modulus,
            n_cols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_vals: Vec::new(),
            finalized: false,
            canonical: false,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn pivot_vals(&self) -> &[u64] {
        &self.pivot_vals
    }

    pub fn row(&self, k: usize) -> Vec<u64> {
        self.rows[k].iter().map(|&x| x as u64).collect()
    }

    /// Number of elements of the span.
    pub fn order(&self) -> u128 {
        self.pivot_vals
            .iter()
            .map(|&p| (self.modulus / p) as u128)
            .product()
    }

    fn pivot_index_at(&self, col: usize) -> Result<usize, usize> {
        self.pivot_cols.binary_search(&col)
    }

    /// row -= q * rows[k], lazily for small moduli. Touches columns >= from.
    fn axpy_sub(&self, row: &mut [u64], k: usize, q: u64, from: usize) {
        let n = self.modulus;
        let src = &self.rows[k];
        if n < (1 << 16) {
            // q*(n - x) <= n^2 < 2^32 per step; u64 headroom lasts longer
            // than any realistic pivot count. 32-bit product keeps the loop
            // vectorizable.
            let q32 = q as u32;
            let n32 = n as u32;
            for (r, &x) in row[from..].iter_mut().zip(&src[from..]) {
                *r += q32.wrapping_mul(n32 - x) as u64;
            }
        } else {
            for (r, &x) in row[from..].iter_mut().zip(&src[from..]) {
                *r = (*r % n + q * ((n - x as u64) % n)) % n;
            }
        }
    }

    fn store_row(&mut self, pos: usize, row: Vec<u64>, col: usize, pval: u64) {
        let n = self.modulus;
        let packed: Vec<u32> = row.iter().map(|&x| (x % n) as u32).collect();
        self.rows.insert(pos, packed);
        self.pivot_cols.insert(pos, col);
        self.pivot_vals.insert(pos, pval);
    }

    /// Insert a row (given as lazily reduced u64 entries). Returns true when
    /// the rank grew. Folding against an existing pivot (needed when the
    /// leading entry is not divisible by the pivot, which only happens for
    /// composite moduli) rewrites that pivot row in place.
    pub fn insert(&mut self, row: Vec<u64>) -> bool {
        assert!(!self.finalized, "insert on finalized RowSpace");
        self.insert_inner(row)
    }

    fn insert_inner(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.n_cols);
        let n = self.modulus;
        let mut c = 0usize;
        loop {
            while c < self.n_cols && row[c] % n == 0 {
                c += 1;
            }
            if c == self.n_cols {
                return false;
            }
            let v = row[c] % n;
            match self.pivot_index_at(c) {
                Ok(k) => {
                    let pv = self.pivot_vals[k];
                    if v % pv == 0 {
                        let q = v / pv;
                        self.axpy_sub(&mut row, k, q, c);
                    } else {
                        // Fold: replace pivot row by the gcd combination and
                        // continue with the complementary combination, whose
                        // entry at c vanishes. The 2x2 transform has unit
                        // determinant, so the span is unchanged.
                        let (g, s, t) = xgcd(pv as i128, v as i128);
                        let g = g as u64;
                        let s = s.rem_euclid(n as i128) as u64;
                        let t = t.rem_euclid(n as i128) as u64;
                        let old: Vec<u64> = self.rows[k].iter().map(|&x| x as u64).collect();
                        let a_g = (pv / g) % n;
                        let b_g = (v / g) % n;
                        let mut newpiv = vec![0u64; self.n_cols];
                        let mut displaced = vec![0u64; self.n_cols];
                        for i in c..self.n_cols {
                            let r = row[i] % n;
                            let o = old[i];
                            newpiv[i] = (s * o + t * r) % n;
                            displaced[i] = (b_g * o + (n - a_g) * r % n) % n;
                        }
                        debug_assert_eq!(newpiv[c], g);
                        debug_assert_eq!(displaced[c], 0);
                        self.rows[k] = newpiv.iter().map(|&x| x as u32).collect();
                        self.pivot_vals[k] = g;
                        row = displaced;
                    }
                }
                Err(pos) => {
                    let u = normalizing_unit(v, n);
                    let mut reduced = vec![0u64; self.n_cols];
                    for i in c..self.n_cols {
                        reduced[i] = (row[i] % n) * u % n;
                    }
                    let pval = reduced[c];
                    debug_assert_eq!(pval, gcd(v, n));
                    self.store_row(pos, reduced, c, pval);
                    return true;
                }
            }
        }
    }

    /// Insert a batch of sparse rows. Reduction against the already-frozen
    /// basis runs in parallel; survivors are folded in sequentially, in batch
    /// order, so the result is deterministic.
    pub fn insert_batch_sparse(&mut self, batch: &[Vec<(usize, u64)>]) -> usize {
        assert!(!self.finalized, "insert on finalized RowSpace");
        let reduced: Vec<Vec<u64>> = batch
            .par_iter()
            .map(|sparse| {
                let mut row = vec![0u64; self.n_cols];
                for &(i, v) in sparse {
                    row[i] += v;
                }
                self.partial_reduce(&mut row);
                row
            })
            .collect();
        let mut grew = 0;
        for row in reduced {
            if self.insert_inner(row) {
                grew += 1;
            }
        }
        grew
    }

    /// Reduce against current pivots where divisibility allows; used as a
    /// parallel pre-pass, correctness does not depend on completeness here.
    fn partial_reduce(&self, row: &mut [u64]) {
        let n = self.modulus;
        for k in 0..self.rows.len() {
            let c = self.pivot_cols[k];
            let v = row[c] % n;
            if v == 0 {
                continue;
            }
            if v % self.pivot_vals[k] == 0 {
                self.axpy_sub(row, k, v / self.pivot_vals[k], c);
            }
        }
    }

    /// Close the basis under the Howell property and canonicalize (entries
    /// above each pivot reduced below the pivot value).
    pub fn finalize(&mut self) {
        let n = self.modulus;
        loop {
            // Snapshot closure candidates; inserting may fold existing rows,
            // so iterate to a fixpoint.
            let mut changed = false;
            let snapshot: Vec<(Vec<u64>, u64)> = self
                .rows
                .iter()
                .zip(&self.pivot_vals)
                .map(|(r, &p)| (r.iter().map(|&x| x as u64).collect(), p))
                .collect();
            for (row, p) in snapshot {
                let e = n / p;
                if e % n == 0 {
                    continue;
                }
                let before: Vec<u64> = self.pivot_vals.clone();
                let closure: Vec<u64> = row.iter().map(|&x| x * e % n).collect();
                if self.insert_inner(closure) || self.pivot_vals != before {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        // Canonicalize entries above pivots.
        for k in 0..self.rows.len() {
            let c = self.pivot_cols[k];
            let p = self.pivot_vals[k];
            for i in 0..k {
                let v = self.rows[i][c] as u64;
                let q = v / p;
                if q != 0 {
                    let mut tmp: Vec<u64> = self.rows[i].iter().map(|&x| x as u64).collect();
                    self.axpy_sub(&mut tmp, k, q, c);
                    self.rows[i] = tmp.iter().map(|&x| (x % n) as u32).collect();
                }
            }
        }
        self.finalized = true;
        self.canonical = true;
    }

    pub fn is_finalized(&self) -> bool {
        self.finalized
    }

    /// Reduce a vector, returning the coefficients used per basis row.
    /// On a finalized space the final vector is the canonical residue of the
    /// coset, and it is zero exactly for members of the span.
    pub fn reduce(&self, row: &mut [u64]) -> Vec<u64> {
        assert!(self.finalized, "reduce requires a finalized RowSpace");
        let n = self.modulus;
        let mut coeffs = vec![0u64; self.rows.len()];
        for k in 0..self.rows.len() {
            let c = self.pivot_cols[k];
            let v = row[c] % n;
            if v == 0 {
                continue;
            }
            if v % self.pivot_vals[k] != 0 {
                continue; // not a member; leave partially reduced
            }
            let q = v / self.pivot_vals[k];
            coeffs[k] = q;
            self.axpy_sub(row, k, q, c);
        }
        for x in row.iter_mut() {
            *x %= n;
        }
        coeffs
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        let mut tmp = row.to_vec();
        self.reduce(&mut tmp);
        tmp.iter().all(|&x| x == 0)
    }

    /// Coefficients c with sum(c[k] * row_k) = row, if the row is a member.
    pub fn coefficients_of(&self, row: &[u64]) -> Option<Vec<u64>> {
        let mut tmp = row.to_vec();
        let coeffs = self.reduce(&mut tmp);
        if tmp.iter().all(|&x| x == 0) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Canonical coset representative of a vector modulo the span.
    pub fn residue(&self, row: &[u64]) -> Vec<u64> {
        let mut tmp = row.to_vec();
        self.reduce(&mut tmp);
        tmp
    }

    /// Spans are equal iff their canonical Howell bases coincide.
    pub fn span_eq(&self, other: &RowSpace) -> bool {
        assert!(self.canonical && other.canonical);
        self.modulus == other.modulus
            && self.n_cols == other.n_cols
            && self.pivot_cols == other.pivot_cols
            && self.pivot_vals == other.pivot_vals
            && self.rows == other.rows
    }
}

/// Generators of {x : sum(x[i] * gens[i]) = 0} over Z/NZ, via the Howell form
/// of the identity-augmented matrix: rows with all-zero head have kernel
/// vectors as tails, and the Howell closure makes the list complete.
pub fn left_kernel(gens: &[Vec<u64>], n_cols: usize, modulus: u64) -> Vec<Vec<u64>> {
    let m = gens.len();
    let mut space = RowSpace::new(modulus, n_cols + m);
    for (i, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), n_cols);
        let mut row = vec![0u64; n_cols + m];
        row[..n_cols].copy_from_slice(g);
        row[n_cols + i] = 1;
        space.insert(row);
    }
    space.finalize();
    let mut kernel = Vec::new();
    for k in 0..space.rank() {
        if space.pivot_cols[k] >= n_cols {
            kernel.push(space.row(k)[n_cols..].to_vec());
        }
    }
    kernel
}

/// A particular solution x of sum(x[i] * gens[i]) = rhs over Z/NZ, if any.
pub fn solve_left(gens: &[Vec<u64>], n_cols: usize, modulus: u64, rhs: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(rhs.len(), n_cols);
    let m = gens.len();
    let n = modulus;
    let mut space = RowSpace::new(modulus, n_cols + m);
    for (i, g) in gens.iter().enumerate() {
        let mut row = vec![0u64; n_cols + m];
        row[..n_cols].copy_from_slice(g);
        row[n_cols + i] = 1;
        space.insert(row);
    }
    space.finalize();
    let mut work = vec![0u64; n_cols + m];
    work[..n_cols].copy_from_slice(rhs);
    for k in 0..space.rank() {
        let c = space.pivot_cols[k];
        if c >= n_cols {
            break;
        }
        let v = work[c] % n;
        if v == 0 {
            continue;
        }
        if v % space.pivot_vals[k] != 0 {
            return None;
        }
        space.axpy_sub(&mut work, k, v / space.pivot_vals[k], c);
    }
    if work[..n_cols].iter().any(|&x| x % n != 0) {
        return None;
    }
    Some(work[n_cols..].iter().map(|&x| (n - x % n) % n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute-force span of rows over Z/N by closing under addition.
    fn brute_span(gens: &[Vec<u64>], n_cols: usize, n: u64) -> HashSet<Vec<u64>> {
        let mut span: HashSet<Vec<u64>> = HashSet::new();
        span.insert(vec![0; n_cols]);
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

    fn space_from(gens: &[Vec<u64>], n_cols: usize, n: u64) -> RowSpace {
        let mut s = RowSpace::new(n, n_cols);
        for g in gens {
            s.insert(g.clone());
        }
        s.finalize();
        s
    }

    #[test]
    fn howell_closure_z4_example() {
        // span{(2,1)} over Z/4 contains (0,2) = 2*(2,1); plain echelon
        // reduction would miss it without the closure row.
        let s = space_from(&[vec![2, 1]], 2, 4);
        assert!(s.contains(&[2, 1]));
        assert!(s.contains(&[0, 2]));
        assert!(s.contains(&[2, 3]));
        assert!(!s.contains(&[1, 0]));
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn membership_matches_brute_force() {
        let cases: Vec<(u64, usize, Vec<Vec<u64>>)> = vec![
            (4, 2, vec![vec![2, 1]]),
            (6, 2, vec![vec![2, 3], vec![3, 3]]),
            (8, 3, vec![vec![4, 2, 6], vec![0, 4, 4]]),
            (9, 2, vec![vec![3, 6], vec![6, 3]]),
            (12, 2, vec![vec![4, 6], vec![6, 4], vec![3, 0]]),
            (5, 3, vec![vec![1, 2, 3], vec![4, 0, 1]]),
        ];
        for (n, n_cols, gens) in cases {
            let span = brute_span(&gens, n_cols, n);
            let s = space_from(&gens, n_cols, n);
            assert_eq!(s.order(), span.len() as u128, "order mismatch mod {n}");
            // Exhaustive membership agreement.
            let total = n.pow(n_cols as u32);
            for code in 0..total {
                let mut v = vec![0u64; n_cols];
                let mut rest = code;
                for slot in v.iter_mut() {
                    *slot = rest % n;
                    rest /= n;
                }
                assert_eq!(
                    s.contains(&v),
                    span.contains(&v),
                    "membership mismatch at {v:?} mod {n}"
                );
            }
        }
    }

    #[test]
    fn coefficients_reconstruct() {
        let gens = vec![vec![2u64, 1, 0], vec![0, 3, 3]];
        let n = 6;
        let s = space_from(&gens, 3, n);
        for a in 0..n {
            for b in 0..n {
                let v: Vec<u64> = (0..3)
                    .map(|i| (a * gens[0][i] + b * gens[1][i]) % n)
                    .collect();
                let c = s.coefficients_of(&v).expect("member");
                let rebuilt: Vec<u64> = (0..3)
                    .map(|i| {
                        (0..s.rank()).fold(0u64, |acc, k| (acc + c[k] * s.row(k)[i]) % n)
                    })
                    .collect();
                assert_eq!(rebuilt, v);
            }
        }
    }

    #[test]
    fn left_kernel_matches_brute_force() {
        // x*(2,1) + y*(0,2) = 0 over Z/4.
        let gens = vec![vec![2u64, 1], vec![0, 2]];
        let n = 4;
        let kernel = left_kernel(&gens, 2, n);
        let kspan = brute_span(&kernel, gens.len(), n);
        for x in 0..n {
            for y in 0..n {
                let v = [
                    (x * gens[0][0] + y * gens[1][0]) % n,
                    (x * gens[0][1] + y * gens[1][1]) % n,
                ];
                let in_kernel = v == [0, 0];
                assert_eq!(kspan.contains(&vec![x, y]), in_kernel, "({x},{y})");
            }
        }
    }

    #[test]
    fn solve_left_agrees_with_enumeration() {
        let n = 8u64;
        let gens = vec![vec![2u64, 4, 0], vec![0, 2, 6]];
        for b0 in 0..n {
            for b1 in 0..n {
                for b2 in 0..n {
                    let rhs = vec![b0, b1, b2];
                    let mut solvable = false;
                    'outer: for x in 0..n {
                        for y in 0..n {
                            let v: Vec<u64> = (0..3)
                                .map(|i| (x * gens[0][i] + y * gens[1][i]) % n)
                                .collect();
                            if v == rhs {
                                solvable = true;
                                break 'outer;
                            }
                        }
                    }
                    let sol = solve_left(&gens, 3, n, &rhs);
                    assert_eq!(sol.is_some(), solvable, "rhs {rhs:?}");
                    if let Some(x) = sol {
                        let v: Vec<u64> = (0..3)
                            .map(|i| (x[0] * gens[0][i] + x[1] * gens[1][i]) % n)
                            .collect();
                        assert_eq!(v, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn span_eq_is_canonical() {
        // Same span, different generator presentations.
        let a = space_from(&[vec![2, 1], vec![0, 2]], 2, 4);
        let b = space_from(&[vec![2, 3], vec![2, 1]], 2, 4);
        assert!(a.span_eq(&b));
        let c = space_from(&[vec![2, 0]], 2, 4);
        assert!(!a.span_eq(&c));
    }
}
