use rayon::prelude::*;

use super::mod_inverse;

/// Prime-field echelon builder specialized for rank certification of large
/// sparse matrices. Rows are stored reduced in u8 (p <= 251); the reduction
/// workspace is u32 with the mod-p deferred, so the inner loop is a plain
/// multiply-add. Only the pivot count is exposed: this certifies exact lower
/// bounds on ranks without keeping kernel or coefficient data.
pub struct FpScan {
    p: u32,
    n_cols: usize,
    rows: Vec<Vec<u8>>,
    pivot_cols: Vec<usize>,
}

impl FpScan {
    pub fn new(p: u64, n_cols: usize) -> Self {
        assert!((2..=251).contains(&p), "FpScan requires a prime p <= 251");
        FpScan {
            p: p as u32,
            n_cols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, work: &mut [u32]) -> Option<usize> {
        let p = self.p;
        for (k, &c) in self.pivot_cols.iter().enumerate() {
            let v = work[c] % p;
            if v == 0 {
                continue;
            }
            // Pivot entries are normalized to 1, so the multiplier is p - v.
            let coef = p - v;
            let src = &self.rows[k];
            let tail = &mut work[c..];
            for (w, &s) in tail.iter_mut().zip(&src[c..]) {
                *w += coef * s as u32;
            }
        }
        (0..self.n_cols).find(|&i| work[i] % p != 0)
    }

    fn push_row(&mut self, work: &[u32], lead: usize) {
        let p = self.p;
        let inv = mod_inverse((work[lead] % p) as u64, p as u64) as u32;
        let mut row = vec![0u8; self.n_cols];
        for i in lead..self.n_cols {
            row[i] = ((work[i] % p) as u64 * inv as u64 % p as u64) as u8;
        }
        let pos = self.pivot_cols.partition_point(|&c| c < lead);
        self.rows.insert(pos, row);
        self.pivot_cols.insert(pos, lead);
    }

    /// Insert one sparse row; returns true if the rank grew.
    pub fn insert_sparse(&mut self, entries: &[(usize, u64)]) -> bool {
        let mut work = vec![0u32; self.n_cols];
        for &(i, v) in entries {
            work[i] += (v % self.p as u64) as u32;
        }
        match self.reduce(&mut work) {
            Some(lead) => {
                self.push_row(&work, lead);
                true
            }
            None => false,
        }
    }

    /// Insert a batch of sparse rows, reducing against the frozen basis in
    /// parallel and folding survivors in sequentially. Stops early once
    /// `target_rank` is reached; returns the rank afterwards.
    pub fn insert_batch_until(
        &mut self,
        batch: &[Vec<(usize, u64)>],
        target_rank: usize,
    ) -> usize {
        if self.rank() >= target_rank {
            return self.rank();
        }
        let p = self.p;
        let reduced: Vec<Vec<u32>> = batch
            .par_iter()
            .map(|entries| {
                let mut work = vec![0u32; self.n_cols];
                for &(i, v) in entries {
                    work[i] += (v % p as u64) as u32;
                }
                self.reduce(&mut work);
                work
            })
            .collect();
        for mut work in reduced {
            if let Some(lead) = self.reduce(&mut work) {
                self.push_row(&work, lead);
                if self.rank() >= target_rank {
                    break;
                }
            }
        }
        self.rank()
    }
}
