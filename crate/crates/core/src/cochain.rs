//! Bar-resolution cochains: dense tables G^n -> A in mixed-radix tuple
//! encoding, and the coboundary differential.

use std::sync::Arc;

use thiserror::Error;

use crate::gmodule::GModule;
use crate::group::TupleIndexer;

/// Computation limits. The table limit caps the number of carrier entries a
/// single cochain may hold; degree growth past it fails loudly.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub table_limit: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            table_limit: 3_000_000,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("degree {degree} table needs {needed} entries, over the limit {limit}")]
    DegreeOverflow {
        degree: usize,
        needed: usize,
        limit: usize,
    },
    #[error("cochain degrees or modules do not match")]
    Mismatch,
}

/// A set map G^n -> A stored densely; entry for a tuple t occupies the
/// d-wide slice at tuple_index(t).
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    module: Arc<GModule>,
    degree: usize,
    values: Vec<u64>,
}

impl Cochain {
    pub fn table_len(module: &GModule, degree: usize, params: &Params) -> Result<usize, CochainError> {
        let indexer = TupleIndexer::new(module.group().order(), degree);
        let tuples = indexer.count().ok_or(CochainError::DegreeOverflow {
            degree,
            needed: usize::MAX,
            limit: params.table_limit,
        })?;
        let needed = tuples
            .checked_mul(module.dim())
            .ok_or(CochainError::DegreeOverflow {
                degree,
                needed: usize::MAX,
                limit: params.table_limit,
            })?;
        if needed > params.table_limit {
            return Err(CochainError::DegreeOverflow {
                degree,
                needed,
                limit: params.table_limit,
            });
        }
        Ok(needed)
    }

    pub fn zero(module: Arc<GModule>, degree: usize, params: &Params) -> Result<Cochain, CochainError> {
        let len = Cochain::table_len(&module, degree, params)?;
        Ok(Cochain {
            module,
            degree,
            values: vec![0; len],
        })
    }

    pub fn from_fn(
        module: Arc<GModule>,
        degree: usize,
        params: &Params,
        f: impl Fn(&[usize]) -> Vec<u64>,
    ) -> Result<Cochain, CochainError> {
        let mut out = Cochain::zero(module, degree, params)?;
        let indexer = out.indexer();
        let d = out.module.dim();
        for idx in 0..out.tuple_count() {
            let tuple = indexer.decode(idx);
            let v = f(&tuple);
            debug_assert!(out.module.carrier().is_valid(&v));
            out.values[idx * d..(idx + 1) * d].copy_from_slice(&v);
        }
        Ok(out)
    }

    pub fn from_values(module: Arc<GModule>, degree: usize, values: Vec<u64>) -> Cochain {
        let indexer = TupleIndexer::new(module.group().order(), degree);
        assert_eq!(values.len(), indexer.count().unwrap() * module.dim());
        let mut c = Cochain {
            module,
            degree,
            values,
        };
        let moduli: Vec<u64> = c.module.carrier().moduli().to_vec();
        let d = moduli.len();
        for (i, v) in c.values.iter_mut().enumerate() {
            *v %= moduli[i % d];
        }
        c
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn indexer(&self) -> TupleIndexer {
        TupleIndexer::new(self.module.group().order(), self.degree)
    }

    pub fn tuple_count(&self) -> usize {
        self.values.len() / self.module.dim()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, tuple_index: usize) -> &[u64] {
        let d = self.module.dim();
        &self.values[tuple_index * d..(tuple_index + 1) * d]
    }

    pub fn set(&mut self, tuple_index: usize, value: &[u64]) {
        debug_assert!(self.module.carrier().is_valid(value));
        let d = self.module.dim();
        self.values[tuple_index * d..(tuple_index + 1) * d].copy_from_slice(value);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert!(self.degree == other.degree && self.module == other.module);
        let moduli = self.module.carrier().moduli();
        let d = moduli.len();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (&a, &b))| (a + b) % moduli[i % d])
            .collect();
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values,
        }
    }

    pub fn neg(&self) -> Cochain {
        let moduli = self.module.carrier().moduli();
        let d = moduli.len();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let m = moduli[i % d];
                (m - a % m) % m
            })
            .collect();
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values,
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Cochain {
        let moduli = self.module.carrier().moduli();
        let d = moduli.len();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let m = moduli[i % d];
                (c as u128 * a as u128 % m as u128) as u64
            })
            .collect();
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values,
        }
    }

    /// The coboundary: (dφ)(g_1..g_{n+1}) = g_1 φ(g_2..g_{n+1})
    /// + sum_i (-1)^i φ(g_1..g_i g_{i+1}..g_{n+1}) + (-1)^{n+1} φ(g_1..g_n).
    /// For n = 0 this is a ↦ (g ↦ g·a − a).
    pub fn coboundary(&self, params: &Params) -> Result<Cochain, CochainError> {
        let n = self.degree;
        let module = &self.module;
        let group = module.group();
        let carrier = module.carrier().clone();
        let d = carrier.dim();
        let mut out = Cochain::zero(module.clone(), n + 1, params)?;
        let out_indexer = out.indexer();
        let in_indexer = self.indexer();
        let order = group.order();
        let in_count = in_indexer.count().unwrap();
        for u_idx in 0..out.tuple_count() {
            let u = out_indexer.decode(u_idx);
            // First face: g_1 acts on φ of the tail (drop u[0]), whose index
            // is u_idx mod |G|^n by the big-endian encoding.
            let mut acc = module.act(u[0], self.get(u_idx % in_count));
            // Middle faces with alternating signs.
            for i in 1..=n {
                let mut merged = Vec::with_capacity(n);
                merged.extend_from_slice(&u[..i - 1]);
                merged.push(group.mul(u[i - 1], u[i]));
                merged.extend_from_slice(&u[i + 1..]);
                let idx = in_indexer.encode(&merged).unwrap();
                let term = self.get(idx);
                acc = if i % 2 == 1 {
                    carrier.sub(&acc, term)
                } else {
                    carrier.add(&acc, term)
                };
            }
            // Last face: drop u[n], index u_idx / |G|.
            let head_idx = u_idx / order;
            let term = self.get(head_idx);
            acc = if (n + 1) % 2 == 1 {
                carrier.sub(&acc, term)
            } else {
                carrier.add(&acc, term)
            };
            out.set(u_idx, &acc);
        }
        Ok(out)
    }

    /// Cocycle test by direct evaluation; returns the first failing tuple.
    pub fn cocycle_witness(&self, params: &Params) -> Result<Option<Vec<usize>>, CochainError> {
        let db = self.coboundary(params)?;
        for idx in 0..db.tuple_count() {
            if db.get(idx).iter().any(|&x| x != 0) {
                return Ok(Some(db.indexer().decode(idx)));
            }
        }
        Ok(None)
    }
}
