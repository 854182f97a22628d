//! Finite groups as validated multiplication tables, plus the mixed-radix
//! indexing of G^n tuples that bar-resolution cochain tables are keyed by.

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square or has out-of-range entries")]
    MalformedTable,
    #[error("not associative: ({g}*{h})*{k} != {g}*({h}*{k})")]
    NonAssociative { g: usize, h: usize, k: usize },
    #[error("element {identity} is not a two-sided identity (fails at {witness})")]
    NoIdentity { identity: usize, witness: usize },
    #[error("element {g} has no two-sided inverse")]
    NoInverse { g: usize },
}

/// A finite group presented by its full multiplication table. Elements are
/// dense indices 0..order; labels are display-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>, // row-major order x order
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    abelian: bool,
}

impl FiniteGroup {
    /// Validate a multiplication table and compute inverses and the abelian
    /// flag. Errors carry the witnessing elements.
    pub fn validate(
        mult: Vec<Vec<usize>>,
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Arc<FiniteGroup>, GroupError> {
        let order = mult.len();
        if order == 0 || identity >= order {
            return Err(GroupError::MalformedTable);
        }
        for row in &mult {
            if row.len() != order || row.iter().any(|&x| x >= order) {
                return Err(GroupError::MalformedTable);
            }
        }
        let flat: Vec<usize> = mult.iter().flatten().copied().collect();
        let at = |g: usize, h: usize| flat[g * order + h];
        for g in 0..order {
            if at(identity, g) != g || at(g, identity) != g {
                return Err(GroupError::NoIdentity {
                    identity,
                    witness: g,
                });
            }
        }
        for g in 0..order {
            for h in 0..order {
                for k in 0..order {
                    if at(at(g, h), k) != at(g, at(h, k)) {
                        return Err(GroupError::NonAssociative { g, h, k });
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| at(g, h) == identity && at(h, g) == identity) {
                Some(h) => inverse[g] = h,
                None => return Err(GroupError::NoInverse { g }),
            }
        }
        let abelian = (0..order).all(|g| (0..order).all(|h| at(g, h) == at(h, g)));
        let labels = labels.unwrap_or_else(|| (0..order).map(|g| format!("g{g}")).collect());
        assert_eq!(labels.len(), order, "label count must match order");
        Ok(Arc::new(FiniteGroup {
            order,
            mult: flat,
            identity,
            inverse,
            labels,
            abelian,
        }))
    }

    /// The cyclic group of order n, with labels 1, x, x^2, ...
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        assert!(n >= 1);
        let mult: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            })
            .collect();
        FiniteGroup::validate(mult, 0, Some(labels)).expect("cyclic table is a group")
    }

    pub fn trivial() -> Arc<FiniteGroup> {
        FiniteGroup::validate(vec![vec![0]], 0, Some(vec!["1".to_string()])).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mult[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Element index by label, if present.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("tuple entry {value} out of range for group of order {order}")]
pub struct IndexOutOfRange {
    pub value: usize,
    pub order: usize,
}

/// Bijection between {0, ..., |G|^n - 1} and G^n, big-endian in the first
/// component: index = sum_i idx(g_i) * |G|^(n-i). Fixed once so cochain
/// tables are portable across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleIndexer {
    order: usize,
    degree: usize,
}

impl TupleIndexer {
    pub fn new(order: usize, degree: usize) -> Self {
        assert!(order >= 1);
        TupleIndexer { order, degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// |G|^n, or None on overflow.
    pub fn count(&self) -> Option<usize> {
        let mut acc: usize = 1;
        for _ in 0..self.degree {
            acc = acc.checked_mul(self.order)?;
        }
        Some(acc)
    }

    pub fn encode(&self, tuple: &[usize]) -> Result<usize, IndexOutOfRange> {
        assert_eq!(tuple.len(), self.degree);
        let mut idx = 0usize;
        for &g in tuple {
            if g >= self.order {
                return Err(IndexOutOfRange {
                    value: g,
                    order: self.order,
                });
            }
            idx = idx * self.order + g;
        }
        Ok(idx)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0usize; self.degree];
        for slot in tuple.iter_mut().rev() {
            *slot = index % self.order;
            index /= self.order;
        }
        tuple
    }
}
