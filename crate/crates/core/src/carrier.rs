//! Finite abelian groups presented as direct sums of cyclic groups, and the
//! additive maps between them. These are the coefficient objects everything
//! else acts on; elements are vectors with the i-th entry mod moduli[i].

use thiserror::Error;

use crate::linalg::gcd;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CarrierError {
    #[error("modulus {0} is too small (need >= 2)")]
    BadModulus(u64),
    #[error("matrix entry at ({i},{j}) is not well defined: {entry} * {src_mod} != 0 mod {dst_mod}")]
    NotWellDefined {
        i: usize,
        j: usize,
        entry: u64,
        src_mod: u64,
        dst_mod: u64,
    },
    #[error("matrix has wrong shape: expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
}

/// Direct sum of Z/m_i with componentwise addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianCarrier {
    moduli: Vec<u64>,
}

impl FiniteAbelianCarrier {
    pub fn new(moduli: Vec<u64>) -> Result<Self, CarrierError> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(CarrierError::BadModulus(m));
        }
        Ok(FiniteAbelianCarrier { moduli })
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    /// lcm of the moduli; the working modulus for Howell computations inside
    /// this carrier.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1u64, |acc, &m| acc / gcd(acc, m) * m)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    pub fn is_valid(&self, a: &[u64]) -> bool {
        a.len() == self.dim() && a.iter().zip(&self.moduli).all(|(&x, &m)| x < m)
    }

    pub fn reduce(&self, a: &mut [u64]) {
        for (x, &m) in a.iter_mut().zip(&self.moduli) {
            *x %= m;
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + m - y % m) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x % m) % m)
            .collect()
    }

    pub fn scale(&self, c: u64, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (c as u128 * x as u128 % m as u128) as u64)
            .collect()
    }

    /// Standard generators e_0, ..., e_{d-1}.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        (0..self.dim())
            .map(|i| {
                let mut e = self.zero();
                e[i] = 1;
                e
            })
            .collect()
    }

    /// Mixed-radix element index, first coordinate most significant.
    pub fn element_index(&self, a: &[u64]) -> usize {
        debug_assert!(self.is_valid(a));
        let mut idx: u128 = 0;
        for (&x, &m) in a.iter().zip(&self.moduli) {
            idx = idx * m as u128 + x as u128;
        }
        idx as usize
    }

    pub fn element_at(&self, mut index: usize) -> Vec<u64> {
        let mut a = self.zero();
        for (slot, &m) in a.iter_mut().zip(&self.moduli).rev() {
            *slot = (index as u64) % m;
            index /= m as usize;
        }
        a
    }

    pub fn iter_elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let total = self.order() as usize;
        (0..total).map(move |i| self.element_at(i))
    }

    /// Scale coordinates into Z/exponent for Howell computations:
    /// coordinate i is multiplied by exponent/m_i. The embedding is an
    /// injective homomorphism, so span, membership and coefficients commute
    /// with it.
    pub fn embed(&self, a: &[u64]) -> Vec<u64> {
        let n = self.exponent();
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| x % m * (n / m))
            .collect()
    }

    pub fn unembed(&self, v: &[u64]) -> Vec<u64> {
        let n = self.exponent();
        v.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| {
                let s = n / m;
                debug_assert_eq!(x % s, 0, "vector not in the embedded image");
                (x / s) % m
            })
            .collect()
    }
}

/// Homomorphism of finite abelian groups, stored as a matrix acting on
/// column vectors: f(a)_i = sum_j M[i][j] a_j mod dst_moduli[i].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveMap {
    src: FiniteAbelianCarrier,
    dst: FiniteAbelianCarrier,
    matrix: Vec<Vec<u64>>, // dst.dim x src.dim, entry (i,j) reduced mod dst moduli[i]
}

impl AdditiveMap {
    /// Well-definedness requires M[i][j] * src_moduli[j] = 0 mod dst_moduli[i]
    /// for every entry.
    pub fn new(
        src: FiniteAbelianCarrier,
        dst: FiniteAbelianCarrier,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self, CarrierError> {
        if matrix.len() != dst.dim() || matrix.iter().any(|r| r.len() != src.dim()) {
            return Err(CarrierError::BadShape {
                rows: dst.dim(),
                cols: src.dim(),
            });
        }
        let mut reduced = vec![vec![0u64; src.dim()]; dst.dim()];
        for i in 0..dst.dim() {
            for j in 0..src.dim() {
                let m_dst = dst.moduli()[i];
                let entry = matrix[i][j].rem_euclid(m_dst as i64) as u64;
                let m_src = src.moduli()[j];
                if (entry as u128 * m_src as u128) % m_dst as u128 != 0 {
                    return Err(CarrierError::NotWellDefined {
                        i,
                        j,
                        entry,
                        src_mod: m_src,
                        dst_mod: m_dst,
                    });
                }
                reduced[i][j] = entry;
            }
        }
        Ok(AdditiveMap {
            src,
            dst,
            matrix: reduced,
        })
    }

    pub fn identity(carrier: &FiniteAbelianCarrier) -> Self {
        let d = carrier.dim();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        AdditiveMap::new(carrier.clone(), carrier.clone(), matrix).unwrap()
    }

    pub fn zero(src: &FiniteAbelianCarrier, dst: &FiniteAbelianCarrier) -> Self {
        AdditiveMap {
            src: src.clone(),
            dst: dst.clone(),
            matrix: vec![vec![0; src.dim()]; dst.dim()],
        }
    }

    pub fn src(&self) -> &FiniteAbelianCarrier {
        &self.src
    }

    pub fn dst(&self) -> &FiniteAbelianCarrier {
        &self.dst
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, a: &[u64]) -> Vec<u64> {
        debug_assert!(self.src.is_valid(a), "invalid element {a:?}");
        self.matrix
            .iter()
            .zip(self.dst.moduli())
            .map(|(row, &m)| {
                let mut acc: u128 = 0;
                for (&c, &x) in row.iter().zip(a) {
                    acc += c as u128 * x as u128;
                }
                (acc % m as u128) as u64
            })
            .collect()
    }

    /// self after g: (self.compose(g))(a) = self(g(a)).
    pub fn compose(&self, g: &AdditiveMap) -> AdditiveMap {
        assert_eq!(self.src, g.dst, "composition shape mismatch");
        let cols = g.src.dim();
        let matrix: Vec<Vec<u64>> = (0..self.dst.dim())
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        let m = self.dst.moduli()[i] as u128;
                        let mut acc: u128 = 0;
                        for k in 0..self.src.dim() {
                            acc += self.matrix[i][k] as u128 * g.matrix[k][j] as u128 % m;
                        }
                        (acc % m) as u64
                    })
                    .collect()
            })
            .collect();
        AdditiveMap {
            src: g.src.clone(),
            dst: self.dst.clone(),
            matrix,
        }
    }

    pub fn map_add(&self, other: &AdditiveMap) -> AdditiveMap {
        assert_eq!(self.src, other.src);
        assert_eq!(self.dst, other.dst);
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .zip(self.dst.moduli())
            .map(|((a, b), &m)| a.iter().zip(b).map(|(&x, &y)| (x + y) % m).collect())
            .collect();
        AdditiveMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            matrix,
        }
    }

    pub fn map_neg(&self) -> AdditiveMap {
        let matrix = self
            .matrix
            .iter()
            .zip(self.dst.moduli())
            .map(|(row, &m)| row.iter().map(|&x| (m - x % m) % m).collect())
            .collect();
        AdditiveMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            matrix,
        }
    }

    pub fn map_sub(&self, other: &AdditiveMap) -> AdditiveMap {
        self.map_add(&other.map_neg())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }
}
