//! Subgroups of finite abelian carriers with Howell-backed membership, plus
//! maps defined on a subgroup presentation, kernels and images of additive
//! maps, and restriction.

use thiserror::Error;

use crate::carrier::{AdditiveMap, FiniteAbelianCarrier};
use crate::linalg::{left_kernel, RowSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("generator {0:?} is not a valid carrier element")]
    BadGenerator(Vec<u64>),
    #[error("element {0:?} is not a member of the subgroup")]
    NotAMember(Vec<u64>),
    #[error("matrix on generators does not kill the relation {relation:?}")]
    NotWellDefinedOnRelations { relation: Vec<u64> },
    #[error("matrix has wrong shape: expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
}

/// A subgroup presented by canonical (Howell) generators. Membership and
/// coefficient recovery go through the embedded Howell basis over the
/// carrier exponent.
#[derive(Debug, Clone)]
pub struct Subgroup {
    carrier: FiniteAbelianCarrier,
    gens: Vec<Vec<u64>>,
    space: RowSpace,
}

impl Subgroup {
    pub fn from_generators(
        carrier: &FiniteAbelianCarrier,
        gens: &[Vec<u64>],
    ) -> Result<Subgroup, SubgroupError> {
        let n = carrier.exponent();
        let mut space = RowSpace::new(n, carrier.dim());
        for g in gens {
            if !carrier.is_valid(g) {
                return Err(SubgroupError::BadGenerator(g.clone()));
            }
            space.insert(carrier.embed(g));
        }
        space.finalize();
        let canonical: Vec<Vec<u64>> = (0..space.rank())
            .map(|k| carrier.unembed(&space.row(k)))
            .collect();
        Ok(Subgroup {
            carrier: carrier.clone(),
            gens: canonical,
            space,
        })
    }

    pub fn full(carrier: &FiniteAbelianCarrier) -> Subgroup {
        Subgroup::from_generators(carrier, &carrier.generators()).unwrap()
    }

    pub fn trivial(carrier: &FiniteAbelianCarrier) -> Subgroup {
        Subgroup::from_generators(carrier, &[]).unwrap()
    }

    pub fn carrier(&self) -> &FiniteAbelianCarrier {
        &self.carrier
    }

    /// Canonical generators, in carrier coordinates.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.gens
    }

    pub fn order(&self) -> u128 {
        self.space.order()
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        self.carrier.is_valid(a) && self.space.contains(&self.carrier.embed(a))
    }

    /// Coefficients of a member with respect to the canonical generators.
    pub fn coefficients(&self, a: &[u64]) -> Option<Vec<u64>> {
        if !self.carrier.is_valid(a) {
            return None;
        }
        self.space.coefficients_of(&self.carrier.embed(a))
    }

    /// Generators of the relation module {c in (Z/exp)^k : sum c_t gen_t = 0}.
    pub fn relations(&self) -> Vec<Vec<u64>> {
        let rows: Vec<Vec<u64>> = (0..self.space.rank()).map(|k| self.space.row(k)).collect();
        left_kernel(&rows, self.carrier.dim(), self.carrier.exponent())
    }

    pub fn eq_subgroup(&self, other: &Subgroup) -> bool {
        self.carrier == other.carrier && self.space.span_eq(&other.space)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.carrier == other.carrier && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn iter_elements(&self) -> Vec<Vec<u64>> {
        // Enumerate by taking each generator's coefficient below its cyclic
        // order in the quotient chain; for reporting and small exhaustive
        // checks only.
        let n = self.carrier.exponent();
        let mut out = vec![self.carrier.zero()];
        for (k, g) in self.gens.iter().enumerate() {
            let reps = n / self.space.pivot_vals()[k];
            let mut next = Vec::with_capacity(out.len() * reps as usize);
            for prefix in &out {
                let mut acc = prefix.clone();
                for _ in 0..reps {
                    next.push(acc.clone());
                    acc = self.carrier.add(&acc, g);
                }
            }
            out = next;
        }
        out
    }
}

/// An additive map defined on a subgroup presentation: the matrix gives the
/// image of each canonical generator, and well-definedness is checked
/// against the generators' relation module.
#[derive(Debug, Clone)]
pub struct SubgroupMap {
    sub: Subgroup,
    dst: FiniteAbelianCarrier,
    matrix: Vec<Vec<u64>>, // dst.dim x gens.len()
}

impl PartialEq for SubgroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.sub.eq_subgroup(&other.sub) && self.dst == other.dst && self.matrix == other.matrix
    }
}

impl SubgroupMap {
    pub fn new(
        sub: &Subgroup,
        dst: &FiniteAbelianCarrier,
        matrix: Vec<Vec<i64>>,
    ) -> Result<SubgroupMap, SubgroupError> {
        let k = sub.generators().len();
        if matrix.len() != dst.dim() || matrix.iter().any(|r| r.len() != k) {
            return Err(SubgroupError::BadShape {
                rows: dst.dim(),
                cols: k,
            });
        }
        let reduced: Vec<Vec<u64>> = matrix
            .iter()
            .zip(dst.moduli())
            .map(|(row, &m)| row.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect())
            .collect();
        let map = SubgroupMap {
            sub: sub.clone(),
            dst: dst.clone(),
            matrix: reduced,
        };
        // The map must kill every relation among the generators, including
        // the implicit exponent relations exp * e_t.
        let exp = sub.carrier().exponent();
        let mut relations = sub.relations();
        for t in 0..k {
            let mut r = vec![0u64; k];
            r[t] = exp;
            relations.push(r);
        }
        for rel in relations {
            let img = map.apply_coefficients(&rel);
            if img.iter().any(|&x| x != 0) {
                return Err(SubgroupError::NotWellDefinedOnRelations { relation: rel });
            }
        }
        Ok(map)
    }

    pub fn zero(sub: &Subgroup, dst: &FiniteAbelianCarrier) -> SubgroupMap {
        SubgroupMap {
            sub: sub.clone(),
            dst: dst.clone(),
            matrix: vec![vec![0; sub.generators().len()]; dst.dim()],
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn dst(&self) -> &FiniteAbelianCarrier {
        &self.dst
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    fn apply_coefficients(&self, coeffs: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(self.dst.moduli())
            .map(|(row, &m)| {
                let mut acc: u128 = 0;
                for (&c, &x) in row.iter().zip(coeffs) {
                    acc += c as u128 * x as u128 % m as u128;
                }
                (acc % m as u128) as u64
            })
            .collect()
    }

    pub fn apply(&self, b: &[u64]) -> Result<Vec<u64>, SubgroupError> {
        let coeffs = self
            .sub
            .coefficients(b)
            .ok_or_else(|| SubgroupError::NotAMember(b.to_vec()))?;
        Ok(self.apply_coefficients(&coeffs))
    }

    pub fn map_add(&self, other: &SubgroupMap) -> SubgroupMap {
        assert!(self.sub.eq_subgroup(&other.sub) && self.dst == other.dst);
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .zip(self.dst.moduli())
            .map(|((a, b), &m)| a.iter().zip(b).map(|(&x, &y)| (x + y) % m).collect())
            .collect();
        SubgroupMap {
            sub: self.sub.clone(),
            dst: self.dst.clone(),
            matrix,
        }
    }

    pub fn map_neg(&self) -> SubgroupMap {
        let matrix = self
            .matrix
            .iter()
            .zip(self.dst.moduli())
            .map(|(row, &m)| row.iter().map(|&x| (m - x % m) % m).collect())
            .collect();
        SubgroupMap {
            sub: self.sub.clone(),
            dst: self.dst.clone(),
            matrix,
        }
    }

    pub fn map_sub(&self, other: &SubgroupMap) -> SubgroupMap {
        self.map_add(&other.map_neg())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }
}

/// Kernel of an additive map, as a subgroup of the source. The defining
/// congruences are scaled to the common modulus and solved by the Howell
/// kernel; the relation lattice of the source is absorbed automatically.
pub fn kernel(f: &AdditiveMap) -> Subgroup {
    let src = f.src();
    let dst = f.dst();
    let n = lcm_all(src, dst);
    let rows: Vec<Vec<u64>> = (0..src.dim())
        .map(|j| {
            (0..dst.dim())
                .map(|i| {
                    let scale = n / dst.moduli()[i];
                    f.matrix()[i][j] as u128 * scale as u128 % n as u128
                })
                .map(|x| x as u64)
                .collect()
        })
        .collect();
    let sols = left_kernel(&rows, dst.dim(), n);
    let gens: Vec<Vec<u64>> = sols
        .iter()
        .map(|a| {
            a.iter()
                .zip(src.moduli())
                .map(|(&x, &m)| x % m)
                .collect()
        })
        .collect();
    Subgroup::from_generators(src, &gens).expect("kernel generators are valid")
}

/// Image of an additive map, as a subgroup of the target.
pub fn image(f: &AdditiveMap) -> Subgroup {
    let gens: Vec<Vec<u64>> = f.src().generators().iter().map(|e| f.apply(e)).collect();
    Subgroup::from_generators(f.dst(), &gens).expect("image generators are valid")
}

/// Restriction of an additive map to a subgroup, presented on the subgroup's
/// canonical generators.
pub fn restrict(f: &AdditiveMap, sub: &Subgroup) -> SubgroupMap {
    assert_eq!(f.src(), sub.carrier());
    let matrix: Vec<Vec<i64>> = {
        let images: Vec<Vec<u64>> = sub.generators().iter().map(|g| f.apply(g)).collect();
        (0..f.dst().dim())
            .map(|i| images.iter().map(|img| img[i] as i64).collect())
            .collect()
    };
    SubgroupMap::new(sub, f.dst(), matrix).expect("restriction is well defined")
}

fn lcm_all(a: &FiniteAbelianCarrier, b: &FiniteAbelianCarrier) -> u64 {
    let la = a.exponent();
    let lb = b.exponent();
    la / crate::linalg::gcd(la, lb) * lb
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(m: u64) -> FiniteAbelianCarrier {
        FiniteAbelianCarrier::new(vec![m]).unwrap()
    }

    #[test]
    fn kernel_of_mod3_projection() {
        // pi: Z/9 -> Z/3, a -> a mod 3; kernel is {0, 3, 6} generated by 3.
        let pi = AdditiveMap::new(zn(9), zn(3), vec![vec![1]]).unwrap();
        let ker = kernel(&pi);
        assert_eq!(ker.order(), 3);
        assert!(ker.contains(&[3]));
        assert!(ker.contains(&[6]));
        assert!(!ker.contains(&[1]));
        assert_eq!(ker.generators(), &[vec![3]]);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let f = AdditiveMap::zero(&zn(3), &zn(3));
        let ker = kernel(&f);
        assert_eq!(ker.order(), 3);
        assert!(ker.eq_subgroup(&Subgroup::full(&zn(3))));
    }

    #[test]
    fn kernel_of_sum_map_on_z2_x_z4() {
        // f: Z/2 x Z/4 -> Z/2, (a,b) -> a + b mod 2; kernel has order 4.
        let src = FiniteAbelianCarrier::new(vec![2, 4]).unwrap();
        let f = AdditiveMap::new(src.clone(), zn(2), vec![vec![1, 1]]).unwrap();
        let ker = kernel(&f);
        assert_eq!(ker.order(), 4);
        // Enumerate all 8 elements and compare membership with f(a) = 0.
        for a in src.iter_elements() {
            let in_ker = f.apply(&a)[0] == 0;
            assert_eq!(ker.contains(&a), in_ker, "{a:?}");
        }
    }

    #[test]
    fn kernel_composed_with_map_is_zero() {
        let src = FiniteAbelianCarrier::new(vec![4, 6]).unwrap();
        let dst = FiniteAbelianCarrier::new(vec![2, 3]).unwrap();
        let f = AdditiveMap::new(src, dst, vec![vec![1, 0], vec![0, 2]]).unwrap();
        let ker = kernel(&f);
        for g in ker.generators() {
            assert!(f.apply(g).iter().all(|&x| x == 0));
        }
        // Order check by enumeration.
        let count = f
            .src()
            .iter_elements()
            .filter(|a| f.apply(a).iter().all(|&x| x == 0))
            .count();
        assert_eq!(ker.order(), count as u128);
    }

    #[test]
    fn restriction_examples() {
        // Restriction of the identity is the identity on generators.
        let c = zn(9);
        let id = AdditiveMap::identity(&c);
        let sub = Subgroup::from_generators(&c, &[vec![3]]).unwrap();
        let r = restrict(&id, &sub);
        assert_eq!(r.apply(&[3]).unwrap(), vec![3]);
        assert_eq!(r.apply(&[6]).unwrap(), vec![6]);
        // Restriction of pi to Ker pi is the zero map.
        let pi = AdditiveMap::new(zn(9), zn(3), vec![vec![1]]).unwrap();
        let ker = kernel(&pi);
        let r0 = restrict(&pi, &ker);
        assert!(r0.is_zero());
    }

    #[test]
    fn subgroup_map_well_definedness() {
        // r_x on Ker pi = <3> <= Z/9: r(3) = 1 in Z/3 is well defined
        // (the only relations are multiples of 3*gen, and 3*1 = 0 mod 3).
        let c = zn(9);
        let sub = Subgroup::from_generators(&c, &[vec![3]]).unwrap();
        let r = SubgroupMap::new(&sub, &zn(3), vec![vec![1]]).unwrap();
        assert_eq!(r.apply(&[3]).unwrap(), vec![1]);
        assert_eq!(r.apply(&[6]).unwrap(), vec![2]);
        // Sending the generator of <3> <= Z/9 to 1 in Z/9 is NOT well
        // defined: 3*gen = 0 but 3*1 = 3 != 0 mod 9.
        let bad = SubgroupMap::new(&sub, &zn(9), vec![vec![1]]);
        assert!(matches!(
            bad,
            Err(SubgroupError::NotWellDefinedOnRelations { .. })
        ));
    }

    #[test]
    fn membership_idempotent_under_normalization() {
        let c = FiniteAbelianCarrier::new(vec![4, 4]).unwrap();
        let s1 = Subgroup::from_generators(&c, &[vec![2, 1], vec![0, 2]]).unwrap();
        let s2 = Subgroup::from_generators(&c, s1.generators()).unwrap();
        assert!(s1.eq_subgroup(&s2));
        assert_eq!(s1.iter_elements().len() as u128, s1.order());
    }
}
