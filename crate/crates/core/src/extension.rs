//! Decides whether an additive map on a G-stable subgroup K <= B extends to
//! a G-equivariant additive map B -> A, by solving the linear congruence
//! system for the matrix entries of the extension: well-definedness,
//! equivariance against both actions, and the restriction constraints on
//! K's generators. A returned witness is re-checked by enumeration of the
//! generators.

use thiserror::Error;

use crate::carrier::AdditiveMap;
use crate::gmodule::GModule;
use crate::linalg::{gcd, solve_left};
use crate::subgroup::SubgroupMap;

#[derive(Debug, Error, PartialEq)]
pub enum ExtensionError {
    #[error("subgroup is not G-stable: action of {g} moves generator {gen:?} outside")]
    SubgroupNotStable { g: usize, gen: Vec<u64> },
    #[error("input map is not G-equivariant on the subgroup: fails at g={g}, generator {gen:?}")]
    NotEquivariantInput { g: usize, gen: Vec<u64> },
    #[error("subgroup does not live in the source module's carrier")]
    CarrierMismatch,
}

#[derive(Debug, Clone)]
pub struct ExtensionOutcome {
    pub exists: bool,
    pub witness: Option<AdditiveMap>,
}

/// Does f: K -> A extend to a G-equivariant additive F: B -> A with
/// F|_K = f?
pub fn equivariant_extension_exists(
    f: &SubgroupMap,
    module_b: &GModule,
    module_a: &GModule,
) -> Result<ExtensionOutcome, ExtensionError> {
    let sub = f.subgroup();
    if sub.carrier() != module_b.carrier() {
        return Err(ExtensionError::CarrierMismatch);
    }
    if f.dst() != module_a.carrier() {
        return Err(ExtensionError::CarrierMismatch);
    }
    // Precondition: K is G-stable and f is equivariant on it.
    for g in module_b.group().elements() {
        for gen in sub.generators() {
            let moved = module_b.act(g, gen);
            if !sub.contains(&moved) {
                return Err(ExtensionError::SubgroupNotStable {
                    g,
                    gen: gen.clone(),
                });
            }
            let lhs = f.apply(&moved).expect("member");
            let rhs = module_a.act(g, &f.apply(gen).expect("member"));
            if lhs != rhs {
                return Err(ExtensionError::NotEquivariantInput {
                    g,
                    gen: gen.clone(),
                });
            }
        }
    }

    let a_mod = module_a.carrier().moduli().to_vec();
    let b_mod = module_b.carrier().moduli().to_vec();
    let da = a_mod.len();
    let db = b_mod.len();
    let n = {
        let la = module_a.carrier().exponent();
        let lb = module_b.carrier().exponent();
        la / gcd(la, lb) * lb
    };

    // Unknowns u[(i,j)] = F[i][j], flattened as i*db + j.
    // Equations are congruences sum(coef * u) = rhs (mod m), scaled to mod n.
    let unknowns = da * db;
    let mut eq_cols: Vec<Vec<(usize, u64)>> = Vec::new(); // per equation: (unknown, coef)
    let mut rhs: Vec<u64> = Vec::new();
    let mut push_eq = |terms: Vec<(usize, u64)>, r: u64, m: u64| {
        let scale = n / m;
        let scaled: Vec<(usize, u64)> = terms
            .into_iter()
            .map(|(u, c)| (u, (c as u128 * scale as u128 % n as u128) as u64))
            .collect();
        eq_cols.push(scaled);
        rhs.push((r as u128 * scale as u128 % n as u128) as u64);
    };

    // (a) well-definedness: u[i][j] * b_mod[j] = 0 (mod a_mod[i]).
    for i in 0..da {
        for j in 0..db {
            push_eq(vec![(i * db + j, b_mod[j] % a_mod[i])], 0, a_mod[i]);
        }
    }
    // (b) equivariance: F.actB(g) = actA(g).F, entrywise mod a_mod[i].
    for g in module_b.group().elements() {
        let act_b = module_b.action(g).matrix();
        let act_a = module_a.action(g).matrix();
        for i in 0..da {
            let m = a_mod[i];
            for j in 0..db {
                let mut terms: Vec<(usize, u64)> = Vec::new();
                for k in 0..db {
                    let c = act_b[k][j] % m;
                    if c != 0 {
                        terms.push((i * db + k, c));
                    }
                }
                for k in 0..da {
                    let c = act_a[i][k] % m;
                    if c != 0 {
                        terms.push((k * db + j, (m - c) % m));
                    }
                }
                push_eq(terms, 0, m);
            }
        }
    }
    // (c) restriction: F(k_t) = f(k_t), entrywise mod a_mod[i].
    for gen in sub.generators() {
        let target = f.apply(gen).expect("member");
        for i in 0..da {
            let m = a_mod[i];
            let terms: Vec<(usize, u64)> = (0..db)
                .filter_map(|j| {
                    let c = gen[j] % m;
                    (c != 0).then_some((i * db + j, c))
                })
                .collect();
            push_eq(terms, target[i] % m, m);
        }
    }

    // Solve u * EQ = rhs over Z/n, where row u of EQ holds that unknown's
    // coefficients across all equations.
    let n_eqs = eq_cols.len();
    let mut gens_rows = vec![vec![0u64; n_eqs]; unknowns];
    for (e, terms) in eq_cols.iter().enumerate() {
        for &(u, c) in terms {
            gens_rows[u][e] = (gens_rows[u][e] + c) % n;
        }
    }
    let Some(solution) = solve_left(&gens_rows, n_eqs, n, &rhs) else {
        return Ok(ExtensionOutcome {
            exists: false,
            witness: None,
        });
    };

    let matrix: Vec<Vec<i64>> = (0..da)
        .map(|i| {
            (0..db)
                .map(|j| (solution[i * db + j] % a_mod[i]) as i64)
                .collect()
        })
        .collect();
    let witness = AdditiveMap::new(
        module_b.carrier().clone(),
        module_a.carrier().clone(),
        matrix,
    )
    .expect("solver output satisfies the well-definedness congruences");

    // Re-check the witness on the generators.
    for gen in sub.generators() {
        assert_eq!(
            witness.apply(gen),
            f.apply(gen).expect("member"),
            "witness does not restrict to f"
        );
    }
    for g in module_b.group().elements() {
        let lhs = witness.compose(module_b.action(g));
        let rhs_map = module_a.action(g).compose(&witness);
        assert_eq!(lhs, rhs_map, "witness is not equivariant");
    }
    Ok(ExtensionOutcome {
        exists: true,
        witness: Some(witness),
    })
}
