//! Cup products at cochain and class level:
//! (φ∪ψ)(g_1..g_{m+n}) = μ(φ(g_1..g_m), (g_1⋯g_m)·ψ(g_{m+1}..g_{m+n})),
//! with μ either an explicit G-equivariant pairing or the multiplication of
//! a G-algebra. On classes this makes H*(G,A) a graded algebra.

use std::sync::Arc;

use thiserror::Error;

use crate::cochain::{Cochain, CochainError, Params};
use crate::cohomology::{CohomologyClass, CohomologyContext, CohomologyError};
use crate::gmodule::{GAlgebra, Pairing};
use crate::group::TupleIndexer;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProductError {
    #[error("cochains live over different groups")]
    GroupMismatch,
    #[error("cochain module does not match the pairing")]
    PairingMismatch,
    #[error(transparent)]
    Table(#[from] CochainError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Cup product with respect to a pairing μ: A ⊗ B → C.
pub fn cup_cochain_pairing(
    phi: &Cochain,
    psi: &Cochain,
    pairing: &Pairing,
    params: &Params,
) -> Result<Cochain, ProductError> {
    if phi.module().group() != psi.module().group() {
        return Err(ProductError::GroupMismatch);
    }
    if phi.module() != pairing.a() || psi.module() != pairing.b() {
        return Err(ProductError::PairingMismatch);
    }
    let m = phi.degree();
    let n = psi.degree();
    let group = phi.module().group().clone();
    let out_module = pairing.c().clone();
    let mut out = Cochain::zero(out_module, m + n, params)?;
    let out_indexer = out.indexer();
    let psi_count = TupleIndexer::new(group.order(), n).count().unwrap();
    for w_idx in 0..out.tuple_count() {
        // Big-endian split: the first m entries index φ, the last n index ψ.
        let phi_idx = w_idx / psi_count;
        let psi_idx = w_idx % psi_count;
        let w = out_indexer.decode(w_idx);
        let mut prefix = group.identity();
        for &g in &w[..m] {
            prefix = group.mul(prefix, g);
        }
        let left = phi.get(phi_idx);
        let right = pairing.b().act(prefix, psi.get(psi_idx));
        out.set(w_idx, &pairing.apply(left, &right));
    }
    Ok(out)
}

/// Cup product using a G-algebra's own multiplication as the pairing.
pub fn cup_cochain(
    phi: &Cochain,
    psi: &Cochain,
    alg: &Arc<GAlgebra>,
    params: &Params,
) -> Result<Cochain, ProductError> {
    cup_cochain_pairing(phi, psi, &Pairing::from_algebra(alg), params)
}

/// The degree-zero cochain with constant value the algebra unit; its class
/// is the identity of the graded algebra H*(G,A).
pub fn unit_cochain(alg: &Arc<GAlgebra>, params: &Params) -> Result<Cochain, CochainError> {
    let mut c = Cochain::zero(alg.module().clone(), 0, params)?;
    c.set(0, alg.unit());
    Ok(c)
}

/// Cup product of classes; independent of the chosen representatives.
pub fn cup_class(
    ctx: &CohomologyContext,
    alg: &Arc<GAlgebra>,
    a: &CohomologyClass,
    b: &CohomologyClass,
) -> Result<CohomologyClass, ProductError> {
    let phi = ctx.rep_of(a)?;
    let psi = ctx.rep_of(b)?;
    let cup = cup_cochain(&phi, &psi, alg, ctx.params())?;
    Ok(ctx.class_of(&cup)?)
}
