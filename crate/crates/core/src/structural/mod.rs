//! Characteristic-zero structure engine: chief series, modular and
//! quasi-ideal decisions by classification, and bracketed minmax values.

mod chains;
mod module;

pub use chains::{
    borel_of_split3, check_maximal_step, chief_series0, complement_of_factor, diagonal_chain_in, is_almost_abelian,
    is_chief_step, maxchain0, minmax_bracket0, modl0, modular_by_classification, modular_test0, qil0,
    quasi_ideal_by_classification, quasi_ideal_test0, solvable_maxchain0, ChainValue, ChiefSeries, LowerBoundReason,
    MinmaxBracket, ModularCase, ModularVerdict, StepVerdict,
};
pub use module::{irreducible_module, minimal_submodule, restrict_ops, spin, Irreducibility};

use crate::algebra::{nilradical0, radical0, simple_ideals, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// A minimal ideal of `L` inside the ideal `x` (nonzero).
pub(crate) fn minimal_ideal_in0(alg: &LieAlgebra, x: &Subspace) -> Result<Subspace> {
    if x.is_zero() {
        return Err(Error::BadParameters("no minimal ideal inside the zero ideal".into()));
    }
    let r = radical0(alg)?;
    let y = x.intersect(&r)?;
    if !y.is_zero() {
        // Abelian minimal ideals are killed by the nilradical.
        let n = nilradical0(alg)?;
        let w = alg.centralizer_mod(&y.intersect(&n)?, &n, &alg.zero());
        let ops: Vec<Matrix> = alg.ad_basis().to_vec();
        return minimal_submodule(&ops, &w);
    }
    // x is a semisimple ideal: its simple ideals are the minimal ideals of L inside it.
    let sub = alg.restrict(x)?;
    let parts = simple_ideals(&sub)?;
    Ok(x.absolute(&parts[0]))
}

/// Minimal ideal of `L/c` inside `b/c`, returned as its preimage in `L`.
pub(crate) fn minimal_ideal_step0(alg: &LieAlgebra, c: &Subspace, b: &Subspace) -> Result<Subspace> {
    if c.is_zero() {
        return minimal_ideal_in0(alg, b);
    }
    let (quot, q) = alg.quotient(c)?;
    let bq = q.project_subspace(b)?;
    let m = minimal_ideal_in0(&quot, &bq)?;
    Ok(q.preimage(&m))
}
