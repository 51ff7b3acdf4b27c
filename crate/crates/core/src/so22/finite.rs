//! The finite-dimensional block E00 and its compact counterpart T_rs.

use crate::error::{Error, Result};
use crate::gtrep::so4_rep;
use crate::halfint::HalfInt;
use crate::qarith::{QContext, ShiftedArg, C64};
use crate::rep::{BasisLabel, Generator};
use crate::verify::{check_equivalence, check_spectrum, eigenvalues, Ansatz, SpectrumReport};

use super::{so22_rep_primed, RepParams};

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteBlockCertificate {
    pub b: HalfInt,
    pub c: HalfInt,
    pub r: HalfInt,
    pub s: HalfInt,
    pub dim: usize,
    pub i21: SpectrumReport,
    pub i43: SpectrumReport,
    /// Relative residual of the numerically found intertwiner.
    pub intertwiner_residual: f64,
}

/// Certifies E00_{bc} ~ T_{rs} with r = b + c - 2, s = c - b.
pub fn finite_block_equivalence(b: HalfInt, c: HalfInt, ctx: &QContext) -> Result<FiniteBlockCertificate> {
    if b < HalfInt::ONE || c < HalfInt::ONE {
        return Err(Error::EquivalenceFailed(format!("need b, c >= 1, got b={b}, c={c}")));
    }
    if !b.same_parity(c) {
        return Err(Error::ParityMismatch(format!("b={b} and c={c} lie on different lattices")));
    }
    let eps = (b.twice().rem_euclid(2)) as u8;
    let p = RepParams::new(eps, ShiftedArg::real(b.value()), ShiftedArg::real(c.value()))?;
    let window = b.max(c) + HalfInt::ONE;
    let full = so22_rep_primed(&p, window, ctx)?.set;
    let idx: Vec<usize> = full
        .basis
        .iter()
        .enumerate()
        .filter(|(_, lab)| matches!(lab, BasisLabel::Window { k, l } if k.abs() < b && l.abs() < c))
        .map(|(i, _)| i)
        .collect();
    let block = full.restrict(&idx);
    let r = b + c - HalfInt::int(2);
    let s = c - b;
    let compact = so4_rep(r, s, ctx)?;
    if block.dim() != compact.dim() {
        return Err(Error::EquivalenceFailed(format!("dimension {} vs {}", block.dim(), compact.dim())));
    }
    let expect = |g: Generator| -> Vec<C64> { eigenvalues(compact.get(g)) };
    let i21 = check_spectrum(block.get(Generator::I21), &expect(Generator::I21), ctx);
    let i43 = check_spectrum(block.get(Generator::I43), &expect(Generator::I43), ctx);
    if !i21.passed || !i43.passed {
        return Err(Error::EquivalenceFailed(format!(
            "spectra differ: I21 deviation {:e}, I43 deviation {:e}; block I43 {:?}",
            i21.deviation, i43.deviation, i43.computed
        )));
    }
    let t = check_equivalence(&block, &compact, Ansatz::General, ctx)
        .map_err(|e| Error::EquivalenceFailed(format!("no intertwiner: {e}")))?;
    Ok(FiniteBlockCertificate { b, c, r, s, dim: block.dim(), i21, i43, intertwiner_residual: t.residual })
}
