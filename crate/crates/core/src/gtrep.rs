//! Finite-dimensional representations in the Gel'fand-Tsetlin basis.
//!
//! The diagonal part of I43 carries the sign -i[r+1][s][m]/([l][l+1]); with
//! this sign the x-basis spectrum, the q-Racah coefficients and the
//! so(2,2) finite blocks all line up with the same s.

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qarith::{q_number_real, QContext, C64};
use crate::rep::{BasisLabel, CMat, Family, GenMatrixSet, Generator, Meta, ORDER_GT};

/// ((q^m + q^-m)(q^{m+1} + q^{-m-1}))^{-1/2}, the pole-free form of
/// ([m][m+1]/([2m][2m+2]))^{1/2}.
pub fn d_coeff(m: f64, ctx: &QContext) -> f64 {
    let h = ctx.h();
    1.0 / (4.0 * (h * m).cosh() * (h * (m + 1.0)).cosh()).sqrt()
}

pub(crate) fn checked_sqrt(x: f64, ctx: &QContext) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -ctx.tol_zero() {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand { value: x })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GTBasis {
    pub r: HalfInt,
    pub s: HalfInt,
    pub labels: Vec<BasisLabel>,
}

impl GTBasis {
    pub fn new(r: HalfInt, s: HalfInt) -> Result<Self> {
        if r < s.abs() || !r.same_parity(s) {
            return Err(Error::InvalidHighestWeight { r: r.to_string(), s: s.to_string() });
        }
        let labels = HalfInt::range_inclusive(s.abs(), r)
            .flat_map(|l| HalfInt::range_inclusive(-l, l).map(move |m| BasisLabel::Gt { l, m }))
            .collect();
        Ok(GTBasis { r, s, labels })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

fn gt_index(labels: &[BasisLabel], l: HalfInt, m: HalfInt) -> Option<usize> {
    labels.binary_search(&BasisLabel::Gt { l, m }).ok()
}

fn fill_so3_blocks(labels: &[BasisLabel], i21: &mut CMat, i32: &mut CMat, ctx: &QContext) -> Result<()> {
    let qn = |x: f64| q_number_real(x, ctx);
    for (j, label) in labels.iter().enumerate() {
        let BasisLabel::Gt { l, m } = *label else { unreachable!() };
        let (lf, mf) = (l.value(), m.value());
        i21[(j, j)] = C64::new(0.0, qn(mf));
        if let Some(t) = gt_index(labels, l, m + HalfInt::ONE) {
            let v = d_coeff(mf, ctx) * checked_sqrt(qn(lf - mf) * qn(lf + mf + 1.0), ctx)?;
            i32[(t, j)] = C64::new(v, 0.0);
        }
        if let Some(t) = gt_index(labels, l, m - HalfInt::ONE) {
            let v = d_coeff(mf - 1.0, ctx) * checked_sqrt(qn(lf - mf + 1.0) * qn(lf + mf), ctx)?;
            i32[(t, j)] = C64::new(-v, 0.0);
        }
    }
    Ok(())
}

/// T_l of U'_q(so_3): I21, I32 and the derived I31.
pub fn so3_rep(l: HalfInt, ctx: &QContext) -> Result<GenMatrixSet> {
    if l < HalfInt::ZERO {
        return Err(Error::InvalidSpin(l.to_string()));
    }
    let labels: Vec<_> = HalfInt::range_inclusive(-l, l).map(|m| BasisLabel::Gt { l, m }).collect();
    let n = labels.len();
    let (mut i21, mut i32) = (CMat::zeros(n, n), CMat::zeros(n, n));
    fill_so3_blocks(&labels, &mut i21, &mut i32, ctx)?;
    let mut meta = Meta::new(Family::So3, ctx, ORDER_GT);
    meta.l = Some(l);
    let mut set = GenMatrixSet::new(labels, meta);
    let i31 = crate::rep::q_commutator(&i21, &i32, ctx);
    set.insert(Generator::I21, i21)?;
    set.insert(Generator::I32, i32)?;
    set.insert(Generator::I31, i31)?;
    Ok(set)
}

/// T_rs of U'_q(so_4) with all six generators.
pub fn so4_rep(r: HalfInt, s: HalfInt, ctx: &QContext) -> Result<GenMatrixSet> {
    let basis = GTBasis::new(r, s)?;
    let labels = basis.labels;
    let n = labels.len();
    let qn = |x: f64| q_number_real(x, ctx);
    let (mut i21, mut i32, mut i43) = (CMat::zeros(n, n), CMat::zeros(n, n), CMat::zeros(n, n));
    fill_so3_blocks(&labels, &mut i21, &mut i32, ctx)?;
    let (rf, sf) = (r.value(), s.value());
    for (j, label) in labels.iter().enumerate() {
        let BasisLabel::Gt { l, m } = *label else { unreachable!() };
        let (lf, mf) = (l.value(), m.value());
        if l != HalfInt::ZERO {
            let v = qn(rf + 1.0) * qn(sf) * qn(mf) / (qn(lf) * qn(lf + 1.0));
            i43[(j, j)] = C64::new(0.0, -v);
        }
        if let Some(t) = gt_index(&labels, l + HalfInt::ONE, m) {
            let num = qn(rf - lf) * qn(lf + sf + 1.0) * qn(lf - sf + 1.0) * qn(lf + mf + 1.0) * qn(lf - mf + 1.0) * qn(rf + lf + 2.0);
            let den = qn(lf + 1.0).powi(2) * qn(2.0 * lf + 1.0) * qn(2.0 * lf + 3.0);
            i43[(t, j)] = C64::new(checked_sqrt(num / den, ctx)?, 0.0);
        }
        if let Some(t) = gt_index(&labels, l - HalfInt::ONE, m) {
            let num = qn(rf + lf + 1.0) * qn(rf - lf + 1.0) * qn(lf + sf) * qn(lf - sf) * qn(lf + mf) * qn(lf - mf);
            let den = qn(lf).powi(2) * qn(2.0 * lf - 1.0) * qn(2.0 * lf + 1.0);
            i43[(t, j)] = C64::new(-checked_sqrt(num / den, ctx)?, 0.0);
        }
    }
    let mut meta = Meta::new(Family::So4, ctx, ORDER_GT);
    meta.r = Some(r);
    meta.s = Some(s);
    let mut set = GenMatrixSet::new(labels, meta);
    set.insert(Generator::I21, i21)?;
    set.insert(Generator::I32, i32)?;
    set.insert(Generator::I43, i43)?;
    Ok(set.with_derived(ctx))
}
