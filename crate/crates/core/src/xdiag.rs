//! Diagonalization of L = -i T_rs(I43) on each fixed-m subspace via q-Racah
//! polynomials, the GT -> x transition matrix and the x-basis operators.
//!
//! Derivations assume s >= m >= 0. Other (s, m) are reduced to the normal
//! form a = max(|s|,|m|), b = min(|s|,|m|); when s*m < 0 the spectrum is
//! negated and the coefficients pick up a factor (-1)^n.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::gtrep::{checked_sqrt, d_coeff, so4_rep, GTBasis};
use crate::halfint::HalfInt;
use crate::qarith::{q_double_factorial, q_factorial, q_number_real, racah_poly, QContext, RacahParams, C64};
use crate::rep::{BasisLabel, CMat, Family, GenMatrixSet, Generator, Meta, ORDER_X};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct NormalForm {
    a: HalfInt,
    b: HalfInt,
    flipped: bool,
}

fn normal_form(s: HalfInt, m: HalfInt) -> NormalForm {
    let (sa, ma) = (s.abs(), m.abs());
    NormalForm { a: sa.max(ma), b: sa.min(ma), flipped: (s.twice() as i64) * (m.twice() as i64) < 0 }
}

fn validate(r: HalfInt, s: HalfInt, m: HalfInt) -> Result<()> {
    GTBasis::new(r, s)?;
    if m.abs() > r || !m.same_parity(r) {
        return Err(Error::OutOfRange { r: r.to_string(), m: m.to_string() });
    }
    Ok(())
}

/// x-labels on V_m in descending order.
pub fn x_labels(r: HalfInt, s: HalfInt, m: HalfInt) -> Result<Vec<HalfInt>> {
    validate(r, s, m)?;
    let nf = normal_form(s, m);
    let top = r - nf.a - nf.b;
    let count = (r - nf.a).twice() / 2 + 1;
    let mut xs: Vec<HalfInt> = (0..count).map(|y| top - HalfInt::int(2 * y)).collect();
    if nf.flipped {
        xs = xs.into_iter().rev().map(|x| -x).collect();
    }
    Ok(xs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub m: HalfInt,
    pub x_labels: Vec<HalfInt>,
    pub eigenvalues: Vec<f64>,
}

pub fn spectrum_on_vm(r: HalfInt, s: HalfInt, m: HalfInt, ctx: &QContext) -> Result<SpectrumResult> {
    let x_labels = x_labels(r, s, m)?;
    let eigenvalues = x_labels.iter().map(|x| q_number_real(x.value(), ctx)).collect();
    Ok(SpectrumResult { m, x_labels, eigenvalues })
}

/// Real symmetric V_m block of L in the phase-adjusted basis i^{-l}|l,m>.
#[derive(Debug, Clone, PartialEq)]
pub struct VmBlock {
    pub ls: Vec<HalfInt>,
    pub diag: Vec<f64>,
    /// off[j] couples ls[j] and ls[j+1].
    pub off: Vec<f64>,
}

impl VmBlock {
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.ls.len();
        (0..n)
            .map(|j| {
                let mut acc = self.diag[j] * v[j];
                if j > 0 {
                    acc += self.off[j - 1] * v[j - 1];
                }
                if j + 1 < n {
                    acc += self.off[j] * v[j + 1];
                }
                acc
            })
            .collect()
    }
}

pub fn vm_block(r: HalfInt, s: HalfInt, m: HalfInt, ctx: &QContext) -> Result<VmBlock> {
    validate(r, s, m)?;
    let qn = |x: f64| q_number_real(x, ctx);
    let (rf, sf, mf) = (r.value(), s.value(), m.value());
    let ls: Vec<HalfInt> = HalfInt::range_inclusive(s.abs().max(m.abs()), r).collect();
    let diag = ls
        .iter()
        .map(|l| {
            let lf = l.value();
            if *l == HalfInt::ZERO { 0.0 } else { -qn(rf + 1.0) * qn(sf) * qn(mf) / (qn(lf) * qn(lf + 1.0)) }
        })
        .collect();
    let off = ls[..ls.len() - 1]
        .iter()
        .map(|l| {
            let lf = l.value();
            let num = qn(rf - lf) * qn(lf + sf + 1.0) * qn(lf - sf + 1.0) * qn(lf + mf + 1.0) * qn(lf - mf + 1.0) * qn(rf + lf + 2.0);
            let den = qn(lf + 1.0).powi(2) * qn(2.0 * lf + 1.0) * qn(2.0 * lf + 3.0);
            checked_sqrt(num / den, ctx)
        })
        .collect::<Result<_>>()?;
    Ok(VmBlock { ls, diag, off })
}

fn require_in_spectrum(r: HalfInt, s: HalfInt, m: HalfInt, x: HalfInt) -> Result<()> {
    if x_labels(r, s, m)?.contains(&x) {
        Ok(())
    } else {
        Err(Error::NotInSpectrum { x: x.to_string() })
    }
}

/// P_n(x), n = 0..dim V_m - 1, from the three-term recurrence with P_0 = 1.
pub fn eig_coeffs_recurrence(r: HalfInt, s: HalfInt, m: HalfInt, x: HalfInt, ctx: &QContext) -> Result<Vec<f64>> {
    require_in_spectrum(r, s, m, x)?;
    let blk = vm_block(r, s, m, ctx)?;
    let ev = q_number_real(x.value(), ctx);
    let n = blk.ls.len();
    let mut p = vec![1.0];
    for j in 0..n - 1 {
        let prev = if j > 0 { blk.off[j - 1] * p[j - 1] } else { 0.0 };
        p.push(((ev - blk.diag[j]) * p[j] - prev) / blk.off[j]);
    }
    Ok(p)
}

fn qfact(n: HalfInt, ctx: &QContext) -> f64 {
    q_factorial(n.as_int().filter(|&v| v >= 0).expect("integral factorial argument") as u32, ctx)
}

/// Normalization N of R_n for the normal-form parameters (a, b).
fn racah_norm(r: HalfInt, a: HalfInt, b: HalfInt, n: i32, ctx: &QContext) -> f64 {
    let f = |x: HalfInt| qfact(x, ctx);
    let nn = HalfInt::int(n);
    let two_a = a + a;
    let num = f(nn + two_a) * f(nn + a + b) * q_number_real((nn + nn + two_a).value() + 1.0, ctx) * f(a - b) * f(r - a) * f(r + a + HalfInt::ONE);
    let den = f(nn) * f(nn + a - b) * f(r - nn - a) * f(r + nn + a + HalfInt::ONE) * f(two_a) * f(a + b) * q_number_real(two_a.value() + 1.0, ctx);
    num / den
}

/// P_n(x) = N^{1/2} R_n(mu(y); -Q^a, -Q^a, Q^{a+b}, -Q^{-r-1} | Q).
pub fn eig_coeffs_racah(r: HalfInt, s: HalfInt, m: HalfInt, x: HalfInt, ctx: &QContext) -> Result<Vec<f64>> {
    require_in_spectrum(r, s, m, x)?;
    let nf = normal_form(s, m);
    let xn = if nf.flipped { -x } else { x };
    let y = ((r - nf.a - nf.b - xn).twice() / 4) as u32;
    let bq = ctx.big_q();
    let count = (r - nf.a).twice() / 2 + 1;
    let mut out = Vec::with_capacity(count as usize);
    for n in 0..count {
        let p = RacahParams {
            alpha: C64::new(-bq.powf(nf.a.value()), 0.0),
            beta: C64::new(-bq.powf(nf.a.value()), 0.0),
            gamma: C64::new(bq.powf((nf.a + nf.b).value()), 0.0),
            delta: C64::new(-bq.powf(-r.value() - 1.0), 0.0),
            big_q: bq,
            n: n as u32,
            y,
        };
        let rn = racah_poly(&p)?.re;
        let sign = if nf.flipped && n % 2 == 1 { -1.0 } else { 1.0 };
        out.push(sign * racah_norm(r, nf.a, nf.b, n, ctx).sqrt() * rn);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFallback {
    /// The closed form has a factorial of a negative or non-integral argument, or 0/0.
    Undefined,
    Mismatch { displayed: f64, numerical: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightReport {
    pub value: f64,
    pub displayed: Option<f64>,
    pub fallback: Option<WeightFallback>,
}

// Printed closed form in the normal-form variables, with k = s + m.
fn displayed_weight(r: HalfInt, s: HalfInt, m: HalfInt, y: i32, ctx: &QContext) -> Option<f64> {
    let qn = |x: HalfInt| q_number_real(x.value(), ctx);
    let f = |x: HalfInt| x.as_int().filter(|&v| v >= 0).map(|v| q_factorial(v as u32, ctx));
    let df = |x: HalfInt| x.as_int().filter(|&v| v >= 0).map(|v| q_double_factorial(v as u32, ctx));
    let (yy, k, one) = (HalfInt::int(y), s + m, HalfInt::ONE);
    let two = |x: HalfInt| x + x;
    let num = [
        Some(qn(two(two(yy)) + two(k) - two(r))),
        df(two(yy) + two(k) - two(r) - two(one)),
        df(two(yy) + two(s)),
        df(two(r) - two(yy)),
        f(r - m - yy),
        f(yy + m),
        f(k + yy),
        df(two(s) + one),
        f(s).map(|v| v * v),
        Some(qn(r - s)),
    ];
    let den = [
        Some(qn(two(yy) + two(k) - two(r))),
        f(yy + k - r - one),
        f(yy + s),
        df(two(yy) + two(m)),
        f(r - yy),
        f(r - s - yy),
        f(yy),
        df(two(s)),
        f(s - m),
        f(k),
        f(r + s + one),
    ];
    let num: f64 = num.into_iter().collect::<Option<Vec<_>>>()?.iter().product();
    let den: f64 = den.into_iter().collect::<Option<Vec<_>>>()?.iter().product();
    (den != 0.0 && (num / den).is_finite()).then_some(num / den)
}

/// Weight making {P_n} orthonormal; the numerical value (sum_n P_n^2)^{-1} is
/// authoritative and the printed closed form is only cross-checked.
pub fn weight_w(r: HalfInt, s: HalfInt, m: HalfInt, x: HalfInt, ctx: &QContext) -> Result<WeightReport> {
    let p = eig_coeffs_racah(r, s, m, x, ctx)?;
    let numerical = 1.0 / p.iter().map(|v| v * v).sum::<f64>();
    let nf = normal_form(s, m);
    let xn = if nf.flipped { -x } else { x };
    let y = (r - nf.a - nf.b - xn).twice() / 4;
    let displayed = displayed_weight(r, nf.a, nf.b, y, ctx);
    let fallback = match displayed {
        None => Some(WeightFallback::Undefined),
        Some(d) if (d - numerical).abs() > ctx.tol_rel() * numerical.abs() => {
            Some(WeightFallback::Mismatch { displayed: d, numerical })
        }
        Some(_) => None,
    };
    Ok(WeightReport { value: numerical, displayed, fallback })
}

/// x-basis labels (m ascending, x descending).
pub fn x_basis(r: HalfInt, s: HalfInt) -> Result<Vec<BasisLabel>> {
    GTBasis::new(r, s)?;
    let mut out = Vec::new();
    for m in HalfInt::range_inclusive(-r, r) {
        for x in x_labels(r, s, m)? {
            out.push(BasisLabel::X { x, m });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    pub gt_basis: Vec<BasisLabel>,
    pub x_basis: Vec<BasisLabel>,
    /// Rows indexed by x-basis, columns by GT basis.
    pub u: CMat,
    pub weights: Vec<WeightReport>,
}

impl TransitionMatrix {
    /// U M U^dagger.
    pub fn to_x(&self, m: &CMat) -> CMat {
        &self.u * m * self.u.adjoint()
    }
}

pub fn transition_matrix(r: HalfInt, s: HalfInt, ctx: &QContext) -> Result<TransitionMatrix> {
    let gt = GTBasis::new(r, s)?.labels;
    let xb = x_basis(r, s)?;
    let n = gt.len();
    let mut u = CMat::zeros(n, n);
    let mut weights = Vec::with_capacity(n);
    for (i, lab) in xb.iter().enumerate() {
        let BasisLabel::X { x, m } = *lab else { unreachable!() };
        let p = eig_coeffs_racah(r, s, m, x, ctx)?;
        let w = weight_w(r, s, m, x, ctx)?;
        let k = s.abs().max(m.abs());
        for (nidx, pn) in p.iter().enumerate() {
            let l = k + HalfInt::int(nidx as i32);
            let j = gt.binary_search(&BasisLabel::Gt { l, m }).expect("GT label present");
            // conj of W^{1/2} P_n i^{-l}
            u[(i, j)] = C64::from_polar(w.value.sqrt() * pn, FRAC_PI_2 * l.value());
        }
        weights.push(w);
    }
    let deviation = (u.adjoint() * &u - CMat::identity(n, n)).norm();
    if deviation > ctx.tol_rel() {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(TransitionMatrix { gt_basis: gt, x_basis: xb, u, weights })
}

/// T_rs in the x-basis with I32 from the closed form in both d(m) and d(x).
pub fn so4_rep_xbasis(r: HalfInt, s: HalfInt, ctx: &QContext) -> Result<GenMatrixSet> {
    let labels = x_basis(r, s)?;
    let n = labels.len();
    let qn = |v: f64| q_number_real(v, ctx);
    let big_r = qn(r.value() + 1.0);
    let sf = s.value();
    let (mut i21, mut i32, mut i43) = (CMat::zeros(n, n), CMat::zeros(n, n), CMat::zeros(n, n));
    for (j, lab) in labels.iter().enumerate() {
        let BasisLabel::X { x, m } = *lab else { unreachable!() };
        let (xf, mf) = (x.value(), m.value());
        i21[(j, j)] = C64::new(0.0, qn(mf));
        i43[(j, j)] = C64::new(0.0, qn(xf));
        let terms = [
            (-1, 1, d_coeff(mf, ctx) * d_coeff(xf - 1.0, ctx), (big_r + qn(sf - mf + xf - 1.0)) * (big_r + qn(sf + mf - xf + 1.0))),
            (1, 1, -d_coeff(mf, ctx) * d_coeff(xf, ctx), (big_r - qn(sf + mf + xf + 1.0)) * (big_r - qn(sf - mf - xf - 1.0))),
            (-1, -1, d_coeff(mf - 1.0, ctx) * d_coeff(xf - 1.0, ctx), (big_r - qn(sf - mf - xf + 1.0)) * (big_r - qn(sf + mf + xf - 1.0))),
            (1, -1, -d_coeff(mf - 1.0, ctx) * d_coeff(xf, ctx), (big_r + qn(sf + mf - xf - 1.0)) * (big_r + qn(sf - mf + xf + 1.0))),
        ];
        for (dx, dm, pref, rad) in terms {
            let target = BasisLabel::X { x: x + HalfInt::int(dx), m: m + HalfInt::int(dm) };
            if let Ok(t) = labels.binary_search(&target) {
                i32[(t, j)] = C64::new(pref * checked_sqrt(rad, ctx)?, 0.0);
            }
        }
    }
    let mut meta = Meta::new(Family::So4x, ctx, ORDER_X);
    meta.r = Some(r);
    meta.s = Some(s);
    let mut set = GenMatrixSet::new(labels, meta);
    set.insert(Generator::I21, i21)?;
    set.insert(Generator::I32, i32)?;
    set.insert(Generator::I43, i43)?;
    Ok(set.with_derived(ctx))
}

/// GT representation conjugated into the x-basis.
pub fn so4_rep_conjugated(r: HalfInt, s: HalfInt, ctx: &QContext) -> Result<(GenMatrixSet, TransitionMatrix)> {
    let gt = so4_rep(r, s, ctx)?;
    let tm = transition_matrix(r, s, ctx)?;
    let mut meta = gt.meta.clone();
    meta.family = Family::So4x;
    meta.ordering = ORDER_X.to_string();
    let mut set = GenMatrixSet::new(tm.x_basis.clone(), meta);
    for (g, m) in &gt.matrices {
        set.insert(*g, tm.to_x(m))?;
    }
    Ok((set, tm))
}
