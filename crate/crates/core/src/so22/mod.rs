//! Truncated infinite-dimensional representations T^eps_{bc} of
//! U'_q(so_{2,2}) on the (k, l) lattice, their canonical parameters,
//! decompositions, ladder forms and *-structure.
//!
//! Windows are finite: transitions leaving the window are dropped, so every
//! certified identity is stated on `interior_indices(.., 3)`.

mod canon;
mod decompose;
mod finite;
mod ladder;
mod star;

pub use canon::{canonicalize, classify_irreducible, irreducibility, lattice_kind, IrreducibilityReport, LatticeKind, Move, Which};
pub use decompose::{decompose, ClassificationReport, Component, DecompositionCase, Interval};
pub use finite::{finite_block_equivalence, FiniteBlockCertificate};
pub use ladder::{ladder_rep, ladder_rep_with_sign, LadderTag, TermSign, RESOLVED_SIGN};
pub use star::{classify, star_classify, ComponentStar, StarClass, StarStatus};

use std::fmt;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qarith::{q_cosh2_real, q_cosh2_shifted, q_number_real, q_number_shifted, QContext, ShiftedArg, C64};
use crate::rep::{BasisLabel, CMat, Family, GenMatrixSet, Generator, Meta, ORDER_WINDOW};

/// Parity eps and the two complex parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParams {
    pub eps: u8,
    pub b: ShiftedArg,
    pub c: ShiftedArg,
}

impl RepParams {
    pub fn new(eps: u8, b: ShiftedArg, c: ShiftedArg) -> Result<Self> {
        if eps > 1 {
            return Err(Error::ParityMismatch(format!("eps must be 0 or 1, got {eps}")));
        }
        Ok(RepParams { eps, b, c })
    }

    pub fn plain(eps: u8, b: C64, c: C64) -> Result<Self> {
        RepParams::new(eps, ShiftedArg::new(b, 0), ShiftedArg::new(c, 0))
    }

    /// Default window radius: 8 beyond the largest real part, matched to eps.
    pub fn default_window(&self) -> HalfInt {
        let reach = self.b.base.re.abs().max(self.c.base.re.abs()).ceil() as i32 + 8;
        HalfInt::from_twice(2 * reach + self.eps as i32)
    }
}

pub fn format_arg(a: &ShiftedArg) -> String {
    let z = a.base;
    let mut s = if z.im == 0.0 { format!("{}", z.re) } else { format!("{}{:+}i", z.re, z.im) };
    match a.quarter.rem_euclid(4) {
        0 => {}
        1 => s.push_str("+pi/2h"),
        2 => s.push_str("+pi/h"),
        _ => s.push_str("+3pi/2h"),
    }
    s
}

impl fmt::Display for RepParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eps={}, b={}, c={}", self.eps, format_arg(&self.b), format_arg(&self.c))
    }
}

/// Lattice window |k|, |l| <= K with k, l = eps/2 mod 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowBasis {
    pub eps: u8,
    pub k_max: HalfInt,
    pub labels: Vec<BasisLabel>,
}

impl WindowBasis {
    pub fn new(eps: u8, window: HalfInt) -> Result<Self> {
        if eps > 1 {
            return Err(Error::ParityMismatch(format!("eps must be 0 or 1, got {eps}")));
        }
        if window < HalfInt::int(2) {
            return Err(Error::DimensionMismatch(format!("window radius {window} < 2")));
        }
        let k_max = if window.twice() % 2 == eps as i32 { window } else { window - HalfInt::HALF };
        let axis: Vec<HalfInt> = HalfInt::range_inclusive(-k_max, k_max).collect();
        let labels = axis.iter().flat_map(|&k| axis.iter().map(move |&l| BasisLabel::Window { k, l })).collect();
        Ok(WindowBasis { eps, k_max, labels })
    }
}

/// Labels at distance at least `margin` from the window edge.
pub fn interior_indices(set: &GenMatrixSet, margin: i32) -> Vec<usize> {
    let edge = set
        .basis
        .iter()
        .filter_map(|b| match b {
            BasisLabel::Window { k, l } => Some(k.abs().max(l.abs())),
            _ => None,
        })
        .max()
        .unwrap_or(HalfInt::ZERO);
    let lim = edge - HalfInt::int(margin);
    set.basis
        .iter()
        .enumerate()
        .filter(|(_, b)| matches!(b, BasisLabel::Window { k, l } if k.abs() <= lim && l.abs() <= lim))
        .map(|(i, _)| i)
        .collect()
}

fn window_index(labels: &[BasisLabel], k: HalfInt, l: HalfInt) -> Option<usize> {
    labels.binary_search(&BasisLabel::Window { k, l }).ok()
}

/// 1/((q^{k+l}+q^{-k-l})(q^{k-l}+q^{l-k})), finite everywhere.
pub(crate) fn prefactor(k: f64, l: f64, ctx: &QContext) -> f64 {
    1.0 / (q_cosh2_real(k + l, ctx) * q_cosh2_real(k - l, ctx))
}

fn diagonal_generators(labels: &[BasisLabel], ctx: &QContext) -> (CMat, CMat) {
    let n = labels.len();
    let (mut i21, mut i43) = (CMat::zeros(n, n), CMat::zeros(n, n));
    for (j, lab) in labels.iter().enumerate() {
        let BasisLabel::Window { k, l } = *lab else { unreachable!() };
        i21[(j, j)] = C64::new(0.0, q_number_real((k + l).value(), ctx));
        i43[(j, j)] = C64::new(0.0, q_number_real((k - l).value(), ctx));
    }
    (i21, i43)
}

fn window_meta(family: Family, p: &RepParams, window: HalfInt, ctx: &QContext) -> Meta {
    let mut meta = Meta::new(family, ctx, ORDER_WINDOW);
    meta.eps = Some(p.eps);
    meta.b = Some(p.b);
    meta.c = Some(p.c);
    meta.window = Some(window);
    meta
}

/// Lattice step of I32.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    LUp,
    KUp,
    KDown,
    LDown,
}

impl Step {
    pub(crate) const ALL: [Step; 4] = [Step::LUp, Step::KUp, Step::KDown, Step::LDown];

    pub(crate) fn target(self, k: HalfInt, l: HalfInt) -> (HalfInt, HalfInt) {
        match self {
            Step::LUp => (k, l + HalfInt::ONE),
            Step::KUp => (k + HalfInt::ONE, l),
            Step::KDown => (k - HalfInt::ONE, l),
            Step::LDown => (k, l - HalfInt::ONE),
        }
    }
}

/// Coefficient of |target> in I32|k,l> for the unprimed form.
pub(crate) fn plain_coefficient(p: &RepParams, k: f64, l: f64, step: Step, ctx: &QContext) -> C64 {
    let cc = |a: ShiftedArg| q_cosh2_shifted(a, ctx);
    let qn = |a: ShiftedArg| q_number_shifted(a, ctx);
    let (b, c) = (p.b, p.c);
    let pf = prefactor(k, l, ctx);
    match step {
        Step::LUp => cc(b.plus(l)) * qn(c.plus(l)) * pf,
        Step::KUp => -cc(c.plus(k)) * qn(b.plus(k)) * pf,
        Step::KDown => cc(c.plus(-k)) * qn(b.plus(-k)) * pf,
        Step::LDown => -cc(b.plus(-l)) * qn(c.plus(-l)) * pf,
    }
}

/// Radicand under the square root of the primed form.
pub(crate) fn primed_radicand(p: &RepParams, k: f64, l: f64, step: Step, ctx: &QContext) -> C64 {
    let cc = |a: ShiftedArg| q_cosh2_shifted(a, ctx);
    let qn = |a: ShiftedArg| q_number_shifted(a, ctx);
    let (b, c) = (p.b, p.c);
    match step {
        Step::LUp => cc(b.plus(l)) * cc(b.plus(-l - 1.0)) * qn(c.plus(l)) * qn(c.neg().plus(l + 1.0)),
        Step::KUp => cc(c.plus(k)) * cc(c.plus(-k - 1.0)) * qn(b.plus(k)) * qn(b.neg().plus(k + 1.0)),
        Step::KDown => cc(c.plus(k - 1.0)) * cc(c.plus(-k)) * qn(b.neg().plus(k)) * qn(b.plus(k - 1.0)),
        Step::LDown => cc(b.plus(l - 1.0)) * cc(b.plus(-l)) * qn(c.neg().plus(l)) * qn(c.plus(l - 1.0)),
    }
}

/// Primed coefficient with the symmetrized prefactor sqrt(P(src) P(dst)).
pub(crate) fn primed_coefficient(p: &RepParams, k: f64, l: f64, step: Step, ctx: &QContext) -> C64 {
    let (tk, tl) = match step {
        Step::LUp => (k, l + 1.0),
        Step::KUp => (k + 1.0, l),
        Step::KDown => (k - 1.0, l),
        Step::LDown => (k, l - 1.0),
    };
    let sign = match step {
        Step::LUp | Step::LDown => 1.0,
        Step::KUp | Step::KDown => -1.0,
    };
    let pf = (prefactor(k, l, ctx) * prefactor(tk, tl, ctx)).sqrt();
    primed_radicand(p, k, l, step, ctx).sqrt() * (sign * pf)
}

/// Unprimed form: I21, I43 diagonal and I32 with the rational coefficients.
pub fn so22_rep(p: &RepParams, window: HalfInt, ctx: &QContext) -> Result<GenMatrixSet> {
    let wb = WindowBasis::new(p.eps, window)?;
    let labels = wb.labels;
    let n = labels.len();
    let (i21, i43) = diagonal_generators(&labels, ctx);
    let mut i32 = CMat::zeros(n, n);
    for (j, lab) in labels.iter().enumerate() {
        let BasisLabel::Window { k, l } = *lab else { unreachable!() };
        for step in Step::ALL {
            let (tk, tl) = step.target(k, l);
            if let Some(t) = window_index(&labels, tk, tl) {
                i32[(t, j)] = plain_coefficient(p, k.value(), l.value(), step, ctx);
            }
        }
    }
    let mut set = GenMatrixSet::new(labels, window_meta(Family::So22, p, window, ctx));
    set.insert(Generator::I21, i21)?;
    set.insert(Generator::I32, i32)?;
    set.insert(Generator::I43, i43)?;
    Ok(set)
}

/// Primed form plus the (target, source) entries whose value is not real.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimedRep {
    pub set: GenMatrixSet,
    pub off_axis: Vec<(usize, usize)>,
}

pub fn so22_rep_primed(p: &RepParams, window: HalfInt, ctx: &QContext) -> Result<PrimedRep> {
    let wb = WindowBasis::new(p.eps, window)?;
    let labels = wb.labels;
    let n = labels.len();
    let (i21, i43) = diagonal_generators(&labels, ctx);
    let mut i32 = CMat::zeros(n, n);
    let mut off_axis = Vec::new();
    for (j, lab) in labels.iter().enumerate() {
        let BasisLabel::Window { k, l } = *lab else { unreachable!() };
        for step in Step::ALL {
            let (tk, tl) = step.target(k, l);
            if let Some(t) = window_index(&labels, tk, tl) {
                let v = primed_coefficient(p, k.value(), l.value(), step, ctx);
                if v.im.abs() > ctx.tol_zero() * v.norm().max(1.0) {
                    off_axis.push((t, j));
                }
                i32[(t, j)] = v;
            }
        }
    }
    let mut set = GenMatrixSet::new(labels, window_meta(Family::So22primed, p, window, ctx));
    set.insert(Generator::I21, i21)?;
    set.insert(Generator::I32, i32)?;
    set.insert(Generator::I43, i43)?;
    Ok(PrimedRep { set, off_axis })
}
