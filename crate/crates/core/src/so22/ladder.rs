//! One-dimensional ladder components: the single-parameter chains D0, F0, Q0, R0
//! and the two-term chains Q+-, R+-.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qarith::{q_cosh2_real, q_number_shifted, QContext, ShiftedArg, C64};
use crate::rep::{BasisLabel, CMat, Family, GenMatrixSet, Generator, Meta, ORDER_WINDOW};

use super::canon::{canonicalize, refined_kind, LatticeKind};
use super::{prefactor, RepParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadderTag {
    D0,
    F0,
    Q0,
    R0,
    Qplus,
    Qminus,
    Rplus,
    Rminus,
}

impl LadderTag {
    pub const ALL: [LadderTag; 8] = [
        LadderTag::D0,
        LadderTag::F0,
        LadderTag::Q0,
        LadderTag::R0,
        LadderTag::Qplus,
        LadderTag::Qminus,
        LadderTag::Rplus,
        LadderTag::Rminus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LadderTag::D0 => "D0",
            LadderTag::F0 => "F0",
            LadderTag::Q0 => "Q0",
            LadderTag::R0 => "R0",
            LadderTag::Qplus => "Q+",
            LadderTag::Qminus => "Q-",
            LadderTag::Rplus => "R+",
            LadderTag::Rminus => "R-",
        }
    }

    /// Chain runs along l (k fixed) for D and Q tags, along k otherwise.
    fn along_l(self) -> bool {
        matches!(self, LadderTag::D0 | LadderTag::Q0 | LadderTag::Qplus | LadderTag::Qminus)
    }
}

impl fmt::Display for LadderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LadderTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = match s {
            "D0" => LadderTag::D0,
            "F0" => LadderTag::F0,
            "Q0" => LadderTag::Q0,
            "R0" => LadderTag::R0,
            "Qplus" | "Q+" => LadderTag::Qplus,
            "Qminus" | "Q-" => LadderTag::Qminus,
            "Rplus" | "R+" => LadderTag::Rplus,
            "Rminus" | "R-" => LadderTag::Rminus,
            _ => return Err(Error::TagConditionViolated(format!("unknown ladder tag {s}"))),
        };
        Ok(t)
    }
}

/// Relative sign between the two terms of the Q+-, R+- chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermSign {
    Plus,
    Minus,
}

impl TermSign {
    fn value(self) -> f64 {
        match self {
            TermSign::Plus => 1.0,
            TermSign::Minus => -1.0,
        }
    }
}

/// The sign for which the trilinear relations hold on the chain.
pub const RESOLVED_SIGN: TermSign = TermSign::Plus;

/// Fixed coordinate of the chain and the (inner, outer) lattice values.
fn chain_data(tag: LadderTag, p: &RepParams, ctx: &QContext) -> Result<(HalfInt, HalfInt, HalfInt)> {
    let kb = refined_kind(&p.b, p.eps, ctx);
    let kc = refined_kind(&p.c, p.eps, ctx);
    let one = HalfInt::ONE;
    let fail = |why: &str| Err(Error::TagConditionViolated(format!("{tag}: {why} (eps={}, b={kb:?}, c={kc:?})", p.eps)));
    use LatticeKind::*;
    match tag {
        LadderTag::D0 => match kb {
            Real(v) if v == one => Ok((HalfInt::ZERO, v, v)),
            _ => fail("needs b = 1"),
        },
        LadderTag::F0 => match kc {
            Real(v) if v == one => Ok((HalfInt::ZERO, v, v)),
            _ => fail("needs c = 1"),
        },
        LadderTag::Q0 => match (kb, kc) {
            (Real(b), Shifted(c)) if b == one && c >= b => Ok((HalfInt::ZERO, b, c)),
            _ => fail("needs b = 1 and c = c' + i pi/2h with c' >= 1"),
        },
        LadderTag::R0 => match (kb, kc) {
            (Shifted(b), Real(c)) if c == one && b >= c => Ok((HalfInt::ZERO, c, b)),
            _ => fail("needs c = 1 and b = b' + i pi/2h with b' >= 1"),
        },
        LadderTag::Qplus | LadderTag::Qminus => match (kb, kc) {
            (Real(b), Shifted(c)) if c == b + one => Ok((if tag == LadderTag::Qplus { b } else { -b }, b, c)),
            _ => fail("needs c = b + 1 + i pi/2h"),
        },
        LadderTag::Rplus | LadderTag::Rminus => match (kb, kc) {
            (Shifted(b), Real(c)) if b == c + one => Ok((if tag == LadderTag::Rplus { c } else { -c }, c, b)),
            _ => fail("needs b = c + 1 + i pi/2h"),
        },
    }
}

/// Symmetrized prefactor between chain positions x and y.
fn link_prefactor(along_l: bool, fixed: f64, x: f64, y: f64, ctx: &QContext) -> f64 {
    let pf = |t: f64| if along_l { prefactor(fixed, t, ctx) } else { prefactor(t, fixed, ctx) };
    (pf(x) * pf(y)).sqrt()
}

/// Up and down radicands at position x, with `other` the parameter
/// that is not pinned to 1.
fn pinned_radicands(x: f64, other: ShiftedArg, ctx: &QContext) -> (C64, C64) {
    let cc = |t: f64| q_cosh2_real(t, ctx);
    let qn = |a: ShiftedArg| q_number_shifted(a, ctx);
    let up = cc(x + 1.0) * cc(x) * qn(other.plus(x)) * qn(other.neg().plus(x + 1.0));
    let down = cc(x) * cc(x - 1.0) * qn(other.neg().plus(x)) * qn(other.plus(x - 1.0));
    (up, down)
}

/// Two-term chain radicands, lifted by 1/(q - 1/q): all four factors are real cosh terms.
fn two_term_radicands(x: f64, inner: f64, outer: f64, ctx: &QContext) -> (f64, f64) {
    let cc = |t: f64| q_cosh2_real(t, ctx);
    let up = cc(x + inner) * cc(inner - x - 1.0) * cc(x + outer) * cc(outer - x - 1.0);
    let down = cc(x + inner - 1.0) * cc(inner - x) * cc(x + outer - 1.0) * cc(outer - x);
    (up, down)
}

pub fn ladder_rep(tag: LadderTag, p: &RepParams, window: HalfInt, ctx: &QContext) -> Result<GenMatrixSet> {
    ladder_rep_with_sign(tag, p, window, RESOLVED_SIGN, ctx)
}

/// Chain representation on |x| <= window; `sign` only affects Q+-, R+-.
pub fn ladder_rep_with_sign(tag: LadderTag, p: &RepParams, window: HalfInt, sign: TermSign, ctx: &QContext) -> Result<GenMatrixSet> {
    let (p, _) = canonicalize(p, ctx);
    let (fixed, inner, outer) = chain_data(tag, &p, ctx)?;
    let along_l = tag.along_l();
    let lo = if window.twice().rem_euclid(2) == p.eps as i32 { -window } else { -window + HalfInt::HALF };
    let xs: Vec<HalfInt> = HalfInt::range_inclusive(lo, window).collect();
    if xs.len() < 2 {
        return Err(Error::DimensionMismatch(format!("window {window} too small for a chain")));
    }
    let basis: Vec<BasisLabel> = xs
        .iter()
        .map(|&x| if along_l { BasisLabel::Window { k: fixed, l: x } } else { BasisLabel::Window { k: x, l: fixed } })
        .collect();
    let n = xs.len();
    let mut i32 = CMat::zeros(n, n);
    let lift = 1.0 / (ctx.q() - 1.0 / ctx.q());
    let other = if along_l { p.c } else { p.b };
    let f = fixed.value();
    for (j, x) in xs.iter().map(|x| x.value()).enumerate() {
        let (up, down) = match tag {
            LadderTag::D0 | LadderTag::F0 | LadderTag::Q0 | LadderTag::R0 => {
                let (u, d) = pinned_radicands(x, other, ctx);
                (u.sqrt(), d.sqrt())
            }
            _ => {
                let (u, d) = two_term_radicands(x, inner.value(), outer.value(), ctx);
                let u = C64::new(-u.sqrt() * lift, 0.0);
                let d = C64::new(-sign.value() * d.sqrt() * lift, 0.0);
                (u, d)
            }
        };
        if j + 1 < n {
            i32[(j + 1, j)] = up * link_prefactor(along_l, f, x, x + 1.0, ctx);
        }
        if j > 0 {
            i32[(j - 1, j)] = down * link_prefactor(along_l, f, x, x - 1.0, ctx);
        }
    }
    let mut i21 = CMat::zeros(n, n);
    let mut i43 = CMat::zeros(n, n);
    for (j, lab) in basis.iter().enumerate() {
        let BasisLabel::Window { k, l } = *lab else { unreachable!() };
        i21[(j, j)] = C64::new(0.0, crate::qarith::q_number_real((k + l).value(), ctx));
        i43[(j, j)] = C64::new(0.0, crate::qarith::q_number_real((k - l).value(), ctx));
    }
    let mut meta = Meta::new(Family::Ladder, ctx, ORDER_WINDOW);
    meta.eps = Some(p.eps);
    meta.b = Some(p.b);
    meta.c = Some(p.c);
    meta.window = Some(window);
    meta.tag = Some(tag.name().to_string());
    let mut set = GenMatrixSet::new(basis, meta);
    set.insert(Generator::I21, i21)?;
    set.insert(Generator::I32, i32)?;
    set.insert(Generator::I43, i43)?;
    Ok(set)
}
