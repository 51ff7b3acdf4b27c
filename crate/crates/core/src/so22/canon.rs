//! Parameter canonicalization and the irreducibility predicate.

use crate::halfint::HalfInt;
use crate::qarith::{q_cosh2_shifted, q_number_shifted, QContext, ShiftedArg, C64};

use super::RepParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    B,
    C,
}

/// One equivalence move applied during canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Shift by `periods` * 2 pi i / h: matrices unchanged.
    Period { param: Which, periods: i32 },
    /// Shift by pi i / h: I32 changes sign on alternate vectors.
    SignGauge { param: Which },
    /// x -> 1 - x: equivalent when the representation is irreducible.
    Reflection { param: Which },
}

// Snap near-lattice imaginary parts and reduce to 0 <= Im base < pi/2h.
fn reduce_imag(a: ShiftedArg, which: Which, ctx: &QContext, log: &mut Vec<Move>) -> ShiftedArg {
    let unit = ctx.half_period() / 2.0;
    let mut base = a.base;
    let mut quarter = a.quarter;
    let j = (base.im / unit).round();
    if (base.im - j * unit).abs() <= ctx.tol_zero() {
        base.im = 0.0;
        quarter += j as i32;
    } else {
        let f = (base.im / unit).floor();
        base.im -= f * unit;
        quarter += f as i32;
    }
    let periods = quarter.div_euclid(4);
    if periods != 0 {
        log.push(Move::Period { param: which, periods: -periods });
    }
    quarter = quarter.rem_euclid(4);
    if quarter >= 2 {
        quarter -= 2;
        log.push(Move::SignGauge { param: which });
    }
    ShiftedArg { base, quarter }
}

fn canonical_arg(a: ShiftedArg, which: Which, ctx: &QContext, log: &mut Vec<Move>) -> ShiftedArg {
    let mut a = reduce_imag(a, which, ctx, log);
    if a.base.re < 0.5 - ctx.tol_zero() {
        log.push(Move::Reflection { param: which });
        a = reduce_imag(ShiftedArg { base: C64::new(1.0, 0.0) - a.base, quarter: -a.quarter }, which, ctx, log);
    }
    if (a.base.re - a.base.re.round()).abs() <= ctx.tol_zero() {
        a.base.re = a.base.re.round();
    } else if (2.0 * a.base.re - (2.0 * a.base.re).round()).abs() <= 2.0 * ctx.tol_zero() {
        a.base.re = (2.0 * a.base.re).round() / 2.0;
    }
    a
}

/// Representative with Re >= 1/2 and 0 <= Im < pi/h, plus the moves used.
pub fn canonicalize(p: &RepParams, ctx: &QContext) -> (RepParams, Vec<Move>) {
    let mut log = Vec::new();
    let b = canonical_arg(p.b, Which::B, ctx, &mut log);
    let c = canonical_arg(p.c, Which::C, ctx, &mut log);
    (RepParams { eps: p.eps, b, c }, log)
}

/// Position of a parameter relative to the reducibility lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Off,
    /// Real half-integer value.
    Real(HalfInt),
    /// Half-integer plus i pi / 2h.
    Shifted(HalfInt),
}

/// Lattice position of a canonical argument (quarter counts taken mod 2).
pub fn lattice_kind(a: &ShiftedArg, ctx: &QContext) -> LatticeKind {
    if a.base.im.abs() > ctx.tol_zero() {
        return LatticeKind::Off;
    }
    match HalfInt::from_f64(a.base.re, ctx.tol_zero()) {
        None => LatticeKind::Off,
        Some(v) if a.quarter.rem_euclid(2) == 0 => LatticeKind::Real(v),
        Some(v) => LatticeKind::Shifted(v),
    }
}

/// Kind restricted to values with the fractional part eps/2.
pub(crate) fn refined_kind(a: &ShiftedArg, eps: u8, ctx: &QContext) -> LatticeKind {
    match lattice_kind(a, ctx) {
        LatticeKind::Real(v) | LatticeKind::Shifted(v) if v.twice().rem_euclid(2) != eps as i32 => LatticeKind::Off,
        k => k,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityReport {
    /// Literal lattice {n, n + i pi r/2h} with integer n.
    pub literal: bool,
    /// Lattice with the fractional part of n fixed by eps.
    pub refined: bool,
    /// No transition coefficient vanishes anywhere on the eps-lattice.
    pub numerical: bool,
    /// The two predicates disagree.
    pub flag: bool,
    pub irreducible: bool,
}

fn literal_on_lattice(a: &ShiftedArg, ctx: &QContext) -> bool {
    matches!(lattice_kind(a, ctx), LatticeKind::Real(v) | LatticeKind::Shifted(v) if v.is_integer())
}

/// Scans the transition factors of the primed form for exact walls.
fn has_walls(p: &RepParams, ctx: &QContext) -> bool {
    let reach = p.b.base.re.abs().max(p.c.base.re.abs()).ceil() as i32 + 3;
    let lim = HalfInt::from_twice(2 * reach + p.eps as i32);
    let tiny = |z: C64| z.norm() <= ctx.tol_zero();
    HalfInt::range_inclusive(-lim, lim).any(|v| {
        let x = v.value();
        let (b, c) = (p.b, p.c);
        tiny(q_number_shifted(b.plus(x), ctx))
            || tiny(q_number_shifted(b.neg().plus(x + 1.0), ctx))
            || tiny(q_cosh2_shifted(c.plus(x), ctx))
            || tiny(q_cosh2_shifted(c.plus(-x - 1.0), ctx))
            || tiny(q_cosh2_shifted(b.plus(x), ctx))
            || tiny(q_cosh2_shifted(b.plus(-x - 1.0), ctx))
            || tiny(q_number_shifted(c.plus(x), ctx))
            || tiny(q_number_shifted(c.neg().plus(x + 1.0), ctx))
    })
}

pub fn irreducibility(p: &RepParams, ctx: &QContext) -> IrreducibilityReport {
    let (p, _) = canonicalize(p, ctx);
    let literal = !(literal_on_lattice(&p.b, ctx) || literal_on_lattice(&p.c, ctx));
    let refined = refined_kind(&p.b, p.eps, ctx) == LatticeKind::Off && refined_kind(&p.c, p.eps, ctx) == LatticeKind::Off;
    let numerical = !has_walls(&p, ctx);
    let flag = literal != refined;
    IrreducibilityReport { literal, refined, numerical, flag, irreducible: if flag { numerical } else { refined } }
}

pub fn classify_irreducible(p: &RepParams, ctx: &QContext) -> bool {
    irreducibility(p, ctx).irreducible
}
