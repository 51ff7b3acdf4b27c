//! Scalar kernels: q-numbers, q-factorials, Pochhammer symbols, terminating
//! 4phi3 series and q-Racah polynomials.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const DEFAULT_TOL_REL: f64 = 1e-10;
pub const DEFAULT_TOL_ZERO: f64 = 1e-12;

/// Environment variable overriding tolerances: `tol_rel` or `tol_rel,tol_zero`.
pub const TOL_ENV: &str = "QOREP_TOL";

/// Deformation parameter plus tolerances. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: f64,
    h: f64,
    tol_rel: f64,
    tol_zero: f64,
}

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0 && q != 1.0) {
            return Err(Error::InvalidQ(q));
        }
        Ok(QContext { q, h: q.ln(), tol_rel: DEFAULT_TOL_REL, tol_zero: DEFAULT_TOL_ZERO })
    }

    pub fn with_tolerances(self, tol_rel: f64, tol_zero: f64) -> Result<Self> {
        if !(tol_zero > 0.0 && tol_zero <= tol_rel && tol_rel < 1.0) {
            return Err(Error::InvalidTolerance { tol_rel, tol_zero });
        }
        Ok(QContext { tol_rel, tol_zero, ..self })
    }

    /// Applies a `QOREP_TOL`-style override string.
    pub fn with_tol_override(self, spec: &str) -> Result<Self> {
        let bad = || Error::InvalidTolerance { tol_rel: f64::NAN, tol_zero: f64::NAN };
        let mut parts = spec.split(',').map(|p| p.trim().parse::<f64>());
        let tol_rel = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
        let tol_zero = match parts.next() {
            Some(p) => p.map_err(|_| bad())?,
            None => self.tol_zero.min(tol_rel),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        self.with_tolerances(tol_rel, tol_zero)
    }

    /// Reads `QOREP_TOL` if set.
    pub fn with_env_overrides(self) -> Result<Self> {
        match std::env::var(TOL_ENV) {
            Ok(s) if !s.trim().is_empty() => self.with_tol_override(&s),
            _ => Ok(self),
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }

    pub fn tol_zero(&self) -> f64 {
        self.tol_zero
    }

    /// a = q + 1/q, the coefficient in the trilinear relations.
    pub fn a(&self) -> f64 {
        self.q + 1.0 / self.q
    }

    /// Q = q^2, the base of the q-Racah polynomials.
    pub fn big_q(&self) -> f64 {
        self.q * self.q
    }

    /// pi/h, the half period of [z] along the imaginary axis.
    pub fn half_period(&self) -> f64 {
        PI / self.h
    }
}

/// [z] = sinh(hz)/sinh(h).
pub fn q_number(z: C64, ctx: &QContext) -> C64 {
    (z * ctx.h).sinh() / ctx.h.sinh()
}

pub fn q_number_real(x: f64, ctx: &QContext) -> f64 {
    (ctx.h * x).sinh() / ctx.h.sinh()
}

/// q^z + q^{-z}.
pub fn q_cosh2(z: C64, ctx: &QContext) -> C64 {
    (z * ctx.h).cosh() * 2.0
}

pub fn q_cosh2_real(x: f64, ctx: &QContext) -> f64 {
    2.0 * (ctx.h * x).cosh()
}

/// A complex argument offset by an exact multiple of i*pi/(2h).
///
/// Lattice walls in the shifted classes sit at cosh(i*pi/2) = 0; carrying the
/// quarter count symbolically keeps those zeros exact.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ShiftedArg {
    pub base: C64,
    pub quarter: i32,
}

impl ShiftedArg {
    pub fn new(base: C64, quarter: i32) -> Self {
        ShiftedArg { base, quarter: quarter.rem_euclid(4) }
    }

    pub fn real(x: f64) -> Self {
        ShiftedArg { base: C64::new(x, 0.0), quarter: 0 }
    }

    pub fn plus(self, x: f64) -> Self {
        ShiftedArg { base: self.base + x, quarter: self.quarter }
    }

    pub fn neg(self) -> Self {
        ShiftedArg::new(-self.base, -self.quarter)
    }

    pub fn value(self, ctx: &QContext) -> C64 {
        self.base + C64::new(0.0, self.quarter as f64 * ctx.half_period() / 2.0)
    }
}

// sinh and cosh of h*base + quarter*i*pi/2, rotated exactly.
fn shifted_sinh_cosh(a: ShiftedArg, ctx: &QContext) -> (C64, C64) {
    let w = a.base * ctx.h;
    let (s, c) = (w.sinh(), w.cosh());
    let i = C64::i();
    match a.quarter.rem_euclid(4) {
        0 => (s, c),
        1 => (i * c, i * s),
        2 => (-s, -c),
        _ => (-i * c, -i * s),
    }
}

pub fn q_number_shifted(a: ShiftedArg, ctx: &QContext) -> C64 {
    shifted_sinh_cosh(a, ctx).0 / ctx.h.sinh()
}

pub fn q_cosh2_shifted(a: ShiftedArg, ctx: &QContext) -> C64 {
    shifted_sinh_cosh(a, ctx).1 * 2.0
}

/// [n]! with [0]! = 1.
pub fn q_factorial(n: u32, ctx: &QContext) -> f64 {
    (1..=n).map(|j| q_number_real(j as f64, ctx)).product()
}

/// [n]!! = [n][n-2]... ending at [1] or [2]; [0]!! = 1.
pub fn q_double_factorial(n: u32, ctx: &QContext) -> f64 {
    (1..=n).rev().step_by(2).map(|j| q_number_real(j as f64, ctx)).product()
}

/// (a;Q)_n = (1-a)(1-aQ)...(1-aQ^{n-1}).
pub fn q_pochhammer(a: C64, big_q: f64, n: u32) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut qj = 1.0;
    for _ in 0..n {
        acc *= C64::new(1.0, 0.0) - a * qj;
        qj *= big_q;
    }
    acc
}

// Nonnegative N with a = Q^{-N}, if any.
fn terminating_order(a: C64, big_q: f64) -> Option<u32> {
    if a.re <= 0.0 || a.im.abs() > 1e-12 * a.norm() {
        return None;
    }
    let e = -a.re.ln() / big_q.ln();
    let n = e.round();
    ((e - n).abs() <= 1e-9 && n >= 0.0 && n < u32::MAX as f64).then_some(n as u32)
}

/// Terminating 4phi3 with argument z.
pub fn phi43(num: [C64; 4], den: [C64; 3], big_q: f64, z: C64) -> Result<C64> {
    let n = num
        .iter()
        .filter_map(|&a| terminating_order(a, big_q))
        .min()
        .ok_or(Error::DivergentSeries)?;
    phi43_truncated(num, den, big_q, z, n)
}

/// Sum of terms 0..=n. The caller guarantees the series terminates at n.
pub fn phi43_truncated(num: [C64; 4], den: [C64; 3], big_q: f64, z: C64, n: u32) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut term = one;
    let mut sum = one;
    let mut qj = 1.0;
    for j in 0..n {
        let mut ratio = z / (1.0 - qj * big_q);
        for a in num {
            ratio *= one - a * qj;
        }
        for b in den {
            let f = one - b * qj;
            if f.norm() <= 1e-13 * (b * qj).norm().max(1.0) {
                return Err(Error::PoleInDenominator { term: j as usize + 1 });
            }
            ratio /= f;
        }
        term *= ratio;
        sum += term;
        qj *= big_q;
    }
    Ok(sum)
}

/// Parameters of R_n(mu(y); alpha, beta, gamma, delta | Q).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RacahParams {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
    pub big_q: f64,
    pub n: u32,
    pub y: u32,
}

/// 4phi3(Q^{-y}, Q^{y+1} gamma delta, Q^{-n}, Q^{n+1} alpha beta; alpha Q, beta delta Q, gamma Q; Q, Q).
pub fn racah_poly(p: &RacahParams) -> Result<C64> {
    let bq = p.big_q;
    let num = [
        C64::new(bq.powi(-(p.y as i32)), 0.0),
        p.gamma * p.delta * bq.powi(p.y as i32 + 1),
        C64::new(bq.powi(-(p.n as i32)), 0.0),
        p.alpha * p.beta * bq.powi(p.n as i32 + 1),
    ];
    let den = [p.alpha * bq, p.beta * p.delta * bq, p.gamma * bq];
    phi43_truncated(num, den, bq, C64::new(bq, 0.0), p.n.min(p.y))
}
