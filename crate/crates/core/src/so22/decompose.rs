//! Invariant-subspace decomposition of reducible T^eps_{bc} (Cases 1-5).

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qarith::QContext;
use crate::rep::{BasisLabel, GenMatrixSet, Generator};
use crate::verify::{check_invariant_subspace, Direction};

use super::canon::{canonicalize, irreducibility, refined_kind, IrreducibilityReport, LatticeKind, Move};
use super::star::{ComponentStar, StarClass};
use super::{so22_rep, so22_rep_primed, RepParams};

/// Inclusive range of half-integers; `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: Option<HalfInt>,
    pub hi: Option<HalfInt>,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: None, hi: None };

    pub fn contains(&self, v: HalfInt) -> bool {
        self.lo.is_none_or(|lo| v >= lo) && self.hi.is_none_or(|hi| v <= hi)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (None, None) => write!(f, "all"),
            (Some(a), None) => write!(f, ">= {a}"),
            (None, Some(b)) => write!(f, "<= {b}"),
            (Some(a), Some(b)) => write!(f, "{a}..={b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionCase {
    Irreducible,
    /// b on the lattice: D-family.
    Case1,
    /// c on the lattice: F-family.
    Case2,
    /// b on the lattice, c on the shifted lattice with c' >= b: Q-family.
    Case3,
    /// c on the lattice, b on the shifted lattice with b' >= c: R-family.
    Case4,
    /// b and c on the lattice: E-family.
    Case5,
    /// Walls present but outside the enumerated cases.
    Other,
}

impl DecompositionCase {
    /// Class letter a..f of the decomposition case.
    pub fn class_tag(self) -> Option<char> {
        match self {
            DecompositionCase::Irreducible => Some('a'),
            DecompositionCase::Case1 => Some('b'),
            DecompositionCase::Case2 => Some('c'),
            DecompositionCase::Case3 => Some('d'),
            DecompositionCase::Case4 => Some('e'),
            DecompositionCase::Case5 => Some('f'),
            DecompositionCase::Other => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub name: String,
    pub k: Interval,
    pub l: Interval,
    /// Defining inequalities with the parameter values substituted.
    pub inequalities: String,
    pub finite_dimensional: bool,
    /// Window indices inside the region.
    pub indices: Vec<usize>,
    /// Two-sided leakage of the primed generators.
    pub leakage: f64,
    /// One-sided leakage of the unprimed generators, for regions that are
    /// unbounded along every cut axis (these are subrepresentations there).
    pub plain_leakage: Option<f64>,
    /// The region is connected through nonzero I32 entries.
    pub connected: bool,
}

impl Component {
    pub fn contains(&self, k: HalfInt, l: HalfInt) -> bool {
        self.k.contains(k) && self.l.contains(l)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub params: RepParams,
    pub moves: Vec<Move>,
    pub window: HalfInt,
    pub irreducibility: IrreducibilityReport,
    pub irreducible: bool,
    pub case: DecompositionCase,
    pub components: Vec<Component>,
    /// Filled by `classify`; empty after a bare `decompose`.
    pub star: Vec<ComponentStar>,
}

impl ClassificationReport {
    pub fn class_letter(&self) -> Option<char> {
        self.case.class_tag()
    }

    /// Distinct certified *-classes over all components.
    pub fn star_series(&self) -> Vec<StarClass> {
        let mut v: Vec<StarClass> = self.star.iter().filter_map(|c| c.pattern).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }
}

// Named intervals along one axis, cut after each position in `cuts`.
fn split_axis(cuts: &[HalfInt]) -> Vec<Interval> {
    let mut cuts = cuts.to_vec();
    cuts.sort();
    cuts.dedup();
    let mut out = Vec::new();
    let mut lo = None;
    for &c in &cuts {
        out.push(Interval { lo, hi: Some(c) });
        lo = Some(c + HalfInt::ONE);
    }
    out.push(Interval { lo, hi: None });
    out
}

// Sign label of an interval around the symmetric walls +-w.
fn sign_label(iv: &Interval) -> &'static str {
    match (iv.lo, iv.hi) {
        (None, _) => "-",
        (_, None) => "+",
        _ => "0",
    }
}

// Five-interval labels for Q/R families: outer walls at +-outer.
fn nested_label(iv: &Interval, outer: HalfInt) -> &'static str {
    match (iv.lo, iv.hi) {
        (Some(l), Some(h)) if l == -outer + HalfInt::ONE && h == outer - HalfInt::ONE => "0",
        (None, Some(h)) if h == -outer => "--",
        (Some(l), None) if l == outer => "++",
        (None, _) => "-",
        (_, None) => "+",
        (Some(l), Some(_)) if l == -outer + HalfInt::ONE => "-",
        (Some(_), Some(h)) if h == outer - HalfInt::ONE => "+",
        _ => "0",
    }
}

fn inequality(var: &str, iv: &Interval) -> String {
    match (iv.lo, iv.hi) {
        (None, None) => String::new(),
        (None, Some(h)) => format!("{var}<={h}"),
        (Some(l), None) => format!("{var}>={l}"),
        (Some(l), Some(h)) => format!("{}<{var}<{}", l - HalfInt::ONE, h + HalfInt::ONE),
    }
}

fn connected(set: &GenMatrixSet, idx: &[usize], ctx: &QContext) -> bool {
    if idx.len() <= 1 {
        return true;
    }
    let m = set.get(Generator::I32);
    let thresh = ctx.tol_zero() * m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut seen = vec![false; idx.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for b in 0..idx.len() {
            if !seen[b] && (m[(idx[a], idx[b])].norm() > thresh || m[(idx[b], idx[a])].norm() > thresh) {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Cuts (k-axis, l-axis): a cut at p separates p from p + 1.
fn walls(p: &RepParams, ctx: &QContext) -> (Vec<HalfInt>, Vec<HalfInt>, LatticeKind, LatticeKind) {
    let kb = refined_kind(&p.b, p.eps, ctx);
    let kc = refined_kind(&p.c, p.eps, ctx);
    let (mut kcuts, mut lcuts) = (Vec::new(), Vec::new());
    let pair = |v: HalfInt| [-v, v - HalfInt::ONE];
    match kb {
        LatticeKind::Real(v) => kcuts.extend(pair(v)),
        LatticeKind::Shifted(v) => lcuts.extend(pair(v)),
        LatticeKind::Off => {}
    }
    match kc {
        LatticeKind::Real(v) => lcuts.extend(pair(v)),
        LatticeKind::Shifted(v) => kcuts.extend(pair(v)),
        LatticeKind::Off => {}
    }
    (kcuts, lcuts, kb, kc)
}

fn case_of(kb: LatticeKind, kc: LatticeKind) -> DecompositionCase {
    use LatticeKind::*;
    match (kb, kc) {
        (Off, Off) => DecompositionCase::Irreducible,
        (Real(_), Off) => DecompositionCase::Case1,
        (Off, Real(_)) => DecompositionCase::Case2,
        (Real(b), Shifted(c)) if c >= b => DecompositionCase::Case3,
        (Shifted(b), Real(c)) if b >= c => DecompositionCase::Case4,
        (Real(_), Real(_)) => DecompositionCase::Case5,
        _ => DecompositionCase::Other,
    }
}

fn name_component(case: DecompositionCase, kb: LatticeKind, kc: LatticeKind, k: &Interval, l: &Interval) -> String {
    let val = |x: LatticeKind| match x {
        LatticeKind::Real(v) | LatticeKind::Shifted(v) => v,
        LatticeKind::Off => HalfInt::ZERO,
    };
    match case {
        DecompositionCase::Irreducible => "T".to_string(),
        DecompositionCase::Case1 => format!("D{}", sign_label(k)),
        DecompositionCase::Case2 => format!("F{}", sign_label(l)),
        DecompositionCase::Case3 => format!("Q{}", nested_label(k, val(kc))),
        DecompositionCase::Case4 => format!("R{}", nested_label(l, val(kb))),
        DecompositionCase::Case5 => format!("E{}{}", sign_label(k), sign_label(l)),
        DecompositionCase::Other => format!("C[k {k}; l {l}]"),
    }
}

/// Splits the window into the invariant regions fixed by the walls and
/// certifies each one numerically.
pub fn decompose(p: &RepParams, window: HalfInt, ctx: &QContext) -> Result<ClassificationReport> {
    let (cp, moves) = canonicalize(p, ctx);
    let irr = irreducibility(&cp, ctx);
    let (kcuts, lcuts, kb, kc) = walls(&cp, ctx);
    let case = case_of(kb, kc);
    for &w in kcuts.iter().chain(&lcuts) {
        let reach = w.abs().max((w + HalfInt::ONE).abs());
        if reach > window - HalfInt::int(3) {
            return Err(Error::WallTooCloseToWindow { wall: w.to_string(), window: window.to_string() });
        }
    }
    let primed = so22_rep_primed(&cp, window, ctx)?.set;
    let plain = so22_rep(&cp, window, ctx)?;
    let kiv = split_axis(&kcuts);
    let liv = split_axis(&lcuts);
    let mut components = Vec::new();
    for k in &kiv {
        for l in &liv {
            let indices: Vec<usize> = primed
                .basis
                .iter()
                .enumerate()
                .filter(|(_, b)| matches!(b, BasisLabel::Window { k: kk, l: ll } if k.contains(*kk) && l.contains(*ll)))
                .map(|(i, _)| i)
                .collect();
            let k_cut = !kcuts.is_empty();
            let l_cut = !lcuts.is_empty();
            let outer = (!k_cut || !k.is_bounded()) && (!l_cut || !l.is_bounded());
            let ineq = [inequality("k", k), inequality("l", l)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>();
            components.push(Component {
                name: name_component(case, kb, kc, k, l),
                k: *k,
                l: *l,
                inequalities: if ineq.is_empty() { "all k, l".to_string() } else { ineq.join(", ") },
                finite_dimensional: k.is_bounded() && l.is_bounded(),
                leakage: check_invariant_subspace(&primed, &indices, Direction::TwoSided),
                plain_leakage: outer.then(|| check_invariant_subspace(&plain, &indices, Direction::IntoS)),
                connected: connected(&primed, &indices, ctx),
                indices,
            });
        }
    }
    Ok(ClassificationReport {
        params: cp,
        moves,
        window,
        irreducibility: irr,
        irreducible: irr.irreducible,
        case,
        components,
        star: Vec::new(),
    })
}
