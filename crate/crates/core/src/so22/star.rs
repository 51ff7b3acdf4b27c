//! *-series labels for irreducible T and for the components of reducible T.

use std::fmt;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qarith::{QContext, ShiftedArg};
use crate::verify::{check_star, Restriction, StarForm};

use super::canon::{refined_kind, LatticeKind};
use super::decompose::{decompose, ClassificationReport, DecompositionCase};
use super::{interior_indices, so22_rep_primed, RepParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarClass {
    Principal,
    Supplementary,
    Mixed,
    DiscreteD,
    DiscreteF,
    Discrete,
    LadderShifted,
    LadderCentral,
    EFamily,
}

impl StarClass {
    /// Series number, 1..=9.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn series_name(self) -> &'static str {
        match self {
            StarClass::Principal => "principal",
            StarClass::Supplementary => "supplementary",
            StarClass::Mixed => "principal-supplementary",
            StarClass::DiscreteD => "D-family",
            StarClass::DiscreteF => "F-family",
            StarClass::Discrete => "discrete",
            StarClass::LadderShifted => "ladder Q+-/R+-",
            StarClass::LadderCentral => "ladder Q0/R0",
            StarClass::EFamily => "E-family",
        }
    }
}

impl fmt::Display for StarClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarStatus {
    /// Pattern matched and residuals pass.
    Certified,
    /// No pattern and residuals fail.
    NotStar,
    /// No pattern, yet the residuals pass.
    UnlistedPass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentStar {
    pub component: String,
    pub pattern: Option<StarClass>,
    pub residual: f64,
    pub status: StarStatus,
}

impl ComponentStar {
    pub fn is_star(&self) -> bool {
        self.status != StarStatus::NotStar
    }
}

fn principal(a: &ShiftedArg, ctx: &QContext) -> bool {
    (a.base.re - 0.5).abs() <= ctx.tol_zero()
}

// Canonical image of (0, 1/2] and (0 + i pi/2h, 1/2 + i pi/2h] is [1/2, 1).
fn supplementary(a: &ShiftedArg, allow_real: bool, ctx: &QContext) -> bool {
    let tol = ctx.tol_zero();
    let on_axis = a.base.im.abs() <= tol;
    let inside = a.base.re >= 0.5 - tol && a.base.re < 1.0 - tol;
    on_axis && inside && (a.quarter == 1 || (a.quarter == 0 && allow_real))
}

fn value(k: LatticeKind) -> HalfInt {
    match k {
        LatticeKind::Real(v) | LatticeKind::Shifted(v) => v,
        LatticeKind::Off => HalfInt::ZERO,
    }
}

/// Pattern match for one component of the canonical parameters.
fn pattern(p: &RepParams, case: DecompositionCase, name: &str, ctx: &QContext) -> Option<StarClass> {
    let kb = refined_kind(&p.b, p.eps, ctx);
    let kc = refined_kind(&p.c, p.eps, ctx);
    let (b, c) = (value(kb), value(kc));
    let even = p.eps == 0;
    let tail = &name[1..];
    match case {
        DecompositionCase::Irreducible => {
            let (pb, pc) = (principal(&p.b, ctx), principal(&p.c, ctx));
            let (sb, sc) = (supplementary(&p.b, true, ctx), supplementary(&p.c, true, ctx));
            if pb && pc {
                Some(StarClass::Principal)
            } else if even && sb && sc {
                Some(StarClass::Supplementary)
            } else if even && ((pb && sc) || (pc && sb)) {
                Some(StarClass::Mixed)
            } else {
                None
            }
        }
        DecompositionCase::Case1 => {
            let ok = principal(&p.c, ctx) || supplementary(&p.c, even, ctx);
            let comp = tail != "0" || b == HalfInt::ONE;
            (ok && comp).then_some(StarClass::DiscreteD)
        }
        DecompositionCase::Case2 => {
            let ok = principal(&p.b, ctx) || supplementary(&p.b, even, ctx);
            let comp = tail != "0" || c == HalfInt::ONE;
            (ok && comp).then_some(StarClass::DiscreteF)
        }
        DecompositionCase::Case3 | DecompositionCase::Case4 => {
            // Q: inner value b, outer c'. R: inner c, outer b'.
            let (inner, outer) = if case == DecompositionCase::Case3 { (b, c) } else { (c, b) };
            match tail {
                "++" | "--" => Some(StarClass::Discrete),
                "+" | "-" if outer == inner + HalfInt::ONE => Some(StarClass::LadderShifted),
                "0" if outer == inner => Some(StarClass::LadderCentral),
                _ => None,
            }
        }
        DecompositionCase::Case5 => {
            let t: Vec<char> = tail.chars().collect();
            let listed = match (t[0], t[1]) {
                ('0', '0') => false,
                ('0', _) => b == HalfInt::ONE,
                (_, '0') => c == HalfInt::ONE,
                _ => true,
            };
            listed.then_some(StarClass::EFamily)
        }
        DecompositionCase::Other => None,
    }
}

/// Labels every component (or the irreducible T itself) and certifies the
/// label with Hermiticity residuals of the primed matrices on interior(3).
pub fn star_classify(p: &RepParams, window: HalfInt, ctx: &QContext) -> Result<Vec<ComponentStar>> {
    let report = decompose(p, window, ctx)?;
    star_for_report(&report, ctx)
}

pub(crate) fn star_for_report(report: &ClassificationReport, ctx: &QContext) -> Result<Vec<ComponentStar>> {
    let set = so22_rep_primed(&report.params, report.window, ctx)?.set;
    let interior = interior_indices(&set, 3);
    let mut out = Vec::new();
    for comp in &report.components {
        let idx: Vec<usize> = if comp.finite_dimensional {
            comp.indices.clone()
        } else {
            comp.indices.iter().copied().filter(|i| interior.binary_search(i).is_ok()).collect()
        };
        if idx.is_empty() {
            continue;
        }
        let r = Restriction::subset(idx, format!("{} interior", comp.name));
        let residual = check_star(&set, StarForm::So22, ctx, &r).iter().map(|x| x.residual).fold(0.0, f64::max);
        let passed = residual <= ctx.tol_rel();
        let pat = pattern(&report.params, report.case, &comp.name, ctx);
        let status = match (pat, passed) {
            (Some(class), false) => {
                return Err(Error::CertificationFailed {
                    component: comp.name.clone(),
                    class: class.to_string(),
                    residual,
                })
            }
            (Some(_), true) => StarStatus::Certified,
            (None, true) => StarStatus::UnlistedPass,
            (None, false) => StarStatus::NotStar,
        };
        out.push(ComponentStar { component: comp.name.clone(), pattern: pat, residual, status });
    }
    Ok(out)
}

/// Decomposition plus *-series labels in one report.
pub fn classify(p: &RepParams, window: HalfInt, ctx: &QContext) -> Result<ClassificationReport> {
    let mut report = decompose(p, window, ctx)?;
    report.star = star_for_report(&report, ctx)?;
    Ok(report)
}
