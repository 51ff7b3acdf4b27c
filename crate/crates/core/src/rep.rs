//! Labeled generator matrices shared by every representation family.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qarith::{QContext, ShiftedArg, C64};

pub type CMat = DMatrix<C64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    I21,
    I32,
    I43,
    I31,
    I42,
    I41,
}

impl Generator {
    pub const ALL: [Generator; 6] =
        [Generator::I21, Generator::I32, Generator::I43, Generator::I31, Generator::I42, Generator::I41];

    pub fn name(self) -> &'static str {
        match self {
            Generator::I21 => "I21",
            Generator::I32 => "I32",
            Generator::I43 => "I43",
            Generator::I31 => "I31",
            Generator::I42 => "I42",
            Generator::I41 => "I41",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::MatrixFile(format!("unknown generator {s}")))
    }
}

/// Basis vector label.
///
/// Order: GT labels by (l, m); x-basis labels by m ascending then x descending;
/// window labels by (k, l).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BasisLabel {
    Gt { l: HalfInt, m: HalfInt },
    X { x: HalfInt, m: HalfInt },
    Window { k: HalfInt, l: HalfInt },
}

impl BasisLabel {
    fn rank(&self) -> (u8, HalfInt, HalfInt) {
        match *self {
            BasisLabel::Gt { l, m } => (0, l, m),
            BasisLabel::X { x, m } => (1, m, -x),
            BasisLabel::Window { k, l } => (2, k, l),
        }
    }
}

impl Ord for BasisLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for BasisLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Gt { l, m } => write!(f, "|l={l}, m={m}>"),
            BasisLabel::X { x, m } => write!(f, "|x={x}, m={m}>"),
            BasisLabel::Window { k, l } => write!(f, "|k={k}, l={l}>"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    So3,
    So4,
    So4x,
    So22,
    So22primed,
    Ladder,
    Block,
}

/// Construction parameters carried with a matrix set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub family: Family,
    pub q: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ShiftedArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<ShiftedArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    pub ordering: String,
}

impl Meta {
    pub fn new(family: Family, ctx: &QContext, ordering: &str) -> Self {
        Meta {
            family,
            q: ctx.q(),
            l: None,
            r: None,
            s: None,
            eps: None,
            b: None,
            c: None,
            window: None,
            tag: None,
            ordering: ordering.to_string(),
        }
    }
}

pub const ORDER_GT: &str = "l ascending, then m ascending";
pub const ORDER_X: &str = "m ascending, then x descending";
pub const ORDER_WINDOW: &str = "k ascending, then l ascending";

#[derive(Debug, Clone, PartialEq)]
pub struct GenMatrixSet {
    pub basis: Vec<BasisLabel>,
    pub matrices: BTreeMap<Generator, CMat>,
    pub meta: Meta,
}

impl GenMatrixSet {
    pub fn new(basis: Vec<BasisLabel>, meta: Meta) -> Self {
        GenMatrixSet { basis, matrices: BTreeMap::new(), meta }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Panics if the generator was not built; every family builds I21, I32, I43.
    pub fn get(&self, g: Generator) -> &CMat {
        self.matrices.get(&g).unwrap_or_else(|| panic!("generator {g} not present"))
    }

    pub fn try_get(&self, g: Generator) -> Option<&CMat> {
        self.matrices.get(&g)
    }

    pub fn insert(&mut self, g: Generator, m: CMat) -> Result<()> {
        let n = self.dim();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{g} is {}x{}, basis has {n} labels",
                m.nrows(),
                m.ncols()
            )));
        }
        self.matrices.insert(g, m);
        Ok(())
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    /// Sub-block on the given basis indices (in the given order).
    pub fn restrict(&self, idx: &[usize]) -> GenMatrixSet {
        let basis = idx.iter().map(|&i| self.basis[i]).collect();
        let matrices = self.matrices.iter().map(|(&g, m)| (g, submatrix(m, idx))).collect();
        GenMatrixSet { basis, matrices, meta: self.meta.clone() }
    }

    /// Adds I31, I42, I41 from the q-commutators.
    pub fn with_derived(mut self, ctx: &QContext) -> Self {
        let (a, b, c) = (self.get(Generator::I21), self.get(Generator::I32), self.get(Generator::I43));
        let i31 = q_commutator(a, b, ctx);
        let i42 = q_commutator(b, c, ctx);
        let i41 = q_commutator(&i31, c, ctx);
        self.matrices.insert(Generator::I31, i31);
        self.matrices.insert(Generator::I42, i42);
        self.matrices.insert(Generator::I41, i41);
        self
    }
}

/// q^{1/2} A B - q^{-1/2} B A.
pub fn q_commutator(a: &CMat, b: &CMat, ctx: &QContext) -> CMat {
    let s = ctx.q().sqrt();
    a * b * C64::new(s, 0.0) - b * a * C64::new(1.0 / s, 0.0)
}

pub fn submatrix(m: &CMat, idx: &[usize]) -> CMat {
    CMat::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

pub fn diag(entries: &[C64]) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}
