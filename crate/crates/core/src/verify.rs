//! Numerical certification: relation residuals, *-conditions, spectra,
//! invariant subspaces and intertwiners.

use std::collections::VecDeque;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::qarith::{QContext, C64};
use crate::rep::{submatrix, CMat, GenMatrixSet, Generator};

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Index projection applied before measuring a defect.
#[derive(Debug, Clone, PartialEq)]
pub enum Restriction {
    Full,
    Subset { indices: Vec<usize>, label: String },
}

impl Restriction {
    pub fn subset(indices: Vec<usize>, label: impl Into<String>) -> Self {
        Restriction::Subset { indices, label: label.into() }
    }

    pub fn describe(&self) -> String {
        match self {
            Restriction::Full => "full".to_string(),
            Restriction::Subset { label, indices } => format!("{label} ({} vectors)", indices.len()),
        }
    }

    pub fn apply(&self, m: &CMat) -> CMat {
        match self {
            Restriction::Full => m.clone(),
            Restriction::Subset { indices, .. } => submatrix(m, indices),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
    pub restriction: String,
}

impl ResidualReport {
    fn new(name: &str, defect: f64, scale: f64, tol: f64, r: &Restriction) -> Self {
        let residual = if scale > 0.0 { defect / scale } else { defect };
        ResidualReport { name: name.to_string(), residual, passed: residual <= tol, restriction: r.describe() }
    }
}

fn same_shape(a: &CMat, b: &CMat) -> Result<()> {
    if a.nrows() != a.ncols() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    Ok(())
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// A B^2 - a B A B + B^2 A = -A and A^2 B - a A B A + B A^2 = -B.
pub fn check_serre(a: &CMat, b: &CMat, ctx: &QContext, r: &Restriction) -> Result<[ResidualReport; 2]> {
    same_shape(a, b)?;
    let k = c(ctx.a());
    let (ab, ba) = (a * b, b * a);
    let d1 = &ab * b - (b * &ab) * k + b * &ba + a;
    let d2 = a * &ab - (&ab * a) * k + &ba * a + b;
    let (na, nb) = (op_norm(&r.apply(a)), op_norm(&r.apply(b)));
    let tol = ctx.tol_rel();
    Ok([
        ResidualReport::new("trilinear (A,B,B)", op_norm(&r.apply(&d1)), (na * nb * nb).max(na), tol, r),
        ResidualReport::new("trilinear (A,A,B)", op_norm(&r.apply(&d2)), (na * na * nb).max(nb), tol, r),
    ])
}

/// The three q-commutator identities linking I21, I32 and I31.
pub fn check_so3_bilinear(i21: &CMat, i32: &CMat, i31: &CMat, ctx: &QContext, r: &Restriction) -> Result<[ResidualReport; 3]> {
    same_shape(i21, i32)?;
    same_shape(i21, i31)?;
    let (p, m) = (c(ctx.q().sqrt()), c(1.0 / ctx.q().sqrt()));
    let d9 = i21 * i32 * p - i32 * i21 * m - i31;
    let d10 = i31 * i21 * p - i21 * i31 * m - i32;
    let d11 = i32 * i31 * p - i31 * i32 * m - i21;
    let n = |x: &CMat| op_norm(&r.apply(x));
    let (n1, n2, n3) = (n(i21), n(i32), n(i31));
    let tol = ctx.tol_rel();
    Ok([
        ResidualReport::new("bilinear I21 I32 -> I31", n(&d9), (n1 * n2).max(n3), tol, r),
        ResidualReport::new("bilinear I31 I21 -> I32", n(&d10), (n3 * n1).max(n2), tol, r),
        ResidualReport::new("bilinear I32 I31 -> I21", n(&d11), (n2 * n3).max(n1), tol, r),
    ])
}

pub fn check_commute(a: &CMat, b: &CMat, ctx: &QContext, r: &Restriction) -> Result<ResidualReport> {
    same_shape(a, b)?;
    let d = a * b - b * a;
    let scale = op_norm(&r.apply(a)) * op_norm(&r.apply(b));
    Ok(ResidualReport::new("commutator", op_norm(&r.apply(&d)), scale, ctx.tol_rel(), r))
}

/// Which real form the *-conditions refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarForm {
    /// All three generators skew-Hermitian (compact real form).
    Compact,
    /// I21, I43 skew-Hermitian and I32 Hermitian.
    So22,
}

pub fn check_star(set: &GenMatrixSet, form: StarForm, ctx: &QContext, r: &Restriction) -> [ResidualReport; 3] {
    let one = |g: Generator, hermitian: bool| {
        let m = r.apply(set.get(g));
        let adj = m.adjoint();
        let d = if hermitian { &m - adj } else { &m + adj };
        let kind = if hermitian { "Hermitian" } else { "skew-Hermitian" };
        ResidualReport::new(&format!("{g} {kind}"), op_norm(&d), op_norm(&m), ctx.tol_rel(), r)
    };
    let mid = form == StarForm::So22;
    [one(Generator::I21, false), one(Generator::I32, mid), one(Generator::I43, false)]
}

/// Eigenvalues, using the Hermitian solver when the matrix is (skew-)Hermitian.
pub fn eigenvalues(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    if n == 0 {
        return vec![];
    }
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let adj = m.adjoint();
    if (m - &adj).norm() <= 1e-13 * scale {
        let herm = (m + &adj) * c(0.5);
        return herm.symmetric_eigenvalues().iter().map(|&x| c(x)).collect();
    }
    if (m + &adj).norm() <= 1e-13 * scale {
        let herm = (m - &adj) * C64::new(0.0, -0.5);
        return herm.symmetric_eigenvalues().iter().map(|&x| C64::new(0.0, x)).collect();
    }
    let (_, t) = m.clone().schur().unpack();
    (0..n).map(|i| t[(i, i)]).collect()
}

/// Smallest achievable maximum distance over perfect matchings of the two
/// multisets (infinite when the sizes differ).
pub fn matching_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.is_empty() {
        return 0.0;
    }
    if a.iter().chain(b).all(|z| z.im == 0.0) {
        let mut x: Vec<f64> = a.iter().map(|z| z.re).collect();
        let mut y: Vec<f64> = b.iter().map(|z| z.re).collect();
        x.sort_by(f64::total_cmp);
        y.sort_by(f64::total_cmp);
        return x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    }
    let n = a.len();
    let dist: Vec<Vec<f64>> = a.iter().map(|p| b.iter().map(|q| (p - q).norm()).collect()).collect();
    let mut cands: Vec<f64> = dist.iter().flatten().copied().collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(n, |i, j| dist[i][j] <= cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

// Kuhn's augmenting paths.
fn perfect_matching(n: usize, ok: impl Fn(usize, usize) -> bool) -> bool {
    fn augment(i: usize, n: usize, ok: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..n {
            if ok(i, j) && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, n, ok, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; n];
    (0..n).all(|i| augment(i, n, &ok, &mut vec![false; n], &mut owner))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub computed: Vec<C64>,
    pub deviation: f64,
    pub passed: bool,
}

/// Compares the eigenvalues of `m` with `expected`; passes when the matching
/// distance is within tol_rel of the spectral scale.
pub fn check_spectrum(m: &CMat, expected: &[C64], ctx: &QContext) -> SpectrumReport {
    let computed = eigenvalues(m);
    let deviation = matching_distance(&computed, expected);
    let scale = expected.iter().map(|z| z.norm()).fold(1.0, f64::max);
    SpectrumReport { computed, deviation, passed: deviation <= ctx.tol_rel() * scale }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    TwoSided,
    /// Only leakage out of S counts: the span of S must be mapped into itself.
    IntoS,
}

/// Frobenius norm of the off-block rectangles, maximized over generators.
pub fn check_invariant_subspace(set: &GenMatrixSet, subset: &[usize], dir: Direction) -> f64 {
    let mut inside = vec![false; set.dim()];
    for &i in subset {
        inside[i] = true;
    }
    let mut worst: f64 = 0.0;
    for m in set.matrices.values() {
        let mut acc = 0.0;
        for (j, &jin) in inside.iter().enumerate() {
            for (i, &iin) in inside.iter().enumerate() {
                let counts = match dir {
                    Direction::TwoSided => iin != jin,
                    Direction::IntoS => jin && !iin,
                };
                if counts {
                    acc += m[(i, j)].norm_sqr();
                }
            }
        }
        worst = worst.max(acc.sqrt());
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ansatz {
    Diagonal,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Intertwiner {
    pub matrix: CMat,
    pub diagonal: Option<Vec<C64>>,
    pub residual: f64,
}

const EQUIV_GENERATORS: [Generator; 3] = [Generator::I21, Generator::I32, Generator::I43];

fn shared_generators(m1: &GenMatrixSet, m2: &GenMatrixSet) -> Result<Vec<Generator>> {
    if m1.dim() != m2.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", m1.dim(), m2.dim())));
    }
    let gens: Vec<_> = EQUIV_GENERATORS
        .into_iter()
        .filter(|g| m1.try_get(*g).is_some() && m2.try_get(*g).is_some())
        .collect();
    if gens.is_empty() {
        return Err(Error::NotEquivalent("no common generators".into()));
    }
    Ok(gens)
}

/// Finds invertible L with L M1(g) L^-1 = M2(g) for I21, I32, I43.
pub fn check_equivalence(m1: &GenMatrixSet, m2: &GenMatrixSet, ansatz: Ansatz, ctx: &QContext) -> Result<Intertwiner> {
    let gens = shared_generators(m1, m2)?;
    match ansatz {
        Ansatz::Diagonal => diagonal_intertwiner(m1, m2, &gens, ctx),
        Ansatz::General => general_intertwiner(m1, m2, &gens, ctx),
    }
}

fn diagonal_intertwiner(m1: &GenMatrixSet, m2: &GenMatrixSet, gens: &[Generator], ctx: &QContext) -> Result<Intertwiner> {
    let n = m1.dim();
    let thresh = |m: &CMat| ctx.tol_zero() * m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    // edges j -> i carrying the ratio L_i / L_j
    let mut adj: Vec<Vec<(usize, C64)>> = vec![vec![]; n];
    for &g in gens {
        let (a, b) = (m1.get(g), m2.get(g));
        let (ta, tb) = (thresh(a), thresh(b));
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (x, y) = (a[(i, j)], b[(i, j)]);
                match (x.norm() > ta, y.norm() > tb) {
                    (true, true) => {
                        adj[j].push((i, y / x));
                        adj[i].push((j, x / y));
                    }
                    (false, false) => {}
                    _ => {
                        return Err(Error::NotEquivalent(format!("{g} zero pattern differs at ({i}, {j})")));
                    }
                }
            }
        }
    }
    let mut lam: Vec<Option<C64>> = vec![None; n];
    for root in 0..n {
        if lam[root].is_some() {
            continue;
        }
        lam[root] = Some(C64::new(1.0, 0.0));
        let mut queue = VecDeque::from([root]);
        while let Some(j) = queue.pop_front() {
            let lj = lam[j].unwrap();
            for &(i, ratio) in &adj[j] {
                if lam[i].is_none() {
                    lam[i] = Some(lj * ratio);
                    queue.push_back(i);
                }
            }
        }
    }
    let lam: Vec<C64> = lam.into_iter().map(Option::unwrap).collect();
    if let Some(bad) = lam.iter().find(|z| !z.is_finite() || z.norm() == 0.0) {
        return Err(Error::SingularIntertwiner { cond: if bad.norm() == 0.0 { f64::INFINITY } else { bad.norm() } });
    }
    let mut residual: f64 = 0.0;
    for &g in gens {
        let (a, b) = (m1.get(g), m2.get(g));
        let conj = CMat::from_fn(n, n, |i, j| lam[i] * a[(i, j)] / lam[j]);
        let scale = op_norm(b).max(op_norm(a)).max(f64::MIN_POSITIVE);
        residual = residual.max(op_norm(&(conj - b)) / scale);
    }
    if residual > ctx.tol_rel() {
        return Err(Error::NotEquivalent(format!("diagonal ansatz residual {residual:e}")));
    }
    let matrix = CMat::from_diagonal(&DVector::from_vec(lam.clone()));
    Ok(Intertwiner { matrix, diagonal: Some(lam), residual })
}

fn general_intertwiner(m1: &GenMatrixSet, m2: &GenMatrixSet, gens: &[Generator], ctx: &QContext) -> Result<Intertwiner> {
    let n = m1.dim();
    let id = CMat::identity(n, n);
    let mut rows: Vec<CMat> = Vec::new();
    for &g in gens {
        // vec(X A) - vec(B X) = (A^T (x) 1 - 1 (x) B) vec(X)
        rows.push(m1.get(g).transpose().kronecker(&id) - id.kronecker(m2.get(g)));
    }
    let mut stacked = CMat::zeros(rows.len() * n * n, n * n);
    for (k, blk) in rows.iter().enumerate() {
        stacked.view_mut((k * n * n, 0), (n * n, n * n)).copy_from(blk);
    }
    // null vector of the stacked system = lowest eigenvector of its Gram matrix
    let gram = stacked.adjoint() * &stacked;
    let eig = gram.symmetric_eigen();
    let k = eig.eigenvalues.imin();
    let v = eig.eigenvectors.column(k);
    let x = CMat::from_column_slice(n, n, v.as_slice());
    let sv = x.clone().singular_values();
    let cond = sv.max() / sv.min();
    if !(cond.is_finite() && cond < 1e12) {
        return Err(Error::SingularIntertwiner { cond });
    }
    let xinv = x.clone().try_inverse().ok_or(Error::SingularIntertwiner { cond })?;
    let mut residual: f64 = 0.0;
    for &g in gens {
        let b = m2.get(g);
        let scale = op_norm(b).max(op_norm(m1.get(g))).max(f64::MIN_POSITIVE);
        residual = residual.max(op_norm(&(&x * m1.get(g) * &xinv - b)) / scale);
    }
    if residual > ctx.tol_rel() {
        return Err(Error::NotEquivalent(format!("general ansatz residual {residual:e}")));
    }
    Ok(Intertwiner { matrix: x, diagonal: None, residual })
}
