//! The symmetric space of Euclidean norms on `R^n`: the `+F` operation via
//! orthogonal splittings, Fischer-Courant invariants, and convexity /
//! limit checks. Floating point with explicit tolerances throughout;
//! natural logarithms.

use nalgebra::{DMatrix, DVector};

use crate::field::{rat_to_f64, Rat};
use crate::filtration::Filtration;

pub const SPD_SYMMETRY_TOL: f64 = 1e-12;
pub const MAX_CONDITION: f64 = 1e12;
pub const CONVEXITY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymError {
    #[error("gram matrix is not symmetric positive definite")]
    NotSpd,
    #[error("input too ill-conditioned for the eigensolver (cond > 1e12)")]
    IllConditioned,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("grid must have at least 3 samples")]
    GridTooSmall,
}

/// A Euclidean norm `α`, stored as the Gram matrix of `α²`.
#[derive(Debug, Clone)]
pub struct EuclideanNorm {
    gram: DMatrix<f64>,
}

impl EuclideanNorm {
    pub fn new(gram: DMatrix<f64>) -> Result<Self, SymError> {
        if gram.nrows() != gram.ncols() {
            return Err(SymError::DimensionMismatch(gram.nrows(), gram.ncols()));
        }
        let n = gram.nrows();
        for i in 0..n {
            for j in 0..n {
                if (gram[(i, j)] - gram[(j, i)]).abs() > SPD_SYMMETRY_TOL {
                    return Err(SymError::NotSpd);
                }
            }
        }
        if gram.clone().cholesky().is_none() {
            return Err(SymError::NotSpd);
        }
        Ok(EuclideanNorm { gram })
    }

    pub fn standard(n: usize) -> Self {
        EuclideanNorm {
            gram: DMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn eval(&self, v: &DVector<f64>) -> f64 {
        (v.transpose() * &self.gram * v)[(0, 0)].max(0.0).sqrt()
    }

    /// `(g·α)(v) = α(g⁻¹v)`: gram becomes `g⁻ᵀ G g⁻¹`.
    pub fn act(&self, g: &DMatrix<f64>) -> Result<EuclideanNorm, SymError> {
        let inv = g.clone().try_inverse().ok_or(SymError::NotSpd)?;
        let gram = inv.transpose() * &self.gram * inv;
        EuclideanNorm::new(symmetrize(&gram))
    }

    fn condition(&self) -> f64 {
        let eigen = self.gram.clone().symmetric_eigen();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for &l in eigen.eigenvalues.iter() {
            lo = lo.min(l);
            hi = hi.max(l);
        }
        if lo <= 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }
}

fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// A filtration with float weights: strictly increasing weights, strictly
/// decreasing spaces given by basis rows, first space full.
#[derive(Debug, Clone)]
pub struct RealFiltration {
    dim: usize,
    steps: Vec<(f64, DMatrix<f64>)>,
}

impl RealFiltration {
    pub fn new(dim: usize, steps: Vec<(f64, DMatrix<f64>)>) -> Self {
        RealFiltration { dim, steps }
    }

    pub fn trivial(dim: usize) -> Self {
        RealFiltration {
            dim,
            steps: vec![(0.0, DMatrix::identity(dim, dim))],
        }
    }

    pub fn from_exact(f: &Filtration<Rat>) -> Self {
        let steps = f
            .steps()
            .iter()
            .map(|(w, s)| {
                let rows = s.basis_rows();
                let m = DMatrix::from_fn(rows.len(), f.ambient_dim(), |i, j| {
                    rat_to_f64(&rows[i][j])
                });
                (rat_to_f64(w), m)
            })
            .collect();
        RealFiltration {
            dim: f.ambient_dim(),
            steps,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &[(f64, DMatrix<f64>)] {
        &self.steps
    }

    pub fn scale(&self, t: f64) -> RealFiltration {
        assert!(t >= 0.0);
        if t == 0.0 {
            return RealFiltration::trivial(self.dim);
        }
        RealFiltration {
            dim: self.dim,
            steps: self
                .steps
                .iter()
                .map(|(w, s)| (w * t, s.clone()))
                .collect(),
        }
    }

    /// Sorted weight multiset (ascending), multiplicities by graded
    /// dimension.
    pub fn type_vector(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.steps.len() {
            let next = self.steps.get(i + 1).map_or(0, |(_, s)| s.nrows());
            for _ in 0..self.steps[i].1.nrows() - next {
                out.push(self.steps[i].0);
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Rows spanning the left null space of `m` (the `x` with `x·m = 0`), by
/// Gaussian elimination with partial pivoting.
fn left_nullspace(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mt = m.transpose();
    let rows = mt.nrows();
    let cols = mt.ncols();
    let mut a = mt.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut lead = 0usize;
    let tol = 1e-10 * (1.0 + a.amax());
    for col in 0..cols {
        if lead >= rows {
            break;
        }
        let mut best = lead;
        for r in lead..rows {
            if a[(r, col)].abs() > a[(best, col)].abs() {
                best = r;
            }
        }
        if a[(best, col)].abs() <= tol {
            continue;
        }
        a.swap_rows(best, lead);
        let inv = 1.0 / a[(lead, col)];
        for c in col..cols {
            a[(lead, c)] *= inv;
        }
        for r in 0..rows {
            if r != lead && a[(r, col)] != 0.0 {
                let f = a[(r, col)];
                for c in col..cols {
                    let delta = f * a[(lead, c)];
                    a[(r, c)] -= delta;
                }
            }
        }
        pivots.push((lead, col));
        lead += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut out = DMatrix::zeros(free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        out[(k, fc)] = 1.0;
        for &(prow, pcol) in &pivots {
            out[(k, pcol)] = -a[(prow, fc)];
        }
    }
    out
}

/// The `α`-orthogonal splitting of `F`: for each step, the `α`-orthogonal
/// complement of `F_+^γ` inside `F^γ`. Returns `(weight, piece basis
/// rows)` in step order.
pub fn orthogonal_splitting(
    alpha: &EuclideanNorm,
    f: &RealFiltration,
) -> Result<Vec<(f64, DMatrix<f64>)>, SymError> {
    if alpha.dim() != f.dim {
        return Err(SymError::DimensionMismatch(alpha.dim(), f.dim));
    }
    let g = &alpha.gram;
    let mut pieces = Vec::with_capacity(f.steps.len());
    for i in 0..f.steps.len() {
        let (w, b) = &f.steps[i];
        let piece = match f.steps.get(i + 1) {
            None => b.clone(),
            Some((_, bplus)) => {
                // combinations x of the rows of b with (x·B) G B₊ᵀ = 0
                let pairing = b * g * bplus.transpose();
                let coeff = left_nullspace(&pairing);
                &coeff * b
            }
        };
        pieces.push((*w, piece));
    }
    Ok(pieces)
}

/// The transvection scaling the piece of weight `γ` by `e^{tγ}`
/// (`t = 1` gives `g_α(F)` with `α + F = g_α(F)·α`).
fn splitting_transvection(pieces: &[(f64, DMatrix<f64>)], n: usize, t: f64) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(n, n);
    let mut scale = Vec::with_capacity(n);
    let mut col = 0;
    for (w, basis) in pieces {
        for r in 0..basis.nrows() {
            for i in 0..n {
                p[(i, col)] = basis[(r, i)];
            }
            scale.push((t * w).exp());
            col += 1;
        }
    }
    assert_eq!(col, n, "splitting pieces must decompose the space");
    let d = DMatrix::from_diagonal(&DVector::from_vec(scale));
    let p_inv = p.clone().try_inverse().expect("splitting basis invertible");
    p * d * p_inv
}

/// `α + F = g_α(F)·α`: on the `α`-orthogonal graded pieces, the piece of
/// weight `γ` is scaled by `e^{-γ}` inside the norm, so eigen-weights move
/// by `e^{-γ}` on an orthogonal frame and the Gram picks up `e^{-2γ}`.
pub fn add_fil_spd(alpha: &EuclideanNorm, f: &RealFiltration) -> Result<EuclideanNorm, SymError> {
    let pieces = orthogonal_splitting(alpha, f)?;
    let h = splitting_transvection(&pieces, alpha.dim(), -1.0);
    let gram = h.transpose() * &alpha.gram * &h;
    EuclideanNorm::new(symmetrize(&gram))
}

/// Fischer-Courant invariants: `d_i(α, β) = -(1/2) log λ_i` for the
/// generalized eigenvalues `λ_1 ≥ … ≥ λ_n` of `(gram_β, gram_α)`,
/// returned ascending. Computed as `-log σ_i(L_α⁻¹ L_β)` through the
/// Cholesky factors, which keeps relative accuracy on extreme values
/// (the squared form loses half the exponent range).
pub fn fischer_courant(alpha: &EuclideanNorm, beta: &EuclideanNorm) -> Result<Vec<f64>, SymError> {
    if alpha.dim() != beta.dim() {
        return Err(SymError::DimensionMismatch(alpha.dim(), beta.dim()));
    }
    if alpha.condition() > MAX_CONDITION || beta.condition() > MAX_CONDITION {
        return Err(SymError::IllConditioned);
    }
    let la = alpha.gram.clone().cholesky().ok_or(SymError::NotSpd)?.l();
    let lb = beta.gram.clone().cholesky().ok_or(SymError::NotSpd)?.l();
    let la_inv = la.try_inverse().ok_or(SymError::IllConditioned)?;
    let quotient = la_inv * lb;
    let svd = quotient.svd(false, false);
    let mut d: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|&s| -s.max(f64::MIN_POSITIVE).ln())
        .collect();
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// `dⁿ(α, β) = Σ d_i(α, β)`; additive along chains and equal to
/// `log |det g|` on pairs `(α, g·α)`.
pub fn dn(alpha: &EuclideanNorm, beta: &EuclideanNorm) -> Result<f64, SymError> {
    Ok(fischer_courant(alpha, beta)?.iter().sum())
}

/// `d̲(α + tF, β + tF)` computed through the bounded transition
/// `g_α(tF)⁻¹ g_β(tF)` — safe for large `t`, where the translated Gram
/// matrices themselves would overflow. Both splittings split the same
/// filtration, so the inner transition matrix is block triangular: the
/// entries scaled by `e^{t(γ_j - γ_i)}` with `γ_j > γ_i` vanish exactly
/// and are clamped to zero rather than amplified.
pub fn translated_distance(
    alpha: &EuclideanNorm,
    beta: &EuclideanNorm,
    f: &RealFiltration,
    g: &RealFiltration,
    t: f64,
) -> Result<Vec<f64>, SymError> {
    let n = alpha.dim();
    let pieces_a = orthogonal_splitting(alpha, f)?;
    let pieces_b = orthogonal_splitting(beta, g)?;
    let unpack = |pieces: &[(f64, DMatrix<f64>)]| -> (DMatrix<f64>, Vec<f64>) {
        let mut p = DMatrix::zeros(n, n);
        let mut w = Vec::with_capacity(n);
        let mut col = 0;
        for (gamma, basis) in pieces {
            for r in 0..basis.nrows() {
                for i in 0..n {
                    p[(i, col)] = basis[(r, i)];
                }
                w.push(*gamma);
                col += 1;
            }
        }
        (p, w)
    };
    let (pa, wa) = unpack(&pieces_a);
    let (pb, wb) = unpack(&pieces_b);
    let pa_inv = pa.clone().try_inverse().ok_or(SymError::IllConditioned)?;
    let pb_inv = pb.clone().try_inverse().ok_or(SymError::IllConditioned)?;
    let inner = &pa_inv * &pb;
    let scaled = DMatrix::from_fn(n, n, |i, j| {
        if wb[j] > wa[i] {
            0.0
        } else {
            inner[(i, j)] * (t * (wb[j] - wa[i])).exp()
        }
    });
    let m = pa * scaled * pb_inv;
    fischer_courant(alpha, &beta.act(&m)?)
}

/// Report of the midpoint-convexity scan of `t ↦ d̲(α + tF, β + tG)` over
/// `[0, 2]`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConvexityReport {
    pub grid: usize,
    pub max_violation: f64,
    pub convex: bool,
}

/// Sample `t` on `[0, 2]` and verify midpoint convexity of every
/// suffix-sum coordinate of `d̲(α+tF, β+tG)` within `1e-7`; reports the
/// worst violation.
pub fn convexity_report(
    alpha: &EuclideanNorm,
    beta: &EuclideanNorm,
    f: &RealFiltration,
    g: &RealFiltration,
    grid: usize,
) -> Result<ConvexityReport, SymError> {
    if grid < 3 {
        return Err(SymError::GridTooSmall);
    }
    let n = alpha.dim();
    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(grid);
    for k in 0..grid {
        let t = 2.0 * k as f64 / (grid - 1) as f64;
        let at = add_fil_spd(alpha, &f.scale(t))?;
        let bt = add_fil_spd(beta, &g.scale(t))?;
        let d = fischer_courant(&at, &bt)?;
        // suffix sums of the ascending vector
        let mut suffix = vec![0.0; n];
        let mut acc = 0.0;
        for i in (0..n).rev() {
            acc += d[i];
            suffix[i] = acc;
        }
        samples.push(suffix);
    }
    let mut max_violation: f64 = 0.0;
    for k in 0..grid.saturating_sub(2) {
        for i in 0..n {
            let mid = samples[k + 1][i];
            let avg = 0.5 * (samples[k][i] + samples[k + 2][i]);
            max_violation = max_violation.max(mid - avg);
        }
    }
    Ok(ConvexityReport {
        grid,
        max_violation,
        convex: max_violation <= CONVEXITY_TOL,
    })
}

/// The graded norm `Gr_F(α)`: per step, the quotient norm of `α` on
/// `F^γ / F_+^γ` in the coordinates of `sections[i]` (rows spanning a
/// complement of `F_+^γ` in `F^γ`). Returns `(weight, block norm)` pairs.
pub fn graded_norm(
    alpha: &EuclideanNorm,
    f: &RealFiltration,
    sections: &[DMatrix<f64>],
) -> Result<Vec<(f64, EuclideanNorm)>, SymError> {
    let g = &alpha.gram;
    let mut out = Vec::with_capacity(f.steps.len());
    for (i, (w, _)) in f.steps.iter().enumerate() {
        let lift = &sections[i];
        let proj = match f.steps.get(i + 1) {
            None => lift.clone(),
            Some((_, wall)) => {
                // subtract the G-orthogonal projection onto F_+^γ
                let gram_w = wall * g * wall.transpose();
                let inv = gram_w.try_inverse().ok_or(SymError::IllConditioned)?;
                lift - (lift * g * wall.transpose()) * inv * wall
            }
        };
        let gram = symmetrize(&(&proj * g * proj.transpose()));
        out.push((*w, EuclideanNorm::new(gram)?));
    }
    Ok(out)
}

/// Merge blockwise Fischer-Courant vectors of two graded norms into the
/// ascending vector `d(Gr_F(α), Gr_F(β))`.
pub fn graded_distance(
    ga: &[(f64, EuclideanNorm)],
    gb: &[(f64, EuclideanNorm)],
) -> Result<Vec<f64>, SymError> {
    let mut d = Vec::new();
    for ((wa, na), (wb, nb)) in ga.iter().zip(gb) {
        assert!((wa - wb).abs() < 1e-12, "graded blocks must align");
        d.extend(fischer_courant(na, nb)?);
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

pub fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
