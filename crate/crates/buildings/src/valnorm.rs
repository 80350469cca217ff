//! The Goldman-Iwahori building of `GL_n` over `(Q, v_p)`: splittable
//! norms with adapted bases, simultaneous adaptation, Cartan invariants,
//! the `+F` operation, duals and Homs, Moy-Prasad balls, and the `loc`
//! functor to residue-field filtrations.
//!
//! Conventions: norms are handled additively through `ν = -log_p α`, so a
//! split norm is `ν(Σ x_i b_i) = min_i (v_p(x_i) + c_i)` with rational
//! weights `c_i`, and every `log|·|` of the multiplicative picture is read
//! in `v_p`-units. Larger `ν` means a smaller vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{rat_to_f64, Fp, Rat};
use crate::filtration::{Filtration, TypeVector};
use crate::linalg::{self, LinAlgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NormError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("basis matrix is singular")]
    Singular,
    #[error("need one weight per basis vector: {0} vs {1}")]
    WeightCount(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("norms live over different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("lattice point must have all weights zero")]
    NotALattice,
    #[error("no simultaneously adapted basis found")]
    NotAdapted,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// `v_p` of a big integer; `None` for zero.
fn vp_bigint(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        x = q;
    }
}

/// Exact `p`-adic valuation of a rational; `None` encodes `v(0) = +∞`.
pub fn vp_rat(x: &Rat, p: u64) -> Option<i64> {
    let num = vp_bigint(x.numer(), p)?;
    let den = vp_bigint(x.denom(), p).expect("denominator is nonzero");
    Some(num - den)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `ν(v)`, a rational or `+∞` (for `v = 0`).
#[derive(Debug, Clone, PartialEq)]
pub enum Nu {
    Finite(Rat),
    Infinite,
}

impl Nu {
    pub fn finite(self) -> Option<Rat> {
        match self {
            Nu::Finite(r) => Some(r),
            Nu::Infinite => None,
        }
    }

    pub fn at_least(&self, bound: &Rat) -> bool {
        match self {
            Nu::Finite(r) => r >= bound,
            Nu::Infinite => true,
        }
    }
}

/// A splittable norm: an adapted basis (columns of `basis`) with rational
/// additive weights, over `(Q, v_p)`.
#[derive(Clone)]
pub struct SplitNorm {
    p: u64,
    basis: Matrix<Rat>,
    basis_inv: Matrix<Rat>,
    weights: Vec<Rat>,
}

impl std::fmt::Debug for SplitNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SplitNorm(p={}, weights {:?}, basis {:?})",
            self.p, self.weights, self.basis
        )
    }
}

impl SplitNorm {
    pub fn new(p: u64, basis: Matrix<Rat>, weights: Vec<Rat>) -> Result<Self, NormError> {
        if !is_prime(p) {
            return Err(NormError::NotPrime(p));
        }
        if basis.rows() != basis.cols() {
            return Err(NormError::DimensionMismatch(basis.rows(), basis.cols()));
        }
        if weights.len() != basis.cols() {
            return Err(NormError::WeightCount(weights.len(), basis.cols()));
        }
        let basis_inv = basis.inverse().map_err(|_| NormError::Singular)?;
        Ok(SplitNorm {
            p,
            basis,
            basis_inv,
            weights,
        })
    }

    /// The norm of the standard lattice `Z_(p)^n`: identity basis, zero
    /// weights.
    pub fn standard_lattice(p: u64, n: usize) -> Self {
        SplitNorm::new(p, Matrix::identity(n), vec![Rat::zero(); n])
            .expect("identity basis is valid")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    /// Adapted basis vectors, as columns of a matrix.
    pub fn basis(&self) -> &Matrix<Rat> {
        &self.basis
    }

    pub fn basis_vector(&self, j: usize) -> Vec<Rat> {
        (0..self.dim())
            .map(|i| self.basis[(i, j)].clone())
            .collect()
    }

    /// `ν(v) = min_i (v_p(x_i) + c_i)` where `v = Σ x_i b_i`; `+∞` iff
    /// `v = 0`.
    pub fn eval_nu(&self, v: &[Rat]) -> Nu {
        assert_eq!(v.len(), self.dim(), "vector has the wrong length");
        let coords = self.basis_inv.mul_vec(v);
        let mut best: Option<Rat> = None;
        for (x, c) in coords.iter().zip(&self.weights) {
            if let Some(val) = vp_rat(x, self.p) {
                let nu = Rat::from_integer(val.into()) + c.clone();
                best = Some(match best {
                    Some(b) if b <= nu => b,
                    _ => nu,
                });
            }
        }
        match best {
            Some(b) => Nu::Finite(b),
            None => Nu::Infinite,
        }
    }

    /// `(g·α)(v) = α(g⁻¹v)`: transported basis, same weights.
    pub fn act(&self, g: &Matrix<Rat>) -> Result<SplitNorm, NormError> {
        SplitNorm::new(self.p, g.mul(&self.basis), self.weights.clone())
    }

    /// Pointwise `ν_self ≤ ν_other`, decided on the adapted basis of
    /// `self` by the ultrametric inequality.
    fn nu_dominated_by(&self, other: &SplitNorm) -> bool {
        (0..self.dim()).all(|j| other.eval_nu(&self.basis_vector(j)).at_least(&self.weights[j]))
    }

    /// Semantic norm equality by mutual domination; exact.
    pub fn norm_eq(&self, other: &SplitNorm) -> bool {
        self.p == other.p
            && self.dim() == other.dim()
            && self.nu_dominated_by(other)
            && other.nu_dominated_by(self)
    }
}

/// A common adapted basis for two norms, with both weight lists.
#[derive(Debug, Clone)]
pub struct CommonBasis {
    /// Basis vectors of `V`, columns of an invertible matrix.
    pub vectors: Matrix<Rat>,
    pub alpha_weights: Vec<Rat>,
    pub beta_weights: Vec<Rat>,
}

/// Simultaneous adaptation of two split norms by valuated Gaussian
/// elimination on the change-of-basis matrix `m = A⁻¹B`: repeatedly pick
/// the entry minimizing `v_p(m_ij) + c_i(α) − c_j(β)` (ties to the
/// smallest `(i, j)`), eliminate its row from the remaining columns, and
/// retire row and column.
pub fn simultaneous_adapt(alpha: &SplitNorm, beta: &SplitNorm) -> Result<CommonBasis, NormError> {
    if alpha.p != beta.p {
        return Err(NormError::PrimeMismatch(alpha.p, beta.p));
    }
    if alpha.dim() != beta.dim() {
        return Err(NormError::DimensionMismatch(alpha.dim(), beta.dim()));
    }
    let n = alpha.dim();
    let p = alpha.p;
    let mut m = alpha.basis_inv.mul(&beta.basis);
    let mut row_active = vec![true; n];
    let mut col_active = vec![true; n];
    for _ in 0..n {
        let mut best: Option<(Rat, usize, usize)> = None;
        for i in 0..n {
            if !row_active[i] {
                continue;
            }
            for j in 0..n {
                if !col_active[j] {
                    continue;
                }
                let Some(v) = vp_rat(&m[(i, j)], p) else {
                    continue;
                };
                let key = Rat::from_integer(v.into()) + alpha.weights[i].clone()
                    - beta.weights[j].clone();
                match &best {
                    Some((k, _, _)) if *k <= key => {}
                    _ => best = Some((key, i, j)),
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            return Err(NormError::NotAdapted);
        };
        let pivot = m[(pi, pj)].clone();
        for j in 0..n {
            if j == pj || !col_active[j] || m[(pi, j)].is_zero() {
                continue;
            }
            let factor = m[(pi, j)].clone() / pivot.clone();
            for i in 0..n {
                let delta = factor.clone() * m[(i, pj)].clone();
                m[(i, j)] = m[(i, j)].clone() - delta;
            }
        }
        row_active[pi] = false;
        col_active[pj] = false;
    }
    let vectors = alpha.basis.mul(&m);
    let mut alpha_weights = Vec::with_capacity(n);
    let mut beta_weights = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<Rat> = (0..n).map(|i| vectors[(i, j)].clone()).collect();
        let a = alpha.eval_nu(&col).finite().ok_or(NormError::NotAdapted)?;
        let b = beta.eval_nu(&col).finite().ok_or(NormError::NotAdapted)?;
        alpha_weights.push(a);
        beta_weights.push(b);
    }
    let common = CommonBasis {
        vectors,
        alpha_weights,
        beta_weights,
    };
    // the basis must reproduce both norms exactly
    let as_alpha = SplitNorm::new(p, common.vectors.clone(), common.alpha_weights.clone())?;
    let as_beta = SplitNorm::new(p, common.vectors.clone(), common.beta_weights.clone())?;
    if !as_alpha.norm_eq(alpha) || !as_beta.norm_eq(beta) {
        return Err(NormError::NotAdapted);
    }
    Ok(common)
}

/// The Cartan invariant: the sorted vector of relative weights
/// `c_i(α) − c_i(β)` on a simultaneously adapted basis — the elementary
/// divisor exponents of the β-ball inside the α-ball. `cartan(α, β) = 0`
/// iff the norms are equal; swapping the arguments negates and reverses.
pub fn cartan(alpha: &SplitNorm, beta: &SplitNorm) -> Result<TypeVector, NormError> {
    let common = simultaneous_adapt(alpha, beta)?;
    Ok(TypeVector::new(
        common
            .alpha_weights
            .iter()
            .zip(&common.beta_weights)
            .map(|(a, b)| a.clone() - b.clone())
            .collect(),
    ))
}

/// Does `g` fix the norm, i.e. `cartan(g·α, α) = 0`?
pub fn fixes(g: &Matrix<Rat>, alpha: &SplitNorm) -> Result<bool, NormError> {
    let moved = alpha.act(g)?;
    Ok(cartan(&moved, alpha)?.values().iter().all(|r| r.is_zero()))
}

/// `(1/n) Σ cartan(α, β)`: the central (determinant) component of the
/// vector distance; additive along chains.
pub fn central_component(alpha: &SplitNorm, beta: &SplitNorm) -> Result<Rat, NormError> {
    let c = cartan(alpha, beta)?;
    let n = c.len();
    Ok(c.total() / Rat::from_integer(n.into()))
}

/// A basis simultaneously adapted to `α` and splitting `F`, with the
/// α-weights and `F`-weights of each vector.
#[derive(Debug, Clone)]
pub struct AdaptedToFiltration {
    pub vectors: Matrix<Rat>,
    pub alpha_weights: Vec<Rat>,
    pub fil_weights: Vec<Rat>,
}

/// Simultaneous adaptation of a norm and a filtration: the same valuated
/// elimination, with the filtration playing the role of a norm of weights
/// `t·γ`, `t → ∞` — columns are processed by decreasing filtration weight,
/// and within a weight group the pivot minimizes `v_p(m_ij) + c_i(α)`.
pub fn adapt_to_filtration(
    alpha: &SplitNorm,
    f: &Filtration<Rat>,
) -> Result<AdaptedToFiltration, NormError> {
    if alpha.dim() != f.ambient_dim() {
        return Err(NormError::DimensionMismatch(alpha.dim(), f.ambient_dim()));
    }
    let n = alpha.dim();
    let p = alpha.p;
    // columns: a splitting basis of F, ordered by decreasing weight
    let grading = f.split();
    let mut col_weight: Vec<Rat> = Vec::with_capacity(n);
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (w, piece) in grading.pieces().iter().rev() {
        for row in piece.basis_rows() {
            col_weight.push(w.clone());
            cols.push(row);
        }
    }
    let w_matrix = Matrix::from_fn(n, n, |i, j| cols[j][i].clone());
    let mut m = alpha.basis_inv.mul(&w_matrix);
    let mut row_active = vec![true; n];
    let mut col_active = vec![true; n];
    for _ in 0..n {
        // highest remaining filtration weight first, then the valuated rule
        let mut best: Option<(Rat, Rat, usize, usize)> = None;
        for j in 0..n {
            if !col_active[j] {
                continue;
            }
            for i in 0..n {
                if !row_active[i] {
                    continue;
                }
                let Some(v) = vp_rat(&m[(i, j)], p) else {
                    continue;
                };
                let neg_gamma = -col_weight[j].clone();
                let key = Rat::from_integer(v.into()) + alpha.weights[i].clone();
                match &best {
                    Some((bg, bk, _, _)) if (bg, bk) <= (&neg_gamma, &key) => {}
                    _ => best = Some((neg_gamma, key, i, j)),
                }
            }
        }
        let Some((_, _, pi, pj)) = best else {
            return Err(NormError::NotAdapted);
        };
        let pivot = m[(pi, pj)].clone();
        for j in 0..n {
            if j == pj || !col_active[j] || m[(pi, j)].is_zero() {
                continue;
            }
            // higher-weight columns are already retired, so updates only
            // flow into the same or lower filtration weight
            debug_assert!(col_weight[j] <= col_weight[pj]);
            let factor = m[(pi, j)].clone() / pivot.clone();
            for i in 0..n {
                let delta = factor.clone() * m[(i, pj)].clone();
                m[(i, j)] = m[(i, j)].clone() - delta;
            }
        }
        row_active[pi] = false;
        col_active[pj] = false;
    }
    let vectors = alpha.basis.mul(&m);
    let mut alpha_weights = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<Rat> = (0..n).map(|i| vectors[(i, j)].clone()).collect();
        alpha_weights.push(alpha.eval_nu(&col).finite().ok_or(NormError::NotAdapted)?);
    }
    let result = AdaptedToFiltration {
        vectors,
        alpha_weights,
        fil_weights: col_weight,
    };
    // the basis must reproduce α and split F
    let as_alpha = SplitNorm::new(p, result.vectors.clone(), result.alpha_weights.clone())?;
    if !as_alpha.norm_eq(alpha) {
        return Err(NormError::NotAdapted);
    }
    for (w, space) in f.steps() {
        let rows: Vec<Vec<Rat>> = (0..n)
            .filter(|&j| result.fil_weights[j] >= *w)
            .map(|j| (0..n).map(|i| result.vectors[(i, j)].clone()).collect())
            .collect();
        if linalg::span(&rows, n)? != *space {
            return Err(NormError::NotAdapted);
        }
    }
    Ok(result)
}

/// `α + F`: on a simultaneously adapted basis, add the filtration weights
/// to the norm weights.
pub fn add_fil_norm(alpha: &SplitNorm, f: &Filtration<Rat>) -> Result<SplitNorm, NormError> {
    let adapted = adapt_to_filtration(alpha, f)?;
    let weights = adapted
        .alpha_weights
        .iter()
        .zip(&adapted.fil_weights)
        .map(|(a, g)| a.clone() + g.clone())
        .collect();
    SplitNorm::new(alpha.p, adapted.vectors, weights)
}

/// The dual norm on coordinate rows: dual basis, negated weights.
pub fn dual_norm(alpha: &SplitNorm) -> SplitNorm {
    let dual_basis = alpha.basis_inv.transpose();
    let weights = alpha.weights.iter().map(|c| -c.clone()).collect();
    SplitNorm::new(alpha.p, dual_basis, weights).expect("dual basis is invertible")
}

/// `Hom(α1, α2)` on the matrix space `Hom(V1, V2)`, flattened row-major:
/// coordinate `i·n1 + j` is the matrix entry `(i, j)` (row `i` in `V2`,
/// column `j` in `V1`). The adapted basis is `w_i ⊗ u_j^∨` with weight
/// `c2_i − c1_j`, so `c(E_ij) = c2_i − c1_j` on standard bases.
pub fn hom_norm(alpha1: &SplitNorm, alpha2: &SplitNorm) -> Result<SplitNorm, NormError> {
    if alpha1.p != alpha2.p {
        return Err(NormError::PrimeMismatch(alpha1.p, alpha2.p));
    }
    let n1 = alpha1.dim();
    let n2 = alpha2.dim();
    let dual1 = dual_norm(alpha1);
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(n1 * n2);
    let mut weights: Vec<Rat> = Vec::with_capacity(n1 * n2);
    for i in 0..n2 {
        for j in 0..n1 {
            // the map u_j ↦ w_i: the matrix w_i · (u_j^∨)ᵀ, row-major
            let w_i = alpha2.basis_vector(i);
            let u_j_dual = dual1.basis_vector(j);
            let mut flat = Vec::with_capacity(n1 * n2);
            for r in 0..n2 {
                for c in 0..n1 {
                    flat.push(w_i[r].clone() * u_j_dual[c].clone());
                }
            }
            columns.push(flat);
            weights.push(alpha2.weights[i].clone() - alpha1.weights[j].clone());
        }
    }
    let basis = Matrix::from_fn(n1 * n2, n1 * n2, |r, c| columns[c][r].clone());
    SplitNorm::new(alpha1.p, basis, weights)
}

/// Basis of the closed Moy-Prasad ball `B̄(α_end, r) = {m : ν(m) ≥ r}` as a
/// `Z_(p)`-module: each adapted basis vector scaled by `p^{⌈r − c⌉}`,
/// returned as `n × n` matrices (row-major unflattening).
pub fn moy_prasad(alpha_end: &SplitNorm, r: &Rat) -> Vec<Matrix<Rat>> {
    let nn = alpha_end.dim();
    let n = (nn as f64).sqrt().round() as usize;
    assert_eq!(n * n, nn, "Moy-Prasad input must live on a matrix space");
    let mut gens = Vec::with_capacity(nn);
    for k in 0..nn {
        let exponent = (r.clone() - alpha_end.weights[k].clone())
            .ceil()
            .to_integer();
        let scale = pow_p(alpha_end.p, &exponent);
        let col = alpha_end.basis_vector(k);
        gens.push(Matrix::from_fn(n, n, |i, j| {
            scale.clone() * col[i * n + j].clone()
        }));
    }
    gens
}

fn pow_p(p: u64, e: &BigInt) -> Rat {
    let exp = e.to_i64().expect("moderate exponent");
    let base = Rat::from_integer(p.into());
    let mut acc = Rat::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base.clone();
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// A lattice point: a split norm with all weights zero. Its closed unit
/// ball is the `Z_(p)`-span of the basis.
#[derive(Debug, Clone)]
pub struct LatticePoint(SplitNorm);

impl LatticePoint {
    pub fn new(norm: SplitNorm) -> Result<Self, NormError> {
        if !norm.weights.iter().all(|c| c.is_zero()) {
            return Err(NormError::NotALattice);
        }
        Ok(LatticePoint(norm))
    }

    pub fn standard(p: u64, n: usize) -> Self {
        LatticePoint(SplitNorm::standard_lattice(p, n))
    }

    pub fn norm(&self) -> &SplitNorm {
        &self.0
    }
}

fn rat_mod_p(x: &Rat, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_i64().expect("residue fits");
    let den = x.denom().mod_floor(&pb).to_i64().expect("residue fits");
    assert!(den != 0, "denominator divisible by p in reduction");
    Fp::new(num, p) / Fp::new(den, p)
}

/// The residue filtration `loc(α, M)`: weights are the α-weights of an
/// `M`-integral adapted basis, subspaces the reductions mod `p` in
/// `M`-coordinates.
pub fn loc(alpha: &SplitNorm, lattice: &LatticePoint) -> Result<Filtration<Fp>, NormError> {
    let m = lattice.norm();
    let common = simultaneous_adapt(alpha, m)?;
    let n = alpha.dim();
    let p = alpha.p;
    let mut entries: Vec<(Rat, Vec<Fp>)> = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<Rat> = (0..n).map(|i| common.vectors[(i, j)].clone()).collect();
        // rescale to a primitive lattice vector, then reduce M-coordinates
        let m_weight = &common.beta_weights[j];
        if !m_weight.is_integer() {
            return Err(NormError::NotAdapted);
        }
        let scale = pow_p(p, &-m_weight.to_integer());
        let coords = m.basis_inv.mul_vec(&col);
        let reduced: Vec<Fp> = coords
            .iter()
            .map(|x| rat_mod_p(&(scale.clone() * x.clone()), p))
            .collect();
        let residue_weight = common.alpha_weights[j].clone() - m_weight.clone();
        entries.push((residue_weight, reduced));
    }
    let mut weights: Vec<Rat> = Vec::new();
    for (w, _) in &entries {
        if !weights.contains(w) {
            weights.push(w.clone());
        }
    }
    weights.sort();
    let candidates = weights
        .into_iter()
        .map(|w| {
            let rows: Vec<Vec<Fp>> = entries
                .iter()
                .filter(|(u, _)| *u >= w)
                .map(|(_, v)| v.clone())
                .collect();
            Ok((w, linalg::span(&rows, n)?))
        })
        .collect::<Result<Vec<_>, NormError>>()?;
    Filtration::from_semisteps(n, candidates).map_err(|_| NormError::NotAdapted)
}

/// An adapted basis (with `ν`-weights) of the row span of `vectors` for
/// the standard lattice norm: valuated elimination at minimal `v_p`.
fn lattice_adapted_rows(vectors: &[Vec<Rat>], p: u64) -> Vec<(Vec<Rat>, i64)> {
    let mut rows: Vec<Vec<Rat>> = vectors.to_vec();
    let mut out = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if let Some(v) = vp_rat(x, p) {
                    match best {
                        Some((bv, _, _)) if bv <= v => {}
                        _ => best = Some((v, r, c)),
                    }
                }
            }
        }
        let Some((v, pr, pc)) = best else { break };
        let pivot_row = rows.remove(pr);
        let pivot = pivot_row[pc].clone();
        for row in rows.iter_mut() {
            if !row[pc].is_zero() {
                let factor = row[pc].clone() / pivot.clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    let delta = factor.clone() * y.clone();
                    *x = x.clone() - delta;
                }
            }
        }
        out.push((pivot_row, v));
    }
    out
}

/// Reduction mod `p` of a rational subspace: the image of `W ∩ Z_(p)^n`
/// in `F_p^n` (saturated, so the dimension is preserved).
pub fn reduce_subspace_mod_p(w: &Subspace<Rat>, p: u64) -> Subspace<Fp> {
    let adapted = lattice_adapted_rows(&w.basis_rows(), p);
    let rows: Vec<Vec<Fp>> = adapted
        .iter()
        .map(|(row, v)| {
            let scale = pow_p(p, &BigInt::from(-*v));
            row.iter()
                .map(|x| rat_mod_p(&(scale.clone() * x.clone()), p))
                .collect()
        })
        .collect();
    linalg::span(&rows, w.ambient_dim()).expect("reduced rows fit the ambient")
}

/// Stepwise reduction mod `p` of a rational filtration.
pub fn reduce_filtration_mod_p(f: &Filtration<Rat>, p: u64) -> Filtration<Fp> {
    let steps = f
        .steps()
        .iter()
        .map(|(w, s)| (w.clone(), reduce_subspace_mod_p(s, p)))
        .collect();
    Filtration::new(f.ambient_dim(), steps).expect("reduction preserves the step structure")
}

/// Parreau's fixed-point criterion for a norm diagonal on the basis in
/// which `u` is written: `u` fixes the norm iff `c_j − c_i ≤ v_p(u_ij)`
/// for every off-diagonal entry.
pub fn parreau_criterion(u: &Matrix<Rat>, weights: &[Rat], p: u64) -> bool {
    let n = weights.len();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(v) = vp_rat(&u[(i, j)], p) {
                if weights[j].clone() - weights[i].clone() > Rat::from_integer(v.into()) {
                    return false;
                }
            }
        }
    }
    true
}

/// The least `t ≥ 0` from which `u` fixes `α + tF`, from the Parreau
/// bounds on a basis adapted to `α` and splitting `F`. `u` is given by its
/// matrix in that basis and must be unipotent for `F` (nonzero
/// off-diagonal entries only where the filtration weight strictly drops).
pub fn a6_threshold(
    u_in_basis: &Matrix<Rat>,
    alpha_weights: &[Rat],
    fil_weights: &[Rat],
    p: u64,
) -> Rat {
    let n = alpha_weights.len();
    let mut t = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let Some(v) = vp_rat(&u_in_basis[(i, j)], p) else {
                continue;
            };
            let gap = fil_weights[i].clone() - fil_weights[j].clone();
            assert!(gap > Rat::zero(), "entry ({i},{j}) is not unipotent for F");
            let need = (alpha_weights[j].clone()
                - alpha_weights[i].clone()
                - Rat::from_integer(v.into()))
                / gap;
            if need > t {
                t = need;
            }
        }
    }
    t
}

/// Float view of the Cartan vector, for the metric harness.
pub fn cartan_f64(alpha: &SplitNorm, beta: &SplitNorm) -> Result<Vec<f64>, NormError> {
    Ok(cartan(alpha, beta)?
        .values()
        .iter()
        .map(rat_to_f64)
        .collect())
}
