//! Seeded random generators for points of the three buildings. Used by the
//! axiom harness and by the test suites; everything is deterministic given
//! the `ChaCha12Rng` state.

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::field::{rat, rint, Rat};
use crate::filtration::Filtration;
use crate::linalg::{span, Matrix};
use crate::symspace::RealFiltration;

/// Random invertible matrix with small integer entries.
pub fn random_invertible(rng: &mut ChaCha12Rng, n: usize) -> Matrix<Rat> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rint(rng.gen_range(-3..=3)));
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random filtration on `Q^n`: integer weights in `[-2, 2]`, step spaces
/// spanned by trailing columns of a random invertible matrix.
pub fn random_filtration(rng: &mut ChaCha12Rng, n: usize) -> Filtration<Rat> {
    random_filtration_with(rng, n, |rng| rint(rng.gen_range(-2..=2)))
}

/// Random filtration with half-integer weights (exercises denominators).
pub fn random_filtration_halves(rng: &mut ChaCha12Rng, n: usize) -> Filtration<Rat> {
    random_filtration_with(rng, n, |rng| rat(rng.gen_range(-4..=4), 2))
}

fn random_filtration_with(
    rng: &mut ChaCha12Rng,
    n: usize,
    mut weight: impl FnMut(&mut ChaCha12Rng) -> Rat,
) -> Filtration<Rat> {
    if n == 0 {
        return Filtration::new(0, vec![]).expect("empty filtration");
    }
    let jumps = rng.gen_range(1..=n);
    let mut weights: Vec<Rat> = Vec::new();
    while weights.len() < jumps {
        let w = weight(rng);
        if !weights.contains(&w) {
            weights.push(w);
        }
    }
    weights.sort();
    let g = random_invertible(rng, n);
    let mut dims: Vec<usize> = (1..n).collect();
    dims.shuffle(rng);
    let mut cut: Vec<usize> = dims.into_iter().take(jumps - 1).collect();
    cut.push(n);
    cut.sort();
    let mut steps = Vec::new();
    for (idx, w) in weights.iter().enumerate() {
        let k = cut[cut.len() - 1 - idx];
        let rows: Vec<Vec<Rat>> = (0..k)
            .map(|c| (0..n).map(|r| g[(r, n - 1 - c)].clone()).collect())
            .collect();
        steps.push((w.clone(), span(&rows, n).expect("columns fit ambient")));
    }
    Filtration::new(n, steps).expect("random steps form a filtration")
}

/// Random split norm: a random invertible basis with half-integer weights
/// in `[-2, 2]`.
pub fn random_split_norm(rng: &mut ChaCha12Rng, p: u64, n: usize) -> crate::valnorm::SplitNorm {
    let basis = random_invertible(rng, n);
    let weights = (0..n).map(|_| rat(rng.gen_range(-4..=4), 2)).collect();
    crate::valnorm::SplitNorm::new(p, basis, weights).expect("random basis is invertible")
}

/// Random lattice point: a random invertible basis with zero weights.
pub fn random_lattice_point(rng: &mut ChaCha12Rng, p: u64, n: usize) -> crate::valnorm::LatticePoint {
    let basis = random_invertible(rng, n);
    let norm = crate::valnorm::SplitNorm::new(p, basis, vec![num_traits::Zero::zero(); n])
        .expect("random basis is invertible");
    crate::valnorm::LatticePoint::new(norm).expect("zero weights")
}

/// Random element of the parabolic `P_F`: block upper triangular in a
/// frame adapted to `F` with lines ordered by decreasing weight, diagonal
/// blocks invertible.
pub fn random_parabolic_element(rng: &mut ChaCha12Rng, f: &Filtration<Rat>) -> Matrix<Rat> {
    let n = f.ambient_dim();
    let grading = f.split();
    let mut cols: Vec<(Rat, Vec<Rat>)> = Vec::new();
    for (w, piece) in grading.pieces().iter().rev() {
        for row in piece.basis_rows() {
            cols.push((w.clone(), row));
        }
    }
    let p = Matrix::from_fn(n, n, |i, j| cols[j].1[i].clone());
    // entries allowed where the row weight is at least the column weight:
    // block upper triangular, preserving every leading (high-weight) span
    let t = loop {
        let cand = Matrix::from_fn(n, n, |i, j| {
            if cols[i].0 >= cols[j].0 {
                rint(rng.gen_range(-2..=2))
            } else {
                Rat::zero()
            }
        });
        if !cand.det().is_zero() {
            break cand;
        }
    };
    let p_inv = p.inverse().expect("frame matrix invertible");
    p.mul(&t).mul(&p_inv)
}

/// Random unipotent element for `F`: identity plus a strictly
/// block-upper-triangular perturbation in a frame adapted to `F`, so that
/// `(u - 1) F^γ ⊆ F_+^γ` for every `γ`.
pub fn random_unipotent_for(rng: &mut ChaCha12Rng, f: &Filtration<Rat>) -> Matrix<Rat> {
    let n = f.ambient_dim();
    let grading = f.split();
    // columns of `p`: frame vectors ordered by decreasing weight
    let mut cols: Vec<(Rat, Vec<Rat>)> = Vec::new();
    for (w, piece) in grading.pieces().iter().rev() {
        for row in piece.basis_rows() {
            cols.push((w.clone(), row));
        }
    }
    let p = Matrix::from_fn(n, n, |i, j| cols[j].1[i].clone());
    let u = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            rint(1)
        } else if i < j && cols[i].0 > cols[j].0 {
            rint(rng.gen_range(-2..=2))
        } else {
            Rat::zero()
        }
    });
    let p_inv = p.inverse().expect("frame matrix is invertible");
    p.mul(&u).mul(&p_inv)
}

/// Random SPD Gram matrix with moderate condition number: `AᵀA + 0.3·I`.
pub fn random_spd(rng: &mut ChaCha12Rng, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    a.transpose() * &a + DMatrix::identity(n, n) * 0.3
}

/// Random invertible float matrix with condition number at most `1e3`.
pub fn random_well_conditioned(rng: &mut ChaCha12Rng, n: usize) -> DMatrix<f64> {
    loop {
        let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
            + DMatrix::identity(n, n) * 1.5;
        let svd = g.clone().svd(false, false);
        let max = svd.singular_values.max();
        let min = svd.singular_values.min();
        if min > 0.0 && max / min <= 1e3 {
            return g;
        }
    }
}

/// Random float filtration: the float image of a random exact filtration
/// (integer weights in `[-2, 2]`, so weight gaps are at least 1).
pub fn random_real_filtration(rng: &mut ChaCha12Rng, n: usize) -> RealFiltration {
    RealFiltration::from_exact(&random_filtration(rng, n))
}
