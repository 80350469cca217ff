//! The vectorial Tits building of `GL(V)`: apartments (frames), flags,
//! the pairing / distance / angle attached to a faithful representation,
//! the dominance order on types, filtration addition, stabilizers and
//! retractions to Levi sub-buildings.
//!
//! The standard form pairs filtrations through `V` itself; the adjoint form
//! routes both arguments through `Hom(F, F)` on `End(V)`.

use num_traits::Zero;

use crate::field::{rat_to_f64, Field, Rat};
use crate::filtration::{Filtration, Graduation, TypeVector};
use crate::linalg::{self, LinAlgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TitsError {
    #[error("type vectors have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("angle is undefined for a zero filtration")]
    ZeroAngle,
    #[error("matrix is singular")]
    Singular,
    #[error("lines do not decompose the space")]
    BadFrame,
    #[error("chain is not strictly increasing proper nonzero subspaces")]
    BadFlag,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Which faithful representation the pairing is computed through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingForm {
    /// `V` itself.
    Standard,
    /// `End(V)` via `Hom(F, F)`.
    Adjoint,
}

/// An unordered decomposition of `V` into lines; kept sorted for a
/// canonical representation.
#[derive(Clone, PartialEq)]
pub struct Frame<K> {
    ambient: usize,
    lines: Vec<Subspace<K>>,
}

impl<K: std::fmt::Display> std::fmt::Debug for Frame<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Frame{:?}", self.lines)
    }
}

impl<K: Field + Ord> Frame<K> {
    pub fn new(ambient: usize, mut lines: Vec<Subspace<K>>) -> Result<Self, TitsError> {
        if lines.len() != ambient {
            return Err(TitsError::BadFrame);
        }
        let mut rows = Vec::with_capacity(ambient);
        for l in &lines {
            if l.dim() != 1 || l.ambient_dim() != ambient {
                return Err(TitsError::BadFrame);
            }
            rows.extend(l.basis_rows());
        }
        if linalg::span(&rows, ambient)?.dim() != ambient {
            return Err(TitsError::BadFrame);
        }
        lines.sort_by(|a, b| {
            (a.pivots()[0], a.basis_rows()).cmp(&(b.pivots()[0], b.basis_rows()))
        });
        Ok(Frame { ambient, lines })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn lines(&self) -> &[Subspace<K>] {
        &self.lines
    }

    /// Matrix whose columns are the line generators.
    pub fn basis_matrix(&self) -> Matrix<K> {
        Matrix::from_fn(self.ambient, self.ambient, |i, j| {
            self.lines[j].basis_rows()[0][i].clone()
        })
    }

    /// The weight of each line under `F`: the largest jump `w` with
    /// `L ⊆ F^w`.
    pub fn weights_of(&self, f: &Filtration<K>) -> Vec<Rat> {
        self.lines
            .iter()
            .map(|l| {
                let v = &l.basis_rows()[0];
                f.steps()
                    .iter()
                    .rev()
                    .find(|(_, s)| linalg::contains_vector(s, v))
                    .map(|(w, _)| w.clone())
                    .expect("every line lies in the full space")
            })
            .collect()
    }

    /// Does this frame split `F`?
    pub fn splits(&self, f: &Filtration<K>) -> bool {
        self.filtration_from_weights(&self.weights_of(f)) == *f
    }

    /// The filtration with prescribed weights on this frame's lines
    /// (weights listed in this frame's canonical line order).
    pub fn filtration_from_weights(&self, weights: &[Rat]) -> Filtration<K> {
        assert_eq!(weights.len(), self.ambient);
        let mut by_weight: Vec<(Rat, Vec<Vec<K>>)> = Vec::new();
        for (line, w) in self.lines.iter().zip(weights) {
            match by_weight.iter_mut().find(|(u, _)| u == w) {
                Some((_, rows)) => rows.extend(line.basis_rows()),
                None => by_weight.push((w.clone(), line.basis_rows())),
            }
        }
        let pieces = by_weight
            .into_iter()
            .map(|(w, rows)| {
                (
                    w,
                    linalg::span(&rows, self.ambient).expect("line rows fit"),
                )
            })
            .collect();
        let g = Graduation::new(self.ambient, pieces).expect("frame lines decompose");
        Filtration::from_grading(&g)
    }
}

/// A strictly increasing chain of nonzero proper subspaces.
#[derive(Clone, PartialEq)]
pub struct Flag<K> {
    ambient: usize,
    chain: Vec<Subspace<K>>,
}

impl<K: std::fmt::Display> std::fmt::Debug for Flag<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Flag{:?}", self.chain)
    }
}

impl<K: Field> Flag<K> {
    pub fn new(ambient: usize, chain: Vec<Subspace<K>>) -> Result<Self, TitsError> {
        for s in &chain {
            if s.ambient_dim() != ambient {
                return Err(TitsError::AmbientMismatch(ambient, s.ambient_dim()));
            }
            if s.is_zero() || s.is_full() {
                return Err(TitsError::BadFlag);
            }
        }
        for w in chain.windows(2) {
            if w[0].dim() >= w[1].dim() || !linalg::contains(&w[1], &w[0]) {
                return Err(TitsError::BadFlag);
            }
        }
        Ok(Flag { ambient, chain })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn chain(&self) -> &[Subspace<K>] {
        &self.chain
    }
}

/// A frame splitting `F`: the deterministic splitting refined into lines.
pub fn frame_of<K: Field + Ord>(f: &Filtration<K>) -> Frame<K> {
    let mut lines = Vec::with_capacity(f.ambient_dim());
    for (_, piece) in f.split().pieces() {
        for row in piece.basis_rows() {
            lines.push(linalg::span(&[row], f.ambient_dim()).expect("row fits ambient"));
        }
    }
    Frame::new(f.ambient_dim(), lines).expect("split pieces refine to a frame")
}

/// Numerator and denominator of the double graded piece
/// `Gr^{γ1,γ2}_{F1,F2} = C / D`.
fn double_graded<K: Field>(
    f1: &Filtration<K>,
    f2: &Filtration<K>,
    g1: &Rat,
    g2: &Rat,
) -> Result<(Subspace<K>, Subspace<K>), TitsError> {
    let c = linalg::intersect(&f1.eval(g1), &f2.eval(g2))?;
    let d = linalg::sum(
        &linalg::intersect(&f1.eval_plus(g1), &f2.eval(g2))?,
        &linalg::intersect(&f1.eval(g1), &f2.eval_plus(g2))?,
    )?;
    Ok((c, d))
}

/// A frame splitting both `F1` and `F2`, built from the double graded
/// decomposition with pairs `(γ1, γ2)` processed in lexicographically
/// decreasing order and the same pivot-complement rule as `split`.
pub fn common_frame<K: Field + Ord>(
    f1: &Filtration<K>,
    f2: &Filtration<K>,
) -> Result<Frame<K>, TitsError> {
    if f1.ambient_dim() != f2.ambient_dim() {
        return Err(TitsError::AmbientMismatch(
            f1.ambient_dim(),
            f2.ambient_dim(),
        ));
    }
    let n = f1.ambient_dim();
    let mut pairs: Vec<(Rat, Rat)> = Vec::new();
    for a in f1.jumps() {
        for b in f2.jumps() {
            pairs.push((a.clone(), b));
        }
    }
    pairs.sort_by(|x, y| y.cmp(x)); // lexicographically decreasing
    let mut lines = Vec::with_capacity(n);
    for (a, b) in &pairs {
        let (c, d) = double_graded(f1, f2, a, b)?;
        let piece = linalg::pivot_complement(&c, &d);
        for row in piece.basis_rows() {
            lines.push(linalg::span(&[row], n)?);
        }
    }
    Frame::new(n, lines)
}

fn raw_pairing<K: Field>(f1: &Filtration<K>, f2: &Filtration<K>) -> Result<Rat, TitsError> {
    if f1.ambient_dim() != f2.ambient_dim() {
        return Err(TitsError::AmbientMismatch(
            f1.ambient_dim(),
            f2.ambient_dim(),
        ));
    }
    let mut acc = Rat::zero();
    for a in f1.jumps() {
        for b in f2.jumps() {
            let (c, d) = double_graded(f1, f2, &a, &b)?;
            let dim = c.dim() - d.dim();
            if dim > 0 {
                acc += Rat::from_integer(dim.into()) * a.clone() * b.clone();
            }
        }
    }
    Ok(acc)
}

/// `⟨F1, F2⟩_τ = Σ dim Gr^{γ1,γ2} · γ1 γ2` for the chosen form.
pub fn pairing<K: Field>(
    f1: &Filtration<K>,
    f2: &Filtration<K>,
    form: PairingForm,
) -> Result<Rat, TitsError> {
    match form {
        PairingForm::Standard => raw_pairing(f1, f2),
        PairingForm::Adjoint => raw_pairing(&f1.hom(f1), &f2.hom(f2)),
    }
}

pub fn norm_sq<K: Field>(f: &Filtration<K>, form: PairingForm) -> Result<Rat, TitsError> {
    pairing(f, f, form)
}

/// `d² = ‖F1‖² + ‖F2‖² − 2⟨F1,F2⟩`, exact.
pub fn distance_sq<K: Field>(
    f1: &Filtration<K>,
    f2: &Filtration<K>,
    form: PairingForm,
) -> Result<Rat, TitsError> {
    Ok(norm_sq(f1, form)? + norm_sq(f2, form)?
        - Rat::from_integer(2.into()) * pairing(f1, f2, form)?)
}

/// `arccos(⟨F1,F2⟩ / (‖F1‖·‖F2‖))` in `[0, π]`; the one float-valued map.
pub fn angle<K: Field>(
    f1: &Filtration<K>,
    f2: &Filtration<K>,
    form: PairingForm,
) -> Result<f64, TitsError> {
    let n1 = norm_sq(f1, form)?;
    let n2 = norm_sq(f2, form)?;
    if n1.is_zero() || n2.is_zero() {
        return Err(TitsError::ZeroAngle);
    }
    let p = rat_to_f64(&pairing(f1, f2, form)?);
    let cos = p / (rat_to_f64(&n1).sqrt() * rat_to_f64(&n2).sqrt());
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Dominance order: equal totals and every suffix sum of `x` bounded by
/// the corresponding suffix sum of `y`.
pub fn dominance_leq(x: &TypeVector, y: &TypeVector) -> Result<bool, TitsError> {
    if x.len() != y.len() {
        return Err(TitsError::LengthMismatch(x.len(), y.len()));
    }
    if x.total() != y.total() {
        return Ok(false);
    }
    let mut sx = Rat::zero();
    let mut sy = Rat::zero();
    for (a, b) in x.values().iter().rev().zip(y.values().iter().rev()) {
        sx += a.clone();
        sy += b.clone();
        if sx > sy {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sum in the dominance monoid: componentwise sum of the sorted vectors.
pub fn type_add(x: &TypeVector, y: &TypeVector) -> Result<TypeVector, TitsError> {
    if x.len() != y.len() {
        return Err(TitsError::LengthMismatch(x.len(), y.len()));
    }
    Ok(TypeVector::new(
        x.values()
            .iter()
            .zip(y.values())
            .map(|(a, b)| a.clone() + b.clone())
            .collect(),
    ))
}

/// `⟨x, y⟩`: the sorted-aligned dot product, the maximum over permutations.
pub fn type_pairing(x: &TypeVector, y: &TypeVector) -> Result<Rat, TitsError> {
    if x.len() != y.len() {
        return Err(TitsError::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.values()
        .iter()
        .zip(y.values())
        .fold(Rat::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

/// Filtration addition `(F1+F2)^γ = Σ_{γ1+γ2=γ} F1^{γ1} ∩ F2^{γ2}`.
pub fn add_fil<K: Field>(
    f1: &Filtration<K>,
    f2: &Filtration<K>,
) -> Result<Filtration<K>, TitsError> {
    if f1.ambient_dim() != f2.ambient_dim() {
        return Err(TitsError::AmbientMismatch(
            f1.ambient_dim(),
            f2.ambient_dim(),
        ));
    }
    let n = f1.ambient_dim();
    let mut weights: Vec<Rat> = Vec::new();
    for a in f1.jumps() {
        for b in f2.jumps() {
            let w = a.clone() + b;
            if !weights.contains(&w) {
                weights.push(w);
            }
        }
    }
    weights.sort();
    let mut candidates = Vec::with_capacity(weights.len());
    for w in weights {
        let mut acc = Subspace::zero(n);
        for a in f1.jumps() {
            for b in f2.jumps() {
                if a.clone() + b.clone() >= w {
                    let meet = linalg::intersect(&f1.eval(&a), &f2.eval(&b))?;
                    acc = linalg::sum(&acc, &meet)?;
                }
            }
        }
        candidates.push((w, acc));
    }
    Ok(Filtration::from_semisteps(n, candidates).expect("sum spaces decrease"))
}

/// The flag of step spaces of `F` (full space dropped), as an increasing
/// chain; its stabilizer is the parabolic `P_F`.
pub fn parabolic_of<K: Field>(f: &Filtration<K>) -> Flag<K> {
    let chain: Vec<Subspace<K>> = f
        .steps()
        .iter()
        .skip(1)
        .rev()
        .map(|(_, s)| s.clone())
        .collect();
    Flag::new(f.ambient_dim(), chain).expect("step spaces form a flag")
}

/// Does `g` stabilize `F`, i.e. `g·F^γ = F^γ` at every breakpoint?
pub fn stabilizes<K: Field>(g: &Matrix<K>, f: &Filtration<K>) -> Result<bool, TitsError> {
    if g.det().is_zero() {
        return Err(TitsError::Singular);
    }
    Ok(f.steps().iter().all(|(_, s)| linalg::apply(g, s) == *s))
}

/// Is `u` unipotent for `F`, i.e. `(u − 1)·F^γ ⊆ F_+^γ` for every jump?
pub fn unipotent_for<K: Field>(u: &Matrix<K>, f: &Filtration<K>) -> bool {
    let n = f.ambient_dim();
    let shifted = Matrix::from_fn(n, n, |i, j| {
        let delta = if i == j { K::one() } else { K::zero() };
        u[(i, j)].clone() - delta
    });
    f.steps().iter().all(|(w, s)| {
        let plus = f.eval_plus(w);
        s.basis_rows()
            .iter()
            .all(|v| linalg::contains_vector(&plus, &shifted.mul_vec(v)))
    })
}

/// Retraction onto the Levi sub-building of `flag`: the filtration whose
/// restriction to each flag subquotient is the one induced by `F`,
/// reassembled through the echelon sections of the subquotients.
pub fn retract<K: Field>(f: &Filtration<K>, flag: &Flag<K>) -> Result<Filtration<K>, TitsError> {
    if f.ambient_dim() != flag.ambient {
        return Err(TitsError::AmbientMismatch(f.ambient_dim(), flag.ambient));
    }
    let n = f.ambient_dim();
    let mut levels: Vec<Subspace<K>> = vec![Subspace::zero(n)];
    levels.extend(flag.chain.iter().cloned());
    levels.push(Subspace::full(n));

    let mut pieces: Vec<(Rat, Vec<Vec<K>>)> = Vec::new();
    for i in 1..levels.len() {
        let below = &levels[i - 1];
        let here = &levels[i];
        let free: Vec<usize> = (0..n).filter(|j| !below.pivots().contains(j)).collect();
        // induced filtration of F on the subquotient here/below, in the
        // quotient coordinates of V/below
        let mut images: Vec<(Rat, Subspace<K>)> = Vec::new();
        for (w, s) in f.steps() {
            let meet = linalg::intersect(s, here)?;
            images.push((w.clone(), linalg::quotient_image(&meet, below)?));
        }
        for j in 0..images.len() {
            let plus = images
                .get(j + 1)
                .map_or_else(|| Subspace::zero(free.len()), |(_, s)| s.clone());
            let piece = linalg::pivot_complement(&images[j].1, &plus);
            if piece.is_zero() {
                continue;
            }
            // lift quotient rows back to V, zeros at the pivots of `below`
            let lifted: Vec<Vec<K>> = piece
                .basis_rows()
                .into_iter()
                .map(|row| {
                    let mut v = vec![K::zero(); n];
                    for (idx, &col) in free.iter().enumerate() {
                        v[col] = row[idx].clone();
                    }
                    v
                })
                .collect();
            let w = images[j].0.clone();
            match pieces.iter_mut().find(|(u, _)| *u == w) {
                Some((_, rows)) => rows.extend(lifted),
                None => pieces.push((w, lifted)),
            }
        }
    }
    let pieces = pieces
        .into_iter()
        .map(|(w, rows)| Ok((w, linalg::span(&rows, n)?)))
        .collect::<Result<Vec<_>, TitsError>>()?;
    let grading = Graduation::new(n, pieces).expect("flag subquotient lifts decompose the space");
    Ok(Filtration::from_grading(&grading))
}
