//! R-filtrations with rational weights on finite-dimensional vector spaces,
//! together with the tensor / dual / Hom / Gr / splitting calculus.
//!
//! A filtration is stored by its jumps: a strictly increasing list of
//! rational weights with strictly decreasing subspaces, the first of which
//! is the full space. `F^γ` is the space at the smallest recorded weight
//! `≥ γ` (the span of the graded pieces of weight `≥ γ`), the full space
//! below all weights and `0` above them. Weights stay rational whatever the
//! coefficient field, so the same type carries filtrations over `Q` and
//! over a residue field `F_p`.

use num_traits::Zero;

use crate::field::{Field, Rat};
use crate::linalg::{self, LinAlgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FiltrationError {
    #[error("weights must be strictly increasing")]
    WeightsNotIncreasing,
    #[error("step spaces must strictly decrease")]
    SpacesNotDecreasing,
    #[error("first step must be the full space")]
    FirstStepNotFull,
    #[error("a nonzero space needs at least one step")]
    Empty,
    #[error("step spaces must be nonzero")]
    ZeroStep,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("graduation pieces must be independent and span")]
    BadGraduation,
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// The sorted weight multiset `t(F)`, a point of the dominance chamber.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeVector(Vec<Rat>);

impl TypeVector {
    pub fn new(mut values: Vec<Rat>) -> Self {
        values.sort();
        TypeVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        TypeVector(vec![Rat::zero(); n])
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Negate and reverse; the type of the opposite filtration.
    pub fn reverse_negate(&self) -> TypeVector {
        TypeVector(self.0.iter().rev().map(|w| -w.clone()).collect())
    }

    pub fn total(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, w| acc + w)
    }

    /// Euclidean length of the vector, as a float.
    pub fn l2_norm(&self) -> f64 {
        self.0
            .iter()
            .map(|w| crate::field::rat_to_f64(w).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Clone, PartialEq)]
pub struct Filtration<K> {
    ambient: usize,
    steps: Vec<(Rat, Subspace<K>)>,
}

impl<K: std::fmt::Display> std::fmt::Debug for Filtration<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Filtration(dim {}", self.ambient)?;
        for (w, s) in &self.steps {
            write!(f, "; {} -> {:?}", w, s)?;
        }
        write!(f, ")")
    }
}

/// A direct-sum decomposition `V = ⊕ G_γ` with pairwise distinct weights,
/// kept sorted by increasing weight.
#[derive(Clone, PartialEq)]
pub struct Graduation<K> {
    ambient: usize,
    pieces: Vec<(Rat, Subspace<K>)>,
}

impl<K: std::fmt::Display> std::fmt::Debug for Graduation<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graduation(dim {}", self.ambient)?;
        for (w, s) in &self.pieces {
            write!(f, "; {} -> {:?}", w, s)?;
        }
        write!(f, ")")
    }
}

impl<K: Field> Graduation<K> {
    pub fn new(ambient: usize, mut pieces: Vec<(Rat, Subspace<K>)>) -> Result<Self, FiltrationError> {
        pieces.retain(|(_, s)| !s.is_zero());
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pieces.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(FiltrationError::BadGraduation);
            }
        }
        let total: usize = pieces.iter().map(|(_, s)| s.dim()).sum();
        if total != ambient {
            return Err(FiltrationError::BadGraduation);
        }
        let mut all_rows = Vec::new();
        for (_, s) in &pieces {
            if s.ambient_dim() != ambient {
                return Err(FiltrationError::AmbientMismatch(ambient, s.ambient_dim()));
            }
            all_rows.extend(s.basis_rows());
        }
        if linalg::span(&all_rows, ambient)?.dim() != ambient {
            return Err(FiltrationError::BadGraduation);
        }
        Ok(Graduation { ambient, pieces })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[(Rat, Subspace<K>)] {
        &self.pieces
    }

    /// Negate all weights (the opposite graduation `ιG`).
    pub fn negate(&self) -> Graduation<K> {
        let pieces = self
            .pieces
            .iter()
            .rev()
            .map(|(w, s)| (-w.clone(), s.clone()))
            .collect();
        Graduation {
            ambient: self.ambient,
            pieces,
        }
    }
}

impl<K: Field> Filtration<K> {
    pub fn new(ambient: usize, steps: Vec<(Rat, Subspace<K>)>) -> Result<Self, FiltrationError> {
        if ambient == 0 {
            if !steps.is_empty() {
                return Err(FiltrationError::SpacesNotDecreasing);
            }
            return Ok(Filtration { ambient, steps });
        }
        if steps.is_empty() {
            return Err(FiltrationError::Empty);
        }
        if !steps[0].1.is_full() {
            return Err(FiltrationError::FirstStepNotFull);
        }
        for (_, s) in &steps {
            if s.ambient_dim() != ambient {
                return Err(FiltrationError::AmbientMismatch(ambient, s.ambient_dim()));
            }
            if s.is_zero() {
                return Err(FiltrationError::ZeroStep);
            }
        }
        for w in steps.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(FiltrationError::WeightsNotIncreasing);
            }
            if w[1].1.dim() >= w[0].1.dim() || !linalg::contains(&w[0].1, &w[1].1) {
                return Err(FiltrationError::SpacesNotDecreasing);
            }
        }
        Ok(Filtration { ambient, steps })
    }

    /// The one-step filtration with the full space at weight 0.
    pub fn trivial(ambient: usize) -> Self {
        if ambient == 0 {
            return Filtration {
                ambient,
                steps: Vec::new(),
            };
        }
        Filtration {
            ambient,
            steps: vec![(Rat::zero(), Subspace::full(ambient))],
        }
    }

    /// Normalize a list of candidate `(weight, F^weight)` pairs, sorted by
    /// strictly increasing weight with non-increasing spaces, into canonical
    /// steps: keep exactly the genuine jumps.
    pub(crate) fn from_semisteps(
        ambient: usize,
        candidates: Vec<(Rat, Subspace<K>)>,
    ) -> Result<Self, FiltrationError> {
        let mut steps: Vec<(Rat, Subspace<K>)> = Vec::new();
        for i in 0..candidates.len() {
            let keep = if i + 1 < candidates.len() {
                candidates[i].1 != candidates[i + 1].1
            } else {
                !candidates[i].1.is_zero()
            };
            if keep {
                steps.push(candidates[i].clone());
            }
        }
        Filtration::new(ambient, steps)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn steps(&self) -> &[(Rat, Subspace<K>)] {
        &self.steps
    }

    /// The jump weights, strictly increasing.
    pub fn jumps(&self) -> Vec<Rat> {
        self.steps.iter().map(|(w, _)| w.clone()).collect()
    }

    /// `F^γ`: the space at the smallest recorded weight `≥ γ`.
    pub fn eval(&self, gamma: &Rat) -> Subspace<K> {
        for (w, s) in &self.steps {
            if w >= gamma {
                return s.clone();
            }
        }
        Subspace::zero(self.ambient)
    }

    /// `F_+^γ = ∪_{η>γ} F^η`.
    pub fn eval_plus(&self, gamma: &Rat) -> Subspace<K> {
        for (w, s) in &self.steps {
            if w > gamma {
                return s.clone();
            }
        }
        Subspace::zero(self.ambient)
    }

    /// Dimension of `Gr_F^γ = F^γ / F_+^γ`.
    pub fn graded_dim(&self, gamma: &Rat) -> usize {
        self.eval(gamma).dim() - self.eval_plus(gamma).dim()
    }

    /// The sorted weight multiset: weight `w` with multiplicity `dim Gr^w`.
    pub fn type_of(&self) -> TypeVector {
        let mut values = Vec::with_capacity(self.ambient);
        for i in 0..self.steps.len() {
            let next_dim = self.steps.get(i + 1).map_or(0, |(_, s)| s.dim());
            let mult = self.steps[i].1.dim() - next_dim;
            for _ in 0..mult {
                values.push(self.steps[i].0.clone());
            }
        }
        TypeVector::new(values)
    }

    /// `F^γ = ⊕_{η≥γ} G_η`.
    pub fn from_grading(g: &Graduation<K>) -> Self {
        let n = g.ambient;
        let mut candidates = Vec::with_capacity(g.pieces.len());
        let mut running = Subspace::zero(n);
        for (w, piece) in g.pieces.iter().rev() {
            running = linalg::sum(&running, piece).expect("grading pieces share the ambient");
            candidates.push((w.clone(), running.clone()));
        }
        candidates.reverse();
        Filtration::from_semisteps(n, candidates).expect("a grading always yields a filtration")
    }

    /// A splitting of `F`: at each jump, the complement of `F_+^w` in `F^w`
    /// spanned by the echelon rows whose pivots are not pivots of `F_+^w`.
    /// Deterministic, and `from_grading(split(F)) == F` exactly.
    pub fn split(&self) -> Graduation<K> {
        let mut pieces = Vec::with_capacity(self.steps.len());
        for i in 0..self.steps.len() {
            let (w, space) = &self.steps[i];
            let plus = self
                .steps
                .get(i + 1)
                .map_or_else(|| Subspace::zero(self.ambient), |(_, s)| s.clone());
            pieces.push((w.clone(), linalg::pivot_complement(space, &plus)));
        }
        Graduation::new(self.ambient, pieces).expect("split pieces decompose the space")
    }

    /// The opposite filtration `ιF`, split by the negated graduation.
    pub fn opposite(&self) -> Filtration<K> {
        Filtration::from_grading(&self.split().negate())
    }

    /// Scale all weights by `t > 0`; `t = 0` collapses to the trivial
    /// filtration.
    pub fn scale(&self, t: &Rat) -> Filtration<K> {
        assert!(t >= &Rat::zero(), "scale expects a nonnegative factor");
        if t.is_zero() {
            return Filtration::trivial(self.ambient);
        }
        let steps = self
            .steps
            .iter()
            .map(|(w, s)| (w.clone() * t.clone(), s.clone()))
            .collect();
        Filtration {
            ambient: self.ambient,
            steps,
        }
    }

    /// Push forward along an invertible matrix (columns convention).
    pub fn apply(&self, g: &Matrix<K>) -> Filtration<K> {
        let steps = self
            .steps
            .iter()
            .map(|(w, s)| (w.clone(), linalg::apply(g, s)))
            .collect();
        Filtration {
            ambient: self.ambient,
            steps,
        }
    }

    /// Tensor product filtration on `V1 ⊗ V2` with coordinates in
    /// lexicographic pair order `(i, j) ↦ i·n2 + j`.
    pub fn tensor(&self, other: &Filtration<K>) -> Filtration<K> {
        let (n1, n2) = (self.ambient, other.ambient);
        let n = n1 * n2;
        let g1 = self.split();
        let g2 = other.split();
        let mut by_weight: Vec<(Rat, Vec<Vec<K>>)> = Vec::new();
        for (a, p) in g1.pieces() {
            for (b, q) in g2.pieces() {
                let w = a.clone() + b.clone();
                let mut rows = Vec::new();
                for pr in p.basis_rows() {
                    for qr in q.basis_rows() {
                        rows.push(kron(&pr, &qr));
                    }
                }
                match by_weight.iter_mut().find(|(u, _)| *u == w) {
                    Some((_, existing)) => existing.extend(rows),
                    None => by_weight.push((w, rows)),
                }
            }
        }
        let pieces = by_weight
            .into_iter()
            .map(|(w, rows)| (w, linalg::span(&rows, n).expect("kron rows fit")))
            .collect();
        let grading = Graduation::new(n, pieces).expect("tensor grading decomposes");
        Filtration::from_grading(&grading)
    }

    /// Dual filtration on coordinate rows: `(F^∨)^γ = (F_+^{-γ})^⊥`.
    pub fn dual(&self) -> Filtration<K> {
        let n = self.ambient;
        let mut candidates = Vec::with_capacity(self.steps.len());
        for (w, _) in self.steps.iter().rev() {
            let plus = self.eval_plus(w);
            candidates.push((-w.clone(), linalg::orthogonal_complement(&plus)));
        }
        Filtration::from_semisteps(n, candidates).expect("dual of a filtration is a filtration")
    }

    /// Inner Hom filtration `Hom(F1, F2) = F1^∨ ⊗ F2` on the matrix space.
    pub fn hom(&self, other: &Filtration<K>) -> Filtration<K> {
        self.dual().tensor(other)
    }

    /// Sub- and quotient filtrations induced on `W` and `V/W`. The sub lives
    /// in `W`-coordinates, the quotient on the non-pivot coordinates of `W`.
    pub fn induced(
        &self,
        w: &Subspace<K>,
    ) -> Result<(Filtration<K>, Filtration<K>), FiltrationError> {
        if w.ambient_dim() != self.ambient {
            return Err(FiltrationError::AmbientMismatch(
                self.ambient,
                w.ambient_dim(),
            ));
        }
        let mut sub_candidates = Vec::new();
        let mut quot_candidates = Vec::new();
        for (weight, space) in &self.steps {
            let meet = linalg::intersect(space, w)?;
            sub_candidates.push((weight.clone(), linalg::restrict_to(&meet, w)?));
            quot_candidates.push((weight.clone(), linalg::quotient_image(space, w)?));
        }
        let sub = Filtration::from_semisteps(w.dim(), sub_candidates)?;
        let quot = Filtration::from_semisteps(self.ambient - w.dim(), quot_candidates)?;
        Ok((sub, quot))
    }

    /// Block filtration on `V1 ⊕ V2` with `F^γ = F1^γ ⊕ F2^γ`.
    pub fn direct_sum(&self, other: &Filtration<K>) -> Filtration<K> {
        let (n1, n2) = (self.ambient, other.ambient);
        let n = n1 + n2;
        let mut weights: Vec<Rat> = self.jumps();
        for w in other.jumps() {
            if !weights.contains(&w) {
                weights.push(w);
            }
        }
        weights.sort();
        let candidates = weights
            .into_iter()
            .map(|w| {
                let mut rows: Vec<Vec<K>> = Vec::new();
                for r in self.eval(&w).basis_rows() {
                    let mut v = r;
                    v.extend(vec![K::zero(); n2]);
                    rows.push(v);
                }
                for r in other.eval(&w).basis_rows() {
                    let mut v = vec![K::zero(); n1];
                    v.extend(r);
                    rows.push(v);
                }
                (w, linalg::span(&rows, n).expect("padded rows fit"))
            })
            .collect();
        Filtration::from_semisteps(n, candidates).expect("block filtration is a filtration")
    }
}

/// Kronecker product of two coordinate vectors, lex order `(i,j) ↦ i·n2+j`.
pub fn kron<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.clone() * y.clone());
        }
    }
    out
}
