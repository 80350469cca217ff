//! A generic harness checking the affine-building axioms A1/A2 (common
//! apartments), the metric properties (triangle inequality, non-expanding
//! addition), A6 (unipotent translates stabilize along rays) and the
//! testable containment direction of A8 (sampled stabilizer generators fix
//! the point), against any structure implementing [`BuildingInstance`].
//!
//! Failures are data, not panics: every check returns an [`AxiomReport`]
//! whose `failures` list carries the trial seed and a witness description.
//! Reports are byte-deterministic for a fixed seed.

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::field::{rat_to_f64, Rat};
use crate::filtration::Filtration;
use crate::sample;
use crate::symspace::{self, EuclideanNorm};
use crate::tits::{self, PairingForm};
use crate::valnorm;

/// One concrete building exposed to the harness through per-axiom trials.
/// A trial draws everything it needs from the seeded generator and returns
/// `Err(witness)` on failure.
pub trait BuildingInstance {
    fn name(&self) -> &str;
    /// Sample two points and find a common apartment; verify both
    /// re-evaluate in it (A1), and the same for a point-filtration pair
    /// (A2).
    fn trial_a1_a2(&self, rng: &mut ChaCha12Rng) -> Result<(), String>;
    /// Triangle inequality on the l2-length of the vector distance, and
    /// non-expansion of the addition map (A5).
    fn trial_metric(&self, rng: &mut ChaCha12Rng) -> Result<(), String>;
    /// A6 at two large ray parameters, and the containment direction of
    /// A8: sampled generators of the apartment stabilizer fix the point.
    fn trial_a6_a8(&self, rng: &mut ChaCha12Rng) -> Result<(), String>;
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub instance: String,
    pub axiom: String,
    pub trials: u32,
    pub failures: Vec<Failure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn trial_seed(seed: u64, trial: u32) -> u64 {
    seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn run<F>(instance: &str, axiom: &str, trials: u32, seed: u64, mut f: F) -> AxiomReport
where
    F: FnMut(&mut ChaCha12Rng) -> Result<(), String>,
{
    let mut failures = Vec::new();
    for t in 0..trials {
        let ts = trial_seed(seed, t);
        let mut rng = ChaCha12Rng::seed_from_u64(ts);
        if let Err(witness) = f(&mut rng) {
            failures.push(Failure { seed: ts, witness });
        }
    }
    failures.sort_by_key(|f| f.seed);
    AxiomReport {
        instance: instance.to_string(),
        axiom: axiom.to_string(),
        trials,
        failures,
    }
}

pub fn check_a1_a2<I: BuildingInstance>(instance: &I, trials: u32, seed: u64) -> AxiomReport {
    run(instance.name(), "A1-A2", trials, seed, |rng| {
        instance.trial_a1_a2(rng)
    })
}

pub fn check_metric<I: BuildingInstance>(instance: &I, trials: u32, seed: u64) -> AxiomReport {
    run(instance.name(), "metric", trials, seed, |rng| {
        instance.trial_metric(rng)
    })
}

pub fn check_a6_a8<I: BuildingInstance>(instance: &I, trials: u32, seed: u64) -> AxiomReport {
    run(instance.name(), "A6-A8", trials, seed, |rng| {
        instance.trial_a6_a8(rng)
    })
}

/// All three suites in order.
pub fn full_suite<I: BuildingInstance>(instance: &I, trials: u32, seed: u64) -> Vec<AxiomReport> {
    vec![
        check_a1_a2(instance, trials, seed),
        check_metric(instance, trials, seed),
        check_a6_a8(instance, trials, seed),
    ]
}

// ---------------------------------------------------------------------
// The vectorial Tits building F(GL_n) over Q.
// ---------------------------------------------------------------------

pub struct TitsInstance {
    pub n: usize,
}

impl TitsInstance {
    fn nontrivial_fil(&self, rng: &mut ChaCha12Rng) -> Filtration<Rat> {
        loop {
            let f = sample::random_filtration(rng, self.n);
            if f.steps().len() >= 2 {
                return f;
            }
        }
    }
}

impl BuildingInstance for TitsInstance {
    fn name(&self) -> &str {
        "tits"
    }

    fn trial_a1_a2(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let f1 = sample::random_filtration(rng, self.n);
        let f2 = sample::random_filtration(rng, self.n);
        let frame = tits::common_frame(&f1, &f2).map_err(|e| format!("no frame: {e}"))?;
        if !frame.splits(&f1) {
            return Err(format!("frame does not split the first point: {f1:?}"));
        }
        if !frame.splits(&f2) {
            return Err(format!("frame does not split the second point: {f2:?}"));
        }
        Ok(())
    }

    fn trial_metric(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let x = sample::random_filtration(rng, self.n);
        let y = sample::random_filtration(rng, self.n);
        let z = sample::random_filtration(rng, self.n);
        let d = |a: &Filtration<Rat>, b: &Filtration<Rat>| -> Result<Rat, String> {
            tits::distance_sq(a, b, PairingForm::Standard).map_err(|e| e.to_string())
        };
        let dxz = rat_to_f64(&d(&x, &z)?).sqrt();
        let dxy = rat_to_f64(&d(&x, &y)?).sqrt();
        let dyz = rat_to_f64(&d(&y, &z)?).sqrt();
        if dxz > dxy + dyz + 1e-9 {
            return Err(format!("triangle violated: {dxz} > {dxy} + {dyz}"));
        }
        // A5, exact on squared lengths
        let f = sample::random_filtration(rng, self.n);
        let xf = tits::add_fil(&x, &f).map_err(|e| e.to_string())?;
        let yf = tits::add_fil(&y, &f).map_err(|e| e.to_string())?;
        if d(&xf, &yf)? > d(&x, &y)? {
            return Err("addition expanded the distance".to_string());
        }
        Ok(())
    }

    fn trial_a6_a8(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let x = sample::random_filtration(rng, self.n);
        let g = self.nontrivial_fil(rng);
        let u = sample::random_unipotent_for(rng, &g);
        // threshold from the common frame: beyond it, the weight order of
        // x + tG refines the weight order of G
        let frame = tits::common_frame(&x, &g).map_err(|e| e.to_string())?;
        let a = frame.weights_of(&x);
        let gamma = frame.weights_of(&g);
        let mut t_star = Rat::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if gamma[i] > gamma[j] {
                    let bound = (a[j].clone() - a[i].clone()) / (gamma[i].clone() - gamma[j].clone());
                    if bound > t_star {
                        t_star = bound;
                    }
                }
            }
        }
        let t0 = t_star.floor() + Rat::from_integer(1.into());
        for t in [t0.clone(), t0 + Rat::from_integer(1.into())] {
            let moved = tits::add_fil(&x, &g.scale(&t)).map_err(|e| e.to_string())?;
            if !tits::stabilizes(&u, &moved).map_err(|e| e.to_string())? {
                return Err(format!("A6: u does not fix x + {t}·F"));
            }
        }
        // A8 containment: a sampled element of P_x fixes x
        let p = sample::random_parabolic_element(rng, &x);
        if !tits::stabilizes(&p, &x).map_err(|e| e.to_string())? {
            return Err("A8: parabolic sample does not fix its filtration".to_string());
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// The Goldman-Iwahori building B(V) over (Q, v_p).
// ---------------------------------------------------------------------

pub struct ValnormInstance {
    pub n: usize,
    pub p: u64,
}

impl ValnormInstance {
    fn l2_sq(&self, c: &crate::filtration::TypeVector) -> Rat {
        c.values()
            .iter()
            .fold(Rat::zero(), |acc, x| acc + x.clone() * x.clone())
    }
}

impl BuildingInstance for ValnormInstance {
    fn name(&self) -> &str {
        "valnorm"
    }

    fn trial_a1_a2(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let a = sample::random_split_norm(rng, self.p, self.n);
        let b = sample::random_split_norm(rng, self.p, self.n);
        // the adaptation verifies exact re-evaluation internally
        valnorm::simultaneous_adapt(&a, &b).map_err(|e| format!("A1: {e}"))?;
        let f = sample::random_filtration(rng, self.n);
        valnorm::adapt_to_filtration(&a, &f).map_err(|e| format!("A2: {e}"))?;
        Ok(())
    }

    fn trial_metric(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let a = sample::random_split_norm(rng, self.p, self.n);
        let b = sample::random_split_norm(rng, self.p, self.n);
        let c = sample::random_split_norm(rng, self.p, self.n);
        let dac = rat_to_f64(&self.l2_sq(&valnorm::cartan(&a, &c).map_err(|e| e.to_string())?)).sqrt();
        let dab = rat_to_f64(&self.l2_sq(&valnorm::cartan(&a, &b).map_err(|e| e.to_string())?)).sqrt();
        let dbc = rat_to_f64(&self.l2_sq(&valnorm::cartan(&b, &c).map_err(|e| e.to_string())?)).sqrt();
        if dac > dab + dbc + 1e-9 {
            return Err(format!("triangle violated: {dac} > {dab} + {dbc}"));
        }
        // A5, exact on squared lengths
        let f = sample::random_filtration(rng, self.n);
        let af = valnorm::add_fil_norm(&a, &f).map_err(|e| e.to_string())?;
        let bf = valnorm::add_fil_norm(&b, &f).map_err(|e| e.to_string())?;
        let before = self.l2_sq(&valnorm::cartan(&a, &b).map_err(|e| e.to_string())?);
        let after = self.l2_sq(&valnorm::cartan(&af, &bf).map_err(|e| e.to_string())?);
        if after > before {
            return Err("addition expanded the distance".to_string());
        }
        Ok(())
    }

    fn trial_a6_a8(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let alpha = sample::random_split_norm(rng, self.p, self.n);
        let f = loop {
            let f = sample::random_filtration(rng, self.n);
            if f.steps().len() >= 2 {
                break f;
            }
        };
        let adapted = valnorm::adapt_to_filtration(&alpha, &f).map_err(|e| e.to_string())?;
        let n = self.n;
        let u_local = crate::linalg::Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rat::from_integer(1.into())
            } else if adapted.fil_weights[i] > adapted.fil_weights[j] {
                Rat::new(rng.gen_range(-3i64..=3).into(), 2.into())
            } else {
                Rat::zero()
            }
        });
        let w_inv = adapted.vectors.inverse().map_err(|e| e.to_string())?;
        let u = adapted.vectors.mul(&u_local).mul(&w_inv);
        let threshold = valnorm::a6_threshold(
            &u_local,
            &adapted.alpha_weights,
            &adapted.fil_weights,
            self.p,
        );
        let t0 = if threshold < Rat::zero() {
            Rat::zero()
        } else {
            threshold
        };
        for t in [t0.clone(), t0 + Rat::from_integer(1.into())] {
            let moved = valnorm::add_fil_norm(&alpha, &f.scale(&t)).map_err(|e| e.to_string())?;
            if !valnorm::fixes(&u, &moved).map_err(|e| e.to_string())? {
                return Err(format!("A6: u does not fix α + {t}·F"));
            }
        }
        // A8 containment: sampled stabilizer generators fix α — basis-line
        // unit scalings and Parreau-admissible root elements
        let k = rng.gen_range(0..n);
        let unit = Rat::new((2 * rng.gen_range(1i64..=3) - 1).into(), 1.into());
        let mut diag = crate::linalg::Matrix::identity(n);
        diag[(k, k)] = unit;
        let g_scale = alpha
            .basis()
            .mul(&diag)
            .mul(&alpha.basis().inverse().map_err(|e| e.to_string())?);
        if !valnorm::fixes(&g_scale, &alpha).map_err(|e| e.to_string())? {
            return Err("A8: unit scaling does not fix the norm".to_string());
        }
        if n >= 2 {
            let i = rng.gen_range(0..n);
            let j = loop {
                let j = rng.gen_range(0..n);
                if j != i {
                    break j;
                }
            };
            // admissible root element: v_p(λ) ≥ c_j − c_i
            let need = (alpha.weights()[j].clone() - alpha.weights()[i].clone()).ceil();
            let exp = need.to_integer().max(0.into());
            let mut lambda = Rat::from_integer(1.into());
            let mut count = exp.clone();
            while count > 0.into() {
                lambda *= Rat::from_integer(self.p.into());
                count -= 1;
            }
            let mut e = crate::linalg::Matrix::identity(n);
            e[(i, j)] = lambda;
            let root = alpha
                .basis()
                .mul(&e)
                .mul(&alpha.basis().inverse().map_err(|er| er.to_string())?);
            if !valnorm::fixes(&root, &alpha).map_err(|e| e.to_string())? {
                return Err("A8: admissible root element does not fix the norm".to_string());
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// The symmetric space B(V, R) of Euclidean norms.
// ---------------------------------------------------------------------

pub struct SymspaceInstance {
    pub n: usize,
    /// Comparison tolerance for the float checks.
    pub tol: f64,
}

pub const SYM_TOL: f64 = 1e-8;
pub const SYM_A6_DECAY: f64 = 1e-4;

impl BuildingInstance for SymspaceInstance {
    fn name(&self) -> &str {
        "symspace"
    }

    fn trial_a1_a2(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let alpha = EuclideanNorm::new(sample::random_spd(rng, self.n)).map_err(|e| e.to_string())?;
        let beta = EuclideanNorm::new(sample::random_spd(rng, self.n)).map_err(|e| e.to_string())?;
        // common orthogonal frame from the Cholesky-reduced eigenvectors
        let chol = alpha
            .gram()
            .clone()
            .cholesky()
            .ok_or("gram not SPD".to_string())?;
        let l = chol.l();
        let l_inv_t = l
            .transpose()
            .try_inverse()
            .ok_or("ill-conditioned".to_string())?;
        let c = (l.clone().try_inverse().unwrap() * beta.gram() * &l_inv_t + DMatrix::zeros(self.n, self.n))
            .clone();
        let c = (&c + c.transpose()) * 0.5;
        let eigen = c.symmetric_eigen();
        let frame = &l_inv_t * eigen.eigenvectors;
        for m in [alpha.gram(), beta.gram()] {
            let d = frame.transpose() * m * &frame;
            for i in 0..self.n {
                for j in 0..self.n {
                    if i != j && d[(i, j)].abs() > self.tol * (1.0 + d[(i, i)].abs()) {
                        return Err(format!(
                            "A1: frame fails to diagonalize both forms, off-diag {}",
                            d[(i, j)]
                        ));
                    }
                }
            }
        }
        // A2: the α-orthogonal splitting is an apartment through (α, F)
        let f = sample::random_real_filtration(rng, self.n);
        let pieces = symspace::orthogonal_splitting(&alpha, &f).map_err(|e| e.to_string())?;
        let total: usize = pieces.iter().map(|(_, b)| b.nrows()).sum();
        if total != self.n {
            return Err("A2: orthogonal splitting does not decompose".to_string());
        }
        for (i, (_, b)) in pieces.iter().enumerate() {
            for (j, (_, b2)) in pieces.iter().enumerate() {
                if i == j {
                    continue;
                }
                let cross = b * alpha.gram() * b2.transpose();
                if cross.amax() > self.tol {
                    return Err("A2: splitting pieces are not orthogonal".to_string());
                }
            }
        }
        Ok(())
    }

    fn trial_metric(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let a = EuclideanNorm::new(sample::random_spd(rng, self.n)).map_err(|e| e.to_string())?;
        let b = EuclideanNorm::new(sample::random_spd(rng, self.n)).map_err(|e| e.to_string())?;
        let c = EuclideanNorm::new(sample::random_spd(rng, self.n)).map_err(|e| e.to_string())?;
        let d = |x: &EuclideanNorm, y: &EuclideanNorm| -> Result<f64, String> {
            Ok(symspace::l2(
                &symspace::fischer_courant(x, y).map_err(|e| e.to_string())?,
            ))
        };
        if d(&a, &c)? > d(&a, &b)? + d(&b, &c)? + self.tol {
            return Err("triangle violated".to_string());
        }
        let f = sample::random_real_filtration(rng, self.n);
        let af = symspace::add_fil_spd(&a, &f).map_err(|e| e.to_string())?;
        let bf = symspace::add_fil_spd(&b, &f).map_err(|e| e.to_string())?;
        if d(&af, &bf)? > d(&a, &b)? + self.tol {
            return Err("addition expanded the distance".to_string());
        }
        Ok(())
    }

    fn trial_a6_a8(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let alpha = EuclideanNorm::new(sample::random_spd(rng, self.n)).map_err(|e| e.to_string())?;
        let f = sample::random_real_filtration(rng, self.n);
        let pieces = symspace::orthogonal_splitting(&alpha, &f).map_err(|e| e.to_string())?;
        let n = self.n;
        let mut cols: Vec<(f64, Vec<f64>)> = Vec::new();
        for (w, b) in pieces.iter().rev() {
            for r in 0..b.nrows() {
                cols.push((*w, (0..n).map(|c| b[(r, c)]).collect()));
            }
        }
        let p = DMatrix::from_fn(n, n, |i, j| cols[j].1[i]);
        let tmat = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1.0
            } else if i < j && cols[i].0 > cols[j].0 {
                rng.gen_range(-1.0..1.0)
            } else {
                0.0
            }
        });
        let u = &p * tmat * p.clone().try_inverse().ok_or("singular frame")?;
        let ua = alpha.act(&u).map_err(|e| e.to_string())?;
        let d8 = symspace::l2(
            &symspace::translated_distance(&alpha, &ua, &f, &f, 8.0).map_err(|e| e.to_string())?,
        );
        let d16 = symspace::l2(
            &symspace::translated_distance(&alpha, &ua, &f, &f, 16.0).map_err(|e| e.to_string())?,
        );
        if d16 > d8 + self.tol {
            return Err(format!("A6: distance grew along the ray: {d8} -> {d16}"));
        }
        if d16 > SYM_A6_DECAY {
            return Err(format!("A6: no decay, d(16) = {d16}"));
        }
        // A8: a rotation in an α-orthonormal frame fixes α
        let chol = alpha.gram().clone().cholesky().ok_or("not SPD")?;
        let basis = chol.l().transpose().try_inverse().ok_or("singular")?;
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut rot = DMatrix::identity(n, n);
        if n >= 2 {
            rot[(0, 0)] = theta.cos();
            rot[(0, 1)] = -theta.sin();
            rot[(1, 0)] = theta.sin();
            rot[(1, 1)] = theta.cos();
        }
        let g = &basis * rot * basis.clone().try_inverse().ok_or("singular")?;
        let moved = alpha.act(&g).map_err(|e| e.to_string())?;
        let drift = symspace::l2(&symspace::fischer_courant(&moved, &alpha).map_err(|e| e.to_string())?);
        if drift > self.tol {
            return Err(format!("A8: α-orthogonal rotation moved the norm by {drift}"));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// Negative controls: deliberately broken instances that must produce
// failure witnesses.
// ---------------------------------------------------------------------

/// A crippled apartment finder that accepts only points split by the
/// standard coordinate frame.
pub struct CoordinateOnlyTits(pub TitsInstance);

impl BuildingInstance for CoordinateOnlyTits {
    fn name(&self) -> &str {
        "tits-coordinate-only"
    }

    fn trial_a1_a2(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let f1 = sample::random_filtration(rng, self.0.n);
        let f2 = sample::random_filtration(rng, self.0.n);
        let standard = tits::frame_of(&Filtration::<Rat>::trivial(self.0.n));
        for f in [&f1, &f2] {
            if !standard.splits(f) {
                return Err(format!("refusing non-coordinate frame for {f:?}"));
            }
        }
        Ok(())
    }

    fn trial_metric(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        self.0.trial_metric(rng)
    }

    fn trial_a6_a8(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        self.0.trial_a6_a8(rng)
    }
}

/// A corrupted metric: the pairing enters the distance with the wrong
/// sign. The sampler deliberately feeds the opposite pair, where the sign
/// flip is maximally visible.
pub struct NegatedPairingTits(pub TitsInstance);

impl BuildingInstance for NegatedPairingTits {
    fn name(&self) -> &str {
        "tits-negated-pairing"
    }

    fn trial_a1_a2(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        self.0.trial_a1_a2(rng)
    }

    fn trial_metric(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let x = loop {
            let x = sample::random_filtration(rng, self.0.n);
            if !tits::norm_sq(&x, PairingForm::Standard)
                .map_err(|e| e.to_string())?
                .is_zero()
            {
                break x;
            }
        };
        let y = x.opposite();
        let z = x.clone();
        let bad = |a: &Filtration<Rat>, b: &Filtration<Rat>| -> Result<f64, String> {
            let na = tits::norm_sq(a, PairingForm::Standard).map_err(|e| e.to_string())?;
            let nb = tits::norm_sq(b, PairingForm::Standard).map_err(|e| e.to_string())?;
            let p = tits::pairing(a, b, PairingForm::Standard).map_err(|e| e.to_string())?;
            // sign flipped relative to the true distance
            Ok(rat_to_f64(&(na + nb + Rat::from_integer(2.into()) * p))
                .max(0.0)
                .sqrt())
        };
        let dxz = bad(&x, &z)?;
        let dxy = bad(&x, &y)?;
        let dyz = bad(&y, &z)?;
        if dxz > dxy + dyz + 1e-9 {
            return Err(format!("triangle violated: {dxz} > {dxy} + {dyz}"));
        }
        Ok(())
    }

    fn trial_a6_a8(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        self.0.trial_a6_a8(rng)
    }
}

/// A broken A6 sampler: substitutes a non-unipotent diagonal element whose
/// translates never stabilize.
pub struct NonUnipotentValnorm(pub ValnormInstance);

impl BuildingInstance for NonUnipotentValnorm {
    fn name(&self) -> &str {
        "valnorm-non-unipotent"
    }

    fn trial_a1_a2(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        self.0.trial_a1_a2(rng)
    }

    fn trial_metric(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        self.0.trial_metric(rng)
    }

    fn trial_a6_a8(&self, rng: &mut ChaCha12Rng) -> Result<(), String> {
        let alpha = sample::random_split_norm(rng, self.0.p, self.0.n);
        let f = sample::random_filtration(rng, self.0.n);
        let mut g = crate::linalg::Matrix::identity(self.0.n);
        g[(0, 0)] = Rat::from_integer(self.0.p.into());
        for t in [Rat::from_integer(8.into()), Rat::from_integer(16.into())] {
            let moved = valnorm::add_fil_norm(&alpha, &f.scale(&t)).map_err(|e| e.to_string())?;
            if !valnorm::fixes(&g, &moved).map_err(|e| e.to_string())? {
                return Err(format!("A6: element does not fix α + {t}·F"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_three_instances_pass() {
        let tits = TitsInstance { n: 3 };
        for report in full_suite(&tits, 25, 7) {
            assert!(report.passed(), "{}: {:?}", report.axiom, report.failures);
        }
        let val = ValnormInstance { n: 3, p: 2 };
        for report in full_suite(&val, 25, 7) {
            assert!(report.passed(), "{}: {:?}", report.axiom, report.failures);
        }
        let sym = SymspaceInstance { n: 3, tol: SYM_TOL };
        for report in full_suite(&sym, 25, 7) {
            assert!(report.passed(), "{}: {:?}", report.axiom, report.failures);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let tits = TitsInstance { n: 3 };
        let a = serde_json::to_string(&full_suite(&tits, 10, 42)).unwrap();
        let b = serde_json::to_string(&full_suite(&tits, 10, 42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negative_controls_fail() {
        let crippled = CoordinateOnlyTits(TitsInstance { n: 3 });
        let report = check_a1_a2(&crippled, 20, 11);
        assert!(!report.passed(), "crippled finder must report failures");
        assert!(report.failures[0].witness.contains("refusing"));

        let corrupted = NegatedPairingTits(TitsInstance { n: 3 });
        let report = check_metric(&corrupted, 20, 11);
        assert!(!report.passed(), "corrupted metric must fail the triangle");

        let nonunip = NonUnipotentValnorm(ValnormInstance { n: 2, p: 2 });
        let report = check_a6_a8(&nonunip, 20, 11);
        assert!(!report.passed(), "non-unipotent element must fail A6");
    }
}
