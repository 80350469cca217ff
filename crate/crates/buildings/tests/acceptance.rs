//! Acceptance suite: one test per criterion, each printing a pass line.
//! Everything exact is compared exactly; float checks carry their pinned
//! tolerances inline.

use buildings::axioms;
use buildings::field::{rat, rat_to_f64, rint, Fp, Rat};
use buildings::filtration::{Filtration, TypeVector};
use buildings::linalg::{span, Matrix, Subspace};
use buildings::oracles;
use buildings::sample;
use buildings::symspace::{self, EuclideanNorm};
use buildings::tits::{self, PairingForm};
use buildings::valnorm::{self, LatticePoint, SplitNorm};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

const TRIANGLE_TOL: f64 = 1e-9;
const SYM_TYPE_TOL: f64 = 1e-9;
const SYM_DN_TOL: f64 = 1e-8;
const SYM_CONVEXITY_TOL: f64 = 1e-7;
const SYM_LIMIT_TOL: f64 = 1e-5;

#[test]
fn criterion_1_filtration_calculus() {
    let mut rng = ChaCha12Rng::seed_from_u64(1001);
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let f1 = sample::random_filtration(&mut rng, n);
        let f2 = sample::random_filtration(&mut rng, n);

        // dual involution and reversed-negated type, exact
        assert_eq!(f1.dual().dual(), f1);
        assert_eq!(f1.dual().type_of(), f1.type_of().reverse_negate());

        // split / round trip, exact
        assert_eq!(Filtration::from_grading(&f1.split()), f1);

        // tensor Gr convolution, exact
        let mut conv: Vec<Rat> = Vec::new();
        for a in f1.type_of().values() {
            for b in f2.type_of().values() {
                conv.push(a.clone() + b.clone());
            }
        }
        assert_eq!(f1.tensor(&f2).type_of(), TypeVector::new(conv));

        // tensor-power injectivity (k = 2), exact
        if n <= 3 {
            let t1 = f1.tensor(&f1);
            let t2 = f2.tensor(&f2);
            assert_eq!(f1 == f2, t1 == t2, "tensor squares must separate inputs");
        }
    }
    println!("acceptance 1 (filtration calculus, 500 instances): PASS");
}

#[test]
fn criterion_2_metric_suite() {
    let mut rng = ChaCha12Rng::seed_from_u64(1002);

    // Cauchy-Schwarz and G-invariance, exact, 200 pairs
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let f1 = sample::random_filtration(&mut rng, n);
        let f2 = sample::random_filtration(&mut rng, n);
        let g = sample::random_invertible(&mut rng, n);
        let p = tits::pairing(&f1, &f2, PairingForm::Standard).unwrap();
        let n1 = tits::norm_sq(&f1, PairingForm::Standard).unwrap();
        let n2 = tits::norm_sq(&f2, PairingForm::Standard).unwrap();
        assert!(p.clone() * p.clone() <= n1 * n2, "Cauchy-Schwarz");
        assert_eq!(
            tits::pairing(&f1.apply(&g), &f2.apply(&g), PairingForm::Standard).unwrap(),
            p,
            "G-invariance"
        );
    }

    // triangle inequality within 1e-9 on 200 triples
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let x = sample::random_filtration(&mut rng, n);
        let y = sample::random_filtration(&mut rng, n);
        let z = sample::random_filtration(&mut rng, n);
        let d = |a: &Filtration<Rat>, b: &Filtration<Rat>| {
            rat_to_f64(&tits::distance_sq(a, b, PairingForm::Standard).unwrap()).sqrt()
        };
        assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + TRIANGLE_TOL, "triangle");
    }

    // retraction non-expanding, exact on d², 200 pairs
    let mut done = 0;
    while done < 200 {
        let n = rng.gen_range(2..=3);
        let f1 = sample::random_filtration(&mut rng, n);
        let f2 = sample::random_filtration(&mut rng, n);
        let base = sample::random_filtration(&mut rng, n);
        if base.steps().len() < 2 {
            continue;
        }
        let flag = tits::parabolic_of(&base);
        let r1 = tits::retract(&f1, &flag).unwrap();
        let r2 = tits::retract(&f2, &flag).unwrap();
        assert!(
            tits::distance_sq(&r1, &r2, PairingForm::Standard).unwrap()
                <= tits::distance_sq(&f1, &f2, PairingForm::Standard).unwrap(),
            "retraction must be non-expanding"
        );
        done += 1;
    }

    // angle rigidity: sorted-aligned pairing equals the permutation
    // maximum, exact, n ≤ 4
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let x = TypeVector::new((0..n).map(|_| rat(rng.gen_range(-4..=4), 2)).collect());
        let y = TypeVector::new((0..n).map(|_| rat(rng.gen_range(-4..=4), 2)).collect());
        assert_eq!(
            tits::type_pairing(&x, &y).unwrap(),
            oracles::permutation_max_pairing(&x, &y),
            "angle rigidity"
        );
    }
    println!("acceptance 2 (metric suite on F(GL_n)): PASS");
}

#[test]
fn criterion_3_dominance_exhaustive() {
    // every integer vector pair with entries in [-2, 2], n = 3
    let mut vectors: Vec<TypeVector> = Vec::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                vectors.push(TypeVector::new(vec![rint(a), rint(b), rint(c)]));
            }
        }
    }
    let mut checked = 0u64;
    for x in &vectors {
        for y in &vectors {
            assert_eq!(
                tits::dominance_leq(x, y).unwrap(),
                oracles::hull_membership(x, y),
                "dominance mismatch at {x:?} vs {y:?}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 125 * 125);
    println!("acceptance 3 (dominance vs Weyl-orbit hull, {checked} pairs): PASS");
}

#[test]
fn criterion_4_norm_building_suite() {
    let mut rng = ChaCha12Rng::seed_from_u64(1004);
    let p = 2u64;

    // A1: simultaneous adaptation succeeds and re-evaluates, 200 pairs
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let a = sample::random_split_norm(&mut rng, p, n);
        let b = sample::random_split_norm(&mut rng, p, n);
        valnorm::simultaneous_adapt(&a, &b).expect("A1 adaptation");
    }

    // cartan vs tropical minors oracle, exact, 200 pairs, n ≤ 3
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let a = sample::random_split_norm(&mut rng, p, n);
        let b = sample::random_split_norm(&mut rng, p, n);
        let m = a.basis().inverse().unwrap().mul(b.basis());
        assert_eq!(
            valnorm::cartan(&a, &b).unwrap(),
            oracles::cartan_minors_oracle(&m, a.weights(), b.weights(), p),
            "cartan vs minors"
        );
    }

    // Parreau criterion vs fixes(), exhaustively on the 5×5 weight grid
    for c1 in -2..=2i64 {
        for c2 in -2..=2i64 {
            let alpha =
                SplitNorm::new(p, Matrix::identity(2), vec![rint(c1), rint(c2)]).unwrap();
            for e in -2..=2i64 {
                let mut w = rat(3, 1); // odd numerator
                let mut k = e;
                while k > 0 {
                    w *= rint(2);
                    k -= 1;
                }
                while k < 0 {
                    w /= rint(2);
                    k += 1;
                }
                let u = Matrix::from_rows(vec![vec![rint(1), w], vec![rint(0), rint(1)]]);
                assert_eq!(
                    valnorm::fixes(&u, &alpha).unwrap(),
                    valnorm::parreau_criterion(&u, alpha.weights(), p),
                    "Parreau at weights ({c1},{c2}), v_2 = {e}"
                );
            }
        }
    }

    // loc ∘ can = reduction mod p, exact, 100 integral frame filtrations
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let f = sample::random_filtration(&mut rng, n);
        let m = LatticePoint::standard(p, n);
        let moved = valnorm::add_fil_norm(m.norm(), &f).unwrap();
        assert_eq!(
            valnorm::loc(&moved, &m).unwrap(),
            valnorm::reduce_filtration_mod_p(&f, p),
            "loc ∘ can must be reduction"
        );
    }
    println!("acceptance 4 (B(V) suite over (Q, v_2)): PASS");
}

#[test]
fn criterion_5_moy_prasad() {
    let mut rng = ChaCha12Rng::seed_from_u64(1005);
    let std2 = SplitNorm::standard_lattice(2, 2);
    let end = valnorm::hom_norm(&std2, &std2).unwrap();

    // membership in the r = 0 ball is 2-integrality, 200 random matrices
    for _ in 0..200 {
        let m: Vec<Rat> = (0..4)
            .map(|_| rat(rng.gen_range(-8..=8), rng.gen_range(1..=8)))
            .collect();
        let integral = m
            .iter()
            .all(|x| valnorm::vp_rat(x, 2).map_or(true, |v| v >= 0));
        assert_eq!(
            end.eval_nu(&m).at_least(&Rat::zero()),
            integral,
            "ball membership must be entrywise 2-integrality"
        );
    }

    // the r = 1 ball is the p-scaled lattice
    let b1 = valnorm::moy_prasad(&end, &rint(1));
    for (k, g) in b1.iter().enumerate() {
        let mut expected: Matrix<Rat> = Matrix::zero(2, 2);
        expected[(k / 2, k % 2)] = rint(2);
        assert_eq!(*g, expected, "r=1 generators are 2·E_ij");
    }
    println!("acceptance 5 (Moy-Prasad balls for GL_2 over (Q, v_2)): PASS");
}

#[test]
fn criterion_6_symmetric_space() {
    let mut rng = ChaCha12Rng::seed_from_u64(1006);

    // d(α, α+F) = sorted F-weights within 1e-9
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let alpha = EuclideanNorm::new(sample::random_spd(&mut rng, n)).unwrap();
        let f = sample::random_real_filtration(&mut rng, n);
        let moved = symspace::add_fil_spd(&alpha, &f).unwrap();
        let d = symspace::fischer_courant(&alpha, &moved).unwrap();
        for (a, b) in d.iter().zip(f.type_vector()) {
            assert!((a - b).abs() < SYM_TYPE_TOL, "d(α, α+F) = t(F)");
        }
    }

    // dⁿ additivity and dⁿ(α, gα) = log|det g| within 1e-8
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let a = EuclideanNorm::new(sample::random_spd(&mut rng, n)).unwrap();
        let b = EuclideanNorm::new(sample::random_spd(&mut rng, n)).unwrap();
        let c = EuclideanNorm::new(sample::random_spd(&mut rng, n)).unwrap();
        let lhs = symspace::dn(&a, &c).unwrap();
        let rhs = symspace::dn(&a, &b).unwrap() + symspace::dn(&b, &c).unwrap();
        assert!((lhs - rhs).abs() < SYM_DN_TOL, "dⁿ additivity");
        let g = sample::random_well_conditioned(&mut rng, n);
        let det = g.determinant().abs().ln();
        assert!(
            (symspace::dn(&a, &a.act(&g).unwrap()).unwrap() - det).abs() < SYM_DN_TOL,
            "dⁿ(α, gα) = log|det g|"
        );
    }

    // midpoint convexity of suffix sums, 50 seeded instances, n = 3
    for _ in 0..50 {
        let a = EuclideanNorm::new(sample::random_spd(&mut rng, 3)).unwrap();
        let b = EuclideanNorm::new(sample::random_spd(&mut rng, 3)).unwrap();
        let f = sample::random_real_filtration(&mut rng, 3);
        let g = sample::random_real_filtration(&mut rng, 3);
        let report = symspace::convexity_report(&a, &b, &f, &g, 11).unwrap();
        assert!(
            report.max_violation <= SYM_CONVEXITY_TOL,
            "convexity violated by {}",
            report.max_violation
        );
    }

    // the t → ∞ limit matches the graded distance within 1e-5
    for _ in 0..25 {
        let n = rng.gen_range(2..=3);
        let alpha = EuclideanNorm::new(sample::random_spd(&mut rng, n)).unwrap();
        let beta = EuclideanNorm::new(sample::random_spd(&mut rng, n)).unwrap();
        let f = sample::random_real_filtration(&mut rng, n);
        let at_16 = symspace::translated_distance(&alpha, &beta, &f, &f, 16.0).unwrap();
        let sections = echelon_sections(&f);
        let ga = symspace::graded_norm(&alpha, &f, &sections).unwrap();
        let gb = symspace::graded_norm(&beta, &f, &sections).unwrap();
        let graded = symspace::graded_distance(&ga, &gb).unwrap();
        for (a, b) in at_16.iter().zip(&graded) {
            assert!((a - b).abs() < SYM_LIMIT_TOL, "limit {a} vs graded {b}");
        }
    }
    println!("acceptance 6 (symmetric space of GL_n(R)): PASS");
}

fn echelon_sections(f: &symspace::RealFiltration) -> Vec<nalgebra::DMatrix<f64>> {
    let pivot_of = |m: &nalgebra::DMatrix<f64>, r: usize| -> usize {
        (0..m.ncols())
            .find(|&c| m[(r, c)].abs() > 1e-9)
            .expect("nonzero row")
    };
    (0..f.steps().len())
        .map(|i| {
            let (_, b) = &f.steps()[i];
            let next_pivots: Vec<usize> = match f.steps().get(i + 1) {
                None => Vec::new(),
                Some((_, bp)) => (0..bp.nrows()).map(|r| pivot_of(bp, r)).collect(),
            };
            let keep: Vec<usize> = (0..b.nrows())
                .filter(|&r| !next_pivots.contains(&pivot_of(b, r)))
                .collect();
            nalgebra::DMatrix::from_fn(keep.len(), f.dim(), |r, c| b[(keep[r], c)])
        })
        .collect()
}

#[test]
fn criterion_7_axiom_harness() {
    // all three instances pass all suites at default trial counts
    let trials = 100;
    let seed = 7;
    for report in axioms::full_suite(&axioms::TitsInstance { n: 3 }, trials, seed) {
        assert!(
            report.passed(),
            "tits {}: {:?}",
            report.axiom,
            report.failures
        );
    }
    for report in axioms::full_suite(&axioms::ValnormInstance { n: 3, p: 2 }, trials, seed) {
        assert!(
            report.passed(),
            "valnorm {}: {:?}",
            report.axiom,
            report.failures
        );
    }
    let sym = axioms::SymspaceInstance {
        n: 3,
        tol: axioms::SYM_TOL,
    };
    for report in axioms::full_suite(&sym, trials, seed) {
        assert!(
            report.passed(),
            "symspace {}: {:?}",
            report.axiom,
            report.failures
        );
    }

    // the three negative controls must produce failure witnesses
    let crippled = axioms::CoordinateOnlyTits(axioms::TitsInstance { n: 3 });
    assert!(!axioms::check_a1_a2(&crippled, 20, seed).passed());
    let corrupted = axioms::NegatedPairingTits(axioms::TitsInstance { n: 3 });
    assert!(!axioms::check_metric(&corrupted, 20, seed).passed());
    let nonunip = axioms::NonUnipotentValnorm(axioms::ValnormInstance { n: 2, p: 2 });
    assert!(!axioms::check_a6_a8(&nonunip, 20, seed).passed());

    // reports are byte-deterministic under a fixed seed
    let once = serde_json::to_vec(&axioms::full_suite(
        &axioms::ValnormInstance { n: 2, p: 3 },
        25,
        99,
    ))
    .unwrap();
    let twice = serde_json::to_vec(&axioms::full_suite(
        &axioms::ValnormInstance { n: 2, p: 3 },
        25,
        99,
    ))
    .unwrap();
    assert_eq!(once, twice, "reports must be byte-identical");
    println!("acceptance 7 (axiom harness, three instances + controls): PASS");
}

/// The zero-dimensional edge case stays closed under the block operations.
#[test]
fn zero_dimensional_edge_case() {
    let empty = Filtration::<Rat>::new(0, vec![]).unwrap();
    let f = Filtration::<Rat>::trivial(2);
    assert_eq!(f.direct_sum(&empty).type_of(), f.type_of());
    let (sub, quot) = f.induced(&Subspace::zero(2)).unwrap();
    assert_eq!(sub.ambient_dim(), 0);
    assert_eq!(quot.type_of(), f.type_of());
    let full = span(&[vec![rint(1), rint(0)], vec![rint(0), rint(1)]], 2).unwrap();
    let (sub, quot) = f.induced(&full).unwrap();
    assert_eq!(sub, f);
    assert_eq!(quot.ambient_dim(), 0);
    let _ = Filtration::<Fp>::new(0, vec![]).unwrap();
}
