//! JSON encodings of the public objects. Exact values travel as fraction
//! strings (`"3"`, `"-1/2"`), floats as plain JSON numbers; round trips
//! are bit-exact for the exact types.

use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::field::{Fp, Rat};
use crate::filtration::Filtration;
use crate::linalg::{span, Matrix, Subspace};
use crate::symspace::EuclideanNorm;
use crate::tits::{Flag, Frame};
use crate::valnorm::{LatticePoint, SplitNorm};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum JsonError {
    #[error("malformed fraction: {0}")]
    BadFraction(String),
    #[error("malformed object: {0}")]
    BadObject(String),
}

fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

fn rat_from_string(s: &str) -> Result<Rat, JsonError> {
    Rat::from_str(s.trim()).map_err(|_| JsonError::BadFraction(s.to_string()))
}

fn matrix_to_rows(m: &Matrix<Rat>) -> Vec<Vec<String>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(rat_to_string).collect())
        .collect()
}

fn rows_to_vecs(rows: &[Vec<String>]) -> Result<Vec<Vec<Rat>>, JsonError> {
    rows.iter()
        .map(|r| r.iter().map(|s| rat_from_string(s)).collect())
        .collect()
}

// -------------------------------------------------------------------
// Filtrations: {"dim": n, "steps": [{"weight": "p/q", "basis": [[..]]}]}
// -------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub weight: String,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FiltrationJson {
    pub dim: usize,
    pub steps: Vec<StepJson>,
}

pub fn filtration_to_json(f: &Filtration<Rat>) -> FiltrationJson {
    FiltrationJson {
        dim: f.ambient_dim(),
        steps: f
            .steps()
            .iter()
            .map(|(w, s)| StepJson {
                weight: rat_to_string(w),
                basis: matrix_to_rows(s.basis()),
            })
            .collect(),
    }
}

pub fn filtration_from_json(j: &FiltrationJson) -> Result<Filtration<Rat>, JsonError> {
    let steps = j
        .steps
        .iter()
        .map(|s| {
            let rows = rows_to_vecs(&s.basis)?;
            let space =
                span(&rows, j.dim).map_err(|e| JsonError::BadObject(e.to_string()))?;
            Ok((rat_from_string(&s.weight)?, space))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Filtration::new(j.dim, steps).map_err(|e| JsonError::BadObject(e.to_string()))
}

/// Residue filtration over `F_p`: entries as canonical residues.
#[derive(Debug, Serialize, Deserialize)]
pub struct ResidueFiltrationJson {
    pub p: u64,
    pub dim: usize,
    pub steps: Vec<StepJson>,
}

pub fn residue_filtration_to_json(f: &Filtration<Fp>, p: u64) -> ResidueFiltrationJson {
    ResidueFiltrationJson {
        p,
        dim: f.ambient_dim(),
        steps: f
            .steps()
            .iter()
            .map(|(w, s)| StepJson {
                weight: rat_to_string(w),
                basis: s
                    .basis_rows()
                    .iter()
                    .map(|r| r.iter().map(|x| x.value().to_string()).collect())
                    .collect(),
            })
            .collect(),
    }
}

pub fn residue_filtration_from_json(
    j: &ResidueFiltrationJson,
) -> Result<Filtration<Fp>, JsonError> {
    let steps = j
        .steps
        .iter()
        .map(|s| {
            let rows: Vec<Vec<Fp>> = s
                .basis
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            x.parse::<i64>()
                                .map(|v| Fp::new(v, j.p))
                                .map_err(|_| JsonError::BadFraction(x.clone()))
                        })
                        .collect::<Result<Vec<Fp>, JsonError>>()
                })
                .collect::<Result<Vec<_>, JsonError>>()?;
            let space =
                span(&rows, j.dim).map_err(|e| JsonError::BadObject(e.to_string()))?;
            Ok((rat_from_string(&s.weight)?, space))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Filtration::new(j.dim, steps).map_err(|e| JsonError::BadObject(e.to_string()))
}

// -------------------------------------------------------------------
// Split norms: {"p": 2, "basis": [[..]], "weights": ["0", "1/2"]}
// basis[k] is the k-th adapted basis vector.
// -------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct SplitNormJson {
    pub p: u64,
    pub basis: Vec<Vec<String>>,
    pub weights: Vec<String>,
}

pub fn split_norm_to_json(a: &SplitNorm) -> SplitNormJson {
    let n = a.dim();
    SplitNormJson {
        p: a.p(),
        basis: (0..n)
            .map(|j| a.basis_vector(j).iter().map(rat_to_string).collect())
            .collect(),
        weights: a.weights().iter().map(rat_to_string).collect(),
    }
}

pub fn split_norm_from_json(j: &SplitNormJson) -> Result<SplitNorm, JsonError> {
    let vectors = rows_to_vecs(&j.basis)?;
    let n = vectors.len();
    for v in &vectors {
        if v.len() != n {
            return Err(JsonError::BadObject("basis must be square".into()));
        }
    }
    let basis = Matrix::from_fn(n, n, |i, k| vectors[k][i].clone());
    let weights = j
        .weights
        .iter()
        .map(|s| rat_from_string(s))
        .collect::<Result<Vec<_>, _>>()?;
    SplitNorm::new(j.p, basis, weights).map_err(|e| JsonError::BadObject(e.to_string()))
}

pub fn lattice_from_json(j: &SplitNormJson) -> Result<LatticePoint, JsonError> {
    LatticePoint::new(split_norm_from_json(j)?).map_err(|e| JsonError::BadObject(e.to_string()))
}

// -------------------------------------------------------------------
// Frames and flags.
// -------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct FrameJson {
    pub lines: Vec<Vec<String>>,
}

pub fn frame_to_json(f: &Frame<Rat>) -> FrameJson {
    FrameJson {
        lines: f
            .lines()
            .iter()
            .map(|l| l.basis_rows()[0].iter().map(rat_to_string).collect())
            .collect(),
    }
}

pub fn frame_from_json(j: &FrameJson) -> Result<Frame<Rat>, JsonError> {
    let n = j.lines.len();
    let lines = j
        .lines
        .iter()
        .map(|l| {
            let row = l
                .iter()
                .map(|s| rat_from_string(s))
                .collect::<Result<Vec<_>, _>>()?;
            span(&[row], n).map_err(|e| JsonError::BadObject(e.to_string()))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Frame::new(n, lines).map_err(|e| JsonError::BadObject(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FlagJson {
    pub chain: Vec<Vec<Vec<String>>>,
}

pub fn flag_to_json(f: &Flag<Rat>) -> FlagJson {
    FlagJson {
        chain: f
            .chain()
            .iter()
            .map(|s| matrix_to_rows(s.basis()))
            .collect(),
    }
}

/// The ambient dimension is read off the basis rows; an empty chain has no
/// ambient and is rejected.
pub fn flag_from_json(j: &FlagJson) -> Result<Flag<Rat>, JsonError> {
    let dim = j
        .chain
        .first()
        .and_then(|rows| rows.first())
        .map(|row| row.len())
        .ok_or_else(|| JsonError::BadObject("flag chain is empty".into()))?;
    let chain = j
        .chain
        .iter()
        .map(|rows| {
            let vecs = rows_to_vecs(rows)?;
            span(&vecs, dim).map_err(|e| JsonError::BadObject(e.to_string()))
        })
        .collect::<Result<Vec<Subspace<Rat>>, JsonError>>()?;
    Flag::new(dim, chain).map_err(|e| JsonError::BadObject(e.to_string()))
}

// -------------------------------------------------------------------
// Euclidean norms: {"gram": [[..]]} with decimal floats.
// -------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct EuclideanNormJson {
    pub gram: Vec<Vec<f64>>,
}

pub fn euclidean_to_json(a: &EuclideanNorm) -> EuclideanNormJson {
    let n = a.dim();
    EuclideanNormJson {
        gram: (0..n)
            .map(|i| (0..n).map(|j| a.gram()[(i, j)]).collect())
            .collect(),
    }
}

pub fn euclidean_from_json(j: &EuclideanNormJson) -> Result<EuclideanNorm, JsonError> {
    let n = j.gram.len();
    for r in &j.gram {
        if r.len() != n {
            return Err(JsonError::BadObject("gram must be square".into()));
        }
    }
    let gram = DMatrix::from_fn(n, n, |i, c| j.gram[i][c]);
    EuclideanNorm::new(gram).map_err(|e| JsonError::BadObject(e.to_string()))
}

// -------------------------------------------------------------------
// Rational matrices (group elements, Moy-Prasad generators).
// -------------------------------------------------------------------

pub fn qmatrix_to_json(m: &Matrix<Rat>) -> Vec<Vec<String>> {
    matrix_to_rows(m)
}

pub fn qmatrix_from_json(rows: &[Vec<String>]) -> Result<Matrix<Rat>, JsonError> {
    let vecs = rows_to_vecs(rows)?;
    Ok(Matrix::from_rows(vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_filtration, random_split_norm};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    proptest! {
        #[test]
        fn filtration_round_trip(seed in 0u64..200) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let f = random_filtration(&mut rng, 3);
            let json = serde_json::to_string(&filtration_to_json(&f)).unwrap();
            let parsed: FiltrationJson = serde_json::from_str(&json).unwrap();
            let back = filtration_from_json(&parsed).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn split_norm_round_trip(seed in 0u64..200) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let a = random_split_norm(&mut rng, 2, 3);
            let json = serde_json::to_string(&split_norm_to_json(&a)).unwrap();
            let parsed: SplitNormJson = serde_json::from_str(&json).unwrap();
            let back = split_norm_from_json(&parsed).unwrap();
            // bit-exact representation round trip
            prop_assert_eq!(back.basis(), a.basis());
            prop_assert_eq!(back.weights(), a.weights());
        }
    }

    #[test]
    fn fraction_strings() {
        use crate::field::rat;
        assert_eq!(rat_to_string(&rat(-1, 2)), "-1/2");
        assert_eq!(rat_to_string(&rat(3, 1)), "3");
        assert_eq!(rat_from_string("7/4").unwrap(), rat(7, 4));
        assert_eq!(rat_from_string("-5").unwrap(), rat(-5, 1));
        assert!(rat_from_string("a/b").is_err());
    }

    #[test]
    fn malformed_objects_rejected() {
        let bad = FiltrationJson {
            dim: 2,
            steps: vec![StepJson {
                weight: "0".into(),
                basis: vec![vec!["1".into(), "0".into()]],
            }],
        };
        // first step is not the full space
        assert!(filtration_from_json(&bad).is_err());
    }
}
