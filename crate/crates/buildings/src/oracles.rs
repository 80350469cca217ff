//! Brute-force reference implementations used to cross-check the fast
//! paths. These deliberately share no code with the implementations they
//! verify: the Cartan invariant is recomputed from tropical minors, the
//! dominance order from convex-hull membership, and the type pairing from
//! an explicit sweep over permutations.

use num_traits::Zero;

use crate::field::Rat;
use crate::filtration::TypeVector;
use crate::linalg::Matrix;
use crate::valnorm::vp_rat;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn minor(m: &Matrix<Rat>, rows: &[usize], cols: &[usize]) -> Rat {
    let k = rows.len();
    Matrix::from_fn(k, k, |i, j| m[(rows[i], cols[j])].clone()).det()
}

/// The Cartan invariant of two split norms from tropical minors of the
/// change-of-basis matrix `m = A⁻¹B`:
/// the partial sum `s_k` of the `k` smallest entries equals
/// `min over k×k minors of (v_p(det m_{I,J}) + Σ_I a_i − Σ_J b_j)`.
pub fn cartan_minors_oracle(
    m: &Matrix<Rat>,
    a_weights: &[Rat],
    b_weights: &[Rat],
    p: u64,
) -> TypeVector {
    let n = a_weights.len();
    let mut partials = vec![Rat::zero()];
    for k in 1..=n {
        let mut best: Option<Rat> = None;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let det = minor(m, &rows, &cols);
                let Some(v) = vp_rat(&det, p) else { continue };
                let mut value = Rat::from_integer(v.into());
                for &i in &rows {
                    value += a_weights[i].clone();
                }
                for &j in &cols {
                    value -= b_weights[j].clone();
                }
                best = Some(match best {
                    Some(b) if b <= value => b,
                    _ => value,
                });
            }
        }
        partials.push(best.expect("an invertible matrix has nonsingular minors"));
    }
    let entries = (1..=n)
        .map(|k| partials[k].clone() - partials[k - 1].clone())
        .collect();
    TypeVector::new(entries)
}

/// Exact membership of `x` in the convex hull of the permutation orbit of
/// `y`, by orientation tests in the equal-sum plane. `n = 3` only.
pub fn hull_membership(x: &TypeVector, y: &TypeVector) -> bool {
    assert_eq!(x.len(), 3, "hull oracle is implemented for n = 3");
    if x.total() != y.total() {
        return false;
    }
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let pts: Vec<(Rat, Rat)> = perms
        .iter()
        .map(|p| (y.values()[p[0]].clone(), y.values()[p[1]].clone()))
        .collect();
    let q = (x.values()[0].clone(), x.values()[1].clone());
    // bounding box rules out points beyond the segment in flat orbits
    for dim in 0..2 {
        let coord = |p: &(Rat, Rat)| if dim == 0 { p.0.clone() } else { p.1.clone() };
        let qs = coord(&q);
        if pts.iter().all(|p| coord(p) < qs) || pts.iter().all(|p| coord(p) > qs) {
            return false;
        }
    }
    let cross = |o: &(Rat, Rat), a: &(Rat, Rat), b: &(Rat, Rat)| -> Rat {
        (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
            - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
    };
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i == j {
                continue;
            }
            let side: Vec<Rat> = pts.iter().map(|p| cross(&pts[i], &pts[j], p)).collect();
            if side.iter().all(|s| *s >= Rat::zero()) {
                // a supporting edge: x must lie weakly inside
                if cross(&pts[i], &pts[j], &q) < Rat::zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// `max over permutations σ of Σ x_i y_{σ(i)}`, the angle-rigidity side of
/// the type pairing.
pub fn permutation_max_pairing(x: &TypeVector, y: &TypeVector) -> Rat {
    assert_eq!(x.len(), y.len());
    permutations(x.len())
        .into_iter()
        .map(|p| {
            (0..x.len()).fold(Rat::zero(), |acc, i| {
                acc + x.values()[i].clone() * y.values()[p[i]].clone()
            })
        })
        .max()
        .expect("at least one permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rint;

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0).len(), 1);
        assert_eq!(subsets(3, 3).len(), 1);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn permutation_max_matches_sorted_alignment() {
        let x = TypeVector::new(vec![rint(0), rint(1), rint(2)]);
        assert_eq!(permutation_max_pairing(&x, &x), rint(5));
    }
}
