//! Exact Gaussian elimination over `Scalar`, and the reduction of linear
//! identities between rational functions to scalar equations.

use crate::polyrat::{Poly, RatL};
use crate::scalars::Scalar;

/// Outcome of solving `A c = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    /// Consistent, with the given nullity; the vector is one particular solution.
    Underdetermined(Vec<Scalar>, usize),
    Inconsistent,
}

/// Row-reduce in place; returns the pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Solve `A c = b` for rows `(A_i, b_i)`; `zero` fixes the field.
pub fn solve(rows: Vec<(Vec<Scalar>, Scalar)>, ncols: usize, zero: &Scalar) -> Solution {
    let mut aug: Vec<Vec<Scalar>> = rows
        .into_iter()
        .filter(|(a, b)| !b.is_zero() || a.iter().any(|x| !x.is_zero()))
        .map(|(mut a, b)| {
            a.push(b);
            a
        })
        .collect();
    let pivots = row_reduce(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![zero.clone(); ncols];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined(x, ncols - pivots.len())
    }
}

/// Basis of `{c : A c = 0}`.
pub fn nullspace(mut rows: Vec<Vec<Scalar>>, ncols: usize, zero: &Scalar) -> Vec<Vec<Scalar>> {
    let pivots = row_reduce(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = zero.one_like();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = row[f].neg_ref();
            }
            v
        })
        .collect()
}

/// Smallest common multiple of the denominators, found by skipping those that
/// already divide the running product.
pub fn common_denominator<'a>(dens: impl IntoIterator<Item = &'a Poly>) -> Option<Poly> {
    let mut acc: Option<Poly> = None;
    for d in dens {
        acc = Some(match acc {
            None => d.clone(),
            Some(a) => {
                if d.is_constant() || a.try_exact_div(d).is_some() {
                    a
                } else {
                    let g = Poly::gcd(&a, d);
                    a.mul(&d.exact_div(&g))
                }
            }
        });
    }
    acc
}

/// Scalar equations equivalent to `Σ_t c_t cands[t][e] = target[e]` for every
/// position `e`: each position is cleared of denominators and compared
/// coefficient by coefficient in `λ`.
pub fn rational_rows(cands: &[Vec<RatL>], target: &[RatL]) -> Vec<(Vec<Scalar>, Scalar)> {
    let l = target
        .first()
        .map(RatL::conductor)
        .or_else(|| cands.first().and_then(|c| c.first()).map(RatL::conductor))
        .unwrap_or(1);
    let zero = Scalar::zero(l);
    let mut out = Vec::new();
    for e in 0..target.len() {
        let dens = cands
            .iter()
            .map(|c| c[e].den())
            .chain(std::iter::once(target[e].den()));
        let big = common_denominator(dens).expect("at least the target");
        let scaled = |f: &RatL| f.num().mul(&big.exact_div(f.den()));
        let cols: Vec<Poly> = cands.iter().map(|c| scaled(&c[e])).collect();
        let rhs = scaled(&target[e]);
        let deg = cols
            .iter()
            .chain(std::iter::once(&rhs))
            .filter_map(Poly::degree)
            .max();
        let Some(deg) = deg else { continue };
        for k in 0..=deg {
            let row: Vec<Scalar> = cols
                .iter()
                .map(|p| p.coeff(k).cloned().unwrap_or_else(|| zero.clone()))
                .collect();
            let b = rhs.coeff(k).cloned().unwrap_or_else(|| zero.clone());
            if !b.is_zero() || row.iter().any(|x| !x.is_zero()) {
                out.push((row, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(1, v)
    }

    #[test]
    fn solves_small_system() {
        let rows = vec![(vec![s(1), s(1)], s(3)), (vec![s(1), s(-1)], s(1))];
        assert_eq!(solve(rows, 2, &s(0)), Solution::Unique(vec![s(2), s(1)]));
        let bad = vec![(vec![s(1), s(1)], s(3)), (vec![s(2), s(2)], s(1))];
        assert_eq!(solve(bad, 2, &s(0)), Solution::Inconsistent);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let ns = nullspace(vec![vec![s(1), s(2), s(3)]], 3, &s(0));
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = &(&v[0] + &(&s(2) * &v[1])) + &(&s(3) * &v[2]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn rational_identity_rows() {
        // c0/λ + c1 λ = (1 + λ²)/λ
        let l = 1;
        let cands = vec![vec![RatL::monomial(s(1), -1)], vec![RatL::lambda(l)]];
        let target = vec![&RatL::monomial(s(1), -1) + &RatL::lambda(l)];
        let rows = rational_rows(&cands, &target);
        assert_eq!(solve(rows, 2, &s(0)), Solution::Unique(vec![s(1), s(1)]));
    }
}
