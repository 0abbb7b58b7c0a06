//! Dense tableau simplex for `max c·w  s.t.  A w <= b, w >= 0` with `b >= 0`.
//!
//! The origin is always feasible for this form, so a single phase suffices.
//! Pivoting follows Bland's rule, which rules out cycling on degenerate
//! problems and makes the result a deterministic function of the input.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct SimplexSolution<T> {
    /// Optimal primal point `w`.
    pub primal: Array1<T>,
    /// Optimal dual multipliers, one per constraint row.
    pub dual: Array1<T>,
    pub objective: T,
    pub iterations: usize,
}

/// Solves `max c·w` over `{w >= 0 : A w <= b}`.
///
/// Fails on an unbounded objective or when `max_iterations` pivots pass
/// without reaching optimality.
pub fn maximize<T: Scalar>(
    a: &Array2<T>,
    b: &Array1<T>,
    c: &Array1<T>,
    max_iterations: usize,
) -> Result<SimplexSolution<T>> {
    let (rows, vars) = a.dim();
    assert_eq!(b.len(), rows, "rhs length");
    assert_eq!(c.len(), vars, "objective length");
    if b.iter().any(|v| *v < T::zero()) {
        return Err(Error::SolverFailure("right-hand side must be nonnegative".into()));
    }

    let width = vars + rows;
    // Constraint rows hold [A | I | b]; the objective row holds reduced costs.
    let mut tab = Array2::<T>::zeros((rows, width + 1));
    for i in 0..rows {
        for j in 0..vars {
            tab[[i, j]] = a[[i, j]];
        }
        tab[[i, vars + i]] = T::one();
        tab[[i, width]] = b[i];
    }
    let mut reduced = Array1::<T>::zeros(width + 1);
    for j in 0..vars {
        reduced[j] = c[j];
    }
    let mut basis: Vec<usize> = (vars..width).collect();
    let tol = T::pivot_tol();

    let mut iterations = 0;
    while let Some(enter) = (0..width).find(|&j| reduced[j] > tol) {
        if iterations >= max_iterations {
            return Err(Error::SolverFailure(format!(
                "no optimum after {max_iterations} pivots"
            )));
        }

        let mut leave: Option<(usize, T)> = None;
        for i in 0..rows {
            let coef = tab[[i, enter]];
            if coef > tol {
                let ratio = tab[[i, width]] / coef;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        if ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[best]) {
                            Some((i, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
        }
        let Some((pivot_row, _)) = leave else {
            return Err(Error::SolverFailure("objective is unbounded".into()));
        };

        pivot(&mut tab, &mut reduced, pivot_row, enter);
        basis[pivot_row] = enter;
        iterations += 1;
    }

    let mut primal = Array1::<T>::zeros(vars);
    for (i, &var) in basis.iter().enumerate() {
        if var < vars {
            primal[var] = tab[[i, width]].max(T::zero());
        }
    }
    let mut dual = Array1::<T>::zeros(rows);
    for i in 0..rows {
        let slack = vars + i;
        if !basis.contains(&slack) {
            dual[i] = (-reduced[slack]).max(T::zero());
        }
    }
    Ok(SimplexSolution {
        objective: c.dot(&primal),
        primal,
        dual,
        iterations,
    })
}

fn pivot<T: Scalar>(tab: &mut Array2<T>, reduced: &mut Array1<T>, row: usize, col: usize) {
    let width = tab.ncols();
    let p = tab[[row, col]];
    for k in 0..width {
        tab[[row, k]] = tab[[row, k]] / p;
    }
    tab[[row, col]] = T::one();
    for i in 0..tab.nrows() {
        if i == row {
            continue;
        }
        let factor = tab[[i, col]];
        if factor != T::zero() {
            for k in 0..width {
                tab[[i, k]] = tab[[i, k]] - factor * tab[[row, k]];
            }
            tab[[i, col]] = T::zero();
        }
    }
    let factor = reduced[col];
    if factor != T::zero() {
        for k in 0..width {
            reduced[k] = reduced[k] - factor * tab[[row, k]];
        }
        reduced[col] = T::zero();
    }
}
