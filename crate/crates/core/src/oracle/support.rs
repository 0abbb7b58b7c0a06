//! Exact Nash equilibria by support enumeration.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::scalar::Scalar;
use crate::strategy::{MixedStrategy, StrategyProfile};

/// Largest dimension the enumerator accepts.
pub const MAX_ENUMERATION_DIM: usize = 8;

const BEST_RESPONSE_TOL: f64 = 1e-8;
const DUPLICATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct NashCertificate<T> {
    pub profile: StrategyProfile<T>,
    pub row_payoff: T,
    pub col_payoff: T,
    pub row_support: Vec<usize>,
    pub col_support: Vec<usize>,
}

/// All index subsets of `0..n` with `k` elements, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Solves the square system `a · z = b` by Gaussian elimination with partial
/// pivoting. `None` if the matrix is numerically singular.
pub(crate) fn solve_linear<T: Scalar>(mut a: Array2<T>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    let scale = a.iter().fold(T::zero(), |acc, v| acc.max(v.abs())).max(T::one());
    let tol = T::pivot_tol() * scale;
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&p, &q| a[[p, col]].abs().partial_cmp(&a[[q, col]].abs()).unwrap())?;
        if a[[pivot_row, col]].abs() <= tol {
            return None;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap([pivot_row, k], [col, k]);
            }
            b.swap(pivot_row, col);
        }
        for row in col + 1..n {
            let f = a[[row, col]] / a[[col, col]];
            if f != T::zero() {
                for k in col..n {
                    a[[row, k]] = a[[row, k]] - f * a[[col, k]];
                }
                b[row] = b[row] - f * b[col];
            }
        }
    }
    let mut z = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc - a[[row, k]] * z[k];
        }
        z[row] = acc / a[[row, row]];
    }
    Some(z)
}

/// Mixes the opponent's strategy on `mix` so that every own strategy in
/// `indifferent` earns the same payoff from `payoff` (rows = own strategies,
/// columns = opponent strategies). Returns (probabilities on `mix`, payoff).
fn indifference<T: Scalar>(
    payoff: &Array2<T>,
    indifferent: &[usize],
    mix: &[usize],
) -> Option<(Vec<T>, T)> {
    let k = mix.len();
    let mut a = Array2::<T>::zeros((k + 1, k + 1));
    let mut b = vec![T::zero(); k + 1];
    for (e, &own) in indifferent.iter().enumerate() {
        for (t, &other) in mix.iter().enumerate() {
            a[[e, t]] = payoff[[own, other]];
        }
        a[[e, k]] = -T::one();
    }
    for t in 0..k {
        a[[k, t]] = T::one();
    }
    b[k] = T::one();
    let z = solve_linear(a, b)?;
    Some((z[..k].to_vec(), z[k]))
}

fn to_strategy<T: Scalar>(probs_on_support: &[T], support: &[usize], dim: usize) -> Option<MixedStrategy<T>> {
    let tol = T::lit(BEST_RESPONSE_TOL);
    if probs_on_support.iter().any(|p| *p < -tol || !p.is_finite()) {
        return None;
    }
    let mut full = vec![T::zero(); dim];
    for (&p, &i) in probs_on_support.iter().zip(support) {
        full[i] = p.max(T::zero());
    }
    MixedStrategy::from_weights(&full).ok()
}

fn close<T: Scalar>(a: &MixedStrategy<T>, b: &MixedStrategy<T>) -> bool {
    let tol = T::lit(DUPLICATE_TOL);
    a.probs().iter().zip(b.probs()).all(|(p, q)| (*p - *q).abs() <= tol)
}

/// Every equilibrium whose supports have equal size at most `max_support`,
/// found by solving the indifference conditions for each support pair.
///
/// Support pairs whose indifference system is singular are skipped.
pub fn exact_nash_support_enumeration<T: Scalar>(
    game: &BimatrixGame<T>,
    max_support: usize,
) -> Result<Vec<NashCertificate<T>>> {
    let (m, n) = game.dims();
    if m > MAX_ENUMERATION_DIM || n > MAX_ENUMERATION_DIM {
        return Err(Error::SizeGuard(format!(
            "{m}x{n} game exceeds {MAX_ENUMERATION_DIM}x{MAX_ENUMERATION_DIM}"
        )));
    }
    if max_support == 0 || max_support > m.min(n) {
        return Err(Error::InvalidParameter(format!(
            "max_support {max_support} not in 1..={}",
            m.min(n)
        )));
    }
    let r = game.row_payoffs();
    let c_t = game.col_payoffs().t().to_owned();
    let tol = T::lit(BEST_RESPONSE_TOL);

    let mut found: Vec<NashCertificate<T>> = Vec::new();
    for size in 1..=max_support {
        let row_sets = subsets(m, size);
        let col_sets = subsets(n, size);
        for rs in &row_sets {
            for cs in &col_sets {
                let Some((y_on, u)) = indifference(r, rs, cs) else {
                    continue;
                };
                let Some((x_on, v)) = indifference(&c_t, cs, rs) else {
                    continue;
                };
                let (Some(x), Some(y)) = (to_strategy(&x_on, rs, m), to_strategy(&y_on, cs, n)) else {
                    continue;
                };
                let row_pay = game.pure_row_payoffs(&y)?;
                let col_pay = game.pure_col_payoffs(&x)?;
                if row_pay.iter().any(|p| *p > u + tol) || col_pay.iter().any(|p| *p > v + tol) {
                    continue;
                }
                if found.iter().any(|f| close(&f.profile.row, &x) && close(&f.profile.col, &y)) {
                    continue;
                }
                let profile = StrategyProfile::new(x, y);
                let (row_payoff, col_payoff) = game.expected_payoffs(&profile)?;
                found.push(NashCertificate {
                    row_support: profile.row.support(),
                    col_support: profile.col.support(),
                    profile,
                    row_payoff,
                    col_payoff,
                });
            }
        }
    }
    Ok(found)
}
