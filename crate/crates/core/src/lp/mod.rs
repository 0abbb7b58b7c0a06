//! Linear-programming primitives: exact zero-sum equilibria and the
//! low-threat mixture feasibility system.

pub mod simplex;

use ndarray::{Array1, Array2, Axis};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::strategy::MixedStrategy;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    pub feasibility_tol: T,
    pub value_tol: T,
    pub max_iterations: usize,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            feasibility_tol: T::feasibility_tol(),
            value_tol: T::value_tol(),
            max_iterations: 10_000,
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.feasibility_tol > T::zero()) || !(self.value_tol > T::zero()) {
            return Err(Error::InvalidParameter("solver tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Equilibrium of the zero-sum game `(M, -M)`: `x` maximizes the row
/// player's guaranteed payoff, `y` minimizes what the row player can get.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumSolution<T> {
    pub x: MixedStrategy<T>,
    pub y: MixedStrategy<T>,
    pub value: T,
}

impl<T: Scalar> ZeroSumSolution<T> {
    /// `min_j (x^T M)_j`: what `x` guarantees against every column.
    pub fn guaranteed(&self, m: &Array2<T>) -> T {
        self.x.probs().dot(m).iter().copied().fold(T::infinity(), T::min)
    }

    /// `max_i (M y)_i`: the best the row player can do against `y`.
    pub fn conceded(&self, m: &Array2<T>) -> T {
        m.dot(self.y.probs()).iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// Solves the zero-sum game with row-player payoff matrix `m`.
///
/// The matrix is shifted to be strictly positive and the game is solved as
/// `max 1·w  s.t.  M' w <= 1, w >= 0`; `y` is the normalized primal and `x`
/// the normalized dual. Both certificates are checked against `value_tol`
/// before returning.
pub fn solve_zero_sum<T: Scalar>(m: &Array2<T>, cfg: &SolverConfig<T>) -> Result<ZeroSumSolution<T>> {
    cfg.validate()?;
    let (rows, cols) = m.dim();
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyGame);
    }
    if let Some(((row, col), _)) = m.indexed_iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { row, col });
    }
    let lo = m.iter().copied().fold(T::infinity(), T::min);
    let hi = m.iter().copied().fold(T::neg_infinity(), T::max);
    if hi - lo <= T::zero() {
        // every strategy is optimal; pick the uniform pair
        return Ok(ZeroSumSolution {
            x: MixedStrategy::uniform(rows),
            y: MixedStrategy::uniform(cols),
            value: lo,
        });
    }

    let shift = T::one() - lo;
    let shifted = m.mapv(|v| v + shift);
    let lp = simplex::maximize(
        &shifted,
        &Array1::ones(rows),
        &Array1::ones(cols),
        cfg.max_iterations,
    )?;
    if !(lp.objective > T::zero()) {
        return Err(Error::SolverFailure("degenerate zero-sum optimum".into()));
    }
    let y = MixedStrategy::from_weights(lp.primal.as_slice().unwrap())?;
    let x = MixedStrategy::from_weights(lp.dual.as_slice().unwrap())?;
    let value = T::one() / lp.objective - shift;
    let sol = ZeroSumSolution { x, y, value };

    let guaranteed = sol.guaranteed(m);
    let conceded = sol.conceded(m);
    if guaranteed < value - cfg.value_tol || conceded > value + cfg.value_tol {
        return Err(Error::SolverFailure(format!(
            "certificate check failed: value {value}, max-min {guaranteed}, min-max {conceded}"
        )));
    }
    Ok(sol)
}

/// Over row mixtures supported on `allowed_rows`, finds one minimizing the
/// column player's best payoff `max_j (x^T C)_j`. Returns it lifted to all
/// rows, together with that payoff.
pub fn min_threat_mixture<T: Scalar>(
    c: &Array2<T>,
    allowed_rows: &[usize],
    cfg: &SolverConfig<T>,
) -> Result<(MixedStrategy<T>, T)> {
    validate_rows(allowed_rows, c.nrows())?;
    let restricted = c.select(Axis(0), allowed_rows).mapv(|v| -v);
    let sol = solve_zero_sum(&restricted, cfg)?;
    let x = sol.x.lift(allowed_rows, c.nrows())?;
    let threat = x.probs().dot(c).iter().copied().fold(T::neg_infinity(), T::max);
    Ok((x, threat))
}

/// Looks for `x'` with support inside `allowed_rows` such that every column
/// pays the column player at most `threshold` (up to `feasibility_tol`).
///
/// `Ok(None)` means the system is infeasible; solver breakdown is an error.
pub fn find_low_threat_mixture<T: Scalar>(
    c: &Array2<T>,
    allowed_rows: &[usize],
    threshold: T,
    cfg: &SolverConfig<T>,
) -> Result<Option<MixedStrategy<T>>> {
    if !(threshold >= T::zero() && threshold <= T::one()) {
        return Err(Error::InvalidParameter(format!("threshold {threshold} not in [0, 1]")));
    }
    let (x, threat) = min_threat_mixture(c, allowed_rows, cfg)?;
    Ok((threat <= threshold + cfg.feasibility_tol).then_some(x))
}

fn validate_rows(rows: &[usize], bound: usize) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidIndexSet("row set is empty".into()));
    }
    if let Some(bad) = rows.iter().find(|&&i| i >= bound) {
        return Err(Error::InvalidIndexSet(format!("row {bad} out of range {bound}")));
    }
    let mut sorted = rows.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != rows.len() {
        return Err(Error::InvalidIndexSet("duplicate rows".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn cfg() -> SolverConfig<f64> {
        SolverConfig::default()
    }

    #[test]
    fn matching_pennies_value() {
        let s = solve_zero_sum(&array![[1.0, 0.0], [0.0, 1.0]], &cfg()).unwrap();
        assert_abs_diff_eq!(s.value, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.x.get(0), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.y.get(0), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn asymmetric_two_by_two() {
        // row indifference: 0.9p + 0.2(1-p) = 0.4p + 0.8(1-p) -> p = 6/11
        // column indifference: 0.9q + 0.4(1-q) = 0.2q + 0.8(1-q) -> q = 4/11
        let m = array![[0.9, 0.4], [0.2, 0.8]];
        let s = solve_zero_sum(&m, &cfg()).unwrap();
        assert_abs_diff_eq!(s.value, 32.0 / 55.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.x.get(0), 6.0 / 11.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.y.get(0), 4.0 / 11.0, epsilon = 1e-12);
        assert!(s.guaranteed(&m) >= s.value - 1e-12);
        assert!(s.conceded(&m) <= s.value + 1e-12);
    }

    #[test]
    fn constant_matrix_is_uniform() {
        let s = solve_zero_sum(&Array2::from_elem((2, 3), 0.7), &cfg()).unwrap();
        assert_eq!(s.value, 0.7);
        assert_eq!(s.x, MixedStrategy::uniform(2));
        assert_eq!(s.y, MixedStrategy::uniform(3));
    }

    #[test]
    fn dominated_rows_get_no_mass() {
        let m = array![[0.1, 0.2], [0.9, 0.8], [0.3, 0.3]];
        let s = solve_zero_sum(&m, &cfg()).unwrap();
        assert_eq!(s.x.support(), vec![1]);
        assert_eq!(s.y.support(), vec![1]);
        assert_abs_diff_eq!(s.value, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(solve_zero_sum(&array![[f64::NAN]], &cfg()).is_err());
    }

    #[test]
    fn low_threat_examples() {
        let c = array![[0.6, 0.4], [0.4, 0.6]];
        let x = find_low_threat_mixture(&c, &[0, 1], 0.5, &cfg()).unwrap().unwrap();
        assert_abs_diff_eq!(x.get(0), 0.5, epsilon = 1e-12);

        let ones = Array2::<f64>::ones((3, 2));
        assert!(find_low_threat_mixture(&ones, &[0, 2], 0.5, &cfg()).unwrap().is_none());

        let zeros = Array2::<f64>::zeros((3, 2));
        let x = find_low_threat_mixture(&zeros, &[0], 0.5, &cfg()).unwrap().unwrap();
        assert_eq!(x.to_vec(), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn low_threat_respects_allowed_rows() {
        let c = array![[0.9, 0.9], [0.1, 0.1], [0.2, 0.8]];
        assert!(find_low_threat_mixture(&c, &[0, 2], 0.5, &cfg()).unwrap().is_none());
        let x = find_low_threat_mixture(&c, &[0, 1], 0.5, &cfg()).unwrap().unwrap();
        assert_eq!(x.get(2), 0.0);
    }

    #[test]
    fn low_threat_errors() {
        let c = array![[0.5]];
        assert!(find_low_threat_mixture(&c, &[], 0.5, &cfg()).is_err());
        assert!(find_low_threat_mixture(&c, &[1], 0.5, &cfg()).is_err());
        assert!(find_low_threat_mixture(&c, &[0], 1.5, &cfg()).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let m = array![[0.9f32, 0.4], [0.2, 0.8]];
        let s = solve_zero_sum(&m, &SolverConfig::default()).unwrap();
        assert!((s.value - 32.0 / 55.0).abs() < 1e-5);
    }
}
