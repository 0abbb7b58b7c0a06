//! Bimatrix games, normalization and payoff evaluation.

use ndarray::{Array1, Array2, Axis};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::strategy::{MixedStrategy, StrategyProfile};

/// A two-player game `(R, C)` with every payoff in `[0, 1]`.
///
/// `R[i][j]` is the row player's payoff and `C[i][j]` the column player's
/// when row `i` meets column `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixGame<T> {
    r: Array2<T>,
    c: Array2<T>,
}

/// How raw payoffs were mapped into `[0, 1]`: `stored = (raw - shift) / scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationRecord<T> {
    pub row_shift: T,
    pub row_scale: T,
    pub col_shift: T,
    pub col_scale: T,
    pub degenerate_row: bool,
    pub degenerate_col: bool,
}

fn check_finite<T: Scalar>(m: &Array2<T>) -> Result<()> {
    for ((row, col), v) in m.indexed_iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite { row, col });
        }
    }
    Ok(())
}

fn check_shapes<T>(r: &Array2<T>, c: &Array2<T>) -> Result<()> {
    if r.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("{:?}", r.dim()),
            actual: format!("{:?}", c.dim()),
        });
    }
    if r.nrows() == 0 || r.ncols() == 0 {
        return Err(Error::EmptyGame);
    }
    Ok(())
}

/// Converts a list of rows into a matrix, rejecting ragged input.
pub fn matrix_from_rows<T: Scalar>(rows: &[Vec<T>]) -> Result<Array2<T>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err(Error::EmptyGame);
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: format!("{n} columns"),
            actual: format!("{} columns", bad.len()),
        });
    }
    let flat: Vec<T> = rows.iter().flatten().copied().collect();
    Ok(Array2::from_shape_vec((m, n), flat).expect("shape checked above"))
}

/// Maps one matrix affinely onto `[0, 1]`. Returns (matrix, shift, scale, degenerate).
fn normalize_one<T: Scalar>(raw: &Array2<T>) -> (Array2<T>, T, T, bool) {
    let lo = raw.iter().copied().fold(T::infinity(), T::min);
    let hi = raw.iter().copied().fold(T::neg_infinity(), T::max);
    let range = hi - lo;
    if range <= T::zero() {
        return (Array2::zeros(raw.dim()), lo, T::one(), true);
    }
    let scaled = raw.mapv(|v| ((v - lo) / range).max(T::zero()).min(T::one()));
    (scaled, lo, range, false)
}

/// Shifts each raw matrix by its minimum and divides by its range.
///
/// A constant matrix becomes all zeros with scale 1 and the degenerate flag
/// set. Each player's best-response order is unchanged.
pub fn normalize<T: Scalar>(
    raw_r: &Array2<T>,
    raw_c: &Array2<T>,
) -> Result<(BimatrixGame<T>, NormalizationRecord<T>)> {
    check_shapes(raw_r, raw_c)?;
    check_finite(raw_r)?;
    check_finite(raw_c)?;
    let (r, row_shift, row_scale, degenerate_row) = normalize_one(raw_r);
    let (c, col_shift, col_scale, degenerate_col) = normalize_one(raw_c);
    let record = NormalizationRecord {
        row_shift,
        row_scale,
        col_shift,
        col_scale,
        degenerate_row,
        degenerate_col,
    };
    Ok((BimatrixGame { r, c }, record))
}

impl<T: Scalar> BimatrixGame<T> {
    /// Wraps already-normalized payoff matrices.
    pub fn new(r: Array2<T>, c: Array2<T>) -> Result<Self> {
        check_shapes(&r, &c)?;
        check_finite(&r)?;
        check_finite(&c)?;
        for m in [&r, &c] {
            for ((row, col), v) in m.indexed_iter() {
                if *v < T::zero() || *v > T::one() {
                    return Err(Error::OutOfRange {
                        row,
                        col,
                        value: v.as_f64(),
                    });
                }
            }
        }
        Ok(Self { r, c })
    }

    pub fn from_rows(r: &[Vec<T>], c: &[Vec<T>]) -> Result<Self> {
        Self::new(matrix_from_rows(r)?, matrix_from_rows(c)?)
    }

    /// The zero-sum-like game `(M, 1 - M)`.
    pub fn constant_sum(m: Array2<T>) -> Result<Self> {
        let c = m.mapv(|v| T::one() - v);
        Self::new(m, c)
    }

    pub fn rows(&self) -> usize {
        self.r.nrows()
    }

    pub fn cols(&self) -> usize {
        self.r.ncols()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.r.dim()
    }

    pub fn row_payoffs(&self) -> &Array2<T> {
        &self.r
    }

    pub fn col_payoffs(&self) -> &Array2<T> {
        &self.c
    }

    /// The game seen from the other side: `(C^T, R^T)`.
    pub fn transposed(&self) -> Self {
        Self {
            r: self.c.t().to_owned(),
            c: self.r.t().to_owned(),
        }
    }

    /// Rows of the game at `rows`, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            r: self.r.select(Axis(0), rows),
            c: self.c.select(Axis(0), rows),
        }
    }

    fn check_dim(expected: usize, s: &MixedStrategy<T>, who: &str) -> Result<()> {
        if s.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected: format!("{who} strategy of dimension {expected}"),
                actual: format!("{}", s.dim()),
            });
        }
        Ok(())
    }

    /// `rpay(e_i, y)` for every row `i`.
    pub fn pure_row_payoffs(&self, y: &MixedStrategy<T>) -> Result<Array1<T>> {
        Self::check_dim(self.cols(), y, "column")?;
        Ok(self.r.dot(y.probs()))
    }

    /// `cpay(x, e_j)` for every column `j`.
    pub fn pure_col_payoffs(&self, x: &MixedStrategy<T>) -> Result<Array1<T>> {
        Self::check_dim(self.rows(), x, "row")?;
        Ok(x.probs().dot(&self.c))
    }

    /// `(x^T R y, x^T C y)`.
    pub fn expected_payoffs(&self, p: &StrategyProfile<T>) -> Result<(T, T)> {
        let row = self.pure_row_payoffs(&p.col)?;
        Self::check_dim(self.rows(), &p.row, "row")?;
        let col = p.row.probs().dot(&self.c);
        Ok((p.row.probs().dot(&row), col.dot(p.col.probs())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn strategy(v: &[f64]) -> MixedStrategy<f64> {
        MixedStrategy::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_affine_map() {
        let raw = array![[2.0, 4.0], [4.0, 2.0]];
        let (g, rec) = normalize(&raw, &raw).unwrap();
        assert_eq!(g.row_payoffs(), &array![[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(rec.row_shift, 2.0);
        assert_eq!(rec.row_scale, 2.0);
        assert!(!rec.degenerate_row);
    }

    #[test]
    fn normalize_constant_matrix() {
        let raw = array![[5.0, 5.0], [5.0, 5.0]];
        let other = array![[0.0, 1.0], [1.0, 0.0]];
        let (g, rec) = normalize(&raw, &other).unwrap();
        assert_eq!(g.row_payoffs(), &Array2::<f64>::zeros((2, 2)));
        assert!(rec.degenerate_row);
        assert_eq!(rec.row_scale, 1.0);
        assert!(!rec.degenerate_col);
    }

    #[test]
    fn normalize_identity_case() {
        let raw = array![[0.0, 0.3], [1.0, 0.7]];
        let (g, rec) = normalize(&raw, &raw).unwrap();
        assert_eq!(g.row_payoffs(), &raw);
        assert_eq!((rec.row_shift, rec.row_scale), (0.0, 1.0));
    }

    #[test]
    fn normalize_errors() {
        let a = array![[0.0, 1.0]];
        let b = array![[0.0], [1.0]];
        assert!(matches!(normalize(&a, &b), Err(Error::DimensionMismatch { .. })));
        let nan = array![[0.0, f64::INFINITY]];
        assert!(matches!(normalize(&a, &nan), Err(Error::NonFinite { row: 0, col: 1 })));
    }

    #[test]
    fn new_rejects_out_of_range() {
        let a = array![[0.0, 1.5]];
        assert!(matches!(
            BimatrixGame::new(a.clone(), a),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            BimatrixGame::<f64>::from_rows(&[vec![0.0], vec![0.0, 1.0]], &[vec![0.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn row_payoff_examples() {
        let id = array![[1.0, 0.0], [0.0, 1.0]];
        let g = BimatrixGame::new(id.clone(), id).unwrap();
        assert_eq!(g.pure_row_payoffs(&strategy(&[1.0, 0.0])).unwrap().to_vec(), vec![1.0, 0.0]);
        assert_eq!(g.pure_row_payoffs(&strategy(&[0.5, 0.5])).unwrap().to_vec(), vec![0.5, 0.5]);

        let r = array![[0.9, 0.4], [0.2, 0.8]];
        let g = BimatrixGame::new(r.clone(), r).unwrap();
        let p = g.pure_row_payoffs(&strategy(&[4.0 / 11.0, 7.0 / 11.0])).unwrap();
        // 0.9*4/11 + 0.4*7/11 = 6.4/11 = 32/55; 0.2*4/11 + 0.8*7/11 = 6.4/11
        assert_abs_diff_eq!(p[0], 32.0 / 55.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 32.0 / 55.0, epsilon = 1e-12);

        assert!(g.pure_row_payoffs(&strategy(&[1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn col_payoff_examples() {
        let c = array![[0.0, 1.0], [1.0, 0.0]];
        let g = BimatrixGame::new(c.clone(), c).unwrap();
        assert_eq!(g.pure_col_payoffs(&strategy(&[1.0, 0.0])).unwrap().to_vec(), vec![0.0, 1.0]);

        let c = array![[0.6, 0.4], [0.4, 0.6]];
        let g = BimatrixGame::new(c.clone(), c).unwrap();
        let p = g.pure_col_payoffs(&strategy(&[0.5, 0.5])).unwrap();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-12);

        let ones = Array2::<f64>::ones((2, 2));
        let g = BimatrixGame::new(ones.clone(), ones).unwrap();
        assert_eq!(g.pure_col_payoffs(&strategy(&[0.3, 0.7])).unwrap().to_vec(), vec![1.0, 1.0]);
    }

    #[test]
    fn expected_payoff_examples() {
        let g = BimatrixGame::from_rows(
            &[vec![1.0, 0.0], vec![0.0, 1.0]],
            &[vec![0.0, 1.0], vec![1.0, 0.0]],
        )
        .unwrap();
        let u = StrategyProfile::new(MixedStrategy::uniform(2), MixedStrategy::uniform(2));
        assert_eq!(g.expected_payoffs(&u).unwrap(), (0.5, 0.5));
        let pure = StrategyProfile::pure(2, 2, 0, 0);
        assert_eq!(g.expected_payoffs(&pure).unwrap(), (1.0, 0.0));

        let z = BimatrixGame::new(Array2::<f64>::zeros((2, 3)), Array2::zeros((2, 3))).unwrap();
        let p = StrategyProfile::new(MixedStrategy::uniform(2), MixedStrategy::uniform(3));
        assert_eq!(z.expected_payoffs(&p).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn transpose_and_select() {
        let g = BimatrixGame::from_rows(
            &[vec![0.1, 0.2], vec![0.3, 0.4], vec![0.5, 0.6]],
            &[vec![0.9, 0.8], vec![0.7, 0.6], vec![0.5, 0.4]],
        )
        .unwrap();
        let t = g.transposed();
        assert_eq!(t.dims(), (2, 3));
        assert_eq!(t.row_payoffs()[[1, 2]], 0.4);
        assert_eq!(t.col_payoffs()[[1, 2]], 0.6);
        let s = g.select_rows(&[2, 0]);
        assert_eq!(s.row_payoffs(), &array![[0.5, 0.6], [0.1, 0.2]]);
    }
}
