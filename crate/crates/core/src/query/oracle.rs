//! Payoff oracles: games whose entries are revealed one query at a time.

use std::collections::HashMap;
use std::ops::Sub;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::scalar::Scalar;

/// Reveals the payoff pair `(R_ij, C_ij)` of one pure profile per call.
pub trait PayoffOracle<T> {
    fn dims(&self) -> (usize, usize);
    fn query(&mut self, i: usize, j: usize) -> (T, T);

    /// Query accounting, when the oracle keeps any.
    fn stats(&self) -> Option<QueryStats> {
        None
    }
}

impl<T, O: PayoffOracle<T> + ?Sized> PayoffOracle<T> for &mut O {
    fn dims(&self) -> (usize, usize) {
        (**self).dims()
    }
    fn query(&mut self, i: usize, j: usize) -> (T, T) {
        (**self).query(i, j)
    }
    fn stats(&self) -> Option<QueryStats> {
        (**self).stats()
    }
}

/// Answers queries from a fully known game.
#[derive(Debug, Clone)]
pub struct MatrixOracle<T> {
    game: BimatrixGame<T>,
}

impl<T: Scalar> MatrixOracle<T> {
    pub fn new(game: BimatrixGame<T>) -> Self {
        Self { game }
    }

    pub fn game(&self) -> &BimatrixGame<T> {
        &self.game
    }
}

impl<T: Scalar> PayoffOracle<T> for MatrixOracle<T> {
    fn dims(&self) -> (usize, usize) {
        self.game.dims()
    }
    fn query(&mut self, i: usize, j: usize) -> (T, T) {
        (self.game.row_payoffs()[[i, j]], self.game.col_payoffs()[[i, j]])
    }
}

/// Presents the transposed game `(C^T, R^T)` of the wrapped oracle.
#[derive(Debug)]
pub struct Transposed<O>(pub O);

impl<T, O: PayoffOracle<T>> PayoffOracle<T> for Transposed<O> {
    fn dims(&self) -> (usize, usize) {
        let (m, n) = self.0.dims();
        (n, m)
    }
    fn query(&mut self, i: usize, j: usize) -> (T, T) {
        let (r, c) = self.0.query(j, i);
        (c, r)
    }
    fn stats(&self) -> Option<QueryStats> {
        self.0.stats()
    }
}

/// What a query is being spent on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    ZeroSumRow,
    ZeroSumCol,
    Subgame,
    Audit,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct QueryStats {
    pub total: u64,
    pub phase_zero_sum_r: u64,
    pub phase_zero_sum_c: u64,
    pub phase_subgame: u64,
    pub phase_audit: u64,
    /// Repeated queries answered from the memo at no cost.
    pub memo_hits: u64,
}

impl QueryStats {
    fn charge(&mut self, phase: Phase) {
        self.total += 1;
        match phase {
            Phase::ZeroSumRow => self.phase_zero_sum_r += 1,
            Phase::ZeroSumCol => self.phase_zero_sum_c += 1,
            Phase::Subgame => self.phase_subgame += 1,
            Phase::Audit => self.phase_audit += 1,
        }
    }
}

impl Sub for QueryStats {
    type Output = QueryStats;

    fn sub(self, rhs: QueryStats) -> QueryStats {
        QueryStats {
            total: self.total - rhs.total,
            phase_zero_sum_r: self.phase_zero_sum_r - rhs.phase_zero_sum_r,
            phase_zero_sum_c: self.phase_zero_sum_c - rhs.phase_zero_sum_c,
            phase_subgame: self.phase_subgame - rhs.phase_subgame,
            phase_audit: self.phase_audit - rhs.phase_audit,
            memo_hits: self.memo_hits - rhs.memo_hits,
        }
    }
}

/// Counts every query against the current phase. With memoization enabled,
/// repeated cells are answered from a cache and only tallied as memo hits.
#[derive(Debug)]
pub struct CountingOracle<T, O> {
    inner: O,
    stats: QueryStats,
    phase: Phase,
    memo: Option<HashMap<(usize, usize), (T, T)>>,
}

impl<T: Scalar, O: PayoffOracle<T>> CountingOracle<T, O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            stats: QueryStats::default(),
            phase: Phase::ZeroSumRow,
            memo: None,
        }
    }

    pub fn with_memoization(inner: O) -> Self {
        Self {
            memo: Some(HashMap::new()),
            ..Self::new(inner)
        }
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn counts(&self) -> QueryStats {
        self.stats
    }

    pub fn memoizing(&self) -> bool {
        self.memo.is_some()
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<T: Scalar, O: PayoffOracle<T>> PayoffOracle<T> for CountingOracle<T, O> {
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    fn query(&mut self, i: usize, j: usize) -> (T, T) {
        if let Some(memo) = &self.memo {
            if let Some(&v) = memo.get(&(i, j)) {
                self.stats.memo_hits += 1;
                return v;
            }
        }
        self.stats.charge(self.phase);
        let v = self.inner.query(i, j);
        if let Some(memo) = &mut self.memo {
            memo.insert((i, j), v);
        }
        v
    }

    fn stats(&self) -> Option<QueryStats> {
        Some(self.stats)
    }
}

/// The entries of a game learned so far. Reading an entry that was never
/// recorded is an error.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialGame<T> {
    known: Array2<bool>,
    r: Array2<T>,
    c: Array2<T>,
}

impl<T: Scalar> PartialGame<T> {
    pub fn new(m: usize, n: usize) -> Self {
        Self {
            known: Array2::from_elem((m, n), false),
            r: Array2::zeros((m, n)),
            c: Array2::zeros((m, n)),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.known.dim()
    }

    pub fn record(&mut self, i: usize, j: usize, (r, c): (T, T)) {
        self.known[[i, j]] = true;
        self.r[[i, j]] = r;
        self.c[[i, j]] = c;
    }

    pub fn is_known(&self, i: usize, j: usize) -> bool {
        self.known[[i, j]]
    }

    pub fn known_count(&self) -> usize {
        self.known.iter().filter(|k| **k).count()
    }

    pub fn get(&self, i: usize, j: usize) -> Result<(T, T)> {
        if !self.known[[i, j]] {
            return Err(Error::UnknownEntry { row: i, col: j });
        }
        Ok((self.r[[i, j]], self.c[[i, j]]))
    }

    pub fn row_known(&self, i: usize) -> bool {
        self.known.row(i).iter().all(|k| *k)
    }

    pub fn col_known(&self, j: usize) -> bool {
        self.known.column(j).iter().all(|k| *k)
    }

    /// The `rows × all columns` block of both matrices.
    pub fn rows_block(&self, rows: &[usize]) -> Result<(Array2<T>, Array2<T>)> {
        let n = self.dims().1;
        let mut r = Array2::zeros((rows.len(), n));
        let mut c = Array2::zeros((rows.len(), n));
        for (t, &i) in rows.iter().enumerate() {
            for j in 0..n {
                let (rv, cv) = self.get(i, j)?;
                r[[t, j]] = rv;
                c[[t, j]] = cv;
            }
        }
        Ok((r, c))
    }

    /// Queries every unknown cell in `rows × all columns`.
    pub fn fill_rows<O: PayoffOracle<T>>(&mut self, oracle: &mut O, rows: &[usize]) {
        let n = self.dims().1;
        for &i in rows {
            for j in 0..n {
                if !self.is_known(i, j) {
                    self.record(i, j, oracle.query(i, j));
                }
            }
        }
    }

    /// Queries every unknown cell in `all rows × cols`.
    pub fn fill_cols<O: PayoffOracle<T>>(&mut self, oracle: &mut O, cols: &[usize]) {
        let m = self.dims().0;
        for &j in cols {
            for i in 0..m {
                if !self.is_known(i, j) {
                    self.record(i, j, oracle.query(i, j));
                }
            }
        }
    }

    /// The whole game, if every entry is known.
    pub fn to_game(&self) -> Result<BimatrixGame<T>> {
        if let Some(((row, col), _)) = self.known.indexed_iter().find(|(_, k)| !**k) {
            return Err(Error::UnknownEntry { row, col });
        }
        BimatrixGame::new(self.r.clone(), self.c.clone())
    }
}

/// Queries all of `row_support × [n]` and returns the partially known game
/// together with the queries this cost.
pub fn build_queried_subgame<T: Scalar, O: PayoffOracle<T>>(
    oracle: &mut O,
    row_support: &[usize],
) -> Result<(PartialGame<T>, QueryStats)> {
    let (m, n) = oracle.dims();
    if row_support.is_empty() {
        return Err(Error::InvalidIndexSet("row support is empty".into()));
    }
    if let Some(bad) = row_support.iter().find(|&&i| i >= m) {
        return Err(Error::InvalidIndexSet(format!("row {bad} out of range {m}")));
    }
    let before = oracle.stats().unwrap_or_default();
    let mut partial = PartialGame::new(m, n);
    for &i in row_support {
        for j in 0..n {
            partial.record(i, j, oracle.query(i, j));
        }
    }
    let after = oracle.stats().unwrap_or_default();
    Ok((partial, after - before))
}

/// Queries every cell of the game.
pub fn query_full_game<T: Scalar, O: PayoffOracle<T>>(oracle: &mut O) -> Result<BimatrixGame<T>> {
    let (m, n) = oracle.dims();
    let mut partial = PartialGame::new(m, n);
    let rows: Vec<usize> = (0..m).collect();
    partial.fill_rows(oracle, &rows);
    partial.to_game()
}
