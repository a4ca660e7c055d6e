//! Minor machinery: trivially-zero detection, full-size-minor certification
//! and full superregularity testing.
//!
//! A minor is *trivially zero* with respect to a support pattern when the
//! symbolic determinant (distinct indeterminates at the marked positions,
//! zeros elsewhere) is the zero polynomial; since every permutation
//! contributes a distinct monomial this holds exactly when the pattern's
//! bipartite graph has no perfect matching.
//!
//! Callers choose the pattern. The certification pipeline passes the
//! *structural* pattern of a block window (zero blocks are zero, coefficient
//! blocks are fully marked), so zero entries inside a coefficient matrix do
//! not exempt a minor. The standalone checks below default to the concrete
//! support of the matrix under test.

use crate::gf::FieldSpec;
use crate::mat::Mat;
use crate::polymat::{next_combination, ConditionSet, PolyMatrix, PolymatError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorError {
    #[error("pattern is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix has more rows than columns ({0}x{1})")]
    TooManyRows(usize, usize),
    #[error("pattern shape {0}x{1} does not match matrix shape {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error(transparent)]
    Polymat(#[from] PolymatError),
}

/// Binary matrix marking (potentially) nonzero positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportPattern {
    pub rows: usize,
    pub cols: usize,
    bits: Vec<bool>,
}

impl SupportPattern {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SupportPattern {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        SupportPattern {
            rows,
            cols,
            bits: vec![true; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<bool>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        SupportPattern {
            rows: r,
            cols: c,
            bits: rows.into_iter().flatten().collect(),
        }
    }

    /// Concrete support of a matrix: true exactly at nonzero entries.
    pub fn of_matrix(m: &Mat) -> Self {
        SupportPattern {
            rows: m.rows,
            cols: m.cols,
            bits: m.data.iter().map(|e| !e.is_zero()).collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = SupportPattern::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }
}

/// True iff the symbolic determinant over the pattern is the zero
/// polynomial, decided by maximum bipartite matching (Kuhn's algorithm).
pub fn is_trivially_zero(pattern: &SupportPattern) -> Result<bool, MinorError> {
    if pattern.rows != pattern.cols {
        return Err(MinorError::NotSquare(pattern.rows, pattern.cols));
    }
    Ok(max_matching(pattern) < pattern.rows)
}

fn max_matching(pattern: &SupportPattern) -> usize {
    let n = pattern.rows;
    let mut matched_col: Vec<Option<usize>> = vec![None; pattern.cols];
    let mut count = 0;
    let mut used = vec![false; pattern.cols];
    for r in 0..n {
        used.iter_mut().for_each(|u| *u = false);
        if try_augment(pattern, r, &mut used, &mut matched_col) {
            count += 1;
        }
    }
    count
}

fn try_augment(
    pattern: &SupportPattern,
    r: usize,
    used: &mut [bool],
    matched_col: &mut [Option<usize>],
) -> bool {
    for c in 0..pattern.cols {
        if pattern.get(r, c) && !used[c] {
            used[c] = true;
            match matched_col[c] {
                None => {
                    matched_col[c] = Some(r);
                    return true;
                }
                Some(prev) => {
                    if try_augment(pattern, prev, used, matched_col) {
                        matched_col[c] = Some(r);
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Outcome of a full-size-minor check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCheck {
    pub pass: bool,
    /// Columns of the first violating minor, sorted.
    pub witness: Option<Vec<usize>>,
    pub minors_checked: u64,
    pub trivially_zero_skipped: u64,
}

/// Checks every r x r column selection of an r x s matrix (r <= s): a minor
/// whose pattern is trivially zero is skipped, every other minor must be
/// nonzero. The pattern defaults to the concrete support of `m`.
pub fn check_fullsize_minors(f: &FieldSpec, m: &Mat) -> Result<MinorCheck, MinorError> {
    let pattern = SupportPattern::of_matrix(m);
    check_fullsize_minors_with_pattern(f, m, &pattern)
}

pub fn check_fullsize_minors_with_pattern(
    f: &FieldSpec,
    m: &Mat,
    pattern: &SupportPattern,
) -> Result<MinorCheck, MinorError> {
    if m.rows > m.cols {
        return Err(MinorError::TooManyRows(m.rows, m.cols));
    }
    if pattern.rows != m.rows || pattern.cols != m.cols {
        return Err(MinorError::ShapeMismatch(
            pattern.rows,
            pattern.cols,
            m.rows,
            m.cols,
        ));
    }
    let r = m.rows;
    let all_rows: Vec<usize> = (0..r).collect();
    let mut cols: Vec<usize> = (0..r).collect();
    let mut checked = 0;
    let mut skipped = 0;
    loop {
        let sub_pattern = pattern.select(&all_rows, &cols);
        if is_trivially_zero(&sub_pattern)? {
            skipped += 1;
        } else {
            checked += 1;
            if m.select(&all_rows, &cols).det(f).is_zero() {
                return Ok(MinorCheck {
                    pass: false,
                    witness: Some(cols.clone()),
                    minors_checked: checked,
                    trivially_zero_skipped: skipped,
                });
            }
        }
        if !next_combination(&mut cols, m.cols) {
            break;
        }
    }
    Ok(MinorCheck {
        pass: true,
        witness: None,
        minors_checked: checked,
        trivially_zero_skipped: skipped,
    })
}

/// Outcome of a superregularity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperregularCheck {
    pub pass: bool,
    /// (rows, columns) of the first violating minor.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub minors_checked: u64,
}

/// Full superregularity: every square submatrix of every size whose concrete
/// support pattern is not trivially zero must have a nonzero determinant.
pub fn is_superregular(f: &FieldSpec, m: &Mat) -> SuperregularCheck {
    let pattern = SupportPattern::of_matrix(m);
    is_superregular_with_pattern(f, m, &pattern)
}

/// As [`is_superregular`] with a caller-supplied pattern; a full pattern
/// demands every minor of every size be nonzero (total nonsingularity).
pub fn is_superregular_with_pattern(
    f: &FieldSpec,
    m: &Mat,
    pattern: &SupportPattern,
) -> SuperregularCheck {
    let mut checked = 0;
    for size in 1..=m.rows.min(m.cols) {
        let mut rows: Vec<usize> = (0..size).collect();
        loop {
            let mut cols: Vec<usize> = (0..size).collect();
            loop {
                let sub_pattern = pattern.select(&rows, &cols);
                if !is_trivially_zero(&sub_pattern).expect("square by construction") {
                    checked += 1;
                    if m.select(&rows, &cols).det(f).is_zero() {
                        return SuperregularCheck {
                            pass: false,
                            witness: Some((rows.clone(), cols.clone())),
                            minors_checked: checked,
                        };
                    }
                }
                if !next_combination(&mut cols, m.cols) {
                    break;
                }
            }
            if !next_combination(&mut rows, m.rows) {
                break;
            }
        }
    }
    SuperregularCheck {
        pass: true,
        witness: None,
        minors_checked: checked,
    }
}

/// Per-item result of a condition-set evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemResult {
    pub label: String,
    pub provenance: String,
    /// None when early exit skipped the item.
    pub result: Option<MinorCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub pass: bool,
    pub items: Vec<ItemResult>,
}

fn binomial(s: usize, r: usize) -> u64 {
    if r > s {
        return 0;
    }
    let r = r.min(s - r);
    let mut out: u64 = 1;
    for i in 0..r {
        out = out.saturating_mul((s - i) as u64) / (i as u64 + 1);
    }
    out
}

/// Evaluates every item of a condition set against a code, instantiating the
/// block specs with their structural patterns. Items are evaluated cheapest
/// first (fewest full-size minors); with `early_exit` the remaining items are
/// left unevaluated after the first failure. Results are reported in the
/// set's own order.
pub fn check_condition_set(
    set: &ConditionSet,
    g: &PolyMatrix,
    early_exit: bool,
) -> Result<ConditionReport, MinorError> {
    let mut order: Vec<usize> = (0..set.items.len()).collect();
    let cost = |idx: &usize| -> u64 {
        let spec = &set.items[*idx].spec;
        let rows = spec.grid_rows();
        let cols = spec.grid_cols() * g.n;
        // Height in concrete rows is at most rows * k; the binomial in the
        // number of columns dominates, which is all the ordering needs.
        binomial(cols, (rows * g.k).min(cols))
    };
    order.sort_by_key(|idx| (cost(idx), *idx));

    let mut results: Vec<Option<MinorCheck>> = vec![None; set.items.len()];
    let mut pass = true;
    for idx in order {
        let item = &set.items[idx];
        let (mat, pattern) = item.spec.instantiate(g)?;
        let check = check_fullsize_minors_with_pattern(&g.field, &mat, &pattern)?;
        let failed = !check.pass;
        results[idx] = Some(check);
        if failed {
            pass = false;
            if early_exit {
                break;
            }
        }
    }
    Ok(ConditionReport {
        pass,
        items: set
            .items
            .iter()
            .zip(results)
            .map(|(item, result)| ItemResult {
                label: item.spec.label(),
                provenance: item.provenance.clone(),
                result,
            })
            .collect(),
    })
}
