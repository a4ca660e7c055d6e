//! Executable sufficiency certificates for MDS-ness: parameter-bound checks
//! plus condition-set generation for the two divisibility branches, the
//! column-distance criterion, and the prior-work comparison checker.
//!
//! All bound comparisons run in exact rational arithmetic.

use crate::minorlab::{
    check_condition_set, is_superregular_with_pattern, ConditionReport, MinorError,
    SuperregularCheck,
};
use crate::polymat::{
    derive_params, BlockMatrixSpec, Cell, CodeParams, ConditionSet, PolyMatrix, PolymatError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("generator matrix is not row reduced")]
    NotRowReduced,
    #[error("generator matrix does not have generic row degrees")]
    NotGenericRowDegrees,
    #[error("k = {k} does not divide delta = {delta}")]
    DegreeNotDivisible { k: usize, delta: usize },
    #[error("k = {k} divides delta = {delta}; use the divisible branch")]
    DegreeDivisible { k: usize, delta: usize },
    #[error("G0 is not full rank")]
    G0NotFullRank,
    #[error("column index {j} exceeds L = {l}")]
    ColumnIndexOutOfRange { j: usize, l: usize },
    #[error(transparent)]
    Polymat(#[from] PolymatError),
    #[error(transparent)]
    Minor(#[from] MinorError),
}

/// Exact rational number with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Ratio {
        assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        num /= g;
        den /= g;
        Ratio { num, den }
    }

    pub fn int(v: i64) -> Ratio {
        Ratio { num: v, den: 1 }
    }

    pub fn le_int(&self, v: i64) -> bool {
        // num/den <= v  <=>  num <= v * den (den > 0).
        (self.num as i128) <= (v as i128) * (self.den as i128)
    }

    pub fn max(self, other: Ratio) -> Ratio {
        if (self.num as i128) * (other.den as i128) >= (other.num as i128) * (self.den as i128) {
            self
        } else {
            other
        }
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One parameter-bound row of a report: `actual >= required` must hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub required: Ratio,
    pub actual: i64,
    pub satisfied: bool,
}

impl BoundCheck {
    fn new(name: &str, required: Ratio, actual: i64) -> BoundCheck {
        BoundCheck {
            name: name.to_string(),
            required,
            actual,
            satisfied: required.le_int(actual),
        }
    }
}

/// The five auxiliary bounds of the non-divisible branch, as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BBounds {
    pub b1: Ratio,
    pub b2: Ratio,
    pub b3: Ratio,
    pub b4: Ratio,
    pub b5: Ratio,
    pub b: Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "certified-MDS")]
    CertifiedMds,
    #[serde(rename = "bounds-fail")]
    BoundsFail,
    #[serde(rename = "minors-fail")]
    MinorsFail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub theorem: String,
    pub params: CodeParams,
    pub bounds: Vec<BoundCheck>,
    pub bounds_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bbounds: Option<BBounds>,
    pub condition_set: ConditionSet,
    pub minors: ConditionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub superregular: Option<SuperregularCheck>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

fn verdict(bounds_pass: bool, minors_pass: bool) -> Verdict {
    if !bounds_pass {
        Verdict::BoundsFail
    } else if !minors_pass {
        Verdict::MinorsFail
    } else {
        Verdict::CertifiedMds
    }
}

/// Validates the input shape shared by both certification branches and
/// returns the derived parameters.
fn validated_params(g: &PolyMatrix) -> Result<CodeParams, CriteriaError> {
    if !g.is_row_reduced() {
        return Err(CriteriaError::NotRowReduced);
    }
    let delta: usize = g.row_degrees().iter().sum();
    if !g.has_generic_row_degrees(delta) {
        return Err(CriteriaError::NotGenericRowDegrees);
    }
    Ok(derive_params(g.n, g.k, delta)?)
}

// ---------------------------------------------------------------------------
// Divisible branch
// ---------------------------------------------------------------------------

/// Parameter bounds for the divisible branch. Returns the bound rows, notes,
/// and the overall outcome.
pub fn main_bounds(params: &CodeParams) -> (Vec<BoundCheck>, Vec<String>, bool) {
    let (n, k, delta) = (params.n as i64, params.k as i64, params.delta as i64);
    let mut notes = Vec::new();
    let mut rows = Vec::new();
    match params.mu {
        0 => rows.push(BoundCheck::new("n > k", Ratio::int(k + 1), n)),
        1 => rows.push(BoundCheck::new("n >= 2k-1", Ratio::int(2 * k - 1), n)),
        2 => rows.push(BoundCheck::new("n >= 3k-2", Ratio::int(3 * k - 2), n)),
        _ => {
            if (k, delta) == (2, 6) {
                rows.push(BoundCheck::new("n >= 5 (k=2, delta=6)", Ratio::int(5), n));
                notes.push(
                    "the tightest accounting for k=2, delta=6 allows n >= 9/2; the stated bound n >= 5 is enforced"
                        .to_string(),
                );
            } else if (k, delta) == (1, 3) {
                rows.push(BoundCheck::new("n >= 2 (k=1, delta=3)", Ratio::int(2), n));
            } else {
                let required = Ratio::new(3 * k * (delta - 2 * k) - 2 * k, delta - 2 * k);
                rows.push(BoundCheck::new("n >= 3k - 2k/(delta-2k)", required, n));
            }
        }
    }
    let pass = rows.iter().all(|r| r.satisfied);
    (rows, notes, pass)
}

/// Condition set of the divisible branch.
pub fn main_condition_set(params: &CodeParams) -> ConditionSet {
    let (n, k, mu) = (params.n as i64, params.k as i64, params.mu);
    let mut set = ConditionSet::new();
    match mu {
        0 => set.push(BlockMatrixSpec::wide(0, 0, 0), "constant matrix"),
        1 | 2 => {
            set.push(BlockMatrixSpec::sliding(mu), "forward window");
            set.push(BlockMatrixSpec::rev_sliding(mu, mu - 1), "reverse window");
            set.push(BlockMatrixSpec::wide(mu, 0, mu), "degree-zero messages");
        }
        _ => {
            set.push(BlockMatrixSpec::sliding(mu - 1), "forward window");
            set.push(BlockMatrixSpec::rev_sliding(mu, mu - 1), "reverse window");
            for l in 0..mu - 1 {
                // Include the middle matrix only while l < (n(mu+1)-k+1)/(n+k).
                if (l as i64) * (n + k) >= n * (mu as i64 + 1) - k + 1 {
                    break;
                }
                set.push(
                    BlockMatrixSpec::middle(mu, l, l + 1, mu - l + 1),
                    &format!("middle matrix l={l}"),
                );
            }
        }
    }
    set
}

/// Full certificate for the divisible branch.
pub fn check_main(g: &PolyMatrix) -> Result<CriteriaReport, CriteriaError> {
    let params = validated_params(g)?;
    if params.delta % params.k != 0 {
        return Err(CriteriaError::DegreeNotDivisible {
            k: params.k,
            delta: params.delta,
        });
    }
    let (bounds, notes, bounds_pass) = main_bounds(&params);
    let condition_set = main_condition_set(&params);
    let minors = check_condition_set(&condition_set, g, false)?;
    let v = verdict(bounds_pass, minors.pass);
    Ok(CriteriaReport {
        theorem: "main (k | delta)".to_string(),
        params,
        bounds,
        bounds_pass,
        bbounds: None,
        condition_set,
        minors,
        superregular: None,
        notes,
        verdict: v,
    })
}

// ---------------------------------------------------------------------------
// Non-divisible branch
// ---------------------------------------------------------------------------

/// The printed auxiliary bounds B1..B5 and their maximum.
pub fn bbounds(params: &CodeParams) -> BBounds {
    let (k, delta, mu, t) = (
        params.k as i64,
        params.delta as i64,
        params.mu as i64,
        params.t as i64,
    );
    let zero = Ratio::int(0);
    let b1 = if mu >= 2 {
        // t - 1 + (mu-1)/2 * k + delta/mu
        Ratio::new((t - 1) * 2 * mu + (mu - 1) * k * mu + 2 * delta, 2 * mu)
    } else {
        zero
    };
    let b2 = if mu >= 2 {
        // -1 + mu/2 * k + delta/(mu-1)
        Ratio::new(-2 * (mu - 1) + mu * k * (mu - 1) + 2 * delta, 2 * (mu - 1))
    } else {
        zero
    };
    let b3 = if mu >= 3 {
        // (2 - mu/2) k + delta - 1 - (mu k + k - delta + 1)/(mu - 1)
        Ratio::new(
            (4 - mu) * k * (mu - 1) + 2 * (delta - 1) * (mu - 1) - 2 * (mu * k + k - delta + 1),
            2 * (mu - 1),
        )
    } else {
        zero
    };
    let b4 = if mu >= 3 {
        // -1 + (2 + (mu-1)/2) k - 1/(mu - 2)
        Ratio::new(
            -2 * (mu - 2) + (4 + mu - 1) * k * (mu - 2) - 2,
            2 * (mu - 2),
        )
    } else {
        zero
    };
    let b5 = Ratio::int(t - 1 + (1 - mu) * k + delta);
    let b = b1.max(b2).max(b3).max(b4).max(b5);
    BBounds {
        b1,
        b2,
        b3,
        b4,
        b5,
        b,
    }
}

/// Per-message-degree-class weight accounting for the non-divisible branch's
/// own condition set (window by the column-distance criterion, everything
/// else by the full-size-minor weight lemma). This is the authoritative
/// bound gate: the printed B contradicts the branch's own worked cases, so
/// it is reported but not enforced.
pub fn main2_class_rows(params: &CodeParams) -> Vec<BoundCheck> {
    let (n, k, mu, t) = (
        params.n as i64,
        params.k as i64,
        params.mu as i64,
        params.t as i64,
    );
    let s = params.singleton as i64;
    let stack_in_set = |d: i64| d == 0 || n >= k * (d + 1);
    let stack_term = |d: i64| (n - t - d * k + 1).max(0);
    let mut rows = Vec::new();

    let tail: i64 = (0..mu).filter(|&d| stack_in_set(d)).map(stack_term).sum();
    rows.push(BoundCheck {
        name: format!("class l>={} weight", mu - 1),
        required: Ratio::int(s),
        actual: (n - k) * mu + 1 + tail,
        satisfied: (n - k) * mu + 1 + tail >= s,
    });
    for l in 1..mu - 1 {
        let mid = (n * (mu - l) - (l + 1) * k + 1).max(0);
        let tail: i64 = (0..=l).filter(|&d| stack_in_set(d)).map(stack_term).sum();
        let total = (n - k) * l + 1 + mid + tail;
        rows.push(BoundCheck {
            name: format!("class l={l} weight"),
            required: Ratio::int(s),
            actual: total,
            satisfied: total >= s,
        });
    }
    if mu >= 2 {
        let total = n * mu - k + 1 + (n - t + 1).max(0);
        rows.push(BoundCheck {
            name: "class l=0 weight".to_string(),
            required: Ratio::int(s),
            actual: total,
            satisfied: total >= s,
        });
    }
    rows
}

/// Condition set of the non-divisible branch.
pub fn main2_condition_set(params: &CodeParams) -> ConditionSet {
    let (n, k, mu) = (params.n, params.k, params.mu);
    let mut set = ConditionSet::new();
    set.push(BlockMatrixSpec::sliding(mu - 1), "forward window");
    for l in 0..mu.saturating_sub(1) {
        set.push(
            BlockMatrixSpec::middle(mu, l, l + 1, mu - l),
            &format!("middle matrix l={l}"),
        );
    }
    for i in (1..mu).rev() {
        if n >= k * (mu - i + 1) {
            let mut cells = vec![Cell::Tilde];
            cells.extend((i..mu).rev().map(Cell::Block));
            set.push(
                BlockMatrixSpec::stack(mu, cells),
                &format!("tail stack to G{i}"),
            );
        }
    }
    set.push(BlockMatrixSpec::stack(mu, vec![Cell::Tilde]), "top rows");
    set
}

/// Full certificate for the non-divisible branch.
pub fn check_main2(g: &PolyMatrix) -> Result<CriteriaReport, CriteriaError> {
    let params = validated_params(g)?;
    if params.delta % params.k == 0 {
        return Err(CriteriaError::DegreeDivisible {
            k: params.k,
            delta: params.delta,
        });
    }
    let bb = bbounds(&params);
    let mut bounds = main2_class_rows(&params);
    let classes_pass = bounds.iter().all(|r| r.satisfied);
    let printed = BoundCheck::new("n >= B", bb.b, params.n as i64);
    let mut notes = Vec::new();
    if printed.satisfied != classes_pass {
        // Both gates are required: the per-class sums cover the plain
        // accounting, and B carries the sub-case contributions the class
        // sums cannot see. Codes passing the full condition set below B
        // exist and miss the Singleton bound.
        notes.push(format!(
            "printed bound B = {} and the per-class weight accounting disagree; the verdict requires both",
            bb.b
        ));
    }
    let bounds_pass = classes_pass && printed.satisfied;
    bounds.push(printed);
    let condition_set = main2_condition_set(&params);
    let minors = check_condition_set(&condition_set, g, false)?;
    let v = verdict(bounds_pass, minors.pass);
    Ok(CriteriaReport {
        theorem: "main2 (k does not divide delta)".to_string(),
        params,
        bounds,
        bounds_pass,
        bbounds: Some(bb),
        condition_set,
        minors,
        superregular: None,
        notes,
        verdict: v,
    })
}

/// Dispatches on the divisibility of delta by k.
pub fn check_auto(g: &PolyMatrix) -> Result<CriteriaReport, CriteriaError> {
    let params = validated_params(g)?;
    if params.delta % params.k == 0 {
        check_main(g)
    } else {
        check_main2(g)
    }
}

// ---------------------------------------------------------------------------
// Column-distance criterion
// ---------------------------------------------------------------------------

/// Minor-based decision that the j-th column distance is optimal: every
/// structurally non-trivially-zero full-size minor of the sliding window
/// G_j^c must be nonzero.
pub fn check_gl06(g: &PolyMatrix, j: usize) -> Result<bool, CriteriaError> {
    if g.coeffs[0].rank(&g.field) < g.k {
        return Err(CriteriaError::G0NotFullRank);
    }
    let delta = if g.is_row_reduced() {
        g.row_degrees().iter().sum()
    } else {
        g.minor_degree()
    };
    let params = derive_params(g.n, g.k, delta)?;
    if j > params.l {
        return Err(CriteriaError::ColumnIndexOutOfRange { j, l: params.l });
    }
    // For j beyond the matrix degree the window's missing coefficient
    // blocks are structurally zero.
    let mut spec = BlockMatrixSpec::sliding(j);
    for row in spec.grid.iter_mut() {
        for cell in row.iter_mut() {
            if matches!(cell, Cell::Block(i) if *i > g.mu()) {
                *cell = Cell::Zero;
            }
        }
    }
    let (mat, pattern) = spec.instantiate(g)?;
    let check = crate::minorlab::check_fullsize_minors_with_pattern(&g.field, &mat, &pattern)?;
    Ok(check.pass)
}

// ---------------------------------------------------------------------------
// Prior-work comparison checker
// ---------------------------------------------------------------------------

/// The earlier sufficient conditions used for field-size comparisons: the
/// stacked matrix (Gt_mu; G_{mu-1}; ...; G_0) must be superregular, the flat
/// concatenations must have every full-size minor nonzero, and n must clear
/// the stated rate bound. `nu` is the caller-supplied parameter of the
/// second bound, defaulting to the smallest row degree.
pub fn check_prior_work(g: &PolyMatrix, nu: Option<u64>) -> Result<CriteriaReport, CriteriaError> {
    let params = validated_params(g)?;
    let (n, k, delta, mu) = (
        params.n as i64,
        params.k as i64,
        params.delta as i64,
        params.mu,
    );

    // The comparison demands every minor of every size of the stacked
    // matrix be nonzero, so the structural (full) pattern is used: zero
    // entries are violations, not exemptions.
    let mut cells = vec![Cell::Tilde];
    cells.extend((0..mu).rev().map(Cell::Block));
    let stack = BlockMatrixSpec::stack(mu, cells);
    let (stack_mat, stack_pattern) = stack.instantiate(g)?;
    let superregular = is_superregular_with_pattern(&g.field, &stack_mat, &stack_pattern);

    let mut condition_set = ConditionSet::new();
    let (theorem, bound) = if delta < k {
        ("prior-work (delta < k)", BoundCheck::new(
            "n >= delta + k - 1",
            Ratio::int(delta + k - 1),
            n,
        ))
    } else {
        let nu_val = nu.unwrap_or_else(|| *g.row_degrees().iter().min().unwrap() as u64) as i64;
        if delta % k == 0 {
            condition_set.push(BlockMatrixSpec::wide(mu, 0, mu), "flat concatenation");
        } else {
            condition_set.push(BlockMatrixSpec::wide(mu, 0, mu - 1), "flat concatenation");
            condition_set.push(BlockMatrixSpec::stack(mu, vec![Cell::Tilde]), "top rows");
        }
        ("prior-work (delta >= k)", BoundCheck::new(
            &format!("n >= 2*delta + k - nu (nu = {nu_val})"),
            Ratio::int(2 * delta + k - nu_val),
            n,
        ))
    };
    let bounds_pass = bound.satisfied;
    let minors = check_condition_set(&condition_set, g, false)?;
    let v = verdict(bounds_pass, minors.pass && superregular.pass);
    Ok(CriteriaReport {
        theorem: theorem.to_string(),
        params,
        bounds: vec![bound],
        bounds_pass,
        bbounds: None,
        condition_set,
        minors,
        superregular: Some(superregular),
        notes: Vec::new(),
        verdict: v,
    })
}
