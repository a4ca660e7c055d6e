//! Condition-relaxation planning: given parameters that clear the
//! certification bounds, compute the weakest condition set the weight
//! accounting supports, so codes can be found over smaller fields.
//!
//! The planner works per message-degree class. The high class (degrees at
//! least E) is covered by a forward and a reverse window, each split into a
//! shorter window plus a stacked block column when the weight surplus R
//! affords it. Every lower class starts from the three-part splitting
//! (window, middle matrix, window) and trades surplus weight for narrower
//! windows, middle splits (x) and middle deletions (y). Splitting never cuts
//! inside a coefficient block. Ties go to keeping the distance windows
//! intact, which preserves optimal (reverse) column distances.

use crate::criteria::{self, CriteriaError, CriteriaReport, Verdict};
use crate::minorlab::check_condition_set;
use crate::polymat::{
    derive_params, BlockMatrixSpec, Cell, CodeParams, ConditionSet, PolyMatrix, PolymatError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("parameters do not satisfy the certification bounds: {0}")]
    BoundsNotSatisfied(String),
    #[error("weight audit failed for {0}")]
    AuditFailed(String),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Polymat(#[from] PolymatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Divides,
    NotDivides,
}

/// How an item contributes to the weight accounting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// Forward sliding window G_j^c (column-distance criterion).
    Window { j: usize },
    /// Reverse sliding window (reverse column-distance criterion).
    RevWindow { j: usize },
    /// Any full-width piece bounded through the minor weight lemma.
    Le2 { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannedItem {
    pub spec: BlockMatrixSpec,
    pub role: Role,
}

/// The decomposition the plan guarantees for one message-degree class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPlan {
    pub label: String,
    pub items: Vec<PlannedItem>,
}

/// Per-degree bookkeeping of the relaxation cascade.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct EllRow {
    pub ell: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<i64>,
    pub x: usize,
    pub y: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intermediates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
    pub e: i64,
    pub f: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    pub split_front: bool,
    pub split_back: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub class: String,
    pub total: i64,
    pub required: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanReport {
    pub branch: Branch,
    pub params: CodeParams,
    pub intermediates: Intermediates,
    pub rows: Vec<EllRow>,
    pub classes: Vec<ClassPlan>,
    pub set: ConditionSet,
    pub audit: AuditReport,
    pub notes: Vec<String>,
}

/// Dispatches on the divisibility of delta by k.
pub fn plan(n: usize, k: usize, delta: usize) -> Result<PlanReport, PlanError> {
    derive_params(n, k, delta)?;
    if delta % k == 0 {
        plan_k_divides(n, k, delta)
    } else {
        plan_k_ndivides(n, k, delta)
    }
}

fn window_item(j: usize) -> PlannedItem {
    PlannedItem {
        spec: BlockMatrixSpec::sliding(j),
        role: Role::Window { j },
    }
}

fn rev_window_item(mu: usize, j: usize) -> PlannedItem {
    PlannedItem {
        spec: BlockMatrixSpec::rev_sliding(mu, j),
        role: Role::RevWindow { j },
    }
}

fn le2_item(spec: BlockMatrixSpec, rows: usize, cols: usize) -> PlannedItem {
    PlannedItem {
        spec,
        role: Role::Le2 { rows, cols },
    }
}

/// Weight guaranteed by one item for its class.
fn contribution(params: &CodeParams, role: &Role) -> i64 {
    let (n, k) = (params.n as i64, params.k as i64);
    match role {
        Role::Window { j } | Role::RevWindow { j } => (n - k) * (*j as i64 + 1) + 1,
        Role::Le2 { rows, cols } => (*cols as i64 - *rows as i64 + 1).max(0),
    }
}

/// Re-derives the guaranteed weight of every class from the plan's own
/// items (windows through the column-distance criterion, everything else
/// through the minor weight lemma) and checks it against the Singleton
/// bound. A failing audit indicates a planner bug and is never silently
/// accepted by [`plan`].
pub fn required_weight_audit(plan: &PlanReport) -> AuditReport {
    let s = plan.params.singleton as i64;
    let rows: Vec<AuditRow> = plan
        .classes
        .iter()
        .map(|class| {
            let total: i64 = class
                .items
                .iter()
                .map(|it| contribution(&plan.params, &it.role))
                .sum();
            AuditRow {
                class: class.label.clone(),
                total,
                required: s,
                pass: total >= s,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    AuditReport { rows, pass }
}

/// Removes items implied by other items: identical grids, shorter (reverse)
/// sliding windows subsumed by longer ones, and flat concatenations whose
/// blocks all appear in a wider flat concatenation.
fn dedup(items: Vec<PlannedItem>) -> ConditionSet {
    let mut set = ConditionSet::new();
    for item in &items {
        set.push(item.spec.clone(), "");
    }
    let keep: Vec<bool> = set
        .items
        .iter()
        .map(|it| {
            let spec = &it.spec;
            // Sliding windows: G_{j'}^c is implied by any longer G_j^c.
            if let Some(j) = spec.as_sliding() {
                if set.items.iter().any(|other| {
                    other.spec.grid != spec.grid
                        && other.spec.as_sliding().is_some_and(|oj| oj > j)
                }) {
                    return false;
                }
            }
            if let Some(j) = spec.as_rev_sliding() {
                if set.items.iter().any(|other| {
                    other.spec.grid != spec.grid
                        && other.spec.as_rev_sliding().is_some_and(|oj| oj > j)
                }) {
                    return false;
                }
            }
            // Flat concatenations: full-size minors of a narrower one are a
            // subset of a wider one's.
            if let Some(blocks) = spec.as_wide() {
                if set.items.iter().any(|other| {
                    other.spec.grid != spec.grid
                        && other
                            .spec
                            .as_wide()
                            .is_some_and(|ob| blocks.iter().all(|b| ob.contains(b)))
                }) {
                    return false;
                }
            }
            true
        })
        .collect();
    let mut out = ConditionSet::new();
    for (it, keep) in set.items.into_iter().zip(keep) {
        if keep {
            out.push(it.spec, &it.provenance);
        }
    }
    out
}

/// Ceiling division for i64 with a positive divisor.
fn div_ceil_i64(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Relaxation for the divisible branch.
pub fn plan_k_divides(n: usize, k: usize, delta: usize) -> Result<PlanReport, PlanError> {
    let params = derive_params(n, k, delta)?;
    if delta % k != 0 {
        return Err(PlanError::BoundsNotSatisfied(format!(
            "k = {k} does not divide delta = {delta}"
        )));
    }
    let (bound_rows, mut notes, bounds_pass) = criteria::main_bounds(&params);
    if !bounds_pass {
        let failing = bound_rows
            .iter()
            .filter(|r| !r.satisfied)
            .map(|r| r.name.clone())
            .collect::<Vec<_>>()
            .join(", ");
        return Err(PlanError::BoundsNotSatisfied(failing));
    }
    let s = params.singleton as i64;
    let (n_i, k_i) = (n as i64, k as i64);
    let mu = params.mu;

    if delta == 0 {
        // A constant matrix: the flat block alone carries the bound.
        let classes = vec![ClassPlan {
            label: "all l".to_string(),
            items: vec![le2_item(BlockMatrixSpec::wide(0, 0, 0), k, n)],
        }];
        let set = dedup(classes[0].items.clone());
        let mut report = PlanReport {
            branch: Branch::Divides,
            params,
            intermediates: Intermediates {
                w: None,
                e: 0,
                f: 0,
                r: None,
                d: None,
                split_front: false,
                split_back: false,
            },
            rows: Vec::new(),
            classes,
            set,
            audit: AuditReport {
                rows: Vec::new(),
                pass: true,
            },
            notes: vec!["degenerate delta = 0".to_string()],
        };
        report.audit = required_weight_audit(&report);
        return finish(report);
    }

    let w = div_ceil_i64(s - 2, n_i - k_i);
    let e_i = div_ceil_i64(w, 2) - 1;
    let f_i = w / 2 - 1;
    let r = w * (n_i - k_i) - (s - 2);
    if !(0..=n_i - k_i - 1).contains(&r) {
        notes.push(format!("R = {r} lies outside [0, n-k-1]"));
    }
    if e_i < 0 || f_i < 0 || e_i > mu as i64 || f_i > mu as i64 - 1 {
        return Err(PlanError::BoundsNotSatisfied(format!(
            "window sizes E = {e_i}, F = {f_i} incompatible with mu = {mu}"
        )));
    }
    let (e, f) = (e_i as usize, f_i as usize);

    // Class of message degrees >= E.
    let back_cost = f_i * k_i - 1;
    let split_back = f >= 1 && back_cost >= 1 && r >= back_cost;
    let after_back = r - if split_back { back_cost } else { 0 };
    let front_cost = e_i * k_i - 1;
    let split_front = e >= 1 && front_cost >= 1 && after_back >= front_cost;

    let mut high = Vec::new();
    if split_front {
        high.push(window_item(e - 1));
        let cells = (0..=e).rev().map(Cell::Block).collect();
        high.push(le2_item(BlockMatrixSpec::stack(mu, cells), (e + 1) * k, n));
    } else {
        high.push(window_item(e));
    }
    if split_back {
        high.push(rev_window_item(mu, f - 1));
        let cells = (mu - f..=mu).map(Cell::Block).collect();
        high.push(le2_item(BlockMatrixSpec::stack(mu, cells), (f + 1) * k, n));
    } else {
        high.push(rev_window_item(mu, f));
    }
    let mut classes = vec![ClassPlan {
        label: format!("l>={e}"),
        items: high,
    }];
    let mut rows = Vec::new();

    for l in (1..e).rev() {
        let a = n_i * l as i64 - 3 * k_i * l as i64 + 2;
        let mut row = EllRow {
            ell: l,
            a: Some(a),
            ..Default::default()
        };
        let mut items = Vec::new();
        if mu == 2 && l == 1 && l == f && e == 2 {
            // Fixed three-part splitting; a narrower front would contradict
            // E = 2 for these parameters.
            items.push(window_item(0));
            items.push(le2_item(
                BlockMatrixSpec::middle(mu, 1, 2, 2),
                2 * k,
                2 * n,
            ));
            items.push(rev_window_item(mu, 0));
            row.note = Some("fixed splitting for mu = 2".to_string());
        } else {
            let mut spent: i64 = 0;
            let mut front_j = l - 1;
            let mut back: Vec<PlannedItem> = Vec::new();
            let mut mid_top = l;
            let mut mid_cols = mu - l + 1;
            if a >= k_i {
                front_j = l;
                mid_top = l + 1;
                mid_cols = mu - l;
                spent = k_i;
            }
            let mut reached_final = false;
            if a >= 2 * k_i {
                mid_cols = mu - l - 1;
                spent = 2 * k_i;
                reached_final = true;
                if l == f && l + 1 == e && mu >= 3 && split_back && a - spent >= back_cost {
                    // The back window here is the one already split in the
                    // high class; split it the same way.
                    spent += back_cost;
                    back.push(rev_window_item(mu, f - 1));
                    let cells = (mu - f..=mu).map(Cell::Block).collect();
                    back.push(le2_item(BlockMatrixSpec::stack(mu, cells), (f + 1) * k, n));
                } else {
                    back.push(rev_window_item(mu, l));
                }
            } else {
                back.push(rev_window_item(mu, l - 1));
            }

            items.push(window_item(front_j));
            let piece_cost = (l as i64 + 1) * k_i - 1;
            let mut x = 0usize;
            let mut y = 0usize;
            let mut singles = 0usize;
            if reached_final && mid_cols > 1 {
                let gaps = mid_cols - 1;
                x = gaps.min(((a - spent) / piece_cost).max(0) as usize);
                spent += x as i64 * piece_cost;
                singles = x;
            } else if reached_final && mid_cols <= 1 {
                singles = 0;
            }
            if reached_final && x == mid_cols.saturating_sub(1) {
                // Fully split: the middle is mid_cols single block columns.
                singles = mid_cols;
                let del_gain = n_i - (l as i64 + 1) * k_i + 1;
                if del_gain > 0 {
                    y = (mu - l - 1).min(((a - spent) / del_gain).max(0) as usize);
                    spent += y as i64 * del_gain;
                }
            }
            row.x = x;
            row.y = y;
            let _ = spent;

            // Middle pieces: y deleted from the left, then the surviving
            // singles, then the remainder (if not fully split).
            if mid_cols > 0 {
                let rows_c = (l + 1) * k;
                if singles == mid_cols {
                    for c in y..mid_cols {
                        let cells = (0..=l).map(|r| Cell::Block(mid_top + c - r)).collect();
                        let spec = BlockMatrixSpec::stack(mu, cells);
                        if n >= rows_c {
                            items.push(le2_item(spec, rows_c, n));
                        } else {
                            row.note = Some("middle pieces narrower than tall dropped".into());
                        }
                    }
                } else {
                    for c in 0..x {
                        let cells = (0..=l).map(|r| Cell::Block(mid_top + c - r)).collect();
                        let spec = BlockMatrixSpec::stack(mu, cells);
                        if n >= rows_c {
                            items.push(le2_item(spec, rows_c, n));
                        } else {
                            row.note = Some("middle pieces narrower than tall dropped".into());
                        }
                    }
                    let rem = mid_cols - x;
                    let spec = BlockMatrixSpec::middle(mu, mid_top + x, l + 1, rem);
                    items.push(le2_item(spec, rows_c, rem * n));
                }
            }
            items.append(&mut back);
        }
        rows.push(row);
        classes.push(ClassPlan {
            label: format!("l={l}"),
            items,
        });
    }

    if e >= 1 {
        classes.push(ClassPlan {
            label: "l=0".to_string(),
            items: vec![le2_item(
                BlockMatrixSpec::wide(mu, 0, mu),
                k,
                (mu + 1) * n,
            )],
        });
    }

    let ordered: Vec<PlannedItem> = classes.iter().flat_map(|c| c.items.clone()).collect();
    let set = assemble(ordered, &classes);
    let mut report = PlanReport {
        branch: Branch::Divides,
        params,
        intermediates: Intermediates {
            w: Some(w),
            e: e_i,
            f: f_i,
            r: Some(r),
            d: None,
            split_front,
            split_back,
        },
        rows,
        classes,
        set,
        audit: AuditReport {
            rows: Vec::new(),
            pass: true,
        },
        notes,
    };
    report.audit = required_weight_audit(&report);
    finish(report)
}

fn assemble(ordered: Vec<PlannedItem>, classes: &[ClassPlan]) -> ConditionSet {
    let mut set = dedup(ordered);
    // Provenance: first class that emitted each surviving grid.
    for item in set.items.iter_mut() {
        for class in classes {
            if class.items.iter().any(|it| it.spec.grid == item.spec.grid) {
                item.provenance = class.label.clone();
                break;
            }
        }
    }
    set
}

fn finish(report: PlanReport) -> Result<PlanReport, PlanError> {
    if !report.audit.pass {
        let failing = report
            .audit
            .rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("{} (total {} < {})", r.class, r.total, r.required))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(PlanError::AuditFailed(failing));
    }
    Ok(report)
}

/// Relaxation for the non-divisible branch.
pub fn plan_k_ndivides(n: usize, k: usize, delta: usize) -> Result<PlanReport, PlanError> {
    let params = derive_params(n, k, delta)?;
    if delta % k == 0 {
        return Err(PlanError::BoundsNotSatisfied(format!(
            "k = {k} divides delta = {delta}"
        )));
    }
    let class_rows = criteria::main2_class_rows(&params);
    if class_rows.iter().any(|r| !r.satisfied) {
        return Err(PlanError::BoundsNotSatisfied(
            "per-class weight accounting falls short".to_string(),
        ));
    }
    let s = params.singleton as i64;
    let (n_i, k_i, t_i) = (n as i64, k as i64, params.t as i64);
    let (mu, t) = (params.mu, params.t);
    let notes = Vec::new();

    let d_cap = ((n_i - t_i) / k_i).max(0);
    let stack_term = |depth: i64| (n_i - t_i - depth * k_i + 1).max(0);
    let tail_sum = |depths: i64| -> i64 { (0..=depths).map(stack_term).sum() };

    // E minimal with the high-class accounting reaching the bound.
    let mut e_opt = None;
    for cand in 0..mu {
        let c = cand as i64;
        let total = (n_i - k_i) * (c + 1) + 1 + tail_sum(c.min(d_cap));
        if total >= s {
            e_opt = Some(cand);
            break;
        }
    }
    let Some(e) = e_opt else {
        return Err(PlanError::BoundsNotSatisfied(
            "no window size reaches the bound".to_string(),
        ));
    };
    let e_i = e as i64;
    let f_i = if d_cap >= e_i {
        let mut found = None;
        for cand in 0..=d_cap {
            let total = (n_i - k_i) * (e_i + 1) + 1 + tail_sum(cand);
            if total >= s {
                found = Some(cand);
                break;
            }
        }
        found.ok_or_else(|| {
            PlanError::BoundsNotSatisfied("no tail depth reaches the bound".to_string())
        })?
    } else {
        d_cap
    };
    let f = f_i as usize;

    let tilde_stack = |depth: usize| -> PlannedItem {
        let mut cells = vec![Cell::Tilde];
        cells.extend((mu - depth..mu).rev().map(Cell::Block));
        le2_item(BlockMatrixSpec::stack(mu, cells), t + depth * k, n)
    };

    // High class: the forward window (possibly split) plus the tail stacks
    // of depth F down to 0.
    let surplus = (n_i - k_i) * (e_i + 1) + 1 + tail_sum(f_i) - s;
    let front_cost = e_i * k_i - 1;
    let split_front = e >= 1 && surplus >= front_cost && n >= (e + 1) * k;
    let mut high = Vec::new();
    if split_front {
        high.push(window_item(e - 1));
        let cells = (0..=e).rev().map(Cell::Block).collect();
        high.push(le2_item(BlockMatrixSpec::stack(mu, cells), (e + 1) * k, n));
    } else {
        high.push(window_item(e));
    }
    for depth in (0..=f).rev() {
        high.push(tilde_stack(depth));
    }
    let mut classes = vec![ClassPlan {
        label: format!("l>={e}"),
        items: high,
    }];
    let mut rows = Vec::new();

    for l in (0..e).rev() {
        let l_i = l as i64;
        let a1 = (l_i + 1) * n_i - (2 * l_i + 1 + (l_i + 1) * l_i / 2 - mu as i64) * k_i + l_i + 2
            - t_i * (l_i + 1)
            - delta as i64;
        let a2 = l_i * n_i - (2 * l_i + 1 + (l_i + 1) * l_i / 2 - mu as i64) * k_i + l_i + 1 + t_i
            - delta as i64;
        let mut row = EllRow {
            ell: l,
            a1: Some(a1),
            a2: Some(a2),
            ..Default::default()
        };
        let depths_here = (l_i.min(d_cap)).max(0) as usize;
        let mut items = Vec::new();
        let changed = a1 >= k_i && a2 >= t_i;
        let (mut spent1, mut spent2) = (0i64, 0i64);
        let (mid_top, mid_cols) = if changed {
            spent1 = k_i;
            spent2 = t_i;
            if l > 0 {
                items.push(window_item(l));
            } else {
                items.push(window_item(0));
            }
            (l + 1, mu - l - 1)
        } else {
            if l > 0 {
                items.push(window_item(l - 1));
            }
            (l, mu - l)
        };

        let piece_cost1 = (l_i + 1) * k_i - 1;
        let piece_cost2 = l_i * k_i + t_i - 1;
        let div_or_max = |num: i64, den: i64| -> usize {
            if den <= 0 {
                usize::MAX
            } else {
                (num / den).max(0) as usize
            }
        };
        let mut x = 0usize;
        let mut y = 0usize;
        if changed && mid_cols > 1 {
            let gaps = mid_cols - 1;
            x = gaps
                .min(div_or_max(a1 - spent1, piece_cost1))
                .min(div_or_max(a2 - spent2, piece_cost2));
            spent1 += x as i64 * piece_cost1;
            spent2 += x as i64 * piece_cost2;
        }
        let fully_split = changed && x == mid_cols.saturating_sub(1);
        if fully_split && mid_cols > 0 {
            let gain1 = n_i - (l_i + 1) * k_i + 1;
            let gain2 = n_i - l_i * k_i - t_i + 1;
            let c1 = div_or_max(a1 - spent1, gain1);
            let c2 = div_or_max(a2 - spent2, gain2);
            row.c1 = (gain1 > 0).then_some(c1 as i64);
            row.c2 = (gain2 > 0).then_some(c2 as i64);
            y = (mu - l - 1).min(c1).min(c2);
            spent1 += y as i64 * gain1.max(0);
            spent2 += y as i64 * gain2.max(0);
        }
        row.x = x;
        row.y = y;

        // Middle pieces.
        let rows_c = (l + 1) * k;
        if mid_cols > 0 {
            if fully_split {
                for c in y..mid_cols {
                    let cells = (0..=l).map(|r| Cell::Block(mid_top + c - r)).collect();
                    let spec = BlockMatrixSpec::stack(mu, cells);
                    if n >= rows_c {
                        items.push(le2_item(spec, rows_c, n));
                    }
                }
            } else {
                for c in 0..x {
                    let cells = (0..=l).map(|r| Cell::Block(mid_top + c - r)).collect();
                    let spec = BlockMatrixSpec::stack(mu, cells);
                    if n >= rows_c {
                        items.push(le2_item(spec, rows_c, n));
                    }
                }
                let rem = mid_cols - x;
                let spec = BlockMatrixSpec::middle(mu, mid_top + x, l + 1, rem);
                items.push(le2_item(spec, rows_c, rem * n));
            }
        }

        // Tail stacks: depths 0..=depths_here; those deeper than F may be
        // removable, deepest first, while both budgets stay covered.
        let mut removed_to = depths_here + 1;
        if (f as i64) < depths_here as i64 {
            let mut left1 = a1 - spent1;
            let mut left2 = a2 - spent2;
            for depth in ((f + 1)..=depths_here).rev() {
                let d_i = depth as i64;
                let cost1 = (n_i - t_i - d_i * k_i + 1).max(0);
                let cost2 = (n_i - d_i * k_i + 1).max(0);
                if left1 >= cost1 && left2 >= cost2 {
                    left1 -= cost1;
                    left2 -= cost2;
                    removed_to = depth;
                    row.note = Some(format!("tail stacks deeper than {} removed", depth - 1));
                } else {
                    break;
                }
            }
        }
        for depth in (0..=depths_here).rev() {
            if depth >= removed_to {
                continue;
            }
            items.push(tilde_stack(depth));
        }

        rows.push(row);
        classes.push(ClassPlan {
            label: format!("l={l}"),
            items,
        });
    }

    // Assembly: forward material first, then every surviving tail stack,
    // deepest first, with the bare top-row block last.
    let mut ordered: Vec<PlannedItem> = Vec::new();
    let mut tails: Vec<PlannedItem> = Vec::new();
    for class in &classes {
        for item in &class.items {
            let is_tail = item
                .spec
                .grid
                .iter()
                .flatten()
                .any(|c| matches!(c, Cell::Tilde));
            if is_tail {
                tails.push(item.clone());
            } else {
                ordered.push(item.clone());
            }
        }
    }
    tails.sort_by_key(|it| std::cmp::Reverse(it.spec.grid_rows()));
    ordered.extend(tails);
    let set = assemble(ordered, &classes);

    let mut report = PlanReport {
        branch: Branch::NotDivides,
        params,
        intermediates: Intermediates {
            w: None,
            e: e_i,
            f: f_i,
            r: None,
            d: Some(d_cap),
            split_front,
            split_back: false,
        },
        rows,
        classes,
        set,
        audit: AuditReport {
            rows: Vec::new(),
            pass: true,
        },
        notes,
    };
    report.audit = required_weight_audit(&report);
    finish(report)
}

/// Certifies a code against its planned condition set (bounds from the
/// matching branch, conditions from the planner).
pub fn certify_planned(g: &PolyMatrix) -> Result<(CriteriaReport, PlanReport), PlanError> {
    if !g.is_row_reduced() {
        return Err(PlanError::Criteria(CriteriaError::NotRowReduced));
    }
    let delta: usize = g.row_degrees().iter().sum();
    let plan = plan(g.n, g.k, delta)?;
    let base = if delta % g.k == 0 {
        criteria::check_main(g)?
    } else {
        criteria::check_main2(g)?
    };
    let minors = check_condition_set(&plan.set, g, false).map_err(CriteriaError::from)?;
    let verdict = if !base.bounds_pass {
        Verdict::BoundsFail
    } else if !minors.pass {
        Verdict::MinorsFail
    } else {
        Verdict::CertifiedMds
    };
    let report = CriteriaReport {
        theorem: format!("{} with planned conditions", base.theorem),
        condition_set: plan.set.clone(),
        minors,
        verdict,
        ..base
    };
    Ok((report, plan))
}
