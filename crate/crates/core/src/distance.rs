//! Independent exact computation of column distances, reverse column
//! distances and free distance. These are the verification oracles the
//! certificates are validated against, so they stay deliberately direct:
//! column distances enumerate messages, the free distance runs a best-first
//! search over the encoder state graph.
//!
//! Every operation takes an explicit [`Budget`]; exceeding a budget yields a
//! bound tagged with its provenance, never a silent guess.

use crate::gf::Fe;

use crate::polymat::{derive_params, CodeParams, PolyMatrix, PolymatError};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Cap on enumerated messages per distance computation.
    pub max_enumerations: u64,
    /// Cap on encoder states for the trellis search.
    pub max_states: u64,
    /// Cap on state-graph edges (states times inputs).
    pub max_edges: u64,
    /// Cap on sampled messages for randomized upper bounds.
    pub max_samples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enumerations: 50_000_000,
            max_states: 1 << 18,
            max_edges: 100_000_000,
            max_samples: 10_000_000,
        }
    }
}

impl Budget {
    pub fn with_enumerations(mut self, v: u64) -> Self {
        self.max_enumerations = v;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("{what} needs {needed} but the budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u64,
        budget: u64,
        /// Best value found before the budget ran out (an upper bound).
        partial_upper_bound: Option<u64>,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Polymat(#[from] PolymatError),
}

/// Per-input-block products u * G_d for every u in F_q^k, flattened.
struct BlockTables {
    qk: u64,
    n: usize,
    tables: Vec<Vec<Fe>>,
}

impl BlockTables {
    fn build(g: &PolyMatrix) -> Result<BlockTables, DistanceError> {
        let q = g.field.q();
        let qk = q
            .checked_pow(g.k as u32)
            .ok_or_else(|| DistanceError::Precondition("q^k overflows".into()))?;
        if qk.saturating_mul((g.mu() as u64 + 1) * g.n as u64) > 1 << 28 {
            return Err(DistanceError::Precondition(
                "input-block tables would be too large".into(),
            ));
        }
        let mut tables = Vec::with_capacity(g.mu() + 1);
        for d in 0..=g.mu() {
            let mut t = vec![Fe::ZERO; (qk as usize) * g.n];
            for u in 0..qk {
                let mut code = u;
                for r in 0..g.k {
                    let c = Fe(code % q);
                    code /= q;
                    if c.is_zero() {
                        continue;
                    }
                    let row = g.coeffs[d].row(r);
                    let out = &mut t[(u as usize) * g.n..(u as usize + 1) * g.n];
                    for (o, &e) in out.iter_mut().zip(row) {
                        *o = g.field.add(*o, g.field.mul(c, e));
                    }
                }
            }
            tables.push(t);
        }
        Ok(BlockTables {
            qk,
            n: g.n,
            tables,
        })
    }

    #[inline]
    fn block(&self, d: usize, u: u64) -> &[Fe] {
        &self.tables[d][(u as usize) * self.n..(u as usize + 1) * self.n]
    }
}

/// Exact j-th column distance: minimum truncated weight over all messages
/// (u_0, ..., u_j) with u_0 != 0, enumerated directly (q^{k(j+1)} tuples).
pub fn column_distance(g: &PolyMatrix, j: usize, budget: &Budget) -> Result<u64, DistanceError> {
    if g.coeffs[0].rank(&g.field) < g.k {
        return Err(DistanceError::Precondition("G0 is not full rank".into()));
    }
    let tables = BlockTables::build(g)?;
    let qk = tables.qk;
    let total = checked_pow_u64(qk, j as u32 + 1);
    let cap = budget.max_enumerations;

    let mut blocks: Vec<u64> = vec![0; j + 1];
    blocks[0] = 1;
    let mut best = u64::MAX;
    let mut tried: u64 = 0;
    let mut v = vec![Fe::ZERO; g.n];
    'outer: loop {
        if tried >= cap {
            return Err(DistanceError::BudgetExceeded {
                what: format!("column distance d_{j}"),
                needed: total.unwrap_or(u64::MAX),
                budget: cap,
                partial_upper_bound: (best < u64::MAX).then_some(best),
            });
        }
        tried += 1;
        let mut w: u64 = 0;
        for t in 0..=j {
            v.iter_mut().for_each(|e| *e = Fe::ZERO);
            for d in 0..=t.min(g.mu()) {
                let add = tables.block(d, blocks[t - d]);
                for (o, &e) in v.iter_mut().zip(add) {
                    *o = g.field.add(*o, e);
                }
            }
            w += v.iter().filter(|e| !e.is_zero()).count() as u64;
            if w >= best {
                break;
            }
        }
        best = best.min(w);

        // Odometer: last block fastest, u_0 stays nonzero.
        let mut i = j;
        loop {
            blocks[i] += 1;
            if blocks[i] < qk {
                break;
            }
            blocks[i] = if i == 0 { 1 } else { 0 };
            if i == 0 {
                // u_0 wrapped: every tuple has been visited.
                break 'outer;
            }
            i -= 1;
        }
    }
    Ok(best)
}

/// Column distance of the reverse code.
pub fn reverse_column_distance(
    g: &PolyMatrix,
    j: usize,
    budget: &Budget,
) -> Result<u64, DistanceError> {
    column_distance(&g.reverse_code(), j, budget)
}

/// Exact free distance via a best-first search over the controller-form
/// state graph: states are the memory contents (one cell per past input per
/// row degree), edge weights are output Hamming weights, and the answer is
/// the least-weight closed walk through the zero state whose first input is
/// nonzero.
pub fn free_distance_trellis(g: &PolyMatrix, budget: &Budget) -> Result<u64, DistanceError> {
    if !g.is_row_reduced() {
        return Err(DistanceError::Precondition(
            "free-distance search needs a row-reduced (minimal) matrix".into(),
        ));
    }
    let degs = g.row_degrees();
    let delta: usize = degs.iter().sum();
    let q = g.field.q();
    let tables = BlockTables::build(g)?;
    let qk = tables.qk;

    if delta == 0 {
        if qk > budget.max_enumerations {
            return Err(DistanceError::BudgetExceeded {
                what: "constant-matrix free distance".into(),
                needed: qk,
                budget: budget.max_enumerations,
                partial_upper_bound: None,
            });
        }
        let mut best = u64::MAX;
        for u in 1..qk {
            let w = tables.block(0, u).iter().filter(|e| !e.is_zero()).count() as u64;
            best = best.min(w);
        }
        return Ok(best);
    }

    let states = checked_pow_u64(q, delta as u32).filter(|&s| s <= budget.max_states);
    let Some(states) = states else {
        return Err(DistanceError::BudgetExceeded {
            what: "trellis states q^delta".into(),
            needed: checked_pow_u64(q, delta as u32).unwrap_or(u64::MAX),
            budget: budget.max_states,
            partial_upper_bound: None,
        });
    };
    let edges = states.checked_mul(qk).filter(|&e| e <= budget.max_edges);
    if edges.is_none() {
        return Err(DistanceError::BudgetExceeded {
            what: "trellis edges q^delta * q^k".into(),
            needed: states.saturating_mul(qk),
            budget: budget.max_edges,
            partial_upper_bound: None,
        });
    }

    // Memory layout: row i owns degs[i] consecutive base-q digits, most
    // recent input first.
    let offsets: Vec<usize> = degs
        .iter()
        .scan(0usize, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let decode = |mut s: u64| -> Vec<u64> {
        let mut digits = vec![0u64; delta];
        for d in digits.iter_mut() {
            *d = s % q;
            s /= q;
        }
        digits
    };
    // Output contribution of the stored memory.
    let memory_output = |digits: &[u64], out: &mut [Fe]| {
        out.iter_mut().for_each(|e| *e = Fe::ZERO);
        for (i, &nu) in degs.iter().enumerate() {
            for d in 1..=nu {
                let c = Fe(digits[offsets[i] + d - 1]);
                if c.is_zero() {
                    continue;
                }
                let row = g.coeffs[d].row(i);
                for (o, &e) in out.iter_mut().zip(row) {
                    *o = g.field.add(*o, g.field.mul(c, e));
                }
            }
        }
    };
    // Successor state: shift each row's digits and insert the new input.
    let step = |digits: &[u64], input: u64| -> u64 {
        let mut u = input;
        let mut s: u64 = 0;
        for (i, &nu) in degs.iter().enumerate() {
            let a_i = u % q;
            u /= q;
            if nu == 0 {
                continue;
            }
            let mut row_digits = Vec::with_capacity(nu);
            row_digits.push(a_i);
            row_digits.extend_from_slice(&digits[offsets[i]..offsets[i] + nu - 1]);
            for (d, &dig) in row_digits.iter().enumerate() {
                s += dig * pow_u64(q, (offsets[i] + d) as u32);
            }
        }
        s
    };

    let mut dist = vec![u64::MAX; states as usize];
    let mut heap: BinaryHeap<Reverse<(u64, u64)>> = BinaryHeap::new();
    let mut direct_best = u64::MAX;
    let zero_digits = vec![0u64; delta];
    let mut out_buf = vec![Fe::ZERO; g.n];

    for a in 1..qk {
        let w = tables.block(0, a).iter().filter(|e| !e.is_zero()).count() as u64;
        let next = step(&zero_digits, a);
        if next == 0 {
            direct_best = direct_best.min(w);
        } else if w < dist[next as usize] {
            dist[next as usize] = w;
            heap.push(Reverse((w, next)));
        }
    }

    while let Some(Reverse((d, s))) = heap.pop() {
        if s == 0 {
            return Ok(d.min(direct_best));
        }
        if d > dist[s as usize] {
            continue;
        }
        let digits = decode(s);
        memory_output(&digits, &mut out_buf);
        for a in 0..qk {
            let mut w: u64 = 0;
            let add = tables.block(0, a);
            for (o, &e) in out_buf.iter().zip(add) {
                if !g.field.add(*o, e).is_zero() {
                    w += 1;
                }
            }
            let next = step(&digits, a);
            let nd = d + w;
            if nd < dist[next as usize] {
                dist[next as usize] = nd;
                heap.push(Reverse((nd, next)));
            }
        }
    }
    Ok(direct_best)
}

/// Minimum codeword weight over all messages with u_0 != 0 and degree at
/// most `max_message_degree`; an upper bound on the free distance, exact
/// whenever it meets a certified lower bound.
pub fn free_distance_bruteforce(
    g: &PolyMatrix,
    max_message_degree: usize,
    budget: &Budget,
) -> Result<u64, DistanceError> {
    let tables = BlockTables::build(g)?;
    let qk = tables.qk;
    let total = checked_pow_u64(qk, max_message_degree as u32 + 1);
    let cap = budget.max_enumerations;
    let len = max_message_degree + 1;

    let mut blocks = vec![0u64; len];
    blocks[0] = 1;
    let mut best = u64::MAX;
    let mut tried: u64 = 0;
    let mut v = vec![Fe::ZERO; g.n];
    'outer: loop {
        if tried >= cap {
            return Err(DistanceError::BudgetExceeded {
                what: format!("free-distance enumeration to degree {max_message_degree}"),
                needed: total.unwrap_or(u64::MAX),
                budget: cap,
                partial_upper_bound: (best < u64::MAX).then_some(best),
            });
        }
        tried += 1;
        let mut w: u64 = 0;
        for t in 0..len + g.mu() {
            v.iter_mut().for_each(|e| *e = Fe::ZERO);
            for d in 0..=g.mu().min(t) {
                let s = t - d;
                if s >= len {
                    continue;
                }
                let add = tables.block(d, blocks[s]);
                for (o, &e) in v.iter_mut().zip(add) {
                    *o = g.field.add(*o, e);
                }
            }
            w += v.iter().filter(|e| !e.is_zero()).count() as u64;
            if w >= best {
                break;
            }
        }
        best = best.min(w);

        let mut i = len - 1;
        loop {
            blocks[i] += 1;
            if blocks[i] < qk {
                break;
            }
            blocks[i] = if i == 0 { 1 } else { 0 };
            if i == 0 {
                break 'outer;
            }
            i -= 1;
        }
    }
    Ok(best)
}

/// Randomized upper bound: samples seeded messages with u_0 != 0.
pub fn free_distance_sampled(
    g: &PolyMatrix,
    max_message_degree: usize,
    samples: u64,
    seed: u64,
) -> Result<u64, DistanceError> {
    let tables = BlockTables::build(g)?;
    let qk = tables.qk;
    let len = max_message_degree + 1;
    let mut best = u64::MAX;
    let mut v = vec![Fe::ZERO; g.n];
    for i in 0..samples {
        // Mix message degrees so short codewords are sampled too.
        let deg = (splitmix64(seed.wrapping_add(i)) % len as u64) as usize;
        let mut blocks = vec![0u64; len];
        for (pos, b) in blocks.iter_mut().enumerate().take(deg + 1) {
            *b = splitmix64(seed ^ splitmix64(i) ^ (pos as u64).wrapping_mul(0x9E3779B97F4A7C15)) % qk;
        }
        if blocks[0] == 0 {
            blocks[0] = 1 + splitmix64(seed ^ i) % (qk - 1);
        }
        let mut w: u64 = 0;
        for t in 0..len + g.mu() {
            v.iter_mut().for_each(|e| *e = Fe::ZERO);
            for d in 0..=g.mu().min(t) {
                let s = t - d;
                if s >= len {
                    continue;
                }
                let add = tables.block(d, blocks[s]);
                for (o, &e) in v.iter_mut().zip(add) {
                    *o = g.field.add(*o, e);
                }
            }
            w += v.iter().filter(|e| !e.is_zero()).count() as u64;
            if w >= best {
                break;
            }
        }
        best = best.min(w);
    }
    Ok(best)
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

fn checked_pow_u64(base: u64, exp: u32) -> Option<u64> {
    let mut out: u64 = 1;
    for _ in 0..exp {
        out = out.checked_mul(base)?;
    }
    Some(out)
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    checked_pow_u64(base, exp).expect("state index fits in u64")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceValue {
    pub value: u64,
    /// False when the value is only an upper bound from a cut enumeration.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundProvenance {
    TrellisExact,
    CriteriaCertificate,
    BruteForce,
    Sampled,
    PartialEnumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBound {
    pub value: u64,
    pub provenance: BoundProvenance,
}

/// Column distances, reverse column distances, free-distance bounds and
/// optimality flags for one code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub params: CodeParams,
    pub column: Vec<DistanceValue>,
    pub reverse_column: Vec<DistanceValue>,
    pub column_optimal: Vec<bool>,
    pub reverse_column_optimal: Vec<bool>,
    pub free_lower: Option<FreeBound>,
    pub free_upper: Option<FreeBound>,
    /// Some(true) when the free distance provably equals the Singleton
    /// bound, Some(false) when it provably falls short, None when unknown
    /// within budget.
    pub mds: Option<bool>,
}

/// Fills a whole profile within the given budgets. `certified_lower` is an
/// externally supplied certificate (the Singleton bound of a passing
/// criteria check) used when the trellis is out of budget.
pub fn distance_profile(
    g: &PolyMatrix,
    budget: &Budget,
    certified_lower: Option<u64>,
) -> Result<DistanceProfile, DistanceError> {
    profile_impl(g, budget, certified_lower, true)
}

/// Column and reverse column distances only; the free-distance fields stay
/// empty.
pub fn column_profile(g: &PolyMatrix, budget: &Budget) -> Result<DistanceProfile, DistanceError> {
    profile_impl(g, budget, None, false)
}

fn profile_impl(
    g: &PolyMatrix,
    budget: &Budget,
    certified_lower: Option<u64>,
    with_free: bool,
) -> Result<DistanceProfile, DistanceError> {
    if !g.is_row_reduced() {
        return Err(DistanceError::Precondition(
            "distance profile needs a row-reduced matrix".into(),
        ));
    }
    let delta: usize = g.row_degrees().iter().sum();
    let params = derive_params(g.n, g.k, delta)?;
    let optimal = |j: usize| ((g.n - g.k) * (j + 1) + 1) as u64;

    let mut column = Vec::new();
    let mut reverse_column = Vec::new();
    for j in 0..=params.l {
        match column_distance(g, j, budget) {
            Ok(v) => column.push(DistanceValue { value: v, exact: true }),
            Err(DistanceError::BudgetExceeded {
                partial_upper_bound: Some(b),
                ..
            }) => column.push(DistanceValue {
                value: b,
                exact: false,
            }),
            Err(e) => return Err(e),
        }
        match reverse_column_distance(g, j, budget) {
            Ok(v) => reverse_column.push(DistanceValue { value: v, exact: true }),
            Err(DistanceError::BudgetExceeded {
                partial_upper_bound: Some(b),
                ..
            }) => reverse_column.push(DistanceValue {
                value: b,
                exact: false,
            }),
            Err(e) => return Err(e),
        }
    }
    let column_optimal: Vec<bool> = column
        .iter()
        .enumerate()
        .map(|(j, d)| d.exact && d.value == optimal(j))
        .collect();
    let reverse_column_optimal: Vec<bool> = reverse_column
        .iter()
        .enumerate()
        .map(|(j, d)| d.exact && d.value == optimal(j))
        .collect();

    // Profile invariants; a violation here is an oracle bug. Column
    // distances are non-decreasing, capped at (n-k)(j+1)+1, and optimality
    // at j forces optimality at every i <= j.
    for (vals, flags) in [
        (&column, &column_optimal),
        (&reverse_column, &reverse_column_optimal),
    ] {
        for (j, d) in vals.iter().enumerate() {
            if d.exact {
                assert!(d.value <= optimal(j), "column distance exceeds its cap");
            }
            if j > 0 && d.exact && vals[j - 1].exact {
                assert!(vals[j - 1].value <= d.value, "column distances decreased");
            }
        }
        if let Some(last) = flags.iter().rposition(|&b| b) {
            assert!(
                flags[..last].iter().all(|&b| b),
                "column-distance optimality must be monotone"
            );
        }
    }

    if !with_free {
        return Ok(DistanceProfile {
            params,
            column,
            reverse_column,
            column_optimal,
            reverse_column_optimal,
            free_lower: None,
            free_upper: None,
            mds: None,
        });
    }

    let mut free_lower = None;
    let free_upper;
    match free_distance_trellis(g, budget) {
        Ok(v) => {
            free_lower = Some(FreeBound {
                value: v,
                provenance: BoundProvenance::TrellisExact,
            });
            free_upper = Some(FreeBound {
                value: v,
                provenance: BoundProvenance::TrellisExact,
            });
        }
        Err(DistanceError::BudgetExceeded { .. }) => {
            if let Some(cert) = certified_lower {
                free_lower = Some(FreeBound {
                    value: cert,
                    provenance: BoundProvenance::CriteriaCertificate,
                });
            }
            match free_distance_bruteforce(g, delta + 3, budget) {
                Ok(v) => {
                    free_upper = Some(FreeBound {
                        value: v,
                        provenance: BoundProvenance::BruteForce,
                    })
                }
                Err(DistanceError::BudgetExceeded { .. }) => {
                    let v = free_distance_sampled(g, delta + 3, budget.max_samples, 0xC0FFEE)?;
                    free_upper = Some(FreeBound {
                        value: v,
                        provenance: BoundProvenance::Sampled,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        Err(e) => return Err(e),
    }

    let s = params.singleton;
    let mds = match (free_lower, free_upper) {
        (Some(lo), Some(up)) if lo.value == s && up.value == s => Some(true),
        (_, Some(up)) if up.value < s => Some(false),
        (Some(lo), _) if lo.provenance == BoundProvenance::TrellisExact && lo.value < s => {
            Some(false)
        }
        _ => None,
    };

    Ok(DistanceProfile {
        params,
        column,
        reverse_column,
        column_optimal,
        reverse_column_optimal,
        free_lower,
        free_upper,
        mds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::mat::Mat;
    use crate::reference;
    use std::sync::Arc;

    #[test]
    fn column_distance_basics() {
        let b = Budget::default();
        // k = 1, G0 = (1, 0, 1): d_0 is the weight of the only scaled row.
        let field = Arc::new(FieldSpec::new(5, 1, None).unwrap());
        let g = PolyMatrix::new(
            Arc::clone(&field),
            1,
            3,
            vec![Mat::from_rows(vec![vec![Fe(1), Fe(0), Fe(1)]])],
        )
        .unwrap();
        assert_eq!(column_distance(&g, 0, &b).unwrap(), 2);

        let g3 = reference::ex3_f7();
        assert_eq!(column_distance(&g3, 0, &b).unwrap(), 3);
        assert_eq!(column_distance(&g3, 1, &b).unwrap(), 5);
        assert_eq!(column_distance(&g3, 2, &b).unwrap(), 7);
    }

    #[test]
    fn reverse_column_distance_examples() {
        let b = Budget::default();
        let g3 = reference::ex3_f7();
        assert_eq!(reverse_column_distance(&g3, 0, &b).unwrap(), 3);
        assert_eq!(reverse_column_distance(&g3, 1, &b).unwrap(), 5);

        // Reverse of the all-ones code equals the code itself.
        let g1 = reference::ex1_all_ones(2);
        assert_eq!(reverse_column_distance(&g1, 0, &b).unwrap(), 2);
    }

    #[test]
    fn trellis_all_ones() {
        let b = Budget::default();
        for n in 2..=4 {
            let g = reference::ex1_all_ones(n);
            assert_eq!(free_distance_trellis(&g, &b).unwrap(), 2 * n as u64);
        }
    }

    #[test]
    fn trellis_agrees_with_bruteforce_on_small_codes() {
        let b = Budget::default();
        for g in [
            reference::ex1_all_ones(3),
            reference::ex2_f4(),
            reference::ex5_f3(),
        ] {
            let delta: usize = g.row_degrees().iter().sum();
            let t = free_distance_trellis(&g, &b).unwrap();
            let bf = free_distance_bruteforce(&g, delta + 3, &b).unwrap();
            assert_eq!(t, bf);
        }
    }

    #[test]
    fn constant_matrix_free_distance() {
        let field = Arc::new(FieldSpec::new(3, 1, None).unwrap());
        let g = PolyMatrix::new(
            field,
            2,
            3,
            vec![Mat::from_rows(vec![
                vec![Fe(1), Fe(0), Fe(2)],
                vec![Fe(2), Fe(1), Fe(2)],
            ])],
        )
        .unwrap();
        // delta = 0: block-code minimum distance; Singleton says <= 2.
        assert_eq!(free_distance_trellis(&g, &Budget::default()).unwrap(), 2);
    }

    #[test]
    fn budget_exceeded_reports_partial_bound() {
        let g = reference::ex3_f7();
        let tight = Budget::default().with_enumerations(10);
        match column_distance(&g, 2, &tight) {
            Err(DistanceError::BudgetExceeded {
                partial_upper_bound: Some(b),
                ..
            }) => assert!(b >= 7),
            other => panic!("expected budget error, got {other:?}"),
        }
        let huge = Budget {
            max_states: 4,
            ..Budget::default()
        };
        assert!(matches!(
            free_distance_trellis(&g, &huge),
            Err(DistanceError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn profile_on_reference_code() {
        let g = reference::ex3_f7();
        let p = distance_profile(&g, &Budget::default(), None).unwrap();
        assert_eq!(p.params.l, 4);
        assert_eq!(p.column[0].value, 3);
        assert_eq!(p.column[2].value, 7);
        assert!(p.column_optimal[0] && p.column_optimal[1] && p.column_optimal[2]);
        assert!(p.reverse_column_optimal[0] && p.reverse_column_optimal[1]);
        let lo = p.free_lower.unwrap();
        assert_eq!(lo.provenance, BoundProvenance::TrellisExact);
        assert_eq!(lo.value, 12);
        assert_eq!(p.mds, Some(true));
    }
}
