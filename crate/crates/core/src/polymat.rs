//! Polynomial generator matrices and the symbolic block-matrix windows the
//! certification pipeline is built from.
//!
//! A `PolyMatrix` stores a k x n generator matrix G(z) = sum G_i z^i as its
//! coefficient matrices `G_0..=G_mu`. `BlockMatrixSpec` is the symbolic
//! currency between the criteria, the planner and the minor lab: a grid of
//! cells naming coefficient blocks, instantiated against a concrete code.

use crate::gf::{Fe, FieldSpec};
use crate::mat::Mat;
use crate::minorlab::SupportPattern;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolymatError {
    #[error("need n > k >= 1, got n = {n}, k = {k}")]
    BadRate { n: usize, k: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("coefficient matrix index {0} exceeds the matrix degree {1}")]
    BlockIndex(usize, usize),
    #[error("top coefficient matrix is zero")]
    ZeroTopCoefficient,
    #[error("nonzero rows of the top coefficient matrix are not a prefix")]
    NonGenericTop,
    #[error("grid row {0} mixes cells of different heights")]
    MixedRowHeights(usize),
    #[error("element code {0} out of range for the field")]
    BadElement(u64),
    #[error("malformed code file: {0}")]
    Malformed(String),
}

/// Derived code parameters with the quantities the certificates use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    /// ceil(delta / k); the generator matrix degree for generic row degrees.
    pub mu: usize,
    /// Number of rows of degree mu; equals k exactly when k | delta.
    pub t: usize,
    /// floor(delta/k) + floor(delta/(n-k)).
    pub l: usize,
    /// Generalized Singleton bound (n-k)(floor(delta/k)+1) + delta + 1.
    pub singleton: u64,
}

/// Computes the derived parameters for an (n, k, delta) code.
pub fn derive_params(n: usize, k: usize, delta: usize) -> Result<CodeParams, PolymatError> {
    if k == 0 || n <= k {
        return Err(PolymatError::BadRate { n, k });
    }
    let mu = delta.div_ceil(k);
    let t = if delta % k == 0 { k } else { delta + k - k * mu };
    let l = delta / k + delta / (n - k);
    let singleton = ((n - k) * (delta / k + 1) + delta + 1) as u64;
    Ok(CodeParams {
        n,
        k,
        delta,
        mu,
        t,
        l,
        singleton,
    })
}

/// A k x n polynomial matrix stored as coefficient matrices G_0..=G_mu.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    pub field: Arc<FieldSpec>,
    pub k: usize,
    pub n: usize,
    pub coeffs: Vec<Mat>,
}

/// Structural facts about a polynomial matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub row_degrees: Vec<usize>,
    pub is_row_reduced: bool,
    pub has_generic_row_degrees: bool,
    /// Maximum degree among full-size minors, computed exactly.
    pub degree: usize,
}

impl PolyMatrix {
    pub fn new(field: Arc<FieldSpec>, k: usize, n: usize, coeffs: Vec<Mat>) -> Result<Self, PolymatError> {
        if coeffs.is_empty() {
            return Err(PolymatError::Malformed("no coefficient matrices".into()));
        }
        for m in &coeffs {
            if m.rows != k || m.cols != n {
                return Err(PolymatError::Dimension(format!(
                    "coefficient matrix is {}x{}, expected {}x{}",
                    m.rows, m.cols, k, n
                )));
            }
        }
        if coeffs.last().unwrap().is_zero() && coeffs.len() > 1 {
            return Err(PolymatError::ZeroTopCoefficient);
        }
        Ok(PolyMatrix { field, k, n, coeffs })
    }

    /// Degree of the matrix as stored (index of the top coefficient).
    pub fn mu(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Number of leading nonzero rows of G_mu. Errors when the nonzero rows
    /// are not a prefix (non-generic shape).
    pub fn tilde_rows(&self) -> Result<usize, PolymatError> {
        let top = self.coeffs.last().unwrap();
        let nz: Vec<bool> = (0..self.k)
            .map(|r| top.row(r).iter().any(|e| !e.is_zero()))
            .collect();
        let t = nz.iter().take_while(|&&b| b).count();
        if nz[t..].iter().any(|&b| b) {
            return Err(PolymatError::NonGenericTop);
        }
        if t == 0 {
            return Err(PolymatError::ZeroTopCoefficient);
        }
        Ok(t)
    }

    /// Per-row degrees: largest d with a nonzero entry in G_d's row.
    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.k)
            .map(|r| {
                (0..self.coeffs.len())
                    .rev()
                    .find(|&d| self.coeffs[d].row(r).iter().any(|e| !e.is_zero()))
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Leading row coefficient matrix: entry (i, j) = G_{nu_i}[i][j].
    pub fn leading_row_matrix(&self) -> Mat {
        let degs = self.row_degrees();
        let mut m = Mat::zeros(self.k, self.n);
        for r in 0..self.k {
            for c in 0..self.n {
                m.set(r, c, self.coeffs[degs[r]].at(r, c));
            }
        }
        m
    }

    pub fn is_row_reduced(&self) -> bool {
        self.leading_row_matrix().rank(&self.field) == self.k
    }

    /// Row degrees are generic for the given delta: t rows of degree mu and
    /// k - t rows of degree floor(delta/k), in that order.
    pub fn has_generic_row_degrees(&self, delta: usize) -> bool {
        let Ok(params) = derive_params(self.n, self.k, delta) else {
            return false;
        };
        if delta == 0 {
            return self.mu() == 0;
        }
        let degs = self.row_degrees();
        let lo = delta / self.k;
        degs.iter().take(params.t).all(|&d| d == params.mu)
            && degs.iter().skip(params.t).all(|&d| d == lo)
            && self.mu() == params.mu
    }

    /// Full structural report; the degree is the exact maximum degree over
    /// all full-size polynomial minors (independent of the leading-matrix
    /// shortcut, so the two can be cross-checked).
    pub fn structural_checks(&self) -> StructuralReport {
        let row_degrees = self.row_degrees();
        let is_row_reduced = self.is_row_reduced();
        let degree = self.minor_degree();
        let has_generic_row_degrees = self.has_generic_row_degrees(degree);
        StructuralReport {
            row_degrees,
            is_row_reduced,
            has_generic_row_degrees,
            degree,
        }
    }

    /// Maximum degree among the C(n, k) full-size polynomial minors.
    pub fn minor_degree(&self) -> usize {
        let mut best: Option<usize> = None;
        let mut cols: Vec<usize> = (0..self.k).collect();
        loop {
            let d = self.poly_minor_degree(&cols);
            best = best.max(d);
            if !next_combination(&mut cols, self.n) {
                break;
            }
        }
        best.unwrap_or(0)
    }

    fn poly_minor_degree(&self, cols: &[usize]) -> Option<usize> {
        // Entries as coefficient vectors, determinant by Laplace expansion.
        let k = self.k;
        let entry = |r: usize, c: usize| -> Vec<Fe> {
            self.coeffs.iter().map(|m| m.at(r, cols[c])).collect()
        };
        let entries: Vec<Vec<Vec<Fe>>> =
            (0..k).map(|r| (0..k).map(|c| entry(r, c)).collect()).collect();
        let det = poly_det(&self.field, &entries);
        poly_degree(&det)
    }

    /// Exact polynomial product u(z) G(z). The message is a list of
    /// coefficient vectors u_0..u_l, each of length k.
    pub fn encode(&self, u: &[Vec<Fe>]) -> Result<Vec<Vec<Fe>>, PolymatError> {
        for block in u {
            if block.len() != self.k {
                return Err(PolymatError::Dimension(format!(
                    "message block has {} components, expected {}",
                    block.len(),
                    self.k
                )));
            }
            for e in block {
                if self.field.element(e.0).is_err() {
                    return Err(PolymatError::BadElement(e.0));
                }
            }
        }
        if u.is_empty() {
            return Ok(Vec::new());
        }
        let out_len = u.len() + self.mu();
        let mut out = vec![vec![Fe::ZERO; self.n]; out_len];
        for (s, block) in u.iter().enumerate() {
            for (d, g) in self.coeffs.iter().enumerate() {
                let target = &mut out[s + d];
                for r in 0..self.k {
                    let c0 = block[r];
                    if c0.is_zero() {
                        continue;
                    }
                    for c in 0..self.n {
                        let v = self.field.mul(c0, g.at(r, c));
                        target[c] = self.field.add(target[c], v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entry-wise coefficient reversal per row degree:
    /// reverse entry (i,j) at degree d equals G_{nu_i - d}[i][j].
    pub fn reverse_code(&self) -> PolyMatrix {
        let degs = self.row_degrees();
        let mu = self.mu();
        let mut coeffs = vec![Mat::zeros(self.k, self.n); mu + 1];
        for r in 0..self.k {
            for d in 0..=degs[r] {
                let src = &self.coeffs[degs[r] - d];
                for c in 0..self.n {
                    coeffs[d].set(r, c, src.at(r, c));
                }
            }
        }
        // Trim trailing zero matrices (can appear for non-generic inputs).
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        PolyMatrix {
            field: Arc::clone(&self.field),
            k: self.k,
            n: self.n,
            coeffs,
        }
    }
}

/// Hamming weight of a block-coefficient vector sequence.
pub fn weight(blocks: &[Vec<Fe>]) -> u64 {
    blocks
        .iter()
        .map(|b| b.iter().filter(|e| !e.is_zero()).count() as u64)
        .sum()
}

fn poly_trim(mut p: Vec<Fe>) -> Vec<Fe> {
    while p.last().is_some_and(|e| e.is_zero()) {
        p.pop();
    }
    p
}

fn poly_degree(p: &[Fe]) -> Option<usize> {
    p.iter().rposition(|e| !e.is_zero())
}

fn poly_add(f: &FieldSpec, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(Fe::ZERO);
        let y = b.get(i).copied().unwrap_or(Fe::ZERO);
        *o = f.add(x, y);
    }
    poly_trim(out)
}

fn poly_mul(f: &FieldSpec, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let a = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row. Exponential in the size; used only for small cross-checks.
fn poly_det(f: &FieldSpec, m: &[Vec<Vec<Fe>>]) -> Vec<Fe> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Vec<Fe> = Vec::new();
    for c in 0..n {
        if poly_degree(&m[0][c]).is_none() {
            continue;
        }
        let minor: Vec<Vec<Vec<Fe>>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&cc| cc != c)
                    .map(|cc| m[r][cc].clone())
                    .collect()
            })
            .collect();
        let mut term = poly_mul(f, &m[0][c], &poly_det(f, &minor));
        if c % 2 == 1 {
            for e in term.iter_mut() {
                *e = f.neg(*e);
            }
        }
        acc = poly_add(f, &acc, &term);
    }
    acc
}

/// Advances `cols` to the next k-combination of 0..n. Returns false when
/// exhausted.
pub fn next_combination(cols: &mut [usize], n: usize) -> bool {
    let k = cols.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if cols[i] < n - (k - i) {
            cols[i] += 1;
            for j in i + 1..k {
                cols[j] = cols[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Symbolic block matrices
// ---------------------------------------------------------------------------

/// One cell of a block-matrix grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cell {
    Zero,
    /// Coefficient matrix G_i (k rows).
    Block(usize),
    /// The first t nonzero rows of G_mu (t rows).
    Tilde,
}

/// A symbolic block layout over the coefficient matrices of a code.
///
/// Every cell in a grid row must have the same height, every cell in a grid
/// column spans the same n columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMatrixSpec {
    pub grid: Vec<Vec<Cell>>,
    /// Matrix degree the grid was written against; display-only.
    pub mu: usize,
}

impl BlockMatrixSpec {
    /// The sliding window G_j^c: upper block-triangular Toeplitz in
    /// G_0..=G_j.
    pub fn sliding(j: usize) -> Self {
        let grid = (0..=j)
            .map(|r| {
                (0..=j)
                    .map(|c| if c >= r { Cell::Block(c - r) } else { Cell::Zero })
                    .collect()
            })
            .collect();
        BlockMatrixSpec { grid, mu: j }
    }

    /// The reverse sliding window Gbar_j^c built from G_mu downward.
    pub fn rev_sliding(mu: usize, j: usize) -> Self {
        let grid = (0..=j)
            .map(|r| {
                (0..=j)
                    .map(|c| {
                        if c >= r {
                            Cell::Block(mu - (c - r))
                        } else {
                            Cell::Zero
                        }
                    })
                    .collect()
            })
            .collect();
        BlockMatrixSpec { grid, mu }
    }

    /// The horizontal concatenation [G_lo ... G_hi].
    pub fn wide(mu: usize, lo: usize, hi: usize) -> Self {
        BlockMatrixSpec {
            grid: vec![(lo..=hi).map(Cell::Block).collect()],
            mu,
        }
    }

    /// A vertical stack of cells, top to bottom.
    pub fn stack(mu: usize, cells: Vec<Cell>) -> Self {
        BlockMatrixSpec {
            grid: cells.into_iter().map(|c| vec![c]).collect(),
            mu,
        }
    }

    /// The (l+1) x (cols) block matrix with cell (r, c) = G_{top - r + c},
    /// i.e. rows slide down from `top`: row 0 is G_top .. G_{top+cols-1}.
    pub fn middle(mu: usize, top: usize, rows: usize, cols: usize) -> Self {
        let grid = (0..rows)
            .map(|r| (0..cols).map(|c| Cell::Block(top - r + c)).collect())
            .collect();
        BlockMatrixSpec { grid, mu }
    }

    pub fn grid_rows(&self) -> usize {
        self.grid.len()
    }

    pub fn grid_cols(&self) -> usize {
        self.grid.first().map_or(0, |r| r.len())
    }

    /// True when this spec is the sliding window G_j^c.
    pub fn as_sliding(&self) -> Option<usize> {
        let j = self.grid_rows().checked_sub(1)?;
        (*self == BlockMatrixSpec::sliding(j).with_mu(self.mu)).then_some(j)
    }

    /// True when this spec is the reverse sliding window Gbar_j^c.
    pub fn as_rev_sliding(&self) -> Option<usize> {
        let j = self.grid_rows().checked_sub(1)?;
        (*self == BlockMatrixSpec::rev_sliding(self.mu, j)).then_some(j)
    }

    /// True when this spec is a single block row; returns the block indices.
    pub fn as_wide(&self) -> Option<Vec<usize>> {
        if self.grid.len() != 1 {
            return None;
        }
        self.grid[0]
            .iter()
            .map(|c| match c {
                Cell::Block(i) => Some(*i),
                _ => None,
            })
            .collect()
    }

    fn with_mu(mut self, mu: usize) -> Self {
        self.mu = mu;
        self
    }

    fn cell_label(&self, c: &Cell) -> String {
        match c {
            Cell::Zero => "0".to_string(),
            Cell::Block(i) => format!("G{i}"),
            Cell::Tilde => format!("Gt{}", self.mu),
        }
    }

    /// Canonical display name, e.g. `G1^c`, `Gbar1^c`, `(G2; G1; G0)`,
    /// `[G0 G1 G2 G3]`, `Gt2`, `(G1 G2 / G0 G1)`.
    pub fn label(&self) -> String {
        if let Some(j) = self.as_sliding() {
            if j > 0 {
                return format!("G{j}^c");
            }
        }
        if let Some(j) = self.as_rev_sliding() {
            if j > 0 {
                return format!("Gbar{j}^c");
            }
        }
        if self.grid_rows() == 1 && self.grid_cols() == 1 {
            return self.cell_label(&self.grid[0][0]);
        }
        if self.grid_rows() == 1 {
            let cells: Vec<String> = self.grid[0].iter().map(|c| self.cell_label(c)).collect();
            return format!("[{}]", cells.join(" "));
        }
        if self.grid_cols() == 1 {
            let cells: Vec<String> = self.grid.iter().map(|r| self.cell_label(&r[0])).collect();
            return format!("({})", cells.join("; "));
        }
        let rows: Vec<String> = self
            .grid
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| self.cell_label(c))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("({})", rows.join(" / "))
    }

    /// Materializes the spec against a code: the concrete matrix plus the
    /// structural support pattern (zero cells are structurally zero, block
    /// and tilde cells are structurally full).
    pub fn instantiate(&self, g: &PolyMatrix) -> Result<(Mat, SupportPattern), PolymatError> {
        let mu = g.mu();
        let t = if self.grid.iter().flatten().any(|c| matches!(c, Cell::Tilde)) {
            g.tilde_rows()?
        } else {
            g.k
        };
        let heights: Vec<usize> = self
            .grid
            .iter()
            .enumerate()
            .map(|(ri, row)| {
                let mut h: Option<usize> = None;
                for cell in row {
                    let ch = match cell {
                        Cell::Zero => continue,
                        Cell::Block(_) => g.k,
                        Cell::Tilde => t,
                    };
                    match h {
                        None => h = Some(ch),
                        Some(prev) if prev != ch => return Err(PolymatError::MixedRowHeights(ri)),
                        _ => {}
                    }
                }
                Ok(h.unwrap_or(g.k))
            })
            .collect::<Result<_, _>>()?;
        let total_rows: usize = heights.iter().sum();
        let total_cols = self.grid_cols() * g.n;
        let mut mat = Mat::zeros(total_rows, total_cols);
        let mut pattern = SupportPattern::zeros(total_rows, total_cols);
        let mut r0 = 0;
        for (ri, row) in self.grid.iter().enumerate() {
            for (ci, cell) in row.iter().enumerate() {
                let c0 = ci * g.n;
                match cell {
                    Cell::Zero => {}
                    Cell::Block(i) => {
                        if *i > mu {
                            return Err(PolymatError::BlockIndex(*i, mu));
                        }
                        let src = &g.coeffs[*i];
                        for r in 0..g.k {
                            for c in 0..g.n {
                                mat.set(r0 + r, c0 + c, src.at(r, c));
                                pattern.set(r0 + r, c0 + c, true);
                            }
                        }
                    }
                    Cell::Tilde => {
                        let src = g.coeffs.last().unwrap();
                        for r in 0..t {
                            for c in 0..g.n {
                                mat.set(r0 + r, c0 + c, src.at(r, c));
                                pattern.set(r0 + r, c0 + c, true);
                            }
                        }
                    }
                }
            }
            r0 += heights[ri];
        }
        Ok((mat, pattern))
    }
}

impl fmt::Display for BlockMatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A list of block-matrix specs whose minors certify a property, with
/// provenance for each item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ConditionSet {
    pub items: Vec<ConditionItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionItem {
    pub spec: BlockMatrixSpec,
    pub provenance: String,
}

impl ConditionSet {
    pub fn new() -> Self {
        ConditionSet { items: Vec::new() }
    }

    /// Appends an item unless an identical grid is already present.
    pub fn push(&mut self, spec: BlockMatrixSpec, provenance: &str) {
        if self.items.iter().any(|it| it.spec.grid == spec.grid) {
            return;
        }
        self.items.push(ConditionItem {
            spec,
            provenance: provenance.to_string(),
        });
    }

    pub fn labels(&self) -> Vec<String> {
        self.items.iter().map(|it| it.spec.label()).collect()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Code file format
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldBlock,
    pub params: ParamBlock,
    /// G_0..=G_mu, each a k x n row-major array of canonical element codes.
    /// Trailing zero rows of G_mu are present explicitly.
    pub coefficients: Vec<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldBlock {
    pub p: u64,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamBlock {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
}

impl CodeFile {
    pub fn from_code(g: &PolyMatrix, delta: usize) -> CodeFile {
        CodeFile {
            field: FieldBlock {
                p: g.field.p(),
                m: g.field.m(),
                modulus: (g.field.m() > 1).then(|| g.field.modulus().to_vec()),
            },
            params: ParamBlock {
                n: g.n,
                k: g.k,
                delta,
            },
            coefficients: g
                .coeffs
                .iter()
                .map(|m| (0..g.k).map(|r| m.row(r).iter().map(|e| e.0).collect()).collect())
                .collect(),
        }
    }

    /// Reconstructs the code; validates dimensions and element ranges.
    pub fn into_code(self) -> Result<(PolyMatrix, CodeParams), PolymatError> {
        let field = FieldSpec::new(self.field.p, self.field.m, self.field.modulus.as_deref())
            .map_err(|e| PolymatError::Malformed(e.to_string()))?;
        let field = Arc::new(field);
        let params = derive_params(self.params.n, self.params.k, self.params.delta)?;
        if self.coefficients.is_empty() {
            return Err(PolymatError::Malformed("no coefficient matrices".into()));
        }
        let mut coeffs = Vec::new();
        for m in &self.coefficients {
            if m.len() != params.k {
                return Err(PolymatError::Malformed(format!(
                    "coefficient matrix has {} rows, expected {}",
                    m.len(),
                    params.k
                )));
            }
            let mut rows = Vec::new();
            for row in m {
                if row.len() != params.n {
                    return Err(PolymatError::Malformed(format!(
                        "coefficient row has {} entries, expected {}",
                        row.len(),
                        params.n
                    )));
                }
                let r: Result<Vec<Fe>, _> = row.iter().map(|&v| field.element(v)).collect();
                rows.push(r.map_err(|e| PolymatError::Malformed(e.to_string()))?);
            }
            coeffs.push(Mat::from_rows(rows));
        }
        let g = PolyMatrix::new(field, params.k, params.n, coeffs)?;
        Ok((g, params))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code files always serialize")
    }

    pub fn from_json(s: &str) -> Result<CodeFile, PolymatError> {
        serde_json::from_str(s).map_err(|e| PolymatError::Malformed(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    #[test]
    fn derive_params_examples() {
        let p = derive_params(3, 1, 3).unwrap();
        assert_eq!((p.mu, p.t, p.singleton, p.l), (3, 1, 12, 4));
        let p = derive_params(5, 2, 4).unwrap();
        assert_eq!((p.mu, p.t, p.singleton), (2, 2, 14));
        let p = derive_params(3, 2, 3).unwrap();
        assert_eq!((p.mu, p.t, p.singleton), (2, 1, 6));
        let p = derive_params(3, 2, 0).unwrap();
        assert_eq!((p.mu, p.t, p.singleton, p.l), (0, 2, 2, 0));
        assert!(derive_params(2, 2, 1).is_err());
    }

    #[test]
    fn structural_checks_reference_codes() {
        let g = reference::ex3_f7();
        let rep = g.structural_checks();
        assert_eq!(rep.row_degrees, vec![3]);
        assert!(rep.is_row_reduced);
        assert!(rep.has_generic_row_degrees);
        assert_eq!(rep.degree, 3);

        let g5 = reference::ex5_f3();
        let rep5 = g5.structural_checks();
        assert_eq!(rep5.row_degrees, vec![2, 1]);
        assert!(rep5.is_row_reduced);
        assert!(rep5.has_generic_row_degrees);
        assert_eq!(rep5.degree, 3);
    }

    #[test]
    fn constant_full_rank_matrix_has_degree_zero() {
        let field = Arc::new(FieldSpec::new(3, 1, None).unwrap());
        let g0 = Mat::from_rows(vec![vec![Fe(1), Fe(0), Fe(2)], vec![Fe(2), Fe(1), Fe(2)]]);
        let g = PolyMatrix::new(field, 2, 3, vec![g0]).unwrap();
        let rep = g.structural_checks();
        assert_eq!(rep.degree, 0);
        assert!(rep.is_row_reduced);
    }

    #[test]
    fn degree_equals_row_degree_sum_iff_row_reduced() {
        // Cross-check on small random matrices over GF(5).
        let field = Arc::new(FieldSpec::new(5, 1, None).unwrap());
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut seen_reduced = 0;
        let mut seen_not = 0;
        for _ in 0..200 {
            let coeffs: Vec<Mat> = (0..2)
                .map(|_| {
                    Mat::from_rows(
                        (0..2)
                            .map(|_| (0..3).map(|_| Fe(next() % 5)).collect())
                            .collect(),
                    )
                })
                .collect();
            let Ok(g) = PolyMatrix::new(Arc::clone(&field), 2, 3, coeffs) else {
                continue;
            };
            let rep = g.structural_checks();
            let degsum: usize = rep.row_degrees.iter().sum();
            if rep.is_row_reduced {
                assert_eq!(rep.degree, degsum);
                seen_reduced += 1;
            } else {
                assert!(rep.degree < degsum);
                seen_not += 1;
            }
        }
        assert!(seen_reduced > 0 && seen_not > 0);
    }

    #[test]
    fn encode_examples() {
        let g = reference::ex1_all_ones(2);
        let v = g.encode(&[vec![Fe(1)]]).unwrap();
        assert_eq!(v, vec![vec![Fe(1), Fe(1)], vec![Fe(1), Fe(1)]]);
        assert_eq!(weight(&v), 4);

        assert_eq!(g.encode(&[vec![Fe(0)]]).unwrap(), vec![vec![Fe(0), Fe(0)]; 2]);

        let g3 = reference::ex3_f7();
        let v3 = g3.encode(&[vec![Fe(1)]]).unwrap();
        assert_eq!(weight(&v3), 12);
        for (d, block) in v3.iter().enumerate() {
            assert_eq!(block.as_slice(), g3.coeffs[d].row(0));
        }
    }

    #[test]
    fn encode_is_linear() {
        let g = reference::ex5_f3();
        let f = &g.field;
        for a in 0..9u64 {
            for b in 0..9u64 {
                let u1 = vec![vec![Fe(a / 3), Fe(a % 3)]];
                let u2 = vec![vec![Fe(b / 3), Fe(b % 3)]];
                let sum = vec![vec![
                    f.add(Fe(a / 3), Fe(b / 3)),
                    f.add(Fe(a % 3), Fe(b % 3)),
                ]];
                let v1 = g.encode(&u1).unwrap();
                let v2 = g.encode(&u2).unwrap();
                let vs = g.encode(&sum).unwrap();
                for i in 0..vs.len() {
                    for c in 0..g.n {
                        assert_eq!(vs[i][c], f.add(v1[i][c], v2[i][c]));
                    }
                }
            }
        }
    }

    #[test]
    fn predictable_degree_property() {
        let g = reference::ex3_f7();
        // Row reduced, generic degrees, u_0 != 0 != u_l: deg v = mu + l.
        let u = vec![vec![Fe(1)], vec![Fe(0)], vec![Fe(5)]];
        let v = g.encode(&u).unwrap();
        assert_eq!(v.len(), 3 + g.mu());
        assert!(v.last().unwrap().iter().any(|e| !e.is_zero()));
    }

    #[test]
    fn reverse_code_examples() {
        // k | delta: coefficient matrices simply reverse.
        let g = reference::ex3_f7();
        let rev = g.reverse_code();
        for i in 0..=3 {
            assert_eq!(rev.coeffs[i], g.coeffs[3 - i]);
        }
        // Involution for row-reduced matrices.
        let back = rev.reverse_code();
        assert_eq!(back.coeffs, g.coeffs);

        // Mixed row degrees reverse per row.
        let g5 = reference::ex5_f3();
        let rev5 = g5.reverse_code();
        assert_eq!(rev5.coeffs[0].row(0), g5.coeffs[2].row(0));
        assert_eq!(rev5.coeffs[2].row(0), g5.coeffs[0].row(0));
        assert_eq!(rev5.coeffs[0].row(1), g5.coeffs[1].row(1));
        assert_eq!(rev5.coeffs[1].row(1), g5.coeffs[0].row(1));
        assert!(rev5.coeffs[2].row(1).iter().all(|e| e.is_zero()));
        assert_eq!(rev5.reverse_code().coeffs, g5.coeffs);
    }

    #[test]
    fn block_spec_labels_and_instantiation() {
        let spec = BlockMatrixSpec::sliding(1);
        assert_eq!(spec.label(), "G1^c");
        let g = reference::ex3_f7();
        let (m, pat) = spec.instantiate(&g).unwrap();
        assert_eq!((m.rows, m.cols), (2, 6));
        assert_eq!(m.at(0, 0), Fe(4));
        assert_eq!(m.at(0, 3), Fe(1));
        assert_eq!(m.at(1, 0), Fe(0));
        assert_eq!(m.at(1, 3), Fe(4));
        assert!(!pat.get(1, 0));
        assert!(pat.get(0, 0));

        let rev = BlockMatrixSpec::rev_sliding(3, 1);
        assert_eq!(rev.label(), "Gbar1^c");
        let (mr, _) = rev.instantiate(&g).unwrap();
        assert_eq!(mr.at(0, 0), Fe(1)); // G3 first
        assert_eq!(mr.at(0, 3), Fe(4)); // then G2
        assert_eq!(mr.at(1, 3), Fe(1)); // G3 below

        let single = BlockMatrixSpec::wide(3, 0, 0);
        assert_eq!(single.label(), "G0");
        let (ms, _) = single.instantiate(&g).unwrap();
        assert_eq!(ms, g.coeffs[0]);

        let wide = BlockMatrixSpec::wide(3, 0, 3);
        assert_eq!(wide.label(), "[G0 G1 G2 G3]");
        let stack = BlockMatrixSpec::stack(3, vec![Cell::Block(2), Cell::Block(1), Cell::Block(0)]);
        assert_eq!(stack.label(), "(G2; G1; G0)");
        let mid = BlockMatrixSpec::middle(3, 1, 2, 2);
        assert_eq!(mid.label(), "(G1 G2 / G0 G1)");

        let g5 = reference::ex5_f3();
        let tilde = BlockMatrixSpec::stack(2, vec![Cell::Tilde]);
        assert_eq!(tilde.label(), "Gt2");
        let (mt, _) = tilde.instantiate(&g5).unwrap();
        assert_eq!((mt.rows, mt.cols), (1, 3));

        let bad = BlockMatrixSpec::wide(3, 9, 9);
        assert!(matches!(
            bad.instantiate(&g),
            Err(PolymatError::BlockIndex(9, 3))
        ));
    }

    #[test]
    fn mixed_heights_in_one_grid_row_are_rejected() {
        // t = 1 < k = 2: a Tilde cell cannot share a grid row with a Block.
        let g5 = reference::ex5_f3();
        let spec = BlockMatrixSpec {
            grid: vec![vec![Cell::Tilde, Cell::Block(0)]],
            mu: 2,
        };
        assert!(matches!(
            spec.instantiate(&g5),
            Err(PolymatError::MixedRowHeights(0))
        ));
    }

    #[test]
    fn tilde_with_t_equal_k_is_gmu() {
        let g = reference::ex3_f7(); // k = 1 divides delta, t = k
        let (mt, _) = BlockMatrixSpec::stack(3, vec![Cell::Tilde])
            .instantiate(&g)
            .unwrap();
        assert_eq!(mt, g.coeffs[3]);
    }

    #[test]
    fn code_file_round_trip() {
        let g = reference::ex5_f3();
        let file = CodeFile::from_code(&g, 3);
        let json = file.to_json();
        let (g2, params) = CodeFile::from_json(&json).unwrap().into_code().unwrap();
        assert_eq!(g2.coeffs, g.coeffs);
        assert_eq!(params.delta, 3);
        assert_eq!(*g2.field, *g.field);

        let g16 = reference::ex3_f16(&[1, 1, 0, 0, 1]);
        let file = CodeFile::from_code(&g16, 3);
        let (g16b, _) = CodeFile::from_json(&file.to_json()).unwrap().into_code().unwrap();
        assert_eq!(g16b.coeffs, g16.coeffs);
        assert_eq!(g16b.field.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn malformed_code_files_are_rejected() {
        assert!(CodeFile::from_json("{").is_err());
        let mut file = CodeFile::from_code(&reference::ex5_f3(), 3);
        file.coefficients[0][0].pop();
        assert!(file.into_code().is_err());
        let mut file = CodeFile::from_code(&reference::ex5_f3(), 3);
        file.coefficients[0][0][0] = 99;
        assert!(file.into_code().is_err());
    }
}
