//! Dense matrices of field elements with exact Gaussian elimination.

use crate::gf::{Fe, FieldSpec};
use serde::{Deserialize, Serialize};

/// Row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Submatrix from selected rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.at(r, c));
            }
        }
        out
    }

    /// Exact determinant of a square matrix by Gaussian elimination.
    pub fn det(&self, f: &FieldSpec) -> Fe {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                return Fe::ZERO;
            };
            if p != col {
                for c in 0..n {
                    let a = m.at(p, c);
                    let b = m.at(col, c);
                    m.set(p, c, b);
                    m.set(col, c, a);
                }
                det = f.neg(det);
            }
            let pv = m.at(col, col);
            det = f.mul(det, pv);
            let pv_inv = f.inv(pv).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(m.at(r, col), pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, f: &FieldSpec) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != rank {
                for c in 0..m.cols {
                    let a = m.at(p, c);
                    let b = m.at(rank, c);
                    m.set(p, c, b);
                    m.set(rank, c, a);
                }
            }
            let pv_inv = f.inv(m.at(rank, col)).expect("pivot is nonzero");
            for r in rank + 1..m.rows {
                let factor = f.mul(m.at(r, col), pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.at(r, c), f.mul(factor, m.at(rank, c)));
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn fe(rows: &[&[u64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| Fe(v)).collect()).collect())
    }

    #[test]
    fn det_matches_cofactor_expansion_mod7() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        let m = fe(&[&[1, 2, 3], &[4, 5, 6], &[1, 0, 1]]);
        // Cofactor oracle: 1*(5-0) - 2*(4-6) + 3*(0-5) = 5 + 4 - 15 = -6 = 1.
        assert_eq!(m.det(&f), Fe(1));
        let singular = fe(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(&f), Fe(0));
    }

    #[test]
    fn rank_examples() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(fe(&[&[1, 0, 2], &[2, 1, 2]]).rank(&f), 2);
        assert_eq!(fe(&[&[1, 0], &[2, 1]]).rank(&f), 2);
        // (2, 1) = 2 * (1, 2) over GF(3).
        assert_eq!(fe(&[&[1, 2], &[2, 1]]).rank(&f), 1);
        assert_eq!(Mat::zeros(2, 3).rank(&f), 0);
    }

    #[test]
    fn vandermonde_det_nonzero() {
        let f = FieldSpec::new(31, 1, None).unwrap();
        let nodes = [2u64, 5, 11, 17];
        let rows: Vec<Vec<Fe>> = nodes
            .iter()
            .map(|&x| (0..4).map(|e| f.pow(Fe(x), e)).collect())
            .collect();
        assert_ne!(Mat::from_rows(rows).det(&f), Fe(0));
    }
}
