//! Numeric analysis under ordinary arithmetic: rank, null space, product
//! uniqueness and the dominant eigenpair.
//!
//! Arrays are projected onto dense grids with rows and columns in sorted key
//! order. Rank decisions use a relative pivot threshold of
//! `tol × max |cell|`, so scaling an array does not change its rank.

use crate::array::AssociativeArray;
use crate::error::{Error, Result};
use crate::key::Key;
use crate::value::Value;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const EIGENVECTOR_COLUMN: &str = "v1";

#[derive(Clone, Debug, PartialEq)]
pub struct DenseProjection {
    pub row_order: Vec<Key>,
    pub col_order: Vec<Key>,
    /// Row-major, absent entries as 0.
    pub cells: Vec<f64>,
}

impl DenseProjection {
    pub fn nrows(&self) -> usize {
        self.row_order.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_order.len()
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.ncols() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.ncols();
        &self.cells[i * n..(i + 1) * n]
    }

    /// Back to an array; zero cells are not stored.
    pub fn to_array(&self) -> AssociativeArray {
        let mut entries = Vec::new();
        for (i, r) in self.row_order.iter().enumerate() {
            for (j, c) in self.col_order.iter().enumerate() {
                let x = self.at(i, j);
                if x != 0.0 {
                    entries.push((r.clone(), c.clone(), Value::Number(x)));
                }
            }
        }
        AssociativeArray::collect(entries)
    }
}

pub fn to_dense(a: &AssociativeArray) -> Result<DenseProjection> {
    let row_order = a.row_keys();
    let col_order = a.col_keys();
    let n = col_order.len();
    let mut cells = vec![0.0; row_order.len() * n];
    for (i, (_, row)) in a.rows().iter().enumerate() {
        for (c, v) in row {
            let x = match v {
                Value::Number(x) => *x,
                Value::Text(s) => {
                    return Err(Error::NonNumeric {
                        semiring: "arith",
                        value: s.clone(),
                    })
                }
            };
            let j = col_order
                .binary_search(c)
                .expect("column key collected from the array");
            cells[i * n + j] = x;
        }
    }
    Ok(DenseProjection {
        row_order,
        col_order,
        cells,
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::BadTolerance(tol))
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination with partial pivoting.
struct Echelon {
    m: Vec<Vec<f64>>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl Echelon {
    fn new(d: &DenseProjection, tol: f64) -> Self {
        let (nr, nc) = (d.nrows(), d.ncols());
        let mut m: Vec<Vec<f64>> = (0..nr).map(|i| d.row(i).to_vec()).collect();
        let scale = d.cells.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        let threshold = tol * scale;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let p = (r..nr)
                .max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))
                .expect("non-empty candidate rows");
            if m[p][c].abs() <= threshold {
                continue;
            }
            m.swap(p, r);
            let pivot = m[r][c];
            for x in m[r].iter_mut() {
                *x /= pivot;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                let f = row[c];
                if i == r || f == 0.0 {
                    continue;
                }
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                row[c] = 0.0;
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            m,
            pivots,
            ncols: nc,
        }
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

pub fn rank(a: &AssociativeArray, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    Ok(Echelon::new(&to_dense(a)?, tol).pivots.len())
}

/// Basis of `{x : A x = 0}`: one unit-norm column `ns1`,
/// `ns2`, ... per free variable, rows keyed by A's column keys.
pub fn null_space(a: &AssociativeArray, tol: f64) -> Result<AssociativeArray> {
    check_tol(tol)?;
    let d = to_dense(a)?;
    let ech = Echelon::new(&d, tol);
    let mut entries = Vec::new();
    for (n, &f) in ech.free_columns().iter().enumerate() {
        let mut x = vec![0.0; d.ncols()];
        x[f] = 1.0;
        for (i, &p) in ech.pivots.iter().enumerate() {
            x[p] = -ech.m[i][f];
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let col = Key::new(&format!("ns{}", n + 1)).expect("synthetic key");
        for (j, v) in x.iter().enumerate() {
            if *v != 0.0 {
                entries.push((d.col_order[j].clone(), col.clone(), Value::Number(v / norm)));
            }
        }
    }
    Ok(AssociativeArray::collect(entries))
}

/// Whether `A X = A Y` forces `X = Y`, i.e. the null space is trivial.
pub fn products_unique(a: &AssociativeArray, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    let d = to_dense(a)?;
    Ok(Echelon::new(&d, tol).pivots.len() == d.ncols())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult {
    pub eigenvalue: f64,
    /// Single `v1` column over the array's keys, unit 2-norm.
    pub eigenvector: AssociativeArray,
    pub iterations: usize,
    /// `‖A v − λ v‖∞`.
    pub residual: f64,
}

fn matvec(d: &DenseProjection, v: &[f64]) -> Vec<f64> {
    (0..d.nrows())
        .map(|i| d.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Power iteration for the largest-magnitude eigenvalue.
///
/// Row and column key sets must coincide. The start vector is the ramp
/// `1 + i/(2n)`, not all ones: the all-ones vector is itself an eigenvector of
/// regular and permutation arrays and would mask magnitude ties. Converges when the
/// Rayleigh quotient moves by at most `tol × max(1, |λ|)` and the residual is
/// at most `tol`.
pub fn dominant_eigenpair(a: &AssociativeArray, tol: f64, maxiter: usize) -> Result<EigenResult> {
    check_tol(tol)?;
    let d = to_dense(a)?;
    if d.row_order != d.col_order {
        return Err(Error::NotSquare);
    }
    let n = d.nrows();
    let v0: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / (2.0 * n as f64)).collect();
    let n0 = norm2(&v0);
    if n0 == 0.0 {
        return Err(Error::ZeroVector { iterations: 0 });
    }
    let mut v: Vec<f64> = v0.iter().map(|x| x / n0).collect();
    let mut w = matvec(&d, &v);
    let mut lambda = dot(&v, &w);
    let mut residual = f64::INFINITY;
    for it in 1..=maxiter.max(1) {
        let nw = norm2(&w);
        if nw == 0.0 {
            return Err(Error::ZeroVector { iterations: it });
        }
        v = w.iter().map(|x| x / nw).collect();
        w = matvec(&d, &v);
        let next = dot(&v, &w);
        residual = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - next * vi).abs())
            .fold(0.0, f64::max);
        let settled = (next - lambda).abs() <= tol * next.abs().max(1.0);
        lambda = next;
        if settled && residual <= tol {
            return Ok(EigenResult {
                eigenvalue: lambda,
                eigenvector: eigenvector_array(&d.row_order, &v),
                iterations: it,
                residual,
            });
        }
    }
    Err(Error::NotConverged {
        eigenvalue: lambda,
        residual,
        iterations: maxiter.max(1),
    })
}

fn eigenvector_array(keys: &[Key], v: &[f64]) -> AssociativeArray {
    // sign convention: the largest-magnitude component is positive
    let lead = v
        .iter()
        .copied()
        .reduce(|a, b| if b.abs() > a.abs() { b } else { a })
        .unwrap_or(1.0);
    let sign = if lead < 0.0 { -1.0 } else { 1.0 };
    let col = Key::new(EIGENVECTOR_COLUMN).expect("static key");
    AssociativeArray::collect(
        keys.iter()
            .zip(v)
            .map(|(k, x)| (k.clone(), col.clone(), Value::Number(sign * x))),
    )
}
