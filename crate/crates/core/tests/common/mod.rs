//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use assoc_array::{AssociativeArray, Key, Semiring, Value};
use num::{BigInt, BigRational, One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn k(s: &str) -> Key {
    Key::new(s).unwrap()
}

pub fn key_pool(n: usize) -> Vec<Key> {
    (0..n).map(|i| k(&format!("k{i}"))).collect()
}

/// Random subset of `pool` of size 1..=pool.len().
pub fn subset(rng: &mut StdRng, pool: &[Key]) -> Vec<Key> {
    let n = rng.gen_range(1..=pool.len());
    let mut v: Vec<Key> = pool.choose_multiple(rng, n).cloned().collect();
    v.sort();
    v
}

/// Integer values valid for `sr`: never zero, and for the tropical semirings
/// a single sign per array so that no sum can reach the unstorable 0.
pub fn int_value_source(rng: &mut StdRng, sr: Semiring) -> impl FnMut(&mut StdRng) -> f64 {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    move |r: &mut StdRng| {
        let mag = r.gen_range(1..=9) as f64;
        match sr {
            Semiring::MaxPlus | Semiring::MinPlus => sign * mag,
            _ => {
                if r.gen_bool(0.5) {
                    mag
                } else {
                    -mag
                }
            }
        }
    }
}

/// Random integer-valued array over keys from `pool`, at most
/// `pool.len() × pool.len()` cells.
pub fn int_array(
    rng: &mut StdRng,
    pool: &[Key],
    density: f64,
    mut value: impl FnMut(&mut StdRng) -> f64,
) -> AssociativeArray {
    let mut triples = Vec::new();
    for r in pool {
        for c in pool {
            if rng.gen_bool(density) {
                triples.push((r.clone(), c.clone(), Value::Number(value(rng))));
            }
        }
    }
    AssociativeArray::from_triples(triples, Semiring::Arith).unwrap()
}

pub fn mixed_value(rng: &mut StdRng) -> Value {
    const WORDS: [&str; 6] = ["Rock", "Pop", "Electronic", "Kitten", "Électro", "a b"];
    if rng.gen_bool(0.5) {
        Value::from(*WORDS.choose(rng).unwrap())
    } else {
        let x = rng.gen_range(1..=20) as f64 * if rng.gen_bool(0.5) { 1.0 } else { -0.5 };
        Value::Number(x)
    }
}

pub fn mixed_array(rng: &mut StdRng, rows: &[Key], cols: &[Key], density: f64) -> AssociativeArray {
    let mut triples = Vec::new();
    for r in rows {
        for c in cols {
            if rng.gen_bool(density) {
                triples.push((r.clone(), c.clone(), mixed_value(rng)));
            }
        }
    }
    AssociativeArray::from_triples(triples, Semiring::Lattice).unwrap()
}

/// Dense integer matrix with the given shape, as rows.
pub fn int_matrix(
    rng: &mut StdRng,
    m: usize,
    n: usize,
    lo: i64,
    hi: i64,
    density: f64,
) -> Vec<Vec<i64>> {
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(lo..=hi)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matrix_to_array(m: &[Vec<i64>], row_prefix: &str, col_prefix: &str) -> AssociativeArray {
    let mut triples = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            triples.push((
                k(&format!("{row_prefix}{i}")),
                k(&format!("{col_prefix}{j}")),
                Value::Number(x as f64),
            ));
        }
    }
    AssociativeArray::from_triples(triples, Semiring::Arith).unwrap()
}

/// Exact rank by fraction RREF.
pub fn exact_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] = &a[i][j] - d;
                }
            }
        }
        debug_assert!(a[r][c].is_one());
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for kk in 0..n {
                    let akp = a[kk][p];
                    let akq = a[kk][q];
                    a[kk][p] = c * akp - s * akq;
                    a[kk][q] = s * akp + c * akq;
                }
                for kk in 0..n {
                    let apk = a[p][kk];
                    let aqk = a[q][kk];
                    a[p][kk] = c * apk - s * aqk;
                    a[q][kk] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// `C(i,j) = Σ_k A(i,k) B(k,j)` by brute force over every key triple, with
/// absent cells read as 0 and zero results omitted.
pub fn triple_loop_product(
    a: &AssociativeArray,
    b: &AssociativeArray,
) -> BTreeMap<(Key, Key), f64> {
    let keys: BTreeSet<Key> = a
        .iter()
        .chain(b.iter())
        .flat_map(|(r, c, _)| [r.clone(), c.clone()])
        .collect();
    let get = |x: &AssociativeArray, r: &Key, c: &Key| {
        x.get(r, c).and_then(Value::as_number).unwrap_or(0.0)
    };
    let mut out = BTreeMap::new();
    for i in &keys {
        for j in &keys {
            let mut s = 0.0;
            for kk in &keys {
                s += get(a, i, kk) * get(b, kk, j);
            }
            if s != 0.0 {
                out.insert((i.clone(), j.clone()), s);
            }
        }
    }
    out
}

pub fn as_map(a: &AssociativeArray) -> BTreeMap<(Key, Key), f64> {
    a.iter()
        .map(|(r, c, v)| ((r.clone(), c.clone()), v.as_number().unwrap()))
        .collect()
}

/// Independent check of the no-empty axiom on a finished array.
pub fn axiom_violation(a: &AssociativeArray) -> Option<String> {
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    let mut count = 0;
    for (r, c, v) in a.iter() {
        count += 1;
        let empty = match v {
            Value::Number(x) => *x == 0.0 || !x.is_finite(),
            Value::Text(s) => s.is_empty(),
        };
        if empty {
            return Some(format!("stored empty value at ({r},{c})"));
        }
        rows.insert(r.clone());
        cols.insert(c.clone());
    }
    if count != a.nnz() {
        return Some(format!("nnz {} but {count} entries", a.nnz()));
    }
    if a.keys(assoc_array::Axis::Row) != rows.into_iter().collect::<Vec<_>>() {
        return Some("row keys disagree with entries".into());
    }
    if a.keys(assoc_array::Axis::Column) != cols.into_iter().collect::<Vec<_>>() {
        return Some("column keys disagree with entries".into());
    }
    None
}
