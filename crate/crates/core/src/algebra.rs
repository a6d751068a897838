//! Element-wise addition and multiplication, array products, and the
//! selection/deletion operations built on them.
//!
//! Inserting into a table is `T ⊕ B`; selecting from it is `T ⊗ B` or a
//! product with a permutation array. All operations return fresh arrays and
//! drop any result that is empty or equal to the semiring's zero.

use std::collections::BTreeMap;

use crate::array::{AssociativeArray, Axis};
use crate::error::Result;
use crate::key::Key;
use crate::patterns;
use crate::semiring::Semiring;
use crate::value::Value;

fn admit_both(a: &AssociativeArray, b: &AssociativeArray, sr: Semiring) -> Result<()> {
    if sr.numeric_only() {
        a.require_numeric(sr)?;
        b.require_numeric(sr)?;
    }
    Ok(())
}

/// `A ⊕ B`: union of supports, shared cells combined with `sr.plus`.
pub fn eladd(a: &AssociativeArray, b: &AssociativeArray, sr: Semiring) -> Result<AssociativeArray> {
    admit_both(a, b, sr)?;
    let mut rows = a.rows().clone();
    for (r, brow) in b.rows() {
        let row = rows.entry(r.clone()).or_default();
        for (c, bv) in brow {
            let sum = match row.get(c) {
                Some(av) => sr.plus(av, bv)?,
                None => bv.clone(),
            };
            row.insert(c.clone(), sum);
        }
    }
    for row in rows.values_mut() {
        row.retain(|_, v| !sr.drops(v));
    }
    Ok(AssociativeArray::from_rows(rows))
}

/// `A ⊗ B`: intersection of supports, values combined with `sr.times`.
pub fn elmult(
    a: &AssociativeArray,
    b: &AssociativeArray,
    sr: Semiring,
) -> Result<AssociativeArray> {
    admit_both(a, b, sr)?;
    let mut rows = BTreeMap::new();
    for (r, arow) in a.rows() {
        let Some(brow) = b.row(r) else { continue };
        let mut out = BTreeMap::new();
        for (c, av) in arow {
            if let Some(bv) = brow.get(c) {
                let v = sr.times(av, bv)?;
                if !sr.drops(&v) {
                    out.insert(c.clone(), v);
                }
            }
        }
        rows.insert(r.clone(), out);
    }
    Ok(AssociativeArray::from_rows(rows))
}

fn mask_filter(t: &AssociativeArray, m: &AssociativeArray, keep_masked: bool) -> AssociativeArray {
    AssociativeArray::collect(
        t.triples()
            .filter(|(r, c, _)| m.contains(r, c) == keep_masked),
    )
}

/// Entries of `t` whose cell is in the support of `m`, with `t`'s values.
pub fn mask_select(t: &AssociativeArray, m: &AssociativeArray) -> AssociativeArray {
    mask_filter(t, m, true)
}

/// Entries of `t` whose cell is not in the support of `m`.
pub fn delete_entries(t: &AssociativeArray, m: &AssociativeArray) -> AssociativeArray {
    mask_filter(t, m, false)
}

/// `A ⊕.⊗ B`: `C(i,j) = ⊕_k A(i,k) ⊗ B(k,j)`, contracting over the keys
/// shared by A's columns and B's rows. Terms are folded in ascending `k`.
pub fn arrayprod(
    a: &AssociativeArray,
    b: &AssociativeArray,
    sr: Semiring,
) -> Result<AssociativeArray> {
    admit_both(a, b, sr)?;
    let mut rows = BTreeMap::new();
    for (i, arow) in a.rows() {
        let mut acc: BTreeMap<Key, Value> = BTreeMap::new();
        for (k, av) in arow {
            let Some(brow) = b.row(k) else { continue };
            for (j, bv) in brow {
                let term = sr.times(av, bv)?;
                let next = match acc.get(j) {
                    Some(prev) => sr.plus(prev, &term)?,
                    None => term,
                };
                acc.insert(j.clone(), next);
            }
        }
        acc.retain(|_, v| !sr.drops(v));
        rows.insert(i.clone(), acc);
    }
    Ok(AssociativeArray::from_rows(rows))
}

/// Which factor of a [`pass_through`] product supplies the values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Product where one factor only selects: each term is the other factor's
/// value, passed through unchanged. Colliding terms keep the larger value
/// under the total value order, so text survives the product.
pub fn pass_through(
    a: &AssociativeArray,
    b: &AssociativeArray,
    values_from: Side,
) -> AssociativeArray {
    let mut rows: BTreeMap<Key, BTreeMap<Key, Value>> = BTreeMap::new();
    for (i, arow) in a.rows() {
        let mut acc: BTreeMap<Key, Value> = BTreeMap::new();
        for (k, av) in arow {
            let Some(brow) = b.row(k) else { continue };
            for (j, bv) in brow {
                let term = match values_from {
                    Side::Left => av,
                    Side::Right => bv,
                };
                match acc.get_mut(j) {
                    Some(prev) if *prev >= *term => {}
                    Some(prev) => *prev = term.clone(),
                    None => {
                        acc.insert(j.clone(), term.clone());
                    }
                }
            }
        }
        rows.insert(i.clone(), acc);
    }
    AssociativeArray::from_rows(rows)
}

/// `T(ks,:) = P T` for `Axis::Row`, `T(:,ks) = T P` for `Axis::Column`, with
/// `P` the identity array on `ks`. Duplicate keys in `ks` are ignored.
pub fn perm_select(t: &AssociativeArray, ks: &[Key], axis: Axis) -> AssociativeArray {
    let mut unique = ks.to_vec();
    unique.sort();
    unique.dedup();
    let p = patterns::identity_from_keys(&unique)
        .expect("deduplicated keys form an identity")
        .into_inner();
    match axis {
        Axis::Row => pass_through(&p, t, Side::Right),
        Axis::Column => pass_through(t, &p, Side::Left),
    }
}
