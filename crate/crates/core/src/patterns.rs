//! Permutation and clique patterns.

use std::collections::{BTreeMap, BTreeSet};

use crate::array::AssociativeArray;
use crate::error::{Error, Result};
use crate::key::Key;
use crate::value::Value;

/// An array whose support pairs each row key with exactly one column key and
/// vice versa, every value 1. May be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationArray(AssociativeArray);

impl PermutationArray {
    pub fn as_array(&self) -> &AssociativeArray {
        &self.0
    }

    pub fn into_inner(self) -> AssociativeArray {
        self.0
    }

    /// Row key to column key.
    pub fn mapping(&self) -> BTreeMap<Key, Key> {
        self.0
            .iter()
            .map(|(r, c, _)| (r.clone(), c.clone()))
            .collect()
    }
}

impl AsRef<AssociativeArray> for PermutationArray {
    fn as_ref(&self) -> &AssociativeArray {
        &self.0
    }
}

impl TryFrom<AssociativeArray> for PermutationArray {
    type Error = AssociativeArray;

    /// Accepts the empty array and anything [`is_permutation`] accepts.
    fn try_from(a: AssociativeArray) -> std::result::Result<Self, AssociativeArray> {
        if a.is_empty() || is_permutation(&a) {
            Ok(PermutationArray(a))
        } else {
            Err(a)
        }
    }
}

/// `{(k,k)=1}` for every key.
pub fn identity_from_keys(ks: &[Key]) -> Result<PermutationArray> {
    perm_from_pairs(ks.iter().map(|k| (k.clone(), k.clone())))
}

/// `{(r,c)=1}` for every pair; rows and columns must each be distinct.
pub fn perm_from_pairs<I>(pairs: I) -> Result<PermutationArray>
where
    I: IntoIterator<Item = (Key, Key)>,
{
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    let mut entries = Vec::new();
    for (r, c) in pairs {
        if !rows.insert(r.clone()) {
            return Err(Error::DuplicateKey(r));
        }
        if !cols.insert(c.clone()) {
            return Err(Error::DuplicateKey(c));
        }
        entries.push((r, c, Value::Number(1.0)));
    }
    Ok(PermutationArray(AssociativeArray::collect(entries)))
}

pub fn is_permutation(a: &AssociativeArray) -> bool {
    if a.is_empty() {
        return false;
    }
    let mut cols = BTreeSet::new();
    for row in a.rows().values() {
        if row.len() != 1 {
            return false;
        }
        let (c, v) = row.iter().next().expect("row has one entry");
        if *v != Value::Number(1.0) || !cols.insert(c) {
            return false;
        }
    }
    true
}

/// Every row key is related to every column key.
pub fn is_clique(a: &AssociativeArray) -> bool {
    if a.is_empty() {
        return false;
    }
    let ncols = a.col_key_set().len();
    a.rows().values().all(|row| row.len() == ncols)
}
