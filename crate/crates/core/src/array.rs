//! The associative array type and its structural operations.

use std::collections::{btree_map, BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Bound;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::key::Key;
use crate::semiring::Semiring;
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::Row => Axis::Column,
            Axis::Column => Axis::Row,
        }
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "row" | "rows" => Ok(Axis::Row),
            "col" | "cols" | "column" | "columns" => Ok(Axis::Column),
            _ => Err(format!("unknown axis {s:?} (expected row or col)")),
        }
    }
}

/// Selects keys along one axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeySpec {
    All,
    Set(BTreeSet<Key>),
    /// Inclusive on both ends.
    Range {
        lo: Key,
        hi: Key,
    },
    /// Keys having this byte prefix.
    Prefix(Key),
}

impl KeySpec {
    pub fn set<I: IntoIterator<Item = Key>>(keys: I) -> Self {
        KeySpec::Set(keys.into_iter().collect())
    }

    pub fn range(lo: Key, hi: Key) -> Result<Self> {
        let spec = KeySpec::Range { lo, hi };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            KeySpec::Range { lo, hi } if lo > hi => Err(Error::MalformedRange {
                lo: lo.clone(),
                hi: hi.clone(),
            }),
            _ => Ok(()),
        }
    }

    pub fn matches(&self, k: &Key) -> bool {
        match self {
            KeySpec::All => true,
            KeySpec::Set(s) => s.contains(k),
            KeySpec::Range { lo, hi } => lo <= k && k <= hi,
            KeySpec::Prefix(p) => k.starts_with(p),
        }
    }

    /// Entries of a key-ordered map whose key matches, in key order.
    pub(crate) fn filter<'a, V>(
        &'a self,
        map: &'a BTreeMap<Key, V>,
    ) -> Box<dyn Iterator<Item = (&'a Key, &'a V)> + 'a> {
        match self {
            KeySpec::All => Box::new(map.iter()),
            KeySpec::Set(s) => Box::new(s.iter().filter_map(|k| map.get_key_value(k))),
            KeySpec::Range { lo, hi } => {
                Box::new(map.range::<Key, _>((Bound::Included(lo), Bound::Included(hi))))
            }
            KeySpec::Prefix(p) => Box::new(
                map.range::<Key, _>((Bound::Included(p), Bound::Unbounded))
                    .take_while(move |(k, _)| k.starts_with(p)),
            ),
        }
    }
}

/// Command-line form: `all`, `set:K1,K2,...`, `range:LO,HI`, `prefix:P`.
impl FromStr for KeySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::parse(
                0,
                format!("bad key spec {s:?} (expected all, set:..., range:LO,HI or prefix:P)"),
            )
        };
        if s == "all" {
            return Ok(KeySpec::All);
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "set" => Ok(KeySpec::set(
                rest.split(',').map(Key::new).collect::<Result<Vec<_>>>()?,
            )),
            "range" => {
                let (lo, hi) = rest.split_once(',').ok_or_else(bad)?;
                KeySpec::range(Key::new(lo)?, Key::new(hi)?)
            }
            "prefix" => Ok(KeySpec::Prefix(Key::new(rest)?)),
            _ => Err(bad()),
        }
    }
}

/// A finite map from (row key, column key) to a non-empty [`Value`].
///
/// Row and column key sets are derived from the stored entries, so an array
/// never holds an entirely empty row or column. Entries iterate in
/// (row, column) bytewise order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AssociativeArray {
    rows: BTreeMap<Key, BTreeMap<Key, Value>>,
    nnz: usize,
}

impl AssociativeArray {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an array from triples, combining repeated cells with
    /// `combiner.plus` in input order. Empty inputs and empty results are
    /// not stored.
    pub fn from_triples<I>(triples: I, combiner: Semiring) -> Result<Self>
    where
        I: IntoIterator<Item = (Key, Key, Value)>,
    {
        let mut rows: BTreeMap<Key, BTreeMap<Key, Value>> = BTreeMap::new();
        for (r, c, v) in triples {
            v.check()?;
            if v.is_empty() {
                continue;
            }
            match rows.entry(r).or_default().entry(c) {
                btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                btree_map::Entry::Occupied(mut e) => {
                    let sum = combiner.plus(e.get(), &v)?;
                    e.insert(sum);
                }
            }
        }
        for row in rows.values_mut() {
            row.retain(|_, v| !combiner.drops(v));
        }
        Ok(Self::from_rows(rows))
    }

    /// Takes ownership of nested rows, discarding empty values and rows.
    pub(crate) fn from_rows(mut rows: BTreeMap<Key, BTreeMap<Key, Value>>) -> Self {
        rows.retain(|_, row| {
            row.retain(|_, v| !v.is_empty());
            !row.is_empty()
        });
        let nnz = rows.values().map(BTreeMap::len).sum();
        AssociativeArray { rows, nnz }
    }

    /// Collects entries already known to be valid; empty values are skipped.
    pub(crate) fn collect<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (Key, Key, Value)>,
    {
        let mut rows: BTreeMap<Key, BTreeMap<Key, Value>> = BTreeMap::new();
        for (r, c, v) in entries {
            rows.entry(r).or_default().insert(c, v);
        }
        Self::from_rows(rows)
    }

    pub fn get(&self, r: &Key, c: &Key) -> Option<&Value> {
        self.rows.get(r)?.get(c)
    }

    pub fn contains(&self, r: &Key, c: &Key) -> bool {
        self.get(r, c).is_some()
    }

    pub fn nnz(&self) -> usize {
        self.nnz
    }

    pub fn is_empty(&self) -> bool {
        self.nnz == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Key, &Value)> + '_ {
        self.rows
            .iter()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn triples(&self) -> impl Iterator<Item = (Key, Key, Value)> + '_ {
        self.iter()
            .map(|(r, c, v)| (r.clone(), c.clone(), v.clone()))
    }

    /// Entries of one row, ordered by column key.
    pub fn row(&self, r: &Key) -> Option<&BTreeMap<Key, Value>> {
        self.rows.get(r)
    }

    pub(crate) fn rows(&self) -> &BTreeMap<Key, BTreeMap<Key, Value>> {
        &self.rows
    }

    pub fn row_keys(&self) -> Vec<Key> {
        self.rows.keys().cloned().collect()
    }

    pub fn col_keys(&self) -> Vec<Key> {
        self.col_key_set().into_iter().collect()
    }

    pub fn col_key_set(&self) -> BTreeSet<Key> {
        self.rows
            .values()
            .flat_map(|row| row.keys().cloned())
            .collect()
    }

    /// Sorted, duplicate-free keys that carry at least one entry.
    pub fn keys(&self, axis: Axis) -> Vec<Key> {
        match axis {
            Axis::Row => self.row_keys(),
            Axis::Column => self.col_keys(),
        }
    }

    /// Entries whose row matches `rows` and column matches `cols`. Keys of the
    /// surviving entries are carried over unchanged.
    pub fn subarray(&self, rows: &KeySpec, cols: &KeySpec) -> Result<Self> {
        rows.validate()?;
        cols.validate()?;
        let out = rows
            .filter(&self.rows)
            .map(|(r, row)| {
                let kept: BTreeMap<Key, Value> = cols
                    .filter(row)
                    .map(|(c, v)| (c.clone(), v.clone()))
                    .collect();
                (r.clone(), kept)
            })
            .collect();
        Ok(Self::from_rows(out))
    }

    pub fn transpose(&self) -> Self {
        Self::collect(
            self.iter()
                .map(|(r, c, v)| (c.clone(), r.clone(), v.clone())),
        )
    }

    /// Same support, every value replaced by 1.
    pub fn logical(&self) -> Self {
        self.map_values(|_| Value::Number(1.0))
    }

    pub(crate) fn map_values<F: FnMut(&Value) -> Value>(&self, mut f: F) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|(r, row)| {
                (
                    r.clone(),
                    row.iter().map(|(c, v)| (c.clone(), f(v))).collect(),
                )
            })
            .collect();
        Self::from_rows(rows)
    }

    /// True when every stored value is a number.
    pub fn is_numeric(&self) -> bool {
        self.iter().all(|(_, _, v)| v.is_number())
    }

    pub(crate) fn require_numeric(&self, sr: Semiring) -> Result<()> {
        self.iter().try_for_each(|(_, _, v)| sr.admit(v))
    }
}

impl fmt::Debug for AssociativeArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(r, c, v)| (format!("({r},{c})"), v)))
            .finish()
    }
}

impl<'a> IntoIterator for &'a AssociativeArray {
    type Item = (&'a Key, &'a Key, &'a Value);
    type IntoIter = Box<dyn Iterator<Item = Self::Item> + 'a>;

    fn into_iter(self) -> Self::IntoIter {
        Box::new(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::key;
    use crate::sample::songs;

    fn t(r: &str, c: &str, v: impl Into<Value>) -> (Key, Key, Value) {
        (key!(r), key!(c), v.into())
    }

    fn n(x: f64) -> Value {
        Value::Number(x)
    }

    #[test]
    fn from_triples_examples() {
        let empty = AssociativeArray::from_triples(vec![], Semiring::Arith).unwrap();
        assert!(empty.is_empty());

        let a = AssociativeArray::from_triples(
            vec![t("r1", "c1", n(1.0)), t("r1", "c1", n(2.0))],
            Semiring::Arith,
        )
        .unwrap();
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(&key!("r1"), &key!("c1")), Some(&n(3.0)));

        let b = AssociativeArray::from_triples(
            vec![t("053013ktnA1", "Artist", "Bandayde")],
            Semiring::Lattice,
        )
        .unwrap();
        assert_eq!(
            b.get(&key!("053013ktnA1"), &key!("Artist")),
            Some(&Value::from("Bandayde"))
        );
    }

    #[test]
    fn from_triples_drops_cancellation_and_empties() {
        let a = AssociativeArray::from_triples(
            vec![
                t("r", "c", n(2.0)),
                t("r", "c", n(-2.0)),
                t("s", "c", n(0.0)),
                t("s", "d", ""),
            ],
            Semiring::Arith,
        )
        .unwrap();
        assert!(a.is_empty());
        assert!(a.row_keys().is_empty());
        assert!(a.col_keys().is_empty());
    }

    #[test]
    fn from_triples_rejects_text_collision_under_numeric_combiner() {
        let err = AssociativeArray::from_triples(
            vec![t("r", "c", "Rock"), t("r", "c", "Pop")],
            Semiring::Arith,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonNumeric { .. }));
        // no collision, no error
        assert!(AssociativeArray::from_triples(vec![t("r", "c", "Rock")], Semiring::Arith).is_ok());
        let l = AssociativeArray::from_triples(
            vec![t("r", "c", "Rock"), t("r", "c", "Pop")],
            Semiring::Lattice,
        )
        .unwrap();
        assert_eq!(l.get(&key!("r"), &key!("c")), Some(&Value::from("Rock")));
    }

    #[test]
    fn from_triples_rejects_non_finite() {
        let err = AssociativeArray::from_triples(vec![t("r", "c", n(f64::NAN))], Semiring::Arith)
            .unwrap_err();
        assert!(matches!(err, Error::NonFinite(_)));
    }

    #[test]
    fn get_and_keys_on_songs() {
        let a = songs();
        assert_eq!(
            a.get(&key!("053013ktnA2"), &key!("Genre")),
            Some(&Value::from("Electronic"))
        );
        assert_eq!(a.get(&key!("053013ktnA2"), &key!("Missing")), None);
        assert_eq!(AssociativeArray::new().get(&key!("r"), &key!("c")), None);
        let cols: Vec<String> = a.keys(Axis::Column).iter().map(|k| k.to_string()).collect();
        assert_eq!(cols, ["Artist", "Date", "Duration", "Genre"]);
        let rows = a.keys(Axis::Row);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].as_str(), "053013ktnA1");
        assert!(rows.windows(2).all(|w| w[0] < w[1]));
        assert!(AssociativeArray::new().keys(Axis::Row).is_empty());
    }

    #[test]
    fn subarray_examples() {
        let a = songs();
        assert_eq!(a.subarray(&KeySpec::All, &KeySpec::All).unwrap(), a);

        let s = a
            .subarray(
                &KeySpec::Prefix(key!("0530")),
                &KeySpec::set([key!("Genre")]),
            )
            .unwrap();
        let expect = AssociativeArray::from_triples(
            vec![
                t("053013ktnA1", "Genre", "Electronic"),
                t("053013ktnA2", "Genre", "Electronic"),
            ],
            Semiring::Lattice,
        )
        .unwrap();
        assert_eq!(s, expect);

        let r = a
            .subarray(
                &KeySpec::range(key!("06"), key!("09")).unwrap(),
                &KeySpec::All,
            )
            .unwrap();
        // oracle: filter triples by bytewise comparison
        let oracle: Vec<_> = a
            .iter()
            .filter(|(r, _, _)| {
                r.as_bytes() >= b"06".as_slice() && r.as_bytes() <= b"09".as_slice()
            })
            .collect();
        assert_eq!(oracle.len(), 8);
        assert_eq!(r.iter().collect::<Vec<_>>(), oracle);
        assert_eq!(r.row_keys(), vec![key!("063012ktnA1"), key!("082812ktnA1")]);
    }

    #[test]
    fn subarray_rejects_inverted_range() {
        let bad = KeySpec::Range {
            lo: key!("z"),
            hi: key!("a"),
        };
        assert!(matches!(
            songs().subarray(&bad, &KeySpec::All),
            Err(Error::MalformedRange { .. })
        ));
        assert!(KeySpec::range(key!("z"), key!("a")).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert!(AssociativeArray::new().transpose().is_empty());
        let a = AssociativeArray::from_triples(vec![t("g", "a", n(1.0))], Semiring::Arith).unwrap();
        assert_eq!(a.transpose().get(&key!("a"), &key!("g")), Some(&n(1.0)));
        let f = songs();
        let ft = f.transpose();
        let rows: Vec<String> = ft.row_keys().iter().map(|k| k.to_string()).collect();
        assert_eq!(rows, ["Artist", "Date", "Duration", "Genre"]);
        assert_eq!(ft.nnz(), 16);
        assert_eq!(ft.transpose(), f);
    }

    #[test]
    fn logical_and_nnz() {
        assert!(AssociativeArray::new().logical().is_empty());
        let a =
            AssociativeArray::from_triples(vec![t("r", "c", "Rock")], Semiring::Lattice).unwrap();
        assert_eq!(a.logical().get(&key!("r"), &key!("c")), Some(&n(1.0)));
        let f = songs();
        let l = f.logical();
        assert_eq!(l.nnz(), 16);
        assert!(l.iter().all(|(_, _, v)| *v == n(1.0)));
        assert_eq!(AssociativeArray::new().nnz(), 0);
        assert_eq!(f.nnz(), 16);
        let row = f
            .subarray(&KeySpec::set([key!("063012ktnA1")]), &KeySpec::All)
            .unwrap();
        assert_eq!(row.nnz(), 4);
    }

    #[test]
    fn keyspec_parsing() {
        assert_eq!("all".parse::<KeySpec>().unwrap(), KeySpec::All);
        assert_eq!(
            "set:b,a".parse::<KeySpec>().unwrap(),
            KeySpec::set([key!("a"), key!("b")])
        );
        assert_eq!(
            "range:06,09".parse::<KeySpec>().unwrap(),
            KeySpec::Range {
                lo: key!("06"),
                hi: key!("09")
            }
        );
        assert_eq!(
            "prefix:0530".parse::<KeySpec>().unwrap(),
            KeySpec::Prefix(key!("0530"))
        );
        assert!("range:9,0".parse::<KeySpec>().is_err());
        assert!("bogus".parse::<KeySpec>().is_err());
    }
}
