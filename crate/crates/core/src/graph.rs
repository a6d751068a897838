//! Graph view of an array: stored entries are directed edges row → column.

use std::collections::BTreeMap;

use crate::algebra::{arrayprod, pass_through, Side};
use crate::array::{AssociativeArray, Axis};
use crate::error::Result;
use crate::key::Key;
use crate::semiring::Semiring;
use crate::value::Value;

pub const DEGREE_COLUMN: &str = "deg";
pub const FRONTIER_ROW: &str = "front";

/// Entry count of every key on `axis`, as a single `deg` column.
pub fn degree(a: &AssociativeArray, axis: Axis) -> AssociativeArray {
    let mut counts: BTreeMap<Key, usize> = BTreeMap::new();
    for (r, c, _) in a.iter() {
        let k = match axis {
            Axis::Row => r,
            Axis::Column => c,
        };
        *counts.entry(k.clone()).or_default() += 1;
    }
    let deg = Key::new(DEGREE_COLUMN).expect("static key");
    AssociativeArray::collect(
        counts
            .into_iter()
            .map(|(k, n)| (k, deg.clone(), Value::Number(n as f64))),
    )
}

/// `A ⊕.⊗ Aᵀ` under `arith`. Numeric input only; apply `logical` to tables.
pub fn correlate(a: &AssociativeArray) -> Result<AssociativeArray> {
    arrayprod(a, &a.transpose(), Semiring::Arith)
}

/// Turns the values of one column into column keys: `E(r, v) = 1` for every
/// row `r` with `A(r, col) = v`.
pub fn incidence(a: &AssociativeArray, col: &Key) -> Result<AssociativeArray> {
    let mut entries = Vec::new();
    for (r, row) in a.rows() {
        if let Some(v) = row.get(col) {
            entries.push((r.clone(), Key::try_from(v.to_string())?, Value::Number(1.0)));
        }
    }
    Ok(AssociativeArray::collect(entries))
}

/// Counts how often each value of `row_col` co-occurs with each value of
/// `col_col` on the same row, e.g. genre-by-artist song counts.
pub fn relationship(
    a: &AssociativeArray,
    row_col: &Key,
    col_col: &Key,
) -> Result<AssociativeArray> {
    let left = incidence(a, row_col)?.transpose();
    let right = incidence(a, col_col)?;
    arrayprod(&left, &right, Semiring::Arith)
}

/// Vertices reachable in exactly `steps` hops from `sources`, as a single
/// `front` row of ones. With `steps == 0` the sources that appear in `a` on
/// either axis are returned.
pub fn bfs(a: &AssociativeArray, sources: &[Key], steps: usize) -> AssociativeArray {
    let front = Key::new(FRONTIER_ROW).expect("static key");
    let cols = a.col_key_set();
    let mut frontier = AssociativeArray::collect(
        sources
            .iter()
            .filter(|s| a.row(s).is_some() || cols.contains(*s))
            .map(|s| (front.clone(), s.clone(), Value::Number(1.0))),
    );
    for _ in 0..steps {
        if frontier.is_empty() {
            break;
        }
        frontier = pass_through(&frontier, a, Side::Right).logical();
    }
    frontier
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::key;
    use crate::sample::songs;

    fn genre_by_artist() -> AssociativeArray {
        relationship(&songs(), &key!("Genre"), &key!("Artist")).unwrap()
    }

    fn arr(entries: &[(&str, &str, f64)]) -> AssociativeArray {
        AssociativeArray::from_triples(
            entries
                .iter()
                .map(|&(r, c, v)| (key!(r), key!(c), Value::Number(v))),
            Semiring::Arith,
        )
        .unwrap()
    }

    #[test]
    fn relationship_counts_songs() {
        assert_eq!(
            genre_by_artist(),
            arr(&[
                ("Electronic", "Bandayde", 1.0),
                ("Electronic", "Kastle", 1.0),
                ("Pop", "Kitten", 1.0),
                ("Rock", "Kitten", 1.0),
            ])
        );
        let artists = relationship(&songs(), &key!("Artist"), &key!("Artist")).unwrap();
        assert_eq!(
            artists.get(&key!("Kitten"), &key!("Kitten")),
            Some(&Value::Number(2.0))
        );
    }

    #[test]
    fn degree_examples() {
        assert!(degree(&AssociativeArray::new(), Axis::Row).is_empty());
        assert_eq!(
            degree(&genre_by_artist().logical(), Axis::Row),
            arr(&[
                ("Electronic", "deg", 2.0),
                ("Pop", "deg", 1.0),
                ("Rock", "deg", 1.0)
            ])
        );
        let d = degree(&songs(), Axis::Column);
        assert_eq!(d.nnz(), 4);
        assert!(d.iter().all(|(_, _, v)| *v == Value::Number(4.0)));
    }

    #[test]
    fn correlate_examples() {
        assert_eq!(
            correlate(&arr(&[("r", "c", 1.0)])).unwrap(),
            arr(&[("r", "r", 1.0)])
        );
        assert!(correlate(&AssociativeArray::new()).unwrap().is_empty());
        let c = correlate(&genre_by_artist()).unwrap();
        assert_eq!(c.nnz(), 5);
        assert_eq!(
            c.get(&key!("Electronic"), &key!("Electronic")),
            Some(&Value::Number(2.0))
        );
        assert_eq!(
            c.get(&key!("Rock"), &key!("Pop")),
            Some(&Value::Number(1.0))
        );
        assert_eq!(c, c.transpose());
        assert!(correlate(&songs()).is_err());
    }

    #[test]
    fn bfs_examples() {
        let g = arr(&[
            ("a", "b", 1.0),
            ("b", "c", 1.0),
            ("c", "a", 1.0),
            ("b", "d", 1.0),
        ]);
        let s0 = bfs(&g, &[key!("a"), key!("zz")], 0);
        assert_eq!(s0, arr(&[("front", "a", 1.0)]));
        // "d" only appears as a column and is still a valid source
        assert_eq!(bfs(&g, &[key!("d")], 0), arr(&[("front", "d", 1.0)]));
        assert_eq!(
            bfs(&g, &[key!("a")], 2),
            arr(&[("front", "c", 1.0), ("front", "d", 1.0)])
        );
        assert_eq!(bfs(&g, &[key!("a")], 3), arr(&[("front", "a", 1.0)]));

        let kitten = bfs(
            &genre_by_artist().transpose().logical(),
            &[key!("Kitten")],
            1,
        );
        assert_eq!(
            kitten,
            arr(&[("front", "Pop", 1.0), ("front", "Rock", 1.0)])
        );
        assert!(bfs(&g, &[key!("absent")], 1).is_empty());
    }
}
