//! A four-song table with artist, date, duration and genre columns, used in
//! documentation, tests and the CLI walkthrough.

use crate::array::AssociativeArray;
use crate::key::Key;
use crate::semiring::Semiring;
use crate::value::Value;

pub const SONGS_CSV: &str = "\
A,Artist,Date,Duration,Genre
053013ktnA1,Bandayde,2013-05-30,5:14,Electronic
053013ktnA2,Kastle,2013-05-30,3:07,Electronic
063012ktnA1,Kitten,2010-06-30,4:38,Rock
082812ktnA1,Kitten,2012-08-28,3:25,Pop
";

const SONGS: [[&str; 5]; 4] = [
    [
        "053013ktnA1",
        "Bandayde",
        "2013-05-30",
        "5:14",
        "Electronic",
    ],
    ["053013ktnA2", "Kastle", "2013-05-30", "3:07", "Electronic"],
    ["063012ktnA1", "Kitten", "2010-06-30", "4:38", "Rock"],
    ["082812ktnA1", "Kitten", "2012-08-28", "3:25", "Pop"],
];

const COLUMNS: [&str; 4] = ["Artist", "Date", "Duration", "Genre"];

/// The song table as text values.
pub fn songs() -> AssociativeArray {
    let triples = SONGS.iter().flat_map(|row| {
        COLUMNS.iter().zip(&row[1..]).map(move |(c, v)| {
            (
                Key::new(row[0]).unwrap(),
                Key::new(c).unwrap(),
                Value::from(*v),
            )
        })
    });
    AssociativeArray::from_triples(triples, Semiring::Lattice).expect("static table is valid")
}
