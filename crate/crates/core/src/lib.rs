//! Associative arrays: sparse two-dimensional maps from (row key, column key)
//! to values, with semiring-parameterized addition, element-wise
//! multiplication and array products.
//!
//! The same array can be read as a spreadsheet, a database table, a matrix
//! or a graph:
//!
//! * [`io`] reads CSV tables and triple files and writes triples and DOT.
//! * [`algebra`] provides `⊕`, `⊗`, `⊕.⊗` and the selection and deletion
//!   operations expressed through them.
//! * [`store`] binds an array to a persistent on-disk table.
//! * [`graph`], [`patterns`] and [`analysis`] cover the graph view, special
//!   structures and numeric properties.
//!
//! ```
//! use assoc_array::{algebra, io, key, Semiring};
//!
//! let songs = io::read_table(assoc_array::sample::SONGS_CSV.as_bytes()).unwrap();
//! assert_eq!(songs.nnz(), 16);
//! let g = assoc_array::graph::relationship(&songs, &key!("Genre"), &key!("Artist")).unwrap();
//! let corr = algebra::arrayprod(&g, &g.transpose(), Semiring::Arith).unwrap();
//! assert_eq!(corr.nnz(), 5);
//! ```

pub mod algebra;
pub mod analysis;
pub mod array;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod key;
pub mod patterns;
pub mod sample;
pub mod semiring;
pub mod store;
pub mod value;

pub use array::{AssociativeArray, Axis, KeySpec};
pub use error::{Error, Result};
pub use key::Key;
pub use semiring::Semiring;
pub use store::TableHandle;
pub use value::Value;
