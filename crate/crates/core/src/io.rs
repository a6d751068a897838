//! Reading and writing arrays: dense CSV tables, triple files and Graphviz
//! DOT.
//!
//! Triple file layout, one record per LF-terminated line after the magic
//! line `%aa-triples 1`:
//!
//! ```text
//! row<TAB>col<TAB>type<TAB>value
//! ```
//!
//! `type` is `n` for numbers (shortest round-trip decimal) or `t` for raw
//! text. Records are written sorted by (row, col) bytewise.

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::array::AssociativeArray;
use crate::error::{Error, Result};
use crate::key::Key;
use crate::semiring::Semiring;
use crate::value::Value;

pub const TRIPLES_MAGIC: &str = "%aa-triples 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeTag {
    Number,
    Text,
    /// Deleted cell; only appears in store segments.
    Tombstone,
}

impl TypeTag {
    pub fn as_char(self) -> char {
        match self {
            TypeTag::Number => 'n',
            TypeTag::Text => 't',
            TypeTag::Tombstone => 'x',
        }
    }
}

/// One line of a triple file or store segment.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleRecord {
    pub row: Key,
    pub col: Key,
    pub type_tag: TypeTag,
    pub value_text: String,
}

impl TripleRecord {
    pub fn entry(row: Key, col: Key, v: &Value) -> Result<Self> {
        let (type_tag, value_text) = match v {
            Value::Number(x) => (TypeTag::Number, format_number(*x)),
            Value::Text(s) if s.contains(['\n', '\r']) => {
                return Err(Error::Unserializable(s.clone()))
            }
            Value::Text(s) => (TypeTag::Text, s.clone()),
        };
        Ok(TripleRecord {
            row,
            col,
            type_tag,
            value_text,
        })
    }

    pub fn tombstone(row: Key, col: Key) -> Self {
        TripleRecord {
            row,
            col,
            type_tag: TypeTag::Tombstone,
            value_text: String::new(),
        }
    }

    /// `None` for tombstones.
    pub fn value(&self) -> Option<Value> {
        match self.type_tag {
            TypeTag::Number => Some(Value::Number(
                parse_decimal(&self.value_text).expect("validated when parsed"),
            )),
            TypeTag::Text => Some(Value::Text(self.value_text.clone())),
            TypeTag::Tombstone => None,
        }
    }

    pub fn write_line(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            self.row,
            self.col,
            self.type_tag.as_char(),
            self.value_text
        );
    }

    /// Parses one line without its terminator.
    pub fn parse(line: &str, lineno: usize, allow_tombstone: bool) -> Result<Self> {
        let mut parts = line.splitn(4, '\t');
        let (Some(r), Some(c), Some(t), Some(v)) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::parse(lineno, "expected four TAB-separated fields"));
        };
        if v.contains('\r') {
            return Err(Error::parse(lineno, "CR in value"));
        }
        let key = |s: &str| Key::new(s).map_err(|e| Error::parse(lineno, e.to_string()));
        let (row, col) = (key(r)?, key(c)?);
        let type_tag = match t {
            "n" => {
                if parse_decimal(v).is_none() {
                    return Err(Error::parse(lineno, format!("unparseable number {v:?}")));
                }
                TypeTag::Number
            }
            "t" => TypeTag::Text,
            "x" if allow_tombstone => {
                if !v.is_empty() {
                    return Err(Error::parse(lineno, "tombstone carries a value"));
                }
                TypeTag::Tombstone
            }
            other => return Err(Error::parse(lineno, format!("bad type tag {other:?}"))),
        };
        Ok(TripleRecord {
            row,
            col,
            type_tag,
            value_text: v.to_owned(),
        })
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x}")
}

/// Whether the whole string is a decimal literal: optional sign, digits with
/// an optional fraction, optional exponent.
pub fn is_decimal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - start
    };
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let mut mantissa = digits(&mut i);
    if i < b.len() && b[i] == b'.' {
        i += 1;
        mantissa += digits(&mut i);
    }
    if mantissa == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        if digits(&mut i) == 0 {
            return false;
        }
    }
    i == b.len()
}

/// Finite value of a decimal literal.
pub fn parse_decimal(s: &str) -> Option<f64> {
    if !is_decimal(s) {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Reads a dense CSV table. The first header cell names the table and is
/// ignored; the other header cells are column keys. Each body line is a row
/// key followed by its cells. Empty cells are skipped and cells that are
/// entirely a finite decimal become numbers.
pub fn read_table<R: Read>(source: R) -> Result<AssociativeArray> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .from_reader(source);
    let mut records = rdr.records();
    let Some(header) = records.next().transpose()? else {
        return Ok(AssociativeArray::new());
    };
    let mut cols = Vec::with_capacity(header.len().saturating_sub(1));
    for cell in header.iter().skip(1) {
        let k = Key::new(cell)?;
        if cols.contains(&k) {
            return Err(Error::DuplicateKey(k));
        }
        cols.push(k);
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut triples = Vec::new();
    for rec in records {
        let rec = rec?;
        let mut cells = rec.iter();
        let row = Key::new(cells.next().unwrap_or_default())?;
        if !seen.insert(row.clone()) {
            return Err(Error::DuplicateKey(row));
        }
        for (col, cell) in cols.iter().zip(cells) {
            if cell.is_empty() {
                continue;
            }
            let v = match parse_decimal(cell) {
                Some(x) => Value::Number(x),
                None => Value::from(cell),
            };
            triples.push((row.clone(), col.clone(), v));
        }
    }
    AssociativeArray::from_triples(triples, Semiring::Lattice)
}

/// Reads a triple file; repeated cells keep the larger value.
pub fn read_triples<R: Read>(mut source: R) -> Result<AssociativeArray> {
    let mut buf = String::new();
    source.read_to_string(&mut buf)?;
    let mut lines = buf.split_terminator('\n');
    if lines.next() != Some(TRIPLES_MAGIC) {
        return Err(Error::parse(
            1,
            format!("expected magic line {TRIPLES_MAGIC:?}"),
        ));
    }
    let mut triples = Vec::new();
    for (i, line) in lines.enumerate() {
        let rec = TripleRecord::parse(line, i + 2, false)?;
        let v = rec.value().expect("tombstones rejected");
        triples.push((rec.row, rec.col, v));
    }
    AssociativeArray::from_triples(triples, Semiring::Lattice)
}

/// Serializes records sorted by (row, col) after the magic line.
pub(crate) fn render_records<'a, I>(magic: &str, records: I) -> String
where
    I: IntoIterator<Item = &'a TripleRecord>,
{
    let mut out = String::new();
    out.push_str(magic);
    out.push('\n');
    for rec in records {
        rec.write_line(&mut out);
    }
    out
}

pub fn triples_to_string(a: &AssociativeArray) -> Result<String> {
    let recs = a
        .iter()
        .map(|(r, c, v)| TripleRecord::entry(r.clone(), c.clone(), v))
        .collect::<Result<Vec<_>>>()?;
    Ok(render_records(TRIPLES_MAGIC, &recs))
}

/// Writes the array as a triple file and returns the number of bytes written.
pub fn write_triples<W: Write>(a: &AssociativeArray, mut sink: W) -> Result<usize> {
    let s = triples_to_string(a)?;
    sink.write_all(s.as_bytes())?;
    sink.flush()?;
    Ok(s.len())
}

fn dot_id(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn dot_to_string(a: &AssociativeArray) -> String {
    let mut nodes = a.col_key_set();
    nodes.extend(a.row_keys());
    let mut out = String::from("digraph aa {\n");
    for n in &nodes {
        let _ = writeln!(out, "  {};", dot_id(n.as_str()));
    }
    for (r, c, v) in a.iter() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(r.as_str()),
            dot_id(c.as_str()),
            dot_id(&v.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// Writes a Graphviz digraph: one node per distinct key, one labeled edge per
/// entry. Returns the number of bytes written.
pub fn export_dot<W: Write>(a: &AssociativeArray, mut sink: W) -> Result<usize> {
    let s = dot_to_string(a);
    sink.write_all(s.as_bytes())?;
    sink.flush()?;
    Ok(s.len())
}
