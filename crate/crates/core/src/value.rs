use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A stored cell: a finite number or a piece of text.
///
/// `Number(0.0)` and `Text("")` are the canonical empty values and are never
/// stored in an array.
#[derive(Clone, Debug)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl Value {
    pub fn number(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(Value::Number(x))
        } else {
            Err(Error::NonFinite(x))
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Value::Number(x) => *x == 0.0,
            Value::Text(s) => s.is_empty(),
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Number(x) => Some(*x),
            Value::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            Value::Number(_) => None,
        }
    }

    pub fn is_number(&self) -> bool {
        matches!(self, Value::Number(_))
    }

    pub(crate) fn check(&self) -> Result<()> {
        match self {
            Value::Number(x) if !x.is_finite() => Err(Error::NonFinite(*x)),
            _ => Ok(()),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numbers precede text; numbers compare numerically, text bytewise.
impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            // NaN is excluded at construction, so partial_cmp always succeeds.
            (Value::Number(a), Value::Number(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
            (Value::Number(_), Value::Text(_)) => Ordering::Less,
            (Value::Text(_), Value::Number(_)) => Ordering::Greater,
            (Value::Text(a), Value::Text(b)) => a.as_bytes().cmp(b.as_bytes()),
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(x) => write!(f, "{x}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}
