//! The built-in semirings.
//!
//! Arrays are not tied to a semiring. Every algebraic operation takes one as a
//! parameter, so the same table can be combined as text under `Lattice` and as
//! counts under `Arith`.
//!
//! Identities that are not finite numbers (the ±∞ of the tropical semirings)
//! are never materialized; an absent entry plays that role.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semiring {
    /// `+` and `×`.
    Arith,
    /// `max` and `+`.
    MaxPlus,
    /// `min` and `+`.
    MinPlus,
    /// `max` and `min` over numbers.
    MaxMin,
    /// `max` and `min` under the total [`Value`] order; admits text.
    Lattice,
}

impl Semiring {
    pub const ALL: [Semiring; 5] = [
        Semiring::Arith,
        Semiring::MaxPlus,
        Semiring::MinPlus,
        Semiring::MaxMin,
        Semiring::Lattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semiring::Arith => "arith",
            Semiring::MaxPlus => "maxplus",
            Semiring::MinPlus => "minplus",
            Semiring::MaxMin => "maxmin",
            Semiring::Lattice => "lattice",
        }
    }

    pub fn numeric_only(self) -> bool {
        !matches!(self, Semiring::Lattice)
    }

    /// Additive identity, when it is a finite value.
    pub fn zero(self) -> Option<Value> {
        match self {
            Semiring::Arith => Some(Value::Number(0.0)),
            _ => None,
        }
    }

    /// Multiplicative identity, when it is a finite value.
    pub fn one(self) -> Option<Value> {
        match self {
            Semiring::Arith => Some(Value::Number(1.0)),
            Semiring::MaxPlus | Semiring::MinPlus => Some(Value::Number(0.0)),
            Semiring::MaxMin | Semiring::Lattice => None,
        }
    }

    /// Whether a computed value must be dropped rather than stored.
    pub fn drops(self, v: &Value) -> bool {
        v.is_empty() || self.zero().is_some_and(|z| &z == v)
    }

    /// Rejects text under a numeric-only semiring.
    pub fn admit(self, v: &Value) -> Result<()> {
        match v {
            Value::Text(s) if self.numeric_only() => Err(Error::NonNumeric {
                semiring: self.name(),
                value: s.clone(),
            }),
            _ => Ok(()),
        }
    }

    fn numbers(self, a: &Value, b: &Value) -> Result<(f64, f64)> {
        match (a, b) {
            (Value::Number(x), Value::Number(y)) => Ok((*x, *y)),
            _ => {
                self.admit(a)?;
                self.admit(b)?;
                unreachable!("admit rejects every text value for numeric semirings")
            }
        }
    }

    pub fn plus(self, a: &Value, b: &Value) -> Result<Value> {
        match self {
            Semiring::Lattice => Ok(a.max(b).clone()),
            _ => {
                let (x, y) = self.numbers(a, b)?;
                let r = match self {
                    Semiring::Arith => x + y,
                    Semiring::MaxPlus | Semiring::MaxMin => x.max(y),
                    Semiring::MinPlus => x.min(y),
                    Semiring::Lattice => unreachable!(),
                };
                Value::number(r)
            }
        }
    }

    pub fn times(self, a: &Value, b: &Value) -> Result<Value> {
        match self {
            Semiring::Lattice => Ok(a.min(b).clone()),
            _ => {
                let (x, y) = self.numbers(a, b)?;
                let r = match self {
                    Semiring::Arith => x * y,
                    Semiring::MaxPlus | Semiring::MinPlus => x + y,
                    Semiring::MaxMin => x.min(y),
                    Semiring::Lattice => unreachable!(),
                };
                Value::number(r)
            }
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown semiring {0:?} (expected arith, maxplus, minplus, maxmin or lattice)")]
pub struct UnknownSemiring(pub String);

impl FromStr for Semiring {
    type Err = UnknownSemiring;

    fn from_str(s: &str) -> Result<Self, UnknownSemiring> {
        Semiring::ALL
            .into_iter()
            .find(|sr| sr.name() == s)
            .ok_or_else(|| UnknownSemiring(s.to_owned()))
    }
}
