use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Row or column label.
///
/// Keys are non-empty UTF-8 strings without TAB, LF or CR, ordered bytewise on
/// their encoding. Cloning is a reference-count bump.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(Arc<str>);

impl Key {
    pub fn new(text: &str) -> Result<Self> {
        Self::validate(text)?;
        Ok(Key(Arc::from(text)))
    }

    fn validate(text: &str) -> Result<()> {
        let reason = if text.is_empty() {
            "empty"
        } else if text.contains('\t') {
            "contains TAB"
        } else if text.contains('\n') {
            "contains LF"
        } else if text.contains('\r') {
            "contains CR"
        } else {
            return Ok(());
        };
        Err(Error::InvalidKey {
            key: text.to_owned(),
            reason,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn starts_with(&self, prefix: &Key) -> bool {
        self.as_bytes().starts_with(prefix.as_bytes())
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Key {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Key::new(s)
    }
}

impl TryFrom<&str> for Key {
    type Error = Error;

    fn try_from(s: &str) -> Result<Self> {
        Key::new(s)
    }
}

impl TryFrom<String> for Key {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Key::validate(&s)?;
        Ok(Key(Arc::from(s)))
    }
}

impl Borrow<str> for Key {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Key {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Builds a key from a literal known to be valid. Panics otherwise.
#[macro_export]
macro_rules! key {
    ($s:expr) => {
        $crate::Key::new($s).expect("valid key literal")
    };
}
