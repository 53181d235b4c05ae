use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of distinct variable names. The order fixes the layout of
/// every exponent vector built over it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (k, name) in names.iter().enumerate() {
            if name.is_empty() || !is_identifier(name) {
                return Err(Error::Parse(format!("invalid variable name `{name}`")));
            }
            if names[..k].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// `prefix1, …, prefixN` followed by `extra`.
    pub fn indexed(prefix: &str, n: usize, extra: &[&str]) -> Result<Arc<Self>> {
        let names = (1..=n)
            .map(|i| format!("{prefix}{i}"))
            .chain(extra.iter().map(|s| s.to_string()));
        Self::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::VarSetMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert_eq!(
            VarSet::new(["q", "t", "q"]).unwrap_err(),
            Error::DuplicateVariable("q".into())
        );
    }

    #[test]
    fn indexed_names() {
        let v = VarSet::indexed("s", 3, &["t"]).unwrap();
        assert_eq!(v.names(), ["s1", "s2", "s3", "t"]);
        assert_eq!(v.index_of("t"), Some(3));
        assert_eq!(v.index_of("s4"), None);
    }
}
