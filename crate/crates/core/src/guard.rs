//! Size guards for the exhaustive computations.

use std::env;

use crate::{Error, Result};

/// Limits on the carriers the exhaustive routines accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest algebra for brute-force congruence enumeration.
    pub algebra: usize,
    /// Largest space carrier for exhaustive subset scans.
    pub space: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            algebra: 12,
            space: 6,
        }
    }
}

impl Guards {
    /// Name of the environment variable that overrides the defaults.
    pub const ENV: &'static str = "TENSYM_GUARD";

    /// Defaults, overridden by `TENSYM_GUARD` when it is set.
    pub fn from_env() -> Result<Self> {
        match env::var(Self::ENV) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Parses `K` (algebra guard only) or `algebra=K,space=J` (either key
    /// may be omitted).
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Semantic(format!("malformed guard setting `{text}`"));
        let mut guards = Self::default();
        let text = text.trim();
        if let Ok(k) = text.parse::<usize>() {
            guards.algebra = k;
            return Ok(guards);
        }
        for part in text.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "algebra" => guards.algebra = value,
                "space" => guards.space = value,
                _ => return Err(bad()),
            }
        }
        Ok(guards)
    }

    pub(crate) fn check_algebra(&self, size: usize) -> Result<()> {
        if size > self.algebra {
            return Err(Error::SizeGuard {
                what: "algebra",
                size,
                limit: self.algebra,
            });
        }
        Ok(())
    }

    pub(crate) fn check_space(&self, size: usize) -> Result<()> {
        if size > self.space {
            return Err(Error::SizeGuard {
                what: "space",
                size,
                limit: self.space,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Guards::parse("16").unwrap().algebra, 16);
        let g = Guards::parse("algebra=20, space=8").unwrap();
        assert_eq!((g.algebra, g.space), (20, 8));
        assert_eq!(Guards::parse("space=3").unwrap().algebra, 12);
        assert!(Guards::parse("lots").is_err());
        assert!(Guards::parse("colour=3").is_err());
    }
}
