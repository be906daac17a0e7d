use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `[m]` used as a forbidden pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    entries: Vec<u32>,
}

impl Pattern {
    /// Builds a pattern, checking that `entries` is a permutation of `[m]`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(Error::InvalidPattern("pattern must be nonempty".into()));
        }
        let mut seen = vec![false; m];
        for &e in &entries {
            if e == 0 || e as usize > m || seen[e as usize - 1] {
                return Err(Error::InvalidPattern(format!(
                    "entries {entries:?} are not a permutation of [{m}]"
                )));
            }
            seen[e as usize - 1] = true;
        }
        Ok(Pattern { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is at least 1 by construction
    }

    /// `rho_m ... rho_1`.
    pub fn reversal(&self) -> Pattern {
        let mut entries = self.entries.clone();
        entries.reverse();
        Pattern { entries }
    }

    /// `(m+1-rho_1) ... (m+1-rho_m)`.
    pub fn complement(&self) -> Pattern {
        let m = self.entries.len() as u32;
        Pattern {
            entries: self.entries.iter().map(|&e| m + 1 - e).collect(),
        }
    }

    /// True when the last entry is the maximum `m`. Drives the empty-block
    /// shift direction in the star encoding.
    pub fn ends_with_max(&self) -> bool {
        *self.entries.last().unwrap() == self.entries.len() as u32
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() <= 9 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Accepts a digit string (`123`) or comma-separated entries (`1,2,3`).
    fn from_str(s: &str) -> Result<Self> {
        let entries = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad pattern character {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Pattern::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_and_complement_examples() {
        let p123: Pattern = "123".parse().unwrap();
        assert_eq!(p123.reversal(), "321".parse().unwrap());
        let p231: Pattern = "231".parse().unwrap();
        assert_eq!(p231.complement(), "213".parse().unwrap());
        let p213: Pattern = "213".parse().unwrap();
        assert_eq!(p213.reversal(), "312".parse().unwrap());
    }

    #[test]
    fn reversal_is_an_involution() {
        let p: Pattern = "3142".parse().unwrap();
        assert_eq!(p.reversal().reversal(), p);
        assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Pattern::new(vec![1, 1, 2]).is_err());
        assert!(Pattern::new(vec![2, 3]).is_err());
        assert!(Pattern::new(vec![]).is_err());
        assert!("103".parse::<Pattern>().is_err());
    }

    #[test]
    fn ends_with_max() {
        assert!("123".parse::<Pattern>().unwrap().ends_with_max());
        assert!(!"132".parse::<Pattern>().unwrap().ends_with_max());
        assert!(!"21".parse::<Pattern>().unwrap().ends_with_max());
    }
}
