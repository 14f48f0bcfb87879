use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite set of vertex degrees, every element at least 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSet(BTreeSet<u32>);

impl DegreeSet {
    pub fn new(degrees: impl IntoIterator<Item = u32>) -> Result<Self> {
        let set: BTreeSet<u32> = degrees.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::InvalidDegree(0));
        }
        Ok(Self(set))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `{1, ..., max}`; empty when `max == 0`.
    pub fn range(max: u32) -> Self {
        Self((1..=max).collect())
    }

    pub fn contains(&self, d: u32) -> bool {
        self.0.contains(&d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn difference(&self, other: &DegreeSet) -> DegreeSet {
        Self(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &DegreeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// All elements odd.
    pub fn all_odd(&self) -> bool {
        self.0.iter().all(|d| d % 2 == 1)
    }

    /// Every subset of `{1..=max}` that contains 1, by size and then
    /// lexicographically.
    pub fn subsets_containing_one(max: u32) -> Vec<DegreeSet> {
        let rest: Vec<u32> = (2..=max).collect();
        let mut out: Vec<DegreeSet> = (0u64..1 << rest.len())
            .map(|mask| {
                let mut s = BTreeSet::from([1]);
                s.extend(rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, d)| *d));
                DegreeSet(s)
            })
            .collect();
        out.sort_by(graded_lex);
        out
    }

    /// Every subset of `{lo..=hi}`, ordered as in [`DegreeSet::subsets_containing_one`].
    pub fn subsets_of_range(lo: u32, hi: u32) -> Vec<DegreeSet> {
        let pool: Vec<u32> = (lo..=hi).collect();
        let mut out: Vec<DegreeSet> = (0u64..1 << pool.len())
            .map(|mask| {
                DegreeSet(pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, d)| *d).collect())
            })
            .collect();
        out.sort_by(graded_lex);
        out
    }
}

fn graded_lex(a: &DegreeSet, b: &DegreeSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.iter().cmp(b.0.iter()))
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// Parses comma-separated degrees, e.g. `"1,3,4"`; optional braces, empty string is the empty set.
impl FromStr for DegreeSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut set = BTreeSet::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let d: u32 = part.parse().map_err(|_| format!("invalid degree {part:?}"))?;
            if d == 0 {
                return Err("degrees must be positive".into());
            }
            if !set.insert(d) {
                return Err(format!("degree {d} listed twice"));
            }
        }
        Ok(DegreeSet(set))
    }
}

/// Either every vertex degree must lie in `Allowed`, or none may lie in `Forbidden`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DegreeRule {
    Allowed(DegreeSet),
    Forbidden(DegreeSet),
}

impl DegreeRule {
    pub fn allowed(degrees: impl IntoIterator<Item = u32>) -> Result<Self> {
        let set = DegreeSet::new(degrees)?;
        if set.is_empty() {
            return Err(Error::EmptyAllowedSet);
        }
        Ok(Self::Allowed(set))
    }

    pub fn forbidden(degrees: impl IntoIterator<Item = u32>) -> Result<Self> {
        Ok(Self::Forbidden(DegreeSet::new(degrees)?))
    }

    pub fn admits(&self, degree: u32) -> bool {
        match self {
            Self::Allowed(p) => p.contains(degree),
            Self::Forbidden(f) => !f.contains(degree),
        }
    }

    pub fn degrees(&self) -> &DegreeSet {
        match self {
            Self::Allowed(s) | Self::Forbidden(s) => s,
        }
    }
}

impl fmt::Display for DegreeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Allowed(s) => write!(f, "allowed{s}"),
            Self::Forbidden(s) => write!(f, "forbidden{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: DegreeSet = "1, 3,4".parse().unwrap();
        assert_eq!(s.to_string(), "{1,3,4}");
        assert!("".parse::<DegreeSet>().unwrap().is_empty());
        assert!("{2,3,5}".parse::<DegreeSet>().unwrap().contains(5));
        assert!("0,1".parse::<DegreeSet>().is_err());
        assert!("1,1".parse::<DegreeSet>().is_err());
        assert!("x".parse::<DegreeSet>().is_err());
    }

    #[test]
    fn subset_enumeration_order() {
        let subs: Vec<String> = DegreeSet::subsets_containing_one(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(subs, ["{1}", "{1,2}", "{1,3}", "{1,2,3}"]);
        assert_eq!(DegreeSet::subsets_of_range(2, 5).len(), 16);
    }

    #[test]
    fn rule_validation() {
        assert_eq!(DegreeRule::allowed([]), Err(Error::EmptyAllowedSet));
        assert_eq!(DegreeRule::forbidden([0]), Err(Error::InvalidDegree(0)));
        let r = DegreeRule::forbidden([2]).unwrap();
        assert!(r.admits(1) && !r.admits(2) && r.admits(7));
    }
}
