//! Finite unions of closed subintervals of the voter continuum `[0, 1]`.
//!
//! Every strategy of an informed politician is an [`IntervalSet`]. Sets are
//! kept in a canonical form: sorted, pairwise disjoint, with every gap
//! between consecutive intervals at least [`MERGE_GAP`] long.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Intervals separated by less than this are merged during normalization.
pub const MERGE_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi)
        {
            return Err(Error::Domain(format!(
                "interval endpoints must lie in [0, 1], got ({lo}, {hi})"
            )));
        }
        if lo > hi {
            return Err(Error::Domain(format!(
                "interval lower end {lo} exceeds upper end {hi}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// A finite union of disjoint closed intervals in `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { intervals: Vec::new() }
    }

    /// The single interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::normalize(&[(lo, hi)])
    }

    /// Builds the canonical representation of a list of `(lo, hi)` pairs.
    ///
    /// Pairs are sorted and any two whose gap is below [`MERGE_GAP`]
    /// (including overlapping or touching pairs) are merged. Degenerate
    /// pairs with `lo == hi` are kept.
    pub fn normalize(raw: &[(f64, f64)]) -> Result<Self> {
        let intervals = raw
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_valid(intervals))
    }

    fn from_valid(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for next in intervals {
            match merged.last_mut() {
                Some(cur) if next.lo - cur.hi < MERGE_GAP => cur.hi = cur.hi.max(next.hi),
                _ => merged.push(next),
            }
        }
        IntervalSet { intervals: merged }
    }

    /// Normalizes and then drops measure-zero pieces.
    fn canonical(intervals: Vec<Interval>) -> Self {
        let mut set = Self::from_valid(intervals);
        set.intervals.retain(|i| !i.is_degenerate());
        set
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue measure: the sum of interval lengths.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(t))
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].lo.max(b[j].lo);
            let hi = a[i].hi.min(b[j].hi);
            if lo < hi {
                out.push(Interval { lo, hi });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::canonical(out)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let all = self.intervals.iter().chain(&other.intervals).copied().collect();
        Self::canonical(all)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersect(&other.complement())
    }

    /// Complement within `[0, 1]`, as closed intervals.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = 0.0;
        for i in &self.intervals {
            if i.lo > cursor {
                out.push(Interval { lo: cursor, hi: i.lo });
            }
            cursor = cursor.max(i.hi);
        }
        if cursor < 1.0 {
            out.push(Interval { lo: cursor, hi: 1.0 });
        }
        Self::canonical(out)
    }

    /// The leftmost part of the set with the given measure (or the whole set
    /// when `mass` exceeds its measure).
    pub fn leftmost(&self, mass: f64) -> IntervalSet {
        let mut remaining = mass.max(0.0);
        let mut out = Vec::new();
        for i in &self.intervals {
            if remaining <= 0.0 {
                break;
            }
            let take = i.len().min(remaining);
            out.push(Interval { lo: i.lo, hi: i.lo + take });
            remaining -= take;
        }
        Self::canonical(out)
    }

    /// All interval endpoints in ascending order.
    pub fn endpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals.iter().flat_map(|i| [i.lo, i.hi])
    }
}

/// Renders the set as a literal: semicolon-separated `lo,hi` pairs.
/// The empty set renders as the empty string.
impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{}", i.lo, i.hi)?;
        }
        Ok(())
    }
}

impl FromStr for IntervalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse { literal: s.to_string(), reason };
        let mut pairs = Vec::new();
        for piece in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (lo, hi) = piece
                .split_once(',')
                .ok_or_else(|| parse_err(format!("expected `lo,hi`, got {piece:?}")))?;
            let lo: f64 = lo.trim().parse().map_err(|e| parse_err(format!("{lo:?}: {e}")))?;
            let hi: f64 = hi.trim().parse().map_err(|e| parse_err(format!("{hi:?}: {e}")))?;
            pairs.push((lo, hi));
        }
        IntervalSet::normalize(&pairs)
    }
}
