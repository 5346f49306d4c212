//! Integer partition combinatorics.
//!
//! Partitions are weakly decreasing sequences of positive integers. This
//! module covers conjugation, dominance order, almost rectangular
//! decompositions and the associated count `r`, the maximal nilpotency
//! index `i_lambda` over the nilpotent commutator, the closed form for the
//! generic commuting Jordan type when `r <= 2`, Hilbert-function
//! combinatorics (`lambda(H)`, trapezoid admissibility), and enumeration of
//! all partitions of `n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts, with the weight cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition, validating that parts are positive and weakly
    /// decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for (pos, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(Error::ZeroPart { pos });
            }
            if pos > 0 && parts[pos - 1] < p {
                return Err(Error::NotWeaklyDecreasing { pos });
            }
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new(), n: 0 }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Weight: the integer being partitioned.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at `idx` (0-based), or 0 past the end.
    pub fn part(&self, idx: usize) -> usize {
        self.parts.get(idx).copied().unwrap_or(0)
    }

    /// Parses a comma list ("4,4,3,3,2") or power notation ("4^2,3^2,2").
    /// Whitespace around tokens is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        let mut offset = 0;
        for token in text.split(',') {
            let trimmed = token.trim();
            let pos = offset + (token.len() - token.trim_start().len());
            if trimmed.is_empty() {
                return Err(Error::Parse { pos, msg: "empty part".into() });
            }
            let (base, count) = match trimmed.split_once('^') {
                None => (trimmed, None),
                Some((b, e)) => (b.trim(), Some(e.trim())),
            };
            let part: usize = base.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("expected integer, found {base:?}"),
            })?;
            let mult: usize = match count {
                None => 1,
                Some(e) => e.parse().map_err(|_| Error::Parse {
                    pos,
                    msg: format!("expected exponent, found {e:?}"),
                })?,
            };
            if mult == 0 {
                return Err(Error::Parse { pos, msg: "exponent must be positive".into() });
            }
            parts.extend(std::iter::repeat_n(part, mult));
            offset += token.len() + 1;
        }
        Partition::new(parts)
    }

    /// Power notation with exponents for repeated parts: "4^2,3^2,2".
    pub fn power_notation(&self) -> String {
        let mut out = String::new();
        let mut idx = 0;
        while idx < self.parts.len() {
            let part = self.parts[idx];
            let mut mult = 1;
            while idx + mult < self.parts.len() && self.parts[idx + mult] == part {
                mult += 1;
            }
            if !out.is_empty() {
                out.push(',');
            }
            if mult == 1 {
                out.push_str(&part.to_string());
            } else {
                out.push_str(&format!("{part}^{mult}"));
            }
            idx += mult;
        }
        out
    }

    /// Conjugate (transpose of the Ferrers diagram): part i of the result
    /// counts the parts of `self` that are >= i+1. Involutive.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        if let Some(&first) = self.parts.first() {
            parts.reserve(first);
            for i in 1..=first {
                parts.push(self.parts.iter().take_while(|&&p| p >= i).count());
            }
        }
        let n = self.n;
        Partition { parts, n }
    }

    /// Dominance comparison. Both partitions must have the same weight.
    /// `self` dominates `other` when every prefix sum of `self` is >= the
    /// corresponding prefix sum of `other`.
    pub fn dominance_compare(&self, other: &Partition) -> Result<Dominance> {
        if self.n != other.n {
            return Err(Error::WeightMismatch { left: self.n, right: other.n });
        }
        let len = self.parts.len().max(other.parts.len());
        let (mut acc_l, mut acc_r) = (0usize, 0usize);
        let (mut above, mut below) = (false, false);
        for i in 0..len {
            acc_l += self.part(i);
            acc_r += other.part(i);
            match acc_l.cmp(&acc_r) {
                Ordering::Greater => above = true,
                Ordering::Less => below = true,
                Ordering::Equal => {}
            }
        }
        Ok(match (above, below) {
            (false, false) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (true, true) => Dominance::Incomparable,
        })
    }

    /// True when this partition dominates (or equals) `other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        Ok(matches!(
            self.dominance_compare(other)?,
            Dominance::Greater | Dominance::Equal
        ))
    }

    /// Largest and smallest part differ by at most one.
    pub fn is_almost_rectangular(&self) -> bool {
        assert!(!self.is_empty(), "almost-rectangular test needs a nonempty partition");
        self.parts[0] - self.parts[self.parts.len() - 1] <= 1
    }

    /// Minimal number of almost rectangular sub-partitions whose union is
    /// this partition, with a witness decomposition into consecutive
    /// segments of the sorted parts.
    ///
    /// Greedy on the sorted parts: a segment closes as soon as the next
    /// part drops more than one below the segment's first part. Optimality
    /// is checked against a brute-force oracle in the tests.
    pub fn ar_count(&self) -> (usize, ArDecomposition) {
        assert!(!self.is_empty(), "ar_count needs a nonempty partition");
        let mut blocks = Vec::new();
        let mut start = 0;
        for idx in 1..self.parts.len() {
            if self.parts[idx] + 1 < self.parts[start] {
                blocks.push(start..idx);
                start = idx;
            }
        }
        blocks.push(start..self.parts.len());
        let count = blocks.len();
        (count, ArDecomposition { blocks })
    }

    /// Shorthand for the count from [`Partition::ar_count`].
    pub fn r(&self) -> usize {
        self.ar_count().0
    }

    /// Maximal nilpotency index over the nilpotent commutator of a
    /// nilpotent matrix with this Jordan type:
    ///
    /// the maximum of `2(i-1) + lambda_i + ... + lambda_{i+r}` over
    /// segments with `lambda_i - lambda_{i+r} <= 1` and, when `i > 1`,
    /// `lambda_{i-1} >= 2`.
    pub fn oblak_index(&self) -> usize {
        self.oblak_index_over(self.parts.len())
    }

    /// True when restricting the segment start to `i < l` (rather than
    /// `i <= l`) changes the index. Only meaningful for two or more parts;
    /// surfaces as a report flag.
    pub fn oblak_range_disagrees(&self) -> bool {
        let l = self.parts.len();
        l >= 2 && self.oblak_index_over(l) != self.oblak_index_over(l - 1)
    }

    fn oblak_index_over(&self, max_start: usize) -> usize {
        assert!(!self.is_empty(), "oblak_index needs a nonempty partition");
        let mut best = 0;
        for i0 in 0..max_start {
            if i0 > 0 && self.parts[i0 - 1] < 2 {
                continue;
            }
            let mut sum = 0;
            for j in i0..self.parts.len() {
                if self.parts[i0] - self.parts[j] > 1 {
                    break;
                }
                sum += self.parts[j];
                best = best.max(2 * i0 + sum);
            }
        }
        best
    }

    /// Closed form for the generic commuting Jordan type when the
    /// almost-rectangular count is at most two: `(n)` for r = 1 and
    /// `(i_lambda, n - i_lambda)` for r = 2. `None` otherwise.
    pub fn d_closed_form(&self) -> Option<Partition> {
        assert!(!self.is_empty(), "d_closed_form needs a nonempty partition");
        match self.r() {
            1 => Some(Partition::new(vec![self.n]).expect("weight is positive")),
            2 => {
                let i = self.oblak_index();
                Some(
                    Partition::new(vec![i, self.n - i])
                        .expect("index formula yields the larger part first"),
                )
            }
            _ => None,
        }
    }

    /// Consecutive parts differ by at least two (vacuous for one part).
    pub fn has_gaps_ge_two(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1] + 2)
    }

    /// Ferrers diagram, one row per part, top-down.
    pub fn ferrers(&self) -> String {
        self.parts
            .iter()
            .map(|&p| "■".repeat(p))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for part in &self.parts {
            seq.serialize_element(part)?;
        }
        seq.end()
    }
}

/// Outcome of a dominance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Witness for [`Partition::ar_count`]: consecutive index ranges into the
/// sorted parts, each spanning values that differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArDecomposition {
    blocks: Vec<Range<usize>>,
}

impl ArDecomposition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    /// The parts of each block, for display.
    pub fn block_values(&self, lambda: &Partition) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|r| lambda.parts()[r.clone()].to_vec())
            .collect()
    }
}

/// A Hilbert function: graded dimensions `(h_0, ..., h_k)` with `h_0 = 1`
/// and every entry positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    values: Vec<usize>,
}

impl HilbertFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidHilbert { msg: "empty sequence".into() });
        }
        if values[0] != 1 {
            return Err(Error::InvalidHilbert { msg: format!("h_0 = {} != 1", values[0]) });
        }
        if let Some(pos) = values.iter().position(|&h| h == 0) {
            return Err(Error::InvalidHilbert { msg: format!("h_{pos} = 0") });
        }
        Ok(HilbertFunction { values })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Top nonzero degree `k`.
    pub fn k(&self) -> usize {
        self.values.len() - 1
    }

    /// Total dimension `sum h_i`.
    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    /// The partition whose i-th part counts the entries `h_j >= i`,
    /// counting over the full sequence including `h_0`.
    pub fn lambda_of_h(&self) -> Partition {
        let max = self.values.iter().copied().max().unwrap_or(0);
        let parts: Vec<usize> = (1..=max)
            .map(|i| self.values.iter().filter(|&&h| h >= i).count())
            .collect();
        Partition::new(parts).expect("counting thresholds is weakly decreasing")
    }

    /// Trapezoid shape admissible for an artinian complete intersection of
    /// embedding dimension at most two: a ramp `1, 2, ..., d` followed by a
    /// weakly decreasing tail bounded by `d`, dropping by at most one per
    /// step (including the junction) and ending at 1. The sequence `(1)`
    /// itself is admissible.
    pub fn is_macaulay_admissible(&self) -> bool {
        let h = &self.values;
        // Longest initial ramp 1, 2, ..., d.
        let mut d = 1;
        while d < h.len() && h[d] == d + 1 {
            d += 1;
        }
        if d == h.len() {
            // No tail: only (1) qualifies.
            return h.len() == 1;
        }
        if h[d] > d {
            return false;
        }
        for i in d..h.len() {
            if i > 0 && (h[i] > h[i - 1] || h[i - 1] - h[i] > 1) {
                return false;
            }
        }
        *h.last().expect("nonempty") == 1
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for HilbertFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for v in &self.values {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// Iterator over all partitions of `n` in decreasing lexicographic order
/// (reverse lexicographic): `(n)` first, `(1^n)` last. `n = 0` yields the
/// empty partition once.
pub fn partitions_of(n: usize) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let n: usize = current.iter().sum();
        // Successor: shrink the last part greater than one, then re-spread
        // the remainder in chunks of the new value.
        let mut work = current.clone();
        self.next = work.iter().rposition(|&p| p > 1).map(|idx| {
            let new_val = work[idx] - 1;
            let mut rem: usize = work[idx..].iter().sum::<usize>() - new_val;
            work.truncate(idx);
            work.push(new_val);
            while rem > 0 {
                let chunk = rem.min(new_val);
                work.push(chunk);
                rem -= chunk;
            }
            work
        });
        Some(Partition { parts: current, n })
    }
}
