//! Integer partitions and the index sets for irreducibles of the partition
//! algebra.
//!
//! A partition is stored in canonical form: positive parts, weakly
//! decreasing, no trailing zeros. Two index sets are used throughout the
//! crate:
//!
//! * `Γ_k`, all partitions with at most `k` boxes (see [`enumerate_gamma`]);
//! * `Λ_n^k`, partitions of `n` with at most `k` boxes below the first row.
//!
//! [`IntegerPartition::bar`] and [`IntegerPartition::star`] move between
//! them by adding or dropping the first row.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    /// Builds a partition from its parts. Trailing zeros are dropped; any
    /// other zero or an increase between consecutive parts is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part before a positive one"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(IntegerPartition { parts })
    }

    pub fn empty() -> Self {
        IntegerPartition { parts: Vec::new() }
    }

    /// The one-row partition `(m)`; `(0)` is the empty partition.
    pub fn row(m: u32) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            IntegerPartition { parts: vec![m] }
        }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]));
        IntegerPartition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Part `i` (0-based), reading missing parts as zero.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `self ⊆ other`, componentwise.
    pub fn is_contained_in(&self, other: &IntegerPartition) -> bool {
        self.parts.len() <= other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// `mu ⊆ self`.
    pub fn contains(&self, mu: &IntegerPartition) -> bool {
        mu.is_contained_in(self)
    }

    /// `|lambda| - |mu|` for `mu ⊆ lambda`.
    pub fn boxes_added(mu: &IntegerPartition, lambda: &IntegerPartition) -> Result<u32> {
        if !mu.is_contained_in(lambda) {
            return Err(Error::NotContained {
                mu: mu.to_string(),
                lambda: lambda.to_string(),
            });
        }
        Ok(lambda.size() - mu.size())
    }

    /// Every partition obtained by adding one box, with the (1-based) row of
    /// the new box, top row first.
    pub fn addable_boxes(&self) -> Vec<(usize, IntegerPartition)> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            if i == 0 || self.parts[i - 1] > self.part(i) {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push((i + 1, IntegerPartition { parts }));
            }
        }
        out
    }

    /// Every partition obtained by removing one corner box, with the
    /// (1-based) row of the removed box, top row first.
    pub fn removable_boxes(&self) -> Vec<(usize, IntegerPartition)> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if self.parts[i] > self.part(i + 1) {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.push((i + 1, IntegerPartition { parts }));
            }
        }
        out
    }

    /// Adds a box at the end of (1-based) `row`, if that is a valid move.
    pub fn with_box_added(&self, row: usize) -> Option<IntegerPartition> {
        if row == 0 || row > self.parts.len() + 1 {
            return None;
        }
        let i = row - 1;
        if i > 0 && self.parts[i - 1] == self.part(i) {
            return None;
        }
        let mut parts = self.parts.clone();
        if i == parts.len() {
            parts.push(1);
        } else {
            parts[i] += 1;
        }
        Some(IntegerPartition { parts })
    }

    /// Removes the last box of (1-based) `row`, if it is a corner.
    pub fn with_box_removed(&self, row: usize) -> Option<IntegerPartition> {
        if row == 0 || row > self.parts.len() {
            return None;
        }
        let i = row - 1;
        if self.parts[i] == self.part(i + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i] -= 1;
        if parts[i] == 0 {
            parts.pop();
        }
        Some(IntegerPartition { parts })
    }

    /// The row in which `self` and `other` differ by a single box, when one
    /// contains the other and the sizes differ by exactly one.
    pub fn single_box_row(&self, other: &IntegerPartition) -> Option<usize> {
        let (small, big) = if self.size() < other.size() {
            (self, other)
        } else {
            (other, self)
        };
        if big.size() != small.size() + 1 || !small.is_contained_in(big) {
            return None;
        }
        (0..big.parts.len())
            .find(|&i| big.parts[i] != small.part(i))
            .map(|i| i + 1)
    }

    /// Componentwise maximum.
    pub fn union(&self, other: &IntegerPartition) -> IntegerPartition {
        let len = self.parts.len().max(other.parts.len());
        let parts = (0..len).map(|i| self.part(i).max(other.part(i))).collect();
        IntegerPartition { parts }
    }

    /// Componentwise minimum.
    pub fn intersection(&self, other: &IntegerPartition) -> IntegerPartition {
        let len = self.parts.len().min(other.parts.len());
        let parts = (0..len).map(|i| self.parts[i].min(other.parts[i])).collect();
        IntegerPartition { parts }
    }

    /// Length of column `j` (0-based).
    pub fn column_length(&self, j: u32) -> usize {
        self.parts.iter().take_while(|&&p| p > j).count()
    }

    /// Number of standard Young tableaux of this shape, by the hook-length
    /// formula.
    pub fn f_lambda(&self) -> BigUint {
        let mut numerator = BigUint::one();
        for m in 2..=self.size() {
            numerator *= m;
        }
        let mut hooks = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = (self.column_length(j) - i - 1) as u32;
                hooks *= arm + leg + 1;
            }
        }
        numerator / hooks
    }

    /// Drops the first row: `Λ_n^k → Γ_k`.
    pub fn star(&self) -> IntegerPartition {
        IntegerPartition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Prepends a first row of length `n - |self|`: `Γ_k → Λ_n^k`.
    pub fn bar(&self, n: u32) -> Result<IntegerPartition> {
        let size = self.size();
        if n < size || n - size < self.part(0) {
            return Err(Error::InvalidArgument(format!(
                "cannot prepend a row of length {} to {} (n = {n})",
                n as i64 - size as i64,
                self
            )));
        }
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        if n - size > 0 {
            parts.push(n - size);
        }
        parts.extend_from_slice(&self.parts);
        Ok(IntegerPartition { parts })
    }

    /// Membership in `Λ_n^k`: a partition of `n` with at most `k` boxes below
    /// the first row.
    pub fn in_lambda_nk(&self, n: u32, k: u32) -> bool {
        self.size() == n && self.size() - self.part(0) <= k
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> IntegerPartition {
        let parts = (0..self.part(0))
            .map(|j| self.column_length(j) as u32)
            .collect();
        IntegerPartition { parts }
    }
}

/// Ordered by [`gamma_order`].
impl Ord for IntegerPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        gamma_order(self, other)
    }
}

impl PartialOrd for IntegerPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Free-function form of [`IntegerPartition::is_contained_in`].
pub fn contains(mu: &IntegerPartition, lambda: &IntegerPartition) -> bool {
    mu.is_contained_in(lambda)
}

/// Order used for reproducible listings: by size, then lexicographically
/// descending on the parts.
pub fn gamma_order(a: &IntegerPartition, b: &IntegerPartition) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| b.parts.cmp(&a.parts))
}

/// All partitions of `m`, lexicographically descending.
pub fn partitions_of(m: u32) -> Vec<IntegerPartition> {
    fn go(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if remaining == 0 {
            out.push(IntegerPartition {
                parts: current.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            current.push(p);
            go(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// `Γ_k`: every partition with at most `k` boxes, ordered by
/// [`gamma_order`].
pub fn enumerate_gamma(k: u32) -> Vec<IntegerPartition> {
    (0..=k).flat_map(partitions_of).collect()
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// Accepts `3,1`, `(3,1)`, and `-`, `∅`, `()` or the empty string for
    /// the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        parse_partition_at(s, 0)
    }
}

/// Parses a partition, reporting errors at `offset` plus the column within
/// `s` (1-based).
pub(crate) fn parse_partition_at(s: &str, offset: usize) -> Result<IntegerPartition> {
    let lead = s.len() - s.trim_start().len();
    let mut body = s.trim();
    let mut base = offset + lead;
    if let Some(inner) = body.strip_prefix('(') {
        let Some(inner) = inner.strip_suffix(')') else {
            return Err(Error::parse(base + body.len(), "missing closing ')'"));
        };
        body = inner;
        base += 1;
    }
    let trimmed = body.trim();
    if trimmed.is_empty() || trimmed == "-" || trimmed == "∅" {
        return Ok(IntegerPartition::empty());
    }
    let mut parts = Vec::new();
    let mut col = base;
    for piece in body.split(',') {
        let t = piece.trim();
        let at = col + (piece.len() - piece.trim_start().len()) + 1;
        let value: u32 = t
            .parse()
            .map_err(|_| Error::parse(at, format!("expected a positive integer, found {t:?}")))?;
        if value == 0 {
            return Err(Error::parse(at, "parts must be positive"));
        }
        parts.push(value);
        col += piece.len() + 1;
    }
    IntegerPartition::new(parts)
}

impl TryFrom<Vec<u32>> for IntegerPartition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        IntegerPartition::new(parts)
    }
}

impl From<IntegerPartition> for Vec<u32> {
    fn from(p: IntegerPartition) -> Self {
        p.parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn containment() {
        assert!(contains(&p(&[]), &p(&[3, 1])));
        assert!(contains(&p(&[2, 1]), &p(&[2, 1])));
        assert!(!contains(&p(&[2, 2]), &p(&[3, 1])));
    }

    #[test]
    fn boxes_added_examples() {
        assert_eq!(IntegerPartition::boxes_added(&p(&[]), &p(&[1])), Ok(1));
        assert_eq!(IntegerPartition::boxes_added(&p(&[2, 1]), &p(&[2, 1])), Ok(0));
        assert_eq!(IntegerPartition::boxes_added(&p(&[3, 1]), &p(&[3, 2])), Ok(1));
        assert!(IntegerPartition::boxes_added(&p(&[2, 2]), &p(&[3, 1])).is_err());
    }

    #[test]
    fn addable_and_removable() {
        assert_eq!(p(&[]).addable_boxes(), vec![(1, p(&[1]))]);
        assert_eq!(p(&[2, 1]).removable_boxes(), vec![(1, p(&[1, 1])), (2, p(&[2]))]);
        assert_eq!(p(&[2, 2]).addable_boxes(), vec![(1, p(&[3, 2])), (3, p(&[2, 2, 1]))]);
        assert!(p(&[]).removable_boxes().is_empty());
    }

    #[test]
    fn union_examples() {
        assert_eq!(p(&[2, 1]).union(&p(&[1, 1, 1])), p(&[2, 1, 1]));
        assert_eq!(p(&[]).union(&p(&[3])), p(&[3]));
        assert_eq!(p(&[2, 2]).union(&p(&[2, 2])), p(&[2, 2]));
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(p(&[6]).f_lambda(), BigUint::from(1u32));
        assert_eq!(p(&[4, 2]).f_lambda(), BigUint::from(9u32));
        assert_eq!(p(&[3, 2, 1]).f_lambda(), BigUint::from(16u32));
        assert_eq!(p(&[]).f_lambda(), BigUint::from(1u32));
        // bottom row of the n = 6, k = 3 decomposition
        let shapes = [&[6][..], &[5, 1], &[4, 2], &[4, 1, 1], &[3, 3], &[3, 2, 1], &[3, 1, 1, 1]];
        let f: Vec<u32> = shapes
            .iter()
            .map(|s| p(s).f_lambda().try_into().unwrap())
            .collect();
        assert_eq!(f, vec![1, 5, 9, 10, 5, 16, 10]);
    }

    /// Counts standard fillings by stripping the largest entry from a corner.
    fn count_syt(shape: &IntegerPartition) -> u64 {
        if shape.is_empty() {
            return 1;
        }
        shape.removable_boxes().iter().map(|(_, mu)| count_syt(mu)).sum()
    }

    #[test]
    fn hook_formula_matches_brute_force() {
        for m in 0..=8 {
            for lambda in partitions_of(m) {
                assert_eq!(lambda.f_lambda(), BigUint::from(count_syt(&lambda)), "{lambda}");
            }
        }
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        let mut fact = BigUint::one();
        for m in 0..=7u32 {
            if m > 0 {
                fact *= m;
            }
            let total: BigUint = partitions_of(m).iter().map(|l| l.f_lambda().pow(2)).sum();
            assert_eq!(total, fact, "m = {m}");
        }
    }

    #[test]
    fn bar_and_star() {
        assert_eq!(p(&[4, 2]).star(), p(&[2]));
        assert_eq!(p(&[2]).bar(6), Ok(p(&[4, 2])));
        assert_eq!(p(&[]).bar(6), Ok(p(&[6])));
        assert!(p(&[3]).bar(5).is_err());
        for k in 0..=6u32 {
            for n in 2 * k..=2 * k + 2 {
                for lambda in enumerate_gamma(k) {
                    let barred = lambda.bar(n).unwrap();
                    assert!(barred.in_lambda_nk(n, k));
                    assert_eq!(barred.star(), lambda);
                    assert_eq!(barred.star().bar(n).unwrap(), barred);
                }
            }
        }
    }

    #[test]
    fn gamma_sets() {
        assert!(p(&[4, 2]).in_lambda_nk(6, 3));
        assert!(!p(&[2, 2, 2]).in_lambda_nk(6, 3));
        assert_eq!(enumerate_gamma(0), vec![p(&[])]);
        assert_eq!(
            enumerate_gamma(3),
            vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1]), p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
        assert_eq!(p(&[]).to_string(), "-");
        assert_eq!("3,1".parse::<IntegerPartition>(), Ok(p(&[3, 1])));
        assert_eq!("(4,1,1)".parse::<IntegerPartition>(), Ok(p(&[4, 1, 1])));
        assert_eq!("-".parse::<IntegerPartition>(), Ok(p(&[])));
        assert!(matches!("1,3".parse::<IntegerPartition>(), Err(Error::InvalidPartition(_))));
        assert_eq!(
            "3,x".parse::<IntegerPartition>(),
            Err(Error::parse(3, "expected a positive integer, found \"x\""))
        );
    }

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        assert_eq!(IntegerPartition::new(vec![2, 1, 0, 0]), Ok(p(&[2, 1])));
        assert!(IntegerPartition::new(vec![2, 0, 1]).is_err());
    }

    fn small_partition() -> impl Strategy<Value = IntegerPartition> {
        (0u32..=7).prop_flat_map(|m| {
            let all = partitions_of(m);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn union_laws(a in small_partition(), b in small_partition(), c in small_partition()) {
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            prop_assert_eq!(a.union(&a), a.clone());
            prop_assert!(contains(&a, &a.union(&b)));
        }

        #[test]
        fn text_round_trip(a in small_partition()) {
            prop_assert_eq!(a.to_string().parse::<IntegerPartition>().unwrap(), a);
        }
    }
}
