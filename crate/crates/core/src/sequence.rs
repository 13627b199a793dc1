//! The input multiset and its arrangements.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest magnitude admitted on the exact integer path. Keeps
/// `n * sum(s_k^2)` comfortably inside `i128` for `n <= MAX_EXACT_LEN`.
const MAX_EXACT_VALUE: f64 = (1u64 << 31) as f64;
const MAX_EXACT_LEN: usize = 1 << 12;

/// A multiset of positive numbers, stored ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberSet {
    values: Vec<f64>,
    integers: Option<Vec<i64>>,
    distinct: bool,
}

impl NumberSet {
    /// Builds a set from values in any order.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::NotPositive { index, value });
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        let distinct = values.windows(2).all(|w| w[0] < w[1]);
        let integral = values.len() <= MAX_EXACT_LEN
            && values
                .iter()
                .all(|v| v.fract() == 0.0 && *v <= MAX_EXACT_VALUE);
        let integers = integral.then(|| values.iter().map(|v| *v as i64).collect());
        Ok(NumberSet {
            values,
            integers,
            distinct,
        })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        NumberSet::new(values.iter().map(|&v| v as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Values as integers when the exact path applies.
    pub fn integers(&self) -> Option<&[i64]> {
        self.integers.as_deref()
    }

    pub fn is_integral(&self) -> bool {
        self.integers.is_some()
    }

    /// True when the values strictly ascend (no ties).
    pub fn is_distinct(&self) -> bool {
        self.distinct
    }

    /// The `rank`-th smallest value, 1-based.
    pub fn nth_smallest(&self, rank: usize) -> f64 {
        self.values[rank - 1]
    }
}

/// One arrangement of a [`NumberSet`].
///
/// Stored as 0-based ranks into the ascending set. Among tied values the
/// ranks increase from left to right, so two sequences with equal entries
/// have equal ranks.
#[derive(Clone, Debug)]
pub struct Sequence {
    set: Arc<NumberSet>,
    order: Vec<usize>,
}

impl Sequence {
    /// The ascending arrangement.
    pub fn ascending(set: Arc<NumberSet>) -> Self {
        let order = (0..set.len()).collect();
        Sequence { set, order }
    }

    /// Builds a sequence from 0-based ranks into the ascending set.
    pub fn from_ranks(set: Arc<NumberSet>, order: Vec<usize>) -> Result<Self> {
        let n = set.len();
        if order.len() != n {
            return Err(Error::NotAPermutation(format!(
                "expected {n} ranks, got {}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &r in &order {
            if r >= n || seen[r] {
                return Err(Error::NotAPermutation(format!(
                    "rank {} is out of range or repeated",
                    r + 1
                )));
            }
            seen[r] = true;
        }
        Ok(Sequence::from_ranks_unchecked(set, order))
    }

    /// Builds a sequence from 1-based ranks, as written in order specs.
    pub fn from_one_based_ranks(set: Arc<NumberSet>, ranks: &[usize]) -> Result<Self> {
        if ranks.contains(&0) {
            return Err(Error::NotAPermutation("ranks are 1-based".into()));
        }
        Sequence::from_ranks(set, ranks.iter().map(|r| r - 1).collect())
    }

    /// Builds a sequence whose entries are `entries`, which must be a
    /// permutation of the set's values.
    pub fn from_entries(set: Arc<NumberSet>, entries: &[f64]) -> Result<Self> {
        if entries.len() != set.len() {
            return Err(Error::NotAPermutation(format!(
                "expected {} entries, got {}",
                set.len(),
                entries.len()
            )));
        }
        let mut used = vec![false; set.len()];
        let mut order = Vec::with_capacity(entries.len());
        for &e in entries {
            let start = set.values.partition_point(|v| *v < e);
            let rank = (start..set.len())
                .take_while(|&r| set.values[r] == e)
                .find(|&r| !used[r])
                .ok_or_else(|| Error::NotAPermutation(format!("value {e} is not available")))?;
            used[rank] = true;
            order.push(rank);
        }
        Ok(Sequence { set, order })
    }

    /// Convenience: a sequence over the set formed by its own entries.
    pub fn of_integers(entries: &[i64]) -> Result<Self> {
        let set = Arc::new(NumberSet::from_integers(entries)?);
        let floats: Vec<f64> = entries.iter().map(|&v| v as f64).collect();
        Sequence::from_entries(set, &floats)
    }

    /// Convenience: a sequence over the set formed by its own entries.
    pub fn of_values(entries: &[f64]) -> Result<Self> {
        let set = Arc::new(NumberSet::new(entries.to_vec())?);
        Sequence::from_entries(set, entries)
    }

    pub(crate) fn from_ranks_unchecked(set: Arc<NumberSet>, mut order: Vec<usize>) -> Self {
        if !set.distinct {
            canonicalize(&set.values, &mut order);
        }
        Sequence { set, order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn set(&self) -> &Arc<NumberSet> {
        &self.set
    }

    /// 0-based ranks into the ascending set.
    pub fn ranks(&self) -> &[usize] {
        &self.order
    }

    pub fn one_based_ranks(&self) -> Vec<usize> {
        self.order.iter().map(|r| r + 1).collect()
    }

    /// Entry at 1-based `position`.
    pub fn entry(&self, position: usize) -> f64 {
        self.set.values[self.order[position - 1]]
    }

    pub fn entries(&self) -> Vec<f64> {
        self.order.iter().map(|&r| self.set.values[r]).collect()
    }

    /// Entries as integers when the exact path applies.
    pub fn integer_entries(&self) -> Option<Vec<i64>> {
        let ints = self.set.integers()?;
        Some(self.order.iter().map(|&r| ints[r]).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.set.is_integral()
    }

    /// True when both sequences permute the same multiset.
    pub fn same_set(&self, other: &Sequence) -> bool {
        Arc::ptr_eq(&self.set, &other.set) || *self.set == *other.set
    }

    /// Rank comparison of 1-based positions, `Less` when `c_a < c_b`.
    pub(crate) fn cmp_positions(&self, a: usize, b: usize) -> Ordering {
        let (x, y) = (self.entry(a), self.entry(b));
        x.partial_cmp(&y).expect("finite values")
    }

    /// Swaps 1-based positions without bounds reporting.
    pub(crate) fn swapped(&self, i: usize, j: usize) -> Sequence {
        let mut order = self.order.clone();
        order.swap(i - 1, j - 1);
        Sequence::from_ranks_unchecked(Arc::clone(&self.set), order)
    }

    /// Formats the sequence as an order-spec line, `order: r1,r2,...`.
    pub fn order_spec(&self) -> String {
        let ranks: Vec<String> = self.order.iter().map(|r| (r + 1).to_string()).collect();
        format!("order: {}", ranks.join(","))
    }
}

fn canonicalize(values: &[f64], order: &mut [usize]) {
    let n = values.len();
    let mut next_free = vec![usize::MAX; n];
    for r in 0..n {
        let first = values.partition_point(|v| *v < values[r]);
        if next_free[first] == usize::MAX {
            next_free[first] = first;
        }
    }
    for slot in order.iter_mut() {
        let first = values.partition_point(|v| *v < values[*slot]);
        *slot = next_free[first];
        next_free[first] += 1;
    }
}

impl PartialEq for Sequence {
    fn eq(&self, other: &Sequence) -> bool {
        self.order == other.order && self.same_set(other)
    }
}

impl Eq for Sequence {}

impl std::hash::Hash for Sequence {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
    }
}

/// Lexicographic by entries. Only meaningful between sequences of one set.
impl Ord for Sequence {
    fn cmp(&self, other: &Sequence) -> Ordering {
        self.order.cmp(&other.order)
    }
}

impl PartialOrd for Sequence {
    fn partial_cmp(&self, other: &Sequence) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().into_iter().map(format_value).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Sequence", 2)?;
        match self.integer_entries() {
            Some(ints) => s.serialize_field("entries", &ints)?,
            None => s.serialize_field("entries", &self.entries())?,
        }
        s.serialize_field("ranks", &self.one_based_ranks())?;
        s.end()
    }
}
