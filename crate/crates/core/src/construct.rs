//! The two closed-form maximizers and their interleaving structure.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::sequence::{NumberSet, Sequence};
use crate::transforms::dual;

/// Builds `(C*, C*d)`.
///
/// `C*` lists the odd-ranked values ascending followed by the even-ranked
/// values descending: `a1, a3, a5, ..., a6, a4, a2`. It starts with the
/// smallest value and ends with the second smallest. `C*d` is its dual,
/// `a1, a2, a4, ..., a5, a3`.
pub fn construct_optimal(set: Arc<NumberSet>) -> (Sequence, Sequence) {
    let n = set.len();
    let mut order: Vec<usize> = (0..n).step_by(2).collect();
    order.extend((1..n).step_by(2).rev());
    let primary = Sequence::from_ranks_unchecked(set, order);
    let secondary = dual(&primary);
    (primary, secondary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InterleaveCheck {
    Holds,
    Violated,
    /// The sequence does not start with `a1` and end with `a2`.
    NotApplicable,
}

impl InterleaveCheck {
    pub fn holds(self) -> bool {
        self == InterleaveCheck::Holds
    }
}

/// Checks the interleaving satisfied by a maximizer of the form
/// `c_1 = a1, c_n = a2`:
///
/// * `c_{n+2-k} < c_k` for `2 <= k <= ceil(n/2)`
/// * `c_k < c_{n+1-k}` for `2 <= k <= floor(n/2)`
///
/// For even `n` the two ranges coincide and chain as
/// `c_{n+2-k} < c_k < c_{n+1-k}`.
pub fn check_interleaved_structure(seq: &Sequence) -> InterleaveCheck {
    let n = seq.len();
    let values = seq.set().values();
    if n < 2 || seq.entry(1) != values[0] || seq.entry(n) != values[1] {
        return InterleaveCheck::NotApplicable;
    }
    let less = |a: usize, b: usize| seq.cmp_positions(a, b) == Ordering::Less;
    let upper = n.div_ceil(2);
    let lower = n / 2;
    let ok = (2..=upper).all(|k| less(n + 2 - k, k)) && (2..=lower).all(|k| less(k, n + 1 - k));
    if ok {
        InterleaveCheck::Holds
    } else {
        InterleaveCheck::Violated
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> Arc<NumberSet> {
        Arc::new(NumberSet::from_integers(v).unwrap())
    }

    fn ints(s: &Sequence) -> Vec<i64> {
        s.integer_entries().unwrap()
    }

    #[test]
    fn odd_and_even_patterns() {
        let (c, d) = construct_optimal(set(&[1, 2, 3, 4, 5]));
        assert_eq!(ints(&c), vec![1, 3, 5, 4, 2]);
        assert_eq!(ints(&d), vec![1, 2, 4, 5, 3]);

        let (c, d) = construct_optimal(set(&[1, 2, 3, 4, 5, 6, 7, 8]));
        assert_eq!(ints(&c), vec![1, 3, 5, 7, 8, 6, 4, 2]);
        assert_eq!(ints(&d), vec![1, 2, 4, 6, 8, 7, 5, 3]);
    }

    #[test]
    fn small_sets() {
        let (c, d) = construct_optimal(set(&[42]));
        assert_eq!(ints(&c), vec![42]);
        assert_eq!(c, d);
        let (c, d) = construct_optimal(set(&[9, 4]));
        assert_eq!(ints(&c), vec![4, 9]);
        assert_eq!(c, d);
        let (c, d) = construct_optimal(set(&[1, 2, 3]));
        assert_eq!(ints(&c), vec![1, 3, 2]);
        assert_eq!(ints(&d), vec![1, 2, 3]);
    }

    #[test]
    fn unsorted_input_uses_ranks() {
        let (c, _) = construct_optimal(set(&[10, 40, 20, 30]));
        assert_eq!(ints(&c), vec![10, 30, 40, 20]);
    }

    #[test]
    fn interleaving() {
        let (c, d) = construct_optimal(set(&[1, 2, 3, 4, 5, 6, 7, 8]));
        assert!(check_interleaved_structure(&c).holds());
        assert_eq!(
            check_interleaved_structure(&d),
            InterleaveCheck::NotApplicable
        );
        let (c, _) = construct_optimal(set(&[1, 2, 3, 4, 5]));
        assert!(check_interleaved_structure(&c).holds());

        let ascending = Sequence::of_integers(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(
            check_interleaved_structure(&ascending),
            InterleaveCheck::NotApplicable
        );
        let bad = Sequence::of_integers(&[1, 5, 3, 7, 8, 6, 4, 2]).unwrap();
        assert_eq!(check_interleaved_structure(&bad), InterleaveCheck::Violated);
    }
}
