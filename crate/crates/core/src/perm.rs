// SPDX-License-Identifier: Apache-2.0

//! Permutation arithmetic: factorials, the lexicographic successor,
//! ranking/unranking through the factorial number system, and splitting an
//! index space among workers.

use alloc::vec::Vec;

use crate::Error;

/// Lexicographic index of a permutation. 128 bits hold `33!`, enough for
/// every tour of a 34-city instance.
pub type PermIndex = u128;

/// Largest `n` whose factorial fits in a [`PermIndex`].
pub const MAX_FACTORIAL_ARG: usize = 34;

/// Half-open interval `[start, end)` of permutation indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WorkRange {
    start: PermIndex,
    end: PermIndex,
}

impl WorkRange {
    /// Builds a range, rejecting `start > end`.
    pub fn new(start: PermIndex, end: PermIndex) -> Result<Self, Error> {
        if start > end {
            return Err(Error::InvertedRange { start, end });
        }
        Ok(WorkRange { start, end })
    }

    /// Inclusive start.
    pub fn start(&self) -> PermIndex {
        self.start
    }

    /// Exclusive end.
    pub fn end(&self) -> PermIndex {
        self.end
    }

    /// Number of permutations in the range.
    pub fn len(&self) -> PermIndex {
        self.end - self.start
    }

    /// True when the range holds no permutation.
    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// The same range moved `by` indices to the right.
    pub fn offset(&self, by: PermIndex) -> WorkRange {
        WorkRange {
            start: self.start + by,
            end: self.end + by,
        }
    }
}

/// Exact `n!`.
pub fn factorial(n: usize) -> Result<PermIndex, Error> {
    if n > MAX_FACTORIAL_ARG {
        return Err(Error::FactorialOverflow(n));
    }
    Ok((2..=n as PermIndex).product())
}

/// Rearranges `seq` into its lexicographic successor and returns `true`.
///
/// When `seq` is already the last permutation it is reset to the first
/// (ascending) one and `false` is returned, like C++'s `std::next_permutation`.
pub fn next_permutation<T: Ord>(seq: &mut [T]) -> bool {
    let len = seq.len();
    if len < 2 {
        return false;
    }
    // Longest non-increasing suffix starts at `pivot + 1`.
    let mut pivot = len - 1;
    while pivot > 0 && seq[pivot - 1] >= seq[pivot] {
        pivot -= 1;
    }
    if pivot == 0 {
        seq.reverse();
        return false;
    }
    let pivot = pivot - 1;
    let mut succ = len - 1;
    while seq[succ] <= seq[pivot] {
        succ -= 1;
    }
    seq.swap(pivot, succ);
    seq[pivot + 1..].reverse();
    true
}

/// Permutation at lexicographic position `index` among all orderings of
/// `items`, which must be sorted ascending.
pub fn unrank<T: Copy>(index: PermIndex, items: &[T]) -> Result<Vec<T>, Error> {
    let bound = factorial(items.len())?;
    if index >= bound {
        return Err(Error::IndexOutOfRange { index, bound });
    }
    let mut remaining: Vec<T> = items.to_vec();
    let mut out = Vec::with_capacity(items.len());
    let mut rest = index;
    let mut radix = bound;
    for k in (1..=items.len()).rev() {
        radix /= k as PermIndex;
        let digit = (rest / radix) as usize;
        rest %= radix;
        out.push(remaining.remove(digit));
    }
    Ok(out)
}

/// Lexicographic position of `perm` among the orderings of its own labels.
pub fn rank<T: Ord>(perm: &[T]) -> Result<PermIndex, Error> {
    let k = perm.len();
    let mut radix = factorial(k)?;
    let mut index: PermIndex = 0;
    for (i, head) in perm.iter().enumerate() {
        radix /= (k - i) as PermIndex;
        let mut smaller = 0;
        for later in &perm[i + 1..] {
            match later.cmp(head) {
                core::cmp::Ordering::Less => smaller += 1,
                core::cmp::Ordering::Equal => return Err(Error::DuplicateLabel),
                core::cmp::Ordering::Greater => {}
            }
        }
        index += smaller * radix;
    }
    Ok(index)
}

/// Splits `[0, total)` into `workers` contiguous ranges.
///
/// With `q = total / workers` and `r = total % workers`, the first `r`
/// ranges hold `q + 1` indices and the rest hold `q`. Surplus workers get
/// empty ranges at the tail.
pub fn partition(total: PermIndex, workers: usize) -> Result<Vec<WorkRange>, Error> {
    if workers == 0 {
        return Err(Error::ZeroWorkers);
    }
    let w = workers as PermIndex;
    let (q, r) = (total / w, total % w);
    let mut start = 0;
    Ok((0..w)
        .map(|i| {
            let len = if i < r { q + 1 } else { q };
            let range = WorkRange {
                start,
                end: start + len,
            };
            start += len;
            range
        })
        .collect())
}
