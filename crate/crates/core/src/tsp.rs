// SPDX-License-Identifier: Apache-2.0

//! Instances, tour costs and the brute-force search over permutation ranges.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::perm::{factorial, next_permutation, unrank, PermIndex, WorkRange};
use crate::Error;

/// Largest supported city count; `(MAX_CITIES - 1)!` still fits a [`PermIndex`].
pub const MAX_CITIES: usize = 34;

/// Largest accepted trip cost. `MAX_CITIES * MAX_COST` is far below `u64::MAX`.
pub const MAX_COST: u64 = 1_000_000_000;

/// Cost of a [`SolveResult`] that examined no permutation.
pub const UNREACHED: u64 = u64::MAX;

/// Square matrix of trip costs; `cost(i, j)` is the price of going from
/// city `i` to city `j`. Need not be symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CostMatrix {
    n: usize,
    costs: Vec<u64>,
}

impl CostMatrix {
    /// Builds a matrix from its rows.
    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, Error> {
        let n = rows.len();
        let mut costs = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            costs.extend_from_slice(row);
        }
        Self::from_flat(n, costs)
    }

    /// Builds a matrix from `n * n` row-major entries.
    pub fn from_flat(n: usize, costs: Vec<u64>) -> Result<Self, Error> {
        if !(2..=MAX_CITIES).contains(&n) {
            return Err(Error::InvalidInstance(format!(
                "city count {n} outside 2..={MAX_CITIES}"
            )));
        }
        if costs.len() != n * n {
            return Err(Error::InvalidInstance(format!(
                "{} entries for a {n}x{n} matrix",
                costs.len()
            )));
        }
        for (k, &c) in costs.iter().enumerate() {
            let (i, j) = (k / n, k % n);
            if i == j && c != 0 {
                return Err(Error::InvalidInstance(format!(
                    "diagonal entry ({i}, {i}) is {c}"
                )));
            }
            if c > MAX_COST {
                return Err(Error::InvalidInstance(format!(
                    "entry ({i}, {j}) = {c} exceeds {MAX_COST}"
                )));
            }
        }
        Ok(CostMatrix { n, costs })
    }

    /// Number of cities.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Trip cost from `from` to `to`.
    #[inline]
    pub fn cost(&self, from: usize, to: usize) -> u64 {
        self.costs[from * self.n + to]
    }

    /// Row `i` of the matrix.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.costs[i * self.n..(i + 1) * self.n]
    }

    /// Iterator over the rows.
    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.costs.chunks_exact(self.n)
    }

    /// True when `cost(i, j) == cost(j, i)` everywhere.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.cost(i, j) == self.cost(j, i)))
    }

    /// Number of distinct tours, `(n - 1)!`.
    pub fn tour_count(&self) -> PermIndex {
        // n <= MAX_CITIES, so this cannot overflow
        factorial(self.n - 1).unwrap_or(PermIndex::MAX)
    }

    // Caller guarantees `order` is a valid tour permutation.
    #[inline]
    fn closed_cost(&self, order: &[usize]) -> u64 {
        let mut prev = 0;
        let mut total = 0;
        for &city in order {
            total += self.cost(prev, city);
            prev = city;
        }
        total + self.cost(prev, 0)
    }
}

/// Ordering of cities `1..n`; city `0` is implied at both ends.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TourPermutation(Vec<usize>);

impl TourPermutation {
    /// Validates `order` as a tour of an `n`-city instance.
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self, Error> {
        if order.len() + 1 != n {
            return Err(Error::InvalidInstance(format!(
                "tour lists {} cities, expected {}",
                order.len(),
                n.saturating_sub(1)
            )));
        }
        let mut seen = 0u64;
        for &label in &order {
            if label == 0 || label >= n || label >= 64 {
                return Err(Error::LabelOutOfRange { label, n });
            }
            if seen & (1 << label) != 0 {
                return Err(Error::DuplicateLabel);
            }
            seen |= 1 << label;
        }
        Ok(TourPermutation(order))
    }

    /// The identity ordering `1, 2, ..., n-1`.
    pub fn first(n: usize) -> Self {
        TourPermutation((1..n).collect())
    }

    /// The ordering without the fixed start city.
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Closed path `0, order..., 0`.
    pub fn closed_path(&self) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.0.len() + 2);
        path.push(0);
        path.extend_from_slice(&self.0);
        path.push(0);
        path
    }
}

/// Best tour found over some set of permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolveResult {
    /// Cost of `path`, or [`UNREACHED`] when nothing was examined.
    pub cost: u64,
    /// Closed tour starting and ending at city 0; empty when nothing was examined.
    pub path: Vec<usize>,
    /// Number of permutations examined.
    pub evaluated: PermIndex,
}

impl SolveResult {
    /// Identity element of [`merge`](Self::merge).
    pub fn empty() -> Self {
        SolveResult {
            cost: UNREACHED,
            path: Vec::new(),
            evaluated: 0,
        }
    }

    /// True when no tour was recorded.
    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Canonical order of optima: lower cost first, ties broken by the
    /// lexicographically smaller path. Empty results sort last.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self
                .cost
                .cmp(&other.cost)
                .then_with(|| self.path.cmp(&other.path)),
        }
    }

    /// Combines two partial results: keeps the canonical optimum and sums
    /// the evaluation counts. Associative and commutative.
    pub fn merge(self, other: Self) -> Self {
        let evaluated = self.evaluated + other.evaluated;
        let best = if other.canonical_cmp(&self) == Ordering::Less {
            other
        } else {
            self
        };
        SolveResult { evaluated, ..best }
    }
}

/// Cost of the closed tour `0 -> perm[0] -> ... -> perm[last] -> 0`.
pub fn path_cost(perm: &[usize], matrix: &CostMatrix) -> Result<u64, Error> {
    let tour = TourPermutation::new(perm.to_vec(), matrix.n())?;
    Ok(matrix.closed_cost(tour.as_slice()))
}

/// Examines every tour and returns the canonical optimum.
pub fn solve_serial(matrix: &CostMatrix) -> SolveResult {
    let all = WorkRange::new(0, matrix.tour_count()).expect("0 <= count");
    solve_range(matrix, all).expect("full range is in bounds")
}

/// Canonical optimum over the tours whose lexicographic index lies in `range`.
///
/// Unranks the first permutation once, then walks forward with
/// [`next_permutation`]. Within a range, the strict `<` keeps the earliest
/// (and so lexicographically smallest) of equal-cost tours.
pub fn solve_range(matrix: &CostMatrix, range: WorkRange) -> Result<SolveResult, Error> {
    let bound = matrix.tour_count();
    if range.end() > bound {
        return Err(Error::IndexOutOfRange {
            index: range.end(),
            bound,
        });
    }
    if range.is_empty() {
        return Ok(SolveResult::empty());
    }
    let cities: Vec<usize> = (1..matrix.n()).collect();
    let mut order = unrank(range.start(), &cities)?;
    let mut best_cost = UNREACHED;
    let mut best = order.clone();
    let mut remaining = range.len();
    loop {
        let cost = matrix.closed_cost(&order);
        if cost < best_cost {
            best_cost = cost;
            best.copy_from_slice(&order);
        }
        remaining -= 1;
        if remaining == 0 {
            break;
        }
        next_permutation(&mut order);
    }
    Ok(SolveResult {
        cost: best_cost,
        path: TourPermutation(best).closed_path(),
        evaluated: range.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn textbook() -> CostMatrix {
        CostMatrix::from_rows(&[
            [0, 10, 15, 20],
            [10, 0, 35, 25],
            [15, 35, 0, 30],
            [20, 25, 30, 0],
        ])
        .unwrap()
    }

    fn uniform(n: usize) -> CostMatrix {
        let costs = (0..n * n).map(|k| u64::from(k / n != k % n)).collect();
        CostMatrix::from_flat(n, costs).unwrap()
    }

    #[test]
    fn path_cost_examples() {
        assert_eq!(path_cost(&[1, 2, 3], &uniform(4)), Ok(4));
        assert_eq!(path_cost(&[1, 3, 2], &textbook()), Ok(80));
        assert_eq!(path_cost(&[2, 1, 3], &textbook()), Ok(95));
    }

    #[test]
    fn path_cost_rejects_bad_tours() {
        let m = textbook();
        assert_eq!(
            path_cost(&[1, 2, 4], &m),
            Err(Error::LabelOutOfRange { label: 4, n: 4 })
        );
        assert_eq!(
            path_cost(&[0, 1, 2], &m),
            Err(Error::LabelOutOfRange { label: 0, n: 4 })
        );
        assert_eq!(path_cost(&[1, 1, 2], &m), Err(Error::DuplicateLabel));
        assert!(path_cost(&[1, 2], &m).is_err());
    }

    #[test]
    fn serial_examples() {
        let two = CostMatrix::from_rows(&[[0, 7], [7, 0]]).unwrap();
        let r = solve_serial(&two);
        assert_eq!((r.cost, r.path, r.evaluated), (14, vec![0, 1, 0], 1));

        let r = solve_serial(&textbook());
        assert_eq!((r.cost, r.path, r.evaluated), (80, vec![0, 1, 3, 2, 0], 6));

        let r = solve_serial(&uniform(5));
        assert_eq!(
            (r.cost, r.path, r.evaluated),
            (5, vec![0, 1, 2, 3, 4, 0], 24)
        );
    }

    #[test]
    fn range_examples() {
        let m = textbook();
        let r = solve_range(&m, WorkRange::new(0, 3).unwrap()).unwrap();
        assert_eq!(
            (r.cost, r.path.clone(), r.evaluated),
            (80, vec![0, 1, 3, 2, 0], 3)
        );
        let r = solve_range(&m, WorkRange::new(3, 6).unwrap()).unwrap();
        assert_eq!(
            (r.cost, r.path.clone(), r.evaluated),
            (80, vec![0, 2, 3, 1, 0], 3)
        );
        assert_eq!(
            solve_range(&m, WorkRange::new(0, 6).unwrap()).unwrap(),
            solve_serial(&m)
        );

        let empty = solve_range(&m, WorkRange::new(4, 4).unwrap()).unwrap();
        assert_eq!(empty, SolveResult::empty());
        assert_eq!(empty.cost, UNREACHED);

        assert_eq!(
            solve_range(&m, WorkRange::new(2, 7).unwrap()),
            Err(Error::IndexOutOfRange { index: 7, bound: 6 })
        );
    }

    #[test]
    fn merge_prefers_cheaper_then_smaller_path() {
        let a = solve_range(&textbook(), WorkRange::new(0, 3).unwrap()).unwrap();
        let b = solve_range(&textbook(), WorkRange::new(3, 6).unwrap()).unwrap();
        let ab = a.clone().merge(b.clone());
        let ba = b.merge(a);
        assert_eq!(ab, ba);
        assert_eq!(ab.path, vec![0, 1, 3, 2, 0]);
        assert_eq!(ab.evaluated, 6);
        assert_eq!(SolveResult::empty().merge(ab.clone()), ab);
    }

    #[test]
    fn matrix_validation() {
        assert!(CostMatrix::from_rows(&[[0u64]]).is_err());
        assert!(CostMatrix::from_rows(&[[0, 1], [1, 1]]).is_err());
        assert!(CostMatrix::from_rows(&[[0, MAX_COST + 1], [1, 0]]).is_err());
        assert!(CostMatrix::from_rows(&[vec![0, 1], vec![1]]).is_err());
        assert!(CostMatrix::from_flat(3, vec![0; 8]).is_err());
        assert!(textbook().is_symmetric());
        assert!(!CostMatrix::from_rows(&[[0, 1], [2, 0]])
            .unwrap()
            .is_symmetric());
    }
}
