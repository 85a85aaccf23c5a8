//! Partition arithmetic: Young diagrams, hooks, rim-hook removal, 2-adic
//! valuation of character degrees and binary-expansion relations.
//!
//! Cells are addressed 1-based as `(row, col)`. Rim hooks are removed and
//! added through the β-set (first-column hook lengths), so a removal costs
//! O(number of parts).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest partition size accepted anywhere in the crate.
pub const MAX_SIZE: usize = 1_000_000;

/// A weakly decreasing sequence of positive integers.
///
/// The derived ordering is lexicographic on the parts, so for partitions of
/// the same size `a > b` means `a` comes first in descending lexicographic
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        let size = parts
            .iter()
            .try_fold(0usize, |acc, &p| acc.checked_add(p))
            .filter(|&s| s <= MAX_SIZE)
            .ok_or_else(|| {
                Error::TooLarge(parts.iter().fold(0usize, |a, &p| a.saturating_add(p)))
            })?;
        Ok(Partition { parts, size })
    }

    /// Builds a partition from parts already known to be valid.
    pub(crate) fn from_valid(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_valid(vec![n])
        }
    }

    /// The hook partition `(a, 1^b)`.
    pub fn hook_shape(a: usize, b: usize) -> Self {
        assert!(a >= 1, "hook partition needs a first part");
        let mut parts = vec![a];
        parts.extend(std::iter::repeat_n(1, b));
        Self::from_valid(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition::from_valid(parts)
    }

    /// True if every cell of `other` is a cell of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// β-set with `len` elements, descending: `parts[i] + len - 1 - i`.
    ///
    /// Panics if `len` is smaller than the number of parts.
    pub fn beta_set(&self, len: usize) -> Vec<usize> {
        assert!(len >= self.len(), "β-set shorter than the partition");
        (0..len).map(|i| self.part(i) + len - 1 - i).collect()
    }

    /// Inverse of [`Partition::beta_set`]; accepts distinct elements in any order.
    pub fn from_beta_set(beta: &[usize]) -> Partition {
        let mut sorted = beta.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert!(sorted.windows(2).all(|w| w[0] > w[1]), "β-set has repeats");
        let len = sorted.len();
        let parts = sorted
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i))
            .take_while(|&p| p > 0)
            .collect();
        Partition::from_valid(parts)
    }

    /// The hook at a 1-based cell, if the cell lies in the diagram.
    pub fn hook(&self, row: usize, col: usize) -> Option<Hook> {
        if row == 0 || col == 0 || col > self.part(row - 1) {
            return None;
        }
        let arm = self.parts[row - 1] - col;
        let leg = self.parts[row..].iter().take_while(|&&p| p >= col).count();
        Some(Hook {
            row,
            col,
            arm,
            leg,
            length: arm + leg + 1,
        })
    }

    /// All hooks in row-major cell order.
    pub fn hooks(&self) -> Vec<Hook> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size);
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                let arm = p - j - 1;
                let leg = conj.parts[j] - i - 1;
                out.push(Hook {
                    row: i + 1,
                    col: j + 1,
                    arm,
                    leg,
                    length: arm + leg + 1,
                });
            }
        }
        out
    }

    /// Rows (1-based) whose last cell can be deleted leaving a partition.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| i + 1)
            .collect()
    }

    /// Rows (1-based) that can receive one more cell, including a new last row.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .map(|i| i + 1)
            .collect()
    }

    /// Deletes the last cell of a removable row.
    pub fn remove_cell(&self, row: usize) -> Partition {
        let i = row - 1;
        assert!(
            self.part(i) > self.part(i + 1),
            "row {row} has no removable cell"
        );
        let mut parts = self.parts.clone();
        parts[i] -= 1;
        if parts[i] == 0 {
            parts.pop();
        }
        Partition {
            parts,
            size: self.size - 1,
        }
    }

    /// Appends a cell to an addable row.
    pub fn add_cell(&self, row: usize) -> Partition {
        let i = row - 1;
        assert!(
            i == 0 || self.part(i - 1) > self.part(i),
            "row {row} is not addable"
        );
        let mut parts = self.parts.clone();
        if i == parts.len() {
            parts.push(1);
        } else {
            parts[i] += 1;
        }
        Partition {
            parts,
            size: self.size + 1,
        }
    }

    /// All partitions obtained by adding a rim hook of length `h`.
    pub fn add_rim_hooks(&self, h: usize) -> Vec<Partition> {
        assert!(h >= 1);
        let beta = self.beta_set(self.len() + h);
        let mut out = Vec::new();
        for (idx, &b) in beta.iter().enumerate() {
            if !beta.contains(&(b + h)) {
                let mut next = beta.clone();
                next[idx] = b + h;
                out.push(Partition::from_beta_set(&next));
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the literal `[a,b,c]`; `[]` is the empty partition.
    fn from_str(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| {
                Error::InvalidPartition("expected a bracketed list like [3,1]".into())
            })?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<i64>() {
                    Ok(v) if v <= 0 => {
                        Err(Error::InvalidPartition("parts must be positive".into()))
                    }
                    Ok(v) => usize::try_from(v)
                        .map_err(|_| Error::InvalidPartition(format!("part {tok} is too large"))),
                    Err(_) => Err(Error::InvalidPartition(format!("malformed part {tok:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// A cell together with its arm, leg and hook length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hook {
    pub row: usize,
    pub col: usize,
    pub arm: usize,
    pub leg: usize,
    pub length: usize,
}

/// Hook length of every cell, one row per part.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = lambda
        .parts
        .iter()
        .map(|&p| Vec::with_capacity(p))
        .collect();
    for h in lambda.hooks() {
        rows[h.row - 1].push(h.length);
    }
    rows
}

/// Hooks of length exactly `e`, in row-major order.
pub fn hooks_of_length(lambda: &Partition, e: usize) -> Vec<Hook> {
    lambda
        .hooks()
        .into_iter()
        .filter(|h| h.length == e)
        .collect()
}

/// Removes the rim hook associated with `hook`.
pub fn remove_hook(lambda: &Partition, hook: &Hook) -> Result<Partition> {
    if lambda.hook(hook.row, hook.col).as_ref() != Some(hook) {
        return Err(Error::NotAHook);
    }
    let mut beta = lambda.beta_set(lambda.len());
    let i = hook.row - 1;
    // the hook at (row, col) moves β_row down by its length onto a gap
    debug_assert!(!beta.contains(&(beta[i] - hook.length)));
    beta[i] -= hook.length;
    Ok(Partition::from_beta_set(&beta))
}

/// 2-adic valuation of the degree of the irreducible character labelled by
/// `lambda`, from the hook length formula.
pub fn nu2_degree(lambda: &Partition) -> Result<u32> {
    if lambda.is_empty() {
        return Err(Error::EmptyDegree);
    }
    let n = lambda.size();
    // Legendre: ν_2(n!) = n - s_2(n)
    let factorial = (n - n.count_ones() as usize) as u32;
    let hooks: u32 = lambda
        .hooks()
        .iter()
        .map(|h| h.length.trailing_zeros())
        .sum();
    Ok(factorial - hooks)
}

/// True for `()` and for shapes `(a, 1^b)`.
pub fn is_hook_partition(lambda: &Partition) -> bool {
    lambda.parts.iter().skip(1).all(|&p| p == 1)
}

/// Exponent of the largest power of two dividing `n`.
pub fn nu2(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Nu2Zero);
    }
    Ok(n.trailing_zeros())
}

/// Binary digits of a number, as the powers of two in its expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFacts {
    value: u64,
}

impl BinaryFacts {
    pub fn new(value: u64) -> Self {
        BinaryFacts { value }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Powers of two in the expansion, ascending.
    pub fn digits(&self) -> Vec<u64> {
        self.exponents().map(|e| 1u64 << e).collect()
    }

    /// Exponents of the binary digits, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        (0..64).filter(move |e| self.value >> e & 1 == 1)
    }

    /// Largest binary digit exponent; `None` for zero.
    pub fn top_exponent(&self) -> Option<u32> {
        (self.value != 0).then(|| 63 - self.value.leading_zeros())
    }

    /// `self ⊆_2 other`: every digit of `self` is a digit of `other`.
    pub fn is_subsum_of(&self, other: &BinaryFacts) -> bool {
        self.value & !other.value == 0
    }

    pub fn is_disjoint_from(&self, other: &BinaryFacts) -> bool {
        self.value & other.value == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryRelation {
    pub subsum: bool,
    pub disjoint: bool,
}

pub fn binary_relation(m: u64, n: u64) -> BinaryRelation {
    let (m, n) = (BinaryFacts::new(m), BinaryFacts::new(n));
    BinaryRelation {
        subsum: m.is_subsum_of(&n),
        disjoint: m.is_disjoint_from(&n),
    }
}

/// Sum of the exponents of the binary digits of `n`.
pub fn digit_exponent_sum(n: usize) -> u32 {
    BinaryFacts::new(n as u64).exponents().sum()
}

/// Iterator over the partitions of `n` in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition::from_valid(current))
    }
}

fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let pivot = parts.iter().rposition(|&p| p > 1)?;
    let mut next = parts[..pivot].to_vec();
    let largest = parts[pivot] - 1;
    next.push(largest);
    // trailing 1s after the pivot plus the cell taken off it
    let mut remaining = parts.len() - pivot;
    while remaining > 0 {
        let p = remaining.min(largest);
        next.push(p);
        remaining -= p;
    }
    Some(next)
}

pub fn partitions(n: usize) -> Partitions {
    let first = if n == 0 { vec![] } else { vec![n] };
    Partitions { next: Some(first) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn hook_length_tables() {
        assert_eq!(hook_lengths(&p(&[2, 1])), vec![vec![3, 1], vec![1]]);
        assert_eq!(hook_lengths(&p(&[2, 2])), vec![vec![3, 2], vec![2, 1]]);
        assert_eq!(hook_lengths(&p(&[1])), vec![vec![1]]);
        assert_eq!(hook_lengths(&p(&[3, 1])), vec![vec![4, 2, 1], vec![1]]);
    }

    #[test]
    fn hooks_of_length_two() {
        let hooks = hooks_of_length(&p(&[3, 1]), 2);
        assert_eq!(hooks.len(), 1);
        assert_eq!((hooks[0].row, hooks[0].col), (1, 2));

        let cells: Vec<_> = hooks_of_length(&p(&[2, 2]), 2)
            .iter()
            .map(|h| (h.row, h.col))
            .collect();
        assert_eq!(cells, vec![(1, 2), (2, 1)]);

        assert!(hooks_of_length(&p(&[1]), 2).is_empty());
    }

    #[test]
    fn rim_hook_removal() {
        let square = p(&[2, 2]);
        let h = square.hook(2, 1).unwrap();
        assert_eq!(h.length, 2);
        assert_eq!(remove_hook(&square, &h).unwrap(), p(&[2]));

        let lam = p(&[3, 1]);
        let h = lam.hook(1, 2).unwrap();
        assert_eq!(remove_hook(&lam, &h).unwrap(), p(&[1, 1]));

        let one = p(&[1]);
        let h = one.hook(1, 1).unwrap();
        assert_eq!(remove_hook(&one, &h).unwrap(), Partition::empty());
    }

    #[test]
    fn removing_a_foreign_hook_fails() {
        let bogus = Hook {
            row: 1,
            col: 1,
            arm: 0,
            leg: 0,
            length: 1,
        };
        assert_eq!(remove_hook(&p(&[2, 1]), &bogus), Err(Error::NotAHook));
        let outside = Hook {
            row: 3,
            col: 1,
            arm: 0,
            leg: 0,
            length: 1,
        };
        assert_eq!(remove_hook(&p(&[2, 1]), &outside), Err(Error::NotAHook));
    }

    #[test]
    fn degree_valuations() {
        assert_eq!(nu2_degree(&p(&[3, 1])), Ok(0));
        assert_eq!(nu2_degree(&p(&[2, 1])), Ok(1));
        for n in 1..20 {
            assert_eq!(nu2_degree(&Partition::row(n)), Ok(0));
        }
        assert_eq!(nu2_degree(&Partition::empty()), Err(Error::EmptyDegree));
    }

    #[test]
    fn legendre_matches_direct_factorial() {
        for n in 1u64..=20 {
            let direct: u32 = (1..=n).map(|i| i.trailing_zeros()).sum();
            assert_eq!(direct, (n - n.count_ones() as u64) as u32, "n = {n}");
        }
    }

    #[test]
    fn hook_partitions() {
        assert!(is_hook_partition(&p(&[3, 1, 1])));
        assert!(!is_hook_partition(&p(&[3, 2, 2])));
        assert!(is_hook_partition(&Partition::empty()));
        assert!(is_hook_partition(&p(&[1, 1, 1])));
    }

    #[test]
    fn two_adic_valuation() {
        assert_eq!(nu2(12), Ok(2));
        assert_eq!(nu2(8), Ok(3));
        assert_eq!(nu2(7), Ok(0));
        assert_eq!(nu2(0), Err(Error::Nu2Zero));
    }

    #[test]
    fn binary_relations() {
        assert_eq!(
            binary_relation(5, 7),
            BinaryRelation {
                subsum: true,
                disjoint: false
            }
        );
        assert_eq!(
            binary_relation(2, 5),
            BinaryRelation {
                subsum: false,
                disjoint: true
            }
        );
        for n in 0..64 {
            assert_eq!(
                binary_relation(0, n),
                BinaryRelation {
                    subsum: true,
                    disjoint: true
                }
            );
        }
        assert_eq!(BinaryFacts::new(13).digits(), vec![1, 4, 8]);
        assert_eq!(BinaryFacts::new(13).top_exponent(), Some(3));
        assert_eq!(BinaryFacts::new(0).top_exponent(), None);
    }

    #[test]
    fn subsum_decomposition_is_exhaustive() {
        for n in 0u64..=256 {
            let facts = BinaryFacts::new(n);
            for m in 0u64..=256 {
                let rel = binary_relation(m, n);
                let digit_subset = facts.digits().iter().filter(|d| m & **d != 0).sum::<u64>() == m;
                assert_eq!(rel.subsum, digit_subset && m <= n, "m = {m}, n = {n}");
                if rel.subsum {
                    let rest = binary_relation(n - m, n);
                    assert!(rest.subsum);
                    assert!(binary_relation(m, n - m).disjoint);
                    assert_eq!(
                        BinaryFacts::new(m).digits().len() + BinaryFacts::new(n - m).digits().len(),
                        facts.digits().len()
                    );
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(
            "[5,4,2,2,1,1]".parse::<Partition>().unwrap(),
            p(&[5, 4, 2, 2, 1, 1])
        );
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(" [ 3 , 1 ] ".parse::<Partition>().unwrap(), p(&[3, 1]));
        let err = "[2,3]".parse::<Partition>().unwrap_err();
        assert_eq!(
            err.to_string(),
            "invalid partition: parts must be weakly decreasing"
        );
        assert!("[2,0]".parse::<Partition>().is_err());
        assert!("[2,-1]".parse::<Partition>().is_err());
        assert!("2,1".parse::<Partition>().is_err());
        assert!("[2,,1]".parse::<Partition>().is_err());
        assert_eq!(p(&[5, 4, 2]).to_string(), "[5,4,2]");
        assert_eq!(Partition::empty().to_string(), "[]");
    }

    #[test]
    fn enumeration_counts_and_order() {
        let counts: Vec<usize> = (0..=12).map(|n| partitions(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert_eq!(partitions(28).count(), 3718);
        let four: Vec<String> = partitions(4).map(|q| q.to_string()).collect();
        assert_eq!(four, vec!["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        for n in 0..15 {
            let all: Vec<_> = partitions(n).collect();
            assert!(all.windows(2).all(|w| w[0] > w[1]));
            assert!(all.iter().all(|q| q.size() == n));
        }
    }

    #[test]
    fn rim_hook_addition_inverts_removal() {
        for n in 0..12 {
            for lam in partitions(n) {
                for h in 1..=4 {
                    for big in lam.add_rim_hooks(h) {
                        assert_eq!(big.size(), n + h);
                        let back = hooks_of_length(&big, h)
                            .iter()
                            .any(|hook| remove_hook(&big, hook).unwrap() == lam);
                        assert!(back, "{big} does not reduce to {lam}");
                    }
                    let expected = partitions(n + h)
                        .filter(|big| {
                            hooks_of_length(big, h)
                                .iter()
                                .any(|hook| remove_hook(big, hook).unwrap() == lam)
                        })
                        .count();
                    assert_eq!(lam.add_rim_hooks(h).len(), expected);
                }
            }
        }
    }

    fn arb_partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
        prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn hook_removal_keeps_shape_valid(lam in arb_partition(8, 8)) {
            for hook in lam.hooks() {
                let mu = remove_hook(&lam, &hook).unwrap();
                prop_assert_eq!(mu.size(), lam.size() - hook.length);
                prop_assert!(Partition::new(mu.parts().to_vec()).is_ok());
                prop_assert!(lam.contains(&mu));
            }
        }

        #[test]
        fn hook_multiset_is_conjugation_invariant(lam in arb_partition(9, 9)) {
            let mut a: Vec<_> = hook_lengths(&lam).concat();
            let mut b: Vec<_> = hook_lengths(&lam.conjugate()).concat();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            prop_assert_eq!(lam.conjugate().conjugate(), lam);
        }

        #[test]
        fn literal_roundtrip(lam in arb_partition(12, 30)) {
            prop_assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam);
        }

        #[test]
        fn beta_set_roundtrip(lam in arb_partition(10, 10), pad in 0usize..6) {
            let beta = lam.beta_set(lam.len() + pad);
            prop_assert_eq!(Partition::from_beta_set(&beta), lam);
        }
    }
}
