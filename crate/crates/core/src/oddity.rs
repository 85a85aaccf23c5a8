//! Odd partitions: the core-tower criterion, the row criterion, enumeration,
//! d-good partitions and the `d(n,k)` decomposition.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{is_hook_partition, partitions, BinaryFacts, Partition};
use crate::quotient::{e_core, e_quotient, from_core_quotient};

/// True iff every row of the 2-core tower has total size at most 1.
pub fn is_odd(lambda: &Partition) -> bool {
    // only weights matter, so empty entries are dropped as we descend
    let mut row = vec![lambda.clone()];
    while !row.is_empty() {
        let weight: usize = row.iter().map(|p| e_core(p, 2).size()).sum();
        if weight > 1 {
            return false;
        }
        row = row
            .iter()
            .flat_map(|p| e_quotient(p, 2))
            .filter(|p| !p.is_empty())
            .collect();
    }
    true
}

/// Oddness decided from row `k` of the quotient tower: the core rows above
/// it have weight at most 1, its entries are odd, and their sizes are
/// pairwise 2-disjoint.
pub fn is_odd_via_row(lambda: &Partition, k: u32) -> bool {
    let mut row = vec![lambda.clone()];
    for _ in 0..k {
        let weight: usize = row.iter().map(|p| e_core(p, 2).size()).sum();
        if weight > 1 {
            return false;
        }
        row = row.iter().flat_map(|p| e_quotient(p, 2)).collect();
    }
    row.iter().all(is_odd) && pairwise_disjoint(row.iter().map(Partition::size))
}

pub(crate) fn pairwise_disjoint(sizes: impl IntoIterator<Item = usize>) -> bool {
    let mut seen = 0usize;
    for s in sizes {
        if seen & s != 0 {
            return false;
        }
        seen |= s;
    }
    true
}

/// All odd partitions of `n` in descending lexicographic order.
///
/// Built from the 1-data: the 2-core is `(1)` or `()` according to the
/// parity of `n`, and the 2-quotient is any pair of odd partitions whose
/// sizes are 2-disjoint and add up to `⌊n/2⌋`.
pub fn odd_partitions(n: usize) -> Vec<Partition> {
    let mut memo = HashMap::new();
    let mut out = construct(n, &mut memo);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn construct(n: usize, memo: &mut HashMap<usize, Vec<Partition>>) -> Vec<Partition> {
    if n <= 1 {
        return vec![Partition::row(n)];
    }
    if let Some(hit) = memo.get(&n) {
        return hit.clone();
    }
    let half = n / 2;
    let core = Partition::row(n % 2);
    let half_digits = BinaryFacts::new(half as u64);
    let mut out = Vec::new();
    // each binary digit of ⌊n/2⌋ goes to exactly one of the two components
    let mut left = half;
    loop {
        let right = half - left;
        let lefts = construct(left, memo);
        let rights = construct(right, memo);
        for a in &lefts {
            for b in &rights {
                let lam = from_core_quotient(&core, &[a.clone(), b.clone()], 2)
                    .expect("staircase of size <= 1 is a 2-core");
                out.push(lam);
            }
        }
        if left == 0 {
            break;
        }
        left = (left - 1) & half_digits.value() as usize;
    }
    memo.insert(n, out.clone());
    out
}

/// Reference enumeration: every partition of `n` filtered by [`is_odd`].
pub fn odd_partitions_filtered(n: usize) -> Vec<Partition> {
    partitions(n).filter(is_odd).collect()
}

/// An odd partition is d-good when `|λ| ≡ 2^d - 1 (mod 2^{d+1})` and its
/// `2^d`-core is a hook partition.
pub fn d_good(lambda: &Partition, d: u32) -> Result<bool> {
    if !is_odd(lambda) {
        return Err(Error::DGoodNotOdd(lambda.clone()));
    }
    if d >= usize::BITS - 1 {
        return Ok(false);
    }
    let modulus = 1usize << (d + 1);
    let congruent = lambda.size() % modulus == (1usize << d) - 1;
    let hook_core = is_hook_partition(&e_core(lambda, 1 << d));
    Ok(congruent && hook_core)
}

/// `⌊n/2^k⌋ = 2^d + m` with `2^{d+1} | m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DnkDecomposition {
    pub n: usize,
    pub k: u32,
    pub d: u32,
    pub m: usize,
}

pub fn dnk(n: usize, k: u32) -> Result<DnkDecomposition> {
    let quotient = n.checked_shr(k).unwrap_or(0);
    if quotient == 0 {
        return Err(Error::DnkUndefined { n, k });
    }
    let d = quotient.trailing_zeros();
    Ok(DnkDecomposition {
        n,
        k,
        d,
        m: quotient - (1 << d),
    })
}

/// Number of odd partitions of `n`: two to the sum of the exponents of its
/// binary digits.
pub fn odd_partition_count(n: usize) -> u128 {
    1u128 << crate::partition::digit_exponent_sum(n)
}
