//! Character-theoretic cross-check of `f_k`.
//!
//! Degree parity comes from the hook length formula and restriction
//! multiplicities from counting skew standard tableaux, both carried mod 2.
//! Nothing here touches cores or quotients.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::f_k;
use crate::oddity::{is_odd, odd_partitions};
use crate::partition::{nu2_degree, partitions, Partition};

/// Parity of the number of standard tableaux of skew shape `lambda / mu`.
pub fn skew_syt_parity(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if !lambda.contains(mu) {
        return Err(Error::NotSubdiagram {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    // shapes reached with an odd number of paths so far
    let mut level: HashSet<Partition> = HashSet::from([mu.clone()]);
    for _ in mu.size()..lambda.size() {
        let mut next = HashSet::new();
        for shape in &level {
            for row in shape.addable_rows() {
                if shape.part(row - 1) < lambda.part(row - 1) {
                    let grown = shape.add_cell(row);
                    if !next.remove(&grown) {
                        next.insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    Ok(level.contains(lambda))
}

/// The unique odd-degree constituent of the restriction of `χ^λ` to
/// `S_{n-2^k}` that appears with odd multiplicity.
pub fn unique_odd_constituent(lambda: &Partition, k: u32) -> Result<Partition> {
    let n = lambda.size();
    let h = 1usize
        .checked_shl(k)
        .filter(|&h| h < n)
        .ok_or(Error::RequiresStrict { n, k })?;
    if nu2_degree(lambda)? != 0 {
        return Err(Error::NotOdd(lambda.clone()));
    }
    let mut found = Vec::new();
    for mu in partitions(n - h) {
        if lambda.contains(&mu) && nu2_degree(&mu)? == 0 && skew_syt_parity(lambda, &mu)? {
            found.push(mu);
        }
    }
    if found.len() != 1 {
        return Err(Error::Internal(format!(
            "restriction of {lambda} to S_{} has {} odd constituents with odd multiplicity",
            n - h,
            found.len()
        )));
    }
    Ok(found.pop().unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub lambda: Partition,
    /// `None` for a degree-parity check.
    pub k: Option<u32>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub n_max: usize,
    pub checks_run: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ParityReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn render(result: &Result<Partition>) -> String {
    match result {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Checks degree parity against [`is_odd`] on every partition of every
/// `n <= n_max`, and [`unique_odd_constituent`] against [`f_k`] on every
/// odd partition and every `2^k < n`.
pub fn cross_validate(n_max: usize) -> ParityReport {
    let mut tasks: Vec<(Partition, Option<u32>)> = Vec::new();
    for n in 1..=n_max {
        tasks.extend(partitions(n).map(|lam| (lam, None)));
        for lam in odd_partitions(n) {
            for k in 0..usize::BITS {
                if 1usize << k >= n {
                    break;
                }
                tasks.push((lam.clone(), Some(k)));
            }
        }
    }
    let mismatches = tasks
        .par_iter()
        .filter_map(|(lam, k)| match k {
            None => {
                let by_degree = nu2_degree(lam).map(|v| v == 0);
                let by_tower = is_odd(lam);
                (by_degree != Ok(by_tower)).then(|| Mismatch {
                    lambda: lam.clone(),
                    k: None,
                    expected: format!("{by_degree:?}"),
                    got: by_tower.to_string(),
                })
            }
            Some(k) => {
                let expected = unique_odd_constituent(lam, *k);
                let got = f_k(lam, *k);
                let agree = matches!((&expected, &got), (Ok(a), Ok(b)) if a == b);
                (!agree).then(|| Mismatch {
                    lambda: lam.clone(),
                    k: Some(*k),
                    expected: render(&expected),
                    got: render(&got),
                })
            }
        })
        .collect();
    ParityReport {
        n_max,
        checks_run: tasks.len(),
        mismatches,
    }
}
