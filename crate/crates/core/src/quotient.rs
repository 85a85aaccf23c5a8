//! e-cores and e-quotients on the abacus, and the 2-quotient tower,
//! 2-core tower and k-data built from them.
//!
//! Convention: the β-set has a multiple of `e` elements and component `j`
//! of the quotient is read off the runner of β-elements congruent to `j`
//! modulo `e`. With this choice `Q_2((5,4,2,2,1,1)) = ((2,2,1,1),(1))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Bead levels on each runner of an `e`-abacus, each runner descending.
fn abacus(lambda: &Partition, e: usize) -> Vec<Vec<usize>> {
    let len = lambda.len().div_ceil(e) * e;
    let mut runners = vec![Vec::new(); e];
    for b in lambda.beta_set(len) {
        runners[b % e].push(b / e);
    }
    runners
}

fn core_from_counts(counts: impl Iterator<Item = usize>, e: usize) -> Partition {
    let beta: Vec<usize> = counts
        .enumerate()
        .flat_map(|(j, c)| (0..c).map(move |q| q * e + j))
        .collect();
    Partition::from_beta_set(&beta)
}

/// Removes `e`-hooks until none remain. `e = 1` yields the empty partition.
///
/// Panics if `e == 0`.
pub fn e_core(lambda: &Partition, e: usize) -> Partition {
    assert!(e >= 1, "e-core needs e >= 1");
    if e > lambda.size() {
        return lambda.clone();
    }
    core_from_counts(abacus(lambda, e).iter().map(Vec::len), e)
}

/// The `e` quotient components, in runner order.
///
/// Panics if `e == 0`.
pub fn e_quotient(lambda: &Partition, e: usize) -> Vec<Partition> {
    assert!(e >= 1, "e-quotient needs e >= 1");
    abacus(lambda, e)
        .iter()
        .map(|levels| Partition::from_beta_set(levels))
        .collect()
}

/// True if `lambda` has no hook of length divisible by `e`.
pub fn is_e_core(lambda: &Partition, e: usize) -> bool {
    e_core(lambda, e) == *lambda
}

/// A 2-core is a staircase `(r, r-1, ..., 1)` or empty.
pub fn is_two_core(lambda: &Partition) -> bool {
    let r = lambda.len();
    lambda.parts().iter().enumerate().all(|(i, &p)| p == r - i)
}

/// The pair `(C_e(λ), Q_e(λ))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreQuotient {
    pub e: usize,
    pub core: Partition,
    pub quotient: Vec<Partition>,
}

impl CoreQuotient {
    pub fn of(lambda: &Partition, e: usize) -> Self {
        CoreQuotient {
            e,
            core: e_core(lambda, e),
            quotient: e_quotient(lambda, e),
        }
    }

    pub fn weight(&self) -> usize {
        self.quotient.iter().map(Partition::size).sum()
    }

    pub fn rebuild(&self) -> Result<Partition> {
        from_core_quotient(&self.core, &self.quotient, self.e)
    }
}

/// The unique partition with the given `e`-core and `e`-quotient.
pub fn from_core_quotient(core: &Partition, quotient: &[Partition], e: usize) -> Result<Partition> {
    if e == 0 || quotient.len() != e {
        return Err(Error::QuotientArity {
            expected: e,
            got: quotient.len(),
        });
    }
    if !is_e_core(core, e) {
        return Err(Error::NotACore {
            core: core.clone(),
            e,
        });
    }
    let depth = quotient.iter().map(Partition::len).max().unwrap_or(0);
    // enough beads that every runner holds at least `depth` of them
    let len = (core.len().div_ceil(e) + depth) * e;
    let mut counts = vec![0usize; e];
    for b in core.beta_set(len) {
        counts[b % e] += 1;
    }
    let mut beta = Vec::with_capacity(len);
    for (j, (component, &count)) in quotient.iter().zip(&counts).enumerate() {
        debug_assert!(count >= component.len());
        beta.extend(
            component
                .beta_set(count)
                .into_iter()
                .map(|level| level * e + j),
        );
    }
    Ok(Partition::from_beta_set(&beta))
}

/// Row `k` of the 2-quotient tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientTowerRow {
    pub k: u32,
    pub entries: Vec<Partition>,
}

fn next_row(row: &[Partition]) -> Vec<Partition> {
    row.iter().flat_map(|p| e_quotient(p, 2)).collect()
}

/// Rows `0..=k` of the 2-quotient tower.
fn tower_rows(lambda: &Partition, k: u32) -> Vec<Vec<Partition>> {
    let mut rows = vec![vec![lambda.clone()]];
    for _ in 0..k {
        let next = next_row(rows.last().unwrap());
        rows.push(next);
    }
    rows
}

pub fn tower_row(lambda: &Partition, k: u32) -> QuotientTowerRow {
    let entries = tower_rows(lambda, k).pop().unwrap();
    QuotientTowerRow { k, entries }
}

/// The 2-core tower, truncated before the first row whose quotient entries
/// are all empty (every later row is empty too).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreTower {
    pub rows: Vec<Vec<Partition>>,
    pub weights: Vec<usize>,
}

impl CoreTower {
    /// `c_2^{(k)}`, zero beyond the stored rows.
    pub fn weight(&self, k: usize) -> usize {
        self.weights.get(k).copied().unwrap_or(0)
    }
}

pub fn core_tower(lambda: &Partition) -> CoreTower {
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    let mut row = vec![lambda.clone()];
    while row.iter().any(|p| !p.is_empty()) {
        let cores: Vec<Partition> = row.iter().map(|p| e_core(p, 2)).collect();
        weights.push(cores.iter().map(Partition::size).sum());
        rows.push(cores);
        row = next_row(&row);
    }
    CoreTower { rows, weights }
}

/// Core rows `0..k` together with quotient row `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KData {
    pub k: u32,
    pub core_rows: Vec<Vec<Partition>>,
    pub quotient_row: Vec<Partition>,
}

pub fn k_data(lambda: &Partition, k: u32) -> Result<KData> {
    if k == 0 {
        return Err(Error::KDataZero);
    }
    let mut rows = tower_rows(lambda, k);
    let quotient_row = rows.pop().unwrap();
    let core_rows = rows
        .iter()
        .map(|row| row.iter().map(|p| e_core(p, 2)).collect())
        .collect();
    Ok(KData {
        k,
        core_rows,
        quotient_row,
    })
}

/// Rebuilds the partition whose k-data is `data`.
pub fn partition_from_kdata(data: &KData) -> Result<Partition> {
    if data.k == 0 {
        return Err(Error::KDataZero);
    }
    let k = data.k as usize;
    if data.core_rows.len() != k {
        return Err(Error::InconsistentKData(format!(
            "expected {k} core rows, found {}",
            data.core_rows.len()
        )));
    }
    if data.quotient_row.len() != 1 << k {
        return Err(Error::InconsistentKData(format!(
            "quotient row must have {} entries, found {}",
            1usize << k,
            data.quotient_row.len()
        )));
    }
    let mut below = data.quotient_row.clone();
    for (j, cores) in data.core_rows.iter().enumerate().rev() {
        if cores.len() != 1 << j {
            return Err(Error::InconsistentKData(format!(
                "core row {j} must have {} entries, found {}",
                1usize << j,
                cores.len()
            )));
        }
        if let Some(bad) = cores.iter().find(|c| !is_two_core(c)) {
            return Err(Error::InconsistentKData(format!(
                "{bad} in core row {j} is not a 2-core"
            )));
        }
        below = cores
            .iter()
            .zip(below.chunks(2))
            .map(|(core, pair)| from_core_quotient(core, pair, 2))
            .collect::<Result<_>>()?;
    }
    Ok(below.pop().unwrap())
}
