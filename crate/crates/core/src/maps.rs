//! The maps `f_k` on odd partitions: removal of the unique odd `2^k`-hook,
//! their fibers, images, surjectivity, and when two of them commute.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oddity::{d_good, dnk, is_odd, odd_partitions, pairwise_disjoint};
use crate::partition::{hooks_of_length, remove_hook, BinaryFacts, Partition};
use crate::quotient::{from_core_quotient, k_data, partition_from_kdata};

pub(crate) fn pow2(k: u32) -> Option<usize> {
    1usize.checked_shl(k)
}

fn check_fk_input(lambda: &Partition, k: u32) -> Result<usize> {
    let h = pow2(k)
        .filter(|&h| h <= lambda.size())
        .ok_or(Error::HookTooLong {
            size: lambda.size(),
            k,
        })?;
    if !is_odd(lambda) {
        return Err(Error::NotOdd(lambda.clone()));
    }
    Ok(h)
}

/// `f_k` by enumerating every `2^k`-hook and keeping the odd removals.
///
/// `2^k = |λ|` is accepted and gives the empty partition.
pub fn f_k_by_hooks(lambda: &Partition, k: u32) -> Result<Partition> {
    let h = check_fk_input(lambda, k)?;
    let hooks = hooks_of_length(lambda, h);
    let mut odd = hooks
        .iter()
        .map(|hook| remove_hook(lambda, hook))
        .filter(|mu| mu.as_ref().map_or(true, is_odd));
    match (odd.next(), odd.next()) {
        (Some(mu), None) => mu,
        _ => Err(Error::Internal(format!(
            "{lambda} does not have exactly one odd {h}-hook"
        ))),
    }
}

/// `f_k` through the k-data: remove one cell from one entry of quotient
/// row `k` so that the entries stay odd with pairwise 2-disjoint sizes,
/// then rebuild.
pub fn f_k_by_kdata(lambda: &Partition, k: u32) -> Result<Partition> {
    check_fk_input(lambda, k)?;
    if k == 0 {
        // row 0 is λ itself
        let mut odd = lambda
            .removable_rows()
            .into_iter()
            .map(|r| lambda.remove_cell(r))
            .filter(is_odd);
        return match (odd.next(), odd.next()) {
            (Some(mu), None) => Ok(mu),
            _ => Err(Error::Internal(format!(
                "{lambda} does not have exactly one odd 1-hook"
            ))),
        };
    }
    let data = k_data(lambda, k)?;
    let mut found = None;
    for (i, entry) in data.quotient_row.iter().enumerate() {
        for row in entry.removable_rows() {
            let smaller = entry.remove_cell(row);
            if !is_odd(&smaller) {
                continue;
            }
            let sizes = data.quotient_row.iter().enumerate().map(|(j, q)| {
                if j == i {
                    smaller.size()
                } else {
                    q.size()
                }
            });
            if !pairwise_disjoint(sizes) {
                continue;
            }
            if found.is_some() {
                return Err(Error::Internal(format!(
                    "{lambda}: more than one odd 1-hook in quotient row {k}"
                )));
            }
            found = Some((i, smaller));
        }
    }
    let (i, smaller) = found
        .ok_or_else(|| Error::Internal(format!("{lambda}: no odd 1-hook in quotient row {k}")))?;
    let mut next = data;
    next.quotient_row[i] = smaller;
    partition_from_kdata(&next)
}

/// The odd partition obtained from odd `lambda` by removing its odd
/// `2^k`-hook. Both the hook route and the k-data route are evaluated;
/// disagreement is reported as an internal error.
pub fn f_k(lambda: &Partition, k: u32) -> Result<Partition> {
    let by_hooks = f_k_by_hooks(lambda, k)?;
    let by_data = f_k_by_kdata(lambda, k)?;
    if by_hooks != by_data {
        return Err(Error::Internal(format!(
            "f_{k}({lambda}): hook route gives {by_hooks}, k-data route gives {by_data}"
        )));
    }
    Ok(by_hooks)
}

/// The preimage of `mu` under `f_k^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub mu: Partition,
    pub n: usize,
    pub k: u32,
    pub members: Vec<Partition>,
    pub size: usize,
}

fn check_fiber_input(mu: &Partition, n: usize, k: u32) -> Result<usize> {
    let h = pow2(k)
        .filter(|&h| h <= n)
        .ok_or(Error::HookTooLong { size: n, k })?;
    if mu.size() + h != n {
        return Err(Error::SizeMismatch {
            expected: n - h,
            got: mu.size(),
        });
    }
    if !is_odd(mu) {
        return Err(Error::NotOdd(mu.clone()));
    }
    Ok(h)
}

/// Enumerates the odd `2^k`-extensions of `mu` that `f_k` sends back to `mu`.
pub fn fiber(mu: &Partition, n: usize, k: u32) -> Result<Fiber> {
    let h = check_fiber_input(mu, n, k)?;
    let mut members = Vec::new();
    for lambda in mu.add_rim_hooks(h) {
        if is_odd(&lambda) && f_k(&lambda, k)? == *mu {
            members.push(lambda);
        }
    }
    members.sort_unstable_by(|a, b| b.cmp(a));
    let size = members.len();
    Ok(Fiber {
        mu: mu.clone(),
        n,
        k,
        members,
        size,
    })
}

/// Predicted fiber size: `2^k` when `d(n,k) = 0`, otherwise 2 if row `k`
/// of the quotient tower of `mu` holds a `d(n,k)`-good partition, else 0.
pub fn fiber_size_formula(mu: &Partition, n: usize, k: u32) -> Result<usize> {
    let h = check_fiber_input(mu, n, k)?;
    let d = dnk(n, k)?.d;
    if d == 0 {
        return Ok(h);
    }
    let row = crate::quotient::tower_row(mu, k);
    for entry in &row.entries {
        if d_good(entry, d)? {
            return Ok(2);
        }
    }
    Ok(0)
}

fn check_strict(n: usize, k: u32) -> Result<usize> {
    pow2(k)
        .filter(|&h| h < n)
        .ok_or(Error::RequiresStrict { n, k })
}

/// Odd partitions of `n - 2^k` outside the image of `f_k^n`.
pub fn image_misses(n: usize, k: u32) -> Result<Vec<Partition>> {
    let h = check_strict(n, k)?;
    odd_partitions(n - h)
        .into_par_iter()
        .filter_map(|mu| match fiber_size_formula(&mu, n, k) {
            Ok(0) => Some(Ok(mu)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// Surjectivity of `f_k^n` from `d(n,k)`: at most 2 when `k = 0`, at most 1
/// otherwise.
pub fn is_surjective(n: usize, k: u32) -> Result<bool> {
    check_strict(n, k)?;
    let d = dnk(n, k)?.d;
    Ok(if k == 0 { d <= 2 } else { d <= 1 })
}

/// Surjectivity criterion alongside the computed image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityCheck {
    pub n: usize,
    pub k: u32,
    pub d: u32,
    pub criterion: bool,
    pub misses: Vec<Partition>,
}

impl SurjectivityCheck {
    pub fn consistent(&self) -> bool {
        self.criterion == self.misses.is_empty()
    }
}

pub fn check_surjectivity(n: usize, k: u32) -> Result<SurjectivityCheck> {
    let criterion = is_surjective(n, k)?;
    Ok(SurjectivityCheck {
        n,
        k,
        d: dnk(n, k)?.d,
        criterion,
        misses: image_misses(n, k)?,
    })
}

/// A triple `(n; k, l)` with `k < l` and `2^k + 2^l <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CommuteInstance {
    pub n: usize,
    pub k: u32,
    pub l: u32,
    /// Exponent of the largest binary digit of `n`.
    pub t: u32,
    /// `n - 2^t`.
    pub m: usize,
}

impl CommuteInstance {
    pub fn new(n: usize, k: u32, l: u32) -> Result<Self> {
        let invalid = |reason| Error::InvalidInstance { n, k, l, reason };
        if k >= l {
            return Err(invalid("requires k < l"));
        }
        let fits = pow2(l)
            .and_then(|hl| pow2(k).and_then(|hk| hk.checked_add(hl)))
            .is_some_and(|s| s <= n);
        if !fits {
            return Err(invalid("requires 2^k + 2^l <= n"));
        }
        let t = BinaryFacts::new(n as u64).top_exponent().expect("n > 0");
        Ok(CommuteInstance {
            n,
            k,
            l,
            t,
            m: n - (1 << t),
        })
    }

    /// Every valid instance for a given `n`, ordered by `(k, l)`.
    pub fn all(n: usize) -> Vec<CommuteInstance> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for l in 1..=n.ilog2() {
            for k in 0..l {
                if let Ok(inst) = CommuteInstance::new(n, k, l) {
                    out.push(inst);
                }
            }
        }
        out
    }

    fn is_exception(&self) -> bool {
        (self.n, self.k, self.l) == (6, 0, 1)
    }
}

/// Commutation predicted from the binary shape of `n`: the maps fail to
/// commute exactly when `l < t` and `2^k <= m`, except at `(6; 0, 1)`.
pub fn predicted_commute(inst: &CommuteInstance) -> bool {
    let fails = inst.l < inst.t && (1usize << inst.k) <= inst.m;
    !fails || inst.is_exception()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommuteVerdict {
    pub instance: CommuteInstance,
    pub commutes: bool,
    pub witness: Option<Partition>,
}

/// `f_k f_l(λ)` and `f_l f_k(λ)`.
pub fn compositions(lambda: &Partition, k: u32, l: u32) -> Result<(Partition, Partition)> {
    let kl = f_k(&f_k(lambda, l)?, k)?;
    let lk = f_k(&f_k(lambda, k)?, l)?;
    Ok((kl, lk))
}

fn differs(lambda: &Partition, inst: &CommuteInstance) -> Result<bool> {
    let (kl, lk) = compositions(lambda, inst.k, inst.l)?;
    Ok(kl != lk)
}

/// Every odd partition of `n` on which the two compositions differ, in
/// descending lexicographic order.
pub fn counterexamples(inst: &CommuteInstance) -> Result<Vec<Partition>> {
    odd_partitions(inst.n)
        .into_par_iter()
        .filter_map(|lambda| match differs(&lambda, inst) {
            Ok(true) => Some(Ok(lambda)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// Exhaustive check; the witness is the lexicographically greatest
/// counterexample.
pub fn commute_verdict(inst: &CommuteInstance) -> Result<CommuteVerdict> {
    let witness = counterexamples(inst)?.into_iter().next();
    Ok(CommuteVerdict {
        instance: *inst,
        commutes: witness.is_none(),
        witness,
    })
}

/// Explicit odd partition on which `f_k f_l` and `f_l f_k` differ, built
/// without search for `n >= 8`. The result is checked before it is returned.
pub fn counterexample_witness(inst: &CommuteInstance) -> Result<Partition> {
    if predicted_commute(inst) {
        return Err(Error::CommutingInstance {
            n: inst.n,
            k: inst.k,
            l: inst.l,
        });
    }
    let lambda = construct_witness(inst)?;
    if lambda.size() != inst.n || !is_odd(&lambda) || !differs(&lambda, inst)? {
        return Err(Error::Internal(format!(
            "constructed {lambda} is not a counterexample for ({};{},{})",
            inst.n, inst.k, inst.l
        )));
    }
    Ok(lambda)
}

fn construct_witness(inst: &CommuteInstance) -> Result<Partition> {
    if inst.k == 0 {
        return base_witness(inst);
    }
    let half = CommuteInstance::new(inst.n / 2, inst.k - 1, inst.l - 1)?;
    if half.is_exception() {
        // (12;1,2) and (13;1,2) sit above the exceptional (6;0,1)
        let parts = if inst.n.is_multiple_of(2) {
            vec![6, 4, 2]
        } else {
            vec![6, 4, 3]
        };
        return Ok(Partition::from_valid(parts));
    }
    let inner = construct_witness(&half)?;
    // 2-quotient (inner, ()) over the 2-core matching the parity of n
    from_core_quotient(&Partition::row(inst.n % 2), &[inner, Partition::empty()], 2)
}

/// `k = 0`, `0 < l < t`, `0 < m < 2^t`.
fn base_witness(inst: &CommuteInstance) -> Result<Partition> {
    let CommuteInstance { n, l, t, m, .. } = *inst;
    let two_t = 1usize << t;
    let two_l = 1usize << l;
    if t < 3 {
        // small n: first counterexample found by search
        return counterexamples(inst)?
            .into_iter()
            .next()
            .ok_or(Error::CommutingInstance { n, k: 0, l });
    }
    let mut parts = if two_l < m {
        vec![m, m]
            .into_iter()
            .chain(std::iter::repeat_n(1, two_t - m))
            .collect()
    } else if m < two_l {
        vec![n - two_l, m + 1]
            .into_iter()
            .chain(std::iter::repeat_n(1, two_l - (m + 1)))
            .collect()
    } else if l >= 2 {
        vec![two_t, two_l - 1, 1]
    } else {
        vec![two_t - 2, 2, 2]
    };
    parts.retain(|&p| p > 0);
    Partition::new(parts)
}
