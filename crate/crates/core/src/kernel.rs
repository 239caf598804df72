//! Exact and empirical `k`-kernels.
//!
//! The kernel element `(i, j)` is the subsequence `n -> a_{k^i n + j}`.
//! Under least-significant-first reading it is generated by the same
//! automaton started in the state reached after the `i` digits of `j`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::automata::Dfao;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("prefix of length {have} too short, need {need} for depth {depth} and bound {bound}")]
    InsufficientPrefix {
        have: usize,
        need: u128,
        depth: u32,
        bound: usize,
    },
    #[error("automaton output changes on a 0 digit; kernel states are not well defined")]
    NotZeroStable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KernelElement {
    pub i: u32,
    pub j: u128,
    pub class: usize,
}

/// One representative per kernel element, the lexicographically least
/// `(i, j)`, ordered by `(i, j)`.
pub fn kernel_exact(a: &Dfao) -> Result<Vec<KernelElement>, KernelError> {
    if !a.is_zero_stable() {
        return Err(KernelError::NotZeroStable);
    }
    let m = a.minimize();
    let k = u128::from(m.base());
    // states present at level i with the least j reaching them
    let mut level: BTreeMap<usize, u128> = BTreeMap::from([(m.init(), 0)]);
    let mut seen_levels: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps: Vec<(u32, u128, usize)> = Vec::new();
    let mut known: HashMap<usize, usize> = HashMap::new();
    let mut i = 0u32;
    let mut ki = 1u128;
    loop {
        let mut fresh: Vec<(u128, usize)> = level
            .iter()
            .filter(|(s, _)| !known.contains_key(s))
            .map(|(&s, &j)| (j, s))
            .collect();
        fresh.sort_unstable();
        for (j, s) in fresh {
            known.insert(s, reps.len());
            reps.push((i, j, s));
        }
        if !seen_levels.insert(level.keys().copied().collect()) {
            break;
        }
        let mut next: BTreeMap<usize, u128> = BTreeMap::new();
        for (&s, &j) in &level {
            for d in 0..m.base() {
                let t = m.step(s, d);
                let jj = j + u128::from(d) * ki;
                next.entry(t)
                    .and_modify(|e| *e = (*e).min(jj))
                    .or_insert(jj);
            }
        }
        level = next;
        i += 1;
        ki = match ki.checked_mul(k) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(reps
        .into_iter()
        .enumerate()
        .map(|(class, (i, j, _))| KernelElement { i, j, class })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalKernel {
    pub elements: Vec<KernelElement>,
    pub classes: usize,
    /// Always true: equal prefixes do not prove equal sequences.
    pub heuristic: bool,
}

/// Classes of `(i, j)`, `i <= depth`, whose subsequences agree on their
/// first `bound` terms. Needs `k^depth * bound` terms.
pub fn kernel_empirical(
    prefix: &[u128],
    k: u32,
    depth: u32,
    bound: usize,
) -> Result<EmpiricalKernel, KernelError> {
    let kd = u128::from(k).pow(depth);
    let need = kd * bound as u128;
    if (prefix.len() as u128) < need {
        return Err(KernelError::InsufficientPrefix {
            have: prefix.len(),
            need,
            depth,
            bound,
        });
    }
    let mut ids: HashMap<Vec<u128>, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut ki = 1usize;
    for i in 0..=depth {
        for j in 0..ki {
            let sub: Vec<u128> = (0..bound).map(|n| prefix[ki * n + j]).collect();
            let fresh = ids.len();
            let class = *ids.entry(sub).or_insert(fresh);
            elements.push(KernelElement {
                i,
                j: j as u128,
                class,
            });
        }
        ki *= k as usize;
    }
    Ok(EmpiricalKernel {
        classes: ids.len(),
        elements,
        heuristic: true,
    })
}

/// Distinct classes, each given by its least member.
pub fn representatives(elements: &[KernelElement]) -> Vec<KernelElement> {
    let mut seen = BTreeSet::new();
    elements
        .iter()
        .filter(|e| seen.insert(e.class))
        .copied()
        .collect()
}
