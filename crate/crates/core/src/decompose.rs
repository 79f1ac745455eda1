//! Desubstitution of factors of `t_m` into `α·σ_m(u')·β`, and the
//! structural test for 2-binomial equivalence built on it.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::binomial::extended_parikh;
use crate::error::{Error, Result};
use crate::tm::{is_sigma_prefix, is_sigma_suffix, sigma, tm_source};
use crate::word::{check_alphabet, parikh, Word};

/// `α·σ_m(core)·β` with `α` a proper suffix and `β` a proper prefix of
/// `σ_m` images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Decomposition {
    pub alpha: Word,
    pub core: Word,
    pub beta: Word,
}

impl Decomposition {
    pub fn reconstruct(&self, m: usize) -> Result<Word> {
        let middle = sigma(m)?.apply(&self.core)?;
        Ok(self.alpha.concat(&middle).concat(&self.beta))
    }

    pub fn is_valid(&self, m: usize) -> bool {
        is_sigma_suffix(&self.alpha, m) && is_sigma_prefix(&self.beta, m)
    }
}

/// Decomposition of `host[p..p+n]` induced by the blocks `[i·m, (i+1)·m)`
/// of `host = σ_m(preimage)`.
pub(crate) fn decompose_at(
    host: &[u8],
    preimage: &[u8],
    m: usize,
    p: usize,
    n: usize,
) -> Result<Decomposition> {
    if n < m {
        return Err(Error::DegenerateDecomposition { len: n, m });
    }
    let end = p + n;
    let first_block = p.div_ceil(m);
    let last_block = end / m;
    if last_block > preimage.len() {
        return Err(Error::Precondition("host is longer than σ_m(preimage)".into()));
    }
    Ok(Decomposition {
        alpha: Word::from(&host[p..first_block * m]),
        core: Word::from(&preimage[first_block..last_block]),
        beta: Word::from(&host[last_block * m..end]),
    })
}

/// Every distinct alignment-induced decomposition of `f` over its
/// occurrences in `host_prefix`, which must be a prefix of `t_m`.
pub fn decompose_factor(f: &Word, m: usize, host_prefix: &Word) -> Result<BTreeSet<Decomposition>> {
    check_alphabet(m)?;
    f.check(m)?;
    let n = f.len();
    if n < m {
        return Err(Error::DegenerateDecomposition { len: n, m });
    }
    let host = host_prefix.letters();
    let mut out = BTreeSet::new();
    for p in 0..host.len().saturating_sub(n - 1) {
        if &host[p..p + n] != f.letters() {
            continue;
        }
        let d = decompose_at(host, host, m, p, n)?;
        if d.reconstruct(m)? != *f {
            return Err(Error::Precondition("host is not a prefix of t_m".into()));
        }
        out.insert(d);
    }
    if out.is_empty() {
        return Err(Error::NotAFactor);
    }
    Ok(out)
}

/// All length-`n` factors of `t_m` with their decompositions, over the
/// exact factor cover.
pub fn decompositions_by_factor(m: usize, n: usize) -> Result<BTreeMap<Word, BTreeSet<Decomposition>>> {
    if n < m {
        return Err(Error::DegenerateDecomposition { len: n, m });
    }
    let mut out: BTreeMap<Word, BTreeSet<Decomposition>> = BTreeMap::new();
    for cover in tm_source(m)?.block_cover(n)? {
        let host = cover.word.letters();
        for p in 0..host.len().saturating_sub(n - 1) {
            let d = decompose_at(host, cover.preimage.letters(), m, p, n)?;
            out.entry(Word::from(&host[p..p + n])).or_default().insert(d);
        }
    }
    Ok(out)
}

/// `u ~_2 v` decided from decompositions: equal `α`, equal `β`, and
/// abelian-equivalent cores. Requires both cores of length at least 3.
pub fn equivalent2_structural(d1: &Decomposition, d2: &Decomposition, m: usize) -> Result<bool> {
    if m < 3 {
        return Err(Error::Hypothesis(format!("needs m >= 3, got {m}")));
    }
    let shortest = d1.core.len().min(d2.core.len());
    if shortest < 3 {
        return Err(Error::Hypothesis(format!(
            "core lengths must be at least 3, got {shortest}"
        )));
    }
    for d in [d1, d2] {
        if !d.is_valid(m) {
            return Err(Error::Precondition(format!(
                "({}, {}) is not a valid (suffix, prefix) decoration",
                d.alpha, d.beta
            )));
        }
    }
    Ok(d1.alpha == d2.alpha && d1.beta == d2.beta && parikh(&d1.core, m)? == parikh(&d2.core, m)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub m: usize,
    pub n: usize,
    pub factors: usize,
    /// Factors seen with more than one decomposition.
    pub ambiguous_factors: usize,
    pub pairs_checked: u64,
    pub decomposition_pairs_checked: u64,
    /// Pairs where the structural verdict and the `Ψ_2` oracle differ.
    pub disagreements: Vec<(Word, Word)>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.pairs_checked > 0
    }
}

/// Compares the structural verdict with `Ψ_2` on every unordered pair of
/// length-`n` factors of `t_m` (and every pair of decompositions), with
/// pairs below the core-length hypothesis skipped.
pub fn structural_sweep(m: usize, n: usize) -> Result<SweepReport> {
    let table = decompositions_by_factor(m, n)?;
    let entries: Vec<(Word, Vec<u8>, Vec<Decomposition>)> = table
        .into_iter()
        .map(|(f, ds)| {
            let psi = extended_parikh(&f, 2, m)?.to_bytes();
            Ok((f, psi, ds.into_iter().collect()))
        })
        .collect::<Result<_>>()?;
    let ambiguous_factors = entries.iter().filter(|e| e.2.len() > 1).count();
    let per_row = (0..entries.len())
        .into_par_iter()
        .map(|i| {
            let (fi, psi_i, di) = &entries[i];
            let mut pairs = 0u64;
            let mut dpairs = 0u64;
            let mut bad = Vec::new();
            for (fj, psi_j, dj) in &entries[i..] {
                let oracle = psi_i == psi_j;
                let mut counted = false;
                for (a, d1) in di.iter().enumerate() {
                    for (b, d2) in dj.iter().enumerate() {
                        if fi == fj && b <= a {
                            continue;
                        }
                        if d1.core.len() < 3 || d2.core.len() < 3 {
                            continue;
                        }
                        counted = true;
                        dpairs += 1;
                        if equivalent2_structural(d1, d2, m)? != oracle {
                            bad.push((fi.clone(), fj.clone()));
                        }
                    }
                }
                if counted && fi != fj {
                    pairs += 1;
                }
            }
            Ok((pairs, dpairs, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = SweepReport {
        m,
        n,
        factors: entries.len(),
        ambiguous_factors,
        pairs_checked: 0,
        decomposition_pairs_checked: 0,
        disagreements: Vec::new(),
    };
    for (pairs, dpairs, bad) in per_row {
        report.pairs_checked += pairs;
        report.decomposition_pairs_checked += dpairs;
        report.disagreements.extend(bad);
    }
    report.disagreements.dedup();
    Ok(report)
}
