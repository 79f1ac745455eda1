//! Finite hosts for the factors of an infinite fixed point.
//!
//! The default host is exact. If `x = φ^∞(s)` for a morphism whose images
//! all have length at least 2, every factor of length `n` of `x` occurs in
//! `φ^j(ab)` for some length-2 factor `ab` of `x`, as soon as every
//! `φ^j(c)` has length at least `n - 1`. The length-2 factors themselves
//! are the closure of the ones found in `φ(s)` under "take the length-2
//! factors of `φ(ab)`".
//!
//! The prefix strategy evaluates a quantity on `x[..L]` with
//! `L = max(growth * n, m^3)` and accepts it once two consecutive
//! doublings agree. It is cheaper to explain but can settle on a plateau
//! before all factors have appeared.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::word::{Letter, Morphism, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixPolicy {
    pub growth: usize,
    pub max_doublings: u32,
}

impl Default for PrefixPolicy {
    fn default() -> Self {
        PrefixPolicy {
            growth: 40,
            max_doublings: 8,
        }
    }
}

impl PrefixPolicy {
    pub fn initial_len(&self, n: usize, m: usize) -> usize {
        (self.growth * n).max(m.pow(3)).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HostStrategy {
    #[default]
    Cover,
    Prefix(PrefixPolicy),
}

/// One host word `φ^j(ab)` with `preimage = φ^{j-1}(ab)`, so that the
/// blocks `[i·len, (i+1)·len)` of a uniform morphism are `φ(preimage[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWord {
    pub word: Word,
    pub preimage: Word,
}

/// Where factors come from: a finite word taken as-is, or the fixed point
/// of a morphism.
#[derive(Debug, Clone)]
pub enum WordSource {
    Finite(Word),
    FixedPoint { morphism: Morphism, seed: Letter },
}

impl WordSource {
    pub fn fixed_point(morphism: Morphism, seed: Letter) -> Result<Self> {
        morphism.fixed_point_prefix(seed, 1)?;
        Ok(WordSource::FixedPoint { morphism, seed })
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            WordSource::Finite(w) => w.min_alphabet(),
            WordSource::FixedPoint { morphism, .. } => morphism.alphabet_size(),
        }
    }

    pub fn prefix(&self, len: usize) -> Result<Word> {
        match self {
            WordSource::Finite(w) => Ok(Word::from(&w.letters()[..len.min(w.len())])),
            WordSource::FixedPoint { .. } if len == 0 => Ok(Word::empty()),
            WordSource::FixedPoint { morphism, seed } => morphism.fixed_point_prefix(*seed, len),
        }
    }

    /// Length-2 factors of the source.
    pub fn two_letter_factors(&self) -> Result<BTreeSet<(u8, u8)>> {
        match self {
            WordSource::Finite(w) => Ok(w.letters().windows(2).map(|p| (p[0], p[1])).collect()),
            WordSource::FixedPoint { morphism, seed } => {
                check_growing(morphism)?;
                let pairs_of = |w: &Word| -> Vec<(u8, u8)> {
                    w.letters().windows(2).map(|p| (p[0], p[1])).collect()
                };
                let mut found: BTreeSet<(u8, u8)> =
                    pairs_of(morphism.image(seed.value())).into_iter().collect();
                let mut frontier: Vec<(u8, u8)> = found.iter().copied().collect();
                while let Some((a, b)) = frontier.pop() {
                    let image = morphism.apply(&Word::from_letters(vec![a, b]))?;
                    for pair in pairs_of(&image) {
                        if found.insert(pair) {
                            frontier.push(pair);
                        }
                    }
                }
                Ok(found)
            }
        }
    }

    /// Smallest `j >= min_depth` with `|φ^j(c)| >= n - 1` for every letter `c`.
    fn cover_depth(morphism: &Morphism, n: usize, min_depth: u32) -> u32 {
        let m = morphism.alphabet_size();
        let mut lens = vec![1usize; m];
        let mut depth = 0;
        loop {
            if depth >= min_depth && lens.iter().all(|&l| l + 1 >= n) {
                return depth;
            }
            lens = (0..m as u8)
                .map(|c| {
                    morphism
                        .image(c)
                        .letters()
                        .iter()
                        .fold(0usize, |acc, &x| acc.saturating_add(lens[x as usize]))
                })
                .collect();
            depth += 1;
        }
    }

    /// Lengths of the words [`WordSource::cover`] would build, without
    /// building them.
    pub fn cover_lengths(&self, n: usize) -> Result<Vec<usize>> {
        match self {
            WordSource::Finite(w) => Ok(vec![w.len()]),
            WordSource::FixedPoint { morphism, .. } => {
                let depth = Self::cover_depth(morphism, n, 0);
                let m = morphism.alphabet_size();
                let mut lens = vec![1usize; m];
                for _ in 0..depth {
                    lens = (0..m as u8)
                        .map(|c| {
                            morphism
                                .image(c)
                                .letters()
                                .iter()
                                .fold(0usize, |acc, &x| acc.saturating_add(lens[x as usize]))
                        })
                        .collect();
                }
                Ok(self
                    .two_letter_factors()?
                    .into_iter()
                    .map(|(a, b)| lens[a as usize].saturating_add(lens[b as usize]))
                    .collect())
            }
        }
    }

    /// Host words whose length-`n` windows are exactly the length-`n`
    /// factors of the source (for finite sources, the word itself).
    pub fn cover(&self, n: usize) -> Result<Vec<CoverWord>> {
        self.cover_with_depth(n, 0)
    }

    /// Like [`WordSource::cover`] but with at least one level of block
    /// structure, so every host word has a preimage.
    pub fn block_cover(&self, n: usize) -> Result<Vec<CoverWord>> {
        self.cover_with_depth(n, 1)
    }

    fn cover_with_depth(&self, n: usize, min_depth: u32) -> Result<Vec<CoverWord>> {
        match self {
            WordSource::Finite(w) => Ok(vec![CoverWord {
                word: w.clone(),
                preimage: Word::empty(),
            }]),
            WordSource::FixedPoint { morphism, .. } => {
                let depth = Self::cover_depth(morphism, n, min_depth);
                self.two_letter_factors()?
                    .into_iter()
                    .map(|(a, b)| {
                        let mut preimage = Word::from_letters(vec![a, b]);
                        let mut word = preimage.clone();
                        for _ in 0..depth {
                            preimage = word;
                            word = morphism.apply(&preimage)?;
                        }
                        Ok(CoverWord { word, preimage })
                    })
                    .collect()
            }
        }
    }

    /// Evaluates `f` on a set of host words adequate for window length `n`.
    pub fn evaluate<T, F>(&self, n: usize, strategy: &HostStrategy, f: F) -> Result<T>
    where
        T: PartialEq,
        F: Fn(&[Word]) -> Result<T>,
    {
        match (self, strategy) {
            (WordSource::Finite(w), _) => f(std::slice::from_ref(w)),
            (WordSource::FixedPoint { .. }, HostStrategy::Cover) => {
                let hosts: Vec<Word> = self.cover(n)?.into_iter().map(|c| c.word).collect();
                f(&hosts)
            }
            (WordSource::FixedPoint { morphism, .. }, HostStrategy::Prefix(policy)) => {
                let m = morphism.alphabet_size();
                let mut len = policy.initial_len(n, m);
                let mut host = self.prefix(len << 1)?;
                let mut previous = f(&[Word::from(&host.letters()[..len])])?;
                for _ in 0..policy.max_doublings {
                    len <<= 1;
                    if host.len() < len {
                        host = self.prefix(len)?;
                    }
                    let current = f(&[Word::from(&host.letters()[..len])])?;
                    if current == previous {
                        return Ok(current);
                    }
                    previous = current;
                }
                Err(Error::InsufficientPrefix {
                    n,
                    doublings: policy.max_doublings,
                })
            }
        }
    }
}

fn check_growing(morphism: &Morphism) -> Result<()> {
    if morphism.images().iter().all(|w| w.len() >= 2) {
        Ok(())
    } else {
        Err(Error::Precondition(
            "exact factor cover needs every image to have length >= 2".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::factors;
    use std::cell::Cell;

    fn thue_morse() -> WordSource {
        let m = Morphism::new(vec![Word::parse("01").unwrap(), Word::parse("10").unwrap()]).unwrap();
        WordSource::fixed_point(m, Letter::new(0, 2).unwrap()).unwrap()
    }

    fn union_factors(hosts: &[Word], n: usize) -> BTreeSet<Word> {
        hosts.iter().flat_map(|h| factors(h, n)).collect()
    }

    #[test]
    fn initial_length() {
        let p = PrefixPolicy::default();
        assert_eq!(p.initial_len(10, 3), 400);
        assert_eq!(p.initial_len(0, 3), 27);
    }

    #[test]
    fn thue_morse_pairs() {
        let pairs = thue_morse().two_letter_factors().unwrap();
        assert_eq!(pairs.len(), 4);
    }

    #[test]
    fn cover_matches_long_prefix() {
        let src = thue_morse();
        let long = src.prefix(1 << 14).unwrap();
        for n in 0..40 {
            let hosts = src
                .evaluate(n, &HostStrategy::Cover, |h| Ok(union_factors(h, n)))
                .unwrap();
            assert_eq!(hosts, factors(&long, n), "n = {n}");
        }
    }

    #[test]
    fn block_cover_preimages() {
        let src = thue_morse();
        let WordSource::FixedPoint { morphism, .. } = &src else {
            unreachable!()
        };
        for c in src.block_cover(1).unwrap() {
            assert_eq!(morphism.apply(&c.preimage).unwrap(), c.word);
        }
    }

    #[test]
    fn prefix_strategy_needs_one_doubling() {
        let src = thue_morse();
        let calls = Cell::new(0);
        let v = src
            .evaluate(3, &HostStrategy::Prefix(PrefixPolicy::default()), |h| {
                calls.set(calls.get() + 1);
                Ok(factors(&h[0], 3).len())
            })
            .unwrap();
        assert_eq!(v, 6);
        assert_eq!(calls.get(), 2);
    }

    #[test]
    fn unstable_quantity_fails_naming_n() {
        let src = thue_morse();
        let policy = PrefixPolicy {
            growth: 1,
            max_doublings: 3,
        };
        let err = src
            .evaluate(7, &HostStrategy::Prefix(policy), |h| Ok(h[0].len()))
            .unwrap_err();
        assert_eq!(err, Error::InsufficientPrefix { n: 7, doublings: 3 });
    }

    #[test]
    fn finite_source_is_used_whole() {
        let src = WordSource::Finite(Word::parse("0110").unwrap());
        let v = src.evaluate(2, &HostStrategy::Cover, |h| Ok(h[0].len())).unwrap();
        assert_eq!(v, 4);
    }
}
