//! Scattered-subword counting and k-binomial equivalence.
//!
//! `binom(u, v)` counts the index tuples `i_1 < … < i_|v|` with
//! `u(i_1)…u(i_|v|) = v`. The extended Parikh vector `Ψ_k(u)` collects
//! `binom(u, v)` for every `v` with `1 <= |v| <= k`, blocks ordered by
//! length and words ordered lexicographically inside a block.
//!
//! Two independent routes exist: [`binom_words`] is the classic
//! `O(|u|·|v|)` table for one pair of words, and [`extended_parikh`] keeps
//! every coefficient up to length `k` and updates them one letter at a
//! time. The incremental state also supports dropping the first letter,
//! which gives sliding-window class counting in [`window_classes`].

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{check_alphabet, Word};

/// Exact value of a binomial coefficient of words.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
pub struct BinomialValue(pub u128);

impl BinomialValue {
    pub const ZERO: BinomialValue = BinomialValue(0);
    pub const ONE: BinomialValue = BinomialValue(1);

    pub fn get(self) -> u128 {
        self.0
    }

    pub fn checked_add(self, other: BinomialValue) -> Result<BinomialValue> {
        self.0
            .checked_add(other.0)
            .map(BinomialValue)
            .ok_or_else(|| Error::Overflow(format!("{} + {}", self.0, other.0)))
    }

    pub fn checked_mul(self, other: BinomialValue) -> Result<BinomialValue> {
        self.0
            .checked_mul(other.0)
            .map(BinomialValue)
            .ok_or_else(|| Error::Overflow(format!("{} * {}", self.0, other.0)))
    }
}

impl fmt::Display for BinomialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for BinomialValue {
    fn from(v: u64) -> Self {
        BinomialValue(v as u128)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ordinary binomial coefficient `C(n, k)` with overflow detection.
///
/// Intermediate products are reduced by a gcd before multiplying, so the
/// computation only fails when the result itself does not fit.
pub fn choose(n: u128, k: u128) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = n - i;
        let den = i + 1;
        let g = gcd(acc, den);
        let (acc_r, den_r) = (acc / g, den / g);
        let num_r = num / den_r;
        acc = acc_r
            .checked_mul(num_r)
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k}) does not fit in 128 bits")))?;
    }
    Ok(acc)
}

const VALUE_LIMIT: u128 = 1 << 127;

/// Rejects `(len, k)` when some `C(len, ℓ)`, `ℓ <= k`, reaches `2^127`.
pub fn check_bound(len: usize, k: usize) -> Result<()> {
    let mut l = 1;
    while l <= k && l <= len {
        let c = choose(len as u128, l as u128)?;
        if c >= VALUE_LIMIT {
            return Err(Error::Overflow(format!(
                "C({len}, {l}) = {c} exceeds 2^127"
            )));
        }
        l += 1;
    }
    Ok(())
}

/// Number of occurrences of `v` as a scattered subword of `u`.
pub fn binom_words(u: &Word, v: &Word) -> Result<BinomialValue> {
    if v.is_empty() {
        return Ok(BinomialValue::ONE);
    }
    if v.len() > u.len() {
        return Ok(BinomialValue::ZERO);
    }
    let bound = choose(u.len() as u128, v.len() as u128)?;
    if bound >= VALUE_LIMIT {
        return Err(Error::Overflow(format!(
            "C({}, {}) exceeds 2^127",
            u.len(),
            v.len()
        )));
    }
    let target = v.letters();
    // dp[j] = occurrences of target[..j] in the letters read so far.
    let mut dp = vec![0u128; target.len() + 1];
    dp[0] = 1;
    for &a in u.letters() {
        for j in (1..=target.len()).rev() {
            if target[j - 1] == a {
                dp[j] = dp[j]
                    .checked_add(dp[j - 1])
                    .ok_or_else(|| Error::Overflow("subword count".into()))?;
            }
        }
    }
    Ok(BinomialValue(dp[target.len()]))
}

/// Index arithmetic for `Ψ_k` over `Σ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PsiLayout {
    pub m: usize,
    pub k: usize,
}

impl PsiLayout {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        check_alphabet(m)?;
        if k == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        let layout = PsiLayout { m, k };
        // Also guards the vector length against usize overflow.
        (1..=k as u32)
            .try_fold(0usize, |acc, l| acc.checked_add(m.checked_pow(l)?))
            .ok_or_else(|| Error::Overflow(format!("Ψ_{k} over {m} letters is too large")))?;
        Ok(layout)
    }

    /// Number of words of length `l`.
    pub fn block_len(&self, l: usize) -> usize {
        self.m.pow(l as u32)
    }

    /// Position of the first length-`l` word, `l >= 1`.
    pub fn offset(&self, l: usize) -> usize {
        (1..l).map(|j| self.block_len(j)).sum()
    }

    pub fn len(&self) -> usize {
        self.offset(self.k + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lexicographic rank of `v` among words of its length.
    pub fn rank(&self, v: &[u8]) -> usize {
        v.iter().fold(0, |acc, &a| acc * self.m + a as usize)
    }

    pub fn index(&self, v: &[u8]) -> Option<usize> {
        if v.is_empty() || v.len() > self.k || v.iter().any(|&a| a as usize >= self.m) {
            return None;
        }
        Some(self.offset(v.len()) + self.rank(v))
    }

    /// Inverse of [`PsiLayout::index`].
    pub fn word_at(&self, mut index: usize) -> Word {
        let mut l = 1;
        while index >= self.block_len(l) {
            index -= self.block_len(l);
            l += 1;
        }
        let mut letters = vec![0u8; l];
        for slot in letters.iter_mut().rev() {
            *slot = (index % self.m) as u8;
            index /= self.m;
        }
        Word::from_letters(letters)
    }
}

/// `Ψ_k(u)`: all `binom(u, v)` for `1 <= |v| <= k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedParikhVector {
    layout: PsiLayout,
    counts: Vec<BinomialValue>,
}

impl ExtendedParikhVector {
    pub fn k(&self) -> usize {
        self.layout.k
    }

    pub fn m(&self) -> usize {
        self.layout.m
    }

    pub fn layout(&self) -> PsiLayout {
        self.layout
    }

    pub fn counts(&self) -> &[BinomialValue] {
        &self.counts
    }

    /// `binom(u, v)`; `None` when `v` is empty, too long or off-alphabet.
    pub fn get(&self, v: &[u8]) -> Option<BinomialValue> {
        self.layout.index(v).map(|i| self.counts[i])
    }

    pub fn block(&self, l: usize) -> &[BinomialValue] {
        let start = self.layout.offset(l);
        &self.counts[start..start + self.layout.block_len(l)]
    }

    /// Fixed-width (16 byte) big-endian encoding of every entry.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.counts
            .iter()
            .flat_map(|c| c.0.to_be_bytes())
            .collect()
    }
}

/// Running `Ψ_k` of a word that grows at the back and shrinks at the front.
#[derive(Debug, Clone)]
pub(crate) struct PsiState {
    layout: PsiLayout,
    counts: Vec<u128>,
}

impl PsiState {
    pub(crate) fn new(layout: PsiLayout) -> Self {
        PsiState {
            counts: vec![0; layout.len()],
            layout,
        }
    }

    /// `u -> u·a`: `binom(u·a, v·a) = binom(u, v·a) + binom(u, v)`.
    pub(crate) fn push_back(&mut self, a: u8) -> Result<()> {
        let m = self.layout.m;
        let a = a as usize;
        for l in (2..=self.layout.k).rev() {
            let shorter = self.layout.offset(l - 1);
            let longer = self.layout.offset(l);
            for r in 0..self.layout.block_len(l - 1) {
                let add = self.counts[shorter + r];
                if add != 0 {
                    let slot = &mut self.counts[longer + r * m + a];
                    *slot = slot
                        .checked_add(add)
                        .ok_or_else(|| Error::Overflow("Ψ_k entry".into()))?;
                }
            }
        }
        self.counts[a] = self.counts[a]
            .checked_add(1)
            .ok_or_else(|| Error::Overflow("Ψ_k entry".into()))?;
        Ok(())
    }

    /// `a·u -> u`: `binom(u, a·t) = binom(a·u, a·t) - binom(u, t)`.
    pub(crate) fn pop_front(&mut self, a: u8) {
        let a = a as usize;
        self.counts[a] -= 1;
        for l in 2..=self.layout.k {
            let shorter = self.layout.offset(l - 1);
            let tail_len = self.layout.block_len(l - 1);
            let base = self.layout.offset(l) + a * tail_len;
            for r in 0..tail_len {
                let sub = self.counts[shorter + r];
                self.counts[base + r] -= sub;
            }
        }
    }

    pub(crate) fn counts(&self) -> &[u128] {
        &self.counts
    }

    pub(crate) fn snapshot(&self) -> ExtendedParikhVector {
        ExtendedParikhVector {
            layout: self.layout,
            counts: self.counts.iter().map(|&c| BinomialValue(c)).collect(),
        }
    }
}

/// Computes `Ψ_k(u)` in one left-to-right pass.
pub fn extended_parikh(u: &Word, k: usize, m: usize) -> Result<ExtendedParikhVector> {
    let layout = PsiLayout::new(m, k)?;
    u.check(m)?;
    check_bound(u.len(), k)?;
    let mut state = PsiState::new(layout);
    for &a in u.letters() {
        state.push_back(a)?;
    }
    Ok(state.snapshot())
}

/// `u ~_k v`.
pub fn equivalent_k(u: &Word, v: &Word, k: usize, m: usize) -> Result<bool> {
    if u.len() != v.len() {
        // Lengths differ, so the length-1 blocks cannot sum to the same total.
        PsiLayout::new(m, k)?;
        u.check(m)?;
        v.check(m)?;
        return Ok(false);
    }
    Ok(extended_parikh(u, k, m)? == extended_parikh(v, k, m)?)
}

/// Number of distinct `Ψ_k` vectors over a set of equal-length words.
pub fn count_classes<'a, I>(words: I, k: usize, m: usize) -> Result<usize>
where
    I: IntoIterator<Item = &'a Word>,
{
    let words: Vec<&Word> = words.into_iter().collect();
    if let Some(first) = words.first() {
        if let Some(bad) = words.iter().find(|w| w.len() != first.len()) {
            return Err(Error::Precondition(format!(
                "words of different lengths ({} and {})",
                first.len(),
                bad.len()
            )));
        }
    }
    let vectors = words
        .par_iter()
        .map(|w| extended_parikh(w, k, m).map(|psi| psi.to_bytes()))
        .collect::<Result<Vec<_>>>()?;
    Ok(vectors.into_iter().collect::<HashSet<_>>().len())
}

/// `b_{w,k}(n)` of a finite word: distinct `Ψ_k` over all length-`n` windows.
pub fn window_classes(w: &Word, n: usize, k: usize, m: usize) -> Result<usize> {
    window_classes_in(std::slice::from_ref(w), n, k, m)
}

/// Distinct `Ψ_k` over the length-`n` windows of several host words.
///
/// The window is slid one letter at a time: drop the first letter, then
/// append the next one, at `O(m + … + m^k)` per step.
pub fn window_classes_in(hosts: &[Word], n: usize, k: usize, m: usize) -> Result<usize> {
    let layout = PsiLayout::new(m, k)?;
    for w in hosts {
        w.check(m)?;
    }
    if n == 0 {
        return Ok(1);
    }
    check_bound(n, k)?;
    let mut seen: HashSet<Box<[u128]>> = HashSet::new();
    for w in hosts.iter().filter(|w| w.len() >= n) {
        let letters = w.letters();
        let mut state = PsiState::new(layout);
        for &a in &letters[..n] {
            state.push_back(a)?;
        }
        if !seen.contains(state.counts()) {
            seen.insert(state.counts().into());
        }
        for i in n..letters.len() {
            state.pop_front(letters[i - n]);
            state.push_back(letters[i])?;
            if !seen.contains(state.counts()) {
                seen.insert(state.counts().into());
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn b(u: &str, v: &str) -> u128 {
        binom_words(&w(u), &w(v)).unwrap().get()
    }

    #[test]
    fn binom_examples() {
        assert_eq!(b("101000", "110"), 3);
        assert_eq!(b("101000", ""), 1);
        assert_eq!(b("", ""), 1);
        assert_eq!(b("012120", "20"), 2);
        assert_eq!(b("01", "012"), 0);
    }

    #[test]
    fn psi_examples() {
        let expected: Vec<BinomialValue> =
            [4u64, 2, 6, 5, 3, 1].into_iter().map(Into::into).collect();
        assert_eq!(extended_parikh(&w("010001"), 2, 2).unwrap().counts(), &expected[..]);
        assert_eq!(extended_parikh(&w("001010"), 2, 2).unwrap().counts(), &expected[..]);
        let empty = extended_parikh(&Word::empty(), 3, 3).unwrap();
        assert_eq!(empty.counts().len(), 3 + 9 + 27);
        assert!(empty.counts().iter().all(|c| c.get() == 0));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent_k(&w("010001"), &w("001010"), 2, 2).unwrap());
        assert!(!equivalent_k(&w("01"), &w("10"), 2, 2).unwrap());
        assert!(equivalent_k(&w("01"), &w("10"), 1, 2).unwrap());
        assert!(!equivalent_k(&w("0"), &w("00"), 1, 2).unwrap());
        assert!(equivalent_k(&w("0120"), &w("0120"), 4, 3).unwrap());
    }

    #[test]
    fn count_class_examples() {
        let single = [w("0120")];
        assert_eq!(count_classes(&single, 2, 3).unwrap(), 1);
        let mixed = [w("01"), w("0")];
        assert!(count_classes(&mixed, 1, 2).is_err());
        let none: [Word; 0] = [];
        assert_eq!(count_classes(&none, 1, 2).unwrap(), 0);
    }

    #[test]
    fn layout_round_trip() {
        let layout = PsiLayout::new(3, 3).unwrap();
        assert_eq!(layout.len(), 39);
        for i in 0..layout.len() {
            assert_eq!(layout.index(layout.word_at(i).letters()), Some(i));
        }
        assert_eq!(layout.index(&[]), None);
        assert_eq!(layout.index(&[0, 0, 0, 0]), None);
    }

    #[test]
    fn choose_is_exact_near_the_limit() {
        assert_eq!(choose(10, 3).unwrap(), 120);
        assert_eq!(choose(3, 5).unwrap(), 0);
        // C(130, 65) is about 9.5e37 < 2^127 ~ 1.7e38.
        assert_eq!(choose(130, 65).unwrap(), 95067625827960698145584333020095113100);
        assert!(choose(300, 150).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let u = Word::from_letters(vec![0u8; 300]);
        let v = Word::from_letters(vec![0u8; 150]);
        assert!(matches!(binom_words(&u, &v), Err(Error::Overflow(_))));
        assert!(check_bound(100_000, 4).is_ok());
        assert!(check_bound(200, 100).is_err());
    }

    #[test]
    fn pop_front_inverts_push() {
        let layout = PsiLayout::new(3, 3).unwrap();
        let mut state = PsiState::new(layout);
        for &a in w("2101221").letters() {
            state.push_back(a).unwrap();
        }
        state.pop_front(2);
        state.pop_front(1);
        assert_eq!(state.snapshot(), extended_parikh(&w("01221"), 3, 3).unwrap());
    }

    #[test]
    fn window_classes_match_factor_sets() {
        let word = w("0121202011202010122010121202011201");
        for k in 1..=3 {
            for n in 0..=word.len() + 1 {
                let facs = crate::word::factors(&word, n);
                let expected = count_classes(&facs, k, 3).unwrap();
                assert_eq!(window_classes(&word, n, k, 3).unwrap(), expected, "n={n} k={k}");
            }
        }
    }
}
