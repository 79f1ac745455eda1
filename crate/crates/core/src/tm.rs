//! The generalized Thue–Morse word `t_m = σ_m^∞(0)` with
//! `σ_m(a) = a (a+1) … (a+m-1) mod m`.
//!
//! Besides generation this module holds the closed forms for the abelian
//! and 2-binomial complexities, the coefficient formulas for
//! `binom(α σ_m(u) β, cd)` that avoid expanding `σ_m(u)`, and the
//! enumeration oracles for counts of Parikh vectors with prescribed
//! boundary letters.

use std::collections::{BTreeSet, HashSet};

use crate::binomial::{choose, equivalent_k, BinomialValue};
use crate::error::{Error, Result};
use crate::host::{HostStrategy, WordSource};
use crate::word::{check_alphabet, parikh, CircularInterval, Letter, Morphism, Word};

/// `σ_m`.
pub fn sigma(m: usize) -> Result<Morphism> {
    check_alphabet(m)?;
    let images = (0..m)
        .map(|a| Word::from_letters((0..m).map(|i| ((a + i) % m) as u8).collect::<Vec<_>>()))
        .collect();
    Morphism::new(images)
}

pub fn tm_source(m: usize) -> Result<WordSource> {
    WordSource::fixed_point(sigma(m)?, Letter::new(0, m)?)
}

/// First `len` letters of `t_m`.
pub fn tm_prefix(m: usize, len: usize) -> Result<Word> {
    if len == 0 {
        check_alphabet(m)?;
        return Ok(Word::empty());
    }
    sigma(m)?.fixed_point_prefix(Letter::new(0, m)?, len)
}

/// `t_m(i)` as the base-`m` digit sum of `i`, reduced mod `m`.
///
/// Independent of the morphism path; used to cross-check it.
pub fn digit_sum_letter(m: usize, mut i: u64) -> u8 {
    let m64 = m as u64;
    let mut sum = 0u64;
    while i > 0 {
        sum += i % m64;
        i /= m64;
    }
    (sum % m64) as u8
}

fn out_of_range(what: &'static str, bound: String, value: usize) -> Error {
    Error::OutOfRange { what, bound, value }
}

/// Abelian complexity `b_{t_m,1}(n)` for `n >= m`, five cases on the
/// parity of `m` and `r = n mod m`.
pub fn abelian_closed(m: usize, n: usize) -> Result<u64> {
    check_alphabet(m)?;
    if n < m {
        return Err(out_of_range("abelian complexity closed form", format!("n >= m = {m}"), n));
    }
    let (m, r) = (m as u64, (n % m) as u64);
    let quarter = |x: u64| {
        debug_assert_eq!(x % 4, 0);
        x / 4
    };
    Ok(match (m % 2 == 1, r) {
        (true, 0) => quarter(m * (m * m - 1)) + 1,
        (true, _) => quarter(m * (m - 1) * (m - 1)) + m,
        (false, 0) => quarter(m * m * m) + 1,
        (false, r) if r % 2 == 0 => quarter(m * (m - 1) * (m - 1) + 5 * m),
        (false, _) => quarter(m * m * (m - 2)) + m,
    })
}

/// 2-binomial complexity `b_{t_m,2}(n)` for `m >= 3`, `n >= m^2`.
pub fn binomial2_closed(m: usize, n: usize) -> Result<u64> {
    if m < 3 {
        return Err(out_of_range("2-binomial closed form", "m >= 3".into(), m));
    }
    check_alphabet(m)?;
    if n < m * m {
        return Err(out_of_range("2-binomial closed form", format!("n >= m^2 = {}", m * m), n));
    }
    let mu = m as u64;
    if n.is_multiple_of(m) {
        Ok(abelian_closed(m, n / m)? + mu * (mu - 1) * (mu * (mu - 1) + 1))
    } else {
        Ok(mu.pow(4) - 2 * mu.pow(3) + 2 * mu.pow(2))
    }
}

/// k-binomial complexity of the classic Thue–Morse word for `n >= 2^k`.
pub fn tm2_binomial_closed(k: usize, n: usize) -> Result<u64> {
    if k == 0 || k >= 63 {
        return Err(out_of_range("Thue-Morse k-binomial closed form", "1 <= k < 63".into(), k));
    }
    let period = 1usize << k;
    if n < period {
        return Err(out_of_range(
            "Thue-Morse k-binomial closed form",
            format!("n >= 2^k = {period}"),
            n,
        ));
    }
    let base = 3 * (1u64 << k);
    Ok(if n.is_multiple_of(period) { base - 3 } else { base - 4 })
}

fn check_parikh(u_parikh: &[u64], m: usize) -> Result<u64> {
    check_alphabet(m)?;
    if u_parikh.len() != m {
        return Err(Error::Precondition(format!(
            "Parikh vector has {} entries, expected {m}",
            u_parikh.len()
        )));
    }
    u_parikh
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or_else(|| Error::Overflow("Parikh vector length".into()))
}

fn interval_sum(u_parikh: &[u64], c: u8, d: u8, m: usize) -> Result<u128> {
    // (d, c]: letters x whose image σ_m(x) contains c before d.
    let iv = CircularInterval::half_open_left(d, c)?;
    Ok(iv.members(m)?.into_iter().map(|x| u_parikh[x as usize] as u128).sum())
}

/// `binom(σ_m(u), cd)` from the Parikh vector of `u`.
///
/// For `c != d` this is `C(|u|, 2) + Σ_{x ∈ (d,c]} |u|_x`; for `c = d`
/// every image holds exactly one `c`, so the value is `C(|u|, 2)`.
pub fn binom_sigma_cd(u_parikh: &[u64], c: u8, d: u8, m: usize) -> Result<BinomialValue> {
    let len = check_parikh(u_parikh, m)?;
    for x in [c, d] {
        if x as usize >= m {
            return Err(Error::AlphabetMismatch { letter: x, m });
        }
    }
    let pairs = choose(len as u128, 2)?;
    if c == d {
        return Ok(BinomialValue(pairs));
    }
    BinomialValue(pairs).checked_add(BinomialValue(interval_sum(u_parikh, c, d, m)?))
}

/// `w` is a proper (`|w| < m`) suffix of some `σ_m(a)`.
pub fn is_sigma_suffix(w: &Word, m: usize) -> bool {
    w.check(m).is_ok()
        && w.len() < m
        && (0..m as u8).any(|a| {
            let image = sigma_image(a, m);
            image.ends_with(w.letters())
        })
}

/// `w` is a proper (`|w| < m`) prefix of some `σ_m(a)`.
pub fn is_sigma_prefix(w: &Word, m: usize) -> bool {
    w.check(m).is_ok()
        && w.len() < m
        && (0..m as u8).any(|a| sigma_image(a, m).starts_with(w.letters()))
}

fn sigma_image(a: u8, m: usize) -> Vec<u8> {
    (0..m).map(|i| ((a as usize + i) % m) as u8).collect()
}

/// `binom(α σ_m(u) β, cd)` for `c != d` without expanding `σ_m(u)`:
/// `binom(αβ, cd) + |u|(|α|_c + |β|_d) + Σ_{x ∈ (d,c]} |u|_x + C(|u|, 2)`.
pub fn binom_decorated(
    alpha: &Word,
    u_parikh: &[u64],
    u_len: u64,
    beta: &Word,
    c: u8,
    d: u8,
    m: usize,
) -> Result<BinomialValue> {
    let len = check_parikh(u_parikh, m)?;
    if len != u_len {
        return Err(Error::Precondition(format!(
            "Parikh vector sums to {len}, but |u| = {u_len}"
        )));
    }
    if !is_sigma_suffix(alpha, m) {
        return Err(Error::Precondition(format!("{alpha} is not a proper suffix of a σ_{m} image")));
    }
    if !is_sigma_prefix(beta, m) {
        return Err(Error::Precondition(format!("{beta} is not a proper prefix of a σ_{m} image")));
    }
    if c == d {
        return Err(Error::Precondition("binom_decorated needs c != d".into()));
    }
    let count = |w: &Word, x: u8| w.letters().iter().filter(|&&y| y == x).count() as u128;
    // binom(αβ, cd) = binom(α, cd) + binom(β, cd) + |α|_c |β|_d, each small.
    let outer = small_binom_cd(alpha, c, d) + small_binom_cd(beta, c, d) + count(alpha, c) * count(beta, d);
    let u = u_len as u128;
    let cross = u
        .checked_mul(count(alpha, c) + count(beta, d))
        .ok_or_else(|| Error::Overflow("decorated cross term".into()))?;
    [cross, interval_sum(u_parikh, c, d, m)?, choose(u, 2)?]
        .into_iter()
        .try_fold(BinomialValue(outer), |acc, x| acc.checked_add(BinomialValue(x)))
}

fn small_binom_cd(w: &Word, c: u8, d: u8) -> u128 {
    let mut seen_c = 0u128;
    let mut total = 0u128;
    for &x in w.letters() {
        if x == d {
            total += seen_c;
        }
        if x == c {
            seen_c += 1;
        }
    }
    total
}

/// The Parikh-constant morphism `0 ↦ 012, 1 ↦ 210, 2 ↦ 120`.
pub fn counterexample_morphism() -> Morphism {
    let images = ["012", "210", "120"]
        .iter()
        .map(|s| Word::parse(s).expect("literal"))
        .collect();
    Morphism::new(images).expect("valid morphism")
}

/// A candidate pair `u = φ(u')·β`, `v = φ(v')·β'` for the
/// counterexample morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleCase {
    pub u_core: Word,
    pub u_beta: Word,
    pub v_core: Word,
    pub v_beta: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleOutcome {
    pub u: Word,
    pub v: Word,
    pub u_is_factor: bool,
    pub v_is_factor: bool,
    pub equivalent2: bool,
    pub betas_differ: bool,
}

impl CounterexampleOutcome {
    /// `u ~_2 v` while the trailing decorations differ.
    pub fn holds(&self) -> bool {
        self.equivalent2 && self.betas_differ && self.u != self.v
    }
}

impl CounterexampleCase {
    fn parse(u_core: &str, u_beta: &str, v_core: &str, v_beta: &str) -> Self {
        let p = |s: &str| Word::parse(s).expect("literal");
        CounterexampleCase {
            u_core: p(u_core),
            u_beta: p(u_beta),
            v_core: p(v_core),
            v_beta: p(v_beta),
        }
    }

    /// `u = φ(10122)21`, `v = φ(22101)12`, as quoted.
    pub fn as_stated() -> Self {
        Self::parse("10122", "21", "22101", "12")
    }

    /// `u = φ(20122)21`, `v = φ(22101)12`: both are factors of the
    /// fixed point and are 2-binomially equivalent.
    pub fn corrected() -> Self {
        Self::parse("20122", "21", "22101", "12")
    }

    pub fn evaluate(&self) -> Result<CounterexampleOutcome> {
        let phi = counterexample_morphism();
        let u = phi.apply(&self.u_core)?.concat(&self.u_beta);
        let v = phi.apply(&self.v_core)?.concat(&self.v_beta);
        let host = phi.fixed_point_prefix(Letter::new(0, 3)?, 3usize.pow(9))?;
        let occurs = |w: &Word| {
            host.letters()
                .windows(w.len())
                .any(|win| win == w.letters())
        };
        Ok(CounterexampleOutcome {
            u_is_factor: occurs(&u),
            v_is_factor: occurs(&v),
            equivalent2: equivalent_k(&u, &v, 2, 3)?,
            betas_differ: self.u_beta != self.v_beta,
            u,
            v,
        })
    }
}

/// True iff the stated pair is 2-binomially equivalent with different
/// trailing decorations.
pub fn counterexample_check() -> Result<bool> {
    Ok(CounterexampleCase::as_stated().evaluate()?.holds())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Factors `a·u`.
    PrefixLetter,
    /// Factors `u·a`.
    SuffixLetter,
    /// Factors `a·u·b`.
    BothLetters,
}

/// Number of distinct Parikh vectors among length-`n` factors of `t_m`
/// with the prescribed boundary letters, by enumeration.
pub fn boundary_parikh_counts(
    m: usize,
    n: usize,
    mode: BoundaryMode,
    a: u8,
    b: Option<u8>,
    strategy: &HostStrategy,
) -> Result<usize> {
    check_alphabet(m)?;
    for x in std::iter::once(a).chain(b) {
        if x as usize >= m {
            return Err(Error::AlphabetMismatch { letter: x, m });
        }
    }
    match mode {
        BoundaryMode::PrefixLetter | BoundaryMode::SuffixLetter if n < m => {
            return Err(out_of_range("prescribed-letter count", format!("n >= m = {m}"), n));
        }
        BoundaryMode::BothLetters if n < m + 1 => {
            return Err(out_of_range("boundary-pair count", format!("n >= m + 1 = {}", m + 1), n));
        }
        _ => {}
    }
    let b = match (mode, b) {
        (BoundaryMode::BothLetters, None) => {
            return Err(Error::Precondition("both_letters mode needs a last letter".into()))
        }
        (_, b) => b,
    };
    let source = tm_source(m)?;
    source.evaluate(n, strategy, |hosts| {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for host in hosts {
            for win in host.letters().windows(n) {
                let keep = match mode {
                    BoundaryMode::PrefixLetter => win[0] == a,
                    BoundaryMode::SuffixLetter => win[n - 1] == a,
                    BoundaryMode::BothLetters => win[0] == a && Some(win[n - 1]) == b,
                };
                if keep {
                    seen.insert(parikh(&Word::from(win), m)?);
                }
            }
        }
        Ok(seen.len())
    })
}

/// `1 + m(m-1)/2`, the count for one prescribed first (or last) letter.
pub fn prescribed_letter_closed(m: usize) -> u64 {
    let m = m as u64;
    1 + m * (m - 1) / 2
}

/// `1` if `n ≡ b - a + 1 (mod m)`, else `m`.
pub fn boundary_pair_closed(m: usize, n: usize, a: u8, b: u8) -> u64 {
    let target = (b as usize + m + 1 - a as usize) % m;
    if n % m == target {
        1
    } else {
        m as u64
    }
}

/// `∂F_{t_m}(n)` by enumeration.
pub fn boundary_pair_set(m: usize, n: usize, strategy: &HostStrategy) -> Result<BTreeSet<Word>> {
    let source = tm_source(m)?;
    source.evaluate(n, strategy, |hosts| {
        let mut out = BTreeSet::new();
        for host in hosts {
            out.extend(crate::word::boundary_pairs(host, n)?);
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::binom_words;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let s3 = sigma(3).unwrap();
        assert_eq!(s3.images(), &[w("012"), w("120"), w("201")]);
        let s2 = sigma(2).unwrap();
        assert_eq!(s2.images(), &[w("01"), w("10")]);
        assert!(s3.is_parikh_constant());
        assert_eq!(s3.prolongable_on(), Some(Letter::new(0, 3).unwrap()));
        assert!(sigma(1).is_err());
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(tm_prefix(3, 9).unwrap(), w("012120201"));
        assert_eq!(tm_prefix(2, 8).unwrap(), w("01101001"));
        assert_eq!(tm_prefix(5, 1).unwrap(), w("0"));
        assert!(tm_prefix(4, 0).unwrap().is_empty());
    }

    #[test]
    fn digit_sum_agrees_on_a_short_prefix() {
        for m in 2..=6 {
            let p = tm_prefix(m, 500).unwrap();
            for (i, &x) in p.letters().iter().enumerate() {
                assert_eq!(x, digit_sum_letter(m, i as u64));
            }
        }
    }

    #[test]
    fn abelian_closed_examples() {
        assert_eq!(abelian_closed(3, 9).unwrap(), 7);
        assert_eq!(abelian_closed(4, 8).unwrap(), 17);
        assert_eq!(abelian_closed(4, 9).unwrap(), 12);
        assert_eq!(abelian_closed(3, 4).unwrap(), 6);
        assert_eq!(abelian_closed(4, 10).unwrap(), 14);
        assert!(abelian_closed(3, 2).is_err());
    }

    #[test]
    fn binomial2_closed_examples() {
        assert_eq!(binomial2_closed(3, 10).unwrap(), 45);
        assert_eq!(binomial2_closed(3, 9).unwrap(), 49);
        assert_eq!(binomial2_closed(3, 12).unwrap(), 48);
        assert_eq!(binomial2_closed(4, 16).unwrap(), 173);
        assert!(binomial2_closed(2, 16).is_err());
        assert!(binomial2_closed(3, 8).is_err());
    }

    #[test]
    fn thue_morse_closed_examples() {
        assert_eq!(tm2_binomial_closed(2, 8).unwrap(), 9);
        assert_eq!(tm2_binomial_closed(2, 5).unwrap(), 8);
        assert_eq!(tm2_binomial_closed(3, 16).unwrap(), 21);
        assert!(tm2_binomial_closed(3, 7).is_err());
    }

    #[test]
    fn sigma_cd_examples() {
        // u = 01 over Σ_3
        assert_eq!(binom_sigma_cd(&[1, 1, 0], 2, 0, 3).unwrap().get(), 2);
        assert_eq!(binom_words(&w("012120"), &w("20")).unwrap().get(), 2);
        assert_eq!(binom_sigma_cd(&[0, 0, 0], 1, 2, 3).unwrap().get(), 0);
        assert_eq!(binom_sigma_cd(&[1, 0, 0], 1, 0, 3).unwrap().get(), 0);
        assert_eq!(binom_words(&w("012"), &w("10")).unwrap().get(), 0);
        // diagonal path: binom(σ_3(01), 22) = C(2, 2)
        assert_eq!(binom_sigma_cd(&[1, 1, 0], 2, 2, 3).unwrap().get(), 1);
    }

    #[test]
    fn decorated_examples() {
        let v = binom_decorated(&w("2"), &[0, 1, 0], 1, &w("0"), 2, 0, 3).unwrap();
        assert_eq!(v.get(), 4);
        assert_eq!(binom_words(&w("21200"), &w("20")).unwrap().get(), 4);
        let plain = binom_decorated(&Word::empty(), &[1, 1, 0], 2, &Word::empty(), 2, 0, 3).unwrap();
        assert_eq!(plain, binom_sigma_cd(&[1, 1, 0], 2, 0, 3).unwrap());
        assert!(binom_decorated(&w("02"), &[0, 1, 0], 1, &w("0"), 2, 0, 3).is_err());
        assert!(binom_decorated(&w("012"), &[0, 1, 0], 1, &w("0"), 2, 0, 3).is_err());
        assert!(binom_decorated(&w("2"), &[0, 1, 0], 2, &w("0"), 2, 0, 3).is_err());
    }

    #[test]
    fn suffix_prefix_membership() {
        assert!(is_sigma_suffix(&Word::empty(), 3));
        assert!(is_sigma_suffix(&w("12"), 3));
        assert!(is_sigma_suffix(&w("20"), 3));
        assert!(!is_sigma_suffix(&w("21"), 3));
        assert!(is_sigma_prefix(&w("01"), 3));
        assert!(!is_sigma_prefix(&w("012"), 3));
    }

    #[test]
    fn boundary_count_examples() {
        let s = HostStrategy::Cover;
        assert_eq!(boundary_parikh_counts(3, 9, BoundaryMode::PrefixLetter, 0, None, &s).unwrap(), 4);
        assert_eq!(boundary_parikh_counts(3, 10, BoundaryMode::PrefixLetter, 1, None, &s).unwrap(), 4);
        assert_eq!(boundary_parikh_counts(3, 10, BoundaryMode::BothLetters, 0, Some(0), &s).unwrap(), 1);
        assert_eq!(boundary_pair_closed(3, 10, 0, 0), 1);
        assert_eq!(prescribed_letter_closed(3), 4);
        assert!(boundary_parikh_counts(3, 3, BoundaryMode::BothLetters, 0, Some(0), &s).is_err());
        assert!(boundary_parikh_counts(3, 5, BoundaryMode::BothLetters, 0, None, &s).is_err());
    }

    #[test]
    fn boundary_pairs_saturate() {
        assert_eq!(boundary_pair_set(3, 5, &HostStrategy::Cover).unwrap().len(), 9);
        assert_eq!(boundary_pair_set(2, 3, &HostStrategy::Cover).unwrap().len(), 4);
    }

    #[test]
    fn counterexample_cases() {
        let stated = CounterexampleCase::as_stated().evaluate().unwrap();
        assert_eq!(stated.u.len(), 17);
        assert_ne!(stated.u, stated.v);
        let fixed = CounterexampleCase::corrected().evaluate().unwrap();
        assert!(fixed.u_is_factor && fixed.v_is_factor);
        assert!(fixed.holds());
    }
}
