//! Alphabets, finite words, morphisms and the small amount of
//! word combinatorics the rest of the crate is built on.
//!
//! Letters are stored as one byte each, so alphabets are limited to
//! `2 <= m <= 255`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 255;

pub(crate) fn check_alphabet(m: usize) -> Result<()> {
    if (2..=MAX_ALPHABET).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidAlphabet(m))
    }
}

/// A letter of `Σ_m = {0, …, m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(u8);

impl Letter {
    pub fn new(value: u8, m: usize) -> Result<Self> {
        check_alphabet(m)?;
        if (value as usize) < m {
            Ok(Letter(value))
        } else {
            Err(Error::AlphabetMismatch { letter: value, m })
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

/// A finite word. Ordering is lexicographic on letter values.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: impl Into<Vec<u8>>) -> Self {
        Word {
            letters: letters.into(),
        }
    }

    /// Builds a word and checks every letter against the alphabet size.
    pub fn over(letters: impl Into<Vec<u8>>, m: usize) -> Result<Self> {
        let w = Word::from_letters(letters);
        w.check(m)?;
        Ok(w)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn check(&self, m: usize) -> Result<()> {
        check_alphabet(m)?;
        match self.letters.iter().find(|&&a| a as usize >= m) {
            Some(&letter) => Err(Error::AlphabetMismatch { letter, m }),
            None => Ok(()),
        }
    }

    /// Smallest alphabet size (at least 2) that contains every letter.
    pub fn min_alphabet(&self) -> usize {
        self.letters
            .iter()
            .map(|&a| a as usize + 1)
            .max()
            .unwrap_or(0)
            .max(2)
    }

    /// Parses either a contiguous digit string (`"0121"`) or a
    /// comma-separated list of decimal letters (`"0,11,3"`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad letter {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word { letters })
    }

    /// Digits for `m <= 10`, comma-separated decimals otherwise.
    pub fn render(&self, m: usize) -> String {
        if m <= 10 {
            self.letters.iter().map(|&a| char::from(b'0' + a)).collect()
        } else {
            self.letters
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = if self.letters.iter().all(|&a| a < 10) { 10 } else { 11 };
        f.write_str(&self.render(m))
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Self {
        Word::from_letters(letters)
    }
}

/// A letter-to-word map over `Σ_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    m: usize,
    images: Vec<Word>,
    parikh_constant: bool,
    prolongable_on: Option<Letter>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let m = images.len();
        check_alphabet(m)?;
        for image in &images {
            image.check(m)?;
        }
        let first = parikh(&images[0], m)?;
        let mut parikh_constant = true;
        for image in &images[1..] {
            if parikh(image, m)? != first {
                parikh_constant = false;
                break;
            }
        }
        let prolongable_on = (0..m as u8)
            .find(|&a| is_prolongable(&images[a as usize], a))
            .map(Letter);
        Ok(Morphism {
            m,
            images,
            parikh_constant,
            prolongable_on,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    pub fn image(&self, a: u8) -> &Word {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_parikh_constant(&self) -> bool {
        self.parikh_constant
    }

    /// First letter the morphism is prolongable on, if any.
    pub fn prolongable_on(&self) -> Option<Letter> {
        self.prolongable_on
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.check(self.m)?;
        let len = w
            .letters
            .iter()
            .map(|&a| self.images[a as usize].len())
            .sum();
        let mut letters = Vec::with_capacity(len);
        for &a in &w.letters {
            letters.extend_from_slice(&self.images[a as usize].letters);
        }
        Ok(Word { letters })
    }

    /// Prefix of length exactly `min_len` of the fixed point starting with `seed`.
    pub fn fixed_point_prefix(&self, seed: Letter, min_len: usize) -> Result<Word> {
        let a = seed.value();
        if a as usize >= self.m {
            return Err(Error::AlphabetMismatch {
                letter: a,
                m: self.m,
            });
        }
        if !is_prolongable(&self.images[a as usize], a) {
            return Err(Error::NotProlongable(a));
        }
        if min_len == 0 {
            return Err(Error::Precondition("min_len must be at least 1".into()));
        }
        let mut current = Word::from_letters(vec![a]);
        while current.len() < min_len {
            current = self.apply(&current)?;
        }
        current.letters.truncate(min_len);
        Ok(current)
    }
}

fn is_prolongable(image: &Word, a: u8) -> bool {
    image.len() >= 2 && image.letters[0] == a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntervalKind {
    /// `[c, d]`
    Closed,
    /// `(c, d)`
    Open,
    /// `(c, d]`
    HalfOpenLeft,
    /// `[c, d)`
    HalfOpenRight,
}

/// An arc of `Σ_m` read clockwise from `c` to `d`, with wraparound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CircularInterval {
    c: u8,
    d: u8,
    kind: IntervalKind,
}

impl CircularInterval {
    pub fn new(c: u8, d: u8, kind: IntervalKind) -> Result<Self> {
        if c == d {
            return Err(Error::UndefinedInterval(c));
        }
        Ok(CircularInterval { c, d, kind })
    }

    pub fn closed(c: u8, d: u8) -> Result<Self> {
        Self::new(c, d, IntervalKind::Closed)
    }

    pub fn open(c: u8, d: u8) -> Result<Self> {
        Self::new(c, d, IntervalKind::Open)
    }

    pub fn half_open_left(c: u8, d: u8) -> Result<Self> {
        Self::new(c, d, IntervalKind::HalfOpenLeft)
    }

    pub fn half_open_right(c: u8, d: u8) -> Result<Self> {
        Self::new(c, d, IntervalKind::HalfOpenRight)
    }

    pub fn members(&self, m: usize) -> Result<BTreeSet<u8>> {
        check_alphabet(m)?;
        for x in [self.c, self.d] {
            if x as usize >= m {
                return Err(Error::AlphabetMismatch { letter: x, m });
            }
        }
        let mut out = BTreeSet::new();
        let mut x = self.c;
        loop {
            out.insert(x);
            if x == self.d {
                break;
            }
            x = ((x as usize + 1) % m) as u8;
        }
        if matches!(self.kind, IntervalKind::Open | IntervalKind::HalfOpenLeft) {
            out.remove(&self.c);
        }
        if matches!(self.kind, IntervalKind::Open | IntervalKind::HalfOpenRight) {
            out.remove(&self.d);
        }
        Ok(out)
    }

    /// Membership without materialising the set.
    pub fn contains(&self, x: u8, m: usize) -> bool {
        let offset = |y: u8| (y as usize + m - self.c as usize) % m;
        let (ox, od) = (offset(x), offset(self.d));
        let lo = if matches!(self.kind, IntervalKind::Open | IntervalKind::HalfOpenLeft) {
            1
        } else {
            0
        };
        let hi = if matches!(self.kind, IntervalKind::Open | IntervalKind::HalfOpenRight) {
            od.wrapping_sub(1)
        } else {
            od
        };
        (x as usize) < m && ox >= lo && ox <= hi && ox <= od
    }
}

/// Distinct length-`n` factors in lexicographic order. Empty when `n > |w|`.
pub fn factors(w: &Word, n: usize) -> BTreeSet<Word> {
    if n == 0 {
        return BTreeSet::from([Word::empty()]);
    }
    if n > w.len() {
        return BTreeSet::new();
    }
    w.letters.windows(n).map(Word::from).collect()
}

/// First/last letter pairs `∂u` of all length-`n` factors.
pub fn boundary_pairs(w: &Word, n: usize) -> Result<BTreeSet<Word>> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "boundary words need n >= 2, got {n}"
        )));
    }
    if n > w.len() {
        return Ok(BTreeSet::new());
    }
    Ok(w.letters
        .windows(n)
        .map(|win| Word::from_letters(vec![win[0], win[n - 1]]))
        .collect())
}

/// True iff `w` has no factor `xxx` with `x` nonempty.
pub fn is_cube_free(w: &Word) -> bool {
    let s = &w.letters;
    let n = s.len();
    // A cube of period p is a run of 2p consecutive positions with s[i] == s[i + p].
    for p in 1..=n / 3 {
        let mut run = 0;
        for i in 0..n - p {
            if s[i] == s[i + p] {
                run += 1;
                if run >= 2 * p {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

/// Parikh vector `(|w|_0, …, |w|_{m-1})`.
pub fn parikh(w: &Word, m: usize) -> Result<Vec<u64>> {
    w.check(m)?;
    let mut counts = vec![0u64; m];
    for &a in &w.letters {
        counts[a as usize] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn sigma3() -> Morphism {
        Morphism::new(vec![w("012"), w("120"), w("201")]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let s = sigma3();
        assert_eq!(s.apply(&w("0")).unwrap(), w("012"));
        assert_eq!(s.apply(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(s.apply(&w("01")).unwrap(), w("012120"));
        assert!(matches!(
            s.apply(&w("03")),
            Err(Error::AlphabetMismatch { letter: 3, m: 3 })
        ));
    }

    #[test]
    fn morphism_metadata() {
        let s = sigma3();
        assert!(s.is_parikh_constant());
        assert_eq!(s.prolongable_on(), Some(Letter(0)));
        let lopsided = Morphism::new(vec![w("01"), w("0")]).unwrap();
        assert!(!lopsided.is_parikh_constant());
        assert!(Morphism::new(vec![w("2"), w("0")]).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        let s = sigma3();
        let seed = Letter::new(0, 3).unwrap();
        assert_eq!(s.fixed_point_prefix(seed, 9).unwrap(), w("012120201"));
        assert_eq!(s.fixed_point_prefix(seed, 1).unwrap(), w("0"));
        let tm = Morphism::new(vec![w("01"), w("10")]).unwrap();
        assert_eq!(tm.fixed_point_prefix(Letter(0), 4).unwrap(), w("0110"));
        assert_eq!(s.fixed_point_prefix(Letter(1), 4).unwrap(), w("1202"));
        let other = Morphism::new(vec![w("012"), w("210"), w("120")]).unwrap();
        assert_eq!(
            other.fixed_point_prefix(Letter(1), 4),
            Err(Error::NotProlongable(1))
        );
    }

    #[test]
    fn factor_examples() {
        let f: Vec<_> = factors(&w("0110"), 2).into_iter().collect();
        assert_eq!(f, vec![w("01"), w("10"), w("11")]);
        let f0: Vec<_> = factors(&w("0110"), 0).into_iter().collect();
        assert_eq!(f0, vec![Word::empty()]);
        assert_eq!(factors(&w("012120201"), 1).len(), 3);
        assert!(factors(&w("01"), 3).is_empty());
    }

    #[test]
    fn boundary_examples() {
        let aaa = Word::from_letters(vec![1u8; 20]);
        let b: Vec<_> = boundary_pairs(&aaa, 5).unwrap().into_iter().collect();
        assert_eq!(b, vec![w("11")]);
        assert!(boundary_pairs(&aaa, 1).is_err());
    }

    #[test]
    fn interval_examples() {
        let set = |iv: CircularInterval, m| iv.members(m).unwrap().into_iter().collect::<Vec<_>>();
        assert_eq!(set(CircularInterval::closed(2, 5).unwrap(), 12), vec![2, 3, 4, 5]);
        assert_eq!(
            set(CircularInterval::open(6, 1).unwrap(), 12),
            vec![0, 7, 8, 9, 10, 11]
        );
        assert_eq!(set(CircularInterval::half_open_left(0, 2).unwrap(), 3), vec![1, 2]);
        assert_eq!(set(CircularInterval::half_open_right(2, 0).unwrap(), 3), vec![2]);
        assert_eq!(CircularInterval::closed(1, 1), Err(Error::UndefinedInterval(1)));
    }

    #[test]
    fn interval_contains_matches_members() {
        for m in 2..8usize {
            for c in 0..m as u8 {
                for d in 0..m as u8 {
                    if c == d {
                        continue;
                    }
                    for kind in [
                        IntervalKind::Closed,
                        IntervalKind::Open,
                        IntervalKind::HalfOpenLeft,
                        IntervalKind::HalfOpenRight,
                    ] {
                        let iv = CircularInterval::new(c, d, kind).unwrap();
                        let members = iv.members(m).unwrap();
                        for x in 0..m as u8 {
                            assert_eq!(iv.contains(x, m), members.contains(&x), "{iv:?} {x}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cube_free_examples() {
        assert!(is_cube_free(&w("010010")));
        assert!(!is_cube_free(&w("000")));
        assert!(!is_cube_free(&w("1010102")));
        assert!(is_cube_free(&Word::empty()));
    }

    #[test]
    fn parikh_examples() {
        assert_eq!(parikh(&w("012120201"), 3).unwrap(), vec![3, 3, 3]);
        assert_eq!(parikh(&Word::empty(), 4).unwrap(), vec![0; 4]);
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(Word::parse("0,11,3").unwrap().letters(), &[0, 11, 3]);
        assert_eq!(Word::parse("0,11,3").unwrap().render(12), "0,11,3");
        assert_eq!(w("0121").render(3), "0121");
        assert!(Word::parse("01x").is_err());
    }
}
