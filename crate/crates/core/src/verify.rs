//! Verification suites: each one recomputes a family of claims with the
//! oracles in this crate and records expected against observed values.
//!
//! Windows are pinned here. [`SuiteConfig`] can restrict a suite to one
//! alphabet size or add extra `n`, but cannot shrink a pinned window.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::binomial::{binom_words, equivalent_k, extended_parikh};
use crate::decompose::structural_sweep;
use crate::error::{Error, Result};
use crate::host::HostStrategy;
use crate::periodicity::periodicity_check;
use crate::table::{complexity_profile, ComplexityTable};
use crate::tm::{
    abelian_closed, binom_decorated, binom_sigma_cd, binomial2_closed, boundary_pair_closed, boundary_pair_set,
    boundary_parikh_counts, digit_sum_letter, prescribed_letter_closed, sigma, tm2_binomial_closed,
    tm_prefix, tm_source, BoundaryMode, CounterexampleCase,
};
use crate::word::{parikh, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lemma24,
    Eq31,
    Eq32,
    Thm11,
    Thm12,
    Thm13,
    Lemmas4x,
    Corollary,
    Counterexample,
    M2Llr20,
    Generator,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Lemma24,
        Suite::Eq31,
        Suite::Eq32,
        Suite::Thm11,
        Suite::Thm12,
        Suite::Thm13,
        Suite::Lemmas4x,
        Suite::Corollary,
        Suite::Counterexample,
        Suite::M2Llr20,
        Suite::Generator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma24 => "lemma24",
            Suite::Eq31 => "eq31",
            Suite::Eq32 => "eq32",
            Suite::Thm11 => "thm11",
            Suite::Thm12 => "thm12",
            Suite::Thm13 => "thm13",
            Suite::Lemmas4x => "lemmas4x",
            Suite::Corollary => "corollary",
            Suite::Counterexample => "counterexample",
            Suite::M2Llr20 => "m2-llr20",
            Suite::Generator => "generator",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimVerdict {
    Pass,
    Fail,
}

impl ClaimVerdict {
    fn of(ok: bool) -> Self {
        if ok {
            ClaimVerdict::Pass
        } else {
            ClaimVerdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub anchor: String,
    pub expected: String,
    pub observed: String,
    pub verdict: ClaimVerdict,
}

impl ClaimRecord {
    pub fn passed(&self) -> bool {
        self.verdict == ClaimVerdict::Pass
    }
}

impl fmt::Display for ClaimRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.verdict {
            ClaimVerdict::Pass => "PASS",
            ClaimVerdict::Fail => "FAIL",
        };
        write!(
            f,
            "{tag} {} [{}] expected: {}; observed: {}",
            self.claim_id, self.anchor, self.expected, self.observed
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<ClaimRecord>,
    pub passed: bool,
}

impl VerificationReport {
    fn new(suite: Suite, records: Vec<ClaimRecord>) -> Self {
        let passed = records.iter().all(ClaimRecord::passed);
        VerificationReport {
            suite: suite.name().to_string(),
            records,
            passed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Restrict alphabet-indexed suites to this `m`.
    pub m: Option<usize>,
    /// Extra window lengths added to the pinned windows.
    pub extra_n: Vec<usize>,
    /// Randomized instances per property; values below the pinned
    /// minimum are raised to it.
    pub instances: usize,
    pub seed: u64,
    pub strategy: HostStrategy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            m: None,
            extra_n: Vec::new(),
            instances: 0,
            seed: 0x5EED_2B1A,
            strategy: HostStrategy::Cover,
        }
    }
}

impl SuiteConfig {
    fn alphabets(&self, pinned: &[usize]) -> Vec<usize> {
        match self.m {
            Some(m) => vec![m],
            None => pinned.to_vec(),
        }
    }

    /// `window ∪ {n ∈ extra_n : n >= floor}`.
    fn widen(&self, window: std::ops::RangeInclusive<usize>, floor: usize) -> BTreeSet<usize> {
        let mut out: BTreeSet<usize> = window.collect();
        out.extend(self.extra_n.iter().copied().filter(|&n| n >= floor));
        out
    }

    fn instances(&self, pinned: usize) -> usize {
        self.instances.max(pinned)
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    let records = match suite {
        Suite::Lemma24 => lemma24(config)?,
        Suite::Eq31 => eq31(config)?,
        Suite::Eq32 => eq32(config)?,
        Suite::Thm11 => thm11(config)?,
        Suite::Thm12 => thm12(config)?,
        Suite::Thm13 => thm13(config)?,
        Suite::Lemmas4x => lemmas4x(config)?,
        Suite::Corollary => corollary(config)?,
        Suite::Counterexample => counterexample()?,
        Suite::M2Llr20 => m2_llr20(config)?,
        Suite::Generator => generator(config)?,
    };
    Ok(VerificationReport::new(suite, records))
}

fn record(
    claim_id: impl Into<String>,
    anchor: &str,
    expected: impl Into<String>,
    observed: impl Into<String>,
    ok: bool,
) -> ClaimRecord {
    ClaimRecord {
        claim_id: claim_id.into(),
        anchor: anchor.to_string(),
        expected: expected.into(),
        observed: observed.into(),
        verdict: ClaimVerdict::of(ok),
    }
}

/// Record for "property holds on all `total` instances", noting the first
/// counterexample if any.
fn property_record(claim_id: &str, anchor: &str, total: usize, first_bad: Option<String>) -> ClaimRecord {
    match first_bad {
        None => record(
            claim_id,
            anchor,
            format!("holds on {total} instances"),
            format!("{total}/{total}"),
            true,
        ),
        Some(bad) => record(
            claim_id,
            anchor,
            format!("holds on {total} instances"),
            format!("fails on {bad}"),
            false,
        ),
    }
}

fn random_word(rng: &mut StdRng, m: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| rng.gen_range(0..m) as u8).collect::<Vec<_>>())
}

fn all_words(m: usize, len: usize) -> Vec<Word> {
    let total = m.pow(len as u32);
    (0..total)
        .map(|mut i| {
            let mut letters = vec![0u8; len];
            for slot in letters.iter_mut().rev() {
                *slot = (i % m) as u8;
                i /= m;
            }
            Word::from_letters(letters)
        })
        .collect()
}

/// Words of one length grouped by their `Ψ_k`.
fn classes(words: &[Word], k: usize, m: usize) -> Result<Vec<Vec<Word>>> {
    let mut by_psi: BTreeMap<Vec<u8>, Vec<Word>> = BTreeMap::new();
    for w in words {
        by_psi.entry(extended_parikh(w, k, m)?.to_bytes()).or_default().push(w.clone());
    }
    Ok(by_psi.into_values().collect())
}

fn lemma24(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    const ANCHOR: &str = "binomial coefficient identities";
    let total = config.instances(1000);
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut out = Vec::new();

    // binom(au, a'v) = binom(u, a'v) + [a = a'] binom(u, v), and the mirror form.
    let mut bad_left = None;
    let mut bad_right = None;
    for _ in 0..total {
        let m = rng.gen_range(2..=4);
        let u = random_word(&mut rng, m, 29);
        let v = random_word(&mut rng, m, 3);
        let a = rng.gen_range(0..m) as u8;
        let b = rng.gen_range(0..m) as u8;
        let single = |x: u8| Word::from_letters(vec![x]);
        let delta = u128::from(a == b);
        let lhs = binom_words(&single(a).concat(&u), &single(b).concat(&v))?.get();
        let rhs = binom_words(&u, &single(b).concat(&v))?.get() + delta * binom_words(&u, &v)?.get();
        if lhs != rhs && bad_left.is_none() {
            bad_left = Some(format!("u={u}, v={v}, a={a}, a'={b}"));
        }
        let lhs = binom_words(&u.concat(&single(a)), &v.concat(&single(b)))?.get();
        let rhs = binom_words(&u, &v.concat(&single(b)))?.get() + delta * binom_words(&u, &v)?.get();
        if lhs != rhs && bad_right.is_none() {
            bad_right = Some(format!("u={u}, v={v}, a={a}, a'={b}"));
        }
    }
    out.push(property_record("recurrence-left", ANCHOR, total, bad_left));
    out.push(property_record("recurrence-right", ANCHOR, total, bad_right));

    // binom(sw, t) = Σ_{xy = t} binom(s, x) binom(w, y).
    let mut bad = None;
    for _ in 0..total {
        let m = rng.gen_range(2..=4);
        let s = random_word(&mut rng, m, 15);
        let w = random_word(&mut rng, m, 15);
        let t = random_word(&mut rng, m, 4);
        let lhs = binom_words(&s.concat(&w), &t)?.get();
        let mut rhs = 0u128;
        for cut in 0..=t.len() {
            let (x, y) = t.letters().split_at(cut);
            rhs += binom_words(&s, &Word::from(x))?.get() * binom_words(&w, &Word::from(y))?.get();
        }
        if lhs != rhs && bad.is_none() {
            bad = Some(format!("s={s}, w={w}, t={t}"));
        }
    }
    out.push(property_record("concatenation", ANCHOR, total, bad));

    // vu ~k wu <=> v ~k w <=> uv ~k uw over Σ_3. Half of the pairs are
    // drawn from one Ψ_k class so that both outcomes occur.
    let m = 3;
    let pool = all_words(m, 6);
    let mut bad = None;
    let mut equivalent_seen = 0usize;
    for k in 1..=3 {
        let groups = classes(&pool, k, m)?;
        let share = total.div_ceil(3);
        for _ in 0..share {
            let (v, w) = if rng.gen_bool(0.5) {
                let group = &groups[rng.gen_range(0..groups.len())];
                (
                    group[rng.gen_range(0..group.len())].clone(),
                    group[rng.gen_range(0..group.len())].clone(),
                )
            } else {
                (random_word(&mut rng, m, 8), random_word(&mut rng, m, 8))
            };
            let u = random_word(&mut rng, m, 22);
            let middle = equivalent_k(&v, &w, k, m)?;
            let right = equivalent_k(&v.concat(&u), &w.concat(&u), k, m)?;
            let left = equivalent_k(&u.concat(&v), &u.concat(&w), k, m)?;
            equivalent_seen += usize::from(middle && v != w);
            if !(middle == right && middle == left) && bad.is_none() {
                bad = Some(format!("k={k}, u={u}, v={v}, w={w}"));
            }
        }
    }
    let cancellation_total = 3 * total.div_ceil(3);
    let mut cancellation = property_record("cancellation", ANCHOR, cancellation_total, bad);
    cancellation.observed += &format!(", {equivalent_seen} with v != w equivalent");
    out.push(cancellation);

    // u ~_{k-1} u', u !~_k u', v ~_k v'  =>  uv !~_k u'v'. The pairs come
    // from small exhaustive pools and get random common padding, which
    // preserves both relations.
    struct Pool {
        k: usize,
        m: usize,
        /// Pairs equivalent at level `k - 1` but not `k`.
        distinct: Vec<(Word, Word)>,
        /// `Ψ_k` classes.
        fine: Vec<Vec<Word>>,
    }
    let mut pools = Vec::new();
    for k in 1..=3 {
        for (m, len) in [(2usize, 8usize), (3, 6), (4, 4)] {
            let pool = all_words(m, len);
            let coarse = if k == 1 { vec![pool.clone()] } else { classes(&pool, k - 1, m)? };
            let mut distinct = Vec::new();
            for group in &coarse {
                for sub in classes(group, k, m)?.windows(2) {
                    distinct.push((sub[0][0].clone(), sub[1][0].clone()));
                }
            }
            if !distinct.is_empty() {
                pools.push(Pool {
                    k,
                    m,
                    distinct,
                    fine: classes(&pool, k, m)?,
                });
            }
        }
    }
    let mut bad = None;
    for i in 0..total {
        let Pool { k, m, distinct, fine } = &pools[i % pools.len()];
        let (k, m) = (*k, *m);
        let (u0, u1) = &distinct[rng.gen_range(0..distinct.len())];
        let group = &fine[rng.gen_range(0..fine.len())];
        let v0 = &group[rng.gen_range(0..group.len())];
        let v1 = &group[rng.gen_range(0..group.len())];
        let head = random_word(&mut rng, m, 30 - u0.len());
        let tail = random_word(&mut rng, m, 8);
        let (u, u_) = (head.concat(u0), head.concat(u1));
        let (v, v_) = (v0.concat(&tail), v1.concat(&tail));
        let premise = (k == 1 || equivalent_k(&u, &u_, k - 1, m)?)
            && !equivalent_k(&u, &u_, k, m)?
            && equivalent_k(&v, &v_, k, m)?;
        let conclusion = !equivalent_k(&u.concat(&v), &u_.concat(&v_), k, m)?;
        if !(premise && conclusion) && bad.is_none() {
            bad = Some(format!("k={k}, u={u}, u'={u_}, v={v}, v'={v_} (premise {premise})"));
        }
    }
    out.push(property_record("composition", ANCHOR, total, bad));
    Ok(out)
}

fn eq31(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    let total = config.instances(500);
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x31);
    let alphabets = config.alphabets(&[3, 4, 5]);
    let mut bad = None;
    for _ in 0..total {
        let m = alphabets[rng.gen_range(0..alphabets.len())];
        let u = random_word(&mut rng, m, 20);
        let c = rng.gen_range(0..m) as u8;
        let d = rng.gen_range(0..m) as u8;
        let fast = binom_sigma_cd(&parikh(&u, m)?, c, d, m)?;
        let dp = binom_words(&sigma(m)?.apply(&u)?, &Word::from_letters(vec![c, d]))?;
        if fast != dp && bad.is_none() {
            bad = Some(format!("m={m}, u={u}, cd={c}{d}: formula {fast}, DP {dp}"));
        }
    }
    Ok(vec![property_record(
        "sigma-image-coefficient",
        "binom(σ_m(u), cd) from the Parikh vector of u",
        total,
        bad,
    )])
}

fn eq32(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    let total = config.instances(500);
    let mut rng = StdRng::seed_from_u64(config.seed ^ 0x32);
    let alphabets = config.alphabets(&[3, 4, 5]);
    let mut bad = None;
    for _ in 0..total {
        let m = alphabets[rng.gen_range(0..alphabets.len())];
        let phi = sigma(m)?;
        let u = random_word(&mut rng, m, 20);
        let a = rng.gen_range(0..m) as u8;
        let b = rng.gen_range(0..m) as u8;
        let alpha_len = rng.gen_range(0..m);
        let beta_len = rng.gen_range(0..m);
        let alpha = Word::from(&phi.image(a).letters()[m - alpha_len..]);
        let beta = Word::from(&phi.image(b).letters()[..beta_len]);
        let c = rng.gen_range(0..m) as u8;
        let d = (c as usize + rng.gen_range(1..m)) as u8 % m as u8;
        let fast = binom_decorated(&alpha, &parikh(&u, m)?, u.len() as u64, &beta, c, d, m)?;
        let word = alpha.concat(&phi.apply(&u)?).concat(&beta);
        let dp = binom_words(&word, &Word::from_letters(vec![c, d]))?;
        if fast != dp && bad.is_none() {
            bad = Some(format!("m={m}, α={alpha}, u={u}, β={beta}, cd={c}{d}: formula {fast}, DP {dp}"));
        }
    }
    Ok(vec![property_record(
        "decorated-coefficient",
        "binom(α σ_m(u) β, cd) without expanding σ_m(u)",
        total,
        bad,
    )])
}

/// Oracle values `b_{t_m,k}(n)` for every `n` in `ns`.
fn oracle_values(m: usize, k: usize, ns: &BTreeSet<usize>, strategy: &HostStrategy) -> Result<ComplexityTable> {
    let (Some(&lo), Some(&hi)) = (ns.first(), ns.last()) else {
        return Ok(ComplexityTable::new(k));
    };
    let source = tm_source(m)?;
    if hi - lo + 1 == ns.len() {
        return complexity_profile(&source, k, m, lo..=hi, strategy);
    }
    let mut table = ComplexityTable::new(k);
    for &n in ns {
        for row in complexity_profile(&source, k, m, n..=n, strategy)?.rows() {
            table.insert(row.n, row.value, row.provenance);
        }
    }
    Ok(table)
}

/// One record comparing an oracle table to a closed form on `ns`.
fn closed_form_record(
    claim_id: String,
    anchor: &str,
    table: &ComplexityTable,
    ns: &BTreeSet<usize>,
    closed: impl Fn(usize) -> Result<u64>,
) -> Result<ClaimRecord> {
    let lo = ns.first().copied().unwrap_or(0);
    let hi = ns.last().copied().unwrap_or(0);
    let expected = format!("oracle equals closed form for all {} n in [{lo}, {hi}]", ns.len());
    for &n in ns {
        let want = closed(n)?;
        let got = table.get(n).ok_or_else(|| Error::Coverage(format!("n = {n} not computed")))?;
        if want != got {
            return Ok(record(
                claim_id,
                anchor,
                expected,
                format!("n = {n}: oracle {got}, closed form {want}"),
                false,
            ));
        }
    }
    Ok(record(claim_id, anchor, expected, format!("{} of {} agree", ns.len(), ns.len()), true))
}

fn thm11(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    config
        .alphabets(&[3, 4, 5, 6])
        .into_iter()
        .map(|m| {
            let ns = config.widen(m..=60 * m, m);
            let table = oracle_values(m, 1, &ns, &config.strategy)?;
            closed_form_record(
                format!("abelian-m{m}"),
                "abelian complexity of t_m, five-case closed form",
                &table,
                &ns,
                |n| abelian_closed(m, n),
            )
        })
        .collect()
}

fn thm13(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    const ANCHOR: &str = "2-binomial complexity of t_m, closed form";
    let mut out = Vec::new();
    for m in config.alphabets(&[3, 4]) {
        let window = match m {
            3 => 9..=54,
            4 => 16..=48,
            _ => m * m..=3 * m * m,
        };
        let ns = config.widen(window, m * m);
        let table = oracle_values(m, 2, &ns, &config.strategy)?;
        out.push(closed_form_record(format!("binomial2-m{m}"), ANCHOR, &table, &ns, |n| {
            binomial2_closed(m, n)
        })?);
        if m == 3 {
            for (n, want) in [(9usize, 49u64), (10, 45)] {
                let got = table.get(n).ok_or_else(|| Error::Coverage(format!("n = {n}")))?;
                out.push(record(
                    format!("binomial2-m3-n{n}"),
                    ANCHOR,
                    want.to_string(),
                    got.to_string(),
                    got == want,
                ));
            }
        }
    }
    Ok(out)
}

fn thm12(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    let mut out = Vec::new();
    for m in config.alphabets(&[3, 4]) {
        for n in config.widen(5 * m..=8 * m, m.max(3)) {
            let report = structural_sweep(m, n)?;
            let observed = format!(
                "{} factors, {} factor pairs and {} decomposition pairs checked, {} disagreements, {} ambiguous factors",
                report.factors,
                report.pairs_checked,
                report.decomposition_pairs_checked,
                report.disagreements.len(),
                report.ambiguous_factors
            );
            let observed = match report.disagreements.first() {
                Some((a, b)) => format!("{observed}; first: {a} vs {b}"),
                None => observed,
            };
            out.push(record(
                format!("structural-m{m}-n{n}"),
                "2-binomial equivalence from (α, core, β) decompositions",
                "structural verdict equals Ψ_2 on every pair",
                observed,
                report.passed(),
            ));
        }
    }
    Ok(out)
}

fn lemmas4x(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    let strategy = &config.strategy;
    let mut out = Vec::new();
    for m in config.alphabets(&[3, 4]) {
        let mut bad = None;
        let ns = config.widen(2..=30, 2);
        for &n in &ns {
            let count = boundary_pair_set(m, n, strategy)?.len();
            if count != m * m && bad.is_none() {
                bad = Some(format!("n = {n}: {count}"));
            }
        }
        out.push(record(
            format!("boundary-pairs-m{m}"),
            "every pair of letters is a boundary pair",
            format!("m^2 = {} for n in [2, {}]", m * m, ns.last().unwrap_or(&30)),
            bad.clone().unwrap_or_else(|| format!("{} of {} agree", ns.len(), ns.len())),
            bad.is_none(),
        ));
    }
    for m in config.alphabets(&[3, 4, 5]) {
        let want = prescribed_letter_closed(m);
        for (mode, id) in [
            (BoundaryMode::PrefixLetter, "first"),
            (BoundaryMode::SuffixLetter, "last"),
        ] {
            let ns = config.widen(m..=6 * m, m);
            let mut bad = None;
            for &n in &ns {
                for a in 0..m as u8 {
                    let got = boundary_parikh_counts(m, n, mode, a, None, strategy)? as u64;
                    if got != want && bad.is_none() {
                        bad = Some(format!("n = {n}, a = {a}: {got}"));
                    }
                }
            }
            out.push(record(
                format!("prescribed-{id}-letter-m{m}"),
                "Parikh vectors of factors with a prescribed boundary letter",
                format!("1 + m(m-1)/2 = {want} for n in [{m}, {}], every a", ns.last().unwrap_or(&m)),
                bad.clone().unwrap_or_else(|| format!("{} cases agree", ns.len() * m)),
                bad.is_none(),
            ));
        }
    }
    for m in config.alphabets(&[3]) {
        let ns = config.widen(m + 1..=5 * m, m + 1);
        let mut bad = None;
        let mut cases = 0;
        for &n in &ns {
            for a in 0..m as u8 {
                for b in 0..m as u8 {
                    let got = boundary_parikh_counts(m, n, BoundaryMode::BothLetters, a, Some(b), strategy)?
                        as u64;
                    let want = boundary_pair_closed(m, n, a, b);
                    cases += 1;
                    if got != want && bad.is_none() {
                        bad = Some(format!("n = {n}, a = {a}, b = {b}: {got}, expected {want}"));
                    }
                }
            }
        }
        out.push(record(
            format!("prescribed-both-letters-m{m}"),
            "Parikh vectors of factors a·u·b",
            format!("1 if n = b - a + 1 mod m, else m; n in [{}, {}]", m + 1, ns.last().unwrap_or(&m)),
            bad.clone().unwrap_or_else(|| format!("{cases} cases agree")),
            bad.is_none(),
        ));
    }
    Ok(out)
}

fn corollary(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    let mut out = Vec::new();
    for m in config.alphabets(&[3]) {
        for (k, period, last_checked) in [(2usize, m * m, 5 * m * m), (1, m, 19 * m)] {
            let ns: BTreeSet<usize> = (period..=last_checked + period).collect();
            let table = oracle_values(m, k, &ns, &config.strategy)?;
            let report = periodicity_check(&table, period, period)?;
            out.push(record(
                format!("period-m{m}-k{k}"),
                "ultimate periodicity of b_{t_m,k}",
                format!("b(n + {period}) = b(n) for n in [{period}, {last_checked}]"),
                format!("{:?} over [{}, {}]", report.verdict, report.window.0, report.window.1),
                report.is_consistent() && report.window == (period, last_checked),
            ));
        }
    }
    Ok(out)
}

fn counterexample() -> Result<Vec<ClaimRecord>> {
    const ANCHOR: &str = "Parikh-constant morphism 0->012, 1->210, 2->120";
    let describe = |o: &crate::tm::CounterexampleOutcome| {
        format!(
            "u={}, v={}, u~2v: {}, u factor: {}, v factor: {}",
            o.u, o.v, o.equivalent2, o.u_is_factor, o.v_is_factor
        )
    };
    let stated = CounterexampleCase::as_stated().evaluate()?;
    let corrected = CounterexampleCase::corrected().evaluate()?;
    Ok(vec![
        record(
            "stated-pair",
            ANCHOR,
            "φ(10122)21 ~2 φ(22101)12 with u != v",
            describe(&stated),
            stated.holds(),
        ),
        record(
            "corrected-pair",
            ANCHOR,
            "φ(20122)21 ~2 φ(22101)12, both factors of the fixed point",
            describe(&corrected),
            corrected.holds() && corrected.u_is_factor && corrected.v_is_factor,
        ),
    ])
}

fn m2_llr20(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    [2usize, 3]
        .into_iter()
        .map(|k| {
            let period = 1 << k;
            let ns = config.widen(period..=period + 40, period);
            let table = oracle_values(2, k, &ns, &config.strategy)?;
            closed_form_record(
                format!("thue-morse-k{k}"),
                "k-binomial complexity of the Thue-Morse word",
                &table,
                &ns,
                |n| tm2_binomial_closed(k, n),
            )
        })
        .collect()
}

fn generator(config: &SuiteConfig) -> Result<Vec<ClaimRecord>> {
    const LEN: usize = 100_000;
    config
        .alphabets(&[2, 3, 4, 5, 6])
        .into_iter()
        .map(|m| {
            let prefix = tm_prefix(m, LEN)?;
            let mismatch = prefix
                .letters()
                .iter()
                .enumerate()
                .find(|&(i, &x)| x != digit_sum_letter(m, i as u64));
            Ok(record(
                format!("digit-sum-m{m}"),
                "t_m(i) = base-m digit sum of i mod m",
                format!("morphism prefix equals digit-sum letters on {LEN} letters"),
                match mismatch {
                    Some((i, x)) => format!("position {i}: morphism {x}, digit sum {}", digit_sum_letter(m, i as u64)),
                    None => format!("{LEN} letters agree"),
                },
                mismatch.is_none(),
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm99".parse::<Suite>().is_err());
    }

    #[test]
    fn widen_only_adds() {
        let config = SuiteConfig {
            extra_n: vec![2, 100],
            ..SuiteConfig::default()
        };
        let ns = config.widen(5..=7, 4);
        assert_eq!(ns.into_iter().collect::<Vec<_>>(), vec![5, 6, 7, 100]);
        assert_eq!(config.instances(500), 500);
    }

    #[test]
    fn all_words_enumerates() {
        let ws = all_words(3, 2);
        assert_eq!(ws.len(), 9);
        assert_eq!(ws[5], Word::parse("12").unwrap());
    }

    #[test]
    fn quick_suites_pass() {
        let config = SuiteConfig {
            m: Some(3),
            ..SuiteConfig::default()
        };
        for suite in [Suite::Eq31, Suite::Eq32, Suite::Lemmas4x, Suite::M2Llr20] {
            let report = run_suite(suite, &config).unwrap();
            assert!(report.passed, "{}", report.to_json());
        }
    }

    #[test]
    fn counterexample_report_keeps_both_records() {
        let report = run_suite(Suite::Counterexample, &SuiteConfig::default()).unwrap();
        assert_eq!(report.records.len(), 2);
        assert!(!report.records[0].passed());
        assert!(report.records[1].passed());
        assert!(!report.passed);
    }
}
