use tmwords::binomial::{count_classes, window_classes};
use tmwords::host::{HostStrategy, PrefixPolicy};
use tmwords::table::{complexity_profile, ComplexityTable, TableMeta};
use tmwords::tm::{abelian_closed, binomial2_closed, tm2_binomial_closed, tm_prefix, tm_source};
use tmwords::word::{factors, is_cube_free};
use tmwords::Error;

#[test]
fn cover_and_long_prefix_agree() {
    for (m, k, ns) in [(3, 2, 1..=30), (4, 1, 1..=40), (2, 3, 1..=30)] {
        let long = tm_prefix(m, 60_000).unwrap();
        let table = complexity_profile(&tm_source(m).unwrap(), k, m, ns.clone(), &HostStrategy::Cover).unwrap();
        for n in ns {
            let direct = count_classes(&factors(&long, n), k, m).unwrap() as u64;
            assert_eq!(table.get(n), Some(direct), "m = {m}, k = {k}, n = {n}");
        }
    }
}

#[test]
fn profile_examples() {
    let source = tm_source(3).unwrap();
    let t = complexity_profile(&source, 2, 3, 9..=12, &HostStrategy::Cover).unwrap();
    let values: Vec<u64> = t.rows().map(|r| r.value).collect();
    assert_eq!(values, vec![49, 45, 45, 48]);
    assert_eq!(abelian_closed(3, 4).unwrap() + 42, 48);
    assert_eq!(binomial2_closed(3, 12).unwrap(), 48);

    let t = complexity_profile(&source, 2, 3, 0..=0, &HostStrategy::Cover).unwrap();
    assert_eq!(t.get(0), Some(1));

    let t = complexity_profile(&tm_source(2).unwrap(), 2, 2, 4..=5, &HostStrategy::Cover).unwrap();
    assert_eq!((t.get(4), t.get(5)), (Some(9), Some(8)));
    assert_eq!(tm2_binomial_closed(2, 4).unwrap(), 9);

    let t = complexity_profile(&tm_source(4).unwrap(), 2, 4, 16..=16, &HostStrategy::Cover).unwrap();
    assert_eq!(t.get(16), Some(173));
}

#[test]
fn prefix_strategy_settles_on_small_cases() {
    let strategy = HostStrategy::Prefix(PrefixPolicy::default());
    let source = tm_source(3).unwrap();
    let prefix = complexity_profile(&source, 2, 3, 9..=20, &strategy).unwrap();
    let cover = complexity_profile(&source, 2, 3, 9..=20, &HostStrategy::Cover).unwrap();
    assert_eq!(prefix.rows().map(|r| r.value).collect::<Vec<_>>(), cover.rows().map(|r| r.value).collect::<Vec<_>>());
}

#[test]
fn prefix_strategy_reports_the_failing_n() {
    let strategy = HostStrategy::Prefix(PrefixPolicy {
        growth: 1,
        max_doublings: 1,
    });
    let err = complexity_profile(&tm_source(5).unwrap(), 2, 5, 40..=45, &strategy).unwrap_err();
    assert!(matches!(err, Error::InsufficientPrefix { n: 40, .. }), "{err:?}");
}

#[test]
fn tables_round_trip() {
    let t = complexity_profile(&tm_source(3).unwrap(), 2, 3, 0..=30, &HostStrategy::Cover).unwrap();
    assert_eq!(ComplexityTable::from_csv(&t.to_csv(), 2).unwrap(), t);
    let meta = TableMeta {
        m: 3,
        k: 2,
        generator: "morphism".into(),
        oracle_checked: true,
    };
    let (back, meta_back) = ComplexityTable::from_json(&t.to_json(&meta)).unwrap();
    assert_eq!(back, t);
    assert_eq!(meta_back, meta);
}

#[test]
fn profile_is_deterministic_across_pools() {
    let source = tm_source(4).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| complexity_profile(&source, 2, 4, 1..=40, &HostStrategy::Cover).unwrap().to_csv())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn sliding_windows_match_factor_sets() {
    let w = tm_prefix(3, 500).unwrap();
    for n in 0..20 {
        for k in 1..=3 {
            assert_eq!(
                window_classes(&w, n, k, 3).unwrap(),
                count_classes(&factors(&w, n), k, 3).unwrap()
            );
        }
    }
}

#[test]
fn generalized_thue_morse_is_cube_free() {
    for m in 2..=6 {
        assert!(is_cube_free(&tm_prefix(m, 3000).unwrap()), "m = {m}");
    }
}
