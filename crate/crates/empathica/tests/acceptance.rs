//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p empathica --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_rational::{BigRational, Ratio};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use empathica::bimatrix::{
    analyze, dominant_action, pareto_set, pure_nash, Action, Player, Strictness,
};
use empathica::empathy::{
    classify_region, empathize, mixed_prob, mixed_prob_exact, region_grid, BasePayoffs,
    EmpathyPair, Rect, RegionLabel,
};
use empathica::iri::{ScaleMembership, Subscale};
use empathica::stats::{
    format_percent_trunc2, marginal_cooperation, pearson, theil_sen, PairedSample, TheilSenMode,
};
use empathica::study::{
    load_corpus, replicate, CorpusSource, GenderFilter, MatchStatus,
};

const C: Action = Action::C;
const N: Action = Action::N;

fn pass(number: u8, name: &str) {
    println!("acceptance {number:02} ({name}): PASS");
}

#[test]
fn criterion_01_classical_game_reproduction() {
    let start = Instant::now();
    let g = BasePayoffs::default().to_game();
    let equilibria = pure_nash(&g);
    let d1 = dominant_action(&g, Player::One).unwrap();
    let d2 = dominant_action(&g, Player::Two).unwrap();
    let pareto = pareto_set(&g);
    let elapsed = start.elapsed();

    assert_eq!(equilibria, vec![(N, N)]);
    assert_eq!((d1.action, d1.strictness), (N, Strictness::Strict));
    assert_eq!((d2.action, d2.strictness), (N, Strictness::Strict));
    assert_eq!(pareto, vec![(C, C), (C, N), (N, C)]);
    // (C,C) Pareto-dominates (N,N): strictly better for both players.
    assert!(g.payoff(Player::One, C, C) > g.payoff(Player::One, N, N));
    assert!(g.payoff(Player::Two, C, C) > g.payoff(Player::Two, N, N));
    assert!(
        elapsed < Duration::from_millis(1),
        "classical solve took {elapsed:?}"
    );
    pass(1, "classical game reproduction");
}

#[test]
fn criterion_02_threshold_reproduction() {
    let probe = |l12: f64, l21: f64| classify_region(&EmpathyPair::new(l12, l21).unwrap());

    let medium = probe(0.1, 0.1);
    assert_eq!(medium.equilibria.pure, vec![(C, C), (N, N)]);
    assert_eq!(medium.equilibria.mixed.len(), 1);

    let high = probe(0.8, 0.8);
    assert_eq!(high.equilibria.pure, vec![(C, C)]);
    assert!(high.equilibria.mixed.is_empty());

    assert_eq!(probe(0.8, 0.02).equilibria.pure, vec![(C, N)]);
    assert_eq!(probe(0.02, 0.8).equilibria.pure, vec![(N, C)]);
    assert_eq!(probe(0.03, 0.3).equilibria.pure, vec![(N, N)]);
    assert_eq!(probe(-0.1, -0.1).equilibria.pure, vec![(N, N)]);

    // The comparisons are exact rational ones: weights placed exactly on
    // 6/114 and 2/3 (values no float can hold) land on the boundary.
    let on_low = classify_region(&EmpathyPair::from_rationals((6, 114), (6, 114)).unwrap());
    assert_eq!(on_low.label, RegionLabel::Boundary);
    assert_eq!(on_low.equilibria.pure, vec![(C, C), (N, N)]);
    let on_high = classify_region(&EmpathyPair::from_rationals((2, 3), (2, 3)).unwrap());
    assert_eq!(on_high.label, RegionLabel::Boundary);
    assert_eq!(on_high.equilibria.pure, vec![(C, C), (N, N)]);
    pass(2, "threshold reproduction");
}

#[test]
fn criterion_03_mixed_formula_oracle_equivalence() {
    let start = Instant::now();
    let base = BasePayoffs::default();
    let low = 6.0 / 114.0;
    let high = 2.0 / 3.0;
    let mut rng = StdRng::seed_from_u64(0x317);
    for _ in 0..200 {
        let lambda = rng.gen_range(low + 1e-6..high - 1e-6);
        let formula = mixed_prob(lambda).unwrap();
        assert!(formula.in_unit_interval);
        let solved = analyze(&empathize(
            &base,
            &EmpathyPair::new(lambda, lambda).unwrap(),
        ));
        assert_eq!(solved.mixed.len(), 1);
        let delta = (formula.value - solved.mixed[0].p2).abs();
        assert!(delta <= 1e-9, "|formula - solver| = {delta} at {lambda}");
    }

    let one = mixed_prob_exact(&BigRational::new(6.into(), 114.into())).unwrap();
    assert_eq!(one, BigRational::from_integer(1.into()));
    let zero = mixed_prob_exact(&BigRational::new(2.into(), 3.into())).unwrap();
    assert_eq!(zero, BigRational::from_integer(0.into()));

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    pass(3, "mixed-formula oracle equivalence");
}

#[test]
fn criterion_04_region_solver_agreement() {
    let start = Instant::now();
    let base = BasePayoffs::default();
    let low = 6.0 / 114.0;
    let high = 2.0 / 3.0;
    let near = |x: f64| (x - low).abs() < 1e-9 || (x - high).abs() < 1e-9;

    let grid = region_grid(Rect::square(-1.0, 1.0), (200, 200)).unwrap();
    assert_eq!(grid.cells.len(), 40_000);
    let mut compared = 0usize;
    for cell in &grid.cells {
        if near(cell.lambda12) || near(cell.lambda21) {
            continue;
        }
        let solved = analyze(&empathize(
            &base,
            &EmpathyPair::new(cell.lambda12, cell.lambda21).unwrap(),
        ));
        assert_eq!(
            cell.equilibria.pure, solved.pure,
            "pure sets diverge at ({}, {})",
            cell.lambda12, cell.lambda21
        );
        assert_eq!(cell.equilibria.mixed.len(), solved.mixed.len());
        for (a, b) in cell.equilibria.mixed.iter().zip(&solved.mixed) {
            assert!((a.p1 - b.p1).abs() <= 1e-9 && (a.p2 - b.p2).abs() <= 1e-9);
        }
        assert_eq!(cell.equilibria.dominant, solved.dominant);
        compared += 1;
    }
    assert_eq!(compared, 40_000, "no cell center sits inside a band");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    pass(4, "region/solver agreement on the 200x200 grid");
}

#[test]
fn criterion_05_marginal_probabilities() {
    let corpus = load_corpus(&CorpusSource::Embedded).unwrap();
    let cases = [
        (GenderFilter::Women, Ratio::new(15u64, 29), 0.51),
        (GenderFilter::Men, Ratio::new(6u64, 13), 0.46),
        (GenderFilter::All, Ratio::new(21u64, 42), 0.5),
    ];
    for (filter, fraction, published) in cases {
        let table = corpus.partial_contingency(filter);
        let marginal = marginal_cooperation(&table).unwrap();
        assert_eq!(marginal, fraction);
        let value = *marginal.numer() as f64 / *marginal.denom() as f64;
        let truncated = (value * 100.0).trunc() / 100.0;
        assert_eq!(truncated, published);
    }
    pass(5, "marginal probabilities");
}

#[test]
fn criterion_06_frequency_tables() {
    let corpus = load_corpus(&CorpusSource::Embedded).unwrap();
    let cases = [
        (GenderFilter::Women, [35.71, 53.57, 10.71]),
        (GenderFilter::Men, [36.84, 31.57, 31.57]),
        (GenderFilter::All, [36.17, 44.68, 19.14]),
    ];
    for (filter, published) in cases {
        let computed = corpus.cooperation_frequencies(filter).percentages();
        for (c, p) in computed.iter().zip(&published) {
            let truncated: f64 = format_percent_trunc2(c / 100.0).parse().unwrap();
            assert!(
                (truncated - p).abs() <= 0.01,
                "{} {truncated} vs {p}",
                filter.label()
            );
        }
    }
    pass(6, "cooperation frequency tables");
}

#[test]
fn criterion_07_iri_distribution() {
    let corpus = load_corpus(&CorpusSource::Embedded).unwrap();
    let d = corpus.distribution();
    assert_eq!(d.total, 47);
    assert_eq!((d.pure, d.mixed, d.none), (14, 25, 8));

    let expected: &[(&str, usize, usize)] = &[
        ("PT", 8, 1),
        ("EC", 1, 0),
        ("FS", 2, 1),
        ("PD", 0, 1),
        ("PT+EC", 3, 0),
        ("PT+FS", 3, 0),
        ("PT+PD", 0, 2),
        ("EC+FS", 1, 1),
        ("EC+PD", 1, 0),
        ("FS+PD", 0, 0),
        ("PT+EC+FS", 3, 2),
        ("PT+EC+PD", 1, 2),
        ("PT+FS+PD", 0, 1),
        ("EC+FS+PD", 1, 0),
        ("PT+EC+FS+PD", 3, 1),
        ("None", 1, 7),
    ];
    for (key, women, men) in expected {
        let membership: ScaleMembership = key.parse().unwrap();
        let row = d.row(membership);
        assert_eq!((row.women, row.men), (*women, *men), "pattern {key}");
    }

    let pt = ScaleMembership::of(&[Subscale::PT]);
    assert_eq!(d.row(pt).total(), 9);
    assert_eq!(format_percent_trunc2(d.frequency(pt)), "19.14");
    pass(7, "membership distribution");
}

#[test]
fn criterion_08_mixed_scale_cooperation() {
    let corpus = load_corpus(&CorpusSource::Embedded).unwrap();
    let rows = corpus.mixed_scale_report();
    let published: Vec<(String, f64)> = rows
        .iter()
        .map(|r| {
            (
                r.membership.key(),
                r.published_level_percent.expect("all five classes published"),
            )
        })
        .collect();
    assert_eq!(
        published,
        vec![
            ("PT+EC".to_string(), 50.0),
            ("PT+FS".to_string(), 62.5),
            ("PT+PD".to_string(), 66.66),
            ("EC+FS".to_string(), 75.0),
            ("EC+PD".to_string(), 50.0),
        ]
    );
    for row in &rows {
        let p = row.published_level_percent.unwrap();
        assert!((p - published.iter().find(|(k, _)| *k == row.membership.key()).unwrap().1).abs() <= 0.01);
        // Computed levels stand beside the published ones; three of the five
        // classes regenerate exactly.
        assert!((0.0..=1.0).contains(&row.computed_level));
    }
    let exact_matches = rows
        .iter()
        .filter(|r| (r.computed_level * 100.0 - r.published_level_percent.unwrap()).abs() <= 0.01)
        .count();
    assert_eq!(exact_matches, 3);
    pass(8, "mixed-scale cooperation levels");
}

#[test]
fn criterion_09_theil_sen_property_suite() {
    // Strict estimator equals a direct enumeration on 500 random datasets.
    let mut rng = StdRng::seed_from_u64(0x7e11);
    let mut checked = 0;
    while checked < 500 {
        let n = rng.gen_range(2..=12);
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                (
                    rng.gen_range(-12i32..=12) as f64,
                    rng.gen_range(-24i32..=24) as f64 / 2.0,
                )
            })
            .collect();
        let mut slopes = Vec::new();
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                if a.0 != b.0 {
                    slopes.push((b.1 - a.1) / (b.0 - a.0));
                }
            }
        }
        let sample = PairedSample::from_pairs(&points).unwrap();
        let strict = theil_sen(&sample, TheilSenMode::Strict);
        if slopes.is_empty() {
            assert!(strict.is_err());
        } else {
            slopes.sort_by(|a, b| a.total_cmp(b));
            let m = slopes.len();
            let oracle = if m % 2 == 1 {
                slopes[m / 2]
            } else {
                (slopes[m / 2 - 1] + slopes[m / 2]) / 2.0
            };
            assert_eq!(strict.unwrap(), oracle);
        }
        checked += 1;
    }

    // Collinear data returns the exact slope.
    let collinear =
        PairedSample::from_pairs(&[(0.0, 1.0), (1.0, 3.0), (3.0, 7.0), (7.0, 15.0)]).unwrap();
    assert_eq!(theil_sen(&collinear, TheilSenMode::Strict).unwrap(), 2.0);

    // The pure-PT dataset derived from the corpus has strict slope 0.
    let corpus = load_corpus(&CorpusSource::Embedded).unwrap();
    let pt = corpus.theil_report(Subscale::PT);
    assert_eq!(pt.scale_group.slope, Some(0.0));
    assert!(!pt.published_reproducible);

    // The published betas are flagged as not reproducible in the report.
    let report = replicate(&corpus);
    let theil_rows: Vec<_> = report.rows_in_section("theil-median-slope").collect();
    for beta in ["0.2515", "0.4995", "0.5"] {
        let row = theil_rows
            .iter()
            .find(|r| r.published == beta)
            .unwrap_or_else(|| panic!("beta {beta} missing from the report"));
        assert_eq!(row.status, MatchStatus::NotReproducible);
    }
    assert!(report.to_markdown().contains("not reproducible"));
    pass(9, "Theil-Sen property suite and beta flags");
}

#[test]
fn criterion_10_pearson_property_suite() {
    let mut rng = StdRng::seed_from_u64(0xcafe);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(3..=20);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-50i32..=50) as f64).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-50i32..=50) as f64).collect();
        let sample = PairedSample::new(x.clone(), y.clone()).unwrap();
        let r = match pearson(&sample) {
            Ok(r) => r,
            Err(_) => continue,
        };
        assert!(r.abs() <= 1.0);

        // Positive affine transform of x: r unchanged to 1e-12.
        let scale = [0.25, 0.5, 2.0, 4.0][rng.gen_range(0..4)];
        let shift = rng.gen_range(-20i32..=20) as f64;
        let x_aff: Vec<f64> = x.iter().map(|v| scale * v + shift).collect();
        let r_aff = pearson(&PairedSample::new(x_aff, y.clone()).unwrap()).unwrap();
        assert!((r_aff - r).abs() <= 1e-12);

        // Negative scaling flips the sign.
        let x_neg: Vec<f64> = x.iter().map(|v| -scale * v + shift).collect();
        let r_neg = pearson(&PairedSample::new(x_neg, y.clone()).unwrap()).unwrap();
        assert!((r_neg + r).abs() <= 1e-12);
        checked += 1;
    }

    // Exact +-1 on collinear data.
    let up = PairedSample::from_pairs(&[(-3.0, -5.0), (1.0, 3.0), (4.0, 9.0)]).unwrap();
    assert_eq!(pearson(&up).unwrap(), 1.0);
    let down = PairedSample::from_pairs(&[(-3.0, 5.0), (1.0, -3.0), (4.0, -9.0)]).unwrap();
    assert_eq!(pearson(&down).unwrap(), -1.0);

    // Published scale-vs-cooperation coefficients are printed beside the
    // recomputed values and flagged.
    let corpus = load_corpus(&CorpusSource::Embedded).unwrap();
    let report = replicate(&corpus);
    let flagged: Vec<_> = report
        .rows_in_section("scale-cooperation")
        .filter(|r| r.metric.contains("Pearson") && r.published != "-")
        .collect();
    assert!(!flagged.is_empty());
    for row in flagged {
        assert_eq!(row.status, MatchStatus::NotReproducible);
        assert!(!row.computed.is_empty());
    }
    pass(10, "Pearson property suite and r flags");
}

#[test]
fn criterion_11_replication_determinism() {
    let first = replicate(&load_corpus(&CorpusSource::Embedded).unwrap());
    let second = replicate(&load_corpus(&CorpusSource::Embedded).unwrap());
    assert_eq!(first.to_markdown(), second.to_markdown());
    assert_eq!(first.to_csv(), second.to_csv());
    assert!(first.to_markdown().as_bytes() == second.to_markdown().as_bytes());
    pass(11, "replication determinism");
}
