use lieharm::fourier::dirichlet;
use lieharm::verify::{
    corollary_decay, make_corpus, nikolskii_check, nikolskii_weyl_check, run_sharpness, run_suite, run_weyl, summarize,
    weyl_fit, write_jsonl, InequalityReport, Instance, Profile, Relation, Suite, SuiteConfig, REPORT_FORMAT,
    REPORT_VERSION,
};
use lieharm::{Error, GroupId, Settings};
use proptest::prelude::*;
use serde_json::Value;

fn group() -> impl Strategy<Value = GroupId> {
    prop_oneof![Just(GroupId::Torus(1)), Just(GroupId::Torus(2)), Just(GroupId::Su2)]
}

fn profile() -> impl Strategy<Value = Profile> {
    prop_oneof![
        Just(Profile::DenseGaussian),
        Just(Profile::Sparse),
        Just(Profile::SmoothDecay)
    ]
}

fn small_settings() -> Settings {
    Settings {
        max_nodes: 1 << 16,
        max_refinements: 4,
        ..Settings::default()
    }
}

fn pair() -> impl Strategy<Value = (f64, f64)> {
    let grid = [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY];
    (0..5usize, 1..6usize).prop_filter_map("p < q", move |(i, j)| (i < j).then(|| (grid[i], grid[j])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn corpora_are_reproducible(g in group(), p in profile(), seed in any::<u64>()) {
        let a = make_corpus(g, 3.0, 3, seed, p).unwrap();
        let b = make_corpus(g, 3.0, 3, seed, p).unwrap();
        prop_assert_eq!(&a.functions, &b.functions);
        prop_assert!(a.functions.iter().all(|f| f.support().all(|xi| xi.within(3.0))));
    }

    #[test]
    fn nikolskii_holds_on_random_polynomials(g in group(), prof in profile(), seed in any::<u64>(), (p, q) in pair()) {
        let band = if g == GroupId::Su2 { 2.0 } else { 3.0 };
        let f = make_corpus(g, band, 1, seed, prof).unwrap().functions.remove(0);
        let s = small_settings();
        let t = nikolskii_check(&f, p, q, &s).unwrap();
        prop_assert!(t.holds, "{:?}", t);
        let r = nikolskii_weyl_check(&f, p, q, band, &s).unwrap();
        prop_assert!(r.holds, "{:?}", r);
        prop_assert!(r.rhs >= t.rhs);
    }

    #[test]
    fn reports_survive_json(lhs in -1e6f64..1e6, rhs in prop_oneof![Just(0.0), Just(f64::INFINITY), 1e-3f64..1e6], tol in 0.0f64..1e-3) {
        let mut i = Instance::new(GroupId::Torus(2));
        i.p = Some(1.5);
        i.q = Some(f64::INFINITY);
        let r = InequalityReport::le("nikolskii/support", i, lhs, rhs, tol).with_notes("n");
        let back: InequalityReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back.ratio.to_bits(), r.ratio.to_bits());
        prop_assert_eq!(back.instance.q, Some(f64::INFINITY));
        prop_assert_eq!(back.holds, r.holds);
    }
}

#[test]
fn relations() {
    let i = Instance::new("torus:1");
    assert!(InequalityReport::le("a/b", i.clone(), 1.0, 1.0, 0.0).holds);
    assert!(!InequalityReport::le("a/b", i.clone(), 1.1, 1.0, 0.05).holds);
    assert!(InequalityReport::eq("a/b", i.clone(), 1.0 + 1e-10, 1.0, 1e-9).holds);
    assert!(!InequalityReport::eq("a/b", i.clone(), 0.5, 1.0, 1e-9).holds);
    let z = InequalityReport::eq("a/b", i.clone(), 0.0, 0.0, 0.0);
    assert!(z.holds && z.ratio == 1.0);
    let f = InequalityReport::finite("a/b", i, f64::INFINITY, 1.0);
    assert_eq!(f.relation, Relation::Finite);
    assert!(!f.holds);
}

#[test]
fn summary_groups_by_prefix() {
    let i = Instance::new("su2");
    let reports = vec![
        InequalityReport::le("nikolskii/support", i.clone(), 1.0, 2.0, 0.0),
        InequalityReport::le("nikolskii/weyl", i.clone(), 3.0, 2.0, 0.0),
        InequalityReport::eq("weyl/spot", i, 1.0, 1.0, 0.0),
    ];
    let rows = summarize(&reports);
    assert_eq!(rows.len(), 2);
    assert_eq!(
        (rows[0].check.as_str(), rows[0].total, rows[0].failed),
        ("nikolskii", 2, 1)
    );
    assert_eq!((rows[1].check.as_str(), rows[1].passed), ("weyl", 1));
}

#[test]
fn report_stream_layout() {
    let cfg = SuiteConfig {
        groups: vec![GroupId::Torus(1)],
        ..SuiteConfig::default()
    };
    let reports = run_suite(Suite::Sharpness, &cfg).unwrap();
    let mut buf = Vec::new();
    write_jsonl(&mut buf, &cfg, &reports).unwrap();
    let lines: Vec<Value> = String::from_utf8(buf)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1 + reports.len() + 1);
    assert_eq!(lines[0]["kind"], "header");
    assert_eq!(lines[0]["format"], REPORT_FORMAT);
    assert_eq!(lines[0]["version"], REPORT_VERSION);
    assert_eq!(lines[0]["config"]["seed"], 7);
    assert!(lines[1..=reports.len()]
        .iter()
        .all(|l| l["kind"] == "inequality" && l["holds"] == true));
    assert_eq!(lines.last().unwrap()["kind"], "summary");
    assert_eq!(lines.last().unwrap()["check"], "nikolskii");
}

#[test]
fn sharpness_is_an_equality_everywhere() {
    let cfg = SuiteConfig::default();
    for g in [GroupId::Torus(1), GroupId::Torus(2), GroupId::Su2] {
        for r in run_sharpness(&cfg, g).unwrap() {
            assert!((r.ratio - 1.0).abs() <= 1e-9, "{r:?}");
        }
    }
}

#[test]
fn dirichlet_nikolskii_constant_is_the_weyl_count() {
    // ||D||_inf = N(L) and ||D||_2 = N(L)^{1/2}
    let d = dirichlet(GroupId::Su2, 4.0).unwrap();
    let r = nikolskii_check(&d, 2.0, f64::INFINITY, &Settings::default()).unwrap();
    let n = lieharm::weyl_count(GroupId::Su2, 4.0).unwrap() as f64;
    assert!((r.lhs - n).abs() < 1e-9 * n);
    assert!((r.rhs - n).abs() < 1e-9 * n);
}

#[test]
fn nikolskii_rejects_bad_exponents() {
    let d = dirichlet(GroupId::Torus(1), 3.0).unwrap();
    let s = Settings::default();
    assert!(matches!(nikolskii_check(&d, 2.0, 2.0, &s), Err(Error::Precondition(_))));
    assert!(matches!(nikolskii_check(&d, 4.0, 2.0, &s), Err(Error::Precondition(_))));
}

#[test]
fn weyl_reports() {
    for g in [GroupId::Torus(1), GroupId::Torus(2), GroupId::Su2] {
        assert!(run_weyl(g).unwrap().iter().all(|r| r.holds));
    }
    // N(L) = 2 floor(sqrt(L^2 - 1)) + 1 on T^1
    let ls = [10.0f64, 20.0, 40.0, 80.0, 160.0];
    let xs: Vec<f64> = ls.iter().map(|l| l.ln()).collect();
    let ys: Vec<f64> = ls
        .iter()
        .map(|l| (2.0 * (l * l - 1.0).sqrt().floor() + 1.0).ln())
        .collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 5.0, ys.iter().sum::<f64>() / 5.0);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let fit = weyl_fit(GroupId::Torus(1), &ls).unwrap();
    assert!((fit.slope - cov / var).abs() < 1e-12);
    assert!((fit.slope - 1.0).abs() < 0.05);
}

#[test]
fn decay_is_checked_against_its_preconditions() {
    let f = make_corpus(GroupId::Torus(1), 10.0, 1, 3, Profile::SmoothDecay)
        .unwrap()
        .functions
        .remove(0);
    let s = Settings::default();
    assert!(matches!(
        corollary_decay(&f, 2.0, 4.0, &[2.0, 4.0], &s),
        Err(Error::Precondition(_))
    ));
    let d = corollary_decay(&f, 1.0, f64::INFINITY, &[2.0, 4.0, 8.0], &s).unwrap();
    assert_eq!(d.points.len(), 3);
    assert!(d.points.iter().all(|p| p.a.is_finite() && p.a >= 0.0));
}
