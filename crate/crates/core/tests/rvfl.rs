use adz_core::barron::*;
use adz_core::par::Execution;
use adz_core::radon::activation;
use adz_core::rvfl::*;
use adz_core::specfun::sphere_area;
use adz_core::spherical::sphere_quadrature;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

struct Constant {
    n: usize,
    value: f64,
}

impl DualProfile for Constant {
    fn dim(&self) -> usize {
        self.n
    }
    fn alpha(&self) -> u32 {
        2
    }
    fn eval(&self, _: &[f64], _: f64) -> Complex64 {
        Complex64::new(self.value, 0.0)
    }
    fn theta_independent(&self) -> bool {
        true
    }
}

fn shifted() -> &'static FeatureDensity {
    static D: OnceLock<FeatureDensity> = OnceLock::new();
    D.get_or_init(|| {
        let p = sampling_profile(SourceDensity::shifted_gaussian(3), 2, 40);
        build_density(Arc::new(p), 2, 1.0, &DensityOptions::default()).unwrap()
    })
}

fn profile_norm(d: SourceDensity, alpha: u32) -> f64 {
    let p = ClosedFormProfile::new(d, alpha, RadialOptions::default());
    norm_1_inf(&p, &sphere_quadrature(3, 32), TGrid::for_profile(&p), Execution::default()).value
}

fn random_ball_point<R: Rng>(rng: &mut R, r: f64) -> Vec<f64> {
    loop {
        let p: Vec<f64> = (0..3).map(|_| rng.random_range(-r..r)).collect();
        if p.iter().map(|x| x * x).sum::<f64>() <= r * r {
            return p;
        }
    }
}

// Composite Simpson on [a, b] with `k` (even) subintervals.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, k: usize) -> f64 {
    let h = (b - a) / k as f64;
    let mut s = f(a) + f(b);
    for i in 1..k {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn mass_below_sup_norm_bound() {
    for d in [SourceDensity::shifted_gaussian(3), SourceDensity::harmonic_gaussian(3), SourceDensity::radial_shell(3)] {
        let p = sampling_profile(d, 2, 60);
        let fd = build_density(Arc::new(p), 2, 1.0, &DensityOptions::default()).unwrap();
        let norm = profile_norm(d, 2);
        assert!(fd.norm_1 <= 2.0 * norm * (1.0 + 1e-9), "{}: {} vs {}", d.catalog_id(), fd.norm_1, 2.0 * norm);
    }
}

#[test]
fn radial_mass_matches_line_integral() {
    let p = sampling_profile(SourceDensity::radial_gaussian(3), 2, 40);
    let fd = build_density(Arc::new(p), 2, 1.0, &DensityOptions::default()).unwrap();
    // h² = ∂²_t of √(π/2)(1−t²)e^{−t²/2}
    let h2 = |t: f64| ((PI / 2.0).sqrt() * (-t.powi(4) + 6.0 * t * t - 3.0) * (-0.5 * t * t).exp()).abs();
    let z = (3.0 - 6f64.sqrt()).sqrt();
    let line = 2.0 * (simpson(h2, 0.0, z, 2000) + simpson(h2, z, 1.0, 2000));
    let oracle = sphere_area(3) * line;
    assert!((fd.norm_1 / oracle - 1.0).abs() < 1e-6, "{} vs {}", fd.norm_1, oracle);
}

#[test]
fn mass_scales_linearly() {
    let opts = DensityOptions::default();
    let d = SourceDensity::shifted_gaussian(3);
    let a = build_density(Arc::new(sampling_profile(d, 2, 40)), 2, 1.0, &opts).unwrap();
    let b = build_density(Arc::new(sampling_profile(d.scaled(2.0), 2, 40)), 2, 1.0, &opts).unwrap();
    assert_eq!(b.norm_1, 2.0 * a.norm_1);
}

#[test]
fn zero_profile_rejected() {
    let z = Arc::new(Constant { n: 3, value: 0.0 });
    let e = build_density(z, 2, 1.0, &DensityOptions::default()).unwrap_err();
    assert!(matches!(e, adz_core::Error::ZeroNorm(_)));
}

#[test]
fn envelope_dominates_random_probes() {
    let fd = shifted();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100_000 {
        let mut w: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        let s = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= s);
        let b = rng.random_range(-1.0..=1.0);
        assert!(fd.eval(&w, b).norm() <= fd.envelope);
    }
}

#[test]
fn bias_squared_mean_matches_quadrature() {
    let fd = shifted();
    let m = 100_000;
    let (feats, stats) = sample_features(fd, m, 5).unwrap();
    assert_eq!(stats.envelope_violations, 0);
    let vals: Vec<f64> = feats.iter().map(|f| f.b * f.b).collect();
    let mean = vals.iter().sum::<f64>() / m as f64;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
    let rule = sphere_quadrature(3, 32);
    let gl = adz_core::specfun::gauss_legendre(40);
    let (mut num, mut den) = (0.0, 0.0);
    for (w, wt) in rule.iter() {
        num += wt * gl.integrate_on(-1.0, 1.0, |b| Complex64::new(b * b * fd.eval(w, b).norm(), 0.0)).re;
        den += wt * gl.integrate_on(-1.0, 1.0, |b| Complex64::new(fd.eval(w, b).norm(), 0.0)).re;
    }
    let z = (mean - num / den) / (var / m as f64).sqrt();
    assert!(z.abs() < 3.0, "z = {z}");
}

#[test]
fn constant_profile_gives_uniform_bias() {
    let fd = build_density(Arc::new(Constant { n: 3, value: 1.0 }), 2, 1.0, &DensityOptions::default()).unwrap();
    let m = 10_000;
    let (feats, _) = sample_features(&fd, m, 9).unwrap();
    let mut b: Vec<f64> = feats.iter().map(|f| f.b).collect();
    b.sort_by(f64::total_cmp);
    let ks = b
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = (x + 1.0) / 2.0;
            (cdf - i as f64 / m as f64).abs().max(((i + 1) as f64 / m as f64 - cdf).abs())
        })
        .fold(0.0, f64::max);
    assert!(ks < 1.628 / (m as f64).sqrt(), "KS = {ks}");
}

#[test]
fn same_seed_same_sample() {
    let fd = shifted();
    let (a, _) = sample_features(fd, 500, 42).unwrap();
    let (b, _) = sample_features(fd, 500, 42).unwrap();
    let (c, _) = sample_features(fd, 500, 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn poor_envelope_aborts() {
    let mut fd = shifted().clone();
    fd.envelope *= 1e6;
    let e = sample_features(&fd, 10, 1).unwrap_err();
    assert!(matches!(e, adz_core::Error::EnvelopeQuality { .. }));
}

#[test]
fn coefficient_moduli_are_equal() {
    let fd = shifted();
    let m = 300;
    let net = build_network(fd, m, 3).unwrap();
    let want = fd.norm_1 / m as f64;
    assert!(net.atoms.iter().all(|a| (a.a.norm() / want - 1.0).abs() < 1e-15 && a.b.abs() <= 1.0));
}

#[test]
fn single_atom_networks() {
    let net = RandomFeatureNetwork {
        alpha: 2,
        r: 1.0,
        atoms: vec![Atom { a: Complex64::new(1.0, 0.0), w: vec![1.0, 0.0, 0.0], b: 0.0 }],
        seed: 0,
    };
    assert_eq!(eval_network(&net, &[1.0, 0.0, 0.0]), Complex64::new(1.0, 0.0));
    let fd = shifted();
    let one = build_network(fd, 1, 8).unwrap();
    let at = &one.atoms[0];
    for x in [[0.1, 0.2, -0.3], [0.5, -0.5, 0.0]] {
        let ridge = at.a * activation(2, at.w.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - at.b);
        assert_eq!(eval_network(&one, &x), ridge);
    }
}

fn campaign(m_values: Vec<usize>, trials: usize, seed: u64) -> Campaign {
    let mut cfg = CampaignConfig::new(SourceDensity::shifted_gaussian(3), 2, 1.0);
    cfg.m_values = m_values;
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.grid_resolution = 4;
    cfg.target_sphere_resolution = 20;
    Campaign::prepare(cfg).unwrap()
}

fn shared_campaign() -> &'static Campaign {
    static C: OnceLock<Campaign> = OnceLock::new();
    C.get_or_init(|| campaign(vec![256], 200, 17))
}

#[test]
fn network_mean_is_unbiased() {
    let c = shared_campaign();
    let fd = &c.density;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rule = sphere_quadrature(3, 24);
    let points: Vec<Vec<f64>> = (0..10).map(|_| random_ball_point(&mut rng, 1.0)).collect();
    let nets: Vec<RandomFeatureNetwork> = (0..200).map(|j| build_network(fd, 64, derive_seed(99, j)).unwrap()).collect();
    for x in &points {
        let target = adz_core::radon::nalpha_eval(
            fd.h.as_ref(),
            2,
            1.0,
            x,
            &rule,
            adz_core::radon::BIntegration::Exact,
            Execution::default(),
        );
        let v: Vec<Complex64> = nets.iter().map(|n| eval_network(n, x)).collect();
        let mean = v.iter().sum::<Complex64>() / 200.0;
        let var = v.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / 199.0;
        let z = (mean - target).norm() / (var / 200.0).sqrt();
        assert!(z < 3.0, "x = {x:?}: z = {z}");
    }
}

#[test]
fn networks_bounded_by_lambda() {
    let c = shared_campaign();
    let fd = &c.density;
    let big_lambda = 2.0 * c.profile_norm * activation(2, 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let points: Vec<Vec<f64>> = (0..1000).map(|_| random_ball_point(&mut rng, 1.0)).collect();
    for j in 0..50 {
        let net = build_network(fd, 256, derive_seed(5, j)).unwrap();
        for x in &points {
            assert!(eval_network(&net, x).norm() <= big_lambda);
        }
    }
}

#[test]
fn networks_lipschitz_bound() {
    let c = shared_campaign();
    let lip = 2.0 * c.profile_norm * activation(1, 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for j in 0..20 {
        let net = build_network(&c.density, 256, derive_seed(7, j)).unwrap();
        let mut worst: f64 = 0.0;
        for _ in 0..2000 {
            let x = random_ball_point(&mut rng, 1.0);
            let y = random_ball_point(&mut rng, 1.0);
            let d = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            worst = worst.max((eval_network(&net, &x) - eval_network(&net, &y)).norm() / d);
        }
        assert!(worst <= lip * (1.0 + 1e-3), "{worst} vs {lip}");
    }
}

#[test]
fn sup_error_of_empty_network() {
    let c = shared_campaign();
    let net = RandomFeatureNetwork { alpha: 2, r: 1.0, atoms: vec![], seed: 0 };
    let e = sup_error(&net, &c.target, &c.grid, None);
    let want = c.target.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert_eq!(e.grid_max, want);
    assert!(e.slack_bound.is_none());
}

#[test]
fn sup_error_grows_under_refinement() {
    let fd = shifted();
    let net = build_network(fd, 128, 1).unwrap();
    let zero = |g: &BallGrid| vec![Complex64::new(0.0, 0.0); g.len()];
    let mut last = 0.0;
    for res in [2, 4, 8] {
        let g = BallGrid::new(3, 1.0, res);
        let e = sup_error(&net, &zero(&g), &g, None).grid_max;
        assert!(e >= last);
        last = e;
    }
}

#[test]
fn error_decreases_with_width() {
    let c = campaign(vec![256, 4096], 50, 23);
    let rep = run_trials(&c).unwrap();
    assert!(rep.errors[1].median < rep.errors[0].median);
}

#[test]
fn trial_errors_uncorrelated() {
    let c = shared_campaign();
    let rep = run_trials(c).unwrap();
    let e = &rep.sup_errors[0];
    let mean = e.iter().sum::<f64>() / e.len() as f64;
    let num: f64 = e.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
    let den: f64 = e.iter().map(|v| (v - mean).powi(2)).sum();
    assert!((num / den).abs() < 0.2, "lag-1 correlation {}", num / den);
    assert!(rep.exceedance.iter().all(|r| (0.0..=1.0).contains(&r.frequency)));
}

#[test]
fn reruns_are_identical() {
    let c = campaign(vec![64, 128], 30, 3);
    let mut a = run_trials(&c).unwrap();
    let mut b = run_trials(&c).unwrap();
    a.runtime_s = 0.0;
    b.runtime_s = 0.0;
    assert_eq!(a, b);
    let mut seq = c.clone();
    seq.config.exec = Execution::Sequential;
    let mut s = run_trials(&seq).unwrap();
    s.runtime_s = 0.0;
    assert_eq!(a, s);
}

#[test]
fn small_trial_count_rejected() {
    let mut cfg = CampaignConfig::new(SourceDensity::shifted_gaussian(3), 2, 1.0);
    cfg.trials = 10;
    assert!(Campaign::prepare(cfg).is_err());
}

proptest! {
    #[test]
    fn quantiles_monotone(mut v in proptest::collection::vec(-1e3f64..1e3, 1..50), q in 0.0f64..1.0, dq in 0.0f64..0.5) {
        v.sort_by(f64::total_cmp);
        prop_assert!(quantile_sorted(&v, q) <= quantile_sorted(&v, (q + dq).min(1.0)));
    }

    #[test]
    fn wilson_brackets_frequency(n in 1u64..500, k_frac in 0.0f64..=1.0) {
        let k = ((n as f64) * k_frac).floor() as u64;
        let (lo, hi) = wilson_interval(k, n);
        let p = k as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
    }

    #[test]
    fn derived_seeds_distinct(base in any::<u64>(), i in 0u64..1000, j in 0u64..1000) {
        prop_assume!(i != j);
        prop_assert_ne!(derive_seed(base, i), derive_seed(base, j));
    }
}
