use beatty_core::counting::{
    asymptotic_main_term, count_primes, main_term, verify_sweep, weighted_s, weighted_t,
};
use beatty_core::irrational::floor_affine;
use beatty_core::num::CompensatedSum;
use beatty_core::sieve::build_table;
use beatty_core::{
    BeattyParams, ExactReal, Irrational, MainTermKind, MangoldtTable, Mode, ResidueClass, SumSpec, SweepConfig,
};
use proptest::prelude::*;

fn lambda_oracle(n: i128) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let n = n as u64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut r = n;
            while r % p == 0 {
                r /= p;
            }
            return if r == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

fn params(alpha: &str, beta: &str) -> BeattyParams {
    BeattyParams::new(Irrational::parse(alpha).unwrap(), ExactReal::parse(beta).unwrap()).unwrap()
}

fn spec(alpha: &str, beta: &str, a: i64, q: i64, n: u64, mode: Mode) -> SumSpec {
    SumSpec::new(params(alpha, beta), ResidueClass::new(a, q).unwrap(), n, mode)
}

fn table() -> &'static MangoldtTable {
    static TABLE: std::sync::OnceLock<MangoldtTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| build_table(18_000_000).unwrap())
}

#[test]
fn sums_equal_term_by_term_oracle() {
    let t = table();
    for (alpha, beta) in [("sqrt:2", "0"), ("quad:1/2+sqrt:5", "0.3"), ("sqrt:3", "-1.7")] {
        let alpha_v = Irrational::parse(alpha).unwrap();
        let beta_v = ExactReal::parse(beta).unwrap();
        for (a, q) in [(0, 1), (1, 2), (2, 5), (7, 10)] {
            let class = ResidueClass::new(a, q).unwrap();
            let mut s = CompensatedSum::<f64>::new();
            let mut tt = CompensatedSum::<f64>::new();
            for n in 1..=1000 {
                let (m, _) = floor_affine(&alpha_v, n, &beta_v).unwrap();
                s.add(lambda_oracle(q as i128 * m + a as i128));
                if class.contains(m) {
                    tt.add(lambda_oracle(m));
                }
                let spec_s = SumSpec::new(params(alpha, beta), class, n as u64, Mode::SWeighted);
                if n % 250 == 0 {
                    assert_eq!(weighted_s::<f64>(t, &spec_s).unwrap(), s.total());
                    let spec_t = spec_s.with_mode(Mode::TWeighted);
                    assert_eq!(weighted_t::<f64>(t, &spec_t).unwrap(), tt.total());
                }
            }
        }
    }
}

#[test]
fn weighted_sum_is_monotone_and_dominates_counts() {
    let t = table();
    let mut prev = 0.0;
    for n in (0..=5000).step_by(97) {
        let sp = spec("sqrt:2", "0.3", 1, 4, n, Mode::SWeighted);
        let s: f64 = weighted_s(t, &sp).unwrap();
        assert!(s >= prev);
        prev = s;
        let c = count_primes(t, &sp.with_mode(Mode::NCount)).unwrap();
        assert!(c as f64 <= s / 2f64.ln() + 1e-9);
    }
}

#[test]
fn desk_scale_densities() {
    let t = table();
    let n = 100_000;
    let s: f64 = weighted_s(t, &spec("sqrt:2", "0", 1, 2, n, Mode::SWeighted)).unwrap();
    assert!((1.9..=2.1).contains(&(s / n as f64)), "{}", s / n as f64);
    let v: f64 = weighted_t(t, &spec("sqrt:2", "0", 1, 2, n, Mode::TWeighted)).unwrap();
    assert!((0.95..=1.05).contains(&(v / n as f64)), "{}", v / n as f64);
    let m: f64 = main_term(t, &spec("sqrt:2", "0", 1, 2, n, Mode::TWeighted)).unwrap();
    assert!((m - v).abs() <= 0.05 * v);
}

#[test]
fn shifted_prime_count_tracks_its_main_terms() {
    // N(x) follows γ·#{m ≤ αx : qm + a prime}; the ratio to π(x) approaches
    // q/φ(q) only as log(qαx)/log x → 1, so at x = 10⁵ it sits well below 2.
    let t = table();
    let x = 100_000;
    let sp = spec("sqrt:2", "0", 1, 2, x, Mode::NCount);
    let count = count_primes(t, &sp).unwrap() as f64;
    let exact: f64 = main_term(t, &sp).unwrap();
    let asym: f64 = asymptotic_main_term(t, &sp).unwrap();
    let ratio = count / t.prime_count(x) as f64;
    assert!((count - exact).abs() <= 0.02 * exact, "{count} vs {exact}");
    assert!((1.7..1.9).contains(&ratio), "{ratio}");
    assert!(count < asym);
}

#[test]
fn trivial_modulus_sweep_tracks_n() {
    let t = table();
    let sp = spec("sqrt:2", "0", 0, 1, 0, Mode::SWeighted);
    let cfg = SweepConfig { main_term: MainTermKind::Asymptotic, ..SweepConfig::default() };
    let rep = verify_sweep::<f64>(t, &sp, &[10_000, 100_000, 1_000_000], &cfg).unwrap();
    assert!(rep.rows.windows(2).all(|w| w[0].n < w[1].n));
    let last = rep.last().unwrap();
    assert!((last.lhs / last.n as f64 - 1.0).abs() <= 0.03);
    assert!(rep.fit.is_some() && rep.kappa_hat.is_some());
}

#[test]
fn corollary_sweep_decreases() {
    let t = table();
    let sp = spec("sqrt:2", "0", 1, 2, 0, Mode::SWeighted);
    let rep = verify_sweep::<f64>(t, &sp, &[10_000, 100_000, 1_000_000], &SweepConfig::default()).unwrap();
    assert!(rep.pass);
    assert!(rep.rows.windows(2).all(|w| w[1].rel_err < w[0].rel_err), "{rep:?}");
    assert!(rep.last().unwrap().rel_err <= 0.03);
}

#[test]
fn main_term_error_shrinks_across_classes() {
    // Individual classes fluctuate at square-root scale and need not decrease
    // monotonically; the worst class over q ≤ 10 does shrink with N.
    let t = table();
    let grid = [10_000, 100_000, 1_000_000];
    for (alpha, beta) in [("sqrt:2", "0"), ("sqrt:3", "-1.7")] {
        let mut worst = [0.0f64; 3];
        for class in (1..=10u64).flat_map(ResidueClass::all_mod) {
            let sp = SumSpec::new(params(alpha, beta), class, 0, Mode::SWeighted);
            if sp.with_limit(1_000_000).required_limit().unwrap() > t.limit() as i128 {
                continue;
            }
            let rep = verify_sweep::<f64>(t, &sp, &grid, &SweepConfig::default()).unwrap();
            for (w, r) in worst.iter_mut().zip(&rep.rows) {
                *w = w.max(r.abs_err / r.n as f64);
            }
        }
        assert!(worst[2] < worst[0] && worst[2] <= 0.01, "{alpha} {beta} {worst:?}");
    }
}

#[test]
fn sub_one_alpha_sums_match_direct_generation() {
    let t = table();
    let sp = spec("quad:0/4+sqrt:2", "0.3", 2, 3, 50_000, Mode::TWeighted);
    let via: f64 = weighted_t(t, &sp).unwrap();
    let mut direct = CompensatedSum::<f64>::new();
    for m in sp.params.generate(50_000).unwrap() {
        if sp.class.contains(m as i128) {
            direct.add(lambda_oracle(m as i128));
        }
    }
    assert!((via - direct.total()).abs() <= 1e-9 * via);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_agrees_with_generation(d in 2i128..60, bn in -30i128..30, m in -20i64..3000) {
        prop_assume!(Irrational::sqrt(d).is_ok());
        let p = BeattyParams::new(Irrational::sqrt(d).unwrap(), ExactReal::rational(bn, 10).unwrap()).unwrap();
        let terms = p.generate(3000).unwrap();
        let expect = terms.iter().position(|&t| t == m).map(|i| i as u64 + 1);
        prop_assert_eq!(p.is_member(m).unwrap(), expect);
    }

    #[test]
    fn gaps_take_two_values(p in 1i128..20, q in 1i128..6, d in 2i128..90) {
        let Ok(alpha) = Irrational::quadratic(p, q, d) else { return Ok(()) };
        let params = BeattyParams::new(alpha.clone(), ExactReal::integer(0)).unwrap();
        prop_assume!(params.alpha_exceeds_one().unwrap());
        let lo = alpha.floor().unwrap() as i64;
        let terms = params.generate(2000).unwrap();
        prop_assert!(terms.windows(2).all(|w| w[1] - w[0] == lo || w[1] - w[0] == lo + 1));
    }
}
