use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use beatty_core::counting::{self, count_primes_up_to, verify_sweep};
use beatty_core::expsum::{
    bound_ratio_report, coefficient_bound, discrepancy, discrepancy_beatty, discrepancy_quadratic,
    exp_sum_ap, exp_sum_shifted, lambda_mass_shifted, psi_indicator, substitution_identity_check,
    triplesplit_check, PsiDelta, SamplePoints,
};
use beatty_core::sieve::{build_table_with, chebyshev_psi_ap, euler_phi, prime_pi_ap, SieveConfig};
use beatty_core::{
    BeattyParams, Complex64, ExactReal, Irrational, MangoldtTable, Mode, ResidueClass, SumSpec,
    SweepConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

const TABLE_LIMIT: u64 = 14_200_000;

fn alphas() -> Vec<(&'static str, Irrational)> {
    vec![
        ("sqrt2", Irrational::sqrt(2).unwrap()),
        ("phi", Irrational::golden_ratio()),
        ("sqrt3", Irrational::sqrt(3).unwrap()),
    ]
}

fn params(alpha: &Irrational, beta: &str) -> BeattyParams {
    BeattyParams::new(alpha.clone(), ExactReal::parse(beta).unwrap()).unwrap()
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn membership() -> Outcome {
    const LIMIT: i64 = 1_000_000;
    let combos: Vec<_> = alphas()
        .into_iter()
        .flat_map(|(name, a)| ["0", "0.3", "-1.7"].map(move |b| (name, a.clone(), b)))
        .collect();
    let failures: Vec<String> = combos
        .par_iter()
        .filter_map(|(name, alpha, beta)| {
            let p = params(alpha, beta);
            let scan = || -> beatty_core::Result<Option<String>> {
                let mut expected = HashMap::new();
                for n in 1.. {
                    let m = p.term(n)?;
                    if m > LIMIT {
                        break;
                    }
                    expected.insert(m, n as u64);
                }
                for m in p.term(1)?.min(1)..=LIMIT {
                    let got = p.is_member(m)?;
                    if got != expected.get(&m).copied() {
                        return Ok(Some(format!("{name} beta={beta} m={m}: {got:?} vs {:?}", expected.get(&m))));
                    }
                }
                Ok(None)
            };
            scan().unwrap_or_else(|e| Some(format!("{name} beta={beta}: {e}")))
        })
        .collect();
    ensure(failures.is_empty(), format!("9 parameter pairs, m <= 1e6 {}", failures.join("; ")))
}

fn random_surd(rng: &mut ChaCha8Rng) -> ExactReal {
    loop {
        let d: i128 = rng.gen_range(2..1000);
        let p: i128 = rng.gen_range(-5..=5);
        let r: i128 = rng.gen_range(1..=20);
        if let Ok(x) = Irrational::quadratic(p, r, d) {
            return x.into_inner();
        }
    }
}

fn random_class(rng: &mut ChaCha8Rng) -> ResidueClass {
    let q: i64 = rng.gen_range(1..=10);
    loop {
        if let Ok(c) = ResidueClass::new(rng.gen_range(0..q), q) {
            return c;
        }
    }
}

fn substitution(table: &MangoldtTable) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let cases: Vec<_> = (0..100)
        .map(|_| {
            let class = random_class(&mut rng);
            let gamma = random_surd(&mut rng);
            let k: i64 = rng.gen_range(1..=50);
            let m = rng.gen_range(1..=(1_000_000 - class.a()) / class.q());
            (class, gamma, k, m)
        })
        .collect();
    let worst = cases
        .par_iter()
        .map(|(class, gamma, k, m)| {
            substitution_identity_check::<f64>(table, *m, *class, gamma, *k).map(|c| c.relative)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?
        .into_iter()
        .fold(0.0f64, f64::max);
    ensure(worst <= 1e-9, format!("100 instances, worst relative residual {worst:.3e}"))
}

fn triplesplit(table: &MangoldtTable) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut cases = vec![];
    for i in 0..12 {
        let gamma = loop {
            let g = random_surd(&mut rng);
            let f = g.to_f64();
            if f > 0.05 && f < 0.95 {
                break g;
            }
        };
        let g = gamma.to_f64();
        let big_delta = (g.min(1.0 - g) / 2.0).min(0.12) * rng.gen_range(0.1..1.0);
        let m = if i == 0 { 1000 } else { rng.gen_range(50..=1000) };
        let k = if i == 0 { 1000 } else { rng.gen_range(1..=1000) };
        let delta = ExactReal::rational(rng.gen_range(-1000..1000), 997).unwrap();
        cases.push((random_class(&mut rng), gamma, delta, big_delta, m, k));
    }
    let worst = cases
        .par_iter()
        .map(|(class, gamma, delta, big_delta, m, k)| {
            let psi = PsiDelta::new(gamma.to_f64(), *big_delta, *k)?;
            triplesplit_check(table, *m, *class, gamma, delta, &psi).map(|c| c.check.relative)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?
        .into_iter()
        .fold(0.0f64, f64::max);
    ensure(worst <= 1e-9, format!("12 instances, M,K <= 1000, worst relative {worst:.3e}"))
}

fn smoothing() -> Outcome {
    // Rounding slack for the computed modulus against the analytic bound.
    const SLACK: f64 = 1.0 + 8.0 * f64::EPSILON;
    let mut notes = vec![];
    for gamma in [0.5, std::f64::consts::FRAC_1_SQRT_2, 0.3] {
        for big_delta in [0.01, 0.05] {
            let psi = PsiDelta::new(gamma, big_delta, 100_000).map_err(|e| e.to_string())?;
            for k in 1..=100_000usize {
                let b = coefficient_bound(k as u64, big_delta);
                if psi.g(k).norm() > b * SLACK || psi.h(k).norm() > b * SLACK {
                    return Err(format!("gamma={gamma} Delta={big_delta} k={k}: {} > {b}", psi.g(k).norm()));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for (gamma, big_delta, k_max) in [(0.5, 0.05, 2000), (std::f64::consts::FRAC_1_SQRT_2, 0.01, 4000)] {
        let psi = PsiDelta::new(gamma, big_delta, k_max).map_err(|e| e.to_string())?;
        let tail = psi.tail_bound();
        let mut worst = 0.0f64;
        let mut tested = 0;
        while tested < 10_000 {
            let x: f64 = rng.gen();
            if psi.jump_distance(x) < big_delta {
                continue;
            }
            tested += 1;
            worst = worst.max((psi.eval(x) - f64::from(psi_indicator(x, gamma))).abs());
        }
        if worst > tail {
            return Err(format!("pointwise gamma={gamma}: {worst:.3e} > tail {tail:.3e}"));
        }
        notes.push(format!("{worst:.2e}<={tail:.2e}"));
    }
    Ok(format!("bounds for k <= 1e5 at Delta in {{0.01, 0.05}}; pointwise {}", notes.join(", ")))
}

fn sqrt2_params() -> BeattyParams {
    params(&Irrational::sqrt(2).unwrap(), "0")
}

fn theorem_sweep(table: &MangoldtTable) -> Outcome {
    let grid = [10_000, 100_000, 1_000_000];
    let mut lines = vec![];
    let mut ok = true;
    for (q, a) in [(2, 1), (3, 1), (5, 2)] {
        let spec = SumSpec::new(sqrt2_params(), ResidueClass::new(a, q).unwrap(), 0, Mode::SWeighted);
        let rep = verify_sweep::<f64>(table, &spec, &grid, &SweepConfig::default()).map_err(|e| e.to_string())?;
        let scaled: Vec<f64> = rep.rows.iter().map(|r| r.abs_err / r.n as f64).collect();
        let decreasing = scaled.windows(2).all(|w| w[1] < w[0]);
        ok &= decreasing && scaled[2] <= 0.03;
        lines.push(format!("({q},{a}) {:.2e}/{:.2e}/{:.2e}", scaled[0], scaled[1], scaled[2]));
    }
    ensure(ok, format!("|S-main|/N {}", lines.join(" ")))
}

fn corollaries(table: &MangoldtTable) -> Outcome {
    let terms = counting::beatty_terms(&sqrt2_params(), 1_000_000).map_err(|e| e.to_string())?;
    let n = terms.len() as f64;
    let classes: Vec<ResidueClass> = (1..=10).flat_map(ResidueClass::all_mod).collect();
    let rows: Vec<(ResidueClass, f64, f64)> = classes
        .par_iter()
        .map(|c| {
            let (q, a) = (c.q() as i128, c.a() as i128);
            let mut s = beatty_core::num::CompensatedSum::<f64>::new();
            let mut t = beatty_core::num::CompensatedSum::<f64>::new();
            for &m in &terms {
                s.add(table.lambda(q * m as i128 + a));
                if c.contains(m as i128) {
                    t.add(table.lambda(m as i128));
                }
            }
            let phi = euler_phi(c.q()) as f64;
            let s_dev = (s.total() / n) / (c.q() as f64 / phi) - 1.0;
            let t_dev = (t.total() / n) / (1.0 / phi) - 1.0;
            (*c, s_dev.abs(), t_dev.abs())
        })
        .collect();
    let worst_s = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let worst_t = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.1 > 0.03 || r.2 > 0.03)
        .map(|r| format!("({},{}) S {:.3} T {:.3}", r.0.a(), r.0.q(), r.1, r.2))
        .collect();
    ensure(
        bad.is_empty(),
        format!("{} classes, worst S dev {worst_s:.4}, worst T dev {worst_t:.4} {}", rows.len(), bad.join("; ")),
    )
}

fn long_count(table: &MangoldtTable) -> Outcome {
    let x = 1_000_000;
    let count = count_primes_up_to(table, &sqrt2_params(), ResidueClass::new(1, 2).unwrap(), x)
        .map_err(|e| e.to_string())?;
    let pi = table.prime_count(x);
    let gamma = std::f64::consts::FRAC_1_SQRT_2;
    let ratio = count as f64 / pi as f64;
    ensure(
        ratio >= gamma * 0.95 && ratio <= gamma * 1.05,
        format!("count {count}, pi(x) {pi}, ratio {ratio:.4} vs [{:.4}, {:.4}]", gamma * 0.95, gamma * 1.05),
    )
}

fn discrepancy_checks() -> Outcome {
    let zero = ExactReal::integer(0);
    let mut notes = vec![];
    for (name, g) in [("sqrt2", Irrational::sqrt(2).unwrap()), ("phi", Irrational::golden_ratio())] {
        let r = discrepancy_beatty(g.value(), &zero, 10_000).map_err(|e| e.to_string())?;
        let e = r.exponent.unwrap();
        if e > -0.8 {
            return Err(format!("{name}: exponent {e:.4} > -0.8"));
        }
        notes.push(format!("{name} {e:.4}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for trial in 0..100 {
        let m = rng.gen_range(1..=200);
        let pts = SamplePoints::new((0..m).map(|_| rng.gen::<f64>()).collect()).map_err(|e| e.to_string())?;
        let (fast, slow) = (discrepancy(&pts), discrepancy_quadratic(&pts));
        if fast != slow {
            return Err(format!("trial {trial} M={m}: fast {fast} vs oracle {slow}"));
        }
    }
    Ok(format!("exponents {}; fast == oracle on 100 random sets", notes.join(", ")))
}

fn progression_psi(table: &MangoldtTable) -> Outcome {
    let l = 1_000_000;
    let mut worst = (0.0f64, 0, 0);
    for q in 1..=10 {
        for c in ResidueClass::all_mod(q) {
            let psi: f64 = chebyshev_psi_ap(table, l, c).map_err(|e| e.to_string())?;
            let dev = (psi - l as f64 / euler_phi(q) as f64).abs() / l as f64;
            if dev > worst.0 {
                worst = (dev, c.a(), q);
            }
        }
    }
    ensure(worst.0 <= 0.02, format!("worst {:.2e} at ({},{})", worst.0, worst.1, worst.2))
}

fn cancellation(table: &MangoldtTable) -> Outcome {
    let gamma = Irrational::sqrt(2).unwrap().into_inner();
    let m = 100_000;
    let mut notes = vec![];
    let mut ok = true;
    for q in [2, 3] {
        let class = ResidueClass::new(1, q).unwrap();
        let shifted: Complex64 = exp_sum_shifted(table, m, class, &gamma, 1).map_err(|e| e.to_string())?;
        let mass: f64 = lambda_mass_shifted(table, m, class).map_err(|e| e.to_string())?;
        let ap: Complex64 = exp_sum_ap(table, m, class, &gamma, 1).map_err(|e| e.to_string())?;
        let psi: f64 = chebyshev_psi_ap(table, m, class).map_err(|e| e.to_string())?;
        let (r1, r2) = (shifted.norm() / mass, ap.norm() / psi);
        ok &= r1 <= 0.1 && r2 <= 0.1;
        let rep = bound_ratio_report(table, m, class, &gamma, 1).map_err(|e| e.to_string())?;
        ok &= !rep.rows.is_empty() && rep.rows.iter().all(|r| r.ratio.is_finite());
        notes.push(format!("q={q} shifted {r1:.2e} ap {r2:.2e} ({} bound rows)", rep.rows.len()));
    }
    ensure(ok, notes.join("; "))
}

fn lambda_oracle(n: u64) -> f64 {
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
    if n >= 2 {
        (n as f64).ln()
    } else {
        0.0
    }
}

fn sieve_identities(table: &MangoldtTable) -> Outcome {
    for n in 1..=10_000u64 {
        let mut s = beatty_core::num::CompensatedSum::<f64>::new();
        for d in (1..=n).filter(|d| n % d == 0) {
            let lam: f64 = table.lambda(d as i128);
            if lam != lambda_oracle(d) {
                return Err(format!("Lambda({d}) = {lam}"));
            }
            s.add(lam);
        }
        let target = (n as f64).ln();
        if (s.total() - target).abs() > 1e-12 * target.max(1.0) {
            return Err(format!("divisor sum at n={n}: {} vs {target}", s.total()));
        }
    }
    let x = 100_000;
    let pi = table.prime_count(x);
    for q in [2u64, 3, 4, 6, 12] {
        let mut total = (2..=q).filter(|p| q % p == 0 && table.is_prime(*p)).count() as u64;
        for c in ResidueClass::all_mod(q) {
            total += prime_pi_ap(table, x, c).map_err(|e| e.to_string())?;
        }
        if total != pi {
            return Err(format!("partition q={q}: {total} vs {pi}"));
        }
    }
    Ok(format!("divisor identity n <= 1e4; partitions at x = 1e5 (pi = {pi})"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let table = build_table_with(TABLE_LIMIT, &SieveConfig::default()).expect("sieve");
    println!("table up to {TABLE_LIMIT} built in {:.2?}", started.elapsed());
    let checks: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("membership oracle", Box::new(membership)),
        ("substitution identity", Box::new(|| substitution(&table))),
        ("truncated decomposition identity", Box::new(|| triplesplit(&table))),
        ("smoothing certification", Box::new(smoothing)),
        ("weighted sum main term sweep", Box::new(|| theorem_sweep(&table))),
        ("S/N and T/N densities", Box::new(|| corollaries(&table))),
        ("long count", Box::new(|| long_count(&table))),
        ("discrepancy", Box::new(discrepancy_checks)),
        ("progression psi", Box::new(|| progression_psi(&table))),
        ("exponential sum cancellation", Box::new(|| cancellation(&table))),
        ("sieve identities", Box::new(|| sieve_identities(&table))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
