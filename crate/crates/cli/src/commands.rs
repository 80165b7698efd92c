//! Executes a [`RunConfig`] into a [`Report`] and an optional verdict.

use beatty_core::counting::{verify_sweep, SweepConfig};
use beatty_core::expsum::{
    bound_ratio_report, coefficient_bound, discrepancy_beatty, exp_sum_ap, exp_sum_shifted, lambda_mass_shifted,
    substitution_identity_check, tail_bound, triplesplit_check, PsiDelta,
};
use beatty_core::irrational::{cf_expand, estimate_type, estimate_type_default, Irrational};
use beatty_core::num::fit_line;
use beatty_core::sieve::{build_table_with, chebyshev_psi_ap, prime_pi_ap};
use beatty_core::{Complex64, IdentityCheck64, MainTermKind, MangoldtTable, ResidueClass, Result};

use crate::config::{RunConfig, SumKind, Task};
use crate::report::{Cell, Report};

/// A finished run. `verdict` is `None` for commands that only report values.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub verdict: Option<bool>,
}

impl Outcome {
    fn values(report: Report) -> Self {
        Self { report, verdict: None }
    }
}

fn class_settings(r: &mut Report, class: ResidueClass) {
    r.setting("q", class.q()).setting("a", class.a());
}

fn complex_row(label: &str, z: Complex64) -> Vec<Cell> {
    vec![label.into(), z.re.into(), z.im.into(), z.norm().into()]
}

fn identity_rows(r: &mut Report, c: &IdentityCheck64, tol: f64) -> bool {
    r.push(complex_row("lhs", c.lhs));
    r.push(complex_row("rhs", c.rhs));
    r.push(vec!["residual".into(), Cell::Empty, Cell::Empty, c.residual.into()]);
    let pass = c.relative <= tol;
    r.summary("relative", c.relative).summary("verdict", pass);
    pass
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let table = match cfg.task.table_limit().expect("validated at parse time") {
        Some(limit) => Some(build_table_with(limit.max(2), &cfg.sieve)?),
        None => None,
    };
    let table = table.as_ref();
    let mut outcome = dispatch(&cfg.task, table)?;
    let r = &mut outcome.report;
    r.setting("precision", cfg.precision as u64);
    if let Some(t) = table {
        r.setting("segment", t.segment_size()).setting("sieve_limit", t.limit());
    }
    Ok(outcome)
}

fn dispatch(task: &Task, table: Option<&MangoldtTable>) -> Result<Outcome> {
    let t = || table.expect("task needs a sieve");
    Ok(match task {
        Task::Cfrac { alpha, depth } => {
            let cf = cf_expand(alpha, *depth)?;
            let mut r = Report::new("cfrac", &["i", "a", "p", "q"]);
            r.setting("alpha", alpha.to_string()).setting("K", *depth);
            for (i, (a, (p, q))) in cf.quotients.iter().zip(&cf.convergents).enumerate() {
                r.push(vec![i.into(), (*a).into(), (*p).into(), (*q).into()]);
            }
            if let Some(period) = cf.period {
                r.summary("period_start", period.start).summary("period_len", period.len);
            }
            Outcome::values(r)
        }
        Task::TypeEstimate { alpha, depth } => {
            let est = match depth {
                Some(d) => estimate_type(alpha, *d)?,
                None => estimate_type_default(alpha)?,
            };
            let mut r = Report::new("type-estimate", &["k", "q", "distance", "exponent", "fitted"]);
            r.setting("alpha", alpha.to_string()).setting("K", depth.map_or(Cell::from("auto"), Cell::from));
            for s in &est.samples {
                r.push(vec![s.index.into(), s.denominator.into(), s.distance.into(), s.exponent.into(), s.fitted.into()]);
            }
            r.summary("depth", est.depth).summary("tau_hat", est.tau_hat);
            Outcome::values(r)
        }
        Task::Generate { params, count } => {
            let mut r = Report::new("beatty generate", &["n", "term"]);
            r.setting("alpha", params.alpha().to_string()).setting("beta", params.beta().to_string());
            r.setting("N", *count);
            for (n, term) in beatty_core::counting::beatty_terms(params, *count)?.into_iter().enumerate() {
                r.push(vec![(n as u64 + 1).into(), term.into()]);
            }
            Outcome::values(r)
        }
        Task::Member { params, values } => {
            let mut r = Report::new("beatty member", &["m", "member", "n"]);
            r.setting("alpha", params.alpha().to_string()).setting("beta", params.beta().to_string());
            for &m in values {
                let n = params.is_member(m)?;
                r.push(vec![m.into(), Cell::Text(if n.is_some() { "yes" } else { "no" }.into()), n.into()]);
            }
            Outcome::values(r)
        }
        Task::SievePsi { limits, class } => {
            let mut r = Report::new("sieve psi", &["L", "q", "a", "value"]);
            class_settings(&mut r, *class);
            for &l in limits {
                let v: f64 = chebyshev_psi_ap(t(), l, *class)?;
                r.push(vec![l.into(), class.q().into(), class.a().into(), v.into()]);
            }
            Outcome::values(r)
        }
        Task::SievePi { limits, class } => {
            let mut r = Report::new("sieve pi", &["L", "q", "a", "value"]);
            class_settings(&mut r, *class);
            for &l in limits {
                let v = prime_pi_ap(t(), l, *class)?;
                r.push(vec![l.into(), class.q().into(), class.a().into(), v.into()]);
            }
            Outcome::values(r)
        }
        Task::Sweep { spec, grid, tol, main } => {
            let cfg = SweepConfig { tolerance: *tol, main_term: *main };
            let rep = verify_sweep::<f64>(t(), spec, grid, &cfg)?;
            let mut r = Report::new("count sweep", &["N", "lhs", "main", "abs_err", "rel_err"]);
            r.setting("alpha", spec.params.alpha().to_string())
                .setting("beta", spec.params.beta().to_string())
                .setting("mode", spec.mode.label())
                .setting("tol", *tol)
                .setting("main", if *main == MainTermKind::Exact { "exact" } else { "asymptotic" })
                .setting("grid", grid.iter().map(u64::to_string).collect::<Vec<_>>().join(";"));
            class_settings(&mut r, spec.class);
            for row in &rep.rows {
                r.push(vec![row.n.into(), row.lhs.into(), row.main.into(), row.abs_err.into(), row.rel_err.into()]);
            }
            r.summary("slope", rep.fit.map(|f| f.slope))
                .summary("kappa_hat", rep.kappa_hat)
                .summary("c_hat", rep.c_hat)
                .summary("verdict", rep.pass);
            Outcome { report: r, verdict: Some(rep.pass) }
        }
        Task::ExpsumEval { gamma, class, m, k_max, kind } => {
            let (name, limit) = match kind {
                SumKind::Shifted => ("shifted", *m),
                SumKind::Progression => ("progression", *m),
            };
            let mut r = Report::new("expsum eval", &["k", "re", "im", "abs", "bound", "ratio"]);
            r.setting("gamma", gamma.to_string()).setting("M", *m).setting("K", *k_max).setting("kind", name);
            class_settings(&mut r, *class);
            let bound: f64 = match kind {
                SumKind::Shifted => lambda_mass_shifted(t(), limit, *class)?,
                SumKind::Progression => chebyshev_psi_ap(t(), limit, *class)?,
            };
            for k in 1..=*k_max {
                let z: Complex64 = match kind {
                    SumKind::Shifted => exp_sum_shifted(t(), limit, *class, gamma, k)?,
                    SumKind::Progression => exp_sum_ap(t(), limit, *class, gamma, k)?,
                };
                let ratio = if bound > 0.0 { Cell::from(z.norm() / bound) } else { Cell::Empty };
                r.push(vec![k.into(), z.re.into(), z.im.into(), z.norm().into(), bound.into(), ratio]);
            }
            Outcome::values(r)
        }
        Task::Substitution { gamma, class, m, k, tol } => {
            let c = substitution_identity_check::<f64>(t(), *m, *class, gamma, *k)?;
            let mut r = Report::new("expsum identity-check", &["quantity", "re", "im", "abs"]);
            r.setting("kind", "substitution")
                .setting("gamma", gamma.to_string())
                .setting("M", *m)
                .setting("k", *k)
                .setting("tol", *tol);
            class_settings(&mut r, *class);
            let pass = identity_rows(&mut r, &c, *tol);
            Outcome { report: r, verdict: Some(pass) }
        }
        Task::Decomposition { gamma, class, m, shift, delta, k_max, tol } => {
            let psi = PsiDelta::<f64>::new(gamma.to_f64(), *delta, *k_max)?;
            let c = triplesplit_check(t(), *m, *class, gamma, shift, &psi)?;
            let mut r = Report::new("expsum identity-check", &["quantity", "re", "im", "abs"]);
            r.setting("kind", "decomposition")
                .setting("gamma", gamma.to_string())
                .setting("shift", shift.to_string())
                .setting("M", *m)
                .setting("delta", *delta)
                .setting("K", *k_max)
                .setting("tol", *tol);
            class_settings(&mut r, *class);
            r.push(vec!["mean".into(), c.mean.into(), 0.0.into(), c.mean.abs().into()]);
            r.push(complex_row("frequency", c.frequency));
            let pass = identity_rows(&mut r, &c.check, *tol);
            Outcome { report: r, verdict: Some(pass) }
        }
        Task::BoundRatio { gamma, class, m, k } => {
            let rep = bound_ratio_report(t(), *m, *class, gamma, *k)?;
            let mut r = Report::new("expsum bound-ratio", &["b", "d", "bound", "ratio"]);
            r.setting("gamma", gamma.to_string()).setting("M", *m).setting("k", *k);
            class_settings(&mut r, *class);
            for row in &rep.rows {
                r.push(vec![row.numerator.into(), row.denominator.into(), row.bound.into(), row.ratio.into()]);
            }
            r.summary("L", rep.l).summary("theta", rep.theta).summary("observed", rep.observed);
            if let Some(best) = rep.best() {
                r.summary("best_d", best.denominator).summary("best_ratio", best.ratio);
            }
            Outcome::values(r)
        }
        Task::PsiInspect { gamma, delta, k_max } => {
            let psi = PsiDelta::<f64>::new(*gamma, *delta, *k_max)?;
            let mut r = Report::new("psi-delta inspect", &["k", "re", "im", "abs", "bound", "ratio"]);
            r.setting("gamma", *gamma).setting("delta", *delta).setting("K", *k_max);
            for k in 1..=*k_max {
                let g = psi.g(k);
                let bound = coefficient_bound(k as u64, *delta);
                r.push(vec![k.into(), g.re.into(), g.im.into(), g.norm().into(), bound.into(), (g.norm() / bound).into()]);
            }
            r.summary("tail_bound", tail_bound(*k_max, *delta));
            Outcome::values(r)
        }
        Task::Discrepancy { gamma, delta, sizes } => {
            let mut r = Report::new("discrepancy", &["M", "discrepancy", "exponent"]);
            r.setting("gamma", gamma.to_string()).setting("delta", delta.to_string());
            let mut points = Vec::new();
            for &m in sizes {
                let d = discrepancy_beatty(gamma, delta, m)?;
                if m > 1 {
                    points.push(((m as f64).ln(), d.discrepancy.ln()));
                }
                r.push(vec![m.into(), d.discrepancy.into(), d.exponent.into()]);
            }
            if let Some(fit) = fit_line(&points) {
                r.summary("slope", fit.slope);
            }
            if let Ok(x) = Irrational::new(gamma.clone()) {
                let tau = estimate_type_default(&x)?.tau_hat;
                r.summary("tau_hat", tau).summary("predicted_exponent", -1.0 / tau);
            }
            Outcome::values(r)
        }
    })
}
