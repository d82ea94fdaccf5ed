use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;

use super::{
    fmt_f64, CliError, CliResult, CompareArgs, EvalArgs, GridSpec, Limit, LimitArgs, Model,
    OracleKind, SampleArgs, Spacing,
};
use crate::oracle::{
    empirical_compare_with, laplace_invert, mellin_invert, par_map, saddle_abscissa,
    sample as draw, CompareConfig, ContourSpec, SampleBatch,
};

fn write_out(path: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn gnuplot_script(csv: &Path, spacing: Spacing, title: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    if spacing == Spacing::Log {
        s.push_str("set logscale x\n");
    }
    s.push_str("set xlabel 'x'\nset ylabel 'density'\n");
    let _ = writeln!(
        s,
        "plot '{}' using 1:2 with lines title '{}'",
        csv.display(),
        title.replace('\'', "")
    );
    s
}

pub fn eval(a: &EvalArgs) -> CliResult<()> {
    let model = Model::build(a.density, &a.params)?;
    let grid = GridSpec::from_args(&a.grid)?;
    let xs = grid.points();
    let rows = par_map(&xs, a.workers, |x| model.density(x))?;
    let mut csv = String::from("x,density,abs_err_est,terms\n");
    for (x, d) in xs.iter().zip(&rows) {
        let terms = if d.flagged {
            eprintln!(
                "warning: x={} evaluated by {:?} fallback",
                fmt_f64(*x),
                d.method
            );
            -1
        } else {
            d.terms_used as i64
        };
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            fmt_f64(*x),
            fmt_f64(d.value),
            fmt_f64(d.err_estimate),
            terms
        );
    }
    write_out(&a.out, &csv)?;
    if a.gnuplot {
        let out = a
            .out
            .as_ref()
            .ok_or_else(|| CliError::Usage("--gnuplot needs --out".into()))?;
        std::fs::write(
            out.with_extension("gp"),
            gnuplot_script(out, grid.spacing, &a.density.name()),
        )?;
    }
    Ok(())
}

struct Report {
    human: String,
    json: String,
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Self {
            human: String::new(),
            json: String::new(),
            failures: 0,
        }
    }

    fn point(
        &mut self,
        density: &str,
        oracle: &str,
        x: f64,
        series: f64,
        reference: f64,
        err: f64,
        tol: f64,
    ) {
        let rel = if reference != 0.0 {
            ((series - reference) / reference).abs()
        } else {
            (series - reference).abs()
        };
        let pass = rel <= tol;
        if !pass {
            self.failures += 1;
        }
        let _ = writeln!(
            self.human,
            "x={:<12} series={:<24} oracle={:<24} rel_err={:.3e} {}",
            fmt_f64(x),
            fmt_f64(series),
            fmt_f64(reference),
            rel,
            if pass { "PASS" } else { "FAIL" }
        );
        let obj = json!({
            "density": density, "oracle": oracle, "x": x, "series": series,
            "oracle_value": reference, "oracle_err": err, "rel_err": rel, "tol": tol, "pass": pass,
        });
        let _ = writeln!(self.json, "{obj}");
    }
}

impl Report {
    fn oracle_failed(&mut self, density: &str, oracle: &str, x: f64, series: f64, msg: &str) {
        self.failures += 1;
        let _ = writeln!(
            self.human,
            "x={:<12} series={:<24} oracle failed: {msg} FAIL",
            fmt_f64(x),
            fmt_f64(series)
        );
        let obj = json!({
            "density": density, "oracle": oracle, "x": x, "series": series,
            "oracle_error": msg, "pass": false,
        });
        let _ = writeln!(self.json, "{obj}");
    }
}

pub fn compare(a: &CompareArgs) -> CliResult<()> {
    let model = Model::build(a.density, &a.params)?;
    let name = a.density.name();
    let mut rep = Report::new();
    let oracle_name = match a.oracle {
        OracleKind::Mc => "mc",
        OracleKind::Mellin => "mellin",
        OracleKind::Laplace => "laplace",
        OracleKind::ClosedForm => "closed-form",
    };
    let unsupported = || {
        CliError::Usage(format!(
            "oracle {oracle_name} does not apply to {name} with these parameters"
        ))
    };

    if a.oracle == OracleKind::Mc {
        let (process, power) = model.process();
        let mut batch: SampleBatch = draw(process, a.n, a.seed, a.workers)?;
        if power > 1 {
            batch
                .values
                .iter_mut()
                .for_each(|v| *v = v.powi(power as i32));
        }
        let cfg = CompareConfig {
            workers: a.workers,
            kde_space: a.kde_space,
            ..CompareConfig::default()
        };
        let r = empirical_compare_with(&batch, &|x| Ok(model.density(x)?.value), &cfg)?;
        let ks_pass = r.ks_pass();
        let kde_pass = r.kde_max_rel_err <= a.tol;
        let _ = writeln!(
            rep.human,
            "n={} ks={:.5} (1% critical {:.5}) {}\nkde max rel err on [q05,q95]={:.4} (tol {}) {}\nkde vs kernel-smoothed density={:.4}",
            r.n,
            r.ks_stat,
            r.ks_critical,
            if ks_pass { "PASS" } else { "FAIL" },
            r.kde_max_rel_err,
            a.tol,
            if kde_pass { "PASS" } else { "FAIL" },
            r.kde_smoothed_rel_err
        );
        let mut obj = serde_json::to_value(&r).map_err(|e| CliError::Failed(e.to_string()))?;
        obj["density"] = json!(name);
        obj["oracle"] = json!("mc");
        obj["seed"] = json!(a.seed);
        obj["tol"] = json!(a.tol);
        obj["pass"] = json!(ks_pass && kde_pass);
        if let Some(acc) = batch.acceptance_rate {
            obj["acceptance_rate"] = json!(acc);
        }
        let _ = writeln!(rep.json, "{obj}");
        rep.failures = usize::from(!ks_pass) + usize::from(!kde_pass);
    } else {
        let xs = GridSpec::new(a.x_min, a.x_max, a.points, a.spacing)?.points();
        for x in xs {
            let series = model.series(x)?.value;
            let oracle = || -> CliResult<(f64, f64)> {
                Ok(match a.oracle {
                    OracleKind::ClosedForm => (model.closed_form(x).ok_or_else(unsupported)??, 0.0),
                    OracleKind::Mellin => {
                        let (f, strip) = model.mellin().ok_or_else(unsupported)?;
                        let c = saddle_abscissa(&f, strip, x);
                        let spec = ContourSpec::auto(&f, c, strip)?;
                        let v = mellin_invert(&f, &spec, x)?;
                        (v.value, v.error)
                    }
                    OracleKind::Laplace => {
                        let (f, at) = model.laplace(x).ok_or_else(unsupported)?;
                        let v = laplace_invert(&f, at)?;
                        (v.value, v.error)
                    }
                    OracleKind::Mc => unreachable!(),
                })
            };
            let (reference, err) = match oracle() {
                Ok(v) => v,
                Err(e @ CliError::Usage(_)) => return Err(e),
                Err(e) => {
                    rep.oracle_failed(&name, oracle_name, x, series, &e.to_string());
                    continue;
                }
            };
            rep.point(&name, oracle_name, x, series, reference, err, a.tol);
        }
    }

    let total = rep.human.lines().count();
    print!("{}", rep.human);
    match &a.jsonl {
        Some(p) if p.as_os_str() == "-" => print!("{}", rep.json),
        Some(p) => std::fs::write(p, &rep.json)?,
        None => {}
    }
    if rep.failures > 0 {
        return Err(CliError::Failed(format!(
            "{} of {} checks failed",
            rep.failures,
            total.max(rep.failures)
        )));
    }
    println!("all checks passed");
    Ok(())
}

pub fn sample(a: &SampleArgs) -> CliResult<()> {
    let model = Model::build(a.process, &a.params)?;
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let (process, power) = model.process();
    let batch = draw(process, a.n, a.seed, a.workers)?;
    let mut csv = String::with_capacity(a.n * 20);
    let _ = writeln!(csv, "# seed={}, workers={}", a.seed, a.workers.max(1));
    for v in &batch.values {
        let v = if power > 1 { v.powi(power as i32) } else { *v };
        let _ = writeln!(csv, "{}", fmt_f64(v));
    }
    if let Some(acc) = batch.acceptance_rate {
        eprintln!("acceptance rate {acc:.6}");
    }
    write_out(&a.out, &csv)
}

pub fn limit(a: &LimitArgs) -> CliResult<()> {
    let model = Model::build(a.density, &a.params)?;
    let lim = model.limit0()?;
    match lim {
        Limit::Finite(v) => println!("limit x->0+: {}", fmt_f64(v)),
        Limit::Power {
            exponent,
            coefficient,
            constant,
        } => println!(
            "x->0+: f(x) ~ {} x^{} + {}",
            fmt_f64(coefficient),
            fmt_f64(exponent),
            fmt_f64(constant)
        ),
        Limit::Log(l) => println!(
            "x->0+: f(x) ~ {} ln^2 x + {} ln x + {}",
            fmt_f64(l.log2),
            fmt_f64(l.log1),
            fmt_f64(l.constant)
        ),
    }
    for x in [1e-4, 1e-6, 1e-8] {
        let f = model.density(x)?.value;
        let approx = lim.approx(x);
        if approx != 0.0 {
            println!(
                "x={} density={} ratio={}",
                fmt_f64(x),
                fmt_f64(f),
                fmt_f64(f / approx)
            );
        } else {
            println!("x={} density={} ratio=n/a", fmt_f64(x), fmt_f64(f));
        }
    }
    Ok(())
}
