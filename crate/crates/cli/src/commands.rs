use std::f64::consts::PI;
use std::io::Write;

use kakeya_core::bounds::{self, BoundParams};
use kakeya_core::optimizer::{self, Interval, SearchBox};
use kakeya_core::oracle::{self, CheckId, CheckReport};
use serde::Serialize;

use crate::args::{Emit, OptimizeArgs, Preset, ScanArgs, ScanFunction, VerifyArgs};
use crate::config::Config;
use crate::output::{self, sig, OutputTable};
use crate::CliError;

type Out<'a> = &'a mut dyn Write;

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[derive(Serialize)]
struct CunninghamReport {
    preset: &'static str,
    r: f64,
    direction_measure: f64,
    #[serde(rename = "final")]
    final_value: f64,
    reference: f64,
    abs_error: f64,
}

pub fn cmd_bound(cfg: &Config, out: Out) -> Result<(), CliError> {
    let d = cfg.digits;
    if cfg.preset == Some(Preset::Cunningham) {
        let v = bounds::cunningham_bound();
        let reference = 1.0 / 108.0;
        let err = (v - reference).abs();
        writeln!(out, "Cunningham bound: all directions, r = 1/6").map_err(io)?;
        writeln!(out, "{:<8}{:>22}{:>22}", "term", "coefficient of pi", "absolute area")
            .map_err(io)?;
        writeln!(out, "{:<8}{:>22}{:>22}", "final", sig(v, d), sig(v * PI, d)).map_err(io)?;
        writeln!(
            out,
            "comparison with 1/108: final = 1/108 {} (|error| = {err:.1e})",
            if err <= 1e-12 { "holds" } else { "does not hold" }
        )
        .map_err(io)?;
        if cfg.emits(Emit::Json) {
            output::ensure_dir(&cfg.output_dir)?;
            let report = CunninghamReport {
                preset: "cunningham",
                r: 1.0 / 6.0,
                direction_measure: PI,
                final_value: v,
                reference,
                abs_error: err,
            };
            output::write_json(&output::out_path(&cfg.output_dir, "bound.json"), &report)?;
        }
        return Ok(());
    }

    let p = &cfg.params;
    let b = bounds::theorem_bound(p, cfg.quad_tol)?;
    writeln!(
        out,
        "star-shaped Kakeya lower bound: a = {}, r0 = {}, p = {}, lambda = {}, r_lambda convention {}",
        sig(p.a, d),
        sig(p.r0, d),
        sig(p.p, d),
        sig(p.lambda, d),
        p.convention
    )
    .map_err(io)?;
    writeln!(
        out,
        "derived: r_lambda = {}, delta1 = {}, r1 = {}, integral = {}",
        sig(b.derived.r_lambda, d),
        sig(b.derived.delta1, d),
        sig(b.derived.r1, d),
        sig(b.integral_value, d)
    )
    .map_err(io)?;
    writeln!(out, "{:<8}{:>22}{:>22}", "term", "coefficient of pi", "absolute area").map_err(io)?;
    for (name, v) in [
        ("case_i", b.case_i),
        ("case_ii", b.case_ii),
        ("half_a", b.half_a),
        ("final", b.final_value),
    ] {
        writeln!(out, "{name:<8}{:>22}{:>22}", sig(v, d), sig(v * PI, d)).map_err(io)?;
    }
    let holds = b.final_value * PI >= PI / 98.0;
    writeln!(
        out,
        "comparison with 1/98: final >= 1/98 {} (final = {} pi, 1/98 = {} pi)",
        if holds { "holds" } else { "does not hold" },
        sig(b.final_value, d),
        sig(1.0 / 98.0, d)
    )
    .map_err(io)?;
    if cfg.emits(Emit::Json) {
        output::ensure_dir(&cfg.output_dir)?;
        output::write_json(&output::out_path(&cfg.output_dir, "bound.json"), &b)?;
    }
    Ok(())
}

fn override_interval(iv: &mut Interval, lo: Option<f64>, hi: Option<f64>) {
    match (lo, hi) {
        (Some(l), Some(h)) => *iv = Interval::new(l, h),
        (Some(l), None) => *iv = Interval::new(l, iv.hi.max(l)),
        (None, Some(h)) => *iv = Interval::new(iv.lo.min(h), h),
        (None, None) => {}
    }
}

pub fn search_box(cfg: &Config, args: &OptimizeArgs) -> SearchBox {
    let mut bx = if cfg.preset == Some(Preset::Sec41) {
        SearchBox::sec41()
    } else {
        SearchBox::default_box()
    };
    bx.convention = cfg.params.convention;
    bx.quad_tol = cfg.quad_tol;
    override_interval(&mut bx.a, args.a_from, args.a_to);
    override_interval(&mut bx.r0, args.r0_from, args.r0_to);
    override_interval(&mut bx.lambda, args.lambda_from, args.lambda_to);
    if let Some(g) = args.grid {
        bx.grid = g;
    }
    if let Some(s) = args.starts {
        bx.starts = s;
    }
    bx
}

#[derive(Serialize)]
struct OptimizeReport<'a> {
    search_box: &'a SearchBox,
    result: &'a optimizer::OptimizationResult,
    refine: Option<&'a [f64]>,
}

pub fn cmd_optimize(cfg: &Config, args: &OptimizeArgs, out: Out) -> Result<(), CliError> {
    let d = cfg.digits;
    let bx = search_box(cfg, args);
    let res = optimizer::optimize(&bx)?;
    let best = &res.best;
    writeln!(
        out,
        "optimum over a in [{}, {}], r0 in [{}, {}], lambda in [{}, {}] ({} evaluations)",
        sig(bx.a.lo, d),
        sig(bx.a.hi, d),
        sig(bx.r0.lo, d),
        sig(bx.r0.hi, d),
        sig(bx.lambda.lo, d),
        sig(bx.lambda.hi, d),
        res.evaluations
    )
    .map_err(io)?;
    writeln!(
        out,
        "a = {}, r0 = {}, p = {}, lambda = {}",
        sig(best.a, d),
        sig(best.r0, d),
        sig(best.p, d),
        sig(best.lambda, d)
    )
    .map_err(io)?;
    let b = &res.breakdown;
    writeln!(
        out,
        "case_i = {}, case_ii = {}, half_a = {}",
        sig(b.case_i, d),
        sig(b.case_ii, d),
        sig(b.half_a, d)
    )
    .map_err(io)?;
    writeln!(
        out,
        "final = {} pi = {} (gap to a/(2 pi) {:.2e})",
        sig(res.value, d),
        sig(res.value * PI, d),
        (res.value - best.a / (2.0 * PI)).abs()
    )
    .map_err(io)?;

    let refine = match args.refine {
        Some(n) => {
            let seq = optimizer::refine_iterative_with(
                best,
                n,
                optimizer::DEFAULT_REFINE_TOL,
                cfg.quad_tol,
            )?;
            for (k, v) in seq.iter().enumerate() {
                writeln!(out, "refine[{k}] = {} pi", sig(*v, d)).map_err(io)?;
            }
            Some(seq)
        }
        None => None,
    };

    output::ensure_dir(&cfg.output_dir)?;
    let path = output::out_path(&cfg.output_dir, "optimize.json");
    output::write_json(
        &path,
        &OptimizeReport {
            search_box: &bx,
            result: &res,
            refine: refine.as_deref(),
        },
    )?;
    writeln!(out, "wrote {}", path.display()).map_err(io)?;
    if cfg.emits(Emit::Csv) {
        let mut t = OutputTable::new(&["a", "r0", "lambda", "value"], "optimizer trace");
        for tp in &res.trace {
            t.push(vec![tp.params.a, tp.params.r0, tp.params.lambda, tp.value])?;
        }
        let path = output::out_path(&cfg.output_dir, "optimize_trace.csv");
        output::write_csv(&t, &path)?;
        writeln!(out, "wrote {}", path.display()).map_err(io)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    seed: u64,
    all_pass: bool,
    reports: &'a [CheckReport],
}

pub fn cmd_verify(cfg: &Config, args: &VerifyArgs, out: Out) -> Result<(), CliError> {
    let ids: Vec<CheckId> = if args.all || args.checks.is_empty() {
        CheckId::ALL.to_vec()
    } else {
        args.checks
            .iter()
            .map(|s| s.parse::<CheckId>().map_err(|e| CliError::Usage(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    let reports = oracle::run_checks(&ids, cfg.seed, args.samples);
    for r in &reports {
        writeln!(
            out,
            "{} {:<20} max_violation = {:.3e} tolerance = {:.1e} samples = {}: {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id.name(),
            r.max_violation,
            r.tolerance,
            r.samples,
            r.summary
        )
        .map_err(io)?;
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    output::ensure_dir(&cfg.output_dir)?;
    let path = output::out_path(&cfg.output_dir, "verify.json");
    output::write_json(
        &path,
        &VerifyReport {
            seed: cfg.seed,
            all_pass: failed == 0,
            reports: &reports,
        },
    )?;
    writeln!(
        out,
        "{}/{} checks passed (seed {}); wrote {}",
        reports.len() - failed,
        reports.len(),
        cfg.seed,
        path.display()
    )
    .map_err(io)?;
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}

fn range(
    lo: Option<f64>,
    hi: Option<f64>,
    default: (f64, f64),
    steps: usize,
) -> Result<Vec<f64>, CliError> {
    let (lo, hi) = (lo.unwrap_or(default.0), hi.unwrap_or(default.1));
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(CliError::Usage(format!("invalid range [{lo}, {hi}]")));
    }
    Ok(kakeya_core::numeric::linspace(lo, hi, if lo == hi { 1 } else { steps }))
}

const BRANCH_NAMES: [&str; 3] = ["outer", "middle", "cone"];

/// A scanned table with the columns to plot: x, y and an optional series key.
struct Scan {
    table: OutputTable,
    x: usize,
    y: usize,
    group: Option<usize>,
}

fn scan_table(cfg: &Config, args: &ScanArgs, out: Out) -> Result<Scan, CliError> {
    let p = cfg.params;
    let d = cfg.digits;
    let n = args.steps;
    let one_d = |table| Scan { table, x: 0, y: 1, group: None };
    let scan = match args.function {
        ScanFunction::F => {
            let mut t = OutputTable::new(&["r", "f"], "f(r) = r(2r - 1)^2 / 2");
            for r in range(args.from, args.to, (0.15, 0.5), n)? {
                if !(0.0..=0.5).contains(&r) {
                    return Err(CliError::Domain(format!("f needs 0 <= r <= 1/2, got {r}")));
                }
                t.push(vec![r, bounds::f(r)])?;
            }
            let best = t
                .rows
                .iter()
                .fold(&t.rows[0], |b, row| if row[1] > b[1] { row } else { b });
            writeln!(out, "maximum of f on the grid at r = {}", sig(best[0], d)).map_err(io)?;
            one_d(t)
        }
        ScanFunction::G => {
            let derived = bounds::derive_params(&p)?;
            let rs = range(args.from, args.to, (p.a, p.r0), n)?;
            let mut t = OutputTable::new(
                &["r", "g", "outer", "middle", "cone", "branch"],
                "g(r) and its three components",
            );
            for &r in &rs {
                let c = bounds::g_components(r, &derived)?;
                let g = bounds::g(r, &derived)?;
                let branch = c.iter().position(|&v| v == g).unwrap_or(0);
                t.push(vec![r, g, c[0], c[1], c[2], branch as f64])?;
            }
            let (lo, hi) = (rs[0], rs[rs.len() - 1]);
            for k in bounds::g_kinks(lo, hi, &derived)? {
                writeln!(
                    out,
                    "branch switch at r = {} ({} -> {})",
                    sig(k.r, d),
                    BRANCH_NAMES[k.from],
                    BRANCH_NAMES[k.to]
                )
                .map_err(io)?;
            }
            one_d(t)
        }
        ScanFunction::C => {
            let mut t = OutputTable::new(&["r", "c"], "c(r) = a / (2 arcsin(a/r))");
            for r in range(args.from, args.to, (p.a, 1.0), n)? {
                t.push(vec![r, bounds::c(r, p.a)?])?;
            }
            one_d(t)
        }
        f => {
            let a_from = args.a_from.or(args.from);
            let a_to = args.a_to.or(args.to);
            let a_vals = range(a_from, a_to, (p.a, p.a), n)?;
            let r0_vals = range(args.r0_from, args.r0_to, (p.r0, p.r0), n)?;
            let objective = f == ScanFunction::Objective;
            let cols: &[&str] = if objective {
                &["a", "r0", "value", "p"]
            } else {
                &["a", "r0", "value"]
            };
            let name = match f {
                ScanFunction::CaseI => "case_i",
                ScanFunction::CaseIi => "case_ii",
                ScanFunction::Final => "final",
                _ => "objective",
            };
            let mut t = OutputTable::new(cols, format!("{name} (coefficient of pi)"));
            for &r0 in &r0_vals {
                for &a in &a_vals {
                    let q = BoundParams { a, r0, ..p };
                    let row = match f {
                        ScanFunction::CaseI => vec![a, r0, bounds::case_i_bound(&q, cfg.quad_tol)?],
                        ScanFunction::CaseIi => vec![a, r0, bounds::case_ii_bound(&q)?],
                        ScanFunction::Final => {
                            vec![a, r0, bounds::theorem_bound(&q, cfg.quad_tol)?.final_value]
                        }
                        _ => {
                            let bal = optimizer::balance(&q, cfg.quad_tol)?;
                            vec![a, r0, bal.value.min(a / (2.0 * PI)), bal.p]
                        }
                    };
                    t.push(row)?;
                }
            }
            // plot against a, one series per r0; against r0 when a is fixed
            let along_a = a_vals.len() > 1 || r0_vals.len() == 1;
            Scan {
                table: t,
                x: if along_a { 0 } else { 1 },
                y: 2,
                group: (along_a && r0_vals.len() > 1).then_some(1),
            }
        }
    };
    Ok(scan)
}

fn scan_name(f: ScanFunction) -> &'static str {
    match f {
        ScanFunction::F => "f",
        ScanFunction::G => "g",
        ScanFunction::C => "c",
        ScanFunction::CaseI => "case_i",
        ScanFunction::CaseIi => "case_ii",
        ScanFunction::Final => "final",
        ScanFunction::Objective => "objective",
    }
}

#[derive(Serialize)]
struct TableJson<'a> {
    caption: &'a str,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
}

pub fn cmd_scan(cfg: &Config, args: &ScanArgs, out: Out) -> Result<(), CliError> {
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be >= 1".into()));
    }
    let Scan { table, x, y, group } = scan_table(cfg, args, out)?;
    let name = scan_name(args.function);
    output::ensure_dir(&cfg.output_dir)?;
    writeln!(out, "{}: {} rows", table.caption, table.rows.len()).map_err(io)?;
    if cfg.emit.is_empty() || cfg.emits(Emit::Csv) {
        let path = output::out_path(&cfg.output_dir, &format!("scan_{name}.csv"));
        output::write_csv(&table, &path)?;
        writeln!(out, "wrote {}", path.display()).map_err(io)?;
    }
    if cfg.emits(Emit::Svg) {
        let path = output::out_path(&cfg.output_dir, &format!("scan_{name}.svg"));
        output::write_text(&path, &output::svg_plot(&table, x, y, group))?;
        writeln!(out, "wrote {}", path.display()).map_err(io)?;
    }
    if cfg.emits(Emit::Json) {
        let path = output::out_path(&cfg.output_dir, &format!("scan_{name}.json"));
        output::write_json(
            &path,
            &TableJson {
                caption: &table.caption,
                columns: &table.columns,
                rows: &table.rows,
            },
        )?;
        writeln!(out, "wrote {}", path.display()).map_err(io)?;
    }
    Ok(())
}
