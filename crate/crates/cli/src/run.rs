use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::args::{
    BoundsCmd, Cli, Command, Format, KfreeArgs, MertensArgs, ReproduceArgs, TablesCmd, VerifyCmd, Which, X0Args,
    ZerosArg,
};
use rh_bounds::bound_engine::{
    kfree_params, lambda_of, ln_three_e_half, mertens_params, omega1, omega2, omega_small, two_gamma1,
};
use rh_bounds::error::{Error, Result};
use rh_bounds::perron_check::{numeric_perron_mertens, PerronReport};
use rh_bounds::sieve_lab::{checkpoints_csv, mertens_checkpoints, parse_checkpoints};
use rh_bounds::table_optimizer::{publish_table1, published_csv, reference_targets, reproduce, rows_csv, Kind};
use rh_bounds::zeta_numerics::{
    check_recip_reports, global_max, logzeta_via_zero_counts, scan_csv, scan_recip_lemma, scan_recip_strips,
    scan_sup_lemma, LogZetaCheck, ZeroTable, STRIP_COUNT,
};

/// Rendered output plus whether the checks it carries passed.
pub struct Outcome {
    pub text: String,
    pub verdict: Result<()>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, verdict: Ok(()) }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialise");
    s.push('\n');
    s
}

fn format_or(cli: &Cli, default: Format) -> Format {
    cli.format.unwrap_or(default)
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Bounds(cmd) => bounds(cli, cmd),
        Command::Tables(TablesCmd::Reproduce(a)) => tables(cli, a),
        Command::Verify(cmd) => verify(cli, cmd),
        Command::Sieve(a) => {
            let xs = parse_checkpoints(&a.checkpoints)?;
            let rows = mertens_checkpoints(a.limit, &xs, &a.qk)?;
            let text = match format_or(cli, Format::Csv) {
                Format::Csv => checkpoints_csv(&rows, &a.qk),
                Format::Json => to_json(&json!({ "limit": a.limit, "checkpoints": rows })),
            };
            Ok(Outcome::ok(text))
        }
        Command::Perron(a) => {
            let r = numeric_perron_mertens(a.x, a.quad_tol)?;
            let text = match format_or(cli, Format::Csv) {
                Format::Csv => format!("{}\n{}\n", PerronReport::CSV_HEADER, r.csv_row()),
                Format::Json => to_json(&r),
            };
            let verdict = if r.residual <= r.bound {
                Ok(())
            } else {
                Err(Error::Assertion(format!("Perron residual {} exceeds {}", r.residual, r.bound)))
            };
            Ok(Outcome { text, verdict })
        }
    }
}

fn log_x0(x0: &X0Args, kind: Kind) -> Result<f64> {
    match (x0.log_x0, x0.u0) {
        (Some(l), _) => Ok(l),
        (None, Some(u0)) => rh_bounds::table_optimizer::log_x0_from_u0(u0, kind),
        (None, None) => unreachable!("clap requires one of --log-x0 and --u0"),
    }
}

/// Largest distance at which a typed t0 is read as 2γ₁ cut to four decimals.
const TWO_GAMMA1_SNAP: f64 = 1e-4;

fn snap_t0(t0: f64) -> f64 {
    let g = two_gamma1();
    if (t0 - g).abs() <= TWO_GAMMA1_SNAP {
        g
    } else {
        t0
    }
}

fn bounds(cli: &Cli, cmd: &BoundsCmd) -> Result<Outcome> {
    let value = match cmd {
        BoundsCmd::Eval(a) => {
            let t0 = snap_t0(a.t0);
            json!({
                "t0": t0,
                "sigma": a.sigma,
                "u": a.u,
                "lambda": lambda_of(t0)?,
                "omega": omega_small(t0, a.u)?,
                "omega1": omega1(a.sigma, t0, a.u)?,
                "omega2": omega2(t0, a.u)?,
            })
        }
        BoundsCmd::Mertens(MertensArgs { sigma0, t0, x0 }) => {
            let t0 = &snap_t0(*t0);
            let lx = log_x0(x0, Kind::Mertens)?;
            let p = mertens_params(*sigma0, *t0, lx)?;
            json!({
                "sigma0": sigma0,
                "t0": t0,
                "log_x0": lx,
                "u": (ln_three_e_half() + 0.5 * lx).ln(),
                "omega01": p.omega01,
                "alpha": p.alpha,
                "n1": p.n1,
            })
        }
        BoundsCmd::Kfree(KfreeArgs { sigma0, t1, t2, k, x0 }) => {
            let lx = log_x0(x0, Kind::Kfree)?;
            let t2 = t2.map_or_else(two_gamma1, snap_t0);
            let p = kfree_params(*sigma0, *t1, t2, lx, *k)?;
            json!({
                "sigma0": sigma0,
                "t1": t1,
                "t2": t2,
                "k": k,
                "log_x0": lx,
                "omega01": p.omega01,
                "alpha": p.alpha,
                "n1": p.n1,
                "omega02": p.omega02,
                "phi": p.phi,
                "n2": p.n2,
                "exponent": p.exponent,
            })
        }
    };
    let text = match format_or(cli, Format::Json) {
        Format::Json => to_json(&value),
        Format::Csv => {
            let obj = value.as_object().expect("bounds output is an object");
            let header: Vec<&str> = obj.keys().map(String::as_str).collect();
            let row: Vec<String> = obj.values().map(|v| v.to_string()).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    };
    Ok(Outcome::ok(text))
}

fn tables(cli: &Cli, a: &ReproduceArgs) -> Result<Outcome> {
    let kind = match a.which {
        Which::Mertens => Kind::Mertens,
        Which::Kfree => Kind::Kfree,
    };
    let targets = a.targets.clone().unwrap_or_else(|| reference_targets(kind));
    let rows = reproduce(kind, &targets)?;
    let format = format_or(cli, Format::Csv);
    let text = if a.publish {
        let published = publish_table1(&rows);
        match format {
            Format::Csv => published_csv(&published),
            Format::Json => to_json(&json!({ "kind": kind, "rows": published })),
        }
    } else {
        match format {
            Format::Csv => rows_csv(&rows),
            Format::Json => to_json(&json!({ "kind": kind, "rows": rows })),
        }
    };
    Ok(Outcome::ok(text))
}

fn zeros(arg: &ZerosArg) -> Result<ZeroTable> {
    match &arg.zeros {
        Some(path) => ZeroTable::load(path),
        None => Ok(ZeroTable::bundled()),
    }
}

/// Parses `0,5,10..20` into strip indices (ranges inclusive).
fn parse_strips(list: &str) -> Result<Vec<usize>> {
    let bad = |m: String| Error::Parse { line: 1, message: format!("strip list {list:?}: {m}") };
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(format!("{s:?} is not an index")));
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad(format!("empty range {part}")));
            }
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    if out.is_empty() {
        return Err(bad("no strips given".into()));
    }
    Ok(out)
}

fn verify(cli: &Cli, cmd: &VerifyCmd) -> Result<Outcome> {
    let format = format_or(cli, Format::Csv);
    match cmd {
        VerifyCmd::RecipLemma(a) => {
            let z = zeros(&a.zeros)?;
            let (reports, full) = match &a.strips {
                Some(list) => {
                    let strips = parse_strips(list)?;
                    let full = strips.len() == STRIP_COUNT + 1;
                    (scan_recip_strips(&z, &strips, a.points_per_edge, a.refine_threshold)?, full)
                }
                None => (scan_recip_lemma(&z, a.points_per_edge, a.refine_threshold)?, true),
            };
            let verdict = check_recip_reports(&reports, full);
            let text = match format {
                Format::Csv => scan_csv(&reports),
                Format::Json => {
                    let strips_only: Vec<_> = reports
                        .iter()
                        .filter(|r| r.segment != rh_bounds::zeta_numerics::Segment::Strip(0))
                        .cloned()
                        .collect();
                    to_json(&json!({
                        "zeros_digest": z.source_digest(),
                        "points_per_edge": a.points_per_edge,
                        "refine_threshold": a.refine_threshold,
                        "passed": verdict.is_ok(),
                        "global_max": global_max(&strips_only),
                        "reports": reports,
                    }))
                }
            };
            Ok(Outcome { text, verdict })
        }
        VerifyCmd::SupLemma(a) => {
            let z = zeros(&a.zeros)?;
            let scan = scan_sup_lemma(&z, a.points_per_edge)?;
            let verdict = scan.check();
            let text = match format {
                Format::Csv => scan_csv(&scan.reports()),
                Format::Json => to_json(&json!({
                    "zeros_digest": z.source_digest(),
                    "points_per_edge": a.points_per_edge,
                    "passed": verdict.is_ok(),
                    "critical_line": scan.critical_line,
                    "three_quarter_line": scan.three_quarter_line,
                    "rest": scan.rest,
                })),
            };
            Ok(Outcome { text, verdict })
        }
        VerifyCmd::LogzetaIdentity(a) => {
            let z = zeros(&a.zeros)?;
            let c = logzeta_via_zero_counts(Complex64::new(a.sigma, a.t), &z, a.u_max, a.t0.unwrap_or(a.t))?;
            let text = match format {
                Format::Csv => format!("{}\n{}\n", LogZetaCheck::CSV_HEADER, c.csv_row()),
                Format::Json => to_json(&c),
            };
            let verdict = if c.holds {
                Ok(())
            } else {
                Err(Error::Assertion(format!(
                    "|lhs − rhs| = {} exceeds R1 + tail = {}",
                    (c.lhs - c.rhs).abs(),
                    c.r1 + c.tail_cap
                )))
            };
            Ok(Outcome { text, verdict })
        }
    }
}
