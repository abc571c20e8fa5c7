use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use chazy_core::algebra::{MpComplex, Scalar};
use chazy_core::analytic::{
    integrate_path, monodromy_probe, mu_equation_residual, sn_half_period_check, xi_formal_solution, ComplexPath,
};
use chazy_core::catalog::{artifacts, build_equation, CatalogError, EquationId};
use chazy_core::classifier::{classify_all, CritWitness, EigenData, Status};
use chazy_core::verifier::{full_report, Mode, Report, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "chazy", version, about = "Chazy's quasihomogeneous third-order equations: checks and classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recover the list of equations from the eigenvalue criterion.
    Classify {
        #[arg(long)]
        json: bool,
    },
    /// Run the exact and numeric checks of the catalog.
    Verify(VerifyArgs),
    /// Formal-series solutions of the Chazy XI fiber equation.
    XiObstruction {
        /// Range A..B (inclusive) or a single k.
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 60)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Continue a solution of one equation along a polyline in complex time.
    Integrate(IntegrateArgs),
    /// Half-period relations of sn(·, i) at random points.
    SnCheck {
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, env = "CHAZY_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "CHAZY_PRECISION", default_value_t = 128)]
        precision: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// List the catalog.
    Catalog {
        /// Print every artifact in canonical form.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Equation id (repeatable), e.g. IX, Xplus, XI:5, XII:inf. Default: all.
    #[arg(long = "equation")]
    equations: Vec<String>,
    #[arg(long, conflicts_with = "numeric_only")]
    exact_only: bool,
    #[arg(long)]
    numeric_only: bool,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, env = "CHAZY_PRECISION", default_value_t = 128)]
    precision: usize,
    #[arg(long, env = "CHAZY_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    #[arg(long)]
    equation: String,
    /// Initial (x, y, z) = (φ, φ', φ''), comma separated, e.g. "1,0.5,0" or "1+2i,0,0".
    #[arg(long)]
    init: String,
    /// Vertices after the start t = 0, separated by ';', e.g. "1;1+i;i".
    #[arg(long)]
    path: String,
    /// Close the path back to 0 and report the monodromy residual.
    #[arg(long)]
    closed: bool,
    #[arg(long, default_value_t = 1e-15)]
    tol: f64,
    #[arg(long, env = "CHAZY_PRECISION", default_value_t = 128)]
    precision: usize,
    #[arg(long)]
    json: bool,
}

/// Errors that map to exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_equation(s: &str) -> Result<EquationId> {
    let id = EquationId::from_str(s).map_err(|e| usage(e.to_string()))?;
    id.validate().map_err(|e: CatalogError| usage(e.to_string()))?;
    Ok(id)
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim().replace(' ', "");
    Complex64::from_str(&t).map_err(|_| usage(format!("cannot parse `{s}` as a complex number")))
}

fn parse_k_range(s: &str) -> Result<Vec<i64>> {
    let bad = || usage(format!("--k expects A..B or a single integer, got `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let k: i64 = s.trim().parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if a < 1 || b < a {
        return Err(usage(format!("--k range must satisfy 1 ≤ A ≤ B, got `{s}`")));
    }
    Ok((a..=b).collect())
}

fn matrix_rows(w: &CritWitness) -> Vec<String> {
    w.matrix
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|c| c.to_surd_string()).collect::<Vec<_>>().join(", ")))
        .collect()
}

fn witness_text(out: &mut String, w: &CritWitness, indent: &str) {
    let pt: Vec<String> = w.point.iter().map(|c| c.to_surd_string()).collect();
    let ev: Vec<String> = w.report.eigenvalues.iter().map(|c| c.to_surd_string()).collect();
    let _ = writeln!(
        out,
        "{indent}L + ({})V at ({}): eigenvalues {}, {}",
        w.c.to_surd_string(),
        pt.join(", "),
        ev.join(", "),
        if w.report.diagonalizable { "diagonalizable" } else { "not diagonalizable" }
    );
    for r in matrix_rows(w) {
        let _ = writeln!(out, "{indent}  {r}");
    }
}

fn classify_cmd(json_out: bool) -> Result<ExitCode> {
    let outcomes = classify_all()?;
    let mut out = String::new();
    if json_out {
        for o in &outcomes {
            let _ = writeln!(out, "{}", o.to_json());
        }
        print!("{out}");
        return Ok(ExitCode::SUCCESS);
    }
    let _ = writeln!(out, "{:<4} {:<28} {:<13} {:<12} equation", "case", "eigen data", "status", "match");
    for o in &outcomes {
        let data = match &o.eigen_data {
            EigenData::Finite(p) if p.is_empty() => "-".to_string(),
            d => d.to_string(),
        };
        let _ = writeln!(
            out,
            "{:<4} {:<28} {:<13} {:<12} {}",
            o.case.to_string(),
            data,
            o.status_name(),
            o.matched().unwrap_or_else(|| "-".into()),
            o.equation().unwrap_or_else(|| "-".into())
        );
        match &o.status {
            Status::Rejected { witnesses } => {
                for w in witnesses {
                    witness_text(&mut out, w, "     ");
                }
            }
            Status::Family {
                constraint, excluded, ..
            } => {
                let _ = writeln!(out, "     constraint: {constraint}");
                for e in excluded {
                    let _ = writeln!(out, "     excluded k = {}: {}", e.k, e.reason);
                    if let Some(eq) = e.coefficients.as_ref().map(chazy_core::classifier::equation_string) {
                        let _ = writeln!(out, "       {eq}");
                    }
                    for w in &e.witnesses {
                        witness_text(&mut out, w, "       ");
                    }
                }
            }
            Status::Inconclusive { note } => {
                let _ = writeln!(out, "     {note}");
            }
            Status::Accepted { .. } => {}
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn report_text(r: &Report) -> String {
    let c = &r.config;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "samples={} tol={:e} precision={} seed={} exact={} numeric={}",
        c.samples, c.tol, c.precision, c.seed, c.exact, c.numeric
    );
    for x in &r.results {
        let detail = match x.mode {
            Mode::Exact => match (&x.witness, x.passed) {
                (_, true) => "residual 0".to_string(),
                (Some(w), false) => format!("residual {w}"),
                (None, false) => "failed".to_string(),
            },
            Mode::Numeric => format!("max residual {:.3e}", x.residual.unwrap_or(f64::NAN)),
        };
        let note = x.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:<4} {:<11} {:<36} {:<7} {detail}{note}",
            if x.passed { "PASS" } else { "FAIL" },
            x.equation,
            x.check_id,
            if x.mode == Mode::Exact { "exact" } else { "numeric" }
        );
    }
    let s = &r.summary;
    let _ = writeln!(out, "{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
    out
}

fn verify_cmd(a: VerifyArgs) -> Result<ExitCode> {
    let selection = if a.equations.is_empty() {
        EquationId::all()
    } else {
        a.equations.iter().map(|s| parse_equation(s)).collect::<Result<Vec<_>>>()?
    };
    if a.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    if !(a.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    if a.precision < 53 {
        return Err(usage("--precision must be at least 53 bits"));
    }
    let cfg = VerifyConfig {
        samples: a.samples,
        tol: a.tol,
        precision: a.precision,
        seed: a.seed,
        exact: !a.numeric_only,
        numeric: !a.exact_only,
    };
    let report = full_report(&selection, &cfg)?;
    if a.json {
        print!("{}", report.to_json_lines());
    } else {
        print!("{}", report_text(&report));
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn xi_cmd(k: &str, order: usize, json_out: bool) -> Result<ExitCode> {
    let ks = parse_k_range(k)?;
    let mut ok = true;
    let mut out = String::new();
    for k in ks {
        let sol = xi_formal_solution(k, order);
        let residual_zero = mu_equation_residual(k, &sol.coeffs).iter().all(num_traits::Zero::is_zero);
        ok &= residual_zero;
        if json_out {
            let _ = writeln!(
                out,
                "{}",
                json!({
                    "k": k,
                    "order": sol.order,
                    "recursion_exact": residual_zero,
                    "obstruction": sol.obstruction.as_ref().map(|r| r.to_string()),
                })
            );
        } else {
            match &sol.obstruction {
                None => {
                    let _ = writeln!(
                        out,
                        "k = {k:>3}: formal solution to order {} ({})",
                        sol.order,
                        if residual_zero { "recursion exact" } else { "RECURSION RESIDUAL NONZERO" }
                    );
                }
                Some(r) => {
                    let _ = writeln!(out, "k = {k:>3}: obstructed at order {}, obstruction {r}", sol.order + 1);
                }
            }
        }
    }
    print!("{out}");
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn fmt_c(z: &MpComplex) -> String {
    let c = z.to_c64();
    format!("{:.15e}{:+.15e}i", c.re, c.im)
}

fn integrate_cmd(a: IntegrateArgs) -> Result<ExitCode> {
    let id = parse_equation(&a.equation)?;
    let eq = build_equation(id)?;
    let prec = a.precision;
    let init: Vec<MpComplex> = a
        .init
        .split(',')
        .map(|s| parse_complex(s).map(|c| MpComplex::from_f64_p(c.re, c.im, prec)))
        .collect::<Result<_>>()?;
    if init.len() != 3 {
        bail!(usage(format!("--init needs three components, got {}", init.len())));
    }
    let mut verts = vec![MpComplex::zero_p(prec)];
    for s in a.path.split(';').filter(|s| !s.trim().is_empty()) {
        let c = parse_complex(s)?;
        verts.push(MpComplex::from_f64_p(c.re, c.im, prec));
    }
    if a.closed {
        verts.push(MpComplex::zero_p(prec));
    }
    let path = ComplexPath::new(verts, a.closed).map_err(|e| usage(e.to_string()))?;
    let field = eq.field();
    let run = if a.closed {
        monodromy_probe(field, &init, &path, a.tol).map(|m| (None, Some(m)))
    } else {
        integrate_path(field, &init, &path, a.tol).map(|s| (Some(s), None))
    };
    let (sol, mono) = match run {
        Ok(v) => v,
        Err(e) => {
            if a.json {
                println!("{}", json!({"equation": id.to_string(), "error": e.to_string()}));
            } else {
                println!("{id}: {e}");
            }
            return Ok(ExitCode::from(1));
        }
    };
    if a.json {
        let v = match (&sol, &mono) {
            (Some(s), _) => json!({
                "equation": id.to_string(),
                "steps": s.steps,
                "end": s.end.iter().map(fmt_c).collect::<Vec<_>>(),
            }),
            (_, Some(m)) => json!({"equation": id.to_string(), "monodromy": m}),
            _ => unreachable!(),
        };
        println!("{v}");
    } else if let Some(s) = sol {
        println!("{id}: {} steps", s.steps);
        for (name, z) in ["phi", "phi'", "phi''"].iter().zip(&s.end) {
            println!("  {name:<6} = {}", fmt_c(z));
        }
    } else if let Some(m) = mono {
        println!("{id}: {} steps around the loop, residual {:.3e}: {}", m.steps, m.residual, m.verdict);
    }
    Ok(ExitCode::SUCCESS)
}

fn sn_cmd(points: usize, seed: u64, precision: usize, tol: f64, json_out: bool) -> Result<ExitCode> {
    if precision < 53 {
        return Err(usage("--precision must be at least 53 bits"));
    }
    let rep = sn_half_period_check(points, seed, precision)?;
    let pass = rep.max() < tol;
    if json_out {
        let mut v = serde_json::to_value(&rep)?;
        v["tolerance"] = tol.into();
        v["passed"] = pass.into();
        println!("{v}");
    } else {
        println!("sn(., i) at {} points (seed {}, {} bits)", rep.points, rep.seed, rep.precision);
        for (name, r) in [
            ("u(z+2K) = -u(z)", rep.shift_2k),
            ("u(z+iK') = -i/u(z)", rep.shift_ik),
            ("u(z+2K+iK') = i/u(z)", rep.shift_2k_ik),
            ("u(iz) = iu(z)", rep.rotation),
        ] {
            println!("  {} {name:<22} max residual {r:.3e}", if r < tol { "PASS" } else { "FAIL" });
        }
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn catalog_cmd(dump: bool) -> Result<ExitCode> {
    let mut out = String::new();
    for id in EquationId::all() {
        let eq = build_equation(id)?;
        let _ = writeln!(out, "{:<11} {}", id.to_string(), chazy_core::classifier::equation_string(&eq.coeffs));
        if dump {
            for a in &artifacts(id).items {
                let printed = if a.as_printed { " [as printed]" } else { "" };
                let _ = writeln!(out, "    {:?} {}{printed}", a.kind, a.name);
                for s in a.payload.canonical_strings() {
                    let _ = writeln!(out, "      {s}");
                }
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { json } => classify_cmd(json),
        Command::Verify(a) => verify_cmd(a),
        Command::XiObstruction { k, order, json } => xi_cmd(&k, order, json),
        Command::Integrate(a) => integrate_cmd(a),
        Command::SnCheck {
            points,
            seed,
            precision,
            tol,
            json,
        } => sn_cmd(points, seed, precision, tol, json),
        Command::Catalog { dump } => catalog_cmd(dump),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_k_range("5").unwrap(), vec![5]);
        assert_eq!(parse_k_range("2..=4").unwrap(), vec![2, 3, 4]);
        assert!(parse_k_range("3..1").is_err());
        assert!(parse_k_range("x").is_err());
    }

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex(" -0.5 ").unwrap(), Complex64::new(-0.5, 0.0));
        assert!(parse_complex("1+").is_err());
    }

    #[test]
    fn equation_ids_map_to_usage_errors() {
        for bad in ["XIII", "XII:6", "foo"] {
            let e = parse_equation(bad).unwrap_err();
            assert!(e.downcast_ref::<UsageError>().is_some(), "{bad}");
        }
        assert!(e_contains(parse_equation("XIII").unwrap_err(), "not in the family"));
        assert_eq!(parse_equation("XI:5").unwrap(), EquationId::XI(5));
    }

    fn e_contains(e: anyhow::Error, s: &str) -> bool {
        e.to_string().contains(s)
    }
}
