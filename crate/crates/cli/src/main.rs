//! Command-line front end: compute bound constants, evaluate solutions on
//! polar grids, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 quadrature accuracy warning escalated by --strict.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use bvpdn_core::{bounds, verify, BoundParams, ProblemData, QuadConfig, Solver, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(
    name = "bvpdn",
    version,
    about = "Disk Dirichlet-Neumann solver: solution evaluation, bound constants, verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct ParamArgs {
    /// Sup norm of the harmonic extension of the Dirichlet data.
    #[arg(long, default_value_t = 0.0)]
    l1: f64,
    /// Sup norm of the Neumann trace.
    #[arg(long, default_value_t = 0.0)]
    l2: f64,
    /// Sup norm of the source.
    #[arg(long, default_value_t = 0.0)]
    l3: f64,
    /// Modulus of the normalization constant.
    #[arg(long = "c-abs", default_value_t = 0.0)]
    c_abs: f64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print every bound coefficient and the univalence radius for the
    /// given sup-norm parameters.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate the solution of a problem file on a polar grid.
    Eval {
        /// Problem specification file (JSON).
        #[arg(long)]
        problem: std::path::PathBuf,
        /// Radii and angles per grid direction (grid x grid points).
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Largest grid radius, strictly inside the disk.
        #[arg(long, default_value_t = 0.9)]
        rmax: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Override the adaptive quadrature tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Exit with code 3 when any quadrature accuracy warning fires.
        #[arg(long)]
        strict: bool,
    },
    /// Run a verification suite.
    Verify {
        /// One of: oracle, pde, thm1, thm2, claims, lemmas, coeff, landau, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Override the adaptive quadrature tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compute only the univalence radius and covered-disk bound.
    Landau {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn emit(out: &Option<std::path::PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            std::io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))?;
            Ok(())
        }
    }
}

fn f17(v: f64) -> String {
    format!("{v:.16e}")
}

fn params_of(args: &ParamArgs) -> Result<BoundParams, String> {
    BoundParams::new(args.l1, args.l2, args.l3, args.c_abs).map_err(|e| e.to_string())
}

fn cmd_bounds(params: &ParamArgs, format: Format, out: &Option<std::path::PathBuf>) -> Result<(), String> {
    let p = params_of(params)?;
    let ts = [0.0, 0.25, 0.5, 0.75, 1.0];
    let sample = |f: &dyn Fn(f64) -> bvpdn_core::Result<f64>| -> Result<Vec<(f64, f64)>, String> {
        ts.iter()
            .map(|&t| f(t).map(|v| (t, v)).map_err(|e| e.to_string()))
            .collect()
    };
    let n1 = sample(&bounds::n1)?;
    let n2 = sample(&bounds::n2)?;
    let n3 = sample(&bounds::n3)?;
    let n4 = sample(&bounds::n4)?;
    let landau = bounds::landau_radius(&p).map_err(|e| e.to_string())?;
    let content = match format {
        Format::Json => {
            let coeff_table = |v: &[(f64, f64)]| {
                serde_json::Value::Array(
                    v.iter()
                        .map(|&(t, x)| serde_json::json!([t, x]))
                        .collect(),
                )
            };
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "L1": p.l1, "L2": p.l2, "L3": p.l3, "c_abs": p.c_abs,
                "N1": coeff_table(&n1), "N2": coeff_table(&n2),
                "N3": coeff_table(&n3), "N4": coeff_table(&n4),
                "M1": bounds::m1(), "M2": bounds::m2(),
                "L4": landau.l4, "L5": landau.l5,
                "r0": landau.r0, "R0_lower": landau.r0_image_lower,
            }))
            .expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("name,t,value\n");
            for (name, table) in [("N1", &n1), ("N2", &n2), ("N3", &n3), ("N4", &n4)] {
                for &(t, v) in table.iter() {
                    s.push_str(&format!("{name},{t},{}\n", f17(v)));
                }
            }
            for (name, v) in [
                ("M1", bounds::m1()),
                ("M2", bounds::m2()),
                ("L4", landau.l4),
                ("L5", landau.l5),
                ("r0", landau.r0),
                ("R0_lower", landau.r0_image_lower),
            ] {
                s.push_str(&format!("{name},,{}\n", f17(v)));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (name, table) in [("N1", &n1), ("N2", &n2), ("N3", &n3), ("N4", &n4)] {
                for &(t, v) in table.iter() {
                    s.push_str(&format!("{name}({t}) = {}\n", f17(v)));
                }
            }
            s.push_str(&format!("M1 = {}\n", f17(bounds::m1())));
            s.push_str(&format!("M2 = {}\n", f17(bounds::m2())));
            s.push_str(&format!("L4 = {}\n", f17(landau.l4)));
            s.push_str(&format!("L5 = {}\n", f17(landau.l5)));
            s.push_str(&format!("r0 = {}\n", f17(landau.r0)));
            s.push_str(&format!("R0_lower = {}\n", f17(landau.r0_image_lower)));
            s
        }
    };
    emit(out, &content)
}

fn cmd_landau(params: &ParamArgs, format: Format, out: &Option<std::path::PathBuf>) -> Result<(), String> {
    let p = params_of(params)?;
    let landau = bounds::landau_radius(&p).map_err(|e| e.to_string())?;
    let content = match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&landau).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "r0,R0_lower,L4,L5,iterations\n{},{},{},{},{}\n",
            f17(landau.r0),
            f17(landau.r0_image_lower),
            f17(landau.l4),
            f17(landau.l5),
            landau.iterations
        ),
        Format::Text => format!(
            "r0 = {}\nR0_lower = {}\nL4 = {}\nL5 = {}\nbracket = [{}, {}]\niterations = {}\n",
            f17(landau.r0),
            f17(landau.r0_image_lower),
            f17(landau.l4),
            f17(landau.l5),
            f17(landau.bracket.0),
            f17(landau.bracket.1),
            landau.iterations
        ),
    };
    emit(out, &content)
}

struct EvalOutcome {
    content: String,
    any_warning: bool,
}

fn cmd_eval(
    problem: &std::path::Path,
    grid: usize,
    rmax: f64,
    format: Format,
    tol: Option<f64>,
) -> Result<EvalOutcome, String> {
    let text = std::fs::read_to_string(problem)
        .map_err(|e| format!("cannot read {}: {e}", problem.display()))?;
    let prob = ProblemData::from_json(&text).map_err(|e| e.to_string())?;
    if grid == 0 {
        return Err("grid must be positive".into());
    }
    if !(rmax > 0.0 && rmax < 1.0) {
        return Err(format!("rmax must lie in (0, 1), got {rmax}"));
    }
    let mut config = QuadConfig::default();
    if let Some(t) = tol {
        config.adaptive_tol = t;
    }
    let solver = Solver::new(prob, config).map_err(|e| e.to_string())?;
    let mut points = Vec::with_capacity(grid * grid);
    for i in 1..=grid {
        let r = rmax * i as f64 / grid as f64;
        for j in 0..grid {
            let t = std::f64::consts::TAU * j as f64 / grid as f64;
            points.push(Complex64::from_polar(r, t));
        }
    }
    use rayon::prelude::*;
    let rows: Vec<bvpdn_core::PointEval> = points
        .par_iter()
        .map(|&z| solver.eval_point(z))
        .collect::<bvpdn_core::Result<_>>()
        .map_err(|e| e.to_string())?;
    let any_warning = rows.iter().any(|r| r.accuracy_warning);
    let content = match format {
        Format::Csv => {
            let mut s =
                String::from("re_z,im_z,re_w,im_w,abs_w,re_wz,im_wz,re_wzbar,im_wzbar\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    f17(r.z.re),
                    f17(r.z.im),
                    f17(r.w.re),
                    f17(r.w.im),
                    f17(r.w.norm()),
                    f17(r.wz.re),
                    f17(r.wz.im),
                    f17(r.wzbar.re),
                    f17(r.wzbar.im)
                ));
            }
            s
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "re_z": r.z.re, "im_z": r.z.im,
                        "re_w": r.w.re, "im_w": r.w.im, "abs_w": r.w.norm(),
                        "re_wz": r.wz.re, "im_wz": r.wz.im,
                        "re_wzbar": r.wzbar.re, "im_wzbar": r.wzbar.im,
                        "accuracy_warning": r.accuracy_warning,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&arr).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>24} {:>24} {:>24} {:>24}\n",
                "z", "w", "w_z", "w_zbar"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:>24} {:>24} {:>24} {:>24}\n",
                    format!("{:.6}", r.z),
                    format!("{:.6}", r.w),
                    format!("{:.6}", r.wz),
                    format!("{:.6}", r.wzbar)
                ));
            }
            s
        }
    };
    Ok(EvalOutcome {
        content,
        any_warning,
    })
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    format: Format,
    tol: Option<f64>,
) -> Result<(String, bool), String> {
    let suite: Suite = suite.parse().map_err(|e: bvpdn_core::Error| e.to_string())?;
    let mut config = QuadConfig::default();
    if let Some(t) = tol {
        config.adaptive_tol = t;
    }
    let report = verify::run_suite(suite, seed, &config).map_err(|e| e.to_string())?;
    let content = match format {
        Format::Json => report.to_json_string(),
        Format::Text => report.to_text_table(),
        Format::Csv => {
            let mut s = String::from("name,points_tested,worst_slack,passed\n");
            for r in &report.records {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    r.name,
                    r.points_tested,
                    f17(r.worst_slack),
                    r.passed
                ));
            }
            s
        }
    };
    Ok((content, report.all_passed()))
}

fn init_threads() {
    if let Ok(v) = std::env::var("BVPDN_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let usage_error = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    };
    match cli.cmd {
        Cmd::Bounds {
            params,
            format,
            out,
        } => match cmd_bounds(&params, format, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => usage_error(e),
        },
        Cmd::Landau {
            params,
            format,
            out,
        } => match cmd_landau(&params, format, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => usage_error(e),
        },
        Cmd::Eval {
            problem,
            grid,
            rmax,
            format,
            out,
            tol,
            strict,
        } => match cmd_eval(&problem, grid, rmax, format, tol) {
            Ok(outcome) => {
                if let Err(e) = emit(&out, &outcome.content) {
                    return usage_error(e);
                }
                if strict && outcome.any_warning {
                    eprintln!("error: quadrature accuracy warning under --strict");
                    ExitCode::from(3)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => usage_error(e),
        },
        Cmd::Verify {
            suite,
            seed,
            format,
            out,
            tol,
        } => match cmd_verify(&suite, seed, format, tol) {
            Ok((content, all_passed)) => {
                if let Err(e) = emit(&out, &content) {
                    return usage_error(e);
                }
                if all_passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => usage_error(e),
        },
    }
}
