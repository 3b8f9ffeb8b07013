//! `blaschke`: construct, verify and scan finite Blaschke products.
//!
//! Exit codes: 0 ok, 1 bad or infeasible input, 2 numeric failure,
//! 3 verification failure.

mod suites;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blaschke_core::extremal::{classify_extremal, extremal_product};
use blaschke_core::io::{product_from_json, product_to_json, profile_csv, zeros_csv, ProductJson};
use blaschke_core::prescribe::construct;
use blaschke_core::rational::{format_rational, parse_rational, to_f64};
use blaschke_core::{BlaschkeProduct, Error, RationalPoly, Tolerances, Verdict};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::suites::Suite;

#[derive(Parser, Debug)]
#[command(name = "blaschke", version, about = "Derivative extrema of finite Blaschke products")]
struct Cli {
    /// Points in the circle scan (at least 4096)
    #[arg(long, global = true, default_value_t = 8192)]
    samples: usize,
    /// Output format for the main report
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file, or directory for `extremal`
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the extremal product of degree n with offset nu
    Extremal {
        #[arg(long)]
        n: usize,
        /// Rational `p/q` or decimal, greater than -1
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Build a product of degree n with M(B) = M and m(B) = m
    Prescribe {
        #[arg(long)]
        n: usize,
        #[arg(long = "m", allow_hyphen_values = true)]
        min: String,
        #[arg(long = "M", allow_hyphen_values = true)]
        max: String,
    },
    /// Derivative profile of a product read from Product JSON
    Scan { product: PathBuf },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Solutions of B(z) = e^{i theta}, or z B(z) = e^{i theta} with --lifted
    Preimages {
        product: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda_arg: f64,
        #[arg(long)]
        lifted: bool,
    },
    /// Extremality and circle-map classification of a product
    Classify { product: PathBuf },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

struct Config {
    samples: usize,
    format: Format,
    out: Option<PathBuf>,
    seed: u64,
    tol: Tolerances,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.samples < blaschke_core::blaschke::MIN_SAMPLES {
        return Err(Failure::input(format!(
            "--samples must be at least {}, got {}",
            blaschke_core::blaschke::MIN_SAMPLES,
            cli.samples
        )));
    }
    let cfg = Config {
        samples: cli.samples,
        format: cli.format,
        out: cli.out,
        seed: cli.seed,
        tol: Tolerances::from_env()?,
    };
    match cli.command {
        Command::Extremal { n, nu } => cmd_extremal(&cfg, n, &nu),
        Command::Prescribe { n, min, max } => cmd_prescribe(&cfg, n, &min, &max),
        Command::Scan { product } => cmd_scan(&cfg, &product),
        Command::Verify { suite } => cmd_verify(&cfg, suite),
        Command::Preimages {
            product,
            lambda_arg,
            lifted,
        } => cmd_preimages(&cfg, &product, lambda_arg, lifted),
        Command::Classify { product } => cmd_classify(&cfg, &product),
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| Failure::input(format!("cannot write {}: {e}", path.display()));
    let mut file = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    file.write_all(contents.as_bytes()).map_err(fail)?;
    file.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn read_product(path: &Path) -> Result<BlaschkeProduct, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(product_from_json(&text)?)
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn coeff_strings(p: &RationalPoly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn parse_real(text: &str, name: &str) -> Result<f64, Failure> {
    parse_rational(text)
        .map(|r| to_f64(&r))
        .map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn cmd_extremal(cfg: &Config, n: usize, nu: &str) -> Result<(), Failure> {
    let nu = parse_rational(nu)?;
    let ep = extremal_product(n, &nu)?;
    let ext = ep.product.extrema(cfg.samples)?;
    let profile = profile_csv(&ep.product, cfg.samples);

    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
        write_atomic(&dir.join("product.json"), &(product_to_json(&ep.product) + "\n"))?;
        write_atomic(&dir.join("spec.json"), &pretty(&ep.spec.to_json()))?;
        write_atomic(&dir.join("zeros.csv"), &zeros_csv(&ep.product))?;
        write_atomic(&dir.join("profile.csv"), &profile)?;
    }
    match cfg.format {
        Format::Json => {
            let report = json!({
                "spec": ep.spec.to_json(),
                "numerator": coeff_strings(&ep.numerator),
                "denominator": coeff_strings(&ep.denominator()),
                "extrema": {
                    "M": ext.max,
                    "m": ext.min,
                    "argmax": ext.argmax,
                    "argmin": ext.argmin,
                    "mean": ext.mean,
                    "samples": ext.samples,
                },
            });
            print!("{}", pretty(&report));
        }
        Format::Csv => print!("{profile}"),
    }
    Ok(())
}

fn cmd_prescribe(cfg: &Config, n: usize, min: &str, max: &str) -> Result<(), Failure> {
    let min = parse_real(min, "--m")?;
    let max = parse_real(max, "--M")?;
    let c = construct(n, min, max)?;
    if let Some(path) = &cfg.out {
        write_atomic(path, &(product_to_json(&c.product) + "\n"))?;
    }
    match cfg.format {
        Format::Json => {
            let mut report = json!({
                "n": n,
                "target": { "M": max, "m": min },
                "case": c.case.number(),
                "achieved": { "M": c.achieved.max, "m": c.achieved.min },
                "product": ProductJson::from(&c.product),
            });
            if let Some(p) = &c.numerator {
                report["numerator"] = json!(coeff_strings(p));
                report["denominator"] = json!(coeff_strings(&p.reciprocal(n).expect("numerator has degree n")));
            }
            if let Some(h) = &c.homotopy {
                report["homotopy"] = json!({ "t": h.t, "lambda": h.lambda, "lambda_cap": h.lambda_cap });
            }
            print!("{}", pretty(&report));
        }
        Format::Csv => print!("{}", zeros_csv(&c.product)),
    }
    Ok(())
}

fn cmd_scan(cfg: &Config, path: &Path) -> Result<(), Failure> {
    let b = read_product(path)?;
    let ext = b.extrema(cfg.samples)?;
    let profile = profile_csv(&b, cfg.samples);
    let summary = format!("M,m,mean\n{:?},{:?},{:?}\n", ext.max, ext.min, ext.mean);
    match &cfg.out {
        Some(out) => {
            write_atomic(out, &profile)?;
            print!("{summary}");
        }
        None => {
            print!("{profile}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &Config, suite: Suite) -> Result<(), Failure> {
    let checks = suites::run(suite, cfg.seed, &cfg.tol);
    print!("{}", suites::table(&checks));
    if let Some(out) = &cfg.out {
        let report = match cfg.format {
            Format::Json => pretty(&json!(checks
                .iter()
                .map(|c| json!({ "suite": c.suite, "check": c.name, "passed": c.passed, "detail": c.detail }))
                .collect::<Vec<_>>())),
            Format::Csv => {
                let mut s = String::from("suite,check,status,detail\n");
                for c in &checks {
                    writeln!(s, "{},{},{},\"{}\"", c.suite, c.name, c.status(), c.detail.replace('"', "'")).unwrap();
                }
                s
            }
        };
        write_atomic(out, &report)?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 3,
            message: format!("{} of {} checks failed: {}", failed.len(), checks.len(), failed.join("; ")),
        })
    }
}

fn cmd_preimages(cfg: &Config, path: &Path, theta: f64, lifted: bool) -> Result<(), Failure> {
    let b = read_product(path)?;
    let lambda = Complex64::from_polar(1.0, theta);
    let weighted = !lifted && b.degree() >= 2 && b.eval(Complex64::new(0.0, 0.0)).norm() <= 1e-12;
    let set = if weighted {
        b.residue_weights(lambda, &cfg.tol)?
    } else {
        b.preimages(lambda, lifted, &cfg.tol)?
    };
    let values: Vec<f64> = set.points.iter().map(|&z| b.deriv_modulus(z)).collect();
    let report = match cfg.format {
        Format::Json => {
            let points: Vec<Value> = set
                .points
                .iter()
                .zip(&values)
                .enumerate()
                .map(|(j, (z, v))| {
                    let mut p = json!({ "re": z.re, "im": z.im, "deriv_modulus": v });
                    if let Some(w) = &set.weights {
                        p["weight"] = json!(w[j]);
                    }
                    p
                })
                .collect();
            let mut report = json!({
                "lambda": { "re": lambda.re, "im": lambda.im },
                "lifted": lifted,
                "points": points,
            });
            if lifted {
                report["residue_sum"] = json!(values.iter().map(|v| 1.0 / (v + 1.0)).sum::<f64>());
            }
            if let Some(w) = &set.weights {
                report["weight_sum"] = json!(w.iter().sum::<f64>());
            }
            pretty(&report)
        }
        Format::Csv => {
            let mut s = String::from("re,im,deriv_modulus\n");
            for (z, v) in set.points.iter().zip(&values) {
                writeln!(s, "{:?},{:?},{v:?}", z.re, z.im).unwrap();
            }
            s
        }
    };
    emit(cfg, &report)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Boundary => "boundary",
    }
}

fn cmd_classify(cfg: &Config, path: &Path) -> Result<(), Failure> {
    let b = read_product(path)?;
    let maps = b.classify_circle_maps(&cfg.tol)?;
    let ext = classify_extremal(&b, 1e-8)?;
    let report = match cfg.format {
        Format::Json => pretty(&json!({
            "degree": maps.degree,
            "M": maps.max,
            "m": maps.min,
            "extremal": {
                "is_extremal": ext.is_extremal,
                "kind": ext.kind.map(|k| k.name()),
                "nu": ext.nu,
                "first_gap": ext.first_gap,
                "second_gap": ext.second_gap,
            },
            "lower": {
                "map": "B/z^(n-1)",
                "inequality": verdict_name(maps.lower_homeomorphism),
                "homeomorphism": maps.lower_is_homeomorphism(),
                "diffeomorphism": maps.lower_is_diffeomorphism(),
            },
            "upper": {
                "map": "z^(n+1)/B",
                "inequality": verdict_name(maps.upper_homeomorphism),
                "homeomorphism": maps.upper_is_homeomorphism(),
                "diffeomorphism": maps.upper_is_diffeomorphism(),
            },
        })),
        Format::Csv => {
            let mut s = String::from("property,value\n");
            let kind = ext.kind.map(|k| k.name()).unwrap_or("none");
            let rows: [(&str, String); 9] = [
                ("degree", maps.degree.to_string()),
                ("M", format!("{:?}", maps.max)),
                ("m", format!("{:?}", maps.min)),
                ("extremal", ext.is_extremal.to_string()),
                ("kind", kind.to_string()),
                ("lower_homeomorphism", maps.lower_is_homeomorphism().to_string()),
                ("lower_diffeomorphism", maps.lower_is_diffeomorphism().to_string()),
                ("upper_homeomorphism", maps.upper_is_homeomorphism().to_string()),
                ("upper_diffeomorphism", maps.upper_is_diffeomorphism().to_string()),
            ];
            for (k, v) in rows {
                writeln!(s, "{k},{v}").unwrap();
            }
            s
        }
    };
    emit(cfg, &report)
}

fn emit(cfg: &Config, report: &str) -> Result<(), Failure> {
    match &cfg.out {
        Some(out) => write_atomic(out, report),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}
