//! Command-line front end for `itroot-core`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use itroot_core::linear::{linear_iterate_closed, linear_root, FamilyKind};
use itroot_core::multipoly::verify_all;
use itroot_core::parse::{parse_element, parse_polynomial};
use itroot_core::quartic::{analyze, curve_point, on_c, phi, sqrt_all, sqrt_closed, triple_roots, QuarticCoeffs};
use itroot_core::solver::{residual, solve, SolveRequest};
use itroot_core::{
    normalize, ApproxComplex, Eisenstein, Error, Field, Mode, ParseError, Polynomial, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_OBSTRUCTION: i32 = 3;

/// Largest degree `iterate` will build.
const MAX_ITERATE_DEGREE: u64 = 1 << 12;

#[derive(Debug, Parser)]
#[command(name = "itroot", version, about = "Polynomial iterative roots over Q(w) or the complex numbers")]
pub struct Cli {
    /// Coefficient arithmetic.
    #[arg(long, global = true, default_value = "exact")]
    pub mode: Mode,
    /// Relative tolerance for the approximate mode.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Print a JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampling subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// n-fold composition of a polynomial with itself.
    Iterate {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        n: u32,
    },
    /// f(g(z)).
    Compose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Classify a quartic and list its quadratic square roots.
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        quartic: String,
    },
    /// Number of quadratic square roots, and the curve parameter if any.
    Classify {
        #[arg(allow_hyphen_values = true)]
        quartic: String,
    },
    /// The curve point with parameter beta and its three square roots.
    Curve {
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Roots of degree e and order r by coefficient matching.
    Solve {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "deg")]
        e: u32,
        #[arg(long = "order")]
        r: u32,
    },
    /// Linear roots of a*z + b.
    Linroot {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long = "order")]
        r: u32,
    },
    /// Conjugate to a monic polynomial by a scaling.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Run the symbolic identity checks, plus seeded random checks.
    Verify {
        /// Number of random instances per check.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(input: &str, e: ParseError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("{e}\n  {input}\n  {}^", " ".repeat(e.position)),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ExactRootUnavailable { .. }
            | Error::NotMonic(_)
            | Error::NotBijective
            | Error::LinearNotNormalizable(_) => EXIT_OBSTRUCTION,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a subcommand produced: text lines, a JSON record, and the exit
/// status to report after printing them.
struct Report {
    text: Vec<String>,
    record: Value,
    code: i32,
}

impl Report {
    fn ok(text: Vec<String>, record: Value) -> Self {
        Report {
            text,
            record,
            code: EXIT_OK,
        }
    }
}

fn poly<F: Field>(s: &str) -> Result<Polynomial<F>, Failure> {
    parse_polynomial(s).map_err(|e| Failure::parse(s, e))
}

fn element<F: Field>(s: &str) -> Result<F, Failure> {
    parse_element(s).map_err(|e| Failure::parse(s, e))
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

fn descending<F: Field>(p: &Polynomial<F>) -> Vec<String> {
    p.coeffs().iter().rev().map(F::to_string).collect()
}

fn iterate_cmd<F: Field>(s: &str, n: u32) -> Result<Report, Failure> {
    let f = poly::<F>(s)?;
    let degree = (f.degree() as u64).checked_pow(n);
    if f.degree() > 1 && degree.is_none_or(|d| d > MAX_ITERATE_DEGREE) {
        return Err(Failure {
            code: EXIT_INPUT,
            message: format!("iterate would exceed degree {MAX_ITERATE_DEGREE}"),
        });
    }
    let g = if f.degree() == 1 {
        linear_iterate_closed(&f.coeff(1), &f.coeff(0), n)
    } else {
        f.iterate(n)
    };
    Ok(Report::ok(
        vec![g.to_string()],
        json!({ "degree": g.degree(), "result": g.to_string() }),
    ))
}

fn compose_cmd<F: Field>(fs: &str, gs: &str) -> Result<Report, Failure> {
    let (f, g) = (poly::<F>(fs)?, poly::<F>(gs)?);
    if (f.degree() as u64) * (g.degree() as u64) > MAX_ITERATE_DEGREE {
        return Err(Failure {
            code: EXIT_INPUT,
            message: format!("composition would exceed degree {MAX_ITERATE_DEGREE}"),
        });
    }
    let h = f.compose(&g);
    Ok(Report::ok(
        vec![h.to_string()],
        json!({ "degree": h.degree(), "result": h.to_string() }),
    ))
}

fn sqrt_cmd<F: Field>(s: &str, tol: Tolerance, roots_required: bool) -> Result<Report, Failure> {
    let g = poly::<F>(s)?;
    let a = analyze(&g, tol)?;
    let c = &a.classification;
    let beta = c.on_curve.as_ref().map(|b| b.to_string());
    let residuals: Vec<f64> = a.roots.iter().map(|f| residual(f, 2, &g)).collect();
    let mut text = vec![format!("count: {}", c.count())];
    if *a.map.a() != F::one() {
        text.push(format!("normalized: {}", a.normalized.to_polynomial()));
        text.push(format!("scaling: z -> {}", a.map.as_polynomial()));
    }
    if let Some(b) = &beta {
        text.push(format!("on curve: beta = {b}"));
    }
    if c.uncertain {
        text.push("warning: a decision was within a factor 10 of the tolerance".into());
    }
    let record = if roots_required {
        if !a.roots.is_empty() {
            text.push("roots:".into());
        }
        text.extend(a.roots.iter().map(|f| format!("  {f}")));
        json!({
            "degree": g.degree(),
            "count": c.count(),
            "roots": strings(&a.roots),
            "root_coefficients": a.roots.iter().map(descending).collect::<Vec<_>>(),
            "residuals": residuals,
            "beta": beta,
            "uncertain": c.uncertain,
        })
    } else {
        json!({
            "degree": g.degree(),
            "count": c.count(),
            "beta": beta,
            "uncertain": c.uncertain,
        })
    };
    let code = if roots_required && a.roots.is_empty() {
        text.push(format!("obstruction: {} is not the second iterate of a quadratic", g));
        EXIT_OBSTRUCTION
    } else {
        EXIT_OK
    };
    Ok(Report { text, record, code })
}

fn curve_cmd<F: Field>(s: &str) -> Result<Report, Failure> {
    let beta = element::<F>(s)?;
    let g = curve_point(&beta).to_polynomial();
    let roots: Vec<Polynomial<F>> = triple_roots(&beta).iter().map(|r| r.to_polynomial()).collect();
    let residuals: Vec<f64> = roots.iter().map(|f| residual(f, 2, &g)).collect();
    let mut text = vec![format!("g = {g}"), "roots:".into()];
    text.extend(roots.iter().map(|f| format!("  {f}")));
    Ok(Report::ok(
        text,
        json!({
            "beta": beta.to_string(),
            "g": g.to_string(),
            "degree": 4,
            "count": roots.len(),
            "roots": strings(&roots),
            "residuals": residuals,
        }),
    ))
}

fn solve_cmd<F: Field>(s: &str, e: u32, r: u32, tol: Tolerance) -> Result<Report, Failure> {
    let g = poly::<F>(s)?;
    let res = solve(&SolveRequest { g: g.clone(), e, r, tol })?;
    let roots: Vec<Polynomial<F>> = res.roots.iter().map(|x| x.poly.clone()).collect();
    let mut text = vec![format!("count: {}", roots.len())];
    text.extend(
        res.roots
            .iter()
            .map(|x| format!("  {}  (residual {}, minimal order {})", x.poly, x.residual, x.minimal_order)),
    );
    for c in &res.free_intercept_slopes {
        text.push(format!("  {}+d  (any d)", Polynomial::linear(c.clone(), F::zero())));
    }
    if !res.complete {
        text.push("incomplete: some leading coefficients are not representable; try --mode approx".into());
    }
    let obstruction = res.obstruction.map(|o| o.to_string());
    if let Some(o) = &obstruction {
        text.push(format!("obstruction: {o}"));
    }
    let code = if roots.is_empty() && res.free_intercept_slopes.is_empty() {
        EXIT_OBSTRUCTION
    } else {
        EXIT_OK
    };
    let record = json!({
        "degree": g.degree(),
        "count": roots.len(),
        "roots": strings(&roots),
        "root_coefficients": roots.iter().map(descending).collect::<Vec<_>>(),
        "residuals": res.roots.iter().map(|x| x.residual).collect::<Vec<_>>(),
        "minimal_orders": res.roots.iter().map(|x| x.minimal_order).collect::<Vec<_>>(),
        "free_intercept_slopes": strings(&res.free_intercept_slopes),
        "complete": res.complete,
        "obstruction": obstruction,
    });
    Ok(Report { text, record, code })
}

fn linroot_cmd<F: Field>(a: &str, b: &str, r: u32, tol: Tolerance) -> Result<Report, Failure> {
    let (a, b) = (element::<F>(a)?, element::<F>(b)?);
    let fam = linear_root(&a, &b, r, tol)?;
    let roots: Vec<Polynomial<F>> = fam.roots.iter().map(|x| x.map.as_polynomial()).collect();
    let kind = match fam.kind() {
        FamilyKind::Finite => "finite",
        FamilyKind::Parametric => "parametric",
        FamilyKind::None => "none",
    };
    let mut text = vec![format!("kind: {kind}")];
    text.extend(fam.roots.iter().map(|x| format!("  {}  (minimal order {})", x.map.as_polynomial(), x.minimal_order)));
    for c in &fam.free_intercept_slopes {
        text.push(format!("  {}+d  (any d)", Polynomial::linear(c.clone(), F::zero())));
    }
    if !fam.complete {
        text.push("incomplete: some slopes are not representable; try --mode approx".into());
    }
    let code = if fam.kind() == FamilyKind::None {
        text.push(format!("obstruction: no linear root of order {r}"));
        EXIT_OBSTRUCTION
    } else {
        EXIT_OK
    };
    let record = json!({
        "degree": 1,
        "kind": kind,
        "count": roots.len(),
        "roots": strings(&roots),
        "minimal_orders": fam.roots.iter().map(|x| x.minimal_order).collect::<Vec<_>>(),
        "free_intercept_slopes": strings(&fam.free_intercept_slopes),
        "complete": fam.complete,
    });
    Ok(Report { text, record, code })
}

fn normalize_cmd<F: Field>(s: &str) -> Result<Report, Failure> {
    let g = poly::<F>(s)?;
    let (gn, map) = normalize(&g)?;
    Ok(Report::ok(
        vec![gn.to_string(), format!("scaling: z -> {}", map.as_polynomial())],
        json!({
            "degree": gn.degree(),
            "result": gn.to_string(),
            "map": { "a": map.a().to_string(), "b": map.b().to_string() },
        }),
    ))
}

/// Seeded exact checks: phi round trip, curve classification and solver
/// recovery of a random quadratic.
fn random_checks(samples: usize, seed: u64) -> Vec<(&'static str, bool)> {
    use itroot_core::sample;
    let exact = Tolerance::DEFAULT;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut round_trip = true;
    let mut curve = true;
    let mut solver = true;
    for _ in 0..samples {
        let (a1, a0) = (sample::rational(&mut rng, 1000), sample::rational(&mut rng, 1000));
        let g: QuarticCoeffs<Eisenstein> = phi(&a1, &a0);
        round_trip &= sqrt_closed(&g, exact).is_some_and(|r| r.a1 == a1 && r.a0 == a0);

        let (beta, g) = sample::curve_sample(&mut rng, 1000);
        let c = sqrt_all(&g, exact);
        curve &= c.count() == 3 && on_c(&g, exact) == Some(beta) && c.roots.iter().all(|r| r.square() == g);

        let f = sample::monic(&mut rng, 2, 10);
        solver &= solve(&SolveRequest::new(f.iterate(2), 2, 2)).is_ok_and(|res| res.roots.iter().any(|x| x.poly == f));
    }
    vec![
        ("random phi round trips", round_trip),
        ("random curve points have three roots", curve),
        ("solver recovers random quadratics", solver),
    ]
}

fn verify_cmd(samples: usize, seed: u64) -> Report {
    let mut checks = verify_all();
    if samples > 0 {
        checks.extend(random_checks(samples, seed));
    }
    let passed = checks.iter().all(|(_, ok)| *ok);
    let text = checks
        .iter()
        .map(|(name, ok)| format!("{}  {name}", if *ok { "ok  " } else { "FAIL" }))
        .collect();
    let record = json!({
        "checks": checks.iter().map(|(name, ok)| json!({ "name": name, "pass": ok })).collect::<Vec<_>>(),
        "samples": samples,
        "seed": seed,
        "passed": passed,
    });
    Report {
        text,
        record,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    }
}

fn dispatch<F: Field>(cli: &Cli, tol: Tolerance) -> Result<Report, Failure> {
    match &cli.command {
        Command::Iterate { poly, n } => iterate_cmd::<F>(poly, *n),
        Command::Compose { f, g } => compose_cmd::<F>(f, g),
        Command::Sqrt { quartic } => sqrt_cmd::<F>(quartic, tol, true),
        Command::Classify { quartic } => sqrt_cmd::<F>(quartic, tol, false),
        Command::Curve { beta } => curve_cmd::<F>(beta),
        Command::Solve { poly, e, r } => solve_cmd::<F>(poly, *e, *r, tol),
        Command::Linroot { a, b, r } => linroot_cmd::<F>(a, b, *r, tol),
        Command::Normalize { poly } => normalize_cmd::<F>(poly),
        Command::Verify { samples } => Ok(verify_cmd(*samples, cli.seed)),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        let _ = writeln!(err, "error: --tol must be a positive number");
        return EXIT_INPUT;
    }
    let tol = match cli.mode {
        Mode::Exact => Tolerance::DEFAULT,
        Mode::Approx => Tolerance::with_rel(cli.tol),
    };
    let result = match cli.mode {
        Mode::Exact => dispatch::<Eisenstein>(&cli, tol),
        Mode::Approx => dispatch::<ApproxComplex>(&cli, tol),
    };
    match result {
        Ok(report) => {
            if cli.json {
                let _ = writeln!(out, "{}", report.record);
            } else {
                for line in &report.text {
                    let _ = writeln!(out, "{line}");
                }
            }
            report.code
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": f.message, "exit": f.code }));
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        assert_eq!(Failure::from(Error::NotBijective).code, EXIT_OBSTRUCTION);
        assert_eq!(Failure::from(Error::NotMonic("2".into())).code, EXIT_OBSTRUCTION);
        assert_eq!(Failure::from(Error::NotQuartic(3)).code, EXIT_INPUT);
        assert_eq!(Failure::from(Error::InvalidOrder { min: 2, got: 1 }).code, EXIT_INPUT);
    }

    #[test]
    fn parse_failure_points_at_the_column() {
        let f = Failure::parse("z^2+)", ParseError { position: 4, message: "unexpected token".into() });
        assert_eq!(f.code, EXIT_INPUT);
        assert!(f.message.ends_with("  z^2+)\n      ^"), "{}", f.message);
    }

    #[test]
    fn iterate_guards_degree() {
        assert!(iterate_cmd::<Eisenstein>("z^2", 20).is_err());
        assert!(iterate_cmd::<Eisenstein>("z+1", 1000).is_ok());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
