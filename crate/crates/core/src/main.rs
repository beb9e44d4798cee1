//! Command-line surface: polytope/partition/matrix/resultant dumps and the
//! seeded property suites. All I/O is JSON on stdin/stdout; rationals travel
//! as exact "p/q" strings. Exit codes: 0 success, 1 malformed input,
//! 2 invalid mathematical input, 3 failed check.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::{Signed, Zero};
use serde_json::{json, Value};

use bires::exterior::{
    jacobian_wedge_direct, jacobian_wedge_enumerated, multiplication_element,
    normalized_jacobian, verify_column_relation,
};
use bires::fan::{choose_distinguished_cone, partition_fan, FanPartition};
use bires::geometry::{
    lattice_points, normalized_area, polygon_from_support, LatticePoint, Polygon, Support,
};
use bires::io::{complete_support, parse_problem, render_rational, Problem};
use bires::matrix::{assemble, HybridMatrix};
use bires::resultant::{
    macaulay_resultant, planted_root_system, random_system, resultant_value,
    scaling_degree_check, ResultantOptions,
};
use bires::rng::{random_lattice_polygon, SplitMix64};
use bires::{Error, Rational};

#[derive(Parser)]
#[command(
    name = "bires",
    version,
    about = "Exact sparse resultants of unmixed bivariate Laurent systems"
)]
struct Cli {
    /// Problem file (JSON); reads stdin when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Distinguished vertex override as "x,y"; must be a polygon vertex.
    #[arg(long, global = true, value_parser = parse_point)]
    vertex: Option<LatticePoint>,

    /// Insert missing hull lattice points with zero coefficients.
    #[arg(long, global = true)]
    complete_support: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Facet data, lattice point counts, area and the squareness identity.
    Polytope,
    /// Distinguished vertex and the R1/R2/R3 ray partition.
    Partition,
    /// Dump the hybrid matrix, symbolic or evaluated.
    Matrix {
        /// Print bracket/coefficient symbols instead of evaluated rationals.
        #[arg(long)]
        symbolic: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact resultant of the system in the problem file.
    Resultant,
    /// Run a seeded property suite; exits 3 on failure.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Seed; falls back to the problem file's options.seed, then 7.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Systems with a planted torus root must have resultant exactly 0.
    Planted,
    /// Random integer systems must be nonzero almost always.
    Generic,
    /// Scaling one polynomial scales the resultant by lambda^(2*Area).
    Scaling,
    /// Exterior-algebra certification of every Bezout column.
    Delta,
    /// Squareness identity on random lattice polygons.
    Ehrhart,
    /// Hybrid determinant vs. classical dense resultant on simplexes.
    Macaulay,
}

fn parse_point(text: &str) -> Result<LatticePoint, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err("expected \"x,y\"".into());
    }
    let x = parts[0].trim().parse().map_err(|_| "bad x coordinate")?;
    let y = parts[1].trim().parse().map_err(|_| "bad y coordinate")?;
    Ok(LatticePoint::new(x, y))
}

/// Failure carrying the process exit code.
enum Failure {
    Usage(String),
    Math(Error),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Math(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Math(e) => e.to_string(),
            Failure::Check(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidInput(_) | Error::DimensionMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Math(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn read_problem(cli: &Cli) -> Result<Problem, Failure> {
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let mut problem = parse_problem(&text)?;
    if cli.vertex.is_some() {
        problem.vertex = cli.vertex;
    }
    if cli.complete_support || problem.complete_support {
        let (support, coefficients, appended) =
            complete_support(&problem.support, problem.coefficients.as_ref())?;
        if !appended.is_empty() {
            let list: Vec<String> = appended.iter().map(|p| p.to_string()).collect();
            eprintln!(
                "warning: support completed with {} (zero coefficients); \
                 the result is a specialization of the generic resultant",
                list.join(", ")
            );
        }
        problem.support = support;
        problem.coefficients = coefficients;
    }
    Ok(problem)
}

fn build(problem: &Problem) -> Result<(Polygon, FanPartition, HybridMatrix), Failure> {
    let polygon = polygon_from_support(&problem.support)?;
    let cone = choose_distinguished_cone(&polygon, problem.vertex)?;
    let partition = partition_fan(&polygon, cone);
    let matrix = assemble(&problem.support, &polygon, &partition)?;
    Ok((polygon, partition, matrix))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Polytope => cmd_polytope(cli),
        Command::Partition => cmd_partition(cli),
        Command::Matrix { symbolic, format } => cmd_matrix(cli, *symbolic, *format),
        Command::Resultant => cmd_resultant(cli),
        Command::Check {
            suite,
            trials,
            seed,
        } => cmd_check(cli, *suite, *trials, *seed),
    }
}

fn point_json(p: LatticePoint) -> Value {
    json!([p.x, p.y])
}

fn cmd_polytope(cli: &Cli) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let polygon = polygon_from_support(&problem.support)?;
    let num_points = lattice_points(&polygon, 1, false).len();
    let num_interior = lattice_points(&polygon, 1, true).len();
    let num_interior_2q = lattice_points(&polygon, 2, true).len();
    let facets: Vec<Value> = polygon
        .facets()
        .iter()
        .map(|f| {
            json!({
                "index": f.index,
                "normal": [f.normal.0, f.normal.1],
                "offset": f.offset,
            })
        })
        .collect();
    let lhs = 3 + num_interior_2q;
    let rhs = num_points + 3 * num_interior;
    let report = json!({
        "facets": facets,
        "num_points": num_points,
        "num_interior": num_interior,
        "num_interior_2q": num_interior_2q,
        "normalized_area": normalized_area(&polygon),
        "squareness": {"lhs": lhs, "rhs": rhs, "ok": lhs == rhs},
    });
    println!("{report}");
    Ok(())
}

fn cmd_partition(cli: &Cli) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let polygon = polygon_from_support(&problem.support)?;
    let cone = choose_distinguished_cone(&polygon, problem.vertex)?;
    let partition = partition_fan(&polygon, cone);
    let refined = match &partition.refined {
        None => Value::Null,
        Some(r) => json!({
            "normal": [r.normal.0, r.normal.1],
            "offset": render_rational(&r.offset),
            "cone": [r.cone.0, r.cone.1],
            "coefficients": [
                render_rational(&r.coefficients.0),
                render_rational(&r.coefficients.1),
            ],
            "primitive": r.is_primitive(),
        }),
    };
    let report = json!({
        "vertex": point_json(partition.vertex),
        "eta1": partition.eta1,
        "eta2": partition.eta2,
        "R1": partition.r1,
        "R2": partition.r2,
        "R3": partition.r3,
        "refined": refined,
    });
    println!("{report}");
    Ok(())
}

fn cmd_matrix(cli: &Cli, symbolic: bool, format: Format) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let (_, _, matrix) = build(&problem)?;
    let rows: Vec<String> = matrix.row_labels().iter().map(|l| l.to_string()).collect();
    let cols: Vec<String> = matrix.col_labels().iter().map(|l| l.to_string()).collect();
    let cells: Vec<Vec<String>> = if symbolic {
        (0..matrix.size())
            .map(|r| {
                (0..matrix.size())
                    .map(|c| matrix.entry(r, c).to_string())
                    .collect()
            })
            .collect()
    } else {
        let coeffs = problem.coefficients.as_ref().ok_or_else(|| {
            Failure::Usage("numeric matrix dump requires coefficients".into())
        })?;
        let evaluated = matrix.evaluate(coeffs)?;
        (0..evaluated.size())
            .map(|r| {
                (0..evaluated.size())
                    .map(|c| render_rational(evaluated.entry(r, c)))
                    .collect()
            })
            .collect()
    };
    match format {
        Format::Json => {
            let report = json!({
                "symbolic": symbolic,
                "size": matrix.size(),
                "rows": rows,
                "cols": cols,
                "entries": cells,
            });
            println!("{report}");
        }
        Format::Text => print!("{}", render_table(&rows, &cols, &cells)),
    }
    Ok(())
}

fn render_table(rows: &[String], cols: &[String], cells: &[Vec<String>]) -> String {
    let label_width = rows.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(c, head)| {
            cells
                .iter()
                .map(|row| row[c].len())
                .chain(std::iter::once(head.len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    out.push_str(&" ".repeat(label_width));
    for (c, head) in cols.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&format!("{head:>width$}", width = widths[c]));
    }
    out.push('\n');
    for (r, label) in rows.iter().enumerate() {
        out.push_str(&format!("{label:>label_width$}"));
        for (c, w) in widths.iter().enumerate() {
            out.push_str("  ");
            out.push_str(&format!("{:>w$}", cells[r][c], w = w));
        }
        out.push('\n');
    }
    out
}

fn cmd_resultant(cli: &Cli) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let (polygon, _, matrix) = build(&problem)?;
    let coeffs = problem
        .coefficients
        .as_ref()
        .ok_or_else(|| Failure::Usage("resultant requires coefficients".into()))?;
    let value = matrix.evaluate(coeffs)?.determinant();
    let report = json!({
        "resultant": render_rational(&value),
        "matrix_size": matrix.size(),
        "degree_per_poly": normalized_area(&polygon),
    });
    println!("{report}");
    Ok(())
}

fn cmd_check(cli: &Cli, suite: Suite, trials: usize, seed: Option<u64>) -> Result<(), Failure> {
    match suite {
        Suite::Planted => check_planted(cli, trials, seed),
        Suite::Generic => check_generic(cli, trials, seed),
        Suite::Scaling => check_scaling(cli, seed),
        Suite::Delta => check_delta(cli),
        Suite::Ehrhart => check_ehrhart(trials, seed.unwrap_or(7)),
        Suite::Macaulay => check_macaulay(trials, seed.unwrap_or(7)),
    }
}

fn resolve_seed(problem: &Problem, cli_seed: Option<u64>) -> u64 {
    cli_seed.or(problem.seed).unwrap_or(7)
}

fn summary(suite: &str, trials: usize, passed: usize) -> Result<(), Failure> {
    let ok = passed == trials;
    println!(
        "{}",
        json!({"suite": suite, "trials": trials, "passed": passed, "ok": ok})
    );
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{suite}: {passed}/{trials} trials passed"
        )))
    }
}

fn random_torus_root(rng: &mut SplitMix64) -> (Rational, Rational) {
    let coordinate = |rng: &mut SplitMix64| {
        Rational::new(rng.nonzero_in(-5, 5).into(), rng.int_in(1, 4).into())
    };
    (coordinate(rng), coordinate(rng))
}

fn check_planted(cli: &Cli, trials: usize, seed: Option<u64>) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let options = ResultantOptions {
        vertex: problem.vertex,
    };
    let mut rng = SplitMix64::new(resolve_seed(&problem, seed));
    let mut passed = 0;
    for _ in 0..trials {
        let (x0, y0) = random_torus_root(&mut rng);
        let coeffs = planted_root_system(&problem.support, (&x0, &y0), rng.next_u64());
        if resultant_value(&problem.support, &coeffs, &options)?.is_zero() {
            passed += 1;
        }
    }
    summary("planted", trials, passed)
}

fn check_generic(cli: &Cli, trials: usize, seed: Option<u64>) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let options = ResultantOptions {
        vertex: problem.vertex,
    };
    let mut rng = SplitMix64::new(resolve_seed(&problem, seed));
    let mut nonzero = 0;
    for _ in 0..trials {
        let coeffs = random_system(&mut rng, problem.support.len(), -9, 9);
        if !resultant_value(&problem.support, &coeffs, &options)?.is_zero() {
            nonzero += 1;
        }
    }
    let allowed = trials / 50;
    let ok = trials - nonzero <= allowed;
    println!(
        "{}",
        json!({"suite": "generic", "trials": trials, "nonzero": nonzero,
               "allowed_failures": allowed, "ok": ok})
    );
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "generic: only {nonzero}/{trials} systems were nonzero"
        )))
    }
}

fn check_scaling(cli: &Cli, seed: Option<u64>) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let mut rng = SplitMix64::new(resolve_seed(&problem, seed));
    let options = ResultantOptions {
        vertex: problem.vertex,
    };
    // A generic system; retry the rare vanishing draw.
    let mut coeffs = None;
    for _ in 0..50 {
        let candidate = random_system(&mut rng, problem.support.len(), -9, 9);
        if !resultant_value(&problem.support, &candidate, &options)?.is_zero() {
            coeffs = Some(candidate);
            break;
        }
    }
    let coeffs =
        coeffs.ok_or_else(|| Failure::Check("scaling: no nonzero base system found".into()))?;
    let lambdas = [
        Rational::from_integer(2.into()),
        Rational::from_integer((-3).into()),
        Rational::new(5.into(), 2.into()),
    ];
    let mut passed = 0;
    let mut total = 0;
    for poly in 1..=3 {
        for lambda in &lambdas {
            total += 1;
            if scaling_degree_check(&problem.support, &coeffs, lambda, poly)? {
                passed += 1;
            }
        }
    }
    summary("scaling", total, passed)
}

fn check_delta(cli: &Cli) -> Result<(), Failure> {
    let problem = read_problem(cli)?;
    let polygon = polygon_from_support(&problem.support)?;
    let cone = choose_distinguished_cone(&polygon, problem.vertex)?;
    let partition = partition_fan(&polygon, cone);

    let j0 = normalized_jacobian(&problem.support, &polygon, &partition);
    let kernel_ok = j0.wedge(&multiplication_element(&problem.support)).is_zero();

    let mut passed = 0;
    let n = problem.support.len();
    for alpha in 1..=n {
        let report = verify_column_relation(&problem.support, &polygon, &partition, alpha)?;
        let enumerated_ok = jacobian_wedge_direct(&j0, alpha)
            == jacobian_wedge_enumerated(&problem.support, &polygon, &partition, alpha);
        let ok = report.ok && enumerated_ok;
        println!(
            "{}",
            json!({
                "alpha": point_json(problem.support.point(alpha)),
                "ok": ok,
                "lhs_terms": report.lhs_terms,
                "rhs_terms": report.rhs_terms,
                "sign_flipped": report.sign_flipped,
                "enumerated_ok": enumerated_ok,
            })
        );
        if ok {
            passed += 1;
        }
    }
    println!(
        "{}",
        json!({"suite": "delta", "columns": n, "passed": passed, "jacobian_kernel_ok": kernel_ok})
    );
    if passed == n && kernel_ok {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "delta: {passed}/{n} columns certified, kernel ok: {kernel_ok}"
        )))
    }
}

fn check_ehrhart(trials: usize, seed: u64) -> Result<(), Failure> {
    let mut rng = SplitMix64::new(seed);
    let mut passed = 0;
    for _ in 0..trials {
        let polygon = random_lattice_polygon(&mut rng, 5);
        let q = lattice_points(&polygon, 1, false).len();
        let iq = lattice_points(&polygon, 1, true).len();
        let i2q = lattice_points(&polygon, 2, true).len();
        if 3 + i2q == q + 3 * iq {
            passed += 1;
        }
    }
    summary("ehrhart", trials, passed)
}

fn check_macaulay(trials: usize, seed: u64) -> Result<(), Failure> {
    let mut rng = SplitMix64::new(seed);
    let mut passed = 0;
    let mut total = 0;
    for degree in [1i64, 2] {
        let mut points = Vec::new();
        for x in 0..=degree {
            for y in 0..=(degree - x) {
                points.push(LatticePoint::new(x, y));
            }
        }
        bires::geometry::sort_graded_lex(&mut points);
        let support = Support::new(points).expect("simplex points are distinct");
        let mut done = 0;
        while done < trials {
            let coeffs = random_system(&mut rng, support.len(), -9, 9);
            let dense = match macaulay_resultant(&support, &coeffs, degree) {
                Ok(v) => v,
                // The extraneous minor can vanish on unlucky draws; redraw.
                Err(Error::ExtraneousMinorZero) => continue,
                Err(e) => return Err(e.into()),
            };
            let hybrid =
                resultant_value(&support, &coeffs, &ResultantOptions::default())?;
            total += 1;
            done += 1;
            if hybrid.abs() == dense.abs() {
                passed += 1;
            }
        }
    }
    summary("macaulay", total, passed)
}
