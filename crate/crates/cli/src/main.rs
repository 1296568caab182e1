use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use cochain_operads::algebra_core::{Coefficients, FormalSum};
use cochain_operads::barratt_eccles::{
    e_cell_member, e_complexity, e_compose_partial, e_diagonal_linear, e_differential, e_normalize, CellDescriptor,
    EElement, ESimplex,
};
use cochain_operads::hochschild::{
    brace, gerstenhaber_bracket, hochschild_cup, hochschild_differential, AssociativeAlgebra, HochschildCochain,
};
use cochain_operads::interval_cut::{aw_apply_linear, cup, cup_i, steenrod_square};
use cochain_operads::linalg::Field;
use cochain_operads::simplicial_sets::{Cochain, OrderedComplexSpec, Simplex, SimplicialModel};
use cochain_operads::sphere_suspension::{
    cohomology_ranks, cone_eval, induced_cohomology_rank, sphere_eval, CochainAlgebra, ConeGen, FiniteEAlgebra,
    GroundField, PathObject,
};
use cochain_operads::surjections::{
    x_cell_member, x_complexity, x_compose_partial, x_differential, Surjection, XElement,
};
use cochain_operads::table_reduction::{section, tr_linear};
use cochain_operads::verify::{run_all, run_suite, suite_names, SuiteReport, VerifyConfig};

/// Barratt–Eccles and surjection operads, interval cuts, and cochain operations.
#[derive(Parser)]
#[command(name = "cochain-ops", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Coefficient characteristic: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u32,
    /// Seed for randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Upper bound on the arities of exhaustive checks.
    #[arg(long, global = true)]
    max_arity: Option<usize>,
    /// Upper bound on the degrees of exhaustive checks.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
}

/// Arguments are inline JSON or paths to JSON files.
#[derive(Subcommand)]
enum Cmd {
    /// Differential of a Barratt–Eccles element.
    EDiff { element: String },
    /// Partial composition u ∘_k v in the Barratt–Eccles operad.
    ECompose { u: String, k: usize, v: String },
    /// Diagonal of a Barratt–Eccles element.
    EDiagonal { element: String },
    /// Differential of a surjection element.
    XDiff { element: String },
    /// Partial composition u ∘_k v in the surjection operad.
    XCompose { u: String, k: usize, v: String },
    /// Table reduction of a Barratt–Eccles element.
    Tr { element: String },
    /// The section of table reduction on a surjection.
    Section { surjection: String },
    /// Complexity of a Barratt–Eccles simplex or a surjection.
    Complexity { element: String },
    /// Membership of a simplex or surjection in a cell {"mu":[[[i,j],m],…],"sigma":[…]}.
    Cell { element: String, cell: String },
    /// Interval-cut operation of a surjection element applied to a simplex.
    Aw {
        element: String,
        simplex: String,
        #[arg(long, default_value = "standard:4")]
        model: String,
    },
    /// Cup product of two cochains.
    Cup {
        f: String,
        g: String,
        #[arg(long, default_value = "rp2")]
        model: String,
    },
    /// Cup-i product of two cochains.
    Cupi {
        i: usize,
        f: String,
        g: String,
        #[arg(long, default_value = "rp2")]
        model: String,
    },
    /// Steenrod square Sq^k over F₂.
    Sq {
        k: usize,
        f: String,
        #[arg(long, default_value = "rp2")]
        model: String,
    },
    /// Homology ranks of a model.
    Homology {
        #[arg(long, default_value = "rp2")]
        model: String,
    },
    /// Closed-form value of a simplex on N*(Sⁿ).
    SphereEval {
        element: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Closed-form value of a simplex on N*(Δ¹) at a pattern such as "ece".
    ConeEval { element: String, pattern: String },
    /// Path object of 𝔽, N*(S¹) or N*(RP²): dimensions and cohomology.
    PathObject {
        #[arg(long, default_value = "ground")]
        algebra: String,
    },
    /// Cup product of Hochschild cochains.
    HhCup { algebra: String, f: String, g: String },
    /// Brace f{g_1,…,g_k} of Hochschild cochains.
    HhBrace { algebra: String, f: String, gs: Vec<String> },
    /// Gerstenhaber bracket of Hochschild cochains.
    HhBracket { algebra: String, f: String, g: String },
    /// Hochschild differential.
    HhDiff { algebra: String, f: String },
    /// Runs a verification suite, or "all".
    Verify { suite: String },
}

enum Failure {
    Input(String),
    Verification(String),
}

type Out = std::result::Result<String, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read_json(arg: &str) -> std::result::Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(input)
}

fn parse<T: DeserializeOwned>(v: Value) -> std::result::Result<T, Failure> {
    serde_json::from_value(v).map_err(input)
}

/// Accepts a formal sum or a single basis element.
fn element<B: Ord + Clone + DeserializeOwned>(arg: &str, coeffs: Coefficients) -> std::result::Result<FormalSum<B>, Failure> {
    let v = read_json(arg)?;
    if v.get("terms").is_some() {
        let sum: FormalSum<B> = parse(v)?;
        sum.with_coefficients(coeffs).map_err(input)
    } else {
        Ok(FormalSum::single(coeffs, parse(v)?))
    }
}

fn e_element(arg: &str, coeffs: Coefficients) -> std::result::Result<EElement, Failure> {
    e_normalize(&element(arg, coeffs)?).map_err(input)
}

fn model(spec: &str) -> std::result::Result<SimplicialModel, Failure> {
    let number = |s: &str| s.parse::<usize>().map_err(|_| Failure::Input(format!("bad dimension in {spec:?}")));
    match spec.split_once(':') {
        Some(("standard", n)) => Ok(SimplicialModel::standard(number(n)?)),
        Some(("sphere", n)) => SimplicialModel::sphere(number(n)?).map_err(input),
        _ if spec == "interval" => Ok(SimplicialModel::interval()),
        _ if spec == "rp2" => Ok(SimplicialModel::rp2()),
        _ => SimplicialModel::ordered(&parse::<OrderedComplexSpec>(read_json(spec)?)?).map_err(input),
    }
}

fn cochain(arg: &str, coeffs: Coefficients) -> std::result::Result<Cochain, Failure> {
    let c: Cochain = parse(read_json(arg)?)?;
    Ok(Cochain { degree: c.degree, values: c.values.with_coefficients(coeffs).map_err(input)? })
}

fn algebra(arg: &str, coeffs: Coefficients) -> std::result::Result<AssociativeAlgebra, Failure> {
    match arg {
        "upper-triangular" => Ok(AssociativeAlgebra::upper_triangular(coeffs)),
        "truncated-polynomial" => Ok(AssociativeAlgebra::truncated_polynomial(coeffs)),
        _ => AssociativeAlgebra::new(parse(read_json(arg)?)?, coeffs).map_err(input),
    }
}

fn hh_cochain(arg: &str, alg: &AssociativeAlgebra) -> std::result::Result<HochschildCochain, Failure> {
    let c: HochschildCochain = parse(read_json(arg)?)?;
    if c.dim != alg.dim() {
        return Err(Failure::Input(format!("cochain dimension {} does not match the algebra", c.dim)));
    }
    HochschildCochain::raw(c.arity, c.dim, c.table, alg.coefficients()).map_err(input)
}

fn render<T: Serialize + std::fmt::Debug>(value: &T, json: bool) -> Out {
    if json {
        serde_json::to_string(value).map_err(input)
    } else {
        Ok(format!("{value:?}"))
    }
}

fn render_value(value: Value, text: String, json: bool) -> Out {
    Ok(if json { value.to_string() } else { text })
}

fn verify(suite: &str, opts: &Opts) -> Out {
    let cfg = VerifyConfig { seed: opts.seed, max_arity: opts.max_arity, max_degree: opts.max_degree };
    let reports: Vec<SuiteReport> = if suite == "all" {
        run_all(&cfg)
    } else {
        vec![run_suite(suite, &cfg).map_err(|e| {
            Failure::Input(format!("{e}; suites: all, {}", suite_names().collect::<Vec<_>>().join(", ")))
        })?]
    };
    let text = if opts.json {
        serde_json::to_string(&reports).map_err(input)?
    } else {
        let mut lines = vec![format!("{:<24} {:<6} {:>10}  seed", "suite", "result", "checks")];
        for r in &reports {
            let status = if r.passed { "pass" } else { "FAIL" };
            lines.push(format!("{:<24} {:<6} {:>10}  {}", r.suite, status, r.checks, r.seed));
            if let Some(c) = &r.counterexample {
                lines.push(format!("  counterexample: {c}"));
            }
        }
        lines.join("\n")
    };
    if reports.iter().all(|r| r.passed) {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn complexity_or_cell(arg: &str, cell: Option<&str>, json: bool) -> Out {
    let v = read_json(arg)?;
    let cell: Option<CellDescriptor> = cell.map(|c| read_json(c).and_then(parse)).transpose()?;
    let (complexity, member) = if v.get("perms").is_some() {
        let w: ESimplex = parse(v)?;
        (e_complexity(&w), cell.map(|c| e_cell_member(&w, &c)).transpose().map_err(input)?)
    } else {
        let u: Surjection = parse(v)?;
        (x_complexity(&u), cell.map(|c| x_cell_member(&u, &c)).transpose().map_err(input)?)
    };
    match member {
        Some(m) => render_value(json!({ "member": m }), m.to_string(), json),
        None => render_value(json!({ "complexity": complexity }), complexity.to_string(), json),
    }
}

fn path_object(name: &str, coeffs: Coefficients, field: Field, json: bool) -> Out {
    let a: Box<dyn FiniteEAlgebra> = match name {
        "ground" => Box::new(GroundField { coeffs }),
        "sphere1" => Box::new(CochainAlgebra::new(SimplicialModel::sphere(1).map_err(input)?, coeffs, false)),
        "rp2" => Box::new(CochainAlgebra::new(SimplicialModel::rp2(), coeffs, false)),
        _ => return Err(Failure::Input(format!("unknown algebra {name:?}; expected ground, sphere1 or rp2"))),
    };
    let p = PathObject::new(a).map_err(input)?;
    let base = cohomology_ranks(p.base(), field);
    let tilde = cohomology_ranks(&p.tilde, field);
    let s0: Vec<usize> =
        (0..tilde.len().max(base.len())).map(|d| induced_cohomology_rank(p.base(), &p.tilde, |i| p.s0(i), d, field)).collect();
    let contracts = (0..p.base_dim()).all(|i| {
        let s = p.s0(i);
        let id = FormalSum::single(coeffs, i);
        s.flat_map(|&k| p.d0(k)) == id && s.flat_map(|&k| p.d1(k)) == id
    });
    let value = json!({
        "field": field.name(),
        "base_dim": p.base_dim(),
        "path_dim": p.tilde.dim(),
        "base_cohomology": &base,
        "path_cohomology": &tilde,
        "s0_ranks": &s0,
        "d0_s0_and_d1_s0_are_identity": contracts,
    });
    let text = format!(
        "field {}\ndim A = {}, dim Ã = {}\nH*(A) = {:?}\nH*(Ã) = {:?}\nrank H*(s_0) = {:?}\nd_0 s_0 = d_1 s_0 = id: {}",
        field.name(),
        p.base_dim(),
        p.tilde.dim(),
        base,
        tilde,
        s0,
        contracts
    );
    render_value(value, text, json)
}

fn run(cli: Cli) -> Out {
    let opts = &cli.opts;
    let coeffs = Coefficients::new(opts.characteristic).map_err(input)?;
    let field = Field::from_characteristic(opts.characteristic).map_err(input)?;
    let json = opts.json;
    match &cli.cmd {
        Cmd::EDiff { element } => render(&e_differential(&e_element(element, coeffs)?), json),
        Cmd::ECompose { u, k, v } => {
            render(&e_compose_partial(&e_element(u, coeffs)?, *k, &e_element(v, coeffs)?).map_err(input)?, json)
        }
        Cmd::EDiagonal { element } => render(&e_diagonal_linear(&e_element(element, coeffs)?), json),
        Cmd::XDiff { element: e } => render(&x_differential(&element::<Surjection>(e, coeffs)?), json),
        Cmd::XCompose { u, k, v } => {
            let (u, v): (XElement, XElement) = (element(u, coeffs)?, element(v, coeffs)?);
            render(&x_compose_partial(&u, *k, &v).map_err(input)?, json)
        }
        Cmd::Tr { element } => render(&tr_linear(&e_element(element, coeffs)?), json),
        Cmd::Section { surjection } => render(&section(&parse::<Surjection>(read_json(surjection)?)?), json),
        Cmd::Complexity { element } => complexity_or_cell(element, None, json),
        Cmd::Cell { element, cell } => complexity_or_cell(element, Some(cell), json),
        Cmd::Aw { element: e, simplex, model: m } => {
            let m = model(m)?;
            let x: Simplex = parse(read_json(simplex)?)?;
            render(&aw_apply_linear(&element::<Surjection>(e, coeffs)?, &x, &m).map_err(input)?, json)
        }
        Cmd::Cup { f, g, model: m } => {
            let m = model(m)?;
            render(&cup(&cochain(f, coeffs)?, &cochain(g, coeffs)?, &m).map_err(input)?, json)
        }
        Cmd::Cupi { i, f, g, model: m } => {
            let m = model(m)?;
            render(&cup_i(&cochain(f, coeffs)?, &cochain(g, coeffs)?, *i, &m).map_err(input)?, json)
        }
        Cmd::Sq { k, f, model: m } => {
            let m = model(m)?;
            render(&steenrod_square(*k, &cochain(f, Coefficients::F2)?, &m).map_err(input)?, json)
        }
        Cmd::Homology { model: m } => {
            let ranks = model(m)?.homology_ranks(field);
            render_value(json!({ "field": field.name(), "ranks": ranks }), format!("{ranks:?}"), json)
        }
        Cmd::SphereEval { element, n } => {
            let w: ESimplex = parse(read_json(element)?)?;
            let c = coeffs.reduce(sphere_eval(*n, &w).map_err(input)?);
            render_value(json!({ "coefficient": c }), c.to_string(), json)
        }
        Cmd::ConeEval { element, pattern } => {
            let w: ESimplex = parse(read_json(element)?)?;
            let args = pattern
                .chars()
                .map(|ch| match ch {
                    'c' => Ok(ConeGen::C),
                    'e' => Ok(ConeGen::E),
                    _ => Err(Failure::Input(format!("pattern letters are c and e, got {ch:?}"))),
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let (g, c) = cone_eval(&w, &args).map_err(input)?;
            let c = coeffs.reduce(c);
            let name = if g == ConeGen::C { "c" } else { "e" };
            render_value(json!({ "generator": name, "coefficient": c }), format!("{c}·{name}"), json)
        }
        Cmd::PathObject { algebra } => path_object(algebra, coeffs, field, json),
        Cmd::HhCup { algebra: a, f, g } => {
            let alg = algebra(a, coeffs)?;
            render(&hochschild_cup(&alg, &hh_cochain(f, &alg)?, &hh_cochain(g, &alg)?).map_err(input)?, json)
        }
        Cmd::HhBrace { algebra: a, f, gs } => {
            let alg = algebra(a, coeffs)?;
            let gs = gs.iter().map(|g| hh_cochain(g, &alg)).collect::<std::result::Result<Vec<_>, _>>()?;
            let refs: Vec<&HochschildCochain> = gs.iter().collect();
            render(&brace(&alg, &hh_cochain(f, &alg)?, &refs).map_err(input)?, json)
        }
        Cmd::HhBracket { algebra: a, f, g } => {
            let alg = algebra(a, coeffs)?;
            render(&gerstenhaber_bracket(&alg, &hh_cochain(f, &alg)?, &hh_cochain(g, &alg)?).map_err(input)?, json)
        }
        Cmd::HhDiff { algebra: a, f } => {
            let alg = algebra(a, coeffs)?;
            render(&hochschild_differential(&alg, &hh_cochain(f, &alg)?).map_err(input)?, json)
        }
        Cmd::Verify { suite } => verify(suite, opts),
    }
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
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(out)) => {
            println!("{out}");
            ExitCode::from(2)
        }
    }
}
