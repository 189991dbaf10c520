//! `bsquad`: solve and inspect quadratic equations over BS(1,n).
//!
//! Exit codes: 0 solvable (or check passed), 1 unsolvable (or check failed), 2 error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bsquad::expsolve::{multiplicative_order, solve_congruence, solve_exact, ExpEquation};
use bsquad::reductions::{
    brute_3part, brute_partition, gen_genus1_from_3part, gen_spherical_from_3part,
    gen_spherical_from_part, ThreePartInstance,
};
use bsquad::solvers::{parse_solution_record, verify};
use bsquad::suites::{self, SuiteConfig};
use bsquad::{parse_equation, solve, to_standard_form, EquationAst, Group, Limits, Word};

#[derive(Parser)]
#[command(name = "bsquad", version, about = "Quadratic equations over BS(1,n)")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// The n in BS(1,n) = <a,t | t^-1 a t = a^n>.
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    base: i64,
    /// Seed for the random suites.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Largest exponent the exponent-equation searches may use.
    #[arg(long, global = true, default_value_t = Limits::default().max_exponent)]
    max_exponent: u64,
    /// Cap on search states (DP table cells, enumerated tuples).
    #[arg(long, global = true, default_value_t = Limits::default().max_states)]
    max_states: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Record,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an equation and print a solution when there is one.
    Solve {
        /// Equation text, e.g. "x^2 a t".
        equation: Option<String>,
        /// Read equations from a file, one per line.
        #[arg(long, short)]
        file: Option<PathBuf>,
    },
    /// Check a solution record against an equation.
    Verify {
        equation: String,
        /// File with `solution.<var>: <word>` lines; `-` reads stdin.
        solution: PathBuf,
    },
    /// Print the standard form and the substitution that reaches it.
    Normalize { equation: String },
    /// Evaluate a word in a, t to an element (alpha, beta).
    Eval { word: String },
    /// Solve sum q_i n^x_i = target, or the congruence modulo --modulus.
    Expsolve {
        #[arg(required = true, allow_negative_numbers = true)]
        coeffs: Vec<i64>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        target: i64,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Build a hardness gadget from a combinatorial instance.
    Reduce {
        #[arg(value_enum)]
        problem: Problem,
        items: Vec<u64>,
        /// Read the items from a file, one integer per line.
        #[arg(long, short)]
        file: Option<PathBuf>,
        /// Gadget for 3-partition instances.
        #[arg(long, value_enum, default_value_t = Gadget::Spherical)]
        gadget: Gadget,
        /// Also solve the gadget and compare with brute force.
        #[arg(long)]
        solve: bool,
    },
    /// Run the acceptance suites.
    Selftest {
        /// Fraction of the full sample counts.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long)]
        size_c: Option<u64>,
        #[arg(long)]
        size_c_linear: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    #[value(name = "3part")]
    ThreePart,
    Part,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gadget {
    Spherical,
    Genus1,
}

type Failure = String;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let rc = &cli.run;
    if rc.max_exponent == 0 || rc.max_states == 0 {
        return Err("caps must be positive".into());
    }
    let limits = Limits {
        max_exponent: rc.max_exponent,
        max_states: rc.max_states,
    };
    let grp = Group::new(rc.base).map_err(|e| e.to_string())?;
    match &cli.cmd {
        Cmd::Solve { equation, file } => {
            let lines: Vec<String> = match (equation, file) {
                (Some(e), None) => vec![e.clone()],
                (None, Some(p)) => std::fs::read_to_string(p)
                    .map_err(|e| format!("{}: {e}", p.display()))?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect(),
                _ => return Err("give exactly one of an equation or --file".into()),
            };
            let mut all = true;
            for (i, text) in lines.iter().enumerate() {
                let ast = parse(text)?;
                let v = solve(&grp, &ast, &limits).map_err(|e| e.to_string())?;
                if lines.len() > 1 {
                    if i > 0 {
                        println!();
                    }
                    println!("{}", emit(rc.format, "equation", text));
                }
                print!(
                    "{}",
                    match rc.format {
                        Format::Human => v.render_human(),
                        Format::Record => v.render_record(),
                    }
                );
                all &= v.solvable;
            }
            Ok(if all { 0 } else { 1 })
        }
        Cmd::Verify { equation, solution } => {
            let ast = parse(equation)?;
            let text = if solution.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| e.to_string())?
            } else {
                std::fs::read_to_string(solution).map_err(|e| format!("{}: {e}", solution.display()))?
            };
            let sol = parse_solution_record(&grp, &text).map_err(|e| e.to_string())?;
            let ok = verify(&grp, &ast, &sol).map_err(|e| e.to_string())?;
            println!("{}", emit(rc.format, "verified", &ok.to_string()));
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Normalize { equation } => {
            let ast = parse(equation)?;
            let (sf, sub) = to_standard_form(&grp, &ast).map_err(|e| e.to_string())?;
            let mut s = String::new();
            match rc.format {
                Format::Human => {
                    let _ = writeln!(s, "{} form, genus {}", sf.kind, sf.genus);
                    let _ = writeln!(s, "  {}", sf.render(&sub, &grp));
                    for m in sub.render_moves() {
                        let _ = writeln!(s, "  {m}");
                    }
                }
                Format::Record => {
                    let _ = writeln!(s, "kind: {}", sf.kind);
                    let _ = writeln!(s, "genus: {}", sf.genus);
                    let _ = writeln!(s, "constants: {}", sf.constants.len());
                    let _ = writeln!(s, "form: {}", sf.render(&sub, &grp));
                    for m in sub.render_moves() {
                        let _ = writeln!(s, "move: {m}");
                    }
                }
            }
            print!("{s}");
            Ok(0)
        }
        Cmd::Eval { word } => {
            let w: Word = word.parse().map_err(|e: bsquad::Error| e.to_string())?;
            let g = grp.eval_word(&w);
            let normal = grp.element_to_word(&g);
            match rc.format {
                Format::Human => println!("{} = {}", grp.render_element(&g), normal),
                Format::Record => {
                    println!("element: {}", grp.render_element(&g));
                    println!("word: {normal}");
                }
            }
            Ok(0)
        }
        Cmd::Expsolve {
            coeffs,
            target,
            modulus,
        } => {
            let q: Vec<_> = coeffs.iter().map(|&c| c.into()).collect();
            let found = match modulus {
                None => {
                    let eq = ExpEquation {
                        coeffs: q,
                        base: rc.base,
                        target: (*target).into(),
                        modulus: 0.into(),
                    };
                    solve_exact(&eq, &limits).map_err(|e| e.to_string())?
                }
                Some(m) => {
                    if *target != 0 {
                        return Err("--target is only for exact equations".into());
                    }
                    let m = (*m).into();
                    let p = multiplicative_order(rc.base, &m, limits.max_exponent)
                        .ok_or("n has no order modulo M within --max-exponent")?;
                    solve_congruence(&q, rc.base, &m, p, limits.max_states).map_err(|e| e.to_string())?
                }
            };
            match &found {
                Some(x) => {
                    let xs: Vec<String> = x.iter().map(u64::to_string).collect();
                    println!("{}", emit(rc.format, "exponents", &xs.join(" ")));
                }
                None => println!("{}", emit(rc.format, "exponents", "none")),
            }
            Ok(if found.is_some() { 0 } else { 1 })
        }
        Cmd::Reduce {
            problem,
            items,
            file,
            gadget,
            solve: also_solve,
        } => {
            let items = match (items.is_empty(), file) {
                (false, None) => items.clone(),
                (true, Some(p)) => read_items(p)?,
                _ => return Err("give the items inline or with --file, not both".into()),
            };
            let items = &items;
            let (ast, brute, n) = match problem {
                Problem::ThreePart => {
                    let inst = ThreePartInstance::new(items.clone()).map_err(|e| e.to_string())?;
                    let ast = match gadget {
                        Gadget::Spherical => gen_spherical_from_3part(&inst, rc.base),
                        Gadget::Genus1 => gen_genus1_from_3part(&inst, rc.base),
                    }
                    .map_err(|e| e.to_string())?;
                    (ast, brute_3part(&inst), rc.base)
                }
                Problem::Part => {
                    let ast = gen_spherical_from_part(items).map_err(|e| e.to_string())?;
                    (ast, brute_partition(items), -1)
                }
            };
            println!("{}", emit(rc.format, "equation", &ast.to_string()));
            if !also_solve {
                return Ok(0);
            }
            let g = Group::new(n).map_err(|e| e.to_string())?;
            let v = solve(&g, &ast, &limits).map_err(|e| e.to_string())?;
            match rc.format {
                Format::Human => println!(
                    "n = {n}: solver says {}, brute force says {}",
                    yes_no(v.solvable),
                    yes_no(brute)
                ),
                Format::Record => {
                    println!("base: {n}");
                    println!("solvable: {}", v.solvable);
                    println!("brute: {brute}");
                }
            }
            if v.solvable != brute {
                return Err("solver and brute force disagree".into());
            }
            Ok(if v.solvable { 0 } else { 1 })
        }
        Cmd::Selftest {
            scale,
            size_c,
            size_c_linear,
        } => {
            if scale.is_nan() || *scale <= 0.0 {
                return Err("--scale must be positive".into());
            }
            let mut cfg = SuiteConfig {
                seed: rc.seed,
                scale: *scale,
                limits,
                ..SuiteConfig::default()
            };
            if let Some(c) = size_c {
                cfg.size_c = *c;
            }
            if let Some(c) = size_c_linear {
                cfg.size_c_linear = *c;
            }
            let outcomes = run_suites(&cfg);
            for o in &outcomes {
                println!("{}", o.line());
            }
            let failed: Vec<_> = outcomes.iter().filter(|o| !o.pass).collect();
            Ok(if failed.is_empty() {
                0
            } else if failed.iter().any(|o| o.capped) {
                2
            } else {
                1
            })
        }
    }
}

fn run_suites(cfg: &SuiteConfig) -> Vec<suites::Outcome> {
    let mut out = vec![
        suites::group_law(cfg),
        suites::round_trip(cfg),
        suites::width_witnesses(cfg),
        suites::bezout(cfg),
    ];
    let (o5, mut sizes) = suites::oracle_equivalence(cfg);
    out.push(o5);
    let (o6, s6) = suites::reduction_end_to_end(cfg);
    out.push(o6);
    sizes.extend(s6);
    out.push(suites::size_certificate(cfg, &sizes));
    out.push(suites::linear_time(cfg));
    out
}

fn read_items(p: &PathBuf) -> Result<Vec<u64>, Failure> {
    let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<u64>().map_err(|e| format!("{}: `{l}`: {e}", p.display())))
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "solvable"
    } else {
        "unsolvable"
    }
}

fn parse(text: &str) -> Result<EquationAst, Failure> {
    parse_equation(text).map_err(|e| e.to_string())
}

fn emit(format: Format, key: &str, value: &str) -> String {
    match format {
        Format::Human => value.to_string(),
        Format::Record => format!("{key}: {value}"),
    }
}
