use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use rsdesign::acceptance::{run_criterion, SuiteOptions, CRITERIA};
use rsdesign::constructions::{construction_a, full_design, sts, trivial_oa, Constructed, OrthoArray};
use rsdesign::designs::{tdesign_spectral_check, verify_rs_design, DesignArray};
use rsdesign::exactmath::{fisher_bound, fisher_bound_odd, multiplicity, natural_bound, IndexPair, Rat, SchemeParams};
use rsdesign::format::{read_design, read_ingredient, write_design, Ingredient};
use rsdesign::search::{exact_cover_search, SearchOptions, SearchStatus, DEFAULT_BUDGET};
use rsdesign::Error;

/// Exit codes: 0 success, 1 negative verdict, 2 bad input, 3 spectral
/// precondition (r > m), 4 internal disagreement between checks.
#[derive(Parser)]
#[command(name = "rsdesign", version, about = "(r,s)-designs in the nonbinary Johnson scheme")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a design file is an (r,s)-design.
    Verify {
        file: PathBuf,
        r: usize,
        s: usize,
        /// Also run the exact character-sum check and compare.
        #[arg(long)]
        spectral: bool,
    },
    /// Print |X|, the index sets L and K and the multiplicity table.
    Params { n: usize, w: usize, q: usize },
    /// Print the Fisher-type and natural lower bounds, optionally testing a size.
    Bounds {
        n: usize,
        w: usize,
        q: usize,
        r: usize,
        s: usize,
        size: Option<u64>,
    },
    /// Build a design: `sts-trivial n=7 q=4`, `full n=4 w=2 q=3 s=1 [oa=FILE]`
    /// or `file-file blocks=FILE oa=FILE`.
    Construct {
        recipe: String,
        /// KEY=VALUE arguments of the recipe.
        args: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search for an index-1 (r,s)-design by exact cover.
    Search {
        n: usize,
        w: usize,
        q: usize,
        r: usize,
        s: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Fix the lexicographically smallest vertex as a row.
        #[arg(long)]
        symmetry: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        quick: bool,
        /// Directory with fig1.rsd and fig2.rsd to check against the built-in figures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: 2, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { file, r, s, spectral } => cmd_verify(&file, r, s, spectral),
        Command::Params { n, w, q } => cmd_params(n, w, q),
        Command::Bounds { n, w, q, r, s, size } => cmd_bounds(n, w, q, r, s, size),
        Command::Construct { recipe, args, output } => cmd_construct(&recipe, &args, output.as_deref()),
        Command::Search { n, w, q, r, s, budget, jobs, symmetry, output } => {
            let opts = SearchOptions { budget, jobs: jobs.max(1), symmetry };
            cmd_search(n, w, q, r, s, &opts, output.as_deref())
        }
        Command::Selftest { quick, fixtures, seed } => cmd_selftest(quick, fixtures, seed),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_verify(file: &Path, r: usize, s: usize, spectral: bool) -> Outcome {
    let y = read_design(file).map_err(|e| fail(2, format!("{}: {e}", file.display())))?;
    let report = verify_rs_design(&y, r, s)?;
    let p = y.params();
    println!("{p} (r,s)=({r},{s}) rows={}", y.len());
    if report.is_design {
        println!("design: yes");
        println!("lambda={}", report.lambda.unwrap_or(0));
    } else {
        println!("design: no");
        if let Some(w) = &report.witness {
            println!("witness: {} observed={} expected={}", w.triple, w.observed, w.expected);
        }
    }
    if spectral {
        if r > p.m() {
            return Err(fail(3, format!("spectral check needs r <= m, got r={r} and m={}", p.m())));
        }
        let spectral_ok = tdesign_spectral_check(&y, r, s).map_err(|e| match e {
            Error::Precondition(m) => fail(3, m),
            other => other.into(),
        })?;
        println!("spectral: {}", if spectral_ok { "yes" } else { "no" });
        if spectral_ok != report.is_design {
            return Err(fail(4, "combinatorial and spectral checks disagree"));
        }
        println!("agreement: yes");
    }
    Ok(if report.is_design { 0 } else { 1 })
}

fn cmd_params(n: usize, w: usize, q: usize) -> Outcome {
    let p = SchemeParams::new(n, w, q)?;
    let pairs = |v: &[IndexPair]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("{p}");
    println!("|X|={}", p.vertex_count());
    println!("m={}", p.m());
    println!("L={}", pairs(p.l()));
    println!("K={}", pairs(p.k()));
    let mut total = BigInt::from(0);
    for &ij in p.l() {
        let m = multiplicity(&p, ij)?;
        println!("multiplicity{ij}={m}");
        total += m;
    }
    let ok = total == p.vertex_count();
    println!("sum={total} {}", if ok { "equals |X|" } else { "DIFFERS from |X|" });
    Ok(if ok { 0 } else { 4 })
}

fn cmd_bounds(n: usize, w: usize, q: usize, r: usize, s: usize, size: Option<u64>) -> Outcome {
    let p = SchemeParams::new(n, w, q)?;
    let rs = IndexPair::new(r, s);
    if !p.in_l(rs) || rs == IndexPair::ZERO {
        return Err(fail(2, format!("(r,s)={rs} must lie in L and differ from (0,0) for {p}")));
    }
    let mut bounds: BTreeMap<&str, Rat> = BTreeMap::new();
    if r <= p.m() {
        bounds.insert("fisher", Rat::from_integer(fisher_bound(&p, r, s)?));
        if r % 2 == 1 {
            bounds.insert("fisher_odd", fisher_bound_odd(&p, r, s)?);
        }
    } else {
        println!("fisher: not applicable (r={r} > m={})", p.m());
    }
    let natural = natural_bound(&p, r, s)?;
    bounds.insert("natural", natural.clone());
    let mut all_pass = true;
    for (name, value) in &bounds {
        match size {
            Some(sz) => {
                let pass = Rat::from_integer(sz.into()) >= *value;
                all_pass &= pass;
                println!("{name}={value} {}", if pass { "PASS" } else { "FAIL" });
            }
            None => println!("{name}={value}"),
        }
    }
    if let Some(sz) = size {
        let lambda = Rat::from_integer(sz.into()) / &natural;
        if lambda.is_integer() {
            println!("implied lambda={lambda}");
        } else {
            println!("implied lambda={lambda} is not an integer, no design of this size");
            all_pass = false;
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn recipe_args(args: &[String]) -> Result<BTreeMap<String, String>, Failure> {
    args.iter()
        .map(|a| {
            a.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| fail(2, format!("expected KEY=VALUE, got {a:?}")))
        })
        .collect()
}

fn num(map: &BTreeMap<String, String>, key: &str) -> Result<usize, Failure> {
    let v = map.get(key).ok_or_else(|| fail(2, format!("missing {key}=...")))?;
    v.parse().map_err(|_| fail(2, format!("{key}={v} is not a nonnegative integer")))
}

fn load_oa(path: &str) -> Result<OrthoArray, Failure> {
    match read_ingredient(path).map_err(|e| fail(2, format!("{path}: {e}")))? {
        Ingredient::Array { array, .. } => Ok(array),
        Ingredient::Blocks { .. } => Err(fail(2, format!("{path}: expected an OA file, found a block design"))),
    }
}

fn cmd_construct(recipe: &str, args: &[String], output: Option<&Path>) -> Outcome {
    let map = recipe_args(args)?;
    let built: Constructed = match recipe {
        "sts-trivial" => {
            let (n, q) = (num(&map, "n")?, num(&map, "q")?);
            construction_a(&sts(n)?, &trivial_oa(3, q)?)?
        }
        "full" => {
            let p = SchemeParams::new(num(&map, "n")?, num(&map, "w")?, num(&map, "q")?)?;
            let oa = map.get("oa").map(|f| load_oa(f)).transpose()?;
            full_design(&p, num(&map, "s")?, oa.as_ref())?
        }
        "file-file" => {
            let blocks = map.get("blocks").ok_or_else(|| fail(2, "missing blocks=FILE"))?;
            let b = match read_ingredient(blocks).map_err(|e| fail(2, format!("{blocks}: {e}")))? {
                Ingredient::Blocks { design, .. } => design,
                Ingredient::Array { .. } => return Err(fail(2, format!("{blocks}: expected a block design file"))),
            };
            let oa = load_oa(map.get("oa").ok_or_else(|| fail(2, "missing oa=FILE"))?)?;
            construction_a(&b, &oa)?
        }
        other => return Err(fail(2, format!("unknown recipe {other:?}; use sts-trivial, full or file-file"))),
    };
    let summary = format!(
        "{} ({},{}) rows={} lambda={} verified",
        built.design.params(),
        built.r,
        built.s,
        built.design.len(),
        built.lambda
    );
    emit(&built.design, output, &summary)?;
    Ok(0)
}

/// Writes the design to `output` (summary on stdout) or to stdout (summary on stderr).
fn emit(y: &DesignArray, output: Option<&Path>, summary: &str) -> Result<(), Failure> {
    match output {
        Some(path) => {
            std::fs::write(path, write_design(y)).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
            println!("{summary}");
            println!("written to {}", path.display());
        }
        None => {
            eprintln!("{summary}");
            print!("{}", write_design(y));
        }
    }
    Ok(())
}

fn cmd_search(n: usize, w: usize, q: usize, r: usize, s: usize, opts: &SearchOptions, output: Option<&Path>) -> Outcome {
    let p = SchemeParams::new(n, w, q)?;
    let res = match exact_cover_search(&p, r, s, opts) {
        Err(Error::NonIntegralBound(b)) => {
            return Err(fail(
                2,
                format!("natural bound (q-1)^s C(n,r)/C(w,r) = {b} is not an integer, so no index-1 design exists"),
            ))
        }
        other => other?,
    };
    eprintln!("wall time {:.3?}", res.wall_time);
    match &res.solution {
        Some(y) => {
            let summary = format!("status={} nodes={} rows={} lambda=1 verified", res.status, res.nodes_explored, y.len());
            emit(y, output, &summary)?;
            Ok(0)
        }
        None => {
            println!("status={} nodes={}", res.status, res.nodes_explored);
            if res.status == SearchStatus::Exhausted {
                println!("no index-1 ({r},{s})-design exists for {p}");
            }
            Ok(1)
        }
    }
}

fn cmd_selftest(quick: bool, fixtures: Option<PathBuf>, seed: u64) -> Outcome {
    let default_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let fixture_dir = fixtures.or_else(|| default_dir.is_dir().then_some(default_dir));
    let opts = SuiteOptions { quick, fixture_dir, seed };
    let mut first_failure = None;
    for id in 1..=CRITERIA.len() {
        let out = run_criterion(id, &opts);
        println!("{out}");
        eprintln!("  took {:.2?}", out.elapsed);
        if !out.passed && first_failure.is_none() {
            first_failure = Some(out);
        }
    }
    match first_failure {
        None => {
            println!("selftest: all {} criteria passed", CRITERIA.len());
            Ok(0)
        }
        Some(out) => Err(fail(1, format!("selftest failed; first failing criterion {} ({})", out.id, out.title))),
    }
}
