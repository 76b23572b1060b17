//! The acceptance suite: nine exact or property-based checks at desk scale,
//! shared by the `selftest` subcommand and the `acceptance` test target.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    block_design_verify, complete_design, construction_a, default_oa, fixture, full_design, full_factorial_oa,
    mols_oa, oa_verify, sqs8, sts, trivial_oa, BlockDesign, OrthoArray,
};
use crate::designs::{
    avoidance_count, cardinality_formula, derived_design, lambda_table, reduce_to_w, tdesign_spectral_check,
    verify_rs_design, DesignArray,
};
use crate::exactmath::{
    binom, eigenmatrix_q, fisher_bound, fisher_bound_odd, is_nonnegative, multiplicity, natural_bound, pow, rat,
    IndexPair, KreinTable, Rat, SchemeParams,
};
use crate::format::{parse_design, write_design};
use crate::scheme::{component_coefficients, components_of_c, numeric_idempotents, Vector, ABS_TOL};
use crate::search::{brute_force_count, count_all_solutions, exact_cover_search, SearchOptions, SearchStatus};

pub const CRITERIA: [&str; 9] = [
    "figure fixtures",
    "verifier and spectral check agree",
    "components of C_rs",
    "design identities",
    "multiplicity and Krein tables",
    "bounds",
    "Construction A",
    "exact-cover search",
    "specialization bridges",
];

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Smaller samples and sweeps.
    pub quick: bool,
    /// Directory holding `fig1.rsd` and `fig2.rsd`; checked when set.
    pub fixture_dir: Option<PathBuf>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    /// 1-based criterion number.
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {} ({}): {verdict}: {}", self.id, self.title, self.detail)
    }
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: crate::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn params(n: usize, w: usize, q: usize) -> SchemeParams {
    SchemeParams::new(n, w, q).expect("parameters within caps")
}

pub fn run_criterion(id: usize, opts: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let result = match id {
        1 => criterion_fixtures(opts),
        2 => criterion_oracle(opts),
        3 => criterion_components(),
        4 => criterion_identities(opts),
        5 => criterion_tables(),
        6 => criterion_bounds(),
        7 => criterion_construction(),
        8 => criterion_search(),
        9 => criterion_bridges(opts),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionOutcome {
        id,
        title: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(opts: &SuiteOptions) -> Vec<CriterionOutcome> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, opts)).collect()
}

fn criterion_fixtures(opts: &SuiteOptions) -> Check {
    for (name, lambda, size) in [("fig1", 1, 10), ("fig2", 3, 15)] {
        let y = ok(fixture(name), name)?;
        let rep = ok(verify_rs_design(&y, 2, 1), name)?;
        ensure!(
            rep.is_design && rep.lambda == Some(lambda) && y.len() == size,
            "{name}: expected ({size} rows, lambda={lambda}), got {} rows, {rep:?}",
            y.len()
        );
        if let Some(dir) = &opts.fixture_dir {
            let path = dir.join(format!("{name}.rsd"));
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure!(text == write_design(&y), "{} differs from the built-in {name}", path.display());
            let parsed = ok(parse_design(&text), &path.display().to_string())?;
            let rep = ok(verify_rs_design(&parsed, 2, 1), name)?;
            ensure!(rep.lambda == Some(lambda), "{} verifies as {rep:?}", path.display());
        }
    }
    Ok(format!(
        "fig1 (2,1) lambda=1 |Y|=10, fig2 (2,1) lambda=3 |Y|=15{}",
        if opts.fixture_dir.is_some() { ", fixture files match" } else { "" }
    ))
}

/// A random automorphism of the scheme: a coordinate permutation combined
/// with a permutation of the nonzero symbols in each coordinate.
fn random_image(y: &DesignArray, rng: &mut ChaCha8Rng) -> DesignArray {
    let p = y.params();
    let mut perm: Vec<usize> = (0..p.n()).collect();
    perm.shuffle(rng);
    let sym: Vec<Vec<u8>> = (0..p.n())
        .map(|_| {
            let mut s: Vec<u8> = (1..p.q() as u8).collect();
            s.shuffle(rng);
            s
        })
        .collect();
    let rows = y
        .rows()
        .iter()
        .map(|row| {
            let mut out = vec![0u8; p.n()];
            for (c, &v) in row.coords().iter().enumerate() {
                if v != 0 {
                    out[perm[c]] = sym[c][v as usize - 1];
                }
            }
            out
        })
        .collect();
    DesignArray::new(p.clone(), rows).expect("automorphisms map distinct rows to distinct rows")
}

/// Designs likely to be `(r, s)`-designs: the whole space, Construction A
/// over cyclic or complete block designs, and an index-1 search result.
fn control_pool(p: &SchemeParams, r: usize, s: usize) -> Vec<DesignArray> {
    let mut pool = vec![DesignArray::full(p).expect("vertex cap")];
    let (n, w, q) = (p.n(), p.w(), p.q());
    let mut block_designs = vec![complete_design(n, w, r).expect("valid")];
    let cyclic: Vec<Vec<usize>> = (0..n).map(|shift| (0..w).map(|k| (k + shift) % n + 1).collect()).collect();
    if let Ok(b) = BlockDesign::new(n, w, r, cyclic) {
        if block_design_verify(&b).is_ok() {
            block_designs.push(b);
        }
    }
    let mut arrays: Vec<OrthoArray> = Vec::new();
    for strength in s..=w {
        if let Ok(a) = default_oa(w, q, strength) {
            arrays.push(a);
        }
    }
    for b in &block_designs {
        for a in &arrays {
            if let Ok(c) = construction_a(b, a) {
                pool.push(c.design);
            }
        }
    }
    let opts = SearchOptions { budget: 1_000_000, ..SearchOptions::default() };
    if let Ok(res) = exact_cover_search(p, r, s, &opts) {
        pool.extend(res.solution);
    }
    pool
}

fn criterion_oracle(opts: &SuiteOptions) -> Check {
    let samples = if opts.quick { 20 } else { 200 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut instances, mut designs) = (0usize, 0usize);
    for (n, w, q) in [(4, 2, 3), (5, 3, 3), (4, 2, 4), (5, 3, 4)] {
        let p = params(n, w, q);
        let x = DesignArray::full(&p).expect("vertex cap");
        let pairs: Vec<IndexPair> =
            p.l().iter().copied().filter(|rs| rs.i <= p.m() && *rs != IndexPair::ZERO).collect();
        for rs in pairs {
            let (r, s) = (rs.i, rs.j);
            let pool = control_pool(&p, r, s);
            let bound = natural_bound(&p, r, s).expect("admissible");
            for k in 0..samples {
                let y = match k % 4 {
                    0 => {
                        let size = rng.gen_range(1..=x.len());
                        let idx = (0..x.len()).choose_multiple(&mut rng, size);
                        x.select(&idx).expect("indices in range")
                    }
                    1 => random_image(pool.choose(&mut rng).expect("pool holds X"), &mut rng),
                    2 => {
                        let base = random_image(pool.choose(&mut rng).expect("pool holds X"), &mut rng);
                        near_miss(&base, &x, &mut rng)
                    }
                    _ => {
                        let unit = bound.ceil().to_integer().to_usize().unwrap_or(1).max(1);
                        let size = (unit * rng.gen_range(1..=4)).min(x.len());
                        let idx = (0..x.len()).choose_multiple(&mut rng, size);
                        x.select(&idx).expect("indices in range")
                    }
                };
                let comb = ok(verify_rs_design(&y, r, s), "verifier")?.is_design;
                let spec = ok(tdesign_spectral_check(&y, r, s), "spectral check")?;
                ensure!(comb == spec, "{p} ({r},{s}) sample {k}: verifier says {comb}, spectral check says {spec}");
                instances += 1;
                designs += comb as usize;
            }
        }
    }
    Ok(format!("{instances} instances, 0 disagreements ({designs} designs, {} non-designs)", instances - designs))
}

/// Drops a random row, or swaps one for a vertex outside `y`.
fn near_miss(y: &DesignArray, x: &DesignArray, rng: &mut ChaCha8Rng) -> DesignArray {
    let drop = rng.gen_range(0..y.len());
    if y.len() == x.len() || rng.gen_bool(0.5) {
        return y.without_row(drop).unwrap_or_else(|_| y.clone());
    }
    let members: std::collections::HashSet<&Vector> = y.rows().iter().collect();
    let outside: Vec<&Vector> = x.rows().iter().filter(|v| !members.contains(v)).collect();
    let mut rows: Vec<Vector> = y.rows().to_vec();
    rows[drop] = (*outside.choose(rng).expect("y is a proper subset")).clone();
    DesignArray::from_vectors(y.params().clone(), rows).expect("replacement is new")
}

fn criterion_components() -> Check {
    let p = params(4, 2, 3);
    let set = ok(numeric_idempotents(&p), "numeric idempotents")?;
    let mut smallest = f64::INFINITY;
    for &rs in p.l() {
        let (r, s) = (rs.i, rs.j);
        let expected: Vec<IndexPair> = p.l().iter().copied().filter(|ij| ij.j == s && ij.i >= s && ij.i <= r).collect();
        let got = ok(components_of_c(&set, r, s), "components")?;
        ensure!(got == expected, "C_{rs}: components {got:?}, expected {expected:?}");
        for (ij, c) in ok(component_coefficients(&set, r, s), "coefficients")? {
            if expected.contains(&ij) {
                smallest = smallest.min(c.abs());
            } else {
                ensure!(c.abs() <= ABS_TOL, "C_{rs}: coefficient {c:e} on {ij} should vanish");
            }
        }
    }
    ensure!(smallest >= 1e4 * ABS_TOL, "smallest nonzero coefficient {smallest:e} is below 1e4 x {ABS_TOL:e}");
    Ok(format!("all {} pairs of L at (4,2,3) match, smallest nonzero coefficient {smallest:.3}", p.l().len()))
}

/// Verified designs from every source in the crate, with their `(r, s, lambda)`.
type CorpusEntry = (String, DesignArray, usize, usize, u64);

fn design_corpus() -> std::result::Result<Vec<CorpusEntry>, String> {
    let mut out = Vec::new();
    out.push(("fig1".into(), ok(fixture("fig1"), "fig1")?, 2, 1, 1));
    out.push(("fig2".into(), ok(fixture("fig2"), "fig2")?, 2, 1, 3));
    let c = ok(construction_a(&ok(sts(7), "sts")?, &ok(trivial_oa(3, 4), "oa")?), "sts7")?;
    out.push(("sts(7) x trivial".into(), c.design, c.r, c.s, c.lambda));
    let c = ok(construction_a(&ok(sts(9), "sts")?, &ok(trivial_oa(3, 3), "oa")?), "sts9")?;
    out.push(("sts(9) x trivial".into(), c.design, c.r, c.s, c.lambda));
    let c = ok(construction_a(&sqs8(), &ok(mols_oa(4), "oa")?), "sqs8")?;
    out.push(("sqs(8) x mols(4)".into(), c.design, c.r, c.s, c.lambda));
    let c = ok(full_design(&params(4, 2, 3), 1, None), "full")?;
    out.push(("full (4,2,3) s=1".into(), c.design, c.r, c.s, c.lambda));
    let c = ok(full_design(&params(5, 4, 4), 2, None), "full")?;
    out.push(("full (5,4,4) s=2".into(), c.design, c.r, c.s, c.lambda));
    let res = ok(exact_cover_search(&params(3, 2, 3), 2, 1, &SearchOptions::default()), "search")?;
    if let Some(y) = res.solution {
        out.push(("search (3,2,3)".into(), y, 2, 1, 1));
    }
    let x = ok(DesignArray::full(&params(4, 3, 3)), "X")?;
    out.push(("X (4,3,3)".into(), x, 2, 1, 8));
    Ok(out)
}

fn criterion_identities(opts: &SuiteOptions) -> Check {
    let mut checks = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 4);
    for (name, y, r, s, lambda) in design_corpus()? {
        let p = y.params().clone();
        let n = p.n();
        let lam = BigInt::from(lambda);
        ensure!(
            cardinality_formula(&p, r, s, &lam) == rat(y.len() as i64),
            "{name}: |Y| = {} but the cardinality formula gives {}",
            y.len(),
            cardinality_formula(&p, r, s, &lam)
        );
        ok(lambda_table(&y, r, s, lambda), &name)?;
        checks += 2;
        for r2 in 0..=r {
            for r_set in (0..n).combinations(r2) {
                for s2 in 0..=s.min(r2) {
                    for s_set in r_set.iter().copied().combinations(s2) {
                        let omegas: Vec<Vec<u8>> = if s2 == 0 {
                            vec![Vec::new()]
                        } else {
                            (0..s2).map(|_| 1..p.q() as u8).multi_cartesian_product().collect()
                        };
                        for omega in omegas {
                            if r2 - s2 <= r - s {
                                let derived = ok(derived_design(&y, &r_set, &s_set, &omega), &name)?;
                                let rep = ok(verify_rs_design(&derived, r - r2, s - s2), &name)?;
                                ensure!(
                                    rep.lambda == Some(lambda),
                                    "{name}: derived design at R'={r_set:?} S'={s_set:?} omega={omega:?} is {rep:?}"
                                );
                                checks += 1;
                            }
                            let rest: Vec<usize> = (0..n).filter(|c| !r_set.contains(c)).collect();
                            let t_sets: Vec<Vec<usize>> =
                                (0..=r - r2).flat_map(|t| rest.iter().copied().combinations(t)).collect();
                            let picks: Vec<&Vec<usize>> = if opts.quick {
                                t_sets.choose_multiple(&mut rng, 2).collect()
                            } else {
                                t_sets.iter().collect()
                            };
                            for t_set in picks {
                                ok(avoidance_count(&y, r, s, lambda, &r_set, &s_set, &omega, t_set), &name)?;
                                checks += 1;
                            }
                        }
                    }
                }
            }
        }
        if r - s >= n - p.w() {
            let (w2, s2, l2) = ok(reduce_to_w(&y, r, s, lambda), &name)?;
            ensure!((w2, s2) == (p.w(), s), "{name}: reduction returned ({w2},{s2})");
            ensure!(
                BigInt::from(l2) * binom((n - r) as i64, (p.w() - r) as i64) == lam,
                "{name}: lambda' = {l2} inconsistent"
            );
            checks += 1;
        }
    }
    Ok(format!("{checks} identity checks over fixtures, constructions, a search result and X"))
}

fn criterion_tables() -> Check {
    let mut sweeps = 0;
    for n in 1..=7 {
        for q in 2..=5 {
            for w in 0..=n {
                let p = params(n, w, q);
                let mut total = BigInt::from(0);
                for &ij in p.l() {
                    let m = ok(multiplicity(&p, ij), "multiplicity")?;
                    let top = ok(eigenmatrix_q(&p, ij, IndexPair::ZERO), "eigenmatrix")?;
                    ensure!(top == Rat::from_integer(m.clone()), "{p}: Q_{ij}(0,0) = {top} but m = {m}");
                    total += m;
                }
                let expected = binom(n as i64, w as i64) * pow(q as i64 - 1, w);
                ensure!(total == expected, "{p}: multiplicity sum {total}, expected {expected}");
                sweeps += 1;
            }
        }
    }
    let mut krein_checked = 0;
    for p in [params(3, 1, 3), params(4, 2, 3)] {
        let table = ok(KreinTable::new(&p), "Krein table")?;
        for (&a, &b, &c) in itertools::iproduct!(p.l(), p.l(), p.l()) {
            let v = ok(table.get(a, b, c), "Krein number")?;
            ensure!(is_nonnegative(&v), "{p}: q_({a},{b})^{c} = {v} is negative");
            if a.i + b.i < c.i || a.j + b.j < c.j {
                ensure!(v == rat(0), "{p}: q_({a},{b})^{c} = {v} should vanish");
            }
            krein_checked += 1;
        }
    }
    let p = params(4, 2, 3);
    let set = ok(numeric_idempotents(&p), "numeric idempotents")?;
    for &ij in p.l() {
        let m = ok(multiplicity(&p, ij), "multiplicity")?;
        ensure!(
            set.rank(ij).map(BigInt::from) == Some(m.clone()),
            "(4,2,3): rank of E_{ij} is {:?}, multiplicity {m}",
            set.rank(ij)
        );
    }
    Ok(format!("{sweeps} multiplicity sweeps, {krein_checked} Krein numbers, ranks at (4,2,3) match"))
}

fn criterion_bounds() -> Check {
    let p = params(5, 3, 4);
    let fisher = ok(fisher_bound(&p, 2, 1), "fisher")?;
    let natural = ok(natural_bound(&p, 2, 1), "natural")?;
    ensure!(fisher == 5.into() && natural == rat(10), "(5,3,4,2,1): fisher {fisher}, natural {natural}");
    ensure!(ok(fixture("fig1"), "fig1")?.len() == 10, "fig1 does not attain the natural bound");
    let q = params(7, 3, 4);
    let odd_even = ok(fisher_bound_odd(&q, 3, 2), "odd bound")?;
    let odd_odd = ok(fisher_bound_odd(&q, 3, 3), "odd bound")?;
    ensure!(odd_even == rat(42) && odd_odd == rat(126), "(7,3,4): odd-case bounds {odd_even}, {odd_odd}");
    let mut checked = 0;
    for (name, y, r, s, _) in design_corpus()? {
        let p = y.params();
        let size = rat(y.len() as i64);
        let natural = ok(natural_bound(p, r, s), &name)?;
        ensure!(size >= natural, "{name}: |Y| = {size} below natural bound {natural}");
        if r <= p.m() && p.in_l(IndexPair::new(r, s)) {
            let f = ok(fisher_bound(p, r, s), &name)?;
            ensure!(size >= Rat::from_integer(f.clone()), "{name}: |Y| = {size} below Fisher-type bound {f}");
            if r % 2 == 1 {
                let f = ok(fisher_bound_odd(p, r, s), &name)?;
                ensure!(size >= f, "{name}: |Y| = {size} below odd-case bound {f}");
            }
        }
        checked += 1;
    }
    Ok(format!("fisher 5, natural 10, odd-case 42 and 126; {checked} repository designs within both bounds"))
}

fn criterion_construction() -> Check {
    let c = ok(construction_a(&ok(sts(7), "sts")?, &ok(trivial_oa(3, 4), "oa")?), "sts(7)")?;
    ensure!(
        (c.design.len(), c.r, c.s, c.lambda) == (21, 2, 1, 1),
        "sts(7) x trivial: {} rows, ({},{}) lambda={}",
        c.design.len(),
        c.r,
        c.s,
        c.lambda
    );
    let c = ok(construction_a(&ok(sts(9), "sts")?, &ok(trivial_oa(3, 3), "oa")?), "sts(9)")?;
    let rep = ok(verify_rs_design(&c.design, 2, 1), "sts(9)")?;
    ensure!(c.design.len() == 24 && rep.lambda == Some(1), "sts(9) x trivial: {} rows, {rep:?}", c.design.len());
    for q in [4, 5] {
        let a = ok(mols_oa(q), "mols")?;
        ensure!(oa_verify(&a) == Ok(1), "mols_oa({q}) fails: {:?}", oa_verify(&a));
    }
    Ok("21-row (2,1)-(7,3,4,1), 24-row (2,1)-(9,3,3,1), mols_oa(4) and mols_oa(5) index 1".into())
}

fn criterion_search() -> Check {
    let opts = SearchOptions { budget: 10_000_000, ..SearchOptions::default() };
    let res = ok(exact_cover_search(&params(5, 3, 4), 2, 1, &opts), "search (5,3,4,2,1)")?;
    let y = res.solution.ok_or_else(|| format!("(5,3,4,2,1): status {}", res.status))?;
    let rep = ok(verify_rs_design(&y, 2, 1), "verify")?;
    ensure!(y.len() == 10 && rep.lambda == Some(1), "(5,3,4,2,1): {} rows, {rep:?}", y.len());
    let nodes = res.nodes_explored;

    let p = params(3, 2, 3);
    let res = ok(exact_cover_search(&p, 2, 1, &opts), "search (3,2,3,2,1)")?;
    let all = ok(count_all_solutions(&p, 2, 1, opts.budget), "count")?.ok_or("count ran out of budget")?;
    let brute = ok(brute_force_count(&p, 2, 1, None), "brute force")?;
    ensure!(all == brute, "(3,2,3,2,1): search counts {all} designs, brute force {brute}");
    ensure!(
        (res.status == SearchStatus::Found) == (brute > 0),
        "(3,2,3,2,1): status {} but brute force counts {brute}",
        res.status
    );
    if let Some(y) = &res.solution {
        let rep = ok(verify_rs_design(y, 2, 1), "verify")?;
        ensure!(rep.lambda == Some(1), "(3,2,3,2,1) solution fails: {rep:?}");
    }
    Ok(format!("(5,3,4,2,1) found in {nodes} nodes; (3,2,3,2,1) has {brute} designs by both methods"))
}

fn criterion_bridges(opts: &SuiteOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 9);
    let exhaustive_cap = if opts.quick { 10 } else { 15 };
    let samples = if opts.quick { 200 } else { 4000 };
    let mut compared = 0usize;

    // q = 2: supports as blocks
    let max_n = if opts.quick { 5 } else { 6 };
    for n in 1..=max_n {
        for w in 1..=n {
            let p = params(n, w, 2);
            let x = DesignArray::full(&p).expect("vertex cap");
            for y in subsets(&x, exhaustive_cap, samples, &mut rng) {
                let blocks: Vec<Vec<usize>> = y
                    .rows()
                    .iter()
                    .map(|row| (0..n).filter(|&c| row.get(c) != 0).map(|c| c + 1).collect())
                    .collect();
                for r in 0..=w {
                    let b = ok(BlockDesign::new(n, w, r, blocks.clone()), "blocks")?;
                    let by_blocks = block_design_verify(&b).ok();
                    for s in [0, r] {
                        let rep = ok(verify_rs_design(&y, r, s), "verifier")?;
                        let by_rows = rep.is_design.then_some(rep.lambda).flatten();
                        ensure!(by_rows == by_blocks, "({n},{w},2) ({r},{s}): verifier {by_rows:?}, blocks {by_blocks:?}");
                        compared += 1;
                    }
                }
            }
        }
    }

    // w = n: rows as an orthogonal array
    for n in 1..=4 {
        for q in 2..=4 {
            let p = params(n, n, q);
            let x = DesignArray::full(&p).expect("vertex cap");
            let mut extra = Vec::new();
            for s in 0..=n {
                if let Ok(a) = default_oa(n, q, s) {
                    extra.push(oa_rows(&p, &a));
                }
            }
            if let Ok(a) = full_factorial_oa(n, q) {
                extra.push(oa_rows(&p, &a));
            }
            let mut ys = subsets(&x, exhaustive_cap, samples, &mut rng);
            for base in &extra {
                ys.push(base.clone());
                ys.push(random_image(base, &mut rng));
                if base.len() > 1 {
                    ys.push(near_miss(base, &x, &mut rng));
                }
            }
            for y in ys {
                let rows: Vec<Vec<u8>> = y.rows().iter().map(|v| v.coords().to_vec()).collect();
                for s in 0..=n {
                    let a = ok(OrthoArray::new(q - 1, n, s, rows.clone()), "array")?;
                    let by_oa = oa_verify(&a).ok();
                    for r in s..=n {
                        let rep = ok(verify_rs_design(&y, r, s), "verifier")?;
                        let by_rows = rep.is_design.then_some(rep.lambda).flatten();
                        ensure!(by_rows == by_oa, "({n},{n},{q}) ({r},{s}): verifier {by_rows:?}, OA check {by_oa:?}");
                        compared += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{compared} comparisons, 0 disagreements"))
}

fn oa_rows(p: &SchemeParams, a: &OrthoArray) -> DesignArray {
    DesignArray::new(p.clone(), a.rows().to_vec()).expect("index-1 arrays have distinct rows")
}

/// Every nonempty subset of `X` when `|X| <= cap`, otherwise `samples`
/// seeded random subsets of random size.
fn subsets(x: &DesignArray, cap: usize, samples: usize, rng: &mut ChaCha8Rng) -> Vec<DesignArray> {
    let len = x.len();
    if len <= cap {
        (1u64..1 << len)
            .map(|mask| {
                let idx: Vec<usize> = (0..len).filter(|&i| mask & (1 << i) != 0).collect();
                x.select(&idx).expect("indices in range")
            })
            .collect()
    } else {
        (0..samples)
            .map(|_| {
                let size = rng.gen_range(1..=len);
                x.select(&(0..len).choose_multiple(rng, size)).expect("indices in range")
            })
            .collect()
    }
}
