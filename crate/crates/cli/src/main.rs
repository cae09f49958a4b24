//! Command-line frontend: compute nuclei of a quasigroup given as a Cayley
//! table, apply parastrophes and isostrophisms, verify the relation families
//! tying the eighteen nuclei together, classify inverse properties, and time
//! the fast paths against their reference implementations.
//!
//! Exit codes: 0 on success, 1 when a requested verification fails or the
//! input table is rejected by `validate`, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sigma_nuclei::nuclei::{AUTOSTROPHISM_ORDER_BOUND, ORACLE_ORDER_BOUND};
use sigma_nuclei::{
    classify, compute_all_nuclei, compute_all_nuclei_oracle, compute_nucleus,
    compute_nucleus_oracle, derive_all_nuclei, find_m_inverse_witnesses, find_rst_witnesses,
    random_quasigroup, summarize, verify_inverse_claims, verify_inverse_relations,
    verify_isostrophe_relations, verify_parastrophe_relations, verify_product_relations,
    CheckStatus, Isostrophism, IsotopyTriple, NucleusKind, Perm, Quasigroup, RelationCheck,
    S3Elem, SigmaNucleus, ALL_KINDS, ALL_S3,
};

#[derive(Parser)]
#[command(
    name = "sigma-nuclei",
    version,
    about = "Nuclei of finite quasigroups under slot permutations",
    after_help = "Tables are whitespace-separated Cayley tables over 0..n, one row per line; \
                  lines starting with '#' are comments. Set SIGMA_NUCLEI_THREADS to bound the \
                  worker count of the large-order autostrophism enumeration."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file holds a valid Cayley table.
    Validate { file: PathBuf },
    /// Compute nuclei and print their members.
    Nuclei {
        file: PathBuf,
        /// Slot permutation: e, 12, 13, 23, 123, 132 or all.
        #[arg(long, default_value = "all")]
        sigma: String,
        /// Nucleus position: l, r, m or all.
        #[arg(long, default_value = "all")]
        kind: String,
        /// Recompute with the exponential reference enumeration instead.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print one of the six tables obtained by permuting argument slots.
    Parastrophe {
        file: PathBuf,
        /// Slot permutation: e, 12, 13, 23, 123 or 132.
        #[arg(long)]
        tau: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply an isostrophism (slot permutation plus three bijections).
    Isostrophe {
        file: PathBuf,
        /// Slot permutation: e, 12, 13, 23, 123 or 132.
        #[arg(long, default_value = "e")]
        tau: String,
        /// First bijection as comma-separated images, default identity.
        #[arg(long)]
        alpha: Option<String>,
        /// Second bijection, default identity.
        #[arg(long)]
        beta: Option<String>,
        /// Third bijection, default identity.
        #[arg(long)]
        gamma: Option<String>,
        /// Draw the three bijections from a seeded generator instead.
        #[arg(long, conflicts_with_all = ["alpha", "beta", "gamma"])]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Verify the relation families connecting the eighteen nuclei.
    Verify {
        file: PathBuf,
        /// Relation family id (2-7) or all.
        #[arg(long, default_value = "all")]
        family: String,
        /// Random isostrophisms to sample for the transport families.
        #[arg(long, default_value_t = 10)]
        thetas: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Report which inverse properties the quasigroup satisfies.
    Classify {
        file: PathBuf,
        /// Also search witnesses for a power-shifted identity, given as "r,s,t".
        #[arg(long, allow_hyphen_values = true)]
        rst: Option<String>,
        /// Also search witnesses for the shifted-inverse identity with this shift.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Time derivation against recomputation and the fast path against the oracle.
    Bench {
        /// Orders of the random tables to time.
        #[arg(long, value_delimiter = ',', default_value = "5,6")]
        orders: Vec<usize>,
        /// Repetitions per measurement (the median is reported).
        #[arg(long, default_value_t = 30)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the exponential reference timings.
        #[arg(long)]
        skip_oracle: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Nuclei {
            file,
            sigma,
            kind,
            oracle,
            json,
        } => nuclei(&file, &sigma, &kind, oracle, json).map(|()| true),
        Command::Parastrophe { file, tau, json } => {
            parastrophe(&file, &tau, json).map(|()| true)
        }
        Command::Isostrophe {
            file,
            tau,
            alpha,
            beta,
            gamma,
            seed,
            json,
        } => isostrophe(&file, &tau, [alpha, beta, gamma], seed, json).map(|()| true),
        Command::Verify {
            file,
            family,
            thetas,
            seed,
            json,
        } => verify_relations(&file, &family, thetas, seed, json),
        Command::Classify { file, rst, m, json } => {
            classify_command(&file, rst.as_deref(), m, json).map(|()| true)
        }
        Command::Bench {
            orders,
            iters,
            seed,
            skip_oracle,
        } => bench(&orders, iters, seed, skip_oracle).map(|()| true),
    }
}

fn load(file: &Path) -> Result<Quasigroup> {
    let text =
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    Quasigroup::parse(&text).with_context(|| format!("parsing {}", file.display()))
}

fn validate(file: &Path) -> Result<bool> {
    let text =
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    match Quasigroup::parse(&text) {
        Ok(q) => {
            println!("valid quasigroup of order {}", q.order());
            Ok(true)
        }
        Err(err) => {
            println!("invalid: {err}");
            Ok(false)
        }
    }
}

fn sigma_filter(s: &str) -> Result<Vec<S3Elem>> {
    if s == "all" {
        Ok(ALL_S3.to_vec())
    } else {
        Ok(vec![S3Elem::parse_literal(s)?])
    }
}

fn kind_filter(s: &str) -> Result<Vec<NucleusKind>> {
    if s == "all" {
        Ok(ALL_KINDS.to_vec())
    } else {
        Ok(vec![NucleusKind::parse_literal(s)?])
    }
}

fn perm_json(p: &Perm) -> Value {
    Value::from(p.images().to_vec())
}

fn triple_json(t: &IsotopyTriple) -> Value {
    Value::from(t.perms().iter().map(perm_json).collect::<Vec<_>>())
}

fn member_json(m: &Isostrophism) -> Value {
    json!({ "sigma": m.sigma.literal(), "components": triple_json(&m.triple) })
}

fn table_rows(q: &Quasigroup) -> Vec<Vec<usize>> {
    let n = q.order();
    (0..n)
        .map(|x| (0..n).map(|y| q.get(x, y)).collect())
        .collect()
}

fn nuclei(file: &Path, sigma: &str, kind: &str, oracle: bool, json_out: bool) -> Result<()> {
    let q = load(file)?;
    let mut computed: Vec<SigmaNucleus> = Vec::new();
    for &s in &sigma_filter(sigma)? {
        for &k in &kind_filter(kind)? {
            computed.push(if oracle {
                compute_nucleus_oracle(&q, s, k, ORACLE_ORDER_BOUND)?
            } else {
                compute_nucleus(&q, s, k)
            });
        }
    }
    if json_out {
        let entries: Vec<Value> = computed
            .iter()
            .map(|nucleus| {
                json!({
                    "sigma": nucleus.sigma.literal(),
                    "kind": nucleus.kind.literal(),
                    "size": nucleus.len(),
                    "members": nucleus.members().iter().map(member_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", json!({ "order": q.order(), "nuclei": entries }));
    } else {
        println!("order {}", q.order());
        for nucleus in &computed {
            println!(
                "N({},{}): {} members",
                nucleus.sigma,
                nucleus.kind,
                nucleus.len()
            );
            for member in nucleus.members() {
                println!("  {member}");
            }
        }
    }
    Ok(())
}

fn parastrophe(file: &Path, tau: &str, json_out: bool) -> Result<()> {
    let q = load(file)?;
    let tau = S3Elem::parse_literal(tau)?;
    let image = q.parastrophe(tau);
    if json_out {
        println!(
            "{}",
            json!({ "order": q.order(), "tau": tau.literal(), "rows": table_rows(&image) })
        );
    } else {
        print!("{image}");
    }
    Ok(())
}

fn isostrophe(
    file: &Path,
    tau: &str,
    components: [Option<String>; 3],
    seed: Option<u64>,
    json_out: bool,
) -> Result<()> {
    let q = load(file)?;
    let n = q.order();
    let tau = S3Elem::parse_literal(tau)?;
    let triple = if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Isostrophism::random(n, &mut rng).triple
    } else {
        let names = ["--alpha", "--beta", "--gamma"];
        let mut perms = Vec::with_capacity(3);
        for (text, name) in components.iter().zip(names) {
            let p = match text {
                Some(text) => Perm::parse_literal(text)?,
                None => Perm::identity(n),
            };
            if p.degree() != n {
                bail!("{name} has degree {} but the table has order {n}", p.degree());
            }
            perms.push(p);
        }
        IsotopyTriple::new([perms[0].clone(), perms[1].clone(), perms[2].clone()])?
    };
    let theta = Isostrophism::new(tau, triple);
    let image = theta.apply(&q)?;
    if json_out {
        println!(
            "{}",
            json!({
                "order": n,
                "theta": { "sigma": theta.sigma.literal(), "components": triple_json(&theta.triple) },
                "seed": seed,
                "image": table_rows(&image),
            })
        );
    } else {
        if let Some(seed) = seed {
            println!("seed: {seed}");
        }
        println!("theta: {theta}");
        print!("{image}");
    }
    Ok(())
}

fn verify_relations(
    file: &Path,
    family: &str,
    thetas: usize,
    seed: u64,
    json_out: bool,
) -> Result<bool> {
    let selected: Option<u8> = if family == "all" {
        None
    } else {
        match family.parse::<u8>() {
            Ok(id) if (2..=7).contains(&id) => Some(id),
            _ => bail!("unknown relation family {family:?} (expected 2-7 or all)"),
        }
    };
    let want = |id: u8| selected.is_none() || selected == Some(id);
    let q = load(file)?;
    let nuclei = compute_all_nuclei(&q);
    let mut checks: Vec<RelationCheck> = Vec::new();
    if want(2) || want(5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..thetas {
            let theta = Isostrophism::random(q.order(), &mut rng);
            checks.extend(verify_isostrophe_relations(&q, &nuclei, &theta)?);
        }
    }
    if want(3) {
        checks.extend(verify_inverse_relations(&nuclei));
    }
    if want(4) {
        checks.extend(verify_product_relations(&nuclei));
    }
    if want(6) {
        for tau in ALL_S3 {
            checks.extend(verify_parastrophe_relations(&q, &nuclei, tau)?);
        }
    }
    if want(7) {
        checks.extend(verify_inverse_claims(&q, &nuclei)?);
    }
    if let Some(id) = selected {
        checks.retain(|c| c.family_id == id);
    }
    let reports = summarize(&checks);
    let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
    if json_out {
        let families: Vec<Value> = reports
            .iter()
            .map(|r| {
                let failures: Vec<Value> = r
                    .failures
                    .iter()
                    .map(|c| {
                        let detail = match &c.status {
                            CheckStatus::Failed { detail } => detail.clone(),
                            _ => String::new(),
                        };
                        json!({ "description": c.description, "detail": detail })
                    })
                    .collect();
                json!({
                    "id": r.family_id,
                    "total": r.total,
                    "passed": r.passed,
                    "vacuous": r.vacuous,
                    "failed": r.failures.len(),
                    "failures": failures,
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "order": q.order(),
                "thetas": thetas,
                "seed": seed,
                "families": families,
            })
        );
    } else {
        println!(
            "order {}, transport sample: {thetas} isostrophisms, seed {seed}",
            q.order()
        );
        for r in &reports {
            println!(
                "family {}: {} checks, {} passed, {} vacuous, {} failed",
                r.family_id,
                r.total,
                r.passed,
                r.vacuous,
                r.failures.len()
            );
            for failure in &r.failures {
                if let CheckStatus::Failed { detail } = &failure.status {
                    println!("  FAIL {}: {detail}", failure.description);
                }
            }
        }
        if failed == 0 {
            println!("all {} checks passed", checks.len());
        } else {
            println!("{failed} of {} checks failed", checks.len());
        }
    }
    Ok(failed == 0)
}

fn witness_list(perms: &[Perm]) -> String {
    if perms.is_empty() {
        "none".into()
    } else {
        perms
            .iter()
            .map(Perm::to_string)
            .collect::<Vec<_>>()
            .join("  ")
    }
}

fn classify_command(file: &Path, rst: Option<&str>, m: Option<i64>, json_out: bool) -> Result<()> {
    let q = load(file)?;
    let nuclei = compute_all_nuclei(&q);
    let report = classify(&q, &nuclei);
    let rst_result = match rst {
        Some(text) => {
            let parts: Vec<i64> = text
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<i64>()
                        .with_context(|| format!("bad --rst component {tok:?}"))
                })
                .collect::<Result<_>>()?;
            let [r, s, t]: [i64; 3] = parts
                .try_into()
                .map_err(|_| anyhow::anyhow!("--rst expects exactly three integers"))?;
            Some((
                (r, s, t),
                find_rst_witnesses(&q, r, s, t, AUTOSTROPHISM_ORDER_BOUND)?,
            ))
        }
        None => None,
    };
    let m_result = match m {
        Some(m) => Some((m, find_m_inverse_witnesses(&q, m, AUTOSTROPHISM_ORDER_BOUND)?)),
        None => None,
    };
    if json_out {
        let perm_array = |perms: &[Perm]| Value::from(perms.iter().map(perm_json).collect::<Vec<_>>());
        let mut out = json!({
            "order": report.order,
            "lip": perm_array(&report.lip),
            "rip": perm_array(&report.rip),
            "wip": perm_array(&report.wip),
            "ci": perm_array(&report.ci),
            "wcip": perm_array(&report.wcip),
            "ip": report.has_ip(),
            "inverse_triples": report
                .inverse_triples
                .as_ref()
                .map(|ts| Value::from(ts.iter().map(triple_json).collect::<Vec<_>>()))
                .unwrap_or(Value::Null),
        });
        if let Some(((r, s, t), witnesses)) = &rst_result {
            out["rst"] = json!({ "r": r, "s": s, "t": t, "witnesses": perm_array(witnesses) });
        }
        if let Some((m, witnesses)) = &m_result {
            out["m"] = json!({ "m": m, "witnesses": perm_array(witnesses) });
        }
        println!("{out}");
    } else {
        println!("order {}", report.order);
        println!("LIP:  {}", witness_list(&report.lip));
        println!("RIP:  {}", witness_list(&report.rip));
        println!("WIP:  {}", witness_list(&report.wip));
        println!("CI:   {}", witness_list(&report.ci));
        println!("WCIP: {}", witness_list(&report.wcip));
        println!("IP:   {}", if report.has_ip() { "yes" } else { "no" });
        match &report.inverse_triples {
            Some(triples) => println!("inverse triples: {}", triples.len()),
            None => println!(
                "inverse triples: skipped (order above {AUTOSTROPHISM_ORDER_BOUND})"
            ),
        }
        if let Some(((r, s, t), witnesses)) = &rst_result {
            println!("({r},{s},{t})-inverse: {}", witness_list(witnesses));
        }
        if let Some((m, witnesses)) = &m_result {
            println!("{m}-inverse: {}", witness_list(witnesses));
        }
    }
    Ok(())
}

fn median_seconds(iters: usize, mut work: impl FnMut()) -> f64 {
    let mut samples: Vec<f64> = (0..iters.max(1))
        .map(|_| {
            let start = Instant::now();
            work();
            start.elapsed().as_secs_f64()
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

fn format_seconds(secs: f64) -> String {
    if secs < 1e-3 {
        format!("{:.2}us", secs * 1e6)
    } else if secs < 1.0 {
        format!("{:.2}ms", secs * 1e3)
    } else {
        format!("{secs:.2}s")
    }
}

fn bench(orders: &[usize], iters: usize, seed: u64, skip_oracle: bool) -> Result<()> {
    for &order in orders {
        let q = random_quasigroup(order, seed);
        println!("order {order} (seed {seed}):");
        let nuclei = compute_all_nuclei(&q);
        // A pure slot swap makes all eighteen nuclei of the image derivable.
        let theta = Isostrophism::pure_parastrophe(S3Elem::S13, order);
        let derived = median_seconds(iters, || {
            derive_all_nuclei(&nuclei, &theta).expect("map holds all keys");
        });
        let direct = median_seconds(iters, || {
            let image = theta.apply(&q).expect("degrees match");
            compute_all_nuclei(&image);
        });
        println!("  all-nuclei derivation:  {}", format_seconds(derived));
        println!(
            "  direct recomputation:   {}  ({:.1}x)",
            format_seconds(direct),
            direct / derived
        );
        if !skip_oracle {
            if order > ORACLE_ORDER_BOUND {
                println!("  reference enumeration:  skipped (order above {ORACLE_ORDER_BOUND})");
                continue;
            }
            let fast = median_seconds(iters, || {
                compute_all_nuclei(&q);
            });
            let oracle = median_seconds(iters.min(3), || {
                compute_all_nuclei_oracle(&q, ORACLE_ORDER_BOUND).expect("order checked");
            });
            println!("  fast all-nuclei:        {}", format_seconds(fast));
            println!(
                "  reference all-nuclei:   {}  ({:.1}x)",
                format_seconds(oracle),
                oracle / fast
            );
        }
    }
    Ok(())
}
