//! Command-line entry point: epr/pr computation, constructions, attainability
//! enumeration with catalog verification, pattern matching, theorem checks,
//! and linear-code analysis.
//!
//! Exit codes: 0 success, 1 verification diff or violation, 2 usage error.

use clap::{Parser, Subcommand};
use eprseq::codes::{self, LinearCode};
use eprseq::constructions;
use eprseq::enumerate::{self, EnumOptions, PruningMode};
use eprseq::epr::{epr, epr_census, pr};
use eprseq::pattern::{Catalog, FormPattern};
use eprseq::theorems::{self, Prefix};
use eprseq::{EprSequence, Error, FieldSpec, PrSequence, SymMatrix};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "epr", version, about = "epr-sequences of symmetric matrices over finite fields")]
struct Cli {
    /// emit machine-readable JSON reports
    #[arg(long, global = true)]
    json: bool,
    /// seed for randomized commands
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// shard count for enumeration work (results are shard-count independent)
    #[arg(long, global = true, default_value_t = 1)]
    shards: usize,
    /// allow enumeration orders beyond the desk-scale caps
    #[arg(long, global = true)]
    big: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the epr-sequence of a matrix file
    Epr {
        file: PathBuf,
        /// also print the pr-sequence
        #[arg(long)]
        pr: bool,
        /// use the unoptimized census implementation
        #[arg(long)]
        census: bool,
        /// only compute the first m letters
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Compute the pr-sequence of a matrix file
    Pr { file: PathBuf },
    /// Build a named matrix and print it in the matrix text format
    Construct {
        /// identity, zero, all-ones, j-minus-ki, c5-composite, m-aana, m-aann, m-naaana
        name: String,
        #[arg(long, default_value = "3")]
        q: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// scalar k for j-minus-ki
        #[arg(long)]
        k: Option<u32>,
        /// write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate attainable epr-sequences, optionally against a catalog
    Enumerate {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// restrict the report to sequences over {A, N}
        #[arg(long)]
        alphabet: Option<String>,
        /// verify against a built-in catalog (f2 or f3)
        #[arg(long)]
        catalog: Option<String>,
        /// write one witness matrix per attained sequence to a JSON file
        #[arg(long)]
        witnesses: Option<PathBuf>,
        /// force full or pruned iteration (default: auto)
        #[arg(long)]
        mode: Option<String>,
        /// persist per-shard results for resumable runs
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Pattern DSL operations
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Theorem checks
    #[command(subcommand)]
    Check(CheckCmd),
    /// Linear-code analysis
    #[command(subcommand)]
    Code(CodeCmd),
}

#[derive(Subcommand)]
enum PatternCmd {
    /// Match a sequence against a single form pattern
    Match { pattern: String, sequence: String },
    /// Query a built-in catalog
    Catalog {
        /// f2 or f3
        name: String,
        /// expand the catalog at this length
        #[arg(long)]
        n: Option<usize>,
        /// list the expansion, one sequence per line
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Scan a sequence for forbidden patterns
    Forbidden {
        sequence: String,
        /// field characteristic
        #[arg(long)]
        p: u32,
    },
    /// Derive Ramsey-threshold position constraints
    Ramsey {
        /// N, NA, or AN
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Search a matrix for a monochromatic principal submatrix
    Mono {
        file: PathBuf,
        /// comma-separated allowed off-diagonal values
        #[arg(long)]
        t: String,
        #[arg(long)]
        k: usize,
    },
    /// Census of order-5 graphs with G and complement triangle-free
    TriangleFree,
    /// Audit derived constraints against the enumerator's attained set
    Audit {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// N, NA, or AN
        #[arg(long)]
        prefix: String,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Analyze a generator-matrix file
    Analyze {
        file: PathBuf,
        /// print the weight enumerator
        #[arg(long)]
        enumerator: bool,
        /// print the epr(HᵀH) distance bound
        #[arg(long)]
        bound: bool,
        /// print the spark of the parity-check matrix
        #[arg(long)]
        spark: bool,
    },
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &PathBuf) -> Result<SymMatrix, Error> {
    SymMatrix::parse_text(&read_file(path)?)
}

fn pr_string(p: &PrSequence) -> String {
    p.bits().iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// 0 = success, 1 = verification diff
fn run(cli: &Cli) -> Result<u8, Error> {
    let opts = EnumOptions {
        alphabet_an_only: false,
        mode: PruningMode::Auto,
        shards: cli.shards,
        big: cli.big,
        checkpoint: None,
        progress: !cli.json,
    };
    match &cli.command {
        Command::Epr { file, pr: with_pr, census, prefix } => {
            let b = load_matrix(file)?;
            let e = match (census, prefix) {
                (true, Some(_)) => {
                    return Err(Error::usage("--census and --prefix are mutually exclusive"))
                }
                (true, None) => epr_census(&b),
                (false, Some(m)) => eprseq::epr::epr_prefix(&b, *m)?,
                (false, None) => epr(&b),
            };
            let p = with_pr.then(|| pr(&b));
            if cli.json {
                let mut report = json!({ "epr": e.to_string() });
                if let Some(p) = &p {
                    report["pr"] = json!(pr_string(p));
                }
                println!("{report}");
            } else {
                println!("{e}");
                if let Some(p) = &p {
                    println!("r0={} r1..rn={}", pr_string(p).get(0..1).unwrap_or("-"), &pr_string(p)[1..]);
                }
            }
            Ok(0)
        }
        Command::Pr { file } => {
            let b = load_matrix(file)?;
            let p = pr(&b);
            if cli.json {
                println!("{}", json!({ "pr": pr_string(&p) }));
            } else {
                println!("{}", pr_string(&p));
            }
            Ok(0)
        }
        Command::Construct { name, q, n, k, out } => {
            let spec = FieldSpec::parse(q)?;
            let b = constructions::build_named(name, &spec, *n, *k)?;
            let text = b.to_text();
            match out {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Enumerate { q, n, alphabet, catalog, witnesses, mode, checkpoint } => {
            let mut opts = opts;
            opts.checkpoint = checkpoint.clone();
            match alphabet.as_deref() {
                None => {}
                Some("AN") => opts.alphabet_an_only = true,
                Some(other) => {
                    return Err(Error::usage(format!(
                        "unsupported --alphabet '{other}' (only AN)"
                    )))
                }
            }
            match mode.as_deref() {
                None | Some("auto") => {}
                Some("full") => opts.mode = PruningMode::Full,
                Some("pruned") => opts.mode = PruningMode::Pruned,
                Some(other) => {
                    return Err(Error::usage(format!(
                        "unknown --mode '{other}' (auto, full, pruned)"
                    )))
                }
            }
            let (report, diffs) = match catalog {
                Some(name) => {
                    let cat = Catalog::by_name(name)?;
                    let diff = enumerate::verify_catalog(*q, *n, &cat, &opts)?;
                    (diff.report, Some((diff.missing, diff.extra)))
                }
                None => (enumerate::attainable(*q, *n, &opts)?, None),
            };
            if let Some(path) = witnesses {
                let map: serde_json::Map<String, serde_json::Value> = report
                    .attained
                    .iter()
                    .map(|(s, w)| (s.to_string(), json!(w.to_text())))
                    .collect();
                std::fs::write(path, serde_json::to_string_pretty(&map).expect("serializable"))
                    .map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let attained: Vec<String> = report.attained.keys().map(|s| s.to_string()).collect();
            let (missing, extra) = match &diffs {
                Some((m, e)) => (
                    m.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    e.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                ),
                None => (Vec::new(), Vec::new()),
            };
            if cli.json {
                let report = json!({
                    "q": report.q,
                    "n": report.n,
                    "attained": attained,
                    "diffs": { "missing": missing, "extra": extra },
                    "visited": report.visited,
                    "pruned": report.pruned,
                });
                println!("{report}");
            } else {
                println!("attained ({}):", attained.len());
                for s in &attained {
                    println!("  {s}");
                }
                println!("visited {} matrices, pruned {}", report.visited, report.pruned);
                if diffs.is_some() {
                    println!("catalog missing: {missing:?}");
                    println!("catalog extra:   {extra:?}");
                }
            }
            Ok(if missing.is_empty() && extra.is_empty() { 0 } else { 1 })
        }
        Command::Pattern(PatternCmd::Match { pattern, sequence }) => {
            let p = FormPattern::parse(pattern)?;
            let s: EprSequence = sequence.parse()?;
            let matched = p.matches(&s);
            if cli.json {
                println!("{}", json!({ "pattern": pattern, "sequence": sequence, "match": matched }));
            } else {
                println!("{}", if matched { "match" } else { "no match" });
            }
            Ok(if matched { 0 } else { 1 })
        }
        Command::Pattern(PatternCmd::Catalog { name, n, list }) => {
            let cat = Catalog::by_name(name)?;
            match n {
                None => {
                    if cli.json {
                        let forms: Vec<String> =
                            cat.forms.iter().map(|(id, f)| format!("{id}. {f}")).collect();
                        println!("{}", json!({ "catalog": cat.name, "q": cat.q, "forms": forms }));
                    } else {
                        for (id, f) in &cat.forms {
                            println!("{id}. {f}");
                        }
                    }
                }
                Some(n) => {
                    let set = cat.enumerate(*n)?;
                    let seqs: Vec<String> = set.iter().map(|s| s.to_string()).collect();
                    if cli.json {
                        println!("{}", json!({ "catalog": cat.name, "n": n, "count": seqs.len(), "sequences": seqs }));
                    } else if *list {
                        for s in &seqs {
                            println!("{s}");
                        }
                    } else {
                        println!("{} sequences of length {n}", seqs.len());
                    }
                }
            }
            Ok(0)
        }
        Command::Check(CheckCmd::Forbidden { sequence, p }) => {
            let s: EprSequence = sequence.parse()?;
            let violations = theorems::forbidden_scan(&s, *p);
            if cli.json {
                let vs: Vec<_> = violations
                    .iter()
                    .map(|v| json!({ "rule": v.rule, "position": v.position, "message": v.message }))
                    .collect();
                println!("{}", json!({ "sequence": sequence, "p": p, "violations": vs }));
            } else if violations.is_empty() {
                println!("no violations");
            } else {
                for v in &violations {
                    println!("violation ({} rule, position {}): {}", v.rule, v.position, v.message);
                }
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Check(CheckCmd::Ramsey { prefix, q, n }) => {
            let prefix = Prefix::parse(prefix)?;
            let cs = theorems::ramsey_constraints(prefix, *q, *n)?;
            let notes = theorems::out_of_reach(prefix, *q, *n)?;
            if cli.json {
                let cs: Vec<_> = cs
                    .iter()
                    .map(|c| {
                        json!({
                            "position": c.position,
                            "allowed": c.allowed.iter().map(|l| l.as_char().to_string()).collect::<Vec<_>>(),
                            "provenance": c.provenance,
                            "from_exact_bound": c.from_exact_bound,
                        })
                    })
                    .collect();
                println!("{}", json!({ "prefix": prefix.to_string(), "q": q, "n": n, "constraints": cs, "out_of_reach": notes }));
            } else {
                for c in &cs {
                    let letters: String = c.allowed.iter().map(|l| l.as_char()).collect();
                    println!("position {}: allowed {{{letters}}} ({})", c.position, c.provenance);
                }
                for note in &notes {
                    println!("{note}");
                }
            }
            Ok(0)
        }
        Command::Check(CheckCmd::Mono { file, t, k }) => {
            let b = load_matrix(file)?;
            let t: Result<Vec<u32>, _> = t
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::usage(format!("bad value '{v}' in --t")))
                })
                .collect();
            let found = theorems::monochromatic_principal_submatrix(&b, &t?, *k)?;
            match found {
                Some(alpha) => {
                    let idx: Vec<usize> = alpha.iter().collect();
                    if cli.json {
                        println!("{}", json!({ "found": true, "alpha": idx }));
                    } else {
                        println!("found alpha = {idx:?}");
                    }
                    Ok(0)
                }
                None => {
                    if cli.json {
                        println!("{}", json!({ "found": false }));
                    } else {
                        println!("none");
                    }
                    Ok(1)
                }
            }
        }
        Command::Check(CheckCmd::TriangleFree) => {
            let census = theorems::triangle_free_order5_census();
            if cli.json {
                println!("{}", json!({ "count": census.count, "graphs": census.graphs }));
            } else {
                println!(
                    "{} labeled graphs on 5 vertices with G and complement triangle-free; all are C5",
                    census.count
                );
            }
            Ok(0)
        }
        Command::Check(CheckCmd::Audit { q, n, prefix }) => {
            let prefix = Prefix::parse(prefix)?;
            let report = theorems::empirical_constraint_audit(*q, *n, prefix, &opts)?;
            if cli.json {
                let violations: Vec<_> = report
                    .violations
                    .iter()
                    .map(|(s, pos)| json!({ "sequence": s.to_string(), "position": pos }))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "q": q,
                        "n": n,
                        "prefix": prefix.to_string(),
                        "constraints_checked": report.constraints.len(),
                        "sequences_checked": report.sequences_checked,
                        "violations": violations,
                        "not_testable": report.not_testable,
                    })
                );
            } else {
                println!(
                    "{} constraints checked over {} sequences, {} violations",
                    report.constraints.len(),
                    report.sequences_checked,
                    report.violations.len()
                );
                for note in &report.not_testable {
                    println!("{note}");
                }
            }
            Ok(if report.violations.is_empty() { 0 } else { 1 })
        }
        Command::Code(CodeCmd::Analyze { file, enumerator, bound, spark }) => {
            let c = LinearCode::from_text(&read_file(file)?)?;
            let h = c.parity_check();
            let mut report = json!({
                "q": c.spec().q(),
                "n": c.n(),
                "k": c.k(),
                "dual_rank": h.rows(),
            });
            let mut lines = vec![format!(
                "[{}, {}] code over GF({}), dual rank {}",
                c.n(),
                c.k(),
                c.spec().q(),
                h.rows()
            )];
            let d = c.min_distance()?;
            report["min_distance"] = json!(d);
            lines.push(format!("minimum distance {d}"));
            if *enumerator {
                let a = c.weight_enumerator()?;
                report["weight_enumerator"] = json!(a);
                lines.push(format!("weight enumerator {a:?}"));
            }
            if *bound {
                let b = codes::epr_distance_bound(&c)?;
                report["epr"] = json!(b.epr.to_string());
                report["bound"] = json!(b.bound);
                report["tight"] = json!(b.tight);
                lines.push(format!(
                    "epr(H^T H) = {}, distance bound {} ({})",
                    b.epr,
                    b.bound,
                    if b.tight == Some(true) { "tight" } else { "not tight" }
                ));
            }
            if *spark {
                let s = codes::spark(&h)?;
                report["spark"] = json!(s);
                lines.push(format!("spark(H) = {s}"));
            }
            if cli.json {
                println!("{report}");
            } else {
                for l in lines {
                    println!("{l}");
                }
            }
            Ok(0)
        }
    }
}

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
