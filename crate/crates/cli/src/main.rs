//! `lenset` — length sets of numerical semigroups from the command line.
//!
//! Every subcommand prints a human table by default and a schema-stable JSON
//! object with `--json`.  Exit codes: 0 success, 1 domain error (and for
//! `verify`, a disagreement at or above the explicit bound), 2 usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lenset_core::experiments::{
    bound_report, records_to_csv, run_verification_campaign, sample_semigroups,
    shape_collision_check, CampaignConfig, BOUND_REPORT_NOTE,
};
use lenset_core::oracle;
use lenset_core::semigroup::AperyTable;
use lenset_core::structure::shape_equal;
use lenset_core::{NumericalSemigroup, StructureProfile, DEFAULT_WORK_LIMIT};

#[derive(Parser)]
#[command(name = "lenset", version, about = "Factorization length sets of numerical semigroups")]
struct Cli {
    /// Emit JSON instead of human tables.
    #[arg(long, global = true)]
    json: bool,

    /// Work budget for oracle computations, in DP states.
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_LIMIT)]
    work_limit: u64,

    #[command(subcommand)]
    command: Command,
}

/// Comma-separated positive integers, e.g. `--gens 5,9,12`.  The list is
/// taken as given: it is never minimalized and gcd 1 is not assumed.
#[derive(Args)]
struct Gens {
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    gens: Vec<u64>,
}

impl Gens {
    fn build(&self) -> lenset_core::Result<NumericalSemigroup> {
        NumericalSemigroup::new(&self.gens)
    }
}

#[derive(Args)]
struct SampleArgs {
    /// RNG seed; the same seed always yields the same corpus.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of semigroups to draw.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Maximum embedding dimension of a draw.
    #[arg(long, default_value_t = 5)]
    max_embed: usize,
    /// Maximum generator value of a draw.
    #[arg(long, default_value_t = 200)]
    max_gen: u64,
    /// Verification window length, in multiples of lcm(n1, nk).
    #[arg(long, default_value_t = 1)]
    window_multiplier: u64,
}

impl SampleArgs {
    fn config(&self, work_limit: u64) -> CampaignConfig {
        CampaignConfig {
            seed: self.seed,
            count: self.count,
            max_embed: self.max_embed,
            max_gen: self.max_gen,
            window_multiplier: self.window_multiplier,
            work_limit,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: derived semigroups, Frobenius numbers, t, t', A0, A0', bound.
    Info(Gens),
    /// Apéry grid in residue-class layout, gaps marked `#`, plus the Ap_j tier rows.
    Apery {
        #[command(flatten)]
        gens: Gens,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        depth: u64,
    },
    /// Oracle length set L(n) with min, max and delta set.
    Lengths {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        n: u64,
    },
    /// Closed-form L(n): progression m..M step d minus the two removed sets.
    Predict {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        n: u64,
    },
    /// Compare prediction against the oracle over a window of elements.
    Verify {
        #[command(flatten)]
        gens: Gens,
        /// First element of the window; defaults to the explicit bound.
        #[arg(long)]
        from: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Oracle delta set of L(n).
    Delta {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        n: u64,
    },
    /// Empirical validity frontier: least N below the bound from which the
    /// prediction still matches the oracle.
    Frontier {
        #[command(flatten)]
        gens: Gens,
        #[arg(long, default_value_t = 1)]
        window_multiplier: u64,
    },
    /// Draw a reproducible corpus of random semigroups.
    Sample(SampleArgs),
    /// Run a prediction-vs-oracle campaign over a sampled corpus; prints CSV.
    Campaign(SampleArgs),
    /// Compare the explicit bound against the classical delta-periodicity bound.
    BoundReport(SampleArgs),
    /// Shape functions f(n), g(n); with --other, a collision check of two semigroups.
    Shape {
        #[command(flatten)]
        gens: Gens,
        #[arg(long, default_value_t = 0)]
        n: u64,
        /// Second generator list to compare shapes with.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        other: Option<Vec<u64>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> lenset_core::Result<ExitCode> {
    let json = cli.json;
    let work_limit = cli.work_limit;
    match &cli.command {
        Command::Info(gens) => cmd_info(&gens.build()?, json),
        Command::Apery { gens, modulus, depth } => {
            cmd_apery(&gens.build()?, *modulus, *depth, json)
        }
        Command::Lengths { gens, n } => cmd_lengths(&gens.build()?, *n, work_limit, json),
        Command::Predict { gens, n } => cmd_predict(&gens.build()?, *n, json),
        Command::Verify { gens, from, count } => {
            cmd_verify(&gens.build()?, *from, *count, work_limit, json)
        }
        Command::Delta { gens, n } => cmd_delta(&gens.build()?, *n, work_limit, json),
        Command::Frontier { gens, window_multiplier } => {
            cmd_frontier(&gens.build()?, *window_multiplier, work_limit, json)
        }
        Command::Sample(args) => cmd_sample(&args.config(work_limit), json),
        Command::Campaign(args) => cmd_campaign(&args.config(work_limit), json),
        Command::BoundReport(args) => cmd_bound_report(&args.config(work_limit), json),
        Command::Shape { gens, n, other } => {
            cmd_shape(&gens.build()?, *n, other.as_deref(), json)
        }
    }
}

fn set_string(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn gens_string(s: &NumericalSemigroup) -> String {
    let inner: Vec<String> = s.generators().iter().map(u64::to_string).collect();
    format!("<{}>", inner.join(", "))
}

fn cmd_info(s: &NumericalSemigroup, json: bool) -> lenset_core::Result<ExitCode> {
    if s.embedding_dim() < 2 {
        // degenerate: a single generator g factors every member uniquely
        let g = s.smallest_gen();
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "generators": s.generators(),
                    "gcd": s.gcd(),
                    "degenerate": true,
                    "note": format!("single generator: L({g}m) = {{m}} for every m"),
                }))
                .unwrap()
            );
        } else {
            println!("generators   {}", gens_string(s));
            println!("gcd          {}", s.gcd());
            println!("degenerate   single generator: L({g}m) = {{m}} for every m");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let profile = StructureProfile::new(s)?;
    let derived = profile.derived();
    let a0 = profile.a_set(0)?.to_vec();
    let a0p = profile.a_prime_set(0)?.to_vec();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "gcd": s.gcd(),
                "conductor": s.conductor(),
                "frobenius": s.frobenius(),
                "s_max": derived.s_max.generators(),
                "s_min": derived.s_min.generators(),
                "step": derived.step,
                "frob_s_max": derived.s_max.frobenius(),
                "frob_s_min": derived.s_min.frobenius(),
                "t": profile.t(),
                "t_prime": profile.t_prime(),
                "a_zero": a0,
                "a_zero_prime": a0p,
                "explicit_bound": profile.explicit_bound(),
            }))
            .unwrap()
        );
    } else {
        println!("generators   {}", gens_string(s));
        println!("gcd          {}", s.gcd());
        println!("conductor    {}", s.conductor());
        println!("Frobenius    {}", s.frobenius());
        println!("S_M          {}   Frob {}", gens_string(&derived.s_max), derived.s_max.frobenius());
        println!("S_m          {}   Frob {}", gens_string(&derived.s_min), derived.s_min.frobenius());
        println!("step d       {}", derived.step);
        println!("t, t'        {}, {}", profile.t(), profile.t_prime());
        println!("A_0          {}", set_string(&a0));
        println!("A_0'         {}", set_string(&a0p));
        println!("bound        {}", profile.explicit_bound());
    }
    Ok(ExitCode::SUCCESS)
}

/// Rows of the value grid: row r, column c holds r*modulus + c, `#` for gaps.
fn value_grid(s: &NumericalSemigroup, table: &AperyTable) -> Vec<Vec<String>> {
    let modulus = table.modulus();
    let top = (0..modulus)
        .filter_map(|i| table.class(i).and_then(|c| c.last().copied()))
        .max()
        .unwrap_or(0);
    let rows = top / modulus + 1;
    (0..rows)
        .map(|r| {
            (0..modulus)
                .map(|c| {
                    let v = r * modulus + c;
                    if s.contains(v) { v.to_string() } else { "#".to_string() }
                })
                .collect()
        })
        .collect()
}

fn cmd_apery(
    s: &NumericalSemigroup,
    modulus: u64,
    depth: u64,
    json: bool,
) -> lenset_core::Result<ExitCode> {
    if modulus == 0 || depth == 0 {
        return Err(lenset_core::Error::InvalidConfig(
            "--mod and --depth must be at least 1".into(),
        ));
    }
    let table = s.apery(modulus, depth);
    let grid = value_grid(s, &table);
    let tiers: Vec<Vec<Option<u64>>> = (1..=depth)
        .map(|j| (0..modulus).map(|i| table.entry(i, j).ok()).collect())
        .collect();
    if json {
        let classes: Vec<Option<&[u64]>> = (0..modulus).map(|i| table.class(i)).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "modulus": modulus,
                "depth": depth,
                "classes": classes,
                "grid": grid,
            }))
            .unwrap()
        );
        return Ok(ExitCode::SUCCESS);
    }
    let width = grid
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(4);
    for row in &grid {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        println!("{}", cells.join(" "));
    }
    println!();
    for (j, tier) in tiers.iter().enumerate() {
        let cells: Vec<String> = tier
            .iter()
            .map(|e| match e {
                Some(v) => format!("{v:>width$}"),
                None => format!("{:>width$}", "-"),
            })
            .collect();
        println!("Ap_{} {}", j + 1, cells.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lengths(
    s: &NumericalSemigroup,
    n: u64,
    work_limit: u64,
    json: bool,
) -> lenset_core::Result<ExitCode> {
    let ls = oracle::length_set(s, n, work_limit)?;
    let delta: Vec<u64> = ls.delta().into_iter().collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "n": n,
                "lengths": ls.lengths,
                "min": ls.min(),
                "max": ls.max(),
                "delta": delta,
            }))
            .unwrap()
        );
    } else {
        println!("L({n}) = {}", set_string(&ls.lengths));
        match (ls.min(), ls.max()) {
            (Some(m), Some(big_m)) => {
                println!("min {m}   max {big_m}   delta {}", set_string(&delta));
            }
            _ => println!("{n} is not in {}", gens_string(s)),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_predict(s: &NumericalSemigroup, n: u64, json: bool) -> lenset_core::Result<ExitCode> {
    let profile = StructureProfile::new(s)?;
    let predicted = profile.predict_length_set(n)?;
    let d = profile.step();
    let m = profile.predicted_min_len(n, 1)?;
    let big_m = profile.predicted_max_len(n, 1)?;
    let bottom_removed: Vec<u64> = profile
        .a_prime_set(n % s.largest_gen())?
        .iter()
        .map(|r| m + d * r)
        .collect();
    let top_removed: Vec<u64> = profile
        .a_set(n % s.smallest_gen())?
        .iter()
        .map(|r| big_m - d * r)
        .rev()
        .collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "n": n,
                "predicted": predicted.lengths,
                "min": m,
                "max": big_m,
                "step": d,
                "removed_bottom": bottom_removed,
                "removed_top": top_removed,
                "explicit_bound": profile.explicit_bound(),
            }))
            .unwrap()
        );
    } else {
        println!("predicted L({n}) = {}", set_string(&predicted.lengths));
        println!("progression  {m}..{big_m} step {d}");
        println!("removed dA'+m  = {}", set_string(&bottom_removed));
        println!("removed -dA+M  = {}", set_string(&top_removed));
        if n < profile.explicit_bound() {
            println!("note: {n} is below the explicit bound {}", profile.explicit_bound());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    s: &NumericalSemigroup,
    from: Option<u64>,
    count: u64,
    work_limit: u64,
    json: bool,
) -> lenset_core::Result<ExitCode> {
    let profile = StructureProfile::new(s)?;
    let bound = profile.explicit_bound();
    let from = from.unwrap_or(bound);
    let records = profile.verify_window(from, count, work_limit)?;
    let disagreed_above_bound = records
        .iter()
        .any(|r| r.outcome == lenset_core::Outcome::Disagreed && r.n >= bound);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "from": from,
                "count": count,
                "explicit_bound": bound,
                "records": records,
                "disagreed_above_bound": disagreed_above_bound,
            }))
            .unwrap()
        );
    } else {
        for r in &records {
            println!(
                "n={} agreed={} predicted={} oracle={} work={}",
                r.n,
                r.outcome.as_str(),
                set_string(&r.predicted),
                set_string(&r.oracle),
                r.work
            );
        }
        let disagreements = records
            .iter()
            .filter(|r| r.outcome == lenset_core::Outcome::Disagreed)
            .count();
        println!(
            "checked {} elements, {} disagreements (bound {})",
            records.len(),
            disagreements,
            bound
        );
    }
    Ok(if disagreed_above_bound { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_delta(
    s: &NumericalSemigroup,
    n: u64,
    work_limit: u64,
    json: bool,
) -> lenset_core::Result<ExitCode> {
    let delta: Vec<u64> = oracle::delta_set(s, n, work_limit)?.into_iter().collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "n": n,
                "delta": delta,
            }))
            .unwrap()
        );
    } else {
        println!("delta({n}) = {}", set_string(&delta));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_frontier(
    s: &NumericalSemigroup,
    window_multiplier: u64,
    work_limit: u64,
    json: bool,
) -> lenset_core::Result<ExitCode> {
    let profile = StructureProfile::new(s)?;
    let frontier = profile.validity_frontier(window_multiplier, work_limit)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "explicit_bound": profile.explicit_bound(),
                "window_multiplier": window_multiplier,
                "frontier": frontier,
            }))
            .unwrap()
        );
    } else {
        println!(
            "frontier {} (explicit bound {})",
            frontier,
            profile.explicit_bound()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sample(config: &CampaignConfig, json: bool) -> lenset_core::Result<ExitCode> {
    let semigroups = sample_semigroups(config)?;
    if json {
        let lists: Vec<&[u64]> = semigroups.iter().map(|s| s.generators()).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "seed": config.seed,
                "count": config.count,
                "max_embed": config.max_embed,
                "max_gen": config.max_gen,
                "generators": lists,
            }))
            .unwrap()
        );
    } else {
        for s in &semigroups {
            let inner: Vec<String> = s.generators().iter().map(u64::to_string).collect();
            println!("{}", inner.join(","));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_campaign(config: &CampaignConfig, json: bool) -> lenset_core::Result<ExitCode> {
    let summary = run_verification_campaign(config)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    } else {
        print!("{}", records_to_csv(&summary.records));
        eprintln!(
            "checked {} elements over {} semigroups: {} disagreements, {} work-limited",
            summary.total_checked, config.count, summary.disagreements, summary.work_limited
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound_report(config: &CampaignConfig, json: bool) -> lenset_core::Result<ExitCode> {
    let rows = bound_report(config)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "note": BOUND_REPORT_NOTE,
                "rows": rows,
            }))
            .unwrap()
        );
    } else {
        println!("note: {BOUND_REPORT_NOTE}");
        println!("{:<28} {:>12} {:>12} {:>8} {:>10}", "generators", "classical", "explicit", "ratio", "frontier");
        for row in &rows {
            let inner: Vec<String> = row.generators.iter().map(u64::to_string).collect();
            let frontier = row
                .delta_frontier
                .map(|f| f.to_string())
                .unwrap_or_else(|| "limit".to_string());
            println!(
                "{:<28} {:>12} {:>12} {:>8.4} {:>10}",
                inner.join(","),
                row.classical_bound,
                row.explicit_bound,
                row.ratio,
                frontier
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_shape(
    s: &NumericalSemigroup,
    n: u64,
    other: Option<&[u64]>,
    json: bool,
) -> lenset_core::Result<ExitCode> {
    let profile = StructureProfile::new(s)?;
    if let Some(other_gens) = other {
        let other_sg = NumericalSemigroup::new(other_gens)?;
        let other_profile = StructureProfile::new(&other_sg)?;
        let (f_equal, g_equal) = shape_equal(&profile, &other_profile);
        let rows = shape_collision_check(&[(s.clone(), other_sg.clone())])?;
        let row = &rows[0];
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "generators": s.generators(),
                    "other": other_sg.generators(),
                    "f_equal": f_equal,
                    "g_equal": g_equal,
                    "horizon": row.horizon,
                    "s_max_diff": row.s_max_diff,
                }))
                .unwrap()
            );
        } else {
            println!("f equal  {f_equal}");
            println!("g equal  {g_equal}");
            println!(
                "S_M' \\ S_M up to {} = {}",
                row.horizon,
                set_string(&row.s_max_diff)
            );
        }
        return Ok(ExitCode::SUCCESS);
    }
    let (f, g) = profile.shape_functions(n)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "generators": s.generators(),
                "n": n,
                "f": { "num": *f.numer(), "den": *f.denom() },
                "g": { "num": *g.numer(), "den": *g.denom() },
            }))
            .unwrap()
        );
    } else {
        println!("f({n}) = {f}   (M(n) = n/{} + f)", s.smallest_gen());
        println!("g({n}) = {g}   (m(n) = n/{} + g)", s.largest_gen());
    }
    Ok(ExitCode::SUCCESS)
}
