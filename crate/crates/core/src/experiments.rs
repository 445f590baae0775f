//! Seeded random-corpus campaigns: structure-theorem verification at scale,
//! bound comparisons, delta-set periodicity frontiers, and shape-collision
//! reports, with CSV and JSON output.
//!
//! Campaigns are deterministic: each sampled semigroup draws from a ChaCha8
//! stream keyed by `(seed, index)`, and records are emitted in corpus order
//! regardless of how the work is parallelized.

use num::integer::{gcd, lcm};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::LengthTable;
use crate::semigroup::NumericalSemigroup;
use crate::structure::{shape_equal, Outcome, StructureProfile, VerificationRecord};

pub const CSV_HEADER: &str = "generators;n;agreed;predicted;oracle;work";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub count: usize,
    pub max_embed: usize,
    pub max_gen: u64,
    pub window_multiplier: u64,
    pub work_limit: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            count: 10,
            max_embed: 5,
            max_gen: 200,
            window_multiplier: 1,
            work_limit: crate::oracle::DEFAULT_WORK_LIMIT,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count < 1 {
            return Err(Error::InvalidConfig("count must be >= 1".into()));
        }
        if self.max_embed < 2 {
            return Err(Error::InvalidConfig("max_embed must be >= 2".into()));
        }
        if self.max_gen < 3 {
            return Err(Error::InvalidConfig("max_gen must be >= 3".into()));
        }
        if self.work_limit == 0 {
            return Err(Error::InvalidConfig("work_limit must be positive".into()));
        }
        Ok(())
    }
}

/// Draws `config.count` cofinite semigroups.  Semigroup `idx` is a pure
/// function of `(config.seed, idx)`: generator count uniform in
/// `[2, max_embed]`, generators distinct and uniform in `[2, max_gen]`,
/// redrawn until the gcd is 1.
pub fn sample_semigroups(config: &CampaignConfig) -> Result<Vec<NumericalSemigroup>> {
    config.validate()?;
    Ok((0..config.count).map(|idx| sample_one(config, idx)).collect())
}

fn sample_one(config: &CampaignConfig, idx: usize) -> NumericalSemigroup {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(idx as u64);
    let pool = (config.max_gen - 1) as usize; // values 2..=max_gen
    loop {
        let k = rng.gen_range(2..=config.max_embed.min(pool));
        let mut gens: Vec<u64> = Vec::with_capacity(k);
        while gens.len() < k {
            let g = rng.gen_range(2..=config.max_gen);
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        gens.sort_unstable();
        if gens.iter().copied().fold(0, gcd) != 1 {
            continue;
        }
        if let Ok(sg) = NumericalSemigroup::new(&gens) {
            return sg;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub total_checked: usize,
    pub disagreements: usize,
    pub work_limited: usize,
    pub records: Vec<VerificationRecord>,
}

/// Runs `verify_window` from the explicit bound over
/// `window_multiplier * lcm(n_1, n_k)` values for every sampled semigroup.
/// Semigroups are verified in parallel; the report order is the corpus order.
pub fn run_verification_campaign(config: &CampaignConfig) -> Result<CampaignSummary> {
    let corpus = sample_semigroups(config)?;
    run_campaign_over(config, &corpus)
}

/// Same campaign over an explicit corpus (used by tests and the CLI).
pub fn run_campaign_over(
    config: &CampaignConfig,
    corpus: &[NumericalSemigroup],
) -> Result<CampaignSummary> {
    config.validate()?;
    let per_semigroup: Vec<Vec<VerificationRecord>> = corpus
        .par_iter()
        .map(|sg| {
            let profile = StructureProfile::new(sg)?;
            let window = config.window_multiplier * lcm(sg.smallest_gen(), sg.largest_gen());
            profile.verify_window(profile.explicit_bound(), window, config.work_limit)
        })
        .collect::<Result<_>>()?;
    let records: Vec<VerificationRecord> = per_semigroup.into_iter().flatten().collect();
    let disagreements = records.iter().filter(|r| r.outcome == Outcome::Disagreed).count();
    let work_limited = records.iter().filter(|r| r.outcome == Outcome::WorkLimited).count();
    Ok(CampaignSummary {
        config: config.clone(),
        total_checked: records.len(),
        disagreements,
        work_limited,
        records,
    })
}

/// Renders records as the fixed-schema CSV report.
pub fn records_to_csv(records: &[VerificationRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{};{};{};{};{};{}\n",
            join(&r.generators),
            r.n,
            r.outcome.as_str(),
            join(&r.predicted),
            join(&r.oracle),
            r.work
        ));
    }
    out
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// One row of the bound comparison: the classical delta-set periodicity bound
/// `2 k n_2 n_k^2` against the structure-theorem bound `n_k^2 - n_1^2`, plus
/// the empirically observed start of delta-set periodicity.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub generators: Vec<u64>,
    pub classical_bound: u64,
    pub explicit_bound: u64,
    pub ratio: f64,
    /// Smallest `N` with `delta(n) = delta(n + lcm(n_1, n_k))` for every
    /// member `n` in `[N, explicit_bound]`; `None` when the work limit was hit.
    pub delta_frontier: Option<u64>,
}

/// Note emitted with every bound report: the competing computational bound
/// this comparison replaces is not available here.
pub const BOUND_REPORT_NOTE: &str =
    "comparison baseline is the classical delta-set periodicity bound 2*k*n2*nk^2";

pub fn bound_report(config: &CampaignConfig) -> Result<Vec<BoundRow>> {
    let corpus = sample_semigroups(config)?;
    bound_report_over(config, &corpus)
}

pub fn bound_report_over(
    config: &CampaignConfig,
    corpus: &[NumericalSemigroup],
) -> Result<Vec<BoundRow>> {
    config.validate()?;
    corpus
        .par_iter()
        .map(|sg| {
            let k = sg.embedding_dim() as u64;
            let n1 = sg.smallest_gen();
            let n2 = sg.generators()[1];
            let nk = sg.largest_gen();
            let classical = 2 * k * n2 * nk * nk;
            let explicit = nk * nk - n1 * n1;
            let delta_frontier = match delta_frontier(sg, explicit, config.work_limit) {
                Ok(f) => Some(f),
                Err(Error::WorkLimitExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(BoundRow {
                generators: sg.generators().to_vec(),
                classical_bound: classical,
                explicit_bound: explicit,
                ratio: classical as f64 / explicit as f64,
                delta_frontier,
            })
        })
        .collect()
}

/// Smallest `N` such that `delta(n) = delta(n + period)` for every member
/// `n` in `[N, horizon]`, where `period = lcm(n_1, n_k)`.
fn delta_frontier(sg: &NumericalSemigroup, horizon: u64, work_limit: u64) -> Result<u64> {
    let period = lcm(sg.smallest_gen(), sg.largest_gen());
    let table = LengthTable::build(sg, horizon + period, work_limit)?;
    let last_bad = (0..=horizon)
        .filter(|&n| sg.contains(n))
        .filter(|&n| table.length_set(n).delta() != table.length_set(n + period).delta())
        .max();
    Ok(last_bad.map(|n| n + 1).unwrap_or(0))
}

/// Shape comparison of two semigroups, plus the membership difference of
/// their `S_M` semigroups on `[0, horizon]`.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeCollisionRow {
    pub generators_a: Vec<u64>,
    pub generators_b: Vec<u64>,
    pub f_equal: bool,
    pub g_equal: bool,
    pub horizon: u64,
    /// Elements of `S_M(b)` not in `S_M(a)` within the horizon.
    pub s_max_diff: Vec<u64>,
}

pub fn shape_collision_check(
    pairs: &[(NumericalSemigroup, NumericalSemigroup)],
) -> Result<Vec<ShapeCollisionRow>> {
    pairs
        .iter()
        .map(|(a, b)| {
            let pa = StructureProfile::new(a)?;
            let pb = StructureProfile::new(b)?;
            let (f_equal, g_equal) = shape_equal(&pa, &pb);
            let horizon = pa
                .derived()
                .s_max
                .frobenius()
                .max(pb.derived().s_max.frobenius())
                .max(0) as u64;
            let s_max_diff = (0..=horizon)
                .filter(|&m| pb.derived().s_max.contains(m) && !pa.derived().s_max.contains(m))
                .collect();
            Ok(ShapeCollisionRow {
                generators_a: a.generators().to_vec(),
                generators_b: b.generators().to_vec(),
                f_equal,
                g_equal,
                horizon,
                s_max_diff,
            })
        })
        .collect()
}
