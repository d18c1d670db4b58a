//! Theorem-verification campaigns.
//!
//! A campaign checks one guarantee over a stream of instances, either every
//! instance of a small class or seeded random samples. Instance `i` of a
//! sampled campaign draws from its own ChaCha stream, so results do not
//! depend on how the work is split across threads.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::ValueEnum;
use rainbowkit_core::graph::{symmetric_difference_components, ComponentKind};
use rainbowkit_core::network::{
    find_multicolored_st_path, is_regimented, reachable_witness_set, verify_regimented_dichotomy, Dichotomy,
    NetworkError,
};
use rainbowkit_core::oracle::{
    binomial, brute_mc_path, brute_rainbow, brute_zero_sum, generate, matchings_of_size, multiset_indices,
    simple_st_paths, GenKind, GenSpec, Instance, OracleError,
};
use rainbowkit_core::rainbow::{canonical_cycle_family, classify_family, drisko_condition, solve_rainbow, SolveError};
use rainbowkit_core::reductions::{
    classify_multiset, find_transversal, find_zero_sum_subset, ReductionError,
};
use rainbowkit_core::{
    Budget, BudgetExceeded, FamilyClassification, Matching, MatchingFamily, MultisetClassification, NetNode,
    NetPath, PathGroupFamily, RainbowMatching, ResidueMultiset, DEFAULT_BUDGET,
};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `2n - 1` matchings of size `n` have a rainbow matching of size `n`.
    Drisko,
    /// The size condition on mixed families guarantees a rainbow matching.
    General,
    /// The `n - k` bound for fewer matchings.
    Bgs,
    /// The doubled cycle family has no rainbow matching of size `n`.
    Sharpness,
    /// `2n - 2` matchings of size `n` without a rainbow matching are the
    /// doubled cycle family.
    Extremal,
    /// The multicolored reachable set outnumbers the paths.
    Counting,
    /// A path multiset is regimented or has a multicolored `s`-`t` path.
    Dichotomy,
    /// `2n - 1` residues contain `n` summing to zero.
    Egz,
    /// `2n - 2` residues without such a subset are two coprime blocks.
    EgzExtremal,
    /// `2n - 1` rows have a full transversal.
    Transversal,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Drisko => "drisko",
            Theorem::General => "general",
            Theorem::Bgs => "bgs",
            Theorem::Sharpness => "sharpness",
            Theorem::Extremal => "extremal",
            Theorem::Counting => "counting",
            Theorem::Dichotomy => "dichotomy",
            Theorem::Egz => "egz",
            Theorem::EgzExtremal => "egz-extremal",
            Theorem::Transversal => "transversal",
        }
    }
}

/// Campaign settings. Unset fields take per-theorem defaults, which are
/// echoed in the report.
#[derive(Debug, Clone)]
pub struct CampaignParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub side: Option<usize>,
    pub max_members: Option<usize>,
    pub max_size: Option<usize>,
    pub max_inner: Option<usize>,
    pub max_paths: Option<usize>,
    pub samples: Option<u64>,
    pub exhaustive: bool,
    pub seed: u64,
    /// Step limit for each oracle call and for exhaustive instance counts.
    pub budget: u64,
}

impl Default for CampaignParams {
    fn default() -> Self {
        CampaignParams {
            n: None,
            k: None,
            side: None,
            max_members: None,
            max_size: None,
            max_inner: None,
            max_paths: None,
            samples: None,
            exhaustive: false,
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

const DEFAULT_SAMPLES: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub theorem: String,
    pub instances_checked: u64,
    pub violations: u64,
    /// Wall-clock seconds.
    pub elapsed: f64,
    pub seed: u64,
    pub parameters: Value,
    pub stats: BTreeMap<String, u64>,
    /// The violation of the lowest-numbered failing instance.
    pub first_violation: Option<String>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid campaign parameters: {0}")]
    Parameters(String),
}

/// Why an instance check stopped early.
enum Fault {
    Abort(CampaignError),
    Violation(String),
}

impl From<CampaignError> for Fault {
    fn from(e: CampaignError) -> Self {
        Fault::Abort(e)
    }
}

impl From<BudgetExceeded> for Fault {
    fn from(e: BudgetExceeded) -> Self {
        Fault::Abort(e.into())
    }
}

impl From<SolveError> for Fault {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget(b) => b.into(),
            other => Fault::Violation(other.to_string()),
        }
    }
}

impl From<ReductionError> for Fault {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Solve(s) => s.into(),
            other => Fault::Violation(other.to_string()),
        }
    }
}

impl From<NetworkError> for Fault {
    fn from(e: NetworkError) -> Self {
        Fault::Violation(e.to_string())
    }
}

impl From<OracleError> for Fault {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget(b) => b.into(),
            OracleError::InfeasibleSpec(s) => Fault::Abort(CampaignError::Parameters(s)),
        }
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), Fault> {
    if cond {
        Ok(())
    } else {
        Err(Fault::Violation(why()))
    }
}

#[derive(Default)]
struct Outcome {
    stats: BTreeMap<&'static str, u64>,
    /// A violation found after the stats were gathered.
    violation: Option<String>,
}

impl Outcome {
    fn count(mut self, key: &'static str, by: impl Into<u64>) -> Self {
        *self.stats.entry(key).or_default() += by.into();
        self
    }
}

type Check = Result<Outcome, Fault>;

#[derive(Default)]
struct Tally {
    checked: u64,
    violations: u64,
    stats: BTreeMap<&'static str, u64>,
    first: Option<(u64, String)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        for (k, v) in other.stats {
            *self.stats.entry(k).or_default() += v;
        }
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Runs `check` on instances `0..count` in parallel. Indices are offset by
/// `base` so several sweeps can share one numbering.
fn sweep<F>(base: u64, count: u64, check: F) -> Result<Tally, CampaignError>
where
    F: Fn(u64) -> Check + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| match check(i) {
            Ok(Outcome { stats, violation }) => Ok(Tally {
                checked: 1,
                violations: u64::from(violation.is_some()),
                stats,
                first: violation.map(|why| (base + i, format!("instance {}: {why}", base + i))),
            }),
            Err(Fault::Violation(why)) => Ok(Tally {
                checked: 1,
                violations: 1,
                stats: BTreeMap::new(),
                first: Some((base + i, format!("instance {}: {why}", base + i))),
            }),
            Err(Fault::Abort(e)) => Err(e),
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("instances serialize")
}

fn bad_params(why: impl Into<String>) -> CampaignError {
    CampaignError::Parameters(why.into())
}

/// All size-`size` multisets over `0..pool`, refusing more than `budget`.
fn multisets(pool: usize, size: usize, budget: u64) -> Result<Vec<Vec<usize>>, CampaignError> {
    if pool == 0 {
        return Ok(if size == 0 { vec![Vec::new()] } else { Vec::new() });
    }
    if binomial((pool + size - 1) as u64, size as u64) > budget as u128 {
        return Err(BudgetExceeded { limit: budget }.into());
    }
    Ok(multiset_indices(pool, size).collect())
}

fn gen_family(kind: GenKind, seed: u64) -> Result<MatchingFamily, Fault> {
    match generate(&GenSpec::new(kind, seed))? {
        Instance::Family(f) => Ok(f),
        _ => unreachable!("family kinds generate families"),
    }
}

fn check_rainbow(r: &RainbowMatching, f: &MatchingFamily, size: usize) -> Result<(), Fault> {
    ensure(r.len() == size, || format!("witness has {} colors, wanted {size}", r.len()))?;
    r.validate(f).map_err(|why| Fault::Violation(format!("invalid witness {}: {why}", to_json(r))))
}

/// The size condition holds for `f` at `target`, and the solver produces a
/// valid rainbow matching of that size.
fn guaranteed_rainbow(f: &MatchingFamily, target: usize, budget: u64) -> Check {
    ensure(drisko_condition(&f.sizes(), target)?, || {
        format!("size condition fails at {target} for {}", to_json(f))
    })?;
    let out = solve_rainbow(f, target, &mut Budget::new(budget))?;
    let r = out
        .matching
        .ok_or_else(|| Fault::Violation(format!("no rainbow matching of size {target} in {}", to_json(f))))?;
    check_rainbow(&r, f, target)?;
    Ok(Outcome::default().count("augmentations", out.augmentations as u64).count("exhaustive_fallback", out.exhaustive))
}

pub fn run_campaign(theorem: Theorem, p: &CampaignParams) -> Result<CampaignReport, CampaignError> {
    let start = Instant::now();
    let (parameters, tally) = match theorem {
        Theorem::Drisko => drisko(p)?,
        Theorem::General => general(p)?,
        Theorem::Bgs => bgs(p)?,
        Theorem::Sharpness => sharpness(p)?,
        Theorem::Extremal => extremal(p)?,
        Theorem::Counting => counting(p)?,
        Theorem::Dichotomy => dichotomy(p)?,
        Theorem::Egz => egz(p)?,
        Theorem::EgzExtremal => egz_extremal(p)?,
        Theorem::Transversal => transversal(p)?,
    };
    Ok(CampaignReport {
        theorem: theorem.name().to_string(),
        instances_checked: tally.checked,
        violations: tally.violations,
        elapsed: start.elapsed().as_secs_f64(),
        seed: p.seed,
        parameters,
        stats: tally.stats.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        first_violation: tally.first.map(|(_, why)| why),
    })
}

fn mode(p: &CampaignParams) -> Value {
    if p.exhaustive {
        json!("exhaustive")
    } else {
        json!({ "samples": p.samples.unwrap_or(DEFAULT_SAMPLES) })
    }
}

fn sampled_only(p: &CampaignParams, theorem: &str) -> Result<u64, CampaignError> {
    if p.exhaustive {
        return Err(bad_params(format!("{theorem} has no exhaustive mode")));
    }
    Ok(p.samples.unwrap_or(DEFAULT_SAMPLES))
}

/// `m` matchings of size `n` in `K_{side, side}`, each needing a rainbow
/// matching of size `target`.
fn uniform_families(p: &CampaignParams, n: usize, m: usize, side: usize, target: usize) -> Result<Tally, CampaignError> {
    if side < n {
        return Err(bad_params(format!("side {side} cannot hold matchings of size {n}")));
    }
    if p.exhaustive {
        let pool = matchings_of_size(side, side, n);
        let families = multisets(pool.len(), m, p.budget)?;
        sweep(0, families.len() as u64, |i| {
            let f = MatchingFamily::new(families[i as usize].iter().map(|&j| pool[j].clone()).collect());
            guaranteed_rainbow(&f, target, p.budget)
        })
    } else {
        sweep(0, p.samples.unwrap_or(DEFAULT_SAMPLES), |i| {
            let f = gen_family(GenKind::FamilyUniform { n, m, side }, instance_rng(p.seed, i).next_u64())?;
            guaranteed_rainbow(&f, target, p.budget)
        })
    }
}

fn drisko(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let n = p.n.unwrap_or(3);
    if n == 0 {
        return Err(bad_params("n must be at least 1"));
    }
    let side = p.side.unwrap_or(n + 1);
    let tally = uniform_families(p, n, 2 * n - 1, side, n)?;
    Ok((json!({ "n": n, "members": 2 * n - 1, "side": side, "mode": mode(p), "budget": p.budget }), tally))
}

fn bgs(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let n = p.n.unwrap_or(4);
    let k = p.k.unwrap_or(1);
    if k >= n {
        return Err(bad_params("need k < n"));
    }
    let m = ((k + 2) * n / (k + 1)).checked_sub(k + 1).filter(|&m| m >= 1);
    let Some(m) = m else {
        return Err(bad_params(format!("n = {n}, k = {k} gives no matchings")));
    };
    let side = p.side.unwrap_or(n + 1);
    let tally = uniform_families(p, n, m, side, n - k)?;
    Ok((
        json!({ "n": n, "k": k, "members": m, "target": n - k, "side": side, "mode": mode(p), "budget": p.budget }),
        tally,
    ))
}

fn general(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    const ATTEMPTS: u64 = 10_000;
    let samples = sampled_only(p, "general")?;
    let max_members = p.max_members.unwrap_or(9);
    let max_size = p.max_size.unwrap_or(5);
    let side = p.side.unwrap_or(max_size);
    if max_members == 0 || max_size == 0 || side < max_size {
        return Err(bad_params("need max_members >= 1, max_size >= 1 and side >= max_size"));
    }
    let budget = p.budget;
    // Each instance draws families until one meets the size condition;
    // every draw is checked against the exact oracle on the way.
    let tally = sweep(0, samples, |i| {
        let mut rng = instance_rng(p.seed, i);
        let mut out = Outcome::default();
        for _ in 0..ATTEMPTS {
            let m = rng.random_range(1..=max_members);
            let sizes: Vec<usize> = (0..m).map(|_| rng.random_range(0..=max_size)).collect();
            let a = rng.random_range(1..=m.min(max_size));
            let f = gen_family(GenKind::FamilyMixed { sizes, side }, rng.next_u64())?;
            let holds = drisko_condition(&f.sizes(), a)?;
            let solved = solve_rainbow(&f, a, &mut Budget::new(budget))?;
            let brute = brute_rainbow(&f, a, &mut Budget::new(budget))?;
            if let Some(r) = &solved.matching {
                check_rainbow(r, &f, a)?;
            }
            ensure(solved.matching.is_some() == brute.is_some(), || {
                format!(
                    "solver says {} but oracle says {} at size {a} for {}",
                    solved.matching.is_some(),
                    brute.is_some(),
                    to_json(&f)
                )
            })?;
            out = out.count("oracle_agreements", 1u64).count("exhaustive_fallback", solved.exhaustive);
            if holds {
                ensure(solved.matching.is_some(), || {
                    format!("no rainbow matching of size {a} in {}", to_json(&f))
                })?;
                return Ok(out);
            }
            out = out.count("condition_fails", 1u64).count("condition_fails_infeasible", brute.is_none());
        }
        Err(CampaignError::Parameters(format!("no family meeting the size condition in {ATTEMPTS} draws")).into())
    })?;
    Ok((
        json!({
            "max_members": max_members, "max_size": max_size, "side": side,
            "mode": mode(p), "budget": budget,
        }),
        tally,
    ))
}

fn sharpness(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let max_n = p.n.unwrap_or(6);
    if max_n < 2 {
        return Err(bad_params("n must be at least 2"));
    }
    let tally = sweep(0, (max_n - 1) as u64, |i| {
        let n = i as usize + 2;
        let f = canonical_cycle_family(n);
        let solved = solve_rainbow(&f, n, &mut Budget::new(p.budget))?;
        ensure(solved.matching.is_none(), || format!("solver found a rainbow matching of size {n}"))?;
        let brute = brute_rainbow(&f, n, &mut Budget::new(p.budget))?;
        ensure(brute.is_none(), || format!("oracle found a rainbow matching of size {n}"))?;
        Ok(Outcome::default())
    })?;
    Ok((json!({ "n_from": 2, "n_to": max_n, "budget": p.budget }), tally))
}

fn extremal_check(f: &MatchingFamily, n: usize, budget: u64) -> Check {
    let cls = classify_family(f)?;
    let brute = brute_rainbow(f, n, &mut Budget::new(budget))?;
    match cls {
        FamilyClassification::HasRainbow { rainbow } => {
            check_rainbow(&rainbow, f, n)?;
            ensure(brute.is_some(), || format!("classifier found a rainbow matching the oracle missed in {}", to_json(f)))?;
            Ok(Outcome::default().count("has_rainbow", 1u64))
        }
        FamilyClassification::ExtremalCycle { cycle, even_colors, odd_colors } => {
            ensure(brute.is_none(), || format!("extremal verdict but oracle finds a rainbow matching in {}", to_json(f)))?;
            ensure(
                cycle.len() == 2 * n && even_colors.len() == n - 1 && odd_colors.len() == n - 1,
                || format!("malformed extremal verdict for {}", to_json(f)),
            )?;
            Ok(Outcome::default().count("extremal_cycle", 1u64))
        }
    }
}

/// Pairs of perfect matchings on the same `n + n` vertices whose union is
/// one `2n`-cycle.
fn cycle_pairs(n: usize, side: usize) -> Vec<(Matching, Matching)> {
    let pool = matchings_of_size(side, side, n);
    let mut out = Vec::new();
    for (i, e) in pool.iter().enumerate() {
        for o in &pool[i + 1..] {
            let comps = symmetric_difference_components(e, o);
            if comps.len() == 1 && comps[0].kind == ComponentKind::Cycle && comps[0].edges.len() == 2 * n {
                out.push((e.clone(), o.clone()));
            }
        }
    }
    out
}

fn extremal(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let n = p.n.unwrap_or(2);
    if n < 2 {
        return Err(bad_params("n must be at least 2"));
    }
    let side = p.side.unwrap_or(n + 1);
    if side < n {
        return Err(bad_params(format!("side {side} cannot hold matchings of size {n}")));
    }
    let m = 2 * n - 2;
    let budget = p.budget;
    let main = if p.exhaustive {
        let pool = matchings_of_size(side, side, n);
        let families = multisets(pool.len(), m, budget)?;
        sweep(0, families.len() as u64, |i| {
            let f = MatchingFamily::new(families[i as usize].iter().map(|&j| pool[j].clone()).collect());
            extremal_check(&f, n, budget)
        })?
    } else {
        sweep(0, p.samples.unwrap_or(DEFAULT_SAMPLES), |i| {
            let f = gen_family(GenKind::FamilyUniform { n, m, side }, instance_rng(p.seed, i).next_u64())?;
            extremal_check(&f, n, budget)
        })?
    };
    // Every even/odd split of every 2n-cycle: only the balanced split may
    // lack a rainbow matching.
    let pairs = cycle_pairs(n, side);
    let splits = 1u64 << m;
    if (pairs.len() as u128) * (splits as u128) > budget as u128 {
        return Err(BudgetExceeded { limit: budget }.into());
    }
    let base = main.checked;
    let cycles = sweep(base, pairs.len() as u64 * splits, |i| {
        let (e, o) = &pairs[(i / splits) as usize];
        let mask = i % splits;
        let f = MatchingFamily::new((0..m).map(|c| if mask >> c & 1 == 1 { o.clone() } else { e.clone() }).collect());
        let out = extremal_check(&f, n, budget)?;
        let balanced = mask.count_ones() as usize == n - 1;
        ensure(out.stats.contains_key("extremal_cycle") == balanced, || {
            format!("cycle split {mask:b} of {} classified wrongly", to_json(&f))
        })?;
        Ok(out.count("cycle_splits", 1u64))
    })?;
    Ok((
        json!({ "n": n, "members": m, "side": side, "mode": mode(p), "cycles": pairs.len(), "budget": budget }),
        main.merge(cycles),
    ))
}

fn counting(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let samples = sampled_only(p, "counting")?;
    let max_inner = p.max_inner.unwrap_or(6);
    let max_paths = p.max_paths.unwrap_or(6);
    if max_paths == 0 {
        return Err(bad_params("max_paths must be at least 1"));
    }
    let budget = p.budget;
    let tally = sweep(0, samples, |i| {
        let mut rng = instance_rng(p.seed, i);
        let inner_nodes = rng.random_range(0..=max_inner);
        let groups = rng.random_range(1..=max_paths);
        let kind = GenKind::Network { inner_nodes, groups, paths_per_group: (max_paths / groups).max(1) };
        let f = match generate(&GenSpec::new(kind, rng.next_u64()))? {
            Instance::Network(f) => f,
            _ => unreachable!("network kind generates networks"),
        };
        let w = reachable_witness_set(&f);
        let exact = brute_mc_path(&f, &mut Budget::new(budget))?;
        for (node, path) in &w {
            path.validate(&f)?;
            ensure(path.end() == *node, || format!("witness for {node} ends at {}", path.end()))?;
            ensure(exact.contains_key(node), || format!("{node} is not reachable in {}", to_json(&f)))?;
        }
        let total = f.total_paths();
        let sink = w.contains_key(&NetNode::Sink);
        let mut out = Outcome::default()
            .count("sink_in_witness_set", sink)
            .count("sink_reachable", exact.contains_key(&NetNode::Sink));
        let inner_count = f.inner_nodes().len();
        if total > inner_count {
            let path = find_multicolored_st_path(&f, inner_count)?
                .ok_or_else(|| Fault::Violation(format!("no s-t path above threshold in {}", to_json(&f))))?;
            path.validate(&f)?;
            ensure(path.end() == NetNode::Sink, || format!("{path} does not reach t"))?;
            out = out.count("above_threshold", 1u64);
        }
        ensure(sink || w.len() > total, || {
            format!("t unreached and |W| = {} is not above |P| = {total} in {}", w.len(), to_json(&f))
        })?;
        if w.len() <= total {
            out = out.count("literal_bound_failures", 1u64);
            out.violation = Some(format!(
                "|W| = {} is not above |P| = {total} (t reached) in {}",
                w.len(),
                to_json(&f)
            ));
        }
        Ok(out)
    })?;
    Ok((json!({ "max_inner": max_inner, "max_paths": max_paths, "mode": mode(p), "budget": budget }), tally))
}

fn dichotomy_check(paths: &[NetPath], budget: u64) -> Check {
    let regiment = is_regimented(paths);
    let family = PathGroupFamily::from_groups(paths.iter().map(|p| vec![p.clone()]).collect())?;
    let mc = brute_mc_path(&family, &mut Budget::new(budget))?.contains_key(&NetNode::Sink);
    let shown = || to_json(&paths);
    ensure(regiment.is_some() != mc, || {
        format!("regimented: {}, multicolored s-t path: {mc} for {}", regiment.is_some(), shown())
    })?;
    match verify_regimented_dichotomy(paths)? {
        Dichotomy::Regimented(r) => {
            ensure(Some(&r) == regiment.as_ref(), || format!("regimentation mismatch for {}", shown()))?;
            Ok(Outcome::default().count("regimented", 1u64))
        }
        Dichotomy::McPath(path) => {
            path.validate(&family)?;
            ensure(path.end() == NetNode::Sink, || format!("{path} does not reach t"))?;
            Ok(Outcome::default().count("multicolored", 1u64))
        }
    }
}

fn inner_used(paths: &[&NetPath]) -> usize {
    let mut used: Vec<NetNode> = paths.iter().flat_map(|p| p.interior().iter().copied()).collect();
    used.sort();
    used.dedup();
    used.len()
}

fn dichotomy(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let max_inner = p.n.unwrap_or(4);
    let budget = p.budget;
    let mut tally = Tally::default();
    if p.exhaustive {
        // Multisets of k paths over k inner nodes that use every node.
        for k in 0..=max_inner {
            let pool = simple_st_paths(k);
            let chosen: Vec<Vec<usize>> = multisets(pool.len(), k, budget)?
                .into_iter()
                .filter(|ix| inner_used(&ix.iter().map(|&j| &pool[j]).collect::<Vec<_>>()) == k)
                .collect();
            let level = sweep(tally.checked, chosen.len() as u64, |i| {
                let paths: Vec<NetPath> = chosen[i as usize].iter().map(|&j| pool[j].clone()).collect();
                dichotomy_check(&paths, budget)
            })?;
            tally = tally.merge(level);
        }
    } else {
        const ATTEMPTS: usize = 100_000;
        let pool = simple_st_paths(max_inner);
        tally = sweep(0, p.samples.unwrap_or(DEFAULT_SAMPLES), |i| {
            let mut rng = instance_rng(p.seed, i);
            for _ in 0..ATTEMPTS {
                let ix: Vec<usize> = (0..max_inner).map(|_| rng.random_range(0..pool.len())).collect();
                let refs: Vec<&NetPath> = ix.iter().map(|&j| &pool[j]).collect();
                if inner_used(&refs) == max_inner {
                    let paths: Vec<NetPath> = refs.into_iter().cloned().collect();
                    return dichotomy_check(&paths, budget);
                }
            }
            Err(CampaignError::Parameters("no path multiset covering every inner node".into()).into())
        })?;
    }
    Ok((json!({ "max_inner": max_inner, "mode": mode(p), "budget": budget }), tally))
}

fn residues(p: &CampaignParams, n: usize, size: usize) -> Result<Option<Vec<Vec<usize>>>, CampaignError> {
    if p.exhaustive {
        Ok(Some(multisets(n, size, p.budget)?))
    } else {
        Ok(None)
    }
}

fn residue_sweep<F>(p: &CampaignParams, n: usize, size: usize, check: F) -> Result<Tally, CampaignError>
where
    F: Fn(&ResidueMultiset) -> Check + Sync,
{
    match residues(p, n, size)? {
        Some(all) => sweep(0, all.len() as u64, |i| {
            check(&ResidueMultiset::new(n, all[i as usize].clone()).expect("residues in range"))
        }),
        None => sweep(0, p.samples.unwrap_or(DEFAULT_SAMPLES), |i| {
            match generate(&GenSpec::new(GenKind::Multiset { n, size }, instance_rng(p.seed, i).next_u64()))? {
                Instance::Multiset(a) => check(&a),
                _ => unreachable!("multiset kind generates multisets"),
            }
        }),
    }
}

fn check_zero_sum(a: &ResidueMultiset, subset: &[usize]) -> Result<(), Fault> {
    let n = a.modulus();
    ensure(
        subset.len() == n && subset.iter().sum::<usize>() % n == 0 && a.contains_submultiset(subset),
        || format!("{subset:?} is not a zero-sum {n}-subset of {:?}", a.elements()),
    )
}

fn egz(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let n = p.n.unwrap_or(4);
    if n == 0 {
        return Err(bad_params("n must be at least 1"));
    }
    let tally = residue_sweep(p, n, 2 * n - 1, |a| {
        let subset = find_zero_sum_subset(a)?
            .ok_or_else(|| Fault::Violation(format!("no zero-sum subset of {:?}", a.elements())))?;
        check_zero_sum(a, &subset)?;
        Ok(Outcome::default())
    })?;
    Ok((json!({ "n": n, "size": 2 * n - 1, "mode": mode(p), "budget": p.budget }), tally))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn egz_extremal(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let n = p.n.unwrap_or(4);
    if n < 2 {
        return Err(bad_params("n must be at least 2"));
    }
    let budget = p.budget;
    let tally = residue_sweep(p, n, 2 * n - 2, |a| {
        let brute = brute_zero_sum(a, &mut Budget::new(budget))?;
        match classify_multiset(a)? {
            MultisetClassification::HasZeroSum { subset } => {
                check_zero_sum(a, &subset)?;
                ensure(brute.is_some(), || format!("oracle finds no zero-sum subset of {:?}", a.elements()))?;
                Ok(Outcome::default().count("has_zero_sum", 1u64))
            }
            MultisetClassification::ExtremalPair { a: x, b: y } => {
                ensure(brute.is_none(), || format!("extremal verdict but oracle finds {:?}", brute))?;
                let mut expected = vec![x; n - 1];
                expected.extend(std::iter::repeat_n(y, n - 1));
                ensure(x < y && gcd(y - x, n) == 1 && a.elements() == expected.as_slice(), || {
                    format!("({x}, {y}) is not an extremal pair for {:?}", a.elements())
                })?;
                Ok(Outcome::default().count("extremal_pair", 1u64))
            }
        }
    })?;
    Ok((json!({ "n": n, "size": 2 * n - 2, "mode": mode(p), "budget": budget }), tally))
}

fn transversal(p: &CampaignParams) -> Result<(Value, Tally), CampaignError> {
    let samples = sampled_only(p, "transversal")?;
    let max_n = p.n.unwrap_or(5);
    if max_n == 0 {
        return Err(bad_params("n must be at least 1"));
    }
    let tally = sweep(0, samples, |i| {
        let mut rng = instance_rng(p.seed, i);
        let n = rng.random_range(1..=max_n);
        let symbol_count = rng.random_range(n..=3 * n);
        let kind = GenKind::Matrix { m: 2 * n - 1, n, symbol_count };
        let a = match generate(&GenSpec::new(kind, rng.next_u64()))? {
            Instance::Matrix(a) => a,
            _ => unreachable!("matrix kind generates matrices"),
        };
        let t = find_transversal(&a)?
            .ok_or_else(|| Fault::Violation(format!("no full transversal in {}", to_json(&a))))?;
        ensure(t.is_full(&a), || format!("transversal {:?} is not full", t.entries))?;
        t.validate(&a).map_err(Fault::Violation)?;
        Ok(Outcome::default().count("symbols", symbol_count as u64))
    })?;
    Ok((json!({ "max_n": max_n, "mode": mode(p), "budget": p.budget }), tally))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, exhaustive: bool) -> CampaignParams {
        CampaignParams { n: Some(n), exhaustive, samples: Some(50), ..CampaignParams::default() }
    }

    #[test]
    fn egz_counts_match_multiset_numbers() {
        // size-7 multisets over Z_4: C(10, 3)
        let r = run_campaign(Theorem::Egz, &params(4, true)).unwrap();
        assert_eq!(r.instances_checked, 120);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn small_campaigns_pass() {
        for t in [Theorem::Drisko, Theorem::Extremal, Theorem::EgzExtremal, Theorem::Sharpness] {
            let r = run_campaign(t, &params(2, t != Theorem::Drisko)).unwrap();
            assert!(r.passed(), "{t:?}: {:?}", r.first_violation);
        }
    }

    #[test]
    fn reports_ignore_thread_scheduling() {
        let p = CampaignParams { samples: Some(200), seed: 11, ..CampaignParams::default() };
        let mut a = run_campaign(Theorem::General, &p).unwrap();
        let mut b = run_campaign(Theorem::General, &p).unwrap();
        a.elapsed = 0.0;
        b.elapsed = 0.0;
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustive_budget_is_enforced() {
        let p = CampaignParams { n: Some(6), exhaustive: true, budget: 100, ..CampaignParams::default() };
        assert!(matches!(run_campaign(Theorem::Egz, &p), Err(CampaignError::Budget(_))));
    }

    #[test]
    fn sampled_only_campaigns_reject_exhaustive() {
        let p = CampaignParams { exhaustive: true, ..CampaignParams::default() };
        assert!(matches!(run_campaign(Theorem::Counting, &p), Err(CampaignError::Parameters(_))));
    }
}
