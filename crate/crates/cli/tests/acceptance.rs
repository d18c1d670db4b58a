//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p rainbowkit --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rainbowkit::{run_campaign, CampaignParams, CampaignReport, Theorem};

struct Verdict {
    ok: bool,
    detail: String,
}

fn campaign(theorem: Theorem, p: CampaignParams) -> Result<CampaignReport, String> {
    run_campaign(theorem, &p).map_err(|e| format!("{theorem:?}: {e}"))
}

/// Zero violations and at least `min_checked` instances.
fn clean(r: &CampaignReport, min_checked: u64) -> Result<(), String> {
    if r.violations > 0 {
        return Err(format!(
            "{}: {} violations, first: {}",
            r.theorem,
            r.violations,
            r.first_violation.as_deref().unwrap_or("?")
        ));
    }
    if r.instances_checked < min_checked {
        return Err(format!("{}: checked {} < {min_checked}", r.theorem, r.instances_checked));
    }
    Ok(())
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn params(n: usize, samples: Option<u64>, seed: u64) -> CampaignParams {
    CampaignParams { n: Some(n), samples, exhaustive: samples.is_none(), seed, ..CampaignParams::default() }
}

fn drisko() -> Result<String, String> {
    // 18 matchings of size 2 in K_{3,3}, families of 3 up to order
    let all = campaign(Theorem::Drisko, params(2, None, 0))?;
    clean(&all, binomial(20, 3))?;
    if all.instances_checked != binomial(20, 3) {
        return Err(format!("exhaustive sweep checked {}", all.instances_checked));
    }
    let n3 = campaign(Theorem::Drisko, params(3, Some(10_000), 1))?;
    clean(&n3, 10_000)?;
    let n4 = campaign(Theorem::Drisko, params(4, Some(10_000), 2))?;
    clean(&n4, 10_000)?;
    Ok(format!(
        "{} exhaustive n=2, {} sampled n=3, {} sampled n=4",
        all.instances_checked, n3.instances_checked, n4.instances_checked
    ))
}

fn sharpness() -> Result<String, String> {
    let r = campaign(Theorem::Sharpness, params(6, None, 0))?;
    clean(&r, 5)?;
    Ok(format!("n = 2..6 infeasible per solver and oracle ({} families)", r.instances_checked))
}

fn general() -> Result<String, String> {
    let p = CampaignParams {
        max_members: Some(9),
        max_size: Some(5),
        samples: Some(10_000),
        seed: 3,
        ..CampaignParams::default()
    };
    let r = campaign(Theorem::General, p)?;
    clean(&r, 10_000)?;
    Ok(format!(
        "{} condition-holding families solved, {} oracle agreements ({} below the condition)",
        r.instances_checked,
        r.stats.get("oracle_agreements").copied().unwrap_or(0),
        r.stats.get("condition_fails").copied().unwrap_or(0)
    ))
}

fn counting() -> Result<String, String> {
    let p = CampaignParams {
        max_inner: Some(6),
        max_paths: Some(6),
        samples: Some(10_000),
        seed: 4,
        ..CampaignParams::default()
    };
    let r = campaign(Theorem::Counting, p)?;
    let literal = r.stats.get("literal_bound_failures").copied().unwrap_or(0);
    let summary = format!(
        "{} networks, {} violations: {literal} with t reached and |W| <= |P|, {} with t unreached and |W| <= |P|; \
         {} s-t paths found above the count threshold",
        r.instances_checked,
        r.violations,
        r.violations - literal,
        r.stats.get("above_threshold").copied().unwrap_or(0)
    );
    clean(&r, 10_000).map_err(|e| format!("{summary}; {e}"))?;
    Ok(summary)
}

fn dichotomy() -> Result<String, String> {
    let r = campaign(Theorem::Dichotomy, params(4, None, 0))?;
    clean(&r, 1)?;
    Ok(format!(
        "{} path multisets with |P| = |V°| <= 4: {} regimented, {} with a multicolored s-t path",
        r.instances_checked,
        r.stats.get("regimented").copied().unwrap_or(0),
        r.stats.get("multicolored").copied().unwrap_or(0)
    ))
}

fn extremal() -> Result<String, String> {
    let two = campaign(Theorem::Extremal, params(2, None, 0))?;
    clean(&two, binomial(18 + 1, 2))?;
    let three = campaign(Theorem::Extremal, CampaignParams { side: Some(4), ..params(3, Some(10_000), 5) })?;
    clean(&three, 10_000)?;
    // 96 six-cycles in K_{4,4}, 2^4 even/odd choices each
    let splits = three.stats.get("cycle_splits").copied().unwrap_or(0);
    if splits != 96 * 16 {
        return Err(format!("expected 1536 cycle families, got {splits}"));
    }
    Ok(format!(
        "n=2: {} families; n=3: {} families incl. {splits} cycle splits; {} extremal verdicts",
        two.instances_checked,
        three.instances_checked,
        two.stats.get("extremal_cycle").copied().unwrap_or(0) + three.stats.get("extremal_cycle").copied().unwrap_or(0)
    ))
}

fn egz() -> Result<String, String> {
    let mut total = 0;
    for n in 1..=6u64 {
        let r = campaign(Theorem::Egz, params(n as usize, None, 0))?;
        let expected = binomial(3 * n - 2, n - 1);
        clean(&r, expected)?;
        if r.instances_checked != expected {
            return Err(format!("n={n}: checked {} of {expected}", r.instances_checked));
        }
        total += r.instances_checked;
    }
    Ok(format!("{total} multisets of size 2n-1, n = 1..6"))
}

fn egz_extremal() -> Result<String, String> {
    let (mut total, mut pairs) = (0, 0);
    for n in 2..=6u64 {
        let r = campaign(Theorem::EgzExtremal, params(n as usize, None, 0))?;
        let expected = binomial(3 * n - 3, n - 1);
        clean(&r, expected)?;
        if r.instances_checked != expected {
            return Err(format!("n={n}: checked {} of {expected}", r.instances_checked));
        }
        // (n - 1, n - 1) blocks of residues a < b with b - a coprime to n
        let coprime_pairs = (1..n).filter(|d| gcd(*d, n) == 1).map(|d| n - d).sum::<u64>();
        let found = r.stats.get("extremal_pair").copied().unwrap_or(0);
        if found != coprime_pairs {
            return Err(format!("n={n}: {found} extremal pairs, expected {coprime_pairs}"));
        }
        total += r.instances_checked;
        pairs += found;
    }
    Ok(format!("{total} multisets of size 2n-2, n = 2..6, {pairs} extremal pairs"))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn transversal() -> Result<String, String> {
    let r = campaign(Theorem::Transversal, params(5, Some(1_000), 6))?;
    clean(&r, 1_000)?;
    Ok(format!("{} matrices with m = 2n-1, n <= 5", r.instances_checked))
}

fn without_elapsed(report: &[u8]) -> String {
    String::from_utf8_lossy(report)
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"elapsed\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn verify_output(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_rainbowkit")).args(args).output().map_err(|e| e.to_string())
}

fn determinism() -> Result<String, String> {
    let campaigns: [&[&str]; 6] = [
        &["verify", "general", "--samples", "300", "--seed", "17"],
        &["verify", "counting", "--samples", "300", "--seed", "17"],
        &["verify", "dichotomy", "--n", "3", "--samples", "300", "--seed", "17"],
        &["verify", "extremal", "--n", "3", "--samples", "300", "--seed", "17"],
        &["verify", "drisko", "--n", "3", "--samples", "300", "--seed", "17"],
        &["verify", "transversal", "--samples", "300", "--seed", "17"],
    ];
    for args in campaigns {
        let (a, b) = (verify_output(args)?, verify_output(args)?);
        if a.stdout.is_empty() {
            return Err(format!("{args:?}: no report ({})", String::from_utf8_lossy(&a.stderr)));
        }
        serde_json::from_slice::<CampaignReport>(&a.stdout).map_err(|e| format!("{args:?}: {e}"))?;
        if without_elapsed(&a.stdout) != without_elapsed(&b.stdout) || a.status.code() != b.status.code() {
            return Err(format!("{args:?}: runs differ"));
        }
    }
    Ok(format!("{} campaigns repeated with byte-identical reports", campaigns.len()))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Option<u64>, fn() -> Result<String, String>);
    let criteria: [Criterion; 10] = [
        (1, "2n-1 matchings of size n have a rainbow matching of size n", Some(120), drisko),
        (2, "doubled cycle families have no rainbow matching of size n", Some(60), sharpness),
        (3, "size condition guarantees a rainbow matching; exact agreement below it", Some(300), general),
        (4, "multicolored reachable set is larger than the path count", Some(120), counting),
        (5, "regimented or multicolored s-t path, exactly one", Some(300), dichotomy),
        (6, "2n-2 matchings without a rainbow matching are a doubled cycle", Some(600), extremal),
        (7, "2n-1 residues contain n summing to zero", Some(60), egz),
        (8, "2n-2 residues without a zero-sum n-subset are two coprime blocks", Some(60), egz_extremal),
        (9, "2n-1 rows with distinct symbols have a full transversal", Some(60), transversal),
        (10, "same seed, same report", None, determinism),
    ];
    let mut failed = 0;
    for (id, what, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let timed = result.and_then(|d| match limit {
            Some(secs) => within(elapsed, Duration::from_secs(secs)).map(|_| d),
            None => Ok(d),
        });
        let verdict = match timed {
            Ok(detail) => Verdict { ok: true, detail },
            Err(detail) => Verdict { ok: false, detail },
        };
        failed += u32::from(!verdict.ok);
        println!(
            "criterion {id:>2} {} {what} [{:.1}s] {}",
            if verdict.ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            verdict.detail
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
