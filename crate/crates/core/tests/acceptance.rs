//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any FAIL.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use judicious::exact::{rat, Rational};
use judicious::highlow::{check_partition_inequalities, local_search_partition, HighMultigraph, HighPartition};
use judicious::hypergraph::{gen_complete, gen_pair_core};
use judicious::lemma_solve::{eval_l, qtilde_sum, solve_q, LemmaInstance, MISS_BOUND};
use judicious::verify::analytic::{jensen_qtilde_sum, residual, spot_check_all, spot_check_analytic};
use judicious::verify::{full_report, ReportOptions};
use judicious::{partition, PartitionConfig};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

const LEMMA_SUM_TOL: f64 = 1e-9;
const POST_CHECK_TOL: f64 = 1e-12;
const SYSTEM2_TOL: f64 = 1e-9;
const JENSEN_TOL: f64 = 1e-12;
const FULL_RUN_LIMIT: Duration = Duration::from_secs(300);
const ORACLE_LIMIT: Duration = Duration::from_secs(30);
const K30_THRESHOLD: u64 = 2700;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let report = pool.install(|| full_report(&ReportOptions::default())).unwrap();
    let elapsed = start.elapsed();
    let computed: Vec<_> = report.computed().collect();
    let in_band = computed.iter().filter(|r| r.within_band() == Some(true)).count();
    let with_published = computed.iter().filter(|r| r.within_band().is_some()).count();
    let failures: Vec<String> = report.failures().iter().map(|r| format!("{} [{}]", r.system, r.conditions)).collect();
    Outcome {
        pass: report.all_certified() && elapsed <= FULL_RUN_LIMIT,
        detail: format!(
            "{} computed cases, min bound {:.4}, failed {:?}; {in_band}/{with_published} within +-0.08 of published (informational); {:.1}s single-threaded",
            computed.len(),
            report.min_bound().unwrap_or(f64::NAN),
            failures,
            elapsed.as_secs_f64(),
        ),
    }
}

fn criterion_2() -> Outcome {
    const DENOM: i128 = 1 << 20;
    let start = Instant::now();
    let mut rng = SplitMix64::seed_from_u64(0xACCE);
    let (mut accepted, mut drawn, mut bad) = (0u32, 0u64, Vec::new());
    let mut min_sum = f64::INFINITY;
    while accepted < 100_000 {
        drawn += 1;
        // uniform point of the simplex on a dyadic grid
        let mut w = [0f64; 10];
        for wi in &mut w {
            *wi = -(1.0 - rng.gen::<f64>()).ln();
        }
        let total: f64 = w.iter().sum();
        let mut k: [i128; 10] = w.map(|x| (x / total * DENOM as f64).floor() as i128);
        k[9] += DENOM - k.iter().sum::<i128>();
        // cheap integer pre-check; LemmaInstance::new repeats it exactly
        let fails = (0..3).any(|j| {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let bound = (4 * k[a]).max(4 * k[b]).max(k[j]);
            2 * k[3 + j] < bound
        });
        if fails {
            continue;
        }
        let v: [Rational; 10] = k.map(|x| rat(x, DENOM));
        let Ok(inst) = LemmaInstance::new([v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]], v[9]) else {
            continue;
        };
        accepted += 1;
        let sum = qtilde_sum(&inst).unwrap_or(f64::NAN);
        min_sum = min_sum.min(sum);
        let ok = sum >= 2.0 - LEMMA_SUM_TOL
            && solve_q(&inst).is_ok_and(|t| (0..3).all(|i| eval_l(&inst, i, t.q[i]) <= MISS_BOUND + POST_CHECK_TOL));
        if !ok && bad.len() < 3 {
            bad.push(format!("{inst:?}"));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: bad.is_empty() && elapsed <= ORACLE_LIMIT,
        detail: format!(
            "{accepted} instances accepted of {drawn} drawn, min sum {min_sum:.6}, failures {bad:?}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_3() -> Outcome {
    let s2 = spot_check_analytic("system2").unwrap();
    let x1 = s2.worst_point.iter().find(|(n, _)| *n == "x1").map(|p| p.1).unwrap_or(f64::NAN);
    let system2_ok = (s2.worst_margin - 7.0 / 81.0).abs() <= SYSTEM2_TOL && (x1 - 2.0 / 11.0).abs() <= SYSTEM2_TOL;
    let reports = spot_check_all();
    let anchors: Vec<_> = reports.iter().flat_map(|r| r.anchors.iter()).collect();
    let anchor = |q: Rational| anchors.iter().any(|a| a.expected == q && a.holds());
    let anchors_ok = anchor(rat(23, 9)) && anchor(rat(256, 2187)) && residual(rat(16, 81), rat(40, 81)) == rat(256, 2187);
    let jensen = jensen_qtilde_sum();
    let jensen_ok = (jensen - 2.0).abs() <= JENSEN_TOL;
    let all_margins = reports.iter().all(|r| r.passes());
    Outcome {
        pass: system2_ok && anchors_ok && jensen_ok && all_margins,
        detail: format!(
            "system2 margin {:.12} at x1 = {x1:.12}; anchors 23/9 and 256/2187 exact: {anchors_ok}; Jensen sum {jensen:.15}; {} spot checks pass: {all_margins}",
            s2.worst_margin,
            reports.len()
        ),
    }
}

fn criterion_4() -> Outcome {
    let mut rng = SplitMix64::seed_from_u64(4);
    let mut violations = 0;
    for seed in 0..1000 {
        let n = rng.gen_range(1..=12);
        let density = rng.gen::<f64>();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    pairs.push((u, v, rng.gen_range(1..=60)));
                }
            }
        }
        let g = HighMultigraph::from_pairs(n, pairs);
        if !check_partition_inequalities(&local_search_partition(&g, seed)).all_hold() {
            violations += 1;
        }
    }
    let (mut graphs, mut exhaustive_bad) = (0u32, 0u32);
    for n in 1..=6usize {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << slots.len()) {
            if mask.count_ones() > 8 {
                continue;
            }
            graphs += 1;
            let pairs = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &(u, v))| (u, v, 1));
            let g = HighMultigraph::from_pairs(n, pairs);
            let best = (0..3usize.pow(n as u32))
                .map(|mut code| {
                    let part = (0..n)
                        .map(|_| {
                            let p = code % 3;
                            code /= 3;
                            p
                        })
                        .collect();
                    HighPartition::from_assignment(&g, part)
                })
                .max_by_key(|p| p.objective())
                .unwrap();
            let found = local_search_partition(&g, mask as u64);
            let ok = found.objective() <= best.objective()
                && check_partition_inequalities(&found).all_hold()
                && check_partition_inequalities(&best).all_hold();
            if !ok {
                exhaustive_bad += 1;
            }
        }
    }
    Outcome {
        pass: violations == 0 && exhaustive_bad == 0,
        detail: format!(
            "{violations} violations on 1000 random multigraphs; {exhaustive_bad} failures on {graphs} exhaustive graphs"
        ),
    }
}

fn criterion_5() -> Outcome {
    let h = gen_pair_core(200).unwrap();
    let mins: Vec<u64> = (0..20)
        .map(|seed| partition(&h, &PartitionConfig { seed, ..Default::default() }).map_or(0, |o| o.min_coverage()))
        .collect();
    Outcome {
        pass: mins.iter().all(|&m| m == 200),
        detail: format!("min coverage over seeds 0..20: {:?}", mins.iter().min().unwrap()),
    }
}

fn criterion_6() -> Outcome {
    let h = gen_complete(30).unwrap();
    let out = partition(&h, &PartitionConfig::default()).unwrap();
    let expected = out.expected.unwrap_or([f64::NAN; 3]);
    let floor = 19.0 / 27.0 * (out.profile.m - out.profile.e3) as f64;
    let expectation_ok = expected.iter().all(|&e| e >= floor);
    let other: Vec<u64> = (1..20)
        .map(|seed| partition(&h, &PartitionConfig { seed, ..Default::default() }).unwrap().min_coverage())
        .collect();
    let cleared = other.iter().filter(|&&m| m >= K30_THRESHOLD).count();
    Outcome {
        pass: out.min_coverage() >= K30_THRESHOLD && expectation_ok,
        detail: format!(
            "seed 0: min coverage {} (threshold {K30_THRESHOLD}), coverage {:?}; expectations {:.1?} >= floor {floor:.1}; seeds 1..20 clear the threshold {cleared}/19 times (informational)",
            out.min_coverage(),
            out.coverage(),
            expected,
        ),
    }
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let bin = env!("CARGO_BIN_EXE_judicious");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        (out.status.code(), out.stdout)
    };
    let mut mismatches = Vec::new();
    for pass in 0..2 {
        let d = root.join(format!("run{pass}"));
        fs::create_dir_all(&d).unwrap();
        let p = |f: &str| d.join(f).to_str().unwrap().to_owned();
        run(&["gen", "random", "--n", "40", "--m", "1200", "--seed", "3", "--out", &p("g.txt")]);
        run(&["partition", &p("g.txt"), "--seed", "9", "--out", &p("part"), "--json"]);
        run(&["verify-lemma", "--systems", "1c", "--out", &p("verify")]);
    }
    let files = [
        "g.txt",
        "part/partition.txt",
        "part/summary.txt",
        "part/summary.json",
        "verify/report.csv",
        "verify/report.txt",
    ];
    for f in files {
        if fs::read(root.join("run0").join(f)).ok() != fs::read(root.join("run1").join(f)).ok() {
            mismatches.push(f);
        }
    }
    Outcome {
        pass: mismatches.is_empty() && fs::metadata(root.join("run0/part/summary.json")).is_ok(),
        detail: format!("{} output files compared across two runs, mismatches {mismatches:?}", files.len()),
    }
}

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("1 lemma certification", criterion_1),
        ("2 lemma oracle", criterion_2),
        ("3 analytic spot checks", criterion_3),
        ("4 partitioner certificates", criterion_4),
        ("5 pair-core coverage", criterion_5),
        ("6 complete hypergraph K30", criterion_6),
        ("7 reproducibility", criterion_7),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {name}: {}", outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
