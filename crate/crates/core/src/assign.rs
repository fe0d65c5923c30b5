//! Random placement of low-degree vertices and coverage scoring.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use thiserror::Error;

use crate::highlow::{HighLowSplit, HighPartition};
use crate::hypergraph::Hypergraph;
use crate::lemma_solve::{eval_l, EdgeProfile, LemmaInstance, QTriple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignError {
    #[error("vertex {vertex} has no part")]
    Unassigned { vertex: usize },
    #[error("vertex {vertex} has part {part}, expected 0, 1 or 2")]
    BadPart { vertex: usize, part: usize },
    #[error("assignment covers {found} vertices, hypergraph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A part (0..3) for every vertex with the resulting coverage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullPartition {
    pub assignment: Vec<usize>,
    /// `coverage[i]`: number of edges with at least one vertex in part `i`.
    pub coverage: [u64; 3],
}

impl FullPartition {
    pub fn min_coverage(&self) -> u64 {
        self.coverage.into_iter().min().unwrap_or(0)
    }
}

fn coverage_of(h: &Hypergraph, assignment: &[usize]) -> [u64; 3] {
    let mut coverage = [0u64; 3];
    for edge in h.edges() {
        let mut seen = [false; 3];
        for &v in edge {
            seen[assignment[v]] = true;
        }
        for (c, s) in coverage.iter_mut().zip(seen) {
            *c += u64::from(s);
        }
    }
    coverage
}

/// Coverage of a (possibly partial) assignment; fails on the first vertex
/// without a valid part.
pub fn score(h: &Hypergraph, assignment: &[Option<usize>]) -> Result<[u64; 3], AssignError> {
    if assignment.len() != h.n() {
        return Err(AssignError::LengthMismatch {
            expected: h.n(),
            found: assignment.len(),
        });
    }
    let mut total = Vec::with_capacity(h.n());
    for (vertex, part) in assignment.iter().enumerate() {
        match *part {
            None => return Err(AssignError::Unassigned { vertex }),
            Some(part) if part >= 3 => return Err(AssignError::BadPart { vertex, part }),
            Some(part) => total.push(part),
        }
    }
    Ok(coverage_of(h, &total))
}

/// Part chosen by a uniform draw `u` in `[0, 1)` against `p`.
fn draw_part(p: &[f64; 3], u: f64) -> usize {
    if u < p[0] {
        0
    } else if u < p[0] + p[1] {
        1
    } else {
        2
    }
}

/// Keeps the high parts of `p` and places each non-isolated low vertex, in
/// label order, with one uniform draw against `p_i = 1 - q_i`. Isolated
/// vertices go to part 0 and consume no draw.
pub fn assign_low(
    h: &Hypergraph,
    split: &HighLowSplit,
    p: &HighPartition,
    q: &QTriple,
    seed: u64,
) -> FullPartition {
    let degrees = h.degrees();
    let probabilities = q.p();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut assignment = vec![0usize; h.n()];
    for (&v, &part) in p.vertices.iter().zip(&p.part) {
        assignment[v] = part;
    }
    for &v in &split.low {
        if degrees.get(v) > 0 {
            assignment[v] = draw_part(&probabilities, rng.gen::<f64>());
        }
    }
    for (v, part) in assignment.iter_mut().enumerate() {
        if degrees.get(v) == 0 {
            *part = 0;
        }
    }
    let coverage = coverage_of(h, &assignment);
    FullPartition {
        assignment,
        coverage,
    }
}

/// Exact expectation of the coverage of part `i` under [`assign_low`].
pub fn expected_coverage(
    inst: &LemmaInstance,
    profile: &EdgeProfile,
    q: &QTriple,
    i: usize,
) -> f64 {
    let scale = (profile.m - profile.e3) as f64;
    profile.m as f64 - (scale * eval_l(inst, i, q.q[i]) + profile.e3_miss[i] as f64)
}

/// Best of several placements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialsOutcome {
    pub best: FullPartition,
    /// Index of the winning trial; its seed is `seed + trial`.
    pub trial: u64,
    pub trials: u64,
}

/// Runs [`assign_low`] with seeds `seed, seed + 1, ...` and keeps the
/// placement with the largest minimum coverage, preferring earlier trials
/// on ties. Trials run on the current rayon pool; the result does not
/// depend on scheduling.
pub fn run_trials(
    h: &Hypergraph,
    split: &HighLowSplit,
    p: &HighPartition,
    q: &QTriple,
    trials: u64,
    seed: u64,
) -> TrialsOutcome {
    assert!(trials >= 1, "at least one trial is required");
    let (best, trial) = (0..trials)
        .into_par_iter()
        .map(|t| (assign_low(h, split, p, q, seed.wrapping_add(t)), t))
        .reduce_with(|a, b| {
            let key = |x: &(FullPartition, u64)| (x.0.min_coverage(), std::cmp::Reverse(x.1));
            if key(&b) > key(&a) {
                b
            } else {
                a
            }
        })
        .expect("non-empty trial range");
    TrialsOutcome {
        best,
        trial,
        trials,
    }
}

/// Deviation and threshold of the bounded-differences argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationParams {
    pub alpha: f64,
    pub m: u64,
    /// Edges with all three vertices high.
    pub e3: u64,
    /// `sqrt(4.5 ln 3) m^(1 - alpha/2)`.
    pub z: f64,
    /// `(19/27)(m - e3)`.
    pub expectation_floor: f64,
    /// `(19/27)(m - e3) - z`.
    pub target: f64,
}

impl ConcentrationParams {
    /// True when the guaranteed threshold says nothing.
    pub fn vacuous(&self) -> bool {
        self.target <= 0.0
    }
}

pub fn deviation(m: u64, alpha: f64) -> f64 {
    (4.5 * 3f64.ln()).sqrt() * (m as f64).powf(1.0 - alpha / 2.0)
}

pub fn concentration_report(h: &Hypergraph, split: &HighLowSplit, alpha: f64) -> ConcentrationParams {
    let e3 = h
        .edges()
        .iter()
        .filter(|e| e.iter().all(|&v| split.is_high(v)))
        .count() as u64;
    let m = h.m() as u64;
    let z = deviation(m, alpha);
    let expectation_floor = 19.0 / 27.0 * (m - e3) as f64;
    ConcentrationParams {
        alpha,
        m,
        e3,
        z,
        expectation_floor,
        target: expectation_floor - z,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highlow::{build_multigraph, local_search_partition, split_high_low};
    use crate::hypergraph::{gen_complete, gen_pair_core};

    #[test]
    fn score_examples() {
        let h = gen_complete(6).unwrap();
        assert_eq!(score(&h, &[Some(0); 6]).unwrap(), [20, 0, 0]);
        let pairs = [0, 0, 1, 1, 2, 2].map(Some);
        assert_eq!(score(&h, &pairs).unwrap(), [16, 16, 16]);
        let k3 = gen_complete(3).unwrap();
        assert_eq!(score(&k3, &[Some(0), Some(1), Some(2)]).unwrap(), [1, 1, 1]);
        assert_eq!(
            score(&k3, &[Some(0), None, Some(2)]),
            Err(AssignError::Unassigned { vertex: 1 })
        );
    }

    #[test]
    fn pair_core_places_all_low_vertices_in_the_free_part() {
        let h = gen_pair_core(200).unwrap();
        let split = split_high_low(&h, 0.13).unwrap();
        let g = build_multigraph(&h, &split);
        let p = HighPartition::from_assignment(&g, vec![0, 1]);
        let q = QTriple {
            q: [1.0, 1.0, 0.0],
            qtilde: [1.0, 1.0, 8.0 / 27.0],
        };
        let full = assign_low(&h, &split, &p, &q, 5);
        assert_eq!(full.coverage, [200, 200, 200]);
        assert!(full.assignment[2..].iter().all(|&part| part == 2));
        assert_eq!(full, assign_low(&h, &split, &p, &q, 5));
    }

    #[test]
    fn empty_low_set_keeps_high_partition() {
        let h = gen_complete(4).unwrap();
        let split = HighLowSplit::all_high(&h);
        let g = build_multigraph(&h, &split);
        let p = local_search_partition(&g, 2);
        let full = assign_low(&h, &split, &p, &QTriple::degenerate(), 0);
        assert_eq!(full.assignment, p.part);
    }

    #[test]
    fn isolated_vertices_go_to_part_zero() {
        let h = Hypergraph::new(6, vec![[0, 1, 2], [0, 1, 3]]).unwrap();
        let split = split_high_low(&h, 0.2).unwrap();
        let g = build_multigraph(&h, &split);
        let p = local_search_partition(&g, 0);
        let q = QTriple {
            q: [0.0, 1.0, 1.0],
            qtilde: [1.0; 3],
        };
        let full = assign_low(&h, &split, &p, &q, 0);
        assert_eq!(&full.assignment[4..], &[0, 0]);
    }

    #[test]
    fn one_trial_matches_single_placement() {
        let h = gen_complete(12).unwrap();
        let split = split_high_low(&h, 2.0 / 7.0).unwrap();
        let g = build_multigraph(&h, &split);
        let p = local_search_partition(&g, 0);
        let q = QTriple {
            q: [2.0 / 3.0; 3],
            qtilde: [2.0 / 3.0; 3],
        };
        let out = run_trials(&h, &split, &p, &q, 1, 9);
        assert_eq!(out.best, assign_low(&h, &split, &p, &q, 9));
        assert_eq!(out.trial, 0);
    }

    #[test]
    fn concentration_examples() {
        let c = 4.5f64 * 3f64.ln();
        assert!((deviation(1, 2.0 / 7.0) - c.sqrt()).abs() < 1e-12);
        assert!((deviation(1, 2.0 / 7.0) - 2.2235).abs() < 1e-4);
        let z = deviation(4060, 2.0 / 7.0);
        assert!((z - c.sqrt() * 4060f64.powf(6.0 / 7.0)).abs() < 1e-9);
        assert!((z - 2755.0).abs() < 1.0, "z = {z}");
        assert!((deviation(100, 1e-12) - c.sqrt() * 100.0).abs() < 1e-6);

        let h = gen_complete(30).unwrap();
        let split = split_high_low(&h, 2.0 / 7.0).unwrap();
        let report = concentration_report(&h, &split, 2.0 / 7.0);
        assert_eq!(report.e3, 165);
        assert!(report.vacuous());
    }
}
