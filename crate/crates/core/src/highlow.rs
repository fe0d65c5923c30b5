//! High/low degree split and the 3-partition of the high vertices.
//!
//! Parts are indexed `0..3` internally (printed as 1..3). Cross counts are
//! stored by the index of the part they do *not* touch: `b[0]` is `b_23`,
//! `b[1]` is `b_13` and `b[2]` is `b_12`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error("alpha must lie in (0, 1/3), got {0}")]
    AlphaOutOfRange(f64),
    #[error("hypergraph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HighLowSplit {
    pub alpha: f64,
    pub t: usize,
    /// High vertices in ascending label order.
    pub high: Vec<usize>,
    pub low: Vec<usize>,
    is_high: Vec<bool>,
}

impl HighLowSplit {
    /// A split with an explicit high set; `alpha` is recorded as NaN.
    pub fn from_high(h: &Hypergraph, high: impl IntoIterator<Item = usize>) -> Self {
        let mut is_high = vec![false; h.n()];
        for v in high {
            is_high[v] = true;
        }
        let (high, low): (Vec<usize>, Vec<usize>) = (0..h.n()).partition(|&v| is_high[v]);
        Self {
            alpha: f64::NAN,
            t: high.len(),
            high,
            low,
            is_high,
        }
    }

    pub fn all_high(h: &Hypergraph) -> Self {
        Self::from_high(h, 0..h.n())
    }

    pub fn is_high(&self, v: usize) -> bool {
        self.is_high[v]
    }
}

/// `ceil(m^alpha)`, snapping values within rounding error of an integer so
/// that exact powers are not pushed up by one.
pub fn high_count(m: usize, alpha: f64) -> usize {
    let r = (m as f64).powf(alpha);
    let nearest = r.round();
    if (r - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as usize
    } else {
        r.ceil() as usize
    }
}

/// Takes the `min(n, ceil(m^alpha))` vertices of largest degree as high;
/// ties go to the smaller label.
pub fn split_high_low(h: &Hypergraph, alpha: f64) -> Result<HighLowSplit, SplitError> {
    if !(alpha > 0.0 && alpha < 1.0 / 3.0) {
        return Err(SplitError::AlphaOutOfRange(alpha));
    }
    if h.m() == 0 {
        return Err(SplitError::NoEdges);
    }
    let t = high_count(h.m(), alpha).min(h.n());
    let deg = h.degrees();
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by(|&u, &v| deg.get(v).cmp(&deg.get(u)).then(u.cmp(&v)));

    let mut is_high = vec![false; h.n()];
    for &v in &order[..t] {
        is_high[v] = true;
    }
    let (high, low) = (0..h.n()).partition(|&v| is_high[v]);
    Ok(HighLowSplit {
        alpha,
        t,
        high,
        low,
        is_high,
    })
}

/// Multigraph on the high vertices. Vertices are addressed by local index
/// (position in `vertices`, which is sorted by label).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighMultigraph {
    pub vertices: Vec<usize>,
    pairs: BTreeMap<(usize, usize), u64>,
    adjacency: Vec<Vec<(usize, u64)>>,
}

impl HighMultigraph {
    /// Multigraph on local vertices `0..n` with labels equal to indices.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (u, v, w) in pairs {
            assert!(u != v && u < n && v < n, "invalid multigraph pair ({u}, {v})");
            if w > 0 {
                *map.entry((u.min(v), u.max(v))).or_insert(0) += w;
            }
        }
        Self::with_labels((0..n).collect(), map)
    }

    fn with_labels(vertices: Vec<usize>, pairs: BTreeMap<(usize, usize), u64>) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (&(u, v), &w) in &pairs {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Self {
            vertices,
            pairs,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Pair multiplicities keyed by local indices `(u, v)` with `u < v`.
    pub fn pairs(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.pairs
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adjacency[v]
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.pairs.values().sum()
    }

    pub fn local_index(&self, label: usize) -> Option<usize> {
        self.vertices.binary_search(&label).ok()
    }
}

/// Pairs `e ∩ high` for every edge with exactly two high vertices.
pub fn build_multigraph(h: &Hypergraph, split: &HighLowSplit) -> HighMultigraph {
    let mut local = vec![usize::MAX; h.n()];
    for (i, &v) in split.high.iter().enumerate() {
        local[v] = i;
    }
    let mut pairs = BTreeMap::new();
    for edge in h.edges() {
        let highs: Vec<usize> = edge
            .iter()
            .filter(|&&v| split.is_high(v))
            .map(|&v| local[v])
            .collect();
        if let [u, v] = highs[..] {
            *pairs.entry((u.min(v), u.max(v))).or_insert(0u64) += 1;
        }
    }
    HighMultigraph::with_labels(split.high.clone(), pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub cut: u64,
}

/// Greedy max-cut of the sub-multigraph induced by `subset` (local indices).
/// Each vertex joins the side holding fewer of its already-placed neighbours;
/// ties go to the smaller side, then to the left. The cut is at least half
/// the induced multiplicity.
pub fn greedy_bipartition(g: &HighMultigraph, subset: &[usize]) -> Bipartition {
    // 0 = unplaced or outside the subset, 1 = left, 2 = right
    let mut side = vec![0u8; g.vertex_count()];
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let mut cut = 0u64;
    for &v in subset {
        let (mut to_left, mut to_right) = (0u64, 0u64);
        for &(u, w) in g.neighbors(v) {
            match side[u] {
                1 => to_left += w,
                2 => to_right += w,
                _ => {}
            }
        }
        let go_left = match to_left.cmp(&to_right) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => left.len() <= right.len(),
        };
        if go_left {
            side[v] = 1;
            left.push(v);
            cut += to_right;
        } else {
            side[v] = 2;
            right.push(v);
            cut += to_left;
        }
    }
    Bipartition { left, right, cut }
}

/// A 3-partition of the high vertices with its multigraph edge counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighPartition {
    /// Global labels, aligned with `part`.
    pub vertices: Vec<usize>,
    /// Part (0..3) of each local vertex.
    pub part: Vec<usize>,
    /// Internal multiplicity of each part.
    pub x: [u64; 3],
    /// `b[k]`: multiplicity between the two parts other than `k`.
    pub b: [u64; 3],
    /// Number of improving moves applied by the local search.
    pub move_log: usize,
}

/// Index of the part not in `{i, j}` (`i != j`).
pub fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

impl HighPartition {
    /// Partition with the given part (0..3) for each local vertex of `g`.
    pub fn from_assignment(g: &HighMultigraph, part: Vec<usize>) -> Self {
        assert_eq!(part.len(), g.vertex_count());
        assert!(part.iter().all(|&p| p < 3));
        Self::from_parts(g, part, 0)
    }

    fn from_parts(g: &HighMultigraph, part: Vec<usize>, move_log: usize) -> Self {
        let mut x = [0u64; 3];
        let mut b = [0u64; 3];
        for (&(u, v), &w) in g.pairs() {
            let (pu, pv) = (part[u], part[v]);
            if pu == pv {
                x[pu] += w;
            } else {
                b[third(pu, pv)] += w;
            }
        }
        Self {
            vertices: g.vertices.clone(),
            part,
            x,
            b,
            move_log,
        }
    }

    pub fn objective(&self) -> u64 {
        self.b.iter().sum()
    }

    pub fn parts(&self) -> [Vec<usize>; 3] {
        let mut parts: [Vec<usize>; 3] = Default::default();
        for (v, &p) in self.part.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }

    /// Part of the high vertex with global label `label`.
    pub fn part_of(&self, label: usize) -> Option<usize> {
        self.vertices
            .binary_search(&label)
            .ok()
            .map(|i| self.part[i])
    }

    pub fn check_inequalities(&self) -> InequalityReport {
        check_partition_inequalities(self)
    }
}

struct SearchState<'g> {
    g: &'g HighMultigraph,
    part: Vec<usize>,
    /// `conn[v][p]`: multiplicity from `v` into part `p`.
    conn: Vec<[u64; 3]>,
    x: [u64; 3],
    b: [u64; 3],
}

impl<'g> SearchState<'g> {
    fn new(g: &'g HighMultigraph, part: Vec<usize>) -> Self {
        let mut state = Self {
            g,
            part,
            conn: Vec::new(),
            x: [0; 3],
            b: [0; 3],
        };
        state.rebuild();
        state
    }

    fn rebuild(&mut self) {
        let p = HighPartition::from_parts(self.g, self.part.clone(), 0);
        self.x = p.x;
        self.b = p.b;
        self.conn = (0..self.g.vertex_count())
            .map(|v| {
                let mut c = [0u64; 3];
                for &(u, w) in self.g.neighbors(v) {
                    c[self.part[u]] += w;
                }
                c
            })
            .collect();
    }

    fn class_mut(&mut self, p: usize, q: usize) -> &mut u64 {
        if p == q {
            &mut self.x[p]
        } else {
            &mut self.b[third(p, q)]
        }
    }

    fn move_vertex(&mut self, v: usize, to: usize) {
        let from = self.part[v];
        for &(u, w) in self.g.neighbors(v) {
            let pu = self.part[u];
            *self.class_mut(pu, from) -= w;
            *self.class_mut(pu, to) += w;
            self.conn[u][from] -= w;
            self.conn[u][to] += w;
        }
        self.part[v] = to;
    }

    fn improving_vertex_move(&self) -> Option<(usize, usize)> {
        (0..self.part.len()).find_map(|v| {
            let from = self.part[v];
            (0..3)
                .filter(|&to| to != from)
                .find(|&to| self.conn[v][from] > self.conn[v][to])
                .map(|to| (v, to))
        })
    }

    /// Merge part `i` into part `j`, then rebuild part `i` from one side of a
    /// greedy bipartition of part `k`. The objective changes by
    /// `cut(k) - b_ij`.
    fn improving_merge_split(&self) -> Option<(usize, usize, Bipartition)> {
        const ORDER: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        for (i, j) in ORDER {
            let k = third(i, j);
            if self.x[k] == 0 {
                continue;
            }
            let members: Vec<usize> = (0..self.part.len()).filter(|&v| self.part[v] == k).collect();
            let split = greedy_bipartition(self.g, &members);
            if split.cut > self.b[k] {
                return Some((i, j, split));
            }
        }
        None
    }

    fn apply_merge_split(&mut self, i: usize, j: usize, split: &Bipartition) {
        for p in self.part.iter_mut() {
            if *p == i {
                *p = j;
            }
        }
        for &v in &split.left {
            self.part[v] = i;
        }
        self.rebuild();
    }
}

/// Local search for a 3-partition maximising `b_23 + b_13 + b_12`.
///
/// Starts from a seeded uniform random assignment and applies first-improving
/// single-vertex moves (in vertex, then target-part order); when none exists
/// it tries merge-and-split moves. Stops when neither family improves, which
/// certifies `b_ij >= max(2 x_i, 2 x_j, x_k / 2)`.
pub fn local_search_partition(g: &HighMultigraph, seed: u64) -> HighPartition {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let part: Vec<usize> = (0..g.vertex_count()).map(|_| rng.gen_range(0..3)).collect();
    let mut state = SearchState::new(g, part);
    let mut moves = 0usize;
    loop {
        if let Some((v, to)) = state.improving_vertex_move() {
            state.move_vertex(v, to);
            moves += 1;
            continue;
        }
        if let Some((i, j, split)) = state.improving_merge_split() {
            state.apply_merge_split(i, j, &split);
            moves += 1;
            continue;
        }
        break;
    }
    HighPartition {
        vertices: g.vertices.clone(),
        part: state.part,
        x: state.x,
        b: state.b,
        move_log: moves,
    }
}

/// Re-places high vertices that have no multigraph edges so that edges lying
/// entirely inside the high set touch as many parts as possible. Such
/// vertices contribute nothing to `x` or `b`, so the certificate of
/// [`local_search_partition`] is unaffected. Returns the number of moves.
pub fn settle_isolated_high(
    h: &Hypergraph,
    g: &HighMultigraph,
    partition: &mut HighPartition,
) -> usize {
    let local = |label: usize| g.local_index(label);
    let inner: Vec<[usize; 3]> = h
        .edges()
        .iter()
        .filter_map(|e| Some([local(e[0])?, local(e[1])?, local(e[2])?]))
        .collect();
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (idx, e) in inner.iter().enumerate() {
        for &v in e {
            incident[v].push(idx);
        }
    }
    let isolated: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.neighbors(v).is_empty() && !incident[v].is_empty())
        .collect();

    let part = &mut partition.part;
    let mut moves = 0;
    loop {
        let mut improved = false;
        for &v in &isolated {
            let from = part[v];
            let gain = |to: usize| -> i64 {
                incident[v]
                    .iter()
                    .map(|&idx| {
                        let others = inner[idx].iter().filter(|&&u| u != v).map(|&u| part[u]);
                        let (mut has_from, mut has_to) = (false, false);
                        for p in others {
                            has_from |= p == from;
                            has_to |= p == to;
                        }
                        i64::from(!has_to) - i64::from(!has_from)
                    })
                    .sum()
            };
            if let Some(to) = (0..3).filter(|&to| to != from).find(|&to| gain(to) > 0) {
                part[v] = to;
                moves += 1;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    moves
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// `2 x_p` for the part `p`.
    TwiceInternal(usize),
    /// `x_k / 2` for the opposite part `k`.
    HalfOpposite(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalitySlack {
    /// The two parts `(i, j)`, `i < j`, whose cross count is bounded.
    pub pair: (usize, usize),
    pub bound: Bound,
    /// `b_ij - bound`.
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub slacks: Vec<InequalitySlack>,
}

impl InequalityReport {
    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().map(|s| s.slack).fold(f64::INFINITY, f64::min)
    }

    pub fn all_hold(&self) -> bool {
        self.slacks.iter().all(|s| s.slack >= 0.0)
    }

    pub fn slack(&self, pair: (usize, usize), bound: Bound) -> Option<f64> {
        self.slacks
            .iter()
            .find(|s| s.pair == pair && s.bound == bound)
            .map(|s| s.slack)
    }
}

/// Slack of each of the nine inequalities `b_ij >= 2x_i, 2x_j, x_k/2`.
pub fn check_partition_inequalities(p: &HighPartition) -> InequalityReport {
    let mut slacks = Vec::with_capacity(9);
    for (i, j) in [(1, 2), (0, 2), (0, 1)] {
        let k = third(i, j);
        let b = p.b[k] as f64;
        slacks.push(InequalitySlack {
            pair: (i, j),
            bound: Bound::TwiceInternal(i),
            slack: b - 2.0 * p.x[i] as f64,
        });
        slacks.push(InequalitySlack {
            pair: (i, j),
            bound: Bound::TwiceInternal(j),
            slack: b - 2.0 * p.x[j] as f64,
        });
        slacks.push(InequalitySlack {
            pair: (i, j),
            bound: Bound::HalfOpposite(k),
            slack: b - p.x[k] as f64 / 2.0,
        });
    }
    InequalityReport { slacks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{gen_complete, gen_pair_core, Hypergraph};

    fn brute_force_best(g: &HighMultigraph) -> u64 {
        let n = g.vertex_count();
        let mut best = 0;
        let mut part = vec![0usize; n];
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            for p in part.iter_mut() {
                *p = c % 3;
                c /= 3;
            }
            best = best.max(HighPartition::from_parts(g, part.clone(), 0).objective());
        }
        best
    }

    #[test]
    fn high_count_examples() {
        assert_eq!(high_count(4060, 2.0 / 7.0), 11);
        assert_eq!(high_count(200, 2.0 / 7.0), 5);
        assert_eq!(high_count(1, 0.1), 1);
        assert_eq!(high_count(128, 2.0 / 7.0), 4);
    }

    #[test]
    fn split_of_complete_hypergraph() {
        let h = gen_complete(30).unwrap();
        let split = split_high_low(&h, 2.0 / 7.0).unwrap();
        assert_eq!(split.t, 11);
        assert_eq!(split.high, (0..11).collect::<Vec<_>>());
        assert_eq!(split.low.len(), 19);
    }

    #[test]
    fn split_of_pair_core_breaks_ties_by_label() {
        let h = gen_pair_core(200).unwrap();
        let split = split_high_low(&h, 2.0 / 7.0).unwrap();
        assert_eq!(split.t, 5);
        assert_eq!(split.high, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn split_errors() {
        let h = gen_complete(4).unwrap();
        assert!(matches!(split_high_low(&h, 0.0), Err(SplitError::AlphaOutOfRange(_))));
        assert!(matches!(split_high_low(&h, 0.34), Err(SplitError::AlphaOutOfRange(_))));
        let empty = Hypergraph::new(4, vec![]).unwrap();
        assert_eq!(split_high_low(&empty, 0.2), Err(SplitError::NoEdges));
        let single = Hypergraph::new(3, vec![[0, 1, 2]]).unwrap();
        assert_eq!(split_high_low(&single, 0.3).unwrap().t, 1);
    }

    #[test]
    fn multigraph_of_complete_hypergraph() {
        let h = gen_complete(30).unwrap();
        let split = split_high_low(&h, 2.0 / 7.0).unwrap();
        let g = build_multigraph(&h, &split);
        assert_eq!(g.pairs().len(), 55);
        assert!(g.pairs().values().all(|&w| w == 19));
        assert_eq!(g.total_multiplicity(), 55 * 19);
    }

    #[test]
    fn multigraph_of_pair_core_with_only_the_pair_high() {
        let h = gen_pair_core(200).unwrap();
        // alpha small enough that only two vertices are high: ceil(200^0.13) = 2
        let split = split_high_low(&h, 0.13).unwrap();
        assert_eq!(split.high, vec![0, 1]);
        let g = build_multigraph(&h, &split);
        assert_eq!(g.pairs().iter().collect::<Vec<_>>(), vec![(&(0, 1), &200)]);
    }

    #[test]
    fn multigraph_without_two_high_edges_is_empty() {
        let h = Hypergraph::new(10, vec![[0, 1, 2], [0, 4, 5], [3, 6, 7], [3, 8, 9]]).unwrap();
        let split = split_high_low(&h, 0.05).unwrap();
        assert_eq!(split.high, vec![0, 3]);
        assert_eq!(build_multigraph(&h, &split).total_multiplicity(), 0);
    }

    #[test]
    fn greedy_bipartition_examples() {
        let edge = HighMultigraph::from_pairs(2, [(0, 1, 1)]);
        let b = greedy_bipartition(&edge, &[0, 1]);
        assert_eq!(b.cut, 1);
        assert_eq!((b.left.len(), b.right.len()), (1, 1));

        let triangle = HighMultigraph::from_pairs(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert_eq!(greedy_bipartition(&triangle, &[0, 1, 2]).cut, 2);

        assert_eq!(greedy_bipartition(&triangle, &[]).cut, 0);
    }

    #[test]
    fn local_search_on_parallel_edges() {
        let g = HighMultigraph::from_pairs(2, [(0, 1, 200)]);
        for seed in 0..20 {
            let p = local_search_partition(&g, seed);
            assert_ne!(p.part[0], p.part[1]);
            assert_eq!(p.objective(), 200);
            assert_eq!(p.x, [0, 0, 0]);
            let k = third(p.part[0], p.part[1]);
            assert_eq!(p.b[k], 200);
            let report = check_partition_inequalities(&p);
            let (i, j) = (k.min(3), 0);
            let _ = (i, j);
            let pair = {
                let (a, b) = (p.part[0].min(p.part[1]), p.part[0].max(p.part[1]));
                (a, b)
            };
            assert_eq!(report.slack(pair, Bound::TwiceInternal(pair.0)), Some(200.0));
            assert_eq!(report.slack(pair, Bound::TwiceInternal(pair.1)), Some(200.0));
            assert_eq!(report.slack(pair, Bound::HalfOpposite(k)), Some(200.0));
        }
    }

    #[test]
    fn local_search_on_triangle_and_k4() {
        let triangle = HighMultigraph::from_pairs(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert_eq!(brute_force_best(&triangle), 3);
        for seed in 0..20 {
            let p = local_search_partition(&triangle, seed);
            assert_eq!(p.objective(), 3);
            assert_eq!(p.x, [0, 0, 0]);
        }

        let k4 = HighMultigraph::from_pairs(
            4,
            [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        );
        assert_eq!(brute_force_best(&k4), 5);
        for seed in 0..20 {
            let p = local_search_partition(&k4, seed);
            assert_eq!(p.objective(), 5);
            let mut sizes: Vec<usize> = p.parts().iter().map(Vec::len).collect();
            sizes.sort_unstable();
            assert_eq!(sizes, vec![1, 1, 2]);
            let doubled = (0..3).find(|&i| p.parts()[i].len() == 2).unwrap();
            assert_eq!(p.x[doubled], 1);
            let report = check_partition_inequalities(&p);
            assert!(report.all_hold());
            let (i, j) = {
                let others: Vec<usize> = (0..3).filter(|&i| i != doubled).collect();
                (others[0], others[1])
            };
            assert_eq!(report.slack((i, j), Bound::HalfOpposite(doubled)), Some(0.5));
        }
    }

    #[test]
    fn empty_multigraph_has_zero_slacks() {
        let g = HighMultigraph::from_pairs(0, []);
        let p = local_search_partition(&g, 3);
        let report = check_partition_inequalities(&p);
        assert_eq!(report.slacks.len(), 9);
        assert!(report.slacks.iter().all(|s| s.slack == 0.0));
    }

    #[test]
    fn complete_multigraph_is_balanced() {
        for n in 1..=13 {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 19)));
            let g = HighMultigraph::from_pairs(n, pairs);
            for seed in 0..5 {
                let p = local_search_partition(&g, seed);
                let sizes: Vec<usize> = p.parts().iter().map(Vec::len).collect();
                let spread = sizes.iter().max().unwrap() - sizes.iter().min().unwrap();
                assert!(spread <= 1, "n={n} sizes={sizes:?}");
            }
        }
    }

    #[test]
    fn settle_moves_isolated_high_vertices_onto_uncovered_parts() {
        let h = gen_pair_core(200).unwrap();
        let split = split_high_low(&h, 2.0 / 7.0).unwrap();
        let g = build_multigraph(&h, &split);
        assert_eq!(g.total_multiplicity(), 197);
        for seed in 0..30 {
            let mut p = local_search_partition(&g, seed);
            let before = (p.x, p.b);
            settle_isolated_high(&h, &g, &mut p);
            assert_eq!((p.x, p.b), before);
            let free = third(p.part[0], p.part[1]);
            assert!((2..5).all(|v| p.part[v] == free), "seed {seed}: {:?}", p.part);
        }
    }
}
