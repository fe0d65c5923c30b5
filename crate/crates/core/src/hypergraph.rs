//! 3-uniform multi-hypergraphs: storage, the text format, and generators.
//!
//! The text format is line oriented: a header `n m`, then exactly `m` lines
//! `u v w`. Lines starting with `#` are comments. [`Hypergraph::to_text`]
//! emits the canonical form, which parses back to the same edge list.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use thiserror::Error;

pub type Edge = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: malformed edge: {reason}")]
    MalformedEdge { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: repeated vertex {vertex} within an edge")]
    RepeatedVertex { line: usize, vertex: usize },
    #[error("line {line}: header declares {expected} edges but {found} were found")]
    EdgeCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}

/// A 3-uniform hypergraph on vertices `0..n`. Parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    /// Builds a hypergraph, validating every edge. Errors report the line the
    /// edge would occupy in the text format (edge `i` is on line `i + 2`).
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, HypergraphError> {
        for (i, edge) in edges.iter().enumerate() {
            validate_edge(edge, n, i + 2)?;
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degrees(&self) -> DegreeTable {
        let mut deg = vec![0usize; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        DegreeTable(deg)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 12);
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for [u, v, w] in &self.edges {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }
}

impl FromStr for Hypergraph {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hypergraph(s)
    }
}

fn validate_edge(edge: &Edge, n: usize, line: usize) -> Result<(), HypergraphError> {
    for &v in edge {
        if v >= n {
            return Err(HypergraphError::VertexOutOfRange { line, vertex: v, n });
        }
    }
    let [u, v, w] = *edge;
    if u == v || u == w {
        return Err(HypergraphError::RepeatedVertex { line, vertex: u });
    }
    if v == w {
        return Err(HypergraphError::RepeatedVertex { line, vertex: v });
    }
    Ok(())
}

fn parse_fields<const N: usize>(line: &str) -> Result<[usize; N], String> {
    let mut out = [0usize; N];
    let mut fields = line.split_whitespace();
    for slot in out.iter_mut() {
        let field = fields
            .next()
            .ok_or_else(|| format!("expected {N} integers"))?;
        *slot = field
            .parse()
            .map_err(|_| format!("'{field}' is not a non-negative integer"))?;
    }
    if fields.next().is_some() {
        return Err(format!("expected {N} integers, found more"));
    }
    Ok(out)
}

/// Parses the text format. Edges keep file order.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, HypergraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(HypergraphError::MalformedHeader {
        line: 1,
        reason: "missing header".into(),
    })?;
    let [n, m] = parse_fields::<2>(header).map_err(|reason| HypergraphError::MalformedHeader {
        line: header_line,
        reason,
    })?;

    let mut edges = Vec::with_capacity(m.min(1 << 24));
    let mut last_line = header_line;
    for (line, body) in lines {
        if edges.len() == m {
            return Err(HypergraphError::EdgeCountMismatch {
                line,
                expected: m,
                found: m + 1,
            });
        }
        let edge = parse_fields::<3>(body)
            .map_err(|reason| HypergraphError::MalformedEdge { line, reason })?;
        validate_edge(&edge, n, line)?;
        edges.push(edge);
        last_line = line;
    }
    if edges.len() != m {
        return Err(HypergraphError::EdgeCountMismatch {
            line: last_line,
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Hypergraph { n, edges })
}

/// All `C(n, 3)` triples, in lexicographic order.
pub fn gen_complete(n: usize) -> Result<Hypergraph, HypergraphError> {
    if n < 3 {
        return Err(HypergraphError::InvalidParameter(format!(
            "complete hypergraph needs n >= 3, got {n}"
        )));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                edges.push([u, v, w]);
            }
        }
    }
    Ok(Hypergraph { n, edges })
}

/// `k` edges `{0, 1, j + 2}`: the pair `{0, 1}` lies in every edge.
pub fn gen_pair_core(k: usize) -> Result<Hypergraph, HypergraphError> {
    if k < 1 {
        return Err(HypergraphError::InvalidParameter(
            "pair-core hypergraph needs k >= 1".into(),
        ));
    }
    let edges = (0..k).map(|j| [0, 1, j + 2]).collect();
    Ok(Hypergraph { n: k + 2, edges })
}

/// `m` triples drawn uniformly with replacement, deterministic in `seed`.
pub fn gen_random(n: usize, m: usize, seed: u64) -> Result<Hypergraph, HypergraphError> {
    if n < 3 {
        return Err(HypergraphError::InvalidParameter(format!(
            "random hypergraph needs n >= 3, got {n}"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let edges = (0..m)
        .map(|_| {
            let mut triple = [0usize; 3];
            for (slot, v) in triple.iter_mut().zip(index::sample(&mut rng, n, 3)) {
                *slot = v;
            }
            triple.sort_unstable();
            triple
        })
        .collect();
    Ok(Hypergraph { n, edges })
}

/// Vertex degrees, indexed by vertex label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable(Vec<usize>);

impl DegreeTable {
    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_instance() {
        let h = parse_hypergraph("3 1\n0 1 2").unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), &[[0, 1, 2]]);
    }

    #[test]
    fn parses_empty_edge_list() {
        let h = parse_hypergraph("4 0").unwrap();
        assert_eq!((h.n(), h.m()), (4, 0));
    }

    #[test]
    fn rejects_repeated_vertex_with_line() {
        let err = parse_hypergraph("3 1\n0 1 1").unwrap_err();
        assert_eq!(err, HypergraphError::RepeatedVertex { line: 2, vertex: 1 });
    }

    #[test]
    fn comments_are_skipped_and_line_numbers_kept() {
        let err = parse_hypergraph("# header next\n4 2\n0 1 2\n# edge\n0 1 9\n").unwrap_err();
        assert_eq!(
            err,
            HypergraphError::VertexOutOfRange { line: 5, vertex: 9, n: 4 }
        );
    }

    #[test]
    fn edge_count_mismatch_is_reported() {
        assert!(matches!(
            parse_hypergraph("4 2\n0 1 2\n"),
            Err(HypergraphError::EdgeCountMismatch { expected: 2, found: 1, .. })
        ));
        assert!(matches!(
            parse_hypergraph("4 1\n0 1 2\n1 2 3\n"),
            Err(HypergraphError::EdgeCountMismatch { line: 3, .. })
        ));
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(matches!(
            parse_hypergraph("three 1\n0 1 2"),
            Err(HypergraphError::MalformedHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3 1\n0 1"),
            Err(HypergraphError::MalformedEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3 1\n0 1 2 3"),
            Err(HypergraphError::MalformedEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_hypergraph(""),
            Err(HypergraphError::MalformedHeader { .. })
        ));
    }

    #[test]
    fn canonical_text_round_trips_bytes() {
        let text = "5 3\n0 1 2\n4 3 2\n0 1 2\n";
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(h.to_text(), text);
    }

    #[test]
    fn complete_counts() {
        assert_eq!(gen_complete(3).unwrap().m(), 1);
        assert_eq!(gen_complete(6).unwrap().m(), 20);
        assert_eq!(gen_complete(30).unwrap().m(), 4060);
        assert!(gen_complete(2).is_err());
    }

    #[test]
    fn complete_degrees_are_binomial() {
        let h = gen_complete(30).unwrap();
        let deg = h.degrees();
        assert!(deg.as_slice().iter().all(|&d| d == 406));
        assert_eq!(deg.total(), 3 * h.m());
        let k3 = gen_complete(3).unwrap().degrees();
        assert_eq!(k3.as_slice(), &[1, 1, 1]);
    }

    #[test]
    fn pair_core_shape() {
        assert_eq!(gen_pair_core(1).unwrap().edges(), &[[0, 1, 2]]);
        assert_eq!(
            gen_pair_core(3).unwrap().edges(),
            &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]
        );
        let h = gen_pair_core(200).unwrap();
        let deg = h.degrees();
        assert_eq!((h.m(), deg.get(0), deg.get(1)), (200, 200, 200));
        assert!((2..202).all(|v| deg.get(v) == 1));
        assert!(gen_pair_core(0).is_err());
    }

    #[test]
    fn random_generator_is_deterministic() {
        assert_eq!(gen_random(10, 0, 1).unwrap().m(), 0);
        let tiny = gen_random(3, 5, 7).unwrap();
        assert!(tiny.edges().iter().all(|e| *e == [0, 1, 2]));
        assert_eq!(gen_random(40, 500, 9).unwrap(), gen_random(40, 500, 9).unwrap());
        assert_ne!(gen_random(40, 500, 9).unwrap(), gen_random(40, 500, 10).unwrap());
        assert!(gen_random(2, 1, 0).is_err());
    }
}
