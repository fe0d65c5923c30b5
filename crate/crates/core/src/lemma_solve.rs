//! Normalised lemma instances and the per-part probabilities they admit.
//!
//! For a part `i` with opposite parts `j`, `k`, the miss polynomial is
//! `L_i(q) = q B_i + q^2 A_i + q^3 c` with `B_i = b_jk + x_j + x_k` and
//! `A_i = a_j + a_k`. The target is `q_1 + q_2 + q_3 = 2` with every
//! `L_i(q_i) <= 8/27`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{int, rat, to_f64, Rational};
use crate::highlow::{third, HighLowSplit, HighPartition};
use crate::hypergraph::Hypergraph;

/// Upper bound on each miss polynomial.
pub const MISS_BOUND: f64 = 8.0 / 27.0;
/// Absolute tolerance of the root bisection in [`qtilde`].
pub const QTILDE_TOLERANCE: f64 = 1e-14;
/// Slack allowed on `L_i(q_i) <= 8/27` after solving.
pub const POST_CHECK_SLACK: f64 = 1e-12;
/// Deficit of `sum qtilde` below 2 still accepted as rounding noise.
pub const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LemmaError {
    #[error("every edge lies inside the high set (m = e3 = {m}); no probabilities are needed")]
    Degenerate { m: u64 },
    #[error("cross count b between parts {} and {} is {b}, below the bound {bound}", .pair.0 + 1, .pair.1 + 1)]
    ConstraintViolation {
        pair: (usize, usize),
        b: Rational,
        bound: Rational,
    },
    #[error("probability caps sum to {sum}, below 2")]
    LemmaViolation { sum: f64 },
    #[error("post-check failed for part {}: L = {value} exceeds 8/27", .part + 1)]
    PostCheck { part: usize, value: f64 },
    #[error("negative input to qtilde: B = {b}, A = {a}, c = {c}")]
    NegativeInput { b: f64, a: f64, c: f64 },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

/// Edge counts of a hypergraph relative to a high partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeProfile {
    pub x: [u64; 3],
    /// Indexed by the excluded part: `b[0] = b_23`, `b[1] = b_13`, `b[2] = b_12`.
    pub b: [u64; 3],
    pub a: [u64; 3],
    pub c: u64,
    pub e3: u64,
    pub m: u64,
    /// Edges with three high vertices none of which lies in part `i`.
    pub e3_miss: [u64; 3],
}

impl EdgeProfile {
    pub fn total(&self) -> u64 {
        self.x.iter().chain(&self.b).chain(&self.a).sum::<u64>() + self.c + self.e3
    }
}

/// Classifies every edge by the number of its high vertices.
pub fn compute_profile(h: &Hypergraph, split: &HighLowSplit, p: &HighPartition) -> EdgeProfile {
    let mut part_of = vec![None; h.n()];
    for (&v, &part) in p.vertices.iter().zip(&p.part) {
        part_of[v] = Some(part);
    }
    debug_assert!(split.high.iter().all(|&v| part_of[v].is_some()));

    let mut profile = EdgeProfile {
        m: h.m() as u64,
        ..EdgeProfile::default()
    };
    for edge in h.edges() {
        let parts: Vec<usize> = edge.iter().filter_map(|&v| part_of[v]).collect();
        match parts[..] {
            [] => profile.c += 1,
            [i] => profile.a[i] += 1,
            [i, j] if i == j => profile.x[i] += 1,
            [i, j] => profile.b[third(i, j)] += 1,
            _ => {
                profile.e3 += 1;
                for i in 0..3 {
                    if !parts.contains(&i) {
                        profile.e3_miss[i] += 1;
                    }
                }
            }
        }
    }
    profile
}

/// The ten lemma quantities as exact fractions summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaInstance {
    pub x: [Rational; 3],
    /// Indexed by the excluded part, as in [`EdgeProfile::b`].
    pub b: [Rational; 3],
    pub a: [Rational; 3],
    pub c: Rational,
}

impl LemmaInstance {
    /// Validates nonnegativity, the unit sum and the cross-count bounds.
    pub fn new(
        x: [Rational; 3],
        b: [Rational; 3],
        a: [Rational; 3],
        c: Rational,
    ) -> Result<Self, LemmaError> {
        let inst = Self { x, b, a, c };
        if inst.values().iter().any(|v| v.is_negative()) {
            return Err(LemmaError::InvalidInstance("negative entry".into()));
        }
        let sum: Rational = inst.values().iter().sum();
        if sum != int(1) {
            return Err(LemmaError::InvalidInstance(format!("entries sum to {sum}, not 1")));
        }
        inst.check_constraints()?;
        Ok(inst)
    }

    /// `(x1, x2, x3, b23, b13, b12, a1, a2, a3, c)`.
    pub fn values(&self) -> [Rational; 10] {
        let [x1, x2, x3] = self.x;
        let [b23, b13, b12] = self.b;
        let [a1, a2, a3] = self.a;
        [x1, x2, x3, b23, b13, b12, a1, a2, a3, self.c]
    }

    pub fn check_constraints(&self) -> Result<(), LemmaError> {
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let bound = [self.x[i] * int(2), self.x[j] * int(2), self.x[k] * rat(1, 2)]
                .into_iter()
                .max()
                .unwrap();
            if self.b[k] < bound {
                return Err(LemmaError::ConstraintViolation {
                    pair: (i.min(j), i.max(j)),
                    b: self.b[k],
                    bound,
                });
            }
        }
        Ok(())
    }

    /// Linear coefficient `B_i = b_jk + x_j + x_k`.
    pub fn linear(&self, i: usize) -> Rational {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        self.b[i] + self.x[j] + self.x[k]
    }

    /// Quadratic coefficient `A_i = a_j + a_k`.
    pub fn quadratic(&self, i: usize) -> Rational {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        self.a[j] + self.a[k]
    }
}

/// Divides the profile by `m - e3` and checks the cross-count bounds.
pub fn normalize(profile: &EdgeProfile) -> Result<LemmaInstance, LemmaError> {
    let scale = profile.m - profile.e3;
    if scale == 0 {
        return Err(LemmaError::Degenerate { m: profile.m });
    }
    let frac = |v: u64| rat(v as i128, scale as i128);
    LemmaInstance::new(
        profile.x.map(frac),
        profile.b.map(frac),
        profile.a.map(frac),
        frac(profile.c),
    )
}

fn miss(b: f64, a: f64, c: f64, q: f64) -> f64 {
    q * b + q * q * a + q * q * q * c
}

/// `L_i(q)` for part `i` (0-based).
pub fn eval_l(inst: &LemmaInstance, i: usize, q: f64) -> f64 {
    miss(to_f64(&inst.linear(i)), to_f64(&inst.quadratic(i)), to_f64(&inst.c), q)
}

/// Largest `q` in `[0, 1]` with `q B + q^2 A + q^3 c <= 8/27`, to within
/// [`QTILDE_TOLERANCE`] from below.
pub fn qtilde(b: f64, a: f64, c: f64) -> Result<f64, LemmaError> {
    if b < 0.0 || a < 0.0 || c < 0.0 || b.is_nan() || a.is_nan() || c.is_nan() {
        return Err(LemmaError::NegativeInput { b, a, c });
    }
    if miss(b, a, c, 1.0) <= MISS_BOUND {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > QTILDE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if miss(b, a, c, mid) <= MISS_BOUND {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Probabilities `q_i` with their caps `qtilde_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QTriple {
    pub q: [f64; 3],
    pub qtilde: [f64; 3],
}

impl QTriple {
    /// Used when every edge is inside the high set and the probabilities
    /// cannot affect coverage.
    pub fn degenerate() -> Self {
        Self {
            q: [1.0, 1.0, 0.0],
            qtilde: [1.0, 1.0, 1.0],
        }
    }

    /// Placement probabilities `p_i = 1 - q_i`.
    pub fn p(&self) -> [f64; 3] {
        self.q.map(|q| 1.0 - q)
    }
}

/// Lowers the caps to a triple summing to 2. The surplus is removed from
/// the smallest cap first (ties: part 3, then 2, then 1), so parts whose
/// caps are already tight keep most of their low vertices away.
pub fn waterfill(qtilde: [f64; 3]) -> Result<QTriple, LemmaError> {
    let sum: f64 = qtilde.iter().sum();
    if sum < 2.0 - SUM_TOLERANCE || sum.is_nan() {
        return Err(LemmaError::LemmaViolation { sum });
    }
    let mut order = [2usize, 1, 0];
    order.sort_by(|&i, &j| qtilde[i].total_cmp(&qtilde[j]));

    let mut q = qtilde;
    let mut surplus = sum - 2.0;
    if surplus >= 0.0 {
        for &i in &order {
            let cut = surplus.min(q[i]);
            q[i] -= cut;
            surplus -= cut;
        }
    } else {
        // rounding-level deficit: top up the largest caps still below 1
        let mut deficit = -surplus;
        for &i in order.iter().rev() {
            let add = deficit.min(1.0 - q[i]);
            q[i] += add;
            deficit -= add;
        }
    }
    Ok(QTriple { q, qtilde })
}

/// Caps from [`qtilde`], lowered by [`waterfill`], then checked against
/// `8/27 + POST_CHECK_SLACK`.
pub fn solve_q(inst: &LemmaInstance) -> Result<QTriple, LemmaError> {
    let c = to_f64(&inst.c);
    let mut caps = [0.0; 3];
    for (i, cap) in caps.iter_mut().enumerate() {
        *cap = qtilde(to_f64(&inst.linear(i)), to_f64(&inst.quadratic(i)), c)?;
    }
    let triple = waterfill(caps)?;
    for i in 0..3 {
        let value = eval_l(inst, i, triple.q[i]);
        if value > MISS_BOUND + POST_CHECK_SLACK {
            return Err(LemmaError::PostCheck { part: i, value });
        }
    }
    Ok(triple)
}

/// Sum of the three caps, the quantity the lemma bounds below by 2.
pub fn qtilde_sum(inst: &LemmaInstance) -> Result<f64, LemmaError> {
    let c = to_f64(&inst.c);
    (0..3)
        .map(|i| qtilde(to_f64(&inst.linear(i)), to_f64(&inst.quadratic(i)), c))
        .sum()
}

impl Default for LemmaInstance {
    fn default() -> Self {
        Self {
            x: [Rational::zero(); 3],
            b: [Rational::zero(); 3],
            a: [Rational::zero(); 3],
            c: int(1),
        }
    }
}
