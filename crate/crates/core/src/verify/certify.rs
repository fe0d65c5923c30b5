//! Certified lower bounds on `sum_i qtilde_i` by uniform box subdivision.
//!
//! Every affine form is evaluated exactly as an integer numerator over a
//! common denominator. Its maximum over a box sits at the corner picked by
//! the signs of its coefficients. A box is discarded when some constraint is
//! negative at its own maximising corner. On the remaining boxes the upper
//! bounds of `B_i` and `A_i` feed
//! `qtilde_i >= min(1, (16/27) / (B + sqrt(B^2 + (32/27) A)))`, evaluated
//! with every floating-point step rounded in the safe direction.

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{lcm_denominators, Rational};

use super::linear::LinForm;
use super::reduce::ReducedCase;
use super::systems::{Reading, SystemId};

/// Subtracted from every bound to absorb residual evaluation error.
pub const SLACK: f64 = 1e-9;

const LARGEST_EXACT: i128 = 1 << 53;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),
    #[error("grid too fine for exact evaluation: {0}")]
    Overflow(String),
}

/// Uniform grid over the free-variable box `[0, upper]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxGrid {
    pub epsilon: Rational,
    /// Number of cells along each free axis.
    pub cells: Vec<u64>,
}

impl BoxGrid {
    pub fn new(upper: &[Rational], epsilon: Rational) -> Result<Self, CertifyError> {
        if !epsilon.is_positive() {
            return Err(CertifyError::NonPositiveEpsilon(epsilon));
        }
        let cells = upper
            .iter()
            .map(|u| {
                let r = *u / epsilon;
                let n = r.ceil().to_integer().max(1);
                u64::try_from(n).map_err(|_| CertifyError::Overflow(format!("{n} cells")))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { epsilon, cells })
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().product()
    }

    /// Bounds of the box with lower corner index `cell`.
    pub fn box_bounds(&self, cell: &[u64]) -> Vec<(Rational, Rational)> {
        cell.iter()
            .map(|&i| {
                let lo = self.epsilon * Rational::from_integer(i as i128);
                (lo, lo + self.epsilon)
            })
            .collect()
    }
}

/// An affine form scaled to integers on the grid: at grid point `i` its
/// value is `(base + sum_d coef[d] * i[d]) / denom`.
#[derive(Debug, Clone)]
pub(crate) struct GridForm {
    base: i128,
    coef: Vec<i128>,
    denom: f64,
}

impl GridForm {
    pub(crate) fn new(form: &LinForm, epsilon: Rational, cells: &[u64]) -> Result<Self, CertifyError> {
        let (p, q) = (*epsilon.numer(), *epsilon.denom());
        let l = lcm_denominators(std::iter::once(&form.constant).chain(&form.coeffs));
        let scale = q.checked_mul(l).ok_or_else(|| CertifyError::Overflow("denominator".into()))?;
        let base = (form.constant * Rational::from_integer(scale)).to_integer();
        let coef: Vec<i128> = form
            .coeffs
            .iter()
            .map(|c| (*c * Rational::from_integer(l * p)).to_integer())
            .collect();
        let reach = coef
            .iter()
            .zip(cells)
            .fold(base.abs(), |acc, (c, &n)| acc + c.abs() * (n as i128 + 1));
        if reach >= LARGEST_EXACT || scale >= LARGEST_EXACT {
            return Err(CertifyError::Overflow(format!("numerators up to {reach}")));
        }
        Ok(Self {
            base,
            coef,
            denom: scale.to_f64().unwrap(),
        })
    }

    /// Numerator at the grid point `point`.
    pub(crate) fn numer_at(&self, point: &[u64]) -> i128 {
        self.coef
            .iter()
            .zip(point)
            .fold(self.base, |acc, (&c, &i)| acc + c * i as i128)
    }

    pub(crate) fn value_at(&self, point: &[u64]) -> f64 {
        self.numer_at(point) as f64 / self.denom
    }

    fn max_numer(&self, cell: &[u64]) -> i128 {
        self.coef.iter().zip(cell).fold(self.base, |acc, (&c, &i)| {
            let corner = if c > 0 { i + 1 } else { i };
            acc + c * corner as i128
        })
    }

    /// Upper bound on the form over the box, clamped at zero.
    fn upper(&self, cell: &[u64]) -> f64 {
        let n = self.max_numer(cell);
        if n <= 0 {
            0.0
        } else {
            (n as f64 / self.denom).next_up()
        }
    }
}

/// Lower bound on `min(1, root)` of `q B + q^2 A = 8/27` given upper bounds
/// on `B` and `A`.
pub fn qtilde_lower(b_up: f64, a_up: f64) -> f64 {
    if b_up <= 0.0 && a_up <= 0.0 {
        return 1.0;
    }
    let k32 = (32.0f64 / 27.0).next_up();
    let k16 = (16.0f64 / 27.0).next_down();
    let disc = ((b_up * b_up).next_up() + (k32 * a_up).next_up()).next_up();
    let den = (b_up + disc.sqrt().next_up()).next_up();
    (k16 / den).next_down().min(1.0)
}

/// Evaluates box bounds of one reduced case.
#[derive(Debug, Clone)]
pub struct CaseEvaluator {
    pub grid: BoxGrid,
    constraints: Vec<GridForm>,
    linear: Vec<GridForm>,
    quadratic: Vec<GridForm>,
}

impl CaseEvaluator {
    pub fn new(reduced: &ReducedCase, epsilon: Rational) -> Result<Self, CertifyError> {
        let grid = BoxGrid::new(&reduced.upper, epsilon)?;
        let build = |forms: &[LinForm]| {
            forms
                .iter()
                .map(|f| GridForm::new(f, epsilon, &grid.cells))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(Self {
            constraints: build(&reduced.constraints)?,
            linear: build(&reduced.linear)?,
            quadratic: build(&reduced.quadratic)?,
            grid,
        })
    }

    /// `None` when the box holds no feasible point; otherwise a lower bound
    /// on `sum_i qtilde_i` over it (before the final slack).
    pub fn box_lower_bound(&self, cell: &[u64]) -> Option<f64> {
        if self.constraints.iter().any(|c| c.max_numer(cell) < 0) {
            return None;
        }
        let mut total = 0.0f64;
        for (b, a) in self.linear.iter().zip(&self.quadratic) {
            total = (total + qtilde_lower(b.upper(cell), a.upper(cell))).next_down();
        }
        Some(total)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedBound {
    pub system: SystemId,
    pub reading: Reading,
    pub active: Vec<usize>,
    pub epsilon: Rational,
    /// Lower bound on the infimum of `sum_i qtilde_i`; `+inf` for an empty case.
    pub bound: f64,
    pub boxes_total: u64,
    pub boxes_feasible: u64,
    /// Lower corner of a box attaining the bound.
    pub worst_box: Option<Vec<u64>>,
}

impl CertifiedBound {
    pub fn certified(&self) -> bool {
        self.bound > 2.0
    }
}

#[derive(Clone)]
struct Partial {
    min: f64,
    argmin: Option<Vec<u64>>,
    feasible: u64,
}

impl Partial {
    fn empty() -> Self {
        Self {
            min: f64::INFINITY,
            argmin: None,
            feasible: 0,
        }
    }

    fn merge(self, other: Self) -> Self {
        let feasible = self.feasible + other.feasible;
        // ties keep the lexicographically first box
        let take_other = match (&self.argmin, &other.argmin) {
            (None, _) => true,
            (_, None) => false,
            (Some(a), Some(b)) => other.min < self.min || (other.min == self.min && b < a),
        };
        let (min, argmin) = if take_other {
            (other.min, other.argmin)
        } else {
            (self.min, self.argmin)
        };
        Self {
            min,
            argmin,
            feasible,
        }
    }
}

fn scan(eval: &CaseEvaluator, first: Option<u64>) -> Partial {
    let cells = &eval.grid.cells;
    let mut cell = vec![0u64; cells.len()];
    let start = match first {
        Some(i) => {
            cell[0] = i;
            1
        }
        None => 0,
    };
    let mut acc = Partial::empty();
    loop {
        if let Some(v) = eval.box_lower_bound(&cell) {
            acc.feasible += 1;
            if v < acc.min || acc.argmin.is_none() {
                acc.min = v;
                acc.argmin = Some(cell.clone());
            }
        }
        // odometer over axes start..
        let mut axis = cells.len();
        loop {
            if axis == start {
                return acc;
            }
            axis -= 1;
            cell[axis] += 1;
            if cell[axis] < cells[axis] {
                break;
            }
            cell[axis] = 0;
        }
    }
}

/// Certified lower bound of one case at box side `epsilon`.
pub fn certify_case(reduced: &ReducedCase, epsilon: Rational) -> Result<CertifiedBound, CertifyError> {
    let eval = CaseEvaluator::new(reduced, epsilon)?;
    let total = eval.grid.total();
    let partial = if reduced.empty {
        Partial::empty()
    } else if eval.grid.cells.is_empty() {
        scan(&eval, None)
    } else {
        (0..eval.grid.cells[0])
            .into_par_iter()
            .map(|i| scan(&eval, Some(i)))
            .reduce(Partial::empty, Partial::merge)
    };
    let bound = if partial.feasible == 0 {
        f64::INFINITY
    } else {
        (partial.min - SLACK).next_down()
    };
    Ok(CertifiedBound {
        system: reduced.system,
        reading: reduced.reading,
        active: reduced.active.clone(),
        epsilon,
        bound,
        boxes_total: total,
        boxes_feasible: partial.feasible,
        worst_box: partial.argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::lemma_solve::qtilde;
    use crate::verify::reduce::{reduce_case, Elimination};
    use crate::verify::systems::system;

    #[test]
    fn qtilde_lower_is_below_the_root() {
        for &(b, a) in &[(1.0, 0.0), (0.0, 1.0), (0.3, 0.2), (8.0 / 27.0, 0.0), (0.01, 0.9)] {
            let lower = qtilde_lower(b, a);
            let exact = qtilde(b, a, 0.0).unwrap();
            assert!(lower <= exact + 1e-14, "b={b} a={a}: {lower} > {exact}");
            assert!(exact - lower < 1e-12);
        }
        assert_eq!(qtilde_lower(0.0, 0.0), 1.0);
    }

    #[test]
    fn grid_counts() {
        let g = BoxGrid::new(&[rat(1, 24), int(1)], rat(1, 500)).unwrap();
        assert_eq!(g.cells, vec![21, 500]);
        assert_eq!(g.box_bounds(&[1, 0])[0], (rat(1, 500), rat(2, 500)));
        assert!(BoxGrid::new(&[int(1)], int(0)).is_err());
    }

    #[test]
    fn table_row_is_certified() {
        let spec = system(SystemId::S1a);
        let r = reduce_case(&spec, &[0, 1, 3], Elimination::default()).unwrap();
        let c = certify_case(&r, rat(1, 500)).unwrap();
        assert!(c.certified());
        assert!(c.bound >= 2.0 && c.bound <= 2.078 + 0.08, "bound {}", c.bound);
        assert!(c.boxes_feasible > 0 && c.boxes_feasible <= c.boxes_total);
    }

    #[test]
    fn empty_case_has_infinite_bound() {
        let mut spec = system(SystemId::S1a);
        spec.conditions[1].var = 0;
        spec.conditions[1].rhs = spec.form("1");
        let r = reduce_case(&spec, &[0, 1, 2], Elimination::default()).unwrap();
        let c = certify_case(&r, rat(1, 100)).unwrap();
        assert_eq!(c.bound, f64::INFINITY);
        assert_eq!(c.boxes_feasible, 0);
        assert!(c.certified());
    }
}
