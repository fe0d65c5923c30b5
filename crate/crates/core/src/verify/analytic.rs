//! Numeric regression checks of the cases settled in closed form.
//!
//! Each check evaluates a decisive quantity on a grid of step 1/1000 over
//! the case's feasible slice plus known critical points, and reports the
//! worst margin. Exact anchors are evaluated in rational arithmetic.

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{exact_sqrt, int, rat, to_f64, Rational};
use crate::lemma_solve::qtilde;

use super::certify::GridForm;
use super::linear::LinForm;
use super::reduce::{reduce_case, Elimination, ReducedCase};
use super::systems::{system, SystemId, SystemSpec};

pub const GRID_STEP: Rational = Rational::new_raw(1, 1000);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticError {
    #[error("unknown analytic case {0:?}")]
    UnknownCase(String),
}

/// The quantity whose sign settles a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `(8/27) sum_i 1/B_i - (r - 1)` with `r` the number of parts (2 or 3).
    Harmonic,
    /// `sqrt(8/27) sum_i 1/sqrt(A_i) - 2`.
    InverseRoot,
    /// `8/3 - sum_i (B_i + sqrt(B_i^2 + (32/27) A_i))`.
    RootSum,
}

impl Quantity {
    pub fn describe(self) -> &'static str {
        match self {
            Quantity::Harmonic => "(8/27) sum 1/B_i - (parts - 1)",
            Quantity::InverseRoot => "sqrt(8/27) sum 1/sqrt(A_i) - 2",
            Quantity::RootSum => "8/3 - sum (B_i + sqrt(B_i^2 + 32/27 A_i))",
        }
    }
}

/// Per-part coefficients as `f64` vectors for fast evaluation.
struct FloatForms {
    linear: Vec<(f64, Vec<f64>)>,
    quadratic: Vec<(f64, Vec<f64>)>,
}

impl FloatForms {
    fn new(spec: &SystemSpec) -> Self {
        let conv = |f: &LinForm| (to_f64(&f.constant), f.coeffs.iter().map(to_f64).collect());
        Self {
            linear: spec.linear.iter().map(conv).collect(),
            quadratic: spec.quadratic.iter().map(conv).collect(),
        }
    }

    fn eval(form: &(f64, Vec<f64>), vals: &[f64]) -> f64 {
        form.1.iter().zip(vals).fold(form.0, |acc, (c, v)| acc + c * v)
    }
}

/// Margin of `quantity` at a point given by all system variables.
pub fn margin_at(quantity: Quantity, spec: &SystemSpec, vals: &[f64]) -> f64 {
    margin_with(quantity, &FloatForms::new(spec), vals)
}

fn margin_with(quantity: Quantity, forms: &FloatForms, vals: &[f64]) -> f64 {
    let b = forms.linear.iter().map(|f| FloatForms::eval(f, vals));
    let a = forms.quadratic.iter().map(|f| FloatForms::eval(f, vals));
    match quantity {
        Quantity::Harmonic => {
            let target = forms.linear.len() as f64 - 1.0;
            8.0 / 27.0 * b.map(|x| 1.0 / x.max(0.0)).sum::<f64>() - target
        }
        Quantity::InverseRoot => {
            (8.0f64 / 27.0).sqrt() * a.map(|x| 1.0 / x.max(0.0).sqrt()).sum::<f64>() - 2.0
        }
        Quantity::RootSum => {
            let s: f64 = b
                .zip(a)
                .map(|(b, a)| b + (b * b + 32.0 / 27.0 * a.max(0.0)).sqrt())
                .sum();
            8.0 / 3.0 - s
        }
    }
}

/// An exact value at a distinguished point.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchor {
    pub label: String,
    pub expected: Rational,
    /// `None` when the value is irrational at this point.
    pub exact: Option<Rational>,
    pub approx: f64,
}

impl Anchor {
    pub fn holds(&self) -> bool {
        self.exact == Some(self.expected)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarginReport {
    pub name: String,
    pub quantity: Quantity,
    pub worst_margin: f64,
    pub worst_point: Vec<(&'static str, f64)>,
    pub grid_points: u64,
    pub anchors: Vec<Anchor>,
    /// Margins down to `-tolerance` count as passing.
    pub tolerance: f64,
}

impl MarginReport {
    pub fn passes(&self) -> bool {
        self.worst_margin >= -self.tolerance && self.anchors.iter().all(Anchor::holds)
    }
}

#[derive(Debug, Clone)]
struct AnalyticCase {
    name: String,
    system: SystemId,
    active: Vec<usize>,
    quantity: Quantity,
    critical: Vec<Vec<Rational>>,
    tolerance: f64,
}

fn point(spec: &SystemSpec, values: &[(&str, Rational)]) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); spec.vars.len()];
    for (name, v) in values {
        p[spec.var_index(name).expect("variable")] = *v;
    }
    p
}

fn cases() -> Vec<AnalyticCase> {
    let mut out = Vec::new();
    let s2 = system(SystemId::S2);
    out.push(AnalyticCase {
        name: "system2".into(),
        system: SystemId::S2,
        active: vec![],
        quantity: Quantity::Harmonic,
        critical: vec![point(
            &s2,
            &[("x1", rat(2, 11)), ("b12", rat(4, 11)), ("b13", rat(4, 11))],
        )],
        tolerance: 1e-12,
    });
    for id in [SystemId::S1a, SystemId::S1b, SystemId::S1c, SystemId::S1d] {
        out.push(AnalyticCase {
            name: format!("cauchy-{}", id.label()),
            system: id,
            active: vec![3, 4, 5],
            quantity: Quantity::Harmonic,
            critical: vec![],
            tolerance: 1e-12,
        });
    }
    let s1a = system(SystemId::S1a);
    let third = rat(1, 3);
    out.push(AnalyticCase {
        name: "jensen".into(),
        system: SystemId::S1a,
        active: vec![0, 1, 2],
        quantity: Quantity::InverseRoot,
        critical: vec![point(&s1a, &[("a1", third), ("a2", third), ("a3", third)])],
        tolerance: 1e-12,
    });

    let prime = system(SystemId::S1fPrime);
    for i in 1..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let active = vec![i, j, k];
                let labels: Vec<&str> =
                    active.iter().map(|&c| prime.conditions[c].label.as_str()).collect();
                let mut critical = Vec::new();
                if active == [1, 3, 4] {
                    let (a, c, a3) = (rat(4, 27), rat(29, 54), rat(5, 18));
                    critical.push(point(&prime, &[("A", a), ("B", a), ("C", c), ("a3", a3)]));
                }
                if active == [2, 3, 5] {
                    let (a, c) = (rat(16, 81), rat(40, 81));
                    let a2 = int(1) - rat(7, 12) * a - rat(5, 3) * c;
                    critical.push(point(&prime, &[("A", a), ("B", c), ("C", c), ("a2", a2)]));
                }
                out.push(AnalyticCase {
                    name: format!("1f'[{}]", labels.join(";")),
                    system: SystemId::S1fPrime,
                    active,
                    quantity: Quantity::RootSum,
                    critical,
                    tolerance: 1e-9,
                });
            }
        }
    }
    out
}

/// Names accepted by [`spot_check_analytic`].
pub fn analytic_case_names() -> Vec<String> {
    cases().into_iter().map(|c| c.name).collect()
}

/// Value of `quantity` plus its reference level (the margin is measured
/// from there) in exact arithmetic, when every root is rational.
fn exact_value(quantity: Quantity, spec: &SystemSpec, p: &[Rational]) -> Option<Rational> {
    let b: Vec<Rational> = spec.linear.iter().map(|f| f.eval(p)).collect();
    let a: Vec<Rational> = spec.quadratic.iter().map(|f| f.eval(p)).collect();
    match quantity {
        Quantity::Harmonic => b
            .iter()
            .map(|x| (!x.is_zero()).then(|| rat(8, 27) / *x))
            .sum(),
        Quantity::InverseRoot => a
            .iter()
            .map(|x| exact_sqrt(&(rat(8, 27) / *x)))
            .sum(),
        Quantity::RootSum => b
            .iter()
            .zip(&a)
            .map(|(b, a)| exact_sqrt(&(*b * *b + rat(32, 27) * *a)).map(|r| *b + r))
            .sum(),
    }
}

fn anchors(case: &AnalyticCase, spec: &SystemSpec) -> Vec<Anchor> {
    let mut out = Vec::new();
    let expected = match case.name.as_str() {
        "system2" => Some(rat(88, 81)),
        "jensen" => Some(int(2)),
        _ if case.active == [1, 3, 4] => Some(rat(23, 9)),
        _ => None,
    };
    if let (Some(expected), Some(p)) = (expected, case.critical.first()) {
        let exact = exact_value(case.quantity, spec, p);
        out.push(Anchor {
            label: format!("{} at critical point", case.quantity.describe()),
            expected,
            exact,
            approx: exact.as_ref().map(to_f64).unwrap_or(f64::NAN),
        });
    }
    if case.active == [2, 3, 5] {
        let (a, c) = (rat(16, 81), rat(40, 81));
        let value = residual(a, c);
        out.push(Anchor {
            label: "squared residual at A=16/81, C=40/81".into(),
            expected: rat(256, 2187),
            exact: Some(value),
            approx: to_f64(&value),
        });
    }
    out
}

/// `(A + 3C - 8/3)^2 - (2A^2 + 2C^2 + (128/27)(1 - 7A/12 - 5C/3))`.
pub fn residual(a: Rational, c: Rational) -> Rational {
    let lead = a + int(3) * c - rat(8, 3);
    let rest = int(2) * a * a + int(2) * c * c + rat(128, 27) * (int(1) - rat(7, 12) * a - rat(5, 3) * c);
    lead * lead - rest
}

/// Sum of the three caps at the symmetric point `a_i = 1/3`.
pub fn jensen_qtilde_sum() -> f64 {
    (0..3).map(|_| qtilde(0.0, 2.0 / 3.0, 0.0).unwrap()).sum()
}

fn grid_minimum(
    reduced: &ReducedCase,
    forms: &FloatForms,
    quantity: Quantity,
) -> (f64, Option<Vec<f64>>, u64) {
    if reduced.empty {
        return (f64::INFINITY, None, 0);
    }
    let cells: Vec<u64> = reduced
        .upper
        .iter()
        .map(|u| (*u / GRID_STEP).floor().to_integer() as u64 + 1)
        .collect();
    let build = |f: &LinForm| GridForm::new(f, GRID_STEP, &cells).expect("grid fits");
    let constraints: Vec<GridForm> = reduced.constraints.iter().map(build).collect();
    let images: Vec<GridForm> = reduced.images.iter().map(build).collect();

    let visit = |p: &[u64]| -> Option<(f64, Vec<f64>)> {
        if constraints.iter().any(|c| c.numer_at(p) < 0) {
            return None;
        }
        let vals: Vec<f64> = images.iter().map(|g| g.value_at(p)).collect();
        Some((margin_with(quantity, forms, &vals), vals))
    };
    type Acc = (f64, Option<Vec<f64>>, u64);
    let merge = |a: Acc, b: Acc| -> Acc {
        let n = a.2 + b.2;
        if b.0 < a.0 || a.1.is_none() {
            (b.0, b.1, n)
        } else {
            (a.0, a.1, n)
        }
    };
    let fold_row = |first: Option<u64>| -> Acc {
        let mut acc: Acc = (f64::INFINITY, None, 0);
        let dims = cells.len();
        let mut p = vec![0u64; dims];
        let start = usize::from(first.is_some());
        if let Some(i) = first {
            p[0] = i;
        }
        loop {
            if let Some((m, vals)) = visit(&p) {
                acc = merge(acc, (m, Some(vals), 1));
            }
            let mut axis = dims;
            loop {
                if axis == start {
                    return acc;
                }
                axis -= 1;
                p[axis] += 1;
                if p[axis] < cells[axis] {
                    break;
                }
                p[axis] = 0;
            }
        }
    };
    if cells.is_empty() {
        return fold_row(None);
    }
    (0..cells[0])
        .into_par_iter()
        .map(|i| fold_row(Some(i)))
        .reduce(|| (f64::INFINITY, None, 0), merge)
}

/// Runs one named analytic check.
pub fn spot_check_analytic(name: &str) -> Result<MarginReport, AnalyticError> {
    let case = cases()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| AnalyticError::UnknownCase(name.to_string()))?;
    let spec = system(case.system);
    let reduced = reduce_case(&spec, &case.active, Elimination::default()).expect("analytic case reduces");
    let forms = FloatForms::new(&spec);
    let (mut worst, mut at, points) = grid_minimum(&reduced, &forms, case.quantity);
    for p in &case.critical {
        let vals: Vec<f64> = p.iter().map(to_f64).collect();
        let m = margin_with(case.quantity, &forms, &vals);
        if m <= worst {
            worst = m;
            at = Some(vals);
        }
    }
    let worst_point = at
        .map(|vals| spec.vars.iter().copied().zip(vals).collect())
        .unwrap_or_default();
    Ok(MarginReport {
        anchors: anchors(&case, &spec),
        name: case.name,
        quantity: case.quantity,
        worst_margin: worst,
        worst_point,
        grid_points: points,
        tolerance: case.tolerance,
    })
}

/// Every analytic check in a fixed order.
pub fn spot_check_all() -> Vec<MarginReport> {
    analytic_case_names()
        .iter()
        .map(|n| spot_check_analytic(n).expect("known case"))
        .collect()
}
