//! Substitution of a case's equalities and elimination of one variable.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{int, Rational};
use crate::lemma_solve::{LemmaError, LemmaInstance};

use super::linear::LinForm;
use super::systems::{Reading, SystemId, SystemSpec};

/// Which remaining variable is solved for from the unit-sum constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Elimination {
    /// The variable with the largest sum coefficient (ties: the later one).
    /// The free variables then have the smallest ranges.
    #[default]
    LargestCoefficient,
    /// The last variable with coefficient 1, else the last one.
    UnitCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("condition index {0} out of range")]
    BadCondition(usize),
    #[error("free variable {0} is not bounded by the sum constraint")]
    Unbounded(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedCase {
    pub system: SystemId,
    pub reading: Reading,
    pub active: Vec<usize>,
    pub vars: Vec<&'static str>,
    /// Sum and per-part forms over the system variables after the
    /// equalities, before elimination.
    pub slice_sum: LinForm,
    pub slice_linear: Vec<LinForm>,
    pub slice_quadratic: Vec<LinForm>,
    /// Indices (into `vars`) of the free variables.
    pub free: Vec<usize>,
    pub eliminated: Option<usize>,
    /// Every system variable as an affine form over the free variables.
    pub images: Vec<LinForm>,
    pub linear: Vec<LinForm>,
    pub quadratic: Vec<LinForm>,
    /// Residual constraints over the free variables, each `>= 0`.
    pub constraints: Vec<LinForm>,
    /// Free variable `d` ranges over `[0, upper[d]]`.
    pub upper: Vec<Rational>,
    /// True when the equalities and constraints admit no point.
    pub empty: bool,
    embedding: Option<Vec<LinForm>>,
}

struct Substitution {
    exprs: Vec<Option<LinForm>>,
}

impl Substitution {
    fn apply(&self, form: &LinForm) -> LinForm {
        self.exprs
            .iter()
            .enumerate()
            .filter_map(|(v, e)| e.as_ref().map(|e| (v, e)))
            .fold(form.clone(), |f, (v, e)| f.substitute(v, e))
    }

    fn bind(&mut self, var: usize, expr: LinForm) {
        for e in self.exprs.iter_mut().flatten() {
            *e = e.substitute(var, &expr);
        }
        self.exprs[var] = Some(expr);
    }

    fn is_bound(&self, var: usize) -> bool {
        self.exprs[var].is_some()
    }
}

/// Solves `form = 0` for `var`.
fn solve_for(form: &LinForm, var: usize) -> LinForm {
    let c = form.coeffs[var];
    let mut rest = form.clone();
    rest.coeffs[var] = Rational::zero();
    rest.scale(-Rational::one() / c)
}

pub fn reduce_case(
    spec: &SystemSpec,
    active: &[usize],
    elimination: Elimination,
) -> Result<ReducedCase, ReduceError> {
    let n = spec.vars.len();
    let mut subs = Substitution {
        exprs: vec![None; n],
    };
    let mut empty = false;

    for &index in active {
        let cond = spec
            .conditions
            .get(index)
            .ok_or(ReduceError::BadCondition(index))?;
        let eq = subs.apply(&LinForm::var(n, cond.var)).sub(&subs.apply(&cond.rhs));
        if eq.is_constant() {
            empty |= !eq.constant.is_zero();
            continue;
        }
        let pivot = if !eq.coeffs[cond.var].is_zero() {
            cond.var
        } else {
            eq.coeffs.iter().position(|c| !c.is_zero()).unwrap()
        };
        subs.bind(pivot, solve_for(&eq, pivot));
    }

    let slice_sum = subs.apply(&spec.sum);
    let slice_linear: Vec<LinForm> = spec.linear.iter().map(|f| subs.apply(f)).collect();
    let slice_quadratic: Vec<LinForm> = spec.quadratic.iter().map(|f| subs.apply(f)).collect();

    let remaining: Vec<usize> = (0..n)
        .filter(|&v| !subs.is_bound(v) && !slice_sum.coeffs[v].is_zero())
        .collect();
    let eliminated = match elimination {
        Elimination::LargestCoefficient => remaining
            .iter()
            .copied()
            .max_by(|&u, &v| slice_sum.coeffs[u].cmp(&slice_sum.coeffs[v]).then(u.cmp(&v))),
        Elimination::UnitCoefficient => remaining
            .iter()
            .copied()
            .rfind(|&v| slice_sum.coeffs[v].is_one())
            .or(remaining.last().copied()),
    };
    match eliminated {
        Some(el) => {
            let eq = slice_sum.sub(&LinForm::constant(n, int(1)));
            subs.bind(el, solve_for(&eq, el));
        }
        None => empty |= slice_sum.constant != int(1),
    }

    let free: Vec<usize> = (0..n).filter(|&v| !subs.is_bound(v)).collect();
    let restrict = |form: &LinForm| -> LinForm {
        let f = subs.apply(form);
        LinForm {
            constant: f.constant,
            coeffs: free.iter().map(|&v| f.coeffs[v]).collect(),
        }
    };

    let mut upper = Vec::with_capacity(free.len());
    for &v in &free {
        let c = slice_sum.coeffs[v];
        if !c.is_positive() {
            return Err(ReduceError::Unbounded(spec.vars[v]));
        }
        upper.push(Rational::one() / c);
    }

    let mut constraints: Vec<LinForm> = Vec::new();
    let implicit = (0..n).map(|v| LinForm::var(n, v));
    for form in spec.domain.iter().cloned().chain(implicit) {
        let r = restrict(&form);
        if r.is_constant() {
            empty |= r.constant.is_negative();
        } else if !constraints.contains(&r) {
            constraints.push(r);
        }
    }

    Ok(ReducedCase {
        system: spec.id,
        reading: spec.reading,
        active: active.to_vec(),
        vars: spec.vars.clone(),
        images: (0..n).map(|v| restrict(&LinForm::var(n, v))).collect(),
        linear: spec.linear.iter().map(&restrict).collect(),
        quadratic: spec.quadratic.iter().map(&restrict).collect(),
        embedding: spec
            .embedding
            .as_ref()
            .map(|e| e.iter().map(&restrict).collect()),
        slice_sum,
        slice_linear,
        slice_quadratic,
        free,
        eliminated,
        constraints,
        upper,
        empty,
    })
}

impl ReducedCase {
    pub fn dims(&self) -> usize {
        self.free.len()
    }

    pub fn free_names(&self) -> Vec<&'static str> {
        self.free.iter().map(|&v| self.vars[v]).collect()
    }

    /// All system variables at the free point `y`.
    pub fn point(&self, y: &[Rational]) -> Vec<Rational> {
        self.images.iter().map(|f| f.eval(y)).collect()
    }

    pub fn is_feasible(&self, y: &[Rational]) -> bool {
        !self.empty && self.constraints.iter().all(|c| !c.eval(y).is_negative())
    }

    /// `(B_i, A_i)` at the free point `y`.
    pub fn coefficients(&self, y: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        (
            self.linear.iter().map(|f| f.eval(y)).collect(),
            self.quadratic.iter().map(|f| f.eval(y)).collect(),
        )
    }

    /// The lemma instance this point stands for, when the system has one.
    pub fn instance(&self, y: &[Rational]) -> Option<Result<LemmaInstance, LemmaError>> {
        let e = self.embedding.as_ref()?;
        let v: Vec<Rational> = e.iter().map(|f| f.eval(y)).collect();
        Some(LemmaInstance::new(
            [v[0], v[1], v[2]],
            [v[3], v[4], v[5]],
            [v[6], v[7], v[8]],
            v[9],
        ))
    }
}
