//! Boundary cases of the tabulated systems and their published results.

use crate::exact::{rat, Rational};

use super::systems::{SystemId, SystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    /// Settled by subdivision.
    Computed,
    /// Settled by a closed-form argument; checked numerically only.
    Analytic,
    /// Has both a closed-form argument and a tabulated bound; subdivided.
    Either,
    /// Identical to the same case of another system.
    SameAs(SystemId),
}

impl CaseStatus {
    pub fn is_computed(self) -> bool {
        matches!(self, CaseStatus::Computed | CaseStatus::Either | CaseStatus::SameAs(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub system: SystemId,
    /// Row of the table, 0..20, in lexicographic order of `active`.
    pub row: usize,
    /// Indices of the three active conditions.
    pub active: [usize; 3],
    pub status: CaseStatus,
    pub epsilon: Option<Rational>,
    pub published_bound: Option<f64>,
    /// Lower-bound cell as published, e.g. `"2.078"`, `"2*"`, `"2* or 2.046"`.
    pub published_label: String,
}

impl CaseSpec {
    pub fn conditions_label(&self, spec: &SystemSpec) -> String {
        self.active
            .iter()
            .map(|&i| spec.conditions[i].label.as_str())
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// All 3-subsets of `0..6` in lexicographic order.
pub fn triples() -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(20);
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                out.push([i, j, k]);
            }
        }
    }
    out
}

const E1: Option<Rational> = None;

fn eps(thousandths: i128) -> Option<Rational> {
    Some(rat(thousandths, 1000))
}

/// `(epsilon in thousandths, bound)` for rows 1..=19; row 0 is closed-form.
fn published(system: SystemId) -> Option<[(i128, f64); 19]> {
    use SystemId::*;
    let rows = match system {
        S1a => [
            (2, 2.078), (2, 2.077), (2, 2.077), (2, 2.077), (2, 2.078), (2, 2.077),
            (2, 2.085), (2, 2.086), (2, 2.086), (1, 2.005), (2, 2.033), (2, 2.033),
            (2, 2.057), (2, 2.057), (2, 2.043), (2, 2.045), (2, 2.044), (2, 2.041),
            (2, 2.046),
        ],
        S1b => [
            (2, 2.042), (2, 2.069), (2, 2.069), (2, 2.077), (2, 2.078), (2, 2.077),
            (2, 2.072), (2, 2.072), (2, 2.070), (1, 2.005), (2, 2.033), (2, 2.033),
            (2, 2.026), (2, 2.026), (2, 2.024), (2, 2.045), (2, 2.044), (2, 2.041),
            (2, 2.025),
        ],
        S1c => [
            (2, 2.042), (2, 2.069), (2, 2.069), (1, 2.019), (2, 2.036), (2, 2.037),
            (2, 2.027), (2, 2.028), (2, 2.026), (1, 2.005), (2, 2.033), (2, 2.033),
            (2, 2.026), (2, 2.026), (2, 2.024), (1, 2.042), (1, 2.042), (1, 2.042),
            (1, 2.033),
        ],
        S1d => [
            (2, 2.077), (2, 2.077), (2, 2.078), (1, 2.019), (2, 2.036), (2, 2.037),
            (2, 2.047), (2, 2.047), (2, 2.041), (1, 2.005), (2, 2.033), (2, 2.033),
            (2, 2.044), (2, 2.045), (2, 2.041), (1, 2.042), (1, 2.042), (1, 2.042),
            (1, 2.042),
        ],
        S1e | S1f => {
            let mut rows = [(0, 0.0); 19];
            let head = [2.077, 2.077, 2.078, 2.075, 2.076, 2.076, 2.086, 2.085, 2.084];
            for (slot, bound) in rows.iter_mut().zip(head) {
                *slot = (2, bound);
            }
            rows
        }
        S1fPrime | S2 => return None,
    };
    Some(rows)
}

/// The 20 cases of a tabulated system with their published status.
pub fn enumerate_cases(system: SystemId) -> Vec<CaseSpec> {
    let Some(rows) = published(system) else {
        return Vec::new();
    };
    let abc = matches!(system, SystemId::S1e | SystemId::S1f);
    triples()
        .into_iter()
        .enumerate()
        .map(|(row, active)| {
            let (eps_k, bound) = if row == 0 { (0, 0.0) } else { rows[row - 1] };
            let analytic = row == 0 || (abc && !active.contains(&0));
            let status = if analytic {
                CaseStatus::Analytic
            } else if system == SystemId::S1f && active.contains(&1) {
                CaseStatus::SameAs(SystemId::S1e)
            } else if row == 19 {
                CaseStatus::Either
            } else {
                CaseStatus::Computed
            };
            let (epsilon, published_bound, published_label) = match status {
                CaseStatus::Analytic => (E1, None, "2*".to_string()),
                CaseStatus::Either => (eps(eps_k), Some(bound), format!("2* or {bound:.3}")),
                _ => (eps(eps_k), Some(bound), format!("{bound:.3}")),
            };
            CaseSpec {
                system,
                row,
                active,
                status,
                epsilon,
                published_bound,
                published_label,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::systems::system;

    #[test]
    fn table_rows() {
        let a = enumerate_cases(SystemId::S1a);
        assert_eq!(a.len(), 20);
        assert_eq!(a[0].active, [0, 1, 2]);
        assert_eq!(a[0].status, CaseStatus::Analytic);
        assert_eq!(a[19].active, [3, 4, 5]);
        assert_eq!(a[19].status, CaseStatus::Either);
        assert_eq!(a[19].published_bound, Some(2.046));
        assert_eq!(a[1].epsilon, Some(rat(1, 500)));
        assert_eq!(a[1].published_bound, Some(2.078));

        let c = enumerate_cases(SystemId::S1c);
        let row = c.iter().find(|r| r.active == [1, 2, 3]).unwrap();
        assert_eq!(row.status, CaseStatus::Computed);
        assert_eq!(row.epsilon, Some(rat(1, 1000)));
        assert_eq!(row.published_bound, Some(2.005));
        assert_eq!(row.conditions_label(&system(SystemId::S1c)), "x2=x3;x1=4x2;a1=0");
    }

    #[test]
    fn abc_systems_split_by_first_condition() {
        for id in [SystemId::S1e, SystemId::S1f] {
            let cases = enumerate_cases(id);
            let computed: Vec<_> = cases.iter().filter(|c| c.status.is_computed()).collect();
            assert_eq!(computed.len(), 9);
            assert!(computed.iter().all(|c| c.active.contains(&0)));
            assert!(cases[10..].iter().all(|c| c.status == CaseStatus::Analytic));
        }
        let f = enumerate_cases(SystemId::S1f);
        assert!(f[1..4].iter().all(|c| c.status == CaseStatus::SameAs(SystemId::S1e)));
        assert!(f[4..10].iter().all(|c| c.status == CaseStatus::Computed));
    }

    #[test]
    fn published_bounds_all_exceed_two() {
        for id in SystemId::TABULATED {
            for case in enumerate_cases(id) {
                if let Some(b) = case.published_bound {
                    assert!((2.005..=2.086).contains(&b));
                }
            }
        }
    }
}
