//! Coefficient tables of the reduced inequality systems.
//!
//! Each system has nonnegative variables, a unit-sum constraint, homogeneous
//! domain inequalities (`form >= 0`) and, per part, a linear coefficient
//! `B_i` and a quadratic coefficient `A_i` (`c` is absorbed). Systems
//! 1a to 1f also carry six boundary conditions and an embedding into the
//! ten lemma quantities.

use std::fmt;
use std::str::FromStr;

use super::linear::{parse_form, LinForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemId {
    S1a,
    S1b,
    S1c,
    S1d,
    S1e,
    S1f,
    S1fPrime,
    S2,
}

impl SystemId {
    pub const ALL: [SystemId; 8] = [
        SystemId::S1a,
        SystemId::S1b,
        SystemId::S1c,
        SystemId::S1d,
        SystemId::S1e,
        SystemId::S1f,
        SystemId::S1fPrime,
        SystemId::S2,
    ];

    /// Systems with a table of boundary cases.
    pub const TABULATED: [SystemId; 6] = [
        SystemId::S1a,
        SystemId::S1b,
        SystemId::S1c,
        SystemId::S1d,
        SystemId::S1e,
        SystemId::S1f,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SystemId::S1a => "1a",
            SystemId::S1b => "1b",
            SystemId::S1c => "1c",
            SystemId::S1d => "1d",
            SystemId::S1e => "1e",
            SystemId::S1f => "1f",
            SystemId::S1fPrime => "1f'",
            SystemId::S2 => "2",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SystemId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let s = s.strip_prefix("system").unwrap_or(&s);
        SystemId::ALL
            .into_iter()
            .find(|id| id.label() == s || (s == "1fprime" && *id == SystemId::S1fPrime))
            .ok_or_else(|| format!("unknown system {s:?}"))
    }
}

/// Which reading of a display is encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reading {
    /// Follows the common pattern of all systems.
    Canonical,
    /// Follows the display as printed where it departs from the pattern.
    Displayed,
}

/// Equality `var = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub var: usize,
    pub rhs: LinForm,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub id: SystemId,
    pub reading: Reading,
    pub vars: Vec<&'static str>,
    pub sum: LinForm,
    /// Each form is constrained to be `>= 0`; variable nonnegativity is implicit.
    pub domain: Vec<LinForm>,
    pub linear: Vec<LinForm>,
    pub quadratic: Vec<LinForm>,
    pub conditions: Vec<Condition>,
    /// `(x1, x2, x3, b23, b13, b12, a1, a2, a3, c)` as forms in `vars`.
    pub embedding: Option<Vec<LinForm>>,
}

struct Table<'a> {
    vars: &'a [&'static str],
    sum: &'a str,
    domain: &'a [&'a str],
    linear: &'a [&'a str],
    quadratic: &'a [&'a str],
    conditions: &'a [(&'a str, &'a str)],
    embedding: Option<[&'a str; 10]>,
}

const CANONICAL_A: [&str; 3] = ["a2 + a3", "a1 + a3", "a1 + a2"];

fn build(id: SystemId, reading: Reading, t: Table<'_>) -> SystemSpec {
    let parse = |s: &str| parse_form(s, t.vars).unwrap_or_else(|e| panic!("system {id}: {e}"));
    let conditions = t
        .conditions
        .iter()
        .map(|(var, rhs)| Condition {
            var: t.vars.iter().position(|v| v == var).expect("condition variable"),
            rhs: parse(rhs),
            label: format!("{var}={rhs}").replace(' ', ""),
        })
        .collect();
    SystemSpec {
        id,
        reading,
        vars: t.vars.to_vec(),
        sum: parse(t.sum),
        domain: t.domain.iter().map(|s| parse(s)).collect(),
        linear: t.linear.iter().map(|s| parse(s)).collect(),
        quadratic: t.quadratic.iter().map(|s| parse(s)).collect(),
        conditions,
        embedding: t.embedding.map(|e| e.iter().map(|s| parse(s)).collect()),
    }
}

const A_CONDITIONS: [(&str, &str); 3] = [("a1", "0"), ("a2", "0"), ("a3", "0")];

fn with_a(first: [(&'static str, &'static str); 3]) -> Vec<(&'static str, &'static str)> {
    first.into_iter().chain(A_CONDITIONS).collect()
}

fn s1a() -> SystemSpec {
    build(
        SystemId::S1a,
        Reading::Canonical,
        Table {
            vars: &["x23", "b23", "b13", "a1", "a2", "a3"],
            sum: "14x23 + b23 + b13 + a1 + a2 + a3",
            domain: &["b13 - 8x23", "b23 - 2x23"],
            linear: &["b23 + 2x23", "b13 + 5x23", "13x23"],
            quadratic: &CANONICAL_A,
            conditions: &with_a([("x23", "0"), ("b13", "8x23"), ("b23", "2x23")]),
            embedding: Some(["4x23", "x23", "x23", "b23", "b13", "8x23", "a1", "a2", "a3", "0"]),
        },
    )
}

fn s1b(reading: Reading) -> SystemSpec {
    let (linear, quadratic): ([&str; 3], [&str; 3]) = match reading {
        Reading::Canonical => (["1/2x1 + 2x23", "b13 + x1 + x23", "3x1 + x23"], CANONICAL_A),
        // third display carries a1 + a2 as a linear term
        Reading::Displayed => (
            ["1/2x1 + 2x23", "b13 + x1 + x23", "3x1 + x23 + a1 + a2"],
            ["a2 + a3", "a1 + a3", "0"],
        ),
    };
    build(
        SystemId::S1b,
        reading,
        Table {
            vars: &["x1", "x23", "b13", "a1", "a2", "a3"],
            sum: "7/2x1 + 2x23 + b13 + a1 + a2 + a3",
            domain: &["b13 - 2x1", "2x1 - 8x23"],
            linear: &linear,
            quadratic: &quadratic,
            conditions: &with_a([("x23", "0"), ("b13", "2x1"), ("x1", "4x23")]),
            embedding: (reading == Reading::Canonical)
                .then_some(["x1", "x23", "x23", "1/2x1", "b13", "2x1", "a1", "a2", "a3", "0"]),
        },
    )
}

fn s1c(reading: Reading) -> SystemSpec {
    // The embedding sets b23 = x1/2, which satisfies b23 >= 2x2 only when
    // x1 >= 4x2; the canonical domain and third condition use that bound.
    let (domain, third): ([&str; 2], (&str, &str)) = match reading {
        Reading::Canonical => (["x1 - 4x2", "x2 - x3"], ("x1", "4x2")),
        Reading::Displayed => (["x1 - x2", "x2 - x3"], ("x2", "x1")),
    };
    build(
        SystemId::S1c,
        reading,
        Table {
            vars: &["x1", "x2", "x3", "a1", "a2", "a3"],
            sum: "11/2x1 + x2 + x3 + a1 + a2 + a3",
            domain: &domain,
            linear: &["1/2x1 + x2 + x3", "3x1 + x3", "3x1 + x2"],
            quadratic: &CANONICAL_A,
            conditions: &with_a([("x3", "0"), ("x2", "x3"), third]),
            embedding: (reading == Reading::Canonical)
                .then_some(["x1", "x2", "x3", "1/2x1", "2x1", "2x1", "a1", "a2", "a3", "0"]),
        },
    )
}

fn s1d(reading: Reading) -> SystemSpec {
    let quadratic = match reading {
        Reading::Canonical => CANONICAL_A,
        Reading::Displayed => ["a2 + a3", "a1 + a3", "a1 + a3"],
    };
    build(
        SystemId::S1d,
        reading,
        Table {
            vars: &["x2", "x3", "b12", "a1", "a2", "a3"],
            sum: "15x2 + x3 + b12 + a1 + a2 + a3",
            domain: &["b12 - 8x2", "x2 - x3"],
            linear: &["3x2 + x3", "12x2 + x3", "b12 + 5x2"],
            quadratic: &quadratic,
            conditions: &with_a([("b12", "8x2"), ("x2", "x3"), ("x3", "0")]),
            embedding: (reading == Reading::Canonical)
                .then_some(["4x2", "x2", "x3", "2x2", "8x2", "b12", "a1", "a2", "a3", "0"]),
        },
    )
}

const ABC: [&str; 6] = ["A", "B", "C", "a1", "a2", "a3"];

fn abc_conditions() -> Vec<(&'static str, &'static str)> {
    with_a([("A", "0"), ("B", "A"), ("C", "B")])
}

fn s1e() -> SystemSpec {
    build(
        SystemId::S1e,
        Reading::Canonical,
        Table {
            vars: &ABC,
            sum: "1/4A + B + C + a1 + a2 + a3",
            domain: &["C - B", "B - A"],
            linear: &["B", "A", "C"],
            quadratic: &CANONICAL_A,
            conditions: &abc_conditions(),
            embedding: Some([
                "1/4A", "1/4A", "1/4A", "B - 1/2A", "1/2A", "C - 1/2A", "a1", "a2", "a3", "0",
            ]),
        },
    )
}

fn s1f(prime: bool) -> SystemSpec {
    let domain: &[&str] = if prime {
        &["C - B", "B - A"]
    } else {
        &["C - B", "B - A", "13/4A - B"]
    };
    build(
        if prime { SystemId::S1fPrime } else { SystemId::S1f },
        Reading::Canonical,
        Table {
            vars: &ABC,
            sum: "7/12A + 2/3B + C + a1 + a2 + a3",
            domain,
            linear: &["A", "B", "C"],
            quadratic: &CANONICAL_A,
            conditions: &abc_conditions(),
            // x1 = B/3 - A/12 stays below 4x23 = A only while B <= 13A/4
            embedding: (!prime).then_some([
                "1/3B - 1/12A",
                "1/4A",
                "1/4A",
                "1/2A",
                "2/3B - 1/6A",
                "C - 1/3B - 1/6A",
                "a1",
                "a2",
                "a3",
                "0",
            ]),
        },
    )
}

fn s2() -> SystemSpec {
    build(
        SystemId::S2,
        Reading::Canonical,
        Table {
            vars: &["x1", "b12", "b13"],
            sum: "b12 + b13 + 3/2x1",
            domain: &["b12 - 2x1", "b13 - 2x1"],
            linear: &["b13 + x1", "b12 + x1"],
            quadratic: &["0", "0"],
            conditions: &[],
            embedding: None,
        },
    )
}

pub fn system(id: SystemId) -> SystemSpec {
    match id {
        SystemId::S1a => s1a(),
        SystemId::S1b => s1b(Reading::Canonical),
        SystemId::S1c => s1c(Reading::Canonical),
        SystemId::S1d => s1d(Reading::Canonical),
        SystemId::S1e => s1e(),
        SystemId::S1f => s1f(false),
        SystemId::S1fPrime => s1f(true),
        SystemId::S2 => s2(),
    }
}

/// The eight systems in their canonical reading.
pub fn builtin_systems() -> Vec<SystemSpec> {
    SystemId::ALL.into_iter().map(system).collect()
}

/// Alternative readings of 1b, 1c and 1d that follow their displays
/// literally; reported for information only.
pub fn displayed_systems() -> Vec<SystemSpec> {
    vec![
        s1b(Reading::Displayed),
        s1c(Reading::Displayed),
        s1d(Reading::Displayed),
    ]
}

impl SystemSpec {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| *v == name)
    }

    pub fn parts(&self) -> usize {
        self.linear.len()
    }

    pub fn form(&self, text: &str) -> LinForm {
        parse_form(text, &self.vars).expect("valid form")
    }

    pub fn name(&self) -> String {
        match self.reading {
            Reading::Canonical => self.id.label().to_string(),
            Reading::Displayed => format!("{}-displayed", self.id.label()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn coefficient_spot_checks() {
        let a = system(SystemId::S1a);
        assert_eq!(a.sum.coeffs[a.var_index("x23").unwrap()], int(14));
        let f = system(SystemId::S1f);
        assert!(f.domain.contains(&f.form("13/4A - B")));
        assert!(!system(SystemId::S1fPrime).domain.contains(&f.form("13/4A - B")));
        assert_eq!(system(SystemId::S1b).sum.coeffs[0], rat(7, 2));
        assert_eq!(system(SystemId::S1c).sum.coeffs[0], rat(11, 2));
        assert_eq!(system(SystemId::S2).parts(), 2);
        for spec in builtin_systems().iter().chain(&displayed_systems()) {
            assert_eq!(spec.vars.len(), if spec.id == SystemId::S2 { 3 } else { 6 });
            assert!(spec.conditions.len() == 6 || spec.id == SystemId::S2);
        }
    }

    #[test]
    fn parses_system_ids() {
        assert_eq!("1a".parse::<SystemId>(), Ok(SystemId::S1a));
        assert_eq!("1F'".parse::<SystemId>(), Ok(SystemId::S1fPrime));
        assert_eq!("system2".parse::<SystemId>(), Ok(SystemId::S2));
        assert!("1g".parse::<SystemId>().is_err());
    }

    /// The embedding reproduces the sum and every per-part coefficient, so
    /// any point of a system maps to a lemma instance with the same caps.
    #[test]
    fn embeddings_reproduce_forms() {
        for spec in builtin_systems() {
            let Some(e) = &spec.embedding else { continue };
            let total = e.iter().fold(LinForm::zero(6), |acc, f| acc.add(f));
            assert_eq!(total, spec.sum, "sum of {}", spec.id);
            let (x, b, a) = (&e[0..3], &e[3..6], &e[6..9]);
            for (i, bi) in b.iter().enumerate() {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                assert_eq!(bi.add(&x[j]).add(&x[k]), spec.linear[i], "B{} of {}", i + 1, spec.id);
                assert_eq!(a[j].add(&a[k]), spec.quadratic[i], "A{} of {}", i + 1, spec.id);
            }
        }
    }
}
