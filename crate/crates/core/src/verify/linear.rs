//! Affine forms with rational coefficients over a fixed variable list.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exact::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinForm {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

impl LinForm {
    pub fn zero(len: usize) -> Self {
        Self {
            constant: Rational::zero(),
            coeffs: vec![Rational::zero(); len],
        }
    }

    pub fn constant(len: usize, value: Rational) -> Self {
        Self {
            constant: value,
            ..Self::zero(len)
        }
    }

    pub fn var(len: usize, index: usize) -> Self {
        let mut f = Self::zero(len);
        f.coeffs[index] = Rational::one();
        f
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -Rational::one())
    }

    /// `self + factor * other`.
    pub fn combine(&self, other: &Self, factor: Rational) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            constant: self.constant + factor * other.constant,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| *a + factor * *b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Rational) -> Self {
        Self {
            constant: self.constant * factor,
            coeffs: self.coeffs.iter().map(|c| *c * factor).collect(),
        }
    }

    /// Replaces variable `index` by `expr` (which must not mention it).
    pub fn substitute(&self, index: usize, expr: &Self) -> Self {
        let c = self.coeffs[index];
        if c.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeffs[index] = Rational::zero();
        out.combine(expr, c)
    }

    /// Rewrites the form over new variables, where old variable `v` equals
    /// `images[v]` (each an affine form over the new variables).
    pub fn compose(&self, images: &[LinForm], new_len: usize) -> Self {
        assert_eq!(images.len(), self.len());
        let mut out = Self::constant(new_len, self.constant);
        for (c, image) in self.coeffs.iter().zip(images) {
            if !c.is_zero() {
                out = out.combine(image, *c);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.len());
        self.coeffs
            .iter()
            .zip(point)
            .fold(self.constant, |acc, (c, x)| acc + *c * *x)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(point)
            .fold(crate::exact::to_f64(&self.constant), |acc, (c, x)| {
                acc + crate::exact::to_f64(c) * x
            })
    }

    pub fn display<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        FormDisplay { form: self, names }
    }
}

struct FormDisplay<'a> {
    form: &'a LinForm,
    names: &'a [&'a str],
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.form.coeffs.iter().zip(self.names) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let magnitude = c.abs();
            if magnitude.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{magnitude}{name}")?;
            }
            first = false;
        }
        let k = self.form.constant;
        if !k.is_zero() || first {
            if first {
                write!(f, "{k}")?;
            } else {
                write!(f, " {} {}", if k.is_negative() { "-" } else { "+" }, k.abs())?;
            }
        }
        Ok(())
    }
}

/// Parses sums such as `"7/2x1 + 2x23 - b13 + 1/4"` over `names`. A term
/// is an optional rational coefficient (optionally followed by `*`) and an
/// optional variable name.
pub fn parse_form(text: &str, names: &[&str]) -> Result<LinForm, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty form".into());
    }
    let mut form = LinForm::zero(names.len());
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);

    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, &term[..]),
        };
        let split = body
            .find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '/'))
            .unwrap_or(body.len());
        let (number, rest) = body.split_at(split);
        let name = rest.strip_prefix('*').unwrap_or(rest);
        let mut coeff = if number.is_empty() {
            Rational::one()
        } else {
            parse_rational(number).ok_or_else(|| format!("bad coefficient {number:?} in {text:?}"))?
        };
        if negative {
            coeff = -coeff;
        }
        if name.is_empty() {
            if number.is_empty() {
                return Err(format!("dangling sign in {text:?}"));
            }
            form.constant += coeff;
        } else {
            let index = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| format!("unknown variable {name:?} in {text:?}"))?;
            form.coeffs[index] += coeff;
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    const NAMES: [&str; 3] = ["x1", "x23", "b13"];

    #[test]
    fn parses_coefficients_and_constants() {
        let f = parse_form("7/2x1 + 2x23 + b13", &NAMES).unwrap();
        assert_eq!(f.coeffs, vec![rat(7, 2), int(2), int(1)]);
        let g = parse_form("b13 - 1/2*x1 + 3 - x23", &NAMES).unwrap();
        assert_eq!(g.coeffs, vec![rat(-1, 2), int(-1), int(1)]);
        assert_eq!(g.constant, int(3));
        assert_eq!(parse_form("0", &NAMES).unwrap(), LinForm::zero(3));
        assert!(parse_form("y", &NAMES).is_err());
        assert!(parse_form("x1 +", &NAMES).is_err());
    }

    #[test]
    fn substitution_and_display() {
        let f = parse_form("b13 + x1 + x23", &NAMES).unwrap();
        let g = f.substitute(0, &parse_form("4x23", &NAMES).unwrap());
        assert_eq!(g, parse_form("5x23 + b13", &NAMES).unwrap());
        assert_eq!(g.display(&NAMES).to_string(), "5x23 + b13");
        let h = parse_form("-1/2x1 + 1", &NAMES).unwrap();
        assert_eq!(h.display(&NAMES).to_string(), "-1/2x1 + 1");
        assert_eq!(h.eval(&[int(2), int(0), int(0)]), int(0));
    }
}
