//! Exact rational helpers shared by the solver and the verifier.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i128>;

pub fn rat(numer: i128, denom: i128) -> Rational {
    Ratio::new(numer, denom)
}

pub fn int(value: i128) -> Rational {
    Ratio::from_integer(value)
}

pub fn to_f64(q: &Rational) -> f64 {
    // Numerators and denominators here stay far below 2^53 in practice; the
    // division is then correctly rounded.
    *q.numer() as f64 / *q.denom() as f64
}

/// Parses a base-10 decimal ("0.002", "3", "-1.5") or a fraction ("2/7").
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(rat(n, d));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 30 {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let denom = 10i128.checked_pow(frac.len() as u32)?;
    let value = rat(numer, denom);
    Some(if negative { -value } else { value })
}

/// Square root of a rational when it is itself rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = q.numer().isqrt();
    let d = q.denom().isqrt();
    (n * n == *q.numer() && d * d == *q.denom()).then(|| rat(n, d))
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, v| acc.lcm(v.denom()))
}
