//! Nonzero rational weight vectors for Littlewood–Offord sums.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Weights `v ∈ (ℚ∖{0})ⁿ`, each kept in lowest terms with a positive
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<Rational>,
}

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(i) = weights.iter().position(Zero::is_zero) {
            return Err(Error::ZeroWeight(i));
        }
        Ok(WeightVector { weights })
    }

    pub fn from_integers(ws: &[i64]) -> Result<Self> {
        Self::new(ws.iter().map(|&w| Rational::from_integer(w)).collect())
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `sign(v_i)` for each weight.
    pub fn signs(&self) -> Vec<i8> {
        self.weights
            .iter()
            .map(|w| if w.is_positive() { 1 } else { -1 })
            .collect()
    }

    /// Least common multiple of the denominators.
    pub fn common_denominator(&self) -> Result<i64> {
        self.weights.iter().try_fold(1i64, |acc, w| {
            let d = *w.denom();
            let g = acc.gcd(&d);
            (acc / g)
                .checked_mul(d)
                .ok_or(Error::Overflow("clearing denominators"))
        })
    }

    /// The weights multiplied by [`Self::common_denominator`]; all nonzero
    /// integers.
    pub fn integer_scaled(&self) -> Result<Vec<i64>> {
        let l = self.common_denominator()?;
        self.weights
            .iter()
            .map(|w| {
                (l / w.denom())
                    .checked_mul(*w.numer())
                    .ok_or(Error::Overflow("clearing denominators"))
            })
            .collect()
    }
}

/// Parses `"3"`, `"-2/5"` or a finite decimal such as `"0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_part: i64 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            digits => digits.parse().map_err(|_| bad())?,
        };
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let num = int_part
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac.parse::<i64>().ok()?))
            .ok_or_else(bad)?;
        let r = Rational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ws = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(ws)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        parts.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational("-4/6").unwrap(), Rational::new(-2, 3));
        assert_eq!(parse_rational("0.125").unwrap(), Rational::new(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), Rational::new(-3, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::new(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn rejects_zero() {
        assert_eq!("1,0,2".parse::<WeightVector>(), Err(Error::ZeroWeight(1)));
    }

    #[test]
    fn clears_denominators() {
        let v: WeightVector = "1/2,1/3,-5/4".parse().unwrap();
        assert_eq!(v.common_denominator().unwrap(), 12);
        assert_eq!(v.integer_scaled().unwrap(), vec![6, 4, -15]);
        assert_eq!(v.signs(), vec![1, 1, -1]);
        assert_eq!(v.to_string(), "1/2,1/3,-5/4");
    }
}
