//! Parsers for the textual arguments: sequence specs, complex numbers,
//! ranges, rationals and bivariate polynomials.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;

use orbitzeta_core::dirser::{m_fold_orbit_seq, MFoldSpec};
use orbitzeta_core::ghost::BivariatePoly;
use orbitzeta_core::seqcore::sparse_prime_orbit_seq;
use orbitzeta_core::{FixSeq, OrbitSeq, PrimeClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn bad(what: impl Into<String>) -> ParseError {
    ParseError(what.into())
}

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T, ParseError> {
    text.trim().parse().map_err(|_| bad(format!("{what}: cannot parse {text:?}")))
}

fn biguint_list(text: &str) -> Result<Vec<BigUint>, ParseError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| number(t, "list entry"))
        .collect()
}

/// Orbit-count families: `power:A`, `feigenbaum`, `identity`, `full-shift:S`,
/// `sparse-even:B`, `sparse-odd:B`, `mfold:A:M`, `list:v1,v2,…`.
pub fn orbit_family(spec: &str) -> Result<OrbitSeq, ParseError> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let arg = |what: &str| number::<u64>(rest, what);
    match name {
        "power" => Ok(OrbitSeq::power(number(rest, "power exponent")?)),
        "feigenbaum" => Ok(OrbitSeq::feigenbaum()),
        "identity" => Ok(OrbitSeq::identity()),
        "full-shift" => OrbitSeq::full_shift(arg("symbols")?).map_err(|e| bad(e.to_string())),
        "sparse-even" => sparse_prime_orbit_seq(PrimeClass::EvenIndex, arg("base")?).map_err(|e| bad(e.to_string())),
        "sparse-odd" => sparse_prime_orbit_seq(PrimeClass::OddIndex, arg("base")?).map_err(|e| bad(e.to_string())),
        "mfold" => {
            let (a, m) = rest.split_once(':').ok_or_else(|| bad("mfold needs A:M"))?;
            let spec = MFoldSpec::new(number(a, "a")?, number(m, "m")?).map_err(|e| bad(e.to_string()))?;
            Ok(m_fold_orbit_seq(spec))
        }
        "list" => Ok(OrbitSeq::from_list(biguint_list(rest)?)),
        _ => Err(bad(format!("unknown orbit family {spec:?}"))),
    }
}

/// Fixed-point families: `geometric:B`, `sigma:A`, `list:v1,v2,…`.
pub fn fix_family(spec: &str) -> Result<FixSeq, ParseError> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "geometric" => Ok(FixSeq::geometric(number(rest, "base")?)),
        "sigma" => Ok(FixSeq::sigma(number(rest, "sigma index")?)),
        "list" => {
            let values = biguint_list(rest)?;
            Ok(FixSeq::from_fn(move |n| values.get(n as usize - 1).cloned().unwrap_or_default()))
        }
        _ => Err(bad(format!("unknown fixed-point family {spec:?}"))),
    }
}

/// `3`, `-2.5`, `1+2i`, `0.5-14.1i`, `2i`.
pub fn complex(text: &str) -> Result<Complex64, ParseError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(number(&t, "real number")?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (number(&body[..i], "real part")?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => number(other, "imaginary part")?,
    };
    Ok(Complex64::new(re, im))
}

/// `a..b`, inclusive; negative endpoints allowed.
pub fn range(text: &str) -> Result<RangeInclusive<i64>, ParseError> {
    let (a, b) = text.split_once("..").ok_or_else(|| bad(format!("expected a..b, got {text:?}")))?;
    let (a, b) = (number(a, "range start")?, number(b.trim_start_matches('='), "range end")?);
    if a > b {
        return Err(bad("empty range"));
    }
    Ok(a..=b)
}

/// `p/q` or an integer.
pub fn rational(text: &str) -> Result<BigRational, ParseError> {
    match text.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = number(q, "denominator")?;
            if q == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(number(p, "numerator")?, q))
        }
        None => Ok(BigRational::from_integer(number(text, "rational")?)),
    }
}

pub fn rational_list(text: &str) -> Result<Vec<BigRational>, ParseError> {
    text.split(',').filter(|t| !t.trim().is_empty()).map(rational).collect()
}

/// Sum of terms such as `1`, `-2x`, `3*x^2*y`, `x^2y^3`.
pub fn polynomial(text: &str) -> Result<BivariatePoly, ParseError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if t.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        rest = rest.strip_prefix(['+', '-']).unwrap_or(rest);
        let end = rest[1..].find(['+', '-']).map_or(rest.len(), |i| i + 1);
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let mut coeff: BigInt = if digits == 0 { BigInt::from(1) } else { number(&term[..digits], "coefficient")? };
        if negative {
            coeff = -coeff;
        }
        let (mut dx, mut dy) = (0u32, 0u32);
        let mut vars = &term[digits..];
        while let Some(var) = vars.chars().next() {
            vars = &vars[1..];
            let mut exp = 1u32;
            if let Some(after) = vars.strip_prefix('^') {
                let len = after.find(|c: char| !c.is_ascii_digit()).unwrap_or(after.len());
                exp = number(&after[..len], "exponent")?;
                vars = &after[len..];
            }
            match var {
                'x' => dx += exp,
                'y' => dy += exp,
                other => return Err(bad(format!("unexpected {other:?} in polynomial"))),
            }
        }
        terms.push(((dx, dy), coeff));
    }
    Ok(BivariatePoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_numbers() {
        assert_eq!(complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(complex("0.5 - 14.1i").unwrap(), Complex64::new(0.5, -14.1));
        assert_eq!(complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("4").unwrap(), Complex64::new(4.0, 0.0));
        assert_eq!(complex("1e-3+1e2i").unwrap(), Complex64::new(1e-3, 100.0));
        assert!(complex("1+zi").is_err());
    }

    #[test]
    fn ranges_and_rationals() {
        assert_eq!(range("-2..2").unwrap(), -2..=2);
        assert_eq!(range("1..=10").unwrap(), 1..=10);
        assert!(range("3..1").is_err());
        assert_eq!(rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(rational("1/0").is_err());
    }

    #[test]
    fn polynomials() {
        let f = polynomial("1 + 2x + 2*x*y + x^2y").unwrap();
        assert_eq!(f, BivariatePoly::triple_product());
        let g = polynomial("1-x^3y^2+4y").unwrap();
        assert_eq!(g, BivariatePoly::from_terms([((0, 0), 1), ((3, 2), -1), ((0, 1), 4)]));
        assert!(polynomial("1+z").is_err());
    }

    #[test]
    fn families() {
        assert_eq!(orbit_family("full-shift:2").unwrap().at(3).unwrap(), BigUint::from(2u32));
        assert_eq!(orbit_family("mfold:0:3").unwrap().at(2).unwrap(), BigUint::from(13u32));
        assert_eq!(orbit_family("list:4,5").unwrap().at(2).unwrap(), BigUint::from(5u32));
        assert_eq!(fix_family("sigma:1").unwrap().at(6).unwrap(), BigUint::from(12u32));
        assert!(orbit_family("nope").is_err());
    }
}
