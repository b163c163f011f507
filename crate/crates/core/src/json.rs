//! JSON forms of the core values. Rationals travel as decimal integer strings
//! (`"num"`/`"den"`) or as a single `"num/den"` string; terms, weights and
//! moments are written in lexicographic order of their exponents, so output is
//! reproducible byte for byte.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coherence::AssessmentSet;
use crate::error::{Error, Result};
use crate::kv_cone::{Certificate, SemiAlgebraicDomain};
use crate::moment::MomentState;
use crate::polynomial::{MultiIndex, Polynomial, Rational};

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct PolynomialJson {
    n_vars: usize,
    terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WeightJson {
    index: Vec<u32>,
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct CertificateJson {
    degree: u32,
    weights: Vec<WeightJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConstraintJson {
    n_vars: usize,
    terms: Vec<TermJson>,
    sup: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct DomainJson {
    n_vars: usize,
    constraints: Vec<ConstraintJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AssessmentSetJson {
    n_vars: usize,
    gambles: Vec<PolynomialJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_degree: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MomentStateJson {
    n_vars: usize,
    degree: u32,
    moments: Vec<TermJson>,
}

/// Parses `"num/den"` or a plain integer `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    rational_from_parts(num, den)
}

/// `"num/den"` in lowest terms with a positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_from_parts(num: &str, den: &str) -> Result<Rational> {
    let bad = |what: &str, s: &str| Error::Parse(format!("invalid {what} {s:?}"));
    let n = BigInt::from_str(num).map_err(|_| bad("numerator", num))?;
    let d = BigInt::from_str(den).map_err(|_| bad("denominator", den))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

fn parts(r: &Rational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

fn terms_json(p: &Polynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| {
            let (num, den) = parts(c);
            TermJson {
                exp: e.0.clone(),
                num,
                den,
            }
        })
        .collect()
}

fn polynomial_json(p: &Polynomial) -> PolynomialJson {
    PolynomialJson {
        n_vars: p.n_vars(),
        terms: terms_json(p),
    }
}

fn polynomial_from_wire(n_vars: usize, terms: Vec<TermJson>) -> Result<Polynomial> {
    if n_vars == 0 {
        return Err(Error::Parse("n_vars must be positive".into()));
    }
    let terms = terms
        .into_iter()
        .map(|t| Ok((MultiIndex(t.exp), rational_from_parts(&t.num, &t.den)?)))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(n_vars, terms)
}

fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types always serialize")
}

fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn polynomial_to_json(p: &Polynomial) -> String {
    to_string(&polynomial_json(p))
}

pub fn polynomial_from_json(s: &str) -> Result<Polynomial> {
    let w: PolynomialJson = from_str(s)?;
    polynomial_from_wire(w.n_vars, w.terms)
}

pub fn certificate_to_json(c: &Certificate) -> String {
    let weights = c
        .weights
        .iter()
        .map(|(i, w)| {
            let (num, den) = parts(w);
            WeightJson {
                index: i.0.clone(),
                num,
                den,
            }
        })
        .collect();
    to_string(&CertificateJson {
        degree: c.degree,
        weights,
    })
}

pub fn certificate_from_json(s: &str) -> Result<Certificate> {
    let w: CertificateJson = from_str(s)?;
    let weights = w
        .weights
        .into_iter()
        .map(|t| Ok((MultiIndex(t.index), rational_from_parts(&t.num, &t.den)?)))
        .collect::<Result<Vec<_>>>()?;
    Certificate::from_weights(w.degree, weights)
}

pub fn domain_to_json(domain: &SemiAlgebraicDomain) -> String {
    let constraints = domain
        .raw_constraints()
        .iter()
        .zip(domain.sups())
        .map(|(c, s)| ConstraintJson {
            n_vars: c.n_vars(),
            terms: terms_json(c),
            sup: format_rational(s),
        })
        .collect();
    to_string(&DomainJson {
        n_vars: domain.n_vars(),
        constraints,
    })
}

pub fn domain_from_json(s: &str) -> Result<SemiAlgebraicDomain> {
    let w: DomainJson = from_str(s)?;
    let mut raw = Vec::new();
    let mut sups = Vec::new();
    for c in w.constraints {
        if c.n_vars != w.n_vars {
            return Err(Error::DimensionMismatch {
                expected: w.n_vars,
                found: c.n_vars,
            });
        }
        sups.push(parse_rational(&c.sup)?);
        raw.push(polynomial_from_wire(c.n_vars, c.terms)?);
    }
    SemiAlgebraicDomain::normalize(raw, sups)
}

pub fn assessment_set_to_json(set: &AssessmentSet) -> String {
    to_string(&AssessmentSetJson {
        n_vars: set.n_vars(),
        gambles: set.gambles().iter().map(polynomial_json).collect(),
        base_degree: Some(set.base_degree()),
    })
}

/// Without `base_degree` the largest gamble degree is used.
pub fn assessment_set_from_json(s: &str) -> Result<AssessmentSet> {
    let w: AssessmentSetJson = from_str(s)?;
    let gambles = w
        .gambles
        .into_iter()
        .map(|g| {
            if g.n_vars != w.n_vars {
                return Err(Error::DimensionMismatch {
                    expected: w.n_vars,
                    found: g.n_vars,
                });
            }
            polynomial_from_wire(g.n_vars, g.terms)
        })
        .collect::<Result<Vec<_>>>()?;
    match w.base_degree {
        Some(d) => AssessmentSet::with_base_degree(w.n_vars, gambles, d),
        None => AssessmentSet::new(w.n_vars, gambles),
    }
}

pub fn moment_state_to_json(state: &MomentState) -> String {
    let moments = state
        .moments()
        .map(|(e, z)| {
            let (num, den) = parts(z);
            TermJson {
                exp: e.0.clone(),
                num,
                den,
            }
        })
        .collect();
    to_string(&MomentStateJson {
        n_vars: state.n_vars(),
        degree: state.degree(),
        moments,
    })
}

pub fn moment_state_from_json(s: &str) -> Result<MomentState> {
    let w: MomentStateJson = from_str(s)?;
    let moments = w
        .moments
        .into_iter()
        .map(|t| Ok((MultiIndex(t.exp), rational_from_parts(&t.num, &t.den)?)))
        .collect::<Result<Vec<_>>>()?;
    MomentState::new(w.n_vars, w.degree, moments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moment::bell_state;
    use crate::polynomial::{int, rat};

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" 1 / 100 ").unwrap(), rat(1, 100));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
    }

    #[test]
    fn polynomial_schema() {
        let p = &Polynomial::var(2, 0) - &Polynomial::constant(2, rat(1, 2));
        let s = polynomial_to_json(&p);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["n_vars"], 2);
        assert_eq!(v["terms"][0]["exp"], serde_json::json!([0, 0]));
        assert_eq!(v["terms"][0]["num"], "-1");
        assert_eq!(v["terms"][0]["den"], "2");
        assert_eq!(polynomial_from_json(&s).unwrap(), p);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(polynomial_from_json("{"), Err(Error::Parse(_))));
        let bad_den = r#"{"n_vars":1,"terms":[{"exp":[1],"num":"1","den":"0"}]}"#;
        assert!(matches!(
            polynomial_from_json(bad_den),
            Err(Error::Parse(_))
        ));
        let bad_len = r#"{"n_vars":2,"terms":[{"exp":[1],"num":"1","den":"1"}]}"#;
        assert!(polynomial_from_json(bad_len).is_err());
    }

    #[test]
    fn other_schemas_round_trip() {
        let state = bell_state();
        assert_eq!(
            moment_state_from_json(&moment_state_to_json(&state)).unwrap(),
            state
        );

        let set = AssessmentSet::new(1, vec![Polynomial::constant(1, rat(-1, 2))]).unwrap();
        let back = assessment_set_from_json(&assessment_set_to_json(&set)).unwrap();
        assert_eq!(back.gambles(), set.gambles());
        assert_eq!(back.base_degree(), set.base_degree());

        let cert = Certificate::from_weights(
            2,
            vec![
                (MultiIndex(vec![1, 1]), rat(1, 2)),
                (MultiIndex(vec![2, 0]), int(3)),
            ],
        )
        .unwrap();
        assert_eq!(
            certificate_from_json(&certificate_to_json(&cert)).unwrap(),
            cert
        );

        let domain = SemiAlgebraicDomain::simplex(2);
        let back = domain_from_json(&domain_to_json(&domain)).unwrap();
        assert_eq!(back.raw_constraints(), domain.raw_constraints());
        assert_eq!(back.sups(), domain.sups());
    }

    #[test]
    fn base_degree_is_optional() {
        let s =
            r#"{"n_vars":1,"gambles":[{"n_vars":1,"terms":[{"exp":[2],"num":"1","den":"1"}]}]}"#;
        assert_eq!(assessment_set_from_json(s).unwrap().base_degree(), 2);
    }
}
