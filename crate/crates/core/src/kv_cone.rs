//! Krivine-Vasilescu nonnegativity certificates.
//!
//! On a compact domain `Ω = {x : c_j(x) >= 0}` with normalized constraints
//! `ĉ_j ∈ [0, 1]`, a polynomial is certified nonnegative at degree `d` when it
//! is a nonnegative combination of the products
//! `ĉ₁^{α₁}⋯ĉₘ^{αₘ}(1−ĉ₁)^{β₁}⋯(1−ĉₘ)^{βₘ}` with `|α| + |β| <= d`.
//! Membership is decided exactly by the rational simplex method.
//!
//! On the probability simplex the equal-degree products
//! `θ^{α₁..αₙ}(1−Σθ)^{α_{n+1}}` form a basis, so membership reduces to a sign
//! check on the product-basis coefficients.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::bernstein::{product_basis_element, to_bernstein_form};
use crate::error::{Error, Result};
use crate::grid::BoundingBox;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polynomial::{compositions, indices_up_to, MultiIndex, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiAlgebraicDomain {
    n_vars: usize,
    raw: Vec<Polynomial>,
    normalized: Vec<Polynomial>,
    sups: Vec<Rational>,
}

impl SemiAlgebraicDomain {
    /// Scales each constraint by its supremum, `ĉ_j = c_j / c̄_j` when
    /// `c̄_j > 0` and `ĉ_j = c_j` when `c̄_j = 0`. The suprema are taken on
    /// trust; see [`check_sups`] for a grid sanity check.
    pub fn normalize(raw: Vec<Polynomial>, sups: Vec<Rational>) -> Result<Self> {
        let Some(first) = raw.first() else {
            return Err(Error::InvalidDomain(
                "at least one constraint is required".into(),
            ));
        };
        let n_vars = first.n_vars();
        if raw.len() != sups.len() {
            return Err(Error::InvalidDomain(format!(
                "{} constraints but {} suprema",
                raw.len(),
                sups.len()
            )));
        }
        if let Some(c) = raw.iter().find(|c| c.n_vars() != n_vars) {
            return Err(Error::DimensionMismatch {
                expected: n_vars,
                found: c.n_vars(),
            });
        }
        let mut normalized = Vec::with_capacity(raw.len());
        for (j, (c, s)) in raw.iter().zip(&sups).enumerate() {
            if s.is_negative() {
                return Err(Error::NegativeSup {
                    index: j,
                    value: s.to_string(),
                });
            }
            normalized.push(if s.is_zero() {
                c.clone()
            } else {
                c.scale(&s.recip())
            });
        }
        Ok(SemiAlgebraicDomain {
            n_vars,
            raw,
            normalized,
            sups,
        })
    }

    /// `θ_j >= 0` for each coordinate and `1 − Σθ >= 0`, all with supremum 1.
    pub fn simplex(n_vars: usize) -> Self {
        let mut raw: Vec<Polynomial> = (0..n_vars).map(|i| Polynomial::var(n_vars, i)).collect();
        raw.push(Polynomial::one_minus_sum(n_vars));
        let sups = vec![Rational::from_integer(1.into()); n_vars + 1];
        SemiAlgebraicDomain::normalize(raw, sups).expect("simplex constraints are well formed")
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Number of constraints `m`.
    pub fn num_constraints(&self) -> usize {
        self.normalized.len()
    }

    pub fn raw_constraints(&self) -> &[Polynomial] {
        &self.raw
    }

    pub fn constraints(&self) -> &[Polynomial] {
        &self.normalized
    }

    pub fn sups(&self) -> &[Rational] {
        &self.sups
    }

    /// Exact membership test `c_j(x) >= 0` for all `j`.
    pub fn contains(&self, point: &[Rational]) -> Result<bool> {
        for c in &self.raw {
            if c.eval(point)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest total degree a degree-`d` generator can reach.
    pub fn max_generator_degree(&self, d: u32) -> u32 {
        d * self
            .normalized
            .iter()
            .map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }
}

/// Grid evidence that a user supplied supremum is too small.
#[derive(Debug, Clone, PartialEq)]
pub struct SupWarning {
    pub constraint: usize,
    pub supplied: Rational,
    pub grid_estimate: Rational,
}

/// Grid maximum of each constraint over the domain points of a
/// `divisions`-per-axis grid of `bbox`. `None` for a constraint when no grid
/// point lies in the domain.
pub fn estimate_sups(
    raw: &[Polynomial],
    bbox: &BoundingBox,
    divisions: u32,
) -> Result<Vec<Option<Rational>>> {
    let mut best: Vec<Option<Rational>> = vec![None; raw.len()];
    for p in bbox.grid(divisions) {
        let values = raw.iter().map(|c| c.eval(&p)).collect::<Result<Vec<_>>>()?;
        if values.iter().any(Signed::is_negative) {
            continue;
        }
        for (b, v) in best.iter_mut().zip(values) {
            if b.as_ref().is_none_or(|cur| v > *cur) {
                *b = Some(v);
            }
        }
    }
    Ok(best)
}

/// Compares supplied suprema with a step-1/64 grid estimate and warns for every
/// constraint whose supplied value is below the estimate.
pub fn check_sups(
    raw: &[Polynomial],
    sups: &[Rational],
    bbox: &BoundingBox,
) -> Result<Vec<SupWarning>> {
    let estimates = estimate_sups(raw, bbox, 64)?;
    let mut warnings = Vec::new();
    for (j, (s, e)) in sups.iter().zip(estimates).enumerate() {
        if let Some(e) = e {
            if *s < e {
                log::warn!("supremum of constraint {j} is {s}, but the grid reaches {e}");
                warnings.push(SupWarning {
                    constraint: j,
                    supplied: s.clone(),
                    grid_estimate: e,
                });
            }
        }
    }
    Ok(warnings)
}

/// Grid points of `bbox` inside the domain where some `ĉ_j` leaves `[0, 1]`.
pub fn normalization_violations(
    domain: &SemiAlgebraicDomain,
    bbox: &BoundingBox,
    divisions: u32,
) -> Result<Vec<(usize, Vec<Rational>)>> {
    let one = Rational::from_integer(1.into());
    let mut out = Vec::new();
    for p in bbox.grid(divisions) {
        if !domain.contains(&p)? {
            continue;
        }
        for (j, c) in domain.constraints().iter().enumerate() {
            let v = c.eval(&p)?;
            if v.is_negative() || v > one {
                out.push((j, p.clone()));
            }
        }
    }
    Ok(out)
}

/// `(α, β)` exponents of one Krivine-Vasilescu generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorIndex {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl GeneratorIndex {
    pub fn degree(&self) -> u32 {
        self.alpha.degree() + self.beta.degree()
    }

    /// `α` followed by `β`, the form used in certificates.
    pub fn flatten(&self) -> MultiIndex {
        let mut v = self.alpha.0.clone();
        v.extend_from_slice(&self.beta.0);
        MultiIndex(v)
    }

    pub fn unflatten(index: &MultiIndex) -> Result<GeneratorIndex> {
        if !index.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "generator index {index} must have even length"
            )));
        }
        let m = index.len() / 2;
        Ok(GeneratorIndex {
            alpha: MultiIndex(index.0[..m].to_vec()),
            beta: MultiIndex(index.0[m..].to_vec()),
        })
    }
}

/// Every `(α, β)` with `|α| + |β| <= d`, in lexicographic order of `(α, β)`,
/// paired with its product polynomial.
pub fn kv_generators(domain: &SemiAlgebraicDomain, d: u32) -> Vec<(GeneratorIndex, Polynomial)> {
    let m = domain.num_constraints();
    let n = domain.n_vars();
    let pow_table = |base: &Polynomial| -> Vec<Polynomial> {
        let mut v = vec![Polynomial::one(n)];
        for k in 1..=d as usize {
            let next = &v[k - 1] * base;
            v.push(next);
        }
        v
    };
    let c_pows: Vec<Vec<Polynomial>> = domain.constraints().iter().map(pow_table).collect();
    let one_minus: Vec<Vec<Polynomial>> = domain
        .constraints()
        .iter()
        .map(|c| pow_table(&(&Polynomial::one(n) - c)))
        .collect();

    indices_up_to(2 * m, d)
        .into_iter()
        .map(|flat| {
            let idx = GeneratorIndex::unflatten(&flat).expect("even length");
            let mut g = Polynomial::one(n);
            for j in 0..m {
                let a = idx.alpha.0[j] as usize;
                let b = idx.beta.0[j] as usize;
                if a > 0 {
                    g = &g * &c_pows[j][a];
                }
                if b > 0 {
                    g = &g * &one_minus[j][b];
                }
            }
            (idx, g)
        })
        .collect()
}

/// The equal-degree simplex generators `θ^{α₁..αₙ}(1−Σθ)^{α_{n+1}}`, `|α| = d`.
pub fn simplex_generators(n_vars: usize, d: u32) -> Vec<(MultiIndex, Polynomial)> {
    compositions(n_vars + 1, d)
        .into_iter()
        .map(|a| {
            let g = product_basis_element(&a);
            (a, g)
        })
        .collect()
}

/// Nonnegative generator weights; only strictly positive weights are stored.
///
/// Keys are `(n+1)`-long indices for simplex certificates and flattened
/// `(α, β)` pairs (see [`GeneratorIndex::flatten`]) for general domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub degree: u32,
    pub weights: BTreeMap<MultiIndex, Rational>,
}

impl Certificate {
    pub fn empty(degree: u32) -> Self {
        Certificate {
            degree,
            weights: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Builds a certificate, dropping zeros. Fails on a negative weight.
    pub fn from_weights<I>(degree: u32, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut out = Certificate::empty(degree);
        for (k, w) in weights {
            if w.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "negative weight {w} at {k}"
                )));
            }
            if !w.is_zero() {
                *out.weights.entry(k).or_insert_with(Rational::zero) += w;
            }
        }
        Ok(out)
    }

    /// `Σ u_α θ^{α₁..αₙ}(1−Σθ)^{α_{n+1}}`.
    pub fn expand_simplex(&self, n_vars: usize) -> Result<Polynomial> {
        let mut out = Polynomial::zero(n_vars);
        for (alpha, w) in &self.weights {
            if alpha.len() != n_vars + 1 {
                return Err(Error::DimensionMismatch {
                    expected: n_vars + 1,
                    found: alpha.len(),
                });
            }
            out = &out + &product_basis_element(alpha).scale(w);
        }
        Ok(out)
    }

    /// `Σ u_{αβ} ĉ^α (1−ĉ)^β` on a general domain.
    pub fn expand_on(&self, domain: &SemiAlgebraicDomain) -> Result<Polynomial> {
        let n = domain.n_vars();
        let m = domain.num_constraints();
        let mut out = Polynomial::zero(n);
        for (flat, w) in &self.weights {
            if flat.len() != 2 * m {
                return Err(Error::DimensionMismatch {
                    expected: 2 * m,
                    found: flat.len(),
                });
            }
            let idx = GeneratorIndex::unflatten(flat)?;
            let mut g = Polynomial::one(n);
            for j in 0..m {
                let c = &domain.constraints()[j];
                g = &g * &c.pow(idx.alpha.0[j]);
                g = &g * &(&Polynomial::one(n) - c).pow(idx.beta.0[j]);
            }
            out = &out + &g.scale(w);
        }
        Ok(out)
    }

    /// Sum of two certificates of the same kind; degree is the larger one.
    pub fn merge(&self, other: &Certificate) -> Certificate {
        let mut out = self.clone();
        out.degree = out.degree.max(other.degree);
        for (k, w) in &other.weights {
            *out.weights.entry(k.clone()).or_insert_with(Rational::zero) += w;
        }
        out
    }
}

/// Searches for `u >= 0` with `Σ u·generator = g` over the degree-`d`
/// Krivine-Vasilescu generators of `domain`.
///
/// `None` means "not certified at degree `d`", never "negative".
pub fn cone_membership(
    g: &Polynomial,
    domain: &SemiAlgebraicDomain,
    d: u32,
) -> Result<Option<Certificate>> {
    if g.n_vars() != domain.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: domain.n_vars(),
            found: g.n_vars(),
        });
    }
    let reach = domain.max_generator_degree(d);
    if g.total_degree() > reach {
        return Err(Error::DegreeTooLow {
            required: g.total_degree(),
            given: d,
        });
    }
    let gens = kv_generators(domain, d);
    let Some(weights) = solve_combination(g, &gens.iter().map(|(_, p)| p).collect::<Vec<_>>())?
    else {
        return Ok(None);
    };
    let cert = Certificate::from_weights(
        d,
        gens.iter()
            .zip(weights)
            .map(|((idx, _), w)| (idx.flatten(), w)),
    )?;
    let back = cert.expand_on(domain)?;
    if &back != g {
        return Err(Error::CertificateMismatch(format!(
            "residual {}",
            &back - g
        )));
    }
    Ok(Some(cert))
}

/// Exact LP `Σ u_k p_k = target, u >= 0` (one equality per monomial).
fn solve_combination(target: &Polynomial, parts: &[&Polynomial]) -> Result<Option<Vec<Rational>>> {
    let monomials: BTreeSet<MultiIndex> = parts
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e.clone()))
        .chain(target.terms().map(|(e, _)| e.clone()))
        .collect();
    let mut lp = LinearProgram::new(parts.len());
    for mono in &monomials {
        let row = parts.iter().map(|p| p.coefficient(mono)).collect();
        lp.add_constraint(row, Relation::Equal, target.coefficient(mono));
    }
    match lp.maximize() {
        LpOutcome::Optimal(s) => Ok(Some(s.values)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Membership in the equal-degree simplex cone by a sign check on the
/// degree-`d` product-basis coefficients.
pub fn simplex_membership(g: &Polynomial, d: u32) -> Result<Option<Certificate>> {
    let form = to_bernstein_form(g, d)?;
    if !form.is_nonnegative() {
        return Ok(None);
    }
    let cert =
        Certificate::from_weights(d, form.coefficients().map(|(a, c)| (a.clone(), c.clone())))?;
    Ok(Some(cert))
}

/// Least `ε >= 0` with `f + ε` in the degree-`d` simplex cone:
/// `max(0, max_α −b_α / multinomial(α))`.
pub fn pullup_epsilon(f: &Polynomial, d: u32) -> Result<Rational> {
    let form = to_bernstein_form(f, d)?;
    let worst = -form.min_normalized();
    Ok(if worst.is_positive() {
        worst
    } else {
        Rational::zero()
    })
}

/// Least `ε >= 0` with `f + ε` certified on a general domain at degree `d`,
/// or `None` if no shift works at this degree.
pub fn general_pullup_epsilon(
    f: &Polynomial,
    domain: &SemiAlgebraicDomain,
    d: u32,
) -> Result<Option<Rational>> {
    if f.total_degree() > domain.max_generator_degree(d) {
        return Err(Error::DegreeTooLow {
            required: f.total_degree(),
            given: d,
        });
    }
    let gens = kv_generators(domain, d);
    let n = domain.n_vars();
    let zero = MultiIndex::zeros(n);
    let monomials: BTreeSet<MultiIndex> = gens
        .iter()
        .flat_map(|(_, p)| p.terms().map(|(e, _)| e.clone()))
        .chain(f.terms().map(|(e, _)| e.clone()))
        .chain(std::iter::once(zero.clone()))
        .collect();
    // variable 0 is ε, then one weight per generator
    let mut lp = LinearProgram::new(gens.len() + 1);
    lp.set_objective(0, Rational::from_integer((-1).into()));
    for mono in &monomials {
        let mut row = Vec::with_capacity(gens.len() + 1);
        row.push(if *mono == zero {
            Rational::from_integer((-1).into())
        } else {
            Rational::zero()
        });
        row.extend(gens.iter().map(|(_, p)| p.coefficient(mono)));
        lp.add_constraint(row, Relation::Equal, f.coefficient(mono));
    }
    match lp.maximize() {
        LpOutcome::Optimal(s) => Ok(Some(s.values[0].clone())),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("ε >= 0 bounds the objective"),
    }
}

/// Outcome of checking the pullup property on every `±` monomial basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct PullupReport {
    pub degree: u32,
    /// `(monomial, sign, ε)`; `ε = None` marks a failure.
    pub entries: Vec<(MultiIndex, i8, Option<Rational>)>,
}

impl PullupReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|(_, _, e)| e.is_some())
    }
}

/// Checks the pullup property empirically on `±x^γ` for all monomials whose
/// degree the degree-`d` cone can express.
pub fn verify_pullup(domain: &SemiAlgebraicDomain, d: u32) -> Result<PullupReport> {
    let n = domain.n_vars();
    let reach = domain.max_generator_degree(d);
    let mut entries = Vec::new();
    for gamma in indices_up_to(n, reach) {
        let b = Polynomial::monomial(n, gamma.clone(), Rational::from_integer(1.into()));
        for sign in [1i8, -1] {
            let f = if sign > 0 { b.clone() } else { -&b };
            entries.push((gamma.clone(), sign, general_pullup_epsilon(&f, domain, d)?));
        }
    }
    Ok(PullupReport { degree: d, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{int, rat};

    fn idx(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn counter_example() -> Polynomial {
        let t1 = Polynomial::var(2, 0);
        let t2 = Polynomial::var(2, 1);
        &(&(&t1 * &t1) - &(&t1 * &t2)) + &(&t2 * &t2)
    }

    #[test]
    fn simplex_constraints_are_already_normalized() {
        let d = SemiAlgebraicDomain::simplex(2);
        assert_eq!(d.constraints(), d.raw_constraints());
    }

    #[test]
    fn scaling_and_zero_sup() {
        let x = Polynomial::var(1, 0);
        let two_x = x.scale(&int(2));
        let d = SemiAlgebraicDomain::normalize(vec![two_x.clone()], vec![int(2)]).unwrap();
        assert_eq!(d.constraints()[0], x);
        let d = SemiAlgebraicDomain::normalize(vec![two_x.clone()], vec![int(0)]).unwrap();
        assert_eq!(d.constraints()[0], two_x);
        assert!(matches!(
            SemiAlgebraicDomain::normalize(vec![two_x], vec![int(-1)]),
            Err(Error::NegativeSup { index: 0, .. })
        ));
    }

    #[test]
    fn generator_enumeration() {
        let d = SemiAlgebraicDomain::normalize(vec![Polynomial::var(1, 0)], vec![int(1)]).unwrap();
        let gens = kv_generators(&d, 1);
        let polys: Vec<_> = gens.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(polys.len(), 3);
        assert!(polys.contains(&Polynomial::one(1)));
        assert!(polys.contains(&Polynomial::var(1, 0)));
        assert!(polys.contains(&Polynomial::one_minus_sum(1)));
        assert_eq!(kv_generators(&d, 0).len(), 1);

        // C(2m + d, d)
        let s = SemiAlgebraicDomain::simplex(2);
        assert_eq!(kv_generators(&s, 2).len(), 28);

        let six = simplex_generators(2, 2);
        assert_eq!(six.len(), 6);
        assert_eq!(six[0].1, Polynomial::one_minus_sum(2).pow(2));
    }

    #[test]
    fn generator_is_its_own_certificate() {
        let s = SemiAlgebraicDomain::simplex(1);
        let g = &Polynomial::var(1, 0) * &Polynomial::one_minus_sum(1);
        let cert = simplex_membership(&g, 2).unwrap().unwrap();
        assert_eq!(cert.weights.len(), 1);
        assert_eq!(cert.weights[&idx(&[1, 1])], int(1));
        let general = cone_membership(&g, &s, 2).unwrap().unwrap();
        assert_eq!(general.expand_on(&s).unwrap(), g);
    }

    #[test]
    fn counter_example_is_never_certified() {
        let q = counter_example();
        let s = SemiAlgebraicDomain::simplex(2);
        for d in 2..=6 {
            assert!(
                simplex_membership(&q, d).unwrap().is_none(),
                "simplex d={d}"
            );
        }
        for d in 2..=4 {
            assert!(cone_membership(&q, &s, d).unwrap().is_none(), "kv d={d}");
        }
    }

    #[test]
    fn minus_one_is_never_certified() {
        let s = SemiAlgebraicDomain::simplex(2);
        let m1 = Polynomial::constant(2, int(-1));
        for d in 0..=3 {
            assert!(cone_membership(&m1, &s, d).unwrap().is_none());
            assert!(simplex_membership(&m1, d).unwrap().is_none());
        }
        let box_dom = SemiAlgebraicDomain::normalize(
            vec![Polynomial::var(1, 0), Polynomial::one_minus_sum(1)],
            vec![int(1), int(1)],
        )
        .unwrap();
        assert!(
            cone_membership(&Polynomial::constant(1, int(-1)), &box_dom, 2)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn constant_one_has_multinomial_weights() {
        let cert = simplex_membership(&Polynomial::one(2), 2).unwrap().unwrap();
        let got: Vec<_> = cert.weights.values().cloned().collect();
        // (0,0,2) (0,1,1) (0,2,0) (1,0,1) (1,1,0) (2,0,0)
        assert_eq!(got, vec![int(1), int(2), int(1), int(2), int(2), int(1)]);
        assert!(simplex_membership(&Polynomial::zero(2), 2)
            .unwrap()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn degree_errors() {
        let p = Polynomial::var(1, 0).pow(3);
        assert!(matches!(
            simplex_membership(&p, 2),
            Err(Error::DegreeTooLow { .. })
        ));
        let s = SemiAlgebraicDomain::simplex(1);
        assert!(matches!(
            cone_membership(&p, &s, 2),
            Err(Error::DegreeTooLow { .. })
        ));
        assert!(matches!(
            pullup_epsilon(&p, 1),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn pullup_examples() {
        assert_eq!(pullup_epsilon(&Polynomial::var(1, 0), 1).unwrap(), int(0));
        assert_eq!(pullup_epsilon(&-&Polynomial::var(1, 0), 1).unwrap(), int(1));
        assert_eq!(pullup_epsilon(&counter_example(), 2).unwrap(), rat(1, 2));
    }

    #[test]
    fn general_pullup_matches_simplex_closed_form() {
        let s = SemiAlgebraicDomain::simplex(2);
        let q = counter_example();
        assert_eq!(general_pullup_epsilon(&q, &s, 2).unwrap(), Some(rat(1, 2)));
        let report = verify_pullup(&s, 1).unwrap();
        assert!(report.holds());
        assert_eq!(report.entries.len(), 6);
    }

    #[test]
    fn interval_domain_certificate() {
        // Ω = [0, 2] via c = x(2 − x) with sup 1: ĉ = 2x − x²
        let x = Polynomial::var(1, 0);
        let c = &x * &(&Polynomial::constant(1, int(2)) - &x);
        let dom = SemiAlgebraicDomain::normalize(vec![c.clone()], vec![int(1)]).unwrap();
        // (1 − ĉ) = (1 − x)² is certified at degree 1
        let target = (&Polynomial::one(1) - &x).pow(2);
        let cert = cone_membership(&target, &dom, 1).unwrap().unwrap();
        assert_eq!(cert.expand_on(&dom).unwrap(), target);

        let bbox = BoundingBox {
            lower: vec![int(0)],
            upper: vec![int(2)],
        };
        assert!(normalization_violations(&dom, &bbox, 16)
            .unwrap()
            .is_empty());
        let warnings = check_sups(std::slice::from_ref(&c), &[rat(1, 2)], &bbox).unwrap();
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].grid_estimate, int(1));
        assert!(check_sups(&[c], &[int(1)], &bbox).unwrap().is_empty());
    }
}
