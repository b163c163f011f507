//! Coherence of finite assessment sets over the simplex, lower and upper
//! previsions, the degree hierarchy and updating by partitions of unity.
//!
//! Every problem here is an exact LP whose equality constraints match
//! coefficients in the degree-`d` product basis
//! `θ^{α₁..αₙ}(1−Σθ)^{α_{n+1}}`, one row per `α`. Variables are ordered
//! `λ₀` (when present), then the gamble weights `λᵢ` in assessment order, then
//! the cone weights `u_α` in lexicographic order of `α`. Because the product
//! basis is a basis, `u_α` enters only its own row.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bernstein::{to_bernstein_form, BernsteinForm};
use crate::error::{Error, Result};
use crate::grid::{simplex_grid, step_divisions};
use crate::kv_cone::Certificate;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polynomial::{to_f64, Polynomial, Rational};

/// A finite set of desirable gambles over the `n`-dimensional simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssessmentSet {
    n_vars: usize,
    gambles: Vec<Polynomial>,
    base_degree: u32,
}

impl AssessmentSet {
    pub fn new(n_vars: usize, gambles: Vec<Polynomial>) -> Result<Self> {
        let base = gambles
            .iter()
            .map(Polynomial::total_degree)
            .max()
            .unwrap_or(0);
        AssessmentSet::with_base_degree(n_vars, gambles, base)
    }

    pub fn with_base_degree(
        n_vars: usize,
        gambles: Vec<Polynomial>,
        base_degree: u32,
    ) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidArgument("n_vars must be positive".into()));
        }
        for g in &gambles {
            if g.n_vars() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    found: g.n_vars(),
                });
            }
            if g.total_degree() > base_degree {
                return Err(Error::DegreeTooLow {
                    required: g.total_degree(),
                    given: base_degree,
                });
            }
        }
        Ok(AssessmentSet {
            n_vars,
            gambles,
            base_degree,
        })
    }

    pub fn empty(n_vars: usize) -> Self {
        AssessmentSet {
            n_vars,
            gambles: Vec::new(),
            base_degree: 0,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn gambles(&self) -> &[Polynomial] {
        &self.gambles
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    pub fn len(&self) -> usize {
        self.gambles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gambles.is_empty()
    }

    fn check_gamble(&self, q: &Polynomial) -> Result<()> {
        if q.n_vars() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: q.n_vars(),
            });
        }
        Ok(())
    }

    fn check_degree(&self, d: u32, extra: u32) -> Result<()> {
        let required = self.base_degree.max(extra);
        if d < required {
            return Err(Error::DegreeTooLow { required, given: d });
        }
        Ok(())
    }

    /// `Σ λᵢ gᵢ`.
    pub fn combination(&self, lambda: &[Rational]) -> Polynomial {
        self.gambles
            .iter()
            .zip(lambda)
            .fold(Polynomial::zero(self.n_vars), |acc, (g, l)| {
                &acc + &g.scale(l)
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrevisionResult {
    pub value: Rational,
    pub lambda_weights: Vec<Rational>,
    pub certificate: Certificate,
    pub degree_used: u32,
    pub sense: Sense,
}

impl PrevisionResult {
    /// The polynomial the certificate must reproduce:
    /// `q − value − Σλᵢgᵢ` (lower) or `value − q − Σλᵢgᵢ` (upper).
    pub fn target(&self, q: &Polynomial, set: &AssessmentSet) -> Polynomial {
        let shift = Polynomial::constant(q.n_vars(), self.value.clone());
        let base = match self.sense {
            Sense::Lower => q - &shift,
            Sense::Upper => &shift - q,
        };
        &base - &set.combination(&self.lambda_weights)
    }

    /// Re-expansion residual; the zero polynomial for a valid witness.
    pub fn residual(&self, q: &Polynomial, set: &AssessmentSet) -> Result<Polynomial> {
        Ok(&self.target(q, set) - &self.certificate.expand_simplex(q.n_vars())?)
    }

    /// Residual of the updating identity `(q − value)π − Σλⱼgⱼ = Σu·generator`.
    pub fn update_residual(
        &self,
        q: &Polynomial,
        pi: &Polynomial,
        set: &AssessmentSet,
    ) -> Result<Polynomial> {
        let shifted = q - &Polynomial::constant(q.n_vars(), self.value.clone());
        let lhs = &(&shifted * pi) - &set.combination(&self.lambda_weights);
        Ok(&lhs - &self.certificate.expand_simplex(q.n_vars())?)
    }
}

/// Multipliers and cone certificate showing `−1 − Σλᵢgᵢ ∈ Σ̃_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub lambda_weights: Vec<Rational>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceVerdict {
    pub consistent: bool,
    pub witness: Option<Witness>,
    pub degree: u32,
}

/// Solution of one product-basis LP, split back into its parts.
struct BasisSolution {
    lambda0: Option<Rational>,
    lambda: Vec<Rational>,
    certificate: Certificate,
}

enum BasisOutcome {
    Solved(BasisSolution),
    Infeasible,
    Unbounded,
}

/// Solves `target − λ₀·shift − Σλᵢgᵢ = Σ u_α·generator_α` at degree `d`,
/// maximizing `λ₀` when `shift` is given and checking feasibility otherwise.
fn solve_in_basis(
    target: &Polynomial,
    shift: Option<&Polynomial>,
    set: &AssessmentSet,
    d: u32,
) -> Result<BasisOutcome> {
    let target_form = to_bernstein_form(target, d)?;
    let shift_form = shift.map(|s| to_bernstein_form(s, d)).transpose()?;
    let gamble_forms = set
        .gambles
        .iter()
        .map(|g| to_bernstein_form(g, d))
        .collect::<Result<Vec<BernsteinForm>>>()?;

    let offset = usize::from(shift_form.is_some());
    let k = gamble_forms.len();
    let basis: Vec<_> = target_form.coefficients().map(|(a, _)| a.clone()).collect();
    let width = offset + k + basis.len();

    let mut lp = LinearProgram::new(width);
    if shift_form.is_some() {
        lp.set_free(0);
        lp.set_objective(0, Rational::one());
    }
    for (row_idx, alpha) in basis.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        if let Some(sf) = &shift_form {
            row[0] = sf.coefficient(alpha);
        }
        for (i, gf) in gamble_forms.iter().enumerate() {
            row[offset + i] = gf.coefficient(alpha);
        }
        row[offset + k + row_idx] = Rational::one();
        lp.add_constraint(row, Relation::Equal, target_form.coefficient(alpha));
    }

    let solution = match lp.maximize() {
        LpOutcome::Optimal(s) => s,
        LpOutcome::Infeasible => return Ok(BasisOutcome::Infeasible),
        LpOutcome::Unbounded => return Ok(BasisOutcome::Unbounded),
    };
    let mut values = solution.values.into_iter();
    let lambda0 = if offset == 1 { values.next() } else { None };
    let lambda: Vec<Rational> = values.by_ref().take(k).collect();
    let certificate = Certificate::from_weights(d, basis.into_iter().zip(values))?;
    Ok(BasisOutcome::Solved(BasisSolution {
        lambda0,
        lambda,
        certificate,
    }))
}

/// Decides whether `−1 ∈ posi(G ∪ Σ̃_d)`; the set is consistent exactly when
/// the witness LP is infeasible.
pub fn check_consistency(set: &AssessmentSet, d: u32) -> Result<CoherenceVerdict> {
    set.check_degree(d, 0)?;
    let minus_one = Polynomial::constant(set.n_vars, -Rational::one());
    match solve_in_basis(&minus_one, None, set, d)? {
        BasisOutcome::Infeasible => Ok(CoherenceVerdict {
            consistent: true,
            witness: None,
            degree: d,
        }),
        BasisOutcome::Solved(s) => {
            let residual = &(&minus_one - &set.combination(&s.lambda))
                - &s.certificate.expand_simplex(set.n_vars)?;
            if !residual.is_zero() {
                return Err(Error::CertificateMismatch(format!("residual {residual}")));
            }
            Ok(CoherenceVerdict {
                consistent: false,
                witness: Some(Witness {
                    lambda_weights: s.lambda,
                    certificate: s.certificate,
                }),
                degree: d,
            })
        }
        BasisOutcome::Unbounded => {
            Err(Error::LpAnomaly("feasibility LP reported unbounded".into()))
        }
    }
}

/// `sup λ₀` such that `q − λ₀ − Σλᵢgᵢ ∈ Σ̃_d`, `λᵢ >= 0`.
pub fn lower_prevision(q: &Polynomial, set: &AssessmentSet, d: u32) -> Result<PrevisionResult> {
    set.check_gamble(q)?;
    set.check_degree(d, q.total_degree())?;
    let one = Polynomial::one(set.n_vars);
    match solve_in_basis(q, Some(&one), set, d)? {
        BasisOutcome::Solved(s) => {
            let result = PrevisionResult {
                value: s.lambda0.expect("λ₀ column present"),
                lambda_weights: s.lambda,
                certificate: s.certificate,
                degree_used: d,
                sense: Sense::Lower,
            };
            let residual = result.residual(q, set)?;
            if !residual.is_zero() {
                return Err(Error::CertificateMismatch(format!("residual {residual}")));
            }
            Ok(result)
        }
        BasisOutcome::Unbounded => Err(Error::Unbounded),
        // q − λ₀ is certified for λ₀ small enough, so this cannot happen
        BasisOutcome::Infeasible => Err(Error::LpAnomaly("lower prevision LP infeasible".into())),
    }
}

/// `−lower_prevision(−q)`; the witness satisfies `value − q − Σλᵢgᵢ ∈ Σ̃_d`.
pub fn upper_prevision(q: &Polynomial, set: &AssessmentSet, d: u32) -> Result<PrevisionResult> {
    let mut r = lower_prevision(&-q, set, d)?;
    r.value = -r.value;
    r.sense = Sense::Upper;
    Ok(r)
}

/// Lower previsions for every degree in `d_min..=d_max`, ordered by degree.
pub fn hierarchy(
    q: &Polynomial,
    set: &AssessmentSet,
    d_min: u32,
    d_max: u32,
) -> Result<Vec<(u32, Rational)>> {
    set.check_gamble(q)?;
    set.check_degree(d_min, q.total_degree())?;
    if d_max < d_min {
        return Err(Error::InvalidArgument(format!(
            "empty degree range {d_min}..={d_max}"
        )));
    }
    (d_min..=d_max)
        .into_par_iter()
        .map(|d| lower_prevision(q, set, d).map(|r| (d, r.value)))
        .collect()
}

/// CSV with header `d,value_num,value_den,value_float`.
pub fn hierarchy_csv(rows: &[(u32, Rational)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["d", "value_num", "value_den", "value_float"])
        .expect("in-memory write");
    for (d, v) in rows {
        w.write_record([
            d.to_string(),
            v.numer().to_string(),
            v.denom().to_string(),
            format!("{}", to_f64(v)),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// The degree-1 partition of unity `θ₁, …, θₙ, 1 − Σθ`.
pub fn unit_partition(n_vars: usize) -> Vec<Polynomial> {
    let mut parts: Vec<Polynomial> = (0..n_vars).map(|i| Polynomial::var(n_vars, i)).collect();
    parts.push(Polynomial::one_minus_sum(n_vars));
    parts
}

/// All `2^{n+1} − 2` nonempty proper subset sums of the degree-1 partition of
/// unity, ordered by the subset bitmask (bit `i` selects part `i`).
pub fn subset_sum_partitions(n_vars: usize) -> Vec<Polynomial> {
    let parts = unit_partition(n_vars);
    let full = (1u64 << parts.len()) - 1;
    (1..full)
        .map(|mask| {
            parts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(Polynomial::zero(n_vars), |acc, (_, p)| &acc + p)
        })
        .collect()
}

/// Which likelihoods `updated_lower_prevision_with` accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LikelihoodPolicy {
    /// Only subset sums of the degree-1 partition of unity.
    #[default]
    SubsetSum,
    /// Any nonzero polynomial; the caller vouches that it is nonnegative on
    /// the simplex.
    Any,
}

#[derive(Debug, Clone, PartialEq)]
pub enum UpdateOutcome {
    Bounded(PrevisionResult),
    /// No `λ₀` is feasible.
    Vacuous {
        degree_used: u32,
    },
}

impl UpdateOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            UpdateOutcome::Bounded(r) => Some(&r.value),
            UpdateOutcome::Vacuous { .. } => None,
        }
    }

    pub fn degree_used(&self) -> u32 {
        match self {
            UpdateOutcome::Bounded(r) => r.degree_used,
            UpdateOutcome::Vacuous { degree_used } => *degree_used,
        }
    }
}

/// `sup λ₀` such that `(q − λ₀)π − Σλⱼgⱼ ∈ Σ̃_d`, with `π` a subset sum of
/// the degree-1 partition of unity. The degree is raised to
/// `max(d, deg(qπ), base_degree)` if needed.
pub fn updated_lower_prevision(
    q: &Polynomial,
    pi: &Polynomial,
    set: &AssessmentSet,
    d: u32,
) -> Result<UpdateOutcome> {
    updated_lower_prevision_with(q, pi, set, d, LikelihoodPolicy::SubsetSum)
}

pub fn updated_lower_prevision_with(
    q: &Polynomial,
    pi: &Polynomial,
    set: &AssessmentSet,
    d: u32,
    policy: LikelihoodPolicy,
) -> Result<UpdateOutcome> {
    set.check_gamble(q)?;
    set.check_gamble(pi)?;
    let q_pi = q * pi;
    let degree_used = d
        .max(q_pi.total_degree())
        .max(pi.total_degree())
        .max(set.base_degree);
    match policy {
        LikelihoodPolicy::SubsetSum => {
            if !subset_sum_partitions(set.n_vars).contains(pi) {
                return Err(Error::InvalidLikelihood(format!(
                    "{pi} is not a subset sum of the partition of unity"
                )));
            }
        }
        LikelihoodPolicy::Any => {
            if pi.is_zero() {
                return Err(Error::InvalidLikelihood("zero likelihood".into()));
            }
        }
    }
    if degree_used != d {
        log::debug!("raised update degree from {d} to {degree_used}");
    }
    match solve_in_basis(&q_pi, Some(pi), set, degree_used)? {
        BasisOutcome::Solved(s) => {
            let result = PrevisionResult {
                value: s.lambda0.expect("λ₀ column present"),
                lambda_weights: s.lambda,
                certificate: s.certificate,
                degree_used,
                sense: Sense::Lower,
            };
            let residual = result.update_residual(q, pi, set)?;
            if !residual.is_zero() {
                return Err(Error::CertificateMismatch(format!("residual {residual}")));
            }
            Ok(UpdateOutcome::Bounded(result))
        }
        BasisOutcome::Infeasible => Ok(UpdateOutcome::Vacuous { degree_used }),
        BasisOutcome::Unbounded => Err(Error::Unbounded),
    }
}

/// Result of the brute-force classical prevision over grid atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub value: Rational,
    /// Support of an optimal grid distribution as `(weight, point)`.
    pub atoms: Vec<(Rational, Vec<Rational>)>,
}

impl OracleOutcome {
    /// The heaviest atom; the grid minimizer when there are no assessments.
    pub fn argmin(&self) -> &[Rational] {
        let mut best = &self.atoms[0];
        for a in &self.atoms[1..] {
            if a.0 > best.0 {
                best = a;
            }
        }
        &best.1
    }
}

/// Classical lower prevision restricted to distributions on the simplex grid
/// of step `1/k`: minimize `Σ w_θ q(θ)` over `w >= 0`, `Σw = 1`,
/// `Σ w_θ gᵢ(θ) >= 0`. With no assessments this is the grid minimum of `q`.
pub fn classical_oracle_prevision(
    q: &Polynomial,
    set: &AssessmentSet,
    grid_step: &Rational,
) -> Result<OracleOutcome> {
    set.check_gamble(q)?;
    let k = step_divisions(grid_step).ok_or_else(|| {
        Error::InvalidArgument(format!("grid step {grid_step} is not 1/k with k >= 2"))
    })?;
    let points = simplex_grid(set.n_vars, k);

    if set.is_empty() {
        let mut best: Option<(Rational, &Vec<Rational>)> = None;
        for p in &points {
            let v = q.eval(p)?;
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, p));
            }
        }
        let (value, point) = best.expect("grid is never empty");
        return Ok(OracleOutcome {
            value,
            atoms: vec![(Rational::one(), point.clone())],
        });
    }

    let q_vals = points
        .iter()
        .map(|p| q.eval(p))
        .collect::<Result<Vec<_>>>()?;
    let mut lp = LinearProgram::new(points.len());
    for (j, v) in q_vals.iter().enumerate() {
        lp.set_objective(j, v.clone());
    }
    lp.add_constraint(
        vec![Rational::one(); points.len()],
        Relation::Equal,
        Rational::one(),
    );
    for g in set.gambles() {
        let row = points
            .iter()
            .map(|p| g.eval(p))
            .collect::<Result<Vec<_>>>()?;
        lp.add_constraint(row, Relation::GreaterEq, Rational::zero());
    }
    match lp.minimize() {
        LpOutcome::Optimal(s) => {
            let atoms = s
                .values
                .into_iter()
                .zip(points)
                .filter(|(w, _)| w.is_positive())
                .collect();
            Ok(OracleOutcome {
                value: s.objective,
                atoms,
            })
        }
        LpOutcome::Infeasible => Err(Error::NoGridModel),
        LpOutcome::Unbounded => Err(Error::LpAnomaly("grid LP over a simplex is bounded".into())),
    }
}
