//! Moment states: unit-preserving linear functionals on polynomials, stored by
//! their values `z_γ = L(θ^γ)` on the monomials with `|γ| <= d`.
//!
//! A state is valid when it is nonnegative on every simplex generator
//! `θ^{α₁..αₙ}(1−Σθ)^{α_{n+1}}` with `|α| <= d`. Finitely supported classical
//! models (Dirac mixtures) always give valid states; the two-coin state built
//! in [`bell_state`] is valid but cannot come from any of them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bernstein::product_basis_element;
use crate::coherence::AssessmentSet;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polynomial::{compositions, indices_up_to, rat, MultiIndex, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentState {
    n_vars: usize,
    degree: u32,
    moments: BTreeMap<MultiIndex, Rational>,
}

/// Outcome of [`MomentState::validity`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateValidity {
    pub unit_preserved: bool,
    /// Every generator index `α` with `L(generator) < 0`, with that value.
    pub violations: Vec<(MultiIndex, Rational)>,
}

impl StateValidity {
    pub fn is_valid(&self) -> bool {
        self.unit_preserved && self.violations.is_empty()
    }
}

impl MomentState {
    /// Requires an entry for every `|γ| <= degree` and nothing beyond.
    pub fn new<I>(n_vars: usize, degree: u32, moments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        if n_vars == 0 {
            return Err(Error::InvalidState("n_vars must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for (gamma, z) in moments {
            if gamma.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    found: gamma.len(),
                });
            }
            if gamma.degree() > degree {
                return Err(Error::InvalidState(format!(
                    "moment {gamma} exceeds degree {degree}"
                )));
            }
            if map.insert(gamma.clone(), z).is_some() {
                return Err(Error::InvalidState(format!("moment {gamma} given twice")));
            }
        }
        if let Some(missing) = indices_up_to(n_vars, degree)
            .into_iter()
            .find(|g| !map.contains_key(g))
        {
            return Err(Error::InvalidState(format!("moment {missing} is missing")));
        }
        if !map[&MultiIndex::zeros(n_vars)].is_one() {
            return Err(Error::InvalidState("L(1) must equal 1".into()));
        }
        Ok(MomentState {
            n_vars,
            degree,
            moments: map,
        })
    }

    /// Point evaluation `p ↦ p(point)`.
    pub fn dirac(point: &[Rational], degree: u32) -> Result<Self> {
        DiracMixture::new(vec![(Rational::one(), point.to_vec())])?.moments(degree)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn moment(&self, gamma: &MultiIndex) -> Option<&Rational> {
        self.moments.get(gamma)
    }

    pub fn moments(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.moments.iter()
    }

    /// Returns a copy with one moment replaced.
    pub fn with_moment(&self, gamma: MultiIndex, z: Rational) -> Result<Self> {
        let mut m = self.moments.clone();
        m.insert(gamma, z);
        MomentState::new(self.n_vars, self.degree, m)
    }

    /// `L(p) = Σ coefficient(γ) · z_γ`.
    pub fn expectation(&self, p: &Polynomial) -> Result<Rational> {
        if p.n_vars() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: p.n_vars(),
            });
        }
        let mut total = Rational::zero();
        for (gamma, c) in p.terms() {
            let z = self.moments.get(gamma).ok_or(Error::DegreeTooLow {
                required: gamma.degree(),
                given: self.degree,
            })?;
            total += c * z;
        }
        Ok(total)
    }

    /// Checks `L(1) = 1` and `L(generator_α) >= 0` for every `|α| <= d`.
    pub fn validity(&self) -> StateValidity {
        let unit_preserved = self.moments[&MultiIndex::zeros(self.n_vars)].is_one();
        let violations = indices_up_to(self.n_vars + 1, self.degree)
            .into_iter()
            .filter_map(|alpha| {
                let v = self
                    .expectation(&product_basis_element(&alpha))
                    .expect("generator degree is within the state degree");
                v.is_negative().then_some((alpha, v))
            })
            .collect();
        StateValidity {
            unit_preserved,
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validity().is_valid()
    }

    /// Whether the moments extend to a valid state of degree `target`, i.e.
    /// some choice of `z_γ` for `degree < |γ| <= target` makes every
    /// degree-`target` generator nonnegative.
    pub fn extends_to(&self, target: u32) -> Result<bool> {
        if target < self.degree {
            return Err(Error::DegreeTooLow {
                required: self.degree,
                given: target,
            });
        }
        let unknown: Vec<MultiIndex> = indices_up_to(self.n_vars, target)
            .into_iter()
            .filter(|g| g.degree() > self.degree)
            .collect();
        let col: BTreeMap<&MultiIndex, usize> =
            unknown.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut lp = LinearProgram::new(unknown.len());
        for j in 0..unknown.len() {
            lp.set_free(j);
        }
        for alpha in compositions(self.n_vars + 1, target) {
            let gen = product_basis_element(&alpha);
            let mut row = vec![Rational::zero(); unknown.len()];
            let mut known = Rational::zero();
            for (gamma, c) in gen.terms() {
                match col.get(gamma) {
                    Some(&j) => row[j] = c.clone(),
                    None => known += c * &self.moments[gamma],
                }
            }
            lp.add_constraint(row, Relation::GreaterEq, -known);
        }
        Ok(matches!(lp.maximize(), LpOutcome::Optimal(_)))
    }

    /// Validity plus extendability to degree `d + 2`. Not claimed to be
    /// equivalent to anything stronger.
    pub fn is_valid_strict(&self) -> Result<bool> {
        Ok(self.is_valid() && self.extends_to(self.degree + 2)?)
    }

    /// `L(g) >= 0` for all `g` in the set. The state must be valid.
    pub fn credal_membership(&self, set: &AssessmentSet) -> Result<bool> {
        if !self.is_valid() {
            return Err(Error::InvalidState(
                "state violates generator constraints".into(),
            ));
        }
        for g in set.gambles() {
            if self.expectation(g)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The unique `λ₀` with `L((q − λ₀)π) = 0`, i.e. `L(qπ) / L(π)`.
    pub fn conditional_value(&self, q: &Polynomial, pi: &Polynomial) -> Result<Rational> {
        let denom = self.expectation(pi)?;
        if denom.is_zero() {
            return Err(Error::ZeroLikelihood);
        }
        Ok(self.expectation(&(q * pi))? / denom)
    }

    /// Encodes the state as desirability constraints: `θ^γ − z_γ` and
    /// `z_γ − θ^γ` for every `1 <= |γ| <= d`.
    pub fn to_assessment_set(&self) -> AssessmentSet {
        let mut gambles = Vec::new();
        for (gamma, z) in &self.moments {
            if gamma.degree() == 0 {
                continue;
            }
            let b = Polynomial::monomial(self.n_vars, gamma.clone(), Rational::one());
            let centered = &b - &Polynomial::constant(self.n_vars, z.clone());
            gambles.push(-&centered);
            gambles.push(centered);
        }
        AssessmentSet::with_base_degree(self.n_vars, gambles, self.degree)
            .expect("gambles stay within the state degree")
    }

    /// `(L(θ_{H_r}), L(θ_{H_l}), L(θ_{H_r}²), L(θ_{H_l}²))` for the two-coin
    /// parametrization `θ_{H_r} = θ₁ + θ₂`, `θ_{H_l} = θ₁ + θ₃`.
    pub fn marginal_moments(&self) -> Result<[Rational; 4]> {
        if self.n_vars != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: self.n_vars,
            });
        }
        if self.degree < 2 {
            return Err(Error::DegreeTooLow {
                required: 2,
                given: self.degree,
            });
        }
        let z = |v: [u32; 3]| self.moments[&MultiIndex(v.to_vec())].clone();
        let two = Rational::from_integer(BigInt::from(2));
        Ok([
            z([1, 0, 0]) + z([0, 1, 0]),
            z([1, 0, 0]) + z([0, 0, 1]),
            z([2, 0, 0]) + &two * z([1, 1, 0]) + z([0, 2, 0]),
            z([2, 0, 0]) + &two * z([1, 0, 1]) + z([0, 0, 2]),
        ])
    }
}

/// A finitely supported probability on the closed simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracMixture {
    n_vars: usize,
    atoms: Vec<(Rational, Vec<Rational>)>,
}

impl DiracMixture {
    pub fn new(atoms: Vec<(Rational, Vec<Rational>)>) -> Result<Self> {
        let Some((_, first)) = atoms.first() else {
            return Err(Error::InvalidMixture("no atoms".into()));
        };
        let n_vars = first.len();
        if n_vars == 0 {
            return Err(Error::InvalidMixture(
                "atoms must have at least one coordinate".into(),
            ));
        }
        let mut total = Rational::zero();
        for (w, p) in &atoms {
            if p.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    found: p.len(),
                });
            }
            if w.is_negative() {
                return Err(Error::InvalidMixture(format!("negative weight {w}")));
            }
            let s: Rational = p.iter().sum();
            if p.iter().any(Signed::is_negative) || s > Rational::one() {
                return Err(Error::InvalidMixture("atom outside the simplex".into()));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::InvalidMixture(format!("weights sum to {total}")));
        }
        Ok(DiracMixture { n_vars, atoms })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn atoms(&self) -> &[(Rational, Vec<Rational>)] {
        &self.atoms
    }

    /// `z_γ = Σ_k w_k · x_k^γ` for all `|γ| <= d`.
    pub fn moments(&self, d: u32) -> Result<MomentState> {
        let moments = indices_up_to(self.n_vars, d).into_iter().map(|gamma| {
            let mono = Polynomial::monomial(self.n_vars, gamma.clone(), Rational::one());
            let z = self
                .atoms
                .iter()
                .map(|(w, p)| w * mono.eval(p).expect("atom dimension checked"))
                .sum();
            (gamma, z)
        });
        MomentState::new(self.n_vars, d, moments)
    }
}

pub fn mixture_moments(mixture: &DiracMixture, d: u32) -> Result<MomentState> {
    mixture.moments(d)
}

/// The degree-2 two-coin state with `z₁₀₀ = 1/3`, `z₀₁₀ = z₀₀₁ = 1/6`,
/// `z₂₀₀ = 1/3`, `z₀₁₁ = 1/6` and every other second moment zero.
pub fn bell_state() -> MomentState {
    let entries = [
        ([0, 0, 0], rat(1, 1)),
        ([1, 0, 0], rat(1, 3)),
        ([0, 1, 0], rat(1, 6)),
        ([0, 0, 1], rat(1, 6)),
        ([2, 0, 0], rat(1, 3)),
        ([0, 2, 0], rat(0, 1)),
        ([0, 0, 2], rat(0, 1)),
        ([1, 1, 0], rat(0, 1)),
        ([1, 0, 1], rat(0, 1)),
        ([0, 1, 1], rat(1, 6)),
    ];
    MomentState::new(
        3,
        2,
        entries
            .into_iter()
            .map(|(g, z)| (MultiIndex(g.to_vec()), z)),
    )
    .expect("builtin state is complete")
}

/// `−(θ₁+θ₂)² − (θ₁+θ₃)(1 − 2θ₁ − 2θ₂) − ε`, which is `<= −ε` on the simplex.
pub fn bell_gamble(epsilon: &Rational) -> Polynomial {
    let t = |i| Polynomial::var(3, i);
    let h_r = &t(0) + &t(1);
    let h_l = &t(0) + &t(2);
    let two = Rational::from_integer(BigInt::from(2));
    let tail = &Polynomial::one(3) - &h_r.scale(&two);
    let q = &(-&(&h_r * &h_r)) - &(&h_l * &tail);
    &q - &Polynomial::constant(3, epsilon.clone())
}

/// Heads on the right coin, `θ₁ + θ₂`.
pub fn heads_right() -> Polynomial {
    &Polynomial::var(3, 0) + &Polynomial::var(3, 1)
}

/// Heads on the left coin, `θ₁ + θ₃`.
pub fn heads_left() -> Polynomial {
    &Polynomial::var(3, 0) + &Polynomial::var(3, 2)
}

/// Numerator `k` of the atom coordinate `k / 10⁶` closest to `(3 − √3)/6`.
pub const MIXTURE_LOW_NUMER: i64 = 211_325;
/// Numerator `k` of the atom coordinate `k / 10⁶` closest to `(3 + √3)/6`.
pub const MIXTURE_HIGH_NUMER: i64 = 788_675;
pub const MIXTURE_DENOM: i64 = 1_000_000;

/// Two equally weighted atoms on the `HH`/`TT` edge matching the uniform
/// marginals, with the irrational coordinates `(3 ∓ √3)/6` rounded to the
/// nearest multiple of `10⁻⁶`.
pub fn classical_two_atom_mixture() -> DiracMixture {
    let low = rat(MIXTURE_LOW_NUMER, MIXTURE_DENOM);
    let high = rat(MIXTURE_HIGH_NUMER, MIXTURE_DENOM);
    let zero = Rational::zero();
    DiracMixture::new(vec![
        (rat(1, 2), vec![low, zero.clone(), zero.clone()]),
        (rat(1, 2), vec![high, zero.clone(), zero]),
    ])
    .expect("atoms lie on the simplex")
}
