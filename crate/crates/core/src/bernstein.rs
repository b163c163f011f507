//! The degree-`d` simplex product basis
//! `θ₁^{α₁}⋯θₙ^{αₙ}(1−θ₁−⋯−θₙ)^{α_{n+1}}`, `|α| = d`.
//!
//! Basis elements carry no binomial factor. The normalized Bernstein
//! polynomial `B_{α,d}` is `multinomial(α)` times the product basis element,
//! so normalized coefficients are `b_α / multinomial(α)` and share signs with
//! `b_α`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{compositions, multinomial, MultiIndex, Polynomial, Rational};

/// The plain product `θ^{α₁..αₙ} (1−Σθ)^{α_{n+1}}` for an `(n+1)`-long index.
pub fn bernstein_generator(alpha: &MultiIndex, n_vars: usize, degree: u32) -> Result<Polynomial> {
    if alpha.len() != n_vars + 1 {
        return Err(Error::DimensionMismatch {
            expected: n_vars + 1,
            found: alpha.len(),
        });
    }
    if alpha.degree() != degree {
        return Err(Error::IndexDegree {
            index: alpha.0.clone(),
            expected: degree,
            found: alpha.degree(),
        });
    }
    Ok(product_basis_element(alpha))
}

/// Same as [`bernstein_generator`] without the degree check.
pub(crate) fn product_basis_element(alpha: &MultiIndex) -> Polynomial {
    let n = alpha.len() - 1;
    let head = MultiIndex(alpha.0[..n].to_vec());
    let mono = Polynomial::monomial(n, head, Rational::from_integer(1.into()));
    let tail = alpha.0[n];
    if tail == 0 {
        mono
    } else {
        &mono * &Polynomial::one_minus_sum(n).pow(tail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernsteinForm {
    n_vars: usize,
    degree: u32,
    /// Every `α` with `|α| = degree` is present, zeros included.
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl BernsteinForm {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Rational {
        self.coeffs
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(α, b_α)` over the whole basis, lexicographic in `α`.
    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient with respect to `B_{α,d}`, i.e. `b_α / multinomial(α)`.
    pub fn normalized_coefficient(&self, alpha: &MultiIndex) -> Rational {
        self.coefficient(alpha) / Rational::from_integer(multinomial(alpha))
    }

    pub fn min_normalized(&self) -> Rational {
        self.coeffs
            .keys()
            .map(|a| self.normalized_coefficient(a))
            .min()
            .unwrap_or_else(Rational::zero)
    }

    pub fn max_normalized(&self) -> Rational {
        self.coeffs
            .keys()
            .map(|a| self.normalized_coefficient(a))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Sums `b_α · generator(α)` back into monomial form.
    pub fn expand(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n_vars);
        for (alpha, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            out = &out + &product_basis_element(alpha).scale(c);
        }
        out
    }

    /// Re-expresses the same polynomial at a higher degree by multiplying with
    /// the partition of unity `(θ₁+⋯+θₙ+(1−Σθ))^{target−d}`.
    pub fn elevate(&self, target: u32) -> Result<BernsteinForm> {
        if target < self.degree {
            return Err(Error::DegreeTooLow {
                required: self.degree,
                given: target,
            });
        }
        let mut coeffs = empty_basis(self.n_vars, target);
        let lift = compositions(self.n_vars + 1, target - self.degree);
        for (alpha, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            for beta in &lift {
                let m = Rational::from_integer(multinomial(beta));
                *coeffs.get_mut(&alpha.add(beta)).expect("basis index") += c * m;
            }
        }
        Ok(BernsteinForm {
            n_vars: self.n_vars,
            degree: target,
            coeffs,
        })
    }
}

fn empty_basis(n_vars: usize, degree: u32) -> BTreeMap<MultiIndex, Rational> {
    compositions(n_vars + 1, degree)
        .into_iter()
        .map(|a| (a, Rational::zero()))
        .collect()
}

/// Coefficients of `p` in the degree-`d` product basis.
///
/// Each monomial `θ^γ` of degree `ℓ` is multiplied by the multinomial
/// expansion of `(θ₁+⋯+θₙ+(1−Σθ))^{d−ℓ}`; every resulting product
/// `θ^γ · θ^β (1−Σθ)^{β_{n+1}}` is a basis element, so the coefficients can be
/// read off directly.
pub fn to_bernstein_form(p: &Polynomial, d: u32) -> Result<BernsteinForm> {
    let deg = p.total_degree();
    if deg > d {
        return Err(Error::DegreeTooLow {
            required: deg,
            given: d,
        });
    }
    let n = p.n_vars();
    let mut coeffs = empty_basis(n, d);
    let mut lifts: BTreeMap<u32, Vec<(MultiIndex, Rational)>> = BTreeMap::new();
    for (gamma, c) in p.terms() {
        let rest = d - gamma.degree();
        let lift = lifts.entry(rest).or_insert_with(|| {
            compositions(n + 1, rest)
                .into_iter()
                .map(|b| {
                    let m = Rational::from_integer(multinomial(&b));
                    (b, m)
                })
                .collect()
        });
        let mut padded = gamma.0.clone();
        padded.push(0);
        let padded = MultiIndex(padded);
        for (beta, m) in lift.iter() {
            *coeffs.get_mut(&padded.add(beta)).expect("basis index") += c * m;
        }
    }
    Ok(BernsteinForm {
        n_vars: n,
        degree: d,
        coeffs,
    })
}
