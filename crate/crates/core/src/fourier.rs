//! The Fourier transform `D(X_n) → B_Sen^n`, `μ ↦ μ(exp(Tϑ)) = Σ μ(ϑ^k)/k! T^k`.
//!
//! Elements of `B_Sen` are truncated power series `Σ b_k T^k` with a
//! certificate `|b_k| p^{-kn} <= p^q` for all `k`, so that the radius of
//! convergence is at least `p^{-n}`. Galois elements act on coefficients and
//! by `T ↦ T + log_p χ(g)`. The derivative `d/dT` corresponds to `Θ`; note that
//! with this convention `Θ` is the negative of the operator of the same name
//! in Colmez's work on Sen theory.

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::distribution::BoundedDistribution;
use crate::error::{Error, Result};
use crate::galois::GaloisElement;
use crate::padic::{FieldDesc, PadicElement};
use crate::series::{
    absorb_error, cauchy, common_field, max_norm, mul_norm, norm_bound_exp, promote_all, taylor_shift,
};
use crate::weight::level_radius;

#[derive(Clone, Debug)]
pub struct BSenElement {
    field: FieldDesc,
    coeffs: Vec<PadicElement>,
    filtration: u32,
    bound: Option<Rational64>,
    /// The stored coefficients are the whole series.
    polynomial: bool,
}

fn r(k: usize) -> Rational64 {
    Rational64::from_integer(k as i64)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(j))
}

impl BSenElement {
    /// `Σ b_k T^k` with `|b_k| p^{-kn} <= p^bound` asserted for every `k`;
    /// the stored coefficients are checked.
    pub fn new(
        field: &FieldDesc,
        coeffs: Vec<PadicElement>,
        filtration: u32,
        bound: Option<Rational64>,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("at least one coefficient is required".into()));
        }
        let field = common_field(field, &coeffs)?;
        let coeffs = promote_all(&field, &coeffs)?;
        let n = Rational64::from_integer(filtration as i64);
        for (k, b) in coeffs.iter().enumerate() {
            let Some(v) = b.val().exact() else { continue };
            let size = -v - n * r(k);
            if !bound.is_some_and(|q| size <= q) {
                return Err(Error::CertViolation(format!(
                    "|b_{k}| p^(-k n) = p^({size}) exceeds the radius certificate"
                )));
            }
        }
        Ok(BSenElement {
            field,
            coeffs,
            filtration,
            bound,
            polynomial: false,
        })
    }

    /// A polynomial in `T`, certified with the smallest constant that covers
    /// its coefficients.
    pub fn polynomial(field: &FieldDesc, coeffs: Vec<PadicElement>, filtration: u32) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("at least one coefficient is required".into()));
        }
        let field = common_field(field, &coeffs)?;
        let coeffs = promote_all(&field, &coeffs)?;
        let n = Rational64::from_integer(filtration as i64);
        let bound = coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, b)| b.val().exact().map(|v| -v - n * r(k)))
            .fold(None, |acc, q| max_norm(acc, Some(q)));
        Ok(BSenElement {
            field,
            coeffs,
            filtration,
            bound,
            polynomial: true,
        })
    }

    pub fn constant(c: PadicElement) -> Self {
        let field = c.field().clone();
        Self::polynomial(&field, vec![c], 0).expect("one coefficient")
    }

    /// `exp(cT)` in `B_Sen^n`, which needs `v(c) >= 1/(p-1) - n`.
    pub fn exp_series(c: &PadicElement, filtration: u32, degree: usize) -> Result<Self> {
        let field = c.field().clone();
        let w = level_radius(field.p(), filtration);
        if c.val().lower_bound() < -w {
            return Err(Error::CertViolation(format!(
                "exp(cT) with v(c) = {} has radius below p^-{filtration}",
                c.val()
            )));
        }
        let mut coeffs = vec![PadicElement::one(&field)];
        for k in 1..=degree {
            let next = (&coeffs[k - 1] * c).div_i64(k as i64);
            coeffs.push(next);
        }
        Ok(BSenElement {
            field,
            coeffs,
            filtration,
            bound: Some(0.into()),
            polynomial: false,
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[PadicElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn filtration(&self) -> u32 {
        self.filtration
    }

    pub fn bound_exp(&self) -> Option<Rational64> {
        self.bound
    }

    /// Whether the stored coefficients are the complete series.
    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    /// Product in `B_Sen`; the filtration is the larger of the two.
    pub fn multiply(&self, other: &BSenElement) -> Result<BSenElement> {
        let field = common_field(&self.field, &[PadicElement::zero(&other.field)])?;
        let a = promote_all(&field, &self.coeffs)?;
        let b = promote_all(&field, &other.coeffs)?;
        let polynomial = self.polynomial && other.polynomial;
        let upto = match (self.polynomial, other.polynomial) {
            (true, true) => self.degree() + other.degree(),
            (true, false) => other.degree(),
            (false, true) => self.degree(),
            (false, false) => self.degree().min(other.degree()),
        };
        Ok(BSenElement {
            coeffs: cauchy(&field, &a, &b, upto),
            field,
            filtration: self.filtration.max(other.filtration),
            bound: mul_norm(self.bound, other.bound),
            polynomial,
        })
    }

    /// Formal derivative `d/dT`.
    pub fn derivative(&self) -> BSenElement {
        let coeffs = if self.coeffs.len() < 2 {
            vec![PadicElement::zero(&self.field)]
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, b)| b.mul_i64(k as i64))
                .collect()
        };
        BSenElement {
            field: self.field.clone(),
            coeffs,
            filtration: self.filtration,
            bound: self.bound.map(|q| q + Rational64::from_integer(self.filtration as i64)),
            polynomial: self.polynomial,
        }
    }

    /// Colmez's action: `g` on the coefficients, then `T ↦ T + log_p χ(g)`.
    ///
    /// The coefficients beyond the truncation feed every shifted coefficient;
    /// the certificate bounds their contribution, which is absorbed into the
    /// precision of the result.
    pub fn colmez_action(&self, g: &GaloisElement) -> Result<BSenElement> {
        let floor = g.level_floor();
        if self.filtration > floor {
            return Err(Error::LevelMismatch(format!(
                "g lies in G_{floor} only, cannot act on B_Sen^{}",
                self.filtration
            )));
        }
        let c = g.log_chi()?;
        let moved = self.coeffs.iter().map(|b| g.act(b)).collect::<Result<Vec<_>>>()?;
        let field = common_field(&self.field, &moved)?;
        let moved = promote_all(&field, &moved)?;
        let c = c.promote(&field)?;
        let mut coeffs = taylor_shift(&field, &moved, &c);
        let n = Rational64::from_integer(self.filtration as i64);
        let delta = c.val().lower_bound() - n;
        let d = self.degree();
        if !self.polynomial {
            for (j, b) in coeffs.iter_mut().enumerate() {
                let err = self.bound.map(|q| q + n * r(j) - delta * r(d + 1 - j));
                *b = absorb_error(b, err);
            }
        }
        Ok(BSenElement {
            field,
            coeffs,
            filtration: self.filtration,
            bound: self.bound,
            polynomial: self.polynomial,
        })
    }

    /// Coefficientwise equality at the tracked precision on the common range.
    pub fn eq_at_prec(&self, other: &BSenElement) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.eq_at_prec(b))
    }

    /// Largest certified size `|b_k| p^{-kn}` among the stored coefficients,
    /// precision-zero ones bounded by their precision.
    pub fn stored_size(&self) -> Rational64 {
        let n = Rational64::from_integer(self.filtration as i64);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, b)| norm_bound_exp(b) - n * r(k))
            .fold(Rational64::from_integer(i64::MIN / 4), |a, b| a.max(b))
    }
}

/// `F_n(μ) = Σ μ(ϑ^k)/k! T^k`, landing in `B_Sen^n` with the same constant.
pub fn fourier(mu: &BoundedDistribution) -> BSenElement {
    let coeffs = mu
        .moments()
        .iter()
        .enumerate()
        .map(|(k, x)| x.div_int(&factorial(k)))
        .collect();
    BSenElement {
        field: mu.field().clone(),
        coeffs,
        filtration: mu.level(),
        bound: mu.bound_exp(),
        polynomial: false,
    }
}

/// The distribution on `X_{n+1}` with moments `k! b_k`, for `P ∈ B_Sen^n`.
pub fn inverse_fourier(pseries: &BSenElement) -> Result<BoundedDistribution> {
    let moments = pseries
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, b)| b.mul_int(&factorial(k)))
        .collect();
    BoundedDistribution::from_moments(&pseries.field, moments, pseries.filtration + 1, pseries.bound)
}

/// The least level `n'` at which the stored moments `k! b_k` satisfy the
/// certificate with the series' own constant. `inverse_fourier` always uses
/// `filtration + 1`, where this is guaranteed.
pub fn minimal_level(pseries: &BSenElement) -> u32 {
    let moments: Vec<PadicElement> = pseries
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, b)| b.mul_int(&factorial(k)))
        .collect();
    (0..=pseries.filtration + 1)
        .find(|&n| {
            let need = BoundedDistribution::minimal_bound(&moments, n);
            max_norm(need, pseries.bound) == pseries.bound
        })
        .unwrap_or(pseries.filtration + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::parse_element;
    use crate::weight::QuotientPoint;

    fn f3() -> FieldDesc {
        FieldDesc::qp(3, 24).unwrap()
    }

    #[test]
    fn fourier_of_identity_is_one() {
        let f = f3();
        let p = fourier(&BoundedDistribution::identity(&f, 1, 10));
        assert!(p.coeffs()[0].eq_at_prec(&PadicElement::one(&f)));
        assert!(p.coeffs()[1..].iter().all(|b| b.is_zero()));
    }

    #[test]
    fn fourier_of_dirac_is_exponential() {
        let f = f3();
        let c = parse_element(&f, "2*p").unwrap();
        let d = BoundedDistribution::dirac(&QuotientPoint::at_level(c.clone(), 0).unwrap(), 0, 20).unwrap();
        let e = BSenElement::exp_series(&c, 0, 20).unwrap();
        assert!(fourier(&d).eq_at_prec(&e));
    }

    #[test]
    fn derivative_examples() {
        let f = f3();
        let one = BSenElement::constant(PadicElement::one(&f));
        assert!(one.derivative().coeffs()[0].is_zero());
        let c = parse_element(&f, "p").unwrap();
        let e = BSenElement::exp_series(&c, 0, 12).unwrap();
        let de = e.derivative();
        for k in 0..12 {
            assert!(de.coeffs()[k].eq_at_prec(&(&c * &e.coeffs()[k])));
        }
    }

    #[test]
    fn exp_series_multiplies() {
        let f = f3();
        let a = parse_element(&f, "p").unwrap();
        let b = parse_element(&f, "5*p^2").unwrap();
        let ea = BSenElement::exp_series(&a, 1, 16).unwrap();
        let eb = BSenElement::exp_series(&b, 1, 16).unwrap();
        let eab = BSenElement::exp_series(&(&a + &b), 1, 16).unwrap();
        assert!(ea.multiply(&eb).unwrap().eq_at_prec(&eab));
    }

    #[test]
    fn inverse_round_trip() {
        let f = f3();
        let c = parse_element(&f, "7").unwrap();
        let e = BSenElement::exp_series(&c, 1, 16).unwrap();
        let mu = inverse_fourier(&e).unwrap();
        assert_eq!(mu.level(), 2);
        for (k, x) in mu.moments().iter().enumerate() {
            assert!(x.eq_at_prec(&c.pow(k as u64)));
        }
        assert!(fourier(&mu).eq_at_prec(&e));
        assert_eq!(minimal_level(&e), 1);
    }

    #[test]
    fn certificate_is_checked() {
        let f = f3();
        let coeffs = vec![PadicElement::one(&f), PadicElement::p_power(&f, -2)];
        assert_eq!(
            BSenElement::new(&f, coeffs.clone(), 1, Some(0.into())).unwrap_err().code(),
            "CERT_VIOLATION"
        );
        assert!(BSenElement::new(&f, coeffs, 2, Some(0.into())).is_ok());
    }

    #[test]
    fn colmez_identity_and_constants() {
        let f = f3();
        let g1 = GaloisElement::identity(&f, 0);
        let e = BSenElement::exp_series(&parse_element(&f, "p").unwrap(), 0, 10).unwrap();
        assert!(e.colmez_action(&g1).unwrap().eq_at_prec(&e));
        let g = GaloisElement::new(parse_element(&f, "1 + p").unwrap(), 0).unwrap();
        let c = BSenElement::constant(parse_element(&f, "11").unwrap());
        let moved = c.colmez_action(&g).unwrap();
        assert!(moved.eq_at_prec(&c));
        assert_eq!(moved.coeffs()[0].abs_prec(), 24.into());
    }
}
