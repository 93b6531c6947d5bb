//! Power series in the disk coordinate `t` of `W⁰_n`, and the change of
//! variables `ϑ = log_p(1+t) / log_p(γ)` to the ball coordinate.
//!
//! Series here are plain truncated coefficient vectors `c_0..c_D` of a
//! formal power series in `t`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{log1p, FieldDesc, PadicElement};
use crate::series::{cauchy, TateSeries};

/// `log_p(1 + t) = Σ_{k>=1} (-1)^{k+1} t^k / k` through degree `degree`.
pub fn log_series(field: &FieldDesc, degree: usize) -> Vec<PadicElement> {
    let mut out = vec![PadicElement::zero(field)];
    for k in 1..=degree {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out.push(PadicElement::from_int(field, sign).div_i64(k as i64));
    }
    out
}

/// `ϑ(1 + t)` as a power series in `t`.
pub fn theta_series(gamma: &PadicElement, field: &FieldDesc, degree: usize) -> Result<Vec<PadicElement>> {
    let lg = log1p(&(gamma - &PadicElement::one(gamma.field())))?.inv()?;
    Ok(log_series(field, degree).iter().map(|c| c * &lg).collect())
}

/// `(1 + t)^s = Σ C(s, k) t^k` for a nonnegative integer `s`.
pub fn binomial_series(field: &FieldDesc, s: u64, degree: usize) -> Vec<PadicElement> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut c = BigInt::from(1);
    let sb = BigInt::from(s);
    for k in 0..=degree {
        if k > 0 {
            c = c * (&sb - BigInt::from(k - 1)) / BigInt::from(k);
        }
        out.push(PadicElement::from_bigint(field, &c));
    }
    out
}

/// `outer(inner(t))` truncated at `degree`; `inner` must have no constant term.
///
/// Summed as `Σ outer[k]·inner^k` with explicit powers: a nested Horner scheme
/// would multiply by the (possibly non-integral) inner series once per degree
/// and lose absolute precision at every step.
pub fn compose(outer: &[PadicElement], inner: &[PadicElement], degree: usize) -> Result<Vec<PadicElement>> {
    let field = inner[0].field().clone();
    if !inner[0].is_zero() {
        return Err(Error::Unsupported("composition needs inner(0) = 0".into()));
    }
    let d = degree.min(outer.len() - 1);
    let mut acc: Vec<PadicElement> = (0..=degree).map(|_| PadicElement::zero(&field)).collect();
    acc[0] = outer[0].clone();
    let mut power = inner.to_vec();
    power.resize_with(degree + 1, || PadicElement::zero(&field));
    for k in 1..=d {
        if k > 1 {
            power = cauchy(&field, &power, inner, degree);
        }
        // inner^k starts in degree k
        for j in k..=degree {
            acc[j] = &acc[j] + &(&outer[k] * &power[j]);
        }
    }
    Ok(acc)
}

/// Both sides of the identity `exp_p(p^n log_p(γ) ϑ(1+t)) = (1+t)^{p^n}` as
/// `t`-series through `degree`: the left side comes from the `ϑ`-series
/// `exp(cϑ)` with `c = p^n log_p(γ)` composed with `ϑ(1+t)`.
pub fn pullback_identity(
    gamma: &PadicElement,
    n: u32,
    degree: usize,
) -> Result<(Vec<PadicElement>, Vec<PadicElement>)> {
    let field = gamma.field().clone();
    let p = field.p();
    let lg = log1p(&(gamma - &PadicElement::one(&field)))?;
    let c = &lg * &PadicElement::p_power(&field, n as i64);
    let e = TateSeries::exp_theta(&c, n, degree)?;
    let th = theta_series(gamma, &field, degree)?;
    let lhs = compose(e.coeffs(), &th, degree)?;
    let rhs = binomial_series(&field, p.pow(n), degree);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::parse_element;

    #[test]
    fn pullback_identity_low_degree() {
        let f = FieldDesc::qp(3, 20).unwrap();
        let gamma = parse_element(&f, "1+p").unwrap();
        let (lhs, rhs) = pullback_identity(&gamma, 1, 12).unwrap();
        for (k, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
            assert!(a.eq_at_prec(b), "degree {k}: {a} vs {b}");
        }
        // (1+t)^3 has degree 3
        assert!(rhs[3].eq_at_prec(&PadicElement::one(&f)));
        assert!(rhs[4].is_zero());
    }

    #[test]
    fn theta_series_has_unit_slope_for_gamma() {
        let f = FieldDesc::qp(3, 20).unwrap();
        let gamma = parse_element(&f, "1+p").unwrap();
        let th = theta_series(&gamma, &f, 4).unwrap();
        // ϑ(1+t) ≈ t / log(γ), and log(1+p) has valuation 1
        assert_eq!(th[1].val().exact(), Some((-1).into()));
    }
}
