//! Truncated analytic functions on `X_n` in the coordinate `ϑ`.
//!
//! A [`TateSeries`] stores `a_0, …, a_D` and a certificate `q` with
//! `|a_k| p^{k(n - 1/(p-1))} <= p^q` for every `k > D`. Norms are reported as
//! exponents: a value `q` stands for the real number `p^q`, and `None`
//! stands for `0`.
//!
//! The sup-norm on `X_n` is the maximum over `k` of the weighted coefficient
//! sizes `|a_k| p^{k(n - 1/(p-1))}`. Coefficients that are zero at the tracked
//! precision are left out of that maximum.

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::config::DEFAULT_DEGREE;
use crate::error::{Error, Result};
use crate::padic::{FieldDesc, PadicElement};
use crate::weight::{level_radius, QuotientPoint};

#[derive(Clone, Debug)]
pub struct TateSeries {
    level: u32,
    field: FieldDesc,
    coeffs: Vec<PadicElement>,
    tail: Option<Rational64>,
}

/// Maximum of two norm exponents, `None` meaning zero.
pub fn max_norm(a: Option<Rational64>, b: Option<Rational64>) -> Option<Rational64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Product of two norms given as exponents.
pub fn mul_norm(a: Option<Rational64>, b: Option<Rational64>) -> Option<Rational64> {
    Some(a? + b?)
}

/// Norm exponent `-v(x)` of a nonzero element, `None` for precision-zero ones.
pub fn norm_exp(x: &PadicElement) -> Option<Rational64> {
    x.val().exact().map(|v| -v)
}

/// Upper bound on `|x|` that also covers precision-zero elements (`p^{-abs}`).
pub fn norm_bound_exp(x: &PadicElement) -> Rational64 {
    -x.val().lower_bound()
}

/// Lowers the precision of `x` so that an additive error of size `<= p^q`
/// is absorbed.
pub fn absorb_error(x: &PadicElement, q: Option<Rational64>) -> PadicElement {
    match q {
        None => x.clone(),
        Some(q) => {
            let e = x.field().ram_index();
            let abs = (-q * Rational64::from_integer(e)).floor().to_integer();
            x.capped_e(abs)
        }
    }
}

/// Brings a list of elements and a base field into one common field.
pub(crate) fn common_field(base: &FieldDesc, xs: &[PadicElement]) -> Result<FieldDesc> {
    let mut f = base.clone();
    for x in xs {
        if !x.field().same_prime(&f) {
            return Err(Error::Incompatible(format!(
                "coefficients at p = {} and p = {}",
                x.p(),
                f.p()
            )));
        }
        if x.field().level() > f.level() {
            f = f.with_level(x.field().level())?;
        }
    }
    Ok(f)
}

pub(crate) fn promote_all(field: &FieldDesc, xs: &[PadicElement]) -> Result<Vec<PadicElement>> {
    xs.iter().map(|x| x.promote(field)).collect()
}

/// Cauchy product coefficients `c_0..c_upto`.
pub(crate) fn cauchy(
    field: &FieldDesc,
    a: &[PadicElement],
    b: &[PadicElement],
    upto: usize,
) -> Vec<PadicElement> {
    let mut out: Vec<PadicElement> = (0..=upto).map(|_| PadicElement::zero(field)).collect();
    for (i, x) in a.iter().enumerate().take(upto + 1) {
        for (j, y) in b.iter().enumerate().take(upto + 1 - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Coefficients of `f(X + c)` from those of `f(X)`:
/// `b_m = Σ_{k >= m} a_k C(k, m) c^{k-m}`.
pub(crate) fn taylor_shift(field: &FieldDesc, a: &[PadicElement], c: &PadicElement) -> Vec<PadicElement> {
    let d = a.len();
    let mut cpow = Vec::with_capacity(d);
    cpow.push(PadicElement::one(field));
    for j in 1..d {
        cpow.push(&cpow[j - 1] * c);
    }
    let mut out = Vec::with_capacity(d);
    for m in 0..d {
        let mut s = PadicElement::zero(field);
        let mut binom = BigInt::from(1);
        for k in m..d {
            if k > m {
                // C(k, m) = C(k-1, m) · k / (k - m)
                binom = binom * BigInt::from(k) / BigInt::from(k - m);
            }
            s = &s + &(&a[k] * &cpow[k - m]).mul_int(&binom);
        }
        out.push(s);
    }
    out
}

impl TateSeries {
    /// A polynomial `Σ a_k ϑ^k` on `X_n` (no tail).
    pub fn polynomial(field: &FieldDesc, level: u32, coeffs: Vec<PadicElement>) -> Result<Self> {
        Self::with_tail(field, level, coeffs, None)
    }

    /// A truncated series with a caller-supplied tail certificate.
    pub(crate) fn with_tail(
        field: &FieldDesc,
        level: u32,
        coeffs: Vec<PadicElement>,
        tail: Option<Rational64>,
    ) -> Result<Self> {
        let field = common_field(field, &coeffs)?;
        let mut coeffs = promote_all(&field, &coeffs)?;
        if coeffs.is_empty() {
            coeffs.push(PadicElement::zero(&field));
        }
        Ok(TateSeries {
            level,
            field,
            coeffs,
            tail,
        })
    }

    pub fn constant(c: PadicElement, level: u32) -> Self {
        let field = c.field().clone();
        TateSeries {
            level,
            field,
            coeffs: vec![c],
            tail: None,
        }
    }

    /// `ϑ^k` on `X_n`.
    pub fn monomial(field: &FieldDesc, level: u32, k: usize) -> Self {
        let mut coeffs: Vec<PadicElement> = (0..=k).map(|_| PadicElement::zero(field)).collect();
        coeffs[k] = PadicElement::one(field);
        TateSeries {
            level,
            field: field.clone(),
            coeffs,
            tail: None,
        }
    }

    /// The coordinate function `ϑ`.
    pub fn theta(field: &FieldDesc, level: u32) -> Self {
        Self::monomial(field, level, 1)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[PadicElement] {
        &self.coeffs
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Certified bound on the weighted size of the dropped coefficients.
    pub fn tail_exp(&self) -> Option<Rational64> {
        self.tail
    }

    pub fn is_polynomial(&self) -> bool {
        self.tail.is_none()
    }

    fn radius(&self) -> Rational64 {
        level_radius(self.field.p(), self.level)
    }

    /// `|a_k| p^{k(n - 1/(p-1))}` as an exponent; `None` for zero coefficients.
    pub fn weighted_norm(&self, k: usize) -> Option<Rational64> {
        let w = self.radius();
        norm_exp(self.coeffs.get(k)?).map(|q| q + w * Rational64::from_integer(k as i64))
    }

    /// Sound upper bound on the weighted size of `a_k`, precision-zero included.
    fn weighted_bound(&self, k: usize) -> Rational64 {
        norm_bound_exp(&self.coeffs[k]) + self.radius() * Rational64::from_integer(k as i64)
    }

    /// `‖f‖_sup` on `X_n`, as an exponent of `p`.
    pub fn sup_norm(&self) -> Option<Rational64> {
        let stored = (0..self.coeffs.len()).fold(None, |acc, k| max_norm(acc, self.weighted_norm(k)));
        max_norm(stored, self.tail)
    }

    /// Upper bound on the sup-norm that also accounts for coefficients known
    /// only up to their precision.
    pub(crate) fn sup_bound(&self) -> Rational64 {
        let stored = (0..self.coeffs.len())
            .map(|k| self.weighted_bound(k))
            .fold(Rational64::from_integer(i64::MIN / 4), |a, b| a.max(b));
        match self.tail {
            Some(t) => stored.max(t),
            None => stored,
        }
    }

    /// Product on `X_n`.
    pub fn mul(&self, other: &TateSeries) -> Result<TateSeries> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(format!(
                "series at levels {} and {}",
                self.level, other.level
            )));
        }
        let field = common_field(&self.field, &[PadicElement::zero(&other.field)])?;
        let a = promote_all(&field, &self.coeffs)?;
        let b = promote_all(&field, &other.coeffs)?;
        let (da, db) = (self.degree(), other.degree());
        let keep = (da + db).min(da.max(db).max(DEFAULT_DEGREE));
        let full = cauchy(&field, &a, &b, da + db);
        let w = self.radius();
        let cross = max_norm(
            mul_norm(self.tail, Some(other.sup_bound())),
            mul_norm(Some(self.sup_bound()), other.tail),
        );
        // coefficients up to the first tailed degree are exact; above it the
        // tails contribute at most `cross` in the weighted norm
        let exact_upto = match (self.tail, other.tail) {
            (None, None) => usize::MAX,
            (Some(_), None) => da,
            (None, Some(_)) => db,
            (Some(_), Some(_)) => da.min(db),
        };
        let mut tail = cross;
        for (k, c) in full.iter().enumerate().skip(keep + 1) {
            tail = max_norm(tail, Some(norm_bound_exp(c) + w * Rational64::from_integer(k as i64)));
        }
        let full: Vec<PadicElement> = full
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k > exact_upto {
                    absorb_error(&c, cross.map(|q| q - w * Rational64::from_integer(k as i64)))
                } else {
                    c
                }
            })
            .collect();
        let mut coeffs = full;
        coeffs.truncate(keep + 1);
        Ok(TateSeries {
            level: self.level,
            field,
            coeffs,
            tail,
        })
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &PadicElement) -> Result<TateSeries> {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        let tail = mul_norm(self.tail, Some(norm_bound_exp(c)));
        Self::with_tail(&self.field, self.level, coeffs, tail)
    }

    /// `exp_p(c·ϑ) = Σ c^k/k! ϑ^k` on `X_n`, which is bounded by `1` there as
    /// soon as `v(c) >= n`. The tail certificate uses `v(k!) = (k - s_p(k))/(p-1)`.
    pub fn exp_theta(c: &PadicElement, level: u32, degree: usize) -> Result<TateSeries> {
        let field = c.field().clone();
        let p = field.p() as i64;
        let vc = c.val().lower_bound();
        let n = Rational64::from_integer(level as i64);
        if vc < n {
            return Err(Error::ExpDiverges(format!(
                "exp(cϑ) with v(c) = {} is not analytic on X_{level}",
                c.val()
            )));
        }
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut term = PadicElement::one(&field);
        coeffs.push(term.clone());
        for k in 1..=degree {
            term = (&term * c).div_i64(k as i64);
            coeffs.push(term.clone());
        }
        // weighted size of a_k is -(v(c) - n)k - s_p(k)/(p-1), and s_p(k) >= 1
        let delta = vc - n;
        let tail = -(delta * Rational64::from_integer(degree as i64 + 1)) - Rational64::new(1, p - 1);
        Ok(TateSeries {
            level,
            field,
            coeffs,
            tail: Some(tail),
        })
    }

    /// `T_φ f = f(φ · -)`, i.e. the substitution `ϑ ↦ ϑ + ϑ(φ)`.
    pub fn translate(&self, phi: &QuotientPoint) -> Result<TateSeries> {
        if phi.level() > self.level {
            return Err(Error::OutsideLevel(format!(
                "point of level {} translating a series on X_{}",
                phi.level(),
                self.level
            )));
        }
        let field = common_field(&self.field, std::slice::from_ref(phi.value()))?;
        let a = promote_all(&field, &self.coeffs)?;
        let v = phi.value().promote(&field)?;
        let mut coeffs = taylor_shift(&field, &a, &v);
        if let Some(q) = self.tail {
            // the unknown a_k, k > D, feed every b_m by at most p^{q - m w}
            let w = self.radius();
            for (m, b) in coeffs.iter_mut().enumerate() {
                *b = absorb_error(b, Some(q - w * Rational64::from_integer(m as i64)));
            }
        }
        Ok(TateSeries {
            level: self.level,
            field,
            coeffs,
            tail: self.tail,
        })
    }

    /// `f(ψ)` for `ψ` in `X_n`; the value's precision already accounts for
    /// the tail, whose size is returned as the certified error exponent.
    pub fn evaluate(&self, psi: &QuotientPoint) -> Result<(PadicElement, Option<Rational64>)> {
        if psi.level() > self.level {
            return Err(Error::OutsideLevel(format!(
                "point of level {} for a series on X_{}",
                psi.level(),
                self.level
            )));
        }
        let field = common_field(&self.field, std::slice::from_ref(psi.value()))?;
        let v = psi.value().promote(&field)?;
        let mut acc = self.coeffs.last().unwrap().promote(&field)?;
        for a in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * &v) + a;
        }
        Ok((absorb_error(&acc, self.tail), self.tail))
    }

    /// Applies `g` to every coefficient (used by the Galois action).
    pub(crate) fn map_coeffs(
        &self,
        g: impl Fn(&PadicElement) -> Result<PadicElement>,
    ) -> Result<TateSeries> {
        let coeffs = self.coeffs.iter().map(g).collect::<Result<Vec<_>>>()?;
        Self::with_tail(&self.field, self.level, coeffs, self.tail)
    }

    /// Coefficientwise equality at the tracked precision, same level and degree.
    pub fn eq_at_prec(&self, other: &TateSeries) -> bool {
        self.level == other.level
            && self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.eq_at_prec(b))
    }
}
