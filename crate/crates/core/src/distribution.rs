//! Bounded distributions on `X_n`, stored by their moments `x_k = μ(ϑ^k)`.
//!
//! A bounded distribution is determined by its moments, and a sequence is
//! the moment sequence of one exactly when `|x_k| p^{-k(n - 1/(p-1))}` stays
//! bounded. The bound `C` is kept as an exponent (`C = p^q`, `None` for the
//! zero distribution) and is asserted for every `k`, stored or not.

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::padic::{FieldDesc, PadicElement};
use crate::series::{
    absorb_error, common_field, max_norm, mul_norm, norm_bound_exp, promote_all, TateSeries,
};
use crate::weight::{level_radius, QuotientPoint, WeightPoint};

#[derive(Clone, Debug)]
pub struct BoundedDistribution {
    level: u32,
    field: FieldDesc,
    moments: Vec<PadicElement>,
    bound: Option<Rational64>,
}

fn r(k: usize) -> Rational64 {
    Rational64::from_integer(k as i64)
}

impl BoundedDistribution {
    /// The distribution with the given moments, provided
    /// `|x_k| p^{-k(n - 1/(p-1))} <= p^bound` holds for each of them.
    pub fn from_moments(
        field: &FieldDesc,
        moments: Vec<PadicElement>,
        level: u32,
        bound: Option<Rational64>,
    ) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::Parse("at least one moment is required".into()));
        }
        let field = common_field(field, &moments)?;
        let moments = promote_all(&field, &moments)?;
        let w = level_radius(field.p(), level);
        for (k, x) in moments.iter().enumerate() {
            let Some(v) = x.val().exact() else { continue };
            let size = -v - w * r(k);
            let ok = match bound {
                Some(q) => size <= q,
                None => false,
            };
            if !ok {
                return Err(Error::CertViolation(format!(
                    "|x_{k}| p^(-k w) = p^({size}) exceeds the bound p^({})",
                    bound.map_or("-inf".to_string(), |q| q.to_string())
                )));
            }
        }
        Ok(BoundedDistribution {
            level,
            field,
            moments,
            bound,
        })
    }

    /// Smallest bound exponent certifying the stored moments at `level`.
    pub fn minimal_bound(moments: &[PadicElement], level: u32) -> Option<Rational64> {
        let p = moments.first()?.p();
        let w = level_radius(p, level);
        moments
            .iter()
            .enumerate()
            .filter_map(|(k, x)| x.val().exact().map(|v| -v - w * r(k)))
            .fold(None, |acc, q| max_norm(acc, Some(q)))
    }

    /// Dirac distribution `f ↦ f(ψ)` at a point of `X_n`: moments `ϑ(ψ)^k`, `C = 1`.
    pub fn dirac(point: &QuotientPoint, level: u32, count: usize) -> Result<Self> {
        if point.level() > level {
            return Err(Error::OutsideLevel(format!(
                "point of level {} does not lie in X_{level}",
                point.level()
            )));
        }
        let v = point.value();
        let field = v.field().clone();
        let mut moments = Vec::with_capacity(count + 1);
        let mut acc = PadicElement::one(&field);
        for _ in 0..=count {
            moments.push(acc.clone());
            acc = &acc * v;
        }
        Ok(BoundedDistribution {
            level,
            field,
            moments,
            bound: Some(Rational64::from_integer(0)),
        })
    }

    /// Dirac distribution of a character, through its class in `X_n`.
    pub fn dirac_at(psi: &WeightPoint, level: u32, count: usize) -> Result<Self> {
        let n = psi.classify()?.level;
        if n > level {
            return Err(Error::OutsideLevel(format!(
                "character of level {n} does not lie in W⁰_{level}"
            )));
        }
        let q = QuotientPoint::at_level(psi.theta()?, level)?;
        Self::dirac(&q, level, count)
    }

    /// `μ_1`, the Dirac distribution at the trivial character.
    pub fn identity(field: &FieldDesc, level: u32, count: usize) -> Self {
        Self::dirac(&QuotientPoint::identity(field), level, count).expect("identity lies in every X_n")
    }

    pub fn zero(field: &FieldDesc, level: u32, count: usize) -> Self {
        BoundedDistribution {
            level,
            field: field.clone(),
            moments: (0..=count).map(|_| PadicElement::zero(field)).collect(),
            bound: None,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn moments(&self) -> &[PadicElement] {
        &self.moments
    }

    /// Index `M` of the last stored moment.
    pub fn moment_count(&self) -> usize {
        self.moments.len() - 1
    }

    /// Exponent `q` of the certified bound `C = p^q`.
    pub fn bound_exp(&self) -> Option<Rational64> {
        self.bound
    }

    fn radius(&self) -> Rational64 {
        level_radius(self.field.p(), self.level)
    }

    fn check_level(&self, level: u32, what: &str) -> Result<()> {
        if self.level != level {
            return Err(Error::LevelMismatch(format!(
                "distribution on X_{} and {what} on X_{level}",
                self.level
            )));
        }
        Ok(())
    }

    /// `μ(f) = Σ a_k x_k`. The returned error exponent bounds the part of the
    /// sum that is not stored on either side; the value's precision already
    /// accounts for it.
    pub fn eval(&self, f: &TateSeries) -> Result<(PadicElement, Option<Rational64>)> {
        self.check_level(f.level(), "series")?;
        let field = common_field(&self.field, &[PadicElement::zero(f.field())])?;
        let w = self.radius();
        let k_max = self.moment_count().min(f.degree());
        let mut sum = PadicElement::zero(&field);
        for k in 0..=k_max {
            sum = &sum + &(&f.coeffs()[k] * &self.moments[k]);
        }
        let mut err = mul_norm(f.tail_exp(), self.bound);
        for k in (k_max + 1)..=f.degree() {
            let a = norm_bound_exp(&f.coeffs()[k]) + w * r(k);
            err = max_norm(err, mul_norm(Some(a), self.bound));
        }
        Ok((absorb_error(&sum, err), err))
    }

    /// Convolution: `z_k = Σ C(k, m) x_m y_{k-m}`, with `C = C_μ C_ν`.
    pub fn convolve(&self, other: &BoundedDistribution) -> Result<BoundedDistribution> {
        self.check_level(other.level, "distribution")?;
        let field = common_field(&self.field, &[PadicElement::zero(&other.field)])?;
        let x = promote_all(&field, &self.moments)?;
        let y = promote_all(&field, &other.moments)?;
        let count = self.moment_count().min(other.moment_count());
        let mut z = Vec::with_capacity(count + 1);
        for k in 0..=count {
            let mut s = PadicElement::zero(&field);
            let mut binom = BigInt::from(1);
            for m in 0..=k {
                if m > 0 {
                    binom = binom * BigInt::from(k - m + 1) / BigInt::from(m);
                }
                s = &s + &(&x[m] * &y[k - m]).mul_int(&binom);
            }
            z.push(s);
        }
        Ok(BoundedDistribution {
            level: self.level,
            field,
            moments: z,
            bound: mul_norm(self.bound, other.bound),
        })
    }

    /// The distribution `h ↦ μ(f·h)`, with moments `Σ_j a_j x_{j+k}`.
    ///
    /// Moment `k` misses the terms with `j + k > M` or `j > D`; each of them is
    /// at most `C p^{kw}` times the weighted size of `a_j` (or the tail of `f`),
    /// and that amount is absorbed into the moment's precision.
    pub fn scale_by_function(f: &TateSeries, mu: &BoundedDistribution) -> Result<BoundedDistribution> {
        mu.check_level(f.level(), "series")?;
        let field = common_field(&mu.field, &[PadicElement::zero(f.field())])?;
        let a = promote_all(&field, f.coeffs())?;
        let w = mu.radius();
        let big_m = mu.moment_count();
        let d = f.degree();
        let weighted: Vec<Rational64> = a
            .iter()
            .enumerate()
            .map(|(j, aj)| norm_bound_exp(aj) + w * r(j))
            .collect();
        let mut out = Vec::with_capacity(big_m + 1);
        for k in 0..=big_m {
            let top = d.min(big_m - k);
            let mut s = PadicElement::zero(&field);
            for j in 0..=top {
                s = &s + &(&a[j] * &mu.moments[j + k]);
            }
            let mut missing = f.tail_exp();
            for wj in weighted.iter().skip(top + 1) {
                missing = max_norm(missing, Some(*wj));
            }
            let err = mul_norm(missing, mu.bound).map(|q| q + w * r(k));
            out.push(absorb_error(&s, err));
        }
        Ok(BoundedDistribution {
            level: mu.level,
            field,
            moments: out,
            bound: mul_norm(mu.bound, Some(f.sup_bound())),
        })
    }

    /// `Θμ = (f ↦ μ(ϑ f))`: the moments shift down by one.
    pub fn theta_op(&self) -> Result<BoundedDistribution> {
        if self.moments.len() < 2 {
            return Err(Error::Unsupported("Θ needs at least two stored moments".into()));
        }
        Ok(BoundedDistribution {
            level: self.level,
            field: self.field.clone(),
            moments: self.moments[1..].to_vec(),
            bound: self.bound.map(|q| q + self.radius()),
        })
    }

    /// The image under `D(X_n) → D(X_{n2})`; moments and bound are unchanged.
    pub fn include_level(&self, n2: u32) -> Result<BoundedDistribution> {
        if n2 < self.level {
            return Err(Error::LevelMismatch(format!(
                "cannot include X_{} into X_{n2}",
                self.level
            )));
        }
        Ok(BoundedDistribution {
            level: n2,
            ..self.clone()
        })
    }

    /// Scalar multiple `c·μ`.
    pub fn scale(&self, c: &PadicElement) -> Result<BoundedDistribution> {
        let field = common_field(&self.field, std::slice::from_ref(c))?;
        let moments = promote_all(&field, &self.moments)?.iter().map(|x| x * c).collect();
        Ok(BoundedDistribution {
            level: self.level,
            field,
            moments,
            bound: mul_norm(self.bound, Some(norm_bound_exp(c))),
        })
    }

    /// Keeps the first `count + 1` moments.
    pub fn truncate(&self, count: usize) -> BoundedDistribution {
        let mut d = self.clone();
        d.moments.truncate(count + 1);
        d
    }

    pub(crate) fn map_moments(
        &self,
        g: impl Fn(&PadicElement) -> Result<PadicElement>,
    ) -> Result<BoundedDistribution> {
        let moments = self.moments.iter().map(g).collect::<Result<Vec<_>>>()?;
        let field = common_field(&self.field, &moments)?;
        Ok(BoundedDistribution {
            level: self.level,
            field: field.clone(),
            moments: promote_all(&field, &moments)?,
            bound: self.bound,
        })
    }

    /// Moments agree at the tracked precision on the common stored range.
    pub fn eq_at_prec(&self, other: &BoundedDistribution) -> bool {
        self.level == other.level
            && self.moments.iter().zip(&other.moments).all(|(a, b)| a.eq_at_prec(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::parse_element;

    fn f3() -> FieldDesc {
        FieldDesc::qp(3, 24).unwrap()
    }

    fn el(f: &FieldDesc, s: &str) -> PadicElement {
        parse_element(f, s).unwrap()
    }

    #[test]
    fn identity_has_moments_one_zero() {
        let f = f3();
        let mu = BoundedDistribution::identity(&f, 0, 5);
        assert!(mu.moments()[0].eq_at_prec(&PadicElement::one(&f)));
        assert!(mu.moments()[1..].iter().all(|x| x.is_zero()));
        let m = vec![PadicElement::one(&f), PadicElement::zero(&f), PadicElement::zero(&f)];
        let nu = BoundedDistribution::from_moments(&f, m, 0, Some(0.into())).unwrap();
        assert!(nu.eq_at_prec(&mu));
    }

    #[test]
    fn certificate_violation_is_rejected() {
        let f = f3();
        // level 0, p = 3: |x_1| p^{1/2} <= 1 needs v(x_1) >= 1/2
        let m = vec![PadicElement::one(&f), PadicElement::one(&f)];
        let e = BoundedDistribution::from_moments(&f, m.clone(), 0, Some(0.into())).unwrap_err();
        assert_eq!(e.code(), "CERT_VIOLATION");
        assert!(BoundedDistribution::from_moments(&f, m.clone(), 1, Some(0.into())).is_ok());
        assert!(BoundedDistribution::from_moments(&f, m, 0, Some(Rational64::new(1, 2))).is_ok());
    }

    #[test]
    fn dirac_examples() {
        let f = FieldDesc::new(3, 1, 24).unwrap();
        let tors = crate::weight::torsion_char(&f, 1, 1).unwrap();
        let d = BoundedDistribution::dirac_at(&tors, 1, 4).unwrap();
        assert!(d.eq_at_prec(&BoundedDistribution::identity(&f, 1, 4)));
        let ones = BoundedDistribution::dirac(&QuotientPoint::at_level(PadicElement::one(&f), 1).unwrap(), 1, 4)
            .unwrap();
        assert!(ones.moments().iter().all(|x| x.eq_at_prec(&PadicElement::one(&f))));
    }

    #[test]
    fn eval_dirac_on_monomials() {
        let f = f3();
        let q = QuotientPoint::at_level(el(&f, "2 + p"), 1).unwrap();
        let d = BoundedDistribution::dirac(&q, 1, 10).unwrap();
        for k in 0..=10 {
            let (v, _) = d.eval(&TateSeries::monomial(&f, 1, k)).unwrap();
            assert!(v.eq_at_prec(&q.value().pow(k as u64)));
        }
    }

    #[test]
    fn convolution_second_moment() {
        let f = f3();
        let x: Vec<_> = ["1", "p", "p^2 + 1", "0"].iter().map(|s| el(&f, s)).collect();
        let y: Vec<_> = ["2", "1 - p", "7", "0"].iter().map(|s| el(&f, s)).collect();
        let mu = BoundedDistribution::from_moments(&f, x.clone(), 1, Some(2.into())).unwrap();
        let nu = BoundedDistribution::from_moments(&f, y.clone(), 1, Some(2.into())).unwrap();
        let z = mu.convolve(&nu).unwrap();
        let expect = &(&(&x[2] * &y[0]) + &(&x[1] * &y[1]).mul_i64(2)) + &(&x[0] * &y[2]);
        assert!(z.moments()[2].eq_at_prec(&expect));
        let id = BoundedDistribution::identity(&f, 1, 3);
        assert!(mu.convolve(&id).unwrap().eq_at_prec(&mu));
    }

    #[test]
    fn dirac_convolution_is_point_product() {
        let f = f3();
        let a = QuotientPoint::at_level(el(&f, "1/3"), 2).unwrap();
        let b = QuotientPoint::at_level(el(&f, "5"), 2).unwrap();
        let da = BoundedDistribution::dirac(&a, 2, 12).unwrap();
        let db = BoundedDistribution::dirac(&b, 2, 12).unwrap();
        let dab = BoundedDistribution::dirac(&a.mul(&b).unwrap(), 2, 12).unwrap();
        assert!(da.convolve(&db).unwrap().eq_at_prec(&dab));
    }

    #[test]
    fn theta_op_shifts() {
        let f = f3();
        let id = BoundedDistribution::identity(&f, 0, 6);
        assert!(id.theta_op().unwrap().moments().iter().all(|x| x.is_zero()));
        let q = QuotientPoint::at_level(el(&f, "p"), 0).unwrap();
        let d = BoundedDistribution::dirac(&q, 0, 6).unwrap();
        let t = d.theta_op().unwrap();
        for (k, x) in t.moments().iter().enumerate() {
            assert!(x.eq_at_prec(&q.value().pow(k as u64 + 1)));
        }
    }

    #[test]
    fn scale_by_theta_is_theta_op() {
        let f = f3();
        let q = QuotientPoint::at_level(el(&f, "2*p"), 0).unwrap();
        let d = BoundedDistribution::dirac(&q, 0, 8).unwrap();
        let s = BoundedDistribution::scale_by_function(&TateSeries::theta(&f, 0), &d).unwrap();
        let t = d.theta_op().unwrap();
        for k in 0..8 {
            assert!(s.moments()[k].eq_at_prec(&t.moments()[k]));
        }
        let one = TateSeries::constant(PadicElement::one(&f), 0);
        assert!(BoundedDistribution::scale_by_function(&one, &d).unwrap().eq_at_prec(&d));
    }

    #[test]
    fn include_level_keeps_moments() {
        let f = f3();
        let d = BoundedDistribution::identity(&f, 1, 3);
        assert!(d.include_level(1).unwrap().eq_at_prec(&d));
        let up = d.include_level(3).unwrap();
        assert_eq!(up.level(), 3);
        assert_eq!(d.include_level(0).unwrap_err().code(), "LEVEL_MISMATCH");
    }
}
