//! The Galois action on coefficients, weight points, functions on `X_n` and
//! distributions.
//!
//! A Galois element is represented by its cyclotomic character value
//! `χ(g) ∈ Z_p^×`. On `Q_p(ζ_{p^m})` it acts by `ζ ↦ ζ^{χ(g) mod p^m}`; `scope`
//! is the largest `m` on which the action is requested.
//!
//! On distributions, `(g·μ)(f) = g(μ(f^{g⁻¹} · exp_p(ϑ log_p χ(g))))`. For `ϑ^k`,
//! which has `Q_p` coefficients, this reduces to multiplying `μ` by the
//! function `exp_p(ϑ log_p χ(g))` and then applying `g` to the moments. The
//! logarithm is the one that sends roots of unity to zero, so
//! `log_p χ = log_p ⟨χ⟩`; it only matters at level `0`, where every `χ` is
//! allowed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use crate::distribution::BoundedDistribution;
use crate::error::{Error, Result};
use crate::padic::{angle, log1p, FieldDesc, PadicElement};
use crate::series::TateSeries;
use crate::weight::WeightPoint;

#[derive(Clone, Debug)]
pub struct GaloisElement {
    chi: PadicElement,
    scope: u32,
}

impl GaloisElement {
    pub fn new(chi: PadicElement, scope: u32) -> Result<Self> {
        if chi.field().level() != 0 {
            return Err(Error::ExtensionInput(chi.field().level()));
        }
        if chi.val_e() != Some(0) {
            return Err(Error::NotUnit(format!("χ(g) = {chi} is not a unit")));
        }
        Ok(GaloisElement { chi, scope })
    }

    pub fn identity(field: &FieldDesc, scope: u32) -> Self {
        let q = field.with_level(0).expect("level 0 always exists");
        GaloisElement {
            chi: PadicElement::one(&q),
            scope,
        }
    }

    pub fn chi(&self) -> &PadicElement {
        &self.chi
    }

    pub fn scope(&self) -> u32 {
        self.scope
    }

    /// Largest `n` with `g ∈ G_n`, i.e. `χ(g) ≡ 1 mod p^n`.
    pub fn level_floor(&self) -> u32 {
        let d = &self.chi - &PadicElement::one(self.chi.field());
        let v = d.val().lower_bound();
        v.floor().to_integer().clamp(0, u32::MAX as i64) as u32
    }

    /// `log_p χ(g)`, with `(p-1)`-st roots of unity sent to zero.
    pub fn log_chi(&self) -> Result<PadicElement> {
        let a = angle(&self.chi)?;
        log1p(&(&a - &PadicElement::one(a.field())))
    }

    /// Exponent `a` of the automorphism `ζ_{p^m} ↦ ζ_{p^m}^a`.
    pub fn exponent_mod(&self, m: u32) -> Result<i64> {
        let modulus = BigInt::from(self.chi.p()).pow(m);
        let r = self
            .chi
            .to_integer_residue()
            .ok_or_else(|| Error::NotUnit(format!("χ(g) = {}", self.chi)))?;
        Ok(r.mod_floor(&modulus).to_i64().expect("p^m fits in i64"))
    }

    /// `g ∘ g'`: characters multiply, scopes intersect.
    pub fn compose(&self, other: &GaloisElement) -> GaloisElement {
        GaloisElement {
            chi: &self.chi * &other.chi,
            scope: self.scope.min(other.scope),
        }
    }

    pub fn inverse(&self) -> Result<GaloisElement> {
        Ok(GaloisElement {
            chi: self.chi.inv()?,
            scope: self.scope,
        })
    }

    /// The field automorphism on `Q_p(ζ_{p^m})`, `m <= scope`.
    pub fn act(&self, x: &PadicElement) -> Result<PadicElement> {
        let m = x.field().level();
        if m > self.scope {
            return Err(Error::FieldTooSmall(format!(
                "element of level {m} outside the action's scope {}",
                self.scope
            )));
        }
        if m == 0 {
            return Ok(x.clone());
        }
        x.ext_automorphism(self.exponent_mod(m)?)
    }

    /// `ψ ↦ g ∘ ψ`: the parameter `t` is moved by `g`, the component is kept.
    pub fn act_on_point(&self, psi: &WeightPoint) -> Result<WeightPoint> {
        WeightPoint::new(psi.i(), self.act(psi.t())?, psi.gamma().clone())
    }

    /// `f^g`: since `ϑ` is defined over `Q_p`, `g` acts on the coefficients.
    pub fn act_on_function(&self, f: &TateSeries) -> Result<TateSeries> {
        f.map_coeffs(|a| self.act(a))
    }

    /// `g·μ` for `μ ∈ D(X_n)`, `g ∈ G_n`.
    pub fn act_on_distribution(&self, mu: &BoundedDistribution) -> Result<BoundedDistribution> {
        let floor = self.level_floor();
        if mu.level() > floor {
            return Err(Error::LevelMismatch(format!(
                "g lies in G_{floor} only, cannot act on D(X_{})",
                mu.level()
            )));
        }
        let e = TateSeries::exp_theta(&self.log_chi()?, mu.level(), mu.moment_count())?;
        let scaled = BoundedDistribution::scale_by_function(&e, mu)?;
        scaled.map_moments(|x| self.act(x))
    }

    /// The action of the whole Galois group on `D(X_0)`.
    pub fn act_level0_full(&self, mu: &BoundedDistribution) -> Result<BoundedDistribution> {
        if mu.level() != 0 {
            return Err(Error::LevelMismatch(format!(
                "the full action is defined on D(X_0), got level {}",
                mu.level()
            )));
        }
        self.act_on_distribution(mu)
    }

    /// `exp_p(ϑ(g∘ψ) log_p χ(g))`, the scalar relating `g·μ_ψ` to `μ_{g∘ψ}`.
    pub fn dirac_factor(&self, theta_value: &PadicElement) -> Result<PadicElement> {
        crate::padic::exp(&(theta_value * &self.log_chi()?))
    }

    /// Valuation of `log_p χ(g)`, as a rational.
    pub fn log_chi_valuation(&self) -> Result<Rational64> {
        Ok(self.log_chi()?.val().lower_bound())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::parse_element;
    use crate::weight::torsion_char;

    #[test]
    fn identity_acts_trivially() {
        let f = FieldDesc::new(3, 2, 24).unwrap();
        let g = GaloisElement::identity(&f, 2);
        let x = parse_element(&f, "1 + 2*z + p*z^4").unwrap();
        assert!(g.act(&x).unwrap().eq_at_prec(&x));
        let mu = BoundedDistribution::identity(&f, 1, 8);
        assert!(g.act_on_distribution(&mu).unwrap().eq_at_prec(&mu));
    }

    #[test]
    fn rational_points_are_fixed() {
        let f = FieldDesc::new(3, 2, 24).unwrap();
        let q = f.with_level(0).unwrap();
        let g = GaloisElement::new(parse_element(&q, "1 + p").unwrap(), 2).unwrap();
        let psi = WeightPoint::from_t(parse_element(&f, "p + p^2").unwrap()).unwrap();
        assert!(g.act_on_point(&psi).unwrap().t().eq_at_prec(psi.t()));
    }

    #[test]
    fn torsion_point_moves_to_power() {
        let f = FieldDesc::new(3, 2, 24).unwrap();
        let q = f.with_level(0).unwrap();
        let g = GaloisElement::new(PadicElement::from_int(&q, 4), 2).unwrap();
        let moved = g.act_on_point(&torsion_char(&f, 2, 1).unwrap()).unwrap();
        assert!(moved.t().eq_at_prec(torsion_char(&f, 2, 4).unwrap().t()));
    }

    #[test]
    fn level_floor_and_violation() {
        let q = FieldDesc::qp(3, 24).unwrap();
        let g = GaloisElement::new(parse_element(&q, "1 + p^2").unwrap(), 1).unwrap();
        assert_eq!(g.level_floor(), 2);
        assert_eq!(GaloisElement::new(PadicElement::from_int(&q, 2), 1).unwrap().level_floor(), 0);
        let mu = BoundedDistribution::identity(&q, 3, 4);
        assert_eq!(g.act_on_distribution(&mu).unwrap_err().code(), "LEVEL_MISMATCH");
        assert_eq!(
            GaloisElement::new(PadicElement::from_int(&q, 3), 1).unwrap_err().code(),
            "NOT_UNIT"
        );
    }

    #[test]
    fn teichmuller_chi_acts_trivially_at_level_zero() {
        let q = FieldDesc::qp(3, 24).unwrap();
        let g = GaloisElement::new(PadicElement::from_int(&q, -1), 0).unwrap();
        let x: Vec<_> = ["1", "p", "p + p^2", "5*p^3"].iter().map(|s| parse_element(&q, s).unwrap()).collect();
        let mu = BoundedDistribution::from_moments(&q, x, 0, Some(1.into())).unwrap();
        assert!(g.act_level0_full(&mu).unwrap().eq_at_prec(&mu));
    }
}
