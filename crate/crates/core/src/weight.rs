//! Points of weight space and the canonical coordinate `ϑ`.
//!
//! A continuous character `ψ` of `Z_p^×` is stored as a pair `(i, t)` with
//! `ψ = τ^i ψ_t`, where `ψ_t(γ) = 1 + t` on the pro-cyclic group `1 + pZ_p`.
//! The disk `W⁰_n` is `v(t) >= 1/(p^{n-1}(p-1))`; the function
//! `ϑ(ψ) = log_p(1 + t) / log_p(γ)` kills `p^n`-torsion and lands in the ball
//! `v >= 1/(p-1) - n`.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::padic::{angle, binom_pow, exp, log1p, teichmuller, FieldDesc, PadicElement};

/// `n - 1/(p-1)`: the ball `X_n` has radius `p` to this power.
pub fn level_radius(p: u64, n: u32) -> Rational64 {
    Rational64::from_integer(n as i64) - Rational64::new(1, p as i64 - 1)
}

/// Valuation lower bound `1/(p^{n-1}(p-1))` cutting out `W⁰_n`.
pub fn disk_threshold(p: u64, n: u32) -> Rational64 {
    let p = p as i64;
    if n == 0 {
        Rational64::new(p, p - 1)
    } else {
        Rational64::new(1, p.pow(n - 1) * (p - 1))
    }
}

/// Least `n >= 0` with `val >= 1/(p-1) - n`, i.e. the smallest ball `X_n` containing
/// a value of valuation `val`.
pub fn minimal_ball_level(p: u64, val: Rational64) -> u32 {
    let mut n = 0u32;
    while val < -level_radius(p, n) {
        n += 1;
    }
    n
}

/// The default topological generator `1 + p` of `1 + pZ_p`.
pub fn default_gamma(field: &FieldDesc) -> PadicElement {
    let q = field.with_level(0).expect("level 0 always exists");
    &PadicElement::one(&q) + &PadicElement::p_power(&q, 1)
}

#[derive(Clone, Debug)]
pub struct WeightPoint {
    i: u64,
    t: PadicElement,
    gamma: PadicElement,
}

/// Output of [`WeightPoint::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub level: u32,
    pub torsion: bool,
}

impl WeightPoint {
    /// `τ^i ψ_t` with `ψ_t(γ) = 1 + t`. `gamma` must be a topological
    /// generator of `1 + pZ_p`, i.e. a `Q_p` element with `v(γ - 1) = 1`.
    pub fn new(i: u64, t: PadicElement, gamma: PadicElement) -> Result<Self> {
        let p = t.p();
        if t.val_floor_e() <= 0 {
            return Err(Error::OutsideDisk(format!("v(t) = {} must be > 0", t.val())));
        }
        check_gamma(&gamma, p)?;
        Ok(WeightPoint {
            i: i % (p - 1),
            t,
            gamma,
        })
    }

    /// `ψ_t` on the identity component with `γ = 1 + p`.
    pub fn from_t(t: PadicElement) -> Result<Self> {
        let g = default_gamma(t.field());
        Self::new(0, t, g)
    }

    /// The trivial character.
    pub fn trivial(field: &FieldDesc) -> Self {
        WeightPoint {
            i: 0,
            t: PadicElement::zero(field),
            gamma: default_gamma(field),
        }
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn t(&self) -> &PadicElement {
        &self.t
    }

    pub fn gamma(&self) -> &PadicElement {
        &self.gamma
    }

    pub fn field(&self) -> &FieldDesc {
        self.t.field()
    }

    /// Same character, parameterised against a different generator `γ'`:
    /// `t' = (1+t)^{log γ' / log γ} - 1`.
    pub fn with_gamma(&self, gamma: PadicElement) -> Result<Self> {
        check_gamma(&gamma, self.t.p())?;
        let s = log1p(&(&gamma - &PadicElement::one(gamma.field())))?.div(&log_gamma(&self.gamma)?)?;
        let t = &binom_pow(&self.t, &s)? - &PadicElement::one(self.t.field());
        Ok(WeightPoint {
            i: self.i,
            t,
            gamma,
        })
    }

    /// Least `n` with `ψ ∈ W⁰_n`, and whether `ψ` restricted to `1 + pZ_p` is torsion.
    ///
    /// A point counts as torsion only when `log_p(1+t)` vanishes at the tracked
    /// precision and `(1+t)^{p^n} = 1` there as well.
    pub fn classify(&self) -> Result<Classification> {
        let p = self.t.p();
        let level = match self.t.val().exact() {
            None => 0,
            Some(v) => {
                let mut n = 0;
                while v < disk_threshold(p, n) {
                    n += 1;
                }
                n
            }
        };
        let torsion = if self.t.is_zero() {
            true
        } else {
            let one = PadicElement::one(self.t.field());
            log1p(&self.t)?.is_zero() && (&(&one + &self.t).pow(p.pow(level)) - &one).is_zero()
        };
        Ok(Classification { level, torsion })
    }

    /// `ϑ(ψ) = log_p(1 + t) / log_p(γ)`. The Teichmüller component is ignored.
    pub fn theta(&self) -> Result<PadicElement> {
        log1p(&self.t)?.div(&log_gamma(&self.gamma)?)
    }

    /// The class of `ψ` in `X_n` for its own level `n`.
    pub fn to_quotient(&self) -> Result<QuotientPoint> {
        QuotientPoint::from_value(self.theta()?)
    }

    /// Evaluates `ψ(x) = τ(x)^i · (1+t)^s` with `s = log⟨x⟩ / log γ`.
    pub fn eval(&self, x: &PadicElement) -> Result<PadicElement> {
        if x.field().level() != 0 {
            return Err(Error::ExtensionInput(x.field().level()));
        }
        let tau = teichmuller(x)?;
        let ang = angle(x)?;
        let one = PadicElement::one(x.field());
        let s = log1p(&(&ang - &one))?.div(&log_gamma(&self.gamma)?)?;
        let tail = binom_pow(&self.t, &s)?;
        Ok(&tau.pow(self.i) * &tail)
    }
}

fn check_gamma(gamma: &PadicElement, p: u64) -> Result<()> {
    if gamma.p() != p || gamma.field().level() != 0 {
        return Err(Error::Incompatible(format!("gamma {gamma} must lie in Q_{p}")));
    }
    let d = gamma - &PadicElement::one(gamma.field());
    if d.val().exact() != Some(Rational64::from_integer(1)) {
        return Err(Error::Incompatible(format!(
            "gamma {gamma} does not generate 1 + pZ_p"
        )));
    }
    Ok(())
}

fn log_gamma(gamma: &PadicElement) -> Result<PadicElement> {
    log1p(&(gamma - &PadicElement::one(gamma.field())))
}

/// Group law: indices add, parameters combine as `t + t' + t t'`.
pub fn mul_points(a: &WeightPoint, b: &WeightPoint) -> Result<WeightPoint> {
    if !a.field().same_prime(b.field()) {
        return Err(Error::Incompatible(format!(
            "characters at p = {} and p = {}",
            a.t.p(),
            b.t.p()
        )));
    }
    if !a.gamma.eq_at_prec(&b.gamma) {
        return Err(Error::Incompatible("points use different generators".into()));
    }
    let t = &(&a.t + &b.t) + &(&a.t * &b.t);
    Ok(WeightPoint {
        i: (a.i + b.i) % (a.t.p() - 1),
        t,
        gamma: a.gamma.clone(),
    })
}

/// `ψ(γ) = ζ_{p^n}^j`, a character of exact order `p^n` on `1 + pZ_p`.
pub fn torsion_char(field: &FieldDesc, n: u32, j: i64) -> Result<WeightPoint> {
    let p = field.p();
    if n == 0 {
        return Err(Error::Unsupported("torsion characters need n >= 1".into()));
    }
    if j.rem_euclid(p as i64) == 0 {
        return Err(Error::NotUnitModPm(format!("j = {j} is divisible by p = {p}")));
    }
    let m = field.level();
    if m < n {
        return Err(Error::FieldTooSmall(format!(
            "ζ_{{p^{n}}} needs cyclotomic level >= {n}, field has {m}"
        )));
    }
    let order = p.pow(m);
    let k = (j.rem_euclid(p.pow(n) as i64) as u64) * p.pow(m - n) % order;
    let t = &PadicElement::zeta_pow(field, k) - &PadicElement::one(field);
    Ok(WeightPoint {
        i: 0,
        t,
        gamma: default_gamma(field),
    })
}

/// A preimage of `x` under `ϑ` in `W⁰_n`, namely `ψ(γ) = exp_p(log_p(γ)·x)`.
///
/// Only the range where this exponential converges is supported,
/// `v(x) > 1/(p-1) - 1`; every other preimage differs by a torsion twist.
pub fn inverse_theta(x: &PadicElement, n: u32, gamma: &PadicElement) -> Result<WeightPoint> {
    let p = x.p();
    check_gamma(gamma, p)?;
    let v = x.val().lower_bound();
    if !x.is_zero() && v < -level_radius(p, n) {
        return Err(Error::OutsideLevel(format!(
            "v(x) = {} is below 1/(p-1) - {n}",
            x.val()
        )));
    }
    if !x.is_zero() && v <= -level_radius(p, 1) {
        return Err(Error::Unsupported(format!(
            "v(x) = {} needs p^{n}-th roots outside the cyclotomic tower",
            x.val()
        )));
    }
    let y = exp(&(&log_gamma(gamma)? * x))?;
    let t = &y - &PadicElement::one(y.field());
    WeightPoint::new(0, t, gamma.clone())
}

/// A point of `X_n`, stored by its `ϑ`-coordinate.
#[derive(Clone, Debug)]
pub struct QuotientPoint {
    value: PadicElement,
    level: u32,
}

impl QuotientPoint {
    /// Places `value` in the smallest ball `X_n` containing it.
    pub fn from_value(value: PadicElement) -> Result<Self> {
        let level = minimal_ball_level(value.p(), value.val().lower_bound());
        Ok(QuotientPoint { value, level })
    }

    /// `value` regarded as a point of `X_n`; fails if it lies outside.
    pub fn at_level(value: PadicElement, n: u32) -> Result<Self> {
        let q = Self::from_value(value)?;
        if q.level > n {
            return Err(Error::OutsideLevel(format!(
                "ϑ-value {} needs level {}, requested {n}",
                q.value, q.level
            )));
        }
        Ok(QuotientPoint { level: n, ..q })
    }

    pub fn identity(field: &FieldDesc) -> Self {
        QuotientPoint {
            value: PadicElement::zero(field),
            level: 0,
        }
    }

    pub fn value(&self) -> &PadicElement {
        &self.value
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Group law on `X_n`: `ϑ` is additive.
    pub fn mul(&self, other: &QuotientPoint) -> Result<QuotientPoint> {
        let v = &self.value + &other.value;
        let q = Self::from_value(v)?;
        let level = q.level.max(self.level).max(other.level);
        Ok(QuotientPoint { level, ..q })
    }
}
