//! Capped-precision elements of `Q_p(ζ_{p^m})`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::FieldDesc;
use crate::error::{Error, Result};

/// Valuation of an element, normalized so that `val(p) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(Rational64),
    /// The element is indistinguishable from zero; only a floor is known.
    AtLeast(Rational64),
}

impl Valuation {
    pub fn exact(&self) -> Option<Rational64> {
        match self {
            Valuation::Exact(v) => Some(*v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// The value itself for exact valuations, the floor otherwise.
    pub fn lower_bound(&self) -> Rational64 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => *v,
        }
    }

    pub fn is_precision_zero(&self) -> bool {
        matches!(self, Valuation::AtLeast(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// An element `p^shift · u` of `Q_p(ζ_{p^m})` known modulo `π^abs`.
///
/// `u` is an integral polynomial in `ζ` whose coefficients are least
/// nonnegative residues modulo `p^{⌈abs/e⌉ - shift}`, and `u` is not divisible
/// by `p`. `abs` and the cached valuation are in units of `1/e`. An element
/// whose known digits all vanish is stored as the zero polynomial and carries
/// only its precision floor.
#[derive(Clone)]
pub struct PadicElement {
    field: FieldDesc,
    shift: i64,
    coeffs: Vec<BigInt>,
    abs: i64,
    val: Option<i64>,
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

impl PadicElement {
    /// Builds and normalizes an element from an arbitrary integer polynomial.
    pub(crate) fn build(field: &FieldDesc, shift: i64, mut coeffs: Vec<BigInt>, abs: i64) -> Self {
        let e = field.ram_index();
        let d = field.degree();
        if coeffs.len() != d {
            field.reduce_poly(&mut coeffs);
            coeffs.resize(d, BigInt::zero());
        }
        let rel = ceil_div(abs, e) - shift;
        if rel <= 0 {
            return Self::zero_at(field, abs);
        }
        let modulus = field.ppow_ref(rel);
        for c in coeffs.iter_mut() {
            if c.is_negative() || *c >= *modulus {
                *c = c.mod_floor(&modulus);
            }
        }
        drop(modulus);
        let vpi = match field.pi_valuation(&coeffs, rel) {
            None => return Self::zero_at(field, abs),
            Some(v) => v,
        };
        if vpi >= abs - e * shift {
            return Self::zero_at(field, abs);
        }
        let k = vpi / e;
        let mut shift = shift;
        if k > 0 {
            let pk = field.ppow(k);
            for c in coeffs.iter_mut() {
                *c = &*c / &pk;
            }
            shift += k;
        }
        let val = e * (shift - k) + vpi;
        PadicElement {
            field: field.clone(),
            shift,
            coeffs,
            abs,
            val: Some(val),
        }
    }

    fn zero_at(field: &FieldDesc, abs: i64) -> Self {
        PadicElement {
            field: field.clone(),
            shift: 0,
            coeffs: vec![BigInt::zero(); field.degree()],
            abs,
            val: None,
        }
    }

    /// Zero known to the field's default precision.
    pub fn zero(field: &FieldDesc) -> Self {
        Self::zero_at(field, field.ram_index() * field.prec())
    }

    /// Zero known to absolute precision `abs` (powers of `p`, may be fractional
    /// via [`PadicElement::zero_with_abs_e`]).
    pub fn zero_with_prec(field: &FieldDesc, prec: i64) -> Self {
        Self::zero_at(field, field.ram_index() * prec)
    }

    pub(crate) fn zero_with_abs_e(field: &FieldDesc, abs_e: i64) -> Self {
        Self::zero_at(field, abs_e)
    }

    pub fn one(field: &FieldDesc) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &FieldDesc, n: i64) -> Self {
        Self::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: &FieldDesc, n: &BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); field.degree()];
        coeffs[0] = n.clone();
        Self::build(field, 0, coeffs, field.ram_index() * field.prec())
    }

    /// `p^k` for any integer `k`.
    pub fn p_power(field: &FieldDesc, k: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); field.degree()];
        coeffs[0] = BigInt::one();
        Self::build(field, k, coeffs, field.ram_index() * (field.prec() + k.max(0)))
    }

    /// The element `Σ c_i ζ^i` at the field's default precision.
    pub fn from_coeffs(field: &FieldDesc, coeffs: &[BigInt]) -> Self {
        let mut c = coeffs.to_vec();
        if c.len() > field.degree() {
            field.reduce_poly(&mut c);
        }
        c.resize(field.degree(), BigInt::zero());
        Self::build(field, 0, c, field.ram_index() * field.prec())
    }

    /// `p^shift · Σ c_i ζ^i`, known to `abs_e / e`.
    pub fn from_parts(field: &FieldDesc, shift: i64, coeffs: &[BigInt], abs_e: i64) -> Self {
        let mut c = coeffs.to_vec();
        if c.len() > field.degree() {
            field.reduce_poly(&mut c);
        }
        c.resize(field.degree(), BigInt::zero());
        Self::build(field, shift, c, abs_e)
    }

    /// The chosen primitive `p^m`-th root of unity `ζ`; `1` over `Q_p`.
    pub fn zeta(field: &FieldDesc) -> Self {
        Self::zeta_pow(field, 1)
    }

    pub fn zeta_pow(field: &FieldDesc, k: u64) -> Self {
        let c = field.zeta_pow_poly(k);
        Self::build(field, 0, c, field.ram_index() * field.prec())
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Integral part `u` with `self = p^shift · u`.
    pub fn unit_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Absolute precision in units of `1/e`.
    pub fn abs_e(&self) -> i64 {
        self.abs
    }

    /// Absolute precision as a rational power of `p`.
    pub fn abs_prec(&self) -> Rational64 {
        Rational64::new(self.abs, self.field.ram_index())
    }

    /// Valuation in units of `1/e`, `None` for precision-zero elements.
    pub fn val_e(&self) -> Option<i64> {
        self.val
    }

    /// Valuation floor in units of `1/e`: the valuation, or the precision for zero.
    pub(crate) fn val_floor_e(&self) -> i64 {
        self.val.unwrap_or(self.abs)
    }

    pub fn val(&self) -> Valuation {
        let e = self.field.ram_index();
        match self.val {
            Some(v) => Valuation::Exact(Rational64::new(v, e)),
            None => Valuation::AtLeast(Rational64::new(self.abs, e)),
        }
    }

    /// Indistinguishable from zero at the tracked precision.
    pub fn is_zero(&self) -> bool {
        self.val.is_none()
    }

    /// Relative precision in units of `1/e` (`abs - val`), zero for precision-zero elements.
    pub fn rel_prec_e(&self) -> i64 {
        self.val.map_or(0, |v| self.abs - v)
    }

    /// Lies in `Q_p` (only the constant coefficient is nonzero).
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// Equality modulo the coarser of the two precisions.
    pub fn eq_at_prec(&self, other: &PadicElement) -> bool {
        (self - other).is_zero()
    }

    /// Equality of both the value and the tracked precision.
    pub fn identical(&self, other: &PadicElement) -> bool {
        self.field.same_field(&other.field)
            && self.abs == other.abs
            && self.shift == other.shift
            && self.coeffs == other.coeffs
    }

    /// Reinterprets the stored representative at a different absolute
    /// precision (in units of `1/e`); raising it treats the digits as exact.
    pub fn with_abs_e(&self, abs_e: i64) -> Self {
        if self.val.is_none() {
            return Self::zero_at(&self.field, abs_e);
        }
        Self::build(&self.field, self.shift, self.coeffs.clone(), abs_e)
    }

    /// Lowers the precision to at most `abs_e`.
    pub fn capped_e(&self, abs_e: i64) -> Self {
        if abs_e >= self.abs {
            self.clone()
        } else {
            self.with_abs_e(abs_e)
        }
    }

    /// Lowers the precision to at most `p^prec`.
    pub fn capped(&self, prec: i64) -> Self {
        self.capped_e(prec * self.field.ram_index())
    }

    /// Embeds into `Q_p(ζ_{p^{m2}})`, `m2 >= m`, via `ζ_{p^m} = ζ_{p^{m2}}^{p^{m2-m}}`.
    pub fn promote(&self, target: &FieldDesc) -> Result<Self> {
        if !self.field.same_prime(target) {
            return Err(Error::Incompatible(format!(
                "primes {} and {}",
                self.field.p(),
                target.p()
            )));
        }
        let (m, m2) = (self.field.level(), target.level());
        if m2 < m {
            return Err(Error::FieldTooSmall(format!(
                "cannot embed level {m} into level {m2}"
            )));
        }
        if m2 == m {
            if self.field.prec() == target.prec() {
                return Ok(self.clone());
            }
            return Ok(self.with_field(target));
        }
        let ratio = target.ram_index() / self.field.ram_index();
        let abs = self.abs * ratio;
        if self.val.is_none() {
            return Ok(Self::zero_at(target, abs));
        }
        let stride = if m == 0 { 0 } else { target.p().pow(m2 - m) as usize };
        let order = target.p().pow(m2) as usize;
        let mut c = vec![BigInt::zero(); order];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * stride] += x;
        }
        Ok(Self::build(target, self.shift, c, abs))
    }

    fn with_field(&self, field: &FieldDesc) -> Self {
        PadicElement {
            field: field.clone(),
            ..self.clone()
        }
    }

    /// Brings two operands into a common field (the larger level).
    pub(crate) fn unify(a: &PadicElement, b: &PadicElement) -> (PadicElement, PadicElement) {
        assert!(
            a.field.same_prime(&b.field),
            "arithmetic between different primes ({} and {})",
            a.p(),
            b.p()
        );
        use std::cmp::Ordering::*;
        match a.field.level().cmp(&b.field.level()) {
            Equal => (a.clone(), b.with_field(&a.field)),
            Less => (a.promote(&b.field).expect("same prime"), b.clone()),
            Greater => (a.clone(), b.promote(&a.field).expect("same prime")),
        }
    }

    fn add_impl(&self, other: &PadicElement, negate: bool) -> PadicElement {
        if !self.field.same_field(&other.field) {
            let (a, b) = Self::unify(self, other);
            return a.add_impl(&b, negate);
        }
        let abs = self.abs.min(other.abs);
        if other.is_zero() {
            return self.capped_e(abs);
        }
        if self.is_zero() {
            let o = if negate { -other } else { other.clone() };
            return o.capped_e(abs);
        }
        let s = self.shift.min(other.shift);
        let top = ceil_div(abs, self.field.ram_index()) - s;
        let mut coeffs = vec![BigInt::zero(); self.field.degree()];
        for (x, sh, neg) in [(self, self.shift, false), (other, other.shift, negate)] {
            let diff = sh - s;
            if diff >= top {
                continue;
            }
            let scale = self.field.ppow(diff);
            for (c, xc) in coeffs.iter_mut().zip(&x.coeffs) {
                if neg {
                    *c -= xc * &scale;
                } else {
                    *c += xc * &scale;
                }
            }
        }
        Self::build(&self.field, s, coeffs, abs)
    }

    fn mul_impl(&self, other: &PadicElement) -> PadicElement {
        if !self.field.same_field(&other.field) {
            let (a, b) = Self::unify(self, other);
            return a.mul_impl(&b);
        }
        let abs = (self.abs + other.val_floor_e()).min(other.abs + self.val_floor_e());
        if self.is_zero() || other.is_zero() {
            return Self::zero_at(&self.field, abs);
        }
        let coeffs = self.field.mul_poly(&self.coeffs, &other.coeffs);
        Self::build(&self.field, self.shift + other.shift, coeffs, abs)
    }

    /// Multiplication by an exact integer.
    pub fn mul_int(&self, k: &BigInt) -> PadicElement {
        let e = self.field.ram_index();
        if k.is_zero() {
            return Self::zero_at(&self.field, self.abs + e * self.field.prec());
        }
        let a = self.field.vp_int(k);
        let unit = k / self.field.ppow(a);
        if self.is_zero() {
            return Self::zero_at(&self.field, self.abs + e * a);
        }
        let coeffs = self.coeffs.iter().map(|c| c * &unit).collect();
        Self::build(&self.field, self.shift + a, coeffs, self.abs + e * a)
    }

    pub fn mul_i64(&self, k: i64) -> PadicElement {
        self.mul_int(&BigInt::from(k))
    }

    /// Division by an exact nonzero integer.
    pub fn div_int(&self, k: &BigInt) -> PadicElement {
        assert!(!k.is_zero(), "division by the integer 0");
        let e = self.field.ram_index();
        let a = self.field.vp_int(k);
        let unit = k / self.field.ppow(a);
        if self.is_zero() {
            return Self::zero_at(&self.field, self.abs - e * a);
        }
        let rel = ceil_div(self.abs, e) - self.shift;
        let modulus = self.field.ppow(rel.max(1));
        let inv = unit
            .mod_floor(&modulus)
            .modinv(&modulus)
            .expect("unit part is prime to p");
        let coeffs = self.coeffs.iter().map(|c| c * &inv).collect();
        Self::build(&self.field, self.shift - a, coeffs, self.abs - e * a)
    }

    pub fn div_i64(&self, k: i64) -> PadicElement {
        self.div_int(&BigInt::from(k))
    }

    /// Multiplicative inverse; loses `2·val` of absolute precision.
    pub fn inv(&self) -> Result<PadicElement> {
        let v = self.val.ok_or(Error::DivisionByZero)?;
        let field = &self.field;
        let e = field.ram_index();
        let abs = self.abs - 2 * v;
        let vu = v - e * self.shift;
        let digits = (ceil_div(abs, e) + self.shift + 2).max(2);
        let modulus = field.ppow(digits);
        let (poly, extra_shift) = if vu == 0 {
            (unit_inverse(field, &self.coeffs, &modulus), 0)
        } else {
            // u·π^{e-vu} = p·z with z a unit
            let pi_pow = pi_power_poly(field, (e - vu) as u64);
            let z: Vec<BigInt> = field
                .mul_poly(&self.coeffs, &pi_pow)
                .into_iter()
                .map(|c| {
                    debug_assert!((&c % BigInt::from(field.p())).is_zero());
                    c / BigInt::from(field.p())
                })
                .collect();
            let zinv = unit_inverse(field, &z, &modulus);
            (field.mul_poly(&pi_pow, &zinv), -1)
        };
        Ok(Self::build(field, -self.shift + extra_shift, poly, abs))
    }

    pub fn div(&self, other: &PadicElement) -> Result<PadicElement> {
        Ok(self * &other.inv()?)
    }

    /// Repeated squaring with tracked precision.
    pub fn pow(&self, mut n: u64) -> PadicElement {
        let mut result = PadicElement::one(&self.field);
        if n == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut first = true;
        while n > 0 {
            if n & 1 == 1 {
                result = if first { base.clone() } else { &result * &base };
                first = false;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Ring automorphism `ζ ↦ ζ^a` of `Q_p(ζ_{p^m})`.
    pub fn ext_automorphism(&self, a: i64) -> Result<PadicElement> {
        let p = self.field.p() as i64;
        if a.rem_euclid(p) == 0 {
            return Err(Error::NotUnitModPm(format!("{a} is divisible by p = {p}")));
        }
        let m = self.field.level();
        if m == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let order = (self.field.p().pow(m)) as i64;
        let a = a.rem_euclid(order) as usize;
        let mut c = vec![BigInt::zero(); order as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[(i * a) % order as usize] += x;
        }
        Ok(Self::build(&self.field, self.shift, c, self.abs))
    }

    /// For an element of `Q_p` with nonnegative valuation: an integer
    /// representative of its known residue together with the precision.
    pub fn to_integer_residue(&self) -> Option<BigInt> {
        if !self.is_rational() {
            return None;
        }
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.shift < 0 {
            return None;
        }
        Some(&self.coeffs[0] * self.field.ppow(self.shift))
    }

    /// Constant coefficient as a rational number `p^shift · c_0`, if `self ∈ Q_p`.
    pub fn rational_parts(&self) -> Option<(i64, BigInt)> {
        if !self.is_rational() {
            return None;
        }
        Some((self.shift, self.coeffs[0].clone()))
    }

    /// Approximate norm down to `Q_p` via the resultant with `Φ_{p^m}`.
    ///
    /// Returns `(shift, norm of u)` with `Norm(self) = p^{d·shift} · Norm(u)`;
    /// the integer `Norm(u)` is exact for the stored representative.
    pub fn norm_parts(&self) -> (i64, BigInt) {
        let d = self.field.degree() as i64;
        if self.field.level() == 0 {
            return (self.shift, self.coeffs[0].clone());
        }
        let modulus: Vec<BigInt> = self.field.modulus().into_iter().map(BigInt::from).collect();
        let res = super::resultant::resultant(&modulus, &self.coeffs);
        (d * self.shift, res)
    }

    /// Valuation computed as `val_p(Norm(x)) / d`. Agrees with [`PadicElement::val`]
    /// whenever the norm's valuation is visible at the stored precision.
    pub fn val_via_norm(&self) -> Valuation {
        let d = self.field.degree() as i64;
        if self.is_zero() {
            return self.val();
        }
        let (sh, n) = self.norm_parts();
        let e = self.field.ram_index();
        let rel = ceil_div(self.abs, e) - self.shift;
        let modulus = self.field.ppow(rel);
        let r = n.mod_floor(&modulus);
        if r.is_zero() {
            return Valuation::AtLeast(Rational64::new(sh + rel, d));
        }
        Valuation::Exact(Rational64::new(sh + self.field.vp_int(&r), d))
    }

    /// Least nonnegative residues of the `ζ`-coefficients of `self · p^{-shift}`
    /// modulo `p^{⌈abs/e⌉ - shift}`.
    pub fn residues(&self) -> Vec<BigInt> {
        self.coeffs.clone()
    }

    /// `self` as a decimal-ish string for diagnostics.
    pub fn to_rational_f64(&self) -> Option<f64> {
        let (s, c) = self.rational_parts()?;
        Some(c.to_f64()? * (self.p() as f64).powi(s as i32))
    }
}

/// `(ζ - 1)^k` reduced modulo `Φ_{p^m}`.
pub(crate) fn pi_power_poly(field: &FieldDesc, k: u64) -> Vec<BigInt> {
    let d = field.degree();
    let mut pi = vec![BigInt::zero(); d.max(2)];
    pi[0] = BigInt::from(-1);
    pi[1] = BigInt::one();
    field.reduce_poly(&mut pi);
    let mut result = vec![BigInt::zero(); d];
    result[0] = BigInt::one();
    for _ in 0..k {
        result = field.mul_poly(&result, &pi);
    }
    result
}

/// Inverse of a unit of `Z_p[ζ]` modulo `modulus = p^R` by Newton iteration.
fn unit_inverse(field: &FieldDesc, u: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let d = field.degree();
    let p = BigInt::from(field.p());
    // residue field is F_p: u ≡ u(1) mod π
    let a0: BigInt = u.iter().sum::<BigInt>().mod_floor(&p);
    let inv0 = a0.modinv(&p).expect("unit");
    let mut y = vec![BigInt::zero(); d];
    y[0] = inv0;
    let reduce = |v: Vec<BigInt>| -> Vec<BigInt> { v.into_iter().map(|c| c.mod_floor(modulus)).collect() };
    for _ in 0..128 {
        let uy = reduce(field.mul_poly(u, &y));
        let done = uy[0].is_one() && uy.iter().skip(1).all(Zero::is_zero);
        if done {
            return y;
        }
        // y ← y·(2 - u·y)
        let mut two_minus: Vec<BigInt> = uy.iter().map(|c| -c).collect();
        two_minus[0] += 2;
        y = reduce(field.mul_poly(&y, &two_minus));
    }
    panic!("Newton inversion failed to converge");
}

impl<'a> Add<&'a PadicElement> for &'a PadicElement {
    type Output = PadicElement;
    fn add(self, rhs: &'a PadicElement) -> PadicElement {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a PadicElement> for &'a PadicElement {
    type Output = PadicElement;
    fn sub(self, rhs: &'a PadicElement) -> PadicElement {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a PadicElement> for &'a PadicElement {
    type Output = PadicElement;
    fn mul(self, rhs: &'a PadicElement) -> PadicElement {
        self.mul_impl(rhs)
    }
}

impl Neg for &PadicElement {
    type Output = PadicElement;
    fn neg(self) -> PadicElement {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        PadicElement::build(&self.field, self.shift, coeffs, self.abs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<PadicElement> for PadicElement {
            type Output = PadicElement;
            fn $f(self, rhs: PadicElement) -> PadicElement {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a PadicElement> for PadicElement {
            type Output = PadicElement;
            fn $f(self, rhs: &'a PadicElement) -> PadicElement {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<PadicElement> for &'a PadicElement {
            type Output = PadicElement;
            fn $f(self, rhs: PadicElement) -> PadicElement {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PadicElement {
    type Output = PadicElement;
    fn neg(self) -> PadicElement {
        -&self
    }
}

impl fmt::Debug for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PadicElement {
    /// `p^shift·(c_0 + c_1 z + …) + O(p^abs)`, with `z = ζ_{p^m}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.abs_prec();
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p(), prec);
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        let body = terms.join(" + ");
        if self.shift == 0 {
            write!(f, "{body} + O({}^{})", self.p(), prec)
        } else {
            write!(f, "{}^{}*({body}) + O({}^{})", self.p(), self.shift, self.p(), prec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, n: i64) -> FieldDesc {
        FieldDesc::qp(p, n).unwrap()
    }

    #[test]
    fn valuation_of_p_is_one() {
        let f = q(3, 24);
        let x = PadicElement::from_int(&f, 3);
        assert_eq!(x.val(), Valuation::Exact(Rational64::from_integer(1)));
    }

    #[test]
    fn zero_carries_floor() {
        let f = q(3, 8);
        let z = PadicElement::zero(&f);
        assert_eq!(z.val(), Valuation::AtLeast(Rational64::from_integer(8)));
        let big = PadicElement::from_int(&f, 3i64.pow(9));
        assert!(big.is_zero());
    }

    #[test]
    fn zeta9_minus_one_has_valuation_one_sixth() {
        let f = FieldDesc::new(3, 2, 24).unwrap();
        let x = &PadicElement::zeta(&f) - &PadicElement::one(&f);
        assert_eq!(x.val(), Valuation::Exact(Rational64::new(1, 6)));
        // oracle: the norm of ζ_9 - 1 is Φ_9(1) = 3 up to sign
        // (read modulo the stored precision, since coefficients are residues)
        let (_, n) = x.norm_parts();
        let m = f.ppow(24);
        let r = n.mod_floor(&m);
        assert!(r == BigInt::from(3) || r == &m - 3);
        assert_eq!(x.val_via_norm(), x.val());
    }

    #[test]
    fn inverse_of_unit_and_nonunit() {
        let f = q(5, 10);
        let x = PadicElement::from_int(&f, 7);
        let y = x.inv().unwrap();
        assert!((&x * &y).eq_at_prec(&PadicElement::one(&f)));

        let g = FieldDesc::new(3, 2, 12).unwrap();
        let pi = &PadicElement::zeta(&g) - &PadicElement::one(&g);
        let t = &pi * &pi;
        let ti = t.inv().unwrap();
        assert_eq!(ti.val(), Valuation::Exact(Rational64::new(-1, 3)));
        let prod = &t * &ti;
        assert!(prod.eq_at_prec(&PadicElement::one(&g)));
        assert!(prod.abs_prec() >= Rational64::new(11, 1));
    }

    #[test]
    fn subtraction_cancels_to_precision_zero() {
        let f = q(3, 10);
        let x = PadicElement::from_int(&f, 12345);
        let d = &x - &x;
        assert!(d.is_zero());
        assert_eq!(d.abs_prec(), Rational64::from_integer(10));
    }

    #[test]
    fn division_by_p_power_shifts_precision() {
        let f = q(3, 10);
        let x = PadicElement::from_int(&f, 5);
        let y = x.div_i64(9);
        assert_eq!(y.val(), Valuation::Exact(Rational64::from_integer(-2)));
        assert_eq!(y.abs_prec(), Rational64::from_integer(8));
        assert!(y.mul_i64(9).eq_at_prec(&x));
    }

    #[test]
    fn automorphism_group_law() {
        let f = FieldDesc::new(3, 2, 10).unwrap();
        let x = PadicElement::from_coeffs(
            &f,
            &[1, 2, 0, 5, 7, 1].iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(),
        );
        let a = x.ext_automorphism(2).unwrap().ext_automorphism(4).unwrap();
        let b = x.ext_automorphism(8).unwrap();
        assert!(a.eq_at_prec(&b));
        assert!(x.ext_automorphism(3).is_err());
        // ζ ↦ ζ^4
        let z4 = PadicElement::zeta(&f).ext_automorphism(4).unwrap();
        assert!(z4.eq_at_prec(&PadicElement::zeta(&f).pow(4)));
    }

    #[test]
    fn promotion_preserves_valuation() {
        let f1 = FieldDesc::new(3, 1, 10).unwrap();
        let f2 = FieldDesc::new(3, 2, 10).unwrap();
        let x = &PadicElement::zeta(&f1) - &PadicElement::one(&f1);
        let y = x.promote(&f2).unwrap();
        assert_eq!(x.val(), y.val());
        assert!(y.eq_at_prec(&(&PadicElement::zeta(&f2).pow(3) - &PadicElement::one(&f2))));
        // mixing levels promotes
        let s = &x + &PadicElement::one(&f2);
        assert_eq!(s.field().level(), 2);
    }
}
