//! Teichmüller lifts, `log_p`, `exp_p` and binomial powers.
//!
//! The logarithm and exponential follow the standard identities
//! `exp_p(log_p(1 + x)) = 1 + x` and `log_p(exp_p(x)) = x` on
//! `v(x) > 1/(p-1)`. Each series is evaluated on the stored representative
//! with guard digits and the result is then capped at the precision that the
//! input's own uncertainty allows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::element::PadicElement;
use crate::error::{Error, Result};

/// Teichmüller representative: the `(p-1)`-st root of unity congruent to `x` mod `p`.
pub fn teichmuller(x: &PadicElement) -> Result<PadicElement> {
    let field = x.field();
    if field.level() != 0 {
        return Err(Error::ExtensionInput(field.level()));
    }
    match x.val_e() {
        Some(0) => {}
        _ => return Err(Error::NotUnit(format!("{x}"))),
    }
    let p = BigInt::from(field.p());
    let modulus = field.ppow(field.prec());
    let start = x.unit_coeffs()[0].mod_floor(&p);
    // y ↦ y^p is a contraction on units with fixed point τ(x)
    let mut y = start;
    loop {
        let next = y.modpow(&p, &modulus);
        if next == y {
            break;
        }
        y = next;
    }
    Ok(PadicElement::from_bigint(field, &y))
}

/// `⟨x⟩ = x / τ(x) ∈ 1 + pZ_p`.
pub fn angle(x: &PadicElement) -> Result<PadicElement> {
    let t = teichmuller(x)?;
    Ok(x * &t.inv()?)
}

/// Lower bound (units of `1/e`) on `v(log_p(1 + δ))` given `v(δ) >= a`.
fn log_error_floor(a: i64, e: i64, p: u64) -> i64 {
    let mut best = a;
    let mut pj: i64 = 1;
    for j in 1..64 {
        pj = match pj.checked_mul(p as i64) {
            Some(v) => v,
            None => break,
        };
        let cand = match pj.checked_mul(a) {
            Some(v) => v - e * j,
            None => break,
        };
        best = best.min(cand);
        if cand > best + e * 64 {
            break;
        }
    }
    best
}

/// Number of terms `K` after which `k·v - e·log_p(k) >= target` for every `k > K`.
fn log_series_terms(v: i64, e: i64, p: u64, target: i64) -> u64 {
    let lp = (p as f64).ln();
    let mut k: u64 = 1;
    loop {
        let kn = (k + 1) as f64;
        let bound = kn * v as f64 - e as f64 * kn.ln() / lp;
        let increasing = kn * v as f64 * lp >= e as f64;
        if increasing && bound >= (target + 1) as f64 {
            return k;
        }
        k += 1;
    }
}

/// `log_p(1 + x)` for `v(x) > 0`.
pub fn log1p(x: &PadicElement) -> Result<PadicElement> {
    let field = x.field();
    let e = field.ram_index();
    let p = field.p();
    let v = x.val_floor_e();
    if v <= 0 {
        return Err(Error::OutsideDisk(format!("log1p needs v(x) > 0, got {}", x.val())));
    }
    let target = log_error_floor(x.abs_e(), e, p);
    if x.is_zero() {
        return Ok(PadicElement::zero_with_abs_e(field, target));
    }
    let mut guard = 4 * e;
    loop {
        let r = log1p_at(x, target, guard)?;
        if r.abs_e() >= target {
            return Ok(r.capped_e(target));
        }
        guard *= 2;
    }
}

fn log1p_at(x: &PadicElement, target: i64, guard: i64) -> Result<PadicElement> {
    let field = x.field();
    let e = field.ram_index();
    let p = field.p();
    let one = PadicElement::one(field);
    // raise (1+y) to p-th powers until y is inside the exponential disk
    let mut steps = 0i64;
    let mut vy = x.val_e().expect("nonzero");
    while vy * (p as i64 - 1) <= e {
        vy = (p as i64 * vy).min(vy + e);
        steps += 1;
    }
    let work = target + e * steps + guard;
    let mut y = x.with_abs_e(work);
    for _ in 0..steps {
        let u = &one.with_abs_e(work) + &y;
        y = &u.pow(p) - &one.with_abs_e(work);
    }
    if y.is_zero() {
        return Ok(PadicElement::zero_with_abs_e(field, y.abs_e() - e * steps));
    }
    let vy = y.val_e().unwrap();
    let terms = log_series_terms(vy, e, p, work);
    let mut sum = y.clone();
    let mut ypow = y.clone();
    for k in 2..=terms {
        ypow = &ypow * &y;
        let term = ypow.div_int(&BigInt::from(k));
        sum = if k % 2 == 0 { &sum - &term } else { &sum + &term };
    }
    // the dropped tail is below `work`
    let sum = sum.capped_e(work);
    Ok(sum.div_int(&num_traits::pow(BigInt::from(p), steps as usize)))
}

/// `exp_p(x)` for `v(x) > 1/(p-1)`.
pub fn exp(x: &PadicElement) -> Result<PadicElement> {
    let field = x.field();
    let e = field.ram_index();
    let p1 = field.p() as i64 - 1;
    let v = x.val_floor_e();
    if v * p1 <= e {
        return Err(Error::ExpDiverges(format!(
            "exp needs v(x) > 1/(p-1), got {}",
            x.val()
        )));
    }
    let target = x.abs_e();
    let one = PadicElement::one(field);
    if x.is_zero() {
        return Ok(one.capped_e(target));
    }
    let work = target + 2 * e;
    let xw = x.with_abs_e(work);
    let mut sum = one.with_abs_e(work);
    let mut term = one.with_abs_e(work);
    let mut k: i64 = 1;
    loop {
        term = (&term * &xw).div_int(&BigInt::from(k));
        sum = &sum + &term;
        // v(x^j / j!) >= j (v - e/(p-1)) for every later j
        if (k + 1) * (v * p1 - e) >= work * p1 {
            break;
        }
        k += 1;
    }
    Ok(sum.capped_e(target))
}

/// `(1 + t)^s` for `v(t) > 0` and `s ∈ Z_p`.
///
/// The exponent is replaced by its integer residue `S`, the binomial series
/// `Σ C(S, k) t^k` is summed with exact integer binomials, and the error
/// `(1+t)^{s-S} - 1` is bounded through the valuation growth of iterated
/// `p`-th powers.
pub fn binom_pow(t: &PadicElement, s: &PadicElement) -> Result<PadicElement> {
    let field = t.field();
    let e = field.ram_index();
    let p = field.p() as i64;
    let vt = t.val_floor_e();
    if vt <= 0 {
        return Err(Error::OutsideDisk(format!("binom_pow needs v(t) > 0, got {}", t.val())));
    }
    if !s.is_rational() {
        return Err(Error::NotInZp(format!("exponent {s} is not in Q_p")));
    }
    let s_int = s
        .to_integer_residue()
        .ok_or_else(|| Error::NotInZp(format!("exponent {s} has negative valuation")))?;
    // s is known modulo p^{A_s}; with a fractional precision only the floor counts
    let a_s = s.abs_e().div_euclid(s.field().ram_index());

    let cap = t.abs_e();
    let mut beta = vt;
    let mut j = 0;
    while j < a_s && beta < cap {
        beta = (p * beta).min(beta + e);
        j += 1;
    }
    let target = cap.min(beta);
    let one = PadicElement::one(field);
    if t.is_zero() || s_int.is_zero() {
        return Ok(one.with_abs_e(target));
    }
    let tw = t.with_abs_e(target);
    let mut sum = one.with_abs_e(target);
    let mut tpow = one.with_abs_e(target);
    let mut c = BigInt::one();
    let mut k: i64 = 1;
    while k * vt < target {
        let kb = BigInt::from(k);
        c = c * (&s_int - &kb + 1) / &kb;
        if c.is_zero() {
            break;
        }
        tpow = &tpow * &tw;
        sum = &sum + &tpow.mul_int(&c);
        k += 1;
    }
    Ok(sum.capped_e(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::FieldDesc;
    use num_rational::Rational64;

    fn q(p: u64, n: i64) -> FieldDesc {
        FieldDesc::qp(p, n).unwrap()
    }

    #[test]
    fn teichmuller_of_two_mod_three_is_minus_one() {
        let f = q(3, 24);
        let t = teichmuller(&PadicElement::from_int(&f, 2)).unwrap();
        assert!(t.eq_at_prec(&PadicElement::from_int(&f, -1)));
        let one = teichmuller(&PadicElement::one(&f)).unwrap();
        assert!(one.eq_at_prec(&PadicElement::one(&f)));
    }

    #[test]
    fn teichmuller_at_five_matches_frobenius_fixpoint() {
        // oracle: iterate y -> y^5 mod 5^6 from 2 until stable
        let modulus = 5i128.pow(6);
        let mut y: i128 = 2;
        loop {
            let mut n = 1i128;
            for _ in 0..5 {
                n = n * y % modulus;
            }
            if n == y {
                break;
            }
            y = n;
        }
        let f = q(5, 6);
        let t = teichmuller(&PadicElement::from_int(&f, 2)).unwrap();
        assert_eq!(t.to_integer_residue().unwrap(), BigInt::from(y));
        assert!(t.pow(4).eq_at_prec(&PadicElement::one(&f)));
    }

    #[test]
    fn teichmuller_rejects_nonunits_and_extensions() {
        let f = q(3, 10);
        assert_eq!(
            teichmuller(&PadicElement::from_int(&f, 3)).unwrap_err().code(),
            "NOT_UNIT"
        );
        let g = FieldDesc::new(3, 1, 10).unwrap();
        assert_eq!(
            teichmuller(&PadicElement::one(&g)).unwrap_err().code(),
            "EXTENSION_INPUT"
        );
    }

    #[test]
    fn angle_examples() {
        let f = q(3, 12);
        let x = PadicElement::from_int(&f, 4);
        assert!(angle(&x).unwrap().eq_at_prec(&x));
        let m1 = PadicElement::from_int(&f, -1);
        assert!(angle(&m1).unwrap().eq_at_prec(&PadicElement::one(&f)));
    }

    #[test]
    fn log1p_of_p_matches_direct_summation() {
        // oracle: Σ (-1)^{k+1} 3^k / k over rationals, reduced mod 3^6
        let f = q(3, 6);
        let got = log1p(&PadicElement::from_int(&f, 3)).unwrap();
        let modulus = BigInt::from(3).pow(6);
        let mut acc = num_rational::BigRational::zero();
        for k in 1..40u32 {
            let term = num_rational::BigRational::new(BigInt::from(3).pow(k), BigInt::from(k));
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let num = acc.numer().mod_floor(&modulus);
        let den_inv = acc.denom().mod_floor(&modulus).modinv(&modulus).unwrap();
        let expect = (num * den_inv).mod_floor(&modulus);
        assert!(got.eq_at_prec(&PadicElement::from_bigint(&f, &expect)));
        assert_eq!(got.abs_prec(), Rational64::from_integer(6));
    }

    #[test]
    fn log_of_roots_of_unity_vanishes() {
        for m in 1..=3 {
            let f = FieldDesc::new(3, m, 12).unwrap();
            let x = &PadicElement::zeta(&f) - &PadicElement::one(&f);
            let l = log1p(&x).unwrap();
            assert!(l.is_zero(), "level {m}: {l}");
        }
    }

    #[test]
    fn exp_diverges_on_boundary() {
        let f = FieldDesc::new(3, 1, 10).unwrap();
        // v(ζ_3 - 1) = 1/2 = 1/(p-1)
        let x = &PadicElement::zeta(&f) - &PadicElement::one(&f);
        assert_eq!(exp(&x).unwrap_err().code(), "EXP_DIVERGES");
        assert!(exp(&PadicElement::zero(&f)).unwrap().eq_at_prec(&PadicElement::one(&f)));
    }

    #[test]
    fn exp_log_round_trip() {
        let f = q(5, 16);
        let x = PadicElement::from_int(&f, 5 * 17);
        let l = log1p(&x).unwrap();
        let back = &exp(&l).unwrap() - &PadicElement::one(&f);
        assert!(back.eq_at_prec(&x));
        let y = log1p(&(&exp(&x).unwrap() - &PadicElement::one(&f))).unwrap();
        assert!(y.eq_at_prec(&x));
    }

    #[test]
    fn binom_pow_integer_exponent_matches_power() {
        let f = FieldDesc::new(3, 2, 12).unwrap();
        let t = &PadicElement::zeta(&f) - &PadicElement::one(&f);
        let q3 = q(3, 12);
        let s = PadicElement::from_int(&q3, 9);
        let got = binom_pow(&t, &s).unwrap();
        let expect = (&t + &PadicElement::one(&f)).pow(9);
        assert!(got.eq_at_prec(&expect));
        assert!(got.eq_at_prec(&PadicElement::one(&f)));
        let zero = binom_pow(&t, &PadicElement::zero(&q3)).unwrap();
        assert!(zero.eq_at_prec(&PadicElement::one(&f)));
    }

    #[test]
    fn binom_pow_rejects_non_integral_exponent() {
        let f = q(3, 12);
        let t = PadicElement::from_int(&f, 3);
        let s = PadicElement::one(&f).div_i64(3);
        assert_eq!(binom_pow(&t, &s).unwrap_err().code(), "NOT_IN_ZP");
    }
}
