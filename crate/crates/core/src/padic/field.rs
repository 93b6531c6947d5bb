//! Field descriptors for `Q_p` and the cyclotomic layers `Q_p(ζ_{p^m})`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{d-1}` with
//! `d = φ(p^m)`. The extension is totally ramified with uniformizer
//! `π = ζ - 1`, so every valuation is an integer multiple of `1/e`, `e = d`.
//! Internally all valuations and precisions are kept as integers in units
//! of `1/e`.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) struct FieldInner {
    pub(crate) p: u64,
    pub(crate) m: u32,
    pub(crate) prec: i64,
    pub(crate) d: usize,
    /// `p^{m-1}` for `m >= 1`, unused at `m = 0`.
    pub(crate) step: usize,
    pow_cache: Vec<BigInt>,
}

/// A field `Q_p(ζ_{p^m})` together with its default working precision `N`.
///
/// Two descriptors are compatible when they share `p`; arithmetic between
/// different levels promotes to the larger one.
#[derive(Clone)]
pub struct FieldDesc(pub(crate) Arc<FieldInner>);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl FieldDesc {
    /// `p` must be an odd prime, `prec >= 1`.
    pub fn new(p: u64, m: u32, prec: i64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not an odd prime")));
        }
        if prec < 1 {
            return Err(Error::InvalidField(format!("precision N = {prec} must be >= 1")));
        }
        if m > 6 {
            return Err(Error::InvalidField(format!("cyclotomic level m = {m} too large")));
        }
        let (d, step) = if m == 0 {
            (1usize, 1usize)
        } else {
            let step = p.pow(m - 1) as usize;
            (step * (p as usize - 1), step)
        };
        let cache_len = (4 * prec + 64) as usize;
        let pb = BigInt::from(p);
        let mut pow_cache = Vec::with_capacity(cache_len);
        let mut acc = BigInt::one();
        for _ in 0..cache_len {
            pow_cache.push(acc.clone());
            acc *= &pb;
        }
        Ok(FieldDesc(Arc::new(FieldInner {
            p,
            m,
            prec,
            d,
            step,
            pow_cache,
        })))
    }

    /// `Q_p` at precision `prec`.
    pub fn qp(p: u64, prec: i64) -> Result<Self> {
        Self::new(p, 0, prec)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Cyclotomic level `m`; `0` means `Q_p`.
    pub fn level(&self) -> u32 {
        self.0.m
    }

    /// Default absolute precision `N` (in powers of `p`).
    pub fn prec(&self) -> i64 {
        self.0.prec
    }

    /// Degree `[Q_p(ζ_{p^m}) : Q_p]`.
    pub fn degree(&self) -> usize {
        self.0.d
    }

    /// Ramification index; equal to the degree since the tower is totally ramified.
    pub fn ram_index(&self) -> i64 {
        self.0.d as i64
    }

    /// Coefficients of `Φ_{p^m}` in ascending order (length `d + 1`).
    pub fn modulus(&self) -> Vec<i64> {
        let inner = &self.0;
        if inner.m == 0 {
            return vec![-1, 1];
        }
        let mut c = vec![0i64; inner.d + 1];
        for i in 0..inner.p as usize {
            c[i * inner.step] = 1;
        }
        c
    }

    pub fn same_prime(&self, other: &FieldDesc) -> bool {
        self.0.p == other.0.p
    }

    pub fn same_field(&self, other: &FieldDesc) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m
    }

    /// Same prime and precision, different cyclotomic level.
    pub fn with_level(&self, m: u32) -> Result<FieldDesc> {
        if m == self.0.m {
            return Ok(self.clone());
        }
        FieldDesc::new(self.0.p, m, self.0.prec)
    }

    /// Same prime and level, different default precision.
    pub fn with_prec(&self, prec: i64) -> Result<FieldDesc> {
        if prec == self.0.prec {
            return Ok(self.clone());
        }
        FieldDesc::new(self.0.p, self.0.m, prec)
    }

    pub(crate) fn ppow(&self, k: i64) -> BigInt {
        debug_assert!(k >= 0);
        let k = k.max(0) as usize;
        if k < self.0.pow_cache.len() {
            self.0.pow_cache[k].clone()
        } else {
            num_traits::pow(BigInt::from(self.0.p), k)
        }
    }

    pub(crate) fn ppow_ref(&self, k: i64) -> std::borrow::Cow<'_, BigInt> {
        let ku = k.max(0) as usize;
        if ku < self.0.pow_cache.len() {
            std::borrow::Cow::Borrowed(&self.0.pow_cache[ku])
        } else {
            std::borrow::Cow::Owned(self.ppow(k))
        }
    }

    /// `p`-adic valuation of a nonzero integer.
    pub(crate) fn vp_int(&self, x: &BigInt) -> i64 {
        debug_assert!(!x.is_zero());
        let p = BigInt::from(self.0.p);
        let mut v = 0;
        let mut y = x.clone();
        loop {
            let (q, r) = y.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            y = q;
            v += 1;
        }
    }

    /// Reduces a polynomial of any degree modulo `Φ_{p^m}` in place.
    pub(crate) fn reduce_poly(&self, coeffs: &mut Vec<BigInt>) {
        let inner = &self.0;
        let d = inner.d;
        if inner.m == 0 {
            // ζ = 1
            let s: BigInt = coeffs.iter().sum();
            coeffs.clear();
            coeffs.push(s);
            return;
        }
        for k in (d..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[k]);
            // X^d ≡ -(1 + X^step + … + X^{(p-2) step})
            for i in 0..(inner.p as usize - 1) {
                coeffs[k - d + i * inner.step] -= &c;
            }
        }
        coeffs.truncate(d);
        coeffs.resize(d, BigInt::zero());
    }

    /// Multiplies two reduced polynomials modulo `Φ_{p^m}` (no coefficient reduction).
    pub(crate) fn mul_poly(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.0.d;
        if d == 1 {
            return vec![&a[0] * &b[0]];
        }
        // scalar operands are common (rational series coefficients)
        if b[1..].iter().all(Zero::is_zero) {
            return a.iter().map(|x| x * &b[0]).collect();
        }
        if a[1..].iter().all(Zero::is_zero) {
            return b.iter().map(|y| &a[0] * y).collect();
        }
        let mut out = if d >= KRONECKER_MIN_DEGREE && !a.iter().chain(b).any(Signed::is_negative) {
            kronecker_mul(a, b)
        } else {
            let mut out = vec![BigInt::zero(); 2 * d - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        out[i + j] += x * y;
                    }
                }
            }
            out
        };
        self.reduce_poly(&mut out);
        out
    }

    /// Valuation (in units of `1/e`) of the integral element `u`, read modulo
    /// `p^rel`. `None` when `u ≡ 0 (mod p^rel)`.
    ///
    /// Writes `u = p^k u'` with `u'` not divisible by `p`; modulo `p` the ring
    /// of integers is `F_p[X]/(X-1)^d` and `π = X - 1`, so `v_π(u')` is the
    /// multiplicity of the root `1` of `u' mod p`.
    pub(crate) fn pi_valuation(&self, u: &[BigInt], rel: i64) -> Option<i64> {
        let e = self.ram_index();
        let modulus = self.ppow_ref(rel);
        let reduced: Vec<BigInt> = u.iter().map(|c| c.mod_floor(&modulus)).collect();
        let k = reduced
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| self.vp_int(c))
            .min()?;
        if self.0.d == 1 {
            return Some(e * k);
        }
        let p = self.0.p;
        let pb = BigInt::from(p);
        let pk = self.ppow_ref(k);
        let mut rows: Vec<u64> = reduced
            .iter()
            .map(|c| {
                let r = (c / &*pk).mod_floor(&pb);
                r.to_u64().expect("residue mod p")
            })
            .collect();
        let mut mult = 0;
        // synthetic division by X - 1 over F_p
        loop {
            let n = rows.len();
            let mut q = vec![0u64; n.saturating_sub(1)];
            let mut acc = 0u64;
            for i in (1..n).rev() {
                acc = (acc + rows[i]) % p;
                q[i - 1] = acc;
            }
            if (acc + rows[0]) % p != 0 {
                break;
            }
            mult += 1;
            rows = q;
        }
        Some(e * k + mult)
    }

    /// `ζ_{p^m}` raised to `k`, as a reduced coefficient vector.
    pub(crate) fn zeta_pow_poly(&self, k: u64) -> Vec<BigInt> {
        let d = self.0.d;
        if self.0.m == 0 {
            return vec![BigInt::one()];
        }
        let order = self.0.p.pow(self.0.m);
        let k = (k % order) as usize;
        let mut v = vec![BigInt::zero(); order as usize];
        v[k] = BigInt::one();
        self.reduce_poly(&mut v);
        v.truncate(d);
        v
    }
}

const KRONECKER_MIN_DEGREE: usize = 12;

/// Product of two polynomials with nonnegative coefficients through a single
/// big-integer multiplication, packing each coefficient into a fixed number of
/// 32-bit words.
fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let bits = |v: &[BigInt]| v.iter().map(|x| x.bits()).max().unwrap_or(0);
    let len = a.len().max(b.len()) as u64;
    let need = bits(a) + bits(b) + 64 - len.leading_zeros() as u64 + 1;
    let words = need.div_ceil(32) as usize;
    let pack = |v: &[BigInt]| {
        let mut digits = vec![0u32; v.len() * words];
        for (i, x) in v.iter().enumerate() {
            let (_, ds) = x.to_u32_digits();
            digits[i * words..i * words + ds.len()].copy_from_slice(&ds);
        }
        BigUint::new(digits)
    };
    let prod = (pack(a) * pack(b)).to_u32_digits();
    (0..a.len() + b.len() - 1)
        .map(|i| {
            let lo = (i * words).min(prod.len());
            let hi = ((i + 1) * words).min(prod.len());
            BigInt::from(BigUint::from_slice(&prod[lo..hi]))
        })
        .collect()
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.prec == other.0.prec
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("N", &self.0.prec)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_primes() {
        assert!(FieldDesc::new(2, 0, 10).is_err());
        assert!(FieldDesc::new(9, 0, 10).is_err());
        assert!(FieldDesc::new(3, 0, 0).is_err());
        assert!(FieldDesc::new(7, 1, 10).is_ok());
    }

    #[test]
    fn degree_is_euler_phi() {
        assert_eq!(FieldDesc::new(3, 0, 4).unwrap().degree(), 1);
        assert_eq!(FieldDesc::new(3, 1, 4).unwrap().degree(), 2);
        assert_eq!(FieldDesc::new(3, 2, 4).unwrap().degree(), 6);
        assert_eq!(FieldDesc::new(3, 3, 4).unwrap().degree(), 18);
        assert_eq!(FieldDesc::new(5, 2, 4).unwrap().degree(), 20);
    }

    #[test]
    fn phi9_coefficients() {
        let f = FieldDesc::new(3, 2, 4).unwrap();
        assert_eq!(f.modulus(), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    /// Coefficients of `u(1 + π)` in the basis `1, π, …, π^{d-1}`.
    fn to_pi_basis(f: &FieldDesc, u: &[BigInt]) -> Vec<BigInt> {
        let d = f.degree();
        let mut a = vec![BigInt::zero(); d];
        let mut row = vec![BigInt::one()];
        for c in u.iter() {
            for (j, slot) in a.iter_mut().enumerate().take(row.len()) {
                *slot += &row[j] * c;
            }
            let mut next = vec![BigInt::one(); row.len() + 1];
            for j in 1..row.len() {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
        a
    }

    /// Slow valuation through the `π`-adic expansion.
    fn pi_valuation_by_expansion(f: &FieldDesc, u: &[BigInt], rel: i64) -> Option<i64> {
        let modulus = f.ppow(rel);
        let a = to_pi_basis(f, u);
        a.iter()
            .enumerate()
            .filter_map(|(j, aj)| {
                let r = aj.mod_floor(&modulus);
                (!r.is_zero()).then(|| f.ram_index() * f.vp_int(&r) + j as i64)
            })
            .min()
    }

    fn lcg(state: &mut u64) -> u64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *state >> 33
    }

    #[test]
    fn pi_valuation_matches_expansion() {
        let mut st = 11u64;
        for (p, m) in [(3, 1), (3, 2), (5, 1), (5, 2), (3, 3)] {
            let f = FieldDesc::new(p, m, 6).unwrap();
            let d = f.degree();
            for round in 0..200 {
                // bias towards elements of high valuation: multiply by powers of π
                let mut u: Vec<BigInt> = (0..d).map(|_| BigInt::from(lcg(&mut st) % 1000)).collect();
                let k = (round % (2 * d)) as u64;
                let pik = crate::padic::element::pi_power_poly(&f, k);
                u = f.mul_poly(&u, &pik);
                let pk = BigInt::from(p).pow((round % 3) as u32);
                let u: Vec<BigInt> = u.iter().map(|c| c * &pk).collect();
                assert_eq!(f.pi_valuation(&u, 6), pi_valuation_by_expansion(&f, &u, 6), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let mut st = 5u64;
        for len in [1usize, 2, 13, 40] {
            let a: Vec<BigInt> = (0..len).map(|_| BigInt::from(lcg(&mut st)) * BigInt::from(lcg(&mut st))).collect();
            let b: Vec<BigInt> = (0..len + 3).map(|_| BigInt::from(lcg(&mut st))).collect();
            let mut slow = vec![BigInt::zero(); 2 * len + 2];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    slow[i + j] += x * y;
                }
            }
            assert_eq!(kronecker_mul(&a, &b), slow);
        }
    }

    #[test]
    fn zeta_power_wraps() {
        let f = FieldDesc::new(3, 2, 4).unwrap();
        // ζ^9 = 1
        assert_eq!(f.zeta_pow_poly(9), f.zeta_pow_poly(0));
        // ζ^6 = -1 - ζ^3
        let z6 = f.zeta_pow_poly(6);
        let expect: Vec<BigInt> = [-1, 0, 0, -1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(z6, expect);
    }
}
