//! Seeded random sampling of elements, points, distributions and Galois
//! elements, used by the self-test and the property tests.

use num_bigint::BigInt;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::BoundedDistribution;
use crate::error::{Error, Result};
use crate::fourier::BSenElement;
use crate::galois::GaloisElement;
use crate::padic::{teichmuller, FieldDesc, PadicElement};
use crate::weight::{disk_threshold, level_radius, WeightPoint};

pub struct Sampler {
    rng: ChaCha8Rng,
}

fn ceil_e(x: Rational64, e: i64) -> i64 {
    (x * Rational64::from_integer(e)).ceil().to_integer()
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    /// Uniform residue in `[0, p^digits)`.
    pub fn residue(&mut self, p: u64, digits: i64) -> BigInt {
        let mut acc = BigInt::from(0);
        for _ in 0..digits {
            acc = acc * BigInt::from(p) + BigInt::from(self.below(p));
        }
        acc
    }

    /// Integer prime to `p` below `p^digits`.
    pub fn unit_int(&mut self, p: u64, digits: i64) -> BigInt {
        let r = self.residue(p, digits.max(1) - 1);
        r * BigInt::from(p) + BigInt::from(1 + self.below(p - 1))
    }

    /// A unit of the ring of integers, known to the field's precision.
    pub fn unit(&mut self, field: &FieldDesc) -> PadicElement {
        let p = field.p();
        let n = field.prec();
        let mut c: Vec<BigInt> = (0..field.degree()).map(|_| self.residue(p, n)).collect();
        // u ≡ Σ c_i mod π, so the coefficient sum must be prime to p
        let s: BigInt = c.iter().sum();
        if (s % BigInt::from(p)) == BigInt::from(0) {
            c[0] += BigInt::from(1 + self.below(p - 1));
        }
        PadicElement::from_coeffs(field, &c)
    }

    /// Random element of valuation exactly `v_e / e`, with relative precision `N`.
    pub fn with_val_e(&mut self, field: &FieldDesc, v_e: i64) -> PadicElement {
        let e = field.ram_index();
        let (q, r) = (v_e.div_euclid(e), v_e.rem_euclid(e));
        let u = self.unit(field);
        let pi = &PadicElement::zeta(field) - &PadicElement::one(field);
        let x = if r > 0 { &u * &pi.pow(r as u64) } else { u };
        let y = &x * &PadicElement::p_power(field, q);
        // keep relative precision N regardless of the sign of q
        y.with_abs_e(v_e + e * field.prec())
    }

    /// Random element with valuation in `[v_e, v_e + spread]` (units of `1/e`).
    pub fn with_val_between(&mut self, field: &FieldDesc, v_e: i64, spread: i64) -> PadicElement {
        let v = v_e + self.range(0, spread.max(0));
        self.with_val_e(field, v)
    }

    /// A character in `W⁰_n \ W⁰_{n-1}`, with a random Teichmüller component.
    pub fn point_at_level(&mut self, field: &FieldDesc, n: u32) -> Result<WeightPoint> {
        let p = field.p();
        let e = field.ram_index();
        let lo = ceil_e(disk_threshold(p, n), e);
        let hi = if n == 0 {
            lo + 2 * e
        } else {
            ceil_e(disk_threshold(p, n - 1), e) - 1
        };
        if lo > hi {
            return Err(Error::FieldTooSmall(format!(
                "no element of the right valuation for level {n} at cyclotomic level {}",
                field.level()
            )));
        }
        let t = self.with_val_between(field, lo, hi - lo);
        let i = self.below(p - 1);
        let gamma = crate::weight::default_gamma(field);
        WeightPoint::new(i, t, gamma)
    }

    /// Random distribution on `X_n` with constant `C = 1` and moments `x_0..x_count`.
    pub fn distribution(&mut self, field: &FieldDesc, level: u32, count: usize) -> BoundedDistribution {
        let w = level_radius(field.p(), level);
        let e = field.ram_index();
        let moments: Vec<PadicElement> = (0..=count)
            .map(|k| {
                let lo = ceil_e(-w * Rational64::from_integer(k as i64), e);
                self.with_val_between(field, lo, e)
            })
            .collect();
        BoundedDistribution::from_moments(field, moments, level, Some(0.into()))
            .expect("sampled moments satisfy the certificate")
    }

    /// Random series in `B_Sen^n` with constant `1`.
    pub fn bsen(&mut self, field: &FieldDesc, filtration: u32, degree: usize) -> BSenElement {
        let e = field.ram_index();
        let coeffs: Vec<PadicElement> = (0..=degree)
            .map(|k| {
                let lo = -(filtration as i64) * k as i64 * e;
                self.with_val_between(field, lo, e)
            })
            .collect();
        BSenElement::new(field, coeffs, filtration, Some(0.into()))
            .expect("sampled coefficients satisfy the certificate")
    }

    /// Random `g ∈ G_n` acting on levels up to `scope`.
    ///
    /// For `n >= 1` the character is `1 + p^{n+1} u`, one step deeper than
    /// membership in `G_n` requires: the factor `exp_p(ϑ log_p χ)` then has
    /// geometrically decaying coefficients on `X_n`, so truncated moment sums
    /// keep a useful amount of precision. At level `0` the character carries a
    /// random root-of-unity part and its `⟨χ⟩` is automatically `≡ 1 mod p`.
    pub fn galois(&mut self, field: &FieldDesc, n: u32, scope: u32) -> Result<GaloisElement> {
        let q = field.with_level(0)?;
        let p = q.p();
        let big_n = q.prec();
        if n == 0 {
            let a = PadicElement::from_int(&q, 1 + self.below(p - 1) as i64);
            let omega = teichmuller(&a)?;
            let u = PadicElement::from_bigint(&q, &self.residue(p, big_n));
            let chi = &omega * &(&PadicElement::one(&q) + &(&u * &PadicElement::p_power(&q, 1)));
            return GaloisElement::new(chi, scope);
        }
        let u = PadicElement::from_bigint(&q, &self.unit_int(p, big_n));
        let chi = &PadicElement::one(&q) + &(&u * &PadicElement::p_power(&q, n as i64 + 1));
        GaloisElement::new(chi, scope)
    }
}
