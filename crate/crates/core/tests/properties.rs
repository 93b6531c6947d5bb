//! Algebraic invariants on random inputs. Each case draws a seed and builds
//! its values with the library's sampler, so failures shrink to a seed.

use num_bigint::BigInt;
use padic_periods::distribution::BoundedDistribution;
use padic_periods::encoding::{decode_distribution, decode_element, encode_distribution, encode_element, Context};
use padic_periods::config::Config;
use padic_periods::padic::{binom_pow, log1p, teichmuller, FieldDesc, PadicElement};
use padic_periods::sampling::Sampler;
use padic_periods::series::TateSeries;
use padic_periods::weight::{inverse_theta, default_gamma, QuotientPoint};
use proptest::prelude::*;

fn field(p: u64, m: u32) -> FieldDesc {
    FieldDesc::new(p, m, 24).unwrap()
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5u64)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuation_is_multiplicative_and_ultrametric(seed: u64, p in prime(), m in 0u32..3) {
        let f = field(p, m);
        let e = f.ram_index();
        let mut s = Sampler::new(seed);
        let x = s.with_val_between(&f, -2 * e, 4 * e);
        let y = s.with_val_between(&f, -2 * e, 4 * e);
        let (vx, vy) = (x.val().exact().unwrap(), y.val().exact().unwrap());
        prop_assert_eq!((&x * &y).val().exact(), Some(vx + vy));
        prop_assert!((&x + &y).val().lower_bound() >= vx.min(vy));
        if vx != vy {
            prop_assert_eq!((&x + &y).val().exact(), Some(vx.min(vy)));
        }
    }

    #[test]
    fn valuation_agrees_with_the_norm(seed: u64, p in prime(), m in 1u32..3) {
        let f = field(p, m);
        let e = f.ram_index();
        let mut s = Sampler::new(seed);
        let x = s.with_val_between(&f, 0, 3 * e);
        prop_assert_eq!(x.val(), x.val_via_norm());
    }

    #[test]
    fn log_is_additive(seed: u64, p in prime(), m in 0u32..3) {
        let f = field(p, m);
        let e = f.ram_index();
        let mut s = Sampler::new(seed);
        let one = PadicElement::one(&f);
        let a = s.with_val_between(&f, 1, 2 * e);
        let b = s.with_val_between(&f, 1, 2 * e);
        let uv = &(&one + &a) * &(&one + &b);
        let lhs = log1p(&(&uv - &one)).unwrap();
        let rhs = &log1p(&a).unwrap() + &log1p(&b).unwrap();
        prop_assert!(lhs.eq_at_prec(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn teichmuller_is_a_root_of_unity_lifting_x(seed: u64, p in prime()) {
        let q = field(p, 0);
        let mut s = Sampler::new(seed);
        let x = s.unit(&q);
        let t = teichmuller(&x).unwrap();
        prop_assert!(t.pow(p - 1).eq_at_prec(&PadicElement::one(&q)));
        prop_assert!((&t - &x).val().lower_bound() >= 1.into());
    }

    #[test]
    fn binomial_powers_add_exponents(seed: u64, p in prime(), m in 0u32..3) {
        let f = field(p, m);
        let q = field(p, 0);
        let e = f.ram_index();
        let mut s = Sampler::new(seed);
        let t = s.with_val_between(&f, 1, 2 * e);
        let s1 = s.with_val_between(&q, 0, 2);
        let s2 = s.with_val_between(&q, 0, 2);
        let lhs = binom_pow(&t, &(&s1 + &s2)).unwrap();
        let rhs = &binom_pow(&t, &s1).unwrap() * &binom_pow(&t, &s2).unwrap();
        prop_assert!(lhs.eq_at_prec(&rhs));
    }

    #[test]
    fn automorphisms_are_ring_maps(seed: u64, p in prime(), m in 1u32..3) {
        let f = field(p, m);
        let mut s = Sampler::new(seed);
        let order = p.pow(m) as i64;
        let pick = |s: &mut Sampler| loop {
            let a = s.range(1, order - 1);
            if a % p as i64 != 0 {
                return a;
            }
        };
        let (a, b) = (pick(&mut s), pick(&mut s));
        let x = s.with_val_between(&f, 0, 10);
        let y = s.with_val_between(&f, 0, 10);
        let sig = |z: &PadicElement, k: i64| z.ext_automorphism(k).unwrap();
        prop_assert!(sig(&(&x * &y), a).eq_at_prec(&(&sig(&x, a) * &sig(&y, a))));
        prop_assert!(sig(&(&x + &y), a).eq_at_prec(&(&sig(&x, a) + &sig(&y, a))));
        prop_assert!(sig(&sig(&x, a), b).eq_at_prec(&sig(&x, (a * b) % order)));
        let r = PadicElement::from_bigint(&f, &BigInt::from(seed % 1000));
        prop_assert!(sig(&r, a).eq_at_prec(&r));
    }

    #[test]
    fn inverse_theta_is_a_section(seed: u64, p in prime()) {
        let q = field(p, 0);
        let mut s = Sampler::new(seed);
        let x = s.with_val_between(&q, 0, 3);
        let psi = inverse_theta(&x, 1, &default_gamma(&q)).unwrap();
        prop_assert!(psi.theta().unwrap().eq_at_prec(&x));
    }

    #[test]
    fn series_products_evaluate_to_products(seed: u64, p in prime(), level in 0u32..3) {
        let f = field(p, 1);
        let mut s = Sampler::new(seed);
        let poly = |s: &mut Sampler| {
            let c = (0..6).map(|_| s.with_val_between(&f, 0, 4)).collect();
            TateSeries::polynomial(&f, level, c).unwrap()
        };
        let (a, b) = (poly(&mut s), poly(&mut s));
        let x = QuotientPoint::at_level(s.with_val_between(&f, 2, 4), level).unwrap();
        let lhs = a.mul(&b).unwrap().evaluate(&x).unwrap().0;
        let rhs = &a.evaluate(&x).unwrap().0 * &b.evaluate(&x).unwrap().0;
        prop_assert!(lhs.eq_at_prec(&rhs));
        let phi = QuotientPoint::at_level(s.with_val_between(&f, 2, 4), level).unwrap();
        let shifted = a.translate(&phi).unwrap().evaluate(&x).unwrap().0;
        let direct = a.evaluate(&x.mul(&phi).unwrap()).unwrap().0;
        prop_assert!(shifted.eq_at_prec(&direct));
    }

    #[test]
    fn convolution_is_commutative_and_associative(seed: u64, p in prime(), level in 0u32..3) {
        let f = field(p, 1);
        let mut s = Sampler::new(seed);
        let a = s.distribution(&f, level, 12);
        let b = s.distribution(&f, level, 12);
        let c = s.distribution(&f, level, 12);
        prop_assert!(a.convolve(&b).unwrap().eq_at_prec(&b.convolve(&a).unwrap()));
        let l = a.convolve(&b).unwrap().convolve(&c).unwrap();
        let r = a.convolve(&b.convolve(&c).unwrap()).unwrap();
        prop_assert!(l.eq_at_prec(&r));
        let id = BoundedDistribution::identity(&f, level, 12);
        prop_assert!(a.convolve(&id).unwrap().eq_at_prec(&a));
    }

    #[test]
    fn encodings_round_trip(seed: u64, p in prime(), m in 0u32..3) {
        let cfg = Config { p, ..Config::default() };
        let ctx = Context::new(cfg, m).unwrap();
        let f = ctx.field().unwrap();
        let e = f.ram_index();
        let mut s = Sampler::new(seed);
        let x = s.with_val_between(&f, -3 * e, 6 * e);
        let enc = encode_element(&x);
        let back = decode_element(&ctx, &enc).unwrap();
        prop_assert!(back.identical(&x));
        prop_assert_eq!(encode_element(&back), enc);
        let mu = s.distribution(&f, m, 8);
        let enc = encode_distribution(&mu);
        prop_assert_eq!(encode_distribution(&decode_distribution(&ctx, &enc).unwrap()), enc);
    }
}
