//! Functions on X_n as truncated series in ϑ with a tail certificate.
use padic_periods::padic::{parse_element, FieldDesc};
use padic_periods::series::TateSeries;
use padic_periods::weight::QuotientPoint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldDesc::qp(3, 24)?;
    let level = 1;
    let c = parse_element(&f, "p^2")?;
    let e = TateSeries::exp_theta(&c, level, 32)?;
    let show = |q: Option<num_rational::Rational64>| q.map_or("-inf".to_string(), |q| q.to_string());
    println!("exp(p^2 ϑ) on X_1: sup norm p^{}, tail p^{}", show(e.sup_norm()), show(e.tail_exp()));

    let phi = QuotientPoint::at_level(parse_element(&f, "1 + p")?, level)?;
    let x = QuotientPoint::at_level(parse_element(&f, "2")?, level)?;
    let shifted = e.translate(&phi)?;
    let (a, _) = shifted.evaluate(&x)?;
    let (b, _) = e.evaluate(&x.mul(&phi)?)?;
    println!("(T_φ f)(x) = {a}");
    println!("f(x + φ)   = {b}");

    let sq = e.mul(&e)?;
    println!("exp(p^2 ϑ)^2 at x = {}", sq.evaluate(&x)?.0);
    Ok(())
}
