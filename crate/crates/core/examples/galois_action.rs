//! The Galois action on points and distributions.
use padic_periods::distribution::BoundedDistribution;
use padic_periods::galois::GaloisElement;
use padic_periods::padic::{parse_element, FieldDesc};
use padic_periods::weight::WeightPoint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldDesc::new(3, 1, 24)?;
    let q = FieldDesc::qp(3, 24)?;
    let g = GaloisElement::new(parse_element(&q, "1 + p^2")?, 1)?;
    println!("χ(g) = {}, g ∈ G_{}", g.chi(), g.level_floor());

    let psi = WeightPoint::from_t(parse_element(&f, "p*z")?)?;
    let gpsi = g.act_on_point(&psi)?;
    println!("g∘ψ has t = {}", gpsi.t());

    let level = 1;
    let lhs = g.act_on_distribution(&BoundedDistribution::dirac_at(&psi, level, 32)?)?;
    let factor = g.dirac_factor(&gpsi.theta()?)?;
    let rhs = BoundedDistribution::dirac_at(&gpsi, level, 32)?.scale(&factor)?;
    let agree = lhs.moments().iter().zip(rhs.moments()).take(8).all(|(a, b)| a.eq_at_prec(b));
    println!("g·δ_ψ = exp(ϑ(gψ) log χ) δ_gψ on the first moments: {agree}");
    Ok(())
}
