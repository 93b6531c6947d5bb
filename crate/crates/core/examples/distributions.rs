//! Bounded distributions on X_n, Dirac masses and convolution.
use padic_periods::distribution::BoundedDistribution;
use padic_periods::padic::{parse_element, FieldDesc};
use padic_periods::series::TateSeries;
use padic_periods::weight::{mul_points, WeightPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldDesc::new(3, 1, 24)?;
    let a = WeightPoint::from_t(parse_element(&f, "p")?)?;
    let b = WeightPoint::from_t(parse_element(&f, "z - 1 + p^2")?)?;
    let level = 1;
    let da = BoundedDistribution::dirac_at(&a, level, 16)?;
    let db = BoundedDistribution::dirac_at(&b, level, 16)?;
    let dab = BoundedDistribution::dirac_at(&mul_points(&a, &b)?, level, 16)?;
    let conv = da.convolve(&db)?;
    println!("δ_a * δ_b = δ_ab: {}", conv.eq_at_prec(&dab));

    let f3 = TateSeries::monomial(&f, level, 3);
    println!("(δ_a * δ_b)(ϑ^3) = {}", conv.eval(&f3)?.0);
    println!("Θ moves moments: x_0(Θμ) = {}", conv.theta_op()?.moments()[0]);

    let moments = vec![parse_element(&f, "1")?, parse_element(&f, "1/p^2")?];
    match BoundedDistribution::from_moments(&f, moments, level, Some(0.into())) {
        Ok(_) => println!("accepted"),
        Err(e) => println!("rejected: {} ({})", e, e.code()),
    }
    Ok(())
}
