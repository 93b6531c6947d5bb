//! Points of weight space, their levels and the coordinate ϑ.
use padic_periods::padic::{parse_element, FieldDesc};
use padic_periods::weight::{mul_points, torsion_char, WeightPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldDesc::new(3, 2, 24)?;
    for src in ["p", "p^2 + z^3 - 1", "z - 1"] {
        let psi = WeightPoint::from_t(parse_element(&f, src)?)?;
        let c = psi.classify()?;
        println!("t = {src:<14} level {} torsion {:<5} ϑ = {}", c.level, c.torsion, psi.theta()?);
    }

    // twisting by a torsion character does not move ϑ
    let psi = WeightPoint::from_t(parse_element(&f, "p + p^3")?)?;
    let twisted = mul_points(&psi, &torsion_char(&f, 2, 4)?)?;
    println!("ϑ(ψ)      = {}", psi.theta()?);
    println!("ϑ(ψ·ε)    = {}", twisted.theta()?);
    println!("level(ψ·ε) = {}", twisted.classify()?.level);
    Ok(())
}
