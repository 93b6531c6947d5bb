//! Arithmetic in Q_3(ζ_9) with tracked precision.
use padic_periods::padic::{exp, log1p, parse_element, teichmuller, FieldDesc};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldDesc::new(3, 2, 24)?;
    let pi = parse_element(&f, "z - 1")?;
    println!("degree {} , v(ζ-1) = {}", f.degree(), pi.val());
    println!("v via the norm: {}", pi.val_via_norm());

    let x = parse_element(&f, "p*(1 + z^4)")?;
    let y = parse_element(&f, "2 - z")?;
    println!("x*y = {}", &x * &y);
    println!("x/y = {}", x.div(&y)?);

    // log kills roots of unity, exp inverts log near 0
    println!("log(ζ_9) = {}", log1p(&pi)?);
    let l = log1p(&x)?;
    println!("exp(log(1+x)) - 1 - x = {}", &(&exp(&l)? - &x) - &parse_element(&f, "1")?);

    let q = FieldDesc::qp(5, 10)?;
    let w = teichmuller(&parse_element(&q, "2")?)?;
    println!("τ(2) in Z_5 = {w}, τ(2)^4 = {}", w.pow(4));
    Ok(())
}
