//! The Fourier transform from distributions to power series in T.
use padic_periods::fourier::{fourier, inverse_fourier};
use padic_periods::sampling::Sampler;
use padic_periods::padic::FieldDesc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldDesc::new(5, 1, 24)?;
    let mut s = Sampler::new(1);
    let mu = s.distribution(&f, 1, 32);
    let nu = s.distribution(&f, 1, 32);

    let lhs = fourier(&mu.convolve(&nu)?);
    let rhs = fourier(&mu).multiply(&fourier(&nu))?;
    let same = lhs.coeffs().iter().zip(rhs.coeffs()).all(|(a, b)| a.eq_at_prec(b));
    println!("F(μ*ν) = F(μ)F(ν): {same}");

    let d = fourier(&mu).derivative();
    let t = fourier(&mu.theta_op()?);
    println!("d/dT F(μ) = F(Θμ): {}", d.eq_at_prec(&t));

    let p = s.bsen(&f, 0, 16);
    let back = fourier(&inverse_fourier(&p)?);
    println!("F(F^-1(P)) = P: {}", back.eq_at_prec(&p));
    println!("b_3 = {}", p.coeffs()[3]);
    Ok(())
}
