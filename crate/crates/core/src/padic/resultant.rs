//! Exact integer resultants through the Sylvester matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

/// `Res(f, g)` for integer polynomials given in ascending order.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (Some(a), Some(b)) = (degree(f), degree(g)) else {
        return BigInt::zero();
    };
    if a == 0 {
        return num_traits::pow(f[0].clone(), b);
    }
    if b == 0 {
        return num_traits::pow(g[0].clone(), a);
    }
    let n = a + b;
    let mut mat = vec![vec![BigInt::zero(); n]; n];
    for i in 0..b {
        for j in 0..=a {
            mat[i][i + j] = f[a - j].clone();
        }
    }
    for i in 0..a {
        for j in 0..=b {
            mat[b + i][i + j] = g[b - j].clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x - 5) = ±3
        let r = resultant(&v(&[-2, 1]), &v(&[-5, 1]));
        assert_eq!(r.magnitude(), BigInt::from(3).magnitude());
    }

    #[test]
    fn norm_of_zeta_minus_one_is_phi_at_one() {
        // Φ_3 = 1 + x + x², Res(Φ_3, x - 1) = ±Φ_3(1) = ±3
        let r = resultant(&v(&[1, 1, 1]), &v(&[-1, 1]));
        assert_eq!(r.magnitude(), BigInt::from(3).magnitude());
    }

    #[test]
    fn determinant_small() {
        let m = vec![v(&[2, 1, 0]), v(&[1, 3, 1]), v(&[0, 1, 4])];
        assert_eq!(bareiss_det(m), BigInt::from(18));
    }
}
