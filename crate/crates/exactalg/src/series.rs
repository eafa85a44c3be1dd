//! Truncated power series with exact rational coefficients.

use crate::Rational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Sub};

/// Power series in one variable truncated at `order`: coefficients of
/// `t^0 .. t^(order-1)` are tracked, everything above is discarded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The all-ones series `sum_k t^k`, the identity for Hadamard products.
    pub fn ones(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::one(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        assert!(order <= self.order());
        PowerSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn scale(&self, r: &Rational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Coefficients of the generalized hypergeometric series
    /// `pFq(upper; lower | t)`: `c_0 = 1`,
    /// `c_{k+1} = c_k * prod(a_i + k) / (prod(b_j + k) * (k+1))`.
    pub fn hypergeometric(upper: &[Rational], lower: &[Rational], order: usize) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(order);
        let mut c = Rational::one();
        for k in 0..order {
            coeffs.push(c.clone());
            let kq = Rational::from_integer(k.into());
            for a in upper {
                c *= a + &kq;
            }
            for b in lower {
                let d = b + &kq;
                assert!(!d.is_zero(), "lower parameter hits a nonpositive integer");
                c /= d;
            }
            c /= &kq + Rational::one();
        }
        PowerSeries { coeffs }
    }
}

/// Coefficient-wise (Hadamard) product, truncated to the shorter order.
pub fn hadamard_product(f: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    let order = f.order().min(g.order());
    PowerSeries {
        coeffs: (0..order).map(|k| f.coeff(k) * g.coeff(k)).collect(),
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..order).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..order).map(|k| self.coeff(k) - rhs.coeff(k)).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order];
        for i in 0..order.min(self.order()) {
            if self.coeff(i).is_zero() {
                continue;
            }
            for j in 0..(order - i).min(rhs.order()) {
                let p = self.coeff(i) * rhs.coeff(j);
                coeffs[i + j] += p;
            }
        }
        PowerSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_i};

    #[test]
    fn hadamard_identity_is_all_ones() {
        let f = PowerSeries::hypergeometric(&[rat(1, 2), rat(1, 3)], &[rat_i(1)], 12);
        assert_eq!(hadamard_product(&f, &PowerSeries::ones(12)), f);
    }

    #[test]
    fn hadamard_squares_coefficients() {
        // (sum k t^k) * (sum k t^k) = sum k^2 t^k
        let f = PowerSeries::from_coeffs((0..10).map(rat_i).collect());
        let g = hadamard_product(&f, &f);
        for k in 0..10 {
            assert_eq!(g.coeff(k), &rat_i((k * k) as i64));
        }
    }

    #[test]
    fn hadamard_bilinear() {
        let f = PowerSeries::hypergeometric(&[rat(1, 2)], &[], 8);
        let g = PowerSeries::hypergeometric(&[rat(1, 3), rat(2, 3)], &[rat_i(1)], 8);
        let h = PowerSeries::hypergeometric(&[rat(1, 5), rat(4, 5)], &[rat(1, 2)], 8);
        let lhs = hadamard_product(&f, &(&g + &h));
        let rhs = &hadamard_product(&f, &g) + &hadamard_product(&f, &h);
        assert_eq!(lhs, rhs);
        assert_eq!(hadamard_product(&f, &g), hadamard_product(&g, &f));
        assert_eq!(
            hadamard_product(&hadamard_product(&f, &g), &h),
            hadamard_product(&f, &hadamard_product(&g, &h))
        );
    }

    #[test]
    fn hypergeometric_ratio_recursion() {
        let rho = [rat(1, 2), rat(1, 2), rat(1, 2)];
        let f = PowerSeries::hypergeometric(&rho, &[rat_i(1), rat_i(1)], 8);
        // coefficient k is ((1/2)_k / k!)^3 = (binom(2k,k)/4^k)^3
        assert_eq!(f.coeff(0), &rat_i(1));
        assert_eq!(f.coeff(1), &rat(1, 8));
        assert_eq!(f.coeff(2), &rat(27, 512));
        // recursion c_{k+1}/c_k = prod(rho_i + k)/(k+1)^n
        for k in 0..7usize {
            let kq = rat_i(k as i64);
            let mut ratio = rat_i(1);
            for r in &rho {
                ratio *= r + &kq;
            }
            ratio /= (&kq + rat_i(1)) * (&kq + rat_i(1)) * (&kq + rat_i(1));
            assert_eq!(f.coeff(k + 1), &(f.coeff(k) * &ratio));
        }
    }
}
