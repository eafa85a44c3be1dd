//! Arbitrary-precision complex numbers over [`BigFixed`], with the
//! elementary functions and the log-Gamma function needed for Mellin-Barnes
//! quadrature.

use crate::constants;
use crate::real::BigFixed;
use crate::{Rational};

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFixed,
    pub im: BigFixed,
}

impl BigComplex {
    pub fn new(re: BigFixed, im: BigFixed) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        BigComplex {
            re: BigFixed::zero(bits),
            im: BigFixed::zero(bits),
        }
    }

    pub fn one(bits: u32) -> Self {
        BigComplex {
            re: BigFixed::one(bits),
            im: BigFixed::zero(bits),
        }
    }

    pub fn i(bits: u32) -> Self {
        BigComplex {
            re: BigFixed::zero(bits),
            im: BigFixed::one(bits),
        }
    }

    pub fn from_real(re: BigFixed) -> Self {
        let bits = re.bits();
        BigComplex {
            re,
            im: BigFixed::zero(bits),
        }
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        Self::from_real(BigFixed::from_rational(r, bits))
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Self::from_real(BigFixed::from_i64(v, bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits().max(self.im.bits())
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        BigComplex {
            re: self.re.with_bits(bits),
            im: self.im.with_bits(bits),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_real(&self, r: &BigFixed) -> Self {
        BigComplex {
            re: self.re.mul(r),
            im: self.im.mul(r),
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.mul_i64(k),
            im: self.im.mul_i64(k),
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.div_i64(k),
            im: self.im.div_i64(k),
        }
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> Self {
        BigComplex {
            re: self.im.neg(),
            im: self.re.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigFixed {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFixed {
        self.norm_sqr().sqrt()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm_sqr();
        BigComplex {
            re: self.re.div(&n),
            im: self.im.neg().div(&n),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        BigComplex {
            re: m.mul(&c),
            im: m.mul(&s),
        }
    }

    /// Principal branch logarithm: imaginary part in (-pi, pi].
    pub fn ln(&self) -> Self {
        assert!(!self.is_zero(), "log of zero");
        // ln|z| via 0.5*ln(norm_sqr) to avoid losing half the precision in sqrt
        let re = self.norm_sqr().ln().mul_pow2(-1);
        let im = if self.im.is_zero() && !self.re.is_negative() {
            BigFixed::zero(self.bits())
        } else {
            self.im.atan2(&self.re)
        };
        BigComplex { re, im }
    }

    /// Principal power `self^w = exp(w ln self)`.
    pub fn powc(&self, w: &Self) -> Self {
        w.mul(&self.ln()).exp()
    }

    pub fn pow_i64(&self, k: i64) -> Self {
        if k == 0 {
            return BigComplex::one(self.bits());
        }
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = BigComplex::one(self.bits());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `e^(2 pi i x)` for rational `x`, reduced exactly modulo 1.
    pub fn root_of_unity(x: &Rational, bits: u32) -> Self {
        BigComplex {
            re: constants::cos_pi(&(x * crate::rat(2, 1)), bits),
            im: constants::sin_pi(&(x * crate::rat(2, 1)), bits),
        }
    }

    /// Multiply by `2^k` (exact).
    pub fn mul_pow2(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.mul_pow2(k),
            im: self.im.mul_pow2(k),
        }
    }

    /// Largest component msb, a cheap proxy for `log2 |z|`.
    pub fn msb_max(&self) -> Option<i64> {
        match (self.re.msb(), self.im.msb()) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.max(b)),
        }
    }

    pub fn dist(&self, o: &Self) -> BigFixed {
        self.sub(o).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Principal log-Gamma for complex arguments away from the nonpositive real
/// axis, by the Stirling series after shifting `Re z` up.
pub fn ln_gamma(z: &BigComplex) -> BigComplex {
    let bits = z.bits();
    let work = bits + 64;
    let z = z.with_bits(work);
    let digits = bits as f64 / std::f64::consts::LOG2_10;
    // Stirling's optimal truncation error is ~ e^(-2 pi R) at |z| = R.
    let r_target = (digits + 20.0) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI) + 8.0;
    let (zr, _zi) = z.to_f64_pair();
    let shift = ((r_target - zr).ceil()).max(0.0) as i64;

    // ln Gamma(z) = ln Gamma(z + shift) - sum ln(z + j)
    let mut corr = BigComplex::zero(work);
    for j in 0..shift {
        corr = corr.add(&z.add(&BigComplex::from_i64(j, work)).ln());
    }
    let y = z.add(&BigComplex::from_i64(shift, work));

    // Stirling: (y - 1/2) ln y - y + ln(2 pi)/2 + sum B_2k/(2k(2k-1) y^(2k-1))
    let ln_y = y.ln();
    let half = BigFixed::from_rational(&crate::rat(1, 2), work);
    let mut acc = y
        .sub(&BigComplex::from_real(half.clone()))
        .mul(&ln_y)
        .sub(&y);
    let two_pi = constants::pi(work).mul_pow2(1);
    acc = acc.add(&BigComplex::from_real(two_pi.ln().mul_pow2(-1)));

    // Power-of-two renormalized powers of 1/y: the raw power underflows the
    // fixed-point grid long before the Bernoulli terms become negligible.
    let y_inv = y.inv();
    let y_inv2 = y_inv.mul(&y_inv);
    let mut pow = y_inv.clone(); // pow * 2^pshift = y^(1-2k)
    let mut pshift: i64 = 0;
    let mut k = 1usize;
    loop {
        if let Some(m) = pow.msb_max() {
            pow = pow.mul_pow2(-m);
            pshift += m;
        }
        let b = constants::bernoulli(2 * k);
        let denom = Rational::from_integer(((2 * k) * (2 * k - 1)).into());
        let coeff = b / denom;
        let term = pow
            .mul_real(&BigFixed::from_rational(&coeff, work))
            .mul_pow2(pshift);
        let small = term
            .msb_max()
            .map(|m| m < -(work as i64 - 8))
            .unwrap_or(true);
        acc = acc.add(&term);
        if small {
            break;
        }
        pow = pow.mul(&y_inv2);
        k += 1;
        assert!(k < 2048, "Stirling series failed to converge; argument too close to a pole?");
    }
    acc.sub(&corr).with_bits(bits)
}

/// Gamma(z) = exp(ln_gamma(z)).
pub fn gamma(z: &BigComplex) -> BigComplex {
    ln_gamma(z).exp()
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    const B: u32 = 256;

    fn close(a: &BigComplex, b: &BigComplex, tol_bits: i64) {
        assert!(
            a.dist(b).abs_smaller_than_2pow(tol_bits),
            "{:?} vs {:?}",
            a,
            b
        );
    }

    #[test]
    fn exp_ln_roundtrip() {
        let z = BigComplex::new(
            BigFixed::from_rational(&rat(3, 7), B),
            BigFixed::from_rational(&rat(-5, 2), B),
        );
        close(&z.exp().ln(), &z, 240);
        close(&z.ln().exp(), &z, 240);
    }

    #[test]
    fn roots_of_unity() {
        let w = BigComplex::root_of_unity(&rat(1, 3), B);
        close(&w.pow_i64(3), &BigComplex::one(B), 240);
        let sum = w.add(&w.pow_i64(2)).add(&BigComplex::one(B));
        close(&sum, &BigComplex::zero(B), 240);
    }

    #[test]
    fn gamma_reference_values() {
        // Gamma(1/2) = sqrt(pi)
        let g = gamma(&BigComplex::from_rational(&rat(1, 2), B));
        let want = BigComplex::from_real(constants::pi(B).sqrt());
        close(&g, &want, 230);
        // Gamma(5) = 24
        let g = gamma(&BigComplex::from_i64(5, B));
        close(&g, &BigComplex::from_i64(24, B), 225);
        // recurrence Gamma(z+1) = z Gamma(z) at complex z
        let z = BigComplex::new(
            BigFixed::from_rational(&rat(1, 3), B),
            BigFixed::from_rational(&rat(7, 2), B),
        );
        let lhs = gamma(&z.add(&BigComplex::one(B)));
        let rhs = z.mul(&gamma(&z));
        close(&lhs, &rhs, 220);
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let z = BigComplex::new(
            BigFixed::from_rational(&rat(1, 4), B),
            BigFixed::from_rational(&rat(2, 3), B),
        );
        let lhs = gamma(&z).mul(&gamma(&BigComplex::one(B).sub(&z)));
        let pi = constants::pi(B);
        let pi_z = z.mul_real(&pi);
        // sin(w) = (e^{iw} - e^{-iw}) / (2i)
        let e1 = pi_z.mul_i().exp();
        let e2 = pi_z.mul_i().neg().exp();
        let sin_w = e1.sub(&e2).mul(&BigComplex::i(B).mul_i64(2).inv());
        let rhs = BigComplex::from_real(pi).div(&sin_w);
        close(&lhs, &rhs, 215);
    }
}
