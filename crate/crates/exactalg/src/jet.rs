//! Truncated series in a nilpotent ε ("jets") with arbitrary-precision
//! complex coefficients: the ring Z[ε]/(ε^n) tensored with complex scalars.
//!
//! Jets drive every ε-expansion in the monodromy computation, most notably
//! the Γ-function jets assembled from zeta constants.

use crate::cnum::BigComplex;
use crate::constants;
use crate::error::ExactError;
use crate::real::{bits_for_digits, BigFixed};
use crate::Rational;

/// Series `c_0 + c_1 ε + ... + c_(n-1) ε^(n-1)` with `ε^n = 0`.
#[derive(Clone, Debug)]
pub struct JetSeries {
    coeffs: Vec<BigComplex>,
}

impl JetSeries {
    pub fn from_coeffs(coeffs: Vec<BigComplex>) -> Self {
        assert!(!coeffs.is_empty());
        JetSeries { coeffs }
    }

    pub fn zero(order: usize, bits: u32) -> Self {
        JetSeries {
            coeffs: vec![BigComplex::zero(bits); order],
        }
    }

    pub fn one(order: usize, bits: u32) -> Self {
        let mut j = Self::zero(order, bits);
        j.coeffs[0] = BigComplex::one(bits);
        j
    }

    pub fn constant(c: BigComplex, order: usize) -> Self {
        let bits = c.bits();
        let mut j = Self::zero(order, bits);
        j.coeffs[0] = c;
        j
    }

    /// The generator ε.
    pub fn eps(order: usize, bits: u32) -> Self {
        assert!(order >= 2, "eps needs order >= 2");
        let mut j = Self::zero(order, bits);
        j.coeffs[1] = BigComplex::one(bits);
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn bits(&self) -> u32 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap()
    }

    pub fn coeff(&self, k: usize) -> &BigComplex {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    fn check_order(&self, o: &JetSeries) -> Result<(), ExactError> {
        if self.order() != o.order() {
            return Err(ExactError::JetOrderMismatch(self.order(), o.order()));
        }
        Ok(())
    }

    pub fn add(&self, o: &JetSeries) -> Result<JetSeries, ExactError> {
        self.check_order(o)?;
        Ok(JetSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, o: &JetSeries) -> Result<JetSeries, ExactError> {
        self.check_order(o)?;
        Ok(JetSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> JetSeries {
        JetSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &JetSeries) -> Result<JetSeries, ExactError> {
        self.check_order(o)?;
        let n = self.order();
        let bits = self.bits().max(o.bits());
        let mut out = vec![BigComplex::zero(bits); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                let p = self.coeffs[i].mul(&o.coeffs[j]);
                out[i + j] = out[i + j].add(&p);
            }
        }
        Ok(JetSeries { coeffs: out })
    }

    pub fn scale(&self, c: &BigComplex) -> JetSeries {
        JetSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn scale_real(&self, r: &BigFixed) -> JetSeries {
        JetSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul_real(r)).collect(),
        }
    }

    fn constant_term_invertible(&self) -> bool {
        // treat anything below roughly 2^(-7/8 bits) as zero at this precision
        let bits = self.bits() as i64;
        !self.coeffs[0].abs().abs_smaller_than_2pow(bits * 7 / 8)
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inv(&self) -> Result<JetSeries, ExactError> {
        if !self.constant_term_invertible() {
            return Err(ExactError::DivisionByZeroJet);
        }
        let n = self.order();
        let bits = self.bits();
        let c0_inv = self.coeffs[0].inv();
        let mut out = vec![BigComplex::zero(bits); n];
        out[0] = c0_inv.clone();
        for k in 1..n {
            let mut acc = BigComplex::zero(bits);
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = acc.neg().mul(&c0_inv);
        }
        Ok(JetSeries { coeffs: out })
    }

    pub fn div(&self, o: &JetSeries) -> Result<JetSeries, ExactError> {
        self.check_order(o)?;
        self.mul(&o.inv()?)
    }

    /// exp of the jet (constant term may be nonzero).
    pub fn exp(&self) -> JetSeries {
        let n = self.order();
        let bits = self.bits();
        let scale = self.coeffs[0].exp();
        // nilpotent part
        let mut nil = self.clone();
        nil.coeffs[0] = BigComplex::zero(bits);
        let mut sum = JetSeries::one(n, bits);
        let mut pow = JetSeries::one(n, bits);
        for j in 1..n {
            pow = pow.mul(&nil).expect("same order");
            sum = sum
                .add(&pow.scale(&BigComplex::one(bits).div_i64(factorial_i64(j))))
                .expect("same order");
        }
        sum.scale(&scale)
    }

    /// Principal-branch log; requires an invertible constant term.
    pub fn log(&self) -> Result<JetSeries, ExactError> {
        if !self.constant_term_invertible() {
            return Err(ExactError::LogOfZeroJet);
        }
        let n = self.order();
        let bits = self.bits();
        let c0 = self.coeffs[0].clone();
        // u = self/c0 - 1 is nilpotent; log(1+u) = sum (-1)^(j+1) u^j / j
        let mut u = self.scale(&c0.inv());
        u.coeffs[0] = BigComplex::zero(bits);
        let mut sum = JetSeries::constant(c0.ln(), n);
        let mut pow = JetSeries::one(n, bits);
        for j in 1..n {
            pow = pow.mul(&u).expect("same order");
            let sign = if j % 2 == 1 { 1 } else { -1 };
            sum = sum
                .add(&pow.scale(&BigComplex::from_i64(sign, bits).div_i64(j as i64)))
                .expect("same order");
        }
        Ok(sum)
    }

    pub fn pow_i64(&self, k: i64) -> Result<JetSeries, ExactError> {
        let n = self.order();
        let bits = self.bits();
        if k == 0 {
            return Ok(JetSeries::one(n, bits));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = JetSeries::one(n, bits);
        let mut e = k.unsigned_abs();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// General power via exp(s log self).
    pub fn pow_scalar(&self, s: &BigComplex) -> Result<JetSeries, ExactError> {
        Ok(self.log()?.scale(s).exp())
    }

    /// Evaluate the jet polynomial at a scalar ε value.
    pub fn eval_at(&self, eps: &BigComplex) -> BigComplex {
        let mut acc = BigComplex::zero(self.bits());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(eps).add(c);
        }
        acc
    }

    pub fn dist(&self, o: &JetSeries) -> BigFixed {
        assert_eq!(self.order(), o.order());
        let mut m = BigFixed::zero(self.bits());
        for (a, b) in self.coeffs.iter().zip(&o.coeffs) {
            let d = a.dist(b);
            if d.cmp_value(&m) == std::cmp::Ordering::Greater {
                m = d;
            }
        }
        m
    }

    /// jet of sin(a ε).
    pub fn sin_of_eps(a: &BigComplex, order: usize) -> JetSeries {
        let bits = a.bits();
        let mut j = JetSeries::zero(order, bits);
        let mut pow = BigComplex::one(bits); // a^k
        let mut fact = 1i64;
        for k in 0..order {
            if k > 0 {
                pow = pow.mul(a);
                fact *= k as i64;
            }
            if k % 2 == 1 {
                let sign = if k % 4 == 1 { 1 } else { -1 };
                j.coeffs[k] = pow.div_i64(fact).mul_i64(sign);
            }
        }
        j
    }

    /// jet of cos(a ε).
    pub fn cos_of_eps(a: &BigComplex, order: usize) -> JetSeries {
        let bits = a.bits();
        let mut j = JetSeries::zero(order, bits);
        let mut pow = BigComplex::one(bits);
        let mut fact = 1i64;
        for k in 0..order {
            if k > 0 {
                pow = pow.mul(a);
                fact *= k as i64;
            }
            if k % 2 == 0 {
                let sign = if k % 4 == 0 { 1 } else { -1 };
                j.coeffs[k] = pow.div_i64(fact).mul_i64(sign);
            }
        }
        j
    }
}

fn factorial_i64(n: usize) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

/// Coefficients of `ln Gamma(x+ε) - ln Gamma(x)`:
/// `ψ(x) ε + Σ_{m>=2} (-1)^m ζ(m, x) ε^m / m`.
pub fn ln_gamma_shift_coeffs(x: &Rational, order: usize, bits: u32) -> Vec<BigFixed> {
    let mut c = vec![BigFixed::zero(bits); order];
    if order >= 2 {
        c[1] = constants::digamma(x, bits);
    }
    for m in 2..order {
        let z = constants::hurwitz_zeta(m as u32, x, bits);
        let v = z.div_i64(m as i64);
        c[m] = if m % 2 == 0 { v } else { v.neg() };
    }
    c
}

/// Jet of `Gamma(x+ε) / Gamma(x)` at a positive rational `x`.
pub fn gamma_ratio_jet(x: &Rational, order: usize, bits: u32) -> JetSeries {
    let coeffs = ln_gamma_shift_coeffs(x, order, bits)
        .into_iter()
        .map(BigComplex::from_real)
        .collect();
    JetSeries::from_coeffs(coeffs).exp()
}

/// Jet of `Gamma(1+ε)` via the log-Gamma Taylor expansion
/// `ln Gamma(1+ε) = -γ ε + Σ_{k>=2} (-1)^k ζ(k) ε^k / k`.
pub fn gamma_one_plus_jet(order: usize, precision_digits: u32) -> JetSeries {
    let bits = bits_for_digits(precision_digits + 20);
    gamma_one_plus_jet_with_psi1(order, bits, &constants::euler_gamma(bits).neg())
}

/// Same as [`gamma_one_plus_jet`] but with an explicit value for ψ(1) = -γ.
/// Exists so tests can verify γ-independence of downstream quantities by
/// perturbing γ.
pub fn gamma_one_plus_jet_with_psi1(order: usize, bits: u32, psi1: &BigFixed) -> JetSeries {
    let mut c = vec![BigFixed::zero(bits); order];
    if order >= 2 {
        c[1] = psi1.clone();
    }
    for k in 2..order {
        let v = constants::zeta(k as u32, bits).div_i64(k as i64);
        c[k] = if k % 2 == 0 { v } else { v.neg() };
    }
    JetSeries::from_coeffs(c.into_iter().map(BigComplex::from_real).collect()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    const B: u32 = 256;

    fn real_jet(vals: &[i64], order: usize) -> JetSeries {
        let mut c: Vec<BigComplex> = vals.iter().map(|&v| BigComplex::from_i64(v, B)).collect();
        c.resize(order, BigComplex::zero(B));
        JetSeries::from_coeffs(c)
    }

    #[test]
    fn truncation_kills_eps_squared() {
        // (1+ε)(1−ε) = 1 at order 2
        let a = real_jet(&[1, 1], 2);
        let b = real_jet(&[1, -1], 2);
        let p = a.mul(&b).unwrap();
        assert!(p.dist(&JetSeries::one(2, B)).abs_smaller_than_2pow(250));
    }

    #[test]
    fn exp_log_inverse_pair() {
        // exp(log(1+ε)) = 1+ε at order 5
        let a = real_jet(&[1, 1], 5);
        let r = a.log().unwrap().exp();
        assert!(r.dist(&a).abs_smaller_than_2pow(240));
    }

    #[test]
    fn geometric_series_inverse() {
        // (1+ε)^(-1) = 1 − ε + ε² at order 3
        let a = real_jet(&[1, 1], 3);
        let want = real_jet(&[1, -1, 1], 3);
        assert!(a.inv().unwrap().dist(&want).abs_smaller_than_2pow(250));
    }

    #[test]
    fn division_by_zero_jet_detected() {
        let a = real_jet(&[0, 1], 3);
        match a.inv() {
            Err(ExactError::DivisionByZeroJet) => {}
            other => panic!("expected DivisionByZeroJet, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn gamma_jet_low_coefficients() {
        // Gamma(1) = 1, coefficient of ε is -γ, coefficient of ε² is (γ²+ζ(2))/2
        let j = gamma_one_plus_jet(4, 50);
        let bits = j.bits();
        assert!(j
            .coeff(0)
            .dist(&BigComplex::one(bits))
            .abs_smaller_than_2pow(bits as i64 - 8));
        let gamma = constants::euler_gamma(bits);
        assert!(j
            .coeff(1)
            .dist(&BigComplex::from_real(gamma.neg()))
            .abs_smaller_than_2pow(bits as i64 - 12));
        let want2 = gamma
            .mul(&gamma)
            .add(&constants::zeta(2, bits))
            .mul_pow2(-1);
        assert!(j
            .coeff(2)
            .dist(&BigComplex::from_real(want2))
            .abs_smaller_than_2pow(bits as i64 - 12));
    }

    #[test]
    fn gamma_jet_matches_finite_differences() {
        // central differences of Gamma(1+x) around 0 using the standalone
        // ln_gamma evaluator, step 2^-80
        let j = gamma_one_plus_jet(3, 60);
        let bits = j.bits();
        let h = BigFixed::one(bits).mul_pow2(-80);
        let gp = crate::cnum::gamma(&BigComplex::from_real(BigFixed::one(bits).add(&h)));
        let gm = crate::cnum::gamma(&BigComplex::from_real(BigFixed::one(bits).sub(&h)));
        // first derivative
        let d1 = gp.sub(&gm).mul_real(&BigFixed::one(bits).div(&h.mul_pow2(1)));
        assert!(j.coeff(1).dist(&d1).abs_smaller_than_2pow(140));
        // second derivative / 2
        let two = BigComplex::from_i64(2, bits);
        let d2 = gp
            .add(&gm)
            .sub(&two)
            .mul_real(&BigFixed::one(bits).div(&h.mul(&h)))
            .div_i64(2);
        assert!(j.coeff(2).dist(&d2).abs_smaller_than_2pow(130));
    }

    #[test]
    fn gamma_ratio_jet_recurrence() {
        // Gamma(x+1+ε)/Gamma(x+1) = (x+ε)/x * Gamma(x+ε)/Gamma(x)
        let x = rat(1, 3);
        let order = 5;
        let a = gamma_ratio_jet(&(&x + rat(1, 1)), order, B);
        let g = gamma_ratio_jet(&x, order, B);
        let mut lin = JetSeries::constant(BigComplex::from_rational(&x, B), order);
        lin = lin
            .add(&JetSeries::eps(order, B))
            .unwrap()
            .scale(&BigComplex::from_rational(&x, B).inv());
        let b = g.mul(&lin).unwrap();
        assert!(a.dist(&b).abs_smaller_than_2pow(220));
    }

    #[test]
    fn jet_ring_laws_random() {
        // associativity and distributivity over pseudo-random jets
        let mut state = 0xdeadbeefu64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 40) as i64 % 17) - 8
        };
        for order in [1usize, 2, 3, 5, 7] {
            for _ in 0..30 {
                let a = real_jet(&(0..order).map(|_| next()).collect::<Vec<_>>(), order);
                let b = real_jet(&(0..order).map(|_| next()).collect::<Vec<_>>(), order);
                let c = real_jet(&(0..order).map(|_| next()).collect::<Vec<_>>(), order);
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert!(ab_c.dist(&a_bc).abs_smaller_than_2pow(200));
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert!(lhs.dist(&rhs).abs_smaller_than_2pow(200));
            }
        }
    }

    #[test]
    fn gamma_jet_evaluated_matches_direct_gamma() {
        // polynomial evaluation at small real ε₀ vs direct Γ(1+ε₀), within
        // 10^(-precision+5); order 16 makes the ε₀^order tail negligible
        let digits = 50u32;
        let j = gamma_one_plus_jet(16, digits);
        let bits = j.bits();
        let tol = Rational::new(1.into(), crate::Integer::from(10).pow(digits - 5));
        for k in [1i64, 11, 13] {
            let eps0 = BigFixed::one(bits).div_i64(k * 1000); // |ε₀| ≤ 1e-3
            let via_jet = j.eval_at(&BigComplex::from_real(eps0.clone()));
            let direct = crate::cnum::gamma(&BigComplex::from_real(
                BigFixed::one(bits).add(&eps0),
            ));
            let diff = via_jet.dist(&direct);
            assert!(
                diff.cmp_value(&BigFixed::from_rational(&tol, bits)) == std::cmp::Ordering::Less,
                "diff {}",
                diff.to_f64()
            );
        }
    }
}
