//! Rational functions in several variables, stored in reduced form.

use crate::error::ExactError;
use crate::poly::MultiPoly;
use crate::Rational;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Quotient of two [`MultiPoly`]s with no common polynomial factor. The
/// denominator is primitive with positive leading coefficient, so equality of
/// values is equality of representations.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::reduced(num, den)
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: MultiPoly::one(),
            };
        }
        let g = MultiPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        // normalize: denominator primitive with positive leading coefficient
        let mut unit = den.content();
        if den
            .leading_term_grlex()
            .map(|(_, c)| c < &Rational::from_integer(0.into()))
            .unwrap_or(false)
        {
            unit = -unit;
        }
        let inv = Rational::from_integer(1.into()) / unit;
        den = den.scale(&inv);
        num = num.scale(&inv);
        RationalFunction { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<RationalFunction, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: u32) -> RationalFunction {
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Free variables of the reduced representation.
    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .num
            .vars()
            .iter()
            .chain(self.den.vars().iter())
            .cloned()
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Substitute rational functions for every free variable of `target`.
///
/// Errors with [`ExactError::DenominatorVanishesIdentically`] when a binding
/// makes a denominator identically zero, and with
/// [`ExactError::UnboundVariable`] when a free variable has no binding.
pub fn ratfun_substitute(
    target: &RationalFunction,
    bindings: &HashMap<String, RationalFunction>,
) -> Result<RationalFunction, ExactError> {
    for v in target.vars() {
        if !bindings.contains_key(&v) {
            return Err(ExactError::UnboundVariable(v));
        }
    }
    let num = poly_subst_ratfun(&target.num, bindings)?;
    let den = poly_subst_ratfun(&target.den, bindings)?;
    if den.is_zero() {
        return Err(ExactError::DenominatorVanishesIdentically);
    }
    Ok(&num / &den)
}

/// Substitute rational functions into a polynomial, producing an unreduced
/// numerator/denominator pair that is then reduced once.
pub fn poly_subst_ratfun(
    p: &MultiPoly,
    bindings: &HashMap<String, RationalFunction>,
) -> Result<RationalFunction, ExactError> {
    let (num, den) = poly_subst_ratfun_raw(p, bindings)?;
    Ok(RationalFunction::new(num, den))
}

/// Like [`poly_subst_ratfun`] but skips the final gcd reduction; for large
/// verification workloads where only divisibility or vanishing of the
/// numerator matters, reducing would dominate the runtime.
pub fn poly_subst_ratfun_raw(
    p: &MultiPoly,
    bindings: &HashMap<String, RationalFunction>,
) -> Result<(MultiPoly, MultiPoly), ExactError> {
    // Substitute one variable at a time; each step clears the denominator of
    // that variable's binding by homogenizing in it.
    let mut cur_num = p.clone();
    let mut cur_den = MultiPoly::one();
    let vars: Vec<String> = p.vars().to_vec();
    for v in vars {
        let Some(b) = bindings.get(&v) else { continue };
        let d = cur_num.degree(&v).unwrap_or(0);
        if d == 0 {
            continue;
        }
        let coeffs = cur_num.univar_coeffs(&v);
        // sum_k c_k * num^k * den^(d-k), all over den^d
        let mut acc = MultiPoly::zero();
        let mut num_pow = MultiPoly::one();
        let mut den_pows: Vec<MultiPoly> = Vec::with_capacity(d as usize + 1);
        den_pows.push(MultiPoly::one());
        for _ in 0..d {
            let last = den_pows.last().unwrap();
            den_pows.push(last * b.denominator());
        }
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = &(c * &num_pow) * &den_pows[d as usize - k];
                acc = &acc + &term;
            }
            if k < d as usize {
                num_pow = &num_pow * b.numerator();
            }
        }
        cur_num = acc;
        cur_den = &cur_den * &den_pows[d as usize];
        if cur_num.is_zero() {
            return Ok((MultiPoly::zero(), MultiPoly::one()));
        }
    }
    Ok((cur_num, cur_den))
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_i};

    fn x() -> RationalFunction {
        RationalFunction::var("x")
    }

    #[test]
    fn identity_substitution() {
        // x/(x+1) with x -> x stays put
        let f = &x() / &(&x() + &RationalFunction::constant(rat_i(1)));
        let mut b = HashMap::new();
        b.insert("x".to_string(), x());
        assert_eq!(ratfun_substitute(&f, &b).unwrap(), f);
    }

    #[test]
    fn inversion_substitution() {
        // t^2 with t -> 1/s gives 1/s^2
        let t2 = RationalFunction::from_poly(MultiPoly::var("t").pow(2));
        let mut b = HashMap::new();
        b.insert(
            "t".to_string(),
            RationalFunction::new(MultiPoly::one(), MultiPoly::var("s")),
        );
        let got = ratfun_substitute(&t2, &b).unwrap();
        let want = RationalFunction::new(MultiPoly::one(), MultiPoly::var("s").pow(2));
        assert_eq!(got, want);
    }

    #[test]
    fn vanishing_denominator_detected() {
        // 1/(x - y) with x -> y
        let f = RationalFunction::new(
            MultiPoly::one(),
            &MultiPoly::var("x") - &MultiPoly::var("y"),
        );
        let mut b = HashMap::new();
        b.insert("x".to_string(), RationalFunction::var("y"));
        b.insert("y".to_string(), RationalFunction::var("y"));
        match ratfun_substitute(&f, &b) {
            Err(ExactError::DenominatorVanishesIdentically) => {}
            other => panic!("expected vanishing denominator, got {:?}", other.map(|f| f.to_string())),
        }
    }

    #[test]
    fn substitution_is_ring_homomorphism() {
        let f = &(&x() + &RationalFunction::constant(rat(2, 3))) / &x();
        let g = &x() * &x();
        let mut b = HashMap::new();
        b.insert(
            "x".to_string(),
            RationalFunction::new(
                &MultiPoly::var("u") + &MultiPoly::one(),
                MultiPoly::var("u"),
            ),
        );
        let lhs = ratfun_substitute(&(&f * &g), &b).unwrap();
        let rhs = &ratfun_substitute(&f, &b).unwrap() * &ratfun_substitute(&g, &b).unwrap();
        assert_eq!(lhs, rhs);
    }
}
