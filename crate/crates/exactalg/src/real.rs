//! Arbitrary-precision fixed-point real arithmetic.
//!
//! A [`BigFixed`] stores `mant / 2^bits`. The fractional resolution `bits` is
//! sticky: binary operations produce results at the finer of the two operand
//! resolutions, while the integer part grows as needed (no overflow). This
//! gives absolute-error control, which is what the desk-scale tolerances in
//! this project are stated in.

use crate::{Integer, Rational};
use num_bigint::Sign;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Bits of fractional resolution for a requested number of decimal digits,
/// with headroom for rounding in long computations.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// Fixed-point real number `mant / 2^bits`.
#[derive(Clone, PartialEq, Eq)]
pub struct BigFixed {
    mant: Integer,
    bits: u32,
}

/// Shift right by `k` bits, rounding half away from zero.
fn round_shr(x: &Integer, k: u32) -> Integer {
    if k == 0 {
        return x.clone();
    }
    let (sign, mag) = (x.sign(), x.magnitude());
    let half = num_bigint::BigUint::one() << (k - 1) as usize;
    let shifted = (mag + half) >> k as usize;
    match sign {
        Sign::Minus => -Integer::from(shifted),
        _ => Integer::from(shifted),
    }
}

impl BigFixed {
    pub fn zero(bits: u32) -> Self {
        BigFixed {
            mant: Integer::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        BigFixed {
            mant: Integer::one() << bits as usize,
            bits,
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        BigFixed {
            mant: Integer::from(v) << bits as usize,
            bits,
        }
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        let num = r.numer() << bits as usize;
        let (q, rem) = num_integer::Integer::div_rem(&num, r.denom());
        // round half away from zero
        let two_rem = rem.abs() * Integer::from(2);
        let adjust = if two_rem >= r.denom().abs() {
            if (num.is_negative()) == (r.denom().is_negative()) {
                Integer::one()
            } else {
                -Integer::one()
            }
        } else {
            Integer::zero()
        };
        BigFixed {
            mant: q + adjust,
            bits,
        }
    }

    pub fn from_f64(v: f64, bits: u32) -> Self {
        let r = Rational::from_float(v).expect("finite float");
        Self::from_rational(&r, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), Integer::one() << self.bits as usize)
    }

    pub fn to_f64(&self) -> f64 {
        // split off the integer part to avoid overflow for huge mantissas
        let int = &self.mant >> self.bits as usize;
        let frac = &self.mant - (&int << self.bits as usize);
        int.to_f64().unwrap_or(f64::NAN)
            + frac.to_f64().unwrap_or(0.0) / 2f64.powi(self.bits as i32)
    }

    /// Re-round to a different fractional resolution.
    pub fn with_bits(&self, bits: u32) -> BigFixed {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => BigFixed {
                mant: &self.mant << (bits - self.bits) as usize,
                bits,
            },
            Ordering::Less => BigFixed {
                mant: round_shr(&self.mant, self.bits - bits),
                bits,
            },
        }
    }

    pub fn neg(&self) -> BigFixed {
        BigFixed {
            mant: -&self.mant,
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> BigFixed {
        BigFixed {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn add(&self, other: &BigFixed) -> BigFixed {
        let bits = self.bits.max(other.bits);
        BigFixed {
            mant: self.aligned_mant(bits) + other.aligned_mant(bits),
            bits,
        }
    }

    pub fn sub(&self, other: &BigFixed) -> BigFixed {
        let bits = self.bits.max(other.bits);
        BigFixed {
            mant: self.aligned_mant(bits) - other.aligned_mant(bits),
            bits,
        }
    }

    pub fn mul(&self, other: &BigFixed) -> BigFixed {
        let bits = self.bits.max(other.bits);
        let prod = &self.mant * &other.mant;
        BigFixed {
            mant: round_shr(&prod, self.bits + other.bits - bits),
            bits,
        }
    }

    pub fn div(&self, other: &BigFixed) -> BigFixed {
        assert!(!other.is_zero(), "division by zero");
        let bits = self.bits.max(other.bits);
        // (ma/2^a) / (mb/2^b) = ma * 2^(bits + b - a) / mb / 2^bits
        let shift = (bits + other.bits) as i64 - self.bits as i64;
        debug_assert!(shift >= 0);
        let num = &self.mant << shift as usize;
        let (q, rem) = num_integer::Integer::div_rem(&num, &other.mant);
        let two_rem = rem.abs() * Integer::from(2);
        let adjust = if two_rem >= other.mant.abs() {
            if (num.is_negative()) == (other.mant.is_negative()) {
                Integer::one()
            } else {
                -Integer::one()
            }
        } else {
            Integer::zero()
        };
        BigFixed {
            mant: q + adjust,
            bits,
        }
    }

    pub fn mul_i64(&self, k: i64) -> BigFixed {
        BigFixed {
            mant: &self.mant * Integer::from(k),
            bits: self.bits,
        }
    }

    pub fn div_i64(&self, k: i64) -> BigFixed {
        assert!(k != 0);
        let num = self.mant.clone();
        let den = Integer::from(k);
        let (q, rem) = num_integer::Integer::div_rem(&num, &den);
        let two_rem = rem.abs() * Integer::from(2);
        let adjust = if two_rem >= den.abs() {
            if (num.is_negative()) == (den.is_negative()) {
                Integer::one()
            } else {
                -Integer::one()
            }
        } else {
            Integer::zero()
        };
        BigFixed {
            mant: q + adjust,
            bits: self.bits,
        }
    }

    /// Multiply by `2^k` (exact).
    pub fn mul_pow2(&self, k: i64) -> BigFixed {
        if k >= 0 {
            BigFixed {
                mant: &self.mant << k as usize,
                bits: self.bits,
            }
        } else {
            BigFixed {
                mant: round_shr(&self.mant, (-k) as u32),
                bits: self.bits,
            }
        }
    }

    pub fn cmp_value(&self, other: &BigFixed) -> Ordering {
        let bits = self.bits.max(other.bits);
        self.aligned_mant(bits).cmp(&other.aligned_mant(bits))
    }

    fn aligned_mant(&self, bits: u32) -> Integer {
        debug_assert!(bits >= self.bits);
        &self.mant << (bits - self.bits) as usize
    }

    /// Nearest integer.
    pub fn round_int(&self) -> Integer {
        round_shr(&self.mant, self.bits)
    }

    pub fn floor_int(&self) -> Integer {
        // BigInt shr rounds toward negative infinity, which is floor
        &self.mant >> self.bits as usize
    }

    /// Position of the most significant bit relative to the binary point:
    /// `|x| ~ 2^msb`. Returns `None` for zero.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.mant.magnitude().bits() as i64 - 1 - self.bits as i64)
    }

    /// `|self| < 2^-k`.
    pub fn abs_smaller_than_2pow(&self, k: i64) -> bool {
        self.msb().map(|m| m < -k).unwrap_or(true)
    }

    pub fn sqrt(&self) -> BigFixed {
        assert!(!self.is_negative(), "sqrt of negative number");
        if self.is_zero() {
            return self.clone();
        }
        // integer sqrt of mant << bits
        let target = &self.mant << self.bits as usize;
        let mant = target.sqrt();
        BigFixed {
            mant,
            bits: self.bits,
        }
    }

    pub fn exp(&self) -> BigFixed {
        let bits = self.bits;
        let work = bits + 64;
        let x = self.with_bits(work);
        let ln2 = crate::constants::ln2(work);
        // x = k*ln2 + r with |r| <= ln2/2
        let k_f = x.div(&ln2);
        let k = k_f.round_int();
        let k_i64 = k.to_i64().expect("exponent fits in i64");
        let r = x.sub(&BigFixed::from_rational(&Rational::from(k), work).mul(&ln2));
        // Taylor for e^r, |r| <= 0.35
        let mut sum = BigFixed::one(work);
        let mut term = BigFixed::one(work);
        let mut n = 1i64;
        loop {
            term = term.mul(&r).div_i64(n);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            if term.abs_smaller_than_2pow(work as i64) {
                break;
            }
            n += 1;
        }
        sum.mul_pow2(k_i64).with_bits(bits)
    }

    pub fn ln(&self) -> BigFixed {
        assert!(
            self.mant.is_positive(),
            "ln of a non-positive number"
        );
        let bits = self.bits;
        let work = bits + 64;
        let x = self.with_bits(work);
        // normalize: x = m * 2^e with m in [1, 2)
        let msb = x.msb().unwrap();
        let m = x.mul_pow2(-msb);
        let ln2 = crate::constants::ln2(work);
        // ln m = 2 atanh((m-1)/(m+1)), z in [0, 1/3)
        let z = m.sub(&BigFixed::one(work)).div(&m.add(&BigFixed::one(work)));
        let z2 = z.mul(&z);
        let mut term = z.clone();
        let mut sum = z.clone();
        let mut n = 1i64;
        loop {
            term = term.mul(&z2);
            if term.is_zero() {
                break;
            }
            n += 2;
            let t = term.div_i64(n);
            sum = sum.add(&t);
            if t.abs_smaller_than_2pow(work as i64) {
                break;
            }
        }
        let ln_m = sum.mul_pow2(1);
        ln_m
            .add(&ln2.mul(&BigFixed::from_i64(msb, work)))
            .with_bits(bits)
    }

    /// Sine and cosine together (they share the argument reduction).
    pub fn sin_cos(&self) -> (BigFixed, BigFixed) {
        let bits = self.bits;
        let work = bits + 64;
        let x = self.with_bits(work);
        let pi = crate::constants::pi(work);
        let half_pi = pi.mul_pow2(-1);
        // x = q*(pi/2) + r, |r| <= pi/4
        let q = x.div(&half_pi).round_int();
        let q_mod: i64 = {
            let m = num_integer::Integer::mod_floor(&q, &Integer::from(4));
            m.to_i64().unwrap()
        };
        let r = x.sub(&BigFixed::from_rational(&Rational::from(q), work).mul(&half_pi));
        let (s, c) = sin_cos_taylor(&r, work);
        let (sin, cos) = match q_mod {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            3 => (c.neg(), s),
            _ => unreachable!(),
        };
        (sin.with_bits(bits), cos.with_bits(bits))
    }

    pub fn sin(&self) -> BigFixed {
        self.sin_cos().0
    }

    pub fn cos(&self) -> BigFixed {
        self.sin_cos().1
    }

    pub fn atan(&self) -> BigFixed {
        let bits = self.bits;
        let work = bits + 64;
        let mut x = self.with_bits(work);
        let mut flip = false;
        let mut negate = false;
        if x.is_negative() {
            x = x.neg();
            negate = true;
        }
        let one = BigFixed::one(work);
        if x.cmp_value(&one) == Ordering::Greater {
            x = one.div(&x);
            flip = true;
        }
        // halve until x < 1/2: atan(x) = 2 atan(x / (1 + sqrt(1+x^2)))
        let mut doublings = 0u32;
        let half = BigFixed::from_rational(&crate::rat(1, 2), work);
        while x.cmp_value(&half) == Ordering::Greater {
            let denom = one.add(&one.add(&x.mul(&x)).sqrt());
            x = x.div(&denom);
            doublings += 1;
        }
        let mut r = atan_taylor(&x, work);
        r = r.mul_pow2(doublings as i64);
        if flip {
            let half_pi = crate::constants::pi(work).mul_pow2(-1);
            r = half_pi.sub(&r);
        }
        if negate {
            r = r.neg();
        }
        r.with_bits(bits)
    }

    /// Four-quadrant arctangent of `self / x`.
    pub fn atan2(&self, x: &BigFixed) -> BigFixed {
        let bits = self.bits.max(x.bits);
        let pi = crate::constants::pi(bits + 32);
        let r = if x.is_zero() {
            assert!(!self.is_zero(), "atan2(0, 0)");
            let half_pi = pi.mul_pow2(-1);
            if self.is_negative() {
                half_pi.neg()
            } else {
                half_pi
            }
        } else if !x.is_negative() {
            self.div(x).atan()
        } else {
            let base = self.div(x).atan();
            if self.is_negative() {
                base.sub(&pi)
            } else {
                base.add(&pi)
            }
        };
        r.with_bits(bits)
    }

    pub fn pow_i64(&self, k: i64) -> BigFixed {
        if k == 0 {
            return BigFixed::one(self.bits);
        }
        let mut base = if k < 0 {
            BigFixed::one(self.bits).div(self)
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = BigFixed::one(self.bits);
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

    /// Decimal string with the given number of fractional digits.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let scaled = &self.mant * Integer::from(10u32).pow(digits);
        let scaled = round_shr(&scaled, self.bits);
        let neg = scaled.is_negative();
        let mag = scaled.abs().to_string();
        let mag = if mag.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let split = mag.len() - digits as usize;
        format!(
            "{}{}.{}",
            if neg { "-" } else { "" },
            &mag[..split],
            &mag[split..]
        )
    }
}

fn sin_cos_taylor(r: &BigFixed, work: u32) -> (BigFixed, BigFixed) {
    let r2 = r.mul(r);
    let mut sin = r.clone();
    let mut term = r.clone();
    let mut n = 1i64;
    loop {
        term = term.mul(&r2).div_i64((n + 1) * (n + 2)).neg();
        n += 2;
        if term.is_zero() {
            break;
        }
        sin = sin.add(&term);
        if term.abs_smaller_than_2pow(work as i64) {
            break;
        }
    }
    let mut cos = BigFixed::one(work);
    let mut term = BigFixed::one(work);
    let mut n = 0i64;
    loop {
        term = term.mul(&r2).div_i64((n + 1) * (n + 2)).neg();
        n += 2;
        if term.is_zero() {
            break;
        }
        cos = cos.add(&term);
        if term.abs_smaller_than_2pow(work as i64) {
            break;
        }
    }
    (sin, cos)
}

fn atan_taylor(x: &BigFixed, work: u32) -> BigFixed {
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut n = 1i64;
    loop {
        term = term.mul(&x2).neg();
        n += 2;
        if term.is_zero() {
            break;
        }
        let t = term.div_i64(n);
        sum = sum.add(&t);
        if t.abs_smaller_than_2pow(work as i64) {
            break;
        }
    }
    sum
}

impl fmt::Debug for BigFixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl fmt::Display for BigFixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(self.bits / 4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    const B: u32 = 256;

    fn close(a: &BigFixed, b: &BigFixed, tol_bits: i64) {
        assert!(
            a.sub(b).abs_smaller_than_2pow(tol_bits),
            "{} vs {} (tol 2^-{})",
            a.to_f64(),
            b.to_f64(),
            tol_bits
        );
    }

    #[test]
    fn basic_arithmetic() {
        let a = BigFixed::from_rational(&rat(22, 7), B);
        let b = BigFixed::from_rational(&rat(7, 22), B);
        close(&a.mul(&b), &BigFixed::one(B), 250);
        close(&a.div(&a), &BigFixed::one(B), 250);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for v in [rat(3, 2), rat(1, 7), rat(10, 1), rat(1, 1000)] {
            let x = BigFixed::from_rational(&v, B);
            close(&x.exp().ln(), &x, 240);
        }
        // ln(exp(-5)) = -5
        let x = BigFixed::from_i64(-5, B);
        close(&x.exp().ln(), &x, 240);
    }

    #[test]
    fn trig_identities() {
        let x = BigFixed::from_rational(&rat(5, 3), B);
        let (s, c) = x.sin_cos();
        close(&s.mul(&s).add(&c.mul(&c)), &BigFixed::one(B), 245);
        // sin(pi/6) = 1/2
        let pi = crate::constants::pi(B);
        let s6 = pi.div_i64(6).sin();
        close(&s6, &BigFixed::from_rational(&rat(1, 2), B), 245);
    }

    #[test]
    fn atan_and_pi() {
        let one = BigFixed::one(B);
        let pi4 = one.atan();
        let pi = crate::constants::pi(B);
        close(&pi4.mul_i64(4), &pi, 240);
        // atan2 quadrants
        let y = BigFixed::from_i64(-1, B);
        let x = BigFixed::from_i64(-1, B);
        let a = y.atan2(&x);
        close(&a, &pi.mul_i64(-3).div_i64(4), 240);
    }

    #[test]
    fn sqrt_matches_square() {
        let x = BigFixed::from_rational(&rat(17, 5), B);
        close(&x.sqrt().mul(&x.sqrt()), &x, 248);
    }

    #[test]
    fn decimal_printing() {
        let x = BigFixed::from_rational(&rat(-355, 113), 128);
        let s = x.to_decimal_string(8);
        assert_eq!(s, "-3.14159292");
    }
}
