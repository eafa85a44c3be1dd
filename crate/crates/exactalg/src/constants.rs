//! High-precision constants: pi, ln 2, the Euler-Mascheroni constant, zeta
//! values, Bernoulli numbers, Hurwitz zeta and digamma at rational arguments.
//!
//! Everything is computed on demand at the requested resolution and cached
//! behind mutexes, so concurrent callers are safe.

use crate::real::BigFixed;
use crate::{rat, Integer, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

static PI_CACHE: Mutex<Option<HashMap<u32, BigFixed>>> = Mutex::new(None);
static LN2_CACHE: Mutex<Option<HashMap<u32, BigFixed>>> = Mutex::new(None);
static GAMMA_CACHE: Mutex<Option<HashMap<u32, BigFixed>>> = Mutex::new(None);
static ZETA_CACHE: Mutex<Option<HashMap<(u32, u32), BigFixed>>> = Mutex::new(None);
static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

fn cached<K: std::hash::Hash + Eq + Clone>(
    cache: &Mutex<Option<HashMap<K, BigFixed>>>,
    key: K,
    compute: impl FnOnce() -> BigFixed,
) -> BigFixed {
    if let Some(v) = cache.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
        return v.clone();
    }
    let v = compute();
    cache
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, v.clone());
    v
}

fn pow_rational(r: &Rational, k: i64) -> Rational {
    let mut acc = Rational::one();
    let base = if k < 0 {
        Rational::one() / r
    } else {
        r.clone()
    };
    let mut e = k.unsigned_abs();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// arctan(1/m) by the Taylor series, for Machin-style formulas.
fn atan_inv(m: i64, bits: u32) -> BigFixed {
    let work = bits + 32;
    let m2 = m * m;
    let mut term = BigFixed::one(work).div_i64(m);
    let mut sum = term.clone();
    let mut n = 1i64;
    loop {
        term = term.div_i64(m2).neg();
        n += 2;
        let t = term.div_i64(n);
        if t.is_zero() || t.abs_smaller_than_2pow(work as i64) {
            break;
        }
        sum = sum.add(&t);
    }
    sum.with_bits(bits)
}

pub fn pi(bits: u32) -> BigFixed {
    cached(&PI_CACHE, bits, || {
        let a = atan_inv(5, bits + 32).mul_i64(16);
        let b = atan_inv(239, bits + 32).mul_i64(4);
        a.sub(&b).with_bits(bits)
    })
}

pub fn ln2(bits: u32) -> BigFixed {
    cached(&LN2_CACHE, bits, || {
        // ln 2 = 2 atanh(1/3)
        let work = bits + 32;
        let mut term = BigFixed::one(work).div_i64(3);
        let mut sum = term.clone();
        let mut n = 1i64;
        loop {
            term = term.div_i64(9);
            n += 2;
            let t = term.div_i64(n);
            if t.is_zero() || t.abs_smaller_than_2pow(work as i64) {
                break;
            }
            sum = sum.add(&t);
        }
        sum.mul_pow2(1).with_bits(bits)
    })
}

/// Euler-Mascheroni constant by the Brent-McMillan algorithm:
/// `gamma = S0(2n)/I0(2n) - ln n + O(e^(-4n))`.
pub fn euler_gamma(bits: u32) -> BigFixed {
    cached(&GAMMA_CACHE, bits, || {
        let work = bits + 64;
        let digits = (bits as f64 / std::f64::consts::LOG2_10).ceil();
        let n = ((digits + 15.0) * std::f64::consts::LN_10 / 4.0).ceil() as i64 + 2;
        let n_big = BigFixed::from_i64(n, work);
        let n2 = n_big.mul(&n_big);
        // A = sum H_k n^(2k)/(k!)^2, B = sum n^(2k)/(k!)^2
        let mut term = BigFixed::one(work);
        let mut h = BigFixed::zero(work);
        let mut a = BigFixed::zero(work);
        let mut b = BigFixed::zero(work);
        let mut k = 0i64;
        loop {
            a = a.add(&term.mul(&h));
            b = b.add(&term);
            k += 1;
            term = term.mul(&n2).div_i64(k).div_i64(k);
            h = h.add(&BigFixed::one(work).div_i64(k));
            // terms grow to ~e^{2n} then decay; stop when negligible next to B
            if k > 2 * n && term.abs_smaller_than_2pow(-(b.msb().unwrap_or(0)) + work as i64) {
                break;
            }
        }
        a.div(&b).sub(&n_big.ln()).with_bits(bits)
    })
}

/// Exact Bernoulli number `B_n` (B_1 = -1/2 convention).
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = Integer::one(); // C(m+1, 0)
        for (j, b) in cache.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * b;
            binom = &binom * Integer::from((m + 1 - j) as i64) / Integer::from((j + 1) as i64);
        }
        // binom is now C(m+1, m) = m+1
        let bm = -acc / Rational::from_integer(Integer::from((m + 1) as i64));
        cache.push(bm);
    }
    cache[n].clone()
}

/// `zeta(k)` for integer `k >= 2`.
pub fn zeta(k: u32, bits: u32) -> BigFixed {
    assert!(k >= 2);
    cached(&ZETA_CACHE, (k, bits), || {
        if k % 2 == 0 {
            // zeta(2m) = (-1)^(m+1) B_2m (2 pi)^(2m) / (2 (2m)!)
            let m = (k / 2) as usize;
            let work = bits + 32;
            let b = bernoulli(2 * m);
            let two_pi = pi(work).mul_pow2(1);
            let mut fact = Rational::one();
            for i in 1..=(2 * m) {
                fact *= Rational::from_integer(Integer::from(i as i64));
            }
            let coeff = b / (fact * rat(2, 1));
            let sign = if m % 2 == 1 { 1 } else { -1 };
            two_pi
                .pow_i64(2 * m as i64)
                .mul(&BigFixed::from_rational(&coeff, work))
                .mul_i64(sign)
                .with_bits(bits)
        } else if (k as u64) * 2 > bits as u64 {
            // direct sum: the tail beyond m is below m^-k
            let work = bits + 32;
            let mut sum = BigFixed::one(work);
            let mut m = 2i64;
            loop {
                let t = BigFixed::one(work).div(&BigFixed::from_i64(m, work).pow_i64(k as i64));
                if t.is_zero() || t.abs_smaller_than_2pow(work as i64) {
                    break;
                }
                sum = sum.add(&t);
                m += 1;
            }
            sum.with_bits(bits)
        } else {
            zeta_borwein(k, bits)
        }
    })
}

/// Borwein's alternating-series acceleration for zeta at odd integers.
fn zeta_borwein(s: u32, bits: u32) -> BigFixed {
    let work = bits + 64;
    let digits = bits as f64 / std::f64::consts::LOG2_10;
    let n = ((digits + 12.0) * std::f64::consts::LN_10 / (3.0 + 8f64.sqrt()).ln()).ceil() as usize + 2;
    // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = Rational::new(Integer::one(), Integer::from(n as i64)); // i = 0
    let mut acc = term.clone();
    d.push(acc.clone());
    for i in 0..n {
        // ratio to next term: 4 (n+i)(n-i) / ((2i+1)(2i+2))
        let num = Integer::from(4) * Integer::from((n + i) as i64) * Integer::from((n - i) as i64);
        let den = Integer::from((2 * i + 1) as i64) * Integer::from((2 * i + 2) as i64);
        term *= Rational::new(num, den);
        acc += &term;
        d.push(acc.clone());
    }
    let n_rat = Rational::from_integer(Integer::from(n as i64));
    for dk in &mut d {
        *dk *= &n_rat;
    }
    let d_n = d[n].clone();
    let mut sum = BigFixed::zero(work);
    for k in 0..n {
        let mut c = &d[k] - &d_n;
        // (-1)^k
        if k % 2 == 1 {
            c = -c;
        }
        let denom = Integer::from((k + 1) as i64).pow(s);
        let contrib = BigFixed::from_rational(&(c / Rational::from_integer(denom)), work);
        sum = sum.add(&contrib);
    }
    // zeta(s) = -1/(d_n (1 - 2^(1-s))) * sum
    let pow = Rational::new(Integer::one(), Integer::from(2).pow(s - 1));
    let factor = (Rational::one() - pow) * d_n;
    sum.neg()
        .div(&BigFixed::from_rational(&factor, work))
        .with_bits(bits)
}

/// Hurwitz zeta `zeta(s, x)` for integer `s >= 2` and rational `x > 0`,
/// by Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: u32, x: &Rational, bits: u32) -> BigFixed {
    assert!(s >= 2);
    assert!(x.is_positive());
    let work = bits + 64;
    let digits = bits as f64 / std::f64::consts::LOG2_10;
    let r_target = (0.2 * (digits + 20.0) * std::f64::consts::LN_10).ceil() + s as f64;
    let x_f = x.to_f64().unwrap_or(0.5);
    let n = (r_target - x_f).ceil().max(0.0) as i64;
    // direct part
    let mut sum = BigFixed::zero(work);
    for j in 0..n {
        let base = x + Rational::from_integer(Integer::from(j));
        let p = BigFixed::from_rational(&base, work).pow_i64(-(s as i64));
        sum = sum.add(&p);
    }
    // Bernoulli tail with every term an exact rational: mixing a fixed-point
    // power with a huge rational coefficient underflows, so keep them joined.
    let y_rat = x + Rational::from_integer(Integer::from(n));
    let y_inv_rat = Rational::one() / &y_rat;
    let y_inv2_rat = &y_inv_rat * &y_inv_rat;
    let y_pow_1ms_rat = pow_rational(&y_inv_rat, s as i64 - 1);
    sum = sum.add(&BigFixed::from_rational(
        &(&y_pow_1ms_rat / Rational::from_integer(Integer::from(s as i64 - 1))),
        work,
    ));
    sum = sum.add(&BigFixed::from_rational(
        &(&y_pow_1ms_rat * &y_inv_rat / Rational::from_integer(Integer::from(2))),
        work,
    ));
    // sum_k B_2k/(2k)! * (s)_(2k-1) * (x+N)^(-s-2k+1)
    let mut power = y_pow_1ms_rat;
    let mut poch = Rational::from_integer(Integer::from(s as i64)); // (s)_1
    let mut fact = Rational::from_integer(Integer::from(2)); // (2k)! at k=1
    let mut k = 1usize;
    loop {
        power *= &y_inv2_rat; // (x+N)^(1-s-2k)
        let coeff = bernoulli(2 * k) * &poch / &fact;
        let term = BigFixed::from_rational(&(&power * coeff), work);
        if term.is_zero() || term.abs_smaller_than_2pow(work as i64 - 8) {
            break;
        }
        sum = sum.add(&term);
        // advance pochhammer (s)_(2k+1) and factorial (2k+2)!
        poch *= Rational::from_integer(Integer::from((s as usize + 2 * k - 1) as i64))
            * Rational::from_integer(Integer::from((s as usize + 2 * k) as i64));
        fact *= Rational::from_integer(Integer::from((2 * k + 1) as i64))
            * Rational::from_integer(Integer::from((2 * k + 2) as i64));
        k += 1;
        assert!(k < 4096, "Euler-Maclaurin failed to converge");
    }
    sum.with_bits(bits)
}

/// Digamma at a positive rational argument, by Euler-Maclaurin.
pub fn digamma(x: &Rational, bits: u32) -> BigFixed {
    assert!(x.is_positive());
    let work = bits + 64;
    let digits = bits as f64 / std::f64::consts::LOG2_10;
    let r_target = (0.2 * (digits + 20.0) * std::f64::consts::LN_10).ceil();
    let x_f = x.to_f64().unwrap_or(0.5);
    let n = (r_target - x_f).ceil().max(0.0) as i64;
    // psi(x) = psi(x+N) - sum_{j<N} 1/(x+j)
    let mut corr = BigFixed::zero(work);
    for j in 0..n {
        let base = x + Rational::from_integer(Integer::from(j));
        corr = corr.add(&BigFixed::one(work).div(&BigFixed::from_rational(&base, work)));
    }
    let y_rat = x + Rational::from_integer(Integer::from(n));
    let y = BigFixed::from_rational(&y_rat, work);
    let y_inv_rat = Rational::one() / &y_rat;
    let y_inv2_rat = &y_inv_rat * &y_inv_rat;
    // psi(y) ~ ln y - 1/(2y) - sum B_2k/(2k y^(2k)), tail terms as exact rationals
    let mut sum = y.ln().sub(&BigFixed::from_rational(
        &(&y_inv_rat / Rational::from_integer(Integer::from(2))),
        work,
    ));
    let mut power = Rational::one();
    let mut k = 1usize;
    loop {
        power *= &y_inv2_rat;
        let coeff = bernoulli(2 * k) / Rational::from_integer(Integer::from((2 * k) as i64));
        let term = BigFixed::from_rational(&(&power * coeff), work);
        if term.is_zero() || term.abs_smaller_than_2pow(work as i64 - 8) {
            break;
        }
        sum = sum.sub(&term);
        k += 1;
        assert!(k < 4096, "Euler-Maclaurin failed to converge");
    }
    sum.sub(&corr).with_bits(bits)
}

/// sin(pi x) for rational x, reduced exactly modulo 2 first.
pub fn sin_pi(x: &Rational, bits: u32) -> BigFixed {
    let work = bits + 32;
    let two = rat(2, 1);
    let m = (x / &two).floor() * &two;
    let r = x - m; // in [0, 2)
    pi(work)
        .mul(&BigFixed::from_rational(&r, work))
        .sin()
        .with_bits(bits)
}

/// cos(pi x) for rational x.
pub fn cos_pi(x: &Rational, bits: u32) -> BigFixed {
    let work = bits + 32;
    let two = rat(2, 1);
    let m = (x / &two).floor() * &two;
    let r = x - m;
    pi(work)
        .mul(&BigFixed::from_rational(&r, work))
        .cos()
        .with_bits(bits)
}

/// cot(pi x) = cos(pi x)/sin(pi x); x must not be an integer.
pub fn cot_pi(x: &Rational, bits: u32) -> BigFixed {
    assert!(!x.is_integer(), "cot(pi x) pole at integer x");
    let work = bits + 32;
    cos_pi(x, work).div(&sin_pi(x, work)).with_bits(bits)
}
