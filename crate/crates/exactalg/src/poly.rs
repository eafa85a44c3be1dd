//! Exact multivariate polynomials over the rationals.
//!
//! Terms are kept in graded-lexicographic order with no stored zero
//! coefficients. Binary operations align variable sets automatically, so
//! polynomials built over different variables combine freely.

use crate::{rat_i, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(Vec::new()), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat_i(c))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), Rational::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total() == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.total() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Remap onto a superset of variables. `vars` must be sorted and contain
    /// every variable of `self`.
    fn with_vars(&self, vars: &[String]) -> MultiPoly {
        if self.vars == vars {
            return self.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (k, &ex) in m.0.iter().enumerate() {
                e[idx[k]] = ex;
            }
            terms.insert(Mono(e), c.clone());
        }
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    /// Drop variables that no longer occur.
    fn compress(mut self) -> MultiPoly {
        if self.terms.is_empty() {
            return MultiPoly::zero();
        }
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars: Vec<String> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e: Vec<u32> = m
                    .0
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&x, _)| x)
                    .collect();
                (Mono(e), c)
            })
            .collect();
        MultiPoly { vars, terms }
    }

    fn aligned(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars: Vec<String> = a.vars.iter().chain(b.vars.iter()).cloned().collect();
        vars.sort();
        vars.dedup();
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match self.vars.iter().position(|v| v == var) {
            None => Some(0),
            Some(i) => Some(self.terms.keys().map(|m| m.0[i]).max().unwrap()),
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total()).max()
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: &str, k: u32) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return if k == 0 { self.clone() } else { MultiPoly::zero() };
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] == k {
                let mut e = m.0.clone();
                e[i] = 0;
                terms.insert(Mono(e), c.clone());
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .compress()
    }

    /// Coefficients `[c_0, ..., c_d]` of `self` viewed as univariate in `var`.
    pub fn univar_coeffs(&self, var: &str) -> Vec<MultiPoly> {
        let d = self.degree(var).unwrap_or(0);
        (0..=d).map(|k| self.coeff_of(var, k)).collect()
    }

    /// Partial evaluation: bind some variables to rationals.
    pub fn bind(&self, bindings: &HashMap<String, Rational>) -> MultiPoly {
        let bound: Vec<Option<&Rational>> =
            self.vars.iter().map(|v| bindings.get(v)).collect();
        if bound.iter().all(|b| b.is_none()) {
            return self.clone();
        }
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = m.0.clone();
            for (i, b) in bound.iter().enumerate() {
                if let Some(r) = b {
                    for _ in 0..e[i] {
                        coeff *= *r;
                    }
                    e[i] = 0;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let entry = out.terms.entry(Mono(e)).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out.compress()
    }

    /// Evaluate with every variable bound.
    pub fn eval(&self, bindings: &HashMap<String, Rational>) -> Rational {
        let r = self.bind(bindings);
        assert!(r.is_constant(), "unbound variables remain: {:?}", r.vars);
        r.constant_term()
    }

    /// Substitute polynomials for variables (all occurrences; unbound
    /// variables stay as themselves).
    pub fn subst(&self, bindings: &HashMap<String, MultiPoly>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = bindings
                    .get(&self.vars[i])
                    .cloned()
                    .unwrap_or_else(|| MultiPoly::var(&self.vars[i]));
                term = &term * &base.pow(e);
            }
            out = &out + &term;
        }
        out
    }

    pub fn derivative(&self, var: &str) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            terms.insert(Mono(e), c * rat_i(k as i64));
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .compress()
    }

    pub fn leading_term_grlex(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Positive gcd of all coefficients; zero polynomial has content zero.
    pub fn content(&self) -> Rational {
        let mut it = self.terms.values();
        let Some(first) = it.next() else {
            return Rational::zero();
        };
        let mut num = first.numer().clone();
        let mut den = first.denom().clone();
        for c in it {
            num = num_integer::Integer::gcd(&num, c.numer());
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        Rational::new(num.abs(), den)
    }

    /// Divide out the content and fix the sign of the grlex-leading
    /// coefficient to be positive.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut c = self.content();
        if self.leading_term_grlex().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&(Rational::one() / c))
    }

    pub fn scale(&self, r: &Rational) -> MultiPoly {
        if r.is_zero() {
            return MultiPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * r))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Exact multivariate division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let (mut n, d) = Self::aligned(self, d);
        let (dm, dc) = {
            let (m, c) = d.leading_term_grlex().unwrap();
            (m.clone(), c.clone())
        };
        let mut q = MultiPoly {
            vars: n.vars.clone(),
            terms: BTreeMap::new(),
        };
        while !n.is_zero() {
            let (nm, nc) = {
                let (m, c) = n.leading_term_grlex().unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&nm) {
                return None;
            }
            let qm = nm.sub(&dm);
            let qc = nc / &dc;
            // n -= (qm, qc) * d
            for (m, c) in &d.terms {
                let key = qm.add(m);
                let delta = &qc * c;
                let entry = n.terms.entry(key.clone()).or_insert_with(Rational::zero);
                *entry -= delta;
                if entry.is_zero() {
                    n.terms.remove(&key);
                }
            }
            q.terms.insert(qm, qc);
        }
        Some(q.compress())
    }

    /// Univariate division with remainder in `var`, valid when the leading
    /// coefficient of `d` in `var` is a nonzero constant.
    pub fn div_rem_in_var(&self, d: &MultiPoly, var: &str) -> (MultiPoly, MultiPoly) {
        let dd = d.degree(var).expect("divisor is zero");
        let lc = d.coeff_of(var, dd);
        assert!(
            lc.is_constant() && !lc.is_zero(),
            "leading coefficient in {} must be a nonzero constant",
            var
        );
        let lc = lc.constant_term();
        let mut r = self.clone();
        let mut q = MultiPoly::zero();
        loop {
            let Some(rd) = r.degree(var) else { break };
            if rd < dd || r.is_zero() {
                break;
            }
            let c = r.coeff_of(var, rd);
            if c.is_zero() {
                break;
            }
            let factor = &c.scale(&(Rational::one() / &lc))
                * &MultiPoly::var(var).pow(rd - dd);
            q = &q + &factor;
            r = &r - &(&factor * d);
            if r.degree(var).map(|x| x >= rd).unwrap_or(false) {
                unreachable!("division failed to reduce degree");
            }
        }
        (q, r)
    }

    /// Reduce modulo `rel` in `var`: repeatedly replaces `var^deg(rel)` until
    /// the degree in `var` drops below `deg(rel)`.
    pub fn reduce_mod(&self, rel: &MultiPoly, var: &str) -> MultiPoly {
        self.div_rem_in_var(rel, var).1
    }

    /// Pseudo-division in `var`: returns `(q, r, pow)` with
    /// `lc(d)^pow * self = q * d + r` and `deg_var r < deg_var d`. The leading
    /// coefficient of `d` in `var` may be any nonzero polynomial in the
    /// remaining variables.
    pub fn pseudo_div_rem(&self, d: &MultiPoly, var: &str) -> (MultiPoly, MultiPoly, u32) {
        let dd = d.degree(var).expect("divisor is zero");
        let lc = d.coeff_of(var, dd);
        assert!(!lc.is_zero());
        let mut r = self.clone();
        let mut q = MultiPoly::zero();
        let mut pow = 0u32;
        loop {
            let Some(rd) = r.degree(var) else { break };
            if r.is_zero() || rd < dd {
                break;
            }
            let lr = r.coeff_of(var, rd);
            if lr.is_zero() {
                break;
            }
            // lc * r = (lr * x^(rd-dd)) * d + (lc * r - ...)
            let shift = &lr * &MultiPoly::var(var).pow(rd - dd);
            q = &(&q * &lc) + &shift;
            r = &(&r * &lc) - &(&shift * d);
            pow += 1;
            if let Some(d2) = r.degree(var) {
                if !r.is_zero() {
                    assert!(d2 < rd, "pseudo-division failed to reduce degree");
                }
            }
        }
        (q, r, pow)
    }

    /// Multivariate gcd by the primitive PRS over the main variable.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        if a.is_constant() || b.is_constant() {
            return MultiPoly::one();
        }
        let (a, b) = Self::aligned(a, b);
        let var = a
            .vars
            .iter()
            .rev()
            .find(|v| {
                a.degree(v).unwrap_or(0) > 0 || b.degree(v).unwrap_or(0) > 0
            })
            .cloned()
            .expect("nonconstant");

        let (ca, pa) = a.content_primitive_wrt(&var);
        let (cb, pb) = b.content_primitive_wrt(&var);
        let cont_gcd = MultiPoly::gcd(&ca, &cb);

        let (mut r0, mut r1) = if pa.degree(&var) >= pb.degree(&var) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        while !r1.is_zero() {
            let r = Self::pseudo_rem(&r0, &r1, &var);
            r0 = r1;
            r1 = if r.is_zero() {
                r
            } else {
                r.content_primitive_wrt(&var).1
            };
        }
        let g = if r0.degree(&var).unwrap_or(0) == 0 {
            // coprime in the main variable
            cont_gcd
        } else {
            (&r0.content_primitive_wrt(&var).1 * &cont_gcd).primitive_part()
        };
        g.primitive_part()
    }

    /// Content and primitive part with respect to one variable: content is
    /// the gcd of the coefficient polynomials.
    fn content_primitive_wrt(&self, var: &str) -> (MultiPoly, MultiPoly) {
        let coeffs = self.univar_coeffs(var);
        let mut cont = MultiPoly::zero();
        for c in &coeffs {
            cont = MultiPoly::gcd(&cont, c);
            if cont.is_constant() && !cont.is_zero() {
                break;
            }
        }
        if cont.is_constant() {
            return (MultiPoly::one(), self.primitive_part());
        }
        let pp = self.div_exact(&cont).expect("content divides");
        (cont, pp)
    }

    fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, var: &str) -> MultiPoly {
        let df = f.degree(var).unwrap();
        let dg = g.degree(var).unwrap();
        assert!(dg <= df);
        let lc_g = g.coeff_of(var, dg);
        let mut r = f.clone();
        while let Some(dr) = r.degree(var) {
            if r.is_zero() || dr < dg {
                break;
            }
            let lc_r = r.coeff_of(var, dr);
            let shift = MultiPoly::var(var).pow(dr - dg);
            r = &(&r * &lc_g) - &(&(&lc_r * &shift) * g);
            if let Some(d2) = r.degree(var) {
                if !r.is_zero() {
                    assert!(d2 < dr, "pseudo-division failed to reduce degree");
                }
            }
        }
        r
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::aligned(self, rhs);
        for (m, c) in b.terms {
            let entry = a.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                a.terms.remove(&m);
            }
        }
        a.compress()
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::aligned(self, rhs);
        for (m, c) in b.terms {
            let entry = a.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry -= c;
            if entry.is_zero() {
                a.terms.remove(&m);
            }
        }
        a.compress()
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (a, b) = MultiPoly::aligned(self, rhs);
        let mut acc: HashMap<Vec<u32>, Rational> =
            HashMap::with_capacity(a.terms.len() * b.terms.len() / 2 + 1);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.add(mb);
                let prod = ca * cb;
                let entry = acc.entry(m.0).or_insert_with(Rational::zero);
                *entry += prod;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Mono(e), c))
            .collect();
        MultiPoly {
            vars: a.vars,
            terms,
        }
        .compress()
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical expanded monomial form, grlex-descending:
    /// `4/3*t^4 - 2*c*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.total() == 0 {
                parts.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(n)
    }

    #[test]
    fn arithmetic_and_alignment() {
        let x = v("x");
        let y = v("y");
        let p = &(&x + &y) * &(&x - &y);
        let q = &(&x * &x) - &(&y * &y);
        assert_eq!(p, q);
        assert_eq!(p.degree("x"), Some(2));
        assert_eq!(p.degree("z"), Some(0));
    }

    #[test]
    fn display_canonical() {
        let p = &(&v("t").pow(2).scale(&rat(4, 3)) - &v("c")) + &MultiPoly::one();
        assert_eq!(p.to_string(), "4/3*t^2 - c + 1");
    }

    #[test]
    fn binding_and_eval() {
        let p = &(&v("x") * &v("y")) + &v("x");
        let mut b = HashMap::new();
        b.insert("y".to_string(), rat(2, 1));
        let q = p.bind(&b);
        assert_eq!(q, v("x").scale(&rat(3, 1)));
        b.insert("x".to_string(), rat(5, 1));
        assert_eq!(p.eval(&b), rat(15, 1));
    }

    #[test]
    fn exact_division() {
        let x = v("x");
        let y = v("y");
        let d = &x + &y;
        let p = &d * &(&x - &y.scale(&rat(7, 2)));
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, &x - &y.scale(&rat(7, 2)));
        assert!((&p + &MultiPoly::one()).div_exact(&d).is_none());
    }

    #[test]
    fn div_rem_monic() {
        // reduce x^3 modulo x^2 - y: remainder x*y
        let rel = &v("x").pow(2) - &v("y");
        let r = v("x").pow(3).reduce_mod(&rel, "x");
        assert_eq!(r, &v("x") * &v("y"));
    }

    #[test]
    fn gcd_multivariate() {
        let x = v("x");
        let y = v("y");
        let g = &x + &y;
        let a = &g * &(&x - &y);
        let b = &g * &(&x + &MultiPoly::one());
        let got = MultiPoly::gcd(&a, &b);
        assert_eq!(got, g);
        // coprime case
        let got = MultiPoly::gcd(&(&x + &MultiPoly::one()), &y);
        assert!(got.is_constant());
    }

    #[test]
    fn subst_commutes_with_mul() {
        let p = &(&v("x") + &v("y")) * &v("x");
        let q = &v("y") - &MultiPoly::int(3);
        let mut b = HashMap::new();
        b.insert("x".to_string(), &v("u") * &v("u"));
        let lhs = (&p * &q).subst(&b);
        let rhs = &p.subst(&b) * &q.subst(&b);
        assert_eq!(lhs, rhs);
    }
}
