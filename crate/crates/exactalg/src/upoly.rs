//! Dense univariate polynomials over the rationals: gcd, Yun square-free
//! decomposition, and rational-root extraction.
//!
//! Root extraction finds candidates numerically (Durand-Kerner seeds, then a
//! high-precision Newton polish and continued-fraction recognition) and then
//! verifies each candidate exactly; only exactly-verified roots are reported.

use crate::real::BigFixed;
use crate::{Integer, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Univariate polynomial, dense coefficients `c[0] + c[1] x + ...`, no
/// trailing zeros (empty vector = zero polynomial).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_fixed(&self, x: &BigFixed) -> BigFixed {
        let bits = x.bits();
        let mut acc = BigFixed::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&BigFixed::from_rational(c, bits));
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        if self.coeffs.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(Integer::from(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UPoly::new(out)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UPoly::new(out)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, r: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => UPoly::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            quot[i - dd] = q.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                let delta = &q * c;
                rem[i - dd + j] -= delta;
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Exact division; panics when the remainder is nonzero.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic(); // normalize to tame coefficient growth
        }
        a.monic()
    }

    /// Multiplicity of `x - r` in `self`.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        let lin = UPoly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            p = q;
            if p.is_zero() {
                return m;
            }
        }
    }

    /// Yun's square-free decomposition: returns `(factor, multiplicity)`
    /// pairs with the factors monic, square-free and pairwise coprime, so
    /// that `self = lc * prod factor^multiplicity`.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let df = f.derivative();
        let g = UPoly::gcd(&f, &df);
        if g.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut c = f.div_exact(&g);
        let mut d = df.div_exact(&g).sub(&c.derivative());
        let mut i = 1usize;
        while c.degree().unwrap_or(0) > 0 {
            let a = UPoly::gcd(&c, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            c = c.div_exact(&a);
            d = d.div_exact(&a).sub(&c.derivative());
            i += 1;
        }
        out
    }

    /// All rational roots with multiplicities. Exact: every reported root is
    /// verified by exact division. See the module docs for the strategy.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        assert!(!self.is_zero());
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for (factor, mult) in self.squarefree_decomposition() {
            for root in factor.roots_of_squarefree() {
                out.push((root, mult));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn roots_of_squarefree(&self) -> Vec<Rational> {
        let deg = self.degree().unwrap_or(0);
        if deg == 0 {
            return Vec::new();
        }
        if deg == 1 {
            return vec![-(&self.coeffs[0] / &self.coeffs[1])];
        }
        // strip x = 0 root
        let mut base = self.clone();
        let mut out = Vec::new();
        if base.coeffs[0].is_zero() {
            out.push(Rational::zero());
            base = base.div_exact(&UPoly::new(vec![Rational::zero(), Rational::one()]));
        }
        let seeds = base.durand_kerner_seeds();
        let bits = 320u32;
        let deriv = base.derivative();
        for (re, im) in seeds {
            if !re.is_finite() || im.abs() > 1e-4 * (1.0 + re.abs()) {
                continue;
            }
            // Newton polish at high precision
            let mut x = BigFixed::from_f64(re, bits);
            let mut ok = false;
            for _ in 0..200 {
                let fx = base.eval_fixed(&x);
                let dfx = deriv.eval_fixed(&x);
                if dfx.is_zero() {
                    break;
                }
                let step = fx.div(&dfx);
                x = x.sub(&step);
                if step.abs_smaller_than_2pow(260) {
                    ok = true;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if let Some(r) = rationalize(&x, 1_000_000_000_000u64) {
                if base.eval(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// All complex roots in f64 precision via Durand-Kerner, used only as
    /// seeds for the exact pipeline.
    fn durand_kerner_seeds(&self) -> Vec<(f64, f64)> {
        let deg = self.degree().unwrap();
        // normalize to monic f64 coefficients
        let lead = self.leading().unwrap();
        let coeffs: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| (c / lead).to_f64().unwrap_or(f64::NAN))
            .collect();
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Vec::new();
        }
        let eval = |re: f64, im: f64| -> (f64, f64) {
            let (mut ar, mut ai) = (0.0f64, 0.0f64);
            for c in coeffs.iter().rev() {
                let nr = ar * re - ai * im + c;
                let ni = ar * im + ai * re;
                ar = nr;
                ai = ni;
            }
            (ar, ai)
        };
        let radius = 1.0
            + coeffs[..deg]
                .iter()
                .fold(0.0f64, |m, c| m.max(c.abs()));
        let mut roots: Vec<(f64, f64)> = (0..deg)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64;
                (radius.min(1e6) * ang.cos(), radius.min(1e6) * ang.sin())
            })
            .collect();
        for _ in 0..400 {
            let mut max_step = 0.0f64;
            for i in 0..deg {
                let (pr, pi_) = eval(roots[i].0, roots[i].1);
                // denominator: prod_{j != i} (z_i - z_j)
                let (mut dr, mut di) = (1.0f64, 0.0f64);
                for j in 0..deg {
                    if i == j {
                        continue;
                    }
                    let (er, ei) = (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1);
                    let nr = dr * er - di * ei;
                    let ni = dr * ei + di * er;
                    dr = nr;
                    di = ni;
                }
                let den = dr * dr + di * di;
                if den == 0.0 || !den.is_finite() {
                    continue;
                }
                let sr = (pr * dr + pi_ * di) / den;
                let si = (pi_ * dr - pr * di) / den;
                roots[i].0 -= sr;
                roots[i].1 -= si;
                max_step = max_step.max(sr.abs() + si.abs());
            }
            if max_step < 1e-13 {
                break;
            }
        }
        roots
    }
}

/// Best rational approximation with bounded denominator via continued
/// fractions; `None` when the residual is not negligible at the working
/// precision.
pub fn rationalize(x: &BigFixed, max_den: u64) -> Option<Rational> {
    let mut p_prev = Integer::one();
    let mut p = x.floor_int();
    let mut q_prev = Integer::zero();
    let mut q = Integer::one();
    let mut frac = x.sub(&BigFixed::from_rational(
        &Rational::from_integer(p.clone()),
        x.bits(),
    ));
    let bound = Integer::from(max_den);
    for _ in 0..120 {
        let cand = Rational::new(p.clone(), q.clone());
        let diff = x.sub(&BigFixed::from_rational(&cand, x.bits()));
        if diff.abs_smaller_than_2pow(x.bits() as i64 * 3 / 4) {
            return Some(cand);
        }
        if frac.is_zero() {
            break;
        }
        let inv = BigFixed::one(x.bits()).div(&frac);
        let a = inv.floor_int();
        frac = inv.sub(&BigFixed::from_rational(
            &Rational::from_integer(a.clone()),
            x.bits(),
        ));
        let p_new = &a * &p + &p_prev;
        let q_new = &a * &q + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_new;
        q = q_new;
        if q > bound {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_i};

    fn poly(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| rat_i(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let p = poly(&[2, -3, 0, 1]);
        let d = poly(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, poly(&[-2, 1, 1]));
        let g = UPoly::gcd(&p, &p.derivative());
        assert_eq!(g, poly(&[-1, 1]));
    }

    #[test]
    fn squarefree_decomposition_matches() {
        // x^2 (x-1)^3 (x+3)
        let p = UPoly::linear_root(&rat_i(0))
            .mul(&UPoly::linear_root(&rat_i(0)))
            .mul(&UPoly::linear_root(&rat_i(1)))
            .mul(&UPoly::linear_root(&rat_i(1)))
            .mul(&UPoly::linear_root(&rat_i(1)))
            .mul(&UPoly::linear_root(&rat_i(-3)));
        let sf = p.squarefree_decomposition();
        assert_eq!(sf.len(), 3);
        assert_eq!(sf[0], (UPoly::linear_root(&rat_i(-3)), 1));
        assert_eq!(sf[1], (UPoly::linear_root(&rat_i(0)), 2));
        assert_eq!(sf[2], (UPoly::linear_root(&rat_i(1)), 3));
    }

    #[test]
    fn rational_roots_with_multiplicities() {
        // (2x-3)^2 (x+5) (x^2+1)
        let p = UPoly::new(vec![rat(-3, 2), rat_i(1)])
            .mul(&UPoly::new(vec![rat(-3, 2), rat_i(1)]))
            .mul(&UPoly::linear_root(&rat_i(-5)))
            .mul(&poly(&[1, 0, 1]));
        let roots = p.rational_roots();
        assert_eq!(roots, vec![(rat_i(-5), 1), (rat(3, 2), 2)]);
    }

    #[test]
    fn roots_with_larger_denominators() {
        // roots 7/97, -13/89, 1
        let p = UPoly::new(vec![rat(-7, 97), rat_i(1)])
            .mul(&UPoly::new(vec![rat(13, 89), rat_i(1)]))
            .mul(&UPoly::linear_root(&rat_i(1)));
        let roots = p.rational_roots();
        assert_eq!(
            roots,
            vec![(rat(-13, 89), 1), (rat(7, 97), 1), (rat_i(1), 1)]
        );
    }

    #[test]
    fn multiplicity_query() {
        let p = poly(&[0, 0, 0, 1]); // x^3
        assert_eq!(p.root_multiplicity(&rat_i(0)), 3);
        assert_eq!(p.root_multiplicity(&rat_i(2)), 0);
    }
}
