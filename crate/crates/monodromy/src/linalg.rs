//! Dense complex matrices at arbitrary precision: just enough linear
//! algebra for monodromy suites of rank at most eight.

use exactalg::cnum::BigComplex;
use exactalg::real::BigFixed;
use exactalg::Rational;
use std::fmt;

#[derive(Clone)]
pub struct CMatrix {
    n: usize,
    data: Vec<BigComplex>,
}

impl CMatrix {
    pub fn zero(n: usize, bits: u32) -> Self {
        CMatrix {
            n,
            data: vec![BigComplex::zero(bits); n * n],
        }
    }

    pub fn identity(n: usize, bits: u32) -> Self {
        let mut m = Self::zero(n, bits);
        for i in 0..n {
            m[(i, i)] = BigComplex::one(bits);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigComplex) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        CMatrix { n, data }
    }

    pub fn from_rational_rows(rows: &[Vec<Rational>], bits: u32) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| BigComplex::from_rational(&rows[i][j], bits))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.data.iter().map(|c| c.bits()).max().unwrap_or(64)
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        CMatrix::from_fn(n, |i, j| {
            let mut acc = BigComplex::zero(self.data[0].bits());
            for k in 0..n {
                acc = acc.add(&self[(i, k)].mul(&o[(k, j)]));
            }
            acc
        })
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(i, j)].add(&o[(i, j)]))
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(i, j)].sub(&o[(i, j)]))
    }

    pub fn scale(&self, c: &BigComplex) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(i, j)].mul(c))
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn mul_vec(&self, v: &[BigComplex]) -> Vec<BigComplex> {
        (0..self.n)
            .map(|i| {
                let mut acc = BigComplex::zero(v[0].bits());
                for k in 0..self.n {
                    acc = acc.add(&self[(i, k)].mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    /// Inverse by Gauss-Jordan with partial pivoting on |.|.
    pub fn inverse(&self) -> CMatrix {
        let n = self.n;
        let bits = self.bits();
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n, bits);
        for k in 0..n {
            // pivot
            let mut best = k;
            let mut best_mag = a[(k, k)].norm_sqr();
            for i in k + 1..n {
                let m = a[(i, k)].norm_sqr();
                if m.cmp_value(&best_mag) == std::cmp::Ordering::Greater {
                    best = i;
                    best_mag = m;
                }
            }
            assert!(!a[(best, k)].is_zero(), "singular matrix");
            if best != k {
                for j in 0..n {
                    let (x, y) = (a[(k, j)].clone(), a[(best, j)].clone());
                    a[(k, j)] = y;
                    a[(best, j)] = x;
                    let (x, y) = (inv[(k, j)].clone(), inv[(best, j)].clone());
                    inv[(k, j)] = y;
                    inv[(best, j)] = x;
                }
            }
            let pinv = a[(k, k)].inv();
            for j in 0..n {
                a[(k, j)] = a[(k, j)].mul(&pinv);
                inv[(k, j)] = inv[(k, j)].mul(&pinv);
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let d1 = f.mul(&a[(k, j)]);
                    a[(i, j)] = a[(i, j)].sub(&d1);
                    let d2 = f.mul(&inv[(k, j)]);
                    inv[(i, j)] = inv[(i, j)].sub(&d2);
                }
            }
        }
        inv
    }

    pub fn trace(&self) -> BigComplex {
        let mut acc = BigComplex::zero(self.bits());
        for i in 0..self.n {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    /// Characteristic polynomial coefficients `c_0 + c_1 x + ... + x^n` by
    /// the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<BigComplex> {
        let n = self.n;
        let bits = self.bits();
        let mut coeffs = vec![BigComplex::zero(bits); n + 1];
        coeffs[n] = BigComplex::one(bits);
        let mut m = CMatrix::identity(n, bits);
        for k in 1..=n {
            m = self.mul(&m);
            let c = m.trace().div_i64(-(k as i64));
            coeffs[n - k] = c.clone();
            for i in 0..n {
                m[(i, i)] = m[(i, i)].add(&c);
            }
        }
        coeffs
    }

    /// Largest entry distance to another matrix.
    pub fn max_dist(&self, o: &CMatrix) -> BigFixed {
        let mut m = BigFixed::zero(self.bits());
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self[(i, j)].dist(&o[(i, j)]);
                if d.cmp_value(&m) == std::cmp::Ordering::Greater {
                    m = d;
                }
            }
        }
        m
    }

    pub fn max_abs(&self) -> BigFixed {
        self.max_dist(&CMatrix::zero(self.n, self.bits()))
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = BigComplex;
    fn index(&self, (i, j): (usize, usize)) -> &BigComplex {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigComplex {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                let (re, im) = self[(i, j)].to_f64_pair();
                write!(f, " {:.6}{:+.6}i", re, im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// Evaluate a polynomial (coefficients low-to-high) at z.
pub fn poly_eval(coeffs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let mut acc = BigComplex::zero(z.bits());
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// Polish a root of the polynomial by Newton iteration from `seed`.
pub fn newton_root(coeffs: &[BigComplex], seed: &BigComplex, iters: usize) -> BigComplex {
    let bits = seed.bits();
    let deriv: Vec<BigComplex> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.mul_i64(k as i64))
        .collect();
    let mut z = seed.clone();
    for _ in 0..iters {
        let f = poly_eval(coeffs, &z);
        let df = poly_eval(&deriv, &z);
        if df.is_zero() {
            break;
        }
        let step = f.div(&df);
        z = z.sub(&step);
        if step.abs().abs_smaller_than_2pow(bits as i64 - 8) {
            break;
        }
    }
    z
}

/// Rigorous two-sided bounds on the top two singular values via the traces
/// of the Gram matrix: with eigenvalues l1 >= l2 >= ... of A^H A,
/// `e1 = sum l_i` and `e2 = sum_{i<j} l_i l_j`, so
/// `l1 in [e1/n, e1]` and `l2 <= n e2 / e1`.
/// Returns `(sigma1_lower, sigma2_upper)`.
pub fn top_two_singular_bounds(a: &CMatrix) -> (BigFixed, BigFixed) {
    let g = a.conj_transpose().mul(a);
    let n = g.n();
    let bits = g.bits();
    let e1 = g.trace().re;
    let mut e2 = BigFixed::zero(bits);
    for i in 0..n {
        for j in i + 1..n {
            let term = g[(i, i)].mul(&g[(j, j)]).sub(&g[(i, j)].mul(&g[(j, i)]));
            e2 = e2.add(&term.re);
        }
    }
    // numerical floor: clamp tiny negatives from rounding
    if e2.is_negative() {
        e2 = BigFixed::zero(bits);
    }
    let sigma1_lower = e1.div_i64(n as i64).sqrt();
    let sigma2_upper = if e1.is_zero() {
        BigFixed::zero(bits)
    } else {
        e2.mul_i64(n as i64).div(&e1).sqrt()
    };
    (sigma1_lower, sigma2_upper)
}
