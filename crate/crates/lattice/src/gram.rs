//! Gram-matrix constructors and the lattice spec-string parser.
//!
//! Grammar: a sum of terms `k*NAME(lambda)`, where NAME is one of
//! `H`, `A<n>`, `D<n>`, `E6`, `E7`, `E8`, or a rank-one lattice `<m>`;
//! `k` is an optional multiplicity and `(lambda)` an optional integer
//! scaling of the form. Examples: `H + 2*E8(-1) + <-4>`,
//! `H(2) + H(2) + 2*<-2>`.

use exactalg::{IntMatrix, Integer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("could not parse lattice spec near `{0}`")]
    ParseError(String),
    #[error("unknown lattice name `{0}`")]
    UnknownLatticeName(String),
    #[error("degenerate Gram matrix")]
    DegenerateGram,
}

/// A lattice presented by a symmetric Gram matrix, together with the
/// spec string it was built from.
#[derive(Clone, Debug)]
pub struct GramLattice {
    pub gram: IntMatrix,
    pub label: String,
}

/// Positive definite A_n: tridiagonal (2, -1).
fn a_n(n: usize) -> IntMatrix {
    assert!(n >= 1);
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        m[(i, i)] = Integer::from(2);
        if i + 1 < n {
            m[(i, i + 1)] = Integer::from(-1);
            m[(i + 1, i)] = Integer::from(-1);
        }
    }
    m
}

/// Positive definite D_n (n >= 2): chain 0..n-2 with node n-1 attached to
/// node n-3; D_2 = A_1 + A_1, D_3 = A_3.
fn d_n(n: usize) -> IntMatrix {
    assert!(n >= 2);
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        m[(i, i)] = Integer::from(2);
    }
    for i in 0..n.saturating_sub(2) {
        m[(i, i + 1)] = Integer::from(-1);
        m[(i + 1, i)] = Integer::from(-1);
    }
    if n >= 3 {
        m[(n - 3, n - 1)] = Integer::from(-1);
        m[(n - 1, n - 3)] = Integer::from(-1);
    }
    m
}

/// Positive definite E_n for n = 6, 7, 8, as the star graph T(2,3,n-3).
fn e_n(n: usize) -> IntMatrix {
    assert!((6..=8).contains(&n));
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        m[(i, i)] = Integer::from(2);
    }
    let mut connect = |i: usize, j: usize| {
        m[(i, j)] = Integer::from(-1);
        m[(j, i)] = Integer::from(-1);
    };
    // center 0; arms 1 | 2-3 | 4..n-1
    connect(0, 1);
    connect(0, 2);
    connect(2, 3);
    connect(0, 4);
    for i in 4..n - 1 {
        connect(i, i + 1);
    }
    m
}

fn hyperbolic() -> IntMatrix {
    let mut m = IntMatrix::zero(2, 2);
    m[(0, 1)] = Integer::from(1);
    m[(1, 0)] = Integer::from(1);
    m
}

fn base_gram(name: &str) -> Result<IntMatrix, LatticeError> {
    if name == "H" {
        return Ok(hyperbolic());
    }
    if let Some(rest) = name.strip_prefix('A') {
        let n: usize = rest
            .parse()
            .map_err(|_| LatticeError::UnknownLatticeName(name.to_string()))?;
        if n == 0 {
            return Err(LatticeError::UnknownLatticeName(name.to_string()));
        }
        return Ok(a_n(n));
    }
    if let Some(rest) = name.strip_prefix('D') {
        let n: usize = rest
            .parse()
            .map_err(|_| LatticeError::UnknownLatticeName(name.to_string()))?;
        if n < 2 {
            return Err(LatticeError::UnknownLatticeName(name.to_string()));
        }
        return Ok(d_n(n));
    }
    if let Some(rest) = name.strip_prefix('E') {
        let n: usize = rest
            .parse()
            .map_err(|_| LatticeError::UnknownLatticeName(name.to_string()))?;
        if !(6..=8).contains(&n) {
            return Err(LatticeError::UnknownLatticeName(name.to_string()));
        }
        return Ok(e_n(n));
    }
    Err(LatticeError::UnknownLatticeName(name.to_string()))
}

/// Parse one term: `[k*]NAME[(lambda)]` or `[k*]<m>`.
fn parse_term(term: &str) -> Result<(usize, IntMatrix), LatticeError> {
    let term = term.trim();
    let (mult, body) = match term.split_once('*') {
        Some((k, rest)) => {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| LatticeError::ParseError(term.to_string()))?;
            (k, rest.trim())
        }
        None => (1, term),
    };
    if mult == 0 {
        return Err(LatticeError::ParseError(term.to_string()));
    }
    if let Some(inner) = body.strip_prefix('<') {
        let inner = inner
            .strip_suffix('>')
            .ok_or_else(|| LatticeError::ParseError(term.to_string()))?;
        let m: i64 = inner
            .trim()
            .parse()
            .map_err(|_| LatticeError::ParseError(term.to_string()))?;
        let mut g = IntMatrix::zero(1, 1);
        g[(0, 0)] = Integer::from(m);
        return Ok((mult, g));
    }
    let (name, scale) = match body.split_once('(') {
        Some((name, rest)) => {
            let lam = rest
                .strip_suffix(')')
                .ok_or_else(|| LatticeError::ParseError(term.to_string()))?;
            let lam: i64 = lam
                .trim()
                .parse()
                .map_err(|_| LatticeError::ParseError(term.to_string()))?;
            (name.trim(), lam)
        }
        None => (body, 1),
    };
    let g = base_gram(name)?.scale(&Integer::from(scale));
    Ok((mult, g))
}

/// Assemble the block direct sum described by a spec string.
pub fn build_lattice(spec: &str) -> Result<GramLattice, LatticeError> {
    let mut blocks: Vec<IntMatrix> = Vec::new();
    for term in spec.split('+') {
        if term.trim().is_empty() {
            return Err(LatticeError::ParseError(term.to_string()));
        }
        let (mult, g) = parse_term(term)?;
        for _ in 0..mult {
            blocks.push(g.clone());
        }
    }
    let mut iter = blocks.into_iter();
    let first = iter.next().ok_or_else(|| LatticeError::ParseError(spec.to_string()))?;
    let gram = iter.fold(first, |acc, b| acc.direct_sum(&b));
    Ok(GramLattice {
        gram,
        label: spec.trim().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_of(spec: &str) -> i64 {
        use num_traits::ToPrimitive;
        build_lattice(spec).unwrap().gram.det().to_i64().unwrap()
    }

    #[test]
    fn hyperbolic_plane() {
        let h = build_lattice("H").unwrap();
        assert_eq!(h.gram, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(det_of("A1"), 2);
        assert_eq!(det_of("A7"), 8);
        assert_eq!(det_of("D4"), 4);
        assert_eq!(det_of("D10"), 4);
        assert_eq!(det_of("E6"), 3);
        assert_eq!(det_of("E7"), 2);
        assert_eq!(det_of("E8"), 1);
        assert_eq!(det_of("<-4>"), -4);
    }

    #[test]
    fn constructors_are_even() {
        for spec in ["A5", "D7", "E6", "E7", "E8", "H"] {
            let g = build_lattice(spec).unwrap().gram;
            for i in 0..g.rows() {
                use num_traits::Zero;
                assert!((&g[(i, i)] % Integer::from(2)).is_zero(), "{spec}");
            }
        }
    }

    #[test]
    fn parse_multiplicity_and_scale() {
        let l = build_lattice("H + 2*E8(-1) + <-4>").unwrap();
        assert_eq!(l.gram.rows(), 19);
        assert!(build_lattice("3*Q5").is_err());
        assert!(build_lattice("").is_err());
        assert!(build_lattice("H + ").is_err());
    }
}
