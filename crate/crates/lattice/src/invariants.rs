//! Rank, signature, discriminant group, length and parity of a lattice.

use crate::gram::{GramLattice, LatticeError};
use exactalg::intmat::smith_normal_form;
use exactalg::{IntMatrix, Integer, Rational};
use num_traits::{One, Signed, Zero};

/// The invariants that classify an even indefinite two-elementary lattice,
/// plus the raw discriminant-group data they are computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NikulinTriple {
    pub rank: usize,
    /// Number of positive and negative eigenvalues (n+, n-).
    pub signature: (usize, usize),
    /// Elementary divisors > 1 of the Gram matrix: the discriminant group is
    /// the direct sum of Z/d for these d.
    pub disc_group: Vec<Integer>,
    /// Minimal number of generators of the discriminant group.
    pub length: usize,
    /// 0 when the discriminant quadratic form is integer-valued, 1 otherwise.
    pub parity: u8,
}

impl NikulinTriple {
    pub fn is_two_elementary(&self) -> bool {
        self.disc_group.iter().all(|d| *d == Integer::from(2))
    }

    /// The `(rank, length, parity)` triple.
    pub fn triple(&self) -> (usize, usize, u8) {
        (self.rank, self.length, self.parity)
    }
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
fn signature(gram: &IntMatrix) -> (usize, usize) {
    let n = gram.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(gram[(i, j)].clone())).collect())
        .collect();
    let mut pos = 0;
    let mut neg = 0;
    for k in 0..n {
        if a[k][k].is_zero() {
            // look for a later nonzero diagonal entry to swap in
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // add row/col j into k: new diagonal 2 a_kj
                for idx in 0..n {
                    let v = a[j][idx].clone();
                    a[k][idx] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                continue; // zero row: degenerate direction
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in 0..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
            for row in a.iter_mut() {
                let delta = &factor * &row[k];
                row[i] -= delta;
            }
        }
    }
    (pos, neg)
}

/// Compute all invariants of a nondegenerate lattice.
pub fn invariants(lattice: &GramLattice) -> Result<NikulinTriple, LatticeError> {
    let gram = &lattice.gram;
    assert!(gram.is_symmetric(), "Gram matrix must be symmetric");
    if gram.det().is_zero() {
        return Err(LatticeError::DegenerateGram);
    }
    let rank = gram.rows();
    let sig = signature(gram);
    let snf = smith_normal_form(gram).map_err(|_| LatticeError::DegenerateGram)?;
    let disc_group: Vec<Integer> = snf
        .diagonal()
        .into_iter()
        .filter(|d| *d > Integer::one())
        .collect();
    let length = disc_group.len();

    // Discriminant-form generators: g_i = M^(-1) U^(-1) e_i for the rows i
    // with d_i > 1. Since U M V = D, we have M^(-1) U^(-1) = V D^(-1), so
    // g_i = (1/d_i) * (column i of V).
    let parity = {
        let mut gens: Vec<Vec<Rational>> = Vec::new();
        for (i, d) in snf.diagonal().iter().enumerate() {
            if *d > Integer::one() {
                let col: Vec<Rational> = (0..rank)
                    .map(|r| Rational::new(snf.v[(r, i)].clone(), d.clone()))
                    .collect();
                gens.push(col);
            }
        }
        let q_integral = |x: &[Rational]| -> bool {
            // q(x) = x^T M x must be an integer
            let mut acc = Rational::zero();
            for i in 0..rank {
                for j in 0..rank {
                    acc += &x[i] * &x[j] * Rational::from_integer(gram[(i, j)].clone());
                }
            }
            acc.is_integer()
        };
        let mut delta = 0u8;
        'outer: for (i, g) in gens.iter().enumerate() {
            if !q_integral(g) {
                delta = 1;
                break;
            }
            for h in gens.iter().skip(i + 1) {
                let sum: Vec<Rational> = g.iter().zip(h).map(|(a, b)| a + b).collect();
                if !q_integral(&sum) {
                    delta = 1;
                    break 'outer;
                }
            }
        }
        delta
    };

    Ok(NikulinTriple {
        rank,
        signature: sig,
        disc_group,
        length,
        parity,
    })
}

/// Evaluate several specs and report whether all invariants agree.
pub fn triple_equal(specs: &[&str]) -> Result<(bool, Vec<NikulinTriple>), LatticeError> {
    let mut triples = Vec::new();
    for s in specs {
        triples.push(invariants(&crate::gram::build_lattice(s)?)?);
    }
    let all_equal = triples.windows(2).all(|w| w[0] == w[1]);
    Ok((all_equal, triples))
}
