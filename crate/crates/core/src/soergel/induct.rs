//! Induction `M ↦ (C ⊗_{C^s} M)⟨1⟩` by an explicit quotient of `C ⊗_Q M`.

use num_traits::Zero;

use super::module::GradedModule;
use crate::arith::{SparseEchelon, SparseRow};
use crate::coinvariant::CoinvariantRing;
use crate::error::{Error, Result};
use crate::{limits, QMatrix, Rational};

/// `(C ⊗_{C^{s_i}} M)⟨1⟩`, with `x_j` acting on the left factor.
pub fn induct(ring: &CoinvariantRing, i: usize, m: &GradedModule) -> Result<GradedModule> {
    let n = ring.rank();
    if m.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: m.rank() });
    }
    if i == 0 || i >= n {
        return Err(Error::Invariant(format!("s_{i} is not a simple reflection of S_{n}")));
    }
    let dc = ring.dim();
    let dm = m.dim();
    limits::check_dim("C ⊗ M", dc * dm)?;

    // Columns run from the top degree of C down, so the free columns left
    // after elimination are the low-degree tensors 1⊗m, x⊗m.
    let col = |a: usize, b: usize| (dc - 1 - a) * dm + b;

    let monomial_actions: Vec<QMatrix> =
        ring.basis().iter().map(|e| m.monomial_action(e)).collect();
    let act = |f: &[Rational]| -> QMatrix {
        let mut out = QMatrix::zeros(dm, dm);
        for (a, c) in f.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &monomial_actions[a].scale(c);
            }
        }
        out
    };

    let invariants: Vec<_> = ring
        .invariants_basis(i)
        .into_iter()
        .filter(|f| ring.homogeneous_degree(f).is_some_and(|d| d > 0))
        .collect();

    let mut relations = SparseEchelon::<Rational>::new(dc * dm);
    for f in &invariants {
        let rho = act(f.coords());
        for a in 0..dc {
            let cf = ring.mul(&ring.basis_element(a), f);
            for b in 0..dm {
                let mut row: SparseRow<Rational> = Vec::new();
                for (a2, x) in cf.coords().iter().enumerate() {
                    if !x.is_zero() {
                        row.push((col(a2, b), x.clone()));
                    }
                }
                for b2 in 0..dm {
                    let y = &rho[(b2, b)];
                    if !y.is_zero() {
                        row.push((col(a, b2), -y.clone()));
                    }
                }
                relations.insert(row);
            }
        }
    }

    let free = relations.free_columns();
    if free.len() != 2 * dm {
        return Err(Error::Invariant(format!(
            "induction produced dimension {} instead of {}",
            free.len(),
            2 * dm
        )));
    }
    let decode = |c: usize| (dc - 1 - c / dm, c % dm);
    let mut quotient: Vec<(i32, usize)> = free
        .iter()
        .map(|&c| {
            let (a, b) = decode(c);
            (ring.basis_degree(a) + m.degrees()[b] - 1, c)
        })
        .collect();
    quotient.sort();
    let position: std::collections::HashMap<usize, usize> =
        quotient.iter().enumerate().map(|(k, &(_, c))| (c, k)).collect();
    let degrees: Vec<i32> = quotient.iter().map(|&(d, _)| d).collect();

    let q = quotient.len();
    let actions = (1..=n)
        .map(|j| {
            let xj = ring.multiplication_matrix(j);
            let mut out = QMatrix::zeros(q, q);
            for (k, &(_, c)) in quotient.iter().enumerate() {
                let (a, b) = decode(c);
                let image: SparseRow<Rational> = (0..dc)
                    .filter(|&a2| !xj[(a2, a)].is_zero())
                    .map(|a2| (col(a2, b), xj[(a2, a)].clone()))
                    .collect();
                for (c2, x) in relations.reduce(image) {
                    out[(position[&c2], k)] = x;
                }
            }
            out
        })
        .collect();
    Ok(GradedModule::from_parts_unchecked(degrees, actions))
}
