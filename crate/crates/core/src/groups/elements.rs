//! Concrete element types that generate groups: permutations and monomial
//! matrices over cyclotomic numbers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;
use crate::CycMatrix;

/// A permutation of 0..n as an image array. Composition is as functions:
/// (p·q)(i) = p(q(i)).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::validation(format!("not a permutation: {images:?}")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Build from 0-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Self {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                img[a as usize] = c[(i + 1) % c.len()];
            }
        }
        Perm(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    /// Pad to a larger degree with fixed points.
    pub fn extend(&self, n: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..n as u32);
        Perm(v)
    }
}

/// A monomial matrix: column j has the single nonzero entry `entries[j]`
/// in row `perm[j]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialMatrix {
    pub perm: Vec<u32>,
    pub entries: Vec<Cyclotomic>,
}

impl MonomialMatrix {
    pub fn identity(n: usize) -> Self {
        MonomialMatrix {
            perm: (0..n as u32).collect(),
            entries: vec![Cyclotomic::from_int(1); n],
        }
    }

    pub fn diagonal(entries: Vec<Cyclotomic>) -> Self {
        MonomialMatrix {
            perm: (0..entries.len() as u32).collect(),
            entries,
        }
    }

    /// From sparse (row, col, value) triples; must be monomial and invertible.
    pub fn from_sparse(dim: usize, items: &[(usize, usize, Cyclotomic)]) -> Result<Self> {
        let mut perm = vec![u32::MAX; dim];
        let mut entries = vec![Cyclotomic::from_int(0); dim];
        let mut row_used = vec![false; dim];
        for (r, c, v) in items {
            if *r >= dim || *c >= dim {
                return Err(Error::validation(format!("entry ({r},{c}) outside {dim}x{dim}")));
            }
            if num_traits::Zero::is_zero(v) {
                continue;
            }
            if perm[*c] != u32::MAX || row_used[*r] {
                return Err(Error::validation("matrix is not monomial"));
            }
            perm[*c] = *r as u32;
            row_used[*r] = true;
            entries[*c] = v.clone();
        }
        if perm.iter().any(|&p| p == u32::MAX) {
            return Err(Error::validation("monomial generator is not invertible"));
        }
        Ok(MonomialMatrix { perm, entries })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        // (AB)e_j = b_j a_{πB(j)} e_{πA(πB(j))}
        let perm = other.perm.iter().map(|&k| self.perm[k as usize]).collect();
        let entries = other
            .perm
            .iter()
            .zip(&other.entries)
            .map(|(&k, b)| b * &self.entries[k as usize])
            .collect();
        MonomialMatrix { perm, entries }
    }

    pub fn to_matrix(&self) -> CycMatrix {
        let n = self.dim();
        let mut m = CycMatrix::zeros(n, n);
        for j in 0..n {
            m.set(self.perm[j] as usize, j, self.entries[j].clone());
        }
        m
    }

    pub fn to_sparse(&self) -> Vec<(usize, usize, Cyclotomic)> {
        (0..self.dim())
            .map(|j| (self.perm[j] as usize, j, self.entries[j].clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_composition_is_functional() {
        let p = Perm::from_cycles(3, &[&[0, 1]]);
        let q = Perm::from_cycles(3, &[&[1, 2]]);
        // (p∘q)(1) = p(2) = 2
        assert_eq!(p.compose(&q).apply(1), 2);
        assert_eq!(p.compose(&p.inverse()), Perm::identity(3));
    }

    #[test]
    fn monomial_product_matches_dense() {
        let i = Cyclotomic::i();
        let a = MonomialMatrix::diagonal(vec![i.clone(), -i.clone()]);
        let b = MonomialMatrix::from_sparse(2, &[(0, 1, i.clone()), (1, 0, i.clone())]).unwrap();
        assert_eq!(a.mul(&b).to_matrix(), a.to_matrix().mul(&b.to_matrix()));
        assert!(MonomialMatrix::from_sparse(2, &[(0, 0, i)]).is_err());
    }
}
