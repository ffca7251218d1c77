//! Characters and explicit matrix representations.

mod chartab;

pub use chartab::{character_table, verify_columns, verify_orthogonality, Character};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;
use crate::groups::{FiniteGroup, SubgroupHandle};
use crate::linalg::Matrix;
use crate::CycMatrix;

/// Default bound on |G| for building explicit irreducible matrices.
pub const DEFAULT_MATRIX_BOUND: usize = 200;

/// A representation given by one matrix per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    dim: usize,
    matrices: Vec<CycMatrix>,
}

impl MatrixRep {
    pub fn from_matrices(matrices: Vec<CycMatrix>) -> Self {
        let dim = matrices.first().map_or(0, |m| m.rows());
        MatrixRep { dim, matrices }
    }

    /// Extend generator images along the group's words and verify.
    pub fn from_generators(g: &FiniteGroup, dim: usize, gen_images: &[CycMatrix]) -> Result<Self> {
        if gen_images.len() != g.generators().len() {
            return Err(Error::validation("wrong number of generator images"));
        }
        let matrices = (0..g.order())
            .map(|x| {
                g.word(x)
                    .iter()
                    .fold(CycMatrix::identity(dim), |acc, &s| acc.mul(&gen_images[s as usize]))
            })
            .collect();
        let r = MatrixRep { dim, matrices };
        r.verify(g)?;
        Ok(r)
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        MatrixRep {
            dim: 1,
            matrices: vec![CycMatrix::identity(1); g.order()],
        }
    }

    /// One-dimensional representation from a linear character.
    pub fn linear(g: &FiniteGroup, chi: &Character) -> Self {
        MatrixRep {
            dim: 1,
            matrices: (0..g.order())
                .map(|x| CycMatrix::scalar(1, chi.at(g, x).clone()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, x: usize) -> &CycMatrix {
        &self.matrices[x]
    }

    pub fn matrices(&self) -> &[CycMatrix] {
        &self.matrices
    }

    /// ρ(1) = I and ρ(x)ρ(s) = ρ(xs) for every x and generator s.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        if self.matrices.len() != g.order() {
            return Err(Error::validation("one matrix per element required"));
        }
        if !self.matrices[0].is_identity() {
            return Err(Error::validation("identity is not represented by I"));
        }
        for x in 0..g.order() {
            for &s in g.generators() {
                if self.matrices[x].mul(&self.matrices[s]) != self.matrices[g.mul(x, s)] {
                    return Err(Error::validation(format!("not multiplicative at ({x}, {s})")));
                }
            }
        }
        Ok(())
    }

    pub fn character(&self, g: &FiniteGroup) -> Character {
        Character::new(
            g.conjugacy_classes()
                .iter()
                .map(|c| self.matrices[c[0]].trace())
                .collect(),
        )
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> MatrixRep {
        MatrixRep {
            dim: self.dim + other.dim,
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    pub fn tensor(&self, other: &MatrixRep) -> MatrixRep {
        MatrixRep {
            dim: self.dim * other.dim,
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.kron(b))
                .collect(),
        }
    }

    /// Contragredient: ρ(g⁻¹)ᵀ.
    pub fn dual(&self, g: &FiniteGroup) -> MatrixRep {
        MatrixRep {
            dim: self.dim,
            matrices: (0..g.order())
                .map(|x| self.matrices[g.inv(x)].transpose())
                .collect(),
        }
    }

    /// Conjugate by an invertible matrix: x ↦ P ρ(x) P⁻¹.
    pub fn conjugate_by(&self, p: &CycMatrix) -> Result<MatrixRep> {
        let pinv = p.inverse().ok_or_else(|| Error::validation("singular change of basis"))?;
        Ok(MatrixRep {
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| p.mul(m).mul(&pinv)).collect(),
        })
    }

    /// Pull back along a map of element indices (e.g. restriction, inflation).
    pub fn pullback(&self, map: &[usize]) -> MatrixRep {
        MatrixRep {
            dim: self.dim,
            matrices: map.iter().map(|&x| self.matrices[x].clone()).collect(),
        }
    }
}

/// Intertwiners {T : T ρ1(g) = ρ2(g) T}; solved on generators.
pub fn hom_space(g: &FiniteGroup, r1: &MatrixRep, r2: &MatrixRep) -> Vec<CycMatrix> {
    let (d1, d2) = (r1.dim(), r2.dim());
    let nvars = d1 * d2;
    if nvars == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for &s in g.generators() {
        let (a, b) = (r1.matrix(s), r2.matrix(s));
        for i in 0..d2 {
            for j in 0..d1 {
                let mut row = vec![Cyclotomic::zero(); nvars];
                for k in 0..d1 {
                    let v = a.get(k, j);
                    if !v.is_zero() {
                        row[i * d1 + k] = &row[i * d1 + k] + v;
                    }
                }
                for k in 0..d2 {
                    let v = b.get(i, k);
                    if !v.is_zero() {
                        row[k * d1 + j] = &row[k * d1 + j] - v;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..nvars)
            .map(|i| {
                let mut v = vec![Cyclotomic::zero(); nvars];
                v[i] = Cyclotomic::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    basis
        .into_iter()
        .map(|v| CycMatrix::from_vec(d2, d1, v))
        .collect()
}

/// Restrict a representation of G to the subgroup H (indexed as in
/// [`FiniteGroup::subgroup_as_group`]).
pub fn restrict(rho: &MatrixRep, h: &SubgroupHandle) -> MatrixRep {
    rho.pullback(h.elements())
}

/// Induce a representation of H (indexed as in `subgroup_as_group`) to G.
pub fn induce(g: &FiniteGroup, h: &SubgroupHandle, pi: &MatrixRep) -> MatrixRep {
    let cosets = g.left_cosets(h);
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in h.elements().iter().enumerate() {
        pos[x] = i;
    }
    let r = reps.len();
    let d = pi.dim();
    let matrices = (0..g.order())
        .map(|x| {
            let mut m = CycMatrix::zeros(r * d, r * d);
            for (j, &tj) in reps.iter().enumerate() {
                let y = g.mul(x, tj);
                for (i, &ti) in reps.iter().enumerate() {
                    let hh = g.mul(g.inv(ti), y);
                    if pos[hh] != usize::MAX {
                        let blk = pi.matrix(pos[hh]);
                        for a in 0..d {
                            for b in 0..d {
                                m.set(i * d + a, j * d + b, blk.get(a, b).clone());
                            }
                        }
                        break;
                    }
                }
            }
            m
        })
        .collect();
    MatrixRep {
        dim: r * d,
        matrices,
    }
}

/// Induced class function from H to G.
pub fn induce_character(g: &FiniteGroup, h: &SubgroupHandle, hgroup: &FiniteGroup, psi: &Character) -> Character {
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in h.elements().iter().enumerate() {
        pos[x] = i;
    }
    let vals: Vec<Cyclotomic> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let x = c[0];
            let mut acc = Cyclotomic::zero();
            for y in 0..g.order() {
                let z = g.conj(g.inv(y), x);
                if pos[z] != usize::MAX {
                    acc = &acc + psi.at(hgroup, pos[z]);
                }
            }
            &acc * &Cyclotomic::from_rational(crate::exactnum::rat(1, h.order() as i64))
        })
        .collect();
    Character::new(vals)
}

/// Restricted class function on H (indexed as in `subgroup_as_group`).
pub fn restrict_character(g: &FiniteGroup, h: &SubgroupHandle, hgroup: &FiniteGroup, chi: &Character) -> Character {
    Character::new(
        hgroup
            .conjugacy_classes()
            .iter()
            .map(|c| chi.at(g, h.elements()[c[0]]).clone())
            .collect(),
    )
}

/// Left-regular action: (g·x)[g y] = x[y].
fn left_translate(g: &FiniteGroup, s: usize, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(); v.len()];
    for (y, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[g.mul(s, y)] = c.clone();
        }
    }
    out
}

/// Subgroups generated by at most two elements, deduplicated.
fn small_subgroups(g: &FiniteGroup) -> Vec<SubgroupHandle> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut push = |els: Vec<usize>| {
        if seen.insert(els.clone()) {
            out.push(els);
        }
    };
    for a in 0..g.order() {
        push(g.generated(&[a]));
    }
    if g.order() <= DEFAULT_MATRIX_BOUND {
        for a in 1..g.order() {
            for b in a + 1..g.order() {
                push(g.generated(&[a, b]));
            }
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out.into_iter().map(|s| SubgroupHandle::new(g, s)).collect()
}

/// Explicit irreducible representation affording `chi`.
pub fn irrep_for(g: &FiniteGroup, chi: &Character, subgroups: &[SubgroupHandle]) -> Result<MatrixRep> {
    let d = chi.dim();
    if d == 1 {
        return Ok(MatrixRep::linear(g, chi));
    }
    let chi_el = chi.on_elements(g);
    for h in subgroups {
        let (hg, emb) = g.subgroup_as_group(h);
        let res = restrict_character(g, h, &hg, chi);
        for psi in character_table(&hg).into_iter().filter(|c| c.dim() == 1) {
            if !res.inner(&psi, &hg).is_one() {
                continue;
            }
            // x = e_χ e_ψ up to a nonzero scalar.
            let mut x = vec![Cyclotomic::zero(); g.order()];
            for (hi, &hx) in emb.iter().enumerate() {
                let w = psi.at(&hg, hi).conj();
                for gx in 0..g.order() {
                    let c = &chi_el[g.inv(gx)] * &w;
                    if !c.is_zero() {
                        let t = g.mul(gx, hx);
                        x[t] = &x[t] + &c;
                    }
                }
            }
            return Ok(realize_ideal(g, &x, d));
        }
    }
    Err(Error::unsupported(
        "no subgroup with a multiplicity-one linear constituent found",
    ))
}

/// Representation on the left ideal K[G]x, which must have dimension d.
fn realize_ideal(g: &FiniteGroup, x: &[Cyclotomic], d: usize) -> MatrixRep {
    let mut vecs: Vec<Vec<Cyclotomic>> = vec![x.to_vec()];
    let mut span = Matrix::from_rows(vecs.clone()).rref().0;
    let mut rank = 1;
    let mut i = 0;
    while rank < d && i < vecs.len() {
        for &s in g.generators() {
            let y = left_translate(g, s, &vecs[i]);
            let mut rows = span.to_rows();
            rows.truncate(rank);
            rows.push(y.clone());
            let (r, piv) = Matrix::from_rows(rows).rref();
            if piv.len() > rank {
                rank = piv.len();
                span = r;
                vecs.push(y);
                if rank == d {
                    break;
                }
            }
        }
        i += 1;
    }
    assert_eq!(rank, d, "left ideal has unexpected dimension");
    let (basis, pivots) = span.rref();
    let basis: Vec<Vec<Cyclotomic>> = (0..d).map(|r| basis.row(r).to_vec()).collect();
    let matrices = (0..g.order())
        .map(|s| {
            let sinv = g.inv(s);
            let mut m = CycMatrix::zeros(d, d);
            for (j, b) in basis.iter().enumerate() {
                for (i, &p) in pivots.iter().enumerate() {
                    // (s·b)[p] = b[s⁻¹ p]
                    m.set(i, j, b[g.mul(sinv, p)].clone());
                }
            }
            m
        })
        .collect();
    MatrixRep::from_matrices(matrices)
}

/// Irreducible representations in character-table order.
pub fn irreps_matrices(g: &FiniteGroup) -> Result<Vec<MatrixRep>> {
    irreps_matrices_bounded(g, DEFAULT_MATRIX_BOUND)
}

pub fn irreps_matrices_bounded(g: &FiniteGroup, bound: usize) -> Result<Vec<MatrixRep>> {
    if g.order() > bound {
        return Err(Error::MatrixBound(bound));
    }
    let table = character_table(g);
    irreps_for_table(g, &table)
}

/// Irreducible representations for a precomputed character table.
pub fn irreps_for_table(g: &FiniteGroup, table: &[Character]) -> Result<Vec<MatrixRep>> {
    let subs = if table.iter().any(|c| c.dim() > 1) {
        small_subgroups(g)
    } else {
        Vec::new()
    };
    table.iter().map(|chi| irrep_for(g, chi, &subs)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn q8_two_dim_irrep() {
        let g = catalog::quaternion();
        let irr = irreps_matrices(&g).unwrap();
        let two = irr.last().unwrap();
        assert_eq!(two.dim(), 2);
        two.verify(&g).unwrap();
        let minus_one = g.center().elements()[1];
        assert_eq!(two.matrix(minus_one).trace(), Cyclotomic::from_int(-2));
        for (r, c) in irr.iter().zip(character_table(&g)) {
            assert_eq!(r.character(&g), c);
        }
    }

    #[test]
    fn induction_from_a3() {
        let g = catalog::symmetric(3);
        let a3 = catalog::alternating_in(&g);
        let (h, _) = g.subgroup_as_group(&a3);
        let t = character_table(&h);
        let rho = MatrixRep::linear(&h, &t[1]);
        let ind = induce(&g, &a3, &rho);
        ind.verify(&g).unwrap();
        let chi = ind.character(&g);
        assert!(chi.is_irreducible(&g));
        assert_eq!(chi.dim(), 2);
        assert_eq!(induce_character(&g, &a3, &h, &t[1]), chi);
    }

    #[test]
    fn hom_space_dimensions() {
        let g = catalog::symmetric(3);
        let irr = irreps_matrices(&g).unwrap();
        assert_eq!(hom_space(&g, &irr[2], &irr[2]).len(), 1);
        assert_eq!(hom_space(&g, &irr[0], &irr[1]).len(), 0);
        let dbl = irr[2].direct_sum(&irr[2]);
        assert_eq!(hom_space(&g, &irr[2], &dbl).len(), 2);
    }

    #[test]
    fn larger_irreps() {
        for g in [catalog::symmetric(4), catalog::sl23(), catalog::alternating(5), catalog::heisenberg(3)] {
            let t = character_table(&g);
            let irr = irreps_for_table(&g, &t).unwrap();
            for (r, c) in irr.iter().zip(&t) {
                r.verify(&g).unwrap();
                assert_eq!(&r.character(&g), c);
            }
        }
    }
}
