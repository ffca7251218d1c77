//! Clifford theory for a normal subgroup N ◁ Γ, with an optional twist ♮
//! inflated from Γ/N.
//!
//! For π ∈ Irr(N) with stabilizer Γ_π the intertwiners I^γ ∈ Hom_N(γ·π, π)
//! are chosen on lowest-index representatives of Γ_π/N, scaled so that
//! their first nonzero entry is 1, and extended by I^{γ̃n} = I^{γ̃}π(n).
//! Then I^{γγ'} = κ_π(γ,γ') I^γ I^{γ'}.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, RootOfUnity};
use crate::groups::{FiniteGroup, GroupHom, SubgroupHandle};
use crate::reps::{character_table, hom_space, irreps_for_table, irreps_matrices, Character, MatrixRep};
use crate::tga::{exact_sqrt, is_coboundary, twisted_irreps, twisted_traces, TgaIrrep, TwoCocycle};
use crate::CycMatrix;

/// N as a group of its own, with the parent-to-N index map.
struct NormalView {
    group: FiniteGroup,
    embedding: Vec<usize>,
    pos: Vec<usize>,
}

impl NormalView {
    fn new(gamma: &FiniteGroup, n: &SubgroupHandle) -> Result<Self> {
        if n.parent_order() != gamma.order() {
            return Err(Error::validation("subgroup belongs to a different group"));
        }
        if !gamma.is_normal(n.elements()) {
            return Err(Error::validation("N is not normal in Γ"));
        }
        let (group, embedding) = gamma.subgroup_as_group(n);
        let mut pos = vec![usize::MAX; gamma.order()];
        for (i, &x) in embedding.iter().enumerate() {
            pos[x] = i;
        }
        Ok(NormalView { group, embedding, pos })
    }

    /// Index map of n ↦ γ⁻¹nγ on N.
    fn conjugation(&self, gamma: &FiniteGroup, g: usize) -> Vec<usize> {
        let gi = gamma.inv(g);
        self.embedding.iter().map(|&x| self.pos[gamma.conj(gi, x)]).collect()
    }

    /// Element values of γ·π given the element values of π.
    fn act(&self, gamma: &FiniteGroup, g: usize, vals: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.conjugation(gamma, g).iter().map(|&i| vals[i].clone()).collect()
    }
}

/// The Γ-orbit of an N-irrep, as indices into the character table of N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub members: Vec<usize>,
    pub stabilizer: Vec<usize>,
}

impl Orbit {
    /// Canonical representative: the smallest table index.
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn element_values(pi: &MatrixRep) -> Vec<Cyclotomic> {
    pi.matrices().iter().map(|m| m.trace()).collect()
}

fn orbit_in(gamma: &FiniteGroup, view: &NormalView, tables: &[Vec<Cyclotomic>], idx: usize) -> Orbit {
    let mut members = Vec::new();
    let mut stabilizer = Vec::new();
    for g in 0..gamma.order() {
        let moved = view.act(gamma, g, &tables[idx]);
        let j = tables.iter().position(|t| *t == moved).expect("conjugate of an irrep is an irrep");
        if j == idx {
            stabilizer.push(g);
        }
        members.push(j);
    }
    members.sort_unstable();
    members.dedup();
    Orbit { members, stabilizer }
}

fn check_irreducible(view: &NormalView, pi: &MatrixRep) -> Result<Vec<Cyclotomic>> {
    if pi.matrices().len() != view.group.order() {
        return Err(Error::validation(format!(
            "π has {} matrices but |N| = {}",
            pi.matrices().len(),
            view.group.order()
        )));
    }
    let vals = element_values(pi);
    let chi = Character::from_elements(&view.group, &vals);
    if !chi.is_irreducible(&view.group) {
        return Err(Error::validation("π is not irreducible"));
    }
    Ok(vals)
}

/// The orbit of π under Γ and its stabilizer Γ_π.
pub fn orbit_and_stabilizer(gamma: &FiniteGroup, n: &SubgroupHandle, pi: &MatrixRep) -> Result<(Orbit, SubgroupHandle)> {
    let view = NormalView::new(gamma, n)?;
    let vals = check_irreducible(&view, pi)?;
    let tables: Vec<Vec<Cyclotomic>> = character_table(&view.group)
        .iter()
        .map(|c| c.on_elements(&view.group))
        .collect();
    let idx = tables.iter().position(|t| *t == vals).expect("irreducible character is in the table");
    let orbit = orbit_in(gamma, &view, &tables, idx);
    let stab = SubgroupHandle::new(gamma, orbit.stabilizer.clone());
    Ok((orbit, stab))
}

/// How the intertwiners were normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// First nonzero entry of each I^γ̃ equals 1.
    FirstEntry,
    /// I^γ̃ = Pσ(γ̃)P⁻¹ for an extension σ of π to Γ_π; κ_π ≡ 1.
    Extension,
    /// First-entry intertwiners rescaled by exact square roots.
    SquareRoot,
}

/// Intertwiners and the cocycle κ_π on Γ_π/N.
#[derive(Clone, Debug)]
pub struct CliffordDatum {
    normal: SubgroupHandle,
    pi: MatrixRep,
    stabilizer: SubgroupHandle,
    quotient: FiniteGroup,
    /// Parent label of every element of Γ_π/N.
    representatives: Vec<usize>,
    /// Label in Γ_π/N for each parent element (usize::MAX outside Γ_π).
    label: Vec<usize>,
    intertwiners: Vec<CycMatrix>,
    kappa: TwoCocycle,
    normalization: Normalization,
    n_pos: Vec<usize>,
    full_quotient: FiniteGroup,
    full_proj: GroupHom,
    to_full: Vec<usize>,
}

impl CliffordDatum {
    pub fn normal(&self) -> &SubgroupHandle {
        &self.normal
    }

    pub fn pi(&self) -> &MatrixRep {
        &self.pi
    }

    pub fn stabilizer(&self) -> &SubgroupHandle {
        &self.stabilizer
    }

    /// Γ_π/N.
    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    /// Γ/N, on which ♮ lives.
    pub fn full_quotient(&self) -> &FiniteGroup {
        &self.full_quotient
    }

    /// Projection Γ → Γ/N.
    pub fn full_projection(&self) -> &GroupHom {
        &self.full_proj
    }

    /// Inclusion Γ_π/N → Γ/N on element indices.
    pub fn inclusion(&self) -> &[usize] {
        &self.to_full
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn kappa(&self) -> &TwoCocycle {
        &self.kappa
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// I^γ̃ for the representative of the given quotient element.
    pub fn representative_intertwiner(&self, q: usize) -> &CycMatrix {
        &self.intertwiners[q]
    }

    /// I^γ for any γ ∈ Γ_π (parent index).
    pub fn intertwiner(&self, gamma: &FiniteGroup, g: usize) -> Option<CycMatrix> {
        let q = *self.label.get(g)?;
        if q == usize::MAX {
            return None;
        }
        let r = self.representatives[q];
        let n = gamma.mul(gamma.inv(r), g);
        Some(self.intertwiners[q].mul(self.pi.matrix(self.n_pos[n])))
    }

    /// Checks I^γ π(γ⁻¹nγ) = π(n) I^γ and I^{γγ'} = κ(γ,γ') I^γ I^{γ'}
    /// over all of Γ_π.
    pub fn verify(&self, gamma: &FiniteGroup) -> Result<()> {
        let stab = self.stabilizer.elements();
        let all: Vec<CycMatrix> = stab.iter().map(|&g| self.intertwiner(gamma, g).unwrap()).collect();
        for (k, &g) in stab.iter().enumerate() {
            let gi = gamma.inv(g);
            for &x in self.normal.elements() {
                let lhs = all[k].mul(self.pi.matrix(self.n_pos[gamma.conj(gi, x)]));
                let rhs = self.pi.matrix(self.n_pos[x]).mul(&all[k]);
                if lhs != rhs {
                    return Err(Error::validation(format!("I^{g} does not intertwine at n = {x}")));
                }
            }
        }
        for (a, &g) in stab.iter().enumerate() {
            for (b, &h) in stab.iter().enumerate() {
                let gh = gamma.mul(g, h);
                let k = stab.binary_search(&gh).expect("Γ_π is closed");
                let c = self.kappa.value_cyc(self.label[g], self.label[h]);
                if all[k] != all[a].mul(&all[b]).scale(&c) {
                    return Err(Error::validation(format!("κ relation fails at ({g}, {h})")));
                }
            }
        }
        Ok(())
    }
}

/// Scalar c with a = c·b, when b ≠ 0 and a is a multiple of b.
fn proportion(a: &CycMatrix, b: &CycMatrix) -> Option<Cyclotomic> {
    let k = b.entries().iter().position(|x| !x.is_zero())?;
    let c = &a.entries()[k] * &b.entries()[k].inv().ok()?;
    (b.scale(&c) == *a).then_some(c)
}

fn normalize_first(m: CycMatrix) -> CycMatrix {
    let f = m.first_nonzero().expect("nonzero intertwiner").inv().expect("nonzero");
    m.scale(&f)
}

fn kappa_values(
    gamma: &FiniteGroup,
    q: &FiniteGroup,
    reps: &[usize],
    ints: &[CycMatrix],
    pi: &MatrixRep,
    n_pos: &[usize],
) -> Result<Vec<Vec<Cyclotomic>>> {
    let k = q.order();
    let mut out = vec![Vec::with_capacity(k); k];
    for x in 0..k {
        for y in 0..k {
            let xy = q.mul(x, y);
            let n = gamma.mul(gamma.inv(reps[xy]), gamma.mul(reps[x], reps[y]));
            let lhs = ints[xy].mul(pi.matrix(n_pos[n]));
            let rhs = ints[x].mul(&ints[y]);
            let c = proportion(&lhs, &rhs)
                .ok_or_else(|| Error::validation(format!("intertwiners are not proportional at ({x}, {y})")))?;
            out[x].push(c);
        }
    }
    Ok(out)
}

fn as_roots(vals: &[Vec<Cyclotomic>]) -> Option<Vec<Vec<RootOfUnity>>> {
    vals.iter().map(|r| r.iter().map(|v| v.as_root_of_unity()).collect()).collect()
}

/// κ_π with intertwiners on lowest-index representatives of Γ_π/N.
pub fn intertwiner_cocycle(gamma: &FiniteGroup, n: &SubgroupHandle, pi: &MatrixRep) -> Result<CliffordDatum> {
    intertwiner_cocycle_with_section(gamma, n, pi, None)
}

/// As [`intertwiner_cocycle`], optionally with caller-supplied
/// representatives: `section[q]` must lie in the q-th coset of Γ_π/N, in the
/// element order of the quotient, with the identity for q = 0.
pub fn intertwiner_cocycle_with_section(
    gamma: &FiniteGroup,
    n: &SubgroupHandle,
    pi: &MatrixRep,
    section: Option<&[usize]>,
) -> Result<CliffordDatum> {
    let view = NormalView::new(gamma, n)?;
    let (_, stab) = orbit_and_stabilizer(gamma, n, pi)?;
    let (sgroup, semb) = gamma.subgroup_as_group(&stab);
    let mut spos = vec![usize::MAX; gamma.order()];
    for (i, &x) in semb.iter().enumerate() {
        spos[x] = i;
    }
    let n_in_s = SubgroupHandle::new(&sgroup, n.elements().iter().map(|&x| spos[x]).collect());
    let (q, qhom) = sgroup.quotient(&n_in_s)?;
    let mut label = vec![usize::MAX; gamma.order()];
    for &x in stab.elements() {
        label[x] = qhom.apply(spos[x]);
    }
    let lowest: Vec<usize> = q.quotient_representatives().expect("quotient").iter().map(|&i| semb[i]).collect();
    let reps = match section {
        None => lowest,
        Some(s) => {
            if s.len() != q.order() || s.first() != Some(&0) {
                return Err(Error::validation("section must list one representative per coset, identity first"));
            }
            for (i, &x) in s.iter().enumerate() {
                if label.get(x) != Some(&i) {
                    return Err(Error::validation(format!("section element {x} is not in coset {i}")));
                }
            }
            s.to_vec()
        }
    };

    let (full_quotient, full_proj) = gamma.quotient(n)?;
    let to_full: Vec<usize> = reps.iter().map(|&r| full_proj.apply(r)).collect();

    let first: Vec<CycMatrix> = reps
        .iter()
        .map(|&r| {
            let moved = pi.pullback(&view.conjugation(gamma, r));
            let basis = hom_space(&view.group, &moved, pi);
            debug_assert_eq!(basis.len(), 1);
            normalize_first(basis.into_iter().next().expect("γ stabilizes π"))
        })
        .collect();
    let raw = kappa_values(gamma, &q, &reps, &first, pi, &view.pos)?;

    let (ints, roots, normalization) = if let Some(r) = as_roots(&raw) {
        (first, r, Normalization::FirstEntry)
    } else if let Some(ints) = extension_intertwiners(&view, &stab, &sgroup, &reps, pi) {
        let r = vec![vec![RootOfUnity::one(); q.order()]; q.order()];
        (ints, r, Normalization::Extension)
    } else {
        let mut ints = Vec::with_capacity(q.order());
        for (x, m) in first.iter().enumerate() {
            let b = exact_sqrt(&raw[x][q.inv(x)])
                .ok_or_else(|| Error::unsupported("κ_π has no root-of-unity representative reachable by exact rescaling"))?;
            ints.push(m.scale(&b));
        }
        let vals = kappa_values(gamma, &q, &reps, &ints, pi, &view.pos)?;
        let r = as_roots(&vals)
            .ok_or_else(|| Error::unsupported("κ_π has no root-of-unity representative reachable by exact rescaling"))?;
        (ints, r, Normalization::SquareRoot)
    };
    let kappa = TwoCocycle::from_roots(&q, &roots)?;
    Ok(CliffordDatum {
        normal: n.clone(),
        pi: pi.clone(),
        stabilizer: stab,
        quotient: q,
        representatives: reps,
        label,
        intertwiners: ints,
        kappa,
        normalization,
        n_pos: view.pos,
        full_quotient,
        full_proj,
        to_full,
    })
}

/// I^γ̃ = Pσ(γ̃)P⁻¹ for some σ ∈ Irr(Γ_π) with σ|_N ≅ π, if one exists.
fn extension_intertwiners(
    view: &NormalView,
    stab: &SubgroupHandle,
    sgroup: &FiniteGroup,
    reps: &[usize],
    pi: &MatrixRep,
) -> Option<Vec<CycMatrix>> {
    let n_in_s: Vec<usize> = view
        .embedding
        .iter()
        .map(|x| stab.elements().binary_search(x).unwrap())
        .collect();
    let target = element_values(pi);
    for sigma in irreps_matrices(sgroup).ok()? {
        if sigma.dim() != pi.dim() {
            continue;
        }
        let res = sigma.pullback(&n_in_s);
        if element_values(&res) != target {
            continue;
        }
        let p = hom_space(&view.group, &res, pi).into_iter().next()?;
        let pinv = p.inverse()?;
        return Some(
            reps.iter()
                .map(|&r| {
                    let i = stab.elements().binary_search(&r).unwrap();
                    p.mul(sigma.matrix(i)).mul(&pinv)
                })
                .collect(),
        );
    }
    None
}

/// The cocycle ♮ inflated to Γ.
pub fn inflate(datum: &CliffordDatum, natural: &TwoCocycle) -> Result<TwoCocycle> {
    check_natural(datum, natural)?;
    Ok(natural.pullback(datum.full_proj.images()))
}

fn check_natural(datum: &CliffordDatum, natural: &TwoCocycle) -> Result<()> {
    if natural.group_order() != datum.full_quotient.order() {
        return Err(Error::validation(format!(
            "♮ must be a cocycle on Γ/N of order {}",
            datum.full_quotient.order()
        )));
    }
    Ok(())
}

/// The cocycle κ_π·♮ on Γ_π/N over which τ must be a module.
pub fn tau_cocycle(datum: &CliffordDatum, natural: &TwoCocycle) -> Result<TwoCocycle> {
    check_natural(datum, natural)?;
    Ok(datum.kappa.mul(&natural.pullback(&datum.to_full)))
}

/// τ⋉π = ind_{K[Γ_π,♮]}^{K[Γ,♮]}(M ⊗ V_π) with S_γ(m ⊗ v) = τ(T_{γN})m ⊗ I^γ v,
/// as a module over ♮ inflated to Γ.
pub fn cross_product_rep(
    gamma: &FiniteGroup,
    tau: &TgaIrrep,
    datum: &CliffordDatum,
    natural: &TwoCocycle,
) -> Result<TgaIrrep> {
    let expected = tau_cocycle(datum, natural)?;
    if tau.matrices().len() != datum.quotient.order() || tau.verify_on_generators(&datum.quotient, &expected).is_err() {
        return Err(Error::validation(format!(
            "τ must be a module over κ_π·♮ on Γ_π/N, expected cocycle {:?}",
            expected
        )));
    }
    let nat = natural.pullback(datum.full_proj.images());
    let stab = datum.stabilizer.elements();
    let local: Vec<CycMatrix> = stab
        .iter()
        .map(|&g| {
            tau.matrix(datum.label[g])
                .kron(&datum.intertwiner(gamma, g).expect("in Γ_π"))
        })
        .collect();
    let cosets = gamma.left_cosets(&datum.stabilizer);
    let ts: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let mut coset_of = vec![0; gamma.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x] = i;
        }
    }
    let d = tau.dim() * datum.pi.dim();
    let r = ts.len();
    let matrices = (0..gamma.order())
        .map(|g| {
            let mut m = CycMatrix::zeros(r * d, r * d);
            for (j, &tj) in ts.iter().enumerate() {
                let y = gamma.mul(g, tj);
                let i = coset_of[y];
                let h = gamma.mul(gamma.inv(ts[i]), y);
                let k = stab.binary_search(&h).expect("coset decomposition");
                let c = &nat.value_cyc(g, tj) * &nat.value_cyc(ts[i], h).inv().expect("root of unity");
                let blk = local[k].scale(&c);
                for a in 0..d {
                    for b in 0..d {
                        m.set(i * d + a, j * d + b, blk.get(a, b).clone());
                    }
                }
            }
            m
        })
        .collect();
    let out = TgaIrrep::new(matrices);
    out.verify_on_generators(gamma, &nat)?;
    Ok(out)
}

/// One orbit of N-irreps with its κ class.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub pi: usize,
    pub members: Vec<usize>,
    pub pi_dim: usize,
    pub stabilizer_order: usize,
    pub kappa_modulus: u64,
    pub kappa_trivial: bool,
    pub normalization: Normalization,
}

/// A pair (orbit of π, τ) and the irreducible K[Γ,♮]-module it yields.
#[derive(Clone, Debug, Serialize)]
pub struct MatchedPair {
    pub orbit: usize,
    pub tau: usize,
    pub tau_dim: usize,
    pub dim: usize,
    /// Index into Irr K[Γ,♮] ordered by (dimension, trace vector).
    pub target: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordMatching {
    pub group_order: usize,
    pub normal_order: usize,
    pub orbits: Vec<OrbitReport>,
    pub pairs: Vec<MatchedPair>,
    pub target_dims: Vec<usize>,
}

impl CliffordMatching {
    /// Every pair hits a distinct target and every target is hit.
    pub fn is_bijection(&self) -> bool {
        let mut hit = vec![false; self.target_dims.len()];
        for p in &self.pairs {
            match p.target {
                Some(t) if !hit[t] => hit[t] = true,
                _ => return false,
            }
        }
        hit.iter().all(|&h| h)
    }

    pub fn dimension_sum(&self) -> usize {
        self.pairs.iter().map(|p| p.dim * p.dim).sum()
    }
}

/// Irreducible representations of N in the order of its character table.
pub fn normal_irreps(gamma: &FiniteGroup, n: &SubgroupHandle) -> Result<(FiniteGroup, Vec<MatrixRep>)> {
    let view = NormalView::new(gamma, n)?;
    let table = character_table(&view.group);
    let reps = irreps_for_table(&view.group, &table)?;
    Ok((view.group, reps))
}

/// The matching between pairs (Γ-orbit of π, τ ∈ Irr K[Γ_π/N, κ_π♮]) and
/// Irr K[Γ,♮].
pub fn clifford_bijection(gamma: &FiniteGroup, n: &SubgroupHandle, natural: &TwoCocycle) -> Result<CliffordMatching> {
    let view = NormalView::new(gamma, n)?;
    let table: Vec<Vec<Cyclotomic>> = character_table(&view.group)
        .iter()
        .map(|c| c.on_elements(&view.group))
        .collect();
    let (_, irreps) = normal_irreps(gamma, n)?;
    let mut done = vec![false; table.len()];
    let mut orbits = Vec::new();
    let mut pairs = Vec::new();
    let mut nat_gamma: Option<TwoCocycle> = None;
    let mut targets: Option<Vec<Vec<Cyclotomic>>> = None;
    for idx in 0..table.len() {
        if done[idx] {
            continue;
        }
        let orbit = orbit_in(gamma, &view, &table, idx);
        for &j in &orbit.members {
            done[j] = true;
        }
        let datum = intertwiner_cocycle(gamma, n, &irreps[idx])?;
        let nat = match &nat_gamma {
            Some(c) => c.clone(),
            None => {
                let c = inflate(&datum, natural)?;
                nat_gamma = Some(c.clone());
                c
            }
        };
        if targets.is_none() {
            targets = Some(twisted_traces(gamma, &nat)?);
        }
        let tc = tau_cocycle(&datum, natural)?;
        let taus = twisted_irreps(&datum.quotient, &tc)?;
        let oi = orbits.len();
        orbits.push(OrbitReport {
            pi: idx,
            members: orbit.members.clone(),
            pi_dim: irreps[idx].dim(),
            stabilizer_order: datum.stabilizer.order(),
            kappa_modulus: datum.kappa.modulus(),
            kappa_trivial: is_coboundary(&datum.quotient, &datum.kappa),
            normalization: datum.normalization,
        });
        let tv = targets.as_ref().unwrap();
        for (ti, tau) in taus.iter().enumerate() {
            let module = cross_product_rep(gamma, tau, &datum, natural)?;
            let trace = module.trace_vector();
            pairs.push(MatchedPair {
                orbit: oi,
                tau: ti,
                tau_dim: tau.dim(),
                dim: module.dim(),
                target: tv.iter().position(|t| *t == trace),
            });
        }
    }
    let target_dims = targets
        .unwrap_or_default()
        .iter()
        .map(|t| {
            let d = t[0].to_rational().expect("rational degree");
            d.to_integer().try_into().expect("small degree")
        })
        .collect();
    Ok(CliffordMatching {
        group_order: gamma.order(),
        normal_order: n.order(),
        orbits,
        pairs,
        target_dims,
    })
}

/// The trivial cocycle on Γ/N.
pub fn trivial_natural(gamma: &FiniteGroup, n: &SubgroupHandle) -> TwoCocycle {
    TwoCocycle::trivial(gamma.order() / n.order())
}

/// Σ_τ dim τ · ⟨τ⋉π, V⟩ = ⟨Res_N V, π⟩ for every irreducible V of K[Γ,♮]:
/// the dimension count behind Hom(τ⋉π, V) ≅ Hom(τ, Hom_N(π, V)).
pub fn frobenius_check(gamma: &FiniteGroup, datum: &CliffordDatum, natural: &TwoCocycle) -> Result<bool> {
    let nat = inflate(datum, natural)?;
    let targets = twisted_traces(gamma, &nat)?;
    let tc = tau_cocycle(datum, natural)?;
    let taus = twisted_irreps(&datum.quotient, &tc)?;
    let modules = taus
        .iter()
        .map(|t| cross_product_rep(gamma, t, datum, natural).map(|m| m.trace_vector()))
        .collect::<Result<Vec<_>>>()?;
    let pi_vals = element_values(&datum.pi);
    let order = Cyclotomic::from_int(gamma.order() as i64).inv()?;
    let norder = Cyclotomic::from_int(datum.normal.order() as i64).inv()?;
    for v in &targets {
        let mut lhs = Cyclotomic::zero();
        for (tau, m) in taus.iter().zip(&modules) {
            let mut ip = Cyclotomic::zero();
            for x in 0..gamma.order() {
                ip = &ip + &(&m[x] * &v[x].conj());
            }
            lhs = &lhs + &(&(&ip * &order) * &Cyclotomic::from_int(tau.dim() as i64));
        }
        let mut rhs = Cyclotomic::zero();
        for (i, &x) in datum.normal.elements().iter().enumerate() {
            rhs = &rhs + &(&v[x] * &pi_vals[i].conj());
        }
        rhs = &rhs * &norder;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of pairs predicted by the counting form of the bijection:
/// Σ over orbits of |Irr K[Γ_π/N, κ_π♮]|.
pub fn pair_count(m: &CliffordMatching) -> usize {
    m.pairs.len()
}

impl std::fmt::Display for CliffordMatching {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.pairs {
            let o = &self.orbits[p.orbit];
            writeln!(
                f,
                "pi={} |orbit|={} tau={} dim={} -> {:?}",
                o.pi,
                o.members.len(),
                p.tau,
                p.dim,
                p.target
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;
    use crate::tga::cohomologous;

    fn irrep_with(g: &FiniteGroup, n: &SubgroupHandle, pick: impl Fn(&MatrixRep) -> bool) -> MatrixRep {
        let (_, reps) = normal_irreps(g, n).unwrap();
        reps.into_iter().find(|r| pick(r)).unwrap()
    }

    #[test]
    fn s3_over_a3() {
        let g = catalog::symmetric(3);
        let n = catalog::alternating_in(&g);
        let pi = irrep_with(&g, &n, |r| r.matrices().iter().any(|m| !m.is_identity()));
        let (orbit, stab) = orbit_and_stabilizer(&g, &n, &pi).unwrap();
        assert_eq!(orbit.len(), 2);
        assert_eq!(stab.elements(), n.elements());
        let datum = intertwiner_cocycle(&g, &n, &pi).unwrap();
        datum.verify(&g).unwrap();
        assert_eq!(datum.quotient().order(), 1);
        let nat = trivial_natural(&g, &n);
        let tau = TgaIrrep::new(vec![CycMatrix::identity(1)]);
        let m = cross_product_rep(&g, &tau, &datum, &nat).unwrap();
        assert_eq!(m.dim(), 2);
        let matching = clifford_bijection(&g, &n, &nat).unwrap();
        assert!(matching.is_bijection());
        assert_eq!(matching.pairs.len(), 3);
        assert_eq!(matching.orbits[0].members.len(), 1);
        assert_eq!(matching.pairs.iter().filter(|p| p.orbit == 0).count(), 2);
    }

    #[test]
    fn q8_over_center() {
        let g = catalog::quaternion();
        let n = g.center();
        let eps = irrep_with(&g, &n, |r| r.matrices().iter().any(|m| !m.is_identity()));
        let (orbit, stab) = orbit_and_stabilizer(&g, &n, &eps).unwrap();
        assert_eq!(orbit.len(), 1);
        assert_eq!(stab.order(), 8);
        let datum = intertwiner_cocycle(&g, &n, &eps).unwrap();
        datum.verify(&g).unwrap();
        assert!(!is_coboundary(datum.quotient(), datum.kappa()));
        let nat = trivial_natural(&g, &n);
        let taus = twisted_irreps(datum.quotient(), &tau_cocycle(&datum, &nat).unwrap()).unwrap();
        assert_eq!(taus.len(), 1);
        assert_eq!(taus[0].dim(), 2);
        let m = clifford_bijection(&g, &n, &nat).unwrap();
        assert!(m.is_bijection());
        assert_eq!(m.pairs.len(), 5);
        let over_eps: Vec<_> = m.pairs.iter().filter(|p| m.orbits[p.orbit].pi_dim == 1 && p.orbit == 1).collect();
        assert_eq!(over_eps.len(), 1);
        assert_eq!(over_eps[0].dim, 2);
        assert!(frobenius_check(&g, &datum, &nat).unwrap());
    }

    #[test]
    fn kappa_class_independent_of_section() {
        let g = catalog::quaternion();
        let n = g.center();
        let eps = irrep_with(&g, &n, |r| r.matrices().iter().any(|m| !m.is_identity()));
        let a = intertwiner_cocycle(&g, &n, &eps).unwrap();
        let other: Vec<usize> = a
            .representatives()
            .iter()
            .map(|&r| if r == 0 { 0 } else { *n.elements().iter().map(|&z| g.mul(r, z)).filter(|&x| x != r).collect::<Vec<_>>().first().unwrap() })
            .collect();
        let b = intertwiner_cocycle_with_section(&g, &n, &eps, Some(&other)).unwrap();
        b.verify(&g).unwrap();
        assert!(cohomologous(a.quotient(), a.kappa(), b.kappa()).is_some());
    }

    #[test]
    fn d8_over_c4_faithful() {
        let g = catalog::dihedral(4);
        let rot = (0..g.order()).find(|&x| g.element_order(x) == 4).unwrap();
        let n = g.subgroup(&[rot]);
        let pi = irrep_with(&g, &n, |r| r.matrices().iter().filter(|m| m.is_identity()).count() == 1);
        let datum = intertwiner_cocycle(&g, &n, &pi).unwrap();
        assert_eq!(datum.stabilizer().elements(), n.elements());
        assert!(datum.kappa().is_identically_one());
        let m = clifford_bijection(&g, &n, &trivial_natural(&g, &n)).unwrap();
        assert!(m.is_bijection());
        assert_eq!(m.dimension_sum(), 8);
    }

    #[test]
    fn normal_equal_to_whole_group() {
        let g = catalog::symmetric(4);
        let n = g.whole();
        let m = clifford_bijection(&g, &n, &trivial_natural(&g, &n)).unwrap();
        assert!(m.is_bijection());
        assert!(m.pairs.iter().all(|p| p.tau_dim == 1 && m.orbits[p.orbit].members.len() == 1));
        assert_eq!(m.pairs.len(), 5);
    }

    #[test]
    fn s4_over_v4_and_a4() {
        let g = catalog::symmetric(4);
        let a4 = catalog::alternating_in(&g);
        let invol: Vec<usize> = a4.elements().iter().copied().filter(|&x| g.element_order(x) <= 2).collect();
        let v4 = g.subgroup(&invol);
        assert_eq!(v4.order(), 4);
        for n in [a4.clone(), v4] {
            let m = clifford_bijection(&g, &n, &trivial_natural(&g, &n)).unwrap();
            assert!(m.is_bijection(), "{m}");
            assert_eq!(m.dimension_sum(), 24);
        }
    }
}
