//! Finite groups given by dense multiplication tables.
//!
//! Elements are indices 0..order with 0 the identity. Groups built from
//! generators keep the generating elements and, for each element, a word
//! in the generators reaching it.

pub mod catalog;
mod elements;
pub mod iso;
pub mod json;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::OnceLock;

pub use elements::{MonomialMatrix, Perm};

use crate::error::{Error, Result};

/// Default bound on the number of elements produced by closure.
pub const DEFAULT_ORDER_BOUND: usize = 1_000_000;
/// Largest order for which a dense multiplication table is stored.
pub const TABLE_LIMIT: usize = 8192;

/// How a group was obtained, with element-wise realizations where cheap.
#[derive(Clone, Debug)]
pub enum Realization {
    Permutations { degree: usize, elements: Vec<Perm> },
    Monomial { dim: usize, elements: Vec<MonomialMatrix> },
    DirectProduct { left: usize, right: usize },
    Quotient { representatives: Vec<usize> },
    CentralExtension { m: u64, base: usize },
    Subgroup { embedding: Vec<usize> },
    Table,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    gens: Vec<usize>,
    words: Vec<Vec<u16>>,
    realization: Realization,
    classes: OnceLock<(Vec<Vec<usize>>, Vec<usize>)>,
}

/// Breadth-first closure under right multiplication by generators.
/// Returns elements (identity first), the right Cayley graph and words.
#[allow(clippy::type_complexity)]
fn closure<E: Clone + Eq + Hash>(
    identity: E,
    gens: &[E],
    mul: impl Fn(&E, &E) -> E,
    bound: usize,
) -> Result<(Vec<E>, Vec<Vec<u32>>, Vec<Vec<u16>>, Vec<(u32, u16)>)> {
    let mut index: HashMap<E, u32> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut words: Vec<Vec<u16>> = vec![Vec::new()];
    let mut parent: Vec<(u32, u16)> = vec![(0, 0)];
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let prod = mul(&elems[i], g);
            let idx = match index.get(&prod) {
                Some(&j) => j,
                None => {
                    if elems.len() >= bound {
                        return Err(Error::OrderBound(bound));
                    }
                    let j = elems.len() as u32;
                    index.insert(prod.clone(), j);
                    elems.push(prod);
                    let mut w = words[i].clone();
                    w.push(gi as u16);
                    words.push(w);
                    parent.push((i as u32, gi as u16));
                    j
                }
            };
            row.push(idx);
        }
        right.push(row);
        i += 1;
    }
    Ok((elems, right, words, parent))
}

/// Deterministic pseudo-random stream for spot checks.
pub(crate) struct Lcg(u64);

impl Lcg {
    pub(crate) fn new(seed: u64) -> Self {
        Lcg(seed ^ 0x9E37_79B9_7F4A_7C15)
    }

    pub(crate) fn below(&mut self, n: usize) -> usize {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.0 >> 33) % n as u64) as usize
    }
}

impl FiniteGroup {
    fn from_cayley(
        gen_elements: Vec<usize>,
        right: Vec<Vec<u32>>,
        words: Vec<Vec<u16>>,
        parent: Vec<(u32, u16)>,
        realization: Realization,
    ) -> Result<Self> {
        let n = right.len();
        if n > TABLE_LIMIT {
            return Err(Error::unsupported(format!(
                "group of order {n} exceeds the dense table limit {TABLE_LIMIT}"
            )));
        }
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            table[i * n] = i as u32;
            for j in 1..n {
                let (pj, g) = parent[j];
                let t = table[i * n + pj as usize];
                table[i * n + j] = right[t as usize][g as usize];
            }
        }
        let g = Self::finish(n, table, gen_elements, words, realization);
        g.spot_check_associativity()?;
        Ok(g)
    }

    fn finish(
        n: usize,
        table: Vec<u32>,
        gens: Vec<usize>,
        words: Vec<Vec<u16>>,
        realization: Realization,
    ) -> Self {
        let mut inverses = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inverses[i] = j as u32;
                    break;
                }
            }
        }
        FiniteGroup {
            n,
            table,
            inverses,
            gens,
            words,
            realization,
            classes: OnceLock::new(),
        }
    }

    fn spot_check_associativity(&self) -> Result<()> {
        let n = self.n;
        let mut rng = Lcg::new(n as u64);
        for _ in 0..64 {
            let (a, b, c) = (rng.below(n), rng.below(n), rng.below(n));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::validation(format!(
                    "multiplication is not associative at ({a}, {b}, {c})"
                )));
            }
        }
        Ok(())
    }

    /// Closure of a set of permutations (all of the same degree after padding).
    pub fn from_permutations(gens: &[Perm], bound: usize) -> Result<Self> {
        let degree = gens.iter().map(|p| p.degree()).max().unwrap_or(0);
        let gens: Vec<Perm> = gens.iter().map(|p| p.extend(degree)).collect();
        let (elems, right, words, parent) =
            closure(Perm::identity(degree), &gens, |a, b| a.compose(b), bound)?;
        let gen_elements = (0..gens.len()).map(|i| right[0][i] as usize).collect();
        Self::from_cayley(
            gen_elements,
            right,
            words,
            parent,
            Realization::Permutations { degree, elements: elems },
        )
    }

    /// Closure of a set of invertible monomial matrices of equal dimension.
    pub fn from_monomials(gens: &[MonomialMatrix], bound: usize) -> Result<Self> {
        let dim = gens.first().map_or(0, |g| g.dim());
        if gens.iter().any(|g| g.dim() != dim) {
            return Err(Error::validation("monomial generators of different dimensions"));
        }
        for g in gens {
            if g.entries.iter().any(num_traits::Zero::is_zero) {
                return Err(Error::validation("monomial generator is not invertible"));
            }
        }
        let (elems, right, words, parent) =
            closure(MonomialMatrix::identity(dim), gens, |a, b| a.mul(b), bound)?;
        let gen_elements = (0..gens.len()).map(|i| right[0][i] as usize).collect();
        Self::from_cayley(
            gen_elements,
            right,
            words,
            parent,
            Realization::Monomial { dim, elements: elems },
        )
    }

    /// Group from a full multiplication table with identity at index 0.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_with(rows, Realization::Table)
    }

    fn from_table_with(rows: Vec<Vec<usize>>, realization: Realization) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::validation("empty multiplication table"));
        }
        if n > TABLE_LIMIT {
            return Err(Error::unsupported(format!("table of order {n} exceeds {TABLE_LIMIT}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::validation(format!("row {i} has length {}", r.len())));
            }
            let mut seen = vec![false; n];
            for &v in r {
                if v >= n || seen[v] {
                    return Err(Error::validation(format!("row {i} is not a permutation")));
                }
                seen[v] = true;
            }
            if r[0] != i || rows[0][i] != i {
                return Err(Error::validation("index 0 is not the identity"));
            }
            table.extend(r.iter().map(|&v| v as u32));
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for r in &rows {
                if seen[r[j]] {
                    return Err(Error::validation(format!("column {j} is not a permutation")));
                }
                seen[r[j]] = true;
            }
        }
        let mut g = Self::finish(n, table, Vec::new(), Vec::new(), realization);
        if n <= 32 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                            return Err(Error::validation(format!(
                                "multiplication is not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            g.spot_check_associativity()?;
        }
        g.choose_generators();
        Ok(g)
    }

    /// Greedy generating set (smallest index outside the current subgroup)
    /// and BFS words.
    fn choose_generators(&mut self) {
        let mut gens = Vec::new();
        let mut sub = vec![0usize];
        while sub.len() < self.n {
            let mut inside = vec![false; self.n];
            for &s in &sub {
                inside[s] = true;
            }
            let next = (0..self.n).find(|&x| !inside[x]).unwrap();
            gens.push(next);
            sub = self.generated(&gens);
        }
        self.set_generators(gens);
    }

    fn set_generators(&mut self, gens: Vec<usize>) {
        let mut words: Vec<Option<Vec<u16>>> = vec![None; self.n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(gi as u16);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        self.words = words.into_iter().map(|w| w.expect("generators span")).collect();
        self.gens = gens;
    }

    pub fn trivial() -> Self {
        Self::from_table(vec![vec![0]]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// g x g⁻¹
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n)
            .map(|a| self.element_order(a) as u64)
            .fold(1, crate::exactnum::arith::lcm) as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn word(&self, a: usize) -> &[u16] {
        &self.words[a]
    }

    /// The product of generators named by their indices, left to right.
    pub fn evaluate_word(&self, w: &[usize]) -> Result<usize> {
        w.iter().try_fold(self.identity(), |acc, &i| {
            self.gens
                .get(i)
                .map(|&s| self.mul(acc, s))
                .ok_or_else(|| Error::validation(format!("generator index {i} out of range")))
        })
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup(&self, gens: &[usize]) -> SubgroupHandle {
        SubgroupHandle::new(self, self.generated(gens))
    }

    pub fn whole(&self) -> SubgroupHandle {
        SubgroupHandle::new(self, (0..self.n).collect())
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle::new(self, vec![0])
    }

    /// Conjugacy classes sorted by (size, minimal element); the identity class is first.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.class_data().0
    }

    /// Class index of every element.
    pub fn class_of(&self, a: usize) -> usize {
        self.class_data().1[a]
    }

    fn class_data(&self) -> &(Vec<Vec<usize>>, Vec<usize>) {
        self.classes.get_or_init(|| {
            let mut seen = vec![false; self.n];
            let mut classes = Vec::new();
            for a in 0..self.n {
                if seen[a] {
                    continue;
                }
                let mut cls = vec![a];
                seen[a] = true;
                let mut i = 0;
                while i < cls.len() {
                    let x = cls[i];
                    for &g in &self.gens {
                        let y = self.conj(g, x);
                        if !seen[y] {
                            seen[y] = true;
                            cls.push(y);
                        }
                    }
                    i += 1;
                }
                cls.sort_unstable();
                classes.push(cls);
            }
            classes.sort_by_key(|c| (c.len(), c[0]));
            let mut of = vec![0; self.n];
            for (ci, c) in classes.iter().enumerate() {
                for &x in c {
                    of[x] = ci;
                }
            }
            (classes, of)
        })
    }

    pub fn centralizer(&self, g: usize) -> SubgroupHandle {
        let els = (0..self.n).filter(|&x| self.mul(x, g) == self.mul(g, x)).collect();
        SubgroupHandle::new(self, els)
    }

    /// Elements commuting with every element of `h`.
    pub fn centralizer_of(&self, h: &[usize]) -> SubgroupHandle {
        let els = (0..self.n)
            .filter(|&x| h.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        SubgroupHandle::new(self, els)
    }

    pub fn center(&self) -> SubgroupHandle {
        let els = (0..self.n)
            .filter(|&x| self.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        SubgroupHandle::new(self, els)
    }

    /// Normality of a subset that is a subgroup.
    pub fn is_normal(&self, h: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in h {
            inside[x] = true;
        }
        self.gens
            .iter()
            .all(|&g| h.iter().all(|&x| inside[self.conj(g, x)]))
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        if h.is_empty() || !h.contains(&0) || h.iter().any(|&x| x >= self.n) {
            return false;
        }
        let mut inside = vec![false; self.n];
        for &x in h {
            inside[x] = true;
        }
        h.iter()
            .all(|&a| inside[self.inv(a)] && h.iter().all(|&b| inside[self.mul(a, b)]))
    }

    /// Normal closure of a set of elements.
    pub fn normal_closure(&self, s: &[usize]) -> SubgroupHandle {
        let mut gens: Vec<usize> = s.to_vec();
        loop {
            let els = self.generated(&gens);
            if self.is_normal(&els) {
                return SubgroupHandle::new(self, els);
            }
            let mut extra = Vec::new();
            for &g in &self.gens {
                for &x in &gens {
                    let y = self.conj(g, x);
                    if els.binary_search(&y).is_err() {
                        extra.push(y);
                    }
                }
            }
            gens.extend(extra);
        }
    }

    pub fn derived_subgroup(&self) -> SubgroupHandle {
        let comms: Vec<usize> = (0..self.n)
            .flat_map(|a| self.gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(&comms)
    }

    /// A subgroup as a group in its own right. Element i of the result is
    /// `embedding[i]`, listed in increasing parent index.
    pub fn subgroup_as_group(&self, h: &SubgroupHandle) -> (FiniteGroup, Vec<usize>) {
        let els = h.elements().to_vec();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in els.iter().enumerate() {
            pos[x] = i;
        }
        let rows = els
            .iter()
            .map(|&a| els.iter().map(|&b| pos[self.mul(a, b)]).collect())
            .collect();
        let g = Self::from_table_with(rows, Realization::Subgroup { embedding: els.clone() })
            .expect("subgroup table is a group");
        (g, els)
    }

    /// Left cosets gN ordered by their lowest-index representative.
    pub fn left_cosets(&self, n: &SubgroupHandle) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for g in 0..self.n {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = n.elements().iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// G/N with the projection; coset representatives are lowest indices.
    pub fn quotient(&self, n: &SubgroupHandle) -> Result<(FiniteGroup, GroupHom)> {
        if !self.is_normal(n.elements()) {
            return Err(Error::validation("quotient by a non-normal subgroup"));
        }
        let cosets = self.left_cosets(n);
        let mut label = vec![0; self.n];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                label[x] = i;
            }
        }
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let rows = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| label[self.mul(a, b)]).collect())
            .collect();
        let q = Self::from_table_with(rows, Realization::Quotient { representatives: reps })?;
        let hom = GroupHom::new(self.n, q.order(), label);
        Ok((q, hom))
    }

    /// Coset representatives of a quotient built by [`FiniteGroup::quotient`].
    pub fn quotient_representatives(&self) -> Option<&[usize]> {
        match &self.realization {
            Realization::Quotient { representatives } => Some(representatives),
            _ => None,
        }
    }

    /// Central extension by μ_m: element (z, γ) sits at index z·|Γ| + γ and
    /// (z,γ)(z',γ') = (z + z' + c(γ,γ'), γγ'), with `exps[γ][γ']` the
    /// exponent of the cocycle value in μ_m.
    pub fn central_extension(
        &self,
        m: u64,
        exps: &[Vec<u64>],
    ) -> Result<(FiniteGroup, GroupHom, SubgroupHandle)> {
        let n = self.n;
        let total = n * m as usize;
        if total > TABLE_LIMIT {
            return Err(Error::unsupported(format!("extension of order {total} exceeds {TABLE_LIMIT}")));
        }
        if exps[0].iter().any(|&e| e % m != 0) || exps.iter().any(|r| r[0] % m != 0) {
            return Err(Error::validation("cocycle is not normalized"));
        }
        let rows = (0..total)
            .map(|a| {
                let (z, g) = (a / n, a % n);
                (0..total)
                    .map(|b| {
                        let (z2, h) = (b / n, b % n);
                        let zz = (z as u64 + z2 as u64 + exps[g][h]) % m;
                        zz as usize * n + self.mul(g, h)
                    })
                    .collect()
            })
            .collect();
        let e = Self::from_table_with(rows, Realization::CentralExtension { m, base: n })?;
        let proj = GroupHom::new(total, n, (0..total).map(|a| a % n).collect());
        let mu = SubgroupHandle::new(&e, (0..m as usize).map(|z| z * n).collect());
        Ok((e, proj, mu))
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let (a, b) = (self.n, other.n);
        let total = a * b;
        if total > TABLE_LIMIT {
            return Err(Error::unsupported(format!("product of order {total} exceeds {TABLE_LIMIT}")));
        }
        let rows = (0..total)
            .map(|x| {
                (0..total)
                    .map(|y| self.mul(x / b, y / b) * b + other.mul(x % b, y % b))
                    .collect()
            })
            .collect();
        let mut g = Self::from_table_with(rows, Realization::DirectProduct { left: a, right: b })?;
        let mut gens: Vec<usize> = self.gens.iter().map(|&x| x * b).collect();
        gens.extend(other.gens.iter().copied());
        g.set_generators(gens);
        Ok(g)
    }

    /// N ⋊ H where `action[h]` is the automorphism of N given by h.
    /// Element (n, h) sits at index n·|H| + h.
    pub fn semidirect_product(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<FiniteGroup> {
        let (a, b) = (normal.n, acting.n);
        let total = a * b;
        if total > TABLE_LIMIT {
            return Err(Error::unsupported(format!("product of order {total} exceeds {TABLE_LIMIT}")));
        }
        for h in 0..b {
            for &g in acting.generators() {
                for x in 0..a {
                    if action[acting.mul(g, h)][x] != action[g][action[h][x]] {
                        return Err(Error::validation("action is not a homomorphism"));
                    }
                }
            }
        }
        let rows = (0..total)
            .map(|x| {
                let (n1, h1) = (x / b, x % b);
                (0..total)
                    .map(|y| {
                        let (n2, h2) = (y / b, y % b);
                        normal.mul(n1, action[h1][n2]) * b + acting.mul(h1, h2)
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table_with(rows, Realization::Table)?;
        let mut gens: Vec<usize> = normal.gens.iter().map(|&x| x * b).collect();
        gens.extend(acting.gens.iter().copied());
        g.set_generators(gens);
        Ok(g)
    }

    /// Conjugation automorphisms x ↦ g x g⁻¹ of a normal subgroup, one per element g.
    pub fn automorphism_action(&self, n: &SubgroupHandle) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|g| n.elements().iter().map(|&x| self.conj(g, x)).collect())
            .collect()
    }

    /// Replace the generating set (words are recomputed).
    pub fn with_generators(&self, gens: &[usize]) -> Result<FiniteGroup> {
        if self.generated(gens).len() != self.n {
            return Err(Error::validation("elements do not generate the group"));
        }
        let mut g = self.clone();
        g.set_generators(gens.to_vec());
        Ok(g)
    }

    /// Small generating set found greedily from elements of large order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut cands: Vec<usize> = (1..self.n).collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut size = 1;
        for x in cands {
            if size == self.n {
                break;
            }
            let mut t = gens.clone();
            t.push(x);
            let s = self.generated(&t).len();
            if s > size {
                gens = t;
                size = s;
            }
        }
        gens
    }
}

/// A subgroup of a parent group, as a sorted index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    parent_order: usize,
    elements: Vec<usize>,
    normal: bool,
}

impl SubgroupHandle {
    pub fn new(parent: &FiniteGroup, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(parent.is_subgroup(&elements));
        let normal = parent.is_normal(&elements);
        SubgroupHandle {
            parent_order: parent.order(),
            elements,
            normal,
        }
    }

    /// Checked constructor for user-supplied element sets.
    pub fn checked(parent: &FiniteGroup, elements: Vec<usize>) -> Result<Self> {
        let mut e = elements;
        e.sort_unstable();
        e.dedup();
        if !parent.is_subgroup(&e) {
            return Err(Error::validation("element set is not a subgroup"));
        }
        Ok(Self::new(parent, e))
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }
}

/// A map between groups given by its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source_order: usize,
    target_order: usize,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(source_order: usize, target_order: usize, images: Vec<usize>) -> Self {
        assert_eq!(images.len(), source_order);
        GroupHom {
            source_order,
            target_order,
            images,
        }
    }

    /// Build from images of the source generators, extended along words.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        gen_images: &[usize],
    ) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::validation("wrong number of generator images"));
        }
        let images = (0..source.order())
            .map(|x| {
                source
                    .word(x)
                    .iter()
                    .fold(0, |acc, &g| target.mul(acc, gen_images[g as usize]))
            })
            .collect();
        let h = GroupHom::new(source.order(), target.order(), images);
        h.verify(source, target)?;
        Ok(h)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// f(xg) = f(x)f(g) for every element x and generator g.
    pub fn verify(&self, source: &FiniteGroup, target: &FiniteGroup) -> Result<()> {
        if self.images[0] != 0 {
            return Err(Error::validation("identity not mapped to identity"));
        }
        for x in 0..source.order() {
            for &g in source.generators() {
                if self.images[source.mul(x, g)] != target.mul(self.images[x], self.images[g]) {
                    return Err(Error::validation(format!(
                        "not multiplicative at ({x}, {g})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source_order).filter(|&x| self.images[x] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn compose(&self, after: &GroupHom) -> GroupHom {
        GroupHom::new(
            self.source_order,
            after.target_order,
            self.images.iter().map(|&x| after.images[x]).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::catalog;
    use super::*;

    #[test]
    fn closure_of_transpositions() {
        let s3 = FiniteGroup::from_permutations(
            &[Perm::from_cycles(3, &[&[0, 1]]), Perm::from_cycles(3, &[&[1, 2]])],
            DEFAULT_ORDER_BOUND,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_permutations(&[], DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn order_bound_is_enforced() {
        let gens = [Perm::from_cycles(6, &[&[0, 1]]), Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]])];
        assert_eq!(
            FiniteGroup::from_permutations(&gens, 100).unwrap_err(),
            Error::OrderBound(100)
        );
    }

    #[test]
    fn q8_classes_and_quotient() {
        let q8 = catalog::quaternion();
        assert_eq!(q8.order(), 8);
        let mut sizes: Vec<usize> = q8.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let z = q8.center();
        assert_eq!(z.order(), 2);
        let (q, proj) = q8.quotient(&z).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.exponent(), 2);
        proj.verify(&q8, &q).unwrap();
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = catalog::symmetric(3);
        let (q, _) = g.quotient(&g.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let a3 = catalog::alternating_in(&g);
        let (q, _) = g.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(g.quotient(&g.subgroup(&[1])).is_err() || g.subgroup(&[1]).is_normal());
    }
}
