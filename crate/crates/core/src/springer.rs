//! Generalized Springer combinatorics for classical groups: unipotent
//! classes, component groups, cuspidal pairs and the counting identity that
//! ties them to Weyl groups of cuspidal supports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::intertwiner_cocycle_with_section;
use crate::error::{Error, Result};
use crate::exactnum::arith;
use crate::exactnum::Cyclotomic;
use crate::groups::json::GroupSpec;
use crate::groups::{catalog, FiniteGroup, GroupHom, MonomialMatrix, Realization, SubgroupHandle, TABLE_LIMIT};
use crate::reps::{character_table, irreps_matrices, MatrixRep};
use crate::tga::{cohomologous, is_coboundary, TwoCocycle};
use crate::CycMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupType {
    GL,
    SLmod(u64),
    Sp,
    #[serde(rename = "SO_odd")]
    SOOdd,
    #[serde(rename = "SO_even")]
    SOEven,
    O,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::GL => write!(f, "GL"),
            GroupType::SLmod(k) => write!(f, "SLmod({k})"),
            GroupType::Sp => write!(f, "Sp"),
            GroupType::SOOdd => write!(f, "SO_odd"),
            GroupType::SOEven => write!(f, "SO_even"),
            GroupType::O => write!(f, "O"),
        }
    }
}

impl FromStr for GroupType {
    type Err = Error;

    /// Accepts the names above and the Cartan letters A, B, C, D.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t {
            "A" | "GL" => GroupType::GL,
            "B" | "SO_odd" | "SOodd" => GroupType::SOOdd,
            "C" | "Sp" => GroupType::Sp,
            "D" | "SO_even" | "SOeven" => GroupType::SOEven,
            "O" => GroupType::O,
            _ => {
                let inner = t
                    .strip_prefix("SLmod(")
                    .or_else(|| t.strip_prefix("SL("))
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown group type {t:?}")))?;
                let k = inner
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad SLmod order {inner:?}")))?;
                if k == 0 {
                    return Err(Error::Parse("SLmod order must be positive".into()));
                }
                GroupType::SLmod(k)
            }
        })
    }
}

/// A partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::validation("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn multiplicity(&self, a: usize) -> usize {
        self.0.iter().filter(|&&p| p == a).count()
    }

    /// Distinct parts in increasing order.
    pub fn distinct(&self) -> Vec<usize> {
        let mut d = self.0.clone();
        d.dedup();
        d.reverse();
        d
    }

    /// All partitions of n, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Staircase (first, first+2, …) of length d.
    pub fn staircase(first: usize, d: usize) -> Partition {
        let mut v: Vec<usize> = (0..d).map(|i| first + 2 * i).collect();
        v.reverse();
        Partition(v)
    }

    pub fn is_valid_for(&self, ty: GroupType) -> bool {
        let even_parts_even = self.distinct().iter().all(|&a| a % 2 == 1 || self.multiplicity(a) % 2 == 0);
        let odd_parts_even = self.distinct().iter().all(|&a| a % 2 == 0 || self.multiplicity(a) % 2 == 0);
        let n = self.total();
        match ty {
            GroupType::GL => true,
            GroupType::SLmod(k) => n as u64 % k == 0,
            GroupType::Sp => n % 2 == 0 && odd_parts_even,
            GroupType::SOOdd => n % 2 == 1 && even_parts_even,
            GroupType::SOEven => n % 2 == 0 && even_parts_even,
            GroupType::O => even_parts_even,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentClass {
    pub group_type: GroupType,
    pub n: usize,
    pub lambda: Partition,
}

/// Unipotent classes of the classical group of the given type acting on an
/// n-dimensional space, by Jordan type.
pub fn unipotent_classes(ty: GroupType, n: usize) -> Vec<UnipotentClass> {
    Partition::all(n)
        .into_iter()
        .filter(|p| p.is_valid_for(ty))
        .map(|lambda| UnipotentClass { group_type: ty, n, lambda })
        .collect()
}

/// A_G(u) with its normal part A_{G°}(u) and named generators z_a.
#[derive(Clone, Debug)]
pub struct ComponentGroupPresentation {
    group_type: GroupType,
    lambda: Partition,
    group: FiniteGroup,
    normal: SubgroupHandle,
    generators: Vec<(usize, usize)>,
}

fn xor_group(bits: usize) -> Result<FiniteGroup> {
    let n = 1usize << bits;
    FiniteGroup::from_table((0..n).map(|x| (0..n).map(|y| x ^ y).collect()).collect())
}

fn cyclic_table(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_table((0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect())
}

impl ComponentGroupPresentation {
    pub fn group_type(&self) -> GroupType {
        self.group_type
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn normal(&self) -> &SubgroupHandle {
        &self.normal
    }

    /// Pairs (a, element) for the generators z_a; for SLmod the single
    /// generator is reported with a = 0.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|(a, _)| if *a == 0 { "c".to_string() } else { format!("z_{a}") })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn irreducible_count(&self) -> usize {
        self.group.conjugacy_classes().len()
    }

    /// Parts carrying a sign in an enhancement.
    pub fn sign_parts(&self) -> Vec<usize> {
        match self.group_type {
            GroupType::Sp => self.lambda.distinct().into_iter().filter(|a| a % 2 == 0).collect(),
            GroupType::O | GroupType::SOOdd | GroupType::SOEven => {
                self.lambda.distinct().into_iter().filter(|a| a % 2 == 1).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Checks that a sign assignment on the z_a is a character of A_G(u).
    pub fn check_signs(&self, signs: &BTreeMap<usize, i8>) -> Result<()> {
        let parts = self.sign_parts();
        for (a, s) in signs {
            if !parts.contains(a) {
                return Err(Error::validation(format!("no generator z_{a} for {} {}", self.group_type, self.lambda)));
            }
            if *s != 1 && *s != -1 {
                return Err(Error::validation(format!("sign at z_{a} must be ±1")));
            }
        }
        if let Some(a) = parts.iter().find(|a| !signs.contains_key(a)) {
            return Err(Error::validation(format!("missing sign for z_{a}")));
        }
        if matches!(self.group_type, GroupType::SOOdd | GroupType::SOEven) && signs.values().product::<i8>() != 1 {
            return Err(Error::validation("signs do not descend to the SO component group"));
        }
        Ok(())
    }
}

/// A_G(u) for u of Jordan type λ.
pub fn component_group(ty: GroupType, lambda: &Partition) -> Result<ComponentGroupPresentation> {
    if !lambda.is_valid_for(ty) {
        return Err(Error::validation(format!("{lambda} is not a unipotent class of {ty}")));
    }
    let make = |group: FiniteGroup, normal: Vec<usize>, generators: Vec<(usize, usize)>| {
        let normal = SubgroupHandle::new(&group, normal);
        Ok(ComponentGroupPresentation {
            group_type: ty,
            lambda: lambda.clone(),
            group,
            normal,
            generators,
        })
    };
    match ty {
        GroupType::GL => {
            let g = FiniteGroup::trivial();
            make(g, vec![0], Vec::new())
        }
        GroupType::SLmod(k) => {
            let o = lambda.parts().iter().fold(k, |acc, &p| arith::gcd(acc, p as u64)) as usize;
            let g = cyclic_table(o)?;
            let gens = if o > 1 { vec![(0, 1)] } else { Vec::new() };
            make(g, (0..o).collect(), gens)
        }
        GroupType::Sp => {
            let parts: Vec<usize> = lambda.distinct().into_iter().filter(|a| a % 2 == 0).collect();
            let g = xor_group(parts.len())?;
            let gens = parts.iter().enumerate().map(|(i, &a)| (a, 1 << i)).collect();
            make(g, (0..1 << parts.len()).collect(), gens)
        }
        GroupType::O => {
            let parts: Vec<usize> = lambda.distinct().into_iter().filter(|a| a % 2 == 1).collect();
            let g = xor_group(parts.len())?;
            let gens = parts.iter().enumerate().map(|(i, &a)| (a, 1 << i)).collect();
            let normal = (0..1usize << parts.len())
                .filter(|mask| {
                    let det: usize = parts
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &a)| lambda.multiplicity(a))
                        .sum();
                    det % 2 == 0
                })
                .collect();
            make(g, normal, gens)
        }
        GroupType::SOOdd | GroupType::SOEven => {
            let parts: Vec<usize> = lambda.distinct().into_iter().filter(|a| a % 2 == 1).collect();
            let bits = parts.len().saturating_sub(1);
            let g = xor_group(bits)?;
            let all = (1usize << bits) - 1;
            let gens = parts
                .iter()
                .enumerate()
                .map(|(i, &a)| (a, if i + 1 == parts.len() { all } else { 1 << i }))
                .collect();
            make(g, (0..1 << bits).collect(), gens)
        }
    }
}

/// One cuspidal pair (u, ε): a staircase with a sign pattern, or for SLmod
/// the regular class with a character of exact order N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalPair {
    pub lambda: Partition,
    pub depth: usize,
    pub signs: BTreeMap<usize, i8>,
    pub central_order: Option<u64>,
    /// Whether the sign pattern is a character of the component group of
    /// this type (always true except for SO, where the quotient convention
    /// keeps exactly the patterns with product 1).
    pub descends: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalClassification {
    pub group_type: GroupType,
    pub n: usize,
    pub pairs: Vec<CuspidalPair>,
    pub not_supported: Vec<String>,
}

fn staircase_depth(n: usize, f: impl Fn(usize) -> usize) -> Option<usize> {
    (0..=n).take_while(|&d| f(d) <= n).find(|&d| f(d) == n)
}

/// The cuspidal pairs of the given type in rank N.
pub fn cuspidal_pairs(ty: GroupType, n: usize) -> CuspidalClassification {
    let mut pairs = Vec::new();
    let mut not_supported = Vec::new();
    match ty {
        GroupType::GL => {
            if n == 1 {
                pairs.push(CuspidalPair {
                    lambda: Partition(vec![1]),
                    depth: 1,
                    signs: BTreeMap::new(),
                    central_order: Some(1),
                    descends: true,
                });
            }
        }
        GroupType::SLmod(k) => {
            if n >= 1 && k == n as u64 {
                pairs.push(CuspidalPair {
                    lambda: Partition(vec![n]),
                    depth: 1,
                    signs: BTreeMap::new(),
                    central_order: Some(k),
                    descends: true,
                });
            }
        }
        GroupType::Sp => {
            if let Some(d) = staircase_depth(n, |d| d * (d + 1)).filter(|&d| d > 0) {
                let signs = (1..=d).map(|a| (2 * a, if a % 2 == 0 { 1 } else { -1 })).collect();
                pairs.push(CuspidalPair {
                    lambda: Partition::staircase(2, d),
                    depth: d,
                    signs,
                    central_order: None,
                    descends: true,
                });
            }
        }
        GroupType::SOOdd | GroupType::SOEven | GroupType::O => {
            if let Some(d) = staircase_depth(n, |d| d * d).filter(|&d| d > 0) {
                for shift in 0..2 {
                    let signs: BTreeMap<usize, i8> = (1..=d)
                        .map(|a| (2 * a - 1, if (a + shift) % 2 == 0 { 1 } else { -1 }))
                        .collect();
                    let descends = ty == GroupType::O || signs.values().product::<i8>() == 1;
                    pairs.push(CuspidalPair {
                        lambda: Partition::staircase(1, d),
                        depth: d,
                        signs,
                        central_order: None,
                        descends,
                    });
                }
            }
            if ty != GroupType::O {
                not_supported.push(
                    "Spin and half-spin covers: cuspidal pairs on which the kernel of the cover acts nontrivially".into(),
                );
            }
        }
    }
    CuspidalClassification {
        group_type: ty,
        n,
        pairs,
        not_supported,
    }
}

/// Number of partitions of 0..=n by Euler's pentagonal recurrence.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
        }
        p[m] = acc as u64;
    }
    p
}

/// |Irr W(B_k)| = number of bipartitions of k.
pub fn bipartition_count(k: usize) -> u64 {
    let p = partition_counts(k);
    (0..=k).map(|i| p[i] * p[k - i]).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusLhsTerm {
    pub lambda: Partition,
    pub irreducibles: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRhsTerm {
    pub gl1_rank: usize,
    pub tail: String,
    pub cuspidal_pairs: u64,
    pub weyl_group: String,
    pub irreducibles: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub group_type: GroupType,
    pub n: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub lhs_terms: Vec<CensusLhsTerm>,
    pub rhs_terms: Vec<CensusRhsTerm>,
}

impl Census {
    pub fn balanced(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Σ_u |Irr A(u)| against Σ_t |Irr W_t| over cuspidal supports t.
pub fn census(ty: GroupType, n: usize) -> Result<Census> {
    let (tail_size, weyl): (fn(usize) -> usize, &str) = match ty {
        GroupType::GL => (|d| d, "A"),
        GroupType::Sp => (|d| d * (d + 1), "C"),
        GroupType::SOOdd => (|d| d * d, "B"),
        _ => return Err(Error::unsupported(format!("census is implemented for GL, Sp and SO_odd, not {ty}"))),
    };
    if n == 0 || (ty == GroupType::Sp && n % 2 == 1) || (ty == GroupType::SOOdd && n % 2 == 0) {
        return Err(Error::validation(format!("rank {n} does not fit type {ty}")));
    }
    let mut lhs_terms = Vec::new();
    for c in unipotent_classes(ty, n) {
        let a = component_group(ty, &c.lambda)?;
        lhs_terms.push(CensusLhsTerm {
            lambda: c.lambda,
            irreducibles: a.irreducible_count() as u64,
        });
    }
    let mut rhs_terms = Vec::new();
    if ty == GroupType::GL {
        rhs_terms.push(CensusRhsTerm {
            gl1_rank: n,
            tail: "GL_0".into(),
            cuspidal_pairs: 1,
            weyl_group: format!("A_{}", n - 1),
            irreducibles: partition_counts(n)[n],
        });
    } else {
        for d in 0.. {
            let t = tail_size(d);
            if t > n {
                break;
            }
            if (n - t) % 2 != 0 {
                continue;
            }
            let k = (n - t) / 2;
            let pairs = if t == 0 {
                1
            } else {
                cuspidal_pairs(ty, t).pairs.iter().filter(|p| p.descends).count() as u64
            };
            if pairs == 0 {
                continue;
            }
            rhs_terms.push(CensusRhsTerm {
                gl1_rank: k,
                tail: format!("{ty}_{t}"),
                cuspidal_pairs: pairs,
                weyl_group: format!("{weyl}_{k}"),
                irreducibles: pairs * bipartition_count(k),
            });
        }
    }
    Ok(Census {
        group_type: ty,
        n,
        lhs: lhs_terms.iter().map(|t| t.irreducibles).sum(),
        rhs: rhs_terms.iter().map(|t| t.irreducibles).sum(),
        lhs_terms,
        rhs_terms,
    })
}

/// Data for ♮_E: a group A containing A° as a normal subgroup, an
/// irreducible ε of A°, and a section s of A → A/A°.
#[derive(Clone, Debug)]
pub struct SectionDatum {
    ambient: FiniteGroup,
    normal: SubgroupHandle,
    eps: MatrixRep,
    section: Vec<usize>,
    quotient: FiniteGroup,
    projection: GroupHom,
}

impl SectionDatum {
    /// `eps` is indexed by the sorted elements of `normal`; `section` lists
    /// one element per coset, in any order.
    pub fn new(ambient: FiniteGroup, normal: SubgroupHandle, eps: MatrixRep, section: Vec<usize>) -> Result<Self> {
        if !normal.is_normal() {
            return Err(Error::validation("A° must be normal"));
        }
        if eps.matrices().len() != normal.order() {
            return Err(Error::validation("ε must have one matrix per element of A°"));
        }
        let (sub, _) = ambient.subgroup_as_group(&normal);
        eps.verify(&sub)?;
        let (quotient, projection) = ambient.quotient(&normal)?;
        let mut ordered = vec![usize::MAX; quotient.order()];
        for &x in &section {
            if x >= ambient.order() {
                return Err(Error::validation(format!("section element {x} out of range")));
            }
            let q = projection.apply(x);
            if ordered[q] != usize::MAX {
                return Err(Error::validation(format!("two section elements lie in coset {q}")));
            }
            ordered[q] = x;
        }
        if let Some(q) = ordered.iter().position(|&x| x == usize::MAX) {
            return Err(Error::validation(format!("coset {q} has no section element")));
        }
        Ok(SectionDatum {
            ambient,
            normal,
            eps,
            section: ordered,
            quotient,
            projection,
        })
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn normal(&self) -> &SubgroupHandle {
        &self.normal
    }

    pub fn eps(&self) -> &MatrixRep {
        &self.eps
    }

    /// s(q) for each element q of the quotient.
    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    /// The same datum with s(γ) replaced by n·s(γ)·n⁻¹.
    pub fn conjugate_section(&self, n: usize) -> Result<Self> {
        let s = self.section.iter().map(|&x| self.ambient.conj(n, x)).collect();
        SectionDatum::new(self.ambient.clone(), self.normal.clone(), self.eps.clone(), s)
    }

    fn eps_at(&self, x: usize) -> &CycMatrix {
        let i = self.normal.elements().binary_search(&x).expect("element of A°");
        self.eps.matrix(i)
    }

    pub fn from_spec(spec: &SectionSpec, order_bound: usize) -> Result<Self> {
        let g = spec.group.build(order_bound)?;
        let word = |w: &Vec<usize>| g.evaluate_word(w);
        let ngens = spec.normal.iter().map(word).collect::<Result<Vec<_>>>()?;
        let normal = g.subgroup(&ngens);
        let (sub, _) = g.subgroup_as_group(&normal);
        let irreps = irreps_matrices(&sub)?;
        let eps = irreps
            .get(spec.eps)
            .cloned()
            .ok_or_else(|| Error::validation(format!("A° has only {} irreducibles", irreps.len())))?;
        let section = spec.section.iter().map(word).collect::<Result<Vec<_>>>()?;
        SectionDatum::new(g, normal, eps, section)
    }
}

/// JSON form: elements are words in the generators of `group`; `eps`
/// indexes the irreducibles of A° in character-table order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectionSpec {
    pub group: GroupSpec,
    pub normal: Vec<Vec<usize>>,
    pub eps: usize,
    pub section: Vec<Vec<usize>>,
}

impl SectionSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("section JSON: {e}")))
    }
}

/// ♮_E(γ,γ') = ε(s(γ)s(γ')s(γγ')⁻¹) as a cocycle on A/A°.
pub fn cocycle_from_section(d: &SectionDatum) -> Result<TwoCocycle> {
    let (a, q, s) = (&d.ambient, &d.quotient, &d.section);
    let n = q.order();
    let mut vals = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let defect = a.mul(a.mul(s[x], s[y]), a.inv(s[q.mul(x, y)]));
            let v = d
                .eps_at(defect)
                .as_scalar()
                .and_then(|c| c.as_root_of_unity())
                .ok_or_else(|| Error::validation(format!("ε is not scalar on s(γ)s(γ')s(γγ')⁻¹ for (γ, γ') = ({x}, {y})")))?;
            row.push(v);
        }
        vals.push(row);
    }
    TwoCocycle::from_roots(q, &vals)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma42Report {
    pub quotient_order: usize,
    pub kappa_trivial: bool,
    pub natural_trivial: bool,
    /// κ_ε cohomologous to ♮_E⁻¹.
    pub matches_inverse: bool,
    /// κ_ε cohomologous to ♮_E.
    pub matches_natural: bool,
}

impl Lemma42Report {
    pub fn holds(&self) -> bool {
        self.matches_inverse
    }
}

/// Compares the Clifford cocycle κ_ε of (A, A°, ε) with ♮_E.
pub fn verify_lemma42(d: &SectionDatum) -> Result<Lemma42Report> {
    let natural = cocycle_from_section(d)?;
    let section = (d.section[0] == d.ambient.identity()).then_some(d.section.as_slice());
    let datum = intertwiner_cocycle_with_section(&d.ambient, &d.normal, &d.eps, section)?;
    if datum.stabilizer().order() != d.ambient.order() {
        return Err(Error::validation("ε is not stable under A"));
    }
    let q = datum.quotient();
    let pulled = natural.pullback(datum.inclusion());
    let kappa = datum.kappa();
    Ok(Lemma42Report {
        quotient_order: q.order(),
        kappa_trivial: is_coboundary(q, kappa),
        natural_trivial: is_coboundary(q, &pulled),
        matches_inverse: cohomologous(q, kappa, &pulled.inverse()).is_some(),
        matches_natural: cohomologous(q, kappa, &pulled).is_some(),
    })
}

fn monomial_index(g: &FiniteGroup, m: &MonomialMatrix) -> Result<usize> {
    match g.realization() {
        Realization::Monomial { elements, .. } => elements
            .iter()
            .position(|e| e == m)
            .ok_or_else(|| Error::validation("matrix is not an element of the group")),
        _ => Err(Error::validation("group is not realized by monomial matrices")),
    }
}

/// Q8 ⊂ SL_2(ℂ) with A° = {±1}, ε the sign character and the section
/// {1, diag(i,−i), antidiag(i,i), [[0,−1],[1,0]]}.
pub fn example_a_section() -> Result<SectionDatum> {
    let q8 = catalog::quaternion();
    let i = Cyclotomic::i();
    let one = Cyclotomic::from_int(1);
    let minus = Cyclotomic::from_int(-1);
    let reps = [
        MonomialMatrix::identity(2),
        MonomialMatrix::diagonal(vec![i.clone(), -i.clone()]),
        MonomialMatrix::from_sparse(2, &[(0, 1, i.clone()), (1, 0, i)])?,
        MonomialMatrix::from_sparse(2, &[(0, 1, minus.clone()), (1, 0, one)])?,
    ];
    let section = reps.iter().map(|m| monomial_index(&q8, m)).collect::<Result<Vec<_>>>()?;
    let minus_one = monomial_index(&q8, &MonomialMatrix::diagonal(vec![minus.clone(), minus]))?;
    let normal = q8.subgroup(&[minus_one]);
    let eps = MatrixRep::from_matrices(
        normal
            .elements()
            .iter()
            .map(|&x| CycMatrix::scalar(1, Cyclotomic::from_int(if x == minus_one { -1 } else { 1 })))
            .collect(),
    );
    SectionDatum::new(q8, normal, eps, section)
}

/// The defining rank-one character data: returns the index of ε among the
/// irreducibles of A° ordered as in [`character_table`].
pub fn eps_index(d: &SectionDatum) -> Option<usize> {
    let (sub, _) = d.ambient.subgroup_as_group(&d.normal);
    let chi = d.eps.character(&sub);
    character_table(&sub).iter().position(|c| *c == chi)
}

/// A classical group by type and dimension of its natural representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalShape {
    pub kind: GroupType,
    pub n: usize,
}

/// GL_1^k × tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviShape {
    pub gl1: usize,
    pub tail: ClassicalShape,
}

#[derive(Clone, Debug)]
pub struct WeylDatum {
    pub cartan_type: String,
    pub rank: usize,
    pub order: u64,
    w_circ: Option<FiniteGroup>,
    w_t: Option<FiniteGroup>,
    complement: Option<FiniteGroup>,
}

impl WeylDatum {
    /// W_{t°}, when small enough to tabulate.
    pub fn w_circ(&self) -> Option<&FiniteGroup> {
        self.w_circ.as_ref()
    }

    /// W_t = R_t ⋉ W_{t°} when a complement was supplied, else W_{t°}.
    pub fn w_t(&self) -> Option<&FiniteGroup> {
        self.w_t.as_ref().or(self.w_circ.as_ref())
    }

    pub fn complement(&self) -> Option<&FiniteGroup> {
        self.complement.as_ref()
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// The Weyl group N_G(T)/T-type datum for a Levi GL_1^k × tail of a
/// classical group. `extension` supplies R_t and its action on W_{t°}.
pub fn weyl_datum(
    levi: &LeviShape,
    ambient: &ClassicalShape,
    extension: Option<(&FiniteGroup, &[Vec<usize>])>,
) -> Result<WeylDatum> {
    let k = levi.gl1;
    let tail = levi.tail;
    let fits = tail.kind == ambient.kind
        && match ambient.kind {
            GroupType::GL | GroupType::SLmod(_) => tail.n + k == ambient.n,
            _ => tail.n + 2 * k == ambient.n,
        };
    if !fits {
        return Err(Error::validation(format!(
            "GL_1^{k} × {}_{} does not embed in {}_{}",
            tail.kind, tail.n, ambient.kind, ambient.n
        )));
    }
    let (letter, rank, order, build): (&str, usize, u64, fn(usize) -> FiniteGroup) = match ambient.kind {
        GroupType::GL | GroupType::SLmod(_) => {
            let r = if tail.n == 1 { k + 1 } else { k };
            ("A", r, factorial(r), |r| if r <= 1 { FiniteGroup::trivial() } else { catalog::symmetric(r) })
        }
        GroupType::Sp => ("C", k, (1u64 << k) * factorial(k), catalog::weyl_b),
        GroupType::SOOdd | GroupType::O => ("B", k, (1u64 << k) * factorial(k), catalog::weyl_b),
        GroupType::SOEven if tail.n == 0 && k >= 2 => ("D", k, (1u64 << (k - 1)) * factorial(k), catalog::weyl_d),
        GroupType::SOEven => ("B", k, (1u64 << k) * factorial(k), catalog::weyl_b),
    };
    let w_circ = (order as usize <= TABLE_LIMIT).then(|| build(rank));
    let (w_t, complement) = match extension {
        None => (None, None),
        Some((r, action)) => {
            let w = w_circ
                .as_ref()
                .ok_or_else(|| Error::unsupported(format!("W_t° of order {order} is too large to extend")))?;
            (Some(FiniteGroup::semidirect_product(w, r, action)?), Some(r.clone()))
        }
    };
    Ok(WeylDatum {
        cartan_type: if rank == 0 { "trivial".into() } else { format!("{letter}_{rank}") },
        rank,
        order,
        w_circ,
        w_t,
        complement,
    })
}

/// A quasi-cuspidal support with its cocycle on W_qt.
#[derive(Clone, Debug)]
pub struct QuasiCuspidalSupport {
    pub levi: String,
    pub v: Partition,
    pub qeps: BTreeMap<usize, i8>,
    w_qt: FiniteGroup,
    w_circ: SubgroupHandle,
    kappa: TwoCocycle,
}

impl QuasiCuspidalSupport {
    pub fn new(
        levi: String,
        v: Partition,
        qeps: BTreeMap<usize, i8>,
        w_qt: FiniteGroup,
        w_circ: SubgroupHandle,
        kappa: TwoCocycle,
    ) -> Result<Self> {
        if !w_circ.is_normal() {
            return Err(Error::validation("W_t° must be normal in W_qt"));
        }
        if kappa.group_order() != w_qt.order() {
            return Err(Error::validation("κ must live on W_qt"));
        }
        let (_, proj) = w_qt.quotient(&w_circ)?;
        let mut rep = vec![usize::MAX; w_qt.order()];
        for x in 0..w_qt.order() {
            let q = proj.apply(x);
            if rep[q] == usize::MAX {
                rep[q] = x;
            }
        }
        for x in 0..w_qt.order() {
            for y in 0..w_qt.order() {
                let (rx, ry) = (rep[proj.apply(x)], rep[proj.apply(y)]);
                if kappa.value(x, y) != kappa.value(rx, ry) {
                    return Err(Error::validation(format!("κ does not factor through W_qt/W_t° at ({x}, {y})")));
                }
            }
        }
        Ok(QuasiCuspidalSupport {
            levi,
            v,
            qeps,
            w_qt,
            w_circ,
            kappa,
        })
    }

    /// Inflates a cocycle given on W_qt/W_t° (in the element order of
    /// `w_qt.quotient(w_circ)`).
    pub fn from_quotient_cocycle(
        levi: String,
        v: Partition,
        qeps: BTreeMap<usize, i8>,
        w_qt: FiniteGroup,
        w_circ: SubgroupHandle,
        kappa_bar: &TwoCocycle,
    ) -> Result<Self> {
        let (q, proj) = w_qt.quotient(&w_circ)?;
        if kappa_bar.group_order() != q.order() {
            return Err(Error::validation("κ must live on W_qt/W_t°"));
        }
        let kappa = kappa_bar.pullback(proj.images());
        Self::new(levi, v, qeps, w_qt, w_circ, kappa)
    }

    pub fn w_qt(&self) -> &FiniteGroup {
        &self.w_qt
    }

    pub fn w_circ(&self) -> &SubgroupHandle {
        &self.w_circ
    }

    pub fn kappa(&self) -> &TwoCocycle {
        &self.kappa
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSpec {
    /// Levi label, e.g. "GL1xSp2".
    pub levi: String,
    /// Jordan type of the cuspidal tail.
    pub v: Partition,
    pub qeps: BTreeMap<usize, i8>,
    /// Twists s of the GL_1 factors produced by the reduction.
    #[serde(default)]
    pub gl_twists: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpringerEntry {
    pub lambda: Partition,
    pub eta_signs: BTreeMap<usize, i8>,
    pub support: SupportSpec,
}

/// Cuspidal supports of the pairs (λ, η) for one (type, N).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpringerTable {
    pub group_type: GroupType,
    pub n: usize,
    pub entries: Vec<SpringerEntry>,
}

fn entry(lambda: &[usize], eta: &[(usize, i8)], levi: &str, v: &[usize], qeps: &[(usize, i8)], twists: &[&str]) -> SpringerEntry {
    SpringerEntry {
        lambda: Partition(lambda.to_vec()),
        eta_signs: eta.iter().copied().collect(),
        support: SupportSpec {
            levi: levi.into(),
            v: Partition(v.to_vec()),
            qeps: qeps.iter().copied().collect(),
            gl_twists: twists.iter().map(|s| s.to_string()).collect(),
        },
    }
}

impl SpringerTable {
    /// Parses the file format: a JSON list of entries.
    pub fn from_json(group_type: GroupType, n: usize, s: &str) -> Result<Self> {
        let entries: Vec<SpringerEntry> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("Springer table JSON: {e}")))?;
        for e in &entries {
            if e.lambda.total() != n || !e.lambda.is_valid_for(group_type) {
                return Err(Error::validation(format!("{} is not a class of {group_type}_{n}", e.lambda)));
            }
        }
        Ok(SpringerTable { group_type, n, entries })
    }

    /// Tables whose entries are forced by counting in small rank.
    pub fn builtin(group_type: GroupType, n: usize) -> Option<Self> {
        let entries = match (group_type, n) {
            (GroupType::Sp, 2) => vec![
                entry(&[2], &[(2, -1)], "Sp2", &[2], &[(2, -1)], &[]),
                entry(&[2], &[(2, 1)], "GL1", &[], &[], &["1/2"]),
                entry(&[1, 1], &[], "GL1", &[], &[], &["0"]),
            ],
            (GroupType::O, 1) => vec![
                entry(&[1], &[(1, 1)], "O1", &[1], &[(1, 1)], &[]),
                entry(&[1], &[(1, -1)], "O1", &[1], &[(1, -1)], &[]),
            ],
            (GroupType::O, 2) => vec![
                entry(&[1, 1], &[(1, 1)], "GL1", &[], &[], &["0"]),
                entry(&[1, 1], &[(1, -1)], "GL1", &[], &[], &["0"]),
            ],
            (GroupType::O, 3) => vec![
                entry(&[3], &[(3, 1)], "GL1xO1", &[1], &[(1, 1)], &["1"]),
                entry(&[3], &[(3, -1)], "GL1xO1", &[1], &[(1, -1)], &["1"]),
                entry(&[1, 1, 1], &[(1, 1)], "GL1xO1", &[1], &[(1, 1)], &["0"]),
                entry(&[1, 1, 1], &[(1, -1)], "GL1xO1", &[1], &[(1, -1)], &["0"]),
            ],
            (GroupType::SOOdd, 1) => vec![entry(&[1], &[], "SO1", &[1], &[], &[])],
            (GroupType::SOOdd, 3) => vec![
                entry(&[3], &[], "GL1xSO1", &[1], &[], &["1"]),
                entry(&[1, 1, 1], &[], "GL1xSO1", &[1], &[], &["0"]),
            ],
            _ => return None,
        };
        Some(SpringerTable { group_type, n, entries })
    }

    pub fn lookup(&self, lambda: &Partition, signs: &BTreeMap<usize, i8>) -> Option<&SupportSpec> {
        self.entries
            .iter()
            .find(|e| &e.lambda == lambda && &e.eta_signs == signs)
            .map(|e| &e.support)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RootOfUnity;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unipotent_class_lists() {
        let sp4: Vec<Partition> = unipotent_classes(GroupType::Sp, 4).into_iter().map(|c| c.lambda).collect();
        assert_eq!(sp4, vec![p(&[4]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert_eq!(unipotent_classes(GroupType::GL, 3).len(), 3);
        let so5: Vec<Partition> = unipotent_classes(GroupType::SOOdd, 5).into_iter().map(|c| c.lambda).collect();
        assert_eq!(so5, vec![p(&[5]), p(&[3, 1, 1]), p(&[2, 2, 1]), p(&[1, 1, 1, 1, 1])]);
    }

    #[test]
    fn component_groups() {
        let c = component_group(GroupType::SLmod(10), &p(&[2, 2, 2, 2, 2])).unwrap();
        assert_eq!(c.order(), 2);
        let s = component_group(GroupType::Sp, &p(&[4, 2])).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.generator_names(), vec!["z_2", "z_4"]);
        assert_eq!(component_group(GroupType::GL, &p(&[3, 1])).unwrap().order(), 1);
        let o = component_group(GroupType::O, &p(&[3, 1, 1])).unwrap();
        assert_eq!((o.order(), o.normal().order()), (4, 2));
        let so = component_group(GroupType::SOOdd, &p(&[5, 3, 1])).unwrap();
        assert_eq!(so.order(), 4);
        assert!(component_group(GroupType::Sp, &p(&[3])).is_err());
    }

    #[test]
    fn cuspidal_pair_rules() {
        let sp2 = cuspidal_pairs(GroupType::Sp, 2);
        assert_eq!(sp2.pairs.len(), 1);
        assert_eq!(sp2.pairs[0].signs, BTreeMap::from([(2, -1)]));
        assert!(cuspidal_pairs(GroupType::Sp, 4).pairs.is_empty());
        assert_eq!(cuspidal_pairs(GroupType::Sp, 6).pairs[0].lambda, p(&[4, 2]));
        let so9 = cuspidal_pairs(GroupType::SOOdd, 9);
        assert_eq!(so9.pairs.len(), 2);
        assert_eq!(so9.pairs[0].lambda, p(&[5, 3, 1]));
        assert_eq!(so9.pairs.iter().filter(|c| c.descends).count(), 1);
        assert!(!so9.not_supported.is_empty());
        assert_eq!(cuspidal_pairs(GroupType::SLmod(4), 4).pairs.len(), 1);
        assert!(cuspidal_pairs(GroupType::SLmod(2), 4).pairs.is_empty());
    }

    #[test]
    fn census_identity() {
        // Σ_u |Irr A(u)| counted independently by enumerating partitions.
        for (n, expect) in [(2, 3), (4, 7), (6, 16), (8, 32), (10, 61), (12, 112), (14, 197), (16, 336)] {
            let c = census(GroupType::Sp, n).unwrap();
            assert_eq!((c.lhs, c.rhs), (expect, expect), "Sp_{n}");
        }
        for (n, expect) in [(1, 1), (3, 2), (5, 5), (7, 10), (9, 21), (11, 38), (13, 70), (15, 120), (17, 205)] {
            let c = census(GroupType::SOOdd, n).unwrap();
            assert_eq!((c.lhs, c.rhs), (expect, expect), "SO_{n}");
        }
        for n in 1..=20 {
            assert!(census(GroupType::GL, n).unwrap().balanced());
        }
        assert_eq!(partition_counts(20)[20], 627);
        assert!(census(GroupType::O, 3).is_err());
    }

    #[test]
    fn example_a_section_cocycle() {
        let d = example_a_section().unwrap();
        assert_eq!(d.quotient().order(), 4);
        let c = cocycle_from_section(&d).unwrap();
        assert!(!is_coboundary(d.quotient(), &c));
        let r = verify_lemma42(&d).unwrap();
        assert!(r.holds() && r.matches_natural);
        assert!(!r.kappa_trivial && !r.natural_trivial);
        for n in d.normal().elements() {
            let c2 = cocycle_from_section(&d.conjugate_section(*n).unwrap()).unwrap();
            assert!(cohomologous(d.quotient(), &c, &c2).is_some());
        }
    }

    #[test]
    fn trivial_and_homomorphic_sections() {
        let d = example_a_section().unwrap();
        let triv = MatrixRep::from_matrices(vec![CycMatrix::identity(1); 2]);
        let t = SectionDatum::new(d.ambient().clone(), d.normal().clone(), triv, d.section().to_vec()).unwrap();
        assert!(is_coboundary(t.quotient(), &cocycle_from_section(&t).unwrap()));
        let r = verify_lemma42(&t).unwrap();
        assert!(r.holds() && r.kappa_trivial && r.natural_trivial);

        // D8 over its center with a linear ε: the section splits.
        let d8 = catalog::dihedral(4);
        let z = d8.center();
        let (sub, _) = d8.subgroup_as_group(&z);
        let eps = irreps_matrices(&sub).unwrap().pop().unwrap();
        let (q, proj) = d8.quotient(&z).unwrap();
        let section: Vec<usize> = (0..q.order())
            .map(|i| (0..d8.order()).find(|&x| proj.apply(x) == i).unwrap())
            .collect();
        let sd = SectionDatum::new(d8, z, eps, section).unwrap();
        let r = verify_lemma42(&sd).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn non_scalar_defect_is_reported() {
        // Γ = S3 × C4 over N = S3 × C2 with a 2-dimensional ε; the section
        // value (r, g) with r a 3-cycle squares to (r², g²), where ε is not scalar.
        let s3 = catalog::symmetric(3);
        let c4 = catalog::cyclic(4);
        let g = s3.direct_product(&c4).unwrap();
        let r = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let c = (0..4).find(|&x| c4.element_order(x) == 4).unwrap();
        let n = g.subgroup(&[r * 4, t * 4, c4.mul(c, c)]);
        let (sub, _) = g.subgroup_as_group(&n);
        let eps = irreps_matrices(&sub).unwrap().into_iter().find(|m| m.dim() == 2).unwrap();
        let d = SectionDatum::new(g, n, eps, vec![0, r * 4 + c]).unwrap();
        match cocycle_from_section(&d) {
            Err(Error::Validation(msg)) => assert!(msg.contains("(1, 1)"), "{msg}"),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn weyl_data() {
        let sp4 = ClassicalShape { kind: GroupType::Sp, n: 4 };
        let w = weyl_datum(&LeviShape { gl1: 2, tail: ClassicalShape { kind: GroupType::Sp, n: 0 } }, &sp4, None).unwrap();
        assert_eq!((w.cartan_type.as_str(), w.order), ("C_2", 8));
        assert_eq!(w.w_circ().unwrap().order(), 8);
        let w = weyl_datum(&LeviShape { gl1: 1, tail: ClassicalShape { kind: GroupType::Sp, n: 2 } }, &sp4, None).unwrap();
        assert_eq!(w.order, 2);
        let w = weyl_datum(&LeviShape { gl1: 0, tail: sp4 }, &sp4, None).unwrap();
        assert_eq!(w.order, 1);
        assert!(weyl_datum(&LeviShape { gl1: 1, tail: sp4 }, &sp4, None).is_err());
    }

    #[test]
    fn quasi_cuspidal_cocycle_factors() {
        let d = example_a_section().unwrap();
        let kbar = cocycle_from_section(&d).unwrap();
        let s2 = catalog::symmetric(2);
        let w = d.quotient().direct_product(&s2).unwrap();
        let w_circ = w.subgroup(&[1]);
        let onto: Vec<usize> = (0..w.order()).map(|x| x / 2).collect();
        let kappa = kbar.pullback(&onto);
        let ok = QuasiCuspidalSupport::new("GL1xSp2".into(), p(&[2]), BTreeMap::new(), w.clone(), w_circ.clone(), kappa.clone());
        assert!(ok.is_ok());
        let beta: Vec<RootOfUnity> = (0..w.order()).map(|x| RootOfUnity::new(4, (x % 2) as i64)).collect();
        let moved = kappa.twist_by(&w, &beta);
        assert!(QuasiCuspidalSupport::new("GL1xSp2".into(), p(&[2]), BTreeMap::new(), w, w_circ, moved).is_err());
    }

    #[test]
    fn builtin_tables_match_counts() {
        let t = SpringerTable::builtin(GroupType::Sp, 2).unwrap();
        // |Irr W(C_1)| = 2 entries on the torus, one cuspidal.
        assert_eq!(t.entries.iter().filter(|e| e.support.levi == "GL1").count(), 2);
        assert_eq!(t.lookup(&p(&[2]), &BTreeMap::from([(2, -1)])).unwrap().levi, "Sp2");
        let json = serde_json::to_string(&t.entries).unwrap();
        assert_eq!(SpringerTable::from_json(GroupType::Sp, 2, &json).unwrap(), t);
    }
}
