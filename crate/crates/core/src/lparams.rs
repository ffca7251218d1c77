//! Enhanced L-parameters at the level of Jordan blocks π ⊠ S_a.
//!
//! A parameter is a multiset of blocks (label, a, mult). Labels carry a
//! twist q^s·ζ standing in for an unramified character. Inner forms of GL
//! are modelled through SL-type centralizers, where S_φ is cyclic of order
//! gcd(n, block sizes). Classical and unitary groups use one orthogonal or
//! symplectic factor per self-dual label.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{arith, parse_rational, rat, Rational, RootOfUnity};
use crate::groups::{catalog, FiniteGroup, GroupHom, SubgroupHandle, TABLE_LIMIT};
use crate::springer::{self, cocycle_from_section, GroupType, Partition, SectionDatum, SpringerTable};
use crate::tga::{is_coboundary, twisted_traces, TwoCocycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Duality {
    Orth,
    Symp,
    ConjOrth,
    ConjSymp,
    None,
}

impl Duality {
    pub fn name(self) -> &'static str {
        match self {
            Duality::Orth => "orthogonal",
            Duality::Symp => "symplectic",
            Duality::ConjOrth => "conjugate-orthogonal",
            Duality::ConjSymp => "conjugate-symplectic",
            Duality::None => "non-self-dual",
        }
    }

    fn sign(self) -> Option<i8> {
        match self {
            Duality::Orth | Duality::ConjOrth => Some(1),
            Duality::Symp | Duality::ConjSymp => Some(-1),
            Duality::None => None,
        }
    }

    fn is_conjugate(self) -> bool {
        matches!(self, Duality::ConjOrth | Duality::ConjSymp)
    }

    /// Type of π ⊠ S_a: S_a is orthogonal for odd a and symplectic for even a.
    pub fn of_block(self, a: usize) -> Duality {
        let flip = a % 2 == 0;
        match (self, flip) {
            (Duality::None, _) => Duality::None,
            (d, false) => d,
            (Duality::Orth, true) => Duality::Symp,
            (Duality::Symp, true) => Duality::Orth,
            (Duality::ConjOrth, true) => Duality::ConjSymp,
            (Duality::ConjSymp, true) => Duality::ConjOrth,
        }
    }
}

mod rational_text {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// The unramified twist q^s·ζ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Twist {
    #[serde(with = "rational_text")]
    pub s: Rational,
    pub zeta: RootOfUnity,
}

impl Default for Twist {
    fn default() -> Self {
        Twist::zero()
    }
}

impl Twist {
    pub fn zero() -> Self {
        Twist {
            s: Rational::zero(),
            zeta: RootOfUnity::one(),
        }
    }

    pub fn real(s: Rational) -> Self {
        Twist { s, zeta: RootOfUnity::one() }
    }

    pub fn is_trivial(&self) -> bool {
        self.s.is_zero() && self.zeta.is_one()
    }

    pub fn add(&self, other: &Twist) -> Twist {
        Twist {
            s: &self.s + &other.s,
            zeta: self.zeta.mul(&other.zeta),
        }
    }

    pub fn shift(&self, s: &Rational) -> Twist {
        Twist {
            s: &self.s + s,
            zeta: self.zeta,
        }
    }

    /// Whether twisting keeps a self-dual label self-dual.
    fn preserves_duality(&self) -> bool {
        self.s.is_zero() && self.zeta.order() <= 2
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.s)?;
        if !self.zeta.is_one() {
            write!(f, ",{}/{}", self.zeta.exponent(), self.zeta.order())?;
        }
        Ok(())
    }
}

/// An irreducible W_F-representation up to its twist.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeilLabel {
    pub core: String,
    pub dim: usize,
    pub duality: Duality,
    #[serde(default)]
    pub twist: Twist,
}

impl WeilLabel {
    pub fn new(core: &str, dim: usize, duality: Duality) -> Self {
        WeilLabel {
            core: core.into(),
            dim,
            duality,
            twist: Twist::zero(),
        }
    }

    pub fn twisted(&self, t: &Twist) -> Self {
        WeilLabel {
            twist: self.twist.add(t),
            ..self.clone()
        }
    }

    pub fn with_twist(&self, t: Twist) -> Self {
        WeilLabel { twist: t, ..self.clone() }
    }

    /// Identifier used in generator names: the core, plus the twist when
    /// it is nontrivial.
    pub fn id(&self) -> String {
        if self.twist.is_trivial() {
            self.core.clone()
        } else {
            format!("{}[{}]", self.core, self.twist)
        }
    }

    fn effective_duality(&self) -> Duality {
        if self.twist.preserves_duality() {
            self.duality
        } else {
            Duality::None
        }
    }
}

/// `mult` copies of label ⊠ S_a.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    #[serde(flatten)]
    pub label: WeilLabel,
    pub a: usize,
    #[serde(default = "one_usize")]
    pub mult: usize,
}

fn one_usize() -> usize {
    1
}

impl Block {
    pub fn new(label: WeilLabel, a: usize, mult: usize) -> Self {
        Block { label, a, mult }
    }

    pub fn dimension(&self) -> usize {
        self.label.dim * self.a * self.mult
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GroupDescriptor {
    /// GL_m(D) with n = m·d, D of index d.
    #[serde(rename = "GLinner")]
    GLInner { n: usize, d: usize },
    /// Sp_{2n}, dual SO_{2n+1}.
    Sp { n: usize },
    /// SO_{2n+1}, dual Sp_{2n}.
    #[serde(rename = "SOodd")]
    SOOdd { n: usize },
    /// Split SO_{2n}, dual SO_{2n}.
    #[serde(rename = "SOeven")]
    SOEven { n: usize },
    /// U_n, dual GL_n with conjugate duality.
    U { n: usize },
}

impl GroupDescriptor {
    pub fn dual_dimension(&self) -> usize {
        match *self {
            GroupDescriptor::GLInner { n, .. } => n,
            GroupDescriptor::Sp { n } => 2 * n + 1,
            GroupDescriptor::SOOdd { n } | GroupDescriptor::SOEven { n } => 2 * n,
            GroupDescriptor::U { n } => n,
        }
    }

    pub fn is_type_a(&self) -> bool {
        matches!(self, GroupDescriptor::GLInner { .. })
    }

    /// Sign of the form preserved by the dual group.
    fn dual_form(&self) -> Option<i8> {
        match self {
            GroupDescriptor::GLInner { .. } => None,
            GroupDescriptor::Sp { .. } | GroupDescriptor::SOEven { .. } | GroupDescriptor::U { .. } => Some(1),
            GroupDescriptor::SOOdd { .. } => Some(-1),
        }
    }

    fn dual_block_type(&self) -> Option<Duality> {
        match self {
            GroupDescriptor::GLInner { .. } => None,
            GroupDescriptor::U { .. } => Some(Duality::ConjOrth),
            _ => Some(if self.dual_form() == Some(1) { Duality::Orth } else { Duality::Symp }),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::GLInner { n, d } => write!(f, "GLinner({n},{d})"),
            GroupDescriptor::Sp { n } => write!(f, "Sp({})", 2 * n),
            GroupDescriptor::SOOdd { n } => write!(f, "SO({})", 2 * n + 1),
            GroupDescriptor::SOEven { n } => write!(f, "SO({})", 2 * n),
            GroupDescriptor::U { n } => write!(f, "U({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LParameter {
    pub group: GroupDescriptor,
    pub blocks: Vec<Block>,
}

/// A character of S_φ: a sign per generator z:label:a, or for inner forms
/// of GL the exponent k with ρ(c) = ζ_g^k on the generator c of ℤ/g.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Enhancement {
    #[serde(default)]
    pub signs: BTreeMap<String, i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_center: Option<RootOfUnity>,
}

impl Enhancement {
    pub fn trivial() -> Self {
        Enhancement::default()
    }

    pub fn cyclic(k: u64) -> Self {
        Enhancement {
            cyclic: Some(k),
            ..Default::default()
        }
    }

    pub fn signs(signs: impl IntoIterator<Item = (String, i8)>) -> Self {
        Enhancement {
            signs: signs.into_iter().collect(),
            ..Default::default()
        }
    }
}

/// The JSON document consumed by the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnhancedParameter {
    pub group: GroupDescriptor,
    pub blocks: Vec<Block>,
    #[serde(default)]
    pub enhancement: Enhancement,
}

impl EnhancedParameter {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("L-parameter JSON: {e}")))
    }

    pub fn parameter(&self) -> LParameter {
        LParameter {
            group: self.group,
            blocks: self.blocks.clone(),
        }
    }
}

fn block_key(b: &Block) -> (String, Twist, usize, Duality, std::cmp::Reverse<usize>) {
    (b.label.core.clone(), b.label.twist.clone(), b.label.dim, b.label.duality, std::cmp::Reverse(b.a))
}

fn canonical_blocks(blocks: &[Block]) -> Vec<Block> {
    let mut merged: BTreeMap<(WeilLabel, usize), usize> = BTreeMap::new();
    for b in blocks {
        *merged.entry((b.label.clone(), b.a)).or_default() += b.mult;
    }
    let mut out: Vec<Block> = merged.into_iter().map(|((label, a), mult)| Block { label, a, mult }).collect();
    out.sort_by_key(block_key);
    out
}

/// Checks dimensions and duality parity; returns the parameter with equal
/// blocks merged and a canonical block order.
pub fn validate(phi: &LParameter) -> Result<LParameter> {
    let g = phi.group;
    if let GroupDescriptor::GLInner { n, d } = g {
        if d == 0 || n % d != 0 {
            return Err(Error::validation(format!("GLinner({n},{d}): d must divide n")));
        }
    }
    let mut seen: BTreeMap<(String, Twist), (usize, Duality)> = BTreeMap::new();
    for (i, b) in phi.blocks.iter().enumerate() {
        if b.label.dim == 0 || b.a == 0 || b.mult == 0 {
            return Err(Error::validation(format!("block {i} ({}): dim, a and mult must be positive", b.label.id())));
        }
        let key = (b.label.core.clone(), b.label.twist.clone());
        match seen.get(&key) {
            Some(&(dim, dual)) if dim != b.label.dim || dual != b.label.duality => {
                return Err(Error::validation(format!(
                    "block {i}: label {} appears with different dimension or duality",
                    b.label.id()
                )));
            }
            _ => {
                seen.insert(key, (b.label.dim, b.label.duality));
            }
        }
        match g {
            GroupDescriptor::GLInner { .. } => {}
            GroupDescriptor::U { .. } => {
                if matches!(b.label.duality, Duality::Orth | Duality::Symp) {
                    return Err(Error::validation(format!("block {i}: U(n) labels are conjugate-dual or none")));
                }
            }
            _ => {
                if b.label.duality.is_conjugate() {
                    return Err(Error::validation(format!("block {i}: conjugate duality needs a unitary group")));
                }
            }
        }
        if let (Some(target), d) = (g.dual_block_type(), b.label.effective_duality()) {
            if d != Duality::None && d.of_block(b.a) != target && b.mult % 2 == 1 {
                return Err(Error::validation(format!(
                    "block {i} ({}⊠S_{}): {} block with odd multiplicity in a dual group of {} type",
                    b.label.id(),
                    b.a,
                    d.of_block(b.a).name(),
                    target.name()
                )));
            }
        }
    }
    let total: usize = phi.blocks.iter().map(Block::dimension).sum();
    if total != g.dual_dimension() {
        return Err(Error::validation(format!(
            "blocks have total dimension {total}, the dual group of {g} needs {}",
            g.dual_dimension()
        )));
    }
    Ok(LParameter {
        group: g,
        blocks: canonical_blocks(&phi.blocks),
    })
}

/// S_φ with its central subgroup Z_φ and quotient R_φ.
#[derive(Clone, Debug)]
pub struct ComponentGroupTower {
    s: FiniteGroup,
    z: SubgroupHandle,
    r: FiniteGroup,
    projection: GroupHom,
    generators: Vec<(String, usize)>,
    central: usize,
    cyclic_order: Option<u64>,
}

impl ComponentGroupTower {
    pub fn s_group(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn z_group(&self) -> &SubgroupHandle {
        &self.z
    }

    pub fn r_group(&self) -> &FiniteGroup {
        &self.r
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    /// Named generators with their elements.
    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    /// The designated central element (the image of the center of the
    /// simply connected dual, or of −1 for classical groups).
    pub fn central_element(&self) -> usize {
        self.central
    }

    /// Order g when S_φ is the cyclic group of an inner form of GL.
    pub fn cyclic_order(&self) -> Option<u64> {
        self.cyclic_order
    }
}

/// One orthogonal or symplectic centralizer factor of a classical parameter.
#[derive(Clone, Debug)]
struct Factor {
    label: WeilLabel,
    kind: GroupType,
    lambda: Partition,
    /// (a, mult) for each distinct a.
    blocks: Vec<(usize, usize)>,
}

impl Factor {
    fn sign_parts(&self) -> Vec<usize> {
        let odd = self.kind == GroupType::O;
        self.lambda.distinct().into_iter().filter(|a| (a % 2 == 1) == odd).collect()
    }

    fn generator(&self, a: usize) -> String {
        format!("z:{}:{a}", self.label.id())
    }
}

fn classical_factors(phi: &LParameter) -> Vec<Factor> {
    let form = phi.group.dual_form().unwrap_or(1);
    let mut by_label: BTreeMap<WeilLabel, Vec<(usize, usize)>> = BTreeMap::new();
    for b in &phi.blocks {
        if b.label.effective_duality() != Duality::None {
            by_label.entry(b.label.clone()).or_default().push((b.a, b.mult));
        }
    }
    by_label
        .into_iter()
        .map(|(label, blocks)| {
            let sign = label.duality.sign().expect("self-dual") * form;
            let kind = if sign == 1 { GroupType::O } else { GroupType::Sp };
            let parts = blocks.iter().flat_map(|&(a, m)| std::iter::repeat(a).take(m)).collect();
            Factor {
                label,
                kind,
                lambda: Partition::new(parts).expect("positive parts"),
                blocks,
            }
        })
        .collect()
}

fn u_partition(phi: &LParameter) -> Partition {
    let parts = phi
        .blocks
        .iter()
        .flat_map(|b| std::iter::repeat(b.a).take(b.label.dim * b.mult))
        .collect();
    Partition::new(parts).expect("positive parts")
}

/// Order of S_φ for an inner form of GL: gcd(n, block sizes).
pub fn gl_component_order(phi: &LParameter) -> u64 {
    let n = phi.group.dual_dimension() as u64;
    phi.blocks.iter().fold(n, |acc, b| arith::gcd(acc, b.a as u64))
}

/// S_φ = π_0(Z(φ)), with the central data used by relevance.
pub fn s_group(phi: &LParameter) -> Result<ComponentGroupTower> {
    let phi = validate(phi)?;
    if let GroupDescriptor::GLInner { n, .. } = phi.group {
        let cg = springer::component_group(GroupType::SLmod(n as u64), &u_partition(&phi))?;
        let s = cg.group().clone();
        let g = s.order();
        let z = s.whole();
        let (r, projection) = s.quotient(&z)?;
        let generators = cg.generators().iter().map(|&(_, x)| ("c".to_string(), x)).collect();
        return Ok(ComponentGroupTower {
            central: if g > 1 { 1 } else { 0 },
            s,
            z,
            r,
            projection,
            generators,
            cyclic_order: Some(g as u64),
        });
    }
    let factors = classical_factors(&phi);
    let mut generators = Vec::new();
    let mut central = 0usize;
    for f in &factors {
        for a in f.sign_parts() {
            let bit = 1usize << generators.len();
            let mult = f.blocks.iter().find(|(b, _)| *b == a).map(|&(_, m)| m).unwrap_or(0);
            if mult % 2 == 1 {
                central |= bit;
            }
            generators.push((f.generator(a), bit));
        }
    }
    let order = 1usize << generators.len();
    if order > TABLE_LIMIT {
        return Err(Error::unsupported(format!("S_φ of order {order} exceeds {TABLE_LIMIT}")));
    }
    let s = FiniteGroup::from_table((0..order).map(|x| (0..order).map(|y| x ^ y).collect()).collect())?;
    let z = s.subgroup(&[central]);
    let (r, projection) = s.quotient(&z)?;
    Ok(ComponentGroupTower {
        s,
        z,
        r,
        projection,
        generators,
        central,
        cyclic_order: None,
    })
}

/// Checks ρ against S_φ and returns its central character ζ_ρ.
pub fn central_character(phi: &LParameter, rho: &Enhancement) -> Result<RootOfUnity> {
    let tower = s_group(phi)?;
    if let Some(g) = tower.cyclic_order {
        if !rho.signs.is_empty() {
            return Err(Error::validation("inner forms of GL take a cyclic enhancement, not signs"));
        }
        let k = rho.cyclic.unwrap_or(0);
        return Ok(RootOfUnity::new(g, k as i64));
    }
    if rho.cyclic.is_some() {
        return Err(Error::validation("classical enhancements are given by signs"));
    }
    let mut value = 1i8;
    for (name, bit) in &tower.generators {
        let s = *rho
            .signs
            .get(name)
            .ok_or_else(|| Error::validation(format!("enhancement has no sign for {name}")))?;
        if s != 1 && s != -1 {
            return Err(Error::validation(format!("sign for {name} must be ±1")));
        }
        if tower.central & bit != 0 {
            value *= s;
        }
    }
    if let Some(extra) = rho.signs.keys().find(|k| !tower.generators.iter().any(|(n, _)| n == *k)) {
        return Err(Error::validation(format!("S_φ has no generator {extra}")));
    }
    Ok(RootOfUnity::new(2, if value == 1 { 0 } else { 1 }))
}

/// Fills in `zeta_center` after validating ρ.
pub fn normalize_enhancement(phi: &LParameter, rho: &Enhancement) -> Result<Enhancement> {
    let zeta = central_character(phi, rho)?;
    let mut out = rho.clone();
    if let Some(g) = s_group(phi)?.cyclic_order {
        out.cyclic = Some(rho.cyclic.unwrap_or(0) % g);
    }
    out.zeta_center = Some(zeta);
    Ok(out)
}

pub fn is_discrete(phi: &LParameter) -> bool {
    let Ok(phi) = validate(phi) else { return false };
    match phi.group.dual_block_type() {
        None => phi.blocks.len() == 1 && phi.blocks[0].mult == 1,
        Some(target) => phi.blocks.iter().all(|b| {
            let d = b.label.effective_duality();
            b.mult == 1 && d != Duality::None && d.of_block(b.a) == target
        }),
    }
}

pub fn is_bounded(phi: &LParameter) -> bool {
    phi.blocks.iter().all(|b| b.label.twist.s.is_zero())
}

/// Whether ζ_ρ matches the character ζ of the center that parametrizes
/// the inner twist. Classical groups are modelled in their quasi-split
/// form only, whose ζ is trivial.
pub fn is_relevant(phi: &LParameter, rho: &Enhancement, zeta: &RootOfUnity) -> Result<bool> {
    let z = central_character(phi, rho)?;
    Ok(match phi.group {
        GroupDescriptor::GLInner { .. } => z == *zeta,
        _ => zeta.is_one(),
    })
}

/// Relevance for GL_m(D) with D of index d: ζ_ρ must have order exactly d.
pub fn is_relevant_for_inner_form(phi: &LParameter, rho: &Enhancement) -> Result<bool> {
    match phi.group {
        GroupDescriptor::GLInner { d, .. } => Ok(central_character(phi, rho)?.order() == d as u64),
        _ => is_relevant(phi, rho, &RootOfUnity::one()),
    }
}

fn factor_is_cuspidal(f: &Factor, signs: &BTreeMap<usize, i8>) -> bool {
    springer::cuspidal_pairs(f.kind, f.lambda.total())
        .pairs
        .iter()
        .any(|p| p.lambda == f.lambda && &p.signs == signs)
}

fn factor_signs(f: &Factor, rho: &Enhancement) -> Result<BTreeMap<usize, i8>> {
    f.sign_parts()
        .into_iter()
        .map(|a| {
            let name = f.generator(a);
            rho.signs
                .get(&name)
                .map(|&s| (a, s))
                .ok_or_else(|| Error::validation(format!("enhancement has no sign for {name}")))
        })
        .collect()
}

/// Cuspidality of an enhanced parameter for the group it names; for inner
/// forms of GL this includes relevance to GL_m(D).
pub fn is_cuspidal(phi: &LParameter, rho: &Enhancement) -> Result<bool> {
    let phi = validate(phi)?;
    let zeta = central_character(&phi, rho)?;
    if !is_discrete(&phi) {
        return Ok(false);
    }
    if let GroupDescriptor::GLInner { d, .. } = phi.group {
        let a = phi.blocks[0].a as u64;
        return Ok(zeta.order() == a && a == d as u64);
    }
    for f in classical_factors(&phi) {
        if !factor_is_cuspidal(&f, &factor_signs(&f, rho)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A cuspidal datum: GL factors of the Levi (one block each) and, for
/// classical groups, a cuspidal parameter on the classical tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalDatum {
    pub group: GroupDescriptor,
    /// Each factor is label ⊠ S_a on one GL factor of the Levi. In
    /// classical groups a factor stands for the pair π|·|^s ⊕ its dual.
    pub gl_factors: Vec<Block>,
    pub tail: Vec<Block>,
    pub enhancement: Enhancement,
}

impl CuspidalDatum {
    pub fn levi_description(&self) -> String {
        let mut parts: Vec<String> = self
            .gl_factors
            .iter()
            .map(|b| format!("GL{}", b.label.dim * b.a))
            .collect();
        if !self.tail.is_empty() || !self.group.is_type_a() {
            let t: usize = self.tail.iter().map(Block::dimension).sum();
            parts.push(format!("tail{t}"));
        }
        parts.join("x")
    }

    /// The datum read as a parameter with all blocks, for type A.
    pub fn as_parameter(&self) -> LParameter {
        let mut blocks = self.gl_factors.clone();
        blocks.extend(self.tail.iter().cloned());
        LParameter {
            group: self.group,
            blocks: canonical_blocks(&blocks),
        }
    }

    pub fn central_character(&self) -> Option<RootOfUnity> {
        self.enhancement.zeta_center
    }

    /// Cuspidality relative to the Levi (relevance not included).
    pub fn is_cuspidal(&self) -> bool {
        match self.group {
            GroupDescriptor::GLInner { .. } => {
                let o = self.enhancement.zeta_center.map(|z| z.order()).unwrap_or(1) as usize;
                self.gl_factors.iter().all(|b| b.a == o && b.mult == 1)
            }
            g => {
                let tail = LParameter {
                    group: g,
                    blocks: self.tail.clone(),
                };
                let target = g.dual_block_type().expect("classical");
                if !tail.blocks.iter().all(|b| {
                    b.mult == 1 && b.label.effective_duality() != Duality::None && b.label.effective_duality().of_block(b.a) == target
                }) {
                    return false;
                }
                classical_factors(&tail)
                    .iter()
                    .all(|f| factor_signs(f, &self.enhancement).map(|s| factor_is_cuspidal(f, &s)).unwrap_or(false))
            }
        }
    }

    /// Multiset of (core, ζ, exponent) over all eigenvalues of Frobenius.
    pub fn infinitesimal(&self) -> BTreeMap<(String, RootOfUnity, Rational), usize> {
        let paired = !self.group.is_type_a();
        let mut out = infinitesimal_of(&self.tail);
        for (k, v) in infinitesimal_of(&self.gl_factors) {
            *out.entry(k.clone()).or_default() += v;
            if paired {
                let (core, z, s) = k;
                *out.entry((core, z.inv(), -s)).or_default() += v;
            }
        }
        out
    }
}

fn half(a: usize) -> Rational {
    rat(a as i64, 2)
}

fn infinitesimal_of(blocks: &[Block]) -> BTreeMap<(String, RootOfUnity, Rational), usize> {
    let mut out = BTreeMap::new();
    for b in blocks {
        for i in 0..b.a {
            let s = &b.label.twist.s + half(b.a - 1) - Rational::from_integer(i.into());
            *out.entry((b.label.core.clone(), b.label.twist.zeta, s)).or_default() += b.mult * b.label.dim;
        }
    }
    out
}

/// Infinitesimal data of a parameter: each block π⊠S_a contributes π with
/// exponents s + (a−1)/2, …, s − (a−1)/2, weighted by dim π.
pub fn infinitesimal(phi: &LParameter) -> BTreeMap<(String, RootOfUnity, Rational), usize> {
    infinitesimal_of(&phi.blocks)
}

/// Splits each block π⊠S_a into a/o pieces π⊠S_o with twists
/// (a−o)/2, (a−o)/2 − o, ….
fn split_blocks(blocks: &[Block], o: usize) -> Vec<Block> {
    let mut out = Vec::new();
    for b in blocks {
        for _ in 0..b.mult {
            for j in 0..b.a / o {
                let shift = half(b.a - o) - Rational::from_integer(((j * o) as i64).into());
                out.push(Block::new(b.label.with_twist(b.label.twist.shift(&shift)), o, 1));
            }
        }
    }
    out.sort_by_key(block_key);
    out
}

fn type_a_support(phi: &LParameter, rho: &Enhancement) -> Result<CuspidalDatum> {
    let zeta = central_character(phi, rho)?;
    let o = zeta.order() as usize;
    let gl_factors = split_blocks(&phi.blocks, o);
    let k = zeta.exponent_mod(o as u64).expect("order divides itself");
    Ok(CuspidalDatum {
        group: phi.group,
        gl_factors,
        tail: Vec::new(),
        enhancement: Enhancement {
            signs: BTreeMap::new(),
            cyclic: Some(k),
            zeta_center: Some(zeta),
        },
    })
}

/// Sc(φ, ρ). Classical factors that are not cuspidal are resolved through
/// the built-in Springer tables or the supplied ones.
pub fn cuspidal_support(phi: &LParameter, rho: &Enhancement) -> Result<CuspidalDatum> {
    cuspidal_support_with_tables(phi, rho, &[])
}

pub fn cuspidal_support_with_tables(phi: &LParameter, rho: &Enhancement, tables: &[SpringerTable]) -> Result<CuspidalDatum> {
    let phi = validate(phi)?;
    if phi.group.is_type_a() {
        return type_a_support(&phi, rho);
    }
    let zeta = central_character(&phi, rho)?;
    if let Some(b) = phi.blocks.iter().find(|b| b.label.effective_duality() == Duality::None) {
        return Err(Error::unsupported(format!(
            "cuspidal support with non-self-dual label {} is not implemented for {}",
            b.label.id(),
            phi.group
        )));
    }
    let mut gl_factors = Vec::new();
    let mut tail = Vec::new();
    let mut signs = BTreeMap::new();
    for f in classical_factors(&phi) {
        let fs = factor_signs(&f, rho)?;
        let tail_blocks = |v: &Partition| -> Vec<Block> {
            let mut m: BTreeMap<usize, usize> = BTreeMap::new();
            for &a in v.parts() {
                *m.entry(a).or_default() += 1;
            }
            m.into_iter().map(|(a, mult)| Block::new(f.label.clone(), a, mult)).collect()
        };
        if factor_is_cuspidal(&f, &fs) {
            tail.extend(tail_blocks(&f.lambda));
            for (a, s) in fs {
                signs.insert(f.generator(a), s);
            }
            continue;
        }
        let n = f.lambda.total();
        let builtin = SpringerTable::builtin(f.kind, n);
        let found = tables
            .iter()
            .filter(|t| t.group_type == f.kind && t.n == n)
            .chain(builtin.iter())
            .find_map(|t| t.lookup(&f.lambda, &fs).cloned());
        let spec = match found {
            Some(s) => s,
            None if f.lambda.parts().iter().all(|&a| a == 1) && fs.values().all(|&s| s == 1) => springer::SupportSpec {
                levi: "torus".into(),
                v: Partition::new(if n % 2 == 1 { vec![1] } else { vec![] })?,
                qeps: if n % 2 == 1 && f.kind == GroupType::O { BTreeMap::from([(1, 1)]) } else { BTreeMap::new() },
                gl_twists: vec!["0".into(); n / 2],
            },
            None => {
                return Err(Error::unsupported(format!(
                    "no Springer table resolves the {} factor of {} with λ = {} and signs {:?}",
                    f.kind,
                    f.label.id(),
                    f.lambda,
                    fs
                )))
            }
        };
        for t in &spec.gl_twists {
            let s = parse_rational(t)?;
            gl_factors.push(Block::new(f.label.with_twist(f.label.twist.shift(&s)), 1, 1));
        }
        tail.extend(tail_blocks(&spec.v));
        for (a, s) in &spec.qeps {
            signs.insert(f.generator(*a), *s);
        }
    }
    gl_factors.sort_by_key(block_key);
    Ok(CuspidalDatum {
        group: phi.group,
        gl_factors,
        tail: canonical_blocks(&tail),
        enhancement: Enhancement {
            signs,
            cyclic: None,
            zeta_center: Some(zeta),
        },
    })
}

/// Applies the support map to a datum's own blocks, relative to its Levi.
pub fn support_of_datum(cd: &CuspidalDatum) -> Result<CuspidalDatum> {
    if cd.group.is_type_a() {
        let o = cd.enhancement.zeta_center.map(|z| z.order()).unwrap_or(1) as usize;
        if cd.gl_factors.iter().any(|b| b.a % o != 0) {
            return Err(Error::validation("GL factor size not divisible by the enhancement order"));
        }
        return Ok(CuspidalDatum {
            gl_factors: split_blocks(&cd.gl_factors, o),
            ..cd.clone()
        });
    }
    if cd.is_cuspidal() {
        Ok(cd.clone())
    } else {
        Err(Error::validation("datum is not cuspidal on its Levi"))
    }
}

/// A cuspidal datum up to unramified twist and Levi symmetries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InertialClass {
    pub group: GroupDescriptor,
    /// GL factors with twists cleared, in canonical order.
    pub gl_factors: Vec<Block>,
    pub tail: Vec<Block>,
    pub enhancement: Enhancement,
    /// (core, count, type) for each orbit of equal factors; W_{s∨} is the
    /// product of the corresponding Weyl groups.
    pub symmetry: Vec<(String, usize, String)>,
    pub w_order: u64,
}

impl PartialEq for InertialClass {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.gl_factors == other.gl_factors
            && self.tail == other.tail
            && self.enhancement.signs == other.enhancement.signs
            && self.enhancement.zeta_center == other.enhancement.zeta_center
    }
}

impl Eq for InertialClass {}

impl InertialClass {
    /// W_{s∨} as a product of symmetric and hyperoctahedral groups, when
    /// small enough to tabulate.
    pub fn w_group(&self) -> Result<FiniteGroup> {
        if self.w_order as usize > TABLE_LIMIT {
            return Err(Error::unsupported(format!("W_s of order {} exceeds {TABLE_LIMIT}", self.w_order)));
        }
        let mut g = FiniteGroup::trivial();
        for (_, k, ty) in &self.symmetry {
            let f = if ty == "A" {
                if *k <= 1 { FiniteGroup::trivial() } else { catalog::symmetric(*k) }
            } else {
                catalog::weyl_b(*k)
            };
            g = g.direct_product(&f)?;
        }
        Ok(g)
    }

    /// The factor groups of equal GL factors, as index ranges into
    /// `gl_factors`.
    fn groups(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.gl_factors.len() {
            if i == self.gl_factors.len() || self.gl_factors[i] != self.gl_factors[start] {
                out.push(start..i);
                start = i;
            }
        }
        out
    }
}

pub fn inertial_class(cd: &CuspidalDatum) -> InertialClass {
    let mut gl: Vec<Block> = cd
        .gl_factors
        .iter()
        .map(|b| Block::new(b.label.with_twist(Twist::zero()), b.a, b.mult))
        .collect();
    gl.sort_by_key(block_key);
    let mut symmetry: Vec<(String, usize, String)> = Vec::new();
    let mut w_order = 1u64;
    let mut i = 0;
    while i < gl.len() {
        let j = (i..gl.len()).find(|&j| gl[j] != gl[i]).unwrap_or(gl.len());
        let k = j - i;
        let self_dual = !cd.group.is_type_a() && gl[i].label.duality.sign().is_some();
        let ty = if self_dual { "B" } else { "A" };
        let fact: u64 = (1..=k as u64).product();
        w_order = w_order.saturating_mul(if self_dual { fact << k } else { fact });
        symmetry.push((gl[i].label.core.clone(), k, ty.into()));
        i = j;
    }
    InertialClass {
        group: cd.group,
        gl_factors: gl,
        tail: cd.tail.clone(),
        enhancement: cd.enhancement.clone(),
        symmetry,
        w_order,
    }
}

pub fn bernstein_component(phi: &LParameter, rho: &Enhancement) -> Result<InertialClass> {
    Ok(inertial_class(&cuspidal_support(phi, rho)?))
}

/// One point of the extended quotient with its fiber.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtendedQuotientPoint {
    /// Twist per GL factor, in the class's factor order.
    pub twists: Vec<Twist>,
    pub isotropy_order: usize,
    pub cocycle_trivial: bool,
    pub fiber: usize,
    /// Enhanced parameters matched to the fiber, when they are computed.
    pub parameters: Vec<EnhancedParameter>,
    pub bounded: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtendedQuotientReport {
    pub w_order: usize,
    pub w_abelian: bool,
    pub points: Vec<ExtendedQuotientPoint>,
}

impl ExtendedQuotientReport {
    pub fn total(&self) -> usize {
        self.points.iter().map(|p| p.fiber).sum()
    }
}

fn symmetric_product(sizes: &[usize]) -> Result<FiniteGroup> {
    let mut g = FiniteGroup::trivial();
    for &k in sizes {
        if k > 1 {
            g = g.direct_product(&catalog::symmetric(k))?;
        }
    }
    Ok(g)
}

/// Parameters whose W_F-restriction is the point `twists`: for each run of
/// equal (factor, twist) of length m, a partition μ of m gives blocks
/// π ⊠ S_{o·μ_i}.
fn fiber_parameters(class: &InertialClass, twists: &[Twist]) -> Result<Vec<EnhancedParameter>> {
    let o = class.enhancement.zeta_center.map(|z| z.order()).unwrap_or(1) as usize;
    let mut runs: Vec<(WeilLabel, usize)> = Vec::new();
    let mut keyed: Vec<(WeilLabel, usize)> = class
        .gl_factors
        .iter()
        .zip(twists)
        .map(|(b, t)| (b.label.with_twist(t.clone()), b.a))
        .collect();
    keyed.sort();
    for (label, a) in keyed {
        debug_assert_eq!(a, o);
        match runs.last_mut() {
            Some((l, m)) if *l == label => *m += 1,
            _ => runs.push((label, 1)),
        }
    }
    let mut out: Vec<Vec<Block>> = vec![Vec::new()];
    for (label, m) in &runs {
        let mut next = Vec::new();
        for prefix in &out {
            for mu in Partition::all(*m) {
                let mut blocks = prefix.clone();
                for &p in mu.parts() {
                    blocks.push(Block::new(label.clone(), o * p, 1));
                }
                next.push(blocks);
            }
        }
        out = next;
    }
    let zeta = class.enhancement.zeta_center.unwrap_or_else(RootOfUnity::one);
    out.into_iter()
        .map(|blocks| {
            let phi = validate(&LParameter {
                group: class.group,
                blocks,
            })?;
            let g = gl_component_order(&phi);
            let k = zeta
                .exponent_mod(g)
                .ok_or_else(|| Error::validation("enhancement order does not divide |S_φ|"))?;
            let rho = normalize_enhancement(&phi, &Enhancement::cyclic(k))?;
            Ok(EnhancedParameter {
                group: phi.group,
                blocks: phi.blocks,
                enhancement: rho,
            })
        })
        .collect()
}

/// The extended quotient attached to a Bernstein component at the given
/// points (twists of the GL factors; the untwisted point when empty).
///
/// W_{s∨} permutes equal factors. Isotropy cocycles are trivial for inner
/// forms of GL; when a section datum is supplied, W_{s∨} is its quotient
/// group acting trivially and the cocycle is ♮_E.
pub fn component_extended_quotient(
    class: &InertialClass,
    points: &[Vec<Twist>],
    extension: Option<&SectionDatum>,
) -> Result<ExtendedQuotientReport> {
    if let Some(sd) = extension {
        let w = sd.quotient();
        let kappa = cocycle_from_section(sd)?;
        let fiber = twisted_traces(w, &kappa)?.len();
        return Ok(ExtendedQuotientReport {
            w_order: w.order(),
            w_abelian: w.is_abelian(),
            points: vec![ExtendedQuotientPoint {
                twists: vec![Twist::zero(); class.gl_factors.len()],
                isotropy_order: w.order(),
                cocycle_trivial: is_coboundary(w, &kappa),
                fiber,
                parameters: Vec::new(),
                bounded: true,
            }],
        });
    }
    if !class.group.is_type_a() {
        return Err(Error::unsupported("extended quotients without section data are implemented for inner forms of GL"));
    }
    let w = class.w_group()?;
    let default = vec![vec![Twist::zero(); class.gl_factors.len()]];
    let points = if points.is_empty() { &default[..] } else { points };
    let mut seen: Vec<Vec<Twist>> = Vec::new();
    let mut out = Vec::new();
    for p in points {
        if p.len() != class.gl_factors.len() {
            return Err(Error::validation(format!("point has {} twists for {} factors", p.len(), class.gl_factors.len())));
        }
        // Orbit representative: twists sorted within each run of equal factors.
        let mut rep = p.clone();
        let mut sizes = Vec::new();
        for r in class.groups() {
            rep[r.clone()].sort();
            let mut i = r.start;
            while i < r.end {
                let j = (i..r.end).find(|&j| rep[j] != rep[i]).unwrap_or(r.end);
                sizes.push(j - i);
                i = j;
            }
        }
        if seen.contains(&rep) {
            continue;
        }
        seen.push(rep.clone());
        let iso = symmetric_product(&sizes)?;
        let kappa = TwoCocycle::trivial(iso.order());
        let fiber = twisted_traces(&iso, &kappa)?.len();
        let parameters = fiber_parameters(class, &rep)?;
        out.push(ExtendedQuotientPoint {
            bounded: rep.iter().all(|t| t.s.is_zero()),
            twists: rep,
            isotropy_order: iso.order(),
            cocycle_trivial: true,
            fiber,
            parameters,
        });
    }
    Ok(ExtendedQuotientReport {
        w_order: w.order(),
        w_abelian: w.is_abelian(),
        points: out,
    })
}

/// The class behind the inner form of SL_10 with a quaternion W_{s∨}: one
/// GL factor π⊠S_2 with dim π = 5 in GLinner(10, 2).
pub fn example_b_class() -> InertialClass {
    let label = WeilLabel::new("pi", 5, Duality::None);
    let phi = LParameter {
        group: GroupDescriptor::GLInner { n: 10, d: 2 },
        blocks: vec![Block::new(label, 2, 1)],
    };
    bernstein_component(&phi, &Enhancement::cyclic(1)).expect("valid parameter")
}

/// (L, φ_t, z, ρ_t) with φ_t bounded and z strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardTriple {
    pub group: GroupDescriptor,
    /// Blocks of φ_t on each GL factor of L.
    pub levi: Vec<Vec<Block>>,
    pub z: Vec<String>,
    pub enhancement: Enhancement,
}

impl StandardTriple {
    pub fn twists(&self) -> Result<Vec<Rational>> {
        self.z.iter().map(|s| parse_rational(s)).collect()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.twists().map(|z| z.windows(2).all(|w| w[0] > w[1])).unwrap_or(false)
    }

    pub fn phi_t(&self) -> LParameter {
        LParameter {
            group: self.group,
            blocks: canonical_blocks(&self.levi.concat()),
        }
    }
}

pub fn standard_triple(phi: &LParameter, rho: &Enhancement) -> Result<StandardTriple> {
    let phi = validate(phi)?;
    if !phi.group.is_type_a() && !is_bounded(&phi) {
        return Err(Error::unsupported(format!("standard triples for unbounded parameters of {}", phi.group)));
    }
    let rho = normalize_enhancement(&phi, rho)?;
    let mut by_s: BTreeMap<std::cmp::Reverse<Rational>, Vec<Block>> = BTreeMap::new();
    for b in &phi.blocks {
        let t = Twist {
            s: Rational::zero(),
            zeta: b.label.twist.zeta,
        };
        by_s.entry(std::cmp::Reverse(b.label.twist.s.clone()))
            .or_default()
            .push(Block::new(b.label.with_twist(t), b.a, b.mult));
    }
    let (z, levi): (Vec<String>, Vec<Vec<Block>>) = by_s.into_iter().map(|(s, bl)| (s.0.to_string(), canonical_blocks(&bl))).unzip();
    Ok(StandardTriple {
        group: phi.group,
        levi,
        z,
        enhancement: rho,
    })
}

pub fn assemble(st: &StandardTriple) -> Result<(LParameter, Enhancement)> {
    let z = st.twists()?;
    if z.len() != st.levi.len() {
        return Err(Error::validation("one twist per Levi factor is required"));
    }
    let blocks: Vec<Block> = st
        .levi
        .iter()
        .zip(&z)
        .flat_map(|(bl, s)| bl.iter().map(move |b| Block::new(b.label.with_twist(b.label.twist.shift(s)), b.a, b.mult)))
        .collect();
    let phi = validate(&LParameter {
        group: st.group,
        blocks,
    })?;
    Ok((phi, st.enhancement.clone()))
}

/// Sc computed on the standard-triple side: the support of φ_t factor by
/// factor of L, then twisted by z.
pub fn support_through_triple(st: &StandardTriple) -> Result<CuspidalDatum> {
    if !st.group.is_type_a() {
        return Err(Error::unsupported("support through standard triples is implemented for inner forms of GL"));
    }
    let zeta = st
        .enhancement
        .zeta_center
        .ok_or_else(|| Error::validation("standard triple enhancement lacks its central character"))?;
    let o = zeta.order() as usize;
    let z = st.twists()?;
    let mut gl = Vec::new();
    for (bl, s) in st.levi.iter().zip(&z) {
        for b in split_blocks(bl, o) {
            gl.push(Block::new(b.label.with_twist(b.label.twist.shift(s)), b.a, b.mult));
        }
    }
    gl.sort_by_key(block_key);
    Ok(CuspidalDatum {
        group: st.group,
        gl_factors: gl,
        tail: Vec::new(),
        enhancement: Enhancement {
            signs: BTreeMap::new(),
            cyclic: Some(zeta.exponent_mod(o as u64).expect("order")),
            zeta_center: Some(zeta),
        },
    })
}

/// Classification summary used by the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub group: GroupDescriptor,
    pub discrete: bool,
    pub bounded: bool,
    pub cuspidal: bool,
    pub relevant: bool,
    pub s_group_order: usize,
    pub zeta_center: RootOfUnity,
}

pub fn classify(ep: &EnhancedParameter) -> Result<Classification> {
    let phi = validate(&ep.parameter())?;
    let zeta = central_character(&phi, &ep.enhancement)?;
    Ok(Classification {
        group: phi.group,
        discrete: is_discrete(&phi),
        bounded: is_bounded(&phi),
        cuspidal: is_cuspidal(&phi, &ep.enhancement)?,
        relevant: is_relevant_for_inner_form(&phi, &ep.enhancement)?,
        s_group_order: s_group(&phi)?.s_group().order(),
        zeta_center: zeta,
    })
}

/// All sign assignments on the generators of S_φ.
pub fn all_sign_enhancements(phi: &LParameter) -> Result<Vec<Enhancement>> {
    let tower = s_group(phi)?;
    if tower.cyclic_order.is_some() {
        let g = tower.cyclic_order.unwrap();
        return Ok((0..g).map(Enhancement::cyclic).collect());
    }
    let names: Vec<&String> = tower.generators.iter().map(|(n, _)| n).collect();
    Ok((0..1usize << names.len())
        .map(|mask| {
            Enhancement::signs(
                names
                    .iter()
                    .enumerate()
                    .map(|(i, n)| ((*n).clone(), if mask >> i & 1 == 1 { -1 } else { 1 })),
            )
        })
        .collect())
}

/// The largest |s| among the labels.
pub fn max_exponent(phi: &LParameter) -> Rational {
    phi.blocks
        .iter()
        .map(|b| b.label.twist.s.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(core: &str, dim: usize, d: Duality) -> WeilLabel {
        WeilLabel::new(core, dim, d)
    }

    fn gl(n: usize, d: usize, blocks: Vec<Block>) -> LParameter {
        LParameter {
            group: GroupDescriptor::GLInner { n, d },
            blocks,
        }
    }

    fn u4_staircase() -> LParameter {
        let pi = lab("pi", 1, Duality::ConjOrth);
        LParameter {
            group: GroupDescriptor::U { n: 4 },
            blocks: vec![Block::new(pi.clone(), 1, 1), Block::new(pi, 3, 1)],
        }
    }

    #[test]
    fn validation_examples() {
        assert!(validate(&u4_staircase()).is_ok());
        let p = gl(10, 2, vec![Block::new(lab("pi", 5, Duality::None), 2, 1)]);
        assert!(validate(&p).is_ok());
        let sp4 = LParameter {
            group: GroupDescriptor::Sp { n: 2 },
            blocks: vec![Block::new(lab("chi", 1, Duality::Orth), 3, 1), Block::new(lab("eta", 1, Duality::Orth), 1, 1)],
        };
        assert!(validate(&sp4).unwrap_err().to_string().contains("total dimension 4"));
        let bad = LParameter {
            group: GroupDescriptor::Sp { n: 1 },
            blocks: vec![Block::new(lab("chi", 1, Duality::Orth), 2, 1), Block::new(lab("eta", 1, Duality::Orth), 1, 1)],
        };
        assert!(validate(&bad).unwrap_err().to_string().contains("block 0"));
    }

    #[test]
    fn s_groups() {
        let p = gl(10, 2, vec![Block::new(lab("pi", 5, Duality::None), 2, 1)]);
        assert_eq!(s_group(&p).unwrap().s_group().order(), 2);
        let t = s_group(&u4_staircase()).unwrap();
        assert_eq!(t.s_group().order(), 4);
        let names: Vec<&str> = t.generators().iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["z:pi:1", "z:pi:3"]);
        let glt = LParameter {
            group: GroupDescriptor::U { n: 2 },
            blocks: vec![Block::new(lab("a", 1, Duality::None), 1, 1), Block::new(lab("b", 1, Duality::None), 1, 1)],
        };
        assert_eq!(s_group(&glt).unwrap().s_group().order(), 1);
    }

    #[test]
    fn discreteness_and_cuspidality() {
        let p = gl(10, 2, vec![Block::new(lab("pi", 5, Duality::None), 2, 1)]);
        assert!(is_discrete(&p));
        assert!(is_cuspidal(&p, &Enhancement::cyclic(1)).unwrap());
        assert!(!is_cuspidal(&p, &Enhancement::cyclic(0)).unwrap());
        let u = u4_staircase();
        assert!(is_discrete(&u));
        let sig = |a: i8, b: i8| Enhancement::signs([("z:pi:1".to_string(), a), ("z:pi:3".to_string(), b)]);
        assert!(is_cuspidal(&u, &sig(-1, 1)).unwrap());
        assert!(is_cuspidal(&u, &sig(1, -1)).unwrap());
        assert!(!is_cuspidal(&u, &sig(1, 1)).unwrap());
        assert!(!is_cuspidal(&u, &sig(-1, -1)).unwrap());
        let irr = gl(3, 1, vec![Block::new(lab("pi", 3, Duality::None), 1, 1)]);
        assert!(is_cuspidal(&irr, &Enhancement::trivial()).unwrap());
        let twice = gl(2, 1, vec![Block::new(lab("chi", 1, Duality::None), 1, 2)]);
        assert!(!is_discrete(&twice));
    }

    #[test]
    fn relevance_for_gl1_of_quaternions() {
        let p = gl(2, 2, vec![Block::new(lab("chi", 1, Duality::None), 2, 1)]);
        assert!(is_relevant(&p, &Enhancement::cyclic(1), &RootOfUnity::new(2, 1)).unwrap());
        assert!(!is_relevant(&p, &Enhancement::cyclic(0), &RootOfUnity::new(2, 1)).unwrap());
        assert!(is_relevant(&p, &Enhancement::cyclic(0), &RootOfUnity::one()).unwrap());
    }

    #[test]
    fn steinberg_support() {
        let p = gl(2, 1, vec![Block::new(lab("triv", 1, Duality::None), 2, 1)]);
        let cd = cuspidal_support(&p, &Enhancement::trivial()).unwrap();
        let s: Vec<String> = cd.gl_factors.iter().map(|b| b.label.twist.s.to_string()).collect();
        assert_eq!(s, vec!["-1/2", "1/2"]);
        assert!(cd.is_cuspidal());
        assert!(!is_bounded(&cd.as_parameter()));
        assert_eq!(cd.infinitesimal(), infinitesimal(&p));
        assert_eq!(support_of_datum(&cd).unwrap(), cd);
    }

    #[test]
    fn classical_support() {
        let chi = lab("chi", 1, Duality::Orth);
        let p = LParameter {
            group: GroupDescriptor::SOOdd { n: 1 },
            blocks: vec![Block::new(chi, 2, 1)],
        };
        let cusp = Enhancement::signs([("z:chi:2".to_string(), -1)]);
        assert!(is_cuspidal(&p, &cusp).unwrap());
        let cd = cuspidal_support(&p, &cusp).unwrap();
        assert!(cd.gl_factors.is_empty() && cd.is_cuspidal());
        let st = Enhancement::signs([("z:chi:2".to_string(), 1)]);
        let cd = cuspidal_support(&p, &st).unwrap();
        assert_eq!(cd.gl_factors.len(), 1);
        assert_eq!(cd.infinitesimal(), infinitesimal(&validate(&p).unwrap()));
        let big = LParameter {
            group: GroupDescriptor::SOOdd { n: 2 },
            blocks: vec![Block::new(lab("chi", 1, Duality::Orth), 4, 1)],
        };
        let e = cuspidal_support(&big, &Enhancement::signs([("z:chi:4".to_string(), 1)]));
        assert!(matches!(e, Err(Error::NotSupported(_))));
    }

    #[test]
    fn gl4_component() {
        let chi = lab("chi", 1, Duality::None);
        let p = gl(4, 1, vec![Block::new(chi.clone(), 1, 4)]);
        let class = bernstein_component(&p, &Enhancement::trivial()).unwrap();
        assert_eq!(class.w_order, 24);
        let twisted = gl(4, 1, vec![Block::new(chi.twisted(&Twist::real(rat(1, 3))), 1, 4)]);
        assert_eq!(bernstein_component(&twisted, &Enhancement::trivial()).unwrap(), class);
        let r = component_extended_quotient(&class, &[], None).unwrap();
        assert_eq!(r.total(), 5);
        assert_eq!(r.points[0].parameters.len(), 5);
        for ep in &r.points[0].parameters {
            let c = bernstein_component(&ep.parameter(), &ep.enhancement).unwrap();
            assert_eq!(c, class);
            assert!(is_bounded(&ep.parameter()));
        }
    }

    #[test]
    fn distinct_cores_give_product_symmetry() {
        let a = lab("a", 1, Duality::None);
        let b = lab("b", 1, Duality::None);
        let p = gl(5, 1, vec![Block::new(a, 1, 2), Block::new(b, 1, 3)]);
        let class = bernstein_component(&p, &Enhancement::trivial()).unwrap();
        assert_eq!(class.w_order, 12);
        assert_eq!(class.w_group().unwrap().order(), 12);
    }

    #[test]
    fn example_b_fiber() {
        let class = example_b_class();
        let sd = springer::example_a_section().unwrap();
        let r = component_extended_quotient(&class, &[], Some(&sd)).unwrap();
        assert_eq!((r.w_order, r.w_abelian), (4, true));
        assert!(!r.points[0].cocycle_trivial);
        assert_eq!(r.total(), 1);
    }

    #[test]
    fn standard_triples() {
        let t = lab("triv", 1, Duality::None);
        let p = gl(
            2,
            1,
            vec![
                Block::new(t.twisted(&Twist::real(rat(1, 2))), 1, 1),
                Block::new(t.twisted(&Twist::real(rat(-1, 2))), 1, 1),
            ],
        );
        let st = standard_triple(&p, &Enhancement::trivial()).unwrap();
        assert_eq!(st.z, vec!["1/2", "-1/2"]);
        assert!(st.is_strictly_positive());
        assert!(is_bounded(&st.phi_t()));
        let (back, _) = assemble(&st).unwrap();
        assert_eq!(back, validate(&p).unwrap());
        let sc = cuspidal_support(&p, &Enhancement::trivial()).unwrap();
        assert_eq!(support_through_triple(&st).unwrap(), sc);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"group": {"type": "Sp", "n": 1}, "blocks": [{"core": "pi1", "dim": 1, "duality": "orth", "twist": {"s": "0", "zeta": [1,0]}, "a": 3, "mult": 1}], "enhancement": {"signs": {"z:pi1:3": -1}}}"#;
        let ep = EnhancedParameter::from_json(text).unwrap();
        let c = classify(&ep).unwrap();
        assert!(c.discrete && !c.cuspidal);
        let again = EnhancedParameter::from_json(&serde_json::to_string(&ep).unwrap()).unwrap();
        assert_eq!(again.blocks, ep.blocks);
    }
}
