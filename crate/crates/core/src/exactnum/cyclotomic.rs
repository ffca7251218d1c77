//! Exact elements of cyclotomic fields.
//!
//! An element of Q(ζ_n) is stored as a rational combination of the
//! Zumbroich basis of Q(ζ_n) at its minimal conductor n. Both choices are
//! canonical, so structural equality is field equality.
//!
//! Writing n = ∏ q over prime powers q = p^ν, the root ζ_n^k factors as
//! ∏ ζ_q^{e_q} with e_q = k·(n/q)^{-1} mod q. The exponent k is a basis
//! exponent iff every e_q is: for odd p, e_q ∉ [0, p^{ν-1}); for p = 2,
//! e_q < 2^{ν-1}.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::arith::{factorize, gcd, lcm, mod_inv};
use super::Rational;
use crate::error::{Error, Result};

/// Per-conductor tables: prime-power data and the basis expansion of every
/// power ζ_n^k as a signed sum of basis exponents.
struct Context {
    n: u64,
    /// (p, ν, q = p^ν, (n/q)^{-1} mod q)
    primes: Vec<(u64, u32, u64, u64)>,
    expand: Vec<Vec<(u32, bool)>>,
    basis: Vec<u32>,
    position: HashMap<u32, usize>,
}

thread_local! {
    static CONTEXTS: RefCell<HashMap<u64, Rc<Context>>> = RefCell::new(HashMap::new());
}

fn context(n: u64) -> Rc<Context> {
    CONTEXTS.with(|c| {
        if let Some(ctx) = c.borrow().get(&n) {
            return ctx.clone();
        }
        let ctx = Rc::new(Context::build(n));
        c.borrow_mut().insert(n, ctx.clone());
        ctx
    })
}

impl Context {
    fn build(n: u64) -> Context {
        debug_assert!(n % 4 != 2, "conductor {n} is 2 mod 4");
        let primes: Vec<(u64, u32, u64, u64)> = factorize(n)
            .into_iter()
            .map(|(p, nu)| {
                let q = p.pow(nu);
                let inv = mod_inv((n / q) % q, q).expect("coprime cofactor");
                (p, nu, q, inv)
            })
            .collect();
        let mut expand: Vec<Vec<(u32, bool)>> = Vec::with_capacity(n as usize);
        for k in 0..n {
            // Options per prime power: list of (contribution to exponent mod n, sign flip).
            let mut acc: Vec<(u64, bool)> = vec![(0, false)];
            for &(p, nu, q, inv) in &primes {
                let e = k % q * inv % q;
                let cof = n / q;
                let lower = q / p;
                let choices: Vec<(u64, bool)> = if p == 2 {
                    let half = q / 2;
                    if e < half {
                        vec![(e, false)]
                    } else {
                        vec![(e - half, true)]
                    }
                } else if e >= lower {
                    vec![(e, false)]
                } else {
                    (1..p).map(|i| (e + lower * i, true)).collect()
                };
                let _ = nu;
                let mut next = Vec::with_capacity(acc.len() * choices.len());
                for &(a, s) in &acc {
                    for &(c, t) in &choices {
                        next.push(((a + c * cof) % n, s ^ t));
                    }
                }
                acc = next;
            }
            expand.push(acc.into_iter().map(|(e, s)| (e as u32, s)).collect());
        }
        let basis: Vec<u32> = (0..n as u32)
            .filter(|&k| expand[k as usize].len() == 1 && expand[k as usize][0] == (k, false))
            .collect();
        let position = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        Context {
            n,
            primes,
            expand,
            basis,
            position,
        }
    }
}

/// Element of a cyclotomic field in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    terms: Vec<(u64, Rational)>,
}

/// Reduce ζ_n^k to a root ±ζ_m^j with m the exact conductor (m ≢ 2 mod 4).
fn normalize_root(n: u64, k: i64) -> (u64, u64, bool) {
    assert!(n > 0, "root of unity of order zero");
    let k = k.rem_euclid(n as i64) as u64;
    let g = gcd(n, k);
    let (n, k) = if k == 0 { (1, 0) } else { (n / g, k / g) };
    if n % 4 == 2 {
        // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m.
        let m = n / 2;
        let j = k * ((m + 1) / 2) % m;
        (m, j, k % 2 == 1)
    } else {
        (n, k, false)
    }
}

fn accumulate(dense: &mut [Rational], ctx: &Context, k: u64, c: &Rational) {
    for &(e, neg) in &ctx.expand[(k % ctx.n) as usize] {
        let slot = &mut dense[e as usize];
        if neg {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
}

impl Cyclotomic {
    pub fn zero_value() -> Self {
        Cyclotomic {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero_value();
        }
        Cyclotomic {
            conductor: 1,
            terms: vec![(0, q)],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let (m, j, neg) = normalize_root(n, k);
        let ctx = context(m);
        let sign = if neg { -Rational::one() } else { Rational::one() };
        let terms = ctx.expand[j as usize]
            .iter()
            .map(|&(e, s)| (e as u64, if s { -sign.clone() } else { sign.clone() }))
            .collect::<Vec<_>>();
        let mut out = Cyclotomic { conductor: m, terms };
        out.terms.sort_by_key(|t| t.0);
        out
    }

    /// Primitive n-th root ζ_n = exp(2πi/n).
    pub fn zeta(n: u64) -> Self {
        Self::root_of_unity(n, 1)
    }

    pub fn i() -> Self {
        Self::zeta(4)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Basis exponents and coefficients at the minimal conductor.
    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match (self.conductor, self.terms.as_slice()) {
            (1, []) => Some(Rational::zero()),
            (1, [(0, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    /// Build from a dense coefficient vector on Q(ζ_n) (indexed by basis
    /// exponent) and descend to the minimal conductor.
    fn from_dense(n: u64, dense: Vec<Rational>) -> Self {
        let terms: Vec<(u64, Rational)> = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64, c))
            .collect();
        Self::descend(n, terms)
    }

    fn descend(mut n: u64, mut terms: Vec<(u64, Rational)>) -> Self {
        loop {
            if terms.is_empty() {
                return Self::zero_value();
            }
            if n == 1 {
                return Cyclotomic { conductor: 1, terms };
            }
            let ctx = context(n);
            let mut moved = false;
            for &(p, nu, q, inv) in &ctx.primes {
                if let Some((m, t)) = try_descend(n, p, nu, q, inv, &terms) {
                    n = m;
                    terms = t;
                    moved = true;
                    break;
                }
            }
            if !moved {
                terms.sort_by_key(|t| t.0);
                return Cyclotomic { conductor: n, terms };
            }
        }
    }

    /// Expand into the basis of Q(ζ_n); `n` must be a multiple of the conductor.
    fn lift_into(&self, n: u64, dense: &mut [Rational], ctx: &Context) {
        let f = n / self.conductor;
        for (k, c) in &self.terms {
            accumulate(dense, ctx, k * f, c);
        }
    }

    fn lifted_terms(&self, n: u64, ctx: &Context) -> Vec<(u64, Rational)> {
        if n == self.conductor {
            return self.terms.clone();
        }
        let mut dense = vec![Rational::zero(); n as usize];
        self.lift_into(n, &mut dense, ctx);
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64, c))
            .collect()
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_value();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let n = lcm(self.conductor, other.conductor);
        let ctx = context(n);
        let mut dense = vec![Rational::zero(); n as usize];
        self.lift_into(n, &mut dense, &ctx);
        let f = n / other.conductor;
        for (k, c) in &other.terms {
            if negate {
                accumulate(&mut dense, &ctx, k * f, &-c);
            } else {
                accumulate(&mut dense, &ctx, k * f, c);
            }
        }
        Self::from_dense(n, dense)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if let Some(q) = self.to_rational() {
            return other.scale(&q);
        }
        if let Some(q) = other.to_rational() {
            return self.scale(&q);
        }
        let n = lcm(self.conductor, other.conductor);
        let ctx = context(n);
        let a = self.lifted_terms(n, &ctx);
        let b = other.lifted_terms(n, &ctx);
        let mut dense = vec![Rational::zero(); n as usize];
        for (i, x) in &a {
            for (j, y) in &b {
                accumulate(&mut dense, &ctx, (i + j) % n, &(x * y));
            }
        }
        Self::from_dense(n, dense)
    }

    /// The Galois automorphism ζ ↦ ζ^j; `j` must be coprime to the conductor.
    pub fn galois(&self, j: i64) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let j = j.rem_euclid(n as i64) as u64;
        assert_eq!(gcd(j, n), 1, "Galois exponent {j} not a unit mod {n}");
        let ctx = context(n);
        let mut dense = vec![Rational::zero(); n as usize];
        for (k, c) in &self.terms {
            accumulate(&mut dense, &ctx, k * j % n, c);
        }
        Self::from_dense(n, dense)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse, by solving a·x = 1 over the rational basis.
    pub fn inv(&self) -> Result<Self> {
        if self.terms.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let n = self.conductor;
        if let [(k, c)] = self.terms.as_slice() {
            let r = Self::root_of_unity(n, -(*k as i64));
            return Ok(r.scale(&c.recip()));
        }
        let ctx = context(n);
        let d = ctx.basis.len();
        // Column j holds the coordinates of a·ζ^{basis[j]}.
        let mut m = vec![vec![Rational::zero(); d + 1]; d];
        for (j, &b) in ctx.basis.iter().enumerate() {
            let mut dense = vec![Rational::zero(); n as usize];
            for (k, c) in &self.terms {
                accumulate(&mut dense, &ctx, (k + b as u64) % n, c);
            }
            for (e, c) in dense.into_iter().enumerate() {
                if !c.is_zero() {
                    m[ctx.position[&(e as u32)]][j] = c;
                }
            }
        }
        for &(e, neg) in &ctx.expand[0] {
            m[ctx.position[&e]][d] = if neg { -Rational::one() } else { Rational::one() };
        }
        let x = solve_augmented(m).ok_or(Error::DivisionByZero)?;
        let mut dense = vec![Rational::zero(); n as usize];
        for (j, v) in x.into_iter().enumerate() {
            dense[ctx.basis[j] as usize] = v;
        }
        Ok(Self::from_dense(n, dense))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Returns (m, k) with self = ζ_m^k, m the exact multiplicative order.
    pub fn as_root_of_unity(&self) -> Option<super::RootOfUnity> {
        if self.terms.is_empty() || self.terms.iter().any(|(_, c)| c.abs() != Rational::one()) {
            return None;
        }
        let n = self.conductor;
        let orders: &[u64] = if n % 2 == 1 { &[n, 2 * n] } else { &[n] };
        for &o in orders {
            for k in 0..o {
                if gcd(o, k) == 1 || (o == 1 && k == 0) {
                    let cand = Self::root_of_unity(o, k as i64);
                    if &cand == self {
                        return Some(super::RootOfUnity::new(o, k as i64));
                    }
                }
            }
        }
        None
    }

    /// Square root of a rational number, realized via quadratic Gauss sums.
    pub fn sqrt_rational(q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero_value();
        }
        let neg = q.is_negative();
        let q = q.abs();
        // sqrt(a/b) = sqrt(a·b)/b
        let prod = q.numer() * q.denom();
        let den = Rational::from_integer(q.denom().clone());
        let mut square = BigInt::one();
        let mut free: Vec<u64> = Vec::new();
        let mut rest = prod;
        let mut p = BigInt::from(2u32);
        loop {
            if &p * &p > rest {
                break;
            }
            let mut count = 0;
            while (&rest % &p).is_zero() {
                rest /= &p;
                count += 1;
            }
            for _ in 0..count / 2 {
                square *= &p;
            }
            if count % 2 == 1 {
                free.push(u64::try_from(&p).expect("prime factor fits u64"));
            }
            p += 1;
        }
        if rest > BigInt::one() {
            free.push(u64::try_from(&rest).expect("squarefree factor fits u64 for supported inputs"));
        }
        let mut root = Self::from_rational(Rational::from_integer(square) / den);
        for p in free {
            root = &root * &sqrt_prime(p);
        }
        if neg {
            root = &root * &Self::i();
        }
        root
    }

    /// Plain-text form `c0 + c1*z(e)^k + ...`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                if *k == 0 {
                    format!("{c}")
                } else {
                    format!("{c}*z({})^{k}", self.conductor)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Sum of c·ζ_e^k over arbitrary (not necessarily canonical) monomials.
    pub fn from_monomials(items: &[(u64, i64, Rational)]) -> Self {
        let mut acc = Self::zero_value();
        for (e, k, c) in items {
            acc = &acc + &Self::root_of_unity(*e, *k).scale(c);
        }
        acc
    }

    /// JSON-friendly parts: conductor and (exponent, "p/q") list.
    pub fn to_parts(&self) -> (u64, Vec<(u64, String)>) {
        (
            self.conductor,
            self.terms.iter().map(|(k, c)| (*k, c.to_string())).collect(),
        )
    }

    pub fn from_parts(e: u64, coeffs: &[(u64, String)]) -> Result<Self> {
        if e == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        let mut items = Vec::with_capacity(coeffs.len());
        for (k, s) in coeffs {
            items.push((e, *k as i64, parse_rational(s)?));
        }
        Ok(Self::from_monomials(&items))
    }

    /// Total order used for sorting characters: conductor first, then
    /// exponents ascending with larger coefficients first.
    fn order_key_cmp(&self, other: &Self) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| {
            for (a, b) in self.terms.iter().zip(other.terms.iter()) {
                let o = a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.terms.len().cmp(&other.terms.len())
        })
    }
}

fn try_descend(
    n: u64,
    p: u64,
    nu: u32,
    q: u64,
    inv: u64,
    terms: &[(u64, Rational)],
) -> Option<(u64, Vec<(u64, Rational)>)> {
    if p == 2 && nu == 2 {
        if terms.iter().all(|(k, _)| k % 4 == 0) {
            return Some((n / 4, terms.iter().map(|(k, c)| (k / 4, c.clone())).collect()));
        }
        return None;
    }
    if nu >= 2 {
        if terms.iter().all(|(k, _)| k % p == 0) {
            return Some((n / p, terms.iter().map(|(k, c)| (k / p, c.clone())).collect()));
        }
        return None;
    }
    // p exactly divides n, p odd: coefficients must be constant along each
    // full ζ_p-orbit {e_p = 1..p-1} with fixed remaining components.
    let m = n / p;
    let _ = (q, inv);
    let mut groups: HashMap<u64, (usize, &Rational)> = HashMap::new();
    for (k, c) in terms {
        let r = k % m;
        match groups.get_mut(&r) {
            Some((count, c0)) => {
                if *c0 != c {
                    return None;
                }
                *count += 1;
            }
            None => {
                groups.insert(r, (1, c));
            }
        }
    }
    if groups.values().any(|(count, _)| *count as u64 != p - 1) {
        return None;
    }
    let pinv = mod_inv(p % m.max(1), m.max(1)).unwrap_or(0);
    let mut out: Vec<(u64, Rational)> = groups
        .into_iter()
        .map(|(r, (_, c))| (if m == 1 { 0 } else { r * pinv % m }, -c.clone()))
        .collect();
    out.sort_by_key(|t| t.0);
    Some((m, out))
}

/// sqrt(p) for a prime p.
fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return &Cyclotomic::zeta(8) + &Cyclotomic::root_of_unity(8, -1);
    }
    // Gauss sum g = Σ (a/p) ζ_p^a, g² = (-1)^{(p-1)/2} p.
    let mut items = Vec::new();
    for a in 1..p {
        let leg = super::arith::mod_pow(a, (p - 1) / 2, p);
        let c = if leg == 1 { 1 } else { -1 };
        items.push((p, a as i64, Rational::from_integer(BigInt::from(c))));
    }
    let g = Cyclotomic::from_monomials(&items);
    if p % 4 == 1 {
        g
    } else {
        &g * &-Cyclotomic::i()
    }
}

fn solve_augmented(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let d = m.len();
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
        let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(a, b))
    } else {
        Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::zero_value()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key_cmp(other)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else {
        a.add_impl(b, false)
    }
});
binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| {
    if b.is_zero() {
        a.clone()
    } else {
        a.add_impl(b, true)
    }
});
binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.mul_impl(b));

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic".into()));
        }
        let mut items = Vec::new();
        for piece in s.split(" + ") {
            let piece = piece.trim();
            match piece.split_once("*z(") {
                None => items.push((1, 0, parse_rational(piece)?)),
                Some((coef, rest)) => {
                    let bad = || Error::Parse(format!("invalid monomial {piece:?}"));
                    let (e, k) = rest.split_once(")^").ok_or_else(bad)?;
                    let e: u64 = e.trim().parse().map_err(|_| bad())?;
                    let k: i64 = k.trim().parse().map_err(|_| bad())?;
                    if e == 0 {
                        return Err(bad());
                    }
                    items.push((e, k, parse_rational(coef)?));
                }
            }
        }
        Ok(Self::from_monomials(&items))
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (e, coeffs) = self.to_parts();
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("e", &e)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            e: u64,
            coeffs: Vec<(u64, String)>,
        }
        let raw = Raw::deserialize(d)?;
        Cyclotomic::from_parts(raw.e, &raw.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn basic_identities() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
        let s = &(&Cyclotomic::one() + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
        assert!((&z(8, 1) * &z(8, 7)).is_one());
    }

    #[test]
    fn conductor_two_mod_four_is_folded() {
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(2, 1), Cyclotomic::from_int(-1));
        assert_eq!(&z(6, 1) * &z(6, 1), z(3, 1));
    }

    #[test]
    fn descent_to_minimal_conductor() {
        // ζ_15^5 + ζ_15^10 = ζ_3 + ζ_3^2 = -1
        let x = &z(15, 5) + &z(15, 10);
        assert_eq!(x, Cyclotomic::from_int(-1));
        let y = &(&z(12, 1) * &z(12, 3)) - &z(3, 1);
        assert!(y.is_zero());
    }

    #[test]
    fn roots_recognised() {
        let r = Cyclotomic::from_int(-1).as_root_of_unity().unwrap();
        assert_eq!((r.order(), r.exponent()), (2, 1));
        assert!(Cyclotomic::from_rational(Rational::new(1.into(), 2.into()))
            .as_root_of_unity()
            .is_none());
        let r = z(3, 2).as_root_of_unity().unwrap();
        assert_eq!((r.order(), r.exponent()), (3, 2));
        let r = z(15, 7).as_root_of_unity().unwrap();
        assert_eq!((r.order(), r.exponent()), (15, 7));
        let r = (-z(5, 1)).as_root_of_unity().unwrap();
        assert_eq!(r.order(), 10);
    }

    #[test]
    fn inverse_general_element() {
        let a = &(&z(15, 1) + &Cyclotomic::from_int(2)) + &z(5, 2);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn square_roots() {
        for v in [2i64, 3, 5, 6, 7, -1, -3, 12] {
            let q = Rational::from_integer(BigInt::from(v));
            let r = Cyclotomic::sqrt_rational(&q);
            assert_eq!(&r * &r, Cyclotomic::from_rational(q), "sqrt({v})");
        }
    }

    #[test]
    fn text_and_json_roundtrip() {
        let a = &(&z(12, 1) * &Cyclotomic::from_int(3)) - &Cyclotomic::from_rational(Rational::new(1.into(), 2.into()));
        let t = a.to_text();
        let b: Cyclotomic = t.parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_text(), t);
        let j = serde_json::to_string(&a).unwrap();
        let c: Cyclotomic = serde_json::from_str(&j).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), j);
    }
}
