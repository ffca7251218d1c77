//! 2-cocycles with root-of-unity values and irreducible modules of twisted
//! group algebras K[Γ,♮], where T_γ T_γ' = ♮(γ,γ') T_{γγ'}.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, lcm, mod_inv};
use crate::exactnum::{Cyclotomic, RootOfUnity};
use crate::groups::json::GroupSpec;
use crate::groups::FiniteGroup;
use crate::reps::{character_table, irreps_for_table, DEFAULT_MATRIX_BOUND};
use crate::CycMatrix;

/// A normalized 2-cocycle Γ×Γ → μ_m stored as exponents of ζ_m.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoCocycle {
    m: u64,
    exps: Vec<Vec<u64>>,
}

impl TwoCocycle {
    pub fn trivial(n: usize) -> Self {
        TwoCocycle {
            m: 1,
            exps: vec![vec![0; n]; n],
        }
    }

    /// Check Eq. (1.1) on all triples and normalize by ♮(1,1).
    pub fn validate(g: &FiniteGroup, m: u64, exps: Vec<Vec<u64>>) -> Result<Self> {
        let n = g.order();
        if m == 0 {
            return Err(Error::validation("cocycle modulus must be positive"));
        }
        if exps.len() != n || exps.iter().any(|r| r.len() != n) {
            return Err(Error::validation(format!("cocycle table must be {n}x{n}")));
        }
        let e = |a: usize, b: usize| exps[a][b] % m;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let lhs = e(a, g.mul(b, c)) + e(b, c);
                    let rhs = e(a, b) + e(ab, c);
                    if lhs % m != rhs % m {
                        return Err(Error::CocycleWitness(a, b, c));
                    }
                }
            }
        }
        let shift = e(0, 0);
        let exps = exps
            .iter()
            .map(|r| r.iter().map(|&v| (v % m + m - shift) % m).collect())
            .collect();
        Ok(TwoCocycle { m, exps }.reduced())
    }

    /// From a full table of root-of-unity values.
    pub fn from_roots(g: &FiniteGroup, vals: &[Vec<RootOfUnity>]) -> Result<Self> {
        let m = vals.iter().flatten().fold(1, |acc, r| lcm(acc, r.order()));
        let exps = vals
            .iter()
            .map(|r| r.iter().map(|v| v.exponent_mod(m).unwrap()).collect())
            .collect();
        Self::validate(g, m, exps)
    }

    /// From arbitrary nonzero cyclotomic values. Values that are not roots of
    /// unity are rescaled by β(γ) = ♮(γ,γ⁻¹)^{1/2} when that square root is
    /// exact; otherwise the input is rejected.
    pub fn from_cyclotomic(g: &FiniteGroup, vals: &[Vec<Cyclotomic>]) -> Result<Self> {
        let n = g.order();
        let direct: Option<Vec<Vec<RootOfUnity>>> = vals
            .iter()
            .map(|r| r.iter().map(|v| v.as_root_of_unity()).collect())
            .collect();
        if let Some(v) = direct {
            return Self::from_roots(g, &v);
        }
        let mut beta = Vec::with_capacity(n);
        for a in 0..n {
            let c = &vals[a][g.inv(a)];
            let r = exact_sqrt(c).ok_or_else(|| {
                Error::validation(format!("cocycle value at ({a}, {}) has no exact square root", g.inv(a)))
            })?;
            beta.push(r);
        }
        let mut roots = vec![Vec::with_capacity(n); n];
        for a in 0..n {
            for b in 0..n {
                let v = &(&vals[a][b] * &beta[g.mul(a, b)]) * &(&beta[a] * &beta[b]).inv()?;
                let r = v.as_root_of_unity().ok_or_else(|| {
                    Error::validation(format!("value at ({a}, {b}) cannot be normalized to a root of unity"))
                })?;
                roots[a].push(r);
            }
        }
        Self::from_roots(g, &roots)
    }

    /// Shrink the modulus to the lcm of the value orders.
    fn reduced(self) -> Self {
        let m = self
            .exps
            .iter()
            .flatten()
            .fold(1, |acc, &e| lcm(acc, self.m / gcd(self.m, e)));
        if m == self.m {
            return self;
        }
        let f = self.m / m;
        TwoCocycle {
            m,
            exps: self.exps.iter().map(|r| r.iter().map(|&e| e / f).collect()).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn group_order(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exps
    }

    pub fn value(&self, a: usize, b: usize) -> RootOfUnity {
        RootOfUnity::new(self.m, self.exps[a][b] as i64)
    }

    pub fn value_cyc(&self, a: usize, b: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.m, self.exps[a][b] as i64)
    }

    pub fn is_identically_one(&self) -> bool {
        self.m == 1
    }

    /// Exponent table lifted to the modulus `big` (a multiple of m).
    fn exps_mod(&self, big: u64) -> Vec<Vec<u64>> {
        let f = big / self.m;
        self.exps.iter().map(|r| r.iter().map(|&e| e * f).collect()).collect()
    }

    /// Pointwise product.
    pub fn mul(&self, other: &TwoCocycle) -> TwoCocycle {
        let m = lcm(self.m, other.m);
        let (a, b) = (self.exps_mod(m), other.exps_mod(m));
        let exps = a
            .iter()
            .zip(&b)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x + y) % m).collect())
            .collect();
        TwoCocycle { m, exps }.reduced()
    }

    pub fn inverse(&self) -> TwoCocycle {
        TwoCocycle {
            m: self.m,
            exps: self
                .exps
                .iter()
                .map(|r| r.iter().map(|&e| (self.m - e) % self.m).collect())
                .collect(),
        }
    }

    /// Pull back along a map of element indices (inflation or restriction).
    pub fn pullback(&self, map: &[usize]) -> TwoCocycle {
        TwoCocycle {
            m: self.m,
            exps: map
                .iter()
                .map(|&a| map.iter().map(|&b| self.exps[a][b]).collect())
                .collect(),
        }
        .reduced()
    }

    /// Multiply by the coboundary of β: ♮'(a,b) = ♮(a,b) β(a)β(b)β(ab)⁻¹.
    pub fn twist_by(&self, g: &FiniteGroup, beta: &[RootOfUnity]) -> TwoCocycle {
        let m = beta.iter().fold(self.m, |acc, r| lcm(acc, r.order()));
        let be: Vec<u64> = beta.iter().map(|r| r.exponent_mod(m).unwrap()).collect();
        let base = self.exps_mod(m);
        let n = g.order();
        let exps = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (base[a][b] + be[a] + be[b] + m - be[g.mul(a, b)]) % m)
                    .collect()
            })
            .collect();
        TwoCocycle { m, exps }.reduced()
    }

    pub fn to_spec(&self, group: GroupSpec) -> CocycleSpec {
        let mut values = Vec::new();
        for (a, r) in self.exps.iter().enumerate() {
            for (b, &e) in r.iter().enumerate() {
                if e != 0 {
                    values.push((a, b, e));
                }
            }
        }
        CocycleSpec {
            group,
            m: self.m,
            values,
        }
    }
}

/// c with c² equal to the input, when the input is a rational times a root of unity.
pub fn exact_sqrt(c: &Cyclotomic) -> Option<Cyclotomic> {
    if c.is_zero() {
        return Some(Cyclotomic::zero());
    }
    let n = c.conductor();
    let top = if n % 2 == 1 { 2 * n } else { n };
    for k in 0..top {
        let z = Cyclotomic::root_of_unity(top, k as i64);
        if let Some(q) = (c * &z.inv().ok()?).to_rational() {
            let rq = Cyclotomic::sqrt_rational(&q);
            let rz = Cyclotomic::root_of_unity(2 * top, k as i64);
            return Some(&rq * &rz);
        }
    }
    None
}

/// JSON form: values are [i, j, k] meaning ♮(i,j) = ζ_m^k.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleSpec {
    pub group: GroupSpec,
    pub m: u64,
    #[serde(default)]
    pub values: Vec<(usize, usize, u64)>,
}

impl CocycleSpec {
    pub fn build(&self, order_bound: usize) -> Result<(FiniteGroup, TwoCocycle)> {
        let g = self.group.build(order_bound)?;
        let n = g.order();
        let mut exps = vec![vec![0u64; n]; n];
        for &(a, b, k) in &self.values {
            if a >= n || b >= n {
                return Err(Error::validation(format!("cocycle entry ({a}, {b}) out of range")));
            }
            exps[a][b] = k;
        }
        let c = TwoCocycle::validate(&g, self.m, exps)?;
        Ok((g, c))
    }
}

/// Solve a linear system over Z/M with a Howell-style echelon; rows are
/// coefficient vectors with the right-hand side last.
pub fn solve_mod(rows: Vec<Vec<u64>>, ncols: usize, modulus: u64) -> Option<Vec<u64>> {
    let md = modulus as i128;
    let norm = |v: i128| v.rem_euclid(md);
    let mut pool: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|v| norm(v as i128)).collect())
        .collect();
    let mut pivots: Vec<(usize, Vec<i128>)> = Vec::new();
    for c in 0..ncols {
        let mut idx: Vec<usize> = (0..pool.len()).filter(|&i| pool[i][c] != 0).collect();
        if idx.is_empty() {
            continue;
        }
        let pi = idx.remove(0);
        let mut p = pool[pi].clone();
        for &ri in &idx {
            let mut r = pool[ri].clone();
            while r[c] != 0 {
                let q = p[c] / r[c];
                for (x, y) in p.iter_mut().zip(&r) {
                    *x = norm(*x - q * y);
                }
                std::mem::swap(&mut p, &mut r);
            }
            pool[ri] = r;
        }
        // Scale p[c] to gcd(p[c], M) by a unit.
        let a = p[c] as u64;
        let g = gcd(a, modulus);
        let mg = modulus / g;
        let u0 = mod_inv((a / g) % mg, mg).unwrap_or(0);
        let mut u = u0;
        while gcd(u, modulus) != 1 {
            u += mg;
        }
        for x in p.iter_mut() {
            *x = norm(*x * u as i128);
        }
        pool.remove(pi);
        let ann: Vec<i128> = p.iter().map(|&x| norm(x * mg as i128)).collect();
        if ann.iter().any(|&x| x != 0) {
            pool.push(ann);
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));
        pivots.push((c, p));
    }
    if pool.iter().any(|r| r[..ncols].iter().all(|&x| x == 0) && r[ncols] != 0) {
        return None;
    }
    let mut x = vec![0i128; ncols];
    for (c, p) in pivots.iter().rev() {
        let mut rhs = p[ncols];
        for j in c + 1..ncols {
            rhs = norm(rhs - p[j] * x[j]);
        }
        let g = p[*c];
        if rhs % g != 0 {
            return None;
        }
        x[*c] = rhs / g;
    }
    Some(x.into_iter().map(|v| v as u64).collect())
}

/// β: Γ → μ_M with ♮1/♮2 = β(a)β(b)β(ab)⁻¹, or None if the classes differ
/// in H²(Γ, K^×). M = lcm(m1, m2)·exp(Γ) suffices for any such β.
pub fn cohomologous(g: &FiniteGroup, c1: &TwoCocycle, c2: &TwoCocycle) -> Option<Vec<RootOfUnity>> {
    let n = g.order();
    let big = lcm(c1.m, c2.m) * g.exponent() as u64;
    let (a, b) = (c1.exps_mod(big), c2.exps_mod(big));
    if a == b {
        return Some(vec![RootOfUnity::one(); n]);
    }
    // Unknowns β(x) for x = 1..n-1; equations on pairs (x, s), s a generator.
    let ncols = n - 1;
    let mut rows = Vec::new();
    for x in 0..n {
        for &s in g.generators() {
            let mut row = vec![0u64; ncols + 1];
            let mut add = |idx: usize, v: i64| {
                if idx > 0 {
                    let cur = row[idx - 1] as i64;
                    row[idx - 1] = (cur + v).rem_euclid(big as i64) as u64;
                }
            };
            add(x, 1);
            add(s, 1);
            add(g.mul(x, s), -1);
            row[ncols] = (a[x][s] + big - b[x][s]) % big;
            rows.push(row);
        }
    }
    let sol = solve_mod(rows, ncols, big)?;
    let mut beta = vec![RootOfUnity::one()];
    beta.extend(sol.iter().map(|&v| RootOfUnity::new(big, v as i64)));
    Some(beta)
}

/// An irreducible K[Γ,♮]-module: T_γ ↦ matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TgaIrrep {
    dim: usize,
    matrices: Vec<CycMatrix>,
}

impl TgaIrrep {
    pub fn new(matrices: Vec<CycMatrix>) -> Self {
        let dim = matrices.first().map_or(0, |m| m.rows());
        TgaIrrep { dim, matrices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CycMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CycMatrix] {
        &self.matrices
    }

    /// tr T_γ for every γ in element order.
    pub fn trace_vector(&self) -> Vec<Cyclotomic> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// T_a T_b = ♮(a,b) T_{ab} on all pairs.
    pub fn verify(&self, g: &FiniteGroup, c: &TwoCocycle) -> Result<()> {
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = self.matrices[a].mul(&self.matrices[b]);
                let rhs = self.matrices[g.mul(a, b)].scale(&c.value_cyc(a, b));
                if lhs != rhs {
                    return Err(Error::validation(format!(
                        "twisted multiplication fails at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Multiplicativity checked on generators only: T_x T_s = ♮(x,s) T_{xs}.
    pub fn verify_on_generators(&self, g: &FiniteGroup, c: &TwoCocycle) -> Result<()> {
        for a in 0..g.order() {
            for &s in g.generators() {
                let lhs = self.matrices[a].mul(&self.matrices[s]);
                let rhs = self.matrices[g.mul(a, s)].scale(&c.value_cyc(a, s));
                if lhs != rhs {
                    return Err(Error::validation(format!(
                        "twisted multiplication fails at ({a}, {s})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Transport along a coboundary: T'_γ = β(γ) T_γ lives over ♮·dβ.
    pub fn twist_by(&self, beta: &[RootOfUnity]) -> TgaIrrep {
        TgaIrrep::new(
            self.matrices
                .iter()
                .zip(beta)
                .map(|(m, b)| m.scale(&b.to_cyclotomic()))
                .collect(),
        )
    }
}

/// Irr K[Γ,♮], ordered by (dimension, trace vector).
pub fn twisted_irreps(g: &FiniteGroup, c: &TwoCocycle) -> Result<Vec<TgaIrrep>> {
    twisted_irreps_bounded(g, c, DEFAULT_MATRIX_BOUND)
}

pub fn twisted_irreps_bounded(g: &FiniteGroup, c: &TwoCocycle, bound: usize) -> Result<Vec<TgaIrrep>> {
    let n = g.order();
    let m = c.modulus();
    if n * m as usize > bound {
        return Err(Error::MatrixBound(bound));
    }
    let mut out = if m == 1 {
        let t = character_table(g);
        irreps_for_table(g, &t)?
            .into_iter()
            .map(|r| TgaIrrep::new(r.matrices().to_vec()))
            .collect::<Vec<_>>()
    } else {
        let (ext, _, _) = g.central_extension(m, c.exponents())?;
        let t = character_table(&ext);
        // central character: χ(z) = ζ_m χ(1) at z = (1, e), index n.
        let zeta = Cyclotomic::zeta(m);
        let keep: Vec<_> = t
            .into_iter()
            .filter(|chi| *chi.at(&ext, n) == &zeta * &chi.degree())
            .collect();
        irreps_for_table(&ext, &keep)?
            .into_iter()
            .map(|r| TgaIrrep::new((0..n).map(|x| r.matrix(x).clone()).collect()))
            .collect()
    };
    sort_irreps(&mut out);
    Ok(out)
}

/// Trace vectors γ ↦ tr T_γ of Irr K[Γ,♮], in the order of [`twisted_irreps`],
/// without building matrices.
pub fn twisted_traces(g: &FiniteGroup, c: &TwoCocycle) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = g.order();
    let m = c.modulus();
    let mut out: Vec<Vec<Cyclotomic>> = if m == 1 {
        character_table(g).iter().map(|chi| chi.on_elements(g)).collect()
    } else {
        let (ext, _, _) = g.central_extension(m, c.exponents())?;
        let zeta = Cyclotomic::zeta(m);
        character_table(&ext)
            .iter()
            .filter(|chi| *chi.at(&ext, n) == &zeta * &chi.degree())
            .map(|chi| (0..n).map(|x| chi.at(&ext, x).clone()).collect())
            .collect()
    };
    out.sort_by(|a, b| {
        let (da, db) = (a[0].to_rational(), b[0].to_rational());
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    Ok(out)
}

pub fn sort_irreps(v: &mut [TgaIrrep]) {
    v.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.trace_vector().cmp(&b.trace_vector())));
}

/// The dual module over ♮⁻¹: S_γ ↦ (T_γ⁻¹)ᵀ with T_γ⁻¹ = ♮(γ,γ⁻¹)⁻¹ T_{γ⁻¹}.
pub fn dual_twisted(g: &FiniteGroup, c: &TwoCocycle, v: &TgaIrrep) -> TgaIrrep {
    TgaIrrep::new(
        (0..g.order())
            .map(|x| {
                let xi = g.inv(x);
                let s = c.value(x, xi).inv().to_cyclotomic();
                v.matrix(xi).scale(&s).transpose()
            })
            .collect(),
    )
}

/// Trivial-cocycle check via the zero class.
pub fn is_coboundary(g: &FiniteGroup, c: &TwoCocycle) -> bool {
    cohomologous(g, c, &TwoCocycle::trivial(g.order())).is_some()
}

/// Whether two modules over the same cocycle are equivalent.
pub fn equivalent(a: &TgaIrrep, b: &TgaIrrep) -> bool {
    a.dim == b.dim && a.trace_vector() == b.trace_vector()
}

/// Index of the module in a list matched by twisted trace.
pub fn position_in(list: &[TgaIrrep], v: &TgaIrrep) -> Option<usize> {
    let tv = v.trace_vector();
    list.iter().position(|w| w.dim == v.dim && w.trace_vector() == tv)
}

/// Σ dim² over a list.
pub fn dimension_count(list: &[TgaIrrep]) -> usize {
    list.iter().map(|v| v.dim * v.dim).sum()
}

/// Convenience: the cocycle that is identically one is normalized.
pub fn is_normalized(c: &TwoCocycle) -> bool {
    let n = c.group_order();
    (0..n).all(|a| c.exps[0][a] == 0 && c.exps[a][0] == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    /// Klein four-group cocycle with values ±1 whose extension is Q8.
    fn klein_q8_cocycle(g: &FiniteGroup) -> TwoCocycle {
        let q8 = catalog::quaternion();
        let (_, proj) = q8.quotient(&q8.center()).unwrap();
        let reps: Vec<usize> = (0..4)
            .map(|c| (0..8).find(|&x| proj.apply(x) == c).unwrap())
            .collect();
        let minus = q8.center().elements()[1];
        let exps = (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| {
                        let d = q8.mul(q8.mul(reps[a], reps[b]), q8.inv(reps[g.mul(a, b)]));
                        if d == minus { 1 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        TwoCocycle::validate(g, 2, exps).unwrap()
    }

    #[test]
    fn klein_cocycle_has_one_irrep() {
        let q8 = catalog::quaternion();
        let (v4, _) = q8.quotient(&q8.center()).unwrap();
        let c = klein_q8_cocycle(&v4);
        assert!(!is_coboundary(&v4, &c));
        let irr = twisted_irreps(&v4, &c).unwrap();
        assert_eq!(irr.len(), 1);
        assert_eq!(irr[0].dim(), 2);
        irr[0].verify(&v4, &c).unwrap();
        let d = dual_twisted(&v4, &c, &irr[0]);
        d.verify(&v4, &c.inverse()).unwrap();
    }

    #[test]
    fn perturbed_cocycle_reports_witness() {
        let g = catalog::abelian(&[2, 2]);
        let mut exps = vec![vec![0u64; 4]; 4];
        exps[1][2] = 1;
        match TwoCocycle::validate(&g, 2, exps) {
            Err(Error::CocycleWitness(..)) => {}
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn coboundary_recovered() {
        let g = catalog::abelian(&[2, 2]);
        let beta: Vec<RootOfUnity> = [0, 1, 3, 2].iter().map(|&k| RootOfUnity::new(4, k)).collect();
        let c = TwoCocycle::trivial(4).twist_by(&g, &beta);
        let found = cohomologous(&g, &c, &TwoCocycle::trivial(4)).unwrap();
        assert_eq!(TwoCocycle::trivial(4).twist_by(&g, &found), c);
    }

    #[test]
    fn sign_cocycle_on_c2_is_coboundary() {
        let g = catalog::cyclic(2);
        let c = TwoCocycle::validate(&g, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(is_coboundary(&g, &c));
        let irr = twisted_irreps(&g, &c).unwrap();
        assert_eq!(irr.len(), 2);
    }

    #[test]
    fn solve_mod_detects_inconsistency() {
        // 2x = 1 mod 4 has no solution
        assert!(solve_mod(vec![vec![2, 1]], 1, 4).is_none());
        assert_eq!(solve_mod(vec![vec![2, 2]], 1, 4).map(|x| x[0] * 2 % 4), Some(2));
    }
}
