//! Standard small groups.

use super::{FiniteGroup, MonomialMatrix, Perm, Realization, SubgroupHandle, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;

fn perms(gens: &[Perm]) -> FiniteGroup {
    FiniteGroup::from_permutations(gens, DEFAULT_ORDER_BOUND).expect("catalog group")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    if n <= 1 {
        return FiniteGroup::trivial();
    }
    let c: Vec<u32> = (0..n as u32).collect();
    perms(&[Perm::from_cycles(n, &[&c])])
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(orders: &[usize]) -> FiniteGroup {
    let total: usize = orders.iter().sum();
    let mut gens = Vec::new();
    let mut start = 0u32;
    for &o in orders {
        if o > 1 {
            let c: Vec<u32> = (start..start + o as u32).collect();
            gens.push(Perm::from_cycles(total, &[&c]));
        }
        start += o as u32;
    }
    perms(&gens)
}

pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    abelian(&vec![p; k])
}

/// Dihedral group of order 2n (symmetries of the n-gon).
pub fn dihedral(n: usize) -> FiniteGroup {
    match n {
        0 | 1 => cyclic(2),
        2 => abelian(&[2, 2]),
        _ => {
            let r: Vec<u32> = (0..n as u32).collect();
            let s = Perm((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
            perms(&[Perm::from_cycles(n, &[&r]), s])
        }
    }
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n <= 1 {
        return FiniteGroup::trivial();
    }
    let c: Vec<u32> = (0..n as u32).collect();
    perms(&[Perm::from_cycles(n, &[&[0, 1]]), Perm::from_cycles(n, &[&c])])
}

pub fn alternating(n: usize) -> FiniteGroup {
    let gens: Vec<Perm> = (2..n as u32).map(|i| Perm::from_cycles(n, &[&[0, 1, i]])).collect();
    perms(&gens)
}

fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.degree()];
    let mut transpositions = 0;
    for i in 0..p.degree() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p.apply(j as u32) as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// The even permutations of a permutation group.
pub fn alternating_in(g: &FiniteGroup) -> SubgroupHandle {
    match g.realization() {
        Realization::Permutations { elements, .. } => {
            let els = (0..g.order()).filter(|&i| is_even(&elements[i])).collect();
            SubgroupHandle::new(g, els)
        }
        _ => panic!("alternating_in needs a permutation group"),
    }
}

/// Q8 realized by diag(i, -i) and antidiag(i, i).
pub fn quaternion() -> FiniteGroup {
    let i = Cyclotomic::i();
    let a = MonomialMatrix::diagonal(vec![i.clone(), -i.clone()]);
    let b = MonomialMatrix::from_sparse(2, &[(0, 1, i.clone()), (1, 0, i)]).expect("monomial");
    FiniteGroup::from_monomials(&[a, b], DEFAULT_ORDER_BOUND).expect("Q8")
}

/// Dicyclic group of order 4n: ⟨diag(ζ_{2n}, ζ_{2n}^{-1}), antidiag(1, -1)⟩.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let z = Cyclotomic::zeta(2 * n as u64);
    let a = MonomialMatrix::diagonal(vec![z.clone(), z.inv().expect("unit")]);
    let b = MonomialMatrix::from_sparse(
        2,
        &[(0, 1, Cyclotomic::from_int(-1)), (1, 0, Cyclotomic::from_int(1))],
    )
    .expect("monomial");
    FiniteGroup::from_monomials(&[a, b], DEFAULT_ORDER_BOUND).expect("dicyclic")
}

/// Hyperoctahedral group W(B_k) = W(C_k) acting on ±e_i (point i is e_i,
/// point i+k is -e_i).
pub fn weyl_b(k: usize) -> FiniteGroup {
    if k == 0 {
        return FiniteGroup::trivial();
    }
    let n = 2 * k;
    let mut gens = Vec::new();
    for i in 0..k as u32 - 1 {
        let k = k as u32;
        gens.push(Perm::from_cycles(n, &[&[i, i + 1], &[i + k, i + 1 + k]]));
    }
    gens.push(Perm::from_cycles(n, &[&[k as u32 - 1, 2 * k as u32 - 1]]));
    perms(&gens)
}

/// W(D_k): even sign changes combined with permutations.
pub fn weyl_d(k: usize) -> FiniteGroup {
    if k <= 1 {
        return FiniteGroup::trivial();
    }
    let n = 2 * k;
    let kk = k as u32;
    let mut gens = Vec::new();
    for i in 0..kk - 1 {
        gens.push(Perm::from_cycles(n, &[&[i, i + 1], &[i + kk, i + 1 + kk]]));
    }
    gens.push(Perm::from_cycles(
        n,
        &[&[kk - 2, 2 * kk - 1], &[kk - 1, 2 * kk - 2]],
    ));
    perms(&gens)
}

/// SL(2,3) acting on the 8 nonzero vectors of F_3².
pub fn sl23() -> FiniteGroup {
    let idx = |x: u32, y: u32| (3 * x + y - 1) as usize;
    let mat = |a: u32, b: u32, c: u32, d: u32| {
        let mut img = vec![0u32; 8];
        for x in 0..3 {
            for y in 0..3 {
                if x == 0 && y == 0 {
                    continue;
                }
                let (u, v) = ((a * x + b * y) % 3, (c * x + d * y) % 3);
                img[idx(x, y)] = idx(u, v) as u32;
            }
        }
        Perm(img)
    };
    perms(&[mat(1, 1, 0, 1), mat(1, 0, 1, 1)])
}

/// Heisenberg group of order p³: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
pub fn heisenberg(p: usize) -> FiniteGroup {
    let n = p * p * p;
    let dec = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let rows = (0..n)
        .map(|x| {
            let (a, b, c) = dec(x);
            (0..n)
                .map(|y| {
                    let (a2, b2, c2) = dec(y);
                    ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(rows).expect("Heisenberg group")
}

/// The group named by a short label such as "S4", "D8", "Q8", "C6", "A5",
/// "B3", "D4w" (W(D_4)), "SL23", "Heis3", "Dic3", "C2xC2".
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    let bad = || Error::validation(format!("unknown group name {name:?}"));
    if let Some((a, b)) = name.split_once('x') {
        if !a.is_empty() && !b.is_empty() && !name.starts_with("Heis") {
            return by_name(a)?.direct_product(&by_name(b)?);
        }
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match name {
        "Q8" => Ok(quaternion()),
        "SL23" => Ok(sl23()),
        "1" | "trivial" => Ok(FiniteGroup::trivial()),
        _ => {
            if let Some(r) = name.strip_prefix("Heis") {
                Ok(heisenberg(num(r)?))
            } else if let Some(r) = name.strip_prefix("Dic") {
                Ok(dicyclic(num(r)?))
            } else if let Some(r) = name.strip_suffix('w').and_then(|s| s.strip_prefix('D')) {
                Ok(weyl_d(num(r)?))
            } else if let Some(r) = name.strip_prefix('C') {
                Ok(cyclic(num(r)?))
            } else if let Some(r) = name.strip_prefix('S') {
                Ok(symmetric(num(r)?))
            } else if let Some(r) = name.strip_prefix('A') {
                Ok(alternating(num(r)?))
            } else if let Some(r) = name.strip_prefix('D') {
                let o = num(r)?;
                if o % 2 == 1 {
                    return Err(bad());
                }
                Ok(dihedral(o / 2))
            } else if let Some(r) = name.strip_prefix('B') {
                Ok(weyl_b(num(r)?))
            } else {
                Err(bad())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(dicyclic(3).order(), 12);
        assert_eq!(weyl_b(3).order(), 48);
        assert_eq!(weyl_d(4).order(), 192);
        assert_eq!(sl23().order(), 24);
        assert_eq!(heisenberg(3).order(), 27);
        assert_eq!(by_name("S3xC2").unwrap().order(), 12);
        assert_eq!(by_name("D8").unwrap().order(), 8);
    }

    #[test]
    fn centers() {
        assert_eq!(sl23().center().order(), 2);
        assert_eq!(heisenberg(3).center().order(), 3);
        assert_eq!(weyl_b(3).center().order(), 2);
        assert_eq!(alternating_in(&symmetric(4)).order(), 12);
    }
}
