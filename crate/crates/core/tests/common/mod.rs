//! Helpers shared by the integration tests.
#![allow(dead_code)]

use cuspidal::groups::{catalog, FiniteGroup, SubgroupHandle};
use cuspidal::reps::character_table;
use cuspidal::tga::TwoCocycle;
use cuspidal::Cyclotomic;
use rand::Rng;

/// Homomorphisms G → ℤ/2 as 0/1 vectors, from the ±1-valued linear
/// characters.
pub fn sign_homs(g: &FiniteGroup) -> Vec<Vec<u64>> {
    let minus = Cyclotomic::from_int(-1);
    let one = Cyclotomic::from_int(1);
    character_table(g)
        .iter()
        .filter(|c| c.degree() == one)
        .filter_map(|c| {
            (0..g.order())
                .map(|x| {
                    let v = c.at(g, x);
                    if *v == one {
                        Some(0)
                    } else if *v == minus {
                        Some(1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// (m/2)·f1(x)·f2(y) + b(x) + b(y) − b(xy) mod m for random sign
/// homomorphisms f1, f2 and a random normalized cochain b.
pub fn random_cocycle(rng: &mut impl Rng, g: &FiniteGroup, m: u64) -> TwoCocycle {
    assert!(m % 2 == 0);
    let homs = sign_homs(g);
    let f1 = &homs[rng.random_range(0..homs.len())];
    let f2 = &homs[rng.random_range(0..homs.len())];
    let b: Vec<u64> = (0..g.order())
        .map(|x| if x == g.identity() { 0 } else { rng.random_range(0..m) })
        .collect();
    let n = g.order();
    let exps = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (m / 2 * f1[x] * f2[y] + b[x] + b[y] + m - b[g.mul(x, y)]) % m)
                .collect()
        })
        .collect();
    TwoCocycle::validate(g, m, exps).expect("bilinear times coboundary is a cocycle")
}

/// A random normalized cochain β: G → μ_m.
pub fn random_cochain(rng: &mut impl Rng, g: &FiniteGroup, m: u64) -> Vec<cuspidal::RootOfUnity> {
    (0..g.order())
        .map(|x| {
            let k = if x == g.identity() { 0 } else { rng.random_range(0..m) as i64 };
            cuspidal::RootOfUnity::new(m, k)
        })
        .collect()
}

/// Number of c-regular conjugacy classes: g is regular when c(g,h) = c(h,g)
/// for every h commuting with g. This equals |Irr K[G,c]|.
pub fn regular_class_count(g: &FiniteGroup, c: &TwoCocycle) -> usize {
    g.conjugacy_classes()
        .iter()
        .filter(|cl| {
            let x = cl[0];
            (0..g.order())
                .filter(|&h| g.mul(x, h) == g.mul(h, x))
                .all(|h| c.value(x, h) == c.value(h, x))
        })
        .count()
}

/// Pairs (name, Γ, N) with N normal, from normal closures of class
/// representatives together with the center and derived subgroup.
pub fn normal_pairs(names: &[&str], per_group: usize) -> Vec<(String, FiniteGroup, SubgroupHandle)> {
    let mut out = Vec::new();
    for name in names {
        let g = catalog::by_name(name).expect("catalog group");
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut cands = vec![g.center(), g.derived_subgroup()];
        for cl in g.conjugacy_classes().iter().skip(1) {
            cands.push(g.normal_closure(&[cl[0]]));
        }
        let mut taken = 0;
        for n in cands {
            if taken == per_group || seen.contains(&n.elements().to_vec()) {
                continue;
            }
            seen.push(n.elements().to_vec());
            out.push((name.to_string(), g.clone(), n));
            taken += 1;
        }
    }
    out
}
