//! Character tables by simultaneous diagonalization of class-sum matrices
//! over a prime field, followed by an exact lift to cyclotomic values.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::arith::{is_prime, mod_inv, mod_pow};
use crate::exactnum::{Cyclotomic, Rational};
use crate::groups::FiniteGroup;

/// A class function, one value per conjugacy class in the group's class order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        Character { values }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Character::new(vec![Cyclotomic::one(); g.conjugacy_classes().len()])
    }

    /// Value at an element.
    pub fn at(&self, g: &FiniteGroup, x: usize) -> &Cyclotomic {
        &self.values[g.class_of(x)]
    }

    pub fn degree(&self) -> Cyclotomic {
        self.values[0].clone()
    }

    /// Degree as an integer, when the class function is a character.
    pub fn dim(&self) -> usize {
        let d = self.values[0].to_rational().expect("rational degree");
        assert!(d.is_integer());
        d.to_integer().try_into().expect("small degree")
    }

    /// ⟨χ, ψ⟩ = |G|⁻¹ Σ_g χ(g) conj(ψ(g)).
    pub fn inner(&self, other: &Character, g: &FiniteGroup) -> Rational {
        let mut acc = Cyclotomic::zero();
        for (ci, c) in g.conjugacy_classes().iter().enumerate() {
            let t = &self.values[ci] * &other.values[ci].conj();
            acc = &acc + &(&t * &Cyclotomic::from_int(c.len() as i64));
        }
        let q = acc.to_rational().expect("inner product of characters is rational");
        q / Rational::from_integer((g.order() as i64).into())
    }

    pub fn add(&self, other: &Character) -> Character {
        Character::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn conj(&self) -> Character {
        Character::new(self.values.iter().map(|a| a.conj()).collect())
    }

    /// Values on each element (not just classes).
    pub fn on_elements(&self, g: &FiniteGroup) -> Vec<Cyclotomic> {
        (0..g.order()).map(|x| self.at(g, x).clone()).collect()
    }

    /// Class function from element values (must be constant on classes).
    pub fn from_elements(g: &FiniteGroup, vals: &[Cyclotomic]) -> Character {
        Character::new(g.conjugacy_classes().iter().map(|c| vals[c[0]].clone()).collect())
    }

    pub fn is_irreducible(&self, g: &FiniteGroup) -> bool {
        self.inner(self, g).is_one()
    }

    /// Kernel as an element list.
    pub fn kernel(&self, g: &FiniteGroup) -> Vec<usize> {
        let d = self.degree();
        (0..g.order()).filter(|&x| *self.at(g, x) == d).collect()
    }
}

fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if is_prime(p) && p * p > 4 * order {
            return p;
        }
        p += exponent;
    }
}

fn primitive_root(p: u64) -> u64 {
    let factors = crate::exactnum::arith::factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| mod_pow(g, (p - 1) / q, p) != 1))
        .expect("prime has a primitive root")
}

/// Basis of the null space of a k×d matrix over F_p (columns = unknowns).
fn nullspace_mod(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = mod_inv(m[r][c], p).unwrap();
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Split the span of `basis` (vectors in F_p^k) into eigenspaces of `m`.
fn split(m: &[Vec<u64>], basis: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let k = m.len();
    let d = basis.len();
    // M·b for each basis vector.
    let mb: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..k).map(|i| (0..k).fold(0, |acc, j| (acc + m[i][j] * b[j]) % p)).collect())
        .collect();
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        // (M - λ)B c = 0, rows indexed by coordinate i, columns by basis index.
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                (0..d)
                    .map(|t| (mb[t][i] + p - lambda * basis[t][i] % p) % p)
                    .collect()
            })
            .collect();
        let ns = nullspace_mod(&rows, d, p);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        out.push(
            ns.iter()
                .map(|c| {
                    (0..k)
                        .map(|i| (0..d).fold(0, |acc, t| (acc + c[t] * basis[t][i]) % p))
                        .collect()
                })
                .collect(),
        );
        if found == d {
            break;
        }
    }
    assert_eq!(found, d, "class algebra not split over F_{p}");
    out
}

/// The complete list of irreducible characters, ordered by
/// (degree, values in class order).
pub fn character_table(g: &FiniteGroup) -> Vec<Character> {
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let n = g.order() as u64;
    let e = g.exponent() as u64;
    let p = choose_prime(e, n);
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();

    // c[j][kk][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_kk}
    let mut consts = vec![vec![vec![0u64; k]; k]; k];
    for (l, &z) in reps.iter().enumerate() {
        for x in 0..g.order() {
            let y = g.mul(g.inv(x), z);
            consts[g.class_of(x)][g.class_of(y)][l] += 1;
        }
    }
    let mats: Vec<Vec<Vec<u64>>> = consts
        .iter()
        .map(|mj| mj.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect())
        .collect();

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];
    // First a fixed combination, which usually separates everything at once.
    let combo: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|c| (0..k).fold(0, |acc, j| (acc + (j as u64 * 7 + 3) * mats[j][r][c]) % p))
                .collect()
        })
        .collect();
    let mut order: Vec<&Vec<Vec<u64>>> = vec![&combo];
    order.extend(mats.iter().skip(1));
    for m in order {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(m, &s, p));
            }
        }
        spaces = next;
    }
    assert!(spaces.iter().all(|s| s.len() == 1), "class sums failed to separate characters");

    let inv_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.inv(x))).collect();
    let root = primitive_root(p);
    let z = mod_pow(root, (p - 1) / e, p);
    let orders: Vec<u64> = reps.iter().map(|&x| g.element_order(x) as u64).collect();
    let power_class: Vec<Vec<usize>> = reps
        .iter()
        .zip(&orders)
        .map(|(&x, &o)| (0..o).map(|l| g.class_of(g.pow(x, l as i64))).collect())
        .collect();

    let mut table = Vec::with_capacity(k);
    for s in spaces {
        let v = &s[0];
        let inv0 = mod_inv(v[0], p).expect("identity component nonzero");
        let omega: Vec<u64> = v.iter().map(|&x| x * inv0 % p).collect();
        let mut sum = 0;
        for j in 0..k {
            sum = (sum + omega[j] * omega[inv_class[j]] % p * mod_inv(sizes[j] % p, p).unwrap()) % p;
        }
        let d2 = n % p * mod_inv(sum, p).expect("nonzero norm") % p;
        let d = (1..=((n as f64).sqrt() as u64 + 1))
            .find(|&d| d * d % p == d2)
            .expect("degree recovered");
        let modvals: Vec<u64> = (0..k)
            .map(|j| omega[j] * (d % p) % p * mod_inv(sizes[j] % p, p).unwrap() % p)
            .collect();
        let mut values = Vec::with_capacity(k);
        for j in 0..k {
            let o = orders[j];
            let zo = mod_pow(z, e / o, p);
            let oinv = mod_inv(o % p, p).unwrap();
            let mut val = Cyclotomic::zero();
            let mut items = Vec::new();
            for kk in 0..o {
                let mut m = 0;
                for l in 0..o {
                    let w = mod_pow(zo, (o - kk * l % o) % o, p);
                    m = (m + modvals[power_class[j][l as usize]] * w) % p;
                }
                let m = m * oinv % p;
                assert!(m <= d, "eigenvalue multiplicity {m} exceeds degree {d}");
                if m > 0 {
                    items.push((o, kk as i64, Rational::from_integer((m as i64).into())));
                }
            }
            if !items.is_empty() {
                val = Cyclotomic::from_monomials(&items);
            }
            values.push(val);
        }
        table.push(Character::new(values));
    }
    table.sort_by(|a, b| {
        a.dim()
            .cmp(&b.dim())
            .then_with(|| a.values.cmp(&b.values))
    });
    debug_assert!(verify_orthogonality(g, &table));
    table
}

/// Exact row orthogonality ⟨χ_i, χ_j⟩ = δ_ij and Σ χ(1)² = |G|.
pub fn verify_orthogonality(g: &FiniteGroup, table: &[Character]) -> bool {
    let total: usize = table.iter().map(|c| c.dim() * c.dim()).sum();
    if total != g.order() || table.len() != g.conjugacy_classes().len() {
        return false;
    }
    for (i, a) in table.iter().enumerate() {
        for (j, b) in table.iter().enumerate().skip(i) {
            let ip = a.inner(b, g);
            if ip != if i == j { Rational::one() } else { Rational::zero() } {
                return false;
            }
        }
    }
    true
}

/// Column orthogonality: Σ_χ χ(g_i) conj(χ(g_j)) = δ_ij |C_G(g_i)|.
pub fn verify_columns(g: &FiniteGroup, table: &[Character]) -> bool {
    let classes = g.conjugacy_classes();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            let s = table
                .iter()
                .fold(Cyclotomic::zero(), |acc, c| &acc + &(&c.values[i] * &c.values[j].conj()));
            let expect = if i == j {
                Cyclotomic::from_int((g.order() / classes[i].len()) as i64)
            } else {
                Cyclotomic::zero()
            };
            if s != expect {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    fn degrees(g: &FiniteGroup) -> Vec<usize> {
        character_table(g).iter().map(|c| c.dim()).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(degrees(&catalog::quaternion()), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees(&catalog::symmetric(3)), vec![1, 1, 2]);
        assert_eq!(degrees(&catalog::symmetric(4)), vec![1, 1, 2, 3, 3]);
        assert_eq!(degrees(&catalog::alternating(5)), vec![1, 3, 3, 4, 5]);
        assert_eq!(degrees(&catalog::sl23()), vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn cyclic_values_are_roots() {
        let g = catalog::cyclic(5);
        let t = character_table(&g);
        assert_eq!(t.len(), 5);
        assert!(t[0].values.iter().all(|v| v.is_one()));
        for c in &t {
            for v in &c.values {
                assert_eq!(v.as_root_of_unity().unwrap().order() % 5 == 0 || v.is_one(), true);
            }
        }
        assert!(verify_columns(&g, &t));
    }

    #[test]
    fn orthogonality_on_catalog() {
        for g in [catalog::heisenberg(3), catalog::weyl_b(3), catalog::dicyclic(3), catalog::dihedral(5)] {
            let t = character_table(&g);
            assert!(verify_orthogonality(&g, &t));
            assert!(verify_columns(&g, &t));
        }
    }
}
