//! Twisted extended quotients (X ⫽ Γ)_κ of a finite Γ-set.
//!
//! A connecting map φ_{γ,x}: K[Γ_x,κ_x] → K[Γ_{γx},κ_{γx}] is stored as
//! T_w ↦ c_{γ,x}(w) T_{γwγ⁻¹}. Irreducible modules are handled through
//! their trace vectors w ↦ tr ρ(T_w).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, RootOfUnity};
use crate::groups::json::GroupSpec;
use crate::groups::FiniteGroup;
use crate::tga::{twisted_traces, TwoCocycle};

#[derive(Clone, Debug)]
pub struct ActionDatum {
    labels: Vec<String>,
    group: FiniteGroup,
    /// action[γ][x] = γx.
    action: Vec<Vec<usize>>,
    /// Γ_x as sorted parent indices.
    stabilizers: Vec<Vec<usize>>,
    /// κ_x indexed by positions in `stabilizers[x]`.
    cocycles: Vec<TwoCocycle>,
    /// corrections[γ][x][i] = c_{γ,x}(stabilizers[x][i]).
    corrections: Vec<Vec<Vec<RootOfUnity>>>,
}

fn position(list: &[usize], x: usize) -> usize {
    list.binary_search(&x).expect("element of the stabilizer")
}

impl ActionDatum {
    /// A Γ-set with trivial cocycles and connecting maps T_w ↦ T_{γwγ⁻¹}.
    pub fn new(labels: Vec<String>, group: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        let k = labels.len();
        if action.len() != n || action.iter().any(|r| r.len() != k || r.iter().any(|&y| y >= k)) {
            return Err(Error::validation(format!("action table must be {n} x {k} with entries below {k}")));
        }
        if (0..k).any(|x| action[0][x] != x) {
            return Err(Error::validation("identity must act trivially"));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = group.mul(a, b);
                for x in 0..k {
                    if action[ab][x] != action[a][action[b][x]] {
                        return Err(Error::validation(format!("not an action at ({a}, {b}, {x})")));
                    }
                }
            }
        }
        let stabilizers: Vec<Vec<usize>> = (0..k).map(|x| (0..n).filter(|&g| action[g][x] == x).collect()).collect();
        let cocycles = stabilizers.iter().map(|s| TwoCocycle::trivial(s.len())).collect();
        let corrections = (0..n)
            .map(|_| stabilizers.iter().map(|s| vec![RootOfUnity::one(); s.len()]).collect())
            .collect();
        Ok(ActionDatum {
            labels,
            group,
            action,
            stabilizers,
            cocycles,
            corrections,
        })
    }

    /// Action given by the images of each generator of the group.
    pub fn from_generator_action(labels: Vec<String>, group: FiniteGroup, images: &[Vec<usize>]) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::validation("one image list per generator is required"));
        }
        let k = labels.len();
        if images.iter().any(|r| r.len() != k || r.iter().any(|&y| y >= k)) {
            return Err(Error::validation(format!("generator images must be permutations of {k} points")));
        }
        let action = (0..group.order())
            .map(|g| {
                // g = s_1 ⋯ s_r acts as s_1 ∘ ⋯ ∘ s_r.
                (0..k)
                    .map(|x| group.word(g).iter().rev().fold(x, |y, &s| images[s as usize][y]))
                    .collect()
            })
            .collect();
        Self::new(labels, group, action)
    }

    /// κ_x = ♮|Γ_x for a cocycle ♮ on Γ, with φ_{γ,x} = Ad(T_γ) inside K[Γ,♮].
    pub fn from_global_cocycle(labels: Vec<String>, group: FiniteGroup, action: Vec<Vec<usize>>, c: &TwoCocycle) -> Result<Self> {
        let mut d = Self::new(labels, group, action)?;
        if c.group_order() != d.group.order() {
            return Err(Error::validation("cocycle lives on a group of different order"));
        }
        let g = &d.group;
        d.cocycles = d.stabilizers.iter().map(|s| c.pullback(s)).collect();
        d.corrections = (0..g.order())
            .map(|a| {
                let ai = g.inv(a);
                d.stabilizers
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|&w| {
                                let aw = g.mul(a, w);
                                c.value(a, w).mul(&c.value(aw, ai)).mul(&c.value(a, ai).inv())
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(d)
    }

    pub fn set_cocycle(&mut self, x: usize, c: TwoCocycle) -> Result<()> {
        if c.group_order() != self.stabilizers[x].len() {
            return Err(Error::validation(format!("κ_{x} must live on a group of order {}", self.stabilizers[x].len())));
        }
        self.cocycles[x] = c;
        Ok(())
    }

    /// Set c_{γ,x}(w) for w ∈ Γ_x given as a parent index.
    pub fn set_correction(&mut self, g: usize, x: usize, w: usize, value: RootOfUnity) -> Result<()> {
        let i = self.stabilizers[x]
            .binary_search(&w)
            .map_err(|_| Error::validation(format!("{w} does not fix point {x}")))?;
        self.corrections[g][x][i] = value;
        Ok(())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn stabilizer(&self, x: usize) -> &[usize] {
        &self.stabilizers[x]
    }

    pub fn cocycle(&self, x: usize) -> &TwoCocycle {
        &self.cocycles[x]
    }

    /// Γ_x as a group in its own right.
    pub fn stabilizer_group(&self, x: usize) -> FiniteGroup {
        let s = self.group.subgroup(&self.stabilizers[x]);
        self.group.subgroup_as_group(&s).0
    }

    /// Orbits of X, each sorted, listed by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let k = self.labels.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for x in 0..k {
            if seen[x] {
                continue;
            }
            let mut o: Vec<usize> = (0..self.group.order()).map(|g| self.action[g][x]).collect();
            o.sort_unstable();
            o.dedup();
            for &y in &o {
                seen[y] = true;
            }
            out.push(o);
        }
        out
    }

    /// Each φ_{γ,x} is multiplicative: c(ww')κ_{γx}(γ_*w, γ_*w') = κ_x(w,w') c(w) c(w').
    fn check_homomorphisms(&self) -> Result<()> {
        let g = &self.group;
        for a in 0..g.order() {
            for x in 0..self.labels.len() {
                let y = self.action[a][x];
                let (sx, sy) = (&self.stabilizers[x], &self.stabilizers[y]);
                let c = &self.corrections[a][x];
                for (i, &w) in sx.iter().enumerate() {
                    for (j, &v) in sx.iter().enumerate() {
                        let wv = position(sx, g.mul(w, v));
                        let (pw, pv) = (position(sy, g.conj(a, w)), position(sy, g.conj(a, v)));
                        let lhs = c[wv].mul(&self.cocycles[y].value(pw, pv));
                        let rhs = self.cocycles[x].value(i, j).mul(&c[i]).mul(&c[j]);
                        if lhs != rhs {
                            return Err(Error::validation(format!(
                                "connecting map for ({a}, {x}) is not an algebra map at ({w}, {v})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// φ_{γ',γx} ∘ φ_{γ,x} = φ_{γ'γ,x}; the first failure is the witness.
    pub fn check_composition(&self) -> Result<()> {
        let g = &self.group;
        for b in 0..g.order() {
            for a in 0..g.order() {
                let ba = g.mul(b, a);
                for x in 0..self.labels.len() {
                    let y = self.action[a][x];
                    let sy = &self.stabilizers[y];
                    for (i, &w) in self.stabilizers[x].iter().enumerate() {
                        let lhs = self.corrections[b][y][position(sy, g.conj(a, w))].mul(&self.corrections[a][x][i]);
                        if lhs != self.corrections[ba][x][i] {
                            return Err(Error::CompositionWitness(b, a, x));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Trace vectors of Irr K[Γ_x, κ_x], sorted.
    pub fn irreducible_traces(&self, x: usize) -> Result<Vec<Vec<Cyclotomic>>> {
        twisted_traces(&self.stabilizer_group(x), &self.cocycles[x])
    }

    /// Trace vector of ρ∘φ_{γ,x}⁻¹ on Γ_{γx}.
    pub fn transport(&self, g: usize, x: usize, traces: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let grp = &self.group;
        let y = self.action[g][x];
        let gi = grp.inv(g);
        let sx = &self.stabilizers[x];
        self.stabilizers[y]
            .iter()
            .map(|&v| {
                let i = position(sx, grp.conj(gi, v));
                &traces[i] * &self.corrections[g][x][i].inv().to_cyclotomic()
            })
            .collect()
    }

    /// Both bullets after the definition of connecting maps, plus
    /// multiplicativity. Innerness on Γ_x is checked by its effect on
    /// irreducible modules.
    pub fn validate(&self) -> Result<()> {
        self.check_homomorphisms()?;
        self.check_composition()?;
        for x in 0..self.labels.len() {
            let traces = self.irreducible_traces(x)?;
            for &g in &self.stabilizers[x] {
                for t in &traces {
                    if self.transport(g, x, t) != *t {
                        return Err(Error::validation(format!("φ_({g},{x}) is not inner")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One point (x, ρ) of the extended quotient, as the orbit representative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientPoint {
    pub x: usize,
    pub label: String,
    /// Index of ρ in the sorted list of Irr K[Γ_x, κ_x].
    pub rho: usize,
    pub dim: usize,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedQuotient {
    pub points: Vec<QuotientPoint>,
    /// (orbit representative x, fiber size) per orbit of X.
    pub fibers: Vec<(usize, usize)>,
}

impl ExtendedQuotient {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn dim_of(t: &[Cyclotomic]) -> usize {
    let d = t[0].to_rational().expect("rational degree");
    d.to_integer().try_into().expect("small degree")
}

/// Γ-orbits of pairs (x, ρ) under γ·(x, ρ) = (γx, ρ∘φ_{γ,x}⁻¹). The
/// representative of each orbit has minimal x, then minimal ρ.
pub fn build_extended_quotient(d: &ActionDatum) -> Result<ExtendedQuotient> {
    d.validate()?;
    let k = d.labels.len();
    let traces: Vec<Vec<Vec<Cyclotomic>>> = (0..k).map(|x| d.irreducible_traces(x)).collect::<Result<_>>()?;
    let mut seen: Vec<Vec<bool>> = traces.iter().map(|t| vec![false; t.len()]).collect();
    let mut points = Vec::new();
    let mut fibers = Vec::new();
    for orbit in d.orbits() {
        let x = orbit[0];
        let before = points.len();
        for r in 0..traces[x].len() {
            if seen[x][r] {
                continue;
            }
            let mut size = 0;
            for g in 0..d.group.order() {
                let y = d.action[g][x];
                let moved = d.transport(g, x, &traces[x][r]);
                let s = traces[y]
                    .iter()
                    .position(|t| *t == moved)
                    .ok_or_else(|| Error::validation(format!("transport of ρ{r} from {x} to {y} is not irreducible")))?;
                if !seen[y][s] {
                    seen[y][s] = true;
                    size += 1;
                }
            }
            points.push(QuotientPoint {
                x,
                label: d.labels[x].clone(),
                rho: r,
                dim: dim_of(&traces[x][r]),
                orbit_size: size,
            });
        }
        fibers.push((x, points.len() - before));
    }
    if seen.iter().flatten().any(|&s| !s) {
        return Err(Error::validation("some pair (x, ρ) is not reached from its orbit representative"));
    }
    Ok(ExtendedQuotient { points, fibers })
}

/// Irr K[Γ_x, κ_x] carried to the orbit representative of x, as trace vectors
/// on the representative's isotropy group.
pub fn fiber_over(d: &ActionDatum, x: usize) -> Result<Vec<Vec<Cyclotomic>>> {
    if x >= d.labels.len() {
        return Err(Error::validation(format!("no point {x}")));
    }
    let rep = (0..d.group.order()).map(|g| d.action[g][x]).min().unwrap();
    let g = (0..d.group.order()).find(|&g| d.action[g][x] == rep).unwrap();
    let mut out: Vec<Vec<Cyclotomic>> = d.irreducible_traces(x)?.iter().map(|t| d.transport(g, x, t)).collect();
    out.sort_by(|a, b| dim_of(a).cmp(&dim_of(b)).then_with(|| a.cmp(b)));
    Ok(out)
}

/// JSON form of an [`ActionDatum`]. Stabilizer-local indices refer to the
/// sorted element list of Γ_x.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionDatumSpec {
    pub labels: Vec<String>,
    pub group: GroupSpec,
    /// Images of each point under each generator of the group.
    pub generator_action: Vec<Vec<usize>>,
    /// Optional global cocycle on Γ: [a, b, k] means ζ_m^k.
    #[serde(default)]
    pub global_cocycle: Option<LocalCocycle>,
    /// Per-point cocycles κ_x.
    #[serde(default)]
    pub cocycles: Vec<PointCocycle>,
    /// Entries [γ, x, w, m, k] setting c_{γ,x}(w) = ζ_m^k.
    #[serde(default)]
    pub corrections: Vec<[u64; 5]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalCocycle {
    pub m: u64,
    pub values: Vec<(usize, usize, u64)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointCocycle {
    pub point: usize,
    pub m: u64,
    pub values: Vec<(usize, usize, u64)>,
}

fn table(n: usize, m: u64, values: &[(usize, usize, u64)]) -> Result<Vec<Vec<u64>>> {
    let mut t = vec![vec![0u64; n]; n];
    for &(a, b, k) in values {
        if a >= n || b >= n {
            return Err(Error::validation(format!("cocycle entry ({a}, {b}) out of range")));
        }
        t[a][b] = k % m.max(1);
    }
    Ok(t)
}

impl ActionDatumSpec {
    pub fn build(&self, order_bound: usize) -> Result<ActionDatum> {
        let g = self.group.build(order_bound)?;
        let mut d = ActionDatum::from_generator_action(self.labels.clone(), g.clone(), &self.generator_action)?;
        if let Some(c) = &self.global_cocycle {
            let cc = TwoCocycle::validate(&g, c.m, table(g.order(), c.m, &c.values)?)?;
            d = ActionDatum::from_global_cocycle(self.labels.clone(), g, d.action.clone(), &cc)?;
        }
        for pc in &self.cocycles {
            if pc.point >= d.labels.len() {
                return Err(Error::validation(format!("no point {}", pc.point)));
            }
            let sg = d.stabilizer_group(pc.point);
            let c = TwoCocycle::validate(&sg, pc.m, table(sg.order(), pc.m, &pc.values)?)?;
            d.set_cocycle(pc.point, c)?;
        }
        for &[g, x, w, m, k] in &self.corrections {
            let (g, x) = (g as usize, x as usize);
            if g >= d.group.order() || x >= d.labels.len() {
                return Err(Error::validation(format!("correction ({g}, {x}) out of range")));
            }
            let wi = w as usize;
            let parent = *d.stabilizers[x]
                .get(wi)
                .ok_or_else(|| Error::validation(format!("no element {wi} in Γ_{x}")))?;
            d.set_correction(g, x, parent, RootOfUnity::new(m, k as i64))?;
        }
        Ok(d)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("action datum JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    fn labels(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("x{i}")).collect()
    }

    /// ±1 cocycle on (ℤ/2)² whose twisted algebra is M_2.
    fn klein_cocycle(g: &FiniteGroup) -> TwoCocycle {
        let q8 = catalog::quaternion();
        let (q, _) = q8.quotient(&q8.center()).unwrap();
        let f = crate::groups::iso::find_isomorphism(g, &q).unwrap();
        let reps = q.quotient_representatives().unwrap().to_vec();
        let mut z = q8.center().elements().to_vec();
        z.retain(|&x| x != 0);
        let exps = (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| {
                        let (ra, rb, rab) = (reps[f.apply(a)], reps[f.apply(b)], reps[q.mul(f.apply(a), f.apply(b))]);
                        let n = q8.mul(q8.mul(ra, rb), q8.inv(rab));
                        u64::from(n == z[0])
                    })
                    .collect()
            })
            .collect();
        TwoCocycle::validate(g, 2, exps).unwrap()
    }

    #[test]
    fn point_with_klein_cocycle_has_one_element() {
        let g = catalog::elementary_abelian(2, 2);
        let c = klein_cocycle(&g);
        let d = ActionDatum::from_global_cocycle(labels(1), g.clone(), vec![vec![0]; 4], &c).unwrap();
        let q = build_extended_quotient(&d).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.points[0].dim, 2);
        assert_eq!(fiber_over(&d, 0).unwrap().len(), 1);
    }

    #[test]
    fn trivial_group_recovers_x() {
        let d = ActionDatum::new(labels(5), FiniteGroup::trivial(), vec![(0..5).collect()]).unwrap();
        assert_eq!(build_extended_quotient(&d).unwrap().len(), 5);
    }

    #[test]
    fn free_action_gives_orbits() {
        let g = catalog::cyclic(3);
        let d = ActionDatum::from_generator_action(labels(6), g, &[vec![1, 2, 0, 4, 5, 3]]).unwrap();
        let q = build_extended_quotient(&d).unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.points.iter().all(|p| p.orbit_size == 3));
    }

    #[test]
    fn s3_fixed_point_fiber() {
        let g = catalog::symmetric(3);
        let d = ActionDatum::new(labels(1), g, vec![vec![0]; 6]).unwrap();
        assert_eq!(fiber_over(&d, 0).unwrap().len(), 3);
    }

    #[test]
    fn broken_composition_is_reported() {
        let g = catalog::cyclic(2);
        let mut d = ActionDatum::new(labels(2), g, vec![vec![0, 1], vec![1, 0]]).unwrap();
        d.set_correction(1, 0, 0, RootOfUnity::new(2, 1)).unwrap();
        assert!(build_extended_quotient(&d).is_err());
        // c_{g,x} a nontrivial character of C3 for one generator only.
        let c3 = catalog::cyclic(3);
        let s = c3.generators()[0];
        let mut d2 = ActionDatum::new(labels(1), c3.clone(), vec![vec![0]; 3]).unwrap();
        d2.set_correction(s, 0, s, RootOfUnity::new(3, 1)).unwrap();
        d2.set_correction(s, 0, c3.mul(s, s), RootOfUnity::new(3, 2)).unwrap();
        d2.check_homomorphisms().unwrap();
        assert!(matches!(d2.check_composition(), Err(Error::CompositionWitness(_, _, 0))));
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"labels":["a","b","c"],"group":{"kind":"named","name":"C3"},"generator_action":[[1,2,0]]}"#;
        let d = ActionDatumSpec::from_json(s).unwrap().build(1000).unwrap();
        assert_eq!(build_extended_quotient(&d).unwrap().len(), 1);
    }
}
