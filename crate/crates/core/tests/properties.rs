mod common;

use cuspidal::exactnum::{rat, Field};
use cuspidal::extquot::{build_extended_quotient, ActionDatum};
use cuspidal::groups::{catalog, FiniteGroup};
use cuspidal::lparams::{self, Block, Duality, Enhancement, GroupDescriptor, LParameter, Twist, WeilLabel};
use cuspidal::reps::{character_table, verify_columns, verify_orthogonality};
use cuspidal::springer::{self, GroupType, Partition};
use cuspidal::tga::{dimension_count, twisted_irreps};
use cuspidal::{Cyclotomic, Rational, RootOfUnity};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Numerical value of an exact cyclotomic, computed from its terms.
fn complex(c: &Cyclotomic) -> (f64, f64) {
    let n = c.conductor() as f64;
    c.terms().iter().fold((0.0, 0.0), |(re, im), (k, q)| {
        let t = 2.0 * std::f64::consts::PI * *k as f64 / n;
        let v = q.to_f64().unwrap();
        (re + v * t.cos(), im + v * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(vec![1u64, 3, 4, 5, 8, 12, 15]),
        prop::collection::vec((0i64..60, -5i64..=5, 1i64..=4), 0..5),
    )
        .prop_map(|(n, terms)| {
            terms.into_iter().fold(Cyclotomic::zero(), |acc, (k, p, q)| {
                acc + Cyclotomic::root_of_unity(n, k) * Cyclotomic::from_rational(rat(p, q))
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Cyclotomic::zero());
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, Cyclotomic::from_int(1));
        }
    }

    #[test]
    fn arithmetic_matches_complex_numbers(a in cyclotomic(), b in cyclotomic()) {
        let (x, y) = (complex(&a), complex(&b));
        prop_assert!(close(complex(&(&a + &b)), (x.0 + y.0, x.1 + y.1)));
        prop_assert!(close(complex(&(&a * &b)), cmul(x, y)));
        prop_assert!(close(complex(&a.conj()), (x.0, -x.1)));
    }

    #[test]
    fn conjugation_is_a_ring_automorphism(a in cyclotomic(), b in cyclotomic(), j in 1i64..60) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        let n = 120i64;
        if num_integer::gcd(j, n) == 1 {
            prop_assert_eq!((&a * &b).galois(j), &a.galois(j) * &b.galois(j));
        }
    }

    #[test]
    fn text_round_trip(a in cyclotomic()) {
        let back: Cyclotomic = a.to_text().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rational_parsing(p in -1000i64..1000, q in 1i64..1000) {
        let r = rat(p, q);
        prop_assert_eq!(cuspidal::exactnum::parse_rational(&r.to_string()).unwrap(), r);
    }
}

const GROUPS: [&str; 12] = ["C6", "S3", "Q8", "D8", "A4", "S4", "Dic3", "C2xC2xC2", "D12", "SL23", "Heis3", "C4xC2"];

fn group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(GROUPS.to_vec()).prop_map(|n| catalog::by_name(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_invariants(g in group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let n = g.order();
        let sizes: usize = g.conjugacy_classes().iter().map(Vec::len).sum();
        prop_assert_eq!(sizes, n);
        let gens: Vec<usize> = picks.iter().map(|i| i.index(n)).collect();
        let h = g.subgroup(&gens);
        prop_assert_eq!(n % h.order(), 0);
        let nc = g.normal_closure(&gens);
        prop_assert!(g.is_normal(nc.elements()));
        let (q, proj) = g.quotient(&nc).unwrap();
        prop_assert_eq!(q.order() * nc.order(), n);
        proj.verify(&g, &q).unwrap();
        prop_assert_eq!(proj.kernel(), nc.elements().to_vec());
        prop_assert!(g.is_normal(g.center().elements()));
    }

    #[test]
    fn character_tables(g in group()) {
        let t = character_table(&g);
        prop_assert_eq!(t.len(), g.conjugacy_classes().len());
        prop_assert!(verify_orthogonality(&g, &t));
        prop_assert!(verify_columns(&g, &t));
        let sq = t.iter().fold(Rational::zero(), |acc, c| acc + (c.degree() * c.degree()).to_rational().unwrap());
        prop_assert_eq!(sq, Rational::from_integer(g.order().into()));
    }

    #[test]
    fn twisted_algebras(g in group(), seed in any::<u64>(), big in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = if big && g.order() <= 24 { 4 } else { 2 };
        let c = common::random_cocycle(&mut rng, &g, m);
        let irreps = twisted_irreps(&g, &c).unwrap();
        prop_assert_eq!(dimension_count(&irreps), g.order());
        prop_assert_eq!(irreps.len(), common::regular_class_count(&g, &c));
        for r in &irreps {
            r.verify(&g, &c).unwrap();
        }
        let beta = common::random_cochain(&mut rng, &g, m);
        let twisted = twisted_irreps(&g, &c.twist_by(&g, &beta)).unwrap();
        let dims = |v: &[cuspidal::tga::TgaIrrep]| { let mut d: Vec<usize> = v.iter().map(|r| r.dim()).collect(); d.sort_unstable(); d };
        prop_assert_eq!(dims(&twisted), dims(&irreps));
    }
}

fn action_datum(g: &FiniteGroup, k: usize, perm: &[usize]) -> ActionDatum {
    // Points are k copies of G/⟨g_0⟩ relabelled by `perm`.
    let h = g.generated(&[g.generators()[0]]);
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        let mut c: Vec<usize> = h.iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let m = cosets.len();
    let total = m * k;
    let action = (0..g.order())
        .map(|a| {
            let mut row = vec![0; total];
            for copy in 0..k {
                for (i, c) in cosets.iter().enumerate() {
                    let mut t: Vec<usize> = c.iter().map(|&y| g.mul(a, y)).collect();
                    t.sort_unstable();
                    let j = cosets.iter().position(|d| *d == t).unwrap();
                    row[perm[copy * m + i]] = perm[copy * m + j];
                }
            }
            row
        })
        .collect();
    let labels = (0..total).map(|i| format!("p{i}")).collect();
    ActionDatum::new(labels, g.clone(), action).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extended_quotient_ignores_point_labels(g in group(), k in 1usize..3, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = StdRng::seed_from_u64(seed);
        let m = g.order() / g.generated(&[g.generators()[0]]).len();
        let mut perm: Vec<usize> = (0..m * k).collect();
        let id = action_datum(&g, k, &perm);
        perm.shuffle(&mut rng);
        let shuffled = action_datum(&g, k, &perm);
        let a = build_extended_quotient(&id).unwrap();
        let b = build_extended_quotient(&shuffled).unwrap();
        prop_assert_eq!(a.len(), b.len());
        // One orbit per copy, stabilizer cyclic of order |g_0|.
        prop_assert_eq!(a.len(), k * g.generated(&[g.generators()[0]]).len());
    }

    #[test]
    fn trivial_group_recovers_points(k in 1usize..8) {
        let labels = (0..k).map(|i| format!("x{i}")).collect();
        let d = ActionDatum::new(labels, FiniteGroup::trivial(), vec![(0..k).collect()]).unwrap();
        prop_assert_eq!(build_extended_quotient(&d).unwrap().len(), k);
    }
}

fn group_type() -> impl Strategy<Value = GroupType> {
    prop::sample::select(vec![GroupType::GL, GroupType::Sp, GroupType::O, GroupType::SOOdd, GroupType::SOEven, GroupType::SLmod(6)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partitions_ignore_part_order(mut parts in prop::collection::vec(1usize..7, 1..6), ty in group_type(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let a = Partition::new(parts.clone()).unwrap();
        parts.shuffle(&mut StdRng::seed_from_u64(seed));
        let b = Partition::new(parts).unwrap();
        prop_assert_eq!(&a, &b);
        if a.is_valid_for(ty) {
            let (x, y) = (springer::component_group(ty, &a).unwrap(), springer::component_group(ty, &b).unwrap());
            prop_assert_eq!(x.order(), y.order());
            prop_assert_eq!(x.generator_names(), y.generator_names());
        }
    }

    #[test]
    fn class_lists_are_complete(n in 1usize..11, ty in group_type()) {
        let classes = springer::unipotent_classes(ty, n);
        let valid = Partition::all(n).into_iter().filter(|p| p.is_valid_for(ty)).count();
        prop_assert_eq!(classes.len(), valid);
        if ty == GroupType::GL {
            prop_assert_eq!(classes.len() as u64, springer::partition_counts(n)[n]);
        }
    }

    #[test]
    fn cuspidal_pairs_are_staircases(n in 1usize..13) {
        for ty in [GroupType::Sp, GroupType::O] {
            for p in springer::cuspidal_pairs(ty, n).pairs {
                let mut a = p.lambda.parts().to_vec();
                a.reverse();
                let start = if ty == GroupType::Sp { 2 } else { 1 };
                prop_assert!(a.iter().enumerate().all(|(j, &x)| x == start + 2 * j));
                prop_assert!(a.windows(2).all(|w| p.signs[&w[0]] == -p.signs[&w[1]]));
            }
        }
    }
}

fn type_a(n: usize, d: usize, shape: &[(usize, usize, usize, i64)], k: u64) -> (LParameter, Enhancement) {
    let blocks = shape
        .iter()
        .map(|&(core, dim, a, s)| {
            let label = WeilLabel::new(&format!("c{core}"), dim, Duality::None).with_twist(Twist::real(rat(s, 2)));
            Block::new(label, a, 1)
        })
        .collect();
    (LParameter { group: GroupDescriptor::GLInner { n, d }, blocks }, Enhancement::cyclic(k))
}

/// Shapes (core, dim, a, 2s) with Σ dim·a = n; each core has a fixed dim.
fn gl_shape() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, usize, i64)>, u64)> {
    prop::collection::vec((0usize..3, 1usize..4, -3i64..=3), 1..5).prop_flat_map(|raw| {
        let blocks: Vec<(usize, usize, usize, i64)> = raw.iter().map(|&(core, a, s)| (core, core + 1, a, s)).collect();
        let n: usize = blocks.iter().map(|b| b.1 * b.2).sum();
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        (Just(n), prop::sample::select(divisors), Just(blocks), 0u64..12)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn classifiers_ignore_block_order_and_names((n, d, shape, k) in gl_shape(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let (phi, rho) = type_a(n, d, &shape, k);
        let mut shuffled = shape.clone();
        shuffled.shuffle(&mut StdRng::seed_from_u64(seed));
        let renamed: Vec<_> = shuffled.iter().map(|&(c, dim, a, s)| (c + 7, dim, a, s)).collect();
        let (psi, _) = type_a(n, d, &renamed, k);
        prop_assert_eq!(lparams::is_discrete(&phi), lparams::is_discrete(&psi));
        prop_assert_eq!(lparams::is_bounded(&phi), lparams::is_bounded(&psi));
        prop_assert_eq!(lparams::is_cuspidal(&phi, &rho).unwrap(), lparams::is_cuspidal(&psi, &rho).unwrap());
        prop_assert_eq!(lparams::s_group(&phi).unwrap().s_group().order(), lparams::s_group(&psi).unwrap().s_group().order());
        let a = lparams::cuspidal_support(&phi, &rho).unwrap();
        let b = lparams::cuspidal_support(&psi, &rho).unwrap();
        prop_assert_eq!(a.gl_factors.len(), b.gl_factors.len());
        prop_assert_eq!(a.infinitesimal().values().sum::<usize>(), b.infinitesimal().values().sum::<usize>());
    }

    #[test]
    fn cuspidal_implies_discrete((n, d, shape, k) in gl_shape()) {
        let (phi, rho) = type_a(n, d, &shape, k);
        if lparams::is_cuspidal(&phi, &rho).unwrap() {
            prop_assert!(lparams::is_discrete(&phi));
        }
    }

    #[test]
    fn components_partition_parameters((n, d, shape, k) in gl_shape(), shift in -4i64..=4) {
        let (phi, rho) = type_a(n, d, &shape, k);
        let class = lparams::bernstein_component(&phi, &rho).unwrap();
        // A global unramified twist stays in the same component.
        let moved: Vec<_> = shape.iter().map(|&(c, dim, a, s)| (c, dim, a, s + shift)).collect();
        let (psi, _) = type_a(n, d, &moved, k);
        prop_assert_eq!(lparams::bernstein_component(&psi, &rho).unwrap(), class.clone());
        // The component of the support is the component itself.
        let cd = lparams::cuspidal_support(&phi, &rho).unwrap();
        prop_assert_eq!(lparams::inertial_class(&lparams::support_of_datum(&cd).unwrap()), class);
    }

    #[test]
    fn fibers_keep_boundedness((n, d, shape, k) in gl_shape()) {
        let (phi, rho) = type_a(n, d, &shape, k);
        let class = lparams::bernstein_component(&phi, &rho).unwrap();
        if class.w_order <= 720 {
            let r = lparams::component_extended_quotient(&class, &[], None).unwrap();
            for p in &r.points {
                prop_assert_eq!(p.parameters.len(), p.fiber);
                for ep in &p.parameters {
                    prop_assert!(lparams::is_bounded(&ep.parameter()));
                    prop_assert_eq!(lparams::bernstein_component(&ep.parameter(), &ep.enhancement).unwrap(), class.clone());
                }
            }
        }
    }
}

#[test]
fn unitary_relevance_is_trivial_for_quasi_split_forms() {
    let pi = WeilLabel::new("pi", 1, Duality::ConjOrth);
    let phi = LParameter {
        group: GroupDescriptor::U { n: 4 },
        blocks: vec![Block::new(pi.clone(), 1, 1), Block::new(pi, 3, 1)],
    };
    for e in lparams::all_sign_enhancements(&phi).unwrap() {
        assert!(lparams::is_relevant(&phi, &e, &RootOfUnity::one()).unwrap());
    }
}
