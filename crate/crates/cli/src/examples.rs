//! Worked examples with their expected outcomes.

use serde::Serialize;
use serde_json::{json, Value};

use cuspidal::clifford::{clifford_bijection, intertwiner_cocycle, trivial_natural};
use cuspidal::lparams::{
    self, Block, Duality, Enhancement, GroupDescriptor, LParameter, WeilLabel,
};
use cuspidal::springer::{self, GroupType};
use cuspidal::tga::{cohomologous, is_coboundary, twisted_irreps};
use cuspidal::{Result, RootOfUnity};

use crate::Case;

#[derive(Serialize)]
pub struct CaseResult {
    pub case: &'static str,
    pub pass: bool,
    pub detail: Value,
}

fn outcome(case: &'static str, r: Result<(bool, Value)>) -> CaseResult {
    match r {
        Ok((pass, detail)) => CaseResult { case, pass, detail },
        Err(e) => CaseResult {
            case,
            pass: false,
            detail: json!({ "error": e.to_string() }),
        },
    }
}

pub fn run(case: Case) -> Vec<CaseResult> {
    let all = matches!(case, Case::All);
    let mut out = Vec::new();
    if all || matches!(case, Case::A) {
        out.push(outcome("A", example_a()));
    }
    if all || matches!(case, Case::B) {
        out.push(outcome("B", example_b()));
    }
    if all || matches!(case, Case::Cusp3) {
        out.push(outcome("cusp3", cusp3()));
    }
    if all || matches!(case, Case::Unitary) {
        out.push(outcome("unitary", unitary()));
    }
    if all || matches!(case, Case::Census) {
        out.push(outcome("census", census()));
    }
    out
}

fn example_a() -> Result<(bool, Value)> {
    let d = springer::example_a_section()?;
    let q8 = d.ambient();
    let classes = q8.conjugacy_classes().len();
    let q = d.quotient();
    let klein = q.order() == 4 && q.is_abelian() && q.exponent() == 2;
    let datum = intertwiner_cocycle(q8, d.normal(), d.eps())?;
    let kappa_nontrivial = !is_coboundary(datum.quotient(), datum.kappa());
    let natural = springer::cocycle_from_section(&d)?;
    let pulled = natural.pullback(datum.inclusion());
    let matches_inverse = cohomologous(datum.quotient(), datum.kappa(), &pulled.inverse()).is_some();
    let dims: Vec<usize> = twisted_irreps(q, &natural)?.iter().map(|r| r.dim()).collect();
    let eps = springer::eps_index(&d).expect("ε is irreducible");
    let m = clifford_bijection(q8, d.normal(), &trivial_natural(q8, d.normal()))?;
    let over_eps: Vec<usize> = m
        .pairs
        .iter()
        .filter(|p| m.orbits[p.orbit].pi == eps)
        .map(|p| p.dim)
        .collect();
    let pass = classes == 5 && klein && kappa_nontrivial && matches_inverse && dims == [2] && over_eps == [2];
    Ok((
        pass,
        json!({
            "conjugacy_classes": classes,
            "quotient_is_klein_four": klein,
            "kappa_nontrivial": kappa_nontrivial,
            "kappa_cohomologous_to_inverse_natural": matches_inverse,
            "twisted_irrep_dimensions": dims,
            "irreps_over_eps": over_eps,
        }),
    ))
}

fn example_b() -> Result<(bool, Value)> {
    let class = lparams::example_b_class();
    let sd = springer::example_a_section()?;
    let r = lparams::component_extended_quotient(&class, &[], Some(&sd))?;
    let nontrivial = r.points.iter().all(|p| !p.cocycle_trivial);
    let pass = r.w_order == 4 && r.w_abelian && nontrivial && r.total() == 1;
    Ok((
        pass,
        json!({
            "w_order": r.w_order,
            "w_abelian": r.w_abelian,
            "cocycle_nontrivial": nontrivial,
            "fiber": r.total(),
        }),
    ))
}

fn cusp3() -> Result<(bool, Value)> {
    let pi = WeilLabel::new("pi", 5, Duality::None);
    let phi = LParameter {
        group: GroupDescriptor::GLInner { n: 10, d: 2 },
        blocks: vec![Block::new(pi, 2, 1)],
    };
    let s_order = lparams::s_group(&phi)?.s_group().order();
    let cusp = lparams::is_cuspidal(&phi, &Enhancement::cyclic(1))?;
    let trivial = lparams::is_cuspidal(&phi, &Enhancement::cyclic(0))?;
    let chi = WeilLabel::new("chi", 1, Duality::None);
    let gl1d = LParameter {
        group: GroupDescriptor::GLInner { n: 2, d: 2 },
        blocks: vec![Block::new(chi, 2, 1)],
    };
    let relevant = lparams::is_relevant(&gl1d, &Enhancement::cyclic(1), &RootOfUnity::new(2, 1))?;
    let pass = s_order == 2 && cusp && !trivial && relevant;
    Ok((
        pass,
        json!({
            "s_group_order": s_order,
            "cuspidal_with_order_two_enhancement": cusp,
            "cuspidal_with_trivial_enhancement": trivial,
            "gl1_quaternion_relevant": relevant,
        }),
    ))
}

fn unitary() -> Result<(bool, Value)> {
    let pi = WeilLabel::new("pi", 1, Duality::ConjOrth);
    let phi = LParameter {
        group: GroupDescriptor::U { n: 4 },
        blocks: vec![Block::new(pi.clone(), 1, 1), Block::new(pi, 3, 1)],
    };
    let mut cuspidal = Vec::new();
    for e in lparams::all_sign_enhancements(&phi)? {
        if lparams::is_cuspidal(&phi, &e)? {
            cuspidal.push(e.signs);
        }
    }
    let alternating = cuspidal.len() == 2
        && cuspidal
            .iter()
            .all(|s| s.get("z:pi:1").copied().unwrap_or(0) * s.get("z:pi:3").copied().unwrap_or(0) == -1);
    Ok((alternating, json!({ "cuspidal_sign_patterns": cuspidal })))
}

fn census() -> Result<(bool, Value)> {
    let mut failures = Vec::new();
    let mut checked = 0;
    let ranges = [(GroupType::Sp, (2..=16).step_by(2).collect::<Vec<_>>()), (GroupType::SOOdd, (1..=17).step_by(2).collect()), (GroupType::GL, (1..=20).collect())];
    for (ty, ns) in ranges {
        for n in ns {
            let c = springer::census(ty, n)?;
            checked += 1;
            if !c.balanced() {
                failures.push(json!({ "type": ty.to_string(), "n": n, "lhs": c.lhs, "rhs": c.rhs }));
            }
        }
    }
    Ok((failures.is_empty(), json!({ "ranks_checked": checked, "failures": failures })))
}
