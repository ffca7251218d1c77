//! JSON group descriptions.

use serde::{Deserialize, Serialize};

use super::{catalog, FiniteGroup, MonomialMatrix, Perm, Realization};
use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;

/// A cyclotomic entry given either as text or in the JSON object form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CycValue {
    Text(String),
    Json(Cyclotomic),
}

impl CycValue {
    pub fn value(&self) -> Result<Cyclotomic> {
        match self {
            CycValue::Text(s) => s.parse(),
            CycValue::Json(c) => Ok(c.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Perm {
        generators: Vec<Vec<u32>>,
    },
    Monomial {
        dim: usize,
        generators: Vec<Vec<(usize, usize, CycValue)>>,
    },
    Table {
        table: Vec<Vec<usize>>,
    },
    Named {
        name: String,
    },
}

impl GroupSpec {
    pub fn build(&self, order_bound: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Perm { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| Perm::from_images(g.clone()))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_permutations(&gens, order_bound)
            }
            GroupSpec::Monomial { dim, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| {
                        let items = g
                            .iter()
                            .map(|(r, c, v)| Ok((*r, *c, v.value()?)))
                            .collect::<Result<Vec<_>>>()?;
                        MonomialMatrix::from_sparse(*dim, &items)
                    })
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_monomials(&gens, order_bound)
            }
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()),
            GroupSpec::Named { name } => catalog::by_name(name),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("group JSON: {e}")))
    }
}

/// Summary used in reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSummary {
    pub order: usize,
    pub exponent: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub class_sizes: Vec<usize>,
    pub generators: Vec<usize>,
    pub realization: String,
}

pub fn summarize(g: &FiniteGroup) -> GroupSummary {
    let realization = match g.realization() {
        Realization::Permutations { degree, .. } => format!("permutations of degree {degree}"),
        Realization::Monomial { dim, .. } => format!("monomial matrices of size {dim}"),
        Realization::DirectProduct { left, right } => format!("direct product {left} x {right}"),
        Realization::Quotient { .. } => "quotient".to_string(),
        Realization::CentralExtension { m, base } => format!("central extension of order-{base} group by mu_{m}"),
        Realization::Subgroup { .. } => "subgroup".to_string(),
        Realization::Table => "table".to_string(),
    };
    GroupSummary {
        order: g.order(),
        exponent: g.exponent(),
        abelian: g.is_abelian(),
        center_order: g.center().order(),
        class_sizes: g.conjugacy_classes().iter().map(|c| c.len()).collect(),
        generators: g.generators().to_vec(),
        realization,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_ORDER_BOUND;

    #[test]
    fn parse_monomial_q8() {
        let s = r#"{"kind":"monomial","dim":2,"generators":[
            [[0,0,"1*z(4)^1"],[1,1,"-1*z(4)^1"]],
            [[0,1,{"e":4,"coeffs":[[1,"1"]]}],[1,0,"1*z(4)^1"]]]}"#;
        let g = GroupSpec::from_json(s).unwrap().build(DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(summarize(&g).center_order, 2);
    }

    #[test]
    fn parse_perm_and_named() {
        let g = GroupSpec::from_json(r#"{"kind":"perm","generators":[[1,0,2],[0,2,1]]}"#)
            .unwrap()
            .build(DEFAULT_ORDER_BOUND)
            .unwrap();
        assert_eq!(g.order(), 6);
        let h = GroupSpec::from_json(r#"{"kind":"named","name":"S4"}"#)
            .unwrap()
            .build(DEFAULT_ORDER_BOUND)
            .unwrap();
        assert_eq!(h.order(), 24);
    }
}
