//! JSON shapes shared by the command-line tool.
//!
//! Group: `{"rank": 2, "cone": {"type": "hyperplane", "radicand": 2,
//! "normal": ["1", "0+1√"]}}` or `{"rank": 2, "cone": {"type":
//! "simplicial", "basis": [[1,0],[0,1]]}}`, with an optional `"unit"`.

use serde::{Deserialize, Serialize};

pub use crate::bundle_classifier::RawBundle;
pub use crate::frames::RawFrame;
pub use crate::gf2_complex::{RawCochain, RawComplex};
pub use crate::sw_calculus::{RawEntry, RawTotalClass};

use crate::error::{Error, Result};
use crate::ordered_group::{Cone, GroupElement, LinearFunctional, OrderedGroup, SimplicialBasis};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroup {
    pub rank: usize,
    pub cone: RawCone,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RawCone {
    Hyperplane {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radicand: Option<u64>,
        normal: Vec<String>,
    },
    Simplicial {
        basis: Vec<Vec<i64>>,
    },
}

/// A group read from disk with the order unit to use for states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub group: OrderedGroup,
    pub unit: GroupElement,
}

impl RawGroup {
    pub fn parse(&self) -> Result<GroupSpec> {
        let group = match &self.cone {
            RawCone::Hyperplane { radicand, normal } => {
                OrderedGroup::hyperplane(LinearFunctional::parse(normal, *radicand)?)
            }
            RawCone::Simplicial { basis } => {
                OrderedGroup::simplicial(SimplicialBasis::new(basis.clone())?)
            }
        };
        Error::check_len(self.rank, group.rank())?;
        let unit = match &self.unit {
            Some(u) => {
                Error::check_len(self.rank, u.len())?;
                GroupElement::new(u.clone())
            }
            None => default_unit(&group),
        };
        Ok(GroupSpec { group, unit })
    }

    pub fn from_group(group: &OrderedGroup, unit: Option<&GroupElement>) -> Self {
        let cone = match group.cone() {
            Cone::Hyperplane(f) => RawCone::Hyperplane {
                radicand: None,
                normal: f.coeffs().iter().map(ToString::to_string).collect(),
            },
            Cone::Simplicial(b) => RawCone::Simplicial {
                basis: b.matrix().to_vec(),
            },
        };
        RawGroup {
            rank: group.rank(),
            cone,
            unit: unit.map(|u| u.coords().to_vec()),
        }
    }
}

/// For a simplicial cone the sum of its generators; for a hyperplane cone
/// the first signed standard basis vector on the positive side.
pub fn default_unit(group: &OrderedGroup) -> GroupElement {
    match group.cone() {
        Cone::Simplicial(b) => b
            .generators()
            .iter()
            .fold(GroupElement::zero(group.rank()), |acc, g| &acc + g),
        Cone::Hyperplane(f) => {
            let (i, c) = f
                .coeffs()
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .expect("functionals are nonzero");
            let e = GroupElement::unit(group.rank(), i);
            if c.is_positive() {
                e
            } else {
                -&e
            }
        }
    }
}
