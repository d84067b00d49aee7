//! Ordered-group model of a linear foliation of the torus: the leaves of
//! slope θ order Z² by the sign of x + θ·y, and a family of such fibers over
//! a circle may come back with its orientation reversed.

use crate::bundle_classifier::{
    classify_pair, enumerate_classes, validate_bundle, w1_class, W1Class,
};
use crate::catalog;
use crate::error::{Error, Result};
use crate::frames::hyperplane_to_group;
use crate::ordered_group::{GroupElement, LinearFunctional};
use crate::state_space::unique_state;
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerDemo {
    pub slope: Surd,
    pub functional: LinearFunctional,
    pub totally_ordered: bool,
    pub simple: bool,
    /// Basis of {x : f(x) = 0} ∩ Z², empty for irrational slopes.
    pub kernel: Vec<GroupElement>,
    /// Formula of the state normalized at (1, 0), when it is unique.
    pub unique_state: Option<String>,
    pub subdivisions: usize,
    pub untwisted: W1Class,
    pub twisted: W1Class,
    pub distinct: bool,
    pub class_count: usize,
}

impl KroneckerDemo {
    pub fn is_rational(&self) -> bool {
        self.slope.is_rational()
    }
}

/// Parses the slope as `p/q` or `p/q+r/s√D`.
pub fn parse_slope(input: &str) -> Result<Surd> {
    Surd::parse_with_radicand(input, None)
}

pub fn demo_kronecker(slope: &Surd, subdivisions: usize) -> Result<KroneckerDemo> {
    if subdivisions < 3 {
        return Err(Error::input(format!(
            "the circle needs at least 3 subdivisions, got {subdivisions}"
        )));
    }
    let functional = LinearFunctional::new(vec![Surd::one(), slope.clone()])?;
    let group = hyperplane_to_group(functional.clone())?;
    let totally_ordered = group.is_totally_ordered();
    let unique = if totally_ordered {
        Some(unique_state(&group, &GroupElement::new(vec![1, 0]))?.formula())
    } else {
        None
    };

    let circle = catalog::circle(subdivisions)?;
    let normals = vec![functional.clone(); subdivisions];
    let plain = validate_bundle(circle.clone(), 2, normals.clone(), vec![1; subdivisions])?;
    // a half turn of the hyperplane around the loop reverses the order once
    let mut flips = vec![1; subdivisions];
    flips[subdivisions - 1] = -1;
    let turned = validate_bundle(circle.clone(), 2, normals, flips)?;

    Ok(KroneckerDemo {
        slope: slope.clone(),
        totally_ordered,
        simple: group.is_simple(),
        kernel: group.kernel_lattice(),
        unique_state: unique,
        subdivisions,
        distinct: !classify_pair(&plain, &turned)?,
        untwisted: w1_class(&plain),
        twisted: w1_class(&turned),
        class_count: enumerate_classes(&circle).len(),
        functional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_slope() {
        let d = demo_kronecker(&parse_slope("2/3").unwrap(), 3).unwrap();
        assert!(d.is_rational());
        assert!(!d.totally_ordered);
        assert_eq!(d.kernel, vec![GroupElement::new(vec![2, -3])]);
        assert_eq!(d.unique_state, None);
    }

    #[test]
    fn irrational_slope() {
        let d = demo_kronecker(&parse_slope("√2").unwrap(), 5).unwrap();
        assert!(d.totally_ordered && d.simple);
        assert!(d.kernel.is_empty());
        assert_eq!(d.unique_state.as_deref(), Some("x1+√2·x2"));
        assert!(d.distinct);
        assert_eq!(d.class_count, 2);
        assert!(d.untwisted.is_trivial() && !d.twisted.is_trivial());
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_slope("two").is_err());
        assert!(demo_kronecker(&Surd::one(), 2).is_err());
    }
}
