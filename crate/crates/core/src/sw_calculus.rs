//! Formal Stiefel–Whitney classes in H*(K; Z/2): Whitney products, inverse
//! classes, the vanishing forced by sections, and the coefficient group of
//! the frame-extension obstruction.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2_complex::{
    check_cocycle, cohomology, cup_product, CohomologyBasis, RawCochain, SimplicialComplex,
    Z2Cochain,
};

/// A complex together with canonical cohomology bases in every degree.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    complex: SimplicialComplex,
    bases: Vec<CohomologyBasis>,
}

impl PartialEq for CohomologyRing {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex
    }
}

impl CohomologyRing {
    pub fn new(complex: SimplicialComplex) -> Arc<Self> {
        let bases = (0..=complex.dim())
            .map(|p| cohomology(&complex, p))
            .collect();
        Arc::new(CohomologyRing { complex, bases })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn top_degree(&self) -> usize {
        self.complex.dim()
    }

    pub fn basis(&self, p: usize) -> Option<&CohomologyBasis> {
        self.bases.get(p)
    }

    pub fn unit(&self) -> Z2Cochain {
        Z2Cochain::ones(&self.complex, 0)
    }

    pub fn zero(&self, p: usize) -> Z2Cochain {
        Z2Cochain::zero(&self.complex, p)
    }

    /// Canonical representative of the class of a cocycle.
    pub fn normalize(&self, c: &Z2Cochain) -> Result<Z2Cochain> {
        check_cocycle(&self.complex, c)?;
        match self.bases.get(c.dim()) {
            Some(b) => b.normal_form(c),
            None => Ok(self.zero(c.dim())),
        }
    }

    /// Cup product of classes; zero above the top degree.
    pub fn cup(&self, a: &Z2Cochain, b: &Z2Cochain) -> Result<Z2Cochain> {
        let p = a.dim() + b.dim();
        if p > self.top_degree() {
            return Ok(self.zero(p));
        }
        self.normalize(&cup_product(&self.complex, a, b)?)
    }

    pub fn power(&self, a: &Z2Cochain, n: usize) -> Result<Z2Cochain> {
        let mut out = self.unit();
        for _ in 0..n {
            out = self.cup(&out, a)?;
        }
        Ok(out)
    }
}

/// Total class 1 + w₁ + … + w_N, stored as canonical representatives in
/// every degree 0..=dim K.
#[derive(Clone, Debug)]
pub struct TotalSWClass {
    ring: Arc<CohomologyRing>,
    rank_cap: usize,
    classes: Vec<Z2Cochain>,
}

impl PartialEq for TotalSWClass {
    fn eq(&self, other: &Self) -> bool {
        self.rank_cap == other.rank_cap && self.same_classes(other)
    }
}

impl TotalSWClass {
    /// `classes[i]` is the degree-i entry; missing degrees are zero.
    ///
    /// Rejects a degree-0 entry other than the unit, non-cocycles, and
    /// nonzero classes above `rank_cap`.
    pub fn new(
        ring: Arc<CohomologyRing>,
        rank_cap: usize,
        classes: Vec<Z2Cochain>,
    ) -> Result<Self> {
        let top = ring.top_degree();
        if classes.first().is_some_and(|c0| *c0 != ring.unit()) {
            return Err(Error::input("degree-0 entry must be the unit class"));
        }
        let mut normalized = Vec::with_capacity(top + 1);
        normalized.push(ring.unit());
        for p in 1..=top {
            let c = match classes.get(p) {
                Some(c) => {
                    Error::check_len(p, c.dim())?;
                    ring.normalize(c)?
                }
                None => ring.zero(p),
            };
            if p > rank_cap && !c.is_zero() {
                return Err(Error::input(format!(
                    "degree {p} class is nonzero but the bundle rank is {rank_cap}"
                )));
            }
            normalized.push(c);
        }
        if let Some((p, _)) = classes
            .iter()
            .enumerate()
            .skip(top + 1)
            .find(|(_, c)| !c.is_empty())
        {
            return Err(Error::input(format!(
                "degree {p} exceeds the complex dimension {top}"
            )));
        }
        Ok(TotalSWClass {
            ring,
            rank_cap,
            classes: normalized,
        })
    }

    /// The class 1 + w₁.
    pub fn from_first(ring: Arc<CohomologyRing>, rank_cap: usize, w1: Z2Cochain) -> Result<Self> {
        let unit = ring.unit();
        Self::new(ring, rank_cap, vec![unit, w1])
    }

    /// Like [`TotalSWClass::new`], additionally requiring the classes killed
    /// by `sections` independent sections to vanish.
    pub fn with_sections(
        ring: Arc<CohomologyRing>,
        rank_cap: usize,
        sections: usize,
        classes: Vec<Z2Cochain>,
    ) -> Result<Self> {
        let w = Self::new(ring, rank_cap, classes)?;
        w.check_sections(sections)?;
        Ok(w)
    }

    pub fn ring(&self) -> &Arc<CohomologyRing> {
        &self.ring
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.ring.complex()
    }

    pub fn rank_cap(&self) -> usize {
        self.rank_cap
    }

    pub fn classes(&self) -> &[Z2Cochain] {
        &self.classes
    }

    /// Degree-i entry; zero above the complex dimension.
    pub fn degree(&self, i: usize) -> Z2Cochain {
        self.classes
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero(i))
    }

    /// Degrees ≥ 1 carrying a nonzero class.
    pub fn nonzero_degrees(&self) -> Vec<usize> {
        (1..self.classes.len())
            .filter(|&i| !self.classes[i].is_zero())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.nonzero_degrees().is_empty()
    }

    /// Equality of all entries in cohomology, ignoring the rank cap.
    pub fn same_classes(&self, other: &TotalSWClass) -> bool {
        *self.ring == *other.ring && self.classes == other.classes
    }

    pub fn check_sections(&self, sections: usize) -> Result<()> {
        for p in vanish_from_sections(self.rank_cap, sections)? {
            if !self.degree(p).is_zero() {
                return Err(Error::input(format!(
                    "w_{p} must vanish with {sections} independent sections in rank {}",
                    self.rank_cap
                )));
            }
        }
        Ok(())
    }

    fn same_ring(&self, other: &TotalSWClass) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::input("total classes live on different complexes"))
        }
    }

    pub fn to_raw(&self) -> RawTotalClass {
        let k = self.complex();
        let mut classes = BTreeMap::new();
        classes.insert("0".to_string(), RawEntry::Unit(UnitTag::Unit));
        for p in self.nonzero_degrees() {
            classes.insert(p.to_string(), RawEntry::Class(self.classes[p].to_raw(k)));
        }
        RawTotalClass {
            rank: self.rank_cap,
            classes,
        }
    }

    pub fn from_raw(ring: Arc<CohomologyRing>, raw: &RawTotalClass) -> Result<Self> {
        let mut classes: Vec<Option<Z2Cochain>> = Vec::new();
        for (key, entry) in &raw.classes {
            let p: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("degree key {key:?} is not a number")))?;
            let c = match entry {
                RawEntry::Unit(_) if p == 0 => ring.unit(),
                RawEntry::Unit(_) => {
                    return Err(Error::input(format!(
                        "\"unit\" is only valid in degree 0, not {p}"
                    )))
                }
                RawEntry::Class(rc) => {
                    Error::check_len(p, rc.dim)?;
                    Z2Cochain::from_raw(ring.complex(), rc)?
                }
            };
            if classes.len() <= p {
                classes.resize(p + 1, None);
            }
            classes[p] = Some(c);
        }
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(p, c)| c.unwrap_or_else(|| if p == 0 { ring.unit() } else { ring.zero(p) }))
            .collect();
        Self::new(ring, raw.rank, classes)
    }
}

impl fmt::Display for TotalSWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for p in self.nonzero_degrees() {
            write!(f, " + w{p}{:?}", self.classes[p].support(self.complex()))?;
        }
        Ok(())
    }
}

/// Total class on disk: `{"rank": k, "classes": {"0": "unit", "1": {cochain}}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTotalClass {
    pub rank: usize,
    pub classes: BTreeMap<String, RawEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawEntry {
    Unit(UnitTag),
    Class(RawCochain),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitTag {
    Unit,
}

pub fn trivial_bundle_class(ring: Arc<CohomologyRing>, rank: usize) -> TotalSWClass {
    TotalSWClass::new(ring, rank, Vec::new()).expect("unit class is valid")
}

/// w(ξ ⊕ η) = w(ξ)·w(η).
pub fn whitney_product(xi: &TotalSWClass, eta: &TotalSWClass) -> Result<TotalSWClass> {
    xi.same_ring(eta)?;
    let ring = &xi.ring;
    let mut classes = vec![ring.unit()];
    for i in 1..=ring.top_degree() {
        let mut acc = ring.zero(i);
        for j in 0..=i {
            acc = acc.add(&ring.cup(&xi.degree(j), &eta.degree(i - j))?)?;
        }
        classes.push(acc);
    }
    TotalSWClass::new(ring.clone(), xi.rank_cap + eta.rank_cap, classes)
}

/// The inverse w̄ with w·w̄ = 1 through degree `truncation`, via
/// w̄ᵢ = Σ_{j=1..i} wⱼ ∪ w̄_{i−j}. Entries above `truncation` are zero and the
/// rank cap of the result is `truncation`.
pub fn inverse_class(w: &TotalSWClass, truncation: usize) -> Result<TotalSWClass> {
    let ring = &w.ring;
    let top = truncation.min(ring.top_degree());
    let mut bar = vec![ring.unit()];
    for i in 1..=top {
        let mut acc = ring.zero(i);
        for j in 1..=i {
            acc = acc.add(&ring.cup(&w.degree(j), &bar[i - j])?)?;
        }
        bar.push(acc);
    }
    TotalSWClass::new(ring.clone(), truncation, bar)
}

/// Degrees k−m+1..=k, whose classes vanish when a rank-k bundle has m
/// independent sections.
pub fn vanish_from_sections(rank: usize, sections: usize) -> Result<Vec<usize>> {
    if sections > rank {
        return Err(Error::input(format!(
            "{sections} independent sections cannot exist in rank {rank}"
        )));
    }
    Ok((rank - sections + 1..=rank).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientGroupTag {
    NoObstruction,
    IntegersZ,
    IntegersMod2,
}

impl fmt::Display for CoefficientGroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientGroupTag::NoObstruction => "none",
            CoefficientGroupTag::IntegersZ => "Z",
            CoefficientGroupTag::IntegersMod2 => "Z2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionGroup {
    pub tag: CoefficientGroupTag,
    /// Set when the homology of the Stiefel manifold in degree k−m would
    /// assign the other group.
    pub note: Option<String>,
}

/// Coefficient group of the obstruction to extending an m-frame field over
/// a ν-cell of a rank-k bundle: none for ν ≤ k−m, otherwise Z for odd ν and
/// Z/2 for even ν.
pub fn obstruction_coefficient_group(
    nu: usize,
    rank: usize,
    frame: usize,
) -> Result<ObstructionGroup> {
    if frame == 0 || frame > rank {
        return Err(Error::input(format!(
            "frame size {frame} must lie in 1..={rank}"
        )));
    }
    let gap = rank - frame;
    if nu <= gap {
        return Ok(ObstructionGroup {
            tag: CoefficientGroupTag::NoObstruction,
            note: None,
        });
    }
    let tag = if nu % 2 == 1 {
        CoefficientGroupTag::IntegersZ
    } else {
        CoefficientGroupTag::IntegersMod2
    };
    let homology_tag = if gap.is_multiple_of(2) {
        CoefficientGroupTag::IntegersZ
    } else {
        CoefficientGroupTag::IntegersMod2
    };
    let note = (tag != homology_tag).then(|| {
        format!(
            "parity rule gives {tag} in degree {nu}, while H_{gap}(V_{frame}(R^{rank})) is {homology_tag}"
        )
    });
    Ok(ObstructionGroup { tag, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ring_with_generator(k: SimplicialComplex) -> (Arc<CohomologyRing>, Z2Cochain) {
        let ring = CohomologyRing::new(k);
        let a = ring.basis(1).unwrap().representatives()[0].clone();
        (ring, a)
    }

    #[test]
    fn products_on_circle() {
        let (ring, a) = ring_with_generator(catalog::circle(3).unwrap());
        let one = trivial_bundle_class(ring.clone(), 1);
        let w = TotalSWClass::from_first(ring.clone(), 1, a.clone()).unwrap();
        assert!(whitney_product(&one, &w).unwrap().same_classes(&w));
        let sq = whitney_product(&w, &w).unwrap();
        assert!(sq.is_trivial());
        assert_eq!(sq.rank_cap(), 2);
    }

    #[test]
    fn rp2_inverse() {
        let (ring, a) = ring_with_generator(catalog::projective_plane());
        let w = TotalSWClass::from_first(ring.clone(), 1, a.clone()).unwrap();
        let bar = inverse_class(&w, 2).unwrap();
        assert_eq!(bar.degree(1), a);
        let a2 = ring.cup(&a, &a).unwrap();
        assert!(!a2.is_zero());
        assert_eq!(bar.degree(2), a2);
        assert!(whitney_product(&w, &bar).unwrap().is_trivial());
        let sq = whitney_product(&w, &w).unwrap();
        assert_eq!(sq.nonzero_degrees(), vec![2]);
    }

    #[test]
    fn rank_cap_enforced() {
        let (ring, a) = ring_with_generator(catalog::projective_plane());
        let a2 = ring.cup(&a, &a).unwrap();
        let unit = ring.unit();
        assert!(
            TotalSWClass::new(ring.clone(), 1, vec![unit.clone(), a.clone(), a2.clone()]).is_err()
        );
        assert!(TotalSWClass::new(ring.clone(), 2, vec![unit.clone(), a.clone(), a2]).is_ok());
        assert!(TotalSWClass::new(ring.clone(), 0, vec![unit, a.clone()]).is_err());
        assert!(TotalSWClass::new(ring.clone(), 1, vec![ring.zero(0), a]).is_err());
    }

    #[test]
    fn sections() {
        assert_eq!(vanish_from_sections(3, 2).unwrap(), vec![2, 3]);
        assert_eq!(vanish_from_sections(5, 4).unwrap(), vec![2, 3, 4, 5]);
        assert!(vanish_from_sections(4, 0).unwrap().is_empty());
        assert!(vanish_from_sections(2, 3).is_err());
    }

    #[test]
    fn obstruction_groups() {
        use CoefficientGroupTag::*;
        assert_eq!(
            obstruction_coefficient_group(1, 5, 3).unwrap().tag,
            NoObstruction
        );
        let g = obstruction_coefficient_group(3, 3, 2).unwrap();
        assert_eq!(g.tag, IntegersZ);
        assert!(g.note.is_some());
        assert_eq!(
            obstruction_coefficient_group(4, 4, 3).unwrap().tag,
            IntegersMod2
        );
        for (k, m) in [(3, 2), (5, 2), (6, 3), (4, 4)] {
            let first = obstruction_coefficient_group(k - m + 1, k, m).unwrap();
            assert_eq!(first.note, None);
        }
        assert!(obstruction_coefficient_group(1, 2, 0).is_err());
    }

    #[test]
    fn raw_round_trip() {
        let (ring, a) = ring_with_generator(catalog::torus());
        let w = TotalSWClass::from_first(ring.clone(), 2, a).unwrap();
        let raw = w.to_raw();
        let json = serde_json::to_string(&raw).unwrap();
        let back: RawTotalClass = serde_json::from_str(&json).unwrap();
        assert_eq!(TotalSWClass::from_raw(ring, &back).unwrap(), w);
        assert!(json.contains("\"unit\""));
    }
}
