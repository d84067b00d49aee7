//! Finite-rank ordered abelian groups `(Zᵏ, G⁺)`.
//!
//! Two kinds of positive cone are supported:
//!
//! * **hyperplane** cones `G⁺ = {x : f(x) > 0} ∪ {0}` for a nonzero linear
//!   functional `f` with exact real coefficients. Nonzero lattice points on
//!   the hyperplane `f = 0` are incomparable to `0`.
//! * **simplicial** cones `G⁺ = Σ Z⁺·bᵢ` spanned by the columns of a
//!   unimodular integer matrix.
//!
//! Order ideals are directed convex subgroups: a subgroup `H` with
//! `H = H⁺ − H⁺` such that `x ≤ z ≤ y` with `x, y ∈ H` forces `z ∈ H`. In a
//! simplicial group these are exactly the spans of subsets of the cone basis;
//! a hyperplane group has only the two trivial ones.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::surd::Surd;

/// An element of `Zᵏ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement(coords)
    }

    pub fn zero(rank: usize) -> Self {
        GroupElement(vec![0; rank])
    }

    /// The `i`-th standard basis vector of `Zᵏ`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        GroupElement(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, n: i64) -> GroupElement {
        GroupElement(self.0.iter().map(|&x| x * n).collect())
    }

    fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

/// A nonzero linear functional `x ↦ Σ cᵢ·xᵢ` on `Zᵏ` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Surd>", into = "Vec<Surd>")]
pub struct LinearFunctional {
    coeffs: Vec<Surd>,
}

impl LinearFunctional {
    pub fn new(coeffs: Vec<Surd>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::input("functional needs at least one coefficient"));
        }
        if coeffs.iter().all(Surd::is_zero) {
            return Err(Error::input("functional is identically zero"));
        }
        Ok(LinearFunctional { coeffs })
    }

    /// Parses coefficient strings; a bare `√` refers to `radicand`.
    pub fn parse(coeffs: &[impl AsRef<str>], radicand: Option<u64>) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|c| Surd::parse_with_radicand(c.as_ref(), radicand))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn coeffs(&self) -> &[Surd] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &GroupElement) -> Surd {
        self.coeffs
            .iter()
            .zip(x.coords())
            .filter(|(_, &xi)| xi != 0)
            .map(|(c, &xi)| c * &Surd::from_integer(xi))
            .sum()
    }

    pub fn checked_eval(&self, x: &GroupElement) -> Result<Surd> {
        Error::check_len(self.rank(), x.rank())?;
        Ok(self.eval(x))
    }

    /// `self / c` for nonzero `c`.
    pub fn divide(&self, c: &Surd) -> Result<Self> {
        let inv = c.inv().ok_or_else(|| Error::input("division by zero"))?;
        Self::new(self.coeffs.iter().map(|x| x * &inv).collect())
    }

    pub fn negated(&self) -> Self {
        LinearFunctional {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Every squarefree radicand occurring in some coefficient.
    pub fn radicands(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.coeffs.iter().flat_map(|c| c.radicands()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// One rational row per basis element `1, √m₁, √m₂, …` of the field:
    /// `f(x) = 0` iff `x` is orthogonal to every row.
    pub fn component_rows(&self) -> Vec<Vec<BigRational>> {
        std::iter::once(1)
            .chain(self.radicands())
            .map(|m| self.coeffs.iter().map(|c| c.coefficient(m)).collect())
            .collect()
    }

    /// True when some coefficient ratio is irrational, i.e. the hyperplane is
    /// not spanned by rational directions of codimension one.
    pub fn is_irrational_direction(&self) -> bool {
        linalg::rank(&self.component_rows()) > 1
    }
}

impl TryFrom<Vec<Surd>> for LinearFunctional {
    type Error = Error;
    fn try_from(v: Vec<Surd>) -> Result<Self> {
        LinearFunctional::new(v)
    }
}

impl From<LinearFunctional> for Vec<Surd> {
    fn from(f: LinearFunctional) -> Self {
        f.coeffs
    }
}

impl fmt::Display for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(Surd::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Basis of a simplicial cone: the columns of a unimodular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialBasis {
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

impl SimplicialBasis {
    /// `matrix` is given row by row; the cone generators are its columns.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let k = matrix.len();
        for row in &matrix {
            Error::check_len(k, row.len())?;
        }
        if k == 0 {
            return Ok(SimplicialBasis {
                matrix,
                inverse: Vec::new(),
            });
        }
        let rational = linalg::to_rational_matrix(&matrix);
        let det = linalg::determinant(&rational);
        if det.abs() != BigRational::from_integer(1.into()) {
            return Err(Error::input(format!(
                "simplicial basis must be unimodular, determinant is {det}"
            )));
        }
        let inverse = linalg::inverse(&rational)
            .expect("unimodular matrices are invertible")
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        x.to_integer()
                            .to_i64()
                            .ok_or_else(|| Error::input("basis inverse overflows i64"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialBasis { matrix, inverse })
    }

    pub fn standard(k: usize) -> Self {
        let id: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        SimplicialBasis {
            matrix: id.clone(),
            inverse: id,
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// The `i`-th cone generator (column `i`).
    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement(self.matrix.iter().map(|row| row[i]).collect())
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Coordinates of `x` with respect to the cone basis: `B⁻¹·x`.
    pub fn coordinates(&self, x: &GroupElement) -> Vec<i128> {
        self.inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.coords())
                    .map(|(&a, &b)| i128::from(a) * i128::from(b))
                    .sum()
            })
            .collect()
    }

    /// Row `i` of `B⁻¹`, the `i`-th coordinate projection.
    pub fn coordinate_row(&self, i: usize) -> &[i64] {
        &self.inverse[i]
    }

    pub fn is_standard(&self) -> bool {
        self.matrix == Self::standard(self.rank()).matrix
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cone {
    Hyperplane(LinearFunctional),
    Simplicial(SimplicialBasis),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderRelation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// `Zᵏ` together with a positive cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGroup {
    rank: usize,
    cone: Cone,
}

impl OrderedGroup {
    pub fn hyperplane(functional: LinearFunctional) -> Self {
        OrderedGroup {
            rank: functional.rank(),
            cone: Cone::Hyperplane(functional),
        }
    }

    pub fn simplicial(basis: SimplicialBasis) -> Self {
        OrderedGroup {
            rank: basis.rank(),
            cone: Cone::Simplicial(basis),
        }
    }

    /// `Zᵏ` with the cone of vectors with nonnegative entries.
    pub fn standard_simplicial(k: usize) -> Self {
        Self::simplicial(SimplicialBasis::standard(k))
    }

    /// The zero group.
    pub fn trivial() -> Self {
        Self::standard_simplicial(0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn functional(&self) -> Option<&LinearFunctional> {
        match &self.cone {
            Cone::Hyperplane(f) => Some(f),
            Cone::Simplicial(_) => None,
        }
    }

    pub fn basis(&self) -> Option<&SimplicialBasis> {
        match &self.cone {
            Cone::Simplicial(b) => Some(b),
            Cone::Hyperplane(_) => None,
        }
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        Error::check_len(self.rank, x.rank())
    }

    pub fn is_positive(&self, x: &GroupElement) -> Result<bool> {
        self.check(x)?;
        Ok(self.contains_unchecked(x))
    }

    fn contains_unchecked(&self, x: &GroupElement) -> bool {
        if x.is_zero() {
            return true;
        }
        match &self.cone {
            Cone::Hyperplane(f) => f.eval(x).is_positive(),
            Cone::Simplicial(b) => b.coordinates(x).iter().all(|&c| c >= 0),
        }
    }

    pub fn compare(&self, x: &GroupElement, y: &GroupElement) -> Result<OrderRelation> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Ok(OrderRelation::Equal);
        }
        let up = self.contains_unchecked(&(y - x));
        let down = self.contains_unchecked(&(x - y));
        Ok(match (up, down) {
            (true, false) => OrderRelation::Less,
            (false, true) => OrderRelation::Greater,
            // both only if x == y, by antisymmetry
            (true, true) => OrderRelation::Equal,
            (false, false) => OrderRelation::Incomparable,
        })
    }

    /// `x ≤ y`.
    pub fn le(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.contains_unchecked(&(y - x)))
    }

    /// Lattice points on the hyperplane `f = 0`, as a basis in Hermite form.
    /// Simplicial groups have no such kernel and return an empty basis.
    pub fn kernel_lattice(&self) -> Vec<GroupElement> {
        let Some(f) = self.functional() else {
            return Vec::new();
        };
        let rows = linalg::clear_denominators(&f.component_rows());
        linalg::integer_kernel(&rows, self.rank)
            .into_iter()
            .map(|v| {
                GroupElement(
                    v.into_iter()
                        .map(|x| x.to_i64().expect("kernel entries fit in i64"))
                        .collect(),
                )
            })
            .collect()
    }

    /// `G = G⁺ ∪ (−G⁺)`.
    pub fn is_totally_ordered(&self) -> bool {
        match &self.cone {
            Cone::Hyperplane(f) => linalg::rank(&f.component_rows()) == self.rank,
            Cone::Simplicial(_) => self.rank <= 1,
        }
    }

    /// No order ideals besides `{0}` and `G`.
    pub fn is_simple(&self) -> bool {
        match &self.cone {
            Cone::Hyperplane(_) => true,
            Cone::Simplicial(_) => self.rank <= 1,
        }
    }

    /// The order ideal spanned by the cone generators with the given
    /// (zero-based) indices.
    pub fn order_ideal_generated(&self, subset: &[usize]) -> Result<OrderIdeal> {
        let Cone::Simplicial(b) = &self.cone else {
            return Err(Error::UnsupportedVariant(
                "basis-subset ideals need a simplicial cone; hyperplane ideals come from kernel_ideal"
                    .into(),
            ));
        };
        let mut idx = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.rank) {
            return Err(Error::input(format!(
                "basis index {bad} out of range for rank {}",
                self.rank
            )));
        }
        Ok(OrderIdeal::new(
            self.rank,
            idx.into_iter().map(|i| b.generator(i)).collect(),
        ))
    }

    /// Checks that `ideal` is a directed convex subgroup and describes it.
    pub fn validate_ideal(&self, ideal: &OrderIdeal) -> Result<IdealShape> {
        Error::check_len(self.rank, ideal.ambient_rank())?;
        let basis = ideal.basis();
        match &self.cone {
            Cone::Hyperplane(_) => {
                if basis.is_empty() {
                    Ok(IdealShape::Zero)
                } else if basis.len() == self.rank
                    && linalg::spans_full_lattice(&to_bigint(&basis), self.rank)
                {
                    Ok(IdealShape::Whole)
                } else {
                    Err(Error::InvalidIdeal(
                        "a hyperplane group has no order ideals besides {0} and G".into(),
                    ))
                }
            }
            Cone::Simplicial(b) => {
                let coords: Vec<Vec<i128>> = basis.iter().map(|h| b.coordinates(h)).collect();
                let support: Vec<usize> = (0..self.rank)
                    .filter(|&i| coords.iter().any(|c| c[i] != 0))
                    .collect();
                let restricted: Vec<Vec<BigInt>> = coords
                    .iter()
                    .map(|c| support.iter().map(|&i| BigInt::from(c[i])).collect())
                    .collect();
                if linalg::spans_full_lattice(&restricted, support.len()) {
                    Ok(IdealShape::BasisSubset(support))
                } else {
                    Err(Error::InvalidIdeal(format!(
                        "subgroup spanned by {} is not the span of a subset of the cone basis, \
                         so it is not a directed convex subgroup",
                        fmt_elements(&ideal.generators)
                    )))
                }
            }
        }
    }

    /// `G/H` with positive cone `(G⁺ + H)/H`.
    pub fn quotient(&self, ideal: &OrderIdeal) -> Result<OrderedGroup> {
        Ok(self.quotient_with_projection(ideal)?.0)
    }

    /// The quotient together with the integer matrix of the projection
    /// `G → G/H` (rows index the quotient coordinates).
    pub fn quotient_with_projection(
        &self,
        ideal: &OrderIdeal,
    ) -> Result<(OrderedGroup, Vec<Vec<i64>>)> {
        let shape = self.validate_ideal(ideal)?;
        Ok(match (shape, &self.cone) {
            (IdealShape::Zero, _) => {
                let id = SimplicialBasis::standard(self.rank).matrix;
                (self.clone(), id)
            }
            (IdealShape::Whole, _) => (OrderedGroup::trivial(), Vec::new()),
            (IdealShape::BasisSubset(support), Cone::Simplicial(b)) => {
                let projection: Vec<Vec<i64>> = (0..self.rank)
                    .filter(|i| !support.contains(i))
                    .map(|i| b.coordinate_row(i).to_vec())
                    .collect();
                // The cone generators outside the ideal map to the standard
                // basis of the quotient, those inside map to zero.
                let images: Vec<Vec<i64>> = (0..projection.len())
                    .map(|r| {
                        (0..self.rank)
                            .filter(|i| !support.contains(i))
                            .map(|i| {
                                let g = b.generator(i);
                                projection[r]
                                    .iter()
                                    .zip(g.coords())
                                    .map(|(a, x)| a * x)
                                    .sum()
                            })
                            .collect()
                    })
                    .collect();
                let group = OrderedGroup::simplicial(SimplicialBasis::new(images)?);
                (group, projection)
            }
            (IdealShape::BasisSubset(_), Cone::Hyperplane(_)) => {
                unreachable!("hyperplane ideals are zero or whole")
            }
        })
    }

    /// Checks `n·x ∈ G⁺ ⇒ x ∈ G⁺` for one pair.
    pub fn is_unperforated_witness(&self, x: &GroupElement, n: u32) -> Result<bool> {
        self.check(x)?;
        if n == 0 {
            return Err(Error::input("n must be a positive integer"));
        }
        let nx = x.scale(i64::from(n));
        Ok(!self.contains_unchecked(&nx) || self.contains_unchecked(x))
    }

    /// Searches the box of the given radius around `⌊(x₁+y₁)/2⌋` for `z` with
    /// `x₁, x₂ ≤ z ≤ y₁, y₂`.
    ///
    /// The scan is lexicographic with the first coordinate most significant,
    /// ascending; the first hit is returned. `None` only means the box holds
    /// no interpolant.
    pub fn riesz_interpolate(
        &self,
        lower: [&GroupElement; 2],
        upper: [&GroupElement; 2],
        box_radius: u32,
    ) -> Result<Option<GroupElement>> {
        for x in lower {
            for y in upper {
                if !self.le(x, y)? {
                    return Err(Error::Ordering(format!("{x} ≤ {y} does not hold")));
                }
            }
        }
        let r = i64::from(box_radius);
        let center: Vec<i64> = lower[0]
            .coords()
            .iter()
            .zip(upper[0].coords())
            .map(|(a, b)| (a + b).div_euclid(2))
            .collect();
        let lo: Vec<i64> = center.iter().map(|c| c - r).collect();
        let hi: Vec<i64> = center.iter().map(|c| c + r).collect();
        let mut z = lo.clone();
        loop {
            let cand = GroupElement(z.clone());
            let fits = lower.iter().all(|x| self.contains_unchecked(&(&cand - x)))
                && upper.iter().all(|y| self.contains_unchecked(&(*y - &cand)));
            if fits {
                return Ok(Some(cand));
            }
            // odometer step, last coordinate fastest
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                if z[i] < hi[i] {
                    z[i] += 1;
                    break;
                }
                z[i] = lo[i];
            }
        }
    }

    /// Decides whether `u` is an order unit.
    ///
    /// Hyperplane cones are archimedean, so every nonzero positive element
    /// qualifies. For simplicial cones each generator `bᵢ` must satisfy
    /// `bᵢ ≤ n·u` for some `n ≤ generator_bound`.
    pub fn is_order_unit(
        &self,
        u: &GroupElement,
        generator_bound: u32,
    ) -> Result<OrderUnitVerdict> {
        self.check(u)?;
        if u.is_zero() || !self.contains_unchecked(u) {
            return Err(Error::input(format!(
                "{u} is not a nonzero positive element"
            )));
        }
        match &self.cone {
            Cone::Hyperplane(_) => Ok(OrderUnitVerdict::Unit),
            Cone::Simplicial(b) => {
                for g in b.generators() {
                    let dominated = (1..=i64::from(generator_bound))
                        .any(|n| self.contains_unchecked(&(&u.scale(n) - &g)));
                    if !dominated {
                        return Ok(OrderUnitVerdict::NotUnit { generator: g });
                    }
                }
                Ok(OrderUnitVerdict::Unit)
            }
        }
    }
}

fn to_bigint(v: &[GroupElement]) -> Vec<Vec<BigInt>> {
    v.iter().map(GroupElement::to_bigint).collect()
}

fn fmt_elements(v: &[GroupElement]) -> String {
    let parts: Vec<String> = v.iter().map(GroupElement::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderUnitVerdict {
    Unit,
    /// The cone generator no bounded multiple of `u` dominates.
    NotUnit {
        generator: GroupElement,
    },
}

impl OrderUnitVerdict {
    pub fn is_unit(&self) -> bool {
        matches!(self, OrderUnitVerdict::Unit)
    }
}

/// How a validated ideal sits inside its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealShape {
    Zero,
    Whole,
    /// Indices of the cone generators spanning the ideal.
    BasisSubset(Vec<usize>),
}

/// A subgroup of `Zᵏ` given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderIdeal {
    ambient_rank: usize,
    generators: Vec<GroupElement>,
}

impl OrderIdeal {
    pub fn new(ambient_rank: usize, generators: Vec<GroupElement>) -> Self {
        OrderIdeal {
            ambient_rank,
            generators,
        }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, Vec::new())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Hermite-form basis of the spanned lattice.
    pub fn basis(&self) -> Vec<GroupElement> {
        linalg::hermite_normal_form(&to_bigint(&self.generators), self.ambient_rank)
            .into_iter()
            .map(|v| GroupElement(v.into_iter().map(|x| x.to_i64().expect("fits")).collect()))
            .collect()
    }

    pub fn lattice_rank(&self) -> usize {
        self.basis().len()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        let mut gens = self.generators.clone();
        gens.push(x.clone());
        let with = linalg::hermite_normal_form(&to_bigint(&gens), self.ambient_rank);
        with == linalg::hermite_normal_form(&to_bigint(&self.generators), self.ambient_rank)
    }

    /// Bounded convexity check: for all `x, y ∈ H` and `z ∈ G` inside the box
    /// `[-radius, radius]ᵏ`, `x ≤ z ≤ y` implies `z ∈ H`.
    pub fn is_convex_in_box(&self, group: &OrderedGroup, radius: i64) -> bool {
        let points = box_points(self.ambient_rank, radius);
        let members: Vec<&GroupElement> = points.iter().filter(|p| self.contains(p)).collect();
        for x in &members {
            for y in &members {
                if !group.contains_unchecked(&(*y - *x)) {
                    continue;
                }
                for z in &points {
                    if group.contains_unchecked(&(z - *x))
                        && group.contains_unchecked(&(*y - z))
                        && !self.contains(z)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn box_points(rank: usize, radius: i64) -> Vec<GroupElement> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-radius..=radius).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(GroupElement).collect()
}

impl fmt::Display for OrderedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cone {
            Cone::Hyperplane(func) => {
                write!(f, "Z^{} with cone {{f > 0}} ∪ {{0}}, f = {func}", self.rank)
            }
            Cone::Simplicial(b) if b.is_standard() => {
                write!(f, "Z^{} with the standard simplicial cone", self.rank)
            }
            Cone::Simplicial(b) => write!(
                f,
                "Z^{} with simplicial cone on columns of {:?}",
                self.rank, b.matrix
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    fn sqrt2_group() -> OrderedGroup {
        OrderedGroup::hyperplane(LinearFunctional::parse(&["1", "√2"], None).unwrap())
    }

    fn hyper(coeffs: &[&str]) -> OrderedGroup {
        OrderedGroup::hyperplane(LinearFunctional::parse(coeffs, None).unwrap())
    }

    #[test]
    fn positivity_examples() {
        let g = sqrt2_group();
        assert!(g.is_positive(&e(&[0, 0])).unwrap());
        assert!(g.is_positive(&e(&[-1, 1])).unwrap());
        assert!(!g.is_positive(&e(&[2, -2])).unwrap());
        let s = OrderedGroup::standard_simplicial(2);
        assert!(!s.is_positive(&e(&[1, -1])).unwrap());
        assert!(matches!(
            g.is_positive(&e(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compare_examples() {
        let g = sqrt2_group();
        assert_eq!(
            g.compare(&e(&[1, 1]), &e(&[0, 2])).unwrap(),
            OrderRelation::Less
        );
        assert_eq!(
            g.compare(&e(&[0, 2]), &e(&[1, 1])).unwrap(),
            OrderRelation::Greater
        );
        let s = OrderedGroup::standard_simplicial(2);
        assert_eq!(
            s.compare(&e(&[1, 0]), &e(&[0, 1])).unwrap(),
            OrderRelation::Incomparable
        );
        assert_eq!(
            s.compare(&e(&[3, 4]), &e(&[3, 4])).unwrap(),
            OrderRelation::Equal
        );
        // kernel elements of a rational hyperplane are incomparable to 0
        let r = hyper(&["1", "1"]);
        assert_eq!(
            r.compare(&e(&[0, 0]), &e(&[1, -1])).unwrap(),
            OrderRelation::Incomparable
        );
    }

    #[test]
    fn total_order_examples() {
        assert!(sqrt2_group().is_totally_ordered());
        let r = hyper(&["1", "1"]);
        assert!(!r.is_totally_ordered());
        assert_eq!(r.kernel_lattice(), vec![e(&[1, -1])]);
        let r = hyper(&["2", "4"]);
        assert!(!r.is_totally_ordered());
        assert_eq!(r.kernel_lattice(), vec![e(&[2, -1])]);
        assert!(!OrderedGroup::standard_simplicial(2).is_totally_ordered());
        assert!(OrderedGroup::standard_simplicial(1).is_totally_ordered());
        assert!(hyper(&["1", "√2", "√3"]).is_totally_ordered());
        let partial = hyper(&["1", "√2", "1+√2"]);
        assert!(!partial.is_totally_ordered());
        assert_eq!(partial.kernel_lattice(), vec![e(&[1, 1, -1])]);
    }

    #[test]
    fn ideal_examples() {
        let g3 = OrderedGroup::standard_simplicial(3);
        let h = g3.order_ideal_generated(&[0]).unwrap();
        assert_eq!(h.basis(), vec![e(&[1, 0, 0])]);
        let g2 = OrderedGroup::standard_simplicial(2);
        assert_eq!(g2.order_ideal_generated(&[]).unwrap().lattice_rank(), 0);
        assert_eq!(g2.order_ideal_generated(&[0, 1]).unwrap().lattice_rank(), 2);
        assert!(matches!(
            sqrt2_group().order_ideal_generated(&[0]),
            Err(Error::UnsupportedVariant(_))
        ));
        assert!(g2.order_ideal_generated(&[2]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let g3 = OrderedGroup::standard_simplicial(3);
        let q = g3
            .quotient(&g3.order_ideal_generated(&[0]).unwrap())
            .unwrap();
        assert_eq!(q, OrderedGroup::standard_simplicial(2));
        assert_eq!(g3.quotient(&OrderIdeal::zero(3)).unwrap(), g3);
        let g2 = OrderedGroup::standard_simplicial(2);
        let q = g2
            .quotient(&g2.order_ideal_generated(&[0, 1]).unwrap())
            .unwrap();
        assert_eq!(q.rank(), 0);
        // 2·e₁ is not convex: e₁ lies between 0 and 2e₁
        let bad = OrderIdeal::new(2, vec![e(&[2, 0])]);
        assert!(matches!(g2.quotient(&bad), Err(Error::InvalidIdeal(_))));
        assert!(!bad.is_convex_in_box(&g2, 2));
        let diag = OrderIdeal::new(2, vec![e(&[1, -1])]);
        assert!(matches!(g2.quotient(&diag), Err(Error::InvalidIdeal(_))));
        let g = sqrt2_group();
        assert_eq!(g.quotient(&OrderIdeal::zero(2)).unwrap(), g);
        assert!(g.quotient(&OrderIdeal::new(2, vec![e(&[1, 0])])).is_err());
    }

    #[test]
    fn quotient_of_skew_basis() {
        // cone generated by (1,0) and (1,1)
        let b = SimplicialBasis::new(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let g = OrderedGroup::simplicial(b);
        let h = g.order_ideal_generated(&[1]).unwrap();
        assert!(h.is_convex_in_box(&g, 2));
        let (q, proj) = g.quotient_with_projection(&h).unwrap();
        assert_eq!(q, OrderedGroup::standard_simplicial(1));
        // (1,1) ↦ 0, (1,0) ↦ 1
        assert_eq!(proj, vec![vec![1, -1]]);
    }

    #[test]
    fn unimodularity_is_enforced() {
        assert!(SimplicialBasis::new(vec![vec![2, 0], vec![0, 1]]).is_err());
        assert!(SimplicialBasis::new(vec![vec![1, 0]]).is_err());
        assert!(SimplicialBasis::new(vec![vec![2, 1], vec![1, 1]]).is_ok());
    }

    #[test]
    fn unperforation_examples() {
        let g = sqrt2_group();
        assert!(g.is_unperforated_witness(&e(&[-1, 1]), 3).unwrap());
        assert!(g.is_unperforated_witness(&e(&[0, 0]), 7).unwrap());
        let s = OrderedGroup::standard_simplicial(2);
        assert!(s.is_unperforated_witness(&e(&[2, 1]), 5).unwrap());
        assert!(g.is_unperforated_witness(&e(&[1, 1]), 0).is_err());
    }

    /// Independent brute force: enumerate the box in the documented order
    /// using only pairwise comparisons.
    fn brute_force_interpolant(
        g: &OrderedGroup,
        xs: [&GroupElement; 2],
        ys: [&GroupElement; 2],
        radius: i64,
    ) -> Option<GroupElement> {
        let center: Vec<i64> = xs[0]
            .coords()
            .iter()
            .zip(ys[0].coords())
            .map(|(a, b)| ((a + b) as f64 / 2.0).floor() as i64)
            .collect();
        let mut pts = box_points(g.rank(), radius);
        for p in pts.iter_mut() {
            *p = &*p + &GroupElement::new(center.clone());
        }
        pts.sort();
        pts.into_iter().find(|z| {
            xs.iter().all(|x| {
                matches!(
                    g.compare(x, z).unwrap(),
                    OrderRelation::Less | OrderRelation::Equal
                )
            }) && ys.iter().all(|y| {
                matches!(
                    g.compare(z, y).unwrap(),
                    OrderRelation::Less | OrderRelation::Equal
                )
            })
        })
    }

    #[test]
    fn riesz_examples() {
        let g = sqrt2_group();
        let (x1, x2, y1, y2) = (e(&[0, 0]), e(&[0, 0]), e(&[1, 0]), e(&[1, 0]));
        let z = g
            .riesz_interpolate([&x1, &x2], [&y1, &y2], 2)
            .unwrap()
            .unwrap();
        assert_eq!(
            Some(z.clone()),
            brute_force_interpolant(&g, [&x1, &x2], [&y1, &y2], 2)
        );
        // lexicographically first point of the box with 0 ≤ f(z) ≤ 1
        assert_eq!(z, e(&[-2, 2]));

        let (x1, x2, y1, y2) = (e(&[0, 0]), e(&[-1, 1]), e(&[1, 0]), e(&[2, -1]));
        let z = g
            .riesz_interpolate([&x1, &x2], [&y1, &y2], 4)
            .unwrap()
            .unwrap();
        assert_eq!(
            Some(z.clone()),
            brute_force_interpolant(&g, [&x1, &x2], [&y1, &y2], 4)
        );
        assert_eq!(z, e(&[-1, 1]));
        // (2,-1) is the other interpolant in the box
        for x in [&x1, &x2] {
            assert!(g.le(x, &e(&[2, -1])).unwrap());
        }

        let s = OrderedGroup::standard_simplicial(2);
        let (x1, x2, y1, y2) = (e(&[0, 0]), e(&[1, 0]), e(&[2, 2]), e(&[1, 3]));
        let z = s
            .riesz_interpolate([&x1, &x2], [&y1, &y2], 3)
            .unwrap()
            .unwrap();
        assert_eq!(z, e(&[1, 0]));
        assert_eq!(
            Some(z),
            brute_force_interpolant(&s, [&x1, &x2], [&y1, &y2], 3)
        );

        assert!(matches!(
            s.riesz_interpolate([&e(&[1, 1]), &x1], [&x1, &x1], 1),
            Err(Error::Ordering(_))
        ));
    }

    #[test]
    fn rational_hyperplane_fails_interpolation_in_box() {
        // f = 3x + 2y: kernel (2,-3); no z can sit between {0, (2,-3)} and
        // {(1,-1), (3,-4)} because f(z) would have to lie strictly in (0, 1).
        let g = hyper(&["3", "2"]);
        let z = g
            .riesz_interpolate([&e(&[0, 0]), &e(&[2, -3])], [&e(&[1, -1]), &e(&[3, -4])], 5)
            .unwrap();
        assert_eq!(z, None);
    }

    #[test]
    fn order_unit_examples() {
        let g = sqrt2_group();
        assert!(g.is_order_unit(&e(&[1, 0]), 1).unwrap().is_unit());
        let s = OrderedGroup::standard_simplicial(2);
        assert!(s.is_order_unit(&e(&[1, 1]), 1).unwrap().is_unit());
        assert_eq!(
            s.is_order_unit(&e(&[1, 0]), 100).unwrap(),
            OrderUnitVerdict::NotUnit {
                generator: e(&[0, 1])
            }
        );
        assert!(s.is_order_unit(&e(&[1, -1]), 3).is_err());
        assert!(g.is_order_unit(&e(&[0, 0]), 3).is_err());
    }
}
