//! States on `(G, u)`: normalized positive homomorphisms `s: G → R` with
//! `s(u) = 1`.
//!
//! Only the two cases where the state space is finitely presented are
//! materialized. A simplicial group's extreme states are its normalized
//! coordinate projections; a hyperplane group carries exactly one state,
//! `x ↦ f(x)/f(u)`, because a functional nonnegative on every lattice point
//! of an open half-space must be a positive multiple of `f`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::ordered_group::{Cone, GroupElement, LinearFunctional, OrderIdeal, OrderedGroup};
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct State {
    functional: LinearFunctional,
    unit: GroupElement,
}

impl State {
    /// Validates normalization and positivity against `group`.
    pub fn new(
        group: &OrderedGroup,
        functional: LinearFunctional,
        unit: GroupElement,
    ) -> Result<Self> {
        Error::check_len(group.rank(), functional.rank())?;
        Error::check_len(group.rank(), unit.rank())?;
        if functional.eval(&unit) != Surd::one() {
            return Err(Error::input(format!(
                "state is not normalized: s(u) = {}",
                functional.eval(&unit)
            )));
        }
        match group.cone() {
            Cone::Simplicial(b) => {
                if let Some(g) = b
                    .generators()
                    .iter()
                    .find(|g| functional.eval(g).is_negative())
                {
                    return Err(Error::input(format!(
                        "state is negative on cone generator {g}"
                    )));
                }
            }
            Cone::Hyperplane(f) => {
                let (i, fi) = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
                    .expect("functional is nonzero");
                let ratio = &functional.coeffs()[i] / fi;
                let proportional = f
                    .coeffs()
                    .iter()
                    .zip(functional.coeffs())
                    .all(|(a, b)| &(a * &ratio) == b);
                if !ratio.is_positive() || !proportional {
                    return Err(Error::input(
                        "a state on a hyperplane group must be a positive multiple of its functional",
                    ));
                }
            }
        }
        Ok(State { functional, unit })
    }

    pub fn functional(&self) -> &LinearFunctional {
        &self.functional
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }

    pub fn eval(&self, x: &GroupElement) -> Result<Surd> {
        self.functional.checked_eval(x)
    }

    /// Human-readable formula in variables `x₁ … x_k`, e.g. `x1+√2·x2`.
    pub fn formula(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.functional.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = format!("x{}", i + 1);
            let term = if *c == Surd::one() {
                var
            } else if *c == -Surd::one() {
                format!("-{var}")
            } else if c.terms().count() > 1 {
                format!("({c})·{var}")
            } else {
                format!("{c}·{var}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

/// Finitely many states on one `(G, u)`, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateList {
    states: Vec<State>,
}

impl StateList {
    pub fn new(states: Vec<State>) -> Result<Self> {
        for (i, a) in states.iter().enumerate() {
            for b in &states[i + 1..] {
                if a.functional == b.functional {
                    return Err(Error::input("state list contains a repeated state"));
                }
                if a.unit != b.unit {
                    return Err(Error::input("states in one list must share the order unit"));
                }
            }
        }
        Ok(StateList { states })
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Nonnegative rational weights summing to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexCoefficients {
    weights: Vec<BigRational>,
}

impl ConvexCoefficients {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::input("convex weights must be nonnegative"));
        }
        if weights.iter().sum::<BigRational>() != BigRational::one() {
            return Err(Error::input("convex weights must sum to 1"));
        }
        Ok(ConvexCoefficients { weights })
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }
}

/// The state `x ↦ f(x)/f(u)` of a totally ordered hyperplane group.
pub fn unique_state(group: &OrderedGroup, unit: &GroupElement) -> Result<State> {
    let Some(f) = group.functional() else {
        return Err(Error::NoUniqueState(
            "simplicial groups of rank ≥ 2 have more than one state".into(),
        ));
    };
    if !group.is_totally_ordered() {
        return Err(Error::NoUniqueState(
            "the group is not totally ordered".into(),
        ));
    }
    hyperplane_state(group, f, unit)
}

fn hyperplane_state(
    group: &OrderedGroup,
    f: &LinearFunctional,
    unit: &GroupElement,
) -> Result<State> {
    let fu = f.checked_eval(unit)?;
    if !fu.is_positive() {
        return Err(Error::input(format!(
            "{unit} is not a nonzero positive element"
        )));
    }
    State::new(group, f.divide(&fu)?, unit.clone())
}

/// Is `s(G)` a cyclic subgroup of `R`? `generators` must span `Zᵏ`.
///
/// Since `s(u) = 1`, the image is cyclic iff every value on the generators
/// is rational; it is then `(1/q)·Z`-like, generated by the gcd of the values.
pub fn is_discrete_state(state: &State, generators: &[GroupElement]) -> Result<bool> {
    Ok(state_image_generator(state, generators)?.is_some())
}

/// Positive generator of the cyclic group `s(G)`, or `None` when `s(G)` is
/// dense.
pub fn state_image_generator(
    state: &State,
    generators: &[GroupElement],
) -> Result<Option<BigRational>> {
    let k = state.functional.rank();
    for g in generators {
        Error::check_len(k, g.rank())?;
    }
    let rows: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|g| g.coords().iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if !linalg::spans_full_lattice(&rows, k) {
        return Err(Error::input("generators do not span the group"));
    }
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for g in generators {
        let v = state.functional.eval(g);
        let Some(q) = v.to_rational() else {
            return Ok(None);
        };
        // gcd(a/b, c/d) = gcd(ad, cb)/(bd), kept reduced
        let new_den = den.lcm(q.denom());
        num = (num * (&new_den / &den)).gcd(&(q.numer() * (&new_den / q.denom())));
        den = new_den;
    }
    Ok(Some(BigRational::new(num, den)))
}

/// `H = {x − y : x, y ∈ (Ker s)⁺}` with explicit generators.
pub fn kernel_ideal(group: &OrderedGroup, state: &State) -> Result<OrderIdeal> {
    Error::check_len(group.rank(), state.functional.rank())?;
    match group.cone() {
        // (Ker s)⁺ = {0}: nonzero positives have f > 0 and s is a multiple of f
        Cone::Hyperplane(_) => Ok(OrderIdeal::zero(group.rank())),
        // A positive combination Σ cᵢbᵢ is killed by s iff every bᵢ with
        // cᵢ > 0 is, since s(bᵢ) ≥ 0.
        Cone::Simplicial(b) => Ok(OrderIdeal::new(
            group.rank(),
            b.generators()
                .into_iter()
                .filter(|g| state.functional.eval(g).is_zero())
                .collect(),
        )),
    }
}

/// Extreme points of `S(G, u)`.
pub fn extreme_states(group: &OrderedGroup, unit: &GroupElement) -> Result<StateList> {
    match group.cone() {
        Cone::Hyperplane(_) => StateList::new(vec![unique_state(group, unit)?]),
        Cone::Simplicial(b) => {
            if !group.is_order_unit(unit, 1)?.is_unit() {
                return Err(Error::input(format!("{unit} is not an order unit")));
            }
            let coords = b.coordinates(unit);
            let states = (0..group.rank())
                .filter(|&i| coords[i] > 0)
                .map(|i| {
                    let denom = BigRational::from_integer(BigInt::from(coords[i]));
                    let coeffs = b
                        .coordinate_row(i)
                        .iter()
                        .map(|&a| Surd::from_rational(BigRational::from_integer(a.into()) / &denom))
                        .collect();
                    State::new(group, LinearFunctional::new(coeffs)?, unit.clone())
                })
                .collect::<Result<Vec<_>>>()?;
            StateList::new(states)
        }
    }
}

fn rational_coeffs(state: &State) -> Option<Vec<BigRational>> {
    state
        .functional
        .coeffs()
        .iter()
        .map(Surd::to_rational)
        .collect()
}

/// Writes a discrete state as a nonnegative rational combination of discrete
/// extreme states.
///
/// Solves `Σ αᵢ·sᵢ = s`, `Σ αᵢ = 1` exactly. When the extremes are affinely
/// dependent, basic solutions are tried over column subsets in lexicographic
/// order; a nonnegative solution exists iff a nonnegative basic one does.
pub fn rational_convex_decomposition(
    state: &State,
    extremes: &StateList,
) -> Result<ConvexCoefficients> {
    let target =
        rational_coeffs(state).ok_or_else(|| Error::input("state to decompose is not discrete"))?;
    let columns = extremes
        .states()
        .iter()
        .map(rational_coeffs)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::input("extreme states must be discrete"))?;
    let k = target.len();
    for c in &columns {
        Error::check_len(k, c.len())?;
    }
    let m = columns.len();
    if m == 0 {
        return Err(Error::DecompositionFailure);
    }
    // rows: one per functional coordinate plus the affine constraint
    let mut system: Vec<Vec<BigRational>> = (0..k)
        .map(|j| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let mut affine = vec![BigRational::one(); m];
    affine.push(BigRational::one());
    system.push(affine);

    let r = linalg::rank(
        &system
            .iter()
            .map(|row| row[..m].to_vec())
            .collect::<Vec<_>>(),
    );
    for subset in combinations(m, r) {
        let sub: Vec<Vec<BigRational>> = system
            .iter()
            .map(|row| {
                let mut s: Vec<BigRational> = subset.iter().map(|&i| row[i].clone()).collect();
                s.push(row[m].clone());
                s
            })
            .collect();
        let mut reduced = sub.clone();
        let pivots = linalg::rref(&mut reduced);
        if pivots.len() != r || pivots.contains(&r) {
            continue; // dependent columns or inconsistent
        }
        let mut weights = vec![BigRational::zero(); m];
        for (row, &i) in reduced.iter().zip(&subset) {
            weights[i] = row[r].clone();
        }
        if weights.iter().all(|w| !w.is_negative()) {
            return ConvexCoefficients::new(weights);
        }
    }
    Err(Error::DecompositionFailure)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// `x̂ = (s₁(x), …, s_m(x))` over the extreme states.
pub fn natural_map_eval(
    group: &OrderedGroup,
    unit: &GroupElement,
    x: &GroupElement,
) -> Result<Vec<Surd>> {
    extreme_states(group, unit)?
        .states()
        .iter()
        .map(|s| s.eval(x))
        .collect()
}

/// Affine dimension of a finite list of states, as the rank over the
/// coefficient field of the differences `sᵢ − s₁` evaluated on `probes`.
pub fn affine_dimension(states: &StateList, probes: &[GroupElement]) -> Result<usize> {
    let first = states
        .states()
        .first()
        .ok_or_else(|| Error::input("empty state list"))?;
    let k = first.functional.rank();
    let rows: Vec<Vec<BigInt>> = probes
        .iter()
        .map(|p| {
            Error::check_len(k, p.rank())?;
            Ok(p.coords().iter().map(|&x| BigInt::from(x)).collect())
        })
        .collect::<Result<_>>()?;
    if !linalg::spans_full_lattice(&rows, k) {
        return Err(Error::input("probe elements do not span the group"));
    }
    let diffs: Vec<Vec<Surd>> = states.states()[1..]
        .iter()
        .map(|s| {
            probes
                .iter()
                .map(|p| &s.functional.eval(p) - &first.functional.eval(p))
                .collect()
        })
        .collect();
    Ok(linalg::rank(&diffs))
}

/// The standard basis of `Zᵏ`, the default probe set.
pub fn standard_probes(k: usize) -> Vec<GroupElement> {
    (0..k).map(|i| GroupElement::unit(k, i)).collect()
}
