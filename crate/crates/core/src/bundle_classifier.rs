//! Bundles of totally ordered groups over a simplicial complex, discretized
//! as a functional per vertex and an orientation sign per edge, and their
//! classification by w₁ ∈ H¹(K; Z/2).

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::hyperplane_to_group;
use crate::gf2::BitVec;
use crate::gf2_complex::{
    check_simplicial_map, cohomology, image_of, RawComplex, SimplicialComplex, Z2Cochain,
};
use crate::ordered_group::{LinearFunctional, OrderedGroup};
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupBundle {
    base: SimplicialComplex,
    rank: usize,
    vertex_normals: Vec<LinearFunctional>,
    edge_signs: Vec<i8>,
}

/// Bundle on disk. Edge keys are JSON arrays such as `"[0,1]"`; omitted
/// edges carry +1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBundle {
    pub complex: RawComplex,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radicand: Option<u64>,
    pub vertex_normals: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub edge_signs: BTreeMap<String, i8>,
}

/// The functional (1, √2, √3, √5, …) on Z^rank, whose coefficients are
/// linearly independent over Q.
pub fn generic_functional(rank: usize) -> LinearFunctional {
    let mut coeffs = vec![Surd::one()];
    let mut n = 2u64;
    while coeffs.len() < rank {
        if (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
        {
            coeffs.push(Surd::sqrt(n));
        }
        n += 1;
    }
    LinearFunctional::new(coeffs).expect("leading coefficient is 1")
}

pub fn validate_bundle(
    base: SimplicialComplex,
    rank: usize,
    vertex_normals: Vec<LinearFunctional>,
    edge_signs: Vec<i8>,
) -> Result<GroupBundle> {
    if rank < 2 {
        return Err(Error::input(format!(
            "fiber rank must be at least 2, got {rank}"
        )));
    }
    Error::check_len(base.vertex_count(), vertex_normals.len())?;
    Error::check_len(base.edges().len(), edge_signs.len())?;
    for (v, f) in vertex_normals.iter().enumerate() {
        if f.rank() != rank {
            return Err(Error::input(format!(
                "functional at vertex {v} has {} coefficients, expected {rank}",
                f.rank()
            )));
        }
    }
    if let Some(s) = edge_signs.iter().find(|&&s| s != 1 && s != -1) {
        return Err(Error::input(format!("edge sign {s} is not ±1")));
    }
    for t in base.simplices(2) {
        let product: i8 = [[t[0], t[1]], [t[1], t[2]], [t[0], t[2]]]
            .iter()
            .map(|e| edge_signs[base.index_of(e).expect("closed")])
            .product();
        if product != 1 {
            return Err(Error::CocycleViolation { simplex: t.clone() });
        }
    }
    Ok(GroupBundle {
        base,
        rank,
        vertex_normals,
        edge_signs,
    })
}

fn parse_edge_key(key: &str) -> Result<Vec<usize>> {
    let mut e: Vec<usize> = serde_json::from_str(key)
        .map_err(|_| Error::Parse(format!("edge key {key:?} is not of the form [a,b]")))?;
    if e.len() != 2 {
        return Err(Error::Parse(format!(
            "edge key {key:?} must name two vertices"
        )));
    }
    e.sort_unstable();
    Ok(e)
}

impl GroupBundle {
    pub fn from_raw(raw: &RawBundle, strict: bool) -> Result<Self> {
        let base = SimplicialComplex::from_raw(&raw.complex, strict)?.complex;
        let mut normals: Vec<Option<LinearFunctional>> = vec![None; base.vertex_count()];
        for (key, coeffs) in &raw.vertex_normals {
            let v: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("vertex key {key:?} is not a number")))?;
            let slot = normals
                .get_mut(v)
                .ok_or_else(|| Error::input(format!("vertex {v} out of range")))?;
            *slot = Some(LinearFunctional::parse(coeffs, raw.radicand)?);
        }
        let normals = normals
            .into_iter()
            .enumerate()
            .map(|(v, f)| f.ok_or_else(|| Error::input(format!("vertex {v} has no normal"))))
            .collect::<Result<Vec<_>>>()?;
        let mut signs = vec![1i8; base.edges().len()];
        for (key, &s) in &raw.edge_signs {
            let e = parse_edge_key(key)?;
            let i = base
                .index_of(&e)
                .ok_or_else(|| Error::input(format!("edge {e:?} is not in the complex")))?;
            signs[i] = s;
        }
        validate_bundle(base, raw.rank, normals, signs)
    }

    /// Serializes with explicit radicands in every coefficient.
    pub fn to_raw(&self) -> RawBundle {
        RawBundle {
            complex: self.base.to_raw(),
            rank: self.rank,
            radicand: None,
            vertex_normals: self
                .vertex_normals
                .iter()
                .enumerate()
                .map(|(v, f)| {
                    (
                        v.to_string(),
                        f.coeffs().iter().map(ToString::to_string).collect(),
                    )
                })
                .collect(),
            edge_signs: self
                .base
                .edges()
                .iter()
                .zip(&self.edge_signs)
                .filter(|(_, &s)| s == -1)
                .map(|(e, &s)| (format!("[{},{}]", e[0], e[1]), s))
                .collect(),
        }
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_normals(&self) -> &[LinearFunctional] {
        &self.vertex_normals
    }

    pub fn edge_signs(&self) -> &[i8] {
        &self.edge_signs
    }

    pub fn edge_sign(&self, a: usize, b: usize) -> Option<i8> {
        let e = if a < b { [a, b] } else { [b, a] };
        self.base.index_of(&e).map(|i| self.edge_signs[i])
    }

    /// The ordered group over vertex `v`.
    pub fn fiber(&self, v: usize) -> Result<OrderedGroup> {
        let f = self
            .vertex_normals
            .get(v)
            .ok_or_else(|| Error::input(format!("vertex {v} out of range")))?;
        hyperplane_to_group(f.clone())
    }

    /// The edge signs as a 1-cochain, with bit 1 where the sign is −1.
    pub fn sign_cochain(&self) -> Z2Cochain {
        let bits = BitVec::from_indices(
            self.edge_signs.len(),
            self.edge_signs
                .iter()
                .enumerate()
                .filter(|(_, &s)| s == -1)
                .map(|(i, _)| i),
        );
        Z2Cochain::from_bits(&self.base, 1, bits).expect("one sign per edge")
    }

    /// Reverses the fiber orientation at `v`.
    pub fn flip_vertex(&self, v: usize) -> Result<GroupBundle> {
        let mut gauge = vec![1i8; self.base.vertex_count()];
        *gauge
            .get_mut(v)
            .ok_or_else(|| Error::input(format!("vertex {v} out of range")))? = -1;
        self.apply_gauge(&gauge)
    }

    /// Negates the functional at every vertex with gauge −1 and multiplies
    /// each edge sign by the gauges of its endpoints.
    pub fn apply_gauge(&self, gauge: &[i8]) -> Result<GroupBundle> {
        Error::check_len(self.base.vertex_count(), gauge.len())?;
        if gauge.iter().any(|&g| g != 1 && g != -1) {
            return Err(Error::input("gauge entries must be ±1"));
        }
        let normals = self
            .vertex_normals
            .iter()
            .zip(gauge)
            .map(|(f, &g)| if g < 0 { f.negated() } else { f.clone() })
            .collect();
        let signs = self
            .base
            .edges()
            .iter()
            .zip(&self.edge_signs)
            .map(|(e, &s)| s * gauge[e[0]] * gauge[e[1]])
            .collect();
        validate_bundle(self.base.clone(), self.rank, normals, signs)
    }
}

/// A class in H¹(K; Z/2) given by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1Class {
    pub base: SimplicialComplex,
    pub representative: Z2Cochain,
}

impl W1Class {
    pub fn is_trivial(&self) -> bool {
        self.representative.is_zero()
    }

    /// Edges carrying a flip in the canonical representative.
    pub fn flipped_edges(&self) -> Vec<Vec<usize>> {
        self.representative.support(&self.base)
    }
}

pub fn w1_class(bundle: &GroupBundle) -> W1Class {
    let representative = cohomology(&bundle.base, 1)
        .normal_form(&bundle.sign_cochain())
        .expect("sign cochain has the right length");
    W1Class {
        base: bundle.base.clone(),
        representative,
    }
}

/// True when both bundles have the same w₁. A false answer proves the
/// bundles are not isomorphic; a true answer says nothing more.
pub fn classify_pair(e1: &GroupBundle, e2: &GroupBundle) -> Result<bool> {
    if e1.base != e2.base {
        return Err(Error::input("bundles live over different complexes"));
    }
    Error::check_len(e1.rank, e2.rank)?;
    Ok(w1_class(e1) == w1_class(e2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentTrivialization {
    /// Signs ε on the component's vertices with ε(a)ε(b) = sign(a,b).
    Gauge {
        vertices: Vec<usize>,
        signs: Vec<i8>,
    },
    /// A closed vertex path whose edge signs multiply to −1.
    OddCycle {
        vertices: Vec<usize>,
        cycle: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trivialization {
    pub components: Vec<ComponentTrivialization>,
}

impl Trivialization {
    /// A gauge on every vertex when each component is orientable.
    pub fn global_gauge(&self, vertex_count: usize) -> Option<Vec<i8>> {
        let mut gauge = vec![1i8; vertex_count];
        for c in &self.components {
            match c {
                ComponentTrivialization::Gauge { vertices, signs } => {
                    for (&v, &s) in vertices.iter().zip(signs) {
                        gauge[v] = s;
                    }
                }
                ComponentTrivialization::OddCycle { .. } => return None,
            }
        }
        Some(gauge)
    }
}

/// Propagates orientations along a breadth-first spanning tree of each
/// component, visiting neighbours in increasing order.
pub fn trivialize(bundle: &GroupBundle) -> Trivialization {
    let base = &bundle.base;
    let adj = base.adjacency();
    let n = base.vertex_count();
    let mut eps = vec![0i8; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut components = Vec::new();
    for comp in base.components() {
        let root = comp[0];
        eps[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if eps[w] == 0 {
                    eps[w] = eps[v] * bundle.edge_signs[e];
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let bad = base
            .edges()
            .iter()
            .zip(&bundle.edge_signs)
            .find(|(edge, &s)| {
                comp.binary_search(&edge[0]).is_ok() && s != eps[edge[0]] * eps[edge[1]]
            });
        components.push(match bad {
            None => ComponentTrivialization::Gauge {
                signs: comp.iter().map(|&v| eps[v]).collect(),
                vertices: comp,
            },
            Some((edge, _)) => ComponentTrivialization::OddCycle {
                cycle: tree_cycle(edge[0], edge[1], &parent, &depth),
                vertices: comp,
            },
        });
    }
    Trivialization { components }
}

/// The cycle a → … → lca → … → b → a through the spanning tree.
fn tree_cycle(a: usize, b: usize, parent: &[Option<usize>], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut up = vec![x];
    let mut down = vec![y];
    while depth[x] > depth[y] {
        x = parent[x].expect("nonroot");
        up.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].expect("nonroot");
        down.push(y);
    }
    while x != y {
        x = parent[x].expect("nonroot");
        y = parent[y].expect("nonroot");
        up.push(x);
        down.push(y);
    }
    down.pop();
    down.reverse();
    up.extend(down);
    up.push(a);
    up
}

/// All elements of H¹(K; Z/2), in the coordinate order of
/// [`crate::gf2_complex::CohomologyBasis::elements`].
pub fn enumerate_classes(base: &SimplicialComplex) -> Vec<W1Class> {
    cohomology(base, 1)
        .elements()
        .into_iter()
        .map(|representative| W1Class {
            base: base.clone(),
            representative,
        })
        .collect()
}

/// A bundle with constant generic fiber whose edge flips are `class`.
pub fn realize_class(class: &W1Class, rank: usize) -> Result<GroupBundle> {
    let f = generic_functional(rank);
    let signs = (0..class.representative.len())
        .map(|i| if class.representative.get(i) { -1 } else { 1 })
        .collect();
    validate_bundle(
        class.base.clone(),
        rank,
        vec![f; class.base.vertex_count()],
        signs,
    )
}

/// Pulls a bundle back along a simplicial map `source → bundle.base`.
/// Edges collapsed to a vertex carry +1.
pub fn pullback_bundle(
    source: &SimplicialComplex,
    map: &[usize],
    bundle: &GroupBundle,
) -> Result<GroupBundle> {
    check_simplicial_map(source, &bundle.base, map)?;
    let normals = map
        .iter()
        .map(|&v| bundle.vertex_normals[v].clone())
        .collect();
    let signs = source
        .edges()
        .iter()
        .map(|e| {
            let image = image_of(map, e);
            if image.len() == 1 {
                1
            } else {
                bundle.edge_signs[bundle.base.index_of(&image).expect("checked")]
            }
        })
        .collect();
    validate_bundle(source.clone(), bundle.rank, normals, signs)
}
