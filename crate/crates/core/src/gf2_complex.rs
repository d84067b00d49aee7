//! Finite simplicial complexes and their cohomology with Z/2 coefficients.
//!
//! Simplices are strictly increasing vertex tuples. That order is the one
//! used by the front-face/back-face cup product.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, EchelonBasis, Gf2Matrix};

pub type Simplex = Vec<usize>;

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

/// Result of [`validate_complex`]: the complex plus any faces that had to be
/// added to close it under taking faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validated {
    pub complex: SimplicialComplex,
    pub added_faces: Vec<Simplex>,
}

impl Validated {
    pub fn has_warnings(&self) -> bool {
        !self.added_faces.is_empty()
    }
}

/// Complex as it appears on disk: `{"vertices": n, "simplices": [[0,1],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

fn faces_of(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).map(move |skip| {
        s.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Checks and normalizes a raw simplex list.
///
/// Vertices `0..vertex_count` are always present. Every listed simplex is
/// sorted; a missing face of positive dimension is an error in strict mode and
/// is added and reported in `added_faces` otherwise.
pub fn validate_complex(
    vertex_count: usize,
    raw: &[Vec<usize>],
    strict: bool,
) -> Result<Validated> {
    if vertex_count == 0 {
        return Err(Error::input("complex needs at least one vertex"));
    }
    let mut given: BTreeSet<Simplex> = BTreeSet::new();
    for s in raw {
        if s.is_empty() {
            return Err(Error::input("empty simplex"));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
            return Err(Error::input(format!(
                "vertex {v} out of range in simplex {s:?} (vertex count {vertex_count})"
            )));
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input(format!("repeated vertex in simplex {s:?}")));
        }
        if !given.insert(sorted) {
            return Err(Error::input(format!("duplicate simplex {s:?}")));
        }
    }

    let mut all = given.clone();
    let mut added = BTreeSet::new();
    let mut stack: Vec<Simplex> = given.iter().cloned().collect();
    while let Some(s) = stack.pop() {
        if s.len() == 1 {
            continue;
        }
        for face in faces_of(&s) {
            if all.contains(&face) {
                continue;
            }
            if strict && face.len() > 1 {
                return Err(Error::input(format!(
                    "face {face:?} of simplex {s:?} is missing"
                )));
            }
            all.insert(face.clone());
            if face.len() > 1 {
                added.insert(face.clone());
            }
            stack.push(face);
        }
    }
    for v in 0..vertex_count {
        all.insert(vec![v]);
    }

    let top = all.iter().map(Vec::len).max().unwrap_or(1);
    let mut simplices = vec![Vec::new(); top];
    for s in all {
        simplices[s.len() - 1].push(s);
    }
    for layer in &mut simplices {
        layer.sort();
    }
    let mut added: Vec<Simplex> = added.into_iter().collect();
    added.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(Validated {
        complex: SimplicialComplex::from_layers(vertex_count, simplices),
        added_faces: added,
    })
}

impl SimplicialComplex {
    fn from_layers(vertex_count: usize, simplices: Vec<Vec<Simplex>>) -> Self {
        let index = simplices
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        SimplicialComplex {
            vertex_count,
            simplices,
            index,
        }
    }

    /// Builds the complex generated by `facets`, adding every face.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self> {
        Ok(validate_complex(vertex_count, facets, false)?.complex)
    }

    pub fn from_raw(raw: &RawComplex, strict: bool) -> Result<Validated> {
        validate_complex(raw.vertices, &raw.simplices, strict)
    }

    /// Every simplex of positive dimension; vertices are implied by the count.
    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            vertices: self.vertex_count,
            simplices: self.simplices.iter().skip(1).flatten().cloned().collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, Vec::len)
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn edges(&self) -> &[Simplex] {
        self.simplices(1)
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let p = simplex.len().checked_sub(1)?;
        self.index.get(p)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|p| {
                let n = self.count(p) as i64;
                if p % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Connected components of the 1-skeleton, each sorted, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Neighbours of each vertex with the connecting edge index, ascending.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges().iter().enumerate() {
            adj[e[0]].push((e[1], i));
            adj[e[1]].push((e[0], i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// A Z/2 cochain: one bit per p-simplex in the complex's simplex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z2Cochain {
    dim: usize,
    bits: BitVec,
}

/// Cochain as it appears on disk: `{"dim": 1, "support": [[0,1],[1,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCochain {
    pub dim: usize,
    pub support: Vec<Vec<usize>>,
}

impl Z2Cochain {
    pub fn zero(k: &SimplicialComplex, p: usize) -> Self {
        Z2Cochain {
            dim: p,
            bits: BitVec::zeros(k.count(p)),
        }
    }

    /// The constant cochain 1 in degree `p`.
    pub fn ones(k: &SimplicialComplex, p: usize) -> Self {
        Z2Cochain {
            dim: p,
            bits: BitVec::ones(k.count(p)),
        }
    }

    pub fn from_bits(k: &SimplicialComplex, p: usize, bits: BitVec) -> Result<Self> {
        Error::check_len(k.count(p), bits.len())?;
        Ok(Z2Cochain { dim: p, bits })
    }

    pub fn from_support(k: &SimplicialComplex, p: usize, support: &[Vec<usize>]) -> Result<Self> {
        let mut c = Self::zero(k, p);
        for s in support {
            if s.len() != p + 1 {
                return Err(Error::input(format!(
                    "simplex {s:?} does not have dimension {p}"
                )));
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            let i = k
                .index_of(&sorted)
                .ok_or_else(|| Error::input(format!("simplex {s:?} is not in the complex")))?;
            c.bits.set(i, true);
        }
        Ok(c)
    }

    pub fn from_raw(k: &SimplicialComplex, raw: &RawCochain) -> Result<Self> {
        Self::from_support(k, raw.dim, &raw.support)
    }

    pub fn to_raw(&self, k: &SimplicialComplex) -> RawCochain {
        RawCochain {
            dim: self.dim,
            support: self.support(k),
        }
    }

    /// Indicator cochain of a single simplex.
    pub fn indicator(k: &SimplicialComplex, simplex: &[usize]) -> Result<Self> {
        Self::from_support(k, simplex.len().saturating_sub(1), &[simplex.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn value_on(&self, k: &SimplicialComplex, simplex: &[usize]) -> Option<bool> {
        k.index_of(simplex).map(|i| self.bits.get(i))
    }

    pub fn support(&self, k: &SimplicialComplex) -> Vec<Simplex> {
        let layer = k.simplices(self.dim);
        self.bits.iter_ones().map(|i| layer[i].clone()).collect()
    }

    pub fn add(&self, other: &Z2Cochain) -> Result<Z2Cochain> {
        Error::check_len(self.dim, other.dim)?;
        Error::check_len(self.bits.len(), other.bits.len())?;
        Ok(Z2Cochain {
            dim: self.dim,
            bits: self.bits.xor(&other.bits),
        })
    }

    fn check_on(&self, k: &SimplicialComplex) -> Result<()> {
        Error::check_len(k.count(self.dim), self.bits.len())
    }
}

/// Coboundary of the indicator of each p-simplex, as vectors over the
/// (p+1)-simplices. Works for every p, including p ≥ dim K.
fn cofaces(k: &SimplicialComplex, p: usize) -> Vec<BitVec> {
    let n_up = k.count(p + 1);
    let mut out = vec![BitVec::zeros(n_up); k.count(p)];
    for (j, s) in k.simplices(p + 1).iter().enumerate() {
        for face in faces_of(s) {
            let i = k.index_of(&face).expect("complex is closed under faces");
            out[i].set(j, true);
        }
    }
    out
}

fn delta(k: &SimplicialComplex, p: usize) -> Gf2Matrix {
    let n = k.count(p);
    let rows = k
        .simplices(p + 1)
        .iter()
        .map(|s| BitVec::from_indices(n, faces_of(s).map(|f| k.index_of(&f).expect("closed"))))
        .collect();
    Gf2Matrix::new(n, rows)
}

/// Matrix of δ_p : C^p → C^{p+1}; rows are (p+1)-simplices, columns p-simplices.
pub fn coboundary_matrix(k: &SimplicialComplex, p: usize) -> Result<Gf2Matrix> {
    if p >= k.dim() {
        return Err(Error::input(format!(
            "coboundary degree {p} out of range for a complex of dimension {}",
            k.dim()
        )));
    }
    Ok(delta(k, p))
}

pub fn coboundary(k: &SimplicialComplex, c: &Z2Cochain) -> Result<Z2Cochain> {
    c.check_on(k)?;
    Ok(Z2Cochain {
        dim: c.dim + 1,
        bits: delta(k, c.dim).mul_vec(&c.bits),
    })
}

/// Ok when `δc = 0`; otherwise names the first (p+1)-simplex where it fails.
pub fn check_cocycle(k: &SimplicialComplex, c: &Z2Cochain) -> Result<()> {
    let d = coboundary(k, c)?;
    match d.bits.first_one() {
        None => Ok(()),
        Some(i) => Err(Error::CocycleViolation {
            simplex: k.simplices(c.dim + 1)[i].clone(),
        }),
    }
}

pub fn is_cocycle(k: &SimplicialComplex, c: &Z2Cochain) -> bool {
    check_cocycle(k, c).is_ok()
}

/// Reduced echelon basis of the coboundaries im δ_{p-1} ⊂ C^p.
pub fn coboundary_space(k: &SimplicialComplex, p: usize) -> EchelonBasis {
    let n = k.count(p);
    match p.checked_sub(1) {
        None => EchelonBasis::new(n),
        Some(q) => EchelonBasis::spanned_by(n, cofaces(k, q)),
    }
}

/// Canonical basis of H^p(K; Z/2).
///
/// Representatives are reduced modulo the coboundaries and then brought into
/// reduced echelon form, so they depend only on the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyBasis {
    dim: usize,
    ambient: usize,
    representatives: Vec<Z2Cochain>,
    coboundaries: EchelonBasis,
    classes: EchelonBasis,
}

pub fn cohomology(k: &SimplicialComplex, p: usize) -> CohomologyBasis {
    let coboundaries = coboundary_space(k, p);
    let cocycles = delta(k, p).nullspace();
    let classes =
        EchelonBasis::spanned_by(k.count(p), cocycles.iter().map(|z| coboundaries.reduce(z)));
    let representatives = classes
        .rows()
        .iter()
        .map(|r| Z2Cochain {
            dim: p,
            bits: r.clone(),
        })
        .collect();
    CohomologyBasis {
        dim: p,
        ambient: k.count(p),
        representatives,
        coboundaries,
        classes,
    }
}

impl CohomologyBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Z2Cochain] {
        &self.representatives
    }

    pub fn coboundary_rank(&self) -> usize {
        self.coboundaries.dim()
    }

    /// Canonical representative of the class of `c`. Two cocycles are
    /// cohomologous exactly when their normal forms agree.
    pub fn normal_form(&self, c: &Z2Cochain) -> Result<Z2Cochain> {
        Error::check_len(self.dim, c.dim)?;
        Error::check_len(self.coboundaries_len(), c.bits.len())?;
        Ok(Z2Cochain {
            dim: self.dim,
            bits: self.coboundaries.reduce(&c.bits),
        })
    }

    /// Coordinates of the class of a cocycle in terms of `representatives()`.
    pub fn coordinates(&self, c: &Z2Cochain) -> Result<BitVec> {
        let nf = self.normal_form(c)?;
        self.classes
            .coordinates(&nf.bits)
            .ok_or_else(|| Error::input("cochain is not a cocycle"))
    }

    pub fn is_trivial(&self, c: &Z2Cochain) -> Result<bool> {
        Ok(self.normal_form(c)?.is_zero())
    }

    /// The class with the given coordinates.
    pub fn combine(&self, coords: &BitVec) -> Result<Z2Cochain> {
        Error::check_len(self.rank(), coords.len())?;
        let mut bits = BitVec::zeros(self.coboundaries_len());
        for i in coords.iter_ones() {
            bits.xor_assign(&self.representatives[i].bits);
        }
        Ok(Z2Cochain {
            dim: self.dim,
            bits,
        })
    }

    /// All 2^rank classes; element `m` has coordinate bit `i` equal to bit
    /// `i` of `m`.
    pub fn elements(&self) -> Vec<Z2Cochain> {
        let r = self.rank();
        assert!(r < 31, "cohomology rank {r} too large to enumerate");
        (0..1usize << r)
            .map(|m| {
                let coords = BitVec::from_indices(r, (0..r).filter(|i| m >> i & 1 == 1));
                self.combine(&coords).expect("rank matches")
            })
            .collect()
    }

    fn coboundaries_len(&self) -> usize {
        self.ambient
    }
}

pub fn cohomologous(k: &SimplicialComplex, c1: &Z2Cochain, c2: &Z2Cochain) -> Result<bool> {
    Error::check_len(c1.dim, c2.dim)?;
    check_cocycle(k, c1)?;
    check_cocycle(k, c2)?;
    let sum = c1.add(c2)?;
    Ok(coboundary_space(k, c1.dim).contains(&sum.bits))
}

/// Front-face/back-face cup product.
pub fn cup_product(k: &SimplicialComplex, a: &Z2Cochain, b: &Z2Cochain) -> Result<Z2Cochain> {
    a.check_on(k)?;
    b.check_on(k)?;
    let (p, q) = (a.dim, b.dim);
    if p + q > k.dim() {
        return Err(Error::input(format!(
            "cup product of degrees {p} and {q} exceeds complex dimension {}",
            k.dim()
        )));
    }
    let bits = BitVec::from_indices(
        k.count(p + q),
        k.simplices(p + q).iter().enumerate().filter_map(|(i, s)| {
            let front = k.index_of(&s[..=p]).expect("closed");
            let back = k.index_of(&s[p..]).expect("closed");
            (a.bits.get(front) && b.bits.get(back)).then_some(i)
        }),
    );
    Ok(Z2Cochain { dim: p + q, bits })
}

/// Checks that `map` (vertex images) sends every simplex of `source` onto a
/// simplex of `target`, possibly of lower dimension.
pub fn check_simplicial_map(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    map: &[usize],
) -> Result<()> {
    Error::check_len(source.vertex_count(), map.len())?;
    if let Some(&v) = map.iter().find(|&&v| v >= target.vertex_count()) {
        return Err(Error::input(format!("vertex image {v} out of range")));
    }
    for p in 1..=source.dim() {
        for s in source.simplices(p) {
            let image = image_of(map, s);
            if !target.contains(&image) {
                return Err(Error::input(format!(
                    "simplex {s:?} maps to {image:?}, which is not a simplex of the target"
                )));
            }
        }
    }
    Ok(())
}

pub(crate) fn image_of(map: &[usize], s: &[usize]) -> Simplex {
    let image: BTreeSet<usize> = s.iter().map(|&v| map[v]).collect();
    image.into_iter().collect()
}

/// Pulls a cochain on `target` back along a simplicial map. Simplices whose
/// image is degenerate get 0.
pub fn pullback_cochain(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    map: &[usize],
    c: &Z2Cochain,
) -> Result<Z2Cochain> {
    check_simplicial_map(source, target, map)?;
    c.check_on(target)?;
    let p = c.dim;
    let bits = BitVec::from_indices(
        source.count(p),
        source.simplices(p).iter().enumerate().filter_map(|(i, s)| {
            let image = image_of(map, s);
            (image.len() == p + 1 && c.bits.get(target.index_of(&image).expect("checked")))
                .then_some(i)
        }),
    );
    Ok(Z2Cochain { dim: p, bits })
}
