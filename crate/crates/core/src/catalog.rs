//! Small triangulations used as test and demo bases.

use crate::error::{Error, Result};
use crate::gf2_complex::SimplicialComplex;

fn build(n: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(n, facets).expect("catalog complexes are well formed")
}

pub fn point() -> SimplicialComplex {
    build(1, &[])
}

/// Boundary of an n-gon, n ≥ 3.
pub fn circle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::input(format!(
            "a circle needs at least 3 vertices, got {n}"
        )));
    }
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Ok(build(n, &edges))
}

pub fn filled_triangle() -> SimplicialComplex {
    build(3, &[vec![0, 1, 2]])
}

/// Boundary of the tetrahedron, a 2-sphere.
pub fn sphere() -> SimplicialComplex {
    build(
        4,
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
}

/// The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn torus() -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    build(7, &facets)
}

/// The 6-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    let facets = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    build(6, &facets.map(|f| f.to_vec()))
}

/// Cone over an n-gon: contractible.
pub fn cone_over_circle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::input(format!(
            "a circle needs at least 3 vertices, got {n}"
        )));
    }
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n, n]).collect();
    Ok(build(n + 1, &facets))
}

/// Two triangles sharing vertex 0.
pub fn figure_eight() -> SimplicialComplex {
    build(
        5,
        &[
            vec![0, 1],
            vec![1, 2],
            vec![0, 2],
            vec![0, 3],
            vec![3, 4],
            vec![0, 4],
        ],
    )
}

/// Looks up a catalog complex by name, e.g. `circle`, `circle:6`, `torus`.
pub fn by_name(name: &str) -> Result<SimplicialComplex> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => {
            let n = a
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad size in complex name {name:?}")))?;
            (b, Some(n))
        }
        None => (name, None),
    };
    match (base, arg) {
        ("point", None) => Ok(point()),
        ("circle", n) => circle(n.unwrap_or(3)),
        ("triangle", None) => Ok(filled_triangle()),
        ("sphere", None) => Ok(sphere()),
        ("torus", None) => Ok(torus()),
        ("rp2", None) => Ok(projective_plane()),
        ("cone", n) => cone_over_circle(n.unwrap_or(3)),
        ("figure-eight", None) => Ok(figure_eight()),
        _ => Err(Error::input(format!("unknown complex {name:?}"))),
    }
}

pub const NAMES: &[&str] = &[
    "point",
    "circle",
    "triangle",
    "sphere",
    "torus",
    "rp2",
    "cone",
    "figure-eight",
];
