//! Exact frames in Q^k and the canonical frame of an oriented plane.
//!
//! Unit length would leave the rationals, so canonical frames are
//! orthogonal primitive integer vectors instead of orthonormal ones.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, primitive_integer_vector, rank, rref};
use crate::ordered_group::{LinearFunctional, OrderedGroup};

/// m linearly independent vectors in Q^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    k: usize,
    vectors: Vec<Vec<BigRational>>,
}

/// Frame on disk: `{"k": 2, "vectors": [["2","0"],["1","3"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFrame {
    pub k: usize,
    pub vectors: Vec<Vec<String>>,
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Frame {
    pub fn new(k: usize, vectors: Vec<Vec<BigRational>>) -> Result<Self> {
        if vectors.is_empty() || vectors.len() > k {
            return Err(Error::input(format!(
                "a frame in dimension {k} needs between 1 and {k} vectors, got {}",
                vectors.len()
            )));
        }
        for v in &vectors {
            Error::check_len(k, v.len())?;
        }
        if rank(&vectors) < vectors.len() {
            return Err(Error::Rank("frame vectors are linearly dependent".into()));
        }
        Ok(Frame { k, vectors })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        Self::new(
            k,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn from_raw(raw: &RawFrame) -> Result<Self> {
        let vectors = raw
            .vectors
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        s.trim()
                            .parse::<BigRational>()
                            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.k, vectors)
    }

    pub fn to_raw(&self) -> RawFrame {
        RawFrame {
            k: self.k,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    /// Applies `vectors ↦ c · vectors` for an m×m matrix `c`.
    pub fn reparametrize(&self, c: &[Vec<BigRational>]) -> Result<Frame> {
        Error::check_len(self.len(), c.len())?;
        let vectors = c
            .iter()
            .map(|row| {
                Error::check_len(self.len(), row.len())?;
                Ok((0..self.k)
                    .map(|j| row.iter().zip(&self.vectors).map(|(a, v)| a * &v[j]).sum())
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Frame::new(self.k, vectors)
    }
}

/// A plane with orientation, represented by its canonical frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedPlane {
    pub canonical_frame: Vec<Vec<BigInt>>,
    /// +1 when the input frame agrees with the unoriented canonical basis.
    pub orientation: i8,
}

impl OrientedPlane {
    pub fn dim(&self) -> usize {
        self.canonical_frame.len()
    }

    pub fn as_frame(&self) -> Frame {
        let k = self.canonical_frame[0].len();
        Frame::new(
            k,
            self.canonical_frame
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|x| BigRational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
        )
        .expect("canonical frames are independent")
    }
}

impl fmt::Display for OrientedPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vecs: Vec<String> = self
            .canonical_frame
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let sign = if self.orientation > 0 { '+' } else { '-' };
        write!(f, "[{}] orientation {sign}1", vecs.join(", "))
    }
}

/// Canonical frame of the oriented plane spanned by `f`.
///
/// The reduced row-echelon basis of the span is orthogonalized without
/// normalization, each vector is scaled to a primitive integer vector with
/// positive leading entry, and the last vector is negated when `f` has the
/// opposite orientation.
pub fn standard_frame(f: &Frame) -> OrientedPlane {
    let mut basis = f.vectors.clone();
    rref(&mut basis);
    let mut ortho: Vec<Vec<BigRational>> = Vec::with_capacity(basis.len());
    for v in basis {
        let mut u = v.clone();
        for w in &ortho {
            let c = dot(&v, w) / dot(w, w);
            for (ui, wi) in u.iter_mut().zip(w) {
                *ui -= &c * wi;
            }
        }
        ortho.push(u);
    }
    let mut canonical: Vec<Vec<BigInt>> = ortho
        .iter()
        .map(|u| {
            let mut p = primitive_integer_vector(u);
            if p.iter()
                .find(|x| !x.is_zero())
                .is_some_and(Signed::is_negative)
            {
                p.iter_mut().for_each(|x| *x = -&*x);
            }
            p
        })
        .collect();

    // canonical vectors are orthogonal, so sign det(change of basis) equals
    // sign det(f · canonicalᵀ)
    let gram: Vec<Vec<BigRational>> = f
        .vectors
        .iter()
        .map(|v| {
            canonical
                .iter()
                .map(|c| {
                    v.iter()
                        .zip(c)
                        .map(|(a, b)| a * BigRational::from_integer(b.clone()))
                        .sum()
                })
                .collect()
        })
        .collect();
    let orientation = if determinant(&gram).is_negative() {
        let last = canonical.last_mut().expect("frames are nonempty");
        last.iter_mut().for_each(|x| *x = -&*x);
        -1
    } else {
        1
    };
    OrientedPlane {
        canonical_frame: canonical,
        orientation,
    }
}

pub fn same_oriented_plane(f1: &Frame, f2: &Frame) -> Result<bool> {
    Error::check_len(f1.ambient_dim(), f2.ambient_dim())?;
    Error::check_len(f1.len(), f2.len())?;
    Ok(standard_frame(f1) == standard_frame(f2))
}

/// Z^k ordered by the open half-space {normal > 0}.
pub fn hyperplane_to_group(normal: LinearFunctional) -> Result<OrderedGroup> {
    if normal.rank() < 2 {
        return Err(Error::input(format!(
            "hyperplane groups need rank at least 2, got {}",
            normal.rank()
        )));
    }
    Ok(OrderedGroup::hyperplane(normal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered_group::GroupElement;

    fn ints(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn worked_examples() {
        let id = standard_frame(&Frame::from_integers(&[vec![1, 0], vec![0, 1]]).unwrap());
        assert_eq!(id.canonical_frame, ints(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(id.orientation, 1);

        let pos = standard_frame(&Frame::from_integers(&[vec![2, 0], vec![1, 3]]).unwrap());
        assert_eq!(pos, id);

        let neg = standard_frame(&Frame::from_integers(&[vec![1, 3], vec![2, 0]]).unwrap());
        assert_eq!(neg.canonical_frame, ints(&[vec![1, 0], vec![0, -1]]));
        assert_eq!(neg.orientation, -1);

        let line = standard_frame(&Frame::from_integers(&[vec![3, 4]]).unwrap());
        assert_eq!(line.canonical_frame, ints(&[vec![3, 4]]));
        let back = standard_frame(&Frame::from_integers(&[vec![-3, -4]]).unwrap());
        assert_eq!(back.canonical_frame, ints(&[vec![-3, -4]]));
        assert_eq!(back.orientation, -1);
    }

    #[test]
    fn plane_in_three_space() {
        let f = Frame::from_integers(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let p = standard_frame(&f);
        // rref basis (1,0,-1), (0,1,1); orthogonalized (-1/2,1,1/2) → (1,-2,-1)
        // with positive leading entry; f's orientation then flips it
        let dots: BigInt = p.canonical_frame[0]
            .iter()
            .zip(&p.canonical_frame[1])
            .map(|(a, b)| a * b)
            .sum();
        assert!(dots.is_zero());
        assert_eq!(p.canonical_frame[0], ints(&[vec![1, 0, -1]])[0]);
        assert_eq!(p.as_frame().len(), 2);
    }

    #[test]
    fn comparisons() {
        let a = Frame::from_integers(&[vec![2, 0], vec![1, 3]]).unwrap();
        let b = Frame::from_integers(&[vec![1, 0], vec![0, 1]]).unwrap();
        let c = Frame::from_integers(&[vec![1, 3], vec![2, 0]]).unwrap();
        assert!(same_oriented_plane(&a, &a).unwrap());
        assert!(same_oriented_plane(&a, &b).unwrap());
        assert!(!same_oriented_plane(&a, &c).unwrap());
        let line = Frame::from_integers(&[vec![1, 0]]).unwrap();
        assert!(same_oriented_plane(&a, &line).is_err());
    }

    #[test]
    fn invalid_frames() {
        assert!(matches!(
            Frame::from_integers(&[vec![1, 2], vec![2, 4]]),
            Err(Error::Rank(_))
        ));
        assert!(Frame::from_integers(&[vec![1], vec![2], vec![3]]).is_err());
        let raw = RawFrame {
            k: 2,
            vectors: vec![vec!["1/2".into(), "x".into()]],
        };
        assert!(matches!(Frame::from_raw(&raw), Err(Error::Parse(_))));
    }

    #[test]
    fn raw_round_trip() {
        let raw = RawFrame {
            k: 2,
            vectors: vec![vec!["2".into(), "-1/3".into()]],
        };
        let f = Frame::from_raw(&raw).unwrap();
        assert_eq!(f.to_raw(), raw);
    }

    #[test]
    fn hyperplane_groups() {
        let f = LinearFunctional::parse(&["1", "√2"], Some(2)).unwrap();
        let g = hyperplane_to_group(f.clone()).unwrap();
        assert!(g.is_totally_ordered() && g.is_simple());
        let h = hyperplane_to_group(f.negated()).unwrap();
        let x = GroupElement::new(vec![3, -2]);
        assert_ne!(g.is_positive(&x).unwrap(), h.is_positive(&x).unwrap());

        let flat =
            hyperplane_to_group(LinearFunctional::parse(&["0", "1"], None).unwrap()).unwrap();
        assert!(!flat.is_totally_ordered());
        assert_eq!(flat.kernel_lattice(), vec![GroupElement::new(vec![1, 0])]);

        assert!(hyperplane_to_group(LinearFunctional::parse(&["1"], None).unwrap()).is_err());
    }
}
