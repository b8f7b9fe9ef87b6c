//! Chains and cochains: dense coefficient vectors over the sorted simplices of one degree.

use crate::complex::SimplicialComplex;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Ring {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Z2")]
    Z2,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Z2 => write!(f, "Z2"),
        }
    }
}

impl Ring {
    #[inline]
    pub fn normalize(self, x: i64) -> i64 {
        match self {
            Ring::Z => x,
            Ring::Z2 => x & 1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("degree {degree} cochain has {found} coefficients but the complex has {expected} simplices")]
    ComplexMismatch {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("degree {0} out of range for a complex of dimension {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("integer overflow in chain arithmetic")]
    Overflow,
}

macro_rules! coefficient_vector {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name {
            pub degree: usize,
            pub ring: Ring,
            pub coeffs: Vec<i64>,
        }

        impl $name {
            pub fn zero(k: &SimplicialComplex, degree: usize, ring: Ring) -> Self {
                $name {
                    degree,
                    ring,
                    coeffs: vec![0; k.count(degree)],
                }
            }

            pub fn new(degree: usize, ring: Ring, coeffs: Vec<i64>) -> Self {
                let coeffs = coeffs.into_iter().map(|c| ring.normalize(c)).collect();
                $name {
                    degree,
                    ring,
                    coeffs,
                }
            }

            pub fn len(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(|&c| c == 0)
            }

            /// Checks that the coefficient vector matches `k`'s skeleton.
            pub fn check_on(&self, k: &SimplicialComplex) -> Result<(), ChainError> {
                if self.degree > k.dimension() {
                    return Err(ChainError::DegreeOutOfRange(self.degree, k.dimension()));
                }
                let expected = k.count(self.degree);
                if self.coeffs.len() != expected {
                    return Err(ChainError::ComplexMismatch {
                        degree: self.degree,
                        expected,
                        found: self.coeffs.len(),
                    });
                }
                Ok(())
            }

            pub fn reduce_mod2(&self) -> Self {
                Self::new(self.degree, Ring::Z2, self.coeffs.clone())
            }

            pub fn add(&self, other: &Self) -> Result<Self, ChainError> {
                self.combine(other, 1)
            }

            pub fn sub(&self, other: &Self) -> Result<Self, ChainError> {
                self.combine(other, -1)
            }

            pub fn scale(&self, c: i64) -> Result<Self, ChainError> {
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|&x| x.checked_mul(c).map(|v| self.ring.normalize(v)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or(ChainError::Overflow)?;
                Ok($name {
                    degree: self.degree,
                    ring: self.ring,
                    coeffs,
                })
            }

            fn combine(&self, other: &Self, sign: i64) -> Result<Self, ChainError> {
                if self.ring != other.ring {
                    return Err(ChainError::RingMismatch(self.ring, other.ring));
                }
                if self.degree != other.degree || self.coeffs.len() != other.coeffs.len() {
                    return Err(ChainError::ComplexMismatch {
                        degree: self.degree,
                        expected: self.coeffs.len(),
                        found: other.coeffs.len(),
                    });
                }
                let coeffs = self
                    .coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(&a, &b)| {
                        b.checked_mul(sign)
                            .and_then(|b| a.checked_add(b))
                            .map(|v| self.ring.normalize(v))
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or(ChainError::Overflow)?;
                Ok($name {
                    degree: self.degree,
                    ring: self.ring,
                    coeffs,
                })
            }
        }
    };
}

coefficient_vector!(Chain);
coefficient_vector!(Cochain);

impl Cochain {
    /// The cochain that is 1 on every vertex.
    pub fn unit(k: &SimplicialComplex, ring: Ring) -> Self {
        Cochain {
            degree: 0,
            ring,
            coeffs: vec![1; k.count(0)],
        }
    }

    /// Kronecker pairing `<self, c>`, reduced in the cochain's ring.
    pub fn evaluate(&self, c: &Chain) -> Result<i64, ChainError> {
        if self.degree != c.degree || self.coeffs.len() != c.coeffs.len() {
            return Err(ChainError::ComplexMismatch {
                degree: self.degree,
                expected: self.coeffs.len(),
                found: c.coeffs.len(),
            });
        }
        let mut acc: i64 = 0;
        for (&a, &b) in self.coeffs.iter().zip(&c.coeffs) {
            if a != 0 && b != 0 {
                acc = a
                    .checked_mul(b)
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(ChainError::Overflow)?;
                if self.ring == Ring::Z2 {
                    acc &= 1;
                }
            }
        }
        Ok(self.ring.normalize(acc))
    }
}

/// Indices and signs of the codimension-one faces of `simplex`.
pub(crate) fn faces_with_signs<'a>(
    k: &'a SimplicialComplex,
    degree: usize,
    simplex: &'a [u32],
) -> impl Iterator<Item = (usize, i64)> + 'a {
    let table = k.skeleton(degree - 1);
    let mut buf = Vec::with_capacity(simplex.len());
    (0..simplex.len()).map(move |i| {
        buf.clear();
        buf.extend_from_slice(&simplex[..i]);
        buf.extend_from_slice(&simplex[i + 1..]);
        let idx = table.index_of(&buf).expect("face present in skeleton");
        (idx, if i % 2 == 0 { 1 } else { -1 })
    })
}

/// Boundary columns of degree `degree` as sparse `(face index, sign)` lists.
pub(crate) fn sparse_boundary(k: &SimplicialComplex, degree: usize) -> Vec<Vec<(u32, i64)>> {
    if degree == 0 {
        return vec![Vec::new(); k.count(0)];
    }
    k.skeleton(degree)
        .iter()
        .map(|s| {
            let mut col: Vec<(u32, i64)> = faces_with_signs(k, degree, s)
                .map(|(i, c)| (i as u32, c))
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect()
}

pub fn boundary(k: &SimplicialComplex, c: &Chain) -> Result<Chain, ChainError> {
    c.check_on(k)?;
    if c.degree == 0 {
        return Ok(Chain {
            degree: 0,
            ring: c.ring,
            coeffs: Vec::new(),
        });
    }
    let mut out = Chain::zero(k, c.degree - 1, c.ring);
    for (i, s) in k.skeleton(c.degree).iter().enumerate() {
        let x = c.coeffs[i];
        if x == 0 {
            continue;
        }
        for (f, sign) in faces_with_signs(k, c.degree, s) {
            let v = out.coeffs[f]
                .checked_add(sign * x)
                .ok_or(ChainError::Overflow)?;
            out.coeffs[f] = c.ring.normalize(v);
        }
    }
    Ok(out)
}

pub fn coboundary(k: &SimplicialComplex, a: &Cochain) -> Result<Cochain, ChainError> {
    a.check_on(k)?;
    let deg = a.degree + 1;
    if deg > k.dimension() {
        return Ok(Cochain {
            degree: deg,
            ring: a.ring,
            coeffs: Vec::new(),
        });
    }
    let mut out = Cochain::zero(k, deg, a.ring);
    for (i, s) in k.skeleton(deg).iter().enumerate() {
        let mut acc: i64 = 0;
        for (f, sign) in faces_with_signs(k, deg, s) {
            acc = acc
                .checked_add(sign * a.coeffs[f])
                .ok_or(ChainError::Overflow)?;
        }
        out.coeffs[i] = a.ring.normalize(acc);
    }
    Ok(out)
}
