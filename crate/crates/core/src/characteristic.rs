//! Poincare pairing, Wu and Stiefel-Whitney classes, the `w2` evaluation on
//! integral 2-cycles, and the intersection form of an oriented 4-manifold.

use crate::chains::{Chain, Cochain, Ring};
use crate::complex::SimplicialComplex;
use crate::cup::{cap_with_fundamental, cup, express_in_basis, steenrod_square, CohomologyBasis, CupError};
use crate::homology::{HomologyClassZ, HomologyError, IntegralHomology, Mod2Homology};
use crate::linalg::{smith_normal_form, z2_solve, BitVec, IntegerMatrix, Z2Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error(transparent)]
    Cup(#[from] CupError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("input is not a closed pseudomanifold: the mod-2 pairing in degree {0} is degenerate")]
    DegeneratePairing(usize),
    #[error("Wu class v{0} is nonzero although 2*{0} exceeds the dimension")]
    WuVanishing(usize),
    #[error("the intersection form needs a 4-dimensional complex, got dimension {0}")]
    WrongDimension(usize),
    #[error("the intersection form needs an oriented complex")]
    NonOrientable,
    #[error("intersection form is not unimodular (det {0})")]
    NotUnimodular(String),
    #[error("class has degree {0}, expected 2")]
    DegreeMismatch(usize),
    #[error("class has {found} free coordinates, the form has rank {expected}")]
    CoordinateLength { expected: usize, found: usize },
}

/// `(i, j) -> <B^k_i u B^{m-k}_j, [M]>` over Z2.
#[derive(Debug, Clone)]
pub struct PairingMatrix {
    pub degree: usize,
    pub matrix: Z2Matrix,
}

impl PairingMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

pub fn mod2_pairing(
    k: &SimplicialComplex,
    h: &Mod2Homology,
    fundamental: &Chain,
    degree: usize,
) -> Result<PairingMatrix, CharError> {
    let m = k.dimension();
    let left = h.cocycle_basis(degree);
    let right = h.cocycle_basis(m - degree);
    let mut matrix = Z2Matrix::zeros(left.len(), right.len());
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let v = cup(k, a, b)?.evaluate(fundamental).map_err(CupError::from)?;
            matrix.set(i, j, v == 1);
        }
    }
    let p = PairingMatrix { degree, matrix };
    if left.len() != right.len() || p.rank() != left.len() {
        return Err(CharError::DegeneratePairing(degree));
    }
    Ok(p)
}

/// A mod-2 cohomology class: coordinates in the cocycle basis of its degree and a representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassZ2 {
    pub degree: usize,
    pub coords: BitVec,
    pub representative: Cochain,
}

impl ClassZ2 {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn bits(&self) -> Vec<u8> {
        self.coords.to_bits()
    }
}

impl Serialize for ClassZ2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.bits().serialize(s)
    }
}

/// `v_0, ..., v_m`.
#[derive(Debug, Clone)]
pub struct WuClasses {
    pub classes: Vec<ClassZ2>,
}

/// `w_0, ..., w_m`.
#[derive(Debug, Clone)]
pub struct SWClasses {
    pub classes: Vec<ClassZ2>,
}

fn class_from_cocycle(
    k: &SimplicialComplex,
    h: &Mod2Homology,
    a: &Cochain,
) -> Result<ClassZ2, CharError> {
    let basis = CohomologyBasis::from_mod2(h, a.degree);
    let coords = express_in_basis(k, a, &basis)?;
    Ok(ClassZ2 {
        degree: a.degree,
        representative: basis.combine(k, &coords),
        coords,
    })
}

/// Solves `<v_i u x, [M]> = <Sq^i x, [M]>` over the basis of `H^{m-i}`.
pub fn wu_class(
    k: &SimplicialComplex,
    h: &Mod2Homology,
    fundamental: &Chain,
    i: usize,
) -> Result<ClassZ2, CharError> {
    let m = k.dimension();
    let basis = CohomologyBasis::from_mod2(h, i);
    let pairing = mod2_pairing(k, h, fundamental, i)?;
    let rhs: Vec<bool> = h
        .cocycle_basis(m - i)
        .iter()
        .map(|x| -> Result<bool, CharError> {
            let sq = steenrod_square(k, i, x)?;
            Ok(sq.evaluate(fundamental).map_err(CupError::from)? == 1)
        })
        .collect::<Result<_, _>>()?;
    let coords = z2_solve(&pairing.matrix.transpose(), &BitVec::from_bools(&rhs))
        .map_err(|e| HomologyError::Internal(e.to_string()))?
        .ok_or(CharError::DegeneratePairing(i))?;
    if 2 * i > m && !coords.is_zero() {
        return Err(CharError::WuVanishing(i));
    }
    Ok(ClassZ2 {
        degree: i,
        representative: basis.combine(k, &coords),
        coords,
    })
}

pub fn wu_classes(k: &SimplicialComplex, h: &Mod2Homology, fundamental: &Chain) -> Result<WuClasses, CharError> {
    let classes = (0..=k.dimension())
        .map(|i| wu_class(k, h, fundamental, i))
        .collect::<Result<_, _>>()?;
    Ok(WuClasses { classes })
}

/// `w_k = sum_i Sq^i(v_{k-i})`.
pub fn stiefel_whitney(k: &SimplicialComplex, h: &Mod2Homology, wu: &WuClasses) -> Result<SWClasses, CharError> {
    let m = k.dimension();
    let mut classes = Vec::with_capacity(m + 1);
    for deg in 0..=m {
        let mut acc = Cochain::zero(k, deg, Ring::Z2);
        for i in 0..=deg {
            let v = &wu.classes[deg - i];
            if v.is_zero() {
                continue;
            }
            acc = acc.add(&steenrod_square(k, i, &v.representative)?).map_err(CupError::from)?;
        }
        classes.push(class_from_cocycle(k, h, &acc)?);
    }
    Ok(SWClasses { classes })
}

/// True when `<w_2, rho_2 g> = 1` for some generator `g` of `H_2(M; Z)`.
pub fn w2_criterion(integral: &IntegralHomology, sw: &SWClasses) -> Result<bool, CharError> {
    let Some(w2) = sw.classes.get(2) else {
        return Ok(false);
    };
    for g in integral.group(2).generators() {
        if w2.representative.evaluate(&g.reduce_mod2()).map_err(CupError::from)? == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Mod-2 value `<w_2, rho_2 alpha>` for a class given in the generator basis.
pub fn w2_evaluation(
    k: &SimplicialComplex,
    integral: &IntegralHomology,
    sw: &SWClasses,
    alpha: &HomologyClassZ,
) -> Result<u8, CharError> {
    if alpha.degree != 2 {
        return Err(CharError::DegreeMismatch(alpha.degree));
    }
    let Some(w2) = sw.classes.get(2) else {
        return Ok(0);
    };
    let cycle = integral.group(2).representative(k, alpha)?;
    Ok(w2.representative.evaluate(&cycle.reduce_mod2()).map_err(CupError::from)? as u8)
}

/// Symmetric integer form on the free generators of `H_2(M^4; Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntersectionForm {
    pub matrix: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn determinant(&self) -> BigInt {
        IntegerMatrix::from_rows(&self.matrix).determinant()
    }

    /// Positive minus negative eigenvalue count, via Sylvester diagonalization over Q.
    #[allow(clippy::needless_range_loop)]
    pub fn signature(&self) -> i64 {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut sig = 0;
        let mut i = 0;
        while i < n {
            if a[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(i, j);
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                    // replace e_i by e_i + e_j, which has square 2 a_ij != 0
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[i][c] += v;
                    }
                    for r in 0..n {
                        let v = a[r][j].clone();
                        a[r][i] += v;
                    }
                } else {
                    i += 1;
                    continue;
                }
            }
            let p = a[i][i].clone();
            sig += if p.is_positive() { 1 } else { -1 };
            for r in i + 1..n {
                let f = a[r][i].clone() / p.clone();
                for c in i..n {
                    let v = f.clone() * a[i][c].clone();
                    a[r][c] -= v;
                }
            }
            for c in i + 1..n {
                let f = a[i][c].clone() / p.clone();
                for r in i..n {
                    let v = f.clone() * a[r][i].clone();
                    a[r][c] -= v;
                }
            }
            i += 1;
        }
        sig
    }
}

fn to_i64(x: &BigInt) -> Result<i64, CharError> {
    x.to_i64().ok_or(CharError::Homology(HomologyError::Overflow))
}

/// `Q_ij = <PD g_i u PD g_j, [M]>`, where `PD g_i` is found by inverting the
/// matrix of `- cap [M]` from free `H^2` to free `H_2`.
///
/// A triangulation carries no preferred orientation, so `[M]` is taken with the
/// sign that makes the signature nonnegative; with signature zero the given
/// fundamental cycle is used as is.
pub fn intersection_form(
    k: &SimplicialComplex,
    integral: &IntegralHomology,
    fundamental: Option<&Chain>,
) -> Result<IntersectionForm, CharError> {
    if k.dimension() != 4 {
        return Err(CharError::WrongDimension(k.dimension()));
    }
    let top = fundamental.ok_or(CharError::NonOrientable)?;
    let phis = integral.free_cohomology_generators(2)?;
    let r = phis.len();
    if r != integral.group(2).rank {
        return Err(HomologyError::Internal("free ranks of H^2 and H_2 differ".into()).into());
    }
    let mut cap = IntegerMatrix::zeros(r, r);
    for (j, phi) in phis.iter().enumerate() {
        let c = cap_with_fundamental(k, phi, top)?;
        let class = integral.class_of(k, &c)?;
        for (i, &x) in class.free.iter().enumerate() {
            cap.set(i, j, BigInt::from(x));
        }
    }
    let snf = smith_normal_form(&cap);
    if snf.rank() != r || snf.diag.iter().take(r).any(|d| !d.is_one()) {
        return Err(CharError::NotUnimodular(cap.determinant().to_string()));
    }
    // U C V = I, so C^{-1} = V U; column i of C^{-1} holds PD(g_i) in the phi basis
    let inv = snf.v.mul(&snf.u);
    let mut p = IntegerMatrix::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            let v = cup(k, &phis[a], &phis[b])?.evaluate(top).map_err(CupError::from)?;
            p.set(a, b, BigInt::from(v));
        }
    }
    let q = inv.transpose().mul(&p).mul(&inv);
    let matrix = (0..r)
        .map(|i| (0..r).map(|j| to_i64(q.get(i, j))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut form = IntersectionForm { matrix };
    if form.signature() < 0 {
        // orient [M] so that the signature is nonnegative
        for row in form.matrix.iter_mut() {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
    }
    if form.determinant().abs() != BigInt::one() {
        return Err(CharError::NotUnimodular(form.determinant().to_string()));
    }
    Ok(form)
}

/// `a^T Q a` on the free coordinates; torsion contributes nothing.
pub fn self_intersection(q: &IntersectionForm, alpha: &HomologyClassZ) -> Result<i64, CharError> {
    if alpha.degree != 2 {
        return Err(CharError::DegreeMismatch(alpha.degree));
    }
    if alpha.free.len() != q.rank() {
        return Err(CharError::CoordinateLength {
            expected: q.rank(),
            found: alpha.free.len(),
        });
    }
    let mut acc = BigInt::from(0);
    for (i, row) in q.matrix.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            acc += BigInt::from(alpha.free[i]) * x * alpha.free[j];
        }
    }
    to_i64(&acc)
}
