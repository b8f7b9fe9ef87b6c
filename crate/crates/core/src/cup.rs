//! Cochain operations on ordered simplices: cup and cup-i products, Steenrod
//! squares, cohomology coordinates and the cap product with a fundamental cycle.

use crate::chains::{coboundary, Chain, ChainError, Cochain, Ring};
use crate::complex::SimplicialComplex;
use crate::homology::{boundary_matrix_z2, HomologyError, Mod2Homology};
use crate::linalg::{z2_solve, BitVec};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CupError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("operation is only defined over Z2")]
    NeedsZ2,
    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(usize),
    #[error("degree {0} does not match the basis degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("no coboundary certificate: the cocycle is not in the span of the basis")]
    Inconsistent,
}

fn check_pair(k: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<(), CupError> {
    if a.ring != b.ring {
        return Err(ChainError::RingMismatch(a.ring, b.ring).into());
    }
    a.check_on(k)?;
    b.check_on(k)?;
    Ok(())
}

fn value_on(k: &SimplicialComplex, a: &Cochain, vertices: &[u32]) -> i64 {
    let idx = k
        .skeleton(a.degree)
        .index_of(vertices)
        .expect("faces of a simplex are in the complex");
    a.coeffs[idx]
}

/// Alexander-Whitney cup product: `(a u b)(s) = a(s[0..=p]) b(s[p..])`.
pub fn cup(k: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<Cochain, CupError> {
    check_pair(k, a, b)?;
    let (p, q) = (a.degree, b.degree);
    let n = p + q;
    let ring = a.ring;
    if n > k.dimension() {
        return Ok(Cochain::new(n, ring, Vec::new()));
    }
    let mut out = Cochain::zero(k, n, ring);
    for (i, s) in k.skeleton(n).iter().enumerate() {
        let x = value_on(k, a, &s[..=p]);
        if x == 0 {
            continue;
        }
        let y = value_on(k, b, &s[p..]);
        out.coeffs[i] = ring.normalize(x.checked_mul(y).ok_or(ChainError::Overflow)?);
    }
    Ok(out)
}

/// Calls `f` with every increasing `r`-subset of `0..n`.
fn for_each_subset(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Steenrod cup-i product over Z2.
///
/// For an n-simplex `s` with `n = p + q - i`, sum over subsets
/// `U = {u_0 < ... < u_{n-i-1}}` of `{0..n}`; `u_j` goes to `U0` when `u_j + j`
/// is even and to `U1` otherwise, and the term is `a(s - U1) b(s - U0)`.
/// For `i = 0` this is the Alexander-Whitney product.
pub fn cup_i(k: &SimplicialComplex, a: &Cochain, b: &Cochain, i: usize) -> Result<Cochain, CupError> {
    check_pair(k, a, b)?;
    if a.ring != Ring::Z2 {
        return Err(CupError::NeedsZ2);
    }
    let (p, q) = (a.degree, b.degree);
    if p + q < i || p + q - i > k.dimension() {
        return Ok(Cochain::new((p + q).saturating_sub(i), Ring::Z2, Vec::new()));
    }
    let n = p + q - i;
    let mut out = Cochain::zero(k, n, Ring::Z2);
    if i > p.min(q) {
        return Ok(out);
    }
    let mut front = Vec::with_capacity(n + 1);
    let mut back = Vec::with_capacity(n + 1);
    for (idx, s) in k.skeleton(n).iter().enumerate() {
        let mut acc = 0i64;
        for_each_subset(n + 1, n - i, |u| {
            let mut in0 = 0u64;
            let mut in1 = 0u64;
            for (j, &uj) in u.iter().enumerate() {
                if (uj + j) % 2 == 0 {
                    in0 |= 1 << uj;
                } else {
                    in1 |= 1 << uj;
                }
            }
            if (n + 1) - in1.count_ones() as usize != p + 1 {
                return;
            }
            front.clear();
            back.clear();
            for (t, &v) in s.iter().enumerate() {
                if in1 & (1 << t) == 0 {
                    front.push(v);
                }
                if in0 & (1 << t) == 0 {
                    back.push(v);
                }
            }
            acc ^= value_on(k, a, &front) & value_on(k, b, &back) & 1;
        });
        out.coeffs[idx] = acc;
    }
    Ok(out)
}

pub fn is_cocycle(k: &SimplicialComplex, a: &Cochain) -> Result<bool, CupError> {
    Ok(coboundary(k, a)?.is_zero())
}

/// `Sq^i(a) = a u_{p-i} a` for a mod-2 cocycle of degree `p`; zero for `i > p`.
pub fn steenrod_square(k: &SimplicialComplex, i: usize, a: &Cochain) -> Result<Cochain, CupError> {
    if a.ring != Ring::Z2 {
        return Err(CupError::NeedsZ2);
    }
    if !is_cocycle(k, a)? {
        return Err(CupError::NotACocycle(a.degree));
    }
    let p = a.degree;
    if i > p {
        let deg = p + i;
        let len = if deg <= k.dimension() { k.count(deg) } else { 0 };
        return Ok(Cochain::new(deg, Ring::Z2, vec![0; len]));
    }
    if i == 0 {
        return Ok(a.clone());
    }
    cup_i(k, a, a, p - i)
}

/// Mod-2 cohomology basis of one degree together with its dual cycle basis.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    pub degree: usize,
    pub ring: Ring,
    pub representatives: Vec<Cochain>,
    dual_cycles: Vec<Chain>,
}

impl CohomologyBasis {
    pub fn from_mod2(h: &Mod2Homology, degree: usize) -> Self {
        CohomologyBasis {
            degree,
            ring: Ring::Z2,
            representatives: h.cocycle_basis(degree).to_vec(),
            dual_cycles: h.cycle_basis(degree).to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Cocycle `sum c_j B_j`.
    pub fn combine(&self, k: &SimplicialComplex, coords: &BitVec) -> Cochain {
        let mut out = Cochain::zero(k, self.degree, Ring::Z2);
        for j in coords.ones() {
            for (o, &c) in out.coeffs.iter_mut().zip(&self.representatives[j].coeffs) {
                *o ^= c;
            }
        }
        out
    }
}

/// Coordinates of the class of a mod-2 cocycle, by evaluation on the dual cycles.
pub fn express_in_basis(k: &SimplicialComplex, a: &Cochain, basis: &CohomologyBasis) -> Result<BitVec, CupError> {
    if a.ring != Ring::Z2 {
        return Err(CupError::NeedsZ2);
    }
    if a.degree != basis.degree {
        return Err(CupError::DegreeMismatch(a.degree, basis.degree));
    }
    if !is_cocycle(k, a)? {
        return Err(CupError::NotACocycle(a.degree));
    }
    let mut out = BitVec::zeros(basis.len());
    for (j, z) in basis.dual_cycles.iter().enumerate() {
        out.set(j, a.evaluate(z)? == 1);
    }
    Ok(out)
}

/// A mod-2 cochain `u` with `du = a`, if one exists. Solves against the full
/// coboundary matrix, so intended for small complexes.
pub fn coboundary_certificate(k: &SimplicialComplex, a: &Cochain) -> Result<Option<Cochain>, CupError> {
    if a.ring != Ring::Z2 {
        return Err(CupError::NeedsZ2);
    }
    a.check_on(k)?;
    if a.degree == 0 {
        return Ok(a.is_zero().then(|| Cochain::new(0, Ring::Z2, Vec::new())));
    }
    let delta = boundary_matrix_z2(k, a.degree)?.transpose();
    let rhs = BitVec::from_parity(&a.coeffs);
    let sol = z2_solve(&delta, &rhs).map_err(|e| HomologyError::Internal(e.to_string()))?;
    Ok(sol.map(|u| Cochain::new(a.degree - 1, Ring::Z2, u.to_bits().into_iter().map(i64::from).collect())))
}

/// [`express_in_basis`] plus an explicit check that `a - sum c_j B_j` is a coboundary.
pub fn express_in_basis_certified(
    k: &SimplicialComplex,
    a: &Cochain,
    basis: &CohomologyBasis,
) -> Result<(BitVec, Cochain), CupError> {
    let coords = express_in_basis(k, a, basis)?;
    let diff = a.add(&basis.combine(k, &coords))?;
    let u = coboundary_certificate(k, &diff)?.ok_or(CupError::Inconsistent)?;
    Ok((coords, u))
}

/// `a cap c = sum_s c(s) a(s[0..=p]) s[p..]` for a top-dimensional chain `c`.
pub fn cap_with_fundamental(k: &SimplicialComplex, a: &Cochain, fundamental: &Chain) -> Result<Chain, CupError> {
    a.check_on(k)?;
    fundamental.check_on(k)?;
    if a.ring != fundamental.ring {
        return Err(ChainError::RingMismatch(a.ring, fundamental.ring).into());
    }
    let m = fundamental.degree;
    let p = a.degree;
    if p > m {
        return Err(ChainError::DegreeOutOfRange(p, m).into());
    }
    let ring = a.ring;
    let mut out = Chain::zero(k, m - p, ring);
    let back_table = k.skeleton(m - p);
    for (i, s) in k.skeleton(m).iter().enumerate() {
        let c = fundamental.coeffs[i];
        if c == 0 {
            continue;
        }
        let x = value_on(k, a, &s[..=p]);
        if x == 0 {
            continue;
        }
        let j = back_table.index_of(&s[p..]).expect("back face present");
        let v = x
            .checked_mul(c)
            .and_then(|t| out.coeffs[j].checked_add(t))
            .ok_or(ChainError::Overflow)?;
        out.coeffs[j] = ring.normalize(v);
    }
    Ok(out)
}
