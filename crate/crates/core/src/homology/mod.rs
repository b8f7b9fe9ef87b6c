//! Integral and mod-2 homology with explicit generators.
//!
//! The simplicial chain complex is first shrunk by unit-pivot elimination
//! (see [`reduce`]); the residual complex is small and its homology is read off
//! Smith normal forms. Generators and certificates are mapped back to
//! simplicial chains through the comparison maps of the reduction.

mod reduce;

use crate::chains::{boundary, sparse_boundary, Chain, ChainError, Cochain, Ring};
use crate::complex::{ManifoldReport, SimplicialComplex};
use crate::linalg::{smith_normal_form, BitVec, IntegerMatrix, Z2Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use reduce::{reduce, Reduction, SparseVec};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {0} out of range for a complex of dimension {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("integer coefficient overflow while reducing the chain complex")]
    Overflow,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("class has {found} {part} coordinates, the group has {expected}")]
    CoordinateLength {
        part: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("the integral fundamental class needs an oriented closed pseudomanifold")]
    NonOrientable,
    #[error("the fundamental class needs a closed pseudomanifold")]
    NotClosed,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Boundary matrix of degree `degree`: rows are (k-1)-simplices, columns k-simplices.
/// Over Z2 the entries are 0/1.
pub fn boundary_matrix(
    k: &SimplicialComplex,
    degree: usize,
    ring: Ring,
) -> Result<IntegerMatrix, HomologyError> {
    if degree == 0 || degree > k.dimension() {
        return Err(HomologyError::DegreeOutOfRange(degree, k.dimension()));
    }
    let mut m = IntegerMatrix::zeros(k.count(degree - 1), k.count(degree));
    for (j, col) in sparse_boundary(k, degree).into_iter().enumerate() {
        for (i, c) in col {
            m.set(i as usize, j, BigInt::from(ring.normalize(c)));
        }
    }
    Ok(m)
}

/// Bit-packed mod-2 boundary matrix.
pub fn boundary_matrix_z2(k: &SimplicialComplex, degree: usize) -> Result<Z2Matrix, HomologyError> {
    if degree == 0 || degree > k.dimension() {
        return Err(HomologyError::DegreeOutOfRange(degree, k.dimension()));
    }
    let mut m = Z2Matrix::zeros(k.count(degree - 1), k.count(degree));
    for (j, col) in sparse_boundary(k, degree).into_iter().enumerate() {
        for (i, _) in col {
            m.set(i as usize, j, true);
        }
    }
    Ok(m)
}

/// `H_k(M; Z)`: rank, torsion coefficients and generating cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub rank: usize,
    /// `t_1 | t_2 | ...`, each at least 2.
    pub torsion: Vec<u64>,
    pub free_generators: Vec<Chain>,
    /// Generator cycles paired with their orders.
    pub torsion_generators: Vec<(Chain, u64)>,
    /// `torsion_certificates[i]` is a chain whose boundary is `t_i` times torsion generator `i`.
    pub torsion_certificates: Vec<Chain>,
}

/// An element of `H_k(M; Z)` in the generator basis of its group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyClassZ {
    pub degree: usize,
    pub free: Vec<i64>,
    /// Residues in `[0, t_i)`.
    pub torsion: Vec<u64>,
    #[serde(skip)]
    pub torsion_orders: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Free generators followed by torsion generators.
    pub fn generators(&self) -> impl Iterator<Item = &Chain> {
        self.free_generators
            .iter()
            .chain(self.torsion_generators.iter().map(|(c, _)| c))
    }

    /// Builds a class from free coordinates and torsion residues (reduced here).
    pub fn class(&self, free: &[i64], torsion: &[i64]) -> Result<HomologyClassZ, HomologyError> {
        if free.len() != self.rank {
            return Err(HomologyError::CoordinateLength {
                part: "free",
                expected: self.rank,
                found: free.len(),
            });
        }
        if torsion.len() != self.torsion.len() {
            return Err(HomologyError::CoordinateLength {
                part: "torsion",
                expected: self.torsion.len(),
                found: torsion.len(),
            });
        }
        Ok(HomologyClassZ {
            degree: self.degree,
            free: free.to_vec(),
            torsion: torsion
                .iter()
                .zip(&self.torsion)
                .map(|(&r, &t)| r.rem_euclid(t as i64) as u64)
                .collect(),
            torsion_orders: self.torsion.clone(),
        })
    }

    pub fn zero_class(&self) -> HomologyClassZ {
        self.class(&vec![0; self.rank], &vec![0; self.torsion.len()])
            .expect("lengths match")
    }

    /// Explicit cycle `sum free_i g_i + sum r_j h_j` for a class of this group.
    pub fn representative(&self, k: &SimplicialComplex, class: &HomologyClassZ) -> Result<Chain, HomologyError> {
        if class.free.len() != self.rank || class.torsion.len() != self.torsion.len() {
            return Err(HomologyError::CoordinateLength {
                part: "free+torsion",
                expected: self.num_generators(),
                found: class.free.len() + class.torsion.len(),
            });
        }
        let mut c = Chain::zero(k, self.degree, Ring::Z);
        for (g, &x) in self.free_generators.iter().zip(&class.free) {
            c = c.add(&g.scale(x)?)?;
        }
        for ((g, _), &x) in self.torsion_generators.iter().zip(&class.torsion) {
            c = c.add(&g.scale(x as i64)?)?;
        }
        Ok(c)
    }
}

/// Homology of a single degree of a small dense complex `C_{k+1} -> C_k -> C_{k-1}`.
#[derive(Debug, Clone)]
struct LocalHomology {
    /// Kernel basis change: rows `r..n` of `V^{-1}` from the SNF of the outgoing map.
    kernel_coords: IntegerMatrix,
    /// `U'` from the SNF of the boundaries expressed in kernel coordinates.
    u_prime: IntegerMatrix,
    /// Invariant factors of the incoming boundaries (length `s`).
    factors: Vec<BigInt>,
    free: Vec<Vec<BigInt>>,
    torsion: Vec<(Vec<BigInt>, BigInt)>,
    certificates: Vec<Vec<BigInt>>,
}

impl LocalHomology {
    /// `outgoing`: `n_{k-1} x n_k`, `incoming`: `n_k x n_{k+1}`.
    fn compute(n: usize, outgoing: &IntegerMatrix, incoming: &IntegerMatrix) -> Self {
        debug_assert_eq!(outgoing.cols(), n);
        debug_assert_eq!(incoming.rows(), n);
        let snf = smith_normal_form(outgoing);
        let r = snf.rank();
        let kernel_rows: Vec<usize> = (r..n).collect();
        let kernel_cols: Vec<usize> = (r..n).collect();
        let kernel_basis = snf.v.select_cols(&kernel_cols);
        let kernel_coords = snf.v_inv.select_rows(&kernel_rows);
        let m = kernel_coords.mul(incoming);
        let snf2 = smith_normal_form(&m);
        let s = snf2.rank();
        let gens = kernel_basis.mul(&snf2.u_inv);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        let mut certificates = Vec::new();
        for j in 0..gens.cols() {
            if j < s {
                let t = snf2.diag[j].clone();
                if t > BigInt::one() {
                    torsion.push((gens.column(j), t));
                    certificates.push(snf2.v.column(j));
                }
            } else {
                free.push(gens.column(j));
            }
        }
        LocalHomology {
            kernel_coords,
            u_prime: snf2.u,
            factors: snf2.diag[..s].to_vec(),
            free,
            torsion,
            certificates,
        }
    }

    /// (free coordinates, torsion residues) of a cycle given in local coordinates.
    fn coordinates(&self, x: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let y = self.u_prime.mul_vec(&self.kernel_coords.mul_vec(x));
        let s = self.factors.len();
        let torsion = (0..s)
            .filter(|&j| self.factors[j] > BigInt::one())
            .map(|j| y[j].mod_floor(&self.factors[j]))
            .collect();
        (y[s..].to_vec(), torsion)
    }
}

fn dense_boundary(red: &Reduction, degree: usize) -> IntegerMatrix {
    let rows = if degree == 0 { 0 } else { red.cells[degree - 1].len() };
    let cols = red.cells[degree].len();
    let mut m = IntegerMatrix::zeros(rows, cols);
    for (j, col) in red.boundary[degree].iter().enumerate() {
        for &(i, c) in col {
            m.set(i as usize, j, BigInt::from(c));
        }
    }
    m
}

fn lift(local: &[BigInt], maps: &[SparseVec], len: usize) -> Result<Vec<i64>, HomologyError> {
    let mut out = vec![BigInt::zero(); len];
    for (x, map) in local.iter().zip(maps) {
        if x.is_zero() {
            continue;
        }
        for &(i, c) in map {
            out[i as usize] += x * c;
        }
    }
    out.into_iter()
        .map(|v| v.to_i64().ok_or(HomologyError::Overflow))
        .collect()
}

fn project(values: &[i64], maps: &[SparseVec]) -> Vec<BigInt> {
    maps.iter()
        .map(|map| {
            map.iter()
                .map(|&(i, c)| BigInt::from(values[i as usize]) * c)
                .sum()
        })
        .collect()
}

/// Integral homology in every degree, with class coordinates and free
/// integral cohomology computed on the same reduction.
#[derive(Debug, Clone)]
pub struct IntegralHomology {
    red: Reduction,
    local: Vec<LocalHomology>,
    local_co: Vec<LocalHomology>,
    groups: Vec<HomologyGroup>,
    sizes: Vec<usize>,
}

impl IntegralHomology {
    pub fn compute(k: &SimplicialComplex) -> Result<Self, HomologyError> {
        let red = reduce(k, Ring::Z).map_err(|_| HomologyError::Overflow)?;
        let m = k.dimension();
        let sizes: Vec<usize> = (0..=m).map(|d| k.count(d)).collect();
        let dense: Vec<IntegerMatrix> = (0..=m).map(|d| dense_boundary(&red, d)).collect();
        let empty_in = |d: usize| IntegerMatrix::zeros(red.cells[d].len(), 0);
        let mut local = Vec::with_capacity(m + 1);
        let mut local_co = Vec::with_capacity(m + 1);
        for d in 0..=m {
            let n = red.cells[d].len();
            let incoming = if d < m { dense[d + 1].clone() } else { empty_in(d) };
            local.push(LocalHomology::compute(n, &dense[d], &incoming));
            // cochain complex: delta_d = dense[d+1]^T out, delta_{d-1} = dense[d]^T in
            let out_co = if d < m {
                dense[d + 1].transpose()
            } else {
                IntegerMatrix::zeros(0, n)
            };
            let in_co = dense[d].transpose();
            local_co.push(LocalHomology::compute(n, &out_co, &in_co));
        }
        let mut groups = Vec::with_capacity(m + 1);
        for (d, lh) in local.iter().enumerate() {
            let free_generators = lh
                .free
                .iter()
                .map(|g| lift(g, &red.forward[d], sizes[d]).map(|c| Chain::new(d, Ring::Z, c)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut torsion = Vec::new();
            let mut torsion_generators = Vec::new();
            for (g, t) in &lh.torsion {
                let t = t.to_u64().ok_or(HomologyError::Overflow)?;
                torsion.push(t);
                torsion_generators.push((Chain::new(d, Ring::Z, lift(g, &red.forward[d], sizes[d])?), t));
            }
            let torsion_certificates = lh
                .certificates
                .iter()
                .map(|c| {
                    lift(c, &red.forward[d + 1], sizes[d + 1]).map(|v| Chain::new(d + 1, Ring::Z, v))
                })
                .collect::<Result<Vec<_>, _>>()?;
            groups.push(HomologyGroup {
                degree: d,
                rank: lh.free.len(),
                torsion,
                free_generators,
                torsion_generators,
                torsion_certificates,
            });
        }
        Ok(IntegralHomology {
            red,
            local,
            local_co,
            groups,
            sizes,
        })
    }

    pub fn group(&self, degree: usize) -> &HomologyGroup {
        &self.groups[degree]
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn torsion(&self) -> Vec<Vec<u64>> {
        self.groups.iter().map(|g| g.torsion.clone()).collect()
    }

    /// Sizes of the reduced complex, per degree.
    pub fn reduced_sizes(&self) -> Vec<usize> {
        self.red.cells.iter().map(Vec::len).collect()
    }

    /// Coordinates of the homology class of an integral cycle.
    pub fn class_of(&self, k: &SimplicialComplex, cycle: &Chain) -> Result<HomologyClassZ, HomologyError> {
        if cycle.ring != Ring::Z {
            return Err(ChainError::RingMismatch(cycle.ring, Ring::Z).into());
        }
        cycle.check_on(k)?;
        if cycle.degree > 0 && !boundary(k, cycle)?.is_zero() {
            return Err(HomologyError::NotACycle);
        }
        let d = cycle.degree;
        let local = project(&cycle.coeffs, &self.red.backward[d]);
        let (free, torsion) = self.local[d].coordinates(&local);
        let group = &self.groups[d];
        Ok(HomologyClassZ {
            degree: d,
            free: free
                .iter()
                .map(|v| v.to_i64().ok_or(HomologyError::Overflow))
                .collect::<Result<_, _>>()?,
            torsion: torsion.iter().map(|v| v.to_u64().unwrap_or(0)).collect(),
            torsion_orders: group.torsion.clone(),
        })
    }

    /// Integral cocycles generating the free part of `H^k(M; Z)`.
    pub fn free_cohomology_generators(&self, degree: usize) -> Result<Vec<Cochain>, HomologyError> {
        self.local_co[degree]
            .free
            .iter()
            .map(|g| {
                lift(g, &self.red.backward[degree], self.sizes[degree])
                    .map(|c| Cochain::new(degree, Ring::Z, c))
            })
            .collect()
    }

    /// Orders of the torsion part of `H^k(M; Z)`.
    pub fn cohomology_torsion(&self, degree: usize) -> Vec<u64> {
        self.local_co[degree]
            .torsion
            .iter()
            .map(|(_, t)| t.to_u64().unwrap_or(0))
            .collect()
    }

    /// Free coordinates of the cohomology class of an integral cocycle, in the
    /// basis of [`Self::free_cohomology_generators`].
    pub fn cohomology_free_coordinates(&self, a: &Cochain) -> Result<Vec<i64>, HomologyError> {
        let d = a.degree;
        let local = project(&a.coeffs, &self.red.forward[d]);
        let (free, _) = self.local_co[d].coordinates(&local);
        free.iter()
            .map(|v| v.to_i64().ok_or(HomologyError::Overflow))
            .collect()
    }
}

/// Mod-2 homology and cohomology bases.
///
/// Over a field every incidence is a unit, so the reduced complex has zero
/// differential: the surviving cells index a basis of `H_k` and of `H^k` at
/// once, and the two bases are dual under the Kronecker pairing.
#[derive(Debug, Clone)]
pub struct Mod2Homology {
    cycles: Vec<Vec<Chain>>,
    cocycles: Vec<Vec<Cochain>>,
    red: Reduction,
}

impl Mod2Homology {
    pub fn compute(k: &SimplicialComplex) -> Result<Self, HomologyError> {
        let red = reduce(k, Ring::Z2).map_err(|_| HomologyError::Overflow)?;
        if red.boundary.iter().flatten().any(|col| !col.is_empty()) {
            return Err(HomologyError::Internal(
                "mod-2 reduction left a nonzero differential".into(),
            ));
        }
        let m = k.dimension();
        let mut cycles = Vec::with_capacity(m + 1);
        let mut cocycles = Vec::with_capacity(m + 1);
        for d in 0..=m {
            let n = k.count(d);
            let to_dense = |map: &SparseVec| {
                let mut v = vec![0i64; n];
                for &(i, c) in map {
                    v[i as usize] = c & 1;
                }
                v
            };
            cycles.push(
                red.forward[d]
                    .iter()
                    .map(|map| Chain::new(d, Ring::Z2, to_dense(map)))
                    .collect(),
            );
            cocycles.push(
                red.backward[d]
                    .iter()
                    .map(|map| Cochain::new(d, Ring::Z2, to_dense(map)))
                    .collect(),
            );
        }
        Ok(Mod2Homology {
            cycles,
            cocycles,
            red,
        })
    }

    pub fn dimension(&self, degree: usize) -> usize {
        self.cycles.get(degree).map_or(0, Vec::len)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Cycles representing a basis of `H_k(M; Z2)`.
    pub fn cycle_basis(&self, degree: usize) -> &[Chain] {
        &self.cycles[degree]
    }

    /// Cocycles representing the dual basis of `H^k(M; Z2)`.
    pub fn cocycle_basis(&self, degree: usize) -> &[Cochain] {
        &self.cocycles[degree]
    }

    /// Coordinates of the class of a mod-2 cycle in [`Self::cycle_basis`].
    pub fn cycle_coordinates(&self, c: &Chain) -> BitVec {
        let d = c.degree;
        let mut out = BitVec::zeros(self.dimension(d));
        for (j, map) in self.red.backward[d].iter().enumerate() {
            let parity = map
                .iter()
                .filter(|&&(i, _)| c.coeffs[i as usize] & 1 == 1)
                .count();
            out.set(j, parity % 2 == 1);
        }
        out
    }

    /// Coordinates of the class of a mod-2 cocycle in [`Self::cocycle_basis`].
    pub fn cocycle_coordinates(&self, a: &Cochain) -> BitVec {
        let d = a.degree;
        let mut out = BitVec::zeros(self.dimension(d));
        for (j, map) in self.red.forward[d].iter().enumerate() {
            let parity = map
                .iter()
                .filter(|&&(i, _)| a.coeffs[i as usize] & 1 == 1)
                .count();
            out.set(j, parity % 2 == 1);
        }
        out
    }
}

/// Reduction mod 2 on `H_k`, from integral generators (free first, then torsion)
/// to the mod-2 cycle basis.
#[derive(Debug, Clone)]
pub struct Rho2Map {
    pub degree: usize,
    pub matrix: Z2Matrix,
    pub image_basis: Vec<BitVec>,
}

impl Rho2Map {
    pub fn image_dimension(&self) -> usize {
        self.image_basis.len()
    }
}

pub fn rho2_on_homology(integral: &IntegralHomology, mod2: &Mod2Homology, degree: usize) -> Result<Rho2Map, HomologyError> {
    let group = integral.group(degree);
    let columns: Vec<BitVec> = group
        .generators()
        .map(|g| mod2.cycle_coordinates(&g.reduce_mod2()))
        .collect();
    let matrix = Z2Matrix::from_columns(&columns, mod2.dimension(degree));
    let ech = matrix.echelon();
    let image_basis = ech.pivots.iter().map(|&c| matrix.column(c)).collect();
    Ok(Rho2Map {
        degree,
        matrix,
        image_basis,
    })
}

/// Signed facet sum (when oriented) and plain facet sum.
#[derive(Debug, Clone)]
pub struct FundamentalClass {
    pub integral: Option<Chain>,
    pub mod2: Chain,
}

pub fn fundamental_cycle(k: &SimplicialComplex, report: &ManifoldReport) -> Result<FundamentalClass, HomologyError> {
    if !report.is_pseudomanifold {
        return Err(HomologyError::NotClosed);
    }
    let m = k.dimension();
    let n = k.count(m);
    let integral = report
        .orientation
        .as_ref()
        .map(|signs| Chain::new(m, Ring::Z, signs.iter().map(|&s| s as i64).collect()));
    Ok(FundamentalClass {
        integral,
        mod2: Chain::new(m, Ring::Z2, vec![1; n]),
    })
}

impl FundamentalClass {
    pub fn oriented(&self) -> Result<&Chain, HomologyError> {
        self.integral.as_ref().ok_or(HomologyError::NonOrientable)
    }
}

/// Betti numbers straight from boundary-matrix ranks over Z/2, without the
/// reduction. Used as an independent cross-check.
pub fn mod2_betti_by_rank(k: &SimplicialComplex) -> Vec<usize> {
    let m = k.dimension();
    let ranks: Vec<usize> = (0..=m + 1)
        .map(|d| {
            if d == 0 || d > m {
                0
            } else {
                boundary_matrix_z2(k, d).map(|b| b.rank()).unwrap_or(0)
            }
        })
        .collect();
    (0..=m).map(|d| k.count(d) - ranks[d] - ranks[d + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_of_simplex, parse_complex, staircase_product, verify_closed_manifold};

    pub(crate) fn rp2() -> SimplicialComplex {
        parse_complex(
            r#"{"dimension":2,"facets":[[1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],
                [2,3,5],[3,4,6],[2,4,5],[3,5,6],[2,4,6]]}"#,
        )
        .unwrap()
    }

    #[test]
    fn boundary_matrix_shapes() {
        let c = boundary_of_simplex(1).unwrap();
        let b = boundary_matrix(&c, 1, Ring::Z).unwrap();
        assert_eq!((b.rows(), b.cols()), (3, 3));
        for j in 0..3 {
            let col: Vec<i64> = b.column(j).iter().map(|x| x.to_i64().unwrap()).collect();
            assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
        }
        assert!(boundary_matrix(&c, 2, Ring::Z).is_err());
        assert!(boundary_matrix(&c, 0, Ring::Z).is_err());
    }

    #[test]
    fn boundary_squares_to_zero_on_s4() {
        let s4 = boundary_of_simplex(4).unwrap();
        let d3 = boundary_matrix(&s4, 3, Ring::Z).unwrap();
        let d4 = boundary_matrix(&s4, 4, Ring::Z).unwrap();
        assert!(d3.mul(&d4).is_zero());
    }

    #[test]
    fn rp2_snf_has_a_two() {
        let d2 = boundary_matrix(&rp2(), 2, Ring::Z).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (15, 10));
        let snf = smith_normal_form(&d2);
        let nonzero: Vec<BigInt> = snf.diag.iter().filter(|d| !d.is_zero()).cloned().collect();
        assert_eq!(nonzero.last(), Some(&BigInt::from(2)));
    }

    #[test]
    fn sphere_homology() {
        let s4 = boundary_of_simplex(4).unwrap();
        let h = IntegralHomology::compute(&s4).unwrap();
        assert_eq!(h.betti(), vec![1, 0, 0, 0, 1]);
        assert!(h.torsion().iter().all(Vec::is_empty));
    }

    #[test]
    fn rp2_homology() {
        let k = rp2();
        let h = IntegralHomology::compute(&k).unwrap();
        assert_eq!(h.betti(), vec![1, 0, 0]);
        assert_eq!(h.torsion(), vec![vec![], vec![2], vec![]]);
        let g = h.group(1);
        let (gen, t) = &g.torsion_generators[0];
        assert_eq!(*t, 2);
        assert!(boundary(&k, gen).unwrap().is_zero());
        let cert = &g.torsion_certificates[0];
        assert_eq!(boundary(&k, cert).unwrap(), gen.scale(2).unwrap());
        let m2 = Mod2Homology::compute(&k).unwrap();
        assert_eq!(m2.betti(), vec![1, 1, 1]);
        assert_eq!(m2.betti(), mod2_betti_by_rank(&k));
    }

    #[test]
    fn torus_homology_and_classes() {
        let c = boundary_of_simplex(1).unwrap();
        let t2 = staircase_product(&c, &c);
        let h = IntegralHomology::compute(&t2).unwrap();
        assert_eq!(h.betti(), vec![1, 2, 1]);
        let g = h.group(1);
        for (i, gen) in g.free_generators.iter().enumerate() {
            let class = h.class_of(&t2, gen).unwrap();
            let mut want = vec![0; 2];
            want[i] = 1;
            assert_eq!(class.free, want);
        }
        let twice = g.free_generators[0].scale(2).unwrap().add(&g.free_generators[1]).unwrap();
        assert_eq!(h.class_of(&t2, &twice).unwrap().free, vec![2, 1]);
        let report = verify_closed_manifold(&t2);
        let fc = fundamental_cycle(&t2, &report).unwrap();
        let top = fc.oriented().unwrap();
        assert!(boundary(&t2, top).unwrap().is_zero());
        assert_eq!(h.class_of(&t2, top).unwrap().free.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn fundamental_class_of_rp2_is_mod2_only() {
        let k = rp2();
        let report = verify_closed_manifold(&k);
        let fc = fundamental_cycle(&k, &report).unwrap();
        assert!(fc.integral.is_none());
        assert!(matches!(fc.oriented(), Err(HomologyError::NonOrientable)));
        assert_eq!(fc.mod2.coeffs.len(), 10);
        assert!(boundary(&k, &fc.mod2).unwrap().is_zero());
    }

    #[test]
    fn rho2_on_rp2() {
        let k = rp2();
        let h = IntegralHomology::compute(&k).unwrap();
        let m2 = Mod2Homology::compute(&k).unwrap();
        assert_eq!(rho2_on_homology(&h, &m2, 1).unwrap().image_dimension(), 1);
        assert_eq!(rho2_on_homology(&h, &m2, 2).unwrap().image_dimension(), 0);
    }
}
