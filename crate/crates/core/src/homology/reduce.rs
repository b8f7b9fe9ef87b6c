//! Chain-complex reduction by elimination of unit incidences.
//!
//! Eliminating a pair `(a, b)` with `<da, b> = u` a unit replaces the complex by
//! a chain-homotopy-equivalent one without `a` and `b`. The reduction keeps two
//! chain maps to the original complex: `forward` sends a surviving cell to a
//! chain of original cells (an inclusion `f`), and `backward` stores, for each
//! surviving cell `z`, the cochain `z* . g` of the projection `g`. Both satisfy
//! `g f = id`, so cycles of the reduced complex lift through `f` and cocycles
//! pull back through `g`.

use crate::chains::{sparse_boundary, Ring};
use crate::complex::SimplicialComplex;

pub(crate) type SparseVec = Vec<(u32, i64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

fn add(ring: Ring, a: i64, b: i64) -> Result<i64, Overflow> {
    match ring {
        Ring::Z => a.checked_add(b).ok_or(Overflow),
        Ring::Z2 => Ok((a ^ b) & 1),
    }
}

fn mul(ring: Ring, a: i64, b: i64) -> Result<i64, Overflow> {
    match ring {
        Ring::Z => a.checked_mul(b).ok_or(Overflow),
        Ring::Z2 => Ok(a & b & 1),
    }
}

fn neg(ring: Ring, a: i64) -> i64 {
    match ring {
        Ring::Z => -a,
        Ring::Z2 => a,
    }
}

fn is_unit(ring: Ring, a: i64) -> bool {
    match ring {
        Ring::Z => a == 1 || a == -1,
        Ring::Z2 => a & 1 == 1,
    }
}

/// `x + c*y` for sorted sparse vectors. `on_change(index, present)` reports
/// indices that appear in or vanish from the support.
fn axpy(
    ring: Ring,
    x: &[(u32, i64)],
    c: i64,
    y: &[(u32, i64)],
    mut on_change: impl FnMut(u32, bool),
) -> Result<SparseVec, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            let v = mul(ring, c, y[j].1)?;
            if v != 0 {
                out.push((y[j].0, v));
                on_change(y[j].0, true);
            }
            j += 1;
        } else {
            let v = add(ring, x[i].1, mul(ring, c, y[j].1)?)?;
            if v != 0 {
                out.push((x[i].0, v));
            } else {
                on_change(x[i].0, false);
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn remove_value(list: &mut Vec<u32>, value: u32) {
    if let Some(p) = list.iter().position(|&v| v == value) {
        list.swap_remove(p);
    }
}

/// Reduced complex with its comparison maps.
#[derive(Debug, Clone)]
pub(crate) struct Reduction {
    /// Surviving original cell indices per degree, increasing.
    pub cells: Vec<Vec<u32>>,
    /// Reduced boundary per degree: for each surviving cell, entries indexed by
    /// position in `cells[k - 1]`.
    pub boundary: Vec<Vec<SparseVec>>,
    /// `f(z)` over original cells, per surviving cell.
    pub forward: Vec<Vec<SparseVec>>,
    /// `z* . g` over original cells, per surviving cell.
    pub backward: Vec<Vec<SparseVec>>,
}

struct Reducer {
    ring: Ring,
    bd: Vec<Vec<SparseVec>>,
    cob: Vec<Vec<Vec<u32>>>,
    alive: Vec<Vec<bool>>,
    fwd: Vec<Vec<Option<SparseVec>>>,
    bwd: Vec<Vec<Option<SparseVec>>>,
}

impl Reducer {
    fn new(k: &SimplicialComplex, ring: Ring) -> Self {
        let m = k.dimension();
        let bd: Vec<Vec<SparseVec>> = (0..=m)
            .map(|d| {
                sparse_boundary(k, d)
                    .into_iter()
                    .map(|col| col.into_iter().map(|(i, c)| (i, ring.normalize(c))).collect())
                    .collect()
            })
            .collect();
        let mut cob: Vec<Vec<Vec<u32>>> = (0..=m).map(|d| vec![Vec::new(); k.count(d)]).collect();
        for d in 1..=m {
            for (cell, col) in bd[d].iter().enumerate() {
                for &(f, _) in col {
                    cob[d - 1][f as usize].push(cell as u32);
                }
            }
        }
        Reducer {
            ring,
            alive: (0..=m).map(|d| vec![true; k.count(d)]).collect(),
            fwd: (0..=m).map(|d| vec![None; k.count(d)]).collect(),
            bwd: (0..=m).map(|d| vec![None; k.count(d)]).collect(),
            bd,
            cob,
        }
    }

    fn identity_or(v: &Option<SparseVec>, idx: u32) -> SparseVec {
        v.clone().unwrap_or_else(|| vec![(idx, 1)])
    }

    /// Eliminates the pair `a` (degree `k`) / `b` (degree `k - 1`), `<da, b> = u`.
    fn eliminate(&mut self, k: usize, a: u32, b: u32, u: i64) -> Result<(), Overflow> {
        let ring = self.ring;
        let uinv = u; // units are self-inverse in Z and Z/2
        let bd_a = std::mem::take(&mut self.bd[k][a as usize]);
        let fwd_a = Self::identity_or(&self.fwd[k][a as usize], a);

        let cofaces: Vec<u32> = self.cob[k - 1][b as usize]
            .iter()
            .copied()
            .filter(|&x| x != a)
            .collect();
        for x in cofaces {
            let col = std::mem::take(&mut self.bd[k][x as usize]);
            let lambda = col
                .iter()
                .find(|e| e.0 == b)
                .map(|e| e.1)
                .expect("coface lists are consistent");
            let c = neg(ring, mul(ring, lambda, uinv)?);
            let cob = &mut self.cob[k - 1];
            let new_col = axpy(ring, &col, c, &bd_a, |f, present| {
                if present {
                    cob[f as usize].push(x);
                } else {
                    remove_value(&mut cob[f as usize], x);
                }
            })?;
            self.bd[k][x as usize] = new_col;
            let fx = Self::identity_or(&self.fwd[k][x as usize], x);
            self.fwd[k][x as usize] = Some(axpy(ring, &fx, c, &fwd_a, |_, _| {})?);
        }

        let bwd_b = Self::identity_or(&self.bwd[k - 1][b as usize], b);
        for &(z, beta) in &bd_a {
            if z == b {
                continue;
            }
            let c = neg(ring, mul(ring, uinv, beta)?);
            let gz = Self::identity_or(&self.bwd[k - 1][z as usize], z);
            self.bwd[k - 1][z as usize] = Some(axpy(ring, &gz, c, &bwd_b, |_, _| {})?);
        }

        for &(f, _) in &bd_a {
            remove_value(&mut self.cob[k - 1][f as usize], a);
        }
        if k + 1 < self.bd.len() {
            for y in std::mem::take(&mut self.cob[k][a as usize]) {
                self.bd[k + 1][y as usize].retain(|e| e.0 != a);
            }
        }
        let bd_b = std::mem::take(&mut self.bd[k - 1][b as usize]);
        if k >= 2 {
            for (f, _) in bd_b {
                remove_value(&mut self.cob[k - 2][f as usize], b);
            }
        }
        debug_assert!(self.cob[k - 1][b as usize].is_empty());
        self.alive[k][a as usize] = false;
        self.alive[k - 1][b as usize] = false;
        self.fwd[k][a as usize] = None;
        self.bwd[k - 1][b as usize] = None;
        Ok(())
    }

    /// Markowitz-style pivoting with a growing fill-in budget.
    fn run(&mut self) -> Result<(), Overflow> {
        let m = self.bd.len() - 1;
        let mut threshold = 0usize;
        loop {
            let mut saw_unit = false;
            let mut eliminated = 0usize;
            for k in (1..=m).rev() {
                for a in 0..self.bd[k].len() {
                    if !self.alive[k][a] {
                        continue;
                    }
                    let col = &self.bd[k][a];
                    let mut best: Option<(usize, u32, i64)> = None;
                    for &(b, c) in col {
                        if !is_unit(self.ring, c) {
                            continue;
                        }
                        saw_unit = true;
                        let cost = (self.cob[k - 1][b as usize].len() - 1) * (col.len() - 1);
                        if best.is_none_or(|(bc, _, _)| cost < bc) {
                            best = Some((cost, b, c));
                        }
                    }
                    if let Some((cost, b, c)) = best {
                        if cost <= threshold {
                            self.eliminate(k, a as u32, b, c)?;
                            eliminated += 1;
                        }
                    }
                }
            }
            if !saw_unit {
                return Ok(());
            }
            if eliminated == 0 {
                threshold = if threshold == 0 { 1 } else { threshold * 2 };
            }
        }
    }

    fn finish(self) -> Reduction {
        let m = self.bd.len() - 1;
        let cells: Vec<Vec<u32>> = self
            .alive
            .iter()
            .map(|al| {
                al.iter()
                    .enumerate()
                    .filter(|(_, &a)| a)
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        let position: Vec<std::collections::HashMap<u32, u32>> = cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(p, &c)| (c, p as u32)).collect())
            .collect();
        let mut boundary = Vec::with_capacity(m + 1);
        let mut forward = Vec::with_capacity(m + 1);
        let mut backward = Vec::with_capacity(m + 1);
        let Reducer { bd, fwd, bwd, .. } = self;
        for (k, ((bd_k, fwd_k), bwd_k)) in bd.into_iter().zip(fwd).zip(bwd).enumerate() {
            let mut bd_k: Vec<Option<SparseVec>> = bd_k.into_iter().map(Some).collect();
            let mut fwd_k = fwd_k;
            let mut bwd_k = bwd_k;
            let mut b_out = Vec::with_capacity(cells[k].len());
            let mut f_out = Vec::with_capacity(cells[k].len());
            let mut g_out = Vec::with_capacity(cells[k].len());
            for &c in &cells[k] {
                let col = bd_k[c as usize].take().unwrap_or_default();
                let mut col: SparseVec = match k {
                    0 => Vec::new(),
                    _ => col.into_iter().map(|(f, v)| (position[k - 1][&f], v)).collect(),
                };
                col.sort_unstable_by_key(|e| e.0);
                b_out.push(col);
                f_out.push(fwd_k[c as usize].take().unwrap_or_else(|| vec![(c, 1)]));
                g_out.push(bwd_k[c as usize].take().unwrap_or_else(|| vec![(c, 1)]));
            }
            boundary.push(b_out);
            forward.push(f_out);
            backward.push(g_out);
        }
        Reduction {
            cells,
            boundary,
            forward,
            backward,
        }
    }
}

pub(crate) fn reduce(k: &SimplicialComplex, ring: Ring) -> Result<Reduction, Overflow> {
    let mut r = Reducer::new(k, ring);
    r.run()?;
    Ok(r.finish())
}
