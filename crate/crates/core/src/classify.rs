//! Decision procedures for maps into spheres and realizability of surface classes.
//!
//! Routing by dimension `m` of a closed connected orientable complex:
//! `m = 3` gives the fiber over a class of `H_1`; `m >= 4` gives the
//! codimension-one count; `m = 4` decides realizability by the self-intersection
//! and `m >= 5` by the `w_2` evaluation.

use crate::analysis::Manifold;
use crate::characteristic::{self_intersection, w2_evaluation, CharError};
use crate::homology::{HomologyClassZ, HomologyError, HomologyGroup};
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    #[error("hypothesis failed: the complex is not closed (some ridge does not lie in exactly two facets)")]
    Closed,
    #[error("hypothesis failed: the complex is not connected")]
    Connected,
    #[error("hypothesis failed: the complex is not orientable")]
    Orientable,
    #[error("hypothesis failed: dimension {found}, {expected}")]
    Dimension { found: usize, expected: &'static str },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Hypothesis(#[from] Hypothesis),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("invalid class specification {0:?}: {1}")]
    ClassSpec(String, String),
}

/// Rank and torsion coefficients of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDescription {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupDescription {
    pub fn of(g: &HomologyGroup) -> Self {
        GroupDescription {
            rank: g.rank,
            torsion: g.torsion.clone(),
        }
    }

    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl std::fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapClassification {
    pub theorem: &'static str,
    pub target_sphere_dim: usize,
    pub degree_group: GroupDescription,
    pub criterion_bit: u8,
    pub fiber_size: u8,
    pub total: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberDescriptor {
    pub theorem: &'static str,
    pub class: HomologyClassZ,
    pub d: u64,
    pub fiber: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizabilityVerdict {
    pub theorem: &'static str,
    pub class: HomologyClassZ,
    pub realizable: bool,
    pub witness: i64,
}

/// Closed, connected, orientable; returns the dimension.
pub fn check_hypotheses(man: &Manifold) -> Result<usize, Hypothesis> {
    let r = man.report();
    if !r.is_pseudomanifold {
        return Err(Hypothesis::Closed);
    }
    if !r.is_connected || !r.is_strongly_connected {
        return Err(Hypothesis::Connected);
    }
    if !r.orientable {
        return Err(Hypothesis::Orientable);
    }
    Ok(man.complex().dimension())
}

/// Maps `M^{n+1} -> S^n`, `n >= 3`: each element of `H_1` has one preimage when
/// `w_2` pairs nontrivially with `rho_2 H_2`, two otherwise.
pub fn classify_codim1(man: &Manifold) -> Result<MapClassification, ClassifyError> {
    let m = check_hypotheses(man)?;
    if m < 4 {
        return Err(Hypothesis::Dimension {
            found: m,
            expected: "at least 4 (use the 3-manifold fiber classification for dimension 3)",
        }
        .into());
    }
    let criterion = man.w2_criterion()?;
    let fiber_size: u8 = if criterion { 1 } else { 2 };
    let degree_group = GroupDescription::of(man.integral()?.group(1));
    let total = match degree_group.order() {
        Some(n) => (n * fiber_size as u64).to_string(),
        None => "infinite".to_string(),
    };
    Ok(MapClassification {
        theorem: "1a",
        target_sphere_dim: m - 1,
        degree_group,
        criterion_bit: criterion as u8,
        fiber_size,
        total,
    })
}

/// gcd of the free coordinates; 0 when they all vanish.
pub fn divisibility(h1: &HomologyGroup, alpha: &HomologyClassZ) -> Result<u64, ClassifyError> {
    if alpha.free.len() != h1.rank || alpha.torsion.len() != h1.torsion.len() {
        return Err(HomologyError::CoordinateLength {
            part: "free+torsion",
            expected: h1.num_generators(),
            found: alpha.free.len() + alpha.torsion.len(),
        }
        .into());
    }
    Ok(alpha
        .free
        .iter()
        .fold(0u64, |g, &x| g.gcd(&x.unsigned_abs())))
}

/// Fiber of the degree map over `alpha` for maps `M^3 -> S^2`: `Z_{2d}`, or `Z` when `d = 0`.
pub fn classify_3manifold_fiber(man: &Manifold, alpha: &HomologyClassZ) -> Result<FiberDescriptor, ClassifyError> {
    let m = check_hypotheses(man)?;
    if m != 3 {
        return Err(Hypothesis::Dimension {
            found: m,
            expected: "exactly 3",
        }
        .into());
    }
    if alpha.degree != 1 {
        return Err(HomologyError::Internal(format!("class of degree {} given, expected 1", alpha.degree)).into());
    }
    let d = divisibility(man.integral()?.group(1), alpha)?;
    let fiber = if d == 0 { "Z".to_string() } else { format!("Z_{}", 2 * d) };
    Ok(FiberDescriptor {
        theorem: "2a",
        class: alpha.clone(),
        d,
        fiber,
    })
}

/// `m >= 5`: `alpha` is realizable iff `<w_2, rho_2 alpha> = 0`.
pub fn realizable_surface_class(man: &Manifold, alpha: &HomologyClassZ) -> Result<RealizabilityVerdict, ClassifyError> {
    let m = check_hypotheses(man)?;
    if m < 5 {
        let expected = if m == 4 {
            "at least 5 (use the 4-manifold self-intersection test for dimension 4)"
        } else {
            "at least 5"
        };
        return Err(Hypothesis::Dimension { found: m, expected }.into());
    }
    let witness = w2_evaluation(man.complex(), man.integral()?, man.stiefel_whitney()?, alpha)? as i64;
    Ok(RealizabilityVerdict {
        theorem: "1b",
        class: alpha.clone(),
        realizable: witness == 0,
        witness,
    })
}

/// `m = 4`: `alpha` is realizable iff `alpha . alpha = 0`.
pub fn realizable_surface_class_4mfd(
    man: &Manifold,
    alpha: &HomologyClassZ,
) -> Result<RealizabilityVerdict, ClassifyError> {
    let m = check_hypotheses(man)?;
    if m != 4 {
        return Err(Hypothesis::Dimension {
            found: m,
            expected: "exactly 4",
        }
        .into());
    }
    let q = man.intersection_form()?;
    let witness = self_intersection(q, alpha)?;
    Ok(RealizabilityVerdict {
        theorem: "2b",
        class: alpha.clone(),
        realizable: witness == 0,
        witness,
    })
}

/// Routes to the 4-dimensional or the higher-dimensional test.
pub fn realizable(man: &Manifold, alpha: &HomologyClassZ) -> Result<RealizabilityVerdict, ClassifyError> {
    if man.complex().dimension() == 4 {
        realizable_surface_class_4mfd(man, alpha)
    } else {
        realizable_surface_class(man, alpha)
    }
}

/// Parses `"c1,c2,...;t1,..."` (free coordinates, then torsion residues) into a
/// class of `group`. Either part may be empty.
pub fn parse_class(spec: &str, group: &HomologyGroup) -> Result<HomologyClassZ, ClassifyError> {
    let bad = |msg: String| ClassifyError::ClassSpec(spec.to_string(), msg);
    let (free, torsion) = spec.split_once(';').unwrap_or((spec, ""));
    let numbers = |part: &str| -> Result<Vec<i64>, ClassifyError> {
        part.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|e| bad(format!("{s:?}: {e}"))))
            .collect()
    };
    let free = numbers(free)?;
    let torsion = numbers(torsion)?;
    group.class(&free, &torsion).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Chain;

    fn group(rank: usize, torsion: Vec<u64>) -> HomologyGroup {
        HomologyGroup {
            degree: 1,
            rank,
            free_generators: vec![Chain::new(1, crate::chains::Ring::Z, vec![]); rank],
            torsion_generators: torsion
                .iter()
                .map(|&t| (Chain::new(1, crate::chains::Ring::Z, vec![]), t))
                .collect(),
            torsion_certificates: vec![],
            torsion,
        }
    }

    #[test]
    fn divisibility_examples() {
        let g = group(2, vec![]);
        assert_eq!(divisibility(&g, &g.class(&[4, 6], &[]).unwrap()).unwrap(), 2);
        assert_eq!(divisibility(&g, &g.class(&[3, 5], &[]).unwrap()).unwrap(), 1);
        assert_eq!(divisibility(&g, &g.class(&[0, -7], &[]).unwrap()).unwrap(), 7);
        let t = group(0, vec![2]);
        assert_eq!(divisibility(&t, &t.class(&[], &[1]).unwrap()).unwrap(), 0);
        assert!(divisibility(&g, &t.class(&[], &[1]).unwrap()).is_err());
    }

    #[test]
    fn class_specs() {
        let g = group(2, vec![2]);
        let c = parse_class("2, -3;5", &g).unwrap();
        assert_eq!(c.free, vec![2, -3]);
        assert_eq!(c.torsion, vec![1]);
        assert!(parse_class("1;1", &g).is_err());
        assert!(parse_class("1,x;0", &g).is_err());
        let t = group(0, vec![2]);
        assert_eq!(parse_class(";1", &t).unwrap().torsion, vec![1]);
        assert_eq!(parse_class("", &group(0, vec![])).unwrap().free, Vec::<i64>::new());
    }

    #[test]
    fn group_display() {
        assert_eq!(GroupDescription { rank: 0, torsion: vec![] }.to_string(), "0");
        assert_eq!(GroupDescription { rank: 3, torsion: vec![2] }.to_string(), "Z^3 + Z_2");
        assert_eq!(GroupDescription { rank: 1, torsion: vec![] }.to_string(), "Z");
    }
}
