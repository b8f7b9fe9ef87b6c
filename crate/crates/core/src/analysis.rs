//! A complex together with lazily computed invariants, and the serialized bundle.

use crate::characteristic::{
    intersection_form, mod2_pairing, stiefel_whitney, w2_criterion, wu_classes, CharError, ClassZ2,
    IntersectionForm, SWClasses, WuClasses,
};
use crate::classify::{check_hypotheses, classify_codim1, ClassifyError, GroupDescription, Hypothesis, MapClassification};
use crate::complex::{verify_closed_manifold, ManifoldReport, SimplicialComplex};
use crate::homology::{
    fundamental_cycle, rho2_on_homology, FundamentalClass, HomologyError, HomologyGroup, IntegralHomology,
    Mod2Homology,
};
use serde::Serialize;
use std::sync::OnceLock;

/// Invariants are computed on first use and cached; concurrent readers are fine.
#[derive(Debug)]
pub struct Manifold {
    complex: SimplicialComplex,
    report: ManifoldReport,
    integral: OnceLock<Result<IntegralHomology, HomologyError>>,
    mod2: OnceLock<Result<Mod2Homology, HomologyError>>,
    fundamental: OnceLock<Result<FundamentalClass, HomologyError>>,
    wu: OnceLock<Result<WuClasses, CharError>>,
    sw: OnceLock<Result<SWClasses, CharError>>,
    form: OnceLock<Result<IntersectionForm, CharError>>,
}

impl Manifold {
    pub fn new(complex: SimplicialComplex) -> Self {
        let report = verify_closed_manifold(&complex);
        Manifold {
            complex,
            report,
            integral: OnceLock::new(),
            mod2: OnceLock::new(),
            fundamental: OnceLock::new(),
            wu: OnceLock::new(),
            sw: OnceLock::new(),
            form: OnceLock::new(),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn report(&self) -> &ManifoldReport {
        &self.report
    }

    pub fn integral(&self) -> Result<&IntegralHomology, HomologyError> {
        self.integral
            .get_or_init(|| IntegralHomology::compute(&self.complex))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn mod2(&self) -> Result<&Mod2Homology, HomologyError> {
        self.mod2
            .get_or_init(|| Mod2Homology::compute(&self.complex))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn fundamental(&self) -> Result<&FundamentalClass, HomologyError> {
        self.fundamental
            .get_or_init(|| fundamental_cycle(&self.complex, &self.report))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn wu(&self) -> Result<&WuClasses, CharError> {
        self.wu
            .get_or_init(|| wu_classes(&self.complex, self.mod2()?, &self.fundamental()?.mod2))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn stiefel_whitney(&self) -> Result<&SWClasses, CharError> {
        self.sw
            .get_or_init(|| stiefel_whitney(&self.complex, self.mod2()?, self.wu()?))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn w2_criterion(&self) -> Result<bool, CharError> {
        w2_criterion(self.integral()?, self.stiefel_whitney()?)
    }

    pub fn intersection_form(&self) -> Result<&IntersectionForm, CharError> {
        self.form
            .get_or_init(|| {
                intersection_form(&self.complex, self.integral()?, self.fundamental()?.integral.as_ref())
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Maps-into-spheres data attached to the bundle, by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Classification {
    Codim1(MapClassification),
    ThreeManifold {
        theorem: &'static str,
        degree_group: GroupDescription,
        fiber: &'static str,
    },
}

impl Classification {
    pub fn three_manifold(h1: &HomologyGroup) -> Self {
        Classification::ThreeManifold {
            theorem: "2a",
            degree_group: GroupDescription::of(h1),
            fiber: "Z_{2d(alpha)}, Z when d(alpha) = 0",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantBundle {
    pub name: String,
    pub dimension: usize,
    pub f_vector: Vec<usize>,
    pub orientable: bool,
    pub connected: bool,
    pub betti_z: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
    pub betti_z2: Vec<usize>,
    pub rho2_image_dims: Vec<usize>,
    pub pairing_ranks: Vec<usize>,
    pub wu: Vec<ClassZ2>,
    pub sw: Vec<ClassZ2>,
    pub w2_criterion: u8,
    pub criterion_evaluation: &'static str,
    pub intersection_form: Option<IntersectionForm>,
    pub classification: Option<Classification>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Hypothesis(#[from] Hypothesis),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl InvariantBundle {
    /// Requires a closed pseudomanifold; classification is attached when the
    /// complex is also connected and orientable of dimension at least 3.
    pub fn compute(man: &Manifold) -> Result<Self, AnalysisError> {
        let k = man.complex();
        let m = k.dimension();
        if !man.report().is_pseudomanifold {
            return Err(Hypothesis::Closed.into());
        }
        let hz = man.integral()?;
        let h2 = man.mod2()?;
        let fc = man.fundamental()?;
        let rho2_image_dims = (0..=m)
            .map(|d| rho2_on_homology(hz, h2, d).map(|r| r.image_dimension()))
            .collect::<Result<_, _>>()?;
        let pairing_ranks = (0..=m)
            .map(|d| mod2_pairing(k, h2, &fc.mod2, d).map(|p| p.rank()))
            .collect::<Result<_, _>>()?;
        let intersection_form = if m == 4 && man.report().orientable {
            Some(man.intersection_form()?.clone())
        } else {
            None
        };
        let classification = match check_hypotheses(man) {
            Ok(d) if d >= 4 => Some(Classification::Codim1(classify_codim1(man)?)),
            Ok(3) => Some(Classification::three_manifold(hz.group(1))),
            _ => None,
        };
        Ok(InvariantBundle {
            name: k.name().to_string(),
            dimension: m,
            f_vector: k.f_vector(),
            orientable: man.report().orientable,
            connected: man.report().is_connected,
            betti_z: hz.betti(),
            torsion: hz.torsion(),
            betti_z2: h2.betti(),
            rho2_image_dims,
            pairing_ranks,
            wu: man.wu()?.classes.clone(),
            sw: man.stiefel_whitney()?.classes.clone(),
            w2_criterion: man.w2_criterion()? as u8,
            criterion_evaluation: "cohomological evaluation",
            intersection_form,
            classification,
        })
    }
}
