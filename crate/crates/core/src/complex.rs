//! Finite simplicial complexes over a totally ordered vertex set.
//!
//! Vertices are stored as dense indices `0..n` in the order of their input
//! labels; every simplex is a strictly increasing index tuple. All cup and
//! cup-i formulas downstream read faces off this order.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("facet {0:?} has a repeated vertex")]
    RepeatedVertex(Vec<i64>),
    #[error("facet {facet:?} has {found} vertices, expected {expected}")]
    InconsistentDimension {
        facet: Vec<i64>,
        expected: usize,
        found: usize,
    },
    #[error("empty facet list")]
    EmptyFacetList,
    #[error("duplicate facet {0:?}")]
    DuplicateFacet(Vec<i64>),
    #[error("the boundary of a simplex needs k >= 1 (S^0 is disconnected)")]
    ZeroSphere,
    #[error("projective space needs dimension >= 2")]
    ProjectiveDimension,
}

/// On-disk form of a complex. Unknown keys are ignored.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexDocument {
    #[serde(default)]
    pub name: String,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub facets: Vec<Vec<i64>>,
}

/// All simplices of one dimension, sorted lexicographically, with a reverse index.
#[derive(Debug, Clone)]
pub struct SimplexTable {
    width: usize,
    verts: Vec<u32>,
    index: HashMap<Box<[u32]>, u32>,
}

impl SimplexTable {
    fn from_sorted(width: usize, simplices: Vec<Vec<u32>>) -> Self {
        let mut verts = Vec::with_capacity(width * simplices.len());
        let mut index = HashMap::with_capacity(simplices.len());
        for (i, s) in simplices.into_iter().enumerate() {
            verts.extend_from_slice(&s);
            index.insert(s.into_boxed_slice(), i as u32);
        }
        SimplexTable {
            width,
            verts,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.verts.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Vertex indices of simplex `i`.
    #[inline]
    pub fn get(&self, i: usize) -> &[u32] {
        &self.verts[i * self.width..(i + 1) * self.width]
    }

    #[inline]
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        self.index.get(simplex).map(|&i| i as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.verts.chunks_exact(self.width.max(1))
    }
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    name: String,
    labels: Vec<i64>,
    skeleton: Vec<SimplexTable>,
}

impl SimplicialComplex {
    /// Builds and validates a complex from facets given by integer labels.
    pub fn from_facets(
        name: impl Into<String>,
        dimension: usize,
        facets: &[Vec<i64>],
    ) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::EmptyFacetList);
        }
        for f in facets {
            if f.len() != dimension + 1 {
                return Err(ComplexError::InconsistentDimension {
                    facet: f.clone(),
                    expected: dimension + 1,
                    found: f.len(),
                });
            }
            let distinct: HashSet<_> = f.iter().collect();
            if distinct.len() != f.len() {
                return Err(ComplexError::RepeatedVertex(f.clone()));
            }
        }
        let mut labels: Vec<i64> = facets.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let position: HashMap<i64, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();

        let mut top: Vec<Vec<u32>> = facets
            .iter()
            .map(|f| {
                let mut s: Vec<u32> = f.iter().map(|l| position[l]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        top.sort();
        if let Some(w) = top.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateFacet(
                w[0].iter().map(|&v| labels[v as usize]).collect(),
            ));
        }

        let mut skeleton = Vec::with_capacity(dimension + 1);
        for k in 0..dimension {
            let mut faces: HashSet<Vec<u32>> = HashSet::new();
            let mut buf = Vec::with_capacity(k + 1);
            for f in &top {
                for_each_subset(f, k + 1, &mut buf, &mut |s| {
                    if !faces.contains(s) {
                        faces.insert(s.to_vec());
                    }
                });
            }
            let mut faces: Vec<Vec<u32>> = faces.into_iter().collect();
            faces.sort_unstable();
            skeleton.push(SimplexTable::from_sorted(k + 1, faces));
        }
        skeleton.push(SimplexTable::from_sorted(dimension + 1, top));
        Ok(SimplicialComplex {
            name: name.into(),
            labels,
            skeleton,
        })
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self, ComplexError> {
        Self::from_facets(doc.name.clone(), doc.dimension, &doc.facets)
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            name: self.name.clone(),
            dimension: self.dimension(),
            source: None,
            facets: self
                .facets()
                .iter()
                .map(|f| f.iter().map(|&v| self.labels[v as usize]).collect())
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dimension(&self) -> usize {
        self.skeleton.len() - 1
    }

    /// Input labels in global vertex order.
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &SimplexTable {
        &self.skeleton[self.dimension()]
    }

    /// Sorted k-simplices. Panics if `k > dimension`.
    pub fn skeleton(&self, k: usize) -> &SimplexTable {
        &self.skeleton[k]
    }

    pub fn count(&self, k: usize) -> usize {
        self.skeleton.get(k).map_or(0, SimplexTable::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.skeleton.iter().map(SimplexTable::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.skeleton
            .iter()
            .enumerate()
            .map(|(k, t)| if k % 2 == 0 { t.len() as i64 } else { -(t.len() as i64) })
            .sum()
    }

    /// The same complex with every label replaced by `relabel(label)`.
    /// The global vertex order follows the new labels.
    pub fn relabeled(&self, relabel: impl Fn(i64) -> i64) -> Result<Self, ComplexError> {
        let doc = self.to_document();
        let facets: Vec<Vec<i64>> = doc
            .facets
            .iter()
            .map(|f| f.iter().map(|&l| relabel(l)).collect())
            .collect();
        Self::from_facets(self.name.clone(), self.dimension(), &facets)
    }
}

/// Calls `f` with every `size`-element subsequence of `items`, in lexicographic order.
pub(crate) fn for_each_subset<T: Copy>(
    items: &[T],
    size: usize,
    buf: &mut Vec<T>,
    f: &mut impl FnMut(&[T]),
) {
    fn rec<T: Copy>(items: &[T], start: usize, size: usize, buf: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        if buf.len() == size {
            f(buf);
            return;
        }
        let need = size - buf.len();
        for i in start..=items.len() - need {
            buf.push(items[i]);
            rec(items, i + 1, size, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    if size <= items.len() {
        rec(items, 0, size, buf, f);
    }
}

/// Parses the JSON document format, or the plain-text variant
/// (`dim m` on the first line, one facet per line, `#` comments).
pub fn parse_complex(document: &str) -> Result<SimplicialComplex, ComplexError> {
    let trimmed = document.trim_start();
    if trimmed.starts_with('{') {
        let doc: ComplexDocument =
            serde_json::from_str(trimmed).map_err(|e| ComplexError::Malformed(e.to_string()))?;
        return SimplicialComplex::from_document(&doc);
    }
    let mut lines = document
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| ComplexError::Malformed("empty document".into()))?;
    let dimension = header
        .strip_prefix("dim")
        .and_then(|rest| rest.trim().parse::<usize>().ok())
        .ok_or_else(|| ComplexError::Malformed(format!("expected `dim m`, found {header:?}")))?;
    let facets = lines
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| ComplexError::Malformed(format!("bad vertex label {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialComplex::from_facets("", dimension, &facets)
}

/// The boundary of the (k+1)-simplex on vertices `0..=k+1`, a triangulated k-sphere.
pub fn boundary_of_simplex(k: usize) -> Result<SimplicialComplex, ComplexError> {
    if k == 0 {
        return Err(ComplexError::ZeroSphere);
    }
    let all: Vec<i64> = (0..=(k as i64 + 1)).collect();
    let mut facets = Vec::new();
    let mut buf = Vec::new();
    for_each_subset(&all, k + 1, &mut buf, &mut |s| facets.push(s.to_vec()));
    SimplicialComplex::from_facets(format!("S{k}"), k, &facets)
}

/// Staircase triangulation of `|a| x |b|`.
///
/// Vertex `(i, j)` (dense indices) becomes label `i * |V(b)| + j`, so the label
/// order is the lexicographic product order. Each facet pair contributes one
/// simplex per monotone lattice path through its vertex grid.
pub fn staircase_product(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let (p, q) = (a.dimension(), b.dimension());
    let nb = b.num_vertices() as i64;
    // step patterns: positions of the a-steps among the p+q steps
    let steps: Vec<usize> = (0..p + q).collect();
    let mut patterns: Vec<Vec<bool>> = Vec::new();
    let mut buf = Vec::new();
    for_each_subset(&steps, p, &mut buf, &mut |pos| {
        let mut pat = vec![false; p + q];
        for &i in pos {
            pat[i] = true;
        }
        patterns.push(pat);
    });
    let mut facets = Vec::with_capacity(a.facets().len() * b.facets().len() * patterns.len());
    for fa in a.facets().iter() {
        for fb in b.facets().iter() {
            for pat in &patterns {
                let (mut i, mut j) = (0, 0);
                let mut simplex = Vec::with_capacity(p + q + 1);
                simplex.push(fa[0] as i64 * nb + fb[0] as i64);
                for &a_step in pat {
                    if a_step {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    simplex.push(fa[i] as i64 * nb + fb[j] as i64);
                }
                facets.push(simplex);
            }
        }
    }
    SimplicialComplex::from_facets(format!("{} x {}", a.name(), b.name()), p + q, &facets)
        .expect("staircase product of valid complexes is valid")
}

/// Real projective n-space as the antipodal quotient of the barycentric
/// subdivision of the boundary of the (n+1)-dimensional cross-polytope.
///
/// Vertices are antipodal pairs of nonempty cross-polytope faces, ordered by
/// face size first, so every facet reads as a flag of increasing faces.
pub fn projective_space(n: usize) -> Result<SimplicialComplex, ComplexError> {
    if n < 2 {
        return Err(ComplexError::ProjectiveDimension);
    }
    let axes = n + 1;
    // canonical representative: first nonzero coordinate is +1
    let canonical = |face: &[i8]| -> Vec<i8> {
        let first = face.iter().find(|&&c| c != 0).copied().unwrap_or(1);
        face.iter().map(|&c| c * first).collect()
    };
    let mut reps: Vec<Vec<i8>> = Vec::new();
    let total = 3usize.pow(axes as u32);
    for code in 1..total {
        let mut face = Vec::with_capacity(axes);
        let mut c = code;
        for _ in 0..axes {
            face.push((c % 3) as i8 - 1);
            c /= 3;
        }
        if face.iter().any(|&x| x != 0) && canonical(&face) == face {
            reps.push(face);
        }
    }
    reps.sort_by_key(|f| (f.iter().filter(|&&c| c != 0).count(), f.clone()));
    let label: HashMap<Vec<i8>, i64> = reps
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i as i64))
        .collect();

    let mut facets: HashSet<Vec<i64>> = HashSet::new();
    let mut order: Vec<usize> = (0..axes).collect();
    for signs in 0..(1u32 << axes) {
        // every ordering of the axes gives one flag in this cross-polytope facet
        permutations(&mut order, 0, &mut |perm| {
            let mut face = vec![0i8; axes];
            let mut simplex = Vec::with_capacity(axes);
            for &ax in perm {
                face[ax] = if signs >> ax & 1 == 1 { -1 } else { 1 };
                simplex.push(label[&canonical(&face)]);
            }
            simplex.sort_unstable();
            facets.insert(simplex);
        });
    }
    let mut facets: Vec<Vec<i64>> = facets.into_iter().collect();
    facets.sort();
    SimplicialComplex::from_facets(format!("RP{n}"), n, &facets)
}

fn permutations(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Structural checks for a closed manifold candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldReport {
    pub is_pseudomanifold: bool,
    pub is_strongly_connected: bool,
    pub is_connected: bool,
    pub orientable: bool,
    /// Sign per facet (facet order of the complex), present iff orientable.
    #[serde(skip)]
    pub orientation: Option<Vec<i8>>,
}

impl ManifoldReport {
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.is_pseudomanifold && self.is_strongly_connected
    }
}

/// Ridge index together with the incidence sign `(-1)^i` where `i` is the
/// position of the dropped vertex.
fn facet_ridges(k: &SimplicialComplex, facet: &[u32]) -> Vec<(usize, i8)> {
    let ridges = k.skeleton(k.dimension() - 1);
    let mut face = Vec::with_capacity(facet.len() - 1);
    (0..facet.len())
        .map(|i| {
            face.clear();
            face.extend(facet.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
            let r = ridges.index_of(&face).expect("ridge present in skeleton");
            (r, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Pseudomanifold, connectivity and orientability report. Orientation signs
/// are propagated breadth-first across ridges starting from the
/// lexicographically least facet, which gets +1.
pub fn verify_closed_manifold(k: &SimplicialComplex) -> ManifoldReport {
    let m = k.dimension();
    let facets = k.facets();
    let n = facets.len();

    let is_connected = {
        let nv = k.num_vertices();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        if m >= 1 {
            for e in k.skeleton(1).iter() {
                let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..nv).all(|v| find(&mut parent, v) == root)
    };

    if m == 0 {
        return ManifoldReport {
            is_pseudomanifold: false,
            is_strongly_connected: n == 1,
            is_connected,
            orientable: false,
            orientation: None,
        };
    }

    let ridge_count = k.count(m - 1);
    let mut incident: Vec<Vec<(u32, i8)>> = vec![Vec::new(); ridge_count];
    let per_facet: Vec<Vec<(usize, i8)>> = facets.iter().map(|f| facet_ridges(k, f)).collect();
    for (fi, ridges) in per_facet.iter().enumerate() {
        for &(r, s) in ridges {
            incident[r].push((fi as u32, s));
        }
    }
    let is_pseudomanifold = incident.iter().all(|inc| inc.len() == 2);

    let mut sign = vec![0i8; n];
    let mut consistent = is_pseudomanifold;
    let mut components = 0;
    for start in 0..n {
        if sign[start] != 0 {
            continue;
        }
        components += 1;
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &(r, s) in &per_facet[f] {
                for &(g, t) in &incident[r] {
                    let g = g as usize;
                    if g == f {
                        continue;
                    }
                    // induced orientations on the shared ridge must cancel
                    let want = -sign[f] * s * t;
                    if sign[g] == 0 {
                        sign[g] = want;
                        queue.push_back(g);
                    } else if sign[g] != want {
                        consistent = false;
                    }
                }
            }
        }
    }
    let is_strongly_connected = components == 1;
    let orientable = is_pseudomanifold && consistent;
    ManifoldReport {
        is_pseudomanifold,
        is_strongly_connected,
        is_connected,
        orientable,
        orientation: orientable.then_some(sign),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn triangle_from_json() {
        let k = parse_complex(r#"{"dimension":1,"facets":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(k.num_vertices(), 3);
        assert_eq!(k.f_vector(), vec![3, 3]);
    }

    #[test]
    fn boundary_of_five_simplex_from_json() {
        let facets: Vec<Vec<i64>> = (0..6)
            .map(|skip| (0..6).filter(|&v| v != skip).collect())
            .collect();
        let doc = serde_json::json!({"dimension": 4, "facets": facets}).to_string();
        let k = parse_complex(&doc).unwrap();
        assert_eq!(k.facets().len(), 6);
        assert_eq!(k.dimension(), 4);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            parse_complex(r#"{"dimension":2,"facets":[[0,0,1]]}"#),
            Err(ComplexError::RepeatedVertex(_))
        ));
        assert!(matches!(
            parse_complex(r#"{"dimension":2,"facets":[[0,1,2],[0,1]]}"#),
            Err(ComplexError::InconsistentDimension { .. })
        ));
        assert_eq!(
            parse_complex(r#"{"dimension":2,"facets":[]}"#).unwrap_err(),
            ComplexError::EmptyFacetList
        );
        assert!(matches!(
            parse_complex(r#"{"dimension":1,"facets":[[0,1],[1,0]]}"#),
            Err(ComplexError::DuplicateFacet(_))
        ));
        assert!(matches!(parse_complex("{not json"), Err(ComplexError::Malformed(_))));
        assert!(matches!(parse_complex("dimension 2\n0 1 2"), Err(ComplexError::Malformed(_))));
    }

    #[test]
    fn text_format() {
        let k = parse_complex("# a circle\ndim 1\n10 20\n# comment\n20 30\n10 30\n").unwrap();
        assert_eq!(k.labels(), &[10, 20, 30]);
        assert_eq!(k.facets().len(), 3);
    }

    #[test]
    fn facets_are_normalized() {
        let k = parse_complex(r#"{"dimension":1,"facets":[[5,1],[9,5],[1,9]]}"#).unwrap();
        let facets: Vec<Vec<u32>> = k.facets().iter().map(<[u32]>::to_vec).collect();
        assert_eq!(facets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn spheres() {
        assert_eq!(boundary_of_simplex(1).unwrap().facets().len(), 3);
        let s3 = boundary_of_simplex(3).unwrap();
        assert_eq!((s3.facets().len(), s3.num_vertices()), (5, 5));
        let s4 = boundary_of_simplex(4).unwrap();
        assert_eq!((s4.facets().len(), s4.num_vertices()), (6, 6));
        assert_eq!(boundary_of_simplex(0).unwrap_err(), ComplexError::ZeroSphere);
    }

    #[test]
    fn skeleton_is_all_faces_of_facets() {
        let s4 = boundary_of_simplex(4).unwrap();
        for k in 0..=4 {
            assert_eq!(s4.count(k), binom(6, k + 1));
        }
    }

    #[test]
    fn product_facet_counts() {
        let c = boundary_of_simplex(1).unwrap();
        let s3 = boundary_of_simplex(3).unwrap();
        let t2 = staircase_product(&c, &c);
        assert_eq!(t2.facets().len(), 18);
        assert_eq!(staircase_product(&c, &s3).facets().len(), 60);
        let t3 = staircase_product(&t2, &c);
        assert_eq!(t3.facets().len(), 162);
        assert_eq!(t2.euler_characteristic(), 0);
    }

    #[test]
    fn sphere_report() {
        let r = verify_closed_manifold(&boundary_of_simplex(4).unwrap());
        assert!(r.is_pseudomanifold && r.is_connected && r.is_strongly_connected && r.orientable);
        let o = r.orientation.unwrap();
        assert_eq!(o[0], 1);
    }

    #[test]
    fn ridge_in_three_facets() {
        let k = parse_complex(r#"{"dimension":2,"facets":[[0,1,2],[0,1,3],[0,1,4]]}"#).unwrap();
        let r = verify_closed_manifold(&k);
        assert!(!r.is_pseudomanifold);
        assert!(!r.orientable);
        assert!(r.orientation.is_none());
    }

    #[test]
    fn six_vertex_projective_plane_is_not_orientable() {
        let k = parse_complex(
            r#"{"dimension":2,"facets":[[1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],
                [2,3,5],[3,4,6],[2,4,5],[3,5,6],[2,4,6]]}"#,
        )
        .unwrap();
        let r = verify_closed_manifold(&k);
        assert!(r.is_pseudomanifold && r.is_connected);
        assert!(!r.orientable);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn quotient_projective_spaces() {
        let rp2 = projective_space(2).unwrap();
        assert_eq!(rp2.euler_characteristic(), 1);
        assert_eq!(rp2.facets().len(), 24);
        let rp3 = projective_space(3).unwrap();
        assert_eq!(rp3.facets().len(), 192);
        assert_eq!(rp3.num_vertices(), 40);
        assert!(verify_closed_manifold(&rp3).orientable);
        assert!(!verify_closed_manifold(&rp2).orientable);
    }

    #[test]
    fn disconnected_complex() {
        let k = parse_complex(r#"{"dimension":1,"facets":[[0,1],[1,2],[0,2],[3,4],[4,5],[3,5]]}"#)
            .unwrap();
        let r = verify_closed_manifold(&k);
        assert!(r.is_pseudomanifold);
        assert!(!r.is_connected);
        assert!(!r.is_strongly_connected);
    }
}
