//! Integral polytopes: exact H-representation, face lattice, simplicity and
//! Delzant checks.
//!
//! A [`Polytope`] is built from integer points. Internally every polytope is
//! viewed through its [`AffineNormalization`] chart, so lower-dimensional
//! inputs (a hypersimplex sitting in a hyperplane of `Z^n`, a face of a
//! larger polytope) are handled as full-dimensional lattice polytopes in
//! `Z^d`. Facet normals are primitive in the chart lattice.

mod equivalence;
mod hull;
mod lattice;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use equivalence::lattice_equivalence;
pub use hull::Halfspace;

use crate::error::{Error, Result};
use crate::linalg::{
    affine_normalize, dot, primitive, sub, AffineNormalization, Int, IntMatrix, Rat, RankTracker,
};

/// A nonempty face, identified by the vertices it contains.
///
/// `facet_ids` lists the facets containing the face; it is empty for the
/// improper face `P` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub dim: usize,
    pub vertex_ids: Vec<usize>,
    pub facet_ids: Vec<usize>,
}

/// `x -> linear * x + translation` on `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: IntMatrix,
    pub translation: Vec<Int>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap { linear: IntMatrix::identity(n), translation: vec![Int::zero(); n] }
    }

    pub fn translation(t: Vec<Int>) -> Self {
        AffineMap { linear: IntMatrix::identity(t.len()), translation: t }
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.linear.mul_vec(x).iter().zip(&self.translation).map(|(a, b)| a + b).collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.linear.is_square() && self.linear.det().abs().is_one()
    }
}

/// Chart, chart coordinates and facets of a lattice point set's hull.
#[derive(Clone, Debug)]
pub(crate) struct Hull {
    pub frame: AffineNormalization,
    pub local: Vec<Vec<Int>>,
    pub facets: Vec<Halfspace>,
}

impl Hull {
    /// `points` must be sorted and duplicate free.
    fn of_points(points: &[Vec<Int>]) -> Result<Hull> {
        let frame = affine_normalize(points)?;
        let local: Vec<Vec<Int>> = points.iter().map(|p| frame.forward(p)).collect();
        let d = frame.dim();
        let facets = if d == 0 { Vec::new() } else { hull::facets(&local, d) };
        Ok(Hull { frame, local, facets })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Lattice points of the `n`-th dilate, counted in the chart lattice.
    ///
    /// The outer coordinates are scanned over the bounding box; the last
    /// coordinate is solved as an interval from the facet inequalities.
    pub fn count_dilate(&self, n: u64) -> Int {
        let d = self.dim();
        if d == 0 || n == 0 {
            return Int::one();
        }
        let n = Int::from(n);
        let lo: Vec<Int> = (0..d)
            .map(|j| self.local.iter().map(|p| &p[j] * &n).min().expect("nonempty"))
            .collect();
        let hi: Vec<Int> = (0..d)
            .map(|j| self.local.iter().map(|p| &p[j] * &n).max().expect("nonempty"))
            .collect();
        let rhs: Vec<Int> = self.facets.iter().map(|h| &h.offset * &n).collect();
        let last = d - 1;
        let mut count = Int::zero();
        let mut y: Vec<Int> = lo[..last].to_vec();
        loop {
            let mut t_lo = lo[last].clone();
            let mut t_hi = hi[last].clone();
            let mut feasible = true;
            for (h, b) in self.facets.iter().zip(&rhs) {
                let partial: Int = h.normal[..last].iter().zip(&y).map(|(a, x)| a * x).sum();
                let need = b - partial;
                let a = &h.normal[last];
                if a.is_zero() {
                    if need.is_positive() {
                        feasible = false;
                        break;
                    }
                } else if a.is_positive() {
                    let bound = need.div_ceil(a);
                    if bound > t_lo {
                        t_lo = bound;
                    }
                } else {
                    let bound = need.div_floor(a);
                    if bound < t_hi {
                        t_hi = bound;
                    }
                }
            }
            if feasible && t_hi >= t_lo {
                count += &t_hi - &t_lo + 1;
            }
            // Odometer over the outer coordinates.
            let mut k = 0;
            loop {
                if k == last {
                    return count;
                }
                if y[k] < hi[k] {
                    y[k] += 1;
                    break;
                }
                y[k] = lo[k].clone();
                k += 1;
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Cache {
    nvols: OnceLock<Vec<Int>>,
    face_hulls: OnceLock<Vec<Hull>>,
}

/// An integral convex polytope with its exact H-representation and face
/// lattice.
#[derive(Clone, Debug)]
pub struct Polytope {
    name: Option<String>,
    vertices: Vec<Vec<Int>>,
    hull: Hull,
    incidence: Vec<FixedBitSet>,
    faces: Vec<Face>,
    /// Facets of each face (faces one dimension lower), by face id.
    subfaces: Vec<Vec<usize>>,
    /// Start index of each dimension's block in `faces`, plus a sentinel.
    grading: Vec<usize>,
    cache: Cache,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    /// Convex hull of integer points. Duplicates and non-extreme points are
    /// dropped; vertices are stored in lexicographic order.
    pub fn from_vertices(points: &[Vec<Int>]) -> Result<Polytope> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let n = first.len();
        if let Some(bad) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();

        let hull = Hull::of_points(&pts)?;
        let d = hull.dim();
        let keep: Vec<usize> = if d == 0 {
            vec![0]
        } else {
            (0..pts.len())
                .filter(|&i| {
                    let mut t = RankTracker::new();
                    for h in &hull.facets {
                        if h.slack(&hull.local[i]).is_zero() {
                            t.push(&h.normal);
                        }
                    }
                    t.rank() == d
                })
                .collect()
        };
        // The lexicographically smallest point is always extreme, so the
        // chart origin survives the filtering.
        debug_assert_eq!(keep.first(), Some(&0));
        let vertices: Vec<Vec<Int>> = keep.iter().map(|&i| pts[i].clone()).collect();
        let hull = Hull {
            frame: hull.frame,
            local: keep.iter().map(|&i| hull.local[i].clone()).collect(),
            facets: hull.facets,
        };
        Ok(Self::assemble(vertices, hull))
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Polytope> {
        let pts: Vec<Vec<Int>> = points.iter().map(|p| p.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::from_vertices(&pts)
    }

    fn assemble(vertices: Vec<Vec<Int>>, hull: Hull) -> Polytope {
        let nv = vertices.len();
        let incidence: Vec<FixedBitSet> = hull
            .facets
            .iter()
            .map(|h| {
                let mut s = FixedBitSet::with_capacity(nv);
                for (i, y) in hull.local.iter().enumerate() {
                    if h.slack(y).is_zero() {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        let lat = lattice::build(nv, hull.dim(), &incidence);
        Polytope {
            name: None,
            vertices,
            hull,
            incidence,
            faces: lat.faces,
            subfaces: lat.subfaces,
            grading: lat.grading,
            cache: Cache::default(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn vertices(&self) -> &[Vec<Int>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// The lattice chart of the affine span.
    pub fn frame(&self) -> &AffineNormalization {
        &self.hull.frame
    }

    /// Vertices in chart coordinates (`Z^dim`).
    pub fn local_vertices(&self) -> &[Vec<Int>] {
        &self.hull.local
    }

    /// Facet inequalities `<normal, y> >= offset` in chart coordinates, with
    /// primitive inward normals.
    pub fn facets(&self) -> &[Halfspace] {
        &self.hull.facets
    }

    /// Facet inequalities lifted to ambient coordinates. For a
    /// full-dimensional polytope these are its primitive facet inequalities;
    /// otherwise they are valid on the affine span only.
    pub fn ambient_facets(&self) -> Vec<Halfspace> {
        let fwd = self.frame().forward_matrix();
        let origin = self.frame().origin();
        self.facets()
            .iter()
            .map(|h| {
                let normal = fwd.mul_vec(&h.normal);
                let offset = &h.offset + dot(&normal, origin);
                Halfspace { normal, offset }
            })
            .collect()
    }

    /// Vertex ids lying on the given facet.
    pub fn facet_vertices(&self, facet: usize) -> Vec<usize> {
        self.incidence[facet].ones().collect()
    }

    /// All nonempty faces, graded by dimension, `P` itself last.
    pub fn face_lattice(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces(&self, k: usize) -> &[Face] {
        if k > self.dim() {
            return &[];
        }
        &self.faces[self.grading[k]..self.grading[k + 1]]
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// The improper face `P`.
    pub fn whole(&self) -> &Face {
        self.faces.last().expect("face lattice is never empty")
    }

    /// Face counts `|P(k)|` for `k = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.faces(k).len()).collect()
    }

    /// Facets of a face, as face ids.
    pub fn subfaces(&self, face: &Face) -> &[usize] {
        &self.subfaces[face.id]
    }

    /// Ambient coordinates of a face's vertices.
    pub fn face_points(&self, face: &Face) -> Vec<Vec<Int>> {
        face.vertex_ids.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Vertex ids adjacent to `v` along an edge.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.faces(1)
            .iter()
            .filter(|e| e.vertex_ids.contains(&v))
            .map(|e| if e.vertex_ids[0] == v { e.vertex_ids[1] } else { e.vertex_ids[0] })
            .collect()
    }

    /// A face regarded as a polytope in its own right.
    pub fn face_polytope(&self, face: &Face) -> Polytope {
        Polytope::from_vertices(&self.face_points(face)).expect("faces are nonempty")
    }

    pub(crate) fn face_hull(&self, face: &Face) -> &Hull {
        let hulls = self.cache.face_hulls.get_or_init(|| {
            self.faces
                .iter()
                .map(|f| {
                    if f.id + 1 == self.faces.len() {
                        self.hull.clone()
                    } else {
                        Hull::of_points(&self.face_points(f)).expect("faces are nonempty")
                    }
                })
                .collect()
        });
        &hulls[face.id]
    }

    pub(crate) fn nvol_cache(&self) -> &OnceLock<Vec<Int>> {
        &self.cache.nvols
    }

    /// True iff every vertex lies on exactly `dim` edges.
    pub fn is_simple(&self) -> bool {
        let r = self.dim();
        let mut degree = vec![0usize; self.num_vertices()];
        for e in self.faces(1) {
            for &v in &e.vertex_ids {
                degree[v] += 1;
            }
        }
        degree.iter().all(|&d| d == r)
    }

    /// Primitive edge directions at vertex `v`, in chart coordinates.
    pub fn edge_directions(&self, v: usize) -> Vec<Vec<Int>> {
        let local = self.local_vertices();
        self.neighbors(v)
            .into_iter()
            .map(|w| primitive(&sub(&local[w], &local[v])).expect("distinct vertices"))
            .collect()
    }

    /// Simple, and at every vertex the first lattice points along the edges
    /// form a basis of the span lattice.
    pub fn is_delzant(&self) -> bool {
        if !self.is_simple() {
            return false;
        }
        let r = self.dim();
        (0..self.num_vertices()).all(|v| {
            let dirs = self.edge_directions(v);
            IntMatrix::from_rows(&dirs, r).det().abs().is_one()
        })
    }

    /// The dilate `n * P`.
    pub fn dilate(&self, n: i64) -> Result<Polytope> {
        if n <= 0 {
            return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {n}")));
        }
        let k = Int::from(n);
        let pts: Vec<Vec<Int>> =
            self.vertices.iter().map(|v| v.iter().map(|x| x * &k).collect()).collect();
        let mut p = Polytope::from_vertices(&pts)?;
        p.name = self.name.as_ref().map(|s| format!("{n}*{s}"));
        Ok(p)
    }

    /// Membership of a rational point: in the affine span and on the inner
    /// side of every facet.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: x.len() });
        }
        if !self.frame().in_span_rat(x) {
            return Ok(false);
        }
        let y = self.frame().forward_rat(x);
        Ok(self.facets().iter().all(|h| {
            let lhs: Rat = h.normal.iter().zip(&y).map(|(a, t)| Rat::from(a.clone()) * t).sum();
            lhs >= Rat::from(h.offset.clone())
        }))
    }

    pub fn contains_lattice_point(&self, x: &[Int]) -> bool {
        x.len() == self.ambient_dim()
            && self.frame().in_span(x)
            && {
                let y = self.frame().forward(x);
                self.facets().iter().all(|h| !h.slack(&y).is_negative())
            }
    }

    /// Image under an integer affine map with `|det| = 1`.
    pub fn unimodular_image(&self, t: &AffineMap) -> Result<Polytope> {
        let n = self.ambient_dim();
        if t.linear.rows() != n || t.linear.cols() != n || t.translation.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: t.linear.rows() });
        }
        let det = t.linear.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let pts: Vec<Vec<Int>> = self.vertices.iter().map(|v| t.apply(v)).collect();
        let mut p = Polytope::from_vertices(&pts)?;
        p.name = self.name.clone();
        Ok(p)
    }
}
