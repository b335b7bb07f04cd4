//! Lattice-normalized volumes and lattice point counts of faces.
//!
//! The normalized volume `nvol(F) = dim(F)! * Vol(F)` is an integer and is
//! the currency used by every invariant; a vertex has `nvol = 1`. Volumes
//! come from a pulling triangulation over the face lattice: each face is
//! coned from its smallest vertex over the facets that avoid it, and each
//! simplex contributes `|det|` of its edge matrix in the face's own lattice
//! chart.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{sub, Int, IntMatrix, Rat};
use crate::poly::{self, RatPoly};
use crate::polytope::{Face, Polytope};

pub fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

/// `(k + 1) (k + 2) ... (k + t)`, i.e. `(k + t)! / k!`.
pub fn rising(k: usize, t: usize) -> Int {
    (k + 1..=k + t).fold(Int::one(), |acc, j| acc * Int::from(j))
}

fn compute_nvols(p: &Polytope) -> Vec<Int> {
    let faces = p.face_lattice();
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); faces.len()];
    let mut nvols = Vec::with_capacity(faces.len());
    for f in faces {
        if f.dim == 0 {
            simplices[f.id] = vec![vec![f.vertex_ids[0]]];
            nvols.push(Int::one());
            continue;
        }
        let apex = f.vertex_ids[0];
        let mut mine = Vec::new();
        for &g in p.subfaces(f) {
            if faces[g].vertex_ids.binary_search(&apex).is_ok() {
                continue;
            }
            for s in &simplices[g] {
                let mut t = Vec::with_capacity(s.len() + 1);
                t.push(apex);
                t.extend_from_slice(s);
                mine.push(t);
            }
        }
        let frame = &p.face_hull(f).frame;
        let verts = p.vertices();
        let total: Int = mine
            .iter()
            .map(|s| {
                let rows: Vec<Vec<Int>> = s[1..]
                    .iter()
                    .map(|&v| frame.forward_linear(&sub(&verts[v], &verts[apex])))
                    .collect();
                IntMatrix::from_rows(&rows, f.dim).det().abs()
            })
            .sum();
        simplices[f.id] = mine;
        nvols.push(total);
    }
    nvols
}

/// Normalized volumes of all faces, indexed by face id.
pub fn face_normalized_volumes(p: &Polytope) -> &[Int] {
    p.nvol_cache().get_or_init(|| compute_nvols(p))
}

/// `dim(F)! * Vol(F)`.
pub fn normalized_volume(p: &Polytope, face: &Face) -> Int {
    face_normalized_volumes(p)[face.id].clone()
}

/// Lattice volume `Vol(F)` as an exact rational.
pub fn volume(p: &Polytope, face: &Face) -> Rat {
    Rat::new(normalized_volume(p, face), factorial(face.dim))
}

/// Number of lattice points in the dilate `n F`.
pub fn lattice_points(p: &Polytope, face: &Face, n: u64) -> Int {
    p.face_hull(face).count_dilate(n)
}

/// Ehrhart data of a face: sampled counts and the interpolated polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct EhrhartData {
    pub face_id: usize,
    pub dim: usize,
    pub samples: BTreeMap<u64, Int>,
    /// Ascending coefficients; degree equals `dim`.
    pub polynomial: RatPoly,
}

impl EhrhartData {
    pub fn eval(&self, n: u64) -> Rat {
        poly::eval_int(&self.polynomial, n as i64)
    }
}

/// Interpolates the Ehrhart polynomial from `n = 0..=dim` and checks it
/// against one further dilate and against the normalized volume.
pub fn ehrhart(p: &Polytope, face: &Face) -> Result<EhrhartData> {
    let k = face.dim;
    let mut samples = BTreeMap::new();
    samples.insert(0u64, Int::one());
    for n in 1..=(k as u64 + 1) {
        samples.insert(n, lattice_points(p, face, n));
    }
    let nodes: Vec<(Int, Int)> =
        samples.iter().take(k + 1).map(|(n, c)| (Int::from(*n), c.clone())).collect();
    let polynomial = poly::interpolate(&nodes);
    let data = EhrhartData { face_id: face.id, dim: k, samples, polynomial };
    let check = k as u64 + 1;
    if data.eval(check) != Rat::from(data.samples[&check].clone()) {
        return Err(Error::Internal(format!(
            "Ehrhart interpolation of face {} disagrees with the count at n = {check}",
            face.id
        )));
    }
    let lead = data.polynomial.get(k).cloned().unwrap_or_default();
    if lead != volume(p, face) {
        return Err(Error::Internal(format!(
            "leading Ehrhart coefficient of face {} is {lead}, volume is {}",
            face.id,
            volume(p, face)
        )));
    }
    Ok(data)
}

impl Polytope {
    /// Normalized volume of the whole polytope.
    pub fn normalized_volume(&self) -> Int {
        normalized_volume(self, self.whole())
    }

    pub fn volume(&self) -> Rat {
        volume(self, self.whole())
    }

    /// `|nP ∩ Z^n|`.
    pub fn lattice_points(&self, n: u64) -> Int {
        lattice_points(self, self.whole(), n)
    }

    pub fn ehrhart(&self) -> Result<EhrhartData> {
        ehrhart(self, self.whole())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn simplex(r: usize) -> Polytope {
        let mut pts = vec![vec![Int::from(0); r.max(1)]];
        for i in 0..r {
            let mut e = vec![Int::from(0); r];
            e[i] = Int::from(1);
            pts.push(e);
        }
        Polytope::from_vertices(&pts).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(int(n), int(d))
    }

    #[test]
    fn simplex_faces_have_unit_nvol() {
        for dim in 1..=4 {
            let s = simplex(dim);
            for f in s.face_lattice() {
                assert_eq!(normalized_volume(&s, f), int(1));
                assert_eq!(volume(&s, f), Rat::new(int(1), factorial(f.dim)));
            }
        }
    }

    #[test]
    fn edge_length_counts_lattice_points() {
        // An edge through 4 lattice points has length 3.
        let p = Polytope::from_i64(&[&[0, 0], &[3, 3], &[0, 1]]).unwrap();
        let long = p.faces(1).iter().find(|e| e.vertex_ids == vec![0, 2]).unwrap();
        assert_eq!(p.vertices()[2], crate::linalg::int_vec(&[3, 3]));
        assert_eq!(normalized_volume(&p, long), int(3));
        assert_eq!(lattice_points(&p, long, 1), int(4));
    }

    #[test]
    fn prism_volume() {
        let prism = Polytope::from_i64(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0],
            &[0, 0, 1], &[1, 0, 1], &[0, 1, 1],
        ])
        .unwrap();
        assert_eq!(prism.normalized_volume(), int(3));
        assert_eq!(prism.volume(), r(1, 2));
    }

    #[test]
    fn cube_volume() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(crate::linalg::int_vec(&[x, y, z]));
                }
            }
        }
        let cube = Polytope::from_vertices(&pts).unwrap();
        assert_eq!(cube.volume(), r(1, 1));
        let e = cube.ehrhart().unwrap();
        assert_eq!(e.polynomial, vec![r(1, 1), r(3, 1), r(3, 1), r(1, 1)]);
    }

    #[test]
    fn counts() {
        let t = simplex(2);
        assert_eq!(t.lattice_points(1), int(3));
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        for n in 1..6u64 {
            assert_eq!(sq.lattice_points(n), Int::from((n + 1) * (n + 1)));
        }
        assert_eq!(sq.lattice_points(0), int(1));
    }

    #[test]
    fn segment_and_triangle_ehrhart() {
        let seg = Polytope::from_i64(&[&[0], &[2]]).unwrap();
        assert_eq!(seg.ehrhart().unwrap().polynomial, vec![r(1, 1), r(2, 1)]);
        let tri = simplex(2).ehrhart().unwrap();
        assert_eq!(tri.polynomial, vec![r(1, 1), r(3, 2), r(1, 2)]);
        for n in [3u64, 4] {
            assert_eq!(tri.eval(n), Rat::from(simplex(2).lattice_points(n)));
        }
    }

    #[test]
    fn rising_products() {
        assert_eq!(rising(2, 0), int(1));
        assert_eq!(rising(2, 3), int(60));
        assert_eq!(factorial(5), int(120));
    }
}
