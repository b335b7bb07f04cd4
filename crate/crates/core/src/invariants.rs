//! The face-sum invariants `c`, `c_t`, `c*` and the polynomial `f(P, n)`.
//!
//! All sums run over the nonempty faces of `P`, including `P` itself, with
//! sign `(-1)^codim`. They are assembled from integer normalized volumes, so
//! everything except `c*` stays in `Z`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{lattice_index, Int, Rat};
use crate::poly;
use crate::polytope::{Face, Polytope};
use crate::volume::{face_normalized_volumes, factorial, lattice_points, rising};

fn sign(codim: usize) -> Int {
    if codim % 2 == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// Signed per-dimension terms of `c`: entry `k` is
/// `(-1)^(r-k) (k+1)! * sum_{dim F = k} Vol(F)`.
pub fn c_by_dimension(p: &Polytope) -> Vec<Int> {
    let r = p.dim();
    let nv = face_normalized_volumes(p);
    (0..=r)
        .map(|k| {
            let s: Int = p.faces(k).iter().map(|f| &nv[f.id]).sum();
            sign(r - k) * Int::from(k + 1) * s
        })
        .collect()
}

pub fn c(p: &Polytope) -> Int {
    c_by_dimension(p).into_iter().sum()
}

/// `sum_F (-1)^codim (dim F + t)! Vol(F)`; `c_1 = c`.
pub fn c_t(p: &Polytope, t: usize) -> Int {
    let r = p.dim();
    let nv = face_normalized_volumes(p);
    p.face_lattice().iter().map(|f| sign(r - f.dim) * rising(f.dim, t) * &nv[f.id]).sum()
}

/// Lattice index of the primitive inner normals of the facets through `face`.
pub fn mult(p: &Polytope, face: &Face) -> Result<Int> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let normals: Vec<Vec<Int>> =
        face.facet_ids.iter().map(|&j| p.facets()[j].normal.clone()).collect();
    lattice_index(&normals)
}

/// `sum_F (-1)^codim (dim F + 1)! Vol(F) / mult(F)`, for simple `P`.
///
/// Equal to `c` for Delzant polytopes. Not integral in general: singular
/// vertices contribute fractions.
pub fn c_star(p: &Polytope) -> Result<Rat> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let r = p.dim();
    let nv = face_normalized_volumes(p);
    let mut total = Rat::zero();
    for f in p.face_lattice() {
        let term = sign(r - f.dim) * Int::from(f.dim + 1) * &nv[f.id];
        total += Rat::new(term, mult(p, f)?);
    }
    Ok(total)
}

/// `f(P, n) = sum_k (-n)^(r-k) (k+1)! sum_{dim F = k} |nF ∩ Z^N|`.
pub fn f_value(p: &Polytope, n: u64) -> Int {
    let r = p.dim();
    let minus_n = -Int::from(n);
    let mut total = Int::zero();
    for k in 0..=r {
        let count: Int = p.faces(k).iter().map(|f| lattice_points(p, f, n)).sum();
        total += num_traits::pow(minus_n.clone(), r - k) * factorial(k + 1) * count;
    }
    total
}

/// Coefficients `d_0 .. d_r` of `f(P, n)`, interpolated from `n = 1..=r+1`.
///
/// The result is checked for integrality, against one further dilate, and
/// against `d_r = c`; any mismatch is reported as an internal error.
pub fn f_polynomial(p: &Polytope) -> Result<Vec<Int>> {
    let r = p.dim();
    let nodes: Vec<(Int, Int)> =
        (1..=r as u64 + 1).map(|n| (Int::from(n), f_value(p, n))).collect();
    let mut coeffs = poly::interpolate(&nodes);
    coeffs.resize(r + 1, Rat::zero());
    let extra = r as u64 + 2;
    if poly::eval_int(&coeffs, extra as i64) != Rat::from(f_value(p, extra)) {
        return Err(Error::Internal(format!("f(P, n) is not a polynomial of degree {r}")));
    }
    let ints = poly::to_integers(&coeffs)
        .ok_or_else(|| Error::Internal(format!("non-integer f-coefficient in {coeffs:?}")))?;
    let cp = c(p);
    if ints[r] != cp {
        return Err(Error::Internal(format!("d_r = {} but c = {cp}", ints[r])));
    }
    Ok(ints)
}

pub const DEFECT_NOTE: &str = "dual defect positive, see classifier";
pub const SINGULAR_NOTE: &str = "degree formula stated only for non-singular case";

/// Degree of the dual variety for Delzant `P` with `c > 0`, else a note
/// explaining why it is absent.
pub fn dual_degree(p: &Polytope) -> (Option<Int>, Option<&'static str>) {
    if !p.is_delzant() {
        return (None, Some(SINGULAR_NOTE));
    }
    let cp = c(p);
    if cp.is_positive() {
        (Some(cp), None)
    } else {
        (None, Some(DEFECT_NOTE))
    }
}

pub const DEFAULT_T_RANGE: std::ops::RangeInclusive<usize> = 0..=4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub dim: usize,
    #[serde(serialize_with = "json::ser_int")]
    pub c: Int,
    #[serde(serialize_with = "json::ser_opt_rat")]
    pub c_star: Option<Rat>,
    #[serde(serialize_with = "json::ser_int_map")]
    pub c_t_values: BTreeMap<usize, Int>,
    #[serde(serialize_with = "json::ser_int_vec")]
    pub f_coefficients: Vec<Int>,
    #[serde(serialize_with = "json::ser_opt_int")]
    pub dual_degree: Option<Int>,
    pub notes: Vec<String>,
}

pub fn report(p: &Polytope, t_range: impl IntoIterator<Item = usize>) -> Result<InvariantReport> {
    let mut notes = Vec::new();
    let cp = c(p);
    let f_coefficients = f_polynomial(p)?;
    let c_star = match c_star(p) {
        Ok(v) => {
            if !v.is_integer() {
                notes.push(format!("c_star = {v} is not an integer (singular simple polytope)"));
            }
            if p.is_delzant() && v != Rat::from(cp.clone()) {
                return Err(Error::Internal(format!("c_star = {v} differs from c = {cp}")));
            }
            Some(v)
        }
        Err(Error::NotSimple) => {
            notes.push("c_star omitted: polytope is not simple".to_string());
            None
        }
        Err(e) => return Err(e),
    };
    let c_t_values = t_range.into_iter().map(|t| (t, c_t(p, t))).collect();
    let (dual_degree, note) = dual_degree(p);
    notes.extend(note.map(str::to_string));
    Ok(InvariantReport { dim: p.dim(), c: cp, c_star, c_t_values, f_coefficients, dual_degree, notes })
}
