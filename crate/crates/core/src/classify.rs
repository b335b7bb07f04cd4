//! Recognition of defect Delzant polytopes and their join decompositions.
//!
//! A join `P = ℙ(P_0, ..., P_k)` has the `k + 1` facets pulled back from the
//! simplex `Δ_k`. Their inner normals sum to zero and their offsets sum to
//! `-1`, and together they define a surjection onto `Z^k` sending `P` onto a
//! unimodular simplex with the summands as vertex fibres. The search below
//! enumerates such facet families and certifies every hit by rebuilding the
//! join and testing lattice equivalence.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::constructions::{projective_join, JoinSpec};
use crate::error::{Error, Result};
use crate::invariants::{c, c_star, dual_degree};
use crate::json;
use crate::linalg::{dot, lattice_index, smith_normal_form, Int, IntMatrix, Rat};
use crate::polytope::{lattice_equivalence, Polytope};

/// A certified join structure on a defect polytope.
#[derive(Clone, Debug)]
pub struct JoinDecomposition {
    pub k: usize,
    /// Ids of the facets pulled back from the simplex; the first plays the
    /// role of the facet opposite the origin of `Δ_k`.
    pub facet_ids: Vec<usize>,
    /// `z = projection * x + shift` on ambient points `x` of `P`.
    pub projection: IntMatrix,
    pub shift: Vec<Int>,
    /// `0, e_1, ..., e_k`.
    pub simplex_image: Vec<Vec<Int>>,
    /// Fibres over the simplex vertices, in a common lattice chart of `Z^(r-k)`.
    pub fibers: Vec<Polytope>,
    pub defect: usize,
}

/// Delzant with `c = 0`.
pub fn is_defect_polytope(p: &Polytope) -> bool {
    p.is_delzant() && c(p).is_zero()
}

/// Smallest admissible simplex dimension for a defect join of dimension `r`.
pub fn min_join_k(r: usize) -> usize {
    2.max((r + 1).div_ceil(2))
}

fn defect_value(r: usize, k: usize) -> usize {
    if k == r {
        r
    } else {
        2 * k - r
    }
}

/// Finds a join decomposition of a Delzant polytope with `c = 0`.
///
/// Returns `Ok(None)` when `c != 0`. Tries `k` from `r` down to
/// `max(2, ⌈(r+1)/2⌉)` and facet families in lexicographic order, so the
/// result has maximal `k`.
pub fn decompose_join(p: &Polytope) -> Result<Option<JoinDecomposition>> {
    if !p.is_delzant() {
        return Err(Error::NotDelzant);
    }
    let r = p.dim();
    if r < 2 {
        return Err(Error::InvalidParameter(format!("decomposition needs dim >= 2, got {r}")));
    }
    if !c(p).is_zero() {
        return Ok(None);
    }
    let facets = p.facets();
    for k in (min_join_k(r)..=r).rev() {
        if k == r && p.num_vertices() != r + 1 {
            continue;
        }
        let mut chosen = Vec::with_capacity(k + 1);
        let mut found = None;
        subsets(facets.len(), k + 1, 0, &mut chosen, &mut |ids| {
            let sum = ids.iter().fold(vec![Int::zero(); r], |acc, &j| crate::linalg::add(&acc, &facets[j].normal));
            if sum.iter().any(|x| !x.is_zero()) {
                return false;
            }
            let offsets: Int = ids.iter().map(|&j| &facets[j].offset).sum();
            if offsets != -Int::one() {
                return false;
            }
            match try_family(p, ids) {
                Some(d) => {
                    found = Some(d);
                    true
                }
                None => false,
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Err(Error::ClassificationViolated(format!(
        "Delzant polytope of dimension {r} with c = 0 has no join decomposition"
    )))
}

/// Calls `visit` on each `size`-subset of `0..n` in lexicographic order until
/// it returns true.
fn subsets(n: usize, size: usize, start: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if chosen.len() == size {
        return visit(chosen);
    }
    for j in start..n {
        if n - j < size - chosen.len() {
            break;
        }
        chosen.push(j);
        let stop = subsets(n, size, j + 1, chosen, visit);
        chosen.pop();
        if stop {
            return true;
        }
    }
    false
}

fn try_family(p: &Polytope, ids: &[usize]) -> Option<JoinDecomposition> {
    let r = p.dim();
    let k = ids.len() - 1;
    let facets = p.facets();
    let rows: Vec<Vec<Int>> = ids[1..].iter().map(|&j| facets[j].normal.clone()).collect();
    if k > 0 && lattice_index(&rows).ok()? != Int::one() {
        return None;
    }
    let offsets: Vec<Int> = ids[1..].iter().map(|&j| facets[j].offset.clone()).collect();

    // Every vertex must land on a vertex of the standard simplex.
    let mut fibre_of = Vec::with_capacity(p.num_vertices());
    for y in p.local_vertices() {
        let z: Vec<Int> = rows.iter().zip(&offsets).map(|(a, b)| dot(a, y) - b).collect();
        let ones: Vec<usize> = (0..k).filter(|&i| z[i].is_one()).collect();
        if z.iter().any(|x| !x.is_zero() && !x.is_one()) || ones.len() > 1 {
            return None;
        }
        fibre_of.push(ones.first().map_or(0, |i| i + 1));
    }

    // Common chart of the fibres: the last r - k coordinates of V^{-1} y,
    // where A V = U^{-1} [I | 0].
    let a = IntMatrix::from_rows(&rows, r);
    let (_, _, v) = smith_normal_form(&a);
    let vinv = v.unimodular_inverse()?;
    let mut fibers = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let pts: Vec<Vec<Int>> = p
            .local_vertices()
            .iter()
            .zip(&fibre_of)
            .filter(|(_, &f)| f == i)
            .map(|(y, _)| vinv.mul_vec(y)[k..].to_vec())
            .collect();
        if pts.is_empty() {
            return None;
        }
        let f = Polytope::from_vertices(&pts).ok()?;
        if f.dim() != r - k || !f.is_delzant() {
            return None;
        }
        fibers.push(f.with_name(format!("fiber {i}")));
    }
    let spec = JoinSpec::new(fibers.clone()).ok()?;
    lattice_equivalence(&projective_join(&spec), p)?;

    // Ambient form of z = A y - b with y = F^T (x - o).
    let projection = &a * &p.frame().forward_matrix().transpose();
    let o = p.frame().origin();
    let shift: Vec<Int> = projection.mul_vec(o).iter().zip(&offsets).map(|(x, b)| -x - b).collect();
    let mut simplex_image = vec![vec![Int::zero(); k]];
    simplex_image.extend((0..k).map(|i| (0..k).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()));
    Some(JoinDecomposition {
        k,
        facet_ids: ids.to_vec(),
        projection,
        shift,
        simplex_image,
        fibers,
        defect: defect_value(r, k),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Defect {
        defect: usize,
        #[serde(serialize_with = "ser_decomposition")]
        decomposition: JoinDecomposition,
    },
    NonDefect {
        #[serde(serialize_with = "json::ser_opt_int")]
        dual_degree: Option<Int>,
    },
    NonDelzant {
        #[serde(serialize_with = "json::ser_int")]
        c: Int,
        #[serde(serialize_with = "json::ser_opt_rat")]
        c_star: Option<Rat>,
    },
    /// Dimension 0 or 1, where the classification range for `k` is empty.
    Degenerate {
        #[serde(serialize_with = "json::ser_int")]
        c: Int,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub dim: usize,
    pub is_simple: bool,
    pub is_delzant: bool,
    #[serde(serialize_with = "json::ser_int")]
    pub c: Int,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn ser_decomposition<S: serde::Serializer>(d: &JoinDecomposition, s: S) -> std::result::Result<S::Ok, S::Error> {
    decomposition_value(d).serialize(s)
}

pub fn decomposition_value(d: &JoinDecomposition) -> serde_json::Value {
    let ints = |v: &[Int]| serde_json::Value::Array(v.iter().map(json::int_value).collect());
    serde_json::json!({
        "k": d.k,
        "defect": d.defect,
        "facet_ids": d.facet_ids,
        "projection": {
            "matrix": d.projection.to_rows().iter().map(|r| ints(r)).collect::<Vec<_>>(),
            "shift": ints(&d.shift),
        },
        "simplex_image": d.simplex_image.iter().map(|r| ints(r)).collect::<Vec<_>>(),
        "fibers": d.fibers.iter().map(json::polytope_to_value).collect::<Vec<_>>(),
    })
}

pub fn classify(p: &Polytope) -> Result<ClassificationReport> {
    let r = p.dim();
    let cp = c(p);
    let is_simple = p.is_simple();
    let is_delzant = p.is_delzant();
    let mut notes = Vec::new();
    let verdict = if r <= 1 {
        notes.push("dimension below 2: no defect classification".to_string());
        Verdict::Degenerate { c: cp.clone() }
    } else if !is_delzant {
        let c_star = if is_simple { Some(c_star(p)?) } else { None };
        if cp.is_zero() {
            notes.push("non-Delzant polytope with c = 0".to_string());
        }
        if cp.is_negative() {
            notes.push("negative c on a non-Delzant polytope".to_string());
        }
        Verdict::NonDelzant { c: cp.clone(), c_star }
    } else {
        match decompose_join(p)? {
            Some(d) => {
                debug_assert_eq!(d.defect % 2, r % 2);
                Verdict::Defect { defect: d.defect, decomposition: d }
            }
            None => {
                let (deg, note) = dual_degree(p);
                notes.extend(note.map(str::to_string));
                Verdict::NonDefect { dual_degree: deg }
            }
        }
    };
    Ok(ClassificationReport { dim: r, is_simple, is_delzant, c: cp, verdict, notes })
}
