//! Standard families: simplices, cubes, hypersimplices, products and
//! projective joins, plus Eulerian numbers.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add, sub, Int};
use crate::polytope::Polytope;

fn unit(n: usize, i: usize) -> Vec<Int> {
    let mut e = vec![Int::zero(); n];
    e[i] = Int::one();
    e
}

/// `conv{0, e_1, ..., e_r}` in `Z^r`.
pub fn simplex(r: usize) -> Polytope {
    let mut pts = vec![vec![Int::zero(); r]];
    pts.extend((0..r).map(|i| unit(r, i)));
    Polytope::from_vertices(&pts).expect("simplex").with_name(format!("simplex({r})"))
}

/// `[0, n]^m`.
pub fn cube(m: usize, n: i64) -> Result<Polytope> {
    if m == 0 || n < 1 {
        return Err(Error::InvalidParameter(format!("cube needs m >= 1 and n >= 1, got m = {m}, n = {n}")));
    }
    let pts: Vec<Vec<Int>> = (0..1usize << m)
        .map(|mask| (0..m).map(|i| if mask >> i & 1 == 1 { Int::from(n) } else { Int::zero() }).collect())
        .collect();
    Ok(Polytope::from_vertices(&pts)?.with_name(format!("cube({m}, {n})")))
}

/// `Δ(k, n)`: all 0/1 vectors of `Z^n` with coordinate sum `k`.
pub fn hypersimplex(k: usize, n: usize) -> Result<Polytope> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("hypersimplex needs 1 <= k <= n - 1, got k = {k}, n = {n}")));
    }
    let pts: Vec<Vec<Int>> = (0..1usize << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).map(|i| Int::from(mask >> i & 1)).collect())
        .collect();
    Ok(Polytope::from_vertices(&pts)?.with_name(format!("hypersimplex({k}, {n})")))
}

/// Cartesian product in `Z^(a + b)`.
pub fn product(p: &Polytope, q: &Polytope) -> Polytope {
    let mut pts = Vec::with_capacity(p.num_vertices() * q.num_vertices());
    for u in p.vertices() {
        for v in q.vertices() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            pts.push(w);
        }
    }
    let out = Polytope::from_vertices(&pts).expect("product of polytopes");
    match (p.name(), q.name()) {
        (Some(a), Some(b)) => out.with_name(format!("{a} x {b}")),
        _ => out,
    }
}

/// Eulerian number `A(n, j)`: permutations of `n` letters with `j` descents.
pub fn eulerian(n: usize, j: usize) -> Int {
    if n == 0 {
        return if j == 0 { Int::one() } else { Int::zero() };
    }
    let mut row = vec![Int::one()];
    for m in 2..=n {
        let mut next = vec![Int::zero(); m];
        for (i, slot) in next.iter_mut().enumerate() {
            if i < row.len() {
                *slot += Int::from(i + 1) * &row[i];
            }
            if i >= 1 {
                *slot += Int::from(m - i) * &row[i - 1];
            }
        }
        row = next;
    }
    row.get(j).cloned().unwrap_or_default()
}

/// Summands of a projective join, checked to be strongly isomorphic.
#[derive(Clone, Debug)]
pub struct JoinSpec {
    summands: Vec<Polytope>,
    /// `vertex_matching[i][j]` is the vertex of summand `i` matched with
    /// vertex `j` of summand 0.
    vertex_matching: Vec<Vec<usize>>,
}

/// Vertex coordinates of `p` in a lattice chart shared by all polytopes whose
/// affine spans are parallel to that of `reference`.
fn shared_chart(reference: &Polytope, p: &Polytope) -> Vec<Vec<Int>> {
    let base = &p.vertices()[0];
    p.vertices().iter().map(|v| reference.frame().forward_linear(&sub(v, base))).collect()
}

/// For each vertex, the sorted list of facet normals tight at it.
fn normal_signature(p: &Polytope) -> (Vec<Vec<Int>>, Vec<Vec<Vec<Int>>>) {
    let mut normals: Vec<Vec<Int>> = p.facets().iter().map(|h| h.normal.clone()).collect();
    let per_vertex = (0..p.num_vertices())
        .map(|v| {
            let y = &p.local_vertices()[v];
            let mut ns: Vec<Vec<Int>> = p
                .facets()
                .iter()
                .filter(|h| h.slack(y).is_zero())
                .map(|h| h.normal.clone())
                .collect();
            ns.sort();
            ns
        })
        .collect();
    normals.sort();
    (normals, per_vertex)
}

impl JoinSpec {
    pub fn new(summands: Vec<Polytope>) -> Result<JoinSpec> {
        let first = summands.first().ok_or(Error::EmptyInput)?;
        let n = first.ambient_dim();
        let m = first.dim();
        let mut charted = Vec::with_capacity(summands.len());
        for (i, p) in summands.iter().enumerate() {
            if p.ambient_dim() != n {
                return Err(Error::NotStronglyIsomorphic(format!(
                    "summand {i} lives in Z^{}, summand 0 in Z^{n}",
                    p.ambient_dim()
                )));
            }
            if p.dim() != m {
                return Err(Error::NotStronglyIsomorphic(format!(
                    "summand {i} has dimension {}, summand 0 has dimension {m}",
                    p.dim()
                )));
            }
            let base = &p.vertices()[0];
            let origin = first.frame().origin();
            if p.vertices().iter().any(|v| !first.frame().in_span(&add(origin, &sub(v, base)))) {
                return Err(Error::NotStronglyIsomorphic(format!("summand {i} is not parallel to summand 0")));
            }
            let local = shared_chart(first, p);
            charted.push(Polytope::from_vertices(&local)?);
        }
        // `from_vertices` sorts, so recover the map back to each summand's
        // own vertex order.
        let (normals0, sig0) = normal_signature(&charted[0]);
        let mut vertex_matching = Vec::with_capacity(summands.len());
        for (i, c) in charted.iter().enumerate() {
            let (normals, sig) = normal_signature(c);
            if normals != normals0 {
                return Err(Error::NotStronglyIsomorphic(format!(
                    "summand {i} has different facet normals from summand 0"
                )));
            }
            let local = shared_chart(first, &summands[i]);
            let back: BTreeMap<&Vec<Int>, usize> = local.iter().enumerate().map(|(j, y)| (y, j)).collect();
            let by_sig: BTreeMap<&Vec<Vec<Int>>, usize> = sig.iter().enumerate().map(|(v, s)| (s, v)).collect();
            let local0 = shared_chart(first, first);
            let back0: BTreeMap<&Vec<Int>, usize> = local0.iter().enumerate().map(|(j, y)| (y, j)).collect();
            let mut matching = vec![0; first.num_vertices()];
            for (v0, s) in sig0.iter().enumerate() {
                let v = by_sig.get(s).ok_or_else(|| {
                    Error::NotStronglyIsomorphic(format!("summand {i} has no vertex with the cone of vertex {v0}"))
                })?;
                let y0 = &charted[0].vertices()[v0];
                let y = &c.vertices()[*v];
                matching[back0[y0]] = back[y];
            }
            vertex_matching.push(matching);
        }
        Ok(JoinSpec { summands, vertex_matching })
    }

    pub fn summands(&self) -> &[Polytope] {
        &self.summands
    }

    pub fn vertex_matching(&self) -> &[Vec<usize>] {
        &self.vertex_matching
    }

    /// Number of summands minus one.
    pub fn k(&self) -> usize {
        self.summands.len() - 1
    }
}

/// `conv{(v, e_i) : v vertex of P_i}` in `Z^(n + k)` with `e_0 = 0`.
pub fn projective_join(spec: &JoinSpec) -> Polytope {
    let k = spec.k();
    let mut pts = Vec::new();
    for (i, p) in spec.summands.iter().enumerate() {
        for v in p.vertices() {
            let mut w = v.clone();
            w.extend((0..k).map(|j| if i == j + 1 { Int::one() } else { Int::zero() }));
            pts.push(w);
        }
    }
    Polytope::from_vertices(&pts).expect("join of nonempty summands")
}

/// Checks the summands and builds their join.
pub fn join(summands: Vec<Polytope>) -> Result<Polytope> {
    Ok(projective_join(&JoinSpec::new(summands)?))
}
