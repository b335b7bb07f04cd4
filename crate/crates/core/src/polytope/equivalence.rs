//! Unimodular equivalence of lattice polytopes.
//!
//! Any lattice isomorphism `P -> Q` sends a vertex `v0` and `dim` of its
//! edge-neighbours with independent directions to a vertex of `Q` and some of
//! its neighbours. We fix such a frame in `P` and backtrack over frames in
//! `Q`, solving for the integer map and checking it carries vertices onto
//! vertices.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{AffineMap, Polytope};
use crate::linalg::{sub, Int, IntMatrix, RankTracker};

/// A unimodular affine map between the lattice charts of `p` and `q`
/// (`Z^dim -> Z^dim`) carrying `p` onto `q`, if one exists.
pub fn lattice_equivalence(p: &Polytope, q: &Polytope) -> Option<AffineMap> {
    if p.dim() != q.dim() || p.num_vertices() != q.num_vertices() || p.f_vector() != q.f_vector() {
        return None;
    }
    let r = p.dim();
    if r == 0 {
        return Some(AffineMap::identity(0));
    }
    let pl = p.local_vertices();
    let ql = q.local_vertices();
    let pdeg: Vec<usize> = (0..p.num_vertices()).map(|v| p.neighbors(v).len()).collect();
    let qdeg: Vec<usize> = (0..q.num_vertices()).map(|v| q.neighbors(v).len()).collect();
    {
        let mut a = pdeg.clone();
        let mut b = qdeg.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }

    let v0 = (0..pl.len()).min_by_key(|&v| pdeg[v]).expect("nonempty");
    let mut tracker = RankTracker::new();
    let mut frame = Vec::with_capacity(r);
    for w in p.neighbors(v0) {
        let d = sub(&pl[w], &pl[v0]);
        if tracker.push(&d) {
            frame.push(d);
        }
    }
    debug_assert_eq!(frame.len(), r);
    let dmat = IntMatrix::from_rows(&frame, r).transpose();
    let det_d = dmat.det();
    let adj_d = dmat.adjugate();
    let targets: HashSet<&Vec<Int>> = ql.iter().collect();

    for u0 in 0..ql.len() {
        if qdeg[u0] != pdeg[v0] {
            continue;
        }
        let cand: Vec<Vec<Int>> = q.neighbors(u0).iter().map(|&w| sub(&ql[w], &ql[u0])).collect();
        let mut chosen = Vec::with_capacity(r);
        let mut used = vec![false; cand.len()];
        let found = search(&cand, &mut used, &mut chosen, r, &mut |cols: &[usize]| {
            let umat =
                IntMatrix::from_rows(&cols.iter().map(|&i| cand[i].clone()).collect::<Vec<_>>(), r)
                    .transpose();
            if umat.det().abs() != det_d.abs() {
                return None;
            }
            let num = &umat * &adj_d;
            let mut m = IntMatrix::zeros(r, r);
            for i in 0..r {
                for j in 0..r {
                    let (qt, rem) = num[(i, j)].div_rem(&det_d);
                    if !rem.is_zero() {
                        return None;
                    }
                    m[(i, j)] = qt;
                }
            }
            let shift = sub(&ql[u0], &m.mul_vec(&pl[v0]));
            let map = AffineMap { linear: m, translation: shift };
            pl.iter().all(|y| targets.contains(&map.apply(y))).then_some(map)
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn search<F>(
    cand: &[Vec<Int>],
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    r: usize,
    test: &mut F,
) -> Option<AffineMap>
where
    F: FnMut(&[usize]) -> Option<AffineMap>,
{
    if chosen.len() == r {
        return test(chosen);
    }
    for i in 0..cand.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        chosen.push(i);
        let hit = search(cand, used, chosen, r, test);
        chosen.pop();
        used[i] = false;
        if hit.is_some() {
            return hit;
        }
    }
    None
}
