//! Facet enumeration by the double description method.
//!
//! The facets of a full-dimensional lattice polytope in `Z^d` are the extreme
//! rays of the cone `{(a0, a) : a0 + <a, y> >= 0 for all points y}`. Rays are
//! kept primitive and integral; adjacency is decided combinatorially from
//! zero sets, which is exact for pointed cones.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, gcd_all, Int, IntMatrix, RankTracker};

/// `<normal, y> >= offset` in the chart coordinates of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl Halfspace {
    pub fn slack(&self, y: &[Int]) -> Int {
        dot(&self.normal, y) - &self.offset
    }
}

struct Ray {
    coords: Vec<Int>,
    zeros: FixedBitSet,
}

/// Facets of `conv(points)`; the points must affinely span `Z^d`, `d >= 1`.
pub(crate) fn facets(points: &[Vec<Int>], d: usize) -> Vec<Halfspace> {
    assert!(d >= 1, "facet enumeration needs a positive dimension");
    let rows: Vec<Vec<Int>> = points
        .iter()
        .map(|p| {
            let mut h = Vec::with_capacity(d + 1);
            h.push(Int::from(1));
            h.extend(p.iter().cloned());
            h
        })
        .collect();
    let n = rows.len();
    let dd = d + 1;

    let mut tracker = RankTracker::new();
    let mut init = Vec::with_capacity(dd);
    for (i, r) in rows.iter().enumerate() {
        if tracker.push(r) {
            init.push(i);
            if init.len() == dd {
                break;
            }
        }
    }
    assert_eq!(init.len(), dd, "points do not span the chart");

    let b = IntMatrix::from_rows(&init.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>(), dd);
    let adj = b.adjugate();
    let flip = b.det().is_negative();
    let mut rays: Vec<Ray> = (0..dd)
        .map(|j| {
            let mut c = adj.col_vec(j);
            if flip {
                c.iter_mut().for_each(|x| *x = -&*x);
            }
            let mut zeros = FixedBitSet::with_capacity(n);
            for (k, &i) in init.iter().enumerate() {
                if k != j {
                    zeros.insert(i);
                }
            }
            Ray { coords: make_primitive(c), zeros }
        })
        .collect();

    let mut done = FixedBitSet::with_capacity(n);
    init.iter().for_each(|&i| done.insert(i));
    for i in 0..n {
        if done.contains(i) {
            continue;
        }
        done.insert(i);
        let values: Vec<Int> = rays.iter().map(|r| dot(&r.coords, &rows[i])).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if values[k].is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }

        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 2 < dd {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let coords: Vec<Int> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(rq, rp)| &values[p] * rq - &values[q] * rp)
                    .collect();
                common.insert(i);
                fresh.push(Ray { coords: make_primitive(coords), zeros: common });
            }
        }

        let mut kept = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.insert(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let mut out: Vec<Halfspace> = rays
        .into_iter()
        .map(|r| {
            let normal = r.coords[1..].to_vec();
            let g = gcd_all(&normal);
            assert!(!g.is_zero(), "degenerate facet ray");
            let offset = -&r.coords[0];
            assert!((&offset % &g).is_zero(), "facet offset not integral");
            Halfspace { normal: normal.iter().map(|x| x / &g).collect(), offset: offset / &g }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn make_primitive(v: Vec<Int>) -> Vec<Int> {
    let g = gcd_all(&v);
    if g.is_zero() || g == Int::from(1) {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}
