//! Brute-force oracles and test corpora.
//!
//! Nothing here calls into the library's hull, lattice, volume or counting
//! code: facets come from hyperplanes through vertex subsets, faces from
//! closing facet sets under intersection, counts from box scans, volumes from
//! interpolated counts, and multiplicities from half-open parallelotopes.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use polydefect::constructions::{cube, hypersimplex, join, product, simplex};
use polydefect::{AffineMap, Polytope};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Rat = BigRational;

pub fn rat(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("small coordinates")).collect()
}

pub fn poly(points: &[Vec<i64>]) -> Polytope {
    let pts: Vec<Vec<BigInt>> = points.iter().map(|p| p.iter().map(|&x| BigInt::from(x)).collect()).collect();
    Polytope::from_vertices(&pts).expect("valid points")
}

// ---------------------------------------------------------------------------
// Rational elimination

/// Row echelon form in place; returns pivot columns.
fn echelon(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    echelon(&mut m).len()
}

/// Basis of `{x : rows x = 0}`.
fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector.
fn integral(v: &[Rat]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.iter().map(|x| i64::try_from(x / &g).unwrap()).collect()
}

fn affine_rank(points: &[&Vec<i64>]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<i64>> = rest.iter().map(|p| p.iter().zip(p0.iter()).map(|(a, b)| a - b).collect()).collect();
            if diffs.is_empty() {
                0
            } else {
                rank_i64(&diffs)
            }
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}

// ---------------------------------------------------------------------------
// Facets and faces by exhaustion

/// H-description and face lattice of `conv(points)` found by brute force.
pub struct Oracle {
    pub points: Vec<Vec<i64>>,
    pub dim: usize,
    /// `a . x = b` cutting out the affine span.
    pub equations: Vec<(Vec<i64>, i64)>,
    /// `a . x >= b`, one per facet, with the tight point set as a bitmask.
    pub facets: Vec<(Vec<i64>, i64, u64)>,
    /// Face point sets (bitmask over `points`) with their dimension.
    pub faces: BTreeMap<u64, usize>,
}

impl Oracle {
    pub fn new(points: &[Vec<i64>]) -> Oracle {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        assert!(pts.len() <= 64, "oracle handles at most 64 points");
        let n = pts[0].len();
        let p0 = pts[0].clone();
        let diffs: Vec<Vec<Rat>> =
            pts.iter().map(|p| p.iter().zip(&p0).map(|(a, b)| rat(a - b)).collect()).collect();
        let mut ech = diffs.clone();
        let pivots = echelon(&mut ech);
        let dim = pivots.len();
        let equations: Vec<(Vec<i64>, i64)> = nullspace(&diffs, n)
            .iter()
            .map(|c| {
                let a = integral(c);
                let b = dot(&a, &p0);
                (a, b)
            })
            .collect();

        // The pivot coordinates of the difference matrix project the affine
        // span injectively onto Q^dim.
        let proj: Vec<Vec<i64>> = pts.iter().map(|p| pivots.iter().map(|&c| p[c]).collect()).collect();
        let full = if pts.len() == 64 { u64::MAX } else { (1u64 << pts.len()) - 1 };
        let mut facets: Vec<(Vec<i64>, i64, u64)> = Vec::new();
        let mut seen = BTreeSet::new();
        if dim >= 1 {
            subsets(pts.len(), dim, 0, &mut Vec::new(), &mut |s| {
                let base = &proj[s[0]];
                let rows: Vec<Vec<Rat>> = s[1..]
                    .iter()
                    .map(|&i| proj[i].iter().zip(base).map(|(a, b)| rat(a - b)).collect())
                    .collect();
                let ns = nullspace(&rows, dim);
                if ns.len() != 1 {
                    return;
                }
                let mut a = integral(&ns[0]);
                let vals: Vec<i64> = proj.iter().map(|q| dot(&a, q) - dot(&a, base)).collect();
                if vals.iter().any(|&v| v > 0) && vals.iter().any(|&v| v < 0) {
                    return;
                }
                if vals.iter().all(|&v| v <= 0) {
                    a.iter_mut().for_each(|x| *x = -*x);
                }
                let mask = vals.iter().enumerate().filter(|(_, &v)| v == 0).fold(0u64, |m, (i, _)| m | 1 << i);
                if mask == full || !seen.insert(mask) {
                    return;
                }
                let mut amb = vec![0i64; n];
                for (k, &c) in pivots.iter().enumerate() {
                    amb[c] = a[k];
                }
                let b = dot(&amb, &pts[s[0]]);
                facets.push((amb, b, mask));
            });
        }

        let mut faces: BTreeSet<u64> = facets.iter().map(|f| f.2).collect();
        faces.insert(full);
        loop {
            let current: Vec<u64> = faces.iter().copied().collect();
            let mut grew = false;
            for (i, &x) in current.iter().enumerate() {
                for &y in &current[i + 1..] {
                    let z = x & y;
                    if z != 0 && faces.insert(z) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let faces = faces
            .into_iter()
            .map(|m| {
                let sel: Vec<&Vec<i64>> = (0..pts.len()).filter(|i| m >> i & 1 == 1).map(|i| &pts[i]).collect();
                (m, affine_rank(&sel))
            })
            .collect();
        Oracle { points: pts, dim, equations, facets, faces }
    }

    /// Indices of extreme points (the zero-dimensional faces).
    pub fn vertices(&self) -> Vec<usize> {
        self.faces.iter().filter(|(_, &d)| d == 0).map(|(&m, _)| m.trailing_zeros() as usize).collect()
    }

    /// Face lattice as sets of vertex coordinates with dimensions.
    pub fn face_set(&self) -> BTreeSet<(Vec<Vec<i64>>, usize)> {
        let verts = self.vertices();
        self.faces
            .iter()
            .map(|(&m, &d)| {
                let vs: Vec<Vec<i64>> =
                    verts.iter().filter(|&&v| m >> v & 1 == 1).map(|&v| self.points[v].clone()).collect();
                (vs, d)
            })
            .collect()
    }

    /// Lattice points of `n F` for the face with point mask `face`.
    pub fn count(&self, face: u64, n: i64) -> u64 {
        let members: Vec<&Vec<i64>> = (0..self.points.len()).filter(|i| face >> i & 1 == 1).map(|i| &self.points[i]).collect();
        let dims = self.points[0].len();
        let lo: Vec<i64> = (0..dims).map(|j| members.iter().map(|p| p[j]).min().unwrap() * n).collect();
        let hi: Vec<i64> = (0..dims).map(|j| members.iter().map(|p| p[j]).max().unwrap() * n).collect();
        let tight: Vec<&(Vec<i64>, i64, u64)> = self.facets.iter().filter(|f| f.2 & face == face).collect();
        let mut x = lo.clone();
        let mut total = 0;
        if dims == 0 {
            return 1;
        }
        loop {
            let inside = self.equations.iter().all(|(a, b)| dot(a, &x) == n * b)
                && self.facets.iter().all(|(a, b, _)| dot(a, &x) >= n * b)
                && tight.iter().all(|(a, b, _)| dot(a, &x) == n * b);
            if inside {
                total += 1;
            }
            let mut j = 0;
            loop {
                if j == dims {
                    return total;
                }
                if x[j] < hi[j] {
                    x[j] += 1;
                    break;
                }
                x[j] = lo[j];
                j += 1;
            }
        }
    }

    /// `dim! * Vol` from the leading coefficient of interpolated counts.
    pub fn nvol(&self, face: u64) -> BigInt {
        let k = self.faces[&face];
        let ys: Vec<Rat> = (0..=k as i64).map(|n| rat(self.count(face, n) as i64)).collect();
        // k-th forward difference of the Ehrhart values equals k! times the
        // leading coefficient.
        let mut d = ys;
        for _ in 0..k {
            d = d.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        assert!(d[0].is_integer());
        d[0].to_integer()
    }

    /// Primitive inner facet normals (ambient) of the facets through `face`,
    /// for full-dimensional polytopes.
    pub fn normals_at(&self, face: u64) -> Vec<Vec<i64>> {
        assert!(self.equations.is_empty(), "mult oracle needs a full-dimensional polytope");
        self.facets.iter().filter(|f| f.2 & face == face).map(|f| f.0.clone()).collect()
    }
}

/// Lattice points in `{sum a_i u_i : 0 <= a_i < 1}` within the span of the
/// `u_i`.
pub fn parallelotope_count(us: &[Vec<i64>]) -> u64 {
    if us.is_empty() {
        return 1;
    }
    let n = us[0].len();
    let lo: Vec<i64> = (0..n).map(|j| us.iter().map(|u| u[j].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..n).map(|j| us.iter().map(|u| u[j].max(0)).sum()).collect();
    let k = us.len();
    let mut x = lo.clone();
    let mut total = 0;
    loop {
        // Solve sum a_i u_i = x: augmented system over the columns u_i.
        let mut rows: Vec<Vec<Rat>> =
            (0..n).map(|j| us.iter().map(|u| rat(u[j])).chain(std::iter::once(rat(x[j]))).collect()).collect();
        let piv = echelon(&mut rows);
        if !piv.contains(&k) {
            let coeffs: Vec<Rat> = (0..k).map(|i| rows[i][k].clone()).collect();
            if coeffs.iter().all(|a| !a.is_negative() && *a < rat(1)) {
                total += 1;
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                return total;
            }
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j];
            j += 1;
        }
    }
}

/// Eulerian number by enumerating permutations.
pub fn eulerian_by_enumeration(n: usize, j: usize) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    loop {
        if perm.windows(2).filter(|w| w[0] > w[1]).count() == j {
            count += 1;
        }
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { return count };
        let k = (i..n).rev().find(|&k| perm[k] > perm[i - 1]).unwrap();
        perm.swap(i - 1, k);
        perm[i..].reverse();
    }
}

/// Checks the library against every oracle for one polytope. Returns the
/// first disagreement.
pub fn check_against_oracles(p: &Polytope) -> Result<(), String> {
    let pts: Vec<Vec<i64>> = p.vertices().iter().map(|v| to_i64(v)).collect();
    let o = Oracle::new(&pts);
    if o.dim != p.dim() {
        return Err(format!("dim {} vs oracle {}", p.dim(), o.dim));
    }
    if o.vertices().len() != p.num_vertices() {
        return Err("vertex count differs".into());
    }
    let lib: BTreeSet<(Vec<Vec<i64>>, usize)> = p
        .face_lattice()
        .iter()
        .map(|f| (f.vertex_ids.iter().map(|&v| pts[v].clone()).collect(), f.dim))
        .collect();
    if lib != o.face_set() {
        return Err(format!("face lattice differs: {} faces vs oracle {}", lib.len(), o.faces.len()));
    }
    // Oracle points are exactly the vertices, sorted like the library's.
    let mask_of = |ids: &[usize]| ids.iter().fold(0u64, |m, &v| m | 1 << v);
    let full_dim = o.equations.is_empty();
    let simple = p.is_simple();
    for f in p.face_lattice() {
        let m = mask_of(&f.vertex_ids);
        let nv = polydefect::volume::normalized_volume(p, f);
        if nv != o.nvol(m) {
            return Err(format!("nvol of face {:?}: {nv} vs oracle {}", f.vertex_ids, o.nvol(m)));
        }
        for n in 1..=2u64 {
            let lib = polydefect::volume::lattice_points(p, f, n);
            let ora = o.count(m, n as i64);
            if lib != BigInt::from(ora) {
                return Err(format!("count of {n}F for {:?}: {lib} vs oracle {ora}", f.vertex_ids));
            }
        }
        if simple && full_dim {
            let lib = polydefect::invariants::mult(p, f).map_err(|e| e.to_string())?;
            let ora = parallelotope_count(&o.normals_at(m));
            if lib != BigInt::from(ora) {
                return Err(format!("mult of {:?}: {lib} vs oracle {ora}", f.vertex_ids));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Corpora

fn random_polygon(rng: &mut StdRng, box_size: i64) -> Polytope {
    loop {
        let k = rng.gen_range(3..=6);
        let pts: Vec<Vec<i64>> =
            (0..k).map(|_| vec![rng.gen_range(0..=box_size), rng.gen_range(0..=box_size)]).collect();
        if rank_i64(&pts.iter().map(|p| vec![p[0] - pts[0][0], p[1] - pts[0][1]]).collect::<Vec<_>>()) == 2 {
            return poly(&pts);
        }
    }
}

fn random_simplex(rng: &mut StdRng, d: usize, box_size: i64) -> Polytope {
    loop {
        let pts: Vec<Vec<i64>> = (0..=d).map(|_| (0..d).map(|_| rng.gen_range(0..=box_size)).collect()).collect();
        let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
        if rank_i64(&diffs) == d {
            return poly(&pts);
        }
    }
}

/// `[0,a] x [0,b] x [0,c]` with the corner at the origin cut through
/// `(s1,0,0), (0,s2,0), (0,0,s3)`.
fn truncated_box(a: i64, b: i64, c: i64, s: [i64; 3]) -> Polytope {
    let mut pts = Vec::new();
    for x in [0, a] {
        for y in [0, b] {
            for z in [0, c] {
                if (x, y, z) != (0, 0, 0) {
                    pts.push(vec![x, y, z]);
                }
            }
        }
    }
    pts.push(vec![s[0], 0, 0]);
    pts.push(vec![0, s[1], 0]);
    pts.push(vec![0, 0, s[2]]);
    poly(&pts)
}

/// At least 50 simple, full-dimensional lattice polytopes of dimensions 2-4,
/// Delzant and singular.
pub fn simple_corpus(seed: u64) -> Vec<Polytope> {
    let mut rng = StdRng::seed_from_u64(seed);
    let seg = |a: i64| poly(&[vec![0], vec![a]]);
    let mut out: Vec<Polytope> = vec![
        simplex(2),
        simplex(3),
        simplex(4),
        cube(2, 1).unwrap(),
        cube(3, 1).unwrap(),
        cube(4, 1).unwrap(),
        cube(2, 3).unwrap(),
        cube(3, 2).unwrap(),
        product(&simplex(2), &seg(1)),
        product(&simplex(2), &seg(3)),
        product(&simplex(2), &simplex(2)),
        product(&simplex(3), &seg(1)),
        poly(&[vec![0, 0], vec![1, 0], vec![1, 2]]),
        poly(&[vec![0, 0], vec![2, 0], vec![0, 1]]),
        poly(&[vec![0, 0], vec![2, 0], vec![0, 2]]),
        poly(&[vec![0, 0], vec![3, 0], vec![0, 3], vec![1, 3]]),
        poly(&[vec![0, 0], vec![4, 0], vec![1, 1], vec![0, 1]]),
        join(vec![seg(2), seg(2), seg(3)]).unwrap(),
        truncated_box(2, 2, 2, [1, 1, 1]),
        truncated_box(3, 2, 2, [2, 1, 1]),
    ]
    .into_iter()
    .map(|p| p.with_name("fixed"))
    .collect();
    for _ in 0..14 {
        out.push(random_polygon(&mut rng, 4).with_name("random polygon"));
    }
    for _ in 0..6 {
        let base = random_polygon(&mut rng, 3);
        out.push(product(&base, &seg(rng.gen_range(1..=2))).with_name("random prism"));
    }
    for _ in 0..5 {
        out.push(random_simplex(&mut rng, 3, 2).with_name("random tetrahedron"));
    }
    for _ in 0..4 {
        let s = [rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2)];
        out.push(truncated_box(3, 3, 3, s).with_name("truncated box"));
    }
    for _ in 0..3 {
        let a = random_polygon(&mut rng, 2);
        let b = random_polygon(&mut rng, 1);
        out.push(product(&a, &b).with_name("random polygon product"));
    }
    for _ in 0..2 {
        out.push(random_simplex(&mut rng, 4, 1).with_name("random 4-simplex"));
    }
    out.retain(|p| p.is_simple());
    out
}

/// Hypersimplices with `n <= 6` and random 0/1-polytopes of dimension <= 4.
pub fn mixed_corpus(seed: u64) -> Vec<Polytope> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 2..=6 {
        for k in 1..n {
            out.push(hypersimplex(k, n).unwrap());
        }
    }
    for d in 2..=4usize {
        let mut made = 0;
        while made < 6 {
            let pts: Vec<Vec<i64>> = (0..1u32 << d)
                .filter(|_| rng.gen_bool(0.5))
                .map(|m| (0..d).map(|i| i64::from(m >> i & 1)).collect())
                .collect();
            if pts.len() <= d {
                continue;
            }
            let p = poly(&pts);
            if p.dim() == d {
                out.push(p.with_name(format!("random 0/1 polytope in dim {d}")));
                made += 1;
            }
        }
    }
    out
}

/// A random unimodular matrix (product of elementary operations) and shift.
pub fn random_unimodular(rng: &mut StdRng, n: usize) -> AffineMap {
    let mut m = polydefect::linalg::IntMatrix::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            let f = BigInt::from(rng.gen_range(-2..=2));
            m.add_row_multiple(i, j, &f);
        }
        if rng.gen_bool(0.2) {
            m.negate_row(i);
        }
    }
    let t = (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
    AffineMap { linear: m, translation: t }
}
