use num_traits::{One, Zero};

use super::{gcd_all, hermite_normal_form, smith_normal_form, sub, Int, IntMatrix, Rat};
use crate::error::{Error, Result};

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Index of the lattice generated by `gens` inside `span(gens) ∩ Z^n`.
///
/// This is the number of lattice points in the half-open parallelotope
/// spanned by the generators. The empty family has index 1.
pub fn lattice_index(gens: &[Vec<Int>]) -> Result<Int> {
    let Some(first) = gens.first() else { return Ok(Int::one()) };
    let m = IntMatrix::from_rows(gens, first.len());
    let (_, d, _) = smith_normal_form(&m);
    if gens.len() > d.cols() {
        return Err(Error::DependentGenerators);
    }
    let mut index = Int::one();
    for i in 0..gens.len() {
        if d[(i, i)].is_zero() {
            return Err(Error::DependentGenerators);
        }
        index *= &d[(i, i)];
    }
    Ok(index)
}

/// A lattice-preserving affine chart of an affine subspace.
///
/// `forward` sends `(affine span) ∩ Z^n` bijectively onto `Z^d`, and
/// `backward` inverts it. The chart is anchored at the first input point and
/// uses the Hermite basis of the saturated span lattice, so when that basis
/// has unit pivots the chart is just a coordinate projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineNormalization {
    origin: Vec<Int>,
    basis: IntMatrix,
    forward: IntMatrix,
    complement: IntMatrix,
}

/// Builds the affine chart of the lattice points' affine span.
pub fn affine_normalize(points: &[Vec<Int>]) -> Result<AffineNormalization> {
    let origin = points.first().ok_or(Error::EmptyInput)?.clone();
    let n = origin.len();
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
    }
    let diffs: Vec<Vec<Int>> = points[1..]
        .iter()
        .map(|p| sub(p, &origin))
        .filter(|d| d.iter().any(|x| !x.is_zero()))
        .collect();
    if diffs.is_empty() {
        return Ok(AffineNormalization {
            origin,
            basis: IntMatrix::zeros(0, n),
            forward: IntMatrix::zeros(n, 0),
            complement: IntMatrix::identity(n),
        });
    }
    let dm = IntMatrix::from_rows(&diffs, n);
    let (_, s, v) = smith_normal_form(&dm);
    let d = (0..s.rows().min(s.cols())).take_while(|&i| !s[(i, i)].is_zero()).count();
    let w = v.unimodular_inverse().expect("smith transform is unimodular");
    let saturated = IntMatrix::from_rows(&w.to_rows()[..d], n);
    let (basis, t) = hermite_normal_form(&saturated);
    let t_inv = t.unimodular_inverse().expect("hermite transform is unimodular");
    let top: Vec<usize> = (0..d).collect();
    let rest: Vec<usize> = (d..n).collect();
    let forward = &v.select_cols(&top) * &t_inv;
    Ok(AffineNormalization { origin, basis, forward, complement: v.select_cols(&rest) })
}

impl AffineNormalization {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self) -> &[Int] {
        &self.origin
    }

    /// Rows form a Z-basis of the span lattice, in Hermite normal form.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Integer linear part of the forward map (`n × d`).
    pub fn forward_matrix(&self) -> &IntMatrix {
        &self.forward
    }

    pub fn forward(&self, x: &[Int]) -> Vec<Int> {
        self.forward.vec_mul(&sub(x, &self.origin))
    }

    pub fn forward_rat(&self, x: &[Rat]) -> Vec<Rat> {
        let shifted: Vec<Rat> =
            x.iter().zip(&self.origin).map(|(a, o)| a - Rat::from(o.clone())).collect();
        rat_vec_mul(&shifted, &self.forward)
    }

    /// Linear part only: coordinates of a difference vector.
    pub fn forward_linear(&self, v: &[Int]) -> Vec<Int> {
        self.forward.vec_mul(v)
    }

    pub fn backward(&self, c: &[Int]) -> Vec<Int> {
        let lin = self.basis.vec_mul(c);
        lin.iter().zip(&self.origin).map(|(a, o)| a + o).collect()
    }

    pub fn backward_rat(&self, c: &[Rat]) -> Vec<Rat> {
        let lin = rat_vec_mul(c, &self.basis);
        lin.into_iter().zip(&self.origin).map(|(a, o)| a + Rat::from(o.clone())).collect()
    }

    pub fn in_span(&self, x: &[Int]) -> bool {
        self.complement.vec_mul(&sub(x, &self.origin)).iter().all(Zero::is_zero)
    }

    pub fn in_span_rat(&self, x: &[Rat]) -> bool {
        let shifted: Vec<Rat> =
            x.iter().zip(&self.origin).map(|(a, o)| a - Rat::from(o.clone())).collect();
        rat_vec_mul(&shifted, &self.complement).iter().all(Zero::is_zero)
    }
}

fn rat_vec_mul(v: &[Rat], m: &IntMatrix) -> Vec<Rat> {
    (0..m.cols())
        .map(|j| v.iter().enumerate().map(|(i, x)| x * Rat::from(m[(i, j)].clone())).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, int_vec};

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&int_vec(&[2, 4, 6])).unwrap(), int_vec(&[1, 2, 3]));
        assert_eq!(primitive(&int_vec(&[0, 5])).unwrap(), int_vec(&[0, 1]));
        assert_eq!(primitive(&int_vec(&[-3, 0, -6])).unwrap(), int_vec(&[-1, 0, -2]));
        assert_eq!(primitive(&int_vec(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn lattice_indices() {
        assert_eq!(lattice_index(&[int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap(), int(1));
        assert_eq!(lattice_index(&[int_vec(&[2, 0])]).unwrap(), int(2));
        assert_eq!(lattice_index(&[int_vec(&[1, 1]), int_vec(&[1, -1])]).unwrap(), int(2));
        assert_eq!(lattice_index(&[]).unwrap(), int(1));
        assert_eq!(
            lattice_index(&[int_vec(&[1, 2]), int_vec(&[2, 4])]),
            Err(Error::DependentGenerators)
        );
        assert_eq!(
            lattice_index(&[int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])]),
            Err(Error::DependentGenerators)
        );
    }

    #[test]
    fn point_chart() {
        let a = affine_normalize(&[int_vec(&[3, -1])]).unwrap();
        assert_eq!(a.dim(), 0);
        assert!(a.forward(&int_vec(&[3, -1])).is_empty());
        assert!(a.in_span(&int_vec(&[3, -1])));
        assert!(!a.in_span(&int_vec(&[3, 0])));
    }

    #[test]
    fn unimodular_triangle_chart() {
        let pts = [int_vec(&[0, 0, 0]), int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0])];
        let a = affine_normalize(&pts).unwrap();
        assert_eq!(a.dim(), 2);
        let imgs: Vec<_> = pts.iter().map(|p| a.forward(p)).collect();
        assert_eq!(imgs, vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 1])]);
    }

    #[test]
    fn diagonal_segment_is_saturated() {
        let pts = [int_vec(&[0, 0]), int_vec(&[2, 2])];
        let a = affine_normalize(&pts).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.forward(&pts[0]), int_vec(&[0]));
        assert_eq!(a.forward(&pts[1]).iter().map(|x| x.magnitude().clone()).collect::<Vec<_>>(), vec![2u32.into()]);
        // (1,1) lies on the segment and must hit an integer point between.
        assert_eq!(a.forward(&int_vec(&[1, 1])).len(), 1);
        for q in [[0, 0], [1, 1], [2, 2], [-1, -1]] {
            let q = int_vec(&q);
            assert!(a.in_span(&q));
            assert_eq!(a.backward(&a.forward(&q)), q);
        }
        assert!(!a.in_span(&int_vec(&[1, 0])));
    }

    #[test]
    fn hypersimplex_plane_is_a_projection() {
        let pts = [int_vec(&[1, 1, 0, 0]), int_vec(&[1, 0, 1, 0]), int_vec(&[0, 1, 1, 0]), int_vec(&[0, 0, 1, 1])];
        let a = affine_normalize(&pts).unwrap();
        assert_eq!(a.dim(), 3);
        // Hermite basis of {sum = 0} has unit pivots.
        for i in 0..3 {
            let piv = (0..4).find(|&j| !a.basis()[(i, j)].is_zero()).unwrap();
            assert_eq!(a.basis()[(i, piv)], int(1));
        }
    }
}
