//! Dense univariate polynomials with rational coefficients.

use num_traits::{One, Zero};

use crate::linalg::{Int, Rat};

/// Coefficients in ascending degree order.
pub type RatPoly = Vec<Rat>;

/// The unique polynomial of degree `< points.len()` through the given
/// `(x, y)` pairs (Newton divided differences, expanded to monomials).
pub fn interpolate(points: &[(Int, Int)]) -> RatPoly {
    let n = points.len();
    let xs: Vec<Rat> = points.iter().map(|(x, _)| Rat::from(x.clone())).collect();
    let mut table: Vec<Rat> = points.iter().map(|(_, y)| Rat::from(y.clone())).collect();
    let mut newton = Vec::with_capacity(n);
    for level in 0..n {
        newton.push(table[level].clone());
        for i in (level + 1..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - level - 1];
            assert!(!den.is_zero(), "interpolation nodes must be distinct");
            table[i] = num / den;
        }
    }
    // Horner-style expansion of sum c_k * prod_{j<k} (x - x_j).
    let mut out: RatPoly = vec![Rat::zero(); n.max(1)];
    for k in (0..n).rev() {
        // out = out * (x - x_k) + c_k
        let mut next = vec![Rat::zero(); n.max(1)];
        for (d, c) in out.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < next.len() {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[k];
        }
        next[0] += &newton[k];
        out = next;
    }
    trim(out)
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

pub fn eval_int(p: &[Rat], x: i64) -> Rat {
    eval(p, &Rat::from(Int::from(x)))
}

/// Degree, with the zero polynomial reported as degree 0.
pub fn degree(p: &[Rat]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Converts to integer coefficients if every coefficient is integral.
pub fn to_integers(p: &[Rat]) -> Option<Vec<Int>> {
    p.iter().map(|c| c.denom().is_one().then(|| c.numer().clone())).collect()
}

fn trim(mut p: RatPoly) -> RatPoly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}
