use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{ext_gcd, IntMatrix};

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u * m = h`, `u` unimodular. Pivots are positive and
/// the entries above each pivot lie in `[0, pivot)`; zero rows sink to the
/// bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut row = 0;
    for col in 0..m.cols() {
        if row == rows {
            break;
        }
        for i in row + 1..rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let a = h[(row, col)].clone();
            let b = h[(i, col)].clone();
            let (g, s, t) = ext_gcd(&a, &b);
            let (p, q) = (-(&b / &g), &a / &g);
            h.combine_rows(row, i, &s, &t, &p, &q);
            u.combine_rows(row, i, &s, &t, &p, &q);
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let pivot = h[(row, col)].clone();
        for i in 0..row {
            let q = h[(i, col)].div_floor(&pivot);
            if !q.is_zero() {
                let f = -q;
                h.add_row_multiple(i, row, &f);
                u.add_row_multiple(i, row, &f);
            }
        }
        row += 1;
    }
    (h, u)
}

/// Shape predicate for the convention produced by [`hermite_normal_form`].
pub fn is_hermite_normal_form(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
        match pivot {
            None => seen_zero_row = true,
            Some(p) => {
                if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) {
                    return false;
                }
                let pv = &h[(i, p)];
                if !pv.is_positive() {
                    return false;
                }
                if (0..i).any(|k| h[(k, p)].is_negative() || &h[(k, p)] >= pv) {
                    return false;
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}
