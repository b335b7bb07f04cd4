use num_traits::{One, Signed, Zero};

use super::{ext_gcd, Int, IntMatrix};

/// Smith normal form: returns `(u, d, v)` with `u * m * v = d`, `d` diagonal
/// with nonnegative entries `d_1 | d_2 | ...`, and `u`, `v` unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(i, t)].clone();
                let (s, x, p, q) = elimination(&a, &b);
                d.combine_rows(t, i, &s, &x, &p, &q);
                u.combine_rows(t, i, &s, &x, &p, &q);
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(t, j)].clone();
                let (s, x, p, q) = elimination(&a, &b);
                d.combine_cols(t, j, &s, &x, &p, &q);
                v.combine_cols(t, j, &s, &x, &p, &q);
                dirty = true;
            }
            if dirty && (t + 1..rows).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and redo.
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = num_traits::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// Coefficients `(s, x, p, q)` of a unimodular 2x2 step sending `(a, b)` to
/// `(gcd, 0)`. Plain subtraction when `a | b`, so a pivot that already divides
/// its row never moves and the elimination cannot cycle.
fn elimination(a: &Int, b: &Int) -> (Int, Int, Int, Int) {
    if (b % a).is_zero() {
        return (Int::one(), Int::zero(), -(b / a), Int::one());
    }
    let (g, s, x) = ext_gcd(a, b);
    (s, x, -(b / &g), a / &g)
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
