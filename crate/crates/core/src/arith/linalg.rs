//! Linear algebra over Q(ζ_L): row reduction, rank and solving.

use super::CycElem;

/// Row-reduce `rows` in place (Gauss–Jordan with pivot inversion).
/// Returns the pivot column of each nonzero row, in order.
pub fn row_reduce(rows: &mut [Vec<CycElem>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the matrix given by `rows`.
pub fn rank(rows: &[Vec<CycElem>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solve A x = b where `a` is given row-wise. Free variables are set to 0.
/// Returns `None` if the system is inconsistent.
pub fn solve(a: &[Vec<CycElem>], b: &[CycElem]) -> Option<Vec<CycElem>> {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<CycElem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let level = b.first().map_or(1, CycElem::level);
    let mut x = vec![CycElem::zero(level); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}
