//! Integer and rational linear algebra for small lattice problems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

fn to_rat(v: &[i64]) -> Vec<Rational> {
    v.iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect()
}

/// Reduced row echelon form over Q; returns pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a set of integer vectors.
pub fn rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rational>> = vectors.iter().map(|v| to_rat(v)).collect();
    rref(&mut m).len()
}

fn rational_nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

fn clear_denominators(v: &[Rational]) -> Vec<i64> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            i64::try_from(y).expect("lattice vector entry overflows i64")
        })
        .collect()
}

/// Integer basis of {x : row·x = 0 for every row}, each vector primitive.
pub fn nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let m: Vec<Vec<Rational>> = rows.iter().map(|v| to_rat(v)).collect();
    rational_nullspace(&m, ncols)
        .iter()
        .map(|v| clear_denominators(v))
        .collect()
}

/// Coordinates of `target` in the span of independent `cols`, if it lies there.
pub fn coordinates(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational>> {
    let k = cols.len();
    let r = target.len();
    let mut m: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational> = cols
                .iter()
                .map(|c| Rational::from_integer(c[i].into()))
                .collect();
            row.push(Rational::from_integer(target[i].into()));
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    assert_eq!(pivots.len(), k, "coordinates need independent vectors");
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Some x with row·x = rhs for every row, if one exists.
pub fn solve_rows(rows: &[Vec<i64>], rhs: &[i64], ncols: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = to_rat(r);
            v.push(Rational::from_integer(b.into()));
            v
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// Inverse of a square integer matrix over Q.
pub fn inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = to_rat(row);
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Smith decomposition U·A·V = D of an r×k integer matrix.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

impl Smith {
    /// The nonzero diagonal entries e_1 | e_2 | ….
    pub fn divisors(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i])
            .filter(|&e| e != 0)
            .collect()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn smith(a: &[Vec<i64>]) -> Smith {
    let r = a.len();
    let k = a.first().map_or(0, Vec::len);
    let mut d = a.to_vec();
    let mut u = identity(r);
    let mut v = identity(k);
    for t in 0..r.min(k) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..k {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, d, v };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..r {
                let q = Integer::div_floor(&d[i][t], &d[t][t]);
                if q != 0 {
                    for j in 0..k {
                        d[i][j] -= q * d[t][j];
                    }
                    for j in 0..r {
                        u[i][j] -= q * u[t][j];
                    }
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..k {
                let q = Integer::div_floor(&d[t][j], &d[t][t]);
                if q != 0 {
                    for i in 0..r {
                        d[i][j] -= q * d[i][t];
                    }
                    for i in 0..k {
                        v[i][j] -= q * v[i][t];
                    }
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..k).any(|j| d[i][j] % d[t][t] != 0));
            match bad {
                Some(i) => {
                    for j in 0..k {
                        d[t][j] += d[i][j];
                    }
                    for j in 0..r {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    Smith { u, d, v }
}

/// Linear constraint a·x ≥ b over Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Ineq {
    a: Vec<Rational>,
    b: Rational,
}

/// Decide whether {x : eq·x = 0 for eq in `eqs`, a·x ≥ b for (a,b) in `ineqs`} is nonempty,
/// by Fourier–Motzkin elimination over Q.
pub fn feasible(dim: usize, eqs: &[Vec<i64>], ineqs: &[(Vec<i64>, i64)]) -> bool {
    // parametrize the equality solution space x = B·y
    let basis = nullspace(eqs, dim);
    let n = basis.len();
    let mut system: Vec<Ineq> = ineqs
        .iter()
        .map(|(a, b)| Ineq {
            a: basis
                .iter()
                .map(|col| Rational::from_integer(dot(a, col).into()))
                .collect(),
            b: Rational::from_integer((*b).into()),
        })
        .collect();
    for var in (0..n).rev() {
        let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
        for q in system {
            if q.a[var].is_positive() {
                pos.push(q);
            } else if q.a[var].is_negative() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for p in &pos {
            for m in &neg {
                let sp = p.a[var].recip();
                let sm = -m.a[var].recip();
                let a: Vec<Rational> =
                    p.a.iter()
                        .zip(&m.a)
                        .map(|(x, y)| x * &sp + y * &sm)
                        .collect();
                let b = &p.b * &sp + &m.b * &sm;
                rest.push(normalize(Ineq { a, b }));
            }
        }
        rest.sort_by(|x, y| x.a.cmp(&y.a).then(x.b.cmp(&y.b)));
        rest.dedup();
        system = rest;
    }
    system.iter().all(|q| !q.b.is_positive())
}

fn normalize(mut q: Ineq) -> Ineq {
    let scale = q.a.iter().find(|x| !x.is_zero()).map(|x| x.abs());
    if let Some(s) = scale {
        for x in q.a.iter_mut() {
            *x = &*x / &s;
        }
        q.b = &q.b / &s;
    }
    q
}
