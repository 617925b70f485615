//! Linear algebra over F_p for the class-sum eigenvector search.

use crate::group::{ConjugacyClassSet, FiniteGroup};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = mulmod(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : A x = 0}` for a square matrix `a`.
pub(crate) fn nullspace(a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let (rows, pivots) = rref(a, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Class multiplication matrix `M[j][l] = #{x ∈ C_i : x⁻¹ g_l ∈ C_j}`.
fn class_matrix(group: &FiniteGroup, classes: &ConjugacyClassSet, i: usize, p: u64) -> Vec<Vec<u64>> {
    let k = classes.len();
    let mut m = vec![vec![0u64; k]; k];
    for &x in classes.class(i) {
        let xi = group.inv(x);
        for (l, &gl) in classes.representatives().iter().enumerate() {
            let j = classes
                .class_of(group.mul(xi, gl))
                .expect("subgroup is closed");
            m[j][l] += 1;
        }
    }
    for row in &mut m {
        for v in row.iter_mut() {
            *v %= p;
        }
    }
    m
}

struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Common eigenvectors (as column vectors over classes) of all class
/// multiplication matrices, refined class by class in class order.
///
/// Returns `None` when the matrices fail to split into one-dimensional
/// eigenspaces over F_p.
pub(crate) fn simultaneous_eigenvectors(
    group: &FiniteGroup,
    classes: &ConjugacyClassSet,
    p: u64,
) -> Option<Vec<Vec<u64>>> {
    let k = classes.len();
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| (i == j) as u64).collect())
        .collect();
    let mut spaces = vec![Space {
        basis: identity,
        pivots: (0..k).collect(),
    }];

    for i in 1..k {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let m = class_matrix(group, classes, i, p);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            let r = space.basis.len();
            if r == 1 {
                next.push(space);
                continue;
            }
            // Restriction of M to the invariant subspace, in its own basis.
            let images: Vec<Vec<u64>> = space
                .basis
                .iter()
                .map(|b| {
                    (0..k)
                        .map(|row| {
                            m[row]
                                .iter()
                                .zip(b)
                                .fold(0u64, |acc, (&a, &x)| (acc + mulmod(a, x, p)) % p)
                        })
                        .collect()
                })
                .collect();
            let restricted: Vec<Vec<u64>> = (0..r)
                .map(|s2| (0..r).map(|s| images[s][space.pivots[s2]]).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(a, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(b, &v)| if a == b { (v + p - lambda) % p } else { v })
                            .collect()
                    })
                    .collect();
                let null = nullspace(shifted, p);
                if null.is_empty() {
                    continue;
                }
                found += null.len();
                let vectors: Vec<Vec<u64>> = null
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u64; k];
                        for (coef, b) in c.iter().zip(&space.basis) {
                            if *coef == 0 {
                                continue;
                            }
                            for (slot, &x) in v.iter_mut().zip(b) {
                                *slot = (*slot + mulmod(*coef, x, p)) % p;
                            }
                        }
                        v
                    })
                    .collect();
                let (basis, pivots) = rref(vectors, p);
                next.push(Space { basis, pivots });
                if found == r {
                    break;
                }
            }
            if found != r {
                return None;
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.basis.len() != 1) {
        return None;
    }
    Some(spaces.into_iter().map(|mut s| s.basis.remove(0)).collect())
}
