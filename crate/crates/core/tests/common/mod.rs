#![allow(dead_code)]

use blc::clifford::{CliffElem, Scalar};

pub type Mat = Vec<Vec<Scalar>>;

pub fn zeros(k: usize) -> Mat {
    vec![vec![Scalar::ZERO; k]; k]
}

pub fn identity(k: usize) -> Mat {
    let mut m = zeros(k);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::ONE;
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let k = a.len();
    let mut c = zeros(k);
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                c[i][j] = c[i][j] + a[i][l] * b[l][j];
            }
        }
    }
    c
}

fn add_scaled(acc: &mut Mat, m: &Mat, c: Scalar) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (x, y) in ra.iter_mut().zip(rm) {
            *x = *x + c * *y;
        }
    }
}

/// The `2^k × 2^k` block `J_k`.
pub fn j_block(k: usize) -> Mat {
    if k == 1 {
        let mut m = zeros(2);
        m[0][1] = -Scalar::ONE;
        m[1][0] = Scalar::ONE;
        return m;
    }
    let s = 1 << (k - 2);
    let mut m = zeros(4 * s);
    for t in 0..s {
        m[t][2 * s + t] = -Scalar::ONE;
        m[s + t][3 * s + t] = Scalar::ONE;
        m[2 * s + t][t] = Scalar::ONE;
        m[3 * s + t][s + t] = -Scalar::ONE;
    }
    m
}

/// `â_k` as `2^{n−k}` diagonal copies of `J_k`, size `2^n`.
pub fn hat_matrix(n: usize, k: usize) -> Mat {
    let size = 1 << n;
    let b = j_block(k);
    let bs = b.len();
    let mut m = zeros(size);
    for blk in 0..size / bs {
        for i in 0..bs {
            for j in 0..bs {
                m[blk * bs + i][blk * bs + j] = b[i][j];
            }
        }
    }
    m
}

/// Matrix of an element of `Cliff⁰_{n+1}`, with monomials `â_{s1} â_{s2} ⋯` in increasing order.
pub fn rep(x: &CliffElem) -> Mat {
    let n = x.n();
    let hats: Vec<Mat> = (1..=n).map(|k| hat_matrix(n, k)).collect();
    let mut acc = zeros(1 << n);
    for (mask, c) in x.terms() {
        let mut m = identity(1 << n);
        for k in 0..n {
            if mask >> k & 1 == 1 {
                m = mat_mul(&m, &hats[k]);
            }
        }
        add_scaled(&mut acc, &m, c);
    }
    acc
}
