//! Floating-point side: `Q`/`L` maps, λ-samples, Givens angle peeling along a
//! reduced word and the stratum classifier for explicit matrices.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::ancestry::{eps_from_xi, Ancestry, WordCtx};
use crate::clifford::{Quat, SignedPerm};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Word};

/// Zero tolerance for every rank and angle decision.
pub const TOL: f64 = 1e-9;

/// A unit lower triangular `(n+1)×(n+1)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerTriangular {
    m: DMatrix<f64>,
}

impl LowerTriangular {
    pub fn identity(n: usize) -> Self {
        Self { m: DMatrix::identity(n + 1, n + 1) }
    }

    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Parse("matrix is not square".into()));
        }
        for r in 0..m.nrows() {
            for c in r..m.ncols() {
                let want = if r == c { 1.0 } else { 0.0 };
                if (m[(r, c)] - want).abs() > TOL {
                    return Err(Error::Parse(format!("entry ({}, {}) must be {want}", r + 1, c + 1)));
                }
            }
        }
        Ok(Self { m })
    }

    /// Entries below the diagonal, row by row: `l21, l31, l32, l41, …`.
    pub fn from_entries(n: usize, below: &[f64]) -> Result<Self> {
        if below.len() != n * (n + 1) / 2 {
            return Err(Error::SizeMismatch { expected: n * (n + 1) / 2, found: below.len() });
        }
        let mut m = DMatrix::identity(n + 1, n + 1);
        let mut it = below.iter();
        for r in 1..=n {
            for c in 0..r {
                m[(r, c)] = *it.next().unwrap();
            }
        }
        Ok(Self { m })
    }

    /// Whitespace or comma separated rows.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<f64>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Parse("expected a square matrix".into()));
        }
        Self::new(DMatrix::from_fn(k, k, |r, c| rows[r][c]))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.m.nrows() {
            let row: Vec<String> = (0..self.m.ncols()).map(|c| format!("{}", self.m[(r, c)])).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn n(&self) -> usize {
        self.m.nrows() - 1
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { m: &self.m * &o.m }
    }

    /// `L^E`, with `(λ_i(t))^E = λ_i(E_i t)`.
    pub fn act_e(&self, e: u32) -> Self {
        let d = e_diagonal(self.n(), e);
        Self { m: &d * &self.m * &d }
    }
}

/// `D` with `d_1 = 1` and `d_{i+1} = d_i E_i`.
fn e_diagonal(n: usize, e: u32) -> DMatrix<f64> {
    let mut d = DMatrix::identity(n + 1, n + 1);
    for i in 1..=n {
        d[(i, i)] = d[(i - 1, i - 1)] * if e >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 };
    }
    d
}

/// `λ_i(t) = I + t 𝔩_i`.
pub fn lambda(n: usize, i: usize, t: f64) -> LowerTriangular {
    let mut m = DMatrix::identity(n + 1, n + 1);
    m[(i, i - 1)] = t;
    LowerTriangular { m }
}

/// `α_i(θ)` in `SO_{n+1}`.
pub fn alpha(n: usize, i: usize, theta: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(n + 1, n + 1);
    let (s, c) = theta.sin_cos();
    m[(i - 1, i - 1)] = c;
    m[(i - 1, i)] = -s;
    m[(i, i - 1)] = s;
    m[(i, i)] = c;
    m
}

/// `α_i(θ)` applied on the right, in place (columns `i`, `i+1`).
fn right_alpha(m: &mut DMatrix<f64>, i: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for r in 0..m.nrows() {
        let (u, v) = (m[(r, i - 1)], m[(r, i)]);
        m[(r, i - 1)] = c * u + s * v;
        m[(r, i)] = -s * u + c * v;
    }
}

/// `Φ(θ) = α_{i_1}(θ_1) ⋯ α_{i_ℓ}(θ_ℓ)`.
pub fn phi(word: &Word, thetas: &[f64]) -> Result<DMatrix<f64>> {
    if thetas.len() != word.len() {
        return Err(Error::SizeMismatch { expected: word.len(), found: thetas.len() });
    }
    let mut m = DMatrix::identity(word.n() + 1, word.n() + 1);
    for (k, &t) in thetas.iter().enumerate() {
        right_alpha(&mut m, word.letter(k + 1), t);
    }
    Ok(m)
}

/// `λ_{i_1}(t_1) ⋯ λ_{i_ℓ}(t_ℓ)`.
pub fn sample_stratum(word: &Word, ts: &[f64]) -> Result<LowerTriangular> {
    if ts.len() != word.len() {
        return Err(Error::SizeMismatch { expected: word.len(), found: ts.len() });
    }
    if let Some(k) = ts.iter().position(|&t| t == 0.0) {
        return Err(Error::InvalidAncestry(format!("t_{} = 0", k + 1)));
    }
    let mut l = LowerTriangular::identity(word.n());
    for (k, &t) in ts.iter().enumerate() {
        l = l.mul(&lambda(word.n(), word.letter(k + 1), t));
    }
    Ok(l)
}

/// A λ-sample with prescribed signs and magnitudes drawn from `[0.2, 2]`.
pub fn random_sample(word: &Word, signs: &[i8], rng: &mut impl Rng) -> Result<LowerTriangular> {
    let ts: Vec<f64> = signs.iter().map(|&s| s.signum() as f64 * rng.gen_range(0.2..2.0)).collect();
    sample_stratum(word, &ts)
}

/// `Q` in `L = QR` with `R` upper triangular with positive diagonal.
pub fn q_of(l: &LowerTriangular) -> DMatrix<f64> {
    let qr = l.m.clone().qr();
    let (mut q, r) = (qr.q(), qr.r());
    for c in 0..q.ncols() {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    q
}

/// The unit lower factor of `Q = L U` (no pivoting).
pub fn l_of(q: &DMatrix<f64>) -> Result<LowerTriangular> {
    let k = q.nrows();
    let mut u = q.clone();
    let mut l = DMatrix::identity(k, k);
    for c in 0..k {
        let p = u[(c, c)];
        if p.abs() <= TOL {
            return Err(Error::NearBoundary(format!("leading minor {} vanishes", c + 1)));
        }
        for r in c + 1..k {
            let f = u[(r, c)] / p;
            l[(r, c)] = f;
            for j in c..k {
                u[(r, j)] -= f * u[(c, j)];
            }
        }
    }
    Ok(LowerTriangular { m: l })
}

/// The `σ` with `M ∈ U₀ P_σ U₁`, where `(P_σ)_{r, r^σ} ≠ 0`.
pub fn bruhat_permutation(m: &DMatrix<f64>) -> Result<Permutation> {
    let k = m.nrows();
    let mut a = m.clone();
    let mut used = vec![false; k];
    let mut col_of = vec![0usize; k];
    for r in (0..k).rev() {
        let c = (0..k)
            .find(|&c| !used[c] && a[(r, c)].abs() > TOL)
            .ok_or_else(|| Error::NearBoundary(format!("no pivot in row {}", r + 1)))?;
        used[c] = true;
        col_of[r] = c + 1;
        let p = a[(r, c)];
        for rr in 0..r {
            let f = a[(rr, c)] / p;
            if f != 0.0 {
                for j in 0..k {
                    a[(rr, j)] -= f * a[(r, j)];
                }
            }
        }
        for cc in c + 1..k {
            let f = a[(r, cc)] / p;
            if f != 0.0 {
                for rr in 0..k {
                    a[(rr, cc)] -= f * a[(rr, c)];
                }
            }
        }
    }
    Permutation::from_oneline(&col_of)
}

/// The angle `φ ∈ [0, π)` with `M·α_i(φ) ∈ Bru_{ρ a_i}`, for `M ∈ Bru_ρ` and `ρ a_i < ρ`.
pub fn drop_angle(m: &DMatrix<f64>, i: usize, rho: &Permutation) -> f64 {
    let r1 = rho.preimage(i) - 1;
    let rows = m.nrows() - r1;
    let a = m.view((r1, 0), (rows, i - 1)).clone_owned();
    let mut u: DVector<f64> = m.column(i - 1).rows(r1, rows).clone_owned();
    let mut v: DVector<f64> = m.column(i).rows(r1, rows).clone_owned();
    let rank = (r1 + 1..=m.nrows()).filter(|&r| rho.image(r) < i).count();
    // pivoted Gram-Schmidt on the columns of `a`, keeping `rank` directions
    let mut cols: Vec<DVector<f64>> = a.column_iter().map(|c| c.clone_owned()).collect();
    for _ in 0..rank {
        let j = (0..cols.len()).max_by(|&x, &y| cols[x].norm().total_cmp(&cols[y].norm())).unwrap();
        let b = cols.swap_remove(j).normalize();
        for c in cols.iter_mut().chain([&mut u, &mut v]) {
            let p = b.dot(c);
            *c -= &b * p;
        }
    }
    let d = if u.norm() >= v.norm() { u.normalize() } else { v.normalize() };
    let (x, y) = (u.dot(&d), v.dot(&d));
    (-x).atan2(y).rem_euclid(PI)
}

/// Diagonal sign matrices of determinant `1`, as the signed permutations `Π(q)` for `q ∈ Quat`.
fn positive_diagonals(n: usize) -> Vec<(Quat, DMatrix<f64>)> {
    (0u32..(1 << n)).map(|mask| (Quat::new(mask, false), Quat::new(mask, false).so(n).to_matrix())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AngleFactorization {
    pub word: Word,
    pub thetas: Vec<f64>,
    pub residual: f64,
    /// `D = Π(q)` with `Q·D = Φ(θ)`.
    #[serde(skip)]
    pub q: Quat,
}

/// Peels `θ_ℓ, …, θ_1` from `Q·D` for the unique sign diagonal `D` that makes the residual vanish.
pub fn factor_angles(q: &DMatrix<f64>, word: &Word) -> Result<AngleFactorization> {
    let n = word.n();
    if q.nrows() != n + 1 {
        return Err(Error::SizeMismatch { expected: n + 1, found: q.nrows() });
    }
    let mut prefixes = vec![Permutation::identity(n + 1)];
    for i in word.letters() {
        prefixes.push(prefixes.last().unwrap().mul_gen(i));
    }
    if bruhat_permutation(q)? != *prefixes.last().unwrap() {
        return Err(Error::NotInCell(format!("matrix is not in the cell of {}", word.product())));
    }
    let mut best: Option<AngleFactorization> = None;
    for (qd, d) in positive_diagonals(n) {
        let mut z = q * &d;
        let mut thetas = vec![0.0; word.len()];
        for k in (1..=word.len()).rev() {
            let i = word.letter(k);
            let phi_k = drop_angle(&z, i, &prefixes[k]);
            let t = PI - phi_k;
            thetas[k - 1] = t;
            right_alpha(&mut z, i, -t);
        }
        let residual = (&z - DMatrix::<f64>::identity(n + 1, n + 1)).amax();
        if best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(AngleFactorization { word: word.clone(), thetas, residual, q: qd });
        }
    }
    let best = best.unwrap();
    if best.residual > 1e-6 {
        return Err(Error::NotInCell(format!("no angle factorization (residual {:.3e})", best.residual)));
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub word: String,
    pub ancestry: Ancestry,
    pub xi: Vec<u8>,
    pub thetas: Vec<f64>,
    /// `θ•` at descents.
    pub critical: Vec<Option<f64>>,
    /// Smallest `|θ_k − θ•|` among places classified as `ξ ∈ {0, 2}`.
    pub margin: f64,
    /// `P(ε)`.
    pub p: String,
    /// `Π(P(ε))` agrees with the component of `Q(L)` read off from the sign diagonal.
    pub component_consistent: bool,
}

/// Classifies `Φ(θ)` by the forward recursion along the word.
pub fn ancestry_of_angles(ctx: &WordCtx, thetas: &[f64]) -> Result<Classification> {
    let n = ctx.n();
    if thetas.len() != ctx.len() {
        return Err(Error::SizeMismatch { expected: ctx.len(), found: thetas.len() });
    }
    let s = crate::clifford::acute(ctx.eta()).so().to_matrix();
    let mut z = DMatrix::identity(n + 1, n + 1);
    let mut rho = *ctx.eta();
    let mut xi = Vec::with_capacity(ctx.len());
    let mut critical = Vec::with_capacity(ctx.len());
    let mut margin = f64::INFINITY;
    for (k, &t) in thetas.iter().enumerate() {
        let i = ctx.letter(k + 1);
        if rho.is_ascent(i) {
            xi.push(1);
            critical.push(None);
            rho = rho.mul_gen(i);
        } else {
            let tb = drop_angle(&(&s * &z), i, &rho);
            critical.push(Some(tb));
            if (t - tb).abs() <= TOL {
                xi.push(1);
                rho = rho.mul_gen(i);
            } else {
                xi.push(if t < tb { 0 } else { 2 });
                margin = margin.min((t - tb).abs());
            }
        }
        right_alpha(&mut z, i, t);
    }
    if rho != *ctx.eta() {
        return Err(Error::NotInCell("the recursion does not return to η".into()));
    }
    let ancestry = eps_from_xi(ctx, &xi)?;
    Ok(Classification {
        word: ctx.word().to_string(),
        p: ancestry.p(ctx).to_string(),
        ancestry,
        xi,
        thetas: thetas.to_vec(),
        critical,
        margin,
        component_consistent: true,
    })
}

/// The stratum `BLS_ε` containing `L`.
pub fn ancestry_of(ctx: &WordCtx, l: &LowerTriangular) -> Result<Classification> {
    if l.n() != ctx.n() {
        return Err(Error::SizeMismatch { expected: ctx.n(), found: l.n() });
    }
    let q = q_of(l);
    let f = factor_angles(&q, ctx.word())?;
    let mut c = ancestry_of_angles(ctx, &f.thetas)?;
    let d: SignedPerm = f.q.so(ctx.n());
    let pr = c.ancestry.r().so(ctx.n());
    c.component_consistent = pr.is_diagonal() && pr == d;
    Ok(c)
}

// ---------------------------------------------------------------------------
// Region checks
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct RegionCheck {
    pub name: String,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl RegionCheck {
    fn new(name: &str) -> Self {
        Self { name: name.into(), samples: 0, failures: Vec::new() }
    }

    fn expect(&mut self, what: String, got: Result<String>, want: &str) {
        self.samples += 1;
        match got {
            Ok(g) if g == want => {}
            Ok(g) => self.failures.push(format!("{what}: got {g}, expected {want}")),
            Err(e) => self.failures.push(format!("{what}: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn ctx_of(w: &str, n: usize) -> WordCtx {
    WordCtx::new(Word::parse(w, Some(n)).expect("literal word")).expect("reduced literal word")
}

fn p_of(ctx: &WordCtx, l: &LowerTriangular) -> Result<String> {
    ancestry_of(ctx, l).map(|c| c.p)
}

fn eps_of(ctx: &WordCtx, l: &LowerTriangular) -> Result<String> {
    ancestry_of(ctx, l).map(|c| c.ancestry.to_string())
}

fn z_label(ctx: &WordCtx, s: &str) -> String {
    let z = crate::clifford::CliffElem::parse(s, ctx.n()).expect("literal");
    z.to_string()
}

/// Samples every region described in the worked examples and checks the classifier against it.
pub fn region_checks(rng: &mut impl Rng, samples: usize) -> Vec<RegionCheck> {
    let mut out = Vec::new();
    let aba = ctx_of("a1 a2 a1", 2);
    let bab = ctx_of("a2 a1 a2", 2);
    let l3 = |x: f64, y: f64, z: f64| LowerTriangular::from_entries(2, &[x, z, y]).unwrap();

    let mut c = RegionCheck::new("eta in S3: the six nonempty BL_z");
    let regions: [(&str, fn(f64, f64, f64) -> bool); 6] = [
        ("(1-a1a2)/sqrt2", |x, y, z| z > 0f64.max(x * y)),
        ("(1+a1a2)/sqrt2", |x, y, z| z < 0f64.min(x * y)),
        ("(a1+a2)/sqrt2", |x, y, z| x > 0.0 && 0.0 < z && z < x * y),
        ("(a1-a2)/sqrt2", |x, y, z| x > 0.0 && x * y < z && z < 0.0),
        ("(-a1-a2)/sqrt2", |x, y, z| x < 0.0 && 0.0 < z && z < x * y),
        ("(-a1+a2)/sqrt2", |x, y, z| x < 0.0 && x * y < z && z < 0.0),
    ];
    for (want, inside) in regions {
        let want = z_label(&aba, want);
        let mut got = 0;
        while got < samples {
            let (x, y, z): (f64, f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-4.0..4.0));
            let gap = [x.abs(), y.abs(), z.abs(), (z - x * y).abs()];
            if gap.iter().any(|g| *g < 0.05) || !inside(x, y, z) {
                continue;
            }
            got += 1;
            c.expect(format!("x={x:.3} y={y:.3} z={z:.3}"), p_of(&aba, &l3(x, y, z)), &want);
        }
    }
    out.push(c);

    let mut c = RegionCheck::new("eta in S3: codimension one strata");
    for _ in 0..samples {
        let (x, z) = (rng.gen_range(-2.0..2.0), rng.gen_range(0.1..3.0));
        c.expect(format!("y=0 x={x:.3} z={z:.3}"), eps_of(&aba, &l3(x, 0.0, z)), "(-2,+1,+2)");
        let y = rng.gen_range(-2.0..2.0);
        c.expect(format!("x=0 y={y:.3} z={z:.3}"), eps_of(&bab, &l3(0.0, y, z)), "(-2,-1,+2)");
    }
    c.expect("L0 of the a1a2a1 example".into(), eps_of(&aba, &l3(0.0, 0.0, 1.0)), "(-2,+1,+2)");
    out.push(c);

    let mut c = RegionCheck::new("a2a1a3a2: the map (u,v,x,y) -> L");
    let bacb = ctx_of("a2 a1 a3 a2", 3);
    let l4 = |x: f64, u: f64, y: f64, w: f64, v: f64, z: f64| LowerTriangular::from_entries(3, &[x, u, y, w, v, z]).unwrap();
    for _ in 0..samples {
        let (u, v, y) = (rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0), rng.gen_range(-2.0..2.0));
        let mut x: f64 = rng.gen_range(-2.0..2.0);
        while x.abs() < 0.05 || x * y >= u - 0.05 {
            x = rng.gen_range(-2.0..2.0);
        }
        let z = x * v / (x * y - u);
        let want = if x > 0.0 { "(+1,+1,-1,-1)" } else { "(-1,-1,+1,+1)" };
        c.expect(format!("u={u:.3} v={v:.3} x={x:.3} y={y:.3}"), eps_of(&bacb, &l4(x, u, y, 0.0, v, z)), want);
        c.expect(format!("u={u:.3} v={v:.3} x=0 y={y:.3}"), eps_of(&bacb, &l4(0.0, u, y, 0.0, v, 0.0)), "(-2,-1,+1,+2)");
    }
    c.expect("L0 of the a2a1a3a2 example".into(), eps_of(&bacb, &l4(0.0, 1.0, 0.0, 0.0, 1.0, 0.0)), "(-2,-1,+1,+2)");
    out.push(c);

    let mut c = RegionCheck::new("4231: the set BL_z for z = (1+a1a2a3)/sqrt2");
    let w4231 = ctx_of("a1 a2 a3 a2 a1", 3);
    let want = z_label(&w4231, "(1+a1a2a3)/sqrt2");
    for _ in 0..samples {
        let (l21, l31, l42, l43) =
            (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let floor = 0f64.max(l21 * l42).max(l31 * l43);
        let l41 = floor + rng.gen_range(0.1..2.0);
        let l32 = l31 * l42 / l41;
        c.expect(format!("l42={l42:.3} l43={l43:.3}"), p_of(&w4231, &l4(l21, l31, l32, l41, l42, l43)), &want);
        let l41 = rng.gen_range(0.1..2.0);
        c.expect(
            format!("l41={l41:.3} l32=l42=l43=0"),
            eps_of(&w4231, &l4(l21, l31, 0.0, l41, 0.0, 0.0)),
            "(-2,-2,+1,+2,+2)",
        );
    }
    out.push(c);

    let mut c = RegionCheck::new("a2a3a2a1a2a4a3a2: the witness pair");
    let w = ctx_of("a2 a3 a2 a1 a2 a4 a3 a2", 4);
    let q = PI / 4.0;
    let t5 = PI - 2f64.sqrt().atan();
    let mut th = [PI / 2.0, PI / 2.0, q, q, t5, q, q, q];
    let classify = |th: &[f64]| -> Result<String> {
        let l = l_of(&phi(w.word(), th)?)?;
        eps_of(&w, &l)
    };
    c.expect("theta2 = pi/2".into(), classify(&th), "(-2,-2,+1,-1,-1,+1,+2,+2)");
    for _ in 0..samples {
        th[1] = rng.gen_range(PI / 3.0 + 0.01..PI / 2.0 - 0.01);
        c.expect(format!("theta2 = {:.4}", th[1]), classify(&th), "(-2,-1,+2,-1,-2,+1,+1,+2)");
    }
    let e0 = Ancestry::parse(&w, "(-2,-2,+1,-1,-1,+1,+2,+2)").unwrap();
    let e1 = Ancestry::parse(&w, "(-2,-1,+2,-1,-2,+1,+1,+2)").unwrap();
    let cache = crate::order::ClosureCache::new();
    let leq = crate::order::ancestry_leq(&w, &cache, &e0, &e1).map(|b| b.to_string());
    c.expect("eps0 below eps1".into(), leq, "true");
    out.push(c);
    out
}
