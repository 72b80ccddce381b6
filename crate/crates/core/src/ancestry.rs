//! Preancestries and ancestries of a fixed reduced word, count tables, and the
//! exact identities relating the counts `N_{ε₀}(z)` to `Re(z)` and `H_{ε₀}`.

use std::fmt;

use serde::Serialize;

use crate::clifford::{acute, CliffElem, GroupElem, Lifted, Quat, Scalar, MAX_GROUP_N};
use crate::error::{Error, Result};
use crate::perm::{Partition, Permutation, Word};
use crate::subgroups::QuatSubgroup;
use crate::util::UnionFind;

/// A reduced word together with data shared by every computation on it.
#[derive(Clone, Debug)]
pub struct WordCtx {
    word: Word,
    sigma: Permutation,
    eta: Permutation,
    crossings: Vec<(usize, usize)>,
    acute_sigma: GroupElem,
    left: Vec<Quat>,
    re: Vec<Scalar>,
}

impl WordCtx {
    pub fn new(word: Word) -> Result<Self> {
        word.require_reduced()?;
        let n = word.n();
        if n > MAX_GROUP_N {
            return Err(Error::TooLarge { n, max: MAX_GROUP_N });
        }
        let sigma = word.product();
        let crossings = word.crossing_wires()?;
        let acute_sigma = acute(&sigma);
        let grave_sigma = acute_sigma.inverse();
        let quats = Quat::all(n);
        let left = quats
            .iter()
            .map(|&q| grave_sigma.mul(&GroupElem::from_quat(n, q)).mul(&acute_sigma).as_quat().unwrap())
            .collect();
        let re = quats.iter().map(|&r| acute_sigma.mul_quat(r).re()).collect();
        Ok(Self { word, sigma, eta: Permutation::top(n), crossings, acute_sigma, left, re })
    }

    /// Context for the lexicographically least reduced word of `σ`.
    pub fn canonical(sigma: &Permutation) -> Result<Self> {
        Self::new(crate::perm::canonical_word(sigma))
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn eta(&self) -> &Permutation {
        &self.eta
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn letter(&self, k: usize) -> usize {
        self.word.letter(k)
    }

    pub fn crossings(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    pub fn acute_sigma(&self) -> &GroupElem {
        &self.acute_sigma
    }

    /// Number of blocks `b`.
    pub fn blocks(&self) -> usize {
        self.sigma.blocks().len()
    }

    /// The coset element `acute σ · r`.
    pub fn z(&self, r: Quat) -> GroupElem {
        self.acute_sigma.mul_quat(r)
    }

    /// `r` with `z = acute σ · r`.
    pub fn r_of(&self, z: &GroupElem) -> Result<Quat> {
        self.acute_sigma.inverse().mul(z).as_quat().ok_or(Error::NotInCoset)
    }

    /// `Re(acute σ · r)`.
    pub fn re(&self, r: Quat) -> Scalar {
        self.re[r.index()]
    }

    /// All `r`, i.e. the whole coset `acute σ · Quat`.
    pub fn coset(&self) -> Vec<Quat> {
        Quat::all(self.n())
    }

    /// `r'` with `q · (acute σ · r) = acute σ · r'`.
    pub fn left_mul(&self, q: Quat, r: Quat) -> Quat {
        self.left[q.index()].mul(r)
    }

    /// Parses a coset element: `z0`, `-z0`, a Clifford expression, or a product
    /// involving `acute` (e.g. `"-a1*acute"`).
    pub fn parse_z(&self, s: &str) -> Result<Quat> {
        match s.trim() {
            "z0" => return Ok(self.z0()),
            "-z0" => return Ok(self.z0().negate()),
            _ => {}
        }
        let acute = self.acute_sigma.to_cliff();
        let c = CliffElem::parse_with(s, self.n(), &|name| (name == "acute").then(|| acute.clone()))?;
        self.coset().into_iter().find(|&r| self.z(r).to_cliff() == c).ok_or(Error::NotInCoset)
    }

    /// The first coset element (in index order) with positive real part.
    pub fn z0(&self) -> Quat {
        self.coset().into_iter().find(|&r| self.re(r).signum() > 0).expect("some element has Re > 0")
    }
}

// ---------------------------------------------------------------------------
// Preancestries
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DimTwoType {
    I,
    II,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preancestry {
    eps0: Vec<i8>,
    dim: usize,
}

impl Preancestry {
    /// Validates `eps0 ∈ {0, ±2}^ℓ` against the word.
    pub fn new(ctx: &WordCtx, eps0: Vec<i8>) -> Result<Self> {
        if eps0.len() != ctx.len() {
            return Err(Error::InvalidPreancestry(format!("length {} ≠ ℓ = {}", eps0.len(), ctx.len())));
        }
        let mut rho = *ctx.eta();
        for (k, &e) in eps0.iter().enumerate() {
            let i = ctx.letter(k + 1);
            let up = rho.is_ascent(i);
            match (e, up) {
                (2, true) | (-2, false) => rho = rho.mul_gen(i),
                (0, false) => {}
                _ => return Err(Error::InvalidPreancestry(format!("value {e} not allowed at position {}", k + 1))),
            }
        }
        if rho != *ctx.eta() {
            return Err(Error::InvalidPreancestry("does not return to η".into()));
        }
        let dim = eps0.iter().filter(|&&e| e == -2).count();
        Ok(Self { eps0, dim })
    }

    pub fn eps0(&self) -> &[i8] {
        &self.eps0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn marked(&self) -> Vec<usize> {
        (1..=self.eps0.len()).filter(|&k| self.eps0[k - 1] != 0).collect()
    }

    pub fn unmarked(&self) -> Vec<usize> {
        (1..=self.eps0.len()).filter(|&k| self.eps0[k - 1] == 0).collect()
    }

    /// `ρ_0, …, ρ_ℓ`.
    pub fn rho(&self, ctx: &WordCtx) -> Vec<Permutation> {
        let mut out = vec![*ctx.eta()];
        for (k, &e) in self.eps0.iter().enumerate() {
            let last = *out.last().unwrap();
            out.push(if e == 0 { last } else { last.mul_gen(ctx.letter(k + 1)) });
        }
        out
    }

    /// `X_{ε₀}`: merge the wire pair of every unmarked crossing.
    pub fn partition(&self, ctx: &WordCtx) -> Partition {
        let mut uf = UnionFind::new(ctx.n() + 1);
        for k in self.unmarked() {
            let (a, b) = ctx.crossings()[k - 1];
            uf.union(a - 1, b - 1);
        }
        Partition::from_union_find(&mut uf)
    }

    pub fn subgroup(&self, ctx: &WordCtx) -> QuatSubgroup {
        QuatSubgroup::from_partition(ctx.n(), &self.partition(ctx))
    }

    pub fn dim_two_type(&self, ctx: &WordCtx) -> Option<DimTwoType> {
        if self.dim != 2 {
            return None;
        }
        let m = self.marked();
        if self.eps0[m[1] - 1] == 2 || ctx.letter(m[0]).abs_diff(ctx.letter(m[1])) > 1 {
            Some(DimTwoType::I)
        } else {
            Some(DimTwoType::II)
        }
    }

    /// Positions whose signs differ between the two endpoints of a dimension-1 cell.
    pub fn face_boundary(&self, ctx: &WordCtx) -> Option<Vec<usize>> {
        if self.dim != 1 {
            return None;
        }
        let m = self.marked();
        let (k1, k2) = (m[0], m[1]);
        let r = ctx.letter(k1);
        let mut out = vec![k1];
        out.extend((k1 + 1..k2).filter(|&k| ctx.letter(k).abs_diff(r) == 1));
        out.push(k2);
        Some(out)
    }

    /// The unmarked crossings multiply (right to left) to `σ`, and `2d ≤ ℓ + c − n − 1`.
    pub fn unmarked_factorization_check(&self, ctx: &WordCtx) -> bool {
        let mut p = Permutation::identity(ctx.n() + 1);
        for k in self.unmarked().into_iter().rev() {
            let (a, b) = ctx.crossings()[k - 1];
            let t = Permutation::identity(ctx.n() + 1);
            let mut line = t.oneline();
            line.swap(a - 1, b - 1);
            p = p.then(&Permutation::from_oneline(&line).unwrap());
        }
        let c = ctx.sigma().num_cycles();
        p == *ctx.sigma() && 2 * self.dim + ctx.n() < ctx.len() + c
    }
}

impl fmt::Display for Preancestry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_signed(&self.eps0))
    }
}

impl fmt::Debug for Preancestry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preancestry{self}")
    }
}

impl Serialize for Preancestry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn format_signed(v: &[i8]) -> String {
    let parts: Vec<String> = v.iter().map(|&e| if e > 0 { format!("+{e}") } else { e.to_string() }).collect();
    format!("({})", parts.join(","))
}

/// Every preancestry of the word, sorted by dimension and then lexicographically.
pub fn preancestries(ctx: &WordCtx) -> Vec<Preancestry> {
    fn rec(ctx: &WordCtx, k: usize, rho: Permutation, inv: usize, eps: &mut Vec<i8>, out: &mut Vec<Preancestry>) {
        let ell = ctx.len();
        let top = ctx.eta().inv();
        if k == ell {
            if rho == *ctx.eta() {
                let dim = eps.iter().filter(|&&e| e == -2).count();
                out.push(Preancestry { eps0: eps.clone(), dim });
            }
            return;
        }
        let i = ctx.letter(k + 1);
        let mut go = |e: i8, next: Permutation, inv: usize, eps: &mut Vec<i8>| {
            if top - inv < ell - k {
                eps.push(e);
                rec(ctx, k + 1, next, inv, eps, out);
                eps.pop();
            }
        };
        if rho.is_ascent(i) {
            go(2, rho.mul_gen(i), inv + 1, eps);
        } else {
            go(0, rho, inv, eps);
            go(-2, rho.mul_gen(i), inv - 1, eps);
        }
    }
    let mut out = Vec::new();
    rec(ctx, 0, *ctx.eta(), ctx.eta().inv(), &mut Vec::with_capacity(ctx.len()), &mut out);
    out.sort_by(|a, b| (a.dim, &a.eps0).cmp(&(b.dim, &b.eps0)));
    out
}

/// Preancestry counts indexed by dimension.
pub fn dimension_census(pres: &[Preancestry]) -> Vec<usize> {
    let top = pres.iter().map(|p| p.dim).max().unwrap_or(0);
    let mut v = vec![0; top + 1];
    for p in pres {
        v[p.dim] += 1;
    }
    v
}

// ---------------------------------------------------------------------------
// Ancestries
// ---------------------------------------------------------------------------

/// An ancestry `ε ∈ {±1, ±2}^ℓ`; `r` records `P(ε) = acute σ · r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ancestry {
    eps: Vec<i8>,
    dim: usize,
    r: Quat,
}

/// Parses `"(-2,+1,+2)"` into its entries.
pub fn parse_signs(s: &str) -> Result<Vec<i8>> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    body.split(',')
        .map(|t| t.trim().trim_start_matches('+').parse::<i8>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
        .collect()
}

/// The derived sequences `ξ`, `ρ_k`, `q_k` and `ϱ_k = acute(ρ_k)·q_k`.
#[derive(Clone, Debug)]
pub struct AncestryTrace {
    pub xi: Vec<u8>,
    pub rho: Vec<Permutation>,
    pub q: Vec<Quat>,
    pub varrho: Vec<Lifted>,
}

impl Ancestry {
    pub fn new(ctx: &WordCtx, eps: Vec<i8>) -> Result<Self> {
        let trace = trace_of(ctx, &eps)?;
        let dim = eps.iter().filter(|&&e| e == -2).count();
        let r = trace.q.last().unwrap().inv();
        Ok(Self { eps, dim, r })
    }

    pub fn parse(ctx: &WordCtx, s: &str) -> Result<Self> {
        Self::new(ctx, parse_signs(s)?)
    }

    /// Dimension-0 ancestry from a sign mask (bit `k − 1` set when `ε(k) = −1`).
    pub fn from_sign_mask(ctx: &WordCtx, mask: u64) -> Result<Self> {
        Self::new(ctx, (0..ctx.len()).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `P(ε) = acute σ · r`.
    pub fn r(&self) -> Quat {
        self.r
    }

    pub fn p(&self, ctx: &WordCtx) -> GroupElem {
        ctx.z(self.r)
    }

    /// `P(ε)` as the signed product `∏ (á_{i_k})^{sign ε(k)}`.
    pub fn p_product(&self, ctx: &WordCtx) -> GroupElem {
        let n = ctx.n();
        self.eps.iter().enumerate().fold(GroupElem::one(n), |z, (k, &e)| {
            let i = ctx.letter(k + 1);
            z.mul(&if e > 0 { GroupElem::acute_gen(n, i) } else { GroupElem::grave_gen(n, i) })
        })
    }

    pub fn trace(&self, ctx: &WordCtx) -> AncestryTrace {
        trace_of(ctx, &self.eps).expect("validated at construction")
    }

    pub fn preancestry(&self) -> Preancestry {
        Preancestry { eps0: self.eps.iter().map(|&e| if e.abs() == 2 { e } else { 0 }).collect(), dim: self.dim }
    }

    /// `sign ∘ ε`.
    pub fn sign_vector(&self) -> Vec<i8> {
        self.eps.iter().map(|e| e.signum()).collect()
    }

    /// Bit `k − 1` set when `ε(k) < 0`.
    pub fn sign_mask(&self) -> u64 {
        self.eps.iter().enumerate().fold(0, |m, (k, &e)| if e < 0 { m | 1 << k } else { m })
    }

    pub fn is_thin(&self, ctx: &WordCtx) -> bool {
        self.dim == 0 && {
            let mut row = vec![0i8; ctx.n() + 1];
            self.eps.iter().enumerate().all(|(k, &e)| {
                let i = ctx.letter(k + 1);
                let ok = row[i] == 0 || row[i] == e;
                row[i] = e;
                ok
            })
        }
    }
}

impl fmt::Display for Ancestry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_signed(&self.eps))
    }
}

impl fmt::Debug for Ancestry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ancestry{self}")
    }
}

impl Serialize for Ancestry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn trace_of(ctx: &WordCtx, eps: &[i8]) -> Result<AncestryTrace> {
    if eps.len() != ctx.len() {
        return Err(Error::InvalidAncestry(format!("length {} ≠ ℓ = {}", eps.len(), ctx.len())));
    }
    let mut rho = *ctx.eta();
    let mut q = Quat::ONE;
    let mut t = AncestryTrace {
        xi: Vec::with_capacity(eps.len()),
        rho: vec![rho],
        q: vec![q],
        varrho: vec![Lifted::new(rho, q)],
    };
    for (k, &e) in eps.iter().enumerate() {
        let i = ctx.letter(k + 1);
        let up = rho.is_ascent(i);
        let xi = match (e, up) {
            (2, true) | (-2, false) => 1,
            (1 | -1, false) => {
                if e == q.hat_commutator(i) {
                    0
                } else {
                    2
                }
            }
            _ => return Err(Error::InvalidAncestry(format!("value {e} not allowed at position {}", k + 1))),
        };
        if xi == 1 {
            rho = rho.mul_gen(i);
        }
        q = if e > 0 { q.conj_acute(i) } else { q.acute_sandwich(i) };
        t.xi.push(xi);
        t.rho.push(rho);
        t.q.push(q);
        t.varrho.push(Lifted::new(rho, q));
    }
    if rho != *ctx.eta() {
        return Err(Error::InvalidAncestry("does not return to η".into()));
    }
    Ok(t)
}

/// Recomputes `ε` from `ξ` (forced `±2` at the marked places).
pub fn eps_from_xi(ctx: &WordCtx, xi: &[u8]) -> Result<Ancestry> {
    let mut rho = *ctx.eta();
    let mut q = Quat::ONE;
    let mut eps = Vec::with_capacity(xi.len());
    for (k, &x) in xi.iter().enumerate() {
        let i = ctx.letter(k + 1);
        let e = match (x, rho.is_ascent(i)) {
            (1, true) => 2,
            (1, false) => -2,
            (0 | 2, false) => (1 - x as i8) * q.hat_commutator(i),
            _ => return Err(Error::InvalidAncestry(format!("ξ = {x} not allowed at position {}", k + 1))),
        };
        if x == 1 {
            rho = rho.mul_gen(i);
        }
        q = if e > 0 { q.conj_acute(i) } else { q.acute_sandwich(i) };
        eps.push(e);
    }
    Ancestry::new(ctx, eps)
}

/// Calls `f(ε, r)` for every ancestry over the preancestry.
pub fn for_each_ancestry(ctx: &WordCtx, pre: &Preancestry, mut f: impl FnMut(&[i8], Quat)) {
    let mut eps = pre.eps0.clone();
    walk(ctx, &pre.eps0, 0, Quat::ONE, &mut eps, &mut |e, q| f(e, q.inv()));
}

fn walk(ctx: &WordCtx, eps0: &[i8], k: usize, q: Quat, eps: &mut Vec<i8>, f: &mut dyn FnMut(&[i8], Quat)) {
    if k == eps0.len() {
        f(eps, q);
        return;
    }
    let i = ctx.letter(k + 1);
    match eps0[k] {
        2 => walk(ctx, eps0, k + 1, q.conj_acute(i), eps, f),
        -2 => walk(ctx, eps0, k + 1, q.acute_sandwich(i), eps, f),
        _ => {
            eps[k] = 1;
            walk(ctx, eps0, k + 1, q.conj_acute(i), eps, f);
            eps[k] = -1;
            walk(ctx, eps0, k + 1, q.acute_sandwich(i), eps, f);
            eps[k] = 0;
        }
    }
}

/// Every ancestry of the word, ordered by preancestry then sign pattern.
pub fn ancestries(ctx: &WordCtx) -> Vec<Ancestry> {
    let mut out = Vec::new();
    for pre in preancestries(ctx) {
        for_each_ancestry(ctx, &pre, |e, r| out.push(Ancestry { eps: e.to_vec(), dim: pre.dim, r }));
    }
    out
}

/// Final `q_ℓ` counts for the suffix starting at `k`, accumulated into `acc`.
fn count_suffix(ctx: &WordCtx, eps0: &[i8], k: usize, q: Quat, acc: &mut [u64]) {
    if k == eps0.len() {
        acc[q.inv().index()] += 1;
        return;
    }
    let i = ctx.letter(k + 1);
    match eps0[k] {
        2 => count_suffix(ctx, eps0, k + 1, q.conj_acute(i), acc),
        -2 => count_suffix(ctx, eps0, k + 1, q.acute_sandwich(i), acc),
        _ => {
            count_suffix(ctx, eps0, k + 1, q.conj_acute(i), acc);
            count_suffix(ctx, eps0, k + 1, q.acute_sandwich(i), acc);
        }
    }
}

/// Starting states after the first `depth` unmarked choices.
fn prefixes(ctx: &WordCtx, eps0: &[i8], depth: usize) -> Vec<(usize, Quat)> {
    let mut states = vec![(0usize, Quat::ONE)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(states.len() * 2);
        for (mut k, mut q) in states {
            while k < eps0.len() && eps0[k] != 0 {
                let i = ctx.letter(k + 1);
                q = if eps0[k] > 0 { q.conj_acute(i) } else { q.acute_sandwich(i) };
                k += 1;
            }
            if k == eps0.len() {
                next.push((k, q));
                continue;
            }
            let i = ctx.letter(k + 1);
            next.push((k + 1, q.conj_acute(i)));
            next.push((k + 1, q.acute_sandwich(i)));
        }
        states = next;
    }
    states
}

const SPLIT_DEPTH: usize = 6;

fn counts_for_seq(ctx: &WordCtx, pre: &Preancestry) -> Vec<u64> {
    let mut acc = vec![0u64; 2 << ctx.n()];
    count_suffix(ctx, &pre.eps0, 0, Quat::ONE, &mut acc);
    acc
}

#[cfg(feature = "parallel")]
fn counts_for_par(ctx: &WordCtx, pre: &Preancestry) -> Vec<u64> {
    use rayon::prelude::*;
    let free = ctx.len() - 2 * pre.dim;
    if free <= 12 {
        return counts_for_seq(ctx, pre);
    }
    let size = 2 << ctx.n();
    prefixes(ctx, &pre.eps0, SPLIT_DEPTH.min(free))
        .into_par_iter()
        .map(|(k, q)| {
            let mut acc = vec![0u64; size];
            count_suffix(ctx, &pre.eps0, k, q, &mut acc);
            acc
        })
        .reduce(|| vec![0u64; size], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        })
}

/// `N_{ε₀}(z)` for every preancestry `ε₀` and coset element `z = acute σ · r`.
#[derive(Clone, Debug, Serialize)]
pub struct CountTable {
    pub word: Word,
    pub preancestries: Vec<Preancestry>,
    /// `counts[p][r.index()]`.
    pub counts: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn n(&self, pre: usize, r: Quat) -> u64 {
        self.counts[pre][r.index()]
    }

    /// Cells of each dimension in `BLC_z`.
    pub fn cells_by_dim(&self, r: Quat) -> Vec<u64> {
        let top = self.preancestries.iter().map(|p| p.dim).max().unwrap_or(0);
        let mut v = vec![0; top + 1];
        for (p, pre) in self.preancestries.iter().enumerate() {
            v[pre.dim] += self.n(p, r);
        }
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    }

    /// `χ(BL_z) = Σ (−1)^d N_{ε₀}(z)`.
    pub fn euler(&self, r: Quat) -> i64 {
        self.cells_by_dim(r).iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn total(&self, r: Quat) -> u64 {
        self.cells_by_dim(r).iter().sum()
    }

    /// Rows `{word, preancestry, dim, z, count}` with nonzero count.
    pub fn rows(&self, ctx: &WordCtx) -> Vec<TableRow> {
        let mut out = Vec::new();
        for (p, pre) in self.preancestries.iter().enumerate() {
            for r in ctx.coset() {
                let count = self.n(p, r);
                if count > 0 {
                    out.push(TableRow {
                        word: ctx.word().to_string(),
                        preancestry: pre.to_string(),
                        dim: pre.dim,
                        z: ctx.z(r).to_string(),
                        count,
                    });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TableRow {
    pub word: String,
    pub preancestry: String,
    pub dim: usize,
    pub z: String,
    pub count: u64,
}

pub fn count_table_seq(ctx: &WordCtx) -> CountTable {
    let preancestries = preancestries(ctx);
    let counts = preancestries.iter().map(|p| counts_for_seq(ctx, p)).collect();
    CountTable { word: ctx.word().clone(), preancestries, counts }
}

#[cfg(feature = "parallel")]
pub fn count_table_par(ctx: &WordCtx) -> CountTable {
    use rayon::prelude::*;
    let preancestries = preancestries(ctx);
    let counts = preancestries.par_iter().map(|p| counts_for_par(ctx, p)).collect();
    CountTable { word: ctx.word().clone(), preancestries, counts }
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn count_table(ctx: &WordCtx) -> CountTable {
    #[cfg(feature = "parallel")]
    {
        count_table_par(ctx)
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_table_seq(ctx)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub word: String,
    pub preancestries: usize,
    pub identities_checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for every `ε₀` and `z = q·z₀`:
/// `N(z) − N(−z) = 2^{(ℓ−2d)/2} Re(z)` and
/// `N(z) + N(−z) = 2^{ℓ−2d+1}/|H_{ε₀}|` when `q ∈ H_{ε₀}`, else `0`.
pub fn verify_identities(ctx: &WordCtx, table: &CountTable) -> IdentityReport {
    let mut rep = IdentityReport {
        word: ctx.word().to_string(),
        preancestries: table.preancestries.len(),
        ..Default::default()
    };
    let z0 = ctx.z0();
    let ell = ctx.len() as i32;
    for (p, pre) in table.preancestries.iter().enumerate() {
        let h = pre.subgroup(ctx);
        let d = pre.dim as i32;
        for q in Quat::all(ctx.n()) {
            let r = ctx.left_mul(q, z0);
            let (a, b) = (table.n(p, r) as i64, table.n(p, r.negate()) as i64);
            let diff = Scalar::int(a - b);
            let want = Scalar::pow_sqrt2(ell - 2 * d) * ctx.re(r);
            if diff != want {
                rep.failures.push(format!("{pre}: N(z) − N(−z) = {diff} but expected {want} for z = {}", ctx.z(r)));
            }
            let sum = (a + b) as u64;
            let want = if h.contains(q) { (1u64 << (ell - 2 * d + 1)) / h.len() as u64 } else { 0 };
            if sum != want {
                rep.failures.push(format!("{pre}: N(z) + N(−z) = {sum} but expected {want} for z = {}", ctx.z(r)));
            }
            rep.identities_checked += 2;
        }
    }
    rep
}

/// Dimension-0 ancestries constant along each row.
pub fn thin_ancestries(ctx: &WordCtx) -> Result<Vec<Ancestry>> {
    if ctx.blocks() > 0 {
        return Err(Error::Blocking { perm: ctx.sigma().to_string() });
    }
    let n = ctx.n();
    (0u32..(1 << n))
        .map(|e| {
            let eps = (1..=ctx.len()).map(|k| if e >> (ctx.letter(k) - 1) & 1 == 1 { -1 } else { 1 }).collect();
            Ancestry::new(ctx, eps)
        })
        .collect()
}

/// `N_thin(z)` for `z = acute σ · r`.
pub fn n_thin(ctx: &WordCtx, r: Quat) -> Result<u64> {
    Ok(thin_ancestries(ctx)?.iter().filter(|a| a.r == r).count() as u64)
}
