//! The lifted Bruhat order on `B̃⁺_{n+1}` and the ancestry order `⪯`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use crate::ancestry::{eps_from_xi, Ancestry, WordCtx};
use crate::clifford::{acute, GroupElem, Lifted, Quat};
use crate::error::{Error, Result};
use crate::perm::{canonical_word, Permutation, Word};

/// Closure of the cell of `acute σ`, as the set of `w` with `Bru_w ⊆ closure`.
pub type Closure = Arc<HashSet<Lifted>>;

/// Closure DP along a given reduced word of `σ`.
pub fn closure_along(word: &Word) -> HashSet<Lifted> {
    let mut set: HashSet<Lifted> = [Lifted::one(word.n())].into();
    for i in word.letters() {
        let add: Vec<Lifted> = set.iter().flat_map(|s| [s.mul_acute(i), s.mul_hat(i)]).collect();
        set.extend(add);
    }
    set
}

/// Memoized closures keyed by permutation; safe to share between threads.
#[derive(Default)]
pub struct ClosureCache {
    map: RwLock<HashMap<Permutation, Closure>>,
}

impl ClosureCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, sigma: &Permutation) -> Closure {
        if let Some(c) = self.map.read().unwrap().get(sigma) {
            return c.clone();
        }
        let c = Arc::new(closure_along(&canonical_word(sigma)));
        self.map.write().unwrap().entry(*sigma).or_insert(c).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `z₀ ≤ z₁`.
    pub fn leq(&self, z0: &Lifted, z1: &Lifted) -> bool {
        if z0.perm == z1.perm {
            return z0.q == z1.q;
        }
        if z0.perm.inv() >= z1.perm.inv() {
            return false;
        }
        self.get(&z1.perm).contains(&Lifted::new(z0.perm, z0.q.mul(z1.q.inv())))
    }
}

/// `z` in lifted coordinates.
pub fn to_lifted(z: &GroupElem) -> Lifted {
    let perm = z.permutation();
    let q = acute(&perm).inverse().mul(z).as_quat().expect("same permutation part");
    Lifted::new(perm, q)
}

/// `cell_closure(z₁)` as group elements, sorted.
pub fn cell_closure(z1: &GroupElem) -> Vec<GroupElem> {
    let l = to_lifted(z1);
    let mut out: Vec<GroupElem> =
        closure_along(&canonical_word(&l.perm)).into_iter().map(|w| w.mul_quat(l.q).to_group()).collect();
    out.sort();
    out
}

pub fn lifted_leq(z0: &GroupElem, z1: &GroupElem) -> bool {
    ClosureCache::new().leq(&to_lifted(z0), &to_lifted(z1))
}

/// `ε ⪯ ε̃`.
pub fn ancestry_leq(ctx: &WordCtx, cache: &ClosureCache, a: &Ancestry, b: &Ancestry) -> Result<bool> {
    if a.eps().len() != ctx.len() || b.eps().len() != ctx.len() {
        return Err(Error::SizeMismatch { expected: ctx.len(), found: a.eps().len().max(b.eps().len()) });
    }
    if a.r() != b.r() {
        return Ok(false);
    }
    let (ta, tb) = (a.trace(ctx), b.trace(ctx));
    Ok(ta.varrho.iter().zip(&tb.varrho).all(|(x, y)| cache.leq(x, y)))
}

/// `U_ε = {ε̃ : ε ⪯ ε̃}`, including `ε`, sorted.
pub fn upper_set(ctx: &WordCtx, cache: &ClosureCache, a: &Ancestry) -> Vec<Ancestry> {
    let lower = a.trace(ctx).varrho;
    let top = ctx.eta().inv();
    let mut out = Vec::new();
    let mut xi = Vec::with_capacity(ctx.len());
    fn rec(
        ctx: &WordCtx,
        cache: &ClosureCache,
        lower: &[Lifted],
        top: usize,
        cur: Lifted,
        xi: &mut Vec<u8>,
        out: &mut Vec<Ancestry>,
    ) {
        let k = xi.len();
        if k == ctx.len() {
            if cur.perm == *ctx.eta() {
                out.push(eps_from_xi(ctx, xi).expect("valid ξ"));
            }
            return;
        }
        let i = ctx.letter(k + 1);
        let choices: &[u8] = if cur.perm.is_ascent(i) { &[1] } else { &[0, 1, 2] };
        for &x in choices {
            let next = match x {
                0 => cur,
                1 => cur.mul_acute(i),
                _ => cur.mul_hat(i),
            };
            if top - next.perm.inv() > ctx.len() - k - 1 || !cache.leq(&lower[k + 1], &next) {
                continue;
            }
            xi.push(x);
            rec(ctx, cache, lower, top, next, xi, out);
            xi.pop();
        }
    }
    rec(ctx, cache, &lower, top, lower[0], &mut xi, &mut out);
    out.sort();
    out
}

/// `U*_ε = U_ε ∖ {ε}`.
pub fn u_star(ctx: &WordCtx, cache: &ClosureCache, a: &Ancestry) -> Vec<Ancestry> {
    upper_set(ctx, cache, a).into_iter().filter(|b| b != a).collect()
}

/// `(U⁻_ε, U⁺_ε)`.
pub fn u_pm(ctx: &WordCtx, cache: &ClosureCache, a: &Ancestry) -> Result<(Vec<Ancestry>, Vec<Ancestry>)> {
    u_pm_from(ctx, a, &u_star(ctx, cache, a))
}

/// `(U⁻_ε, U⁺_ε)` from a precomputed `U*_ε`.
pub fn u_pm_from(ctx: &WordCtx, a: &Ancestry, star: &[Ancestry]) -> Result<(Vec<Ancestry>, Vec<Ancestry>)> {
    let kb = a
        .eps()
        .iter()
        .rposition(|&e| e == -2)
        .map(|p| p + 1)
        .ok_or_else(|| Error::InvalidAncestry("dimension 0 has no U±".into()))?;
    let v = a.trace(ctx).varrho;
    let minus = v[kb - 1];
    let plus = minus.mul_hat(ctx.letter(kb));
    let (mut um, mut up) = (Vec::new(), Vec::new());
    for b in star {
        let w = b.trace(ctx).varrho;
        if w[..kb] != v[..kb] {
            continue;
        }
        if w[kb] == minus {
            um.push(b.clone());
        } else if w[kb] == plus {
            up.push(b.clone());
        }
    }
    Ok((um, up))
}

/// Hasse diagram of `⪯` restricted to `cells` (edges point from a cell to its covering faces).
pub fn hasse_dot(ctx: &WordCtx, cache: &ClosureCache, cells: &[Ancestry]) -> String {
    let index: HashMap<&Ancestry, usize> = cells.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let uppers: Vec<Vec<usize>> = cells
        .iter()
        .map(|a| u_star(ctx, cache, a).iter().filter_map(|b| index.get(b).copied()).collect())
        .collect();
    let mut s = String::from("digraph ancestries {\n  rankdir=TB;\n");
    let top = cells.iter().map(|a| a.dim()).max().unwrap_or(0);
    for d in (0..=top).rev() {
        let _ = write!(s, "  {{ rank=same;");
        for (i, a) in cells.iter().enumerate().filter(|(_, a)| a.dim() == d) {
            let _ = write!(s, " c{i} [label=\"{a}\"];");
        }
        s.push_str(" }\n");
    }
    for (i, up) in uppers.iter().enumerate() {
        for &j in up {
            let covered = up.iter().any(|&m| m != j && uppers[m].contains(&j));
            if !covered {
                let _ = writeln!(s, "  c{i} -> c{j};");
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Elements of `B̃⁺` below `z` whose permutation part is `τ`.
pub fn closure_layer(cache: &ClosureCache, z: &Lifted, tau: &Permutation) -> Vec<Quat> {
    let mut v: Vec<Quat> =
        cache.get(&z.perm).iter().filter(|w| w.perm == *tau).map(|w| w.q.mul(z.q)).collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ancestry::{ancestries, Ancestry};

    fn ctx(w: &str, n: usize) -> WordCtx {
        WordCtx::new(Word::parse(w, Some(n)).unwrap()).unwrap()
    }

    #[test]
    fn closure_of_one_and_generator() {
        assert_eq!(cell_closure(&GroupElem::one(2)), vec![GroupElem::one(2)]);
        let mut want = vec![GroupElem::one(2), GroupElem::acute_gen(2, 1), GroupElem::hat(2, 1)];
        want.sort();
        assert_eq!(cell_closure(&GroupElem::acute_gen(2, 1)), want);
    }

    #[test]
    fn dim_one_upper_set() {
        let c = ctx("a1 a2 a1", 2);
        let cache = ClosureCache::new();
        let a = Ancestry::parse(&c, "(-2,+1,+2)").unwrap();
        let u: Vec<String> = upper_set(&c, &cache, &a).iter().map(|b| b.to_string()).collect();
        assert_eq!(u.len(), 3);
        assert!(u.contains(&"(-1,+1,+1)".to_string()));
        assert!(u.contains(&"(+1,-1,-1)".to_string()));
        let (um, up) = u_pm(&c, &cache, &a).unwrap();
        assert_eq!((um.len(), up.len()), (1, 1));
    }

    #[test]
    fn lifted_arc_limits() {
        let cache = ClosureCache::new();
        let z = Lifted::one(3);
        for i in 1..=3 {
            assert!(cache.leq(&z, &z.mul_acute(i)));
            assert!(cache.leq(&z.mul_hat(i), &z.mul_acute(i)));
            assert!(!cache.leq(&z.mul_acute(i), &z));
        }
    }

    #[test]
    fn sign_vector_is_above() {
        let c = ctx("a1 a2 a1 a3 a2 a1", 3);
        let cache = ClosureCache::new();
        for a in ancestries(&c).into_iter().filter(|a| a.dim() > 0) {
            let s = Ancestry::new(&c, a.sign_vector()).unwrap();
            assert!(ancestry_leq(&c, &cache, &a, &s).unwrap(), "{a}");
        }
    }
}
