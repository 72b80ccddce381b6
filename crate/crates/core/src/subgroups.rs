//! Subgroups `H_X ≤ Quat_{n+1}` attached to partitions, and the sign action of `ℰ_n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::clifford::{GroupElem, Quat};
use crate::perm::{Partition, Permutation};

#[derive(Clone, PartialEq, Eq)]
pub struct QuatSubgroup {
    n: usize,
    members: BTreeSet<Quat>,
}

impl QuatSubgroup {
    /// `H_X`: lifts of the diagonal sign matrices whose product over every block is `1`.
    pub fn from_partition(n: usize, x: &Partition) -> Self {
        assert_eq!(x.points(), n + 1, "partition size");
        let mut members = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let diag = Quat::new(mask, false).so(n);
            let ok = x.blocks().iter().all(|b| b.iter().filter(|&&j| diag.entry(j - 1).1 < 0).count() % 2 == 0);
            if ok {
                members.insert(Quat::new(mask, false));
                members.insert(Quat::new(mask, true));
            }
        }
        Self { n, members }
    }

    /// `H_σ = H_{X_σ}` for the cycle partition.
    pub fn h_sigma(sigma: &Permutation) -> Self {
        Self::from_partition(sigma.n(), &sigma.cycles())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: Quat) -> bool {
        self.members.contains(&q)
    }

    pub fn members(&self) -> impl Iterator<Item = Quat> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_closed(&self) -> bool {
        self.members.iter().all(|a| self.contains(a.inv()) && self.members.iter().all(|b| self.contains(a.mul(*b))))
    }

    /// A minimal generating list, chosen greedily in member order (`−1` first when needed).
    pub fn generators(&self) -> Vec<Quat> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<Quat> = [Quat::ONE].into();
        let order = std::iter::once(Quat::new(0, true)).chain(self.members.iter().copied());
        for g in order {
            if span.contains(&g) || !self.contains(g) {
                continue;
            }
            gens.push(g);
            loop {
                let add: Vec<Quat> = span
                    .iter()
                    .flat_map(|a| gens.iter().map(move |b| a.mul(*b)))
                    .filter(|x| !span.contains(x))
                    .collect();
                if add.is_empty() {
                    break;
                }
                span.extend(add);
            }
        }
        gens
    }
}

impl fmt::Display for QuatSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos: Vec<String> =
            self.members.iter().filter(|q| !q.neg).map(|q| format!("±{}", Quat::new(q.mask, false))).collect();
        write!(f, "{{{}}}", pos.join(", "))
    }
}

impl fmt::Debug for QuatSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuatSubgroup{self}")
    }
}

/// Basis of the F₂-nullspace of the rows (as bit-vectors over `n` variables).
fn nullspace(rows: &[u32], n: usize) -> Vec<u32> {
    let mut rows: Vec<u32> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i] >> col & 1 == 1 {
                rows[i] ^= rows[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = 1u32 << free;
        for (i, &pc) in pivots.iter().enumerate() {
            if rows[i] >> free & 1 == 1 {
                v |= 1 << pc;
            }
        }
        basis.push(v);
    }
    basis
}

/// `ℰ_z = {E : z^E = z}`, as sign masks (bit `i − 1` set when `E_i = −1`).
pub fn isotropy_e(z: &GroupElem) -> Vec<u32> {
    let rows: Vec<u32> = z.support().map(|(m, _)| m).collect();
    let basis = nullspace(&rows, z.n());
    let mut out = Vec::with_capacity(1 << basis.len());
    for sel in 0u32..(1 << basis.len()) {
        let mut e = 0;
        for (b, v) in basis.iter().enumerate() {
            if sel >> b & 1 == 1 {
                e ^= v;
            }
        }
        out.push(e);
    }
    out.sort_unstable();
    out
}

/// The `ℰ_n`-orbit of `z`, sorted.
pub fn orbit_e(z: &GroupElem) -> Vec<GroupElem> {
    let mut out: Vec<GroupElem> = (0u32..(1 << z.n())).map(|e| z.act_e(e)).collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::acute;
    use crate::perm::all_permutations;

    #[test]
    fn isotropy_of_acute_sigma_is_near_cycle_count() {
        for letters in 2..=5 {
            for s in all_permutations(letters) {
                let z = acute(&s);
                let iso = isotropy_e(&z).len();
                assert!(iso.is_power_of_two());
                let ct = iso.trailing_zeros() as usize;
                let c = s.num_cycles();
                assert!(c >= ct && ct + 2 >= c, "{s}: c = {c}, c~ = {ct}");
                assert_eq!(orbit_e(&z).len() * iso, 1 << z.n());
            }
        }
    }

    #[test]
    fn h_sigma_of_53421() {
        let s = Permutation::parse("53421").unwrap();
        let h = QuatSubgroup::h_sigma(&s);
        assert_eq!(h.len(), 16);
        assert_eq!(h.to_string(), "{±1, ±a2, ±a3, ±a2a3, ±a1a4, ±a1a2a4, ±a1a3a4, ±a1a2a3a4}");
        assert!(h.is_closed());
    }

    #[test]
    fn extreme_partitions() {
        let n = 3;
        let whole = QuatSubgroup::from_partition(n, &Partition::parse("{1,2,3,4}").unwrap());
        assert_eq!(whole.len(), 16);
        let single = QuatSubgroup::from_partition(n, &Partition::parse("{1}{2}{3}{4}").unwrap());
        assert_eq!(single.len(), 2);
        assert_eq!(single.generators(), vec![Quat::new(0, true)]);
    }

    #[test]
    fn orbit_of_acute_eta_s3() {
        let z = acute(&Permutation::top(2));
        let orbit: Vec<String> = orbit_e(&z).iter().map(|g| g.to_string()).collect();
        assert_eq!(orbit.len(), 4);
        for s in ["(a1+a2)/sqrt2", "(-a1+a2)/sqrt2", "(a1-a2)/sqrt2", "(-a1-a2)/sqrt2"] {
            assert!(orbit.contains(&s.to_string()), "{s}");
        }
        assert_eq!(isotropy_e(&GroupElem::one(3)).len(), 8);
    }
}
