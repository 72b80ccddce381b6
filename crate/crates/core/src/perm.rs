//! Permutations of `S_{n+1}`, reduced words and wiring diagrams.
//!
//! Points are 1-indexed in every public signature and 0-indexed in storage.
//! Composition is left to right: `i^(στ) = (i^σ)^τ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::UnionFind;

/// Largest number of points a [`Permutation`] can act on.
pub const MAX_POINTS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    img: [u8; MAX_POINTS],
}

impl Permutation {
    pub fn identity(points: usize) -> Self {
        assert!((1..=MAX_POINTS).contains(&points), "unsupported number of points {points}");
        let mut img = [0u8; MAX_POINTS];
        for (i, v) in img.iter_mut().enumerate().take(points) {
            *v = i as u8;
        }
        Self { len: points as u8, img }
    }

    /// The top permutation `η ∈ S_{n+1}`, `i ↦ n + 2 − i`.
    pub fn top(n: usize) -> Self {
        let mut p = Self::identity(n + 1);
        for i in 0..=n {
            p.img[i] = (n - i) as u8;
        }
        p
    }

    /// Builds from 1-indexed one-line notation.
    pub fn from_oneline(values: &[usize]) -> Result<Self> {
        let m = values.len();
        if m == 0 || m > MAX_POINTS {
            return Err(Error::Parse(format!("permutation of {m} points is not supported")));
        }
        let mut seen = [false; MAX_POINTS];
        let mut img = [0u8; MAX_POINTS];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::Parse(format!("{values:?} is not a permutation")));
            }
            seen[v - 1] = true;
            img[i] = (v - 1) as u8;
        }
        Ok(Self { len: m as u8, img })
    }

    /// Parses `"563412"`, or comma/space separated values for more than nine points.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') || s.contains(' ') {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad value {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
                .collect::<Result<_>>()?
        };
        Self::from_oneline(&values)
    }

    /// Number of points, `n + 1`.
    pub fn points(&self) -> usize {
        self.len as usize
    }

    pub fn n(&self) -> usize {
        self.len as usize - 1
    }

    /// `i^σ`, 1-indexed.
    pub fn image(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    /// Preimage of `v`, 1-indexed.
    pub fn preimage(&self, v: usize) -> usize {
        self.img[..self.points()].iter().position(|&x| x as usize == v - 1).unwrap() + 1
    }

    pub fn oneline(&self) -> Vec<usize> {
        self.img[..self.points()].iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img[..self.points()].iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self · other`: apply `self` first.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        let mut out = *self;
        for i in 0..self.points() {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for i in 0..self.points() {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    /// Right multiplication by `a_i`: swaps the values `i` and `i+1`.
    pub fn mul_gen(&self, i: usize) -> Self {
        debug_assert!(i >= 1 && i < self.points());
        let mut out = *self;
        for v in out.img[..self.points()].iter_mut() {
            if *v as usize == i - 1 {
                *v = i as u8;
            } else if *v as usize == i {
                *v = (i - 1) as u8;
            }
        }
        out
    }

    /// Left multiplication by `a_i`: swaps the positions `i` and `i+1`.
    pub fn gen_mul(&self, i: usize) -> Self {
        let mut out = *self;
        out.img.swap(i - 1, i);
        out
    }

    /// True when `σ a_i > σ`.
    pub fn is_ascent(&self, i: usize) -> bool {
        let (mut pi, mut pj) = (0, 0);
        for (pos, &v) in self.img[..self.points()].iter().enumerate() {
            if v as usize == i - 1 {
                pi = pos;
            } else if v as usize == i {
                pj = pos;
            }
        }
        pi < pj
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.points()).filter(|&i| !self.is_ascent(i)).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (1..self.points()).filter(|&i| self.img[i - 1] > self.img[i]).collect()
    }

    pub fn inv(&self) -> usize {
        let m = self.points();
        let mut c = 0;
        for i in 0..m {
            for j in i + 1..m {
                if self.img[i] > self.img[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `Inv(σ)` as 1-indexed pairs in lexicographic order.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let m = self.points();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if self.img[i] > self.img[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Strong Bruhat order by rank-matrix dominance.
    pub fn bruhat_leq(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        let m = self.points();
        for i in 0..m {
            for j in 0..m {
                let count = |p: &Self| (0..=i).filter(|&a| p.img[a] as usize >= j).count();
                if count(self) > count(other) {
                    return false;
                }
            }
        }
        true
    }

    /// `Block(σ)`: the `j ∈ ⟦n⟧` with `i ≤ j ⇒ i^σ ≤ j`.
    pub fn blocks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut max = 0usize;
        for j in 0..self.n() {
            max = max.max(self.img[j] as usize);
            if max == j {
                out.push(j + 1);
            }
        }
        out
    }

    pub fn cycles(&self) -> Partition {
        let m = self.points();
        let mut uf = UnionFind::new(m);
        for i in 0..m {
            uf.union(i, self.img[i] as usize);
        }
        Partition::from_union_find(&mut uf)
    }

    /// `nc(σ)`, fixed points included.
    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    pub fn oplus(&self, other: &Self) -> Self {
        let mut v = self.oneline();
        v.extend(other.oneline().into_iter().map(|x| x + self.points()));
        Self::from_oneline(&v).expect("oplus of permutations")
    }

    /// Maximal factorization `σ = σ_0 ⊕ ⋯ ⊕ σ_b` into block-free factors.
    pub fn decompose_blocks(&self) -> Vec<Self> {
        let mut cuts = self.blocks();
        cuts.push(self.points());
        let line = self.oneline();
        let mut out = Vec::new();
        let mut start = 0;
        for c in cuts {
            let part: Vec<usize> = line[start..c].iter().map(|x| x - start).collect();
            out.push(Self::from_oneline(&part).unwrap());
            start = c;
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = self.oneline();
        if self.points() <= 9 {
            for v in line {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = line.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A word `a_{i_1} ⋯ a_{i_ℓ}` in the generators of `S_{n+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(n: usize, letters: &[usize]) -> Result<Self> {
        if n + 1 > MAX_POINTS {
            return Err(Error::TooLarge { n, max: MAX_POINTS - 1 });
        }
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::Parse(format!("letter a{bad} out of range for n = {n}")));
        }
        Ok(Self { n, letters: letters.iter().map(|&i| i as u8).collect() })
    }

    /// Parses `"a2 a1 a3 a2"` (spaces optional). Without `n`, uses the largest letter.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() || c == ',' {
                continue;
            }
            if c != 'a' {
                return Err(Error::Parse(format!("expected 'a' in word {s:?}")));
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let i: usize = digits.parse().map_err(|_| Error::Parse(format!("missing index in word {s:?}")))?;
            letters.push(i);
        }
        let n = n.unwrap_or_else(|| letters.iter().copied().max().unwrap_or(1));
        Self::new(n, &letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter `i_k`, with `k` 1-indexed.
    pub fn letter(&self, k: usize) -> usize {
        self.letters[k - 1] as usize
    }

    pub fn letters(&self) -> Vec<usize> {
        self.letters.iter().map(|&i| i as usize).collect()
    }

    pub fn product(&self) -> Permutation {
        self.letters.iter().fold(Permutation::identity(self.n + 1), |p, &i| p.mul_gen(i as usize))
    }

    pub fn is_reduced(&self) -> bool {
        let mut p = Permutation::identity(self.n + 1);
        for &i in &self.letters {
            if !p.is_ascent(i as usize) {
                return false;
            }
            p = p.mul_gen(i as usize);
        }
        true
    }

    pub fn require_reduced(&self) -> Result<()> {
        if self.is_reduced() {
            Ok(())
        } else {
            Err(Error::NotReduced { word: self.to_string() })
        }
    }

    /// The pair of wires crossing at each position.
    pub fn crossing_wires(&self) -> Result<Vec<(usize, usize)>> {
        self.require_reduced()?;
        let mut p = Permutation::identity(self.n + 1);
        let mut out = Vec::with_capacity(self.len());
        for &i in &self.letters {
            let i = i as usize;
            let (a, b) = (p.preimage(i), p.preimage(i + 1));
            out.push((a.min(b), a.max(b)));
            p = p.mul_gen(i);
        }
        Ok(out)
    }

    /// Words one Coxeter move away.
    pub fn coxeter_neighbors(&self) -> Vec<Word> {
        let l = &self.letters;
        let mut out = Vec::new();
        for k in 0..l.len().saturating_sub(1) {
            if l[k].abs_diff(l[k + 1]) > 1 {
                let mut v = l.clone();
                v.swap(k, k + 1);
                out.push(Word { n: self.n, letters: v });
            }
            if k + 2 < l.len() && l[k] == l[k + 2] && l[k].abs_diff(l[k + 1]) == 1 {
                let mut v = l.clone();
                v[k] = l[k + 1];
                v[k + 1] = l[k];
                v[k + 2] = l[k + 1];
                out.push(Word { n: self.n, letters: v });
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|i| format!("a{i}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All reduced words of `σ`, by peeling right descents.
pub fn reduced_words(sigma: &Permutation) -> Vec<Word> {
    fn rec(p: &Permutation, suffix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if p.is_identity() {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for i in p.right_descents() {
            suffix.push(i as u8);
            rec(&p.mul_gen(i), suffix, out);
            suffix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(sigma, &mut Vec::new(), &mut raw);
    raw.sort();
    raw.into_iter().map(|letters| Word { n: sigma.n(), letters }).collect()
}

/// The lexicographically smallest reduced word; for `η` this is `a1 a2 a1 a3 a2 a1 ⋯`.
pub fn canonical_word(sigma: &Permutation) -> Word {
    let mut p = *sigma;
    let mut letters = Vec::with_capacity(p.inv());
    while let Some(&i) = p.left_descents().first() {
        letters.push(i as u8);
        p = p.gen_mul(i);
    }
    Word { n: sigma.n(), letters }
}

/// A set partition of `⟦n+1⟧`, blocks sorted by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.iter().enumerate().any(|(i, &v)| v != i + 1) {
            return Err(Error::Parse(format!("{blocks:?} is not a partition of 1..={}", all.len())));
        }
        Ok(Self { blocks })
    }

    pub(crate) fn from_union_find(uf: &mut UnionFind) -> Self {
        let (labels, k) = uf.labels();
        let mut blocks = vec![Vec::new(); k];
        for (x, l) in labels.into_iter().enumerate() {
            blocks[l].push(x + 1);
        }
        Self::new(blocks).unwrap()
    }

    /// Parses `"{1,5}{2,4}{3}"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for chunk in s.split('}') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('{').ok_or_else(|| Error::Parse(format!("bad partition {s:?}")))?;
            let block = body
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn points(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let s: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            write!(f, "{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Every permutation of `points` points, in lexicographic one-line order.
pub fn all_permutations(points: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut line: Vec<usize> = (1..=points).collect();
    loop {
        out.push(Permutation::from_oneline(&line).unwrap());
        let Some(i) = (0..points.saturating_sub(1)).rev().find(|&i| line[i] < line[i + 1]) else {
            break;
        };
        let j = (i + 1..points).rev().find(|&j| line[j] > line[i]).unwrap();
        line.swap(i, j);
        line[i + 1..].reverse();
    }
    out
}
