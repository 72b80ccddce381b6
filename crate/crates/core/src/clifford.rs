//! Exact arithmetic in the even Clifford algebra `Cliff⁰_{n+1}` with generators
//! `â_1, …, â_n`, `â_i² = −1`, where `â_i` and `â_j` anticommute iff `|i − j| = 1`.
//!
//! Monomials `e_S` are bitmasks: bit `i − 1` stands for `â_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{canonical_word, Permutation};

/// Largest `n` for [`GroupElem`] (its support must fit in 64 monomials).
pub const MAX_GROUP_N: usize = 6;

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

/// `(a + b√2) / 2^f`, normalized so that `f = 0` or one of `a`, `b` is odd.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: i64,
    b: i64,
    f: u32,
}

fn ck(v: Option<i64>) -> i64 {
    v.expect("Scalar overflow")
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { a: 0, b: 0, f: 0 };
    pub const ONE: Scalar = Scalar { a: 1, b: 0, f: 0 };

    pub fn new(a: i64, b: i64, f: u32) -> Self {
        let (mut a, mut b, mut f) = (a, b, f);
        if a == 0 && b == 0 {
            return Self::ZERO;
        }
        while f > 0 && a % 2 == 0 && b % 2 == 0 {
            a /= 2;
            b /= 2;
            f -= 1;
        }
        Self { a, b, f }
    }

    pub fn int(a: i64) -> Self {
        Self::new(a, 0, 0)
    }

    pub fn sqrt2() -> Self {
        Self::new(0, 1, 0)
    }

    /// `(√2)^k` for any integer `k`.
    pub fn pow_sqrt2(k: i32) -> Self {
        let h = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let (a, b): (i64, i64) = if odd { (0, 1) } else { (1, 0) };
        if h >= 0 {
            Self::new(ck(a.checked_shl(h as u32)), ck(b.checked_shl(h as u32)), 0)
        } else {
            Self::new(a, b, (-h) as u32)
        }
    }

    pub fn parts(&self) -> (i64, i64, u32) {
        (self.a, self.b, self.f)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> i32 {
        let (a, b) = (self.a as i128, self.b as i128);
        let sa = a.signum();
        let sb = b.signum();
        if sa == 0 || sb == 0 || sa == sb {
            return (sa + sb).signum() as i32;
        }
        let c = (a * a - 2 * b * b).signum();
        (c * sa) as i32
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * std::f64::consts::SQRT_2) / 2f64.powi(self.f as i32)
    }

    /// Integer value, when the scalar is one.
    pub fn as_integer(&self) -> Option<i64> {
        (self.b == 0 && self.f == 0).then_some(self.a)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -*self
        } else {
            *self
        }
    }

    /// Multiplicative inverse; exists when `a² − 2b²` is `±2^m`.
    pub fn inverse(&self) -> Option<Self> {
        let (a, b) = (self.a as i128, self.b as i128);
        let norm = a * a - 2 * b * b;
        if norm == 0 || !norm.unsigned_abs().is_power_of_two() {
            return None;
        }
        let m = norm.unsigned_abs().trailing_zeros();
        let s = norm.signum() as i64;
        // (a − b√2)/norm · 2^f
        let base = Self::new(s * self.a, -s * self.b, m);
        Some(base * Self::new(1i64.checked_shl(self.f)?, 0, 0))
    }

    fn shifted(&self, g: u32) -> (i64, i64) {
        let s = g - self.f;
        (ck(self.a.checked_mul(1i64.checked_shl(s).expect("Scalar overflow"))), ck(self.b.checked_mul(1i64 << s)))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        let g = self.f.max(o.f);
        let (a1, b1) = self.shifted(g);
        let (a2, b2) = o.shifted(g);
        Scalar::new(ck(a1.checked_add(a2)), ck(b1.checked_add(b2)), g)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, f: self.f }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        let a = ck(ck(self.a.checked_mul(o.a)).checked_add(ck(ck(self.b.checked_mul(o.b)).checked_mul(2))));
        let b = ck(ck(self.a.checked_mul(o.b)).checked_add(ck(self.b.checked_mul(o.a))));
        Scalar::new(a, b, self.f + o.f)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a, self.b) {
            (0, 0) => return write!(f, "0"),
            (a, 0) => a.to_string(),
            (0, b) => sqrt2_term(b),
            (a, b) => {
                let t = sqrt2_term(b);
                if b < 0 {
                    format!("{a}{t}")
                } else {
                    format!("{a}+{t}")
                }
            }
        };
        if self.f == 0 {
            write!(f, "{num}")
        } else if self.a != 0 && self.b != 0 {
            write!(f, "({num})/{}", 1u64 << self.f)
        } else {
            write!(f, "{num}/{}", 1u64 << self.f)
        }
    }
}

fn sqrt2_term(b: i64) -> String {
    match b {
        1 => "sqrt2".into(),
        -1 => "-sqrt2".into(),
        b => format!("{b}sqrt2"),
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

/// `e_S · e_T = sign · e_{S △ T}`.
#[inline]
pub fn monomial_mul(s: u32, t: u32) -> (i8, u32) {
    let flips = (t & (s >> 1)).count_ones() + (s & t).count_ones();
    (if flips.is_multiple_of(2) { 1 } else { -1 }, s ^ t)
}

/// Whether `e_S² = −1`.
#[inline]
fn square_is_negative(s: u32) -> bool {
    monomial_mul(s, s).0 < 0
}

pub fn monomial_label(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut s = String::new();
    for i in 0..32 {
        if mask >> i & 1 == 1 {
            s.push_str(&format!("a{}", i + 1));
        }
    }
    s
}

// ---------------------------------------------------------------------------
// CliffElem
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffElem {
    n: usize,
    terms: BTreeMap<u32, Scalar>,
}

impl CliffElem {
    pub fn zero(n: usize) -> Self {
        assert!(n < 32, "n = {n} too large for bitmask monomials");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::monomial(n, 0, c)
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Scalar::ONE)
    }

    pub fn monomial(n: usize, mask: u32, c: Scalar) -> Self {
        let mut z = Self::zero(n);
        assert!(mask >> n == 0, "monomial outside Cliff⁰_{}", n + 1);
        if !c.is_zero() {
            z.terms.insert(mask, c);
        }
        z
    }

    /// `â_i`.
    pub fn hat(n: usize, i: usize) -> Self {
        Self::monomial(n, 1 << (i - 1), Scalar::ONE)
    }

    /// `á_i = (1 + â_i)/√2`.
    pub fn acute_gen(n: usize, i: usize) -> Self {
        let c = Scalar::pow_sqrt2(-1);
        &Self::scalar(n, c) + &Self::monomial(n, 1 << (i - 1), c)
    }

    /// `à_i = (1 − â_i)/√2`.
    pub fn grave_gen(n: usize, i: usize) -> Self {
        let c = Scalar::pow_sqrt2(-1);
        &Self::scalar(n, c) + &Self::monomial(n, 1 << (i - 1), -c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Scalar)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.terms.get(&mask).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, c: Scalar) {
        let v = self.coeff(mask) + c;
        if v.is_zero() {
            self.terms.remove(&mask);
        } else {
            self.terms.insert(mask, v);
        }
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let mut z = Self::zero(self.n);
        for (m, v) in self.terms() {
            z.add_term(m, v * c);
        }
        z
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::SizeMismatch { expected: self.n, found: o.n });
        }
        let mut z = Self::zero(self.n);
        for (s, x) in self.terms() {
            for (t, y) in o.terms() {
                let (sg, m) = monomial_mul(s, t);
                let v = x * y;
                z.add_term(m, if sg < 0 { -v } else { v });
            }
        }
        Ok(z)
    }

    /// `Re(z)`, the coefficient of `1`.
    pub fn re(&self) -> Scalar {
        self.coeff(0)
    }

    /// Inner product making the monomials orthonormal.
    pub fn inner(&self, o: &Self) -> Result<Scalar> {
        if self.n != o.n {
            return Err(Error::SizeMismatch { expected: self.n, found: o.n });
        }
        Ok(self.terms().fold(Scalar::ZERO, |acc, (m, c)| acc + c * o.coeff(m)))
    }

    /// `â_i ↦ E_i â_i`; `e` has bit `i − 1` set when `E_i = −1`.
    pub fn act_e(&self, e: u32) -> Self {
        let mut z = Self::zero(self.n);
        for (m, c) in self.terms() {
            z.add_term(m, if (m & e).count_ones() % 2 == 1 { -c } else { c });
        }
        z
    }

    /// Clifford conjugation, the inverse on the spin group.
    pub fn conjugate(&self) -> Self {
        let mut z = Self::zero(self.n);
        for (m, c) in self.terms() {
            z.add_term(m, if square_is_negative(m) { -c } else { c });
        }
        z
    }

    /// Parses expressions such as `"(-1+a2+a1a3-a1a2a3)/2"` or `"(1-a1a2)/sqrt2"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Self::parse_with(s, n, &|_| None)
    }

    /// Like [`CliffElem::parse`], resolving extra identifiers through `names`.
    pub fn parse_with(s: &str, n: usize, names: &dyn Fn(&str) -> Option<CliffElem>) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0, n, names };
        let v = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }

    /// Common magnitude `2^{-k/2}` of all coefficients, when there is one.
    fn uniform_exponent(&self) -> Option<i32> {
        let mut mag = None;
        for (_, c) in self.terms() {
            let c = c.abs();
            match mag {
                None => mag = Some(c),
                Some(m) if m != c => return None,
                _ => {}
            }
        }
        let m = mag?;
        (0..64).find(|&k| Scalar::pow_sqrt2(-k) == m)
    }
}

impl Add for &CliffElem {
    type Output = CliffElem;
    fn add(self, o: &CliffElem) -> CliffElem {
        assert_eq!(self.n, o.n, "size mismatch");
        let mut z = self.clone();
        for (m, c) in o.terms() {
            z.add_term(m, c);
        }
        z
    }
}

impl Sub for &CliffElem {
    type Output = CliffElem;
    fn sub(self, o: &CliffElem) -> CliffElem {
        self + &(-o)
    }
}

impl Neg for &CliffElem {
    type Output = CliffElem;
    fn neg(self) -> CliffElem {
        self.scale(Scalar::int(-1))
    }
}

impl Mul for &CliffElem {
    type Output = CliffElem;
    fn mul(self, o: &CliffElem) -> CliffElem {
        self.checked_mul(o).expect("size mismatch")
    }
}

fn denominator_label(k: i32) -> String {
    let pow = 1u64 << (k / 2);
    match (k % 2, pow) {
        (0, p) => p.to_string(),
        (_, 1) => "sqrt2".into(),
        (_, p) => format!("{p}sqrt2"),
    }
}

impl fmt::Display for CliffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(k) = self.uniform_exponent() {
            let mut body = String::new();
            for (m, c) in self.terms() {
                let neg = c.signum() < 0;
                if neg {
                    body.push('-');
                } else if !body.is_empty() {
                    body.push('+');
                }
                body.push_str(&monomial_label(m));
            }
            return if k == 0 {
                write!(f, "{body}")
            } else if self.terms.len() == 1 {
                write!(f, "{body}/{}", denominator_label(k))
            } else {
                write!(f, "({body})/{}", denominator_label(k))
            };
        }
        let mut body = String::new();
        for (m, c) in self.terms() {
            let cs = c.to_string();
            let compound = c.parts().0 != 0 && c.parts().1 != 0 && c.parts().2 == 0;
            let cs = if compound { format!("({cs})") } else { cs };
            let term = match (m, cs.as_str()) {
                (0, _) => cs.clone(),
                (_, "1") => monomial_label(m),
                (_, "-1") => format!("-{}", monomial_label(m)),
                _ => format!("{cs}*{}", monomial_label(m)),
            };
            if !body.is_empty() && !term.starts_with('-') {
                body.push('+');
            }
            body.push_str(&term);
        }
        write!(f, "{body}")
    }
}

impl fmt::Debug for CliffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffElem({self})")
    }
}

impl Serialize for CliffElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Sqrt2,
    Mono(Vec<usize>),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '√' => {
                if chars.get(i + 1) != Some(&'2') {
                    return Err(Error::Parse(format!("only √2 is supported in {s:?}")));
                }
                out.push(Tok::Sqrt2);
                i += 2;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let v: String = chars[start..i].iter().collect();
                out.push(Tok::Num(v.parse().map_err(|_| Error::Parse(format!("bad number {v}")))?));
            }
            'a' if chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                let mut idx = Vec::new();
                while i < chars.len() && chars[i] == 'a' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: String = chars[start..i].iter().collect();
                    idx.push(v.parse().unwrap());
                }
                out.push(Tok::Mono(idx));
            }
            l if l.is_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "sqrt2" {
                    out.push(Tok::Sqrt2);
                } else if word == "sqrt" && chars.get(i) == Some(&'(') && chars.get(i + 1) == Some(&'2') && chars.get(i + 2) == Some(&')') {
                    out.push(Tok::Sqrt2);
                    i += 3;
                } else {
                    out.push(Tok::Name(word));
                }
            }
            _ => return Err(Error::Parse(format!("unexpected {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    n: usize,
    names: &'a dyn Fn(&str) -> Option<CliffElem>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<CliffElem> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CliffElem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let c = match d.terms.len() {
                        1 if d.terms.contains_key(&0) => d.coeff(0),
                        _ => return Err(Error::Parse("division by a non-scalar".into())),
                    };
                    let inv = c.inverse().ok_or_else(|| Error::Parse(format!("{c} is not invertible")))?;
                    acc = acc.scale(inv);
                }
                Some(Tok::Num(_) | Tok::Sqrt2 | Tok::Mono(_) | Tok::Name(_) | Tok::LParen) => {
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CliffElem> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(CliffElem::scalar(self.n, Scalar::int(v))),
            Tok::Sqrt2 => Ok(CliffElem::scalar(self.n, Scalar::sqrt2())),
            Tok::Mono(idx) => {
                let mut z = CliffElem::one(self.n);
                for i in idx {
                    if i == 0 || i > self.n {
                        return Err(Error::Parse(format!("a{i} out of range for n = {}", self.n)));
                    }
                    z = &z * &CliffElem::hat(self.n, i);
                }
                Ok(z)
            }
            Tok::Name(name) => (self.names)(&name).ok_or_else(|| Error::Parse(format!("unknown name {name:?}"))),
            Tok::Minus => Ok(-&self.factor()?),
            Tok::LParen => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Quat
// ---------------------------------------------------------------------------

/// A signed monomial `±e_S`, an element of `Quat_{n+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Quat {
    pub mask: u32,
    pub neg: bool,
}

impl Quat {
    pub const ONE: Quat = Quat { mask: 0, neg: false };

    pub fn new(mask: u32, neg: bool) -> Self {
        Self { mask, neg }
    }

    pub fn hat(i: usize) -> Self {
        Self { mask: 1 << (i - 1), neg: false }
    }

    pub fn negate(self) -> Self {
        Self { mask: self.mask, neg: !self.neg }
    }

    pub fn mul(self, o: Quat) -> Quat {
        let (s, m) = monomial_mul(self.mask, o.mask);
        Quat { mask: m, neg: self.neg ^ o.neg ^ (s < 0) }
    }

    pub fn inv(self) -> Quat {
        Quat { mask: self.mask, neg: self.neg ^ square_is_negative(self.mask) }
    }

    /// `[q₀, q₁] = q₀⁻¹q₁⁻¹q₀q₁ ∈ {±1}`.
    pub fn commutator(self, o: Quat) -> i8 {
        let a = monomial_mul(self.mask, o.mask).0;
        let b = monomial_mul(o.mask, self.mask).0;
        if a == b {
            1
        } else {
            -1
        }
    }

    /// `[â_i, q]` via the parity of the neighbours `i ± 1` in the support.
    #[inline]
    pub fn hat_commutator(self, i: usize) -> i8 {
        let nb = ((self.mask >> i) & 1) + if i >= 2 { (self.mask >> (i - 2)) & 1 } else { 0 };
        if nb.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `â_i · q`.
    #[inline]
    pub fn hat_mul(self, i: usize) -> Quat {
        Quat::hat(i).mul(self)
    }

    /// `á_i⁻¹ q á_i`.
    #[inline]
    pub fn conj_acute(self, i: usize) -> Quat {
        if self.hat_commutator(i) > 0 {
            self
        } else {
            self.hat_mul(i).negate()
        }
    }

    /// `á_i q á_i`.
    #[inline]
    pub fn acute_sandwich(self, i: usize) -> Quat {
        if self.hat_commutator(i) > 0 {
            self.hat_mul(i)
        } else {
            self
        }
    }

    /// Dense index `2·mask + neg`.
    pub fn index(self) -> usize {
        (self.mask as usize) << 1 | self.neg as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self { mask: (i >> 1) as u32, neg: i & 1 == 1 }
    }

    /// All `2^{n+1}` elements in index order.
    pub fn all(n: usize) -> Vec<Quat> {
        (0..(2usize << n)).map(Quat::from_index).collect()
    }

    /// `Π(q)`, a diagonal sign matrix.
    pub fn so(self, n: usize) -> SignedPerm {
        let mut p = SignedPerm::identity(n + 1);
        for j in 0..=n {
            let here = (self.mask >> j) & 1;
            let before = if j >= 1 { (self.mask >> (j - 1)) & 1 } else { 0 };
            if (here + before) % 2 == 1 {
                p.neg |= 1 << j;
            }
        }
        p
    }

    pub fn to_cliff(self, n: usize) -> CliffElem {
        CliffElem::monomial(n, self.mask, if self.neg { Scalar::int(-1) } else { Scalar::ONE })
    }

    pub fn label(self) -> String {
        format!("{}{}", if self.neg { "-" } else { "" }, monomial_label(self.mask))
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

// ---------------------------------------------------------------------------
// Signed permutation matrices
// ---------------------------------------------------------------------------

/// A signed permutation matrix: row `r` has entry `±1` in column `col[r]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    len: u8,
    col: [u8; 16],
    neg: u16,
}

impl SignedPerm {
    pub fn identity(points: usize) -> Self {
        let mut col = [0u8; 16];
        for (i, c) in col.iter_mut().enumerate().take(points) {
            *c = i as u8;
        }
        Self { len: points as u8, col, neg: 0 }
    }

    /// `Π(â_i)`.
    pub fn hat(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n + 1);
        p.neg = 0b11 << (i - 1);
        p
    }

    /// `Π(á_i)`, the block `[[0,−1],[1,0]]` on rows `i, i+1`.
    pub fn acute(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n + 1);
        p.col[i - 1] = i as u8;
        p.col[i] = (i - 1) as u8;
        p.neg = 1 << (i - 1);
        p
    }

    pub fn points(&self) -> usize {
        self.len as usize
    }

    /// `(col, sign)` of the nonzero entry in row `r` (0-indexed).
    pub fn entry(&self, r: usize) -> (usize, i8) {
        (self.col[r] as usize, if self.neg >> r & 1 == 1 { -1 } else { 1 })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = *self;
        out.neg = 0;
        for r in 0..self.points() {
            let c = self.col[r] as usize;
            out.col[r] = o.col[c];
            if ((self.neg >> r) ^ (o.neg >> c)) & 1 == 1 {
                out.neg |= 1 << r;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        out.neg = 0;
        for r in 0..self.points() {
            let c = self.col[r] as usize;
            out.col[c] = r as u8;
            if self.neg >> r & 1 == 1 {
                out.neg |= 1 << c;
            }
        }
        out
    }

    /// The underlying permutation, `(P_σ)_{i, i^σ} = 1`.
    pub fn permutation(&self) -> Permutation {
        let v: Vec<usize> = (0..self.points()).map(|r| self.col[r] as usize + 1).collect();
        Permutation::from_oneline(&v).unwrap()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.points()).all(|r| self.col[r] as usize == r)
    }

    pub fn det(&self) -> i32 {
        let parity = self.permutation().inv() + self.neg.count_ones() as usize;
        if parity.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Conjugation `D·M·D` with `d_1 = 1`, `d_{i+1} = d_i E_i`.
    pub fn act_e(&self, e: u32) -> Self {
        let m = self.points();
        let mut d = vec![false; m];
        for i in 1..m {
            d[i] = d[i - 1] ^ (e >> (i - 1) & 1 == 1);
        }
        let mut out = *self;
        out.neg = 0;
        for r in 0..m {
            let c = self.col[r] as usize;
            if (self.neg >> r & 1 == 1) ^ d[r] ^ d[c] {
                out.neg |= 1 << r;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let m = self.points();
        let mut a = DMatrix::zeros(m, m);
        for r in 0..m {
            let (c, s) = self.entry(r);
            a[(r, c)] = s as f64;
        }
        a
    }

    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        let m = self.points();
        (0..m)
            .map(|r| {
                let (c, s) = self.entry(r);
                (0..m).map(|j| if j == c { s } else { 0 }).collect()
            })
            .collect()
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm{:?}", self.to_rows())
    }
}

// ---------------------------------------------------------------------------
// GroupElem
// ---------------------------------------------------------------------------

/// An element of `B̃⁺_{n+1}`: all coefficients `±2^{-k/2}` on a support of size `2^k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElem {
    n: u8,
    sup: u64,
    neg: u64,
    so: SignedPerm,
}

impl GroupElem {
    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_GROUP_N, "n = {n} exceeds {MAX_GROUP_N}");
        Self { n: n as u8, sup: 1, neg: 0, so: SignedPerm::identity(n + 1) }
    }

    pub fn from_quat(n: usize, q: Quat) -> Self {
        let mut z = Self::one(n);
        z.sup = 1 << q.mask;
        z.neg = if q.neg { z.sup } else { 0 };
        z.so = q.so(n);
        z
    }

    pub fn hat(n: usize, i: usize) -> Self {
        Self::from_quat(n, Quat::hat(i))
    }

    pub fn acute_gen(n: usize, i: usize) -> Self {
        let mut z = Self::one(n);
        z.sup = 1 | 1 << (1u64 << (i - 1));
        z.so = SignedPerm::acute(n, i);
        z
    }

    pub fn grave_gen(n: usize, i: usize) -> Self {
        Self::acute_gen(n, i).inverse()
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn so(&self) -> &SignedPerm {
        &self.so
    }

    pub fn permutation(&self) -> Permutation {
        self.so.permutation()
    }

    /// Support size `2^k`; every coefficient is `±2^{-k/2}`.
    pub fn support_len(&self) -> usize {
        self.sup.count_ones() as usize
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        bits(self.sup).map(move |m| (m, self.neg >> m & 1 == 1))
    }

    fn magnitude_exponent(&self) -> i32 {
        self.support_len().trailing_zeros() as i32
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        if self.sup >> mask & 1 == 0 {
            return Scalar::ZERO;
        }
        let c = Scalar::pow_sqrt2(-self.magnitude_exponent());
        if self.neg >> mask & 1 == 1 {
            -c
        } else {
            c
        }
    }

    pub fn re(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn neg(&self) -> Self {
        Self { neg: self.neg ^ self.sup, ..*self }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "size mismatch");
        let mut acc = [0i32; 64];
        for s in bits(self.sup) {
            let cs = if self.neg >> s & 1 == 1 { -1 } else { 1 };
            for t in bits(o.sup) {
                let ct = if o.neg >> t & 1 == 1 { -1 } else { 1 };
                let (sg, m) = monomial_mul(s, t);
                acc[m as usize] += cs * ct * sg as i32;
            }
        }
        let mut sup = 0u64;
        let mut neg = 0u64;
        let mut mag = 0;
        for (m, &v) in acc.iter().enumerate() {
            if v != 0 {
                assert!(mag == 0 || mag == v.abs(), "product left B̃⁺: uneven coefficients");
                mag = v.abs();
                sup |= 1 << m;
                if v < 0 {
                    neg |= 1 << m;
                }
            }
        }
        assert!(sup.count_ones().is_power_of_two(), "product left B̃⁺: support size");
        Self { n: self.n, sup, neg, so: self.so.mul(&o.so) }
    }

    pub fn inverse(&self) -> Self {
        let mut neg = self.neg;
        for m in bits(self.sup) {
            if square_is_negative(m) {
                neg ^= 1 << m;
            }
        }
        Self { n: self.n, sup: self.sup, neg, so: self.so.transpose() }
    }

    pub fn mul_quat(&self, q: Quat) -> Self {
        self.mul(&Self::from_quat(self.n(), q))
    }

    /// The element as `±e_S`, if it is a signed monomial.
    pub fn as_quat(&self) -> Option<Quat> {
        (self.sup.count_ones() == 1).then(|| {
            let m = self.sup.trailing_zeros();
            Quat { mask: m, neg: self.neg != 0 }
        })
    }

    pub fn commutator(&self, o: &Self) -> Result<i8> {
        match (self.as_quat(), o.as_quat()) {
            (Some(a), Some(b)) => Ok(a.commutator(b)),
            _ => Err(Error::NotMonomial),
        }
    }

    pub fn act_e(&self, e: u32) -> Self {
        let mut neg = self.neg;
        for m in bits(self.sup) {
            if (m & e).count_ones() % 2 == 1 {
                neg ^= 1 << m;
            }
        }
        Self { n: self.n, sup: self.sup, neg, so: self.so.act_e(e) }
    }

    pub fn to_cliff(&self) -> CliffElem {
        let mut z = CliffElem::zero(self.n());
        for m in bits(self.sup) {
            z.terms.insert(m, self.coeff(m));
        }
        z
    }

    /// Sort key independent of hashing.
    pub fn key(&self) -> (u64, u64) {
        (self.sup, self.neg)
    }

    /// `|Re(z)|` from the rotation angles of `Π(z)`. A signed cycle of length `m`
    /// and sign `s` has the `m`-th roots of `s` as eigenvalues.
    pub fn re_via_eigenvalues(&self) -> f64 {
        let k = self.so.points();
        let mut seen = vec![false; k];
        let mut prod = 1.0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let (mut r, mut m, mut sign) = (start, 0usize, 1i8);
            while !seen[r] {
                seen[r] = true;
                let (c, s) = self.so.entry(r);
                sign *= s;
                m += 1;
                r = c;
            }
            let offset = if sign < 0 { 0.5 } else { 0.0 };
            for j in 0..m {
                let arg = 2.0 * std::f64::consts::PI * (j as f64 + offset) / m as f64;
                if arg > 1e-12 && arg < std::f64::consts::PI + 1e-12 {
                    prod *= (arg / 2.0).cos().abs();
                }
            }
        }
        prod
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let b = x.trailing_zeros();
            x &= x - 1;
            b
        })
    })
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cliff())
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElem({self})")
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.key()).cmp(&(other.n, other.key()))
    }
}

impl Serialize for GroupElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupElem", 2)?;
        st.serialize_field("cliff", &self.to_string())?;
        st.serialize_field("so", &self.so.to_rows())?;
        st.end()
    }
}

/// `acute σ`, the product of `á_i` along a reduced word.
pub fn acute(sigma: &Permutation) -> GroupElem {
    let n = sigma.n();
    canonical_word(sigma)
        .letters()
        .into_iter()
        .fold(GroupElem::one(n), |z, i| z.mul(&GroupElem::acute_gen(n, i)))
}

/// `grave σ = (acute σ)⁻¹`.
pub fn grave(sigma: &Permutation) -> GroupElem {
    acute(sigma).inverse()
}

// ---------------------------------------------------------------------------
// Lifted coordinates
// ---------------------------------------------------------------------------

/// `B̃⁺_{n+1}` in coordinates `z = acute(perm) · q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Lifted {
    pub perm: Permutation,
    pub q: Quat,
}

impl Lifted {
    pub fn new(perm: Permutation, q: Quat) -> Self {
        Self { perm, q }
    }

    pub fn one(n: usize) -> Self {
        Self { perm: Permutation::identity(n + 1), q: Quat::ONE }
    }

    /// `z · á_i`.
    #[inline]
    pub fn mul_acute(&self, i: usize) -> Self {
        let q = self.q.conj_acute(i);
        if self.perm.is_ascent(i) {
            Self { perm: self.perm.mul_gen(i), q }
        } else {
            Self { perm: self.perm.mul_gen(i), q: q.hat_mul(i) }
        }
    }

    /// `z · â_i`.
    #[inline]
    pub fn mul_hat(&self, i: usize) -> Self {
        Self { perm: self.perm, q: self.q.mul(Quat::hat(i)) }
    }

    /// `z · à_i`.
    pub fn mul_grave(&self, i: usize) -> Self {
        let t = self.mul_acute(i).mul_hat(i);
        Self { perm: t.perm, q: t.q.negate() }
    }

    pub fn mul_quat(&self, r: Quat) -> Self {
        Self { perm: self.perm, q: self.q.mul(r) }
    }

    pub fn negate(&self) -> Self {
        Self { perm: self.perm, q: self.q.negate() }
    }

    pub fn to_group(&self) -> GroupElem {
        acute(&self.perm).mul_quat(self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str, n: usize) -> CliffElem {
        CliffElem::parse(s, n).unwrap()
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(monomial_mul(0b1, 0b1), (-1, 0));
        assert_eq!(monomial_mul(0b10, 0b1), (-1, 0b11));
        assert_eq!(monomial_mul(0b11, 0b1), (1, 0b10));
        assert_eq!(monomial_mul(0b1, 0b100), (1, 0b101));
        assert_eq!(monomial_mul(0b100, 0b1), (1, 0b101));
    }

    #[test]
    fn scalar_arithmetic() {
        let h = Scalar::pow_sqrt2(-1);
        assert_eq!(h * h, Scalar::new(1, 0, 1));
        assert_eq!(h.to_string(), "sqrt2/2");
        assert_eq!((Scalar::ONE + Scalar::sqrt2()).to_string(), "1+sqrt2");
        assert_eq!(Scalar::new(2, 4, 2), Scalar::new(1, 2, 1));
        assert_eq!(Scalar::new(1, -1, 0).signum(), -1);
        assert_eq!(Scalar::new(-3, 2, 0).signum(), -1);
        assert_eq!(Scalar::new(3, -2, 0).signum(), 1);
        assert_eq!(Scalar::pow_sqrt2(5), Scalar::new(0, 4, 0));
        assert_eq!(Scalar::sqrt2().inverse().unwrap(), h);
        assert_eq!((Scalar::ONE + Scalar::sqrt2()).inverse().unwrap(), Scalar::new(-1, 1, 0));
        assert!(Scalar::int(3).inverse().is_none());
    }

    #[test]
    fn acute_generator_squares_to_hat() {
        let a = CliffElem::acute_gen(3, 1);
        assert_eq!(&a * &a, CliffElem::hat(3, 1));
        let g = GroupElem::acute_gen(3, 2);
        assert_eq!(g.mul(&g), GroupElem::hat(3, 2));
        assert_eq!(g.mul(&GroupElem::grave_gen(3, 2)), GroupElem::one(3));
    }

    #[test]
    fn acute_tops() {
        let e3 = acute(&Permutation::top(2));
        assert_eq!(e3.to_cliff(), c("(a1+a2)/sqrt2", 2));
        assert!(e3.re().is_zero());
        let e4 = acute(&Permutation::top(3));
        assert_eq!(e4.to_string(), "(-1+a2+a1a3-a1a2a3)/2");
        assert_eq!(e4.re(), Scalar::new(-1, 0, 1));
        assert_eq!(grave(&Permutation::top(3)).to_string(), "(-1-a2+a1a3+a1a2a3)/2");
        let s = acute(&Permutation::parse("53421").unwrap());
        assert_eq!(s.to_cliff(), c("(-a1-a1a2+a1a3-a1a2a3-a4+a2a4-a3a4-a2a3a4)/(2sqrt2)", 4));
        let s = acute(&Permutation::parse("4231").unwrap());
        assert_eq!(s.to_cliff(), c("(a2+a1a3)/sqrt2", 3));
        let s = acute(&Permutation::top(4));
        assert_eq!(s.to_cliff(), c("(-a1-a1a2a3-a4-a2a3a4)/2", 4));
        let s = acute(&Permutation::parse("54231").unwrap());
        assert_eq!(s.to_cliff(), c("(-a1+a1a2+a1a3-a1a2a3-a4+a2a4+a3a4-a2a3a4)/(2sqrt2)", 4));
        let s = acute(&Permutation::parse("563412").unwrap());
        assert_eq!(s.to_string(), "(-a1-a2a3a4-a5+a1a2a3a4a5)/2");
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["(1-a1a2)/sqrt2", "(-1+a2+a1a3-a1a2a3)/2", "a1", "-1", "(a1+a2)/sqrt2"] {
            let n = 3;
            assert_eq!(c(s, n).to_string(), s);
        }
        let x = c("3/2 + sqrt2*a1 - a1a3", 3);
        assert_eq!(c(&x.to_string(), 3), x);
        assert!(CliffElem::parse("a1/a2", 3).is_err());
        assert!(CliffElem::parse("a5", 3).is_err());
    }

    #[test]
    fn commutators() {
        assert_eq!(Quat::hat(1).commutator(Quat::ONE), 1);
        assert_eq!(Quat::hat(1).commutator(Quat::hat(2)), -1);
        let q = Quat::new(0b1101, false);
        assert_eq!(Quat::hat(2).commutator(q), 1);
        assert_eq!(q.hat_commutator(2), 1);
        assert_eq!(Quat::hat(3).commutator(q), Quat::new(0b1101, true).hat_commutator(3));
    }

    #[test]
    fn act_e_sign_rule() {
        let z = c("(a1+a2)/sqrt2", 2);
        assert_eq!(z.act_e(0b01), c("(-a1+a2)/sqrt2", 2));
        assert_eq!(z.act_e(0), z);
    }

    #[test]
    fn lifted_matches_group() {
        let n = 3;
        let mut z = Lifted::one(n);
        let mut g = GroupElem::one(n);
        for &(i, op) in &[(1, 0), (2, 1), (1, 0), (3, 0), (2, 2), (1, 0), (3, 1), (2, 0)] {
            match op {
                0 => {
                    z = z.mul_acute(i);
                    g = g.mul(&GroupElem::acute_gen(n, i));
                }
                1 => {
                    z = z.mul_hat(i);
                    g = g.mul(&GroupElem::hat(n, i));
                }
                _ => {
                    z = z.mul_grave(i);
                    g = g.mul(&GroupElem::grave_gen(n, i));
                }
            }
            assert_eq!(z.to_group(), g);
        }
    }

    #[test]
    fn quat_projection_matches_products() {
        let n = 4;
        for q in Quat::all(n) {
            let mut g = GroupElem::one(n);
            for i in 1..=n {
                if q.mask >> (i - 1) & 1 == 1 {
                    g = g.mul(&GroupElem::hat(n, i));
                }
            }
            if q.neg {
                g = g.neg();
            }
            assert_eq!(g, GroupElem::from_quat(n, q));
            assert_eq!(q.inv().mul(q), Quat::ONE);
        }
    }
}
