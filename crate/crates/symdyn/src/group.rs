//! Finitely generated groups with decidable word problem.
//!
//! Three families are supported: the integers `Z`, the grids `Z^d`, and the
//! free groups `F_r`. Each has a canonical normal form (an integer, an
//! integer vector, a freely reduced word), so equality of elements is
//! equality of normal forms.
//!
//! The canonical enumeration `nu: N -> G` lists elements breadth-first by
//! word length; ties inside a length class are broken by comparing the
//! canonical generator words letter-by-letter, where the letter order is the
//! declared generator order (`a < a^-1 < b < b^-1 < ...`). Both `nu` and its
//! inverse are computed arithmetically (no ball materialization), so they
//! stay cheap for large indices.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Which group family a context describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// The integers with generators `+1, -1`.
    Integers,
    /// The grid `Z^d` with generators `e_1, -e_1, ..., e_d, -e_d`.
    Grid(u32),
    /// The free group of the given rank with generators `a, a^-1, b, b^-1, ...`.
    Free(u32),
}

/// A group together with its declared generating set and enumeration policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupContext {
    kind: GroupKind,
}

/// Canonical normal form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Int(i64),
    Vector(Vec<i64>),
    /// Freely reduced word; letter `k > 0` is generator `k - 1`, letter
    /// `k < 0` is its inverse. No adjacent cancelling pair.
    Word(Vec<i32>),
}

/// An element of one of the supported groups, held in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    nf: NormalForm,
}

/// The ball of a given radius in the word metric, listed in `nu` order.
#[derive(Debug, Clone)]
pub struct Ball {
    pub radius: u32,
    pub elements: Vec<GroupElement>,
}

/// Rank of a word letter in the declared generator order.
fn letter_rank(letter: i32) -> u32 {
    debug_assert!(letter != 0);
    2 * (letter.unsigned_abs() - 1) + u32::from(letter < 0)
}

fn rank_letter(rank: u32) -> i32 {
    let idx = (rank / 2 + 1) as i32;
    if rank % 2 == 0 { idx } else { -idx }
}

impl NormalForm {
    /// Word length of the element in the standard generators.
    pub fn word_length(&self) -> u64 {
        match self {
            NormalForm::Int(n) => n.unsigned_abs(),
            NormalForm::Vector(v) => v.iter().map(|c| c.unsigned_abs()).sum(),
            NormalForm::Word(w) => w.len() as u64,
        }
    }

    /// The canonical generator word, as a sequence of letter ranks.
    fn rank_word(&self) -> Vec<u32> {
        match self {
            NormalForm::Int(n) => {
                let r = if *n >= 0 { 0 } else { 1 };
                vec![r; n.unsigned_abs() as usize]
            }
            NormalForm::Vector(v) => {
                let mut out = Vec::new();
                for (i, c) in v.iter().enumerate() {
                    let r = 2 * i as u32 + u32::from(*c < 0);
                    out.extend(std::iter::repeat_n(r, c.unsigned_abs() as usize));
                }
                out
            }
            NormalForm::Word(w) => w.iter().map(|&l| letter_rank(l)).collect(),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    /// Total order identical to the `nu` enumeration order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.nf
            .word_length()
            .cmp(&other.nf.word_length())
            .then_with(|| self.nf.rank_word().cmp(&other.nf.rank_word()))
    }
}

impl GroupElement {
    pub fn normal_form(&self) -> &NormalForm {
        &self.nf
    }

    pub fn word_length(&self) -> u64 {
        self.nf.word_length()
    }

    pub fn as_int(&self) -> Option<i64> {
        match &self.nf {
            NormalForm::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[i64]> {
        match &self.nf {
            NormalForm::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&[i32]> {
        match &self.nf {
            NormalForm::Word(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.nf {
            NormalForm::Int(n) => write!(f, "{n}"),
            NormalForm::Vector(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            NormalForm::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                let mut i = 0;
                while i < w.len() {
                    let letter = w[i];
                    let mut run = 1;
                    while i + run < w.len() && w[i + run] == letter {
                        run += 1;
                    }
                    let name = (b'a' + (letter.unsigned_abs() - 1) as u8) as char;
                    let exp = if letter > 0 { run as i64 } else { -(run as i64) };
                    if exp == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{exp}")?;
                    }
                    i += run;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Integers => write!(f, "Z"),
            GroupKind::Grid(d) => write!(f, "Z^{d}"),
            GroupKind::Free(r) => write!(f, "F_{r}"),
        }
    }
}

/// Number of elements of `Z^dims` with L1 norm exactly `m`.
fn grid_class_size(dims: u32, m: u64) -> u128 {
    if dims == 0 {
        return u128::from(m == 0);
    }
    if m == 0 {
        return 1;
    }
    // N(k, m) = N(k-1, m) + 2 * sum_{j=1..m} N(k-1, m-j)
    let mut prev: Vec<u128> = (0..=m).map(|j| u128::from(j == 0)).collect();
    for _ in 1..=dims {
        let mut cur = vec![0u128; (m + 1) as usize];
        let mut suffix = prev[0];
        cur[0] = 1;
        for j in 1..=m as usize {
            cur[j] = prev[j] + 2 * suffix;
            suffix += prev[j];
        }
        prev = cur;
    }
    prev[m as usize]
}

/// First-coordinate candidates for a grid class, in enumeration order:
/// positive values descending, then negative values descending in magnitude,
/// then zero.
fn grid_first_coords(m: u64) -> impl Iterator<Item = i64> {
    let m = m as i64;
    (1..=m)
        .rev()
        .chain((1..=m).rev().map(|c| -c))
        .chain(std::iter::once(0))
}

impl GroupContext {
    pub fn new(kind: GroupKind) -> Result<Self> {
        match kind {
            GroupKind::Grid(d) if d == 0 => Err(Error::InvalidConfig(
                "grid dimension must be positive".into(),
            )),
            GroupKind::Free(r) if r == 0 || r > 26 => Err(Error::InvalidConfig(
                "free rank must be between 1 and 26".into(),
            )),
            _ => Ok(GroupContext { kind }),
        }
    }

    pub fn integers() -> Self {
        GroupContext {
            kind: GroupKind::Integers,
        }
    }

    pub fn grid(d: u32) -> Result<Self> {
        Self::new(GroupKind::Grid(d))
    }

    pub fn free(r: u32) -> Result<Self> {
        Self::new(GroupKind::Free(r))
    }

    /// Parse a group specification string: `Z`, `Z^d`, or `F_r`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: spec.to_string(),
            reason: reason.to_string(),
        };
        let s = spec.trim();
        if s == "Z" {
            return Ok(Self::integers());
        }
        if let Some(d) = s.strip_prefix("Z^") {
            let d: u32 = d.parse().map_err(|_| bad("expected Z^<dim>"))?;
            return Self::grid(d);
        }
        if let Some(r) = s.strip_prefix("F_") {
            let r: u32 = r.parse().map_err(|_| bad("expected F_<rank>"))?;
            return Self::free(r);
        }
        Err(bad("expected one of Z, Z^d, F_r"))
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Number of symmetric generators (each generator and its inverse).
    pub fn generator_count(&self) -> u32 {
        match self.kind {
            GroupKind::Integers => 2,
            GroupKind::Grid(d) => 2 * d,
            GroupKind::Free(r) => 2 * r,
        }
    }

    /// The generators in declared order: `g_1, g_1^-1, g_2, g_2^-1, ...`.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.generator_count())
            .map(|rank| self.generator_by_rank(rank))
            .collect()
    }

    fn generator_by_rank(&self, rank: u32) -> GroupElement {
        let letter = rank_letter(rank);
        match self.kind {
            GroupKind::Integers => GroupElement {
                nf: NormalForm::Int(if letter > 0 { 1 } else { -1 }),
            },
            GroupKind::Grid(d) => {
                let mut v = vec![0i64; d as usize];
                let i = (letter.unsigned_abs() - 1) as usize;
                v[i] = if letter > 0 { 1 } else { -1 };
                GroupElement {
                    nf: NormalForm::Vector(v),
                }
            }
            GroupKind::Free(_) => GroupElement {
                nf: NormalForm::Word(vec![letter]),
            },
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self.kind {
            GroupKind::Integers => GroupElement {
                nf: NormalForm::Int(0),
            },
            GroupKind::Grid(d) => GroupElement {
                nf: NormalForm::Vector(vec![0; d as usize]),
            },
            GroupKind::Free(_) => GroupElement {
                nf: NormalForm::Word(vec![]),
            },
        }
    }

    /// Check that an element's normal form is valid for this context.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (&self.kind, &g.nf) {
            (GroupKind::Integers, NormalForm::Int(_)) => true,
            (GroupKind::Grid(d), NormalForm::Vector(v)) => v.len() == *d as usize,
            (GroupKind::Free(r), NormalForm::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() <= *r)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::WrongGroup {
                group: self.to_string(),
                element: g.to_string(),
            })
        }
    }

    /// Product of two elements, in normal form.
    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let nf = match (&g.nf, &h.nf) {
            (NormalForm::Int(a), NormalForm::Int(b)) => NormalForm::Int(a + b),
            (NormalForm::Vector(a), NormalForm::Vector(b)) => {
                NormalForm::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (NormalForm::Word(a), NormalForm::Word(b)) => {
                let mut out = a.clone();
                for &l in b {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                NormalForm::Word(out)
            }
            _ => return Err(Error::MixedContext),
        };
        Ok(GroupElement { nf })
    }

    /// Inverse of an element.
    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let nf = match &g.nf {
            NormalForm::Int(a) => NormalForm::Int(-a),
            NormalForm::Vector(a) => NormalForm::Vector(a.iter().map(|x| -x).collect()),
            NormalForm::Word(a) => NormalForm::Word(a.iter().rev().map(|l| -l).collect()),
        };
        Ok(GroupElement { nf })
    }

    /// Number of elements of word length exactly `m`.
    pub fn class_size(&self, m: u64) -> u128 {
        match self.kind {
            GroupKind::Integers => {
                if m == 0 {
                    1
                } else {
                    2
                }
            }
            GroupKind::Grid(d) => grid_class_size(d, m),
            GroupKind::Free(r) => {
                if m == 0 {
                    1
                } else {
                    let q = (2 * r - 1) as u128;
                    2 * r as u128 * q.pow((m - 1) as u32)
                }
            }
        }
    }

    /// Number of elements of word length at most `r`.
    pub fn ball_size(&self, r: u32) -> u128 {
        (0..=r as u64).map(|m| self.class_size(m)).sum()
    }

    /// The canonical bijection `nu: N -> G`. `nu(0)` is the identity.
    pub fn nu(&self, n: u64) -> GroupElement {
        let mut m = 0u64;
        let mut rem = n as u128;
        loop {
            let c = self.class_size(m);
            if rem < c {
                break;
            }
            rem -= c;
            m += 1;
        }
        self.unrank_in_class(m, rem)
    }

    /// Inverse of [`GroupContext::nu`].
    pub fn nu_inv(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        let m = g.word_length();
        let before: u128 = (0..m).map(|j| self.class_size(j)).sum();
        let idx = self.rank_in_class(g);
        let total = before + idx;
        u64::try_from(total).map_err(|_| Error::ResourceLimit {
            what: "nu index",
            needed: total,
            limit: u64::MAX as u128,
        })
    }

    /// The `idx`-th element (0-based) of the length-`m` class, in
    /// enumeration order.
    fn unrank_in_class(&self, m: u64, idx: u128) -> GroupElement {
        match self.kind {
            GroupKind::Integers => {
                if m == 0 {
                    self.identity()
                } else if idx == 0 {
                    GroupElement {
                        nf: NormalForm::Int(m as i64),
                    }
                } else {
                    GroupElement {
                        nf: NormalForm::Int(-(m as i64)),
                    }
                }
            }
            GroupKind::Grid(d) => {
                let mut v = Vec::with_capacity(d as usize);
                let mut m = m;
                let mut idx = idx;
                for dim in 0..d {
                    let rest = d - dim - 1;
                    let mut chosen = None;
                    for c in grid_first_coords(m) {
                        let count = grid_class_size(rest, m - c.unsigned_abs());
                        if idx < count {
                            chosen = Some(c);
                            break;
                        }
                        idx -= count;
                    }
                    let c = chosen.expect("index within class size");
                    v.push(c);
                    m -= c.unsigned_abs();
                }
                debug_assert_eq!(m, 0);
                GroupElement {
                    nf: NormalForm::Vector(v),
                }
            }
            GroupKind::Free(r) => {
                let q = (2 * r - 1) as u128;
                let mut word: Vec<i32> = Vec::with_capacity(m as usize);
                let mut idx = idx;
                for pos in 0..m {
                    let tail = q.pow((m - pos - 1) as u32);
                    let digit = (idx / tail) as u32;
                    idx %= tail;
                    let letter = if pos == 0 {
                        rank_letter(digit)
                    } else {
                        // ranks allowed after `prev`: all but the rank of
                        // prev's inverse, taken in ascending order
                        let banned = letter_rank(-word[pos as usize - 1]);
                        let rank = if digit < banned { digit } else { digit + 1 };
                        rank_letter(rank)
                    };
                    word.push(letter);
                }
                GroupElement {
                    nf: NormalForm::Word(word),
                }
            }
        }
    }

    /// Position of `g` (0-based) inside its word-length class.
    fn rank_in_class(&self, g: &GroupElement) -> u128 {
        match (&self.kind, &g.nf) {
            (GroupKind::Integers, NormalForm::Int(n)) => u128::from(*n < 0),
            (GroupKind::Grid(d), NormalForm::Vector(v)) => {
                let mut idx = 0u128;
                let mut m: u64 = v.iter().map(|c| c.unsigned_abs()).sum();
                for (dim, &coord) in v.iter().enumerate() {
                    let rest = *d - dim as u32 - 1;
                    for c in grid_first_coords(m) {
                        if c == coord {
                            break;
                        }
                        idx += grid_class_size(rest, m - c.unsigned_abs());
                    }
                    m -= coord.unsigned_abs();
                }
                idx
            }
            (GroupKind::Free(r), NormalForm::Word(w)) => {
                let q = (2 * r - 1) as u128;
                let m = w.len();
                let mut idx = 0u128;
                for (pos, &letter) in w.iter().enumerate() {
                    let digit = if pos == 0 {
                        letter_rank(letter)
                    } else {
                        let banned = letter_rank(-w[pos - 1]);
                        let rank = letter_rank(letter);
                        debug_assert_ne!(rank, banned);
                        if rank < banned { rank } else { rank - 1 }
                    };
                    idx += digit as u128 * q.pow((m - pos - 1) as u32);
                }
                idx
            }
            _ => unreachable!("rank_in_class on checked element"),
        }
    }

    /// All elements of word length at most `r`, in `nu` order.
    pub fn ball(&self, r: u32) -> Ball {
        let size = self.ball_size(r);
        let size = usize::try_from(size).expect("ball fits in memory");
        let mut elements = Vec::with_capacity(size);
        let mut m = 0u64;
        while m <= r as u64 {
            let c = self.class_size(m);
            for idx in 0..c {
                elements.push(self.unrank_in_class(m, idx));
            }
            m += 1;
        }
        Ball {
            radius: r,
            elements,
        }
    }

    /// Parse an element in its display form: an integer for `Z`, a
    /// parenthesized vector for `Z^d`, a word like `ab^-1a` (or `e`) for `F_r`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let bad = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let s = s.trim();
        let elt = match self.kind {
            GroupKind::Integers => GroupElement {
                nf: NormalForm::Int(
                    s.parse()
                        .map_err(|e| bad(format!("expected integer: {e}")))?,
                ),
            },
            GroupKind::Grid(d) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| bad("expected (c1,...,cd)".into()))?;
                let coords: Vec<i64> = inner
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| bad(format!("bad coordinate: {e}")))?;
                if coords.len() != d as usize {
                    return Err(bad(format!("expected {d} coordinates")));
                }
                GroupElement {
                    nf: NormalForm::Vector(coords),
                }
            }
            GroupKind::Free(r) => {
                if s == "e" {
                    return Ok(self.identity());
                }
                let mut word: Vec<i32> = Vec::new();
                let chars: Vec<char> = s.chars().collect();
                let mut i = 0;
                while i < chars.len() {
                    let c = chars[i];
                    if !c.is_ascii_lowercase() {
                        return Err(bad(format!("unexpected character `{c}`")));
                    }
                    let gen = (c as u8 - b'a') as u32 + 1;
                    if gen > r {
                        return Err(bad(format!("generator `{c}` outside rank {r}")));
                    }
                    i += 1;
                    let mut exp: i64 = 1;
                    if i < chars.len() && chars[i] == '^' {
                        i += 1;
                        let start = i;
                        if i < chars.len() && chars[i] == '-' {
                            i += 1;
                        }
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        let digits: String = chars[start..i].iter().collect();
                        exp = digits
                            .parse()
                            .map_err(|e| bad(format!("bad exponent: {e}")))?;
                    }
                    let letter = if exp >= 0 { gen as i32 } else { -(gen as i32) };
                    for _ in 0..exp.unsigned_abs() {
                        if word.last() == Some(&-letter) {
                            word.pop();
                        } else {
                            word.push(letter);
                        }
                    }
                }
                GroupElement {
                    nf: NormalForm::Word(word),
                }
            }
        };
        self.check(&elt)?;
        Ok(elt)
    }
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.word_length() <= self.radius as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force ball oracle: close the generator set under products,
    /// radius by radius, deduplicating by normal form.
    fn ball_oracle(ctx: &GroupContext, r: u32) -> std::collections::BTreeSet<GroupElement> {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(ctx.identity());
        let mut frontier = vec![ctx.identity()];
        for _ in 0..r {
            let mut next = Vec::new();
            for g in &frontier {
                for s in ctx.generators() {
                    let h = ctx.mul(g, &s).unwrap();
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    #[test]
    fn integers_nu_prefix() {
        let z = GroupContext::integers();
        let got: Vec<i64> = (0..5).map(|n| z.nu(n).as_int().unwrap()).collect();
        assert_eq!(got, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn free_nu_prefix() {
        let f2 = GroupContext::free(2).unwrap();
        let got: Vec<String> = (0..5).map(|n| f2.nu(n).to_string()).collect();
        assert_eq!(got, vec!["e", "a", "a^-1", "b", "b^-1"]);
    }

    #[test]
    fn grid_mul_example() {
        let g2 = GroupContext::grid(2).unwrap();
        let a = g2.parse_element("(1,0)").unwrap();
        let b = g2.parse_element("(0,1)").unwrap();
        assert_eq!(g2.mul(&a, &b).unwrap().to_string(), "(1,1)");
    }

    #[test]
    fn free_mul_reduces() {
        let f2 = GroupContext::free(2).unwrap();
        let ab = f2.parse_element("ab").unwrap();
        let b1a = f2.parse_element("b^-1a").unwrap();
        assert_eq!(f2.mul(&ab, &b1a).unwrap().to_string(), "a^2");
    }

    #[test]
    fn inv_examples() {
        let z = GroupContext::integers();
        let three = z.parse_element("3").unwrap();
        assert_eq!(z.inv(&three).unwrap().as_int(), Some(-3));
        let f2 = GroupContext::free(2).unwrap();
        let ab = f2.parse_element("ab").unwrap();
        assert_eq!(f2.inv(&ab).unwrap().to_string(), "b^-1a^-1");
        assert_eq!(f2.inv(&f2.identity()).unwrap(), f2.identity());
    }

    #[test]
    fn nu_roundtrip_and_monotone_length() {
        for ctx in [
            GroupContext::integers(),
            GroupContext::grid(2).unwrap(),
            GroupContext::grid(3).unwrap(),
            GroupContext::free(1).unwrap(),
            GroupContext::free(2).unwrap(),
        ] {
            let mut last_len = 0;
            for n in 0..2000u64 {
                let g = ctx.nu(n);
                assert_eq!(ctx.nu_inv(&g).unwrap(), n, "{ctx} at {n}");
                assert!(g.word_length() >= last_len);
                last_len = g.word_length();
            }
        }
    }

    #[test]
    fn nu_order_matches_element_order() {
        for ctx in [
            GroupContext::integers(),
            GroupContext::grid(2).unwrap(),
            GroupContext::free(2).unwrap(),
        ] {
            let elems: Vec<GroupElement> = (0..500).map(|n| ctx.nu(n)).collect();
            for w in elems.windows(2) {
                assert!(w[0] < w[1], "{ctx}: {} !< {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn ball_matches_nu_prefix() {
        for ctx in [
            GroupContext::integers(),
            GroupContext::grid(2).unwrap(),
            GroupContext::free(2).unwrap(),
        ] {
            let ball = ctx.ball(3);
            for (n, g) in ball.elements.iter().enumerate() {
                assert_eq!(*g, ctx.nu(n as u64));
            }
        }
    }

    #[test]
    fn ball_sizes_against_oracle() {
        for ctx in [
            GroupContext::integers(),
            GroupContext::grid(2).unwrap(),
            GroupContext::free(2).unwrap(),
        ] {
            for r in 0..=4 {
                let oracle = ball_oracle(&ctx, r);
                let ball = ctx.ball(r);
                assert_eq!(ball.len(), oracle.len(), "{ctx} at r={r}");
                let as_set: std::collections::BTreeSet<_> =
                    ball.elements.iter().cloned().collect();
                assert_eq!(as_set, oracle);
            }
        }
        assert_eq!(GroupContext::integers().ball(2).len(), 5);
        assert_eq!(GroupContext::free(2).unwrap().ball(1).len(), 5);
        assert_eq!(GroupContext::free(2).unwrap().ball(2).len(), 17);
    }

    #[test]
    fn ball_closure_properties() {
        for ctx in [
            GroupContext::integers(),
            GroupContext::grid(2).unwrap(),
            GroupContext::free(2).unwrap(),
        ] {
            let ball = ctx.ball(3);
            let set: std::collections::BTreeSet<_> = ball.elements.iter().cloned().collect();
            assert_eq!(set.len(), ball.len(), "pairwise distinct");
            assert!(set.contains(&ctx.identity()));
            for g in &ball.elements {
                assert!(set.contains(&ctx.inv(g).unwrap()), "closed under inverse");
            }
        }
    }

    #[test]
    fn group_axioms_on_ball() {
        // Exhaustive associativity/identity/inverse on a small ball of F_2,
        // sampled triples elsewhere.
        let f2 = GroupContext::free(2).unwrap();
        let ball = f2.ball(1);
        let e = f2.identity();
        for g in &ball.elements {
            assert_eq!(f2.mul(g, &e).unwrap(), *g);
            assert_eq!(f2.mul(&e, g).unwrap(), *g);
            assert_eq!(f2.mul(g, &f2.inv(g).unwrap()).unwrap(), e);
            for h in &ball.elements {
                for k in &ball.elements {
                    let gh_k = f2.mul(&f2.mul(g, h).unwrap(), k).unwrap();
                    let g_hk = f2.mul(g, &f2.mul(h, k).unwrap()).unwrap();
                    assert_eq!(gh_k, g_hk);
                }
            }
        }
    }

    #[test]
    fn mixed_context_rejected() {
        let z = GroupContext::integers();
        let g2 = GroupContext::grid(2).unwrap();
        let a = z.parse_element("1").unwrap();
        let b = g2.parse_element("(1,0)").unwrap();
        assert!(z.mul(&a, &b).is_err());
    }

    #[test]
    fn parse_display_roundtrip() {
        let f2 = GroupContext::free(2).unwrap();
        for s in ["e", "a", "ab^-1a", "a^3b^-2", "b"] {
            let g = f2.parse_element(s).unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g2 = GroupContext::grid(2).unwrap();
        assert_eq!(g2.parse_element("(1,-3)").unwrap().to_string(), "(1,-3)");
    }
}
