//! Finitely supported patterns and their word coding.
//!
//! A pattern assigns alphabet symbols to finitely many sites. A site is
//! either a bare group element (patterns over `G`) or a group element paired
//! with a level index (patterns over `G x N`, used by the orbit
//! representation and the universal constructions). The two kinds never mix
//! inside one pattern.
//!
//! The word coding writes a pattern as a finite word over `A + {x}`: position
//! `i` holds the symbol at the site with index `i`, or `x` if that site is
//! not in the support. Site indices come from `nu` for bare sites and from
//! the Cantor pairing `pair(nu_index, level)` for leveled sites. Encoding
//! always emits the shortest word (no trailing `x`); decoding accepts any.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::group::{GroupContext, GroupElement};
use crate::{Error, Result};

/// Symbols are identified with `0..|A|-1`.
pub type Symbol = u32;

/// A finite ordered alphabet, identified with `{0, ..., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidConfig("alphabet must be non-empty".into()));
        }
        Ok(Alphabet { size })
    }

    pub fn binary() -> Self {
        Alphabet { size: 2 }
    }

    /// The product alphabet `{0,1}^bits`, symbols read as bit masks.
    pub fn binary_power(bits: u32) -> Result<Self> {
        if bits > 24 {
            return Err(Error::ResourceLimit {
                what: "product alphabet",
                needed: 1u128 << bits,
                limit: 1 << 24,
            });
        }
        Ok(Alphabet {
            size: 1usize << bits,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        (sym as usize) < self.size
    }

    pub fn check(&self, sym: Symbol) -> Result<()> {
        if self.contains(sym) {
            Ok(())
        } else {
            Err(Error::BadSymbol {
                symbol: sym,
                size: self.size,
            })
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        0..self.size as Symbol
    }
}

/// Cantor pairing; fixed once for all `G x N` site indexing.
pub fn pair(a: u64, b: u64) -> u64 {
    let s = a + b;
    s * (s + 1) / 2 + b
}

/// Inverse of [`pair`].
pub fn unpair(z: u64) -> (u64, u64) {
    let s = ((8 * z + 1).isqrt() - 1) / 2;
    let b = z - s * (s + 1) / 2;
    (s - b, b)
}

/// A pattern site: a group element, optionally with a level index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Site {
    pub element: GroupElement,
    pub level: u32,
}

impl Site {
    pub fn plain(element: GroupElement) -> Self {
        Site { element, level: 0 }
    }

    pub fn leveled(element: GroupElement, level: u32) -> Self {
        Site { element, level }
    }

    /// Index of a leveled site in the canonical enumeration of `G x N`.
    pub fn pair_index(&self, ctx: &GroupContext) -> Result<u64> {
        Ok(pair(ctx.nu_inv(&self.element)?, self.level as u64))
    }
}

impl PartialOrd for Site {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Site {
    /// Canonical site order: `nu` order on the element, then level.
    fn cmp(&self, other: &Self) -> Ordering {
        self.element
            .cmp(&other.element)
            .then(self.level.cmp(&other.level))
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.element, self.level)
    }
}

/// A finitely supported map from sites to symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    leveled: bool,
    cells: BTreeMap<Site, Symbol>,
}

impl Pattern {
    /// The empty pattern over `G`.
    pub fn empty() -> Self {
        Pattern {
            leveled: false,
            cells: BTreeMap::new(),
        }
    }

    /// The empty pattern over `G x N`.
    pub fn empty_leveled() -> Self {
        Pattern {
            leveled: true,
            cells: BTreeMap::new(),
        }
    }

    pub fn from_cells<I>(cells: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, Symbol)>,
    {
        Pattern {
            leveled: false,
            cells: cells
                .into_iter()
                .map(|(g, s)| (Site::plain(g), s))
                .collect(),
        }
    }

    pub fn from_leveled_cells<I>(cells: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, u32, Symbol)>,
    {
        Pattern {
            leveled: true,
            cells: cells
                .into_iter()
                .map(|(g, l, s)| (Site::leveled(g, l), s))
                .collect(),
        }
    }

    pub fn is_leveled(&self) -> bool {
        self.leveled
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, site: &Site) -> Option<Symbol> {
        self.cells.get(site).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Site, Symbol)> {
        self.cells.iter().map(|(s, v)| (s, *v))
    }

    pub fn sites(&self) -> impl Iterator<Item = &Site> {
        self.cells.keys()
    }

    pub fn insert(&mut self, site: Site, sym: Symbol) {
        self.cells.insert(site, sym);
    }

    /// Largest level index occurring in the support (0 for plain patterns).
    pub fn max_level(&self) -> u32 {
        self.cells.keys().map(|s| s.level).max().unwrap_or(0)
    }

    /// Largest word length occurring in the support.
    pub fn support_radius(&self) -> u64 {
        self.cells
            .keys()
            .map(|s| s.element.word_length())
            .max()
            .unwrap_or(0)
    }

    fn require_kind(&self, leveled: bool) -> Result<()> {
        if self.leveled == leveled {
            Ok(())
        } else {
            Err(Error::PatternKind(if leveled {
                "expected a pattern over G x N".into()
            } else {
                "expected a pattern over G".into()
            }))
        }
    }

    /// Word coding of the pattern. Position `i` carries the symbol at the
    /// site with canonical index `i`, or `x` when that site is not in the
    /// support; the word stops at the last support site.
    pub fn encode(&self, ctx: &GroupContext, alphabet: &Alphabet) -> Result<PatternCode> {
        const MAX_CODE_LEN: u64 = 1 << 22;
        let mut positions = Vec::with_capacity(self.cells.len());
        for (site, sym) in &self.cells {
            alphabet.check(*sym)?;
            let idx = if self.leveled {
                site.pair_index(ctx)?
            } else {
                ctx.nu_inv(&site.element)?
            };
            if idx >= MAX_CODE_LEN {
                return Err(Error::ResourceLimit {
                    what: "pattern code length",
                    needed: idx as u128 + 1,
                    limit: MAX_CODE_LEN as u128,
                });
            }
            positions.push((idx, *sym));
        }
        let len = positions.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut word = vec![None; len as usize];
        for (idx, sym) in positions {
            word[idx as usize] = Some(sym);
        }
        Ok(PatternCode { word })
    }

    /// Left translation: the result has support `g . F` and value
    /// `p(g^-1 h)` at `h`. Levels are untouched.
    pub fn translate(&self, ctx: &GroupContext, g: &GroupElement) -> Result<Pattern> {
        let mut cells = BTreeMap::new();
        for (site, sym) in &self.cells {
            let moved = ctx.mul(g, &site.element)?;
            cells.insert(Site::leveled(moved, site.level), *sym);
        }
        Ok(Pattern {
            leveled: self.leveled,
            cells,
        })
    }

    /// True iff the two patterns agree on the intersection of their supports.
    pub fn compatible(&self, other: &Pattern) -> bool {
        let (small, large) = if self.cells.len() <= other.cells.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .cells
            .iter()
            .all(|(site, sym)| large.cells.get(site).is_none_or(|s| s == sym))
    }

    /// True iff every cell of `self` is present in `other` with the same
    /// symbol, i.e. `other` extends `self`.
    pub fn included_in(&self, other: &Pattern) -> bool {
        self.cells
            .iter()
            .all(|(site, sym)| other.cells.get(site) == Some(sym))
    }

    /// Level embedding: a pattern on `G x I` becomes a pattern on
    /// `G x (I x {n})`, with the level pair `(i, n)` flattened through the
    /// canonical pairing.
    pub fn iota_embed(&self, n: u32) -> Result<Pattern> {
        self.require_kind(true)?;
        let cells = self
            .cells
            .iter()
            .map(|(site, sym)| {
                let level = pair(site.level as u64, n as u64);
                let level = u32::try_from(level).expect("embedded level fits u32");
                (Site::leveled(site.element.clone(), level), *sym)
            })
            .collect();
        Ok(Pattern {
            leveled: true,
            cells,
        })
    }
}

/// Word coding of a pattern: a finite word over the alphabet extended by the
/// blank letter `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCode {
    word: Vec<Option<Symbol>>,
}

impl PatternCode {
    pub fn new(word: Vec<Option<Symbol>>) -> Self {
        PatternCode { word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn letters(&self) -> &[Option<Symbol>] {
        &self.word
    }

    /// Drop trailing blanks, producing the canonical shortest word.
    pub fn normalized(mut self) -> Self {
        while self.word.last() == Some(&None) {
            self.word.pop();
        }
        self
    }

    /// Decode into a pattern over `G`. Position `i` speaks about `nu(i)`.
    pub fn decode(&self, ctx: &GroupContext, alphabet: &Alphabet) -> Result<Pattern> {
        let mut cells = BTreeMap::new();
        for (i, letter) in self.word.iter().enumerate() {
            if let Some(sym) = letter {
                alphabet.check(*sym)?;
                cells.insert(Site::plain(ctx.nu(i as u64)), *sym);
            }
        }
        Ok(Pattern {
            leveled: false,
            cells,
        })
    }

    /// Decode into a pattern over `G x N`. Position `i` speaks about the
    /// site `(nu(a), b)` where `(a, b) = unpair(i)`.
    pub fn decode_leveled(&self, ctx: &GroupContext, alphabet: &Alphabet) -> Result<Pattern> {
        let mut cells = BTreeMap::new();
        for (i, letter) in self.word.iter().enumerate() {
            if let Some(sym) = letter {
                alphabet.check(*sym)?;
                let (a, b) = unpair(i as u64);
                let level = u32::try_from(b).expect("level fits u32");
                cells.insert(Site::leveled(ctx.nu(a), level), *sym);
            }
        }
        Ok(Pattern {
            leveled: true,
            cells,
        })
    }

    /// Parse the textual form: comma-separated symbols, `x` for blank.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PatternCode { word: vec![] });
        }
        let word = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok == "x" {
                    Ok(None)
                } else {
                    tok.parse::<Symbol>().map(Some).map_err(|e| Error::Parse {
                        input: s.to_string(),
                        reason: format!("bad letter `{tok}`: {e}"),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(PatternCode { word })
    }
}

impl fmt::Display for PatternCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match letter {
                Some(sym) => write!(f, "{sym}")?,
                None => write!(f, "x")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z() -> GroupContext {
        GroupContext::integers()
    }

    fn elt(n: i64) -> GroupElement {
        z().parse_element(&n.to_string()).unwrap()
    }

    #[test]
    fn empty_pattern_encodes_to_empty_word() {
        let code = Pattern::empty().encode(&z(), &Alphabet::binary()).unwrap();
        assert!(code.is_empty());
        assert_eq!(code.to_string(), "");
    }

    #[test]
    fn spec_word_example() {
        // p = {0 -> 1, -1 -> 0} over Z: nu = (0, 1, -1, ...) so the word is
        // "1,x,0".
        let p = Pattern::from_cells([(elt(0), 1), (elt(-1), 0)]);
        let code = p.encode(&z(), &Alphabet::binary()).unwrap();
        assert_eq!(code.to_string(), "1,x,0");
        assert_eq!(code.decode(&z(), &Alphabet::binary()).unwrap(), p);
    }

    #[test]
    fn all_blank_word_decodes_to_empty() {
        let code = PatternCode::parse("x,x,x").unwrap();
        let p = code.decode(&z(), &Alphabet::binary()).unwrap();
        assert!(p.is_empty());
        // re-encoding normalizes away the trailing blanks
        assert_eq!(p.encode(&z(), &Alphabet::binary()).unwrap().to_string(), "");
    }

    #[test]
    fn exhaustive_roundtrip_ball2_binary() {
        // Every pattern supported in ball(2) of Z with |A| = 2: each of the
        // 5 sites is blank, 0 or 1.
        let ctx = z();
        let ball = ctx.ball(2);
        let a = Alphabet::binary();
        let mut count = 0;
        for mask in 0..3u32.pow(5) {
            let mut cells = Vec::new();
            let mut m = mask;
            for site in &ball.elements {
                let digit = m % 3;
                m /= 3;
                if digit < 2 {
                    cells.push((site.clone(), digit));
                }
            }
            let p = Pattern::from_cells(cells);
            let code = p.encode(&ctx, &a).unwrap();
            assert_eq!(code.decode(&ctx, &a).unwrap(), p);
            count += 1;
        }
        assert_eq!(count, 243);
    }

    #[test]
    fn translate_examples() {
        let ctx = z();
        let p = Pattern::from_cells([(elt(0), 1)]);
        assert_eq!(p.translate(&ctx, &ctx.identity()).unwrap(), p);
        let q = p.translate(&ctx, &elt(1)).unwrap();
        assert_eq!(q.get(&Site::plain(elt(1))), Some(1));
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn compatible_examples() {
        let p = Pattern::from_cells([(elt(0), 0)]);
        let q = Pattern::from_cells([(elt(1), 1)]);
        let r = Pattern::from_cells([(elt(0), 1)]);
        assert!(p.compatible(&q), "disjoint supports");
        assert!(p.compatible(&p));
        assert!(!p.compatible(&r));
    }

    #[test]
    fn iota_embedding() {
        let ctx = z();
        let p = Pattern::from_leveled_cells([
            (ctx.identity(), 0, 1),
            (elt(1), 1, 0),
        ]);
        let q = p.iota_embed(0).unwrap();
        assert_eq!(q.len(), p.len());
        let q2 = p.iota_embed(1).unwrap();
        let levels0: std::collections::BTreeSet<u32> = q.sites().map(|s| s.level).collect();
        let levels1: std::collections::BTreeSet<u32> = q2.sites().map(|s| s.level).collect();
        assert!(levels0.is_disjoint(&levels1));
    }

    #[test]
    fn pairing_roundtrip() {
        for a in 0..40 {
            for b in 0..40 {
                assert_eq!(unpair(pair(a, b)), (a, b));
            }
        }
        assert_eq!(pair(0, 0), 0);
    }

    proptest! {
        #[test]
        fn roundtrip_random_patterns(mask in 0u64..3u64.pow(9)) {
            // patterns over ball(3) of Z with |A| = 2
            let ctx = z();
            let ball = ctx.ball(3);
            let a = Alphabet::binary();
            let mut cells = Vec::new();
            let mut m = mask;
            for site in ball.elements.iter().take(9) {
                let digit = m % 3;
                m /= 3;
                if digit < 2 {
                    cells.push((site.clone(), digit as u32));
                }
            }
            let p = Pattern::from_cells(cells);
            let code = p.encode(&ctx, &a).unwrap();
            prop_assert_eq!(code.decode(&ctx, &a).unwrap(), p);
        }

        #[test]
        fn translate_is_an_action(g in -6i64..6, h in -6i64..6, mask in 0u32..81) {
            let ctx = z();
            let ball = ctx.ball(2);
            let mut cells = Vec::new();
            let mut m = mask;
            for site in ball.elements.iter().take(4) {
                let digit = m % 3;
                m /= 3;
                if digit < 2 {
                    cells.push((site.clone(), digit));
                }
            }
            let p = Pattern::from_cells(cells);
            let gh = ctx.mul(&elt(g), &elt(h)).unwrap();
            let left = p.translate(&ctx, &elt(h)).unwrap().translate(&ctx, &elt(g)).unwrap();
            let right = p.translate(&ctx, &gh).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
