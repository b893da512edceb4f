//! Subshifts from forbidden-pattern sources.
//!
//! A subshift is a group context, an alphabet and a source of forbidden
//! patterns. Sources are either finite sets or monotone step-indexed tables
//! (`E(k)` grows with the step budget `k`), which is how recursively
//! enumerable forbidden sets are realized at desk scale.
//!
//! The operations here are the finite kernels behind the emptiness
//! questions: locally admissible windows on balls, the exact deciders for
//! the integers (transition graph) and free groups (nearest-neighbor
//! pruning), the compactness semi-decider, and periodic-point search with
//! self-validating witnesses.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{OffsetPattern, TransitionGraph};
use crate::group::{GroupContext, GroupElement, GroupKind};
use crate::limits::BudgetSchedule;
use crate::pattern::{Alphabet, Pattern, Site, Symbol};
use crate::{Error, Limits, Result};

/// A monotone step-indexed table: `E(k)` is the set of patterns whose step
/// is at most `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepTable {
    entries: Vec<(u64, Pattern)>,
}

impl StepTable {
    pub fn new(mut entries: Vec<(u64, Pattern)>) -> Self {
        entries.sort_by_key(|(step, _)| *step);
        StepTable { entries }
    }

    pub fn entries(&self) -> &[(u64, Pattern)] {
        &self.entries
    }

    pub fn up_to(&self, budget: u64) -> impl Iterator<Item = &Pattern> {
        self.entries
            .iter()
            .take_while(move |(step, _)| *step <= budget)
            .map(|(_, p)| p)
    }
}

/// Source of forbidden patterns: an explicit finite set, or a monotone
/// enumerator realized as a step table.
#[derive(Debug, Clone, PartialEq)]
pub enum ForbiddenSource {
    Finite(Vec<Pattern>),
    Enumerated(StepTable),
}

impl ForbiddenSource {
    pub fn empty() -> Self {
        ForbiddenSource::Finite(vec![])
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ForbiddenSource::Finite(_))
    }

    /// Patterns visible within the given step budget. Finite sets ignore
    /// the budget.
    pub fn patterns_within(&self, budget: u64) -> Vec<&Pattern> {
        match self {
            ForbiddenSource::Finite(ps) => ps.iter().collect(),
            ForbiddenSource::Enumerated(t) => t.up_to(budget).collect(),
        }
    }

    /// Every pattern the source can ever emit.
    pub fn all_patterns(&self) -> Vec<&Pattern> {
        match self {
            ForbiddenSource::Finite(ps) => ps.iter().collect(),
            ForbiddenSource::Enumerated(t) => t.entries.iter().map(|(_, p)| p).collect(),
        }
    }
}

/// A subshift: configurations over the alphabet avoiding every translate of
/// every forbidden pattern. When the forbidden patterns are leveled the
/// ambient space is `A^(G x N)` and translation moves only the group
/// coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Subshift {
    ctx: GroupContext,
    alphabet: Alphabet,
    forbidden: ForbiddenSource,
    leveled: bool,
}

impl Subshift {
    pub fn new(ctx: GroupContext, alphabet: Alphabet, forbidden: ForbiddenSource) -> Result<Self> {
        let mut leveled = None;
        for p in forbidden.all_patterns() {
            for (site, sym) in p.cells() {
                if !ctx.contains(&site.element) {
                    return Err(Error::WrongGroup {
                        group: ctx.to_string(),
                        element: site.element.to_string(),
                    });
                }
                alphabet.check(sym)?;
            }
            match leveled {
                None => leveled = Some(p.is_leveled()),
                Some(l) if l != p.is_leveled() => {
                    return Err(Error::PatternKind(
                        "forbidden set mixes patterns over G and G x N".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(Subshift {
            ctx,
            alphabet,
            forbidden,
            leveled: leveled.unwrap_or(false),
        })
    }

    pub fn full(ctx: GroupContext, alphabet: Alphabet) -> Self {
        Subshift {
            ctx,
            alphabet,
            forbidden: ForbiddenSource::empty(),
            leveled: false,
        }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &ForbiddenSource {
        &self.forbidden
    }

    pub fn is_leveled(&self) -> bool {
        self.leveled
    }

    pub fn is_finite_type(&self) -> bool {
        self.forbidden.is_finite()
    }

    /// The window sites for radius `r` (and levels `0..=max_level` when the
    /// subshift is leveled), in canonical order.
    pub fn window_sites(&self, r: u32, max_level: u32) -> Vec<Site> {
        let ball = self.ctx.ball(r);
        if self.leveled {
            ball.elements
                .iter()
                .flat_map(|g| (0..=max_level).map(move |l| Site::leveled(g.clone(), l)))
                .collect()
        } else {
            ball.elements.iter().cloned().map(Site::plain).collect()
        }
    }

    /// Compile the fully contained forbidden translates against a site set.
    /// Returns `None` when an empty forbidden pattern makes everything
    /// forbidden.
    fn placements(&self, sites: &[Site], budget: u64) -> Result<Option<Vec<Placement>>> {
        let pos: BTreeMap<&Site, usize> = sites.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let window_radius = sites
            .iter()
            .map(|s| s.element.word_length())
            .max()
            .unwrap_or(0);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for p in self.forbidden.patterns_within(budget) {
            if p.is_empty() {
                return Ok(None);
            }
            let reach = window_radius + p.support_radius();
            let reach = u32::try_from(reach).map_err(|_| Error::ResourceLimit {
                what: "translate search radius",
                needed: reach as u128,
                limit: u32::MAX as u128,
            })?;
            for g in &self.ctx.ball(reach).elements {
                let mut cells = Vec::with_capacity(p.len());
                let mut fits = true;
                for (site, sym) in p.cells() {
                    let moved = Site::leveled(self.ctx.mul(g, &site.element)?, site.level);
                    match pos.get(&moved) {
                        Some(&i) => cells.push((i, sym)),
                        None => {
                            fits = false;
                            break;
                        }
                    }
                }
                if fits {
                    cells.sort_unstable();
                    if seen.insert(cells.clone()) {
                        out.push(Placement { cells });
                    }
                }
            }
        }
        Ok(Some(out))
    }

    fn window_space(&self, n_sites: usize, limits: &Limits) -> Result<()> {
        let space = (self.alphabet.size() as u128).checked_pow(n_sites as u32);
        limits.check("window space", space.unwrap_or(u128::MAX))
    }

    /// All locally admissible windows on `ball(r)`: total maps from the
    /// ball to the alphabet containing no fully included forbidden
    /// translate emitted within the budget. Windows come out in
    /// lexicographic order along the canonical site order.
    pub fn locally_admissible(&self, r: u32, budget: u64, limits: &Limits) -> Result<Vec<Pattern>> {
        if self.leveled {
            return Err(Error::PatternKind(
                "use locally_admissible_leveled for subshifts over G x N".into(),
            ));
        }
        let sites = self.window_sites(r, 0);
        self.enumerate_windows(&sites, budget, limits, None)
    }

    /// Leveled variant: windows on `ball(r) x {0..max_level}`.
    pub fn locally_admissible_leveled(
        &self,
        r: u32,
        max_level: u32,
        budget: u64,
        limits: &Limits,
    ) -> Result<Vec<Pattern>> {
        let sites = self.window_sites(r, max_level);
        self.enumerate_windows(&sites, budget, limits, None)
    }

    /// True iff at least one admissible window exists on the given sites.
    pub fn any_admissible_window(
        &self,
        r: u32,
        max_level: u32,
        budget: u64,
        limits: &Limits,
    ) -> Result<bool> {
        let sites = self.window_sites(r, max_level);
        let found = self.enumerate_windows(&sites, budget, limits, Some(1))?;
        Ok(!found.is_empty())
    }

    fn enumerate_windows(
        &self,
        sites: &[Site],
        budget: u64,
        limits: &Limits,
        stop_after: Option<usize>,
    ) -> Result<Vec<Pattern>> {
        self.window_space(sites.len(), limits)?;
        let Some(placements) = self.placements(sites, budget)? else {
            return Ok(vec![]);
        };
        let mut out = Vec::new();
        search_assignments(sites.len(), &self.alphabet, &placements, |assign| {
            out.push(self.assignment_to_pattern(sites, assign));
            stop_after.is_none_or(|limit| out.len() < limit)
        });
        Ok(out)
    }

    fn assignment_to_pattern(&self, sites: &[Site], assign: &[Symbol]) -> Pattern {
        if self.leveled {
            Pattern::from_leveled_cells(
                sites
                    .iter()
                    .zip(assign)
                    .map(|(s, &v)| (s.element.clone(), s.level, v)),
            )
        } else {
            Pattern::from_cells(sites.iter().zip(assign).map(|(s, &v)| (s.element.clone(), v)))
        }
    }

    /// Exact emptiness decision for finite-type integer subshifts via the
    /// transition graph. Returns `true` iff the subshift is empty.
    pub fn decide_empty_z(&self, limits: &Limits) -> Result<bool> {
        if self.ctx.kind() != GroupKind::Integers {
            return Err(Error::UnsupportedGroup {
                required: "Z",
                got: self.ctx.to_string(),
            });
        }
        let graph = self.transition_graph(limits)?;
        match graph {
            Some(g) => Ok(!g.has_cycle()),
            None => Ok(true),
        }
    }

    /// The order-`m` transition graph of a finite-type integer subshift.
    /// `None` when an empty forbidden pattern makes the subshift empty.
    pub fn transition_graph(&self, limits: &Limits) -> Result<Option<TransitionGraph>> {
        if self.ctx.kind() != GroupKind::Integers {
            return Err(Error::UnsupportedGroup {
                required: "Z",
                got: self.ctx.to_string(),
            });
        }
        if !self.forbidden.is_finite() {
            return Err(Error::NotFinite);
        }
        if self.leveled {
            return Err(Error::PatternKind("expected a pattern over G".into()));
        }
        let mut offset_patterns: Vec<OffsetPattern> = Vec::new();
        for p in self.forbidden.all_patterns() {
            if p.is_empty() {
                return Ok(None);
            }
            let min = p
                .sites()
                .map(|s| s.element.as_int().unwrap())
                .min()
                .unwrap();
            let cells: OffsetPattern = p
                .cells()
                .map(|(s, sym)| ((s.element.as_int().unwrap() - min) as usize, sym))
                .collect();
            offset_patterns.push(cells);
        }
        Ok(Some(TransitionGraph::build(
            self.alphabet,
            &offset_patterns,
            limits,
        )?))
    }

    /// Exact emptiness decision for finite-type subshifts on free groups
    /// whose forbidden patterns are in nearest-neighbor form (supports of
    /// word-metric diameter at most 1). Returns `true` iff empty.
    ///
    /// Iterated pruning: a symbol survives a round when it has a surviving
    /// consistent neighbor in every generator direction; the subshift is
    /// nonempty iff the greatest fixed point is nonempty.
    pub fn decide_empty_free(&self) -> Result<bool> {
        let rank = match self.ctx.kind() {
            GroupKind::Free(r) => r,
            _ => {
                return Err(Error::UnsupportedGroup {
                    required: "F_r",
                    got: self.ctx.to_string(),
                })
            }
        };
        if !self.forbidden.is_finite() {
            return Err(Error::NotFinite);
        }
        let n = self.alphabet.size();
        let dirs = 2 * rank as usize;
        let generators = self.ctx.generators();
        let mut singleton_bad = vec![false; n];
        // forbidden_pair[d][a * n + b]: symbol b may not sit in direction d
        // from symbol a
        let mut forbidden_pair = vec![vec![false; n * n]; dirs];
        for p in self.forbidden.all_patterns() {
            let cells: Vec<(&Site, Symbol)> = p.cells().collect();
            match cells.len() {
                0 => return Ok(true),
                1 => singleton_bad[cells[0].1 as usize] = true,
                2 => {
                    let (u, a) = (&cells[0].0.element, cells[0].1);
                    let (v, b) = (&cells[1].0.element, cells[1].1);
                    let step = self.ctx.mul(&self.ctx.inv(u)?, v)?;
                    if step.word_length() != 1 {
                        return Err(Error::NotNearestNeighbor(format!(
                            "support pair at distance {}",
                            step.word_length()
                        )));
                    }
                    let d = generators.iter().position(|g| *g == step).unwrap();
                    let dinv = d ^ 1;
                    forbidden_pair[d][a as usize * n + b as usize] = true;
                    forbidden_pair[dinv][b as usize * n + a as usize] = true;
                }
                _ => {
                    return Err(Error::NotNearestNeighbor(
                        "support has more than two sites".into(),
                    ))
                }
            }
        }
        let mut alive: Vec<bool> = singleton_bad.iter().map(|b| !b).collect();
        loop {
            let mut changed = false;
            for a in 0..n {
                if !alive[a] {
                    continue;
                }
                let extendable = (0..dirs).all(|d| {
                    (0..n).any(|b| alive[b] && !forbidden_pair[d][a * n + b])
                });
                if !extendable {
                    alive[a] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(!alive.iter().any(|&a| a))
    }

    /// Higher-block recoding of a finite-type free-group subshift into
    /// nearest-neighbor form over the power alphabet of admissible
    /// ball-windows. Emptiness is preserved exactly.
    pub fn recode_nearest_neighbor(&self, limits: &Limits) -> Result<(Subshift, RecodeLegend)> {
        let rank = match self.ctx.kind() {
            GroupKind::Free(r) => r,
            _ => {
                return Err(Error::UnsupportedGroup {
                    required: "F_r",
                    got: self.ctx.to_string(),
                })
            }
        };
        if !self.forbidden.is_finite() {
            return Err(Error::NotFinite);
        }
        // covering radius: every forbidden pattern fits in some translate of
        // ball(R)
        let mut radius: u64 = 0;
        for p in self.forbidden.all_patterns() {
            if p.is_empty() {
                return Ok((
                    canonical_empty(self.ctx),
                    RecodeLegend {
                        radius: 0,
                        ball: vec![self.ctx.identity()],
                        symbols: vec![],
                    },
                ));
            }
            // center the support: the best anchor lies within twice the
            // eccentricity of the first support element
            let first = &p.sites().next().unwrap().element;
            let inv_first = self.ctx.inv(first)?;
            let ecc = p
                .sites()
                .map(|s| self.ctx.mul(&inv_first, &s.element).unwrap().word_length())
                .max()
                .unwrap();
            let best = self
                .ctx
                .ball(2 * ecc as u32)
                .elements
                .iter()
                .map(|w| {
                    let anchor = self.ctx.mul(first, w).unwrap();
                    let inv = self.ctx.inv(&anchor).unwrap();
                    p.sites()
                        .map(|s| self.ctx.mul(&inv, &s.element).unwrap().word_length())
                        .max()
                        .unwrap()
                })
                .min()
                .unwrap();
            radius = radius.max(best);
        }
        let radius = radius as u32;
        let ball = self.ctx.ball(radius);
        limits.check(
            "rule table",
            (self.alphabet.size() as u128)
                .checked_pow(ball.len() as u32)
                .unwrap_or(u128::MAX),
        )?;
        let windows = self.locally_admissible(radius, u64::MAX, limits)?;
        let symbols: Vec<Vec<Symbol>> = windows
            .iter()
            .map(|w| {
                ball.elements
                    .iter()
                    .map(|g| w.get(&Site::plain(g.clone())).unwrap())
                    .collect()
            })
            .collect();
        if symbols.is_empty() {
            return Ok((
                canonical_empty(self.ctx),
                RecodeLegend {
                    radius,
                    ball: ball.elements,
                    symbols,
                },
            ));
        }
        let power = Alphabet::new(symbols.len())?;
        // overlap-consistency constraints along each generator direction
        let mut forbidden = Vec::new();
        for (d, s) in self.ctx.generators().into_iter().enumerate() {
            if d % 2 == 1 {
                continue; // the inverse direction is the mirrored constraint
            }
            let s_inv = self.ctx.inv(&s)?;
            let overlap: Vec<(usize, usize)> = ball
                .elements
                .iter()
                .enumerate()
                .filter_map(|(ui, u)| {
                    let shifted = self.ctx.mul(&s_inv, u).unwrap();
                    if shifted.word_length() <= radius as u64 {
                        let vi = ball.elements.iter().position(|h| *h == shifted).unwrap();
                        Some((ui, vi))
                    } else {
                        None
                    }
                })
                .collect();
            for (i, wi) in symbols.iter().enumerate() {
                for (j, wj) in symbols.iter().enumerate() {
                    let ok = overlap.iter().all(|&(ui, vi)| wi[ui] == wj[vi]);
                    if !ok {
                        forbidden.push(Pattern::from_cells([
                            (self.ctx.identity(), i as Symbol),
                            (s.clone(), j as Symbol),
                        ]));
                    }
                }
            }
        }
        let _ = rank;
        let recoded = Subshift::new(self.ctx, power, ForbiddenSource::Finite(forbidden))?;
        Ok((
            recoded,
            RecodeLegend {
                radius,
                ball: ball.elements,
                symbols,
            },
        ))
    }

    /// Emptiness semi-decision by compactness: report `EmptyAt(r)` for the
    /// least radius whose admissible window set is empty under the budget
    /// schedule, `Unknown` otherwise. Never claims emptiness falsely.
    pub fn semidecide_empty(
        &self,
        max_radius: u32,
        schedule: &BudgetSchedule,
        limits: &Limits,
    ) -> Result<AdmissibilityCertificate> {
        for r in 0..=max_radius {
            let budget = schedule.at(r);
            let max_level = self.max_level_within(budget);
            if !self.any_admissible_window(r, max_level, budget, limits)? {
                return Ok(AdmissibilityCertificate {
                    verdict: Verdict::EmptyAt { radius: r },
                });
            }
        }
        Ok(AdmissibilityCertificate {
            verdict: Verdict::Unknown {
                max_radius,
                budget_steps: schedule.at(max_radius),
            },
        })
    }

    /// Largest level mentioned by forbidden patterns within the budget.
    pub fn max_level_within(&self, budget: u64) -> u32 {
        self.forbidden
            .patterns_within(budget)
            .iter()
            .map(|p| p.max_level())
            .max()
            .unwrap_or(0)
    }

    /// Search for a periodic configuration avoiding every forbidden
    /// translate, trying period vectors componentwise up to the bounds in
    /// lexicographic order. Only for `Z` and `Z^d`. The returned witness is
    /// re-verified before being handed out; absence is not an emptiness
    /// proof.
    pub fn find_periodic_point(
        &self,
        bounds: &[u64],
        limits: &Limits,
    ) -> Result<Option<PeriodicConfiguration>> {
        let dims = match self.ctx.kind() {
            GroupKind::Integers => 1,
            GroupKind::Grid(d) => d as usize,
            GroupKind::Free(_) => {
                return Err(Error::UnsupportedGroup {
                    required: "Z or Z^d",
                    got: self.ctx.to_string(),
                })
            }
        };
        if self.leveled {
            return Err(Error::PatternKind("expected a pattern over G".into()));
        }
        if !self.forbidden.is_finite() {
            return Err(Error::NotFinite);
        }
        if bounds.len() != dims {
            return Err(Error::InvalidConfig(format!(
                "expected {dims} period bounds"
            )));
        }
        let patterns: Vec<Vec<(Vec<i64>, Symbol)>> = self
            .forbidden
            .all_patterns()
            .iter()
            .map(|p| {
                p.cells()
                    .map(|(s, sym)| (element_coords(&s.element), sym))
                    .collect()
            })
            .collect();
        if patterns.iter().any(|p| p.is_empty()) {
            return Ok(None);
        }
        let mut periods = vec![1u64; dims];
        loop {
            if let Some(cfg) = self.search_box(&periods, &patterns, limits)? {
                debug_assert!(cfg.verify(self)?);
                return Ok(Some(cfg));
            }
            // next period vector in lexicographic order
            let mut i = dims;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                periods[i] += 1;
                if periods[i] <= bounds[i] {
                    break;
                }
                periods[i] = 1;
            }
        }
    }

    fn search_box(
        &self,
        periods: &[u64],
        patterns: &[Vec<(Vec<i64>, Symbol)>],
        limits: &Limits,
    ) -> Result<Option<PeriodicConfiguration>> {
        let box_size: u64 = periods.iter().product();
        self.window_space(box_size as usize, limits)?;
        // compile every (pattern, base offset) instance into box cells
        let mut placements = Vec::new();
        let mut seen = BTreeSet::new();
        for pat in patterns {
            for base in 0..box_size {
                let base_coords = index_to_coords(base, periods);
                let mut cells: Vec<(usize, Symbol)> = Vec::with_capacity(pat.len());
                let mut consistent = true;
                for (off, sym) in pat {
                    let mut coords = vec![0u64; periods.len()];
                    for (i, (b, o)) in base_coords.iter().zip(off).enumerate() {
                        coords[i] = (*b as i64 + o).rem_euclid(periods[i] as i64) as u64;
                    }
                    let idx = coords_to_index(&coords, periods) as usize;
                    match cells.iter().find(|(i, _)| *i == idx) {
                        Some((_, existing)) if existing != sym => {
                            consistent = false;
                            break;
                        }
                        Some(_) => {}
                        None => cells.push((idx, *sym)),
                    }
                }
                if consistent {
                    cells.sort_unstable();
                    if seen.insert(cells.clone()) {
                        placements.push(Placement { cells });
                    }
                }
            }
        }
        let mut found = None;
        search_assignments(box_size as usize, &self.alphabet, &placements, |assign| {
            found = Some(PeriodicConfiguration {
                periods: periods.to_vec(),
                cells: assign.to_vec(),
            });
            false
        });
        Ok(found)
    }
}

fn canonical_empty(ctx: GroupContext) -> Subshift {
    let alphabet = Alphabet::new(1).unwrap();
    Subshift::new(
        ctx,
        alphabet,
        ForbiddenSource::Finite(vec![Pattern::from_cells([(ctx.identity(), 0)])]),
    )
    .unwrap()
}

/// Mapping from higher-block symbols back to ball windows.
#[derive(Debug, Clone)]
pub struct RecodeLegend {
    pub radius: u32,
    pub ball: Vec<GroupElement>,
    pub symbols: Vec<Vec<Symbol>>,
}

/// Exact emptiness decision dispatched on the group: transition graph over
/// the integers, pruning (after higher-block recoding when needed) on free
/// groups. Errors on grids, whose domino problem has no decider.
pub fn decide_empty_exact(shift: &Subshift, limits: &Limits) -> Result<bool> {
    match shift.ctx().kind() {
        GroupKind::Integers => shift.decide_empty_z(limits),
        GroupKind::Free(_) => match shift.decide_empty_free() {
            Ok(v) => Ok(v),
            Err(Error::NotNearestNeighbor(_)) => {
                let (recoded, _) = shift.recode_nearest_neighbor(limits)?;
                recoded.decide_empty_free()
            }
            Err(e) => Err(e),
        },
        GroupKind::Grid(_) => Err(Error::UnsupportedGroup {
            required: "Z or F_r",
            got: shift.ctx().to_string(),
        }),
    }
}

fn element_coords(g: &GroupElement) -> Vec<i64> {
    match (g.as_int(), g.as_vector()) {
        (Some(n), _) => vec![n],
        (_, Some(v)) => v.to_vec(),
        _ => unreachable!("periodic search is limited to Z and Z^d"),
    }
}

fn index_to_coords(mut idx: u64, periods: &[u64]) -> Vec<u64> {
    let mut coords = vec![0u64; periods.len()];
    for i in (0..periods.len()).rev() {
        coords[i] = idx % periods[i];
        idx /= periods[i];
    }
    coords
}

fn coords_to_index(coords: &[u64], periods: &[u64]) -> u64 {
    let mut idx = 0;
    for (c, p) in coords.iter().zip(periods) {
        idx = idx * p + c;
    }
    idx
}

/// A forbidden placement compiled against a fixed cell order.
struct Placement {
    cells: Vec<(usize, Symbol)>,
}

/// Depth-first enumeration of all assignments avoiding every placement.
/// Assignments are produced in lexicographic order (cells in order, symbols
/// ascending); the callback returns `false` to stop early.
fn search_assignments(
    n_cells: usize,
    alphabet: &Alphabet,
    placements: &[Placement],
    mut on_solution: impl FnMut(&[Symbol]) -> bool,
) {
    // index placements by their last cell so each is checked exactly when
    // it becomes fully assigned
    let mut by_last: Vec<Vec<&Placement>> = vec![Vec::new(); n_cells.max(1)];
    let mut trivially_blocked = false;
    for p in placements {
        match p.cells.last() {
            Some(&(last, _)) => by_last[last].push(p),
            None => trivially_blocked = true,
        }
    }
    if trivially_blocked {
        return;
    }
    if n_cells == 0 {
        on_solution(&[]);
        return;
    }
    let n_syms = alphabet.size() as Symbol;
    let mut assign: Vec<Symbol> = vec![0; n_cells];
    let mut depth = 0usize;
    'outer: loop {
        // try to accept assign[depth]
        let sym = assign[depth];
        if sym < n_syms {
            let ok = by_last[depth]
                .iter()
                .all(|p| !p.cells.iter().all(|&(c, s)| assign[c] == s));
            if ok {
                if depth + 1 == n_cells {
                    if !on_solution(&assign) {
                        return;
                    }
                    // advance at the deepest level
                    assign[depth] += 1;
                } else {
                    depth += 1;
                    assign[depth] = 0;
                }
                continue 'outer;
            }
            assign[depth] += 1;
            continue 'outer;
        }
        // exhausted symbols at this depth: backtrack
        loop {
            if depth == 0 {
                return;
            }
            depth -= 1;
            assign[depth] += 1;
            if assign[depth] < n_syms {
                break;
            }
        }
    }
}

/// Outcome of an emptiness run, with enough data to re-check it.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// No locally admissible window exists on `ball(radius)`; by compactness
    /// the subshift is empty.
    EmptyAt { radius: u32 },
    /// A verified periodic configuration.
    NonemptyWitness { witness: PeriodicConfiguration },
    /// Budget exhausted without a verdict.
    Unknown { max_radius: u32, budget_steps: u64 },
}

/// Certificate wrapper for emptiness runs.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityCertificate {
    pub verdict: Verdict,
}

/// A configuration periodic along every generator, stored on its period box
/// in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicConfiguration {
    pub periods: Vec<u64>,
    pub cells: Vec<Symbol>,
}

impl PeriodicConfiguration {
    pub fn get(&self, coords: &[i64]) -> Symbol {
        let wrapped: Vec<u64> = coords
            .iter()
            .zip(&self.periods)
            .map(|(c, p)| c.rem_euclid(*p as i64) as u64)
            .collect();
        self.cells[coords_to_index(&wrapped, &self.periods) as usize]
    }

    /// Re-check every forbidden translate within one period box.
    pub fn verify(&self, shift: &Subshift) -> Result<bool> {
        if !shift.forbidden().is_finite() {
            return Err(Error::NotFinite);
        }
        let box_size: u64 = self.periods.iter().product();
        for p in shift.forbidden().all_patterns() {
            if p.is_empty() {
                return Ok(false);
            }
            for base in 0..box_size {
                let base_coords = index_to_coords(base, &self.periods);
                let hit = p.cells().all(|(site, sym)| {
                    let off = element_coords(&site.element);
                    let coords: Vec<i64> = base_coords
                        .iter()
                        .zip(&off)
                        .map(|(b, o)| *b as i64 + o)
                        .collect();
                    self.get(&coords) == sym
                });
                if hit {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Ready-made subshifts used across tests, demos and documentation.
pub mod families {
    use super::*;

    /// The full shift over the given alphabet.
    pub fn full_shift(ctx: GroupContext, alphabet: Alphabet) -> Subshift {
        Subshift::full(ctx, alphabet)
    }

    /// Forbid the given words (placed at consecutive integer positions) in
    /// a shift over `Z`.
    pub fn forbid_words(alphabet: Alphabet, words: &[&[Symbol]]) -> Result<Subshift> {
        let ctx = GroupContext::integers();
        let patterns = words
            .iter()
            .map(|w| {
                Pattern::from_cells(
                    w.iter()
                        .enumerate()
                        .map(|(i, &s)| (ctx.parse_element(&i.to_string()).unwrap(), s)),
                )
            })
            .collect();
        Subshift::new(ctx, alphabet, ForbiddenSource::Finite(patterns))
    }

    /// The golden mean shift: binary sequences with no adjacent ones.
    pub fn golden_mean() -> Subshift {
        forbid_words(Alphabet::binary(), &[&[1, 1]]).unwrap()
    }

    /// The binary subshift containing only the all-zero configuration.
    pub fn zero_fixed_point() -> Subshift {
        forbid_words(Alphabet::binary(), &[&[1]]).unwrap()
    }

    /// A Wang tile set on `Z^2`. Each tile lists its edge colors in the
    /// order north, east, south, west; adjacent tiles must agree on the
    /// shared edge.
    pub fn wang_tiles(tiles: &[[u32; 4]]) -> Result<Subshift> {
        let ctx = GroupContext::grid(2)?;
        let alphabet = Alphabet::new(tiles.len())?;
        let east = ctx.parse_element("(1,0)")?;
        let north = ctx.parse_element("(0,1)")?;
        let mut forbidden = Vec::new();
        for (i, t) in tiles.iter().enumerate() {
            for (j, u) in tiles.iter().enumerate() {
                // east edge of t against west edge of u
                if t[1] != u[3] {
                    forbidden.push(Pattern::from_cells([
                        (ctx.identity(), i as Symbol),
                        (east.clone(), j as Symbol),
                    ]));
                }
                // north edge of t against south edge of u
                if t[0] != u[2] {
                    forbidden.push(Pattern::from_cells([
                        (ctx.identity(), i as Symbol),
                        (north.clone(), j as Symbol),
                    ]));
                }
            }
        }
        Subshift::new(ctx, alphabet, ForbiddenSource::Finite(forbidden))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use families::*;

    fn limits() -> Limits {
        Limits::default()
    }

    /// Independent window oracle: loop over every total map and check every
    /// translate placement directly.
    fn window_oracle(shift: &Subshift, r: u32, budget: u64) -> Vec<Vec<Symbol>> {
        let ball = shift.ctx().ball(r);
        let sites: Vec<GroupElement> = ball.elements.clone();
        let n = sites.len();
        let a = shift.alphabet().size() as u64;
        let total = a.pow(n as u32);
        let mut out = Vec::new();
        'cand: for code in 0..total {
            let mut assign = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                assign.push((c % a) as Symbol);
                c /= a;
            }
            for p in shift.forbidden().patterns_within(budget) {
                if p.is_empty() {
                    continue 'cand;
                }
                let reach = (r as u64 + p.support_radius()) as u32;
                for g in &shift.ctx().ball(reach).elements {
                    let mut all = true;
                    let mut fits = true;
                    for (site, sym) in p.cells() {
                        let moved = shift.ctx().mul(g, &site.element).unwrap();
                        match sites.iter().position(|s| *s == moved) {
                            Some(i) => {
                                if assign[i] != sym {
                                    all = false;
                                    break;
                                }
                            }
                            None => {
                                fits = false;
                                break;
                            }
                        }
                    }
                    if fits && all {
                        continue 'cand;
                    }
                }
            }
            out.push(assign);
        }
        out
    }

    #[test]
    fn full_shift_windows() {
        let shift = full_shift(GroupContext::integers(), Alphabet::binary());
        let w = shift.locally_admissible(1, 0, &limits()).unwrap();
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn golden_mean_windows_at_r1() {
        let shift = golden_mean();
        let w = shift.locally_admissible(1, 0, &limits()).unwrap();
        assert_eq!(w.len(), 5);
        let oracle = window_oracle(&shift, 1, 0);
        assert_eq!(w.len(), oracle.len());
    }

    #[test]
    fn both_letters_forbidden_empty_at_r0() {
        let shift = forbid_words(Alphabet::binary(), &[&[0], &[1]]).unwrap();
        let w = shift.locally_admissible(0, 0, &limits()).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn window_monotonicity() {
        let shift = golden_mean();
        let small = shift.locally_admissible(1, 0, &limits()).unwrap();
        let large = shift.locally_admissible(2, 0, &limits()).unwrap();
        // every restriction of a larger window appears among the smaller
        let ball: Vec<GroupElement> = shift.ctx().ball(1).elements;
        for w in &large {
            let restricted = Pattern::from_cells(
                ball.iter()
                    .map(|g| (g.clone(), w.get(&Site::plain(g.clone())).unwrap())),
            );
            assert!(small.contains(&restricted));
        }
    }

    #[test]
    fn decide_empty_z_examples() {
        assert!(!golden_mean().decide_empty_z(&limits()).unwrap());
        let empty = forbid_words(Alphabet::binary(), &[&[0], &[1]]).unwrap();
        assert!(empty.decide_empty_z(&limits()).unwrap());
        let const_one = forbid_words(Alphabet::binary(), &[&[0, 0], &[0, 1], &[1, 0]]).unwrap();
        assert!(!const_one.decide_empty_z(&limits()).unwrap());
    }

    #[test]
    fn decide_empty_free_examples() {
        let f2 = GroupContext::free(2).unwrap();
        let full = full_shift(f2, Alphabet::binary());
        assert!(!full.decide_empty_free().unwrap());

        // forbid every adjacency: nothing survives pruning
        let mut forbidden = Vec::new();
        for s in f2.generators() {
            for a in 0..2 {
                for b in 0..2 {
                    forbidden.push(Pattern::from_cells([
                        (f2.identity(), a),
                        (s.clone(), b),
                    ]));
                }
            }
        }
        let dead = Subshift::new(f2, Alphabet::binary(), ForbiddenSource::Finite(forbidden))
            .unwrap();
        assert!(dead.decide_empty_free().unwrap());

        // forbid equal symbols across generator a only: alternate along a
        let a_gen = f2.parse_element("a").unwrap();
        let forbidden = (0..2)
            .map(|v| Pattern::from_cells([(f2.identity(), v), (a_gen.clone(), v)]))
            .collect();
        let alt = Subshift::new(f2, Alphabet::binary(), ForbiddenSource::Finite(forbidden))
            .unwrap();
        assert!(!alt.decide_empty_free().unwrap());
    }

    #[test]
    fn free_recoding_preserves_emptiness() {
        let f2 = GroupContext::free(2).unwrap();
        let aa = f2.parse_element("a^2").unwrap();
        // forbid 0 at distance-2 pairs along a; not nearest neighbor
        let forbidden = vec![Pattern::from_cells([
            (f2.identity(), 0),
            (aa.clone(), 0),
        ])];
        let shift =
            Subshift::new(f2, Alphabet::binary(), ForbiddenSource::Finite(forbidden)).unwrap();
        assert!(matches!(
            shift.decide_empty_free(),
            Err(Error::NotNearestNeighbor(_))
        ));
        assert!(!decide_empty_exact(&shift, &limits()).unwrap());

        // same but forbidding everything two apart in both values and both
        // letters of the alphabet, plus singletons: empty
        let mut forbidden = Vec::new();
        for v in 0..2 {
            forbidden.push(Pattern::from_cells([(f2.identity(), v)]));
        }
        let shift =
            Subshift::new(f2, Alphabet::binary(), ForbiddenSource::Finite(forbidden)).unwrap();
        assert!(decide_empty_exact(&shift, &limits()).unwrap());
    }

    #[test]
    fn semidecider_examples() {
        // one Wang tile whose east and west colors differ: empty at radius 1
        let shift = wang_tiles(&[[0, 1, 0, 2]]).unwrap();
        let cert = shift
            .semidecide_empty(2, &BudgetSchedule::default(), &limits())
            .unwrap();
        assert_eq!(cert.verdict, Verdict::EmptyAt { radius: 1 });

        let full = full_shift(GroupContext::grid(2).unwrap(), Alphabet::binary());
        let cert = full
            .semidecide_empty(2, &BudgetSchedule::default(), &limits())
            .unwrap();
        assert!(matches!(cert.verdict, Verdict::Unknown { .. }));

        let dead = forbid_words(Alphabet::binary(), &[&[0], &[1]]).unwrap();
        let cert = dead
            .semidecide_empty(2, &BudgetSchedule::default(), &limits())
            .unwrap();
        assert_eq!(cert.verdict, Verdict::EmptyAt { radius: 0 });
    }

    #[test]
    fn periodic_point_examples() {
        let gm = golden_mean();
        let w = gm.find_periodic_point(&[1], &limits()).unwrap().unwrap();
        assert_eq!(w.cells, vec![0]);
        assert!(w.verify(&gm).unwrap());

        let full = full_shift(GroupContext::grid(2).unwrap(), Alphabet::binary());
        let w = full.find_periodic_point(&[1, 1], &limits()).unwrap().unwrap();
        assert_eq!(w.cells.len(), 1);

        let dead = forbid_words(Alphabet::binary(), &[&[0], &[1]]).unwrap();
        assert!(dead.find_periodic_point(&[4], &limits()).unwrap().is_none());
    }

    #[test]
    fn periodic_witness_detects_violations() {
        let gm = golden_mean();
        let bad = PeriodicConfiguration {
            periods: vec![2],
            cells: vec![1, 1],
        };
        assert!(!bad.verify(&gm).unwrap());
        let good = PeriodicConfiguration {
            periods: vec![2],
            cells: vec![0, 1],
        };
        assert!(good.verify(&gm).unwrap());
    }

    #[test]
    fn enumerated_source_budget() {
        let ctx = GroupContext::integers();
        let zero = ctx.identity();
        let table = StepTable::new(vec![
            (2, Pattern::from_cells([(zero.clone(), 0)])),
            (5, Pattern::from_cells([(zero.clone(), 1)])),
        ]);
        let shift = Subshift::new(
            ctx,
            Alphabet::binary(),
            ForbiddenSource::Enumerated(table),
        )
        .unwrap();
        assert_eq!(shift.locally_admissible(0, 0, &limits()).unwrap().len(), 2);
        assert_eq!(shift.locally_admissible(0, 2, &limits()).unwrap().len(), 1);
        assert_eq!(shift.locally_admissible(0, 5, &limits()).unwrap().len(), 0);
    }

    #[test]
    fn window_guard_trips() {
        let shift = full_shift(GroupContext::grid(2).unwrap(), Alphabet::new(6).unwrap());
        let tight = Limits {
            max_window_space: 100,
            ..Limits::default()
        };
        assert!(matches!(
            shift.locally_admissible(2, 0, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn emptiness_soundness_small() {
        // whenever the semi-decider says EmptyAt(r), the brute-force oracle
        // agrees (binary alphabets, r <= 2)
        let cases = [
            forbid_words(Alphabet::binary(), &[&[0], &[1]]).unwrap(),
            forbid_words(Alphabet::binary(), &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]).unwrap(),
            wang_tiles(&[[0, 1, 0, 2]]).unwrap(),
        ];
        for shift in cases {
            let cert = shift
                .semidecide_empty(2, &BudgetSchedule::default(), &limits())
                .unwrap();
            if let Verdict::EmptyAt { radius } = cert.verdict {
                assert!(window_oracle(&shift, radius, 0).is_empty());
            } else {
                panic!("expected emptiness for crafted case");
            }
        }
    }
}
