//! Conforming matchings inside the union of two arbitrary matchings.
//!
//! The symmetric difference is handled as a list of alternating chains.
//! Chains are contracted, joined and glued; every such step is journaled so
//! that a selection of chain positions lifts back to graph edges.

use crate::cycle::{on_segment, solve_even_cycle, solve_path_or_cycle};
use crate::error::{Error, Result};
use crate::graph::{color_profile, symdiff_components, Color, ColoredGraph, Component, CycleOrPath, EdgeId, Matching};
use num_rational::Rational64;

fn pt(p: (i64, i64)) -> (Rational64, Rational64) {
    (Rational64::from_integer(p.0), Rational64::from_integer(p.1))
}

fn unit(c: Color) -> (i64, i64) {
    match c {
        Color::Red => (1, 0),
        Color::Blue => (0, 1),
        Color::Yellow => (0, 0),
    }
}

fn sub(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 - b.0, a.1 - b.1)
}

fn add(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 + b.0, a.1 + b.1)
}

#[derive(Clone, Debug)]
struct Chain {
    colors: Vec<Color>,
    /// Whether each position belongs to the first matching.
    first: Vec<bool>,
    closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ChainKind {
    Closed,
    EvenOpen,
    /// Odd open chain with both ends in the first matching.
    ExtraFirst,
    /// Odd open chain with both ends in the second matching.
    ExtraSecond,
}

impl Chain {
    fn len(&self) -> usize {
        self.colors.len()
    }

    fn profile(&self, first: bool) -> (i64, i64) {
        self.colors
            .iter()
            .zip(&self.first)
            .filter(|(_, &f)| f == first)
            .fold((0, 0), |acc, (&c, _)| add(acc, unit(c)))
    }

    fn count(&self, first: bool) -> usize {
        self.first.iter().filter(|&&f| f == first).count()
    }

    fn kind(&self) -> ChainKind {
        if self.closed {
            ChainKind::Closed
        } else if self.len().is_multiple_of(2) {
            ChainKind::EvenOpen
        } else if self.first[0] {
            ChainKind::ExtraFirst
        } else {
            ChainKind::ExtraSecond
        }
    }

    /// Chain positions listed so that the first entry is a first-matching
    /// edge (for odd chains, the natural order is kept).
    fn oriented(&self) -> Vec<usize> {
        let n = self.len();
        match self.kind() {
            ChainKind::Closed => {
                let s = (0..n).find(|&p| self.first[p]).unwrap_or(0);
                (0..n).map(|j| (s + j) % n).collect()
            }
            ChainKind::EvenOpen if !self.first[0] => (0..n).rev().collect(),
            _ => (0..n).collect(),
        }
    }
}

#[derive(Clone, Debug)]
enum Step {
    Contract { chain: usize, pair: [usize; 2], len: usize, closed: bool, origin: Vec<usize> },
    Join { a: usize, b: usize, len_a: usize, into: usize },
}

/// Position of a glued cycle: a chain position or a yellow dummy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    At(usize, usize),
    Dummy,
}

struct Glued {
    colors: Vec<Color>,
    slots: Vec<Slot>,
    boundaries: Vec<usize>,
}

struct Work {
    chains: Vec<Chain>,
    steps: Vec<Step>,
    sel: Vec<Vec<usize>>,
    trace: Vec<String>,
}

impl Work {
    fn push_chain(&mut self, c: Chain) -> usize {
        self.chains.push(c);
        self.sel.push(Vec::new());
        self.chains.len() - 1
    }

    fn same_color_pair(c: &Chain) -> Option<usize> {
        let n = c.len();
        if c.closed {
            (0..n).find(|&i| n >= 2 && c.colors[i] == c.colors[(i + 1) % n])
        } else {
            (0..n.saturating_sub(1)).find(|&i| c.colors[i] == c.colors[i + 1])
        }
    }

    /// Contracts same-colored consecutive pairs; each contraction lowers the
    /// requirement of that color by one.
    fn contract(&mut self, idx: usize, k: &mut (i64, i64)) {
        while let Some(i) = Self::same_color_pair(&self.chains[idx]) {
            let c = &self.chains[idx];
            let n = c.len();
            let j = (i + 1) % n;
            let origin: Vec<usize> = (0..n).filter(|&p| p != i && p != j).collect();
            let color = c.colors[i];
            let next = Chain {
                colors: origin.iter().map(|&p| c.colors[p]).collect(),
                first: origin.iter().map(|&p| c.first[p]).collect(),
                closed: c.closed,
            };
            self.steps.push(Step::Contract { chain: idx, pair: [i, j], len: n, closed: c.closed, origin });
            *k = sub(*k, unit(color));
            self.trace.push(format!("contract {color}{color} pair in chain {idx}"));
            self.chains[idx] = next;
        }
    }

    fn lift(&mut self) {
        for st in self.steps.iter().rev() {
            match st {
                Step::Contract { chain, pair, len, closed, origin } => {
                    let mut cur: Vec<usize> = self.sel[*chain].iter().map(|&p| origin[p]).collect();
                    let pred = if *closed {
                        Some((pair[0] + len - 1) % len)
                    } else {
                        pair[0].checked_sub(1)
                    };
                    let take_second = pred.is_some_and(|p| cur.contains(&p));
                    cur.push(if take_second { pair[1] } else { pair[0] });
                    cur.sort_unstable();
                    self.sel[*chain] = cur;
                }
                Step::Join { a, b, len_a, into } => {
                    let s = std::mem::take(&mut self.sel[*into]);
                    self.sel[*a] = s.iter().copied().filter(|&p| p < *len_a).collect();
                    self.sel[*b] = s.iter().copied().filter(|&p| p >= *len_a).map(|p| p - len_a).collect();
                }
            }
        }
    }

    fn profiles(&self, active: &[usize]) -> ((i64, i64), (i64, i64)) {
        active.iter().fold(((0, 0), (0, 0)), |(a, b), &c| {
            (add(a, self.chains[c].profile(true)), add(b, self.chains[c].profile(false)))
        })
    }

    fn glue(&self, active: &[usize]) -> Result<Glued> {
        let mut even = Vec::new();
        let mut extra_first = Vec::new();
        let mut extra_second = Vec::new();
        for &c in active {
            match self.chains[c].kind() {
                ChainKind::Closed | ChainKind::EvenOpen => even.push(c),
                ChainKind::ExtraFirst => extra_first.push(c),
                ChainKind::ExtraSecond => extra_second.push(c),
            }
        }
        if extra_second.len() > extra_first.len() {
            return Err(Error::Precondition("the first matching is smaller than the second".into()));
        }
        let mut g = Glued { colors: Vec::new(), slots: Vec::new(), boundaries: Vec::new() };
        let put = |g: &mut Glued, c: usize| {
            g.boundaries.push(g.slots.len());
            for p in self.chains[c].oriented() {
                g.colors.push(self.chains[c].colors[p]);
                g.slots.push(Slot::At(c, p));
            }
        };
        for &c in &even {
            put(&mut g, c);
        }
        for (i, &c) in extra_first.iter().enumerate() {
            put(&mut g, c);
            match extra_second.get(i) {
                Some(&d) => put(&mut g, d),
                None => {
                    g.colors.push(Color::Yellow);
                    g.slots.push(Slot::Dummy);
                }
            }
        }
        for (j, s) in g.slots.iter().enumerate() {
            if let Slot::At(c, p) = *s {
                if self.chains[c].first[p] != (j % 2 == 0) {
                    return Err(Error::Internal("glued cycle breaks parity".into()));
                }
            }
        }
        Ok(g)
    }

    fn solve_single(&mut self, c: usize, k: (i64, i64)) -> Result<()> {
        let order = self.chains[c].oriented();
        if self.chains[c].kind() == ChainKind::ExtraSecond {
            return Err(Error::Internal("single chain with more second-matching edges".into()));
        }
        let colors: Vec<Color> = order.iter().map(|&p| self.chains[c].colors[p]).collect();
        let shape = if self.chains[c].closed { CycleOrPath::even_cycle(colors)? } else { CycleOrPath::path(colors)? };
        let m = solve_path_or_cycle(&shape, k.0, k.1)?;
        self.trace.push(format!("solve single chain {c} ({shape}) for {k:?}"));
        self.sel[c] = m.iter().map(|j| order[j]).collect();
        Ok(())
    }

    fn case_glue(&mut self, active: &[usize], k: (i64, i64)) -> Result<()> {
        let g = self.glue(active)?;
        let shape = CycleOrPath::even_cycle(g.colors.clone())?;
        let m = solve_even_cycle(&shape, k.0, k.1)?;
        let dummies = g.slots.iter().filter(|s| **s == Slot::Dummy).count();
        self.trace.push(format!("glue {} chains into {shape} with {dummies} dummies", active.len()));
        for j in m.iter() {
            if let Slot::At(c, p) = g.slots[j] {
                self.sel[c].push(p);
            }
        }
        for &c in active {
            let ch = &self.chains[c];
            if !ch.closed || ch.len() < 2 {
                continue;
            }
            let order = ch.oriented();
            let (a, b) = (order[0], order[ch.len() - 1]);
            if self.sel[c].contains(&a) && self.sel[c].contains(&b) {
                // Yellow first, then blue; never red.
                let drop = if ch.colors[a] == Color::Yellow {
                    a
                } else if ch.colors[b] == Color::Yellow {
                    b
                } else if ch.colors[a] == Color::Blue {
                    a
                } else {
                    b
                };
                if ch.colors[drop] == Color::Red {
                    return Err(Error::Internal("repair would drop a red edge".into()));
                }
                self.trace.push(format!("repair chain {c}: drop {} edge", ch.colors[drop]));
                self.sel[c].retain(|&p| p != drop);
            }
        }
        Ok(())
    }

    fn join_extras(&mut self, active: &mut Vec<usize>, k: &mut (i64, i64)) {
        let firsts: Vec<usize> = active.iter().copied().filter(|&c| self.chains[c].kind() == ChainKind::ExtraFirst).collect();
        let seconds: Vec<usize> = active.iter().copied().filter(|&c| self.chains[c].kind() == ChainKind::ExtraSecond).collect();
        for (&a, &b) in firsts.iter().zip(&seconds) {
            let (ca, cb) = (&self.chains[a], &self.chains[b]);
            let joined = Chain {
                colors: ca.colors.iter().chain(&cb.colors).copied().collect(),
                first: ca.first.iter().chain(&cb.first).copied().collect(),
                closed: false,
            };
            let len_a = ca.len();
            let into = self.push_chain(joined);
            self.steps.push(Step::Join { a, b, len_a, into });
            self.trace.push(format!("join chains {a} and {b} into {into}"));
            active.retain(|&c| c != a && c != b);
            active.push(into);
            self.contract(into, k);
        }
    }

    /// Removes one red-blue component per level, selecting its first or
    /// second edges, so that the rest stays on its segment.
    fn case_components(&mut self, active: &[usize], k: (i64, i64)) -> Result<()> {
        let mut active = active.to_vec();
        let mut k = k;
        self.join_extras(&mut active, &mut k);
        active.retain(|&c| self.chains[c].len() > 0);
        if active.len() <= 1 {
            return self.dispatch(&active, k);
        }
        let (p0, p1) = self.profiles(&active);
        let red_goes_up = p1.0 >= p0.0;
        // A component oriented against the segment keeps both choices valid.
        let against = active.iter().copied().find(|&c| {
            let ch = &self.chains[c];
            let red_first = ch.colors.iter().zip(&ch.first).any(|(&col, &f)| f && col == Color::Red);
            red_first == red_goes_up
        });
        let d = match against {
            Some(d) => d,
            None => *active.iter().min_by_key(|&&c| (self.chains[c].len(), c)).unwrap(),
        };
        let rest: Vec<usize> = active.iter().copied().filter(|&c| c != d).collect();
        let (q0, q1) = self.profiles(&rest);
        for first in [true, false] {
            let kd = sub(k, self.chains[d].profile(first));
            if on_segment(q0, q1, pt(kd)) {
                let ch = &self.chains[d];
                self.sel[d] = (0..ch.len()).filter(|&p| ch.first[p] == first).collect();
                let which = if first { "first" } else { "second" };
                let sub_case = if against.is_some() { "opposed" } else { "smallest" };
                self.trace.push(format!("take {which} edges of {sub_case} chain {d}, recurse with {kd:?}"));
                return self.dispatch(&rest, kd);
            }
        }
        Err(Error::Internal(format!("neither choice for chain {d} keeps {k:?} on the segment")))
    }

    fn dispatch(&mut self, active: &[usize], k: (i64, i64)) -> Result<()> {
        let mut k = k;
        for &c in active {
            self.contract(c, &mut k);
        }
        let active: Vec<usize> = active.iter().copied().filter(|&c| self.chains[c].len() > 0).collect();
        let (p0, p1) = self.profiles(&active);
        if !on_segment(p0, p1, pt(k)) {
            return Err(Error::Internal(format!("{k:?} left the segment from {p0:?} to {p1:?}")));
        }
        match active.len() {
            0 => Ok(()),
            1 => self.solve_single(active[0], k),
            _ => {
                let n0: usize = active.iter().map(|&c| self.chains[c].count(true)).sum();
                let n1: usize = active.iter().map(|&c| self.chains[c].count(false)).sum();
                let yellow = active.iter().any(|&c| self.chains[c].colors.contains(&Color::Yellow));
                if n0 > n1 || yellow {
                    self.case_glue(&active, k)
                } else {
                    self.case_components(&active, k)
                }
            }
        }
    }
}

fn chain_of(comp: &Component) -> Result<Chain> {
    if comp.in_first.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("component does not alternate between the matchings".into()));
    }
    Ok(Chain { colors: comp.shape.colors.clone(), first: comp.in_first.clone(), closed: comp.shape.is_cycle() })
}

/// Components glued into one even cycle: first-matching edges on even
/// positions, second-matching edges and yellow dummies on odd ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedCycle {
    pub cycle: CycleOrPath,
    /// Original edge id per position, `None` for dummies.
    pub edge_map: Vec<Option<EdgeId>>,
    /// Start position of every glued block.
    pub component_boundaries: Vec<usize>,
}

impl GluedCycle {
    pub fn dummy_count(&self) -> usize {
        self.edge_map.iter().filter(|e| e.is_none()).count()
    }
}

pub fn glue_components(components: &[Component]) -> Result<GluedCycle> {
    let chains = components.iter().map(chain_of).collect::<Result<Vec<_>>>()?;
    let n = chains.len();
    let w = Work { chains, steps: Vec::new(), sel: vec![Vec::new(); n], trace: Vec::new() };
    let active: Vec<usize> = (0..n).collect();
    let g = w.glue(&active)?;
    let edge_map = g
        .slots
        .iter()
        .map(|s| match *s {
            Slot::At(c, p) => Some(components[c].edge_ids[p]),
            Slot::Dummy => None,
        })
        .collect();
    Ok(GluedCycle { cycle: CycleOrPath::even_cycle(g.colors)?, edge_map, component_boundaries: g.boundaries })
}

/// Matching with exactly kR red and kB or kB - 1 blue edges inside
/// M0 ∪ M1, of size at least min(|M0|, |M1|) - 2 (minus 1 without cycles).
pub fn combine_two_matchings(g: &ColoredGraph, m0: &Matching, m1: &Matching, k_red: i64, k_blue: i64) -> Result<Matching> {
    combine_two_matchings_traced(g, m0, m1, k_red, k_blue).map(|(m, _)| m)
}

pub fn combine_two_matchings_traced(
    g: &ColoredGraph,
    m0: &Matching,
    m1: &Matching,
    k_red: i64,
    k_blue: i64,
) -> Result<(Matching, Vec<String>)> {
    for m in [m0, m1] {
        if !crate::graph::validate_matching(g, m.ids()) {
            return Err(Error::InvalidMatching(format!("{m} is not a matching")));
        }
    }
    let (m0, m1) = if m0.len() >= m1.len() { (m0, m1) } else { (m1, m0) };
    let p0 = color_profile(g, m0)?.point();
    let p1 = color_profile(g, m1)?.point();
    if !on_segment(p0, p1, pt((k_red, k_blue))) {
        return Err(Error::OffSegment(format!("({k_red}, {k_blue}) is not between {p0:?} and {p1:?}")));
    }
    let shared = m0.intersection(m1);
    let mut k = (k_red, k_blue);
    for id in shared.iter() {
        k = sub(k, unit(g.color(id)));
    }
    let comps = symdiff_components(g, m0, m1)?;
    let chains = comps.iter().map(chain_of).collect::<Result<Vec<_>>>()?;
    let n = chains.len();
    let mut w = Work { chains, steps: Vec::new(), sel: vec![Vec::new(); n], trace: Vec::new() };
    if !shared.is_empty() {
        w.trace.push(format!("keep {} shared edges", shared.len()));
    }
    let active: Vec<usize> = (0..n).collect();
    w.dispatch(&active, k)?;
    w.lift();
    let mut ids: Vec<EdgeId> = shared.ids().to_vec();
    for (c, comp) in comps.iter().enumerate() {
        ids.extend(w.sel[c].iter().map(|&p| comp.edge_ids[p]));
    }
    let m = Matching::new(ids);
    if !crate::graph::validate_matching(g, m.ids()) {
        return Err(Error::Internal(format!("combined set {m} is not a matching")));
    }
    let (r, b) = color_profile(g, &m)?.point();
    if r != k_red || !(b == k_blue || b == k_blue - 1) {
        return Err(Error::Internal(format!("combined profile ({r}, {b}) misses ({k_red}, {k_blue})")));
    }
    Ok((m, w.trace))
}
