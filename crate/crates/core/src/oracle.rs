//! Brute-force enumeration of matchings for small graphs.

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Color, EdgeId, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCap {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleCap {
    fn default() -> Self {
        OracleCap { max_vertices: 20, max_edges: 40 }
    }
}

impl OracleCap {
    pub fn check(&self, g: &ColoredGraph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::CapExceeded(format!(
                "{} vertices > {}",
                g.vertex_count(),
                self.max_vertices
            )));
        }
        if g.edge_count() > self.max_edges {
            return Err(Error::CapExceeded(format!("{} edges > {}", g.edge_count(), self.max_edges)));
        }
        Ok(())
    }
}

/// Streams matchings in lexicographic order of their sorted id lists.
pub struct MatchingIter<'a> {
    g: &'a ColoredGraph,
    allowed: Vec<EdgeId>,
    used: Vec<bool>,
    current: Vec<EdgeId>,
    frames: Vec<usize>,
    started: bool,
}

impl Iterator for MatchingIter<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if !self.started {
            self.started = true;
            self.frames.push(0);
            return Some(Matching::empty());
        }
        loop {
            let start = *self.frames.last()?;
            let found = (start..self.allowed.len()).find(|&i| {
                let e = self.g.edges()[self.allowed[i]];
                !self.used[e.u] && !self.used[e.v]
            });
            match found {
                Some(i) => {
                    *self.frames.last_mut().unwrap() = i + 1;
                    let id = self.allowed[i];
                    let e = self.g.edges()[id];
                    self.used[e.u] = true;
                    self.used[e.v] = true;
                    self.current.push(id);
                    self.frames.push(i + 1);
                    return Some(Matching::new(self.current.iter().copied()));
                }
                None => {
                    self.frames.pop();
                    if let Some(id) = self.current.pop() {
                        let e = self.g.edges()[id];
                        self.used[e.u] = false;
                        self.used[e.v] = false;
                    }
                }
            }
        }
    }
}

fn allowed_edges(g: &ColoredGraph, restrict: Option<&[EdgeId]>) -> Result<Vec<EdgeId>> {
    match restrict {
        None => Ok((0..g.edge_count()).collect()),
        Some(ids) => {
            for &id in ids {
                g.edge(id)?;
            }
            let mut v = ids.to_vec();
            v.sort_unstable();
            v.dedup();
            Ok(v)
        }
    }
}

pub fn enumerate_matchings<'a>(
    g: &'a ColoredGraph,
    restrict_support: Option<&[EdgeId]>,
    cap: OracleCap,
) -> Result<MatchingIter<'a>> {
    cap.check(g)?;
    Ok(MatchingIter {
        g,
        allowed: allowed_edges(g, restrict_support)?,
        used: vec![false; g.vertex_count()],
        current: Vec::new(),
        frames: Vec::new(),
        started: false,
    })
}

/// Callback-driven variant of the enumeration; visits the same sequence
/// without allocating per matching.
pub(crate) fn for_each_matching<F: FnMut(&[EdgeId])>(g: &ColoredGraph, allowed: &[EdgeId], mut f: F) {
    fn rec<F: FnMut(&[EdgeId])>(
        g: &ColoredGraph,
        allowed: &[EdgeId],
        from: usize,
        used: &mut [bool],
        cur: &mut Vec<EdgeId>,
        f: &mut F,
    ) {
        f(cur);
        for i in from..allowed.len() {
            let e = g.edges()[allowed[i]];
            if used[e.u] || used[e.v] {
                continue;
            }
            used[e.u] = true;
            used[e.v] = true;
            cur.push(allowed[i]);
            rec(g, allowed, i + 1, used, cur, f);
            cur.pop();
            used[e.u] = false;
            used[e.v] = false;
        }
    }
    let mut used = vec![false; g.vertex_count()];
    rec(g, allowed, 0, &mut used, &mut Vec::new(), &mut f);
}

pub fn count_matchings(g: &ColoredGraph, cap: OracleCap) -> Result<u64> {
    cap.check(g)?;
    let all: Vec<EdgeId> = (0..g.edge_count()).collect();
    let mut n = 0u64;
    for_each_matching(g, &all, |_| n += 1);
    Ok(n)
}

/// Maximum matching with profile exactly (kR, kB); ties go to the
/// lexicographically smallest id list.
pub fn exact_optimum(g: &ColoredGraph, k_red: i64, k_blue: i64, cap: OracleCap) -> Result<Option<Matching>> {
    cap.check(g)?;
    if k_red < 0 || k_blue < 0 {
        return Err(Error::Precondition("requirements must be non-negative".into()));
    }
    let all: Vec<EdgeId> = (0..g.edge_count()).collect();
    let mut best: Option<Vec<EdgeId>> = None;
    for_each_matching(g, &all, |ids| {
        if best.as_ref().is_some_and(|b| b.len() >= ids.len()) {
            return;
        }
        let (mut r, mut b) = (0i64, 0i64);
        for &id in ids {
            match g.color(id) {
                Color::Red => r += 1,
                Color::Blue => b += 1,
                Color::Yellow => {}
            }
        }
        if r == k_red && b == k_blue {
            best = Some(ids.to_vec());
        }
    });
    Ok(best.map(Matching::new))
}

/// Largest matching size among those with exactly `k_red` red edges and
/// `k_blue` or `k_blue - 1` blue edges.
pub fn conforming_optimum_size(g: &ColoredGraph, k_red: i64, k_blue: i64, cap: OracleCap) -> Result<Option<usize>> {
    let a = exact_optimum(g, k_red, k_blue, cap)?.map(|m| m.len());
    let b = if k_blue >= 1 { exact_optimum(g, k_red, k_blue - 1, cap)?.map(|m| m.len()) } else { None };
    Ok(a.max(b))
}

/// Maximum matching size ignoring colors.
pub fn max_matching_size(g: &ColoredGraph, cap: OracleCap) -> Result<usize> {
    cap.check(g)?;
    fn rec(adj: &[Vec<(usize, usize)>], v: usize, used: &mut [bool], size: usize, best: &mut usize) {
        let n = used.len();
        let mut v = v;
        while v < n && used[v] {
            v += 1;
        }
        if v >= n {
            *best = (*best).max(size);
            return;
        }
        let free = used[v..].iter().filter(|&&u| !u).count();
        if size + free / 2 <= *best {
            return;
        }
        used[v] = true;
        for &(w, _) in &adj[v] {
            if !used[w] {
                used[w] = true;
                rec(adj, v + 1, used, size + 1, best);
                used[w] = false;
            }
        }
        rec(adj, v + 1, used, size, best);
        used[v] = false;
    }
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (id, e) in g.edges().iter().enumerate() {
        adj[e.u].push((e.v, id));
        adj[e.v].push((e.u, id));
    }
    let mut best = 0;
    rec(&adj, 0, &mut vec![false; g.vertex_count()], 0, &mut best);
    Ok(best)
}
