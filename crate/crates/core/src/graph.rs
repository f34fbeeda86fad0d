/*!
Colored multigraphs, matchings and alternating components.

Edge ids are stable indices into the edge list. Matchings always keep their
ids sorted so that output is deterministic.
*/

use crate::error::{Error, Result};
use std::fmt;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
    Yellow,
}

impl Color {
    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'R' | 'r' => Some(Color::Red),
            'B' | 'b' => Some(Color::Blue),
            'Y' | 'y' => Some(Color::Yellow),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
            Color::Yellow => 'Y',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Parses a color string such as `"RBYB"`.
pub fn parse_colors(s: &str) -> Result<Vec<Color>> {
    s.chars()
        .map(|c| {
            Color::from_letter(c)
                .ok_or_else(|| Error::Shape(format!("unknown color letter {c:?}")))
        })
        .collect()
}

pub fn colors_to_string(colors: &[Color]) -> String {
    colors.iter().map(|c| c.letter()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
    pub dummy: bool,
}

impl Edge {
    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ColoredGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl ColoredGraph {
    pub fn new(vertex_count: usize) -> Self {
        ColoredGraph { vertex_count, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, color: Color) -> Result<EdgeId> {
        self.push_edge(u, v, color, false)
    }

    /// Dummy edges are yellow by construction.
    pub fn add_dummy_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.push_edge(u, v, Color::Yellow, true)
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId, color: Color, dummy: bool) -> Result<EdgeId> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(Error::VertexOutOfRange(w));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.edges.push(Edge { u, v, color, dummy });
        Ok(self.edges.len() - 1)
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Color)>,
    {
        let mut g = ColoredGraph::new(vertex_count);
        for (u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    /// Cycle with edge i joining vertex i and vertex (i+1) mod n.
    /// Two colors give a pair of parallel edges.
    pub fn cycle(colors: &[Color]) -> Result<Self> {
        let n = colors.len();
        if n < 2 {
            return Err(Error::Shape(format!("a cycle needs at least 2 edges, got {n}")));
        }
        ColoredGraph::from_edges(n, colors.iter().enumerate().map(|(i, &c)| (i, (i + 1) % n, c)))
    }

    /// Path with edge i joining vertex i and vertex i+1.
    pub fn path(colors: &[Color]) -> Self {
        let n = colors.len();
        let mut g = ColoredGraph::new(n + 1);
        for (i, &c) in colors.iter().enumerate() {
            g.edges.push(Edge { u: i, v: i + 1, color: c, dummy: false });
        }
        g
    }

    /// Vertices and edges of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        let off = self.vertex_count;
        let mut g = self.clone();
        g.vertex_count += other.vertex_count;
        g.edges.extend(other.edges.iter().map(|e| Edge { u: e.u + off, v: e.v + off, ..*e }));
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::EdgeOutOfRange(id))
    }

    pub fn color(&self, id: EdgeId) -> Color {
        self.edges[id].color
    }

    /// Color counts over the whole edge set.
    pub fn color_totals(&self) -> ColorProfile {
        let mut p = ColorProfile::default();
        for e in &self.edges {
            p.add(e.color);
        }
        p
    }

    pub fn has_yellow(&self) -> bool {
        self.edges.iter().any(|e| e.color == Color::Yellow)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColorProfile {
    pub red: usize,
    pub blue: usize,
    pub yellow: usize,
}

impl ColorProfile {
    pub fn new(red: usize, blue: usize, yellow: usize) -> Self {
        ColorProfile { red, blue, yellow }
    }

    pub fn of_colors<'a, I: IntoIterator<Item = &'a Color>>(colors: I) -> Self {
        let mut p = ColorProfile::default();
        for &c in colors {
            p.add(c);
        }
        p
    }

    pub fn add(&mut self, c: Color) {
        match c {
            Color::Red => self.red += 1,
            Color::Blue => self.blue += 1,
            Color::Yellow => self.yellow += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.red + self.blue + self.yellow
    }

    /// The (red, blue) projection.
    pub fn point(&self) -> (i64, i64) {
        (self.red as i64, self.blue as i64)
    }
}

impl std::ops::Add for ColorProfile {
    type Output = ColorProfile;
    fn add(self, o: ColorProfile) -> ColorProfile {
        ColorProfile::new(self.red + o.red, self.blue + o.blue, self.yellow + o.yellow)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    ids: Vec<EdgeId>,
}

impl Matching {
    /// Sorts and deduplicates; does not check validity.
    pub fn new<I: IntoIterator<Item = EdgeId>>(ids: I) -> Self {
        let mut ids: Vec<EdgeId> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        Matching { ids }
    }

    pub fn empty() -> Self {
        Matching { ids: Vec::new() }
    }

    /// Like [`Matching::new`] but rejects invalid edge sets.
    pub fn checked<I: IntoIterator<Item = EdgeId>>(g: &ColoredGraph, ids: I) -> Result<Self> {
        let ids: Vec<EdgeId> = ids.into_iter().collect();
        for &id in &ids {
            g.edge(id)?;
        }
        if !validate_matching(g, &ids) {
            return Err(Error::InvalidMatching(format!("{ids:?} is not a matching")));
        }
        Ok(Matching::new(ids))
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn union(&self, other: &Matching) -> Matching {
        Matching::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &Matching) -> Matching {
        Matching::new(self.iter().filter(|&e| other.contains(e)))
    }

    pub fn minus(&self, other: &Matching) -> Matching {
        Matching::new(self.iter().filter(|&e| !other.contains(e)))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ids.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn color_profile(g: &ColoredGraph, m: &Matching) -> Result<ColorProfile> {
    let mut p = ColorProfile::default();
    for id in m.iter() {
        p.add(g.edge(id)?.color);
    }
    Ok(p)
}

/// True iff every id exists and no two edges share a vertex.
pub fn validate_matching(g: &ColoredGraph, edge_ids: &[EdgeId]) -> bool {
    let mut used = vec![false; g.vertex_count()];
    let mut seen = std::collections::HashSet::new();
    for &id in edge_ids {
        if !seen.insert(id) {
            continue;
        }
        let Some(e) = g.edges().get(id) else { return false };
        if used[e.u] || used[e.v] {
            return false;
        }
        used[e.u] = true;
        used[e.v] = true;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    EvenCycle,
    EvenPath,
    OddPath,
}

/// A colored cycle or path numbered from 0. Even positions form M0 and odd
/// positions form M1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleOrPath {
    pub kind: ShapeKind,
    pub colors: Vec<Color>,
}

impl CycleOrPath {
    pub fn even_cycle(colors: Vec<Color>) -> Result<Self> {
        if colors.len() % 2 == 1 {
            return Err(Error::Shape(format!("cycle of odd length {}", colors.len())));
        }
        Ok(CycleOrPath { kind: ShapeKind::EvenCycle, colors })
    }

    pub fn path(colors: Vec<Color>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::Shape("empty path".into()));
        }
        let kind = if colors.len().is_multiple_of(2) { ShapeKind::EvenPath } else { ShapeKind::OddPath };
        Ok(CycleOrPath { kind, colors })
    }

    pub fn parse_cycle(s: &str) -> Result<Self> {
        CycleOrPath::even_cycle(parse_colors(s)?)
    }

    pub fn parse_path(s: &str) -> Result<Self> {
        CycleOrPath::path(parse_colors(s)?)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == ShapeKind::EvenCycle
    }

    pub fn has_yellow(&self) -> bool {
        self.colors.contains(&Color::Yellow)
    }

    pub fn m0(&self) -> Matching {
        Matching::new((0..self.len()).step_by(2))
    }

    pub fn m1(&self) -> Matching {
        Matching::new((1..self.len()).step_by(2))
    }

    pub fn m0_profile(&self) -> ColorProfile {
        ColorProfile::of_colors(self.colors.iter().step_by(2))
    }

    pub fn m1_profile(&self) -> ColorProfile {
        ColorProfile::of_colors(self.colors.iter().skip(1).step_by(2))
    }

    pub fn profile_of(&self, m: &Matching) -> ColorProfile {
        ColorProfile::of_colors(m.iter().map(|i| &self.colors[i]))
    }

    /// The graph whose edge ids are the positions of this shape.
    pub fn graph(&self) -> ColoredGraph {
        match self.kind {
            ShapeKind::EvenCycle if self.len() >= 2 => {
                ColoredGraph::cycle(&self.colors).expect("cycle of length >= 2")
            }
            ShapeKind::EvenCycle => ColoredGraph::new(0),
            _ => ColoredGraph::path(&self.colors),
        }
    }

    /// Whether the given positions form a matching of this shape.
    pub fn is_matching(&self, m: &Matching) -> bool {
        let n = self.len();
        if m.iter().any(|i| i >= n) {
            return false;
        }
        for w in m.ids().windows(2) {
            if w[1] == w[0] + 1 {
                return false;
            }
        }
        if self.is_cycle() && n >= 2 && m.contains(0) && m.contains(n - 1) {
            return false;
        }
        true
    }
}

impl fmt::Display for CycleOrPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", colors_to_string(&self.colors))
    }
}

/// One component of a symmetric difference, numbered along the component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub shape: CycleOrPath,
    pub edge_ids: Vec<EdgeId>,
    /// For a path there is one more vertex than edges.
    pub vertices: Vec<VertexId>,
    /// `in_first[i]` is true when edge i belongs to the first matching.
    pub in_first: Vec<bool>,
}

impl Component {
    pub fn smallest_edge(&self) -> EdgeId {
        *self.edge_ids.iter().min().expect("components are non-empty")
    }
}

/// Decomposes M0 △ M1 into alternating paths and even cycles.
pub fn symdiff_components(g: &ColoredGraph, m0: &Matching, m1: &Matching) -> Result<Vec<Component>> {
    for id in m0.iter().chain(m1.iter()) {
        g.edge(id)?;
    }
    let diff: Vec<EdgeId> = m0.minus(m1).iter().chain(m1.minus(m0).iter()).collect();
    let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for &id in &diff {
        let e = g.edges()[id];
        incident[e.u].push(id);
        incident[e.v].push(id);
    }
    if incident.iter().any(|l| l.len() > 2) {
        return Err(Error::InvalidMatching("inputs are not matchings".into()));
    }
    let mut sorted = diff.clone();
    sorted.sort_unstable();
    let mut done = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &start in &sorted {
        if done.contains(&start) {
            continue;
        }
        // Collect the component's edges.
        let mut comp_edges = vec![start];
        let mut stack = vec![start];
        done.insert(start);
        while let Some(e) = stack.pop() {
            let ed = g.edges()[e];
            for w in [ed.u, ed.v] {
                for &f in &incident[w] {
                    if done.insert(f) {
                        comp_edges.push(f);
                        stack.push(f);
                    }
                }
            }
        }
        let ends: Vec<VertexId> = {
            let mut vs: Vec<VertexId> = comp_edges
                .iter()
                .flat_map(|&e| [g.edges()[e].u, g.edges()[e].v])
                .filter(|&w| incident[w].len() == 1)
                .collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        };
        let (first_edge, first_vertex, cyclic) = if ends.is_empty() {
            let e0 = *comp_edges.iter().min().unwrap();
            let ed = g.edges()[e0];
            // Walk away from the endpoint whose other edge has the larger id.
            let other_at = |w: VertexId| incident[w].iter().copied().find(|&f| f != e0).unwrap_or(e0);
            let start_v = if other_at(ed.v) <= other_at(ed.u) { ed.u } else { ed.v };
            (e0, start_v, true)
        } else {
            let a = ends[0];
            let b = ends[1];
            let (ea, eb) = (incident[a][0], incident[b][0]);
            if ea <= eb { (ea, a, false) } else { (eb, b, false) }
        };
        let mut edge_ids = Vec::with_capacity(comp_edges.len());
        let mut vertices = vec![first_vertex];
        let mut cur_e = first_edge;
        let mut cur_v = first_vertex;
        loop {
            edge_ids.push(cur_e);
            let ed = g.edges()[cur_e];
            let next_v = if ed.u == cur_v { ed.v } else { ed.u };
            let next_e = incident[next_v].iter().copied().find(|&f| f != cur_e);
            match next_e {
                Some(f) if !(cyclic && f == first_edge) => {
                    vertices.push(next_v);
                    cur_v = next_v;
                    cur_e = f;
                }
                _ => {
                    if !cyclic {
                        vertices.push(next_v);
                    }
                    break;
                }
            }
            if edge_ids.len() > comp_edges.len() {
                return Err(Error::Internal("component walk did not terminate".into()));
            }
        }
        let colors: Vec<Color> = edge_ids.iter().map(|&e| g.color(e)).collect();
        let in_first: Vec<bool> = edge_ids.iter().map(|&e| m0.contains(e)).collect();
        for w in in_first.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidMatching("component does not alternate".into()));
            }
        }
        let shape = if cyclic { CycleOrPath::even_cycle(colors)? } else { CycleOrPath::path(colors)? };
        out.push(Component { shape, edge_ids, vertices, in_first });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rbyb8() -> ColoredGraph {
        ColoredGraph::cycle(&parse_colors("RBYBRBYB").unwrap()).unwrap()
    }

    #[test]
    fn profile_of_even_edges_on_rbyb8() {
        let g = rbyb8();
        let p = color_profile(&g, &Matching::new([0, 2, 4, 6])).unwrap();
        assert_eq!(p, ColorProfile::new(2, 0, 2));
        assert_eq!(color_profile(&g, &Matching::empty()).unwrap(), ColorProfile::default());
    }

    #[test]
    fn profile_of_odd_edges_on_eighteen_edge_cycle() {
        let c = CycleOrPath::parse_cycle("YBYBYRYRYBRBYRBRBR").unwrap();
        assert_eq!(c.m1_profile(), ColorProfile::new(5, 4, 0));
        let g = c.graph();
        assert_eq!(color_profile(&g, &c.m1()).unwrap(), ColorProfile::new(5, 4, 0));
    }

    #[test]
    fn profile_rejects_bad_id() {
        assert_eq!(color_profile(&rbyb8(), &Matching::new([8])), Err(Error::EdgeOutOfRange(8)));
    }

    #[test]
    fn matching_validation() {
        let g = rbyb8();
        assert!(validate_matching(&g, &[0, 3]));
        assert!(!validate_matching(&g, &[0, 1]));
        assert!(validate_matching(&g, &[]));
        assert!(!validate_matching(&g, &[0, 7]));
        assert!(!validate_matching(&g, &[42]));
    }

    #[test]
    fn graph_rejects_loops_and_range() {
        let mut g = ColoredGraph::new(2);
        assert_eq!(g.add_edge(0, 0, Color::Red), Err(Error::SelfLoop(0)));
        assert_eq!(g.add_edge(0, 2, Color::Red), Err(Error::VertexOutOfRange(2)));
        assert_eq!(g.add_edge(0, 1, Color::Red), Ok(0));
        assert_eq!(g.add_edge(1, 0, Color::Blue), Ok(1));
    }

    #[test]
    fn symdiff_equal_matchings_is_empty() {
        let g = rbyb8();
        let m = Matching::new([0, 2]);
        assert!(symdiff_components(&g, &m, &m).unwrap().is_empty());
    }

    #[test]
    fn symdiff_single_cycle() {
        let g = ColoredGraph::cycle(&parse_colors("RBRB").unwrap()).unwrap();
        let comps = symdiff_components(&g, &Matching::new([0, 2]), &Matching::new([1, 3])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape.kind, ShapeKind::EvenCycle);
        assert_eq!(comps[0].shape.len(), 4);
        assert_eq!(comps[0].edge_ids[0], 0);
        assert!(comps[0].in_first[0]);
    }

    #[test]
    fn symdiff_isolated_edges() {
        let g = ColoredGraph::from_edges(4, [(0, 1, Color::Red), (2, 3, Color::Blue)]).unwrap();
        let comps = symdiff_components(&g, &Matching::new([0]), &Matching::new([1])).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.shape.kind == ShapeKind::OddPath && c.shape.len() == 1));
        assert_eq!(comps[0].edge_ids, vec![0]);
        assert_eq!(comps[1].edge_ids, vec![1]);
    }

    #[test]
    fn symdiff_path_numbered_from_smaller_end() {
        // path 0-1-2-3 with edges ids 2,1,0 along it
        let g = ColoredGraph::from_edges(
            4,
            [(2, 3, Color::Red), (1, 2, Color::Blue), (0, 1, Color::Yellow)],
        )
        .unwrap();
        let comps = symdiff_components(&g, &Matching::new([0, 2]), &Matching::new([1])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].edge_ids, vec![0, 1, 2]);
        assert_eq!(comps[0].vertices, vec![3, 2, 1, 0]);
        assert_eq!(comps[0].shape.kind, ShapeKind::OddPath);
    }

    #[test]
    fn symdiff_parallel_pair() {
        let g = ColoredGraph::from_edges(2, [(0, 1, Color::Red), (0, 1, Color::Blue)]).unwrap();
        let comps = symdiff_components(&g, &Matching::new([0]), &Matching::new([1])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape.kind, ShapeKind::EvenCycle);
        assert_eq!(comps[0].edge_ids, vec![0, 1]);
    }

    #[test]
    fn shape_matching_check() {
        let c = CycleOrPath::parse_cycle("RBRB").unwrap();
        assert!(c.is_matching(&Matching::new([0, 2])));
        assert!(!c.is_matching(&Matching::new([0, 3])));
        let p = CycleOrPath::parse_path("RBR").unwrap();
        assert!(p.is_matching(&Matching::new([0, 2])));
        assert_eq!(p.kind, ShapeKind::OddPath);
    }
}
