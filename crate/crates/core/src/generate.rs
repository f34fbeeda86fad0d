//! Seeded instance generator. All sampling uses integer arithmetic on a
//! ChaCha8 stream, so a spec reproduces the same instance everywhere.

use crate::cycle::on_segment;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, CycleOrPath};
use crate::io::InstanceFile;
use crate::oracle::{enumerate_matchings, OracleCap};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// Random graph, requirement drawn from the box of color totals.
    RandomGraph,
    /// Random even cycle, requirement on its segment.
    RandomCycle,
    /// Random graph, requirement equal to the profile of some matching.
    FeasibleProfile,
}

impl FromStr for GenMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_graph" => Ok(GenMode::RandomGraph),
            "random_cycle" => Ok(GenMode::RandomCycle),
            "feasible_profile" => Ok(GenMode::FeasibleProfile),
            _ => Err(Error::Precondition(format!("unknown generator mode '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub mode: GenMode,
    /// Vertex count, or cycle length in cycle mode.
    pub vertex_count: usize,
    /// Probability numerator and denominator for each vertex pair.
    pub edge_density: (u64, u64),
    /// Relative weights of red, blue, yellow.
    pub color_weights: [u64; 3],
    pub seed: u64,
}

impl GenSpec {
    pub fn new(mode: GenMode, vertex_count: usize, seed: u64) -> Self {
        GenSpec { mode, vertex_count, edge_density: (1, 2), color_weights: [1, 1, 1], seed }
    }
}

fn pick_color(rng: &mut ChaCha8Rng, w: [u64; 3]) -> Color {
    let total: u64 = w.iter().sum();
    let r = rng.gen_range(0..total);
    if r < w[0] {
        Color::Red
    } else if r < w[0] + w[1] {
        Color::Blue
    } else {
        Color::Yellow
    }
}

fn random_graph(rng: &mut ChaCha8Rng, spec: &GenSpec) -> ColoredGraph {
    let n = spec.vertex_count;
    let (num, den) = spec.edge_density;
    let mut g = ColoredGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                let c = pick_color(rng, spec.color_weights);
                g.add_edge(u, v, c).expect("vertices in range");
            }
        }
    }
    g
}

/// Integer points on the segment between the two perfect matchings.
pub fn segment_points(c: &CycleOrPath) -> Vec<(i64, i64)> {
    let (p0, p1) = (c.m0_profile().point(), c.m1_profile().point());
    let mut out = Vec::new();
    for x in p0.0.min(p1.0)..=p0.0.max(p1.0) {
        for y in p0.1.min(p1.1)..=p0.1.max(p1.1) {
            if on_segment(p0, p1, (Rational64::from_integer(x), Rational64::from_integer(y))) {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn generate_instance(spec: &GenSpec) -> Result<InstanceFile> {
    let (num, den) = spec.edge_density;
    if den == 0 || num > den {
        return Err(Error::Precondition("edge density must be a fraction in [0, 1]".into()));
    }
    if spec.color_weights.iter().sum::<u64>() == 0 {
        return Err(Error::Precondition("color weights are all zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.mode {
        GenMode::RandomGraph => {
            let g = random_graph(&mut rng, spec);
            let t = g.color_totals();
            let kr = rng.gen_range(0..=t.red as i64);
            let kb = rng.gen_range(0..=t.blue as i64);
            Ok(InstanceFile::new(g, kr, kb))
        }
        GenMode::RandomCycle => {
            let n = spec.vertex_count;
            if n < 2 || n % 2 == 1 {
                return Err(Error::Precondition(format!("cycle length {n} must be even and at least 2")));
            }
            let colors: Vec<Color> = (0..n).map(|_| pick_color(&mut rng, spec.color_weights)).collect();
            let c = CycleOrPath::even_cycle(colors)?;
            let pts = segment_points(&c);
            let (kr, kb) = pts[rng.gen_range(0..pts.len())];
            InstanceFile::from_cycle(&c.to_string(), kr, kb)
        }
        GenMode::FeasibleProfile => {
            let g = random_graph(&mut rng, spec);
            let profiles: BTreeSet<(i64, i64)> = enumerate_matchings(&g, None, OracleCap::default())?
                .map(|m| crate::graph::color_profile(&g, &m).map(|p| p.point()))
                .collect::<Result<_>>()?;
            let v: Vec<(i64, i64)> = profiles.into_iter().collect();
            let (kr, kb) = v[rng.gen_range(0..v.len())];
            Ok(InstanceFile::new(g, kr, kb))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_instance;

    #[test]
    fn deterministic() {
        let s = GenSpec::new(GenMode::RandomCycle, 8, 1);
        assert_eq!(generate_instance(&s).unwrap().serialize(), generate_instance(&s).unwrap().serialize());
    }

    #[test]
    fn empty_density() {
        let mut s = GenSpec::new(GenMode::RandomGraph, 6, 3);
        s.edge_density = (0, 1);
        let f = generate_instance(&s).unwrap();
        assert_eq!(f.graph.edge_count(), 0);
        assert_eq!((f.k_red, f.k_blue), (0, 0));
    }

    #[test]
    fn round_trip_all_modes() {
        for mode in [GenMode::RandomGraph, GenMode::RandomCycle, GenMode::FeasibleProfile] {
            for seed in 0..20 {
                let f = generate_instance(&GenSpec::new(mode, 8, seed)).unwrap();
                assert_eq!(parse_instance(&f.serialize()).unwrap(), f);
            }
        }
    }

    #[test]
    fn modes_parse() {
        assert_eq!("feasible_profile".parse::<GenMode>().unwrap(), GenMode::FeasibleProfile);
        assert!("nope".parse::<GenMode>().is_err());
    }
}
