//! The graph families that appear in the classification of unweighted
//! graphs with large girth and nonnegative curvature: paths, cycles, stars,
//! and the three-leg spiders obtained from the star on three legs by
//! lengthening some legs to two edges.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{LaplacianMode, Vertex, WeightedGraph};

/// A member of one of the classification families.
///
/// `Star3Ext { long_legs: i }` is the spider with three legs of which `i`
/// have length two and the rest length one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Path { edges: usize },
    Cycle { len: usize },
    Star { legs: usize },
    Star3Ext { long_legs: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path { edges } => write!(f, "path:{edges}"),
            Family::Cycle { len } => write!(f, "cycle:{len}"),
            Family::Star { legs } => write!(f, "star:{legs}"),
            Family::Star3Ext { long_legs } => write!(f, "star3ext:{long_legs}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParameter(format!("unknown family `{s}`"));
        let (kind, param) = s.split_once(':').ok_or_else(bad)?;
        let value: usize = param.parse().map_err(|_| bad())?;
        let family = match kind {
            "path" => Family::Path { edges: value },
            "cycle" => Family::Cycle { len: value },
            "star" => Family::Star { legs: value },
            "star3ext" => Family::Star3Ext { long_legs: value },
            _ => return Err(bad()),
        };
        family.validate()?;
        Ok(family)
    }
}

impl Family {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Family::Path { edges } => edges >= 1,
            Family::Cycle { len } => len >= 3,
            Family::Star { legs } => legs >= 3,
            Family::Star3Ext { long_legs } => (1..=3).contains(&long_legs),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadParameter(format!(
                "family {self} is out of range"
            )))
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Path { edges } => edges + 1,
            Family::Cycle { len } => len,
            Family::Star { legs } => legs + 1,
            Family::Star3Ext { long_legs } => 4 + long_legs,
        }
    }
}

/// Path with `edges` edges on vertices `0..=edges`.
pub fn make_path(edges: usize, mode: LaplacianMode) -> Result<WeightedGraph> {
    Family::Path { edges }.validate()?;
    let list: Vec<(Vertex, Vertex)> = (0..edges).map(|i| (i, i + 1)).collect();
    WeightedGraph::unweighted(&list, mode)
}

/// Cycle on `len >= 3` vertices.
pub fn make_cycle(len: usize, mode: LaplacianMode) -> Result<WeightedGraph> {
    Family::Cycle { len }.validate()?;
    let list: Vec<(Vertex, Vertex)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    WeightedGraph::unweighted(&list, mode)
}

/// Spider: a center vertex with paths of the given lengths attached.
pub fn make_spider(leg_lengths: &[usize], mode: LaplacianMode) -> Result<WeightedGraph> {
    if leg_lengths.is_empty() || leg_lengths.contains(&0) {
        return Err(Error::BadParameter(
            "spider needs at least one leg, each with at least one edge".into(),
        ));
    }
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut next = 1;
    for &len in leg_lengths {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    WeightedGraph::unweighted(&edges, mode)
}

/// Star with `legs >= 3` legs: center 0 joined to `legs` pendant vertices.
pub fn make_star(legs: usize, mode: LaplacianMode) -> Result<WeightedGraph> {
    Family::Star { legs }.validate()?;
    make_spider(&vec![1; legs], mode)
}

/// Three-leg spider with `long_legs` legs of length two and the remaining
/// legs of length one, `long_legs` between 1 and 3.
pub fn make_star3_ext(long_legs: usize, mode: LaplacianMode) -> Result<WeightedGraph> {
    Family::Star3Ext { long_legs }.validate()?;
    let mut lengths = vec![2; long_legs];
    lengths.resize(3, 1);
    make_spider(&lengths, mode)
}

/// Builds the graph of a family member.
pub fn make_family(family: Family, mode: LaplacianMode) -> Result<WeightedGraph> {
    match family {
        Family::Path { edges } => make_path(edges, mode),
        Family::Cycle { len } => make_cycle(len, mode),
        Family::Star { legs } => make_star(legs, mode),
        Family::Star3Ext { long_legs } => make_star3_ext(long_legs, mode),
    }
}

/// Recognizes whether the underlying combinatorial graph is a path, cycle,
/// star, or extended three-leg star, by structure rather than by degree
/// statistics (the spiders with legs `2,2,1` and `3,1,1` share a degree
/// multiset but only the first is a family member).
pub fn is_family_member(g: &WeightedGraph) -> Option<Family> {
    let n = g.vertex_count();
    let degrees: Vec<usize> = g
        .vertices()
        .map(|x| g.combinatorial_degree(x).expect("vertex exists"))
        .collect();
    let max_degree = *degrees.iter().max().expect("graph has vertices");

    if max_degree <= 2 {
        let pendant_count = degrees.iter().filter(|&&d| d == 1).count();
        return if pendant_count == 0 {
            Some(Family::Cycle { len: n })
        } else {
            Some(Family::Path { edges: n - 1 })
        };
    }

    let centers: Vec<Vertex> = g.vertices().filter(|&x| degrees[x] >= 3).collect();
    let [center] = centers[..] else {
        return None;
    };

    let mut leg_lengths = Vec::new();
    for &start in g.neighbors(center).expect("vertex exists") {
        let mut prev = center;
        let mut cur = start;
        let mut len = 1;
        loop {
            let nb = g.neighbors(cur).expect("vertex exists");
            if nb.len() == 1 {
                break;
            }
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            if next == center {
                return None;
            }
            prev = cur;
            cur = next;
            len += 1;
        }
        leg_lengths.push(len);
    }
    if leg_lengths.iter().sum::<usize>() + 1 != n {
        return None;
    }

    if leg_lengths.iter().all(|&l| l == 1) {
        return Some(Family::Star {
            legs: leg_lengths.len(),
        });
    }
    if leg_lengths.len() == 3 && leg_lengths.iter().all(|&l| l <= 2) {
        let long_legs = leg_lengths.iter().filter(|&&l| l == 2).count();
        return Some(Family::Star3Ext { long_legs });
    }
    None
}
