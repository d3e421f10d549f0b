//! Lattice points, finite digital images and the `c_u` family of adjacencies.
//!
//! An image stores its points sorted lexicographically, so a point's rank in
//! that order doubles as its index everywhere else in the crate (map tables,
//! bitsets, search variables).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A point of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.0[i]
    }
}

impl From<Vec<i64>> for Point {
    /// Panics on an empty vector; use [`Point::new`] for untrusted input.
    fn from(coords: Vec<i64>) -> Self {
        Point::new(coords).expect("point needs at least one coordinate")
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        Point::from(coords.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `c_u` adjacency, or the path power `(c_u)^k` taken inside a fixed image.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Adjacency {
    Cu(u32),
    Power { base: u32, k: u32 },
}

impl Adjacency {
    pub fn power(base: u32, k: u32) -> Self {
        Adjacency::Power { base, k }
    }

    /// The underlying `c_u` parameter.
    pub fn base(self) -> u32 {
        match self {
            Adjacency::Cu(u) | Adjacency::Power { base: u, .. } => u,
        }
    }

    pub fn validate(self, dim: usize) -> Result<()> {
        let ok = match self {
            Adjacency::Cu(u) => u >= 1 && (u as usize) <= dim,
            Adjacency::Power { base, k } => base >= 1 && (base as usize) <= dim && k >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidAdjacency { adjacency: self, dim })
        }
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adjacency::Cu(u) => write!(f, "c{u}"),
            Adjacency::Power { base, k } => write!(f, "c{base}^{k}"),
        }
    }
}

impl FromStr for Adjacency {
    type Err = Error;

    /// Accepts `c<u>` and `c<u>^<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("adjacency `{s}` (expected c<u> or c<u>^<k>)"));
        let body = s.trim().strip_prefix('c').ok_or_else(bad)?;
        let (u, k) = match body.split_once('^') {
            Some((u, k)) => (u, Some(k)),
            None => (body, None),
        };
        let u: u32 = u.parse().map_err(|_| bad())?;
        if u == 0 {
            return Err(bad());
        }
        match k {
            None => Ok(Adjacency::Cu(u)),
            Some(k) => {
                let k: u32 = k.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                Ok(Adjacency::Power { base: u, k })
            }
        }
    }
}

/// True iff `a != b`, at most `u` coordinates differ, and each of them by exactly 1.
pub fn cu_adjacent(a: &[i64], b: &[i64], u: u32) -> bool {
    let mut differing = 0u32;
    for (x, y) in a.iter().zip(b) {
        match (x - y).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= u
}

/// Adjacency structure of one image under one adjacency, indexed by point rank.
#[derive(Debug)]
pub struct AdjacencyGraph {
    lists: Vec<Vec<usize>>,
    closed: Vec<FixedBitSet>,
}

impl AdjacencyGraph {
    fn from_lists(lists: Vec<Vec<usize>>) -> Self {
        let n = lists.len();
        let closed = lists
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let mut set = FixedBitSet::with_capacity(n);
                set.insert(i);
                for &j in l {
                    set.insert(j);
                }
                set
            })
            .collect();
        AdjacencyGraph { lists, closed }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Strict neighbours of `i`, ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.lists[i]
    }

    /// `{i}` together with its neighbours.
    pub fn closed_neighborhood(&self, i: usize) -> &FixedBitSet {
        &self.closed[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.closed[i].contains(j)
    }

    pub fn is_reflexive_adjacent(&self, i: usize, j: usize) -> bool {
        self.closed[i].contains(j)
    }

    pub fn edge_count(&self) -> usize {
        self.lists.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Breadth-first path lengths from `src`; `None` marks unreachable points.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        self.bounded_distances(src, usize::MAX)
    }

    fn bounded_distances(&self, src: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap_or(0);
            if d == limit {
                continue;
            }
            for &j in &self.lists[i] {
                if dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    /// Connected components as sorted index lists, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.len()];
        let mut parts = Vec::new();
        for start in 0..self.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let mut part = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &j in &self.lists[i] {
                    if label[j] == usize::MAX {
                        label[j] = id;
                        part.push(j);
                        queue.push_back(j);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// Cut vertices, via low-link values of an iterative depth-first search.
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, parent, pos) = *top;
                if pos < self.lists[v].len() {
                    top.2 += 1;
                    let w = self.lists[v][pos];
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&i| is_cut[i]).collect()
    }
}

/// A finite, nonempty subset of `Z^n`.
pub struct DigitalImage {
    dim: usize,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    graphs: Mutex<HashMap<Adjacency, Arc<AdjacencyGraph>>>,
}

impl DigitalImage {
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut points: Vec<Point> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptyImage);
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].clone()));
        }
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(DigitalImage { dim, points, index, graphs: Mutex::new(HashMap::new()) })
    }

    /// The box `prod [a_i, b_i]_Z`.
    pub fn boxed(bounds: &[(i64, i64)]) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(&(a, b)) = bounds.iter().find(|(a, b)| a > b) {
            return Err(Error::InvalidParameter(format!("empty interval [{a},{b}]")));
        }
        let mut points = vec![Vec::new()];
        for &(a, b) in bounds {
            points = points
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (a..=b).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        DigitalImage::new(bounds.len(), points.into_iter().map(Point))
    }

    /// The cube `[lo, hi]_Z^dim`.
    pub fn cube(lo: i64, hi: i64, dim: usize) -> Result<Self> {
        DigitalImage::boxed(&vec![(lo, hi); dim])
    }

    pub fn singleton(p: Point) -> Self {
        let dim = p.dim();
        DigitalImage::new(dim, [p]).expect("a single point is a valid image")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; images are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Like [`index_of`](Self::index_of) but reports a typed error.
    pub fn require(&self, p: &Point) -> Result<usize> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        self.index_of(p).ok_or_else(|| Error::PointNotInImage(p.clone()))
    }

    pub fn is_subset_of(&self, other: &DigitalImage) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    /// Bounds `[(a_i, b_i)]` when the image is exactly a box.
    pub fn as_box(&self) -> Option<Vec<(i64, i64)>> {
        let mut bounds: Vec<(i64, i64)> = self.points[0].coords().iter().map(|&c| (c, c)).collect();
        for p in &self.points {
            for (b, &c) in bounds.iter_mut().zip(p.coords()) {
                b.0 = b.0.min(c);
                b.1 = b.1.max(c);
            }
        }
        let volume = bounds.iter().try_fold(1usize, |acc, &(a, b)| acc.checked_mul((b - a + 1) as usize));
        (volume == Some(self.len())).then_some(bounds)
    }

    /// Adjacency structure under `adj`, built on first use and cached.
    pub fn graph(&self, adj: Adjacency) -> Result<Arc<AdjacencyGraph>> {
        adj.validate(self.dim)?;
        if let Some(g) = self.graphs.lock().expect("graph cache poisoned").get(&adj) {
            return Ok(Arc::clone(g));
        }
        let graph = Arc::new(match adj {
            Adjacency::Cu(u) => self.build_cu(u),
            Adjacency::Power { base, k } => {
                let base = self.graph(Adjacency::Cu(base))?;
                let lists = (0..self.len())
                    .map(|i| {
                        base.bounded_distances(i, k as usize)
                            .iter()
                            .enumerate()
                            .filter(|&(j, d)| j != i && d.is_some())
                            .map(|(j, _)| j)
                            .collect()
                    })
                    .collect();
                AdjacencyGraph::from_lists(lists)
            }
        });
        self.graphs.lock().expect("graph cache poisoned").entry(adj).or_insert_with(|| Arc::clone(&graph));
        Ok(graph)
    }

    fn build_cu(&self, u: u32) -> AdjacencyGraph {
        let n = self.len();
        let offsets_cheaper = 3usize.checked_pow(self.dim as u32).is_some_and(|c| c < n);
        let lists = if offsets_cheaper {
            let offsets = unit_offsets(self.dim, u);
            self.points
                .iter()
                .map(|p| {
                    let mut l: Vec<usize> = offsets
                        .iter()
                        .filter_map(|off| {
                            let q: Vec<i64> = p.coords().iter().zip(off).map(|(a, b)| a + b).collect();
                            self.index.get(&Point(q)).copied()
                        })
                        .collect();
                    l.sort_unstable();
                    l
                })
                .collect()
        } else {
            self.points
                .iter()
                .map(|p| (0..n).filter(|&j| cu_adjacent(p.coords(), self.points[j].coords(), u)).collect())
                .collect()
        };
        AdjacencyGraph::from_lists(lists)
    }
}

/// Nonzero vectors in `{-1,0,1}^dim` with at most `u` nonzero entries.
fn unit_offsets(dim: usize, u: u32) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                [-1, 0, 1].into_iter().map(move |d| {
                    let mut v = prefix.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| {
        let nz = v.iter().filter(|&&d| d != 0).count();
        nz >= 1 && nz <= u as usize
    });
    out
}

impl Clone for DigitalImage {
    fn clone(&self) -> Self {
        DigitalImage {
            dim: self.dim,
            points: self.points.clone(),
            index: self.index.clone(),
            graphs: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points
    }
}

impl Eq for DigitalImage {}

impl fmt::Debug for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitalImage").field("dim", &self.dim).field("points", &self.points).finish()
    }
}

pub fn adjacent(image: &DigitalImage, adj: Adjacency, x: &Point, y: &Point) -> Result<bool> {
    adj.validate(image.dim())?;
    let i = image.require(x)?;
    let j = image.require(y)?;
    match adj {
        Adjacency::Cu(u) => Ok(cu_adjacent(x.coords(), y.coords(), u)),
        Adjacency::Power { .. } => Ok(image.graph(adj)?.is_adjacent(i, j)),
    }
}

/// `x = y` or `x` adjacent to `y`.
pub fn reflexive_adjacent(image: &DigitalImage, adj: Adjacency, x: &Point, y: &Point) -> Result<bool> {
    Ok(adjacent(image, adj, x, y)? || x == y)
}

/// Some `a` in `a_set` and `b` in `b_set` are equal or adjacent.
pub fn sets_adjacent(image: &DigitalImage, adj: Adjacency, a_set: &[Point], b_set: &[Point]) -> Result<bool> {
    if a_set.is_empty() || b_set.is_empty() {
        return Err(Error::EmptySet);
    }
    let graph = image.graph(adj)?;
    let a_idx = a_set.iter().map(|p| image.require(p)).collect::<Result<Vec<_>>>()?;
    let b_idx = b_set.iter().map(|p| image.require(p)).collect::<Result<Vec<_>>>()?;
    Ok(a_idx.iter().any(|&a| b_idx.iter().any(|&b| graph.is_reflexive_adjacent(a, b))))
}

pub fn neighbors(image: &DigitalImage, adj: Adjacency, x: &Point) -> Result<Vec<Point>> {
    let graph = image.graph(adj)?;
    let i = image.require(x)?;
    Ok(graph.neighbors(i).iter().map(|&j| image.point(j).clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub connected: bool,
    /// Each component sorted; components ordered by least point.
    pub parts: Vec<Vec<Point>>,
}

pub fn is_connected(image: &DigitalImage, adj: Adjacency) -> Result<Components> {
    let graph = image.graph(adj)?;
    let parts: Vec<Vec<Point>> =
        graph.components().into_iter().map(|c| c.into_iter().map(|i| image.point(i).clone()).collect()).collect();
    Ok(Components { connected: parts.len() == 1, parts })
}

/// Largest shortest-path length from `x`; `None` when some point is unreachable.
pub fn eccentricity(image: &DigitalImage, adj: Adjacency, x: &Point) -> Result<Option<usize>> {
    let graph = image.graph(adj)?;
    let i = image.require(x)?;
    let dist = graph.distances_from(i);
    Ok(dist.iter().try_fold(0, |acc, d| d.map(|d| acc.max(d))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCertificates {
    /// Every two distinct points are adjacent.
    pub complete: bool,
    /// Least point equal-or-adjacent to every point.
    pub dominating: Option<Point>,
}

pub fn structure_certificates(image: &DigitalImage, adj: Adjacency) -> Result<StructureCertificates> {
    let graph = image.graph(adj)?;
    let n = image.len();
    let dominating_idx = (0..n).find(|&i| graph.closed_neighborhood(i).count_ones(..) == n);
    let complete = (0..n).all(|i| graph.neighbors(i).len() == n - 1);
    Ok(StructureCertificates { complete, dominating: dominating_idx.map(|i| image.point(i).clone()) })
}

/// Points whose removal disconnects their component.
pub fn articulation_points(image: &DigitalImage, adj: Adjacency) -> Result<Vec<Point>> {
    let graph = image.graph(adj)?;
    Ok(graph.articulation_points().into_iter().map(|i| image.point(i).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p<const N: usize>(c: [i64; N]) -> Point {
        Point::from(c)
    }

    fn pair(a: Point, b: Point) -> DigitalImage {
        let dim = a.dim();
        DigitalImage::new(dim, [a, b]).unwrap()
    }

    #[test]
    fn diagonal_pair_adjacency() {
        let x = pair(p([0, 0]), p([1, 1]));
        assert!(!adjacent(&x, Adjacency::Cu(1), &p([0, 0]), &p([1, 1])).unwrap());
        assert!(adjacent(&x, Adjacency::Cu(2), &p([0, 0]), &p([1, 1])).unwrap());
        assert!(!adjacent(&x, Adjacency::Cu(2), &p([0, 0]), &p([0, 0])).unwrap());
    }

    #[test]
    fn power_adjacency_on_interval() {
        let x = DigitalImage::cube(0, 3, 1).unwrap();
        let sq = Adjacency::power(1, 2);
        assert!(adjacent(&x, sq, &p([0]), &p([2])).unwrap());
        assert!(!adjacent(&x, sq, &p([0]), &p([3])).unwrap());
    }

    #[test]
    fn power_adjacency_stays_inside_image() {
        // 0 and 2 are two steps apart in Z but not in {0, 2}.
        let x = pair(p([0]), p([2]));
        assert!(!adjacent(&x, Adjacency::power(1, 5), &p([0]), &p([2])).unwrap());
    }

    #[test]
    fn reflexive_and_set_adjacency() {
        let x = DigitalImage::cube(-1, 2, 2).unwrap();
        let c1 = Adjacency::Cu(1);
        assert!(reflexive_adjacent(&x, c1, &p([0, 0]), &p([0, 0])).unwrap());
        assert!(reflexive_adjacent(&x, c1, &p([0, 0]), &p([1, 0])).unwrap());
        assert!(!reflexive_adjacent(&x, c1, &p([0, 0]), &p([2, 0])).unwrap());
        let a = [p([0, 0])];
        let b = [p([1, 1])];
        assert!(sets_adjacent(&x, c1, &a, &a).unwrap());
        assert!(!sets_adjacent(&x, c1, &a, &b).unwrap());
        assert!(sets_adjacent(&x, Adjacency::Cu(2), &a, &b).unwrap());
        assert_eq!(sets_adjacent(&x, c1, &a, &[]), Err(Error::EmptySet));
    }

    #[test]
    fn membership_and_dimension_errors() {
        let x = DigitalImage::cube(0, 1, 2).unwrap();
        assert_eq!(adjacent(&x, Adjacency::Cu(1), &p([0, 0]), &p([5, 5])), Err(Error::PointNotInImage(p([5, 5]))));
        assert!(matches!(adjacent(&x, Adjacency::Cu(1), &p([0]), &p([0, 0])), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(adjacent(&x, Adjacency::Cu(3), &p([0, 0]), &p([0, 1])), Err(Error::InvalidAdjacency { .. })));
    }

    #[test]
    fn neighbor_counts() {
        let x = DigitalImage::cube(-1, 1, 2).unwrap();
        assert_eq!(neighbors(&x, Adjacency::Cu(1), &p([0, 0])).unwrap().len(), 4);
        assert_eq!(neighbors(&x, Adjacency::Cu(2), &p([0, 0])).unwrap().len(), 8);
        let s = DigitalImage::singleton(p([3, 4]));
        assert!(neighbors(&s, Adjacency::Cu(2), &p([3, 4])).unwrap().is_empty());
        // offsets path and pairwise path agree in 3D
        let c = DigitalImage::cube(-1, 1, 3).unwrap();
        assert_eq!(neighbors(&c, Adjacency::Cu(1), &p([0, 0, 0])).unwrap().len(), 6);
        assert_eq!(neighbors(&c, Adjacency::Cu(2), &p([0, 0, 0])).unwrap().len(), 18);
        assert_eq!(neighbors(&c, Adjacency::Cu(3), &p([0, 0, 0])).unwrap().len(), 26);
    }

    #[test]
    fn connectivity() {
        let x = pair(p([0, 0]), p([1, 1]));
        let c = is_connected(&x, Adjacency::Cu(1)).unwrap();
        assert!(!c.connected);
        assert_eq!(c.parts.len(), 2);
        assert!(is_connected(&x, Adjacency::Cu(2)).unwrap().connected);
        assert!(is_connected(&DigitalImage::singleton(p([0])), Adjacency::Cu(1)).unwrap().connected);
    }

    #[test]
    fn eccentricities() {
        let x = DigitalImage::cube(0, 4, 2).unwrap();
        assert_eq!(eccentricity(&x, Adjacency::Cu(2), &p([2, 2])).unwrap(), Some(2));
        assert_eq!(eccentricity(&x, Adjacency::Cu(2), &p([0, 0])).unwrap(), Some(4));
        assert_eq!(eccentricity(&DigitalImage::singleton(p([1])), Adjacency::Cu(1), &p([1])).unwrap(), Some(0));
        let gap = pair(p([0]), p([2]));
        assert_eq!(eccentricity(&gap, Adjacency::Cu(1), &p([0])).unwrap(), None);
    }

    #[test]
    fn certificates() {
        for v in 1..=3 {
            let x = DigitalImage::cube(0, 1, v).unwrap();
            let c = structure_certificates(&x, Adjacency::Cu(v as u32)).unwrap();
            assert!(c.complete);
            assert!(c.dominating.is_some());
        }
        let x = DigitalImage::cube(-1, 1, 2).unwrap();
        let c = structure_certificates(&x, Adjacency::Cu(2)).unwrap();
        assert!(!c.complete);
        assert_eq!(c.dominating, Some(p([0, 0])));
        let c = structure_certificates(&DigitalImage::cube(0, 3, 1).unwrap(), Adjacency::Cu(1)).unwrap();
        assert_eq!(c, StructureCertificates { complete: false, dominating: None });
    }

    #[test]
    fn articulation_points_of_a_path() {
        let x = DigitalImage::cube(0, 3, 1).unwrap();
        let cuts = articulation_points(&x, Adjacency::Cu(1)).unwrap();
        assert_eq!(cuts, vec![p([1]), p([2])]);
        let sq = DigitalImage::cube(0, 1, 2).unwrap();
        assert!(articulation_points(&sq, Adjacency::Cu(1)).unwrap().is_empty());
    }

    #[test]
    fn image_construction_errors() {
        assert_eq!(DigitalImage::new(1, Vec::new()).unwrap_err(), Error::EmptyImage);
        assert_eq!(DigitalImage::new(1, [p([0]), p([0])]).unwrap_err(), Error::DuplicatePoint(p([0])));
        assert!(matches!(DigitalImage::new(2, [p([0])]).unwrap_err(), Error::DimensionMismatch { .. }));
    }

    #[test]
    fn box_detection() {
        assert_eq!(DigitalImage::cube(2, 5, 1).unwrap().as_box(), Some(vec![(2, 5)]));
        assert_eq!(pair(p([0, 0]), p([1, 1])).as_box(), None);
    }

    #[test]
    fn adjacency_parsing() {
        assert_eq!("c2".parse::<Adjacency>().unwrap(), Adjacency::Cu(2));
        assert_eq!("c1^3".parse::<Adjacency>().unwrap(), Adjacency::power(1, 3));
        assert!("c0".parse::<Adjacency>().is_err());
        assert!("c2^0".parse::<Adjacency>().is_err());
        assert!("8".parse::<Adjacency>().is_err());
        assert_eq!(Adjacency::power(2, 3).to_string(), "c2^3");
    }
}
