//! Subdivisions `S(X, r)`, the block map `E_r`, and multivalued maps induced by
//! single-valued maps on a subdivision.
//!
//! A subdivision point `z / r` is stored by its integer numerator `z`; the
//! numerators form an ordinary [`DigitalImage`] (the *lattice*), and adjacency
//! on the subdivision is adjacency on that lattice. No rationals are involved.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::grid::{Adjacency, DigitalImage, Point};
use crate::maps::{self, PointMap};
use crate::search::{Budget, Exhausted, FirstOutcome, Problem, SearchConfig, Solutions};
use crate::Status;

/// Default number of subdivision levels swept when looking for an inducer.
pub const DEFAULT_R_MAX: u32 = 3;

#[derive(Debug)]
pub struct SubdividedImage {
    base: Arc<DigitalImage>,
    r: u32,
    lattice: Arc<DigitalImage>,
    /// Base index of each lattice point.
    block_of: Vec<usize>,
    /// Lattice indices of each base point's block, ascending.
    blocks: Vec<Vec<usize>>,
}

impl SubdividedImage {
    pub fn base(&self) -> &Arc<DigitalImage> {
        &self.base
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Numerator tuples as an image in `Z^n`.
    pub fn lattice(&self) -> &Arc<DigitalImage> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// Lattice indices of the block over base point `i`.
    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_index(&self, lattice_index: usize) -> usize {
        self.block_of[lattice_index]
    }
}

/// `S(X, r)`: every point of `X` replaced by its `r^n` block of numerators.
pub fn subdivide(base: &Arc<DigitalImage>, r: i64) -> Result<SubdividedImage> {
    if r <= 0 {
        return Err(Error::InvalidSubdivision(r));
    }
    let n = base.dim();
    let size = (r as usize)
        .checked_pow(n as u32)
        .and_then(|s| s.checked_mul(base.len()))
        .ok_or_else(|| Error::SizeGuard(format!("S(X,{r}) is too large")))?;
    let mut numerators = Vec::with_capacity(size);
    for x in base.points() {
        let mut block = vec![Vec::with_capacity(n)];
        for &c in x.coords() {
            block = block
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..r).map(move |d| {
                        let mut z = prefix.clone();
                        z.push(c * r + d);
                        z
                    })
                })
                .collect();
        }
        numerators.extend(block.into_iter().map(Point::from));
    }
    let lattice = Arc::new(DigitalImage::new(n, numerators)?);
    let block_of: Vec<usize> = lattice
        .points()
        .iter()
        .map(|z| base.index_of(&floor_point(z, r)).expect("numerator lies over the base"))
        .collect();
    let mut blocks = vec![Vec::new(); base.len()];
    for (k, &i) in block_of.iter().enumerate() {
        blocks[i].push(k);
    }
    Ok(SubdividedImage { base: Arc::clone(base), r: r as u32, lattice, block_of, blocks })
}

fn floor_point(z: &Point, r: i64) -> Point {
    Point::from(z.coords().iter().map(|&c| c.div_euclid(r)).collect::<Vec<_>>())
}

/// `E_r`: coordinatewise floor of `z / r`.
pub fn e_r(s: &SubdividedImage, z: &Point) -> Result<Point> {
    let k = s.lattice.require(z)?;
    Ok(s.base.point(s.block_of[k]).clone())
}

/// A single-valued continuous map on a subdivision that induces a multimap.
#[derive(Clone, Debug)]
pub struct Inducer {
    pub subdivision: Arc<SubdividedImage>,
    /// Map from the subdivision lattice into the multimap's codomain.
    pub map: PointMap,
}

impl Inducer {
    pub fn r(&self) -> u32 {
        self.subdivision.r
    }
}

/// A total multivalued map with nonempty values. Equality is extensional and
/// ignores any attached inducer.
#[derive(Clone, Debug)]
pub struct MultiMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    /// Sorted, nonempty codomain index sets.
    table: Vec<Vec<usize>>,
    inducer: Option<Arc<Inducer>>,
}

impl PartialEq for MultiMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.domain == other.domain && self.codomain == other.codomain
    }
}

impl Eq for MultiMap {}

impl MultiMap {
    pub fn from_sets(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        entries: impl IntoIterator<Item = (Point, Vec<Point>)>,
    ) -> Result<Self> {
        let mut table: Vec<Option<Vec<usize>>> = vec![None; domain.len()];
        for (x, values) in entries {
            let i = domain.require(&x)?;
            if table[i].is_some() {
                return Err(Error::DuplicatePoint(x));
            }
            if values.is_empty() {
                return Err(Error::EmptySet);
            }
            let mut set = values
                .into_iter()
                .map(|y| codomain.index_of(&y).ok_or(Error::ValueOutsideCodomain(y)))
                .collect::<Result<Vec<_>>>()?;
            set.sort_unstable();
            set.dedup();
            table[i] = Some(set);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::NotTotal(format!("no value for {}", domain.point(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiMap { domain, codomain, table, inducer: None })
    }

    /// `x ↦ {f(x)}`, carrying `f` itself as a level-1 inducer.
    pub fn from_point_map(f: &PointMap) -> Self {
        let table = f.table().iter().map(|&j| vec![j]).collect();
        let subdivision = Arc::new(subdivide(f.domain(), 1).expect("r = 1 is valid"));
        let map =
            PointMap::from_indices(Arc::clone(subdivision.lattice()), Arc::clone(f.codomain()), f.table().to_vec())
                .expect("level-1 lattice equals the domain");
        MultiMap {
            domain: Arc::clone(f.domain()),
            codomain: Arc::clone(f.codomain()),
            table,
            inducer: Some(Arc::new(Inducer { subdivision, map })),
        }
    }

    /// `x ↦ Y` for every `x`.
    pub fn constant_full(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>) -> Self {
        let all: Vec<usize> = (0..codomain.len()).collect();
        MultiMap { table: vec![all; domain.len()], domain, codomain, inducer: None }
    }

    pub fn identity(image: Arc<DigitalImage>) -> Self {
        let id = maps::make_standard_map(&maps::StandardMap::Identity(image)).expect("identity is total");
        MultiMap::from_point_map(&id)
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    /// Codomain indices of `F(x)` for domain index `i`.
    pub fn value_indices(&self, i: usize) -> &[usize] {
        &self.table[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn values(&self, x: &Point) -> Result<Vec<&Point>> {
        let i = self.domain.require(x)?;
        Ok(self.table[i].iter().map(|&j| self.codomain.point(j)).collect())
    }

    /// `(x, F(x))` in domain order.
    pub fn entries(&self) -> impl Iterator<Item = (&Point, Vec<&Point>)> + '_ {
        self.domain
            .points()
            .iter()
            .zip(&self.table)
            .map(|(x, set)| (x, set.iter().map(|&j| self.codomain.point(j)).collect()))
    }

    pub fn is_self_map(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn is_single_valued(&self) -> bool {
        self.table.iter().all(|s| s.len() == 1)
    }

    /// The underlying single-valued map when every value is a singleton.
    pub fn as_point_map(&self) -> Option<PointMap> {
        self.is_single_valued().then(|| {
            PointMap::from_indices(
                Arc::clone(&self.domain),
                Arc::clone(&self.codomain),
                self.table.iter().map(|s| s[0]).collect(),
            )
            .expect("table is total and in range")
        })
    }

    /// An inducer recorded when this multimap was constructed, if any.
    pub fn inducer(&self) -> Option<&Inducer> {
        self.inducer.as_deref()
    }

    pub fn with_inducer(mut self, inducer: Inducer) -> Result<Self> {
        if induce_multimap(&inducer.subdivision, &inducer.map)? != self {
            return Err(Error::InvalidParameter("inducer does not induce this multimap".into()));
        }
        self.inducer = Some(Arc::new(inducer));
        Ok(self)
    }
}

/// `F(x) = f(E_r^{-1}(x))`.
pub fn induce_multimap(s: &Arc<SubdividedImage>, f: &PointMap) -> Result<MultiMap> {
    if f.domain() != s.lattice() {
        return Err(Error::NotTotal("map is not defined on exactly the subdivision points".into()));
    }
    let table = s
        .blocks
        .iter()
        .map(|block| {
            let mut set: Vec<usize> = block.iter().map(|&k| f.table()[k]).collect();
            set.sort_unstable();
            set.dedup();
            set
        })
        .collect();
    Ok(MultiMap {
        domain: Arc::clone(&s.base),
        codomain: Arc::clone(f.codomain()),
        table,
        inducer: Some(Arc::new(Inducer { subdivision: Arc::clone(s), map: f.clone() })),
    })
}

#[derive(Clone, Debug)]
pub struct InducerReport {
    /// First continuous inducer found, sweeping `r = 1, 2, ...`.
    pub inducer: Option<Inducer>,
    /// Highest level searched to completion.
    pub levels_searched: u32,
    pub nodes: u64,
}

impl InducerReport {
    pub fn found(&self) -> bool {
        self.inducer.is_some()
    }
}

/// Searches `r = 1..=r_max` for a `(κ,λ)`-continuous map on `S(X, r)` inducing `F`.
/// Not finding one says nothing about larger `r`.
pub fn find_inducer(
    f: &MultiMap,
    kappa: Adjacency,
    lambda: Adjacency,
    r_max: u32,
    config: &SearchConfig,
) -> Result<InducerReport> {
    if r_max == 0 {
        return Err(Error::InvalidParameter("r_max must be at least 1".into()));
    }
    kappa.validate(f.domain.dim())?;
    let target = f.codomain.graph(lambda)?;
    let budget = Budget::new(config.budget);
    for r in 1..=r_max {
        let s = Arc::new(subdivide(&f.domain, r as i64)?);
        let mut problem = Problem::homomorphisms(&*s.lattice.graph(kappa)?, &target);
        for (i, block) in s.blocks.iter().enumerate() {
            problem.cover(block.clone(), index_set(f.codomain.len(), &f.table[i]));
        }
        match Arc::new(problem).first_solution(config, &budget) {
            FirstOutcome::Found(table) => {
                let map = PointMap::from_indices(Arc::clone(&s.lattice), Arc::clone(&f.codomain), table)?;
                return Ok(InducerReport {
                    inducer: Some(Inducer { subdivision: s, map }),
                    levels_searched: r,
                    nodes: budget.used(),
                });
            }
            FirstOutcome::NoSolution => {}
            FirstOutcome::Exhausted => return Err(Error::BudgetExhausted { budget: config.budget }),
        }
    }
    Ok(InducerReport { inducer: None, levels_searched: r_max, nodes: budget.used() })
}

pub(crate) fn index_set(capacity: usize, members: &[usize]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(capacity);
    for &m in members {
        set.insert(m);
    }
    set
}

/// `g ∘ F`, pointwise. When `F` carries an inducer `f`, `g ∘ f` is attached as
/// the inducer of the result.
pub fn compose_multimap_then_map(f: &MultiMap, g: &PointMap) -> Result<MultiMap> {
    if &f.codomain != g.domain() {
        return Err(Error::DomainMismatch("codomain of F differs from domain of g".into()));
    }
    let table = f
        .table
        .iter()
        .map(|set| {
            let mut out: Vec<usize> = set.iter().map(|&j| g.table()[j]).collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    let inducer = match &f.inducer {
        Some(ind) => {
            Some(Arc::new(Inducer { subdivision: Arc::clone(&ind.subdivision), map: maps::compose(&ind.map, g)? }))
        }
        None => None,
    };
    Ok(MultiMap { domain: Arc::clone(&f.domain), codomain: Arc::clone(g.codomain()), table, inducer })
}

/// `G ∘ F` with `(G ∘ F)(x) = ∪_{y ∈ F(x)} G(y)`. The flag is true when
/// `domain_adjacency` is `c_v` for the domain's dimension `v`, the case in which
/// composites of continuous multimaps are known to stay continuous.
pub fn compose_multimaps(f: &MultiMap, g: &MultiMap, domain_adjacency: Adjacency) -> Result<(MultiMap, bool)> {
    if f.codomain != g.domain {
        return Err(Error::DomainMismatch("codomain of F differs from domain of G".into()));
    }
    let table = f
        .table
        .iter()
        .map(|set| {
            let mut out: Vec<usize> = set.iter().flat_map(|&j| g.table[j].iter().copied()).collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    let applicable = domain_adjacency == Adjacency::Cu(f.domain.dim() as u32);
    Ok((
        MultiMap { domain: Arc::clone(&f.domain), codomain: Arc::clone(&g.codomain), table, inducer: None },
        applicable,
    ))
}

/// Distinct multimaps induced by continuous maps on `S(X, r)`, in order of first
/// appearance along the lexicographic inducer stream.
pub struct MultiMapStream {
    subdivision: Arc<SubdividedImage>,
    codomain: Arc<DigitalImage>,
    solutions: Solutions,
    seen: HashSet<Vec<Vec<usize>>>,
    budget: u64,
}

impl Iterator for MultiMapStream {
    type Item = Result<MultiMap>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let table = match self.solutions.next()? {
                Ok(t) => t,
                Err(Exhausted) => return Some(Err(Error::BudgetExhausted { budget: self.budget })),
            };
            let map = PointMap::from_indices(Arc::clone(&self.subdivision.lattice), Arc::clone(&self.codomain), table)
                .expect("solver tables are total");
            let induced = induce_multimap(&self.subdivision, &map).expect("map lives on the lattice");
            if self.seen.insert(induced.table.clone()) {
                return Some(Ok(induced));
            }
        }
    }
}

pub fn enumerate_continuous_multimaps(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    kappa: Adjacency,
    lambda: Adjacency,
    r: u32,
    budget: u64,
) -> Result<MultiMapStream> {
    let s = Arc::new(subdivide(domain, r as i64)?);
    let problem = Problem::homomorphisms(&*s.lattice.graph(kappa)?, &*codomain.graph(lambda)?);
    Ok(MultiMapStream {
        subdivision: s,
        codomain: Arc::clone(codomain),
        solutions: Arc::new(problem).solutions(Budget::new(budget)),
        seen: HashSet::new(),
        budget,
    })
}

/// `Holds` when `R(y) = {y}` on `subset` and `R` has a continuous inducer within
/// `r_max`; `Fails` when the pointwise condition fails; `Unknown` otherwise.
pub fn is_multivalued_retraction(
    r: &MultiMap,
    subset: &DigitalImage,
    kappa: Adjacency,
    r_max: u32,
    config: &SearchConfig,
) -> Result<Status> {
    if !subset.is_subset_of(&r.domain) {
        return Err(Error::DomainMismatch("retract is not a subset of the domain".into()));
    }
    let in_subset = r.entries().all(|(_, vals)| vals.iter().all(|y| subset.contains(y)));
    let fixes = subset.points().iter().all(|y| r.values(y).map(|v| v.len() == 1 && v[0] == y).unwrap_or(false));
    if !in_subset || !fixes {
        return Ok(Status::Fails);
    }
    let report = find_inducer(r, kappa, kappa, r_max, config)?;
    Ok(if report.found() { Status::Holds } else { Status::Unknown })
}
