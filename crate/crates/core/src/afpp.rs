//! Fixed points, approximate fixed point properties and universality.
//!
//! Single-valued questions are finite and decided exactly. A multivalued
//! counterexample is a continuous map on some subdivision `S(X, r)`, and no
//! bound on the `r` needed is known, so a multivalued property is only
//! reported as holding when a structural certificate proves it: the image is
//! complete, has a dominating point, or is an interval under `c_1`. Otherwise
//! a bounded sweep either finds a counterexample or ends in `Unknown`.
//!
//! The counterexample searches restrict each point's candidate values to
//! those that are *not* equal-or-adjacent to the point (or to the values of
//! the map being tested, for universality), so the first solution of the
//! restricted search is the least counterexample in enumeration order. The
//! [`Strategy::Exhaustive`] route enumerates every continuous map instead and
//! tests each one; both routes return identical verdicts.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::grid::{self, Adjacency, AdjacencyGraph, DigitalImage, Point};
use crate::maps::{self, PointMap};
use crate::search::{Budget, FirstOutcome, Problem, SearchConfig};
use crate::subdivision::{self, find_inducer, induce_multimap, subdivide, Inducer, MultiMap, DEFAULT_R_MAX};
use crate::Status;

/// Above this many raw tables (`|X|^|X|`) a decision carries a size note.
pub const SIZE_NOTE_THRESHOLD: f64 = 1e10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    CompleteGraph,
    DominatingPoint(Point),
    /// `[a, b]_Z` under `c_1`.
    IntervalC1 {
        lo: i64,
        hi: i64,
    },
    /// Some domain point where every candidate opponent value meets the tested map.
    CoveringPoint(Point),
    /// Every candidate was examined.
    ExhaustiveSearch,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::CompleteGraph => write!(f, "complete-graph"),
            Certificate::DominatingPoint(p) => write!(f, "dominating-point {p}"),
            Certificate::IntervalC1 { lo, hi } => write!(f, "interval-c1 [{lo},{hi}]"),
            Certificate::CoveringPoint(p) => write!(f, "covering-point {p}"),
            Certificate::ExhaustiveSearch => write!(f, "exhaustive-search"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Counterexample {
    Single(PointMap),
    Multi { r: u32, inducer: PointMap, multimap: MultiMap },
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub counterexample: Option<Counterexample>,
    /// Search nodes spent.
    pub nodes: u64,
    /// Highest subdivision level fully searched (multivalued questions only).
    pub levels_searched: u32,
    pub notes: Vec<String>,
}

impl Verdict {
    fn holds(certificate: Certificate, nodes: u64) -> Self {
        Verdict {
            status: Status::Holds,
            certificate: Some(certificate),
            counterexample: None,
            nodes,
            levels_searched: 0,
            notes: Vec::new(),
        }
    }

    fn fails(counterexample: Counterexample, nodes: u64) -> Self {
        Verdict {
            status: Status::Fails,
            certificate: None,
            counterexample: Some(counterexample),
            nodes,
            levels_searched: 0,
            notes: Vec::new(),
        }
    }

    fn unknown(nodes: u64, note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Unknown,
            certificate: None,
            counterexample: None,
            nodes,
            levels_searched: 0,
            notes: vec![note.into()],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Search only among candidate counterexamples.
    Pruned,
    /// Enumerate every continuous map and test each.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub search: SearchConfig,
    pub certificates: bool,
    pub strategy: Strategy,
    pub r_max: u32,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            search: SearchConfig::default(),
            certificates: true,
            strategy: Strategy::Pruned,
            r_max: DEFAULT_R_MAX,
        }
    }
}

impl DecideOptions {
    pub fn without_certificates(self) -> Self {
        DecideOptions { certificates: false, ..self }
    }

    pub fn exhaustive(self) -> Self {
        DecideOptions { strategy: Strategy::Exhaustive, ..self }
    }

    pub fn with_r_max(self, r_max: u32) -> Self {
        DecideOptions { r_max, ..self }
    }
}

fn require_self_map(domain: &DigitalImage, codomain: &DigitalImage) -> Result<()> {
    if domain == codomain {
        Ok(())
    } else {
        Err(Error::NotSelfMap)
    }
}

pub fn fixed_points(f: &PointMap) -> Result<Vec<Point>> {
    require_self_map(f.domain(), f.codomain())?;
    Ok(f.table().iter().enumerate().filter(|&(i, &j)| i == j).map(|(i, _)| f.domain().point(i).clone()).collect())
}

pub fn fixed_points_multi(f: &MultiMap) -> Result<Vec<Point>> {
    require_self_map(f.domain(), f.codomain())?;
    Ok((0..f.domain().len())
        .filter(|&i| f.value_indices(i).binary_search(&i).is_ok())
        .map(|i| f.domain().point(i).clone())
        .collect())
}

/// Points `x` with `f(x)` equal or `μ`-adjacent to `x`.
pub fn approx_fixed_points(f: &PointMap, mu: Adjacency) -> Result<Vec<Point>> {
    require_self_map(f.domain(), f.codomain())?;
    let g = f.domain().graph(mu)?;
    Ok(f.table()
        .iter()
        .enumerate()
        .filter(|&(i, &j)| g.is_reflexive_adjacent(i, j))
        .map(|(i, _)| f.domain().point(i).clone())
        .collect())
}

/// Points `x` with some value of `F(x)` equal or `μ`-adjacent to `x`.
pub fn approx_fixed_points_multi(f: &MultiMap, mu: Adjacency) -> Result<Vec<Point>> {
    require_self_map(f.domain(), f.codomain())?;
    let g = f.domain().graph(mu)?;
    Ok((0..f.domain().len())
        .filter(|&i| f.value_indices(i).iter().any(|&j| g.is_reflexive_adjacent(i, j)))
        .map(|i| f.domain().point(i).clone())
        .collect())
}

fn complement(set: &FixedBitSet) -> FixedBitSet {
    let mut out = set.clone();
    out.toggle_range(..);
    out
}

fn size_notes(image: &DigitalImage) -> Vec<String> {
    let n = image.len() as f64;
    let log10 = n * n.log10();
    if log10 > SIZE_NOTE_THRESHOLD.log10() {
        vec![format!("raw search space |X|^|X| = 10^{log10:.1} exceeds 10^10 before pruning")]
    } else {
        Vec::new()
    }
}

fn validate(image: &DigitalImage, adjs: &[Adjacency]) -> Result<()> {
    adjs.iter().try_for_each(|a| a.validate(image.dim()))
}

fn structural_certificate(image: &DigitalImage, mu: Adjacency) -> Result<Option<Certificate>> {
    let certs = grid::structure_certificates(image, mu)?;
    Ok(if certs.complete {
        Some(Certificate::CompleteGraph)
    } else {
        certs.dominating.map(Certificate::DominatingPoint)
    })
}

fn interval_certificate(
    image: &DigitalImage,
    kappa: Adjacency,
    lambda: Adjacency,
    mu: Adjacency,
) -> Option<Certificate> {
    let c1 = Adjacency::Cu(1);
    if image.dim() != 1 || kappa != c1 || lambda != c1 || mu != c1 {
        return None;
    }
    image.as_box().map(|b| Certificate::IntervalC1 { lo: b[0].0, hi: b[0].1 })
}

/// Every `(κ,λ)`-continuous self-map of `X` has a `μ`-approximate fixed point.
pub fn decide_afpp_s(
    image: &Arc<DigitalImage>,
    kappa: Adjacency,
    lambda: Adjacency,
    mu: Adjacency,
    opts: &DecideOptions,
) -> Result<Verdict> {
    validate(image, &[kappa, lambda, mu])?;
    let notes = size_notes(image);
    if opts.certificates {
        if let Some(cert) = structural_certificate(image, mu)? {
            return Ok(Verdict { notes, ..Verdict::holds(cert, 0) });
        }
    }
    let near = image.graph(mu)?;
    let mut verdict = match opts.strategy {
        Strategy::Pruned => {
            let mut problem = Problem::homomorphisms(&*image.graph(kappa)?, &*image.graph(lambda)?);
            for i in 0..image.len() {
                problem.restrict(i, &complement(near.closed_neighborhood(i)));
            }
            let budget = Budget::new(opts.search.budget);
            match Arc::new(problem).first_solution(&opts.search, &budget) {
                FirstOutcome::Found(table) => {
                    let f = PointMap::from_indices(Arc::clone(image), Arc::clone(image), table)?;
                    Verdict::fails(Counterexample::Single(f), budget.used())
                }
                FirstOutcome::NoSolution => Verdict::holds(Certificate::ExhaustiveSearch, budget.used()),
                FirstOutcome::Exhausted => Verdict::unknown(budget.used(), "search budget exhausted"),
            }
        }
        Strategy::Exhaustive => {
            let mut stream = maps::enumerate_continuous_maps(image, image, kappa, lambda, opts.search.budget)?;
            let mut outcome = None;
            for f in stream.by_ref() {
                match f {
                    Ok(f) => {
                        if approx_fixed_points(&f, mu)?.is_empty() {
                            outcome = Some(Ok(f));
                            break;
                        }
                    }
                    Err(Error::BudgetExhausted { .. }) => {
                        outcome = Some(Err(()));
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            match outcome {
                Some(Ok(f)) => Verdict::fails(Counterexample::Single(f), stream.nodes()),
                Some(Err(())) => Verdict::unknown(stream.nodes(), "search budget exhausted"),
                None => Verdict::holds(Certificate::ExhaustiveSearch, stream.nodes()),
            }
        }
    };
    if let Some(Counterexample::Single(f)) = &verdict.counterexample {
        recheck_single_counterexample(f, kappa, lambda, &near)?;
    }
    verdict.notes.extend(notes);
    Ok(verdict)
}

fn recheck_single_counterexample(
    f: &PointMap,
    kappa: Adjacency,
    lambda: Adjacency,
    near: &AdjacencyGraph,
) -> Result<()> {
    if !maps::is_continuous(f, kappa, lambda)?.continuous {
        return Err(Error::Internal("counterexample is not continuous".into()));
    }
    if f.table().iter().enumerate().any(|(i, &j)| near.is_reflexive_adjacent(i, j)) {
        return Err(Error::Internal("counterexample has an approximate fixed point".into()));
    }
    Ok(())
}

fn recheck_inducer(inducer: &Inducer, multimap: &MultiMap, kappa: Adjacency, lambda: Adjacency) -> Result<()> {
    if !maps::is_continuous(&inducer.map, kappa, lambda)?.continuous {
        return Err(Error::Internal("inducer is not continuous".into()));
    }
    if &induce_multimap(&inducer.subdivision, &inducer.map)? != multimap {
        return Err(Error::Internal("inducer does not induce the reported multimap".into()));
    }
    Ok(())
}

/// Every `(κ,λ)`-continuous multivalued self-map of `X` has a `μ`-approximate
/// fixed point. Without a certificate the answer is `Fails` or `Unknown`.
pub fn decide_afpp_m(
    image: &Arc<DigitalImage>,
    kappa: Adjacency,
    lambda: Adjacency,
    mu: Adjacency,
    opts: &DecideOptions,
) -> Result<Verdict> {
    validate(image, &[kappa, lambda, mu])?;
    if opts.r_max == 0 {
        return Err(Error::InvalidParameter("r_max must be at least 1".into()));
    }
    let notes = size_notes(image);
    if opts.certificates {
        // complete graph, then the interval result, then a dominating point
        let cert = match structural_certificate(image, mu)? {
            Some(Certificate::CompleteGraph) => Some(Certificate::CompleteGraph),
            other => interval_certificate(image, kappa, lambda, mu).or(other),
        };
        if let Some(cert) = cert {
            return Ok(Verdict { notes, ..Verdict::holds(cert, 0) });
        }
    }
    let near = image.graph(mu)?;
    let target = image.graph(lambda)?;
    let budget = Budget::new(opts.search.budget);
    for r in 1..=opts.r_max {
        let s = Arc::new(subdivide(image, r as i64)?);
        let found = match opts.strategy {
            Strategy::Pruned => {
                let mut problem = Problem::homomorphisms(&*s.lattice().graph(kappa)?, &target);
                for k in 0..s.len() {
                    problem.restrict(k, &complement(near.closed_neighborhood(s.block_index(k))));
                }
                match Arc::new(problem).first_solution(&opts.search, &budget) {
                    FirstOutcome::Found(table) => {
                        let map = PointMap::from_indices(Arc::clone(s.lattice()), Arc::clone(image), table)?;
                        let multimap = induce_multimap(&s, &map)?;
                        Some((map, multimap))
                    }
                    FirstOutcome::NoSolution => None,
                    FirstOutcome::Exhausted => {
                        return Ok(Verdict {
                            levels_searched: r - 1,
                            notes,
                            ..Verdict::unknown(budget.used(), format!("search budget exhausted at r = {r}"))
                        })
                    }
                }
            }
            Strategy::Exhaustive => {
                let remaining = opts.search.budget.saturating_sub(budget.used());
                let stream = subdivision::enumerate_continuous_multimaps(image, image, kappa, lambda, r, remaining)?;
                let mut found = None;
                for m in stream {
                    let m = match m {
                        Ok(m) => m,
                        Err(Error::BudgetExhausted { .. }) => {
                            return Ok(Verdict {
                                levels_searched: r - 1,
                                notes,
                                ..Verdict::unknown(opts.search.budget, format!("search budget exhausted at r = {r}"))
                            })
                        }
                        Err(e) => return Err(e),
                    };
                    if approx_fixed_points_multi(&m, mu)?.is_empty() {
                        let map = m.inducer().expect("enumerated multimaps carry inducers").map.clone();
                        found = Some((map, m));
                        break;
                    }
                }
                found
            }
        };
        if let Some((map, multimap)) = found {
            let inducer = multimap.inducer().expect("induced multimaps carry inducers").clone();
            recheck_inducer(&inducer, &multimap, kappa, lambda)?;
            if !approx_fixed_points_multi(&multimap, mu)?.is_empty() {
                return Err(Error::Internal("multivalued counterexample has an approximate fixed point".into()));
            }
            let mut v = Verdict::fails(Counterexample::Multi { r, inducer: map, multimap }, budget.used());
            v.levels_searched = r;
            v.notes = notes;
            return Ok(v);
        }
    }
    let mut v = Verdict::unknown(
        budget.used(),
        format!("no counterexample at r <= {}; larger subdivisions not searched", opts.r_max),
    );
    v.levels_searched = opts.r_max;
    v.notes.extend(notes);
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct BoxTheoremReport {
    pub n: i64,
    pub v: usize,
    pub u: u32,
    /// `AFPP_S(c_u, c_1, c_v)` on `[0,n]^v`.
    pub single_valued: Verdict,
    /// Least central point meeting the eccentricity bound.
    pub center: Option<Point>,
    pub eccentricity: Option<usize>,
    /// `⌈n/2⌉`.
    pub bound: u32,
    /// `AFPP_M(c_v, c_v, c_v^⌈n/2⌉)` from certificates alone.
    pub multivalued: Verdict,
}

impl BoxTheoremReport {
    pub fn passed(&self) -> bool {
        self.single_valued.status == Status::Holds
            && self.eccentricity.is_some_and(|e| e <= self.bound as usize)
            && self.multivalued.status == Status::Holds
            && self.multivalued.certificate.is_some()
    }
}

/// Largest cube `[0,n]^v` accepted by [`verify_box_theorems`].
pub const BOX_SIZE_GUARD: usize = 125;

/// Checks the cube results on `[0,n]^v`: `AFPP_S(c_u, c_1, c_v)` by decision,
/// and `AFPP_M(c_v, c_v, c_v^⌈n/2⌉)` by a central point of small eccentricity.
pub fn verify_box_theorems(n: i64, v: usize, u: u32, opts: &DecideOptions) -> Result<BoxTheoremReport> {
    if n < 1 || v < 1 || u < 1 || u as usize > v {
        return Err(Error::InvalidParameter(format!("need n >= 1 and 1 <= u <= v, got n={n} v={v} u={u}")));
    }
    let size = (n as usize + 1).checked_pow(v as u32).filter(|&s| s <= BOX_SIZE_GUARD);
    if size.is_none() {
        return Err(Error::SizeGuard(format!("[0,{n}]^{v} has more than {BOX_SIZE_GUARD} points")));
    }
    let image = Arc::new(DigitalImage::cube(0, n, v)?);
    let cv = Adjacency::Cu(v as u32);
    let single_valued = decide_afpp_s(&image, Adjacency::Cu(u), Adjacency::Cu(1), cv, opts)?;

    let bound = ((n + 1) / 2) as u32;
    let (lo, hi) = (n / 2, (n + 1) / 2);
    let mut center = None;
    let mut eccentricity = None;
    for p in image.points() {
        if p.coords().iter().all(|&c| c == lo || c == hi) {
            let e = grid::eccentricity(&image, cv, p)?;
            if e.is_some_and(|e| e <= bound as usize) {
                center = Some(p.clone());
                eccentricity = e;
                break;
            }
        }
    }
    let certificate_only = DecideOptions { r_max: 1, search: SearchConfig::with_budget(0), ..*opts };
    let multivalued = decide_afpp_m(&image, cv, cv, Adjacency::power(v as u32, bound), &certificate_only)?;
    Ok(BoxTheoremReport { n, v, u, single_valued, center, eccentricity, bound, multivalued })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meeting {
    /// `y ↔ y'`
    Strict,
    /// `y = y'` or `y ↔ y'`
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Opponents {
    Single,
    Multi,
}

fn ensure_continuous(f: &MultiMap, kappa: Adjacency, lambda: Adjacency, opts: &DecideOptions) -> Result<()> {
    if let Some(inducer) = f.inducer() {
        if recheck_inducer(inducer, f, kappa, lambda).is_ok() {
            return Ok(());
        }
    }
    if find_inducer(f, kappa, lambda, opts.r_max, &opts.search)?.found() {
        Ok(())
    } else {
        Err(Error::NotVerifiablyContinuous { r_max: opts.r_max })
    }
}

/// Whether `F` meets every continuous opponent `G : X -> Y` at some `x`, with
/// values `y ∈ F(x)`, `y' ∈ G(x)` related as `mode` demands. A refuting
/// opponent is returned as the counterexample.
pub fn universality_check(
    f: &MultiMap,
    kappa: Adjacency,
    lambda: Adjacency,
    mode: Meeting,
    opponents: Opponents,
    opts: &DecideOptions,
) -> Result<Verdict> {
    let domain = f.domain();
    let codomain = f.codomain();
    kappa.validate(domain.dim())?;
    lambda.validate(codomain.dim())?;
    ensure_continuous(f, kappa, lambda, opts)?;

    let target = codomain.graph(lambda)?;
    // values of G(x) that fail to meet F(x)
    let avoid: Vec<FixedBitSet> = (0..domain.len())
        .map(|i| {
            let mut met = FixedBitSet::with_capacity(codomain.len());
            for &y in f.value_indices(i) {
                match mode {
                    Meeting::Weak => met.union_with(target.closed_neighborhood(y)),
                    Meeting::Strict => target.neighbors(y).iter().for_each(|&z| met.insert(z)),
                }
            }
            complement(&met)
        })
        .collect();

    if opts.certificates {
        if let Some(i) = avoid.iter().position(|a| a.is_clear()) {
            return Ok(Verdict::holds(Certificate::CoveringPoint(domain.point(i).clone()), 0));
        }
        if opponents == Opponents::Multi && mode == Meeting::Weak && f.is_self_map() {
            let is_identity = (0..domain.len()).all(|i| f.value_indices(i) == [i]);
            if let Some(cert) = interval_certificate(domain, kappa, lambda, lambda).filter(|_| is_identity) {
                return Ok(Verdict::holds(cert, 0));
            }
        }
    }

    let budget = Budget::new(opts.search.budget);
    match opponents {
        Opponents::Single => {
            let mut problem = Problem::homomorphisms(&*domain.graph(kappa)?, &target);
            for (i, a) in avoid.iter().enumerate() {
                problem.restrict(i, a);
            }
            Ok(match Arc::new(problem).first_solution(&opts.search, &budget) {
                FirstOutcome::Found(table) => {
                    let g = PointMap::from_indices(Arc::clone(domain), Arc::clone(codomain), table)?;
                    recheck_opponent(&g.table().iter().map(|&j| vec![j]).collect::<Vec<_>>(), &avoid)?;
                    if !maps::is_continuous(&g, kappa, lambda)?.continuous {
                        return Err(Error::Internal("refuting opponent is not continuous".into()));
                    }
                    Verdict::fails(Counterexample::Single(g), budget.used())
                }
                FirstOutcome::NoSolution => Verdict::holds(Certificate::ExhaustiveSearch, budget.used()),
                FirstOutcome::Exhausted => Verdict::unknown(budget.used(), "search budget exhausted"),
            })
        }
        Opponents::Multi => {
            for r in 1..=opts.r_max {
                let s = Arc::new(subdivide(domain, r as i64)?);
                let mut problem = Problem::homomorphisms(&*s.lattice().graph(kappa)?, &target);
                for k in 0..s.len() {
                    problem.restrict(k, &avoid[s.block_index(k)]);
                }
                match Arc::new(problem).first_solution(&opts.search, &budget) {
                    FirstOutcome::Found(table) => {
                        let map = PointMap::from_indices(Arc::clone(s.lattice()), Arc::clone(codomain), table)?;
                        let multimap = induce_multimap(&s, &map)?;
                        recheck_inducer(multimap.inducer().expect("induced"), &multimap, kappa, lambda)?;
                        recheck_opponent(multimap.table(), &avoid)?;
                        let mut v = Verdict::fails(Counterexample::Multi { r, inducer: map, multimap }, budget.used());
                        v.levels_searched = r;
                        return Ok(v);
                    }
                    FirstOutcome::NoSolution => {}
                    FirstOutcome::Exhausted => {
                        let mut v = Verdict::unknown(budget.used(), format!("search budget exhausted at r = {r}"));
                        v.levels_searched = r - 1;
                        return Ok(v);
                    }
                }
            }
            let mut v = Verdict::unknown(
                budget.used(),
                format!("no refuting opponent at r <= {}; larger subdivisions not searched", opts.r_max),
            );
            v.levels_searched = opts.r_max;
            Ok(v)
        }
    }
}

fn recheck_opponent(table: &[Vec<usize>], avoid: &[FixedBitSet]) -> Result<()> {
    let misses_everywhere = table.iter().zip(avoid).all(|(vals, a)| vals.iter().all(|&v| a.contains(v)));
    if misses_everywhere {
        Ok(())
    } else {
        Err(Error::Internal("refuting opponent meets the tested map".into()))
    }
}

/// `F(x) = F(y)` implies `x = y`.
pub fn is_injective(f: &MultiMap) -> bool {
    let mut values: Vec<&Vec<usize>> = f.table().iter().collect();
    values.sort();
    values.windows(2).all(|w| w[0] != w[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultimapProperties {
    pub injective: bool,
    /// Injective with `x ∈ F(x)` everywhere.
    pub identity: bool,
}

pub fn multimap_properties(f: &MultiMap) -> Result<MultimapProperties> {
    require_self_map(f.domain(), f.codomain())?;
    let injective = is_injective(f);
    let contains_self = (0..f.domain().len()).all(|i| f.value_indices(i).binary_search(&i).is_ok());
    Ok(MultimapProperties { injective, identity: injective && contains_self })
}

pub mod preservation;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_standard_map, StandardMap};

    fn p<const N: usize>(c: [i64; N]) -> Point {
        Point::from(c)
    }

    fn cube(lo: i64, hi: i64, v: usize) -> Arc<DigitalImage> {
        Arc::new(DigitalImage::cube(lo, hi, v).unwrap())
    }

    const C1: Adjacency = Adjacency::Cu(1);
    const C2: Adjacency = Adjacency::Cu(2);

    #[test]
    fn fixed_point_sets() {
        let x = cube(0, 1, 2);
        let id = make_standard_map(&StandardMap::Identity(Arc::clone(&x))).unwrap();
        assert_eq!(fixed_points(&id).unwrap(), x.points().to_vec());
        let anti = make_standard_map(&StandardMap::Antipodal(2)).unwrap();
        assert!(fixed_points(&anti).unwrap().is_empty());
        let full = MultiMap::constant_full(Arc::clone(&x), Arc::clone(&x));
        assert_eq!(fixed_points_multi(&full).unwrap(), x.points().to_vec());
        let proj = make_standard_map(&StandardMap::Projection { image: x, factor_dims: vec![1, 1], index: 0 }).unwrap();
        assert_eq!(fixed_points(&proj).unwrap_err(), Error::NotSelfMap);
    }

    #[test]
    fn approximate_fixed_point_sets() {
        let anti = make_standard_map(&StandardMap::Antipodal(2)).unwrap();
        assert!(approx_fixed_points(&anti, C1).unwrap().is_empty());
        assert_eq!(approx_fixed_points(&anti, C2).unwrap().len(), 4);
        let sf = make_standard_map(&StandardMap::ShiftFold).unwrap();
        assert!(approx_fixed_points(&sf, C1).unwrap().contains(&p([1, -1])));
        let m = MultiMap::from_point_map(&anti);
        assert!(approx_fixed_points_multi(&m, C1).unwrap().is_empty());
    }

    #[test]
    fn afpp_s_small_table() {
        let opts = DecideOptions::default();
        let v = decide_afpp_s(&cube(0, 1, 2), C1, C1, C1, &opts).unwrap();
        assert_eq!(v.status, Status::Fails);
        let Some(Counterexample::Single(f)) = &v.counterexample else { panic!("missing counterexample") };
        assert!(approx_fixed_points(f, C1).unwrap().is_empty());

        let v = decide_afpp_s(&cube(-1, 1, 2), C2, C2, C2, &opts).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert_eq!(v.certificate, Some(Certificate::DominatingPoint(p([0, 0]))));

        let v = decide_afpp_s(&cube(0, 5, 1), C1, C1, C1, &opts).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert_eq!(v.certificate, Some(Certificate::ExhaustiveSearch));
    }

    #[test]
    fn pruned_and_exhaustive_routes_agree() {
        let opts = DecideOptions::default().without_certificates();
        for (x, k) in [(cube(0, 1, 2), C1), (cube(0, 1, 2), C2), (cube(-1, 1, 2), C1), (cube(0, 3, 1), C1)] {
            let a = decide_afpp_s(&x, k, k, k, &opts).unwrap();
            let b = decide_afpp_s(&x, k, k, k, &opts.exhaustive()).unwrap();
            assert_eq!(a.status, b.status);
            match (&a.counterexample, &b.counterexample) {
                (Some(Counterexample::Single(f)), Some(Counterexample::Single(g))) => assert_eq!(f, g),
                (None, None) => {}
                _ => panic!("routes disagree"),
            }
        }
    }

    #[test]
    fn afpp_s_budget_gives_unknown() {
        let opts = DecideOptions { search: SearchConfig::with_budget(3), ..DecideOptions::default() };
        let v = decide_afpp_s(&cube(0, 5, 1), C1, C1, C1, &opts).unwrap();
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn afpp_m_certificates_and_refutation() {
        let opts = DecideOptions::default();
        let v = decide_afpp_m(&cube(0, 7, 1), C1, C1, C1, &opts).unwrap();
        assert_eq!(v.certificate, Some(Certificate::IntervalC1 { lo: 0, hi: 7 }));
        let v = decide_afpp_m(&cube(0, 1, 2), C1, C1, C1, &opts.with_r_max(1)).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(matches!(v.counterexample, Some(Counterexample::Multi { r: 1, .. })));
        for d in 1..=3 {
            let k = Adjacency::Cu(d as u32);
            let v = decide_afpp_m(&cube(0, 1, d), k, k, k, &opts).unwrap();
            assert_eq!(v.certificate, Some(Certificate::CompleteGraph));
        }
    }

    #[test]
    fn afpp_m_sweep_without_certificates_is_unknown_on_an_interval() {
        let opts = DecideOptions::default().without_certificates().with_r_max(3);
        let v = decide_afpp_m(&cube(0, 2, 1), C1, C1, C1, &opts).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.levels_searched, 3);
        let w = decide_afpp_m(&cube(0, 2, 1), C1, C1, C1, &opts.exhaustive()).unwrap();
        assert_eq!(w.status, Status::Unknown);
    }

    #[test]
    fn box_theorems() {
        let opts = DecideOptions::default();
        let r = verify_box_theorems(2, 2, 1, &opts).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_box_theorems(4, 1, 1, &opts).unwrap();
        assert_eq!(r.center, Some(p([2])));
        assert_eq!(r.eccentricity, Some(2));
        assert!(r.passed());
        let r = verify_box_theorems(1, 2, 2, &opts).unwrap();
        assert_eq!(r.bound, 1);
        assert!(r.passed());
        assert!(matches!(verify_box_theorems(10, 3, 1, &opts), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn singleton_universality() {
        let s = Arc::new(DigitalImage::singleton(p([0])));
        let id = MultiMap::identity(Arc::clone(&s));
        let opts = DecideOptions::default();
        for opp in [Opponents::Single, Opponents::Multi] {
            let strict = universality_check(&id, C1, C1, Meeting::Strict, opp, &opts).unwrap();
            assert_eq!(strict.status, Status::Fails);
            let weak = universality_check(&id, C1, C1, Meeting::Weak, opp, &opts).unwrap();
            assert_eq!(weak.status, Status::Holds);
        }
    }

    #[test]
    fn constant_full_is_weakly_universal() {
        let x = cube(0, 1, 2);
        let full = MultiMap::constant_full(Arc::clone(&x), Arc::clone(&x));
        let opts = DecideOptions::default();
        for opp in [Opponents::Single, Opponents::Multi] {
            let v = universality_check(&full, C1, C1, Meeting::Weak, opp, &opts).unwrap();
            assert_eq!(v.status, Status::Holds);
        }
        let v =
            universality_check(&full, C1, C1, Meeting::Weak, Opponents::Single, &opts.without_certificates()).unwrap();
        assert_eq!(v.certificate, Some(Certificate::ExhaustiveSearch));
    }

    #[test]
    fn discontinuous_map_is_rejected() {
        let s = Arc::new(DigitalImage::singleton(p([0])));
        let y = Arc::new(DigitalImage::new(1, [p([0]), p([2])]).unwrap());
        let f = MultiMap::constant_full(s, y);
        let err = universality_check(&f, C1, C1, Meeting::Weak, Opponents::Single, &DecideOptions::default());
        assert_eq!(err.unwrap_err(), Error::NotVerifiablyContinuous { r_max: 3 });
    }

    #[test]
    fn strict_meeting_of_multivalued_values() {
        // F(x) = {0, 1}: an opponent value 0 meets 1 strictly, so nothing avoids F
        let x = Arc::new(DigitalImage::singleton(p([0])));
        let y = cube(0, 1, 1);
        let f = MultiMap::constant_full(x, y);
        let v = universality_check(&f, C1, C1, Meeting::Strict, Opponents::Single, &DecideOptions::default()).unwrap();
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn injectivity_and_identity() {
        let x = cube(0, 2, 1);
        let id = MultiMap::identity(Arc::clone(&x));
        assert_eq!(multimap_properties(&id).unwrap(), MultimapProperties { injective: true, identity: true });
        let full = MultiMap::constant_full(Arc::clone(&x), Arc::clone(&x));
        assert!(!is_injective(&full));
        let step = MultiMap::from_sets(
            Arc::clone(&x),
            Arc::clone(&x),
            (0..=2).map(|i| (p([i]), vec![p([i]), p([(i + 1).min(2)])])),
        )
        .unwrap();
        assert_eq!(multimap_properties(&step).unwrap(), MultimapProperties { injective: true, identity: true });
    }
}
