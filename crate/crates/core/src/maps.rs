//! Single-valued maps between digital images, stored as explicit tables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Adjacency, DigitalImage, Point};
use crate::search::{Budget, Exhausted, Problem, Solutions};

/// A total function `domain -> codomain`; `table[i]` is the codomain index of
/// the image of domain point `i`.
#[derive(Clone, Debug)]
pub struct PointMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    table: Vec<usize>,
}

impl PartialEq for PointMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.domain == other.domain && self.codomain == other.codomain
    }
}

impl Eq for PointMap {}

impl PointMap {
    /// Builds a map from index form. `table` must have one in-range entry per domain point.
    pub fn from_indices(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::NotTotal(format!("{} entries for {} domain points", table.len(), domain.len())));
        }
        if table.iter().any(|&j| j >= codomain.len()) {
            return Err(Error::InvalidParameter("codomain index out of range".into()));
        }
        Ok(PointMap { domain, codomain, table })
    }

    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        mut f: impl FnMut(&Point) -> Point,
    ) -> Result<Self> {
        let table = domain
            .points()
            .iter()
            .map(|p| {
                let q = f(p);
                codomain.index_of(&q).ok_or(Error::ValueOutsideCodomain(q))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointMap { domain, codomain, table })
    }

    /// Builds a map from explicit `(x, f(x))` pairs covering the domain exactly once.
    pub fn from_pairs(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        pairs: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; domain.len()];
        for (x, y) in pairs {
            let i = domain.require(&x)?;
            let j = codomain.index_of(&y).ok_or(Error::ValueOutsideCodomain(y))?;
            if table[i] != usize::MAX {
                return Err(Error::DuplicatePoint(x));
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&j| j == usize::MAX) {
            return Err(Error::NotTotal(format!("no value for {}", domain.point(i))));
        }
        Ok(PointMap { domain, codomain, table })
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: &Point) -> Result<&Point> {
        let i = self.domain.require(x)?;
        Ok(self.codomain.point(self.table[i]))
    }

    /// `(x, f(x))` in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.domain.points().iter().zip(&self.table).map(|(x, &j)| (x, self.codomain.point(j)))
    }

    pub fn is_self_map(&self) -> bool {
        self.domain == self.codomain
    }

    /// The same table viewed with another codomain that contains every value.
    pub fn with_codomain(&self, codomain: Arc<DigitalImage>) -> Result<Self> {
        PointMap::from_pairs(Arc::clone(&self.domain), codomain, self.pairs().map(|(x, y)| (x.clone(), y.clone())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityReport {
    pub continuous: bool,
    /// Least adjacent pair whose images are neither equal nor adjacent.
    pub witness: Option<(Point, Point)>,
}

pub fn is_continuous(f: &PointMap, kappa: Adjacency, lambda: Adjacency) -> Result<ContinuityReport> {
    let source = f.domain.graph(kappa)?;
    let target = f.codomain.graph(lambda)?;
    for i in 0..f.domain.len() {
        for &j in source.neighbors(i).iter().filter(|&&j| j > i) {
            if !target.is_reflexive_adjacent(f.table[i], f.table[j]) {
                return Ok(ContinuityReport {
                    continuous: false,
                    witness: Some((f.domain.point(i).clone(), f.domain.point(j).clone())),
                });
            }
        }
    }
    Ok(ContinuityReport { continuous: true, witness: None })
}

/// `g ∘ f`.
pub fn compose(f: &PointMap, g: &PointMap) -> Result<PointMap> {
    if f.codomain != g.domain {
        return Err(Error::DomainMismatch("codomain of f differs from domain of g".into()));
    }
    let table = f.table.iter().map(|&j| g.table[j]).collect();
    Ok(PointMap { domain: Arc::clone(&f.domain), codomain: Arc::clone(&g.codomain), table })
}

/// Continuous bijection with continuous inverse.
pub fn is_isomorphism(f: &PointMap, kappa: Adjacency, lambda: Adjacency) -> Result<bool> {
    let forward = is_continuous(f, kappa, lambda)?.continuous;
    let n = f.domain.len();
    if n != f.codomain.len() {
        return Ok(false);
    }
    let mut inverse = vec![usize::MAX; n];
    for (i, &j) in f.table.iter().enumerate() {
        if inverse[j] != usize::MAX {
            return Ok(false);
        }
        inverse[j] = i;
    }
    let inverse = PointMap { domain: Arc::clone(&f.codomain), codomain: Arc::clone(&f.domain), table: inverse };
    Ok(forward && is_continuous(&inverse, lambda, kappa)?.continuous)
}

/// `r` is `(κ,κ)`-continuous into `subset` and fixes `subset` pointwise.
pub fn is_retraction(r: &PointMap, subset: &DigitalImage, kappa: Adjacency) -> Result<bool> {
    if !subset.is_subset_of(&r.domain) {
        return Err(Error::DomainMismatch("retract is not a subset of the domain".into()));
    }
    if r.pairs().any(|(_, y)| !subset.contains(y)) {
        return Ok(false);
    }
    if subset.points().iter().any(|y| r.apply(y).map(|v| v != y).unwrap_or(true)) {
        return Ok(false);
    }
    let onto = r.with_codomain(Arc::new(subset.clone()))?;
    Ok(is_continuous(&onto, kappa, kappa)?.continuous)
}

/// Maps built from closed-form formulas.
#[derive(Clone, Debug)]
pub enum StandardMap {
    Identity(Arc<DigitalImage>),
    Constant(Arc<DigitalImage>, Point),
    /// Projection of a product image onto factor `index`; factors occupy
    /// consecutive coordinate blocks of the given widths.
    Projection {
        image: Arc<DigitalImage>,
        factor_dims: Vec<usize>,
        index: usize,
    },
    /// `z ↦ 1 - z` in every coordinate of `[0,1]^v`.
    Antipodal(usize),
    /// The map of `[-1,1]^2` shifting the lower two rows right and folding the top row down.
    ShiftFold,
    /// Coordinatewise clamp of `image` onto the box `bounds`.
    Clamp {
        image: Arc<DigitalImage>,
        bounds: Vec<(i64, i64)>,
    },
}

pub fn make_standard_map(kind: &StandardMap) -> Result<PointMap> {
    match kind {
        StandardMap::Identity(x) => PointMap::from_fn(Arc::clone(x), Arc::clone(x), Point::clone),
        StandardMap::Constant(x, c) => {
            x.require(c)?;
            PointMap::from_fn(Arc::clone(x), Arc::clone(x), |_| c.clone())
        }
        StandardMap::Projection { image, factor_dims, index } => projection(image, factor_dims, *index),
        StandardMap::Antipodal(v) => {
            if *v == 0 {
                return Err(Error::ZeroDimension);
            }
            let x = Arc::new(DigitalImage::cube(0, 1, *v)?);
            PointMap::from_fn(Arc::clone(&x), x, |p| Point::from(p.coords().iter().map(|&z| 1 - z).collect::<Vec<_>>()))
        }
        StandardMap::ShiftFold => {
            let x = Arc::new(DigitalImage::cube(-1, 1, 2)?);
            PointMap::from_fn(Arc::clone(&x), x, |p| {
                let (a, b) = (p.coord(0), p.coord(1));
                if b == 1 {
                    Point::from([a, 0])
                } else {
                    Point::from([(a + 1).min(1), b])
                }
            })
        }
        StandardMap::Clamp { image, bounds } => clamp(image, bounds),
    }
}

fn projection(image: &Arc<DigitalImage>, factor_dims: &[usize], index: usize) -> Result<PointMap> {
    if factor_dims.iter().sum::<usize>() != image.dim() || factor_dims.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "factor widths {factor_dims:?} do not partition dimension {}",
            image.dim()
        )));
    }
    if index >= factor_dims.len() {
        return Err(Error::InvalidParameter(format!("no factor {index}")));
    }
    let offsets: Vec<usize> = factor_dims
        .iter()
        .scan(0, |acc, &w| {
            let start = *acc;
            *acc += w;
            Some(start)
        })
        .collect();
    let block = |p: &Point, k: usize| p.coords()[offsets[k]..offsets[k] + factor_dims[k]].to_vec();
    let factors: Vec<Vec<Vec<i64>>> = (0..factor_dims.len())
        .map(|k| {
            let mut f: Vec<Vec<i64>> = image.points().iter().map(|p| block(p, k)).collect();
            f.sort();
            f.dedup();
            f
        })
        .collect();
    let product_size = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.len()));
    if product_size != Some(image.len()) {
        return Err(Error::InvalidParameter("image is not the product of its factors".into()));
    }
    let factor = Arc::new(DigitalImage::new(factor_dims[index], factors[index].iter().cloned().map(Point::from))?);
    PointMap::from_fn(Arc::clone(image), factor, |p| Point::from(block(p, index)))
}

fn clamp(image: &Arc<DigitalImage>, bounds: &[(i64, i64)]) -> Result<PointMap> {
    if bounds.len() != image.dim() {
        return Err(Error::DimensionMismatch { expected: image.dim(), found: bounds.len() });
    }
    let target = Arc::new(DigitalImage::boxed(bounds)?);
    if !target.is_subset_of(image) {
        return Err(Error::InvalidParameter("clamp box is not contained in the image".into()));
    }
    PointMap::from_fn(Arc::clone(image), target, |p| {
        Point::from(p.coords().iter().zip(bounds).map(|(&c, &(a, b))| c.clamp(a, b)).collect::<Vec<_>>())
    })
}

/// Lazy stream of every continuous map, in lexicographic table order.
pub struct MapStream {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    solutions: Solutions,
    budget: Arc<Budget>,
}

impl MapStream {
    /// Partial-assignment extensions spent so far.
    pub fn nodes(&self) -> u64 {
        self.budget.used()
    }
}

impl Iterator for MapStream {
    type Item = Result<PointMap>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(match self.solutions.next()? {
            Ok(table) => Ok(PointMap { domain: Arc::clone(&self.domain), codomain: Arc::clone(&self.codomain), table }),
            Err(Exhausted) => Err(Error::BudgetExhausted { budget: self.budget.limit() }),
        })
    }
}

pub fn enumerate_continuous_maps(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    kappa: Adjacency,
    lambda: Adjacency,
    budget: u64,
) -> Result<MapStream> {
    let problem = Problem::homomorphisms(&*domain.graph(kappa)?, &*codomain.graph(lambda)?);
    let budget = Budget::new(budget);
    Ok(MapStream {
        domain: Arc::clone(domain),
        codomain: Arc::clone(codomain),
        solutions: Arc::new(problem).solutions(Arc::clone(&budget)),
        budget,
    })
}

/// Least retraction of `image` onto `subset`, if one exists.
pub fn find_retraction(
    image: &Arc<DigitalImage>,
    subset: &Arc<DigitalImage>,
    kappa: Adjacency,
    budget: u64,
) -> Result<Option<PointMap>> {
    if !subset.is_subset_of(image) {
        return Err(Error::DomainMismatch("retract is not a subset of the domain".into()));
    }
    let mut problem = Problem::homomorphisms(&*image.graph(kappa)?, &*subset.graph(kappa)?);
    for (j, y) in subset.points().iter().enumerate() {
        problem.fix(image.require(y)?, j);
    }
    let mut solutions = Arc::new(problem).solutions(Budget::new(budget));
    match solutions.next() {
        None => Ok(None),
        Some(Err(Exhausted)) => Err(Error::BudgetExhausted { budget }),
        Some(Ok(table)) => Ok(Some(PointMap { domain: Arc::clone(image), codomain: Arc::clone(subset), table })),
    }
}

/// Least isomorphism `(X,κ) -> (Y,λ)`, if one exists.
pub fn find_isomorphism(
    x: &Arc<DigitalImage>,
    kappa: Adjacency,
    y: &Arc<DigitalImage>,
    lambda: Adjacency,
    budget: u64,
) -> Result<Option<PointMap>> {
    if x.len() != y.len() {
        return Ok(None);
    }
    let source = x.graph(kappa)?;
    let target = y.graph(lambda)?;
    if source.edge_count() != target.edge_count() {
        return Ok(None);
    }
    let mut problem = Problem::homomorphisms(&source, &target);
    problem.all_different();
    for table in Arc::new(problem).solutions(Budget::new(budget)) {
        let table = table.map_err(|Exhausted| Error::BudgetExhausted { budget })?;
        let f = PointMap { domain: Arc::clone(x), codomain: Arc::clone(y), table };
        if is_isomorphism(&f, kappa, lambda)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p<const N: usize>(c: [i64; N]) -> Point {
        Point::from(c)
    }

    fn shift_fold() -> PointMap {
        make_standard_map(&StandardMap::ShiftFold).unwrap()
    }

    #[test]
    fn shift_fold_table() {
        let f = shift_fold();
        assert_eq!(f.apply(&p([-1, -1])).unwrap(), &p([0, -1]));
        assert_eq!(f.apply(&p([1, 1])).unwrap(), &p([1, 0]));
        assert_eq!(f.apply(&p([0, 0])).unwrap(), &p([1, 0]));
        assert_eq!(f.apply(&p([1, -1])).unwrap(), &p([1, -1]));
    }

    #[test]
    fn shift_fold_continuity_depends_on_adjacency() {
        let f = shift_fold();
        let c1 = is_continuous(&f, Adjacency::Cu(1), Adjacency::Cu(1)).unwrap();
        assert_eq!(c1, ContinuityReport { continuous: true, witness: None });
        let c2 = is_continuous(&f, Adjacency::Cu(2), Adjacency::Cu(2)).unwrap();
        assert!(!c2.continuous);
        assert_eq!(c2.witness, Some((p([-1, 1]), p([0, 0]))));
    }

    #[test]
    fn identity_is_continuous_and_isomorphism() {
        let x = Arc::new(DigitalImage::cube(-1, 1, 2).unwrap());
        let id = make_standard_map(&StandardMap::Identity(Arc::clone(&x))).unwrap();
        for u in 1..=2 {
            let a = Adjacency::Cu(u);
            assert!(is_continuous(&id, a, a).unwrap().continuous);
            assert!(is_isomorphism(&id, a, a).unwrap());
        }
        assert_eq!(compose(&shift_fold(), &id).unwrap(), shift_fold());
    }

    #[test]
    fn antipodal_table_and_involution() {
        let a = make_standard_map(&StandardMap::Antipodal(2)).unwrap();
        assert_eq!(a.apply(&p([0, 0])).unwrap(), &p([1, 1]));
        assert_eq!(a.apply(&p([0, 1])).unwrap(), &p([1, 0]));
        let aa = compose(&a, &a).unwrap();
        let id = make_standard_map(&StandardMap::Identity(Arc::clone(a.domain()))).unwrap();
        assert_eq!(aa, id);
    }

    #[test]
    fn compose_with_constant() {
        let x = Arc::new(DigitalImage::cube(0, 2, 1).unwrap());
        let c = make_standard_map(&StandardMap::Constant(Arc::clone(&x), p([1]))).unwrap();
        let id = make_standard_map(&StandardMap::Identity(Arc::clone(&x))).unwrap();
        let g = compose(&id, &c).unwrap();
        assert!(g.pairs().all(|(_, y)| y == &p([1])));
        let other = Arc::new(DigitalImage::cube(0, 1, 2).unwrap());
        let f = make_standard_map(&StandardMap::Identity(other)).unwrap();
        assert!(matches!(compose(&f, &c), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn diagonal_and_horizontal_pairs_are_isomorphic() {
        let diag = Arc::new(DigitalImage::new(2, [p([0, 0]), p([1, 1])]).unwrap());
        let horiz = Arc::new(DigitalImage::new(2, [p([0, 0]), p([1, 0])]).unwrap());
        let f = PointMap::from_pairs(
            Arc::clone(&diag),
            Arc::clone(&horiz),
            [(p([0, 0]), p([0, 0])), (p([1, 1]), p([1, 0]))],
        )
        .unwrap();
        assert!(is_isomorphism(&f, Adjacency::Cu(2), Adjacency::Cu(2)).unwrap());
        // under c1 the diagonal pair is disconnected, so no isomorphism
        assert!(!is_isomorphism(&f, Adjacency::Cu(1), Adjacency::Cu(1)).unwrap());
        let c = make_standard_map(&StandardMap::Constant(Arc::clone(&diag), p([0, 0]))).unwrap();
        assert!(!is_isomorphism(&c, Adjacency::Cu(2), Adjacency::Cu(2)).unwrap());
    }

    #[test]
    fn clamp_retraction() {
        let x = Arc::new(DigitalImage::cube(-1, 1, 2).unwrap());
        let r = make_standard_map(&StandardMap::Clamp { image: Arc::clone(&x), bounds: vec![(0, 1), (0, 1)] }).unwrap();
        assert_eq!(r.apply(&p([-1, -1])).unwrap(), &p([0, 0]));
        let y = DigitalImage::cube(0, 1, 2).unwrap();
        assert!(is_retraction(&r, &y, Adjacency::Cu(1)).unwrap());
        assert!(is_retraction(&r, &y, Adjacency::Cu(2)).unwrap());
        let bad = make_standard_map(&StandardMap::Clamp { image: Arc::clone(&x), bounds: vec![(0, 2), (0, 1)] });
        assert!(bad.is_err());
    }

    #[test]
    fn trivial_retractions() {
        let x = Arc::new(DigitalImage::cube(0, 2, 2).unwrap());
        let id = make_standard_map(&StandardMap::Identity(Arc::clone(&x))).unwrap();
        assert!(is_retraction(&id, &x, Adjacency::Cu(1)).unwrap());
        let y0 = p([1, 2]);
        let c = make_standard_map(&StandardMap::Constant(Arc::clone(&x), y0.clone())).unwrap();
        assert!(is_retraction(&c, &DigitalImage::singleton(y0), Adjacency::Cu(1)).unwrap());
        let outside = DigitalImage::singleton(p([7, 7]));
        assert!(is_retraction(&c, &outside, Adjacency::Cu(1)).is_err());
    }

    #[test]
    fn projections() {
        let x = Arc::new(DigitalImage::boxed(&[(0, 1), (3, 5)]).unwrap());
        let p1 =
            make_standard_map(&StandardMap::Projection { image: Arc::clone(&x), factor_dims: vec![1, 1], index: 1 })
                .unwrap();
        assert_eq!(p1.codomain().len(), 3);
        assert_eq!(p1.apply(&p([1, 4])).unwrap(), &p([4]));
        assert!(is_continuous(&p1, Adjacency::Cu(2), Adjacency::Cu(1)).unwrap().continuous);
        let diag = Arc::new(DigitalImage::new(2, [p([0, 0]), p([1, 1])]).unwrap());
        assert!(make_standard_map(&StandardMap::Projection { image: diag, factor_dims: vec![1, 1], index: 0 }).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for (hi, expected) in [(1, 4), (2, 17)] {
            let x = Arc::new(DigitalImage::cube(0, hi, 1).unwrap());
            let n = enumerate_continuous_maps(&x, &x, Adjacency::Cu(1), Adjacency::Cu(1), u64::MAX).unwrap().count();
            assert_eq!(n, expected);
        }
        let s = Arc::new(DigitalImage::singleton(p([0, 0])));
        let y = Arc::new(DigitalImage::cube(0, 2, 2).unwrap());
        let n = enumerate_continuous_maps(&s, &y, Adjacency::Cu(1), Adjacency::Cu(1), u64::MAX).unwrap().count();
        assert_eq!(n, 9);
    }

    #[test]
    fn enumeration_reports_budget() {
        let x = Arc::new(DigitalImage::cube(0, 2, 2).unwrap());
        let last = enumerate_continuous_maps(&x, &x, Adjacency::Cu(1), Adjacency::Cu(1), 10).unwrap().last();
        assert!(matches!(last, Some(Err(Error::BudgetExhausted { budget: 10 }))));
    }

    #[test]
    fn retraction_search() {
        let x = Arc::new(DigitalImage::cube(-1, 1, 2).unwrap());
        let y = Arc::new(DigitalImage::cube(0, 1, 2).unwrap());
        let r = find_retraction(&x, &y, Adjacency::Cu(1), u64::MAX).unwrap().unwrap();
        assert!(is_retraction(&r, &y, Adjacency::Cu(1)).unwrap());
        // the two ends of [0,2] are not a retract: the image would have to be disconnected
        let path = Arc::new(DigitalImage::cube(0, 2, 1).unwrap());
        let ends = Arc::new(DigitalImage::new(1, [p([0]), p([2])]).unwrap());
        assert!(find_retraction(&path, &ends, Adjacency::Cu(1), u64::MAX).unwrap().is_none());
    }
}
