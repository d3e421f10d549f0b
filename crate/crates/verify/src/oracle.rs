//! Slow reference implementations. Nothing here calls into the adjacency
//! graphs or the search engine of `digitop`; only the point containers are
//! shared.

use std::collections::{BTreeSet, VecDeque};

use digitop::{Adjacency, DigitalImage, Point};

fn cu(a: &[i64], b: &[i64], u: u32) -> bool {
    let mut differing = 0;
    for (x, y) in a.iter().zip(b) {
        match (x - y).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= u
}

/// Adjacency of two members of `image`, straight from the definition.
pub fn adjacent(image: &DigitalImage, adj: Adjacency, a: &Point, b: &Point) -> bool {
    match adj {
        Adjacency::Cu(u) => cu(a.coords(), b.coords(), u),
        Adjacency::Power { base, k } => {
            if a == b {
                return false;
            }
            let pts = image.points();
            let mut depth: Vec<Option<u32>> = vec![None; pts.len()];
            let mut queue = VecDeque::new();
            let start = pts.iter().position(|p| p == a).expect("point of the image");
            depth[start] = Some(0);
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                let d = depth[i].unwrap();
                if pts[i] == *b {
                    return true;
                }
                if d == k {
                    continue;
                }
                for j in 0..pts.len() {
                    if depth[j].is_none() && cu(pts[i].coords(), pts[j].coords(), base) {
                        depth[j] = Some(d + 1);
                        queue.push_back(j);
                    }
                }
            }
            false
        }
    }
}

pub fn reflexive_adjacent(image: &DigitalImage, adj: Adjacency, a: &Point, b: &Point) -> bool {
    a == b || adjacent(image, adj, a, b)
}

/// Whether `table` (indices into `codomain`) maps adjacent points to
/// equal-or-adjacent points.
pub fn is_continuous(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    table: &[usize],
    kappa: Adjacency,
    lambda: Adjacency,
) -> bool {
    let pts = domain.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if adjacent(domain, kappa, &pts[i], &pts[j])
                && !reflexive_adjacent(codomain, lambda, codomain.point(table[i]), codomain.point(table[j]))
            {
                return false;
            }
        }
    }
    true
}

/// Connectedness of a subset of `image` under `adj` (adjacency measured in `image`).
pub fn subset_connected(image: &DigitalImage, adj: Adjacency, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return true;
    }
    let mut reached = vec![false; subset.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in 0..subset.len() {
            if !reached[b] && adjacent(image, adj, image.point(subset[a]), image.point(subset[b])) {
                reached[b] = true;
                stack.push(b);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Every nonempty connected subset, as sorted index lists.
pub fn connected_subsets(image: &DigitalImage, adj: Adjacency) -> Vec<Vec<usize>> {
    let n = image.len();
    assert!(n < 24, "too many subsets");
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| subset_connected(image, adj, s))
        .collect()
}

/// Continuity as preservation of connectedness: the image of every connected
/// subset is connected.
pub fn preserves_connectedness(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    table: &[usize],
    kappa: Adjacency,
    lambda: Adjacency,
) -> bool {
    connected_subsets(domain, kappa).iter().all(|s| {
        let img: BTreeSet<usize> = s.iter().map(|&i| table[i]).collect();
        subset_connected(codomain, lambda, &img.into_iter().collect::<Vec<_>>())
    })
}

/// All `|Y|^|X|` tables, in lexicographic order.
pub fn all_tables(n_domain: usize, n_codomain: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if n_codomain == 0 && n_domain > 0 { None } else { Some(vec![0; n_domain]) };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < n_codomain {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    })
}

/// Continuous maps found by testing every table.
pub fn continuous_tables(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    kappa: Adjacency,
    lambda: Adjacency,
) -> Vec<Vec<usize>> {
    all_tables(domain.len(), codomain.len()).filter(|t| is_continuous(domain, codomain, t, kappa, lambda)).collect()
}

pub fn component_count(image: &DigitalImage, adj: Adjacency, subset: &[usize]) -> usize {
    let mut seen = vec![false; subset.len()];
    let mut count = 0;
    for s in 0..subset.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for b in 0..subset.len() {
                if !seen[b] && adjacent(image, adj, image.point(subset[a]), image.point(subset[b])) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    count
}

/// Points whose removal increases the number of components.
pub fn cut_points(image: &DigitalImage, adj: Adjacency) -> Vec<Point> {
    let all: Vec<usize> = (0..image.len()).collect();
    let base = component_count(image, adj, &all);
    (0..image.len())
        .filter(|&i| {
            let rest: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
            component_count(image, adj, &rest) > base
        })
        .map(|i| image.point(i).clone())
        .collect()
}

/// The refined lattice `{ r·x + e : x ∈ X, e ∈ [0, r)^n }`, sorted.
pub fn refined_points(image: &DigitalImage, r: i64) -> Vec<Point> {
    let n = image.dim();
    let mut out = BTreeSet::new();
    for x in image.points() {
        for offset in all_tables(n, r as usize) {
            out.insert(Point::from(
                x.coords().iter().zip(&offset).map(|(&c, &e)| r * c + e as i64).collect::<Vec<_>>(),
            ));
        }
    }
    out.into_iter().collect()
}

/// The base point whose block contains `z`.
pub fn collapse(z: &Point, r: i64) -> Point {
    Point::from(z.coords().iter().map(|&c| c.div_euclid(r)).collect::<Vec<_>>())
}

/// Distinct induced multimaps `X ⊸ Y` at level `r`, each as a sorted list of
/// value sets in domain order.
pub fn induced_multimaps(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    kappa: Adjacency,
    lambda: Adjacency,
    r: i64,
) -> BTreeSet<Vec<BTreeSet<Point>>> {
    let lattice = DigitalImage::new(domain.dim(), refined_points(domain, r)).expect("lattice is a valid image");
    let mut out = BTreeSet::new();
    for table in continuous_tables(&lattice, codomain, kappa, lambda) {
        let mut values: Vec<BTreeSet<Point>> = vec![BTreeSet::new(); domain.len()];
        for (z, &y) in lattice.points().iter().zip(&table) {
            let x = domain.index_of(&collapse(z, r)).expect("block of a domain point");
            values[x].insert(codomain.point(y).clone());
        }
        out.insert(values);
    }
    out
}

/// Indices `x` with `x` equal or `mu`-adjacent to some value in `values[x]`.
pub fn approximate_fixed_points(image: &DigitalImage, values: &[Vec<usize>], mu: Adjacency) -> Vec<usize> {
    (0..image.len())
        .filter(|&i| values[i].iter().any(|&y| reflexive_adjacent(image, mu, image.point(i), image.point(y))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: i64) -> DigitalImage {
        DigitalImage::boxed(&[(0, n - 1)]).unwrap()
    }

    #[test]
    fn table_odometer() {
        assert_eq!(all_tables(2, 2).collect::<Vec<_>>(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(all_tables(0, 3).count(), 1);
        assert_eq!(all_tables(3, 3).count(), 27);
    }

    #[test]
    fn path_self_maps() {
        let c1 = Adjacency::Cu(1);
        assert_eq!(continuous_tables(&path(2), &path(2), c1, c1).len(), 4);
        assert_eq!(continuous_tables(&path(3), &path(3), c1, c1).len(), 17);
    }

    #[test]
    fn power_reach() {
        let x = path(4);
        let p = |c: i64| Point::from([c]);
        assert!(adjacent(&x, Adjacency::power(1, 2), &p(0), &p(2)));
        assert!(!adjacent(&x, Adjacency::power(1, 2), &p(0), &p(3)));
        assert!(!adjacent(&x, Adjacency::power(1, 2), &p(1), &p(1)));
    }

    #[test]
    fn refined_square() {
        let x = DigitalImage::cube(0, 1, 2).unwrap();
        assert_eq!(refined_points(&x, 2).len(), 16);
        assert_eq!(collapse(&Point::from([-1, 3]), 2), Point::from([-1, 1]));
    }
}
