//! Plain-text image and map files.
//!
//! ```text
//! # an image
//! dim 2
//! point 0 0
//! point 1 1
//! ```
//!
//! ```text
//! map 2 2
//! 0 0 -> 1 1
//! 1 1 -> 0 0 | 1 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use digitop::{DigitalImage, MultiMap, Point, PointMap};

#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-blank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn coords(line: usize, fields: &str, arity: usize) -> Result<Point, ParseError> {
    let mut out = Vec::with_capacity(arity);
    for tok in fields.split_whitespace() {
        match tok.parse::<i64>() {
            Ok(v) => out.push(v),
            Err(_) => return err(line, format!("not an integer: {tok:?}")),
        }
    }
    if out.len() != arity {
        return err(line, format!("arity mismatch: expected {arity} coordinates, found {}", out.len()));
    }
    Ok(Point::from(out))
}

fn header(line: usize, text: &str, keyword: &str, count: usize) -> Result<Vec<usize>, ParseError> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some(keyword) {
        return err(line, format!("expected `{keyword}` header"));
    }
    let nums: Vec<usize> = toks
        .map(|t| t.parse::<usize>().ok().filter(|&n| n > 0))
        .collect::<Option<_>>()
        .ok_or(ParseError { line, message: format!("bad `{keyword}` header") })?;
    if nums.len() != count {
        return err(line, format!("`{keyword}` header takes {count} positive integer(s)"));
    }
    Ok(nums)
}

pub fn parse_image(text: &str) -> Result<DigitalImage, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return err(1, "empty file: expected `dim` header");
    };
    let dim = header(hl, h, "dim", 1)?[0];
    let mut points = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (n, l) in lines {
        let Some(rest) = l.strip_prefix("point").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)) else {
            return err(n, "expected `point` line");
        };
        let p = coords(n, rest, dim)?;
        if !seen.insert(p.clone()) {
            return err(n, format!("duplicate point {p}"));
        }
        points.push(p);
    }
    if points.is_empty() {
        return err(hl, "image has no points");
    }
    DigitalImage::new(dim, points).map_err(|e| ParseError { line: hl, message: e.to_string() })
}

pub fn write_image(image: &DigitalImage) -> String {
    let mut out = format!("dim {}\n", image.dim());
    for p in image.points() {
        out.push_str("point");
        for c in p.coords() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// A parsed map file before it is tied to domain and codomain images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFile {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    /// Sorted by domain point; value lists sorted and deduplicated.
    pub entries: BTreeMap<Point, Vec<Point>>,
}

pub fn parse_map(text: &str) -> Result<MapFile, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return err(1, "empty file: expected `map` header");
    };
    let dims = header(hl, h, "map", 2)?;
    let (domain_dim, codomain_dim) = (dims[0], dims[1]);
    let mut entries = BTreeMap::new();
    for (n, l) in lines {
        let Some((lhs, rhs)) = l.split_once("->") else {
            return err(n, "expected `<point> -> <point> [| <point> ...]`");
        };
        let x = coords(n, lhs, domain_dim)?;
        let mut values = rhs.split('|').map(|v| coords(n, v, codomain_dim)).collect::<Result<Vec<_>, _>>()?;
        values.sort();
        values.dedup();
        if entries.insert(x.clone(), values).is_some() {
            return err(n, format!("{x} is mapped twice"));
        }
    }
    if entries.is_empty() {
        return err(hl, "map has no entries");
    }
    Ok(MapFile { domain_dim, codomain_dim, entries })
}

fn write_coords(out: &mut String, p: &Point) {
    let parts: Vec<String> = p.coords().iter().map(i64::to_string).collect();
    out.push_str(&parts.join(" "));
}

pub fn write_map(map: &MapFile) -> String {
    let mut out = format!("map {} {}\n", map.domain_dim, map.codomain_dim);
    for (x, values) in &map.entries {
        write_coords(&mut out, x);
        out.push_str(" ->");
        for (i, y) in values.iter().enumerate() {
            out.push_str(if i == 0 { " " } else { " | " });
            write_coords(&mut out, y);
        }
        out.push('\n');
    }
    out
}

impl MapFile {
    pub fn from_point_map(f: &PointMap) -> Self {
        MapFile {
            domain_dim: f.domain().dim(),
            codomain_dim: f.codomain().dim(),
            entries: f.pairs().map(|(x, y)| (x.clone(), vec![y.clone()])).collect(),
        }
    }

    pub fn from_multimap(f: &MultiMap) -> Self {
        MapFile {
            domain_dim: f.domain().dim(),
            codomain_dim: f.codomain().dim(),
            entries: f.entries().map(|(x, ys)| (x.clone(), ys.into_iter().cloned().collect())).collect(),
        }
    }

    pub fn is_single_valued(&self) -> bool {
        self.entries.values().all(|v| v.len() == 1)
    }

    /// Domain points listed on the left.
    pub fn listed_domain(&self) -> DigitalImage {
        DigitalImage::new(self.domain_dim, self.entries.keys().cloned()).expect("nonempty entries")
    }

    /// The listed domain when every value lies in it, otherwise the set of values.
    pub fn default_codomain(&self, domain: &Arc<DigitalImage>) -> Arc<DigitalImage> {
        let values = self.entries.values().flatten();
        if self.domain_dim == self.codomain_dim && values.clone().all(|y| domain.contains(y)) {
            Arc::clone(domain)
        } else {
            let distinct: std::collections::BTreeSet<Point> = values.cloned().collect();
            Arc::new(DigitalImage::new(self.codomain_dim, distinct).expect("nonempty values"))
        }
    }

    pub fn to_multimap(&self, domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>) -> digitop::Result<MultiMap> {
        MultiMap::from_sets(domain, codomain, self.entries.iter().map(|(x, ys)| (x.clone(), ys.clone())))
    }

    pub fn to_point_map(&self, domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>) -> digitop::Result<PointMap> {
        PointMap::from_pairs(domain, codomain, self.entries.iter().map(|(x, ys)| (x.clone(), ys[0].clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interval() {
        assert_eq!(parse_image("dim 1\npoint 0\npoint 1").unwrap(), DigitalImage::boxed(&[(0, 1)]).unwrap());
    }

    #[test]
    fn arity_error_names_the_line() {
        let e = parse_image("dim 2\npoint 0").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("arity mismatch"));
    }

    #[test]
    fn image_errors() {
        assert_eq!(parse_image("# nothing\n").unwrap_err().line, 1);
        assert_eq!(parse_image("dim 1\npoint 0\npoint 0\n").unwrap_err().line, 3);
        assert_eq!(parse_image("dim 1\n\npoint x\n").unwrap_err().line, 3);
        assert_eq!(parse_image("dim 0\n").unwrap_err().line, 1);
        assert_eq!(parse_image("dim 1\npt 0\n").unwrap_err().line, 2);
    }

    #[test]
    fn comments_and_order() {
        let img = parse_image("# square\ndim 2\npoint 1 1 # corner\npoint 0 0\n").unwrap();
        assert_eq!(write_image(&img), "dim 2\npoint 0 0\npoint 1 1\n");
    }

    #[test]
    fn multimap_lines() {
        let m = parse_map("map 1 2\n0 -> 1 1 | 0 0\n1 -> 2 2\n").unwrap();
        assert!(!m.is_single_valued());
        assert_eq!(write_map(&m), "map 1 2\n0 -> 0 0 | 1 1\n1 -> 2 2\n");
        let dom = Arc::new(m.listed_domain());
        assert_eq!(m.default_codomain(&dom).len(), 3);
    }

    #[test]
    fn map_errors() {
        assert_eq!(parse_map("map 1 1\n0 -> 0\n0 -> 1\n").unwrap_err().line, 3);
        assert_eq!(parse_map("map 1 1\n0 0 -> 0\n").unwrap_err().line, 2);
        assert_eq!(parse_map("map 1\n").unwrap_err().line, 1);
        assert_eq!(parse_map("map 1 1\n0 1\n").unwrap_err().line, 2);
    }

    proptest! {
        #[test]
        fn image_text_round_trips(pts in prop::collection::btree_set(prop::collection::vec(-9i64..9, 3), 1..20)) {
            let img = DigitalImage::new(3, pts.into_iter().map(Point::from)).unwrap();
            let text = write_image(&img);
            let back = parse_image(&text).unwrap();
            prop_assert_eq!(&back, &img);
            prop_assert_eq!(write_image(&back), text);
        }

        #[test]
        fn map_text_round_trips(
            entries in prop::collection::btree_map(
                prop::collection::vec(-5i64..5, 2),
                prop::collection::btree_set(prop::collection::vec(-5i64..5, 1), 1..4),
                1..10,
            )
        ) {
            let map = MapFile {
                domain_dim: 2,
                codomain_dim: 1,
                entries: entries
                    .into_iter()
                    .map(|(x, ys)| (Point::from(x), ys.into_iter().map(Point::from).collect()))
                    .collect(),
            };
            let text = write_map(&map);
            let back = parse_map(&text).unwrap();
            prop_assert_eq!(&back, &map);
            prop_assert_eq!(write_map(&back), text);
        }
    }
}
