use std::fmt::Write;

use digitop::{Adjacency, DigitalImage, MultiMap, Point};

fn id(p: &Point) -> String {
    format!("\"{p}\"")
}

/// Nodes labelled by coordinates, one undirected edge per adjacent pair, and
/// an arrow from `x` to each value of the overlay at `x`. Planar images get
/// pinned positions.
pub fn export_dot(image: &DigitalImage, adj: Adjacency, overlay: Option<&MultiMap>) -> digitop::Result<String> {
    let graph = image.graph(adj)?;
    let mut out = String::from("graph image {\n  node [shape=circle, fontsize=10];\n");
    let mut extra: Vec<&Point> = Vec::new();
    if let Some(f) = overlay {
        for (_, values) in f.entries() {
            extra.extend(values.into_iter().filter(|y| !image.contains(y)));
        }
        extra.sort();
        extra.dedup();
    }
    for p in image.points().iter().chain(extra.iter().copied()) {
        let pos = match p.coords() {
            [x] => format!(", pos=\"{x},0!\""),
            [x, y] => format!(", pos=\"{x},{y}!\""),
            _ => String::new(),
        };
        let style = if image.contains(p) { "" } else { ", style=dashed" };
        writeln!(out, "  {} [label=\"{p}\"{pos}{style}];", id(p)).unwrap();
    }
    for i in 0..image.len() {
        for &j in graph.neighbors(i).iter().filter(|&&j| j > i) {
            writeln!(out, "  {} -- {};", id(image.point(i)), id(image.point(j))).unwrap();
        }
    }
    if let Some(f) = overlay {
        for (x, values) in f.entries() {
            for y in values {
                writeln!(out, "  {} -- {} [dir=forward, color=blue, constraint=false];", id(x), id(y)).unwrap();
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(text: &str, pat: &str) -> usize {
        text.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn singleton_and_interval() {
        let one = DigitalImage::singleton(Point::from([0]));
        let s = export_dot(&one, Adjacency::Cu(1), None).unwrap();
        assert_eq!((count(&s, "label="), count(&s, " -- ")), (1, 0));
        let two = DigitalImage::boxed(&[(0, 1)]).unwrap();
        let s = export_dot(&two, Adjacency::Cu(1), None).unwrap();
        assert_eq!((count(&s, "label="), count(&s, " -- ")), (2, 1));
    }
}
