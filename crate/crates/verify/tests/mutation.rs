use std::sync::Arc;

use digitop::{DigitalImage, Point, PointMap};
use digitop_verify::{run, Hooks};

// clamps every coordinate to the upper bound only
fn broken_clamp(image: &Arc<DigitalImage>, bounds: &[(i64, i64)]) -> digitop::Result<PointMap> {
    let bounds = bounds.to_vec();
    PointMap::from_fn(Arc::clone(image), Arc::clone(image), move |p| {
        Point::from(p.coords().iter().zip(&bounds).map(|(&z, &(_, hi))| z.min(hi)).collect::<Vec<_>>())
    })
}

#[test]
fn corrupted_clamp_trips_its_criterion() {
    let results = run(Some("clamp"), &Hooks { clamp: broken_clamp });
    assert_eq!(results.len(), 1);
    assert!(!results[0].passed);
    assert!(results[0].detail.contains("clamp retraction"), "{}", results[0].detail);
}

#[test]
fn library_clamp_passes() {
    let results = run(Some("clamp"), &Hooks::default());
    assert!(results[0].passed, "{}", results[0].detail);
}

#[test]
fn filter_selects_by_id() {
    let results = run(Some("antipodal"), &Hooks::default());
    assert_eq!(results.iter().map(|r| r.id).collect::<Vec<_>>(), ["c02-antipodal"]);
    assert!(run(Some("no-such-criterion"), &Hooks::default()).is_empty());
}
