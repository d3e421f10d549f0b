//! The acceptance criteria. Each check returns `Ok(detail)` on success and
//! `Err(detail)` naming what went wrong.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use digitop::afpp::{
    approx_fixed_points, decide_afpp_m, decide_afpp_s, universality_check, Certificate, Counterexample, DecideOptions,
    Meeting, Opponents, Verdict,
};
use digitop::grid::{self, articulation_points};
use digitop::maps::{self, enumerate_continuous_maps, find_isomorphism, make_standard_map, StandardMap};
use digitop::subdivision::{e_r, enumerate_continuous_multimaps, find_inducer, subdivide};
use digitop::{Adjacency, DigitalImage, MultiMap, Point, PointMap, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle;

type Check = std::result::Result<String, String>;

/// Builds the coordinatewise clamp of an image onto a box.
pub type ClampFn = fn(&Arc<DigitalImage>, &[(i64, i64)]) -> digitop::Result<PointMap>;

/// Substitutable pieces, so that a deliberately broken formula can be shown
/// to trip its criterion.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub clamp: ClampFn,
}

fn library_clamp(image: &Arc<DigitalImage>, bounds: &[(i64, i64)]) -> digitop::Result<PointMap> {
    make_standard_map(&StandardMap::Clamp { image: Arc::clone(image), bounds: bounds.to_vec() })
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks { clamp: library_clamp }
    }
}

pub struct Criterion {
    pub id: &'static str,
    pub claim: &'static str,
    pub limit: Duration,
    check: fn(&Hooks) -> Check,
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: "c01-shift-fold-continuity",
            claim: "the shift-fold map of [-1,1]^2 is c1-continuous, not c2-continuous, witness (-1,1) (0,0)",
            limit: secs(1),
            check: shift_fold,
        },
        Criterion {
            id: "c02-antipodal",
            claim: "the antipodal map of [0,1]^v is c_u-continuous; its c_u-approximate fixed points are none for u < v, all for u = v",
            limit: secs(1),
            check: antipodal,
        },
        Criterion {
            id: "c03-single-valued-table",
            claim: "single-valued property on small boxes matches the known table",
            limit: secs(60),
            check: single_valued_table,
        },
        Criterion {
            id: "c04-square-full-enumeration",
            claim: "[0,2]^2 has the (c1,c1,c2) single-valued property by full enumeration",
            limit: secs(120),
            check: square_full_enumeration,
        },
        Criterion {
            id: "c05-center-eccentricity",
            claim: "[0,n]^v has a center of c_v-eccentricity at most ceil(n/2), certifying the multivalued property for the path power",
            limit: secs(1),
            check: center_eccentricity,
        },
        Criterion {
            id: "c06-subdivision",
            claim: "subdivision sizes and fibers; S(diagonal pair, 2) has exactly one articulation point under c2, S(horizontal pair, 2) none",
            limit: secs(5),
            check: subdivision,
        },
        Criterion {
            id: "c07-multivalued-bounded",
            claim: "bounded multivalued results: interval certificate, [0,1]^2 c1 fails at r = 1, complete-graph certificates",
            limit: secs(120),
            check: multivalued_bounded,
        },
        Criterion {
            id: "c08-universality",
            claim: "identity on a singleton is weakly but not strictly universal; the constant full multimap on [0,1]^2 is weakly universal",
            limit: secs(30),
            check: universality,
        },
        Criterion {
            id: "c09-equivalences-clamp-retraction",
            claim: "single-valued property agrees with weak universality of the identity; multivalued certificate implies single-valued; isomorphism invariance; clamp retraction transfers failure",
            limit: secs(120),
            check: equivalences,
        },
        Criterion {
            id: "c10-oracle-equivalences",
            claim: "continuity, map enumeration and induced multimap counts agree with brute force",
            limit: secs(120),
            check: oracle_equivalences,
        },
    ]
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{:.2}s/{}s] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

/// Runs the criteria whose id contains `filter` (all when `None`).
pub fn run(filter: Option<&str>, hooks: &Hooks) -> Vec<CriterionResult> {
    criteria()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.id.contains(f)))
        .map(|c| {
            let start = Instant::now();
            let outcome = (c.check)(hooks);
            let elapsed = start.elapsed();
            let (mut passed, mut detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            if passed && elapsed > c.limit {
                passed = false;
                detail = format!("over time limit; {detail}");
            }
            CriterionResult { id: c.id, claim: c.claim, passed, elapsed, limit: c.limit, detail }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: digitop::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

fn p<const N: usize>(c: [i64; N]) -> Point {
    Point::from(c)
}

fn cube(lo: i64, hi: i64, dim: usize) -> Arc<DigitalImage> {
    Arc::new(DigitalImage::cube(lo, hi, dim).expect("nonempty cube"))
}

fn c(u: u32) -> Adjacency {
    Adjacency::Cu(u)
}

fn shift_fold(_: &Hooks) -> Check {
    let f = lib(make_standard_map(&StandardMap::ShiftFold))?;
    let x = f.domain();
    // the defining formula, evaluated independently
    for pt in x.points() {
        let (a, b) = (pt.coord(0), pt.coord(1));
        let want = if b == 1 { p([a, 0]) } else { p([(a + 1).min(1), b]) };
        ensure(lib(f.apply(pt))? == &want, || format!("f{pt} is not {want}"))?;
    }
    let c1 = lib(maps::is_continuous(&f, c(1), c(1)))?;
    let c2 = lib(maps::is_continuous(&f, c(2), c(2)))?;
    ensure(c1.continuous && c1.witness.is_none(), || "not c1-continuous".into())?;
    ensure(!c2.continuous, || "c2-continuous".into())?;
    let w = c2.witness.clone().ok_or("no witness")?;
    ensure(w == (p([-1, 1]), p([0, 0])), || format!("witness {} {}", w.0, w.1))?;
    ensure(oracle::is_continuous(x, x, f.table(), c(1), c(1)), || "oracle: not c1-continuous".into())?;
    ensure(!oracle::is_continuous(x, x, f.table(), c(2), c(2)), || "oracle: c2-continuous".into())?;
    Ok(format!("c1 continuous; c2 witness {} {}", w.0, w.1))
}

fn antipodal(_: &Hooks) -> Check {
    for v in 2..=3usize {
        let f = lib(make_standard_map(&StandardMap::Antipodal(v)))?;
        let x = f.domain();
        for u in 1..=v as u32 {
            ensure(lib(maps::is_continuous(&f, c(u), c(u)))?.continuous, || format!("v={v}: not c{u}-continuous"))?;
            ensure(oracle::is_continuous(x, x, f.table(), c(u), c(u)), || format!("oracle v={v} u={u}"))?;
            let afp = lib(approx_fixed_points(&f, c(u)))?;
            let values: Vec<Vec<usize>> = f.table().iter().map(|&y| vec![y]).collect();
            let expected = if (u as usize) < v { 0 } else { x.len() };
            ensure(afp.len() == expected, || format!("v={v} u={u}: {} approximate fixed points", afp.len()))?;
            ensure(oracle::approximate_fixed_points(x, &values, c(u)).len() == expected, || {
                format!("oracle v={v} u={u}")
            })?;
        }
    }
    Ok("v in {2,3}, every u <= v".into())
}

/// Independent confirmation that a single-valued counterexample is one.
fn confirm_single(v: &Verdict, kappa: Adjacency, lambda: Adjacency, mu: Adjacency) -> std::result::Result<(), String> {
    let Some(Counterexample::Single(f)) = &v.counterexample else {
        return Err("FAILS without a single-valued counterexample".into());
    };
    let x = f.domain();
    let values: Vec<Vec<usize>> = f.table().iter().map(|&y| vec![y]).collect();
    ensure(oracle::is_continuous(x, x, f.table(), kappa, lambda), || "counterexample is not continuous".into())?;
    ensure(oracle::approximate_fixed_points(x, &values, mu).is_empty(), || {
        "counterexample has an approximate fixed point".into()
    })
}

fn single_valued_table(_: &Hooks) -> Check {
    let opts = DecideOptions::default();
    let cases = [
        ("[0,1]^2 c1", cube(0, 1, 2), 1, Status::Fails),
        ("[0,1]^2 c2", cube(0, 1, 2), 2, Status::Holds),
        ("[-1,1]^2 c2", cube(-1, 1, 2), 2, Status::Holds),
        ("[-1,1]^2 c1", cube(-1, 1, 2), 1, Status::Fails),
        ("[0,5] c1", cube(0, 5, 1), 1, Status::Holds),
    ];
    let mut out = Vec::new();
    for (name, x, u, want) in cases {
        let v = lib(decide_afpp_s(&x, c(u), c(u), c(u), &opts))?;
        ensure(v.status == want, || format!("{name}: {} expected {want}", v.status))?;
        if want == Status::Fails {
            confirm_single(&v, c(u), c(u), c(u)).map_err(|e| format!("{name}: {e}"))?;
        }
        out.push(format!("{name} {}", v.status));
    }
    let v = lib(decide_afpp_s(&cube(-1, 1, 2), c(2), c(2), c(2), &opts))?;
    ensure(v.certificate == Some(Certificate::DominatingPoint(p([0, 0]))), || {
        format!("[-1,1]^2 c2 certificate {:?}", v.certificate)
    })?;
    Ok(out.join("; "))
}

fn square_full_enumeration(_: &Hooks) -> Check {
    let x = cube(0, 2, 2);
    let full = DecideOptions::default().without_certificates().exhaustive();
    let v = lib(decide_afpp_s(&x, c(1), c(1), c(2), &full))?;
    ensure(v.status == Status::Holds && v.certificate == Some(Certificate::ExhaustiveSearch), || {
        format!("exhaustive: {} {:?}", v.status, v.certificate)
    })?;
    let pruned = lib(decide_afpp_s(&x, c(1), c(1), c(2), &DecideOptions::default().without_certificates()))?;
    ensure(pruned.status == Status::Holds, || format!("pruned: {}", pruned.status))?;
    let maps = lib(enumerate_continuous_maps(&x, &x, c(1), c(1), u64::MAX))?.count();
    Ok(format!("HOLDS over {maps} continuous maps"))
}

fn center_eccentricity(_: &Hooks) -> Check {
    let certificate_only =
        DecideOptions { search: digitop::SearchConfig::with_budget(0), ..DecideOptions::default() }.with_r_max(1);
    let mut out = Vec::new();
    for (n, v) in [(2i64, 1usize), (2, 2), (3, 2), (4, 2), (2, 3)] {
        let x = cube(0, n, v);
        let cv = c(v as u32);
        let bound = ((n + 1) / 2) as usize;
        let (lo, hi) = (n / 2, (n + 1) / 2);
        let mut best = None;
        for q in x.points().iter().filter(|q| q.coords().iter().all(|&z| z == lo || z == hi)) {
            if let Some(e) = lib(grid::eccentricity(&x, cv, q))? {
                if e <= bound {
                    best = Some((q.clone(), e));
                    break;
                }
            }
        }
        let (center, e) = best.ok_or_else(|| format!("n={n} v={v}: no center within {bound}"))?;
        let power = Adjacency::power(v as u32, bound as u32);
        ensure(x.points().iter().all(|y| oracle::reflexive_adjacent(&x, power, &center, y)), || {
            format!("oracle: {center} does not reach all of [0,{n}]^{v}")
        })?;
        let m = lib(decide_afpp_m(&x, cv, cv, power, &certificate_only))?;
        ensure(m.status == Status::Holds && m.certificate.is_some(), || {
            format!("n={n} v={v}: multivalued {}", m.status)
        })?;
        out.push(format!("({n},{v}) {center} ecc {e}"));
    }
    Ok(out.join("; "))
}

fn random_image(rng: &mut ChaCha8Rng, max_points: usize, dim: usize, span: i64) -> DigitalImage {
    let room = (2 * span as usize + 1).pow(dim as u32);
    let target = rng.random_range(1..=max_points.min(room));
    let mut pts = std::collections::BTreeSet::new();
    while pts.len() < target {
        pts.insert(Point::from((0..dim).map(|_| rng.random_range(-span..=span)).collect::<Vec<_>>()));
    }
    DigitalImage::new(dim, pts).expect("nonempty image")
}

fn subdivision(_: &Hooks) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for trial in 0..20 {
        let dim = rng.random_range(1..=3usize);
        let r = rng.random_range(1..=3i64);
        let x = Arc::new(random_image(&mut rng, 8, dim, 3));
        let s = lib(subdivide(&x, r))?;
        let block = (r as usize).pow(dim as u32);
        ensure(s.len() == block * x.len(), || format!("trial {trial}: |S| = {}", s.len()))?;
        ensure(s.lattice().points() == oracle::refined_points(&x, r).as_slice(), || {
            format!("trial {trial}: lattice differs from brute force")
        })?;
        for i in 0..x.len() {
            ensure(s.block(i).len() == block, || format!("trial {trial}: fiber size {}", s.block(i).len()))?;
            for &k in s.block(i) {
                let z = s.lattice().point(k);
                ensure(lib(e_r(&s, z))? == *x.point(i) && oracle::collapse(z, r) == *x.point(i), || {
                    format!("trial {trial}: {z} collapses wrongly")
                })?;
            }
        }
    }

    let diag = Arc::new(DigitalImage::new(2, [p([0, 0]), p([1, 1])]).unwrap());
    let horiz = Arc::new(DigitalImage::new(2, [p([0, 0]), p([1, 0])]).unwrap());
    let sd = lib(subdivide(&diag, 2))?;
    let sh = lib(subdivide(&horiz, 2))?;
    let cut_d = lib(articulation_points(sd.lattice(), c(2)))?;
    let cut_h = lib(articulation_points(sh.lattice(), c(2)))?;
    ensure(cut_d == oracle::cut_points(sd.lattice(), c(2)), || "diagonal: articulation oracle disagrees".into())?;
    ensure(cut_h == oracle::cut_points(sh.lattice(), c(2)), || "horizontal: articulation oracle disagrees".into())?;
    let show = |v: &[Point]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ");
    ensure(cut_h.is_empty(), || format!("S(horizontal pair, 2) has articulation points {}", show(&cut_h)))?;
    ensure(cut_d.len() == 1, || {
        format!(
            "20 random images ok; S(diagonal pair, 2) has {} articulation points [{}], expected exactly one \
             (it is disconnected by removing a single point, S(horizontal pair, 2) is not)",
            cut_d.len(),
            show(&cut_d)
        )
    })?;
    Ok(format!("20 random images; diagonal cut point {}; horizontal none", show(&cut_d)))
}

fn multivalued_bounded(_: &Hooks) -> Check {
    let base = DecideOptions::default();
    let interval = cube(0, 2, 1);
    let swept = lib(decide_afpp_m(&interval, c(1), c(1), c(1), &base.without_certificates().with_r_max(3)))?;
    ensure(swept.status == Status::Unknown && swept.levels_searched == 3, || {
        format!("[0,2] sweep: {} after {} levels", swept.status, swept.levels_searched)
    })?;
    let cert = lib(decide_afpp_m(&interval, c(1), c(1), c(1), &base.with_r_max(3)))?;
    ensure(cert.certificate == Some(Certificate::IntervalC1 { lo: 0, hi: 2 }), || {
        format!("[0,2] certificate {:?}", cert.certificate)
    })?;

    let square = cube(0, 1, 2);
    let v = lib(decide_afpp_m(&square, c(1), c(1), c(1), &base.without_certificates().with_r_max(1)))?;
    ensure(v.status == Status::Fails, || format!("[0,1]^2 c1: {}", v.status))?;
    match &v.counterexample {
        Some(Counterexample::Multi { r: 1, inducer, multimap }) => {
            let lattice = inducer.domain();
            ensure(oracle::is_continuous(lattice, &square, inducer.table(), c(1), c(1)), || {
                "inducer not continuous".into()
            })?;
            ensure(oracle::approximate_fixed_points(&square, multimap.table(), c(1)).is_empty(), || {
                "multivalued counterexample has an approximate fixed point".into()
            })?;
        }
        other => return Err(format!("[0,1]^2 c1: counterexample {other:?}")),
    }

    for dim in 1..=3usize {
        let x = cube(0, 1, dim);
        let cv = c(dim as u32);
        let m = lib(decide_afpp_m(&x, cv, cv, cv, &base))?;
        ensure(m.status == Status::Holds && m.certificate == Some(Certificate::CompleteGraph), || {
            format!("[0,1]^{dim}: {} {:?}", m.status, m.certificate)
        })?;
    }
    Ok("[0,2] no counterexample to r=3, interval-c1 HOLDS; [0,1]^2 c1 FAILS at r=1; complete-graph for v<=3".into())
}

fn universality(_: &Hooks) -> Check {
    let opts = DecideOptions::default();
    let one = Arc::new(DigitalImage::singleton(p([0])));
    let id = MultiMap::identity(Arc::clone(&one));
    for opponents in [Opponents::Single, Opponents::Multi] {
        let strict = lib(universality_check(&id, c(1), c(1), Meeting::Strict, opponents, &opts))?;
        let weak = lib(universality_check(&id, c(1), c(1), Meeting::Weak, opponents, &opts))?;
        ensure(strict.status == Status::Fails && weak.status == Status::Holds, || {
            format!("singleton {opponents:?}: strict {} weak {}", strict.status, weak.status)
        })?;
    }

    let square = cube(0, 1, 2);
    let full = MultiMap::constant_full(Arc::clone(&square), Arc::clone(&square));
    let found = lib(find_inducer(&full, c(1), c(1), opts.r_max, &opts.search))?;
    let inducer = found.inducer.ok_or("constant full multimap: no inducer found")?;
    let lattice = inducer.map.domain();
    ensure(oracle::is_continuous(lattice, &square, inducer.map.table(), c(1), c(1)), || {
        "inducer not continuous".into()
    })?;
    let r = inducer.r();
    let full = lib(full.with_inducer(inducer))?;
    let weak = lib(universality_check(&full, c(1), c(1), Meeting::Weak, Opponents::Single, &opts))?;
    ensure(weak.status == Status::Holds, || format!("constant full: {}", weak.status))?;
    Ok(format!("singleton strict FAILS, weak HOLDS; constant full inducer at r={r}, weakly universal"))
}

fn equivalences(hooks: &Hooks) -> Check {
    let opts = DecideOptions::default();
    let suite = [
        ("singleton", Arc::new(DigitalImage::singleton(p([0])))),
        ("[0,1]", cube(0, 1, 1)),
        ("[0,2]", cube(0, 2, 1)),
        ("[0,1]^2", cube(0, 1, 2)),
        ("[-1,1]^2", cube(-1, 1, 2)),
    ];
    let mut checked = 0;
    for (name, x) in &suite {
        for u in 1..=x.dim() as u32 {
            let s = lib(decide_afpp_s(x, c(u), c(u), c(u), &opts))?;
            let id = MultiMap::identity(Arc::clone(x));
            let uni = lib(universality_check(&id, c(u), c(u), Meeting::Weak, Opponents::Single, &opts))?;
            ensure(s.status == uni.status, || {
                format!("{name} c{u}: property {} vs universality {}", s.status, uni.status)
            })?;
            let m = lib(decide_afpp_m(x, c(u), c(u), c(u), &opts.with_r_max(1)))?;
            if m.status == Status::Holds {
                ensure(s.status == Status::Holds, || {
                    format!("{name} c{u}: multivalued HOLDS but single {}", s.status)
                })?;
            }
            checked += 1;
        }
    }

    let diag = Arc::new(DigitalImage::new(2, [p([0, 0]), p([1, 1])]).unwrap());
    let horiz = Arc::new(DigitalImage::new(2, [p([0, 0]), p([1, 0])]).unwrap());
    let iso = lib(find_isomorphism(&diag, c(2), &horiz, c(2), opts.search.budget))?;
    ensure(iso.is_some(), || "diagonal and horizontal pairs not c2-isomorphic".into())?;
    let sd = lib(decide_afpp_s(&diag, c(2), c(2), c(2), &opts))?;
    let sh = lib(decide_afpp_s(&horiz, c(2), c(2), c(2), &opts))?;
    ensure(sd.status == sh.status, || format!("isomorphic pair: {} vs {}", sd.status, sh.status))?;

    clamp_retraction(hooks)?;
    Ok(format!("{checked} image/adjacency pairs; isomorphic pair {}; clamp retraction transfers FAILS", sd.status))
}

fn clamp_retraction(hooks: &Hooks) -> std::result::Result<(), String> {
    let opts = DecideOptions::default();
    let x = cube(-1, 1, 2);
    let y = cube(0, 1, 2);
    let bounds = [(0, 1), (0, 1)];
    let r = (hooks.clamp)(&x, &bounds).map_err(|e| format!("clamp retraction: {e}"))?;
    let into_y = r.with_codomain(Arc::clone(&y)).map_err(|e| format!("clamp retraction: {e}"))?;
    let retracts = lib(maps::is_retraction(&r, &y, c(1)))?;
    let fixes = y.points().iter().all(|q| into_y.apply(q).is_ok_and(|v| v == q));
    ensure(retracts && fixes && oracle::is_continuous(&x, &y, into_y.table(), c(1), c(1)), || {
        "clamp retraction: clamp is not a c1-retraction of [-1,1]^2 onto [0,1]^2".into()
    })?;

    let sy = lib(decide_afpp_s(&y, c(1), c(1), c(1), &opts))?;
    let sx = lib(decide_afpp_s(&x, c(1), c(1), c(1), &opts))?;
    ensure(sy.status == Status::Fails && sx.status == Status::Fails, || {
        format!("clamp retraction: retract {} ambient {}", sy.status, sx.status)
    })?;
    // pull the retract's counterexample back along the clamp
    let Some(Counterexample::Single(g)) = &sy.counterexample else {
        return Err("clamp retraction: no counterexample on the retract".into());
    };
    let lifted: Vec<usize> =
        into_y.table().iter().map(|&j| x.index_of(g.codomain().point(g.table()[j])).expect("Y inside X")).collect();
    let values: Vec<Vec<usize>> = lifted.iter().map(|&j| vec![j]).collect();
    ensure(oracle::is_continuous(&x, &x, &lifted, c(1), c(1)), || "clamp retraction: lifted map discontinuous".into())?;
    ensure(oracle::approximate_fixed_points(&x, &values, c(1)).is_empty(), || {
        "clamp retraction: lifted map has an approximate fixed point".into()
    })
}

fn oracle_equivalences(_: &Hooks) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut tables = 0;
    for trial in 0..40 {
        let dim = rng.random_range(1..=2usize);
        let x = Arc::new(random_image(&mut rng, 12, dim, 2));
        let kappa = c(rng.random_range(1..=dim as u32));
        let lambda = c(rng.random_range(1..=dim as u32));
        let mut candidates: Vec<Vec<usize>> =
            (0..4).map(|_| (0..x.len()).map(|_| rng.random_range(0..x.len())).collect()).collect();
        for f in lib(enumerate_continuous_maps(&x, &x, kappa, lambda, 1_000_000))?.take(200).step_by(50) {
            candidates.push(lib(f)?.table().to_vec());
        }
        for t in candidates {
            let f = lib(PointMap::from_indices(Arc::clone(&x), Arc::clone(&x), t.clone()))?;
            let fast = lib(maps::is_continuous(&f, kappa, lambda))?.continuous;
            let slow = oracle::preserves_connectedness(&x, &x, &t, kappa, lambda);
            ensure(fast == slow, || format!("trial {trial}: continuity {fast} vs connected-set {slow} for {t:?}"))?;
            tables += 1;
        }
    }

    let c1 = c(1);
    for (len, want) in [(2i64, 4usize), (3, 17)] {
        let path = cube(0, len - 1, 1);
        let got = lib(enumerate_continuous_maps(&path, &path, c1, c1, u64::MAX))?.count();
        let brute = oracle::continuous_tables(&path, &path, c1, c1).len();
        ensure(got == want && brute == want, || format!("path of {len}: {got} maps, brute force {brute}"))?;
    }
    for trial in 0..16 {
        let dim = rng.random_range(1..=2usize);
        let x = Arc::new(random_image(&mut rng, 8, dim, 2));
        let cap = (5.0e5f64).powf(1.0 / x.len() as f64) as usize;
        let y = Arc::new(random_image(&mut rng, cap.clamp(1, 8), dim, 1));
        let kappa = c(rng.random_range(1..=dim as u32));
        let lambda = c(rng.random_range(1..=dim as u32));
        let got: Vec<Vec<usize>> = lib(enumerate_continuous_maps(&x, &y, kappa, lambda, u64::MAX))?
            .map(|f| f.map(|f| f.table().to_vec()))
            .collect::<digitop::Result<_>>()
            .map_err(|e| e.to_string())?;
        let brute = oracle::continuous_tables(&x, &y, kappa, lambda);
        ensure(got == brute, || format!("trial {trial}: {} maps vs brute force {}", got.len(), brute.len()))?;
    }

    let pairs = [[p([0, 0]), p([1, 1])], [p([0, 0]), p([1, 0])], [p([0, 0]), p([2, 0])], [p([0, 0]), p([0, -1])]];
    let mut counts = Vec::new();
    for pts in pairs {
        let x = Arc::new(DigitalImage::new(2, pts).unwrap());
        for u in 1..=2 {
            let got = lib(enumerate_continuous_multimaps(&x, &x, c(u), c(u), 2, u64::MAX))?
                .collect::<digitop::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            let brute = oracle::induced_multimaps(&x, &x, c(u), c(u), 2);
            let ours: std::collections::BTreeSet<_> = got
                .iter()
                .map(|m| m.table().iter().map(|vals| vals.iter().map(|&j| x.point(j).clone()).collect()).collect())
                .collect();
            ensure(ours.len() == got.len() && ours == brute, || {
                format!("{} c{u}: {} induced multimaps vs brute force {}", x.points()[1], got.len(), brute.len())
            })?;
            counts.push(got.len().to_string());
        }
    }
    Ok(format!("{tables} continuity checks; enumeration matches brute force; multimap counts {}", counts.join(",")))
}
