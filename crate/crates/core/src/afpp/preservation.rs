//! Cross-checks of the laws relating the fixed point properties across a
//! suite of small images: invariance under isomorphism, inheritance by
//! (multivalued) retracts, multivalued ⇒ single-valued, and the agreement of
//! each property with weak universality of the identity.

use std::fmt;
use std::sync::Arc;

use super::{decide_afpp_m, decide_afpp_s, universality_check, DecideOptions, Meeting, Opponents, Verdict};
use crate::error::Result;
use crate::grid::{Adjacency, DigitalImage};
use crate::maps::{self, find_isomorphism, find_retraction};
use crate::subdivision::{is_multivalued_retraction, MultiMap};
use crate::Status;

#[derive(Clone, Debug)]
pub struct SuiteEntry {
    pub name: String,
    pub image: Arc<DigitalImage>,
    pub adjacencies: Vec<Adjacency>,
}

impl SuiteEntry {
    /// Entry under every `c_u` valid for the image.
    pub fn all_cu(name: impl Into<String>, image: DigitalImage) -> Self {
        let adjacencies = (1..=image.dim() as u32).map(Adjacency::Cu).collect();
        SuiteEntry { name: name.into(), image: Arc::new(image), adjacencies }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// Isomorphic images share the single-valued property.
    Isomorphism,
    /// A retract of an image with the single-valued property has it too.
    Retract,
    /// Same for the multivalued property and multivalued retracts under `c_v`.
    MultivaluedRetract,
    /// The multivalued property implies the single-valued one.
    MultiImpliesSingle,
    /// The multivalued property agrees with weak universality of the identity
    /// against multivalued opponents.
    IdentityWeakUniversalMulti,
    /// The single-valued property agrees with weak universality of the
    /// identity against single-valued opponents.
    IdentityWeakUniversalSingle,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Isomorphism => "isomorphism-invariance",
            Law::Retract => "retract-inheritance",
            Law::MultivaluedRetract => "multivalued-retract-inheritance",
            Law::MultiImpliesSingle => "multi-implies-single",
            Law::IdentityWeakUniversalMulti => "identity-weak-universal-multi",
            Law::IdentityWeakUniversalSingle => "identity-weak-universal-single",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    /// The hypothesis did not apply (or a needed answer was `Unknown`).
    Vacuous,
    Violated,
}

#[derive(Clone, Debug)]
pub struct LawCheck {
    pub law: Law,
    pub instance: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default)]
pub struct PreservationReport {
    pub checks: Vec<LawCheck>,
}

impl PreservationReport {
    pub fn violations(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Violated)
    }

    pub fn all_passed(&self) -> bool {
        self.violations().next().is_none()
    }

    fn push(&mut self, law: Law, instance: String, outcome: Outcome) {
        self.checks.push(LawCheck { law, instance, outcome });
    }
}

fn implication(premise: bool, conclusion: bool) -> Outcome {
    match (premise, conclusion) {
        (false, _) => Outcome::Vacuous,
        (true, true) => Outcome::Passed,
        (true, false) => Outcome::Violated,
    }
}

fn agreement(a: Status, b: Status) -> Outcome {
    if a == Status::Unknown || b == Status::Unknown {
        Outcome::Vacuous
    } else if a == b {
        Outcome::Passed
    } else {
        Outcome::Violated
    }
}

struct Decided {
    label: String,
    image: Arc<DigitalImage>,
    adj: Adjacency,
    single: Verdict,
    multi: Verdict,
}

pub fn preservation_checks(suite: &[SuiteEntry], opts: &DecideOptions) -> Result<PreservationReport> {
    let mut report = PreservationReport::default();
    let mut decided = Vec::new();
    for entry in suite {
        for &adj in &entry.adjacencies {
            let label = format!("{} {adj}", entry.name);
            let single = decide_afpp_s(&entry.image, adj, adj, adj, opts)?;
            let multi = decide_afpp_m(&entry.image, adj, adj, adj, opts)?;
            let identity = MultiMap::identity(Arc::clone(&entry.image));
            let uni_single = universality_check(&identity, adj, adj, Meeting::Weak, Opponents::Single, opts)?;
            let uni_multi = universality_check(&identity, adj, adj, Meeting::Weak, Opponents::Multi, opts)?;

            report.push(
                Law::MultiImpliesSingle,
                label.clone(),
                implication(multi.status == Status::Holds, single.status == Status::Holds),
            );
            report.push(Law::IdentityWeakUniversalMulti, label.clone(), agreement(multi.status, uni_multi.status));
            report.push(Law::IdentityWeakUniversalSingle, label.clone(), agreement(single.status, uni_single.status));
            decided.push(Decided { label, image: Arc::clone(&entry.image), adj, single, multi });
        }
    }

    for (a, x) in decided.iter().enumerate() {
        for y in &decided[a + 1..] {
            if x.image.dim() == y.image.dim() || x.image.len() == y.image.len() {
                if let Some(_iso) = find_isomorphism(&x.image, x.adj, &y.image, y.adj, opts.search.budget)? {
                    report.push(
                        Law::Isomorphism,
                        format!("{} ≅ {}", x.label, y.label),
                        agreement(x.single.status, y.single.status),
                    );
                }
            }
        }
    }

    for x in &decided {
        for y in &decided {
            let proper_subset = y.adj == x.adj && y.image.len() < x.image.len() && y.image.is_subset_of(&x.image);
            if !proper_subset {
                continue;
            }
            let Some(r) = find_retraction(&x.image, &y.image, x.adj, opts.search.budget)? else {
                continue;
            };
            let instance = format!("{} retracts onto {}", x.label, y.label);
            report.push(
                Law::Retract,
                instance.clone(),
                implication(x.single.status == Status::Holds, y.single.status == Status::Holds),
            );

            if x.adj != Adjacency::Cu(x.image.dim() as u32) {
                continue;
            }
            let as_multi = MultiMap::from_point_map(&r.with_codomain(Arc::clone(&x.image))?);
            let is_retract = is_multivalued_retraction(&as_multi, &y.image, x.adj, opts.r_max, &opts.search)?;
            let outcome = if is_retract != Status::Holds
                || x.multi.status == Status::Unknown
                || y.multi.status == Status::Unknown
            {
                Outcome::Vacuous
            } else {
                implication(x.multi.status == Status::Holds, y.multi.status == Status::Holds)
            };
            report.push(Law::MultivaluedRetract, instance, outcome);
            debug_assert!(maps::is_retraction(&r, &y.image, x.adj)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Point;

    #[test]
    fn small_suite_has_no_violations() {
        let suite = vec![
            SuiteEntry::all_cu("[0,1]^2", DigitalImage::cube(0, 1, 2).unwrap()),
            SuiteEntry::all_cu("[-1,1]^2", DigitalImage::cube(-1, 1, 2).unwrap()),
        ];
        let report = preservation_checks(&suite, &DecideOptions::default()).unwrap();
        assert!(report.all_passed(), "{:?}", report.violations().collect::<Vec<_>>());
        assert!(report.checks.iter().any(|c| c.law == Law::Retract && c.outcome == Outcome::Vacuous));
    }

    #[test]
    fn isomorphic_pairs_are_compared() {
        let diag = DigitalImage::new(2, [Point::from([0, 0]), Point::from([1, 1])]).unwrap();
        let horiz = DigitalImage::new(2, [Point::from([0, 0]), Point::from([1, 0])]).unwrap();
        let suite = vec![
            SuiteEntry { name: "diagonal".into(), image: Arc::new(diag), adjacencies: vec![Adjacency::Cu(2)] },
            SuiteEntry { name: "horizontal".into(), image: Arc::new(horiz), adjacencies: vec![Adjacency::Cu(2)] },
        ];
        let report = preservation_checks(&suite, &DecideOptions::default()).unwrap();
        let iso: Vec<_> = report.checks.iter().filter(|c| c.law == Law::Isomorphism).collect();
        assert_eq!(iso.len(), 1);
        assert_eq!(iso[0].outcome, Outcome::Passed);
    }
}
