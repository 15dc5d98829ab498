use gbsiso::combinatorics::Orbit;
use gbsiso::invariants::{
    compare_certificates, compare_orbit, orbit_certificate, Certificate, ComparisonReport, Criterion, OrbitCertificate,
    SkippedOrbit, Verdict,
};
use gbsiso::{Error, GbsEncoding};
use serde::Serialize;

use crate::cache::Cache;
use crate::CliError;

pub enum OrbitOutcome {
    Done(OrbitCertificate),
    Skipped(SkippedOrbit),
}

pub fn certify_orbit(e: &GbsEncoding, o: &Orbit, budget: u64, cache: &Cache) -> Result<OrbitOutcome, CliError> {
    if let Some(r) = cache.get(e, o) {
        log::debug!("cache hit for {o}");
        return Ok(OrbitOutcome::Done(r));
    }
    match orbit_certificate(e, o, Some(budget)) {
        Ok(r) => {
            cache.put(e, &r)?;
            Ok(OrbitOutcome::Done(r))
        }
        Err(err @ Error::OrbitBudget { .. }) => {
            log::warn!("{}: skipping orbit {o}: {err}", e.graph().label().unwrap_or("graph"));
            Ok(OrbitOutcome::Skipped(SkippedOrbit {
                orbit: o.clone(),
                reason: err.to_string(),
            }))
        }
        Err(err) => Err(err.into()),
    }
}

pub fn empty_certificate(e: &GbsEncoding) -> Certificate {
    Certificate {
        label: e.graph().label().map(str::to_owned),
        c: e.c().clone(),
        k: e.k().clone(),
        prefactor: e.prefactor(),
        records: Vec::new(),
        skipped: Vec::new(),
    }
}

/// Extends `cert` with `orbits`, which must follow its last record in key order.
pub fn extend(
    cert: &mut Certificate,
    e: &GbsEncoding,
    orbits: &[Orbit],
    budget: u64,
    cache: &Cache,
) -> Result<(), CliError> {
    for o in orbits {
        match certify_orbit(e, o, budget, cache)? {
            OrbitOutcome::Done(r) => cert.records.push(r),
            OrbitOutcome::Skipped(s) => cert.skipped.push(s),
        }
    }
    Ok(())
}

pub fn certify_all(e: &GbsEncoding, orbits: &[Orbit], budget: u64, cache: &Cache) -> Result<Certificate, CliError> {
    let mut cert = empty_certificate(e);
    extend(&mut cert, e, orbits, budget, cache)?;
    Ok(cert)
}

#[derive(Debug, Serialize)]
pub struct PairOutcome {
    pub report: ComparisonReport,
    /// Highest photon total certified before stopping.
    pub max_total_examined: u64,
    pub skipped: Vec<SkippedOrbit>,
}

/// Certifies both graphs one photon total at a time. Stops once the
/// multiset criterion separates, since no later orbit can outrank it.
pub fn compare_lazy(
    e1: &GbsEncoding,
    e2: &GbsEncoding,
    orbits: &[Orbit],
    budget: u64,
    cache: &Cache,
) -> Result<PairOutcome, CliError> {
    let mut c1 = empty_certificate(e1);
    let mut c2 = empty_certificate(e2);
    let mut report = compare_certificates(&c1, &c2)?;
    let mut examined = 0;
    let mut start = 0;
    while start < orbits.len() {
        let total = orbits[start].total();
        let end = orbits[start..]
            .iter()
            .position(|o| o.total() != total)
            .map_or(orbits.len(), |i| start + i);
        extend(&mut c1, e1, &orbits[start..end], budget, cache)?;
        extend(&mut c2, e2, &orbits[start..end], budget, cache)?;
        examined = total;
        start = end;
        report = compare_certificates(&c1, &c2)?;
        log::info!("|n| = {total}: {}", report.verdict);
        if report.separating_criterion == Some(Criterion::Multiset) {
            break;
        }
    }
    Ok(PairOutcome {
        report,
        max_total_examined: examined,
        skipped: c1.skipped,
    })
}

#[derive(Debug, Serialize)]
pub struct OrbitStep {
    pub orbit: Orbit,
    pub classes_after: usize,
    /// Graphs that became the only member of their class at this orbit.
    pub newly_distinguished: usize,
}

#[derive(Debug, Serialize)]
pub struct PairSeparation {
    pub a: usize,
    pub b: usize,
    pub verdict: Verdict,
    pub threshold_orbit: Option<Orbit>,
    pub separating_criterion: Option<Criterion>,
}

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    pub labels: Vec<String>,
    /// Member indices, each class sorted, classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub steps: Vec<OrbitStep>,
    /// Omitted for families above [`PAIR_REPORT_LIMIT`].
    pub pairs: Option<Vec<PairSeparation>>,
    pub skipped: Vec<SkippedOrbit>,
}

pub const PAIR_REPORT_LIMIT: usize = 64;

/// Greedy refinement: every non-singleton class is certified on each orbit
/// in turn and split by orbit-certificate equality.
pub fn refine_family(
    encodings: &[GbsEncoding],
    orbits: &[Orbit],
    budget: u64,
    cache: &Cache,
) -> Result<FamilyReport, CliError> {
    let n = encodings.len();
    let mut classes: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut steps = Vec::new();
    let mut skipped = Vec::new();
    let track_pairs = n <= PAIR_REPORT_LIMIT;
    let mut separations: Vec<Option<(Orbit, Criterion)>> = vec![None; n * n];

    for o in orbits {
        if classes.iter().all(|c| c.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        let mut newly = 0;
        let mut skipped_here = false;
        for class in &classes {
            if class.len() == 1 {
                next.push(class.clone());
                continue;
            }
            let mut records = Vec::with_capacity(class.len());
            for &i in class {
                match certify_orbit(&encodings[i], o, budget, cache)? {
                    OrbitOutcome::Done(r) => records.push(r),
                    OrbitOutcome::Skipped(s) => {
                        if !skipped_here {
                            skipped.push(s);
                            skipped_here = true;
                        }
                        break;
                    }
                }
            }
            if records.len() < class.len() {
                next.push(class.clone());
                continue;
            }
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for (pos, r) in records.iter().enumerate() {
                let home = groups.iter_mut().find(|g| compare_orbit(&records[g[0]], r).all_equal());
                match home {
                    Some(g) => g.push(pos),
                    None => groups.push(vec![pos]),
                }
            }
            if groups.len() > 1 {
                newly += groups.iter().filter(|g| g.len() == 1).count();
                if track_pairs {
                    for (gi, ga) in groups.iter().enumerate() {
                        for gb in &groups[gi + 1..] {
                            for &pa in ga {
                                for &pb in gb {
                                    let cmp = compare_orbit(&records[pa], &records[pb]);
                                    let crit = Criterion::ALL
                                        .into_iter()
                                        .find(|&c| !cmp.holds(c))
                                        .expect("groups differ");
                                    let (a, b) = (class[pa], class[pb]);
                                    separations[a * n + b] = Some((o.clone(), crit));
                                    separations[b * n + a] = Some((o.clone(), crit));
                                }
                            }
                        }
                    }
                }
            }
            next.extend(
                groups
                    .into_iter()
                    .map(|g| g.into_iter().map(|p| class[p]).collect::<Vec<_>>()),
            );
        }
        next.sort();
        classes = next;
        log::info!("orbit {o}: {} classes", classes.len());
        steps.push(OrbitStep {
            orbit: o.clone(),
            classes_after: classes.len(),
            newly_distinguished: newly,
        });
    }

    let pairs = track_pairs.then(|| {
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let sep = separations[a * n + b].clone();
                out.push(PairSeparation {
                    a,
                    b,
                    verdict: if sep.is_some() {
                        Verdict::Distinguished
                    } else {
                        Verdict::UndistinguishedUpToLimit
                    },
                    threshold_orbit: sep.as_ref().map(|s| s.0.clone()),
                    separating_criterion: sep.map(|s| s.1),
                });
            }
        }
        out
    });
    Ok(FamilyReport {
        labels: encodings
            .iter()
            .map(|e| e.graph().label().unwrap_or_default().to_owned())
            .collect(),
        classes,
        steps,
        pairs,
        skipped,
    })
}
