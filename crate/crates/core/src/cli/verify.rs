//! Check suites behind `skelsig verify`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::atlas::{c4_group, c4_sweep};
use crate::criteria::{
    construct_witness, harvey_c4, quaternion_higher_genus, sporadic_11_excluded, ConstructionKind,
    SporadicVerdict,
};
use crate::genvec::{exists_with_options, SearchOptions};
use crate::group_kernel::{Catalog, FiniteGroup};
use crate::regions::{
    count_t_lattice, gap_allowed, is_hyperbolic, s_count_formula, s_lattice_points, Region,
};
use crate::signatures::{
    enumerate_signatures, rh_integral_genus, Genus, SignatureConstraints, SkeletalPoint,
};
use crate::transforms::{e12, h1, skeletal_e12, skeletal_h1, C4Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Regions,
    Transforms,
    Harvey,
    Quaternion,
    Sporadic,
    Counts,
}

#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub max_genus: Option<u32>,
    pub primes: Vec<u32>,
    pub seed: u64,
    pub samples: usize,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl Report {
    fn check(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                detail: detail(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(target: Target, params: &VerifyParams, catalog: &Catalog) -> Report {
    let mut report = Report::default();
    match target {
        Target::Counts => counts(&mut report, params.max_genus.unwrap_or(200)),
        Target::Regions => regions(&mut report, params.max_genus.unwrap_or(60)),
        Target::Transforms => transforms(&mut report, params),
        Target::Harvey => harvey(&mut report, params.max_genus.unwrap_or(12), params.budget),
        Target::Quaternion => quaternion(&mut report, params.max_genus),
        Target::Sporadic => sporadic(&mut report, params, catalog),
    }
    report
}

fn counts(report: &mut Report, max_genus: u32) {
    for s in 2..=max_genus {
        let direct = (0..=(2 * s + 2) / 4)
            .map(|h| (2 * s + 2 - 4 * h + 1) as u64)
            .sum::<u64>();
        report.check(count_t_lattice(s) == direct, "t-count", || {
            format!("σ={s}: formula {} vs {direct}", count_t_lattice(s))
        });
        if s >= 6 {
            let n = s_lattice_points(s).len() as u64;
            report.check(n == s_count_formula(s), "s-count", || {
                format!("σ={s}: {n} points vs formula {}", s_count_formula(s))
            });
        }
    }
}

fn regions(report: &mut Report, max_genus: u32) {
    for s in 2..=max_genus {
        let t: BTreeSet<_> = Region::T(s).lattice_points().into_iter().collect();
        let l2: BTreeSet<_> = Region::L(s, 2).lattice_points().into_iter().collect();
        report.check(l2 == t, "l2-equals-t", || format!("σ={s}"));
        for n in 2..=24 {
            let outer: BTreeSet<_> = Region::L(s, n).lattice_points().into_iter().collect();
            let inner = Region::L(s, n + 1).lattice_points();
            report.check(inner.iter().all(|p| outer.contains(p)), "l-nested", || {
                format!("σ={s}: L({s},{}) ⊄ L({s},{n})", n + 1)
            });
        }
        let corner: Vec<SkeletalPoint> = Region::L(s, 12 * (s as u64 - 1))
            .lattice_points()
            .into_iter()
            .filter(|&p| is_hyperbolic(p))
            .collect();
        report.check(
            corner == [SkeletalPoint::new(0, 3), SkeletalPoint::new(0, 4)],
            "hurwitz-corner",
            || format!("σ={s}: {corner:?}"),
        );
        if s < 6 {
            continue;
        }
        let sweep = c4_sweep(Genus::new(s).expect("σ ≥ 2"));
        let c4 = c4_group();
        for p in s_lattice_points(s) {
            report.check(t.contains(&p) && gap_allowed(s, p), "s-inside-t", || {
                format!("σ={s}: {p}")
            });
            let ok = sweep.get(&p).is_some_and(|w| {
                let sig = w.signature.to_signature();
                harvey_c4(&sig) == Ok(true)
                    && crate::genvec::verify_generating_vector(&c4, &sig, &w.vector).is_ok()
                    && rh_integral_genus(4, &sig).map(Genus::get) == Some(s)
            });
            report.check(ok, "s-realized", || {
                format!("σ={s}: {p} has no verified C4 witness")
            });
        }
    }
}

fn transform_laws(report: &mut Report, sig: C4Signature) {
    let Some(genus) = rh_integral_genus(4, &sig.to_signature()) else {
        return;
    };
    let valid = harvey_c4(&sig.to_signature()) == Ok(true);
    for (name, image, shadow) in [
        ("h1", h1(sig), skeletal_h1(sig.skeletal())),
        ("e12", e12(sig), skeletal_e12(sig.skeletal())),
    ] {
        let Ok(image) = image else { continue };
        let image_sig = image.to_signature();
        report.check(
            rh_integral_genus(4, &image_sig) == Some(genus),
            name,
            || format!("{} changes the genus", sig.to_signature()),
        );
        if valid {
            report.check(harvey_c4(&image_sig) == Ok(true), name, || {
                format!("{} loses validity", sig.to_signature())
            });
        }
        report.check(shadow == Ok(image.skeletal()), name, || {
            format!("{} skeletal shadow disagrees", sig.to_signature())
        });
    }
}

fn transforms(report: &mut Report, params: &VerifyParams) {
    for h in 0..=10 {
        for t1 in 0..=40 {
            for t2 in 0..=20 {
                transform_laws(report, C4Signature::new(h, t1, t2));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(params.seed);
    for _ in 0..params.samples {
        let sig = C4Signature::new(
            rng.random_range(0..=200),
            rng.random_range(0..=800),
            rng.random_range(0..=400),
        );
        transform_laws(report, sig);
    }
    report.notes.push(format!(
        "window h≤10 t1≤40 t2≤20 plus {} samples with seed {}",
        params.samples, params.seed
    ));
}

fn harvey(report: &mut Report, max_genus: u32, budget: u64) {
    let c4: Arc<FiniteGroup> = c4_group();
    let options = SearchOptions {
        budget,
        ..Default::default()
    };
    for s in 2..=max_genus {
        let genus = Genus::new(s).expect("σ ≥ 2");
        for sig in enumerate_signatures(4, genus, &SignatureConstraints::periods([2, 4])) {
            let rule = harvey_c4(&sig);
            let search = exists_with_options(&c4, &sig, options).map(|r| r.exists());
            report.check(
                matches!((&rule, &search), (Ok(a), Ok(b)) if a == b),
                "harvey-vs-search",
                || format!("{sig}: rule {rule:?}, search {search:?}"),
            );
        }
    }
}

fn quaternion(report: &mut Report, max_genus: Option<u32>) {
    let fits = |s: u32| max_genus.is_none_or(|m| s <= m);
    for n in 2..=12 {
        let s = 2 * n - 1;
        if !fits(s) {
            continue;
        }
        let w = construct_witness(
            ConstructionKind::Quaternion(1, n),
            Genus::new(s).expect("n ≥ 2"),
        );
        report.check(
            w.as_ref()
                .is_ok_and(|w| w.verify() && w.skeletal() == SkeletalPoint::new(1, 1)),
            "quaternion",
            || format!("n={n} at σ={s}: {w:?}"),
        );
    }
    for h0 in 2..=4 {
        for n in 2..=6 {
            let s = 4 * n * (h0 - 1) + 2 * n - 1;
            if !fits(s) {
                continue;
            }
            let w = quaternion_higher_genus(h0, n);
            report.check(
                w.as_ref().is_ok_and(|w| {
                    w.verify() && w.genus.get() == s && w.skeletal() == SkeletalPoint::new(h0, 1)
                }),
                "quaternion-higher",
                || format!("h0={h0} n={n} at σ={s}: {w:?}"),
            );
        }
    }
}

fn sporadic(report: &mut Report, params: &VerifyParams, catalog: &Catalog) {
    let options = SearchOptions {
        budget: params.budget,
        ..Default::default()
    };
    for &p in &params.primes {
        let verdict = sporadic_11_excluded(p, catalog, options);
        let label = match &verdict {
            Ok(SporadicVerdict::ConfirmedAbsent) => "ConfirmedAbsent".to_string(),
            other => format!("{other:?}"),
        };
        report.notes.push(format!("(1,1) at σ={}: {label}", p + 1));
        report.check(
            matches!(verdict, Ok(SporadicVerdict::ConfirmedAbsent)),
            "sporadic-11",
            || format!("p={p}: {label}"),
        );
    }
}
