//! The bundled link fingerprint and the comparison of two links up to
//! permutation of component indices. A pair is reported as distinguished
//! only when a single invariant separates the links for every tested
//! permutation; per-permutation differences are informational. Every
//! invariant in the bundle is a sound obstruction, so the verdict wording
//! is "not distinguished", never "equivalent".

use num::bigint::BigInt;
use serde_json::{json, Value};

use crate::alexander::{
    build_presentation, check_crowell_compat, reduce_tau, simplify, specialize_nu,
};
use crate::config::RunConfig;
use crate::diagram::{validate, LinkDiagram};
use crate::error::{Error, Result};
use crate::laurent::IntLaurent;
use crate::modulealg::{
    alexander_poly, nu_fingerprint, permute_nu_image, presentation_ideal_fingerprints,
    IdealFingerprint, NuFingerprint, RatSmithResult,
};
use crate::quandle::{count_colorings_presentation, displacement_rational_factors, orbit_count};

/// The full invariant bundle of one link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauFingerprint {
    pub mu: usize,
    /// Rational invariant factors of the reduced module.
    pub rational: RatSmithResult,
    /// `Δ_k` for k = 0..=delta_k_max; `None` marks a cap exceedance.
    pub deltas: Vec<Option<IntLaurent>>,
    pub nu: NuFingerprint,
    /// Evaluation fingerprints of the multivariate elementary ideals,
    /// k = 0..=ideal_k_max.
    pub ideals: Vec<IdealFingerprint>,
    /// Coloring counts over the configured battery, in battery order.
    pub colorings: Vec<BigInt>,
    pub orbit_count: usize,
    /// Rational invariant factors of the displacement module.
    pub displacement: RatSmithResult,
    pub seed: u64,
}

impl TauFingerprint {
    pub fn render_json(&self, config: &RunConfig) -> Value {
        json!({
            "colorings": self
                .colorings
                .iter()
                .zip(&config.battery)
                .map(|(c, spec)| json!({
                    "count": c.to_string(),
                    "modulus": spec.modulus,
                    "unit": spec.unit,
                }))
                .collect::<Vec<_>>(),
            "deltas": self
                .deltas
                .iter()
                .map(|d| d.as_ref().map(|p| p.to_string()))
                .collect::<Vec<_>>(),
            "displacement": self.displacement.render_json(),
            "ideal_fingerprints": self.ideals.iter().map(|f| f.render_json()).collect::<Vec<_>>(),
            "mu": self.mu,
            "nu": self.nu.render_json(),
            "orbit_count": self.orbit_count,
            "rational": self.rational.render_json(),
            "seed": self.seed,
        })
    }

    /// The sub-bundle that only sees the reduced module and its
    /// specializations (everything except the multivariate ideal
    /// fingerprints and the component-indexed ν image coordinates).
    pub fn reduced_level_eq(&self, other: &TauFingerprint) -> bool {
        self.rational == other.rational
            && self.deltas == other.deltas
            && self.nu.rank == other.nu.rank
            && self.nu.torsion == other.nu.torsion
            && self.colorings == other.colorings
            && self.orbit_count == other.orbit_count
            && self.displacement == other.displacement
    }
}

/// Compute the full fingerprint bundle of a diagram.
pub fn link_fingerprint(d: &LinkDiagram, config: &RunConfig) -> Result<TauFingerprint> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    let p = build_presentation(d)?;
    if !check_crowell_compat(&p) {
        return Err(Error::Internal("presentation fails Crowell compatibility".into()));
    }
    let ps = simplify(&p);
    let ideals = presentation_ideal_fingerprints(&ps, config.ideal_k_max, config.point_cap);
    let red = simplify(&reduce_tau(&ps));
    let rational = crate::modulealg::rational_factors(&red);
    let caps = config.minor_caps();
    let mut deltas = Vec::with_capacity(config.delta_k_max + 1);
    for k in 0..=config.delta_k_max {
        if k >= red.rows() {
            deltas.push(Some(IntLaurent::one(1)));
            continue;
        }
        match alexander_poly(&red, k, &caps) {
            Ok(d) => deltas.push(Some(d)),
            Err(Error::CapExceeded(_)) => deltas.push(None),
            Err(e) => return Err(e),
        }
    }
    let nu = nu_fingerprint(&specialize_nu(&ps), config.torsion_cap)?;
    let mut colorings = Vec::with_capacity(config.battery.len());
    for spec in &config.battery {
        colorings.push(count_colorings_presentation(&red, spec)?);
    }
    let orbit = orbit_count(d)?;
    let displacement = if red.rows() == 0 {
        RatSmithResult { factors: vec![], rank: 0 }
    } else {
        let base = red.generators[0].clone();
        displacement_rational_factors(&red, &base)?
    };
    Ok(TauFingerprint {
        mu: d.mu,
        rational,
        deltas,
        nu,
        ideals,
        colorings,
        orbit_count: orbit,
        displacement,
        seed: config.seed,
    })
}

/// Lexicographically ordered permutations of `1..=n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Permute a fingerprint through a relabeling of component indices:
/// permutation-insensitive parts are reused, the ν torsion images are
/// rewritten through the induced automorphism, and the ideal fingerprints
/// are reindexed along the pulled-back point schedule (recomputed from the
/// relabeled diagram when the schedule was truncated).
pub fn permute_fingerprint(
    fp: &TauFingerprint,
    diagram: &LinkDiagram,
    perm: &[usize],
    config: &RunConfig,
) -> Result<TauFingerprint> {
    if perm.len() != fp.mu {
        return Err(Error::Usage("permutation length must equal mu".into()));
    }
    let mut out = fp.clone();
    out.nu.torsion_image =
        fp.nu.torsion_image.iter().map(|v| permute_nu_image(v, perm)).collect();
    let schedule_full = 4usize.checked_pow(fp.mu as u32).map(|n| n <= config.point_cap).unwrap_or(false);
    if schedule_full {
        for f in &mut out.ideals {
            let lookup: std::collections::BTreeMap<&Vec<i64>, &BigInt> =
                fp.ideals[f.k].points.iter().zip(fp.ideals[f.k].values.iter()).collect();
            let mut values = Vec::with_capacity(f.points.len());
            for pt in &f.points {
                // relabeled generators evaluate at p as the originals at
                // the pulled-back point q with q_i = p_{perm(i)}
                let q: Vec<i64> = (0..fp.mu).map(|i| pt[perm[i] - 1]).collect();
                values.push((*lookup.get(&q).expect("full schedule is permutation closed")).clone());
            }
            f.values = values;
        }
    } else {
        let relabeled = diagram.permute_components(perm)?;
        let ps = simplify(&build_presentation(&relabeled)?);
        out.ideals = presentation_ideal_fingerprints(&ps, config.ideal_k_max, config.point_cap);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinguished,
    NotDistinguished,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub invariant: String,
    /// True when the invariant separates the pair for every tested
    /// permutation.
    pub universal: bool,
    pub details: String,
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub permutations_tested: usize,
}

impl ComparisonReport {
    pub fn distinguished(&self) -> bool {
        self.verdict == Verdict::Distinguished
    }

    pub fn render_json(&self) -> Value {
        json!({
            "permutations_tested": self.permutations_tested,
            "verdict": match self.verdict {
                Verdict::Distinguished => "distinguished",
                Verdict::NotDistinguished => "not distinguished",
            },
            "witnesses": self
                .witnesses
                .iter()
                .map(|w| json!({
                    "details": w.details,
                    "invariant": w.invariant,
                    "universal": w.universal,
                }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "verdict: {}\npermutations tested: {}\n",
            match self.verdict {
                Verdict::Distinguished => "distinguished",
                Verdict::NotDistinguished => "not distinguished",
            },
            self.permutations_tested
        ));
        if self.witnesses.is_empty() {
            out.push_str("no separating invariant found\n");
            return out;
        }
        let width = self.witnesses.iter().map(|w| w.invariant.len()).max().unwrap().max(9);
        out.push_str(&format!("{:width$}  {:9}  details\n", "invariant", "universal"));
        for w in &self.witnesses {
            out.push_str(&format!(
                "{:width$}  {:9}  {}\n",
                w.invariant,
                if w.universal { "yes" } else { "no" },
                w.details
            ));
        }
        out
    }
}

/// Compare two diagrams. With permutations disabled only the identity
/// indexing is tested; with them enabled all `μ!` relabelings of the second
/// link are swept (guarded).
pub fn compare(
    d1: &LinkDiagram,
    d2: &LinkDiagram,
    allow_permutations: bool,
    config: &RunConfig,
) -> Result<ComparisonReport> {
    for d in [d1, d2] {
        let v = validate(d);
        if !v.is_empty() {
            return Err(Error::InvalidDiagram(v));
        }
    }
    if d1.mu != d2.mu {
        return Ok(ComparisonReport {
            verdict: Verdict::Distinguished,
            witnesses: vec![Witness {
                invariant: "orbit-count".into(),
                universal: true,
                details: format!("{} vs {} components", d1.mu, d2.mu),
            }],
            permutations_tested: 0,
        });
    }
    if allow_permutations && d1.mu > config.permutation_guard {
        return Err(Error::CapExceeded(format!(
            "mu = {} exceeds the permutation guard {}",
            d1.mu, config.permutation_guard
        )));
    }
    let fp1 = link_fingerprint(d1, config)?;
    let fp2 = link_fingerprint(d2, config)?;
    let perms = if allow_permutations {
        permutations(d1.mu)
    } else {
        vec![(1..=d1.mu).collect::<Vec<usize>>()]
    };

    let mut witnesses = Vec::new();

    // permutation-insensitive invariants: any difference is universal
    let insensitive: Vec<(&str, bool, String)> = vec![
        (
            "rational-invariant-factors",
            fp1.rational != fp2.rational,
            format!("{:?} vs {:?}", fp1.rational, fp2.rational),
        ),
        ("alexander-deltas", fp1.deltas != fp2.deltas, format!("{:?} vs {:?}", fp1.deltas, fp2.deltas)),
        ("nu-rank", fp1.nu.rank != fp2.nu.rank, format!("{} vs {}", fp1.nu.rank, fp2.nu.rank)),
        (
            "nu-torsion",
            fp1.nu.torsion != fp2.nu.torsion,
            format!("{:?} vs {:?}", fp1.nu.torsion, fp2.nu.torsion),
        ),
        (
            "coloring-counts",
            fp1.colorings != fp2.colorings,
            format!("{:?} vs {:?}", fp1.colorings, fp2.colorings),
        ),
        (
            "displacement-rational-factors",
            fp1.displacement != fp2.displacement,
            format!("{:?} vs {:?}", fp1.displacement, fp2.displacement),
        ),
    ];
    for (name, differs, details) in insensitive {
        if differs {
            witnesses.push(Witness { invariant: name.into(), universal: true, details });
        }
    }

    // permutation-sensitive invariants
    let nu_comparable = !fp1.nu.truncated && !fp2.nu.truncated;
    let mut nu_equal_perms = 0usize;
    let mut ideal_equal_perms = vec![0usize; fp1.ideals.len()];
    for perm in &perms {
        let permuted = permute_fingerprint(&fp2, d2, perm, config)?;
        if nu_comparable && permuted.nu.torsion_image == fp1.nu.torsion_image {
            nu_equal_perms += 1;
        }
        for (k, f) in permuted.ideals.iter().enumerate() {
            if f.values == fp1.ideals[k].values {
                ideal_equal_perms[k] += 1;
            }
        }
    }
    if nu_comparable {
        if nu_equal_perms < perms.len() {
            witnesses.push(Witness {
                invariant: "nu-torsion-image".into(),
                universal: nu_equal_perms == 0,
                details: format!(
                    "image sets differ for {} of {} permutations",
                    perms.len() - nu_equal_perms,
                    perms.len()
                ),
            });
        }
    } else if fp1.nu.truncated || fp2.nu.truncated {
        witnesses.push(Witness {
            invariant: "nu-torsion-image".into(),
            universal: false,
            details: "fingerprint truncated; not used as a witness".into(),
        });
    }
    for (k, &eq) in ideal_equal_perms.iter().enumerate() {
        if eq < perms.len() {
            witnesses.push(Witness {
                invariant: format!("E{}-evaluation", k),
                universal: eq == 0,
                details: format!(
                    "ideal fingerprints differ for {} of {} permutations",
                    perms.len() - eq,
                    perms.len()
                ),
            });
        }
    }

    let verdict = if witnesses.iter().any(|w| w.universal) {
        Verdict::Distinguished
    } else {
        Verdict::NotDistinguished
    };
    Ok(ComparisonReport { verdict, witnesses, permutations_tested: perms.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::laurent::parse_laurent;

    fn config() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn fingerprint_of_hopf_unknot() {
        let fp = link_fingerprint(&fixtures::hopf_unknot(), &config()).unwrap();
        assert_eq!(fp.mu, 3);
        assert_eq!(fp.rational.rank, 2);
        assert_eq!(fp.rational.factors.len(), 1);
        assert_eq!(fp.nu.rank, 2);
        assert_eq!(fp.nu.torsion, vec![BigInt::from(2)]);
        assert_eq!(fp.orbit_count, 3);
    }

    #[test]
    fn fingerprint_of_unknot() {
        let cfg = config();
        let fp = link_fingerprint(&fixtures::unknot(), &cfg).unwrap();
        assert_eq!(fp.rational.rank, 1);
        assert!(fp.rational.factors.is_empty());
        assert!(fp.nu.torsion.is_empty());
        let idx = cfg.battery.iter().position(|s| (s.modulus, s.unit) == (5, 2)).unwrap();
        assert_eq!(fp.colorings[idx], BigInt::from(5));
        assert_eq!(fp.deltas[1], Some(IntLaurent::one(1)));
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![1, 2, 3]);
        assert_eq!(p[5], vec![3, 2, 1]);
    }

    #[test]
    fn identity_permutation_fixes_fingerprint() {
        let cfg = config();
        let d = fixtures::hopf_unknot();
        let fp = link_fingerprint(&d, &cfg).unwrap();
        let id: Vec<usize> = (1..=3).collect();
        let same = permute_fingerprint(&fp, &d, &id, &cfg).unwrap();
        assert_eq!(fp, same);
    }

    #[test]
    fn permuted_fingerprint_matches_relabeled_recompute() {
        let cfg = config();
        for (name, d) in [
            ("hopf-unknot", fixtures::hopf_unknot()),
            ("two-hopf", fixtures::two_hopf()),
            ("l-prime", fixtures::l_prime()),
        ] {
            let fp = link_fingerprint(&d, &cfg).unwrap();
            for perm in permutations(d.mu) {
                let via_rewrite = permute_fingerprint(&fp, &d, &perm, &cfg).unwrap();
                let relabeled = d.permute_components(&perm).unwrap();
                let recomputed = link_fingerprint(&relabeled, &cfg).unwrap();
                assert_eq!(
                    via_rewrite.nu.torsion_image, recomputed.nu.torsion_image,
                    "{} perm {:?}",
                    name, perm
                );
                for k in 0..via_rewrite.ideals.len() {
                    assert_eq!(
                        via_rewrite.ideals[k].values, recomputed.ideals[k].values,
                        "{} perm {:?} k {}",
                        name, perm, k
                    );
                }
            }
        }
    }

    #[test]
    fn permute_is_group_action() {
        let cfg = config();
        let d = fixtures::two_hopf();
        let fp = link_fingerprint(&d, &cfg).unwrap();
        let p1 = vec![2usize, 1, 4, 3];
        let p2 = vec![3usize, 4, 1, 2];
        // composite: first p1 then p2, i.e. i -> p2[p1[i]-1]
        let comp: Vec<usize> = (0..4).map(|i| p2[p1[i] - 1]).collect();
        let step = permute_fingerprint(&permute_fingerprint(&fp, &d, &p1, &cfg).unwrap(),
            &d.permute_components(&p1).unwrap(), &p2, &cfg).unwrap();
        let direct = permute_fingerprint(&fp, &d, &comp, &cfg).unwrap();
        assert_eq!(step.nu.torsion_image, direct.nu.torsion_image);
    }

    #[test]
    fn two_hopf_vs_l_prime_distinguished_universally() {
        let cfg = config();
        let report = compare(&fixtures::two_hopf(), &fixtures::l_prime(), true, &cfg).unwrap();
        assert!(report.distinguished());
        assert_eq!(report.permutations_tested, 24);
        let w = report
            .witnesses
            .iter()
            .find(|w| w.invariant == "nu-torsion-image")
            .expect("nu image witness");
        assert!(w.universal);
        // the isomorphic-module parts agree
        assert!(!report.witnesses.iter().any(|w| w.invariant == "rational-invariant-factors"));
        assert!(!report.witnesses.iter().any(|w| w.invariant == "nu-torsion"));
    }

    #[test]
    fn hopf_unknot_swap_needs_permutations() {
        let cfg = config();
        let a = fixtures::hopf_unknot();
        let b = fixtures::hopf_unknot_swapped();
        let without = compare(&a, &b, false, &cfg).unwrap();
        assert!(without.distinguished());
        assert!(without
            .witnesses
            .iter()
            .any(|w| w.invariant == "E2-evaluation" && w.universal));
        let with = compare(&a, &b, true, &cfg).unwrap();
        assert!(!with.distinguished());
    }

    #[test]
    fn knots_4_1_vs_5_1() {
        let cfg = config();
        let report = compare(&fixtures::figure_eight(), &fixtures::cinquefoil(), false, &cfg).unwrap();
        assert!(report.distinguished());
        assert!(report.witnesses.iter().any(|w| w.invariant == "alexander-deltas"));
        assert!(!report.witnesses.iter().any(|w| w.invariant == "nu-rank"));
        assert!(!report.witnesses.iter().any(|w| w.invariant == "nu-torsion"));
        assert!(!report.witnesses.iter().any(|w| w.invariant == "nu-torsion-image"));
        let f1 = link_fingerprint(&fixtures::figure_eight(), &cfg).unwrap();
        let f2 = link_fingerprint(&fixtures::cinquefoil(), &cfg).unwrap();
        assert_eq!(f1.nu.rank, 1);
        assert_eq!(f1.nu.torsion, vec![BigInt::from(5)]);
        assert_eq!(f1.nu.torsion, f2.nu.torsion);
        assert_eq!(
            f1.deltas[1],
            Some(parse_laurent("1 - 3*t + t^2", 1).unwrap())
        );
        assert_eq!(
            f2.deltas[1],
            Some(parse_laurent("1 - t + t^2 - t^3 + t^4", 1).unwrap())
        );
    }

    #[test]
    fn compare_is_reflexive_and_symmetric_on_corpus() {
        let cfg = config();
        for f in fixtures::corpus() {
            let r = compare(&f.diagram, &f.diagram, true, &cfg).unwrap();
            assert!(!r.distinguished(), "fixture {} distinguished from itself", f.name);
        }
        let a = fixtures::two_hopf();
        let b = fixtures::l_prime();
        let r1 = compare(&a, &b, true, &cfg).unwrap();
        let r2 = compare(&b, &a, true, &cfg).unwrap();
        assert_eq!(r1.distinguished(), r2.distinguished());
    }

    #[test]
    fn bundle_colorings_match_diagram_route() {
        let cfg = config();
        for f in fixtures::corpus() {
            let fp = link_fingerprint(&f.diagram, &cfg).unwrap();
            for (spec, count) in cfg.battery.iter().zip(&fp.colorings) {
                let direct = crate::quandle::count_colorings(&f.diagram, spec).unwrap();
                assert_eq!(*count, direct, "fixture {} spec {:?}", f.name, spec);
            }
        }
    }

    #[test]
    fn permutation_guard_refuses_large_mu() {
        let mut cfg = config();
        cfg.permutation_guard = 2;
        let err = compare(&fixtures::hopf_unknot(), &fixtures::hopf_unknot(), true, &cfg);
        assert!(matches!(err, Err(Error::CapExceeded(_))));
    }
}
