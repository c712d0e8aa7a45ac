//! Acceptance suite for `malle-core`: twelve checks combining exact
//! oracles with trend checks on counting data, each with a time budget.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use malle_core::arith::primes_up_to;
use malle_core::asymptotics::{
    ell_rank_bound, exact_quadratic_ramified_count, quadratic_fields_by_sieve,
    quadratic_fields_unramified_outside, residue_series, restricted_sum, slope_fit, FieldFilter, RankBase,
    RankBoundQuery, Y_EXPONENT_MAX, Z_D4_WINDOW,
};
use malle_core::interval::ErrorInterval;
use malle_core::permgroup::{catalog, wreath_decompose, wreath_product, CatalogEntry, PermGroup};
use malle_core::quadfield::{count_quadratic_q, fundamental_discs, residuum_check, QuadraticField};
use malle_core::towers::{count_quadratic_ext, count_towers, CountMode, TowerReport};

/// Seed for every random choice made by the suite.
pub const SEED: u64 = 0xC2A4;

/// Class number one fields with `|d| <= 50`.
pub const H1_FIELDS: [i64; 20] = [-3, -4, -7, -8, -11, -19, -43, 5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 41, 44];

/// Sample points `10^4, 10^4.5, ..., 10^6` of the tower sweeps.
pub fn tower_samples() -> Vec<u64> {
    (8..=12).map(|k| 10f64.powf(k as f64 / 2.0).round() as u64).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub measured: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>8.2}s  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.measured
        )
    }
}

type Outcome = Result<(bool, String), String>;

pub const CHECKS: [(u8, &str, f64); 12] = [
    (1, "invariant catalog", 5.0),
    (2, "wreath lemma", 120.0),
    (3, "transposition lemma", 60.0),
    (4, "quadratic fields over Q", 10.0),
    (5, "quadratic extensions of Q(i)", 300.0),
    (6, "restricted linear growth", 1800.0),
    (7, "degenerate towers", 1800.0),
    (8, "discriminant identities", 1800.0),
    (9, "witness soundness", 1800.0),
    (10, "l-rank bound", 60.0),
    (11, "analytic consistency", 600.0),
    (12, "residue series enclosure", 600.0),
];

/// Runs check `id` (1 to 12).
pub fn run_check(id: u8) -> CheckResult {
    let &(_, name, limit) = CHECKS.iter().find(|c| c.0 == id).expect("check id in 1..=12");
    let start = Instant::now();
    let out = match id {
        1 => invariant_catalog(),
        2 => wreath_lemma(),
        3 => transposition_lemma(),
        4 => quadratic_over_q(),
        5 => gaussian_extensions(),
        6 => restricted_growth(),
        7 => degenerate_towers(),
        8 => discriminant_identities(),
        9 => witness_soundness(),
        10 => rank_bound(),
        11 => analytic_consistency(),
        _ => residue_enclosure(),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (pass, measured) = match out {
        Ok((pass, m)) => (pass, m),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = seconds <= limit;
    CheckResult {
        id,
        name,
        pass: pass && in_time,
        measured: if in_time { measured } else { format!("{measured}; over time limit {limit}s") },
        seconds,
        limit_seconds: limit,
    }
}

pub fn run_all() -> Vec<CheckResult> {
    CHECKS.iter().map(|c| run_check(c.0)).collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn catalog_cached() -> Result<&'static [CatalogEntry], String> {
    static CAT: OnceLock<Result<Vec<CatalogEntry>, String>> = OnceLock::new();
    CAT.get_or_init(|| catalog().map_err(err)).as_deref().map_err(Clone::clone)
}

fn invariant_catalog() -> Outcome {
    let want: [(&str, usize, (u32, u32), usize); 6] = [
        ("S3", 3, (1, 1), 1),
        ("C3", 3, (1, 2), 1),
        ("C4", 4, (1, 2), 1),
        ("D4", 4, (1, 1), 1),
        ("C2wrC3", 6, (1, 1), 1),
        ("C2wrC2wrC2", 8, (1, 1), 1),
    ];
    let cat = catalog_cached()?;
    let mut bad = Vec::new();
    for (name, n, (an, ad), b) in want {
        let g = &cat.iter().find(|e| e.name == name).ok_or(format!("{name} missing"))?.group;
        let a = g.a_invariant().map_err(err)?;
        let bq = g.b_rational().map_err(err)?;
        if g.degree() != n || a != Ratio::new(an, ad) || bq != b {
            bad.push(format!("{name}: a = {a}, b = {bq}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "6/6 match".into() } else { bad.join(", ") }))
}

fn wreath_lemma() -> Outcome {
    let cat = catalog_cached()?;
    let mut pairs = Vec::new();
    for h1 in cat {
        for h2 in cat {
            let size = (h1.group.order() as u128)
                .checked_pow(h2.group.degree() as u32)
                .and_then(|o| o.checked_mul(h2.group.order() as u128));
            if size.is_some_and(|s| s <= 100_000) {
                pairs.push((h1, h2));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    pairs.shuffle(&mut rng);
    pairs.truncate(60);
    if pairs.len() < 50 {
        return Ok((false, format!("only {} admissible pairs", pairs.len())));
    }
    let failures: Vec<String> = pairs
        .par_iter()
        .map(|(h1, h2)| -> Result<Option<String>, String> {
            let w = wreath_product(&h1.group, &h2.group, 100_000).map_err(err)?;
            let (a1, aw) = (h1.group.a_invariant().map_err(err)?, w.a_invariant().map_err(err)?);
            let (b1, bw) = (h1.group.b_rational().map_err(err)?, w.b_rational().map_err(err)?);
            Ok((a1 != aw || b1 != bw).then(|| format!("{} wr {}", h1.name, h2.name)))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((
        failures.is_empty(),
        format!("{} pairs, {} failures {:?}", pairs.len(), failures.len(), failures),
    ))
}

fn transpositions_conjugate(g: &PermGroup) -> bool {
    let classes = g.classes();
    let ids: BTreeSet<usize> = g
        .transpositions()
        .map(|t| classes.class_of_element(g.index_of(t).expect("element of g")))
        .collect();
    ids.len() == 1
}

fn transposition_lemma() -> Outcome {
    let cat = catalog_cached()?;
    let mut tested = 0;
    let mut bad = Vec::new();
    for e in cat.iter().filter(|e| e.group.contains_transposition()) {
        tested += 1;
        let ok = transpositions_conjugate(&e.group) && wreath_decompose(&e.group).map_err(err)?.is_some();
        if !ok {
            bad.push(e.name.clone());
        }
    }
    Ok((
        bad.is_empty() && tested > 0,
        format!("{tested} groups with a transposition, failures {bad:?}"),
    ))
}

fn quadratic_over_q() -> Outcome {
    let x = 1_000_000u64;
    let c = count_quadratic_q(x);
    let r = c as f64 / x as f64;
    let target = 6.0 / std::f64::consts::PI.powi(2);
    Ok(((r - target).abs() <= 0.01, format!("Z(1e6) = {c}, ratio {r:.6} vs {target:.6}")))
}

fn gaussian_extensions() -> Outcome {
    let k = QuadraticField::new(-4).map_err(err)?;
    let r = k.r_constant(1e-10).map_err(err)?.mid();
    let mut disc = Vec::new();
    let mut parts = Vec::new();
    for x in [100u64, 1_000, 10_000] {
        let c = count_quadratic_ext(&k, x).map_err(err)?;
        let rel = (c as f64 / x as f64 - r).abs() / r;
        disc.push(rel);
        parts.push(format!("{c}/{x} ({:.3}%)", 100.0 * rel));
    }
    let decreasing = disc.windows(2).all(|w| w[1] < w[0]);
    let pass = disc[2] <= 0.15 && decreasing;
    Ok((
        pass,
        format!(
            "{} vs R = {r:.6}; final within 15%: {}, strictly decreasing: {decreasing}",
            parts.join(", "),
            disc[2] <= 0.15
        ),
    ))
}

fn tower_report(mode: CountMode) -> Result<&'static TowerReport, String> {
    static FIELD: OnceLock<Result<TowerReport, String>> = OnceLock::new();
    static TOWER: OnceLock<Result<TowerReport, String>> = OnceLock::new();
    let cell = match mode {
        CountMode::Field => &FIELD,
        CountMode::Tower => &TOWER,
    };
    cell.get_or_init(|| count_towers(&H1_FIELDS, &tower_samples(), mode).map_err(err))
        .as_ref()
        .map_err(Clone::clone)
}

fn restricted_constant() -> Result<ErrorInterval, String> {
    static C: OnceLock<Result<ErrorInterval, String>> = OnceLock::new();
    C.get_or_init(|| restricted_sum(&H1_FIELDS, 1e-10).map_err(err)).clone()
}

fn restricted_growth() -> Outcome {
    let r = tower_report(CountMode::Field)?;
    let pts: Vec<(f64, f64)> = r.samples.iter().map(|c| (c.x as f64, c.z_d4 as f64)).collect();
    let fit = slope_fit(&pts).map_err(err)?;
    let c = restricted_constant()?.mid();
    let last = r.samples.last().expect("samples");
    let ratio = last.z_d4 as f64 / last.x as f64;
    let rel = (ratio - c).abs() / c;
    let in_window = (Z_D4_WINDOW.0..=Z_D4_WINDOW.1).contains(&fit.exponent);
    Ok((
        in_window && rel <= 0.15,
        format!(
            "exponent {:.4}, Z_D4(1e6)/1e6 = {ratio:.5} vs {c:.5} ({:.2}%)",
            fit.exponent,
            100.0 * rel
        ),
    ))
}

fn degenerate_towers() -> Outcome {
    let r = tower_report(CountMode::Tower)?;
    let pts: Vec<(f64, f64)> = r.samples.iter().map(|c| (c.x as f64, c.y as f64)).collect();
    let fit = slope_fit(&pts).map_err(err)?;
    let last = r.samples.last().expect("samples");
    let share = last.y as f64 / last.z_tilde as f64;
    Ok((
        fit.exponent <= Y_EXPONENT_MAX && share <= 0.2,
        format!("Y exponent {:.4}, y/z_tilde at 1e6 = {}/{} = {share:.4}", fit.exponent, last.y, last.z_tilde),
    ))
}

fn discriminant_identities() -> Outcome {
    let c = tower_report(CountMode::Tower)?.checks;
    Ok((
        c.identity_failures == 0 && c.abelian_failures == 0 && c.abelian_checked > 0,
        format!(
            "{} towers, {} identity failures, {} abelian checked, {} abelian failures",
            c.towers, c.identity_failures, c.abelian_checked, c.abelian_failures
        ),
    ))
}

fn witness_soundness() -> Outcome {
    let r = tower_report(CountMode::Tower)?;
    let with_witness = r.towers.iter().filter(|t| t.witness.is_some()).count();
    Ok((
        r.checks.witness_violations == 0,
        format!(
            "{} towers, {with_witness} with a witness, {} violations",
            r.checks.towers, r.checks.witness_violations
        ),
    ))
}

fn rank_bound() -> Outcome {
    let primes: Vec<u64> = primes_up_to(71);
    assert_eq!(primes.len(), 20);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut violations, mut disagreements, mut sieved) = (0, 0, 0);
    for _ in 0..100 {
        let s: Vec<u64> = primes.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let exact = exact_quadratic_ramified_count(&s);
        let listed = quadratic_fields_unramified_outside(&s);
        if listed.len() as u64 != exact {
            disagreements += 1;
        }
        if let Some(sv) = quadratic_fields_by_sieve(&s, 1 << 22) {
            sieved += 1;
            if sv != listed {
                disagreements += 1;
            }
        }
        let b = ell_rank_bound(&RankBoundQuery {
            base: RankBase::Rational,
            ell: 2,
            s,
        })
        .map_err(err)?;
        if (exact as u128) > b.bound {
            violations += 1;
        }
    }
    Ok((
        violations == 0 && disagreements == 0,
        format!("100 sets, {violations} violations, {disagreements} path disagreements ({sieved} also sieved)"),
    ))
}

fn analytic_consistency() -> Outcome {
    let discs = fundamental_discs(10_000);
    let eps = [0.25, 0.5, 1.0];
    let bad: Vec<String> = discs
        .par_iter()
        .map(|&d| -> Result<Option<String>, String> {
            let k = QuadraticField::new(d).map_err(err)?;
            if k.analytic_class_number() != Some(k.class_number()) {
                return Ok(Some(format!("h({d})")));
            }
            for e in eps {
                if !residuum_check(&k, e).map_err(err)?.ok {
                    return Ok(Some(format!("residuum({d}, {e})")));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((
        bad.is_empty(),
        format!("{} fields, {} failures {:?}", discs.len(), bad.len(), &bad[..bad.len().min(5)]),
    ))
}

fn residue_enclosure() -> Outcome {
    let ds = [100u64, 200, 400, 800, 1600];
    let series = ds
        .iter()
        .map(|&d| residue_series(d, f64::INFINITY, FieldFilter::All).map_err(err))
        .collect::<Result<Vec<_>, _>>()?;
    let monotone = series
        .windows(2)
        .all(|w| w[1].partial_sum.lo() >= w[0].partial_sum.lo() && w[1].partial_sum.hi() >= w[0].partial_sum.hi());
    let per_field: Vec<ErrorInterval> = H1_FIELDS
        .iter()
        .map(|&d| {
            let k = QuadraticField::new(d).map_err(err)?;
            Ok(k.r_constant(1e-10).map_err(err)? / ErrorInterval::from_i64(d * d))
        })
        .collect::<Result<_, String>>()?;
    let summed: ErrorInterval = per_field.into_iter().sum();
    let restricted = restricted_constant()?;
    let equal = summed == restricted;
    let last = series.last().expect("series");
    Ok((
        monotone && equal,
        format!(
            "monotone over D = {ds:?}: {monotone}; partial(1600) = {}; restricted = {restricted}, equal: {equal}",
            last.partial_sum
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_span_two_decades() {
        assert_eq!(tower_samples(), vec![10_000, 31_623, 100_000, 316_228, 1_000_000]);
    }

    #[test]
    fn h1_fields_are_the_class_number_one_fields() {
        let h1: Vec<i64> = fundamental_discs(50)
            .into_iter()
            .filter(|&d| QuadraticField::new(d).unwrap().class_number() == 1)
            .collect();
        let mut want = H1_FIELDS.to_vec();
        want.sort_by_key(|d| (d.abs(), *d > 0));
        assert_eq!(h1, want);
    }
}
