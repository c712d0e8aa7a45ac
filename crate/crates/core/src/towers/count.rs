use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::abelian::{abelian_discriminant, biquadratic_subfields};
use super::kummer::{KummerClass, SquareClassId, TowerField};
use super::local::GaloisType;
use super::{TowerChecks, TowerError};
use crate::quadfield::QuadraticField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Every pair `(K, L)` counts.
    Tower,
    /// Every quartic field inside a fixed algebraic closure counts once.
    Field,
}

/// Identity of the quartic field `L`. A biquadratic field has three
/// quadratic subfields and arises from each of them; a `D4` or `C4`
/// field has exactly one, so `(d_K, class)` determines it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FieldKey {
    Biquadratic([i128; 3]),
    Tower { d_k: i64, id: SquareClassId },
}

/// Counts at one bound `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TowerCount {
    pub x: u64,
    /// Towers with `N(d_L) <= x`, all Galois types.
    pub z_tilde: u64,
    /// Those with Galois group `D4`.
    pub z_d4: u64,
    /// Those with Galois group `C4` or `V4`.
    pub y: u64,
    pub mode: CountMode,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub mode: CountMode,
    pub samples: Vec<TowerCount>,
    /// Every tower up to the largest sample, sorted by discriminant.
    pub towers: Vec<KummerClass>,
    pub checks: TowerChecks,
}

/// Number of quadratic extensions `L/K` with `N(d_{L/K}) <= x`.
pub fn count_quadratic_ext(field: &QuadraticField, x: u64) -> Result<u64, TowerError> {
    let k = TowerField::new(field.clone(), x)?;
    Ok(k.extensions_up_to(x)?.len() as u64)
}

fn field_key(k: &TowerField, c: &KummerClass) -> Result<FieldKey, TowerError> {
    Ok(match c.galois_type {
        GaloisType::V4 => FieldKey::Biquadratic(
            biquadratic_subfields(k.order(), c.delta)?.expect("V4 has a square norm"),
        ),
        _ => FieldKey::Tower {
            d_k: c.d_k,
            id: c.square_class_id.clone(),
        },
    })
}

fn check(k: &TowerField, c: &KummerClass) -> Result<TowerChecks, TowerError> {
    let d = c.d_k as i128;
    let mut out = TowerChecks {
        towers: 1,
        ..Default::default()
    };
    let expected = (d * d) as u128 * c.rel_disc_norm as u128;
    if expected != c.tower_disc {
        out.identity_failures += 1;
    }
    if let Some(disc) = abelian_discriminant(k.order(), c.delta)? {
        out.abelian_checked += 1;
        if disc != c.tower_disc {
            out.abelian_failures += 1;
        }
    }
    if c.witness.is_some() && c.galois_type != GaloisType::D4 {
        out.witness_violations += 1;
    }
    Ok(out)
}

/// Counts quartic towers over the class number one fields `fields` at each
/// bound in `samples`, by absolute discriminant `N(d_L) = d_K^2 N(d_{L/K})`.
pub fn count_towers(
    fields: &[i64],
    samples: &[u64],
    mode: CountMode,
) -> Result<TowerReport, TowerError> {
    let ks: Vec<QuadraticField> = fields
        .par_iter()
        .map(|&d| QuadraticField::new(d))
        .collect::<Result<_, _>>()?;
    let bad: Vec<i64> = ks
        .iter()
        .filter(|k| k.class_number() != 1)
        .map(|k| k.d())
        .collect();
    if !bad.is_empty() {
        return Err(TowerError::UnsupportedFields(bad));
    }
    let x_max = samples.iter().copied().max().unwrap_or(0);

    let per_field: Vec<(Vec<(KummerClass, FieldKey)>, TowerChecks)> = ks
        .into_par_iter()
        .filter(|k| (k.d() as i128 * k.d() as i128) <= x_max as i128)
        .map(|k| {
            let dk2 = (k.d() * k.d()) as u64;
            let rel_bound = x_max / dk2;
            let tf = TowerField::new(k, rel_bound)?;
            let mut checks = TowerChecks::default();
            let mut out = Vec::new();
            for c in tf.extensions_up_to(rel_bound)? {
                checks = checks.merge(check(&tf, &c)?);
                let key = field_key(&tf, &c)?;
                out.push((c, key));
            }
            Ok((out, checks))
        })
        .collect::<Result<_, TowerError>>()?;

    let mut checks = TowerChecks::default();
    let mut all = Vec::new();
    for (v, c) in per_field {
        checks = checks.merge(c);
        all.extend(v);
    }
    all.sort_by(|(a, _), (b, _)| {
        (a.tower_disc, a.d_k, &a.square_class_id).cmp(&(b.tower_disc, b.d_k, &b.square_class_id))
    });

    let mut sorted_samples = samples.to_vec();
    sorted_samples.sort_unstable();
    let mut counts = Vec::with_capacity(samples.len());
    let mut seen: HashSet<FieldKey> = HashSet::new();
    let (mut z, mut z_d4, mut y, mut i) = (0u64, 0u64, 0u64, 0usize);
    for &x in &sorted_samples {
        while i < all.len() && all[i].0.tower_disc <= x as u128 {
            let (c, key) = &all[i];
            let new = match mode {
                CountMode::Tower => true,
                CountMode::Field => seen.insert(key.clone()),
            };
            if new {
                z += 1;
                if c.galois_type == GaloisType::D4 {
                    z_d4 += 1;
                } else {
                    y += 1;
                }
            }
            i += 1;
        }
        counts.push(TowerCount {
            x,
            z_tilde: z,
            z_d4,
            y,
            mode,
        });
    }
    // report in the caller's order
    let samples_out = samples
        .iter()
        .map(|x| *counts.iter().find(|c| c.x == *x).expect("sample present"))
        .collect();
    Ok(TowerReport {
        mode,
        samples: samples_out,
        towers: all.into_iter().map(|(c, _)| c).collect(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_small_bound() {
        let r = count_towers(&[-4], &[100], CountMode::Tower).unwrap();
        assert_eq!(r.samples[0].z_tilde, 0);
        let r = count_towers(&[-4], &[144, 256], CountMode::Tower).unwrap();
        assert_eq!(r.samples[0].z_tilde, 1);
        assert!(r.checks.clean());
    }

    #[test]
    fn field_mode_dedupes_biquadratics() {
        // two conjugate D4 fields of discriminant 117 over Q(sqrt -3), and
        // Q(i, sqrt 3) over each of its three quadratic subfields
        let fs = [-4, -3, 12];
        let t = count_towers(&fs, &[144], CountMode::Tower).unwrap();
        let f = count_towers(&fs, &[144], CountMode::Field).unwrap();
        assert_eq!((t.samples[0].z_tilde, t.samples[0].z_d4), (5, 2));
        assert_eq!((f.samples[0].z_tilde, f.samples[0].z_d4), (3, 2));
        assert!(t.checks.clean());
    }

    #[test]
    fn rejects_higher_class_number() {
        let err = count_towers(&[-4, -23, -20], &[1000], CountMode::Tower).unwrap_err();
        assert_eq!(err, TowerError::UnsupportedFields(vec![-23, -20]));
    }
}
