use rayon::prelude::*;
use serde::Serialize;

use super::local::{galois_type, lemma_tower_witness, relative_discriminant, GaloisType};
use super::TowerError;
use crate::quadfield::{
    prime_elements, PrimeElement, PrimeIdealKey, QuadInt, QuadOrder, QuadraticField,
};

/// Canonical label of a square class `u * pi_1 ... pi_r`: the index of the
/// unit representative and the sorted prime ideals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SquareClassId {
    pub unit: u8,
    pub primes: Vec<PrimeIdealKey>,
}

/// A quadratic extension `L = K(sqrt(delta))` with its discriminant data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerClass {
    pub d_k: i64,
    pub delta: QuadInt,
    pub square_class_id: SquareClassId,
    /// `N(d_{L/K})`.
    pub rel_disc_norm: u64,
    /// `N(d_{L/Q}) = d_K^2 N(d_{L/K})`.
    pub tower_disc: u128,
    pub galois_type: GaloisType,
    pub witness: Option<u64>,
}

/// A class number one field prepared for Kummer enumeration.
#[derive(Clone, Debug)]
pub struct TowerField {
    field: QuadraticField,
    order: QuadOrder,
    primes: Vec<PrimeElement>,
    units: Vec<QuadInt>,
}

/// Representatives of `O_K^* / O_K^*2`.
fn unit_classes(field: &QuadraticField, o: &QuadOrder) -> Result<Vec<QuadInt>, TowerError> {
    let one = QuadInt::ONE;
    let minus = QuadInt::rational(-1);
    Ok(match field.d() {
        // -1 = i^2, so i is the only nontrivial class
        -4 => vec![one, QuadInt::new(0, 1)],
        // mu_6 / mu_3: -1 generates
        d if d < 0 => vec![one, minus],
        _ => {
            // -1 is never a square in a real field and eps is not +- a square
            let (t, u) = field
                .small_unit()
                .ok_or(crate::quadfield::QuadError::Overflow)?;
            let eps = QuadInt::new((t - u * o.t) / 2, u);
            vec![one, minus, eps, QuadInt::new(-eps.a, -eps.b)]
        }
    })
}

impl TowerField {
    /// Prepares `field` for extensions whose prime support has norm at most
    /// `bound`.
    pub fn new(field: QuadraticField, bound: u64) -> Result<Self, TowerError> {
        if field.class_number() != 1 {
            return Err(TowerError::UnsupportedFields(vec![field.d()]));
        }
        let order = field.order();
        let primes = prime_elements(&field, bound)?;
        let units = unit_classes(&field, &order)?;
        Ok(Self {
            field,
            order,
            primes,
            units,
        })
    }

    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    pub fn order(&self) -> &QuadOrder {
        &self.order
    }

    pub fn primes(&self) -> &[PrimeElement] {
        &self.primes
    }

    pub fn unit_classes(&self) -> &[QuadInt] {
        &self.units
    }

    /// Discriminant data of `K(sqrt(delta))` for a squarefree `delta`.
    pub fn classify(&self, delta: QuadInt, id: SquareClassId) -> Result<KummerClass, TowerError> {
        let o = &self.order;
        if o.is_square(delta)? {
            return Err(TowerError::SquareDelta {
                d: o.d,
                delta: delta.to_string(),
            });
        }
        let rel = relative_discriminant(o, delta)?;
        let d = self.field.d();
        let dk2 = (d as i128 * d as i128) as u128;
        Ok(KummerClass {
            d_k: d,
            delta,
            square_class_id: id,
            rel_disc_norm: rel,
            tower_disc: dk2 * rel as u128,
            galois_type: galois_type(o, delta)?,
            witness: lemma_tower_witness(d, rel),
        })
    }

    /// One representative per square class `u pi_1 ... pi_r` with
    /// `prod N(pi_i) <= bound`, the trivial class excluded.
    pub fn squarefree_elements(&self, bound: u64) -> Result<Vec<KummerClass>, TowerError> {
        let n = self.primes.partition_point(|p| p.norm <= bound);
        let mut out = self.with_units(QuadInt::ONE, &[])?;
        let branches: Vec<Vec<KummerClass>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = Vec::new();
                let first = &self.primes[i];
                self.dfs(
                    i,
                    first.element,
                    first.norm,
                    &mut vec![first.key],
                    bound,
                    n,
                    &mut acc,
                )?;
                Ok(acc)
            })
            .collect::<Result<_, TowerError>>()?;
        out.extend(branches.into_iter().flatten());
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        last: usize,
        elem: QuadInt,
        norm: u64,
        keys: &mut Vec<PrimeIdealKey>,
        bound: u64,
        n: usize,
        acc: &mut Vec<KummerClass>,
    ) -> Result<(), TowerError> {
        acc.extend(self.with_units(elem, keys)?);
        for j in last + 1..n {
            let p = &self.primes[j];
            let Some(next) = norm.checked_mul(p.norm).filter(|&v| v <= bound) else {
                break;
            };
            keys.push(p.key);
            let e = self.order.mul(elem, p.element)?;
            self.dfs(j, e, next, keys, bound, n, acc)?;
            keys.pop();
        }
        Ok(())
    }

    fn with_units(
        &self,
        elem: QuadInt,
        keys: &[PrimeIdealKey],
    ) -> Result<Vec<KummerClass>, TowerError> {
        let mut out = Vec::with_capacity(self.units.len());
        for (i, &u) in self.units.iter().enumerate() {
            if i == 0 && keys.is_empty() {
                continue;
            }
            let delta = self.order.mul(u, elem)?;
            let id = SquareClassId {
                unit: i as u8,
                primes: keys.to_vec(),
            };
            out.push(self.classify(delta, id)?);
        }
        Ok(out)
    }

    /// All quadratic extensions with `N(d_{L/K}) <= bound`.
    ///
    /// The odd part of `d_{L/K}` is the norm of the odd part of `(delta)`
    /// and every prime over 2 dividing `delta` contributes at least its
    /// norm, so the prime support bound `bound` is enough.
    pub fn extensions_up_to(&self, bound: u64) -> Result<Vec<KummerClass>, TowerError> {
        let mut all = self.squarefree_elements(bound)?;
        all.retain(|c| c.rel_disc_norm <= bound);
        all.sort_by(|a, b| {
            (a.rel_disc_norm, &a.square_class_id).cmp(&(b.rel_disc_norm, &b.square_class_id))
        });
        Ok(all)
    }
}
