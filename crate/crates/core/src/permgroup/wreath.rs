use super::{BlockSystem, GroupError, PermGroup, Permutation};

/// Builds `inner ≀ top` in its imprimitive action on `e * d` points.
///
/// Point `j * e + i` is position `i` of block `j`. The generators are those
/// of `inner` acting on block 0 together with those of `top` permuting the
/// blocks.
pub fn wreath_product(
    inner: &PermGroup,
    top: &PermGroup,
    order_cap: usize,
) -> Result<PermGroup, GroupError> {
    if !inner.is_transitive() || !top.is_transitive() {
        return Err(GroupError::NotTransitive);
    }
    let e = inner.degree();
    let d = top.degree();
    let n = e * d;
    if n > u16::MAX as usize {
        return Err(GroupError::DegreeTooLarge(n));
    }
    let order = (inner.order() as u128)
        .checked_pow(d as u32)
        .and_then(|o| o.checked_mul(top.order() as u128));
    match order {
        Some(o) if o <= order_cap as u128 => {}
        _ => return Err(GroupError::TooLarge { cap: order_cap }),
    }
    let mut gens = Vec::new();
    for h in inner.generators() {
        let images = (0..n).map(|p| if p < e { h.image(p) } else { p }).collect();
        gens.push(Permutation::from_images(images)?);
    }
    for h in top.generators() {
        let images = (0..n).map(|p| h.image(p / e) * e + p % e).collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::generate(n, gens, order_cap)
}

/// The decomposition `G = S_e ≀ H` of a transitive group containing a
/// transposition.
#[derive(Clone, Debug)]
pub struct WreathDecomposition {
    pub block_size: usize,
    pub blocks: BlockSystem,
    /// Action on the blocks, blocks numbered by their smallest point.
    pub top: PermGroup,
}

/// Splits a transitive group with a transposition as `S_e ≀ H`.
///
/// Returns `None` when the group has no transposition. The result is
/// checked by comparing element sets with an explicitly built `S_e ≀ H`.
pub fn wreath_decompose(group: &PermGroup) -> Result<Option<WreathDecomposition>, GroupError> {
    let Some(t) = group.transpositions().next().cloned() else {
        return Ok(None);
    };
    let n = group.degree();
    let analysis = group.block_systems()?;
    if analysis.primitive {
        if factorial(n).is_none_or(|f| f != group.order() as u128) {
            return Err(GroupError::DecompositionMismatch);
        }
        return Ok(Some(WreathDecomposition {
            block_size: n,
            blocks: BlockSystem::single(n),
            top: PermGroup::trivial(1),
        }));
    }
    let support = t.cycles()[0].clone();
    let blocks = group.finest_block_system(support[0], support[1]);
    let e = blocks.block_size();
    let d = blocks.block_count();
    if d == 1 {
        return Err(GroupError::DecompositionMismatch);
    }
    let idx = blocks.block_index();
    let top_gens = group
        .generators()
        .iter()
        .map(|g| {
            let images = blocks.blocks().iter().map(|b| idx[g.image(b[0])]).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let top = PermGroup::generate(d, top_gens, group.order())?;

    // S_e ≀ H in standard labelling, then moved onto the block labelling
    let sym = symmetric_group(e, group.order()).map_err(|_| GroupError::DecompositionMismatch)?;
    let standard = match wreath_product(&sym, &top, group.order()) {
        Ok(w) => w,
        Err(GroupError::TooLarge { .. }) => return Err(GroupError::DecompositionMismatch),
        Err(err) => return Err(err),
    };
    let relabel: Vec<usize> = blocks.blocks().iter().flatten().copied().collect();
    let mut moved = Vec::with_capacity(standard.generators().len());
    for w in standard.generators() {
        let mut images = vec![0; n];
        for p in 0..n {
            images[relabel[p]] = relabel[w.image(p)];
        }
        moved.push(Permutation::from_images(images)?);
    }
    let rebuilt = PermGroup::generate(n, moved, group.order())
        .map_err(|_| GroupError::DecompositionMismatch)?;
    if !group.same_elements(&rebuilt) {
        return Err(GroupError::DecompositionMismatch);
    }
    Ok(Some(WreathDecomposition {
        block_size: e,
        blocks,
        top,
    }))
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

pub fn symmetric_group(n: usize, order_cap: usize) -> Result<PermGroup, GroupError> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
        gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
    }
    PermGroup::generate(n, gens, order_cap)
}

pub fn cyclic_group(n: usize) -> Result<PermGroup, GroupError> {
    let gens = vec![Permutation::from_cycles(n, &[(0..n).collect()])?];
    PermGroup::generate(n, gens, n.max(1))
}

#[cfg(test)]
mod tests {
    use super::super::{CyclotomicAction, DEFAULT_ORDER_CAP};
    use super::*;

    fn group(degree: usize, gens: &str) -> PermGroup {
        PermGroup::from_cycle_strings(degree, gens, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn wreath_orders() {
        let c2 = cyclic_group(2).unwrap();
        let c3 = cyclic_group(3).unwrap();
        let d4 = wreath_product(&c2, &c2, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!((d4.degree(), d4.order()), (4, 8));
        let w = wreath_product(&c2, &c3, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!((w.degree(), w.order()), (6, 24));
        assert!(w.is_transitive());
    }

    #[test]
    fn c2_wreath_c2_is_d4() {
        let c2 = cyclic_group(2).unwrap();
        let w = wreath_product(&c2, &c2, DEFAULT_ORDER_CAP).unwrap();
        // (1,2) and (1,3)(2,4) generate the D4 fixing the partition {12|34}
        let d4 = group(4, "(1,2);(1,3)(2,4)");
        assert!(w.same_elements(&d4));
        let blocks = w.block_systems().unwrap();
        assert!(blocks
            .systems
            .iter()
            .any(|s| s.blocks_one_based() == vec![vec![1, 2], vec![3, 4]]));
    }

    #[test]
    fn wreath_invariants() {
        let c2 = cyclic_group(2).unwrap();
        for h in [
            cyclic_group(3).unwrap(),
            cyclic_group(4).unwrap(),
            group(3, "(1,2);(1,2,3)"),
        ] {
            let w = wreath_product(&c2, &h, DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(w.a_invariant().unwrap(), num_rational::Ratio::new(1, 1));
            assert_eq!(w.b_rational().unwrap(), 1);
        }
    }

    #[test]
    fn wreath_cap() {
        let s4 = symmetric_group(4, DEFAULT_ORDER_CAP).unwrap();
        assert!(matches!(
            wreath_product(&s4, &s4, DEFAULT_ORDER_CAP),
            Err(GroupError::TooLarge { .. })
        ));
    }

    #[test]
    fn decompose_examples() {
        let d4 = group(4, "(1,2,3,4);(1,3)");
        let dec = wreath_decompose(&d4).unwrap().unwrap();
        assert_eq!(dec.block_size, 2);
        assert_eq!(dec.top.order(), 2);
        assert_eq!(dec.top.degree(), 2);

        let s4 = group(4, "(1,2);(1,2,3,4)");
        let dec = wreath_decompose(&s4).unwrap().unwrap();
        assert_eq!(dec.block_size, 4);
        assert_eq!(dec.top.order(), 1);

        assert!(wreath_decompose(&group(4, "(1,2,3,4)")).unwrap().is_none());
    }

    #[test]
    fn decompose_inverts_wreath() {
        for e in 2..=3 {
            let sym = symmetric_group(e, DEFAULT_ORDER_CAP).unwrap();
            for h in [
                cyclic_group(2).unwrap(),
                cyclic_group(3).unwrap(),
                group(3, "(1,2);(1,2,3)"),
            ] {
                let w = wreath_product(&sym, &h, DEFAULT_ORDER_CAP).unwrap();
                let dec = wreath_decompose(&w).unwrap().unwrap();
                assert_eq!(dec.block_size, e);
                assert!(dec.top.same_elements(&h));
            }
        }
    }

    #[test]
    fn b_survives_wreath_for_cyclotomic_fields() {
        // b(Q(zeta_3), C3) = 2 and the wreath product keeps it
        let c3 = cyclic_group(3).unwrap();
        let c2 = cyclic_group(2).unwrap();
        let w = wreath_product(&c3, &c2, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(w.exponent() % 3, 0);
        let act = CyclotomicAction::with_roots_of_unity(w.exponent());
        assert_eq!(w.b_invariant(&act).unwrap(), 2);
    }
}
