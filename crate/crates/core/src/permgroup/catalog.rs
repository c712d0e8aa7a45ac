use super::wreath::{cyclic_group, symmetric_group, wreath_product};
use super::{GroupError, PermGroup, DEFAULT_ORDER_CAP};

/// A named transitive group used by sweeps and acceptance checks.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PermGroup,
}

fn from_gens(name: &str, degree: usize, gens: &str) -> Result<CatalogEntry, GroupError> {
    Ok(CatalogEntry {
        name: name.to_string(),
        group: PermGroup::from_cycle_strings(degree, gens, DEFAULT_ORDER_CAP)?,
    })
}

fn wreath(name: &str, inner: &PermGroup, top: &PermGroup) -> Result<CatalogEntry, GroupError> {
    Ok(CatalogEntry {
        name: name.to_string(),
        group: wreath_product(inner, top, DEFAULT_ORDER_CAP)?,
    })
}

/// Small transitive groups of degree 2 to 8, with a mix of primitive,
/// imprimitive, regular and wreath-type actions.
pub fn catalog() -> Result<Vec<CatalogEntry>, GroupError> {
    let c2 = cyclic_group(2)?;
    let c3 = cyclic_group(3)?;
    let c4 = cyclic_group(4)?;
    let s3 = symmetric_group(3, DEFAULT_ORDER_CAP)?;
    let c2c2 = wreath_product(&c2, &c2, DEFAULT_ORDER_CAP)?;
    Ok(vec![
        from_gens("C2", 2, "(1,2)")?,
        from_gens("C3", 3, "(1,2,3)")?,
        from_gens("S3", 3, "(1,2);(1,2,3)")?,
        from_gens("C4", 4, "(1,2,3,4)")?,
        from_gens("V4", 4, "(1,2)(3,4);(1,3)(2,4)")?,
        from_gens("D4", 4, "(1,2,3,4);(1,3)")?,
        from_gens("A4", 4, "(1,2,3);(2,3,4)")?,
        from_gens("S4", 4, "(1,2);(1,2,3,4)")?,
        from_gens("C5", 5, "(1,2,3,4,5)")?,
        from_gens("D5", 5, "(1,2,3,4,5);(2,5)(3,4)")?,
        from_gens("F20", 5, "(1,2,3,4,5);(2,3,5,4)")?,
        from_gens("A5", 5, "(1,2,3,4,5);(1,2,3)")?,
        from_gens("S5", 5, "(1,2);(1,2,3,4,5)")?,
        from_gens("C6", 6, "(1,2,3,4,5,6)")?,
        from_gens("D6", 6, "(1,2,3,4,5,6);(1,6)(2,5)(3,4)")?,
        from_gens("S3(6)", 6, "(1,2,3)(4,5,6);(1,4)(2,6)(3,5)")?,
        wreath("C2wrC3", &c2, &c3)?,
        wreath("C2wrS3", &c2, &s3)?,
        wreath("S3wrC2", &s3, &c2)?,
        wreath("C3wrC2", &c3, &c2)?,
        from_gens("PGL(2,5)", 6, "(1,2,3,4,5);(1,6)(2,5)(3,4);(2,3,5,4)")?,
        from_gens("S6", 6, "(1,2);(1,2,3,4,5,6)")?,
        from_gens("C7", 7, "(1,2,3,4,5,6,7)")?,
        from_gens("F21", 7, "(1,2,3,4,5,6,7);(2,3,5)(4,7,6)")?,
        from_gens("S7", 7, "(1,2);(1,2,3,4,5,6,7)")?,
        from_gens("C8", 8, "(1,2,3,4,5,6,7,8)")?,
        wreath("C2wrC4", &c2, &c4)?,
        wreath("C2wrC2wrC2", &c2, &c2c2)?,
        wreath("S4wrC2", &symmetric_group(4, DEFAULT_ORDER_CAP)?, &c2)?,
        wreath("S2wrS4", &c2, &symmetric_group(4, DEFAULT_ORDER_CAP)?)?,
        wreath("C4wrC2", &c4, &c2)?,
    ])
}
