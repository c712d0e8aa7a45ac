use std::collections::HashSet;

use num_integer::{Integer, Roots};

/// A binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }
}

/// Reduced primitive positive definite forms of discriminant `d < 0`:
/// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn reduced_definite_forms(d: i64) -> Vec<Form> {
    assert!(d < 0 && d.rem_euclid(4) <= 1);
    let n = -d;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            let f = Form { a, b, c };
            if f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// Class number of an imaginary quadratic discriminant by counting reduced
/// forms.
pub fn class_number_definite(d: i64) -> u64 {
    reduced_definite_forms(d).len() as u64
}

/// Reduced indefinite forms of a positive nonsquare discriminant:
/// `0 < b < sqrt(D)` and `sqrt(D) - b < 2|a| < sqrt(D) + b`.
pub fn reduced_indefinite_forms(d: i64) -> Vec<Form> {
    assert!(d > 0);
    let s = d.sqrt();
    assert!(s * s != d, "discriminant must not be a square");
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let n = (d - b * b) / 4;
        let lo = (s - b + 2) / 2; // ceil((s - b + 1) / 2)
        let hi = (s + b) / 2;
        for abs_a in lo.max(1)..=hi {
            if n % abs_a != 0 {
                continue;
            }
            for a in [abs_a, -abs_a] {
                let f = Form { a, b, c: -n / a };
                if f.is_primitive() {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// One reduction step on a reduced indefinite form; a permutation of the
/// reduced forms whose cycles are the proper equivalence classes.
pub fn rho(f: Form, d: i64) -> Form {
    let s = d.sqrt();
    let c2 = 2 * f.c.abs();
    // b' = -b mod 2|c| with s - 2|c| < b' <= s
    let shift = (s + f.b).rem_euclid(c2);
    let b = s - shift;
    let c = (b * b - d) / (4 * f.c);
    Form { a: f.c, b, c }
}

/// Number of proper equivalence classes (the narrow class number for a
/// fundamental discriminant `d > 0`).
pub fn narrow_class_number(d: i64) -> u64 {
    let forms = reduced_indefinite_forms(d);
    let mut seen: HashSet<Form> = HashSet::with_capacity(forms.len());
    let mut cycles = 0;
    for f in forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        while seen.insert(g) {
            g = rho(g, d);
        }
        debug_assert_eq!(g, f, "rho must permute reduced forms");
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definite_examples() {
        assert_eq!(class_number_definite(-4), 1);
        assert_eq!(class_number_definite(-3), 1);
        let mut f = reduced_definite_forms(-23);
        f.sort();
        assert_eq!(
            f,
            vec![
                Form { a: 1, b: 1, c: 6 },
                Form { a: 2, b: -1, c: 3 },
                Form { a: 2, b: 1, c: 3 }
            ]
        );
        assert_eq!(class_number_definite(-84), 4);
        assert_eq!(class_number_definite(-163), 1);
    }

    #[test]
    fn indefinite_examples() {
        // narrow class numbers: Q(sqrt 3) has 2, Q(sqrt 2), Q(sqrt 5) have 1
        assert_eq!(narrow_class_number(5), 1);
        assert_eq!(narrow_class_number(8), 1);
        assert_eq!(narrow_class_number(12), 2);
        assert_eq!(narrow_class_number(40), 2);
        assert_eq!(narrow_class_number(60), 4);
        for f in reduced_indefinite_forms(229) {
            assert_eq!(f.discriminant(), 229);
            let g = rho(f, 229);
            assert_eq!(g.discriminant(), 229);
        }
    }
}
