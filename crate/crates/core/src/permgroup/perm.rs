use std::fmt;

use num_integer::Integer;

use super::GroupError;

/// A permutation of `{0, .., n-1}`; printed and parsed with 1-based points.
///
/// Composition follows the right-action convention: `g.then(h)` maps
/// `x` to `h(g(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(GroupError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotBijective);
            }
            seen[i] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of degree `degree` from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(GroupError::NotBijective);
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1,2)(3,4)` or `()` over `{1..degree}`.
    pub fn parse(text: &str, degree: usize) -> Result<Self, GroupError> {
        let err = |token: &str, reason: &str| GroupError::Parse {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(err(text, "empty permutation"));
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(err(rest, "expected '('"));
            };
            let Some(close) = body.find(')') else {
                return Err(err(rest, "unclosed cycle"));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(err(inner, "nested '('"));
            }
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| err(tok, "not a positive integer"))?;
                if p == 0 || p > degree {
                    return Err(err(tok, "point outside 1..degree"));
                }
                if used[p - 1] {
                    return Err(err(tok, "repeated point"));
                }
                used[p - 1] = true;
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Self {
            images: inv.into_boxed_slice(),
        }
    }

    /// `s^-1 * self * s`.
    pub fn conjugate_by(&self, s: &Self) -> Self {
        let mut out = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[s.images[i] as usize] = s.images[j as usize];
        }
        Self {
            images: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        // walk each cycle instead of repeated squaring
        let n = self.degree();
        let mut out = vec![0u16; n];
        for cycle in self.cycles_with_fixed() {
            let len = cycle.len() as u64;
            let shift = (exp % len) as usize;
            for (k, &p) in cycle.iter().enumerate() {
                out[p] = cycle[(k + shift) % cycle.len()] as u16;
            }
        }
        Self {
            images: out.into_boxed_slice(),
        }
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles_with_fixed().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn orbit_count(&self) -> usize {
        self.cycles_with_fixed().len()
    }

    /// `n` minus the number of orbits of `<g>`.
    pub fn ind(&self) -> u32 {
        (self.degree() - self.orbit_count()) as u32
    }

    pub fn order(&self) -> u64 {
        self.cycles_with_fixed()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_transposition(&self) -> bool {
        self.ind() == 1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t = Permutation::parse("(1,2)", 4).unwrap();
        assert_eq!(t.image(0), 1);
        assert_eq!(t.image(1), 0);
        assert_eq!(t.image(2), 2);
        assert!(Permutation::parse("()", 3).unwrap().is_identity());
        let p = Permutation::parse("(1,2,3)(4,5)", 5).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn parse_errors_name_the_token() {
        match Permutation::parse("(1,2)(2,3)", 4) {
            Err(GroupError::Parse { token, .. }) => assert_eq!(token, "2"),
            other => panic!("unexpected {other:?}"),
        }
        match Permutation::parse("(1,5)", 4) {
            Err(GroupError::Parse { token, .. }) => assert_eq!(token, "5"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Permutation::parse("(1,x)", 4).is_err());
        assert!(Permutation::parse("(1,2", 4).is_err());
        assert!(Permutation::parse("1,2)", 4).is_err());
        assert!(Permutation::parse("", 4).is_err());
    }

    #[test]
    fn ind_values() {
        assert_eq!(Permutation::parse("(1,2)", 4).unwrap().ind(), 1);
        assert_eq!(Permutation::parse("(1,2,3,4)", 4).unwrap().ind(), 3);
        assert_eq!(Permutation::identity(6).ind(), 0);
    }

    #[test]
    fn algebra() {
        let a = Permutation::parse("(1,2,3,4)", 4).unwrap();
        let b = Permutation::parse("(1,3)", 4).unwrap();
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.pow(4), Permutation::identity(4));
        assert_eq!(a.pow(3), a.inverse());
        assert_eq!(a.pow(2), a.then(&a));
        let c = a.conjugate_by(&b);
        assert_eq!(c, b.inverse().then(&a).then(&b));
        assert_eq!(c.cycle_type(), a.cycle_type());
    }
}
