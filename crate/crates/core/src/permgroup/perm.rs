use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A bijection of `{0, .., n-1}` stored as its image array.
///
/// Permutations act on the right: `x.apply(g).apply(h) == x.apply(g.then(h))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(GroupError::IndexOutOfRange { index: x, degree: n });
            }
            if seen[x] {
                return Err(GroupError::NotBijection(x));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(GroupError::IndexOutOfRange { index: x, degree });
                }
                if touched[x] {
                    return Err(GroupError::NotBijection(x));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.images().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Transports the permutation along a relabelling `map` (old index -> new index).
    pub fn relabel(&self, map: &[usize]) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[map[i]] = map[x as usize] as u32;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = GroupError;

    fn try_from(images: Vec<u32>) -> Result<Self, Self::Error> {
        Permutation::from_images(images.into_iter().map(|x| x as usize).collect())
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self)
    }
}

/// Parses cycle notation such as `"(0 1 2)(3 4)"`. Commas are accepted as separators.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation, GroupError> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| GroupError::Parse(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {text:?}")))?;
        let body = &open[..close];
        let cycle = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| GroupError::Parse(format!("bad point {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_action() {
        let g = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let h = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let gh = g.then(&h);
        for x in 0..3 {
            assert_eq!(gh.apply(x), h.apply(g.apply(x)));
        }
        assert_eq!(gh.apply(0), 2);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(matches!(
            Permutation::from_images(vec![0, 0, 1]),
            Err(GroupError::NotBijection(0))
        ));
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = parse_cycles(6, "(0 1 2)(3 4)").unwrap();
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(parse_cycles(4, "()").unwrap(), Permutation::identity(4));
        assert!(parse_cycles(3, "(0 1 5)").is_err());
        assert!(parse_cycles(3, "(0 1").is_err());
        assert!(parse_cycles(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn inverse_and_pow() {
        let p = parse_cycles(5, "(0 1 2 3 4)").unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.pow(5).is_identity());
        assert_eq!(p.pow(2).apply(0), 2);
    }

    #[test]
    fn json_is_image_array() {
        let p = parse_cycles(3, "(0 2)").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,0]");
        let q: Permutation = serde_json::from_str("[2,1,0]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
