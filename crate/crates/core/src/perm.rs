//! Permutations on `{0, …, degree−1}` with right action and diagrammatic
//! composition: `(x)(f·g) = ((x)f)g`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::GroupError;

/// A permutation stored as its image sequence: point `x` maps to `images[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from an image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation of the given degree from disjoint (or not) cycles.
    /// Later cycles are applied after earlier ones.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut perm = Perm::identity(degree);
        for cycle in cycles {
            let mut next = Perm::identity(degree);
            let mut used = vec![false; degree];
            for (i, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if used[pt] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {pt} repeated within one cycle"
                    )));
                }
                used[pt] = true;
                next.images[pt] = cycle[(i + 1) % cycle.len()];
            }
            perm = perm.then(&next);
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Diagrammatic composition: apply `self`, then `g`.
    pub fn then(&self, g: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), g.degree());
        Perm {
            images: self.images.iter().map(|&x| g.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }

    /// Decomposes into cycles of length ≥ 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses one generator line: either cycle notation `(0 1)(2 3)` (spaces or
/// commas inside cycles) or an image list `[1,0,3,2]`.
pub fn parse_perm(line: &str, degree: usize) -> Result<Perm, GroupError> {
    let line = line.trim();
    if line.starts_with('[') {
        let inner = line
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| GroupError::Parse(format!("malformed image list: {line}")))?;
        let images = inner
            .split(',')
            .map(|tok| tok.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GroupError::Parse(format!("bad image list {line}: {e}")))?;
        if images.len() != degree {
            return Err(GroupError::Parse(format!(
                "image list length {} does not match degree {degree}",
                images.len()
            )));
        }
        return Perm::from_images(images);
    }
    if !line.starts_with('(') {
        return Err(GroupError::Parse(format!(
            "expected cycle notation or image list, got: {line}"
        )));
    }
    let mut cycles = Vec::new();
    let mut rest = line;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| GroupError::Parse(format!("unbalanced cycles in {line}")))?;
        let close = rest[open..]
            .find(')')
            .map(|k| open + k)
            .ok_or_else(|| GroupError::Parse(format!("unbalanced cycles in {line}")))?;
        let body = &rest[open + 1..close];
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|tok| tok.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GroupError::Parse(format!("bad cycle in {line}: {e}")))?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = rest[close + 1..].trim_start();
    }
    Perm::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_diagrammatic() {
        // f = (0 1), g = (1 2); (0)(f·g) should be ((0)f)g = (1)g = 2
        let f = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let g = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(f.then(&g).apply(0), 2);
        assert_eq!(g.then(&f).apply(0), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Perm::from_images(vec![2, 0, 1, 4, 3]).unwrap();
        assert!(f.then(&f.inverse()).is_identity());
        assert!(f.inverse().then(&f).is_identity());
    }

    #[test]
    fn parse_cycle_and_image_forms() {
        let a = parse_perm("(0 1)(2 3)", 4).unwrap();
        let b = parse_perm("[1,0,3,2]", 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(0 1)(2 3)");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(parse_perm("(0 5)", 3).is_err());
        assert!(parse_perm("[1,0,2,3]", 3).is_err());
        assert!(parse_perm("(0 0 1)", 3).is_err());
    }

    #[test]
    fn order_of_cycle() {
        let c = Perm::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(c.order(), 6);
    }
}
