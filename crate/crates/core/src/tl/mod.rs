//! Temperley-Lieb diagrams: non-crossing pairings of `2n` points on the top
//! edge of a box, numbered left to right with the distinguished interval at
//! the top left.
//!
//! All primitive tangles here return loop counts, never scalars; the loop
//! weight `delta` is applied by the graded algebra.

mod backend;
pub mod morphism;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use backend::PlanarBasis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("stitch depth {j} exceeds available points (grades {left}, {right})")]
    StitchOutOfRange { j: usize, left: usize, right: usize },
    #[error("cannot cap a grade-0 diagram")]
    CapOnEmpty,
    #[error("grade mismatch: {0} vs {1}")]
    GradeMismatch(usize, usize),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("invalid diagram string {0:?}")]
    InvalidString(String),
}

/// Which end of the box a cap is placed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A basis diagram of `P_n`: a non-crossing perfect matching of `2n` points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    // 0-based partner of each point
    partner: Box<[u8]>,
}

impl Diagram {
    pub const MAX_GRADE: usize = 127;

    /// The grade-0 diagram (the unit `1`).
    pub fn empty() -> Self {
        Diagram { partner: Box::new([]) }
    }

    /// The single cup in `P_1`.
    pub fn cup() -> Self {
        Diagram { partner: Box::new([1, 0]) }
    }

    /// `k` cups side by side.
    pub fn cup_power(k: usize) -> Self {
        let partner: Vec<u8> = (0..2 * k).map(|i| (i ^ 1) as u8).collect();
        Diagram { partner: partner.into_boxed_slice() }
    }

    fn from_partner_unchecked(partner: Vec<u8>) -> Self {
        Diagram { partner: partner.into_boxed_slice() }
    }

    /// From 1-based pairs, e.g. `[(1, 4), (2, 3)]`.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, DiagramError> {
        let size = 2 * pairs.len();
        if pairs.len() > Self::MAX_GRADE {
            return Err(DiagramError::InvalidPairing("grade too large".into()));
        }
        let mut partner = vec![u8::MAX; size];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > size || b > size || a == b {
                return Err(DiagramError::InvalidPairing(format!("bad pair ({a}, {b})")));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return Err(DiagramError::InvalidPairing(format!("point reused in ({}, {})", a + 1, b + 1)));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        let d = Diagram::from_partner_unchecked(partner);
        if !d.is_non_crossing() {
            return Err(DiagramError::InvalidPairing("pairs cross".into()));
        }
        Ok(d)
    }

    /// Parse a balanced-parenthesis string.
    pub fn from_parens(s: &str) -> Result<Self, DiagramError> {
        let bytes = s.as_bytes();
        if !bytes.len().is_multiple_of(2) || bytes.len() > 2 * Self::MAX_GRADE {
            return Err(DiagramError::InvalidString(s.to_string()));
        }
        let mut partner = vec![0u8; bytes.len()];
        let mut stack = Vec::new();
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                b'(' => stack.push(i),
                b')' => {
                    let j = stack.pop().ok_or_else(|| DiagramError::InvalidString(s.to_string()))?;
                    partner[i] = j as u8;
                    partner[j] = i as u8;
                }
                _ => return Err(DiagramError::InvalidString(s.to_string())),
            }
        }
        if !stack.is_empty() {
            return Err(DiagramError::InvalidString(s.to_string()));
        }
        Ok(Diagram::from_partner_unchecked(partner))
    }

    fn is_non_crossing(&self) -> bool {
        // a perfect matching is non-crossing iff the paren reading matches it
        let mut stack = Vec::new();
        for i in 0..self.points() {
            let p = self.partner[i] as usize;
            if p > i {
                stack.push(i);
            } else if stack.pop() != Some(p) {
                return false;
            }
        }
        true
    }

    pub fn grade(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    /// 0-based partner of 0-based point `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i] as usize
    }

    /// 1-based pairs `(i, j)` with `i < j`, sorted by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.points())
            .filter(|&i| self.partner(i) > i)
            .map(|i| (i + 1, self.partner(i) + 1))
            .collect()
    }

    pub fn canonical_string(&self) -> String {
        (0..self.points()).map(|i| if self.partner(i) > i { '(' } else { ')' }).collect()
    }

    /// Side-by-side placement; `other`'s points shift right by `2n`.
    pub fn concat(&self, other: &Diagram) -> Diagram {
        let off = self.points() as u8;
        let partner: Vec<u8> = self.partner.iter().copied().chain(other.partner.iter().map(|&p| p + off)).collect();
        Diagram::from_partner_unchecked(partner)
    }

    /// Join the last `j` points of `self` to the first `j` points of `other`,
    /// innermost pair first. Returns the number of closed loops and the
    /// resulting diagram of grade `n + m - j`.
    pub fn stitch(&self, other: &Diagram, j: usize) -> Result<(u32, Diagram), DiagramError> {
        let (n2, m2) = (self.points(), other.points());
        if j > n2.min(m2) {
            return Err(DiagramError::StitchOutOfRange { j, left: self.grade(), right: other.grade() });
        }
        if j == 0 {
            return Ok((0, self.concat(other)));
        }
        // combined numbering: self 0..n2, other n2..n2+m2
        let internal = |x: usize| -> usize {
            if x < n2 {
                self.partner(x)
            } else {
                n2 + other.partner(x - n2)
            }
        };
        let glue = |x: usize| -> Option<usize> {
            if x < n2 {
                (x >= n2 - j).then(|| n2 + (n2 - 1 - x))
            } else {
                let t = x - n2;
                (t < j).then(|| n2 - 1 - t)
            }
        };
        let new_index = |x: usize| -> usize {
            if x < n2 {
                x
            } else {
                (n2 - j) + (x - n2 - j)
            }
        };
        let (loops, partner) = trace_gluing(n2 + m2, n2 + m2 - 2 * j, internal, glue, new_index);
        Ok((loops, Diagram::from_partner_unchecked(partner)))
    }

    /// Place a cap on the two leftmost or two rightmost points.
    pub fn cap(&self, side: Side) -> Result<(u32, Diagram), DiagramError> {
        let np = self.points();
        if np == 0 {
            return Err(DiagramError::CapOnEmpty);
        }
        let (a, b) = match side {
            Side::Left => (0, 1),
            Side::Right => (np - 2, np - 1),
        };
        let shift = |x: usize| -> u8 {
            match side {
                Side::Left => (x - 2) as u8,
                Side::Right => x as u8,
            }
        };
        let mut partner = vec![0u8; np - 2];
        let pa = self.partner(a);
        let pb = self.partner(b);
        // unless a and b were paired, their partners become paired
        for x in 0..np {
            if x == a || x == b {
                continue;
            }
            let mut p = self.partner(x);
            if p == a {
                p = pb;
            } else if p == b {
                p = pa;
            }
            partner[shift(x) as usize] = shift(p);
        }
        Ok((u32::from(pa == b), Diagram::from_partner_unchecked(partner)))
    }

    /// Number of loops formed by gluing `self` to the mirror image of `other`,
    /// point `i` to point `i`.
    pub fn close_pairing(&self, other: &Diagram) -> Result<u32, DiagramError> {
        if self.grade() != other.grade() {
            return Err(DiagramError::GradeMismatch(self.grade(), other.grade()));
        }
        let np = self.points();
        let mut visited = vec![false; np];
        let mut loops = 0;
        for start in 0..np {
            if visited[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                let y = self.partner(x);
                visited[y] = true;
                x = other.partner(y);
            }
        }
        Ok(loops)
    }

    /// Mirror image: pair `(i, j)` goes to `(2n+1-j, 2n+1-i)`.
    pub fn reflect(&self) -> Diagram {
        let np = self.points();
        let mut partner = vec![0u8; np];
        for i in 0..np {
            partner[np - 1 - i] = (np - 1 - self.partner(i)) as u8;
        }
        Diagram::from_partner_unchecked(partner)
    }
}

impl Ord for Diagram {
    /// Grade first, then canonical string with `(` before `)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| {
            for i in 0..self.points() {
                let a = self.partner(i) > i;
                let b = other.partner(i) > i;
                if a != b {
                    return if a { Ordering::Less } else { Ordering::Greater };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({:?})", self.canonical_string())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.grade() == 0 {
            write!(f, "1")
        } else {
            write!(f, "{}", self.canonical_string())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    n: usize,
    d: String,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramRepr { n: self.grade(), d: self.canonical_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = DiagramRepr::deserialize(d)?;
        let diagram = Diagram::from_parens(&repr.d).map_err(serde::de::Error::custom)?;
        if diagram.grade() != repr.n {
            return Err(serde::de::Error::custom(DiagramError::GradeMismatch(repr.n, diagram.grade())));
        }
        Ok(diagram)
    }
}

/// Follow strands through a gluing of two pieces.
///
/// `internal` is the pairing inside each piece (on the combined numbering),
/// `glue` maps a glued point to the point it is attached to and is `None` on
/// free points, and `new_index` renumbers free points. Returns the number of
/// closed loops and the pairing of the free points.
pub(crate) fn trace_gluing(
    total: usize,
    out_points: usize,
    internal: impl Fn(usize) -> usize,
    glue: impl Fn(usize) -> Option<usize>,
    new_index: impl Fn(usize) -> usize,
) -> (u32, Vec<u8>) {
    let mut partner = vec![0u8; out_points];
    let mut visited = vec![false; total];
    for start in 0..total {
        if visited[start] || glue(start).is_some() {
            continue;
        }
        let mut cur = start;
        visited[cur] = true;
        let end = loop {
            let q = internal(cur);
            visited[q] = true;
            match glue(q) {
                None => break q,
                Some(g) => {
                    visited[g] = true;
                    cur = g;
                }
            }
        };
        partner[new_index(start)] = new_index(end) as u8;
        partner[new_index(end)] = new_index(start) as u8;
    }
    let mut loops = 0;
    for start in 0..total {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut cur = start;
        while !visited[cur] {
            visited[cur] = true;
            let q = internal(cur);
            visited[q] = true;
            cur = glue(q).expect("unvisited points lie on closed loops");
        }
    }
    (loops, partner)
}

/// All diagrams of grade `n`, in canonical-string order (`(` before `)`).
pub fn enumerate_diagrams(n: usize) -> Vec<Diagram> {
    fn extend(buf: &mut Vec<u8>, open: usize, close: usize, n: usize, out: &mut Vec<Diagram>) {
        if buf.len() == 2 * n {
            let s = std::str::from_utf8(buf).expect("ascii");
            out.push(Diagram::from_parens(s).expect("balanced by construction"));
            return;
        }
        if open < n {
            buf.push(b'(');
            extend(buf, open + 1, close, n, out);
            buf.pop();
        }
        if close < open {
            buf.push(b')');
            extend(buf, open, close + 1, n, out);
            buf.pop();
        }
    }
    let mut out = Vec::with_capacity(catalan(n) as usize);
    extend(&mut Vec::with_capacity(2 * n), 0, 0, n, &mut out);
    out
}

/// The Catalan number `C_n`.
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        Diagram::from_parens(s).unwrap()
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Diagram::from_pairs(&[(1, 2), (3, 4)]).unwrap().canonical_string(), "()()");
        assert_eq!(Diagram::from_pairs(&[(1, 4), (2, 3)]).unwrap().canonical_string(), "(())");
        assert_eq!(Diagram::from_pairs(&[(1, 2), (3, 6), (4, 5)]).unwrap().canonical_string(), "()(())");
    }

    #[test]
    fn rejects_crossing_and_bad_input() {
        assert!(Diagram::from_pairs(&[(1, 3), (2, 4)]).is_err());
        assert!(Diagram::from_pairs(&[(1, 2), (2, 3)]).is_err());
        assert!(Diagram::from_parens("(()").is_err());
        assert!(Diagram::from_parens(")(").is_err());
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(enumerate_diagrams(0), vec![Diagram::empty()]);
        let two: Vec<String> = enumerate_diagrams(2).iter().map(|x| x.canonical_string()).collect();
        assert_eq!(two, vec!["(())", "()()"]);
        assert_eq!(enumerate_diagrams(3).len(), 5);
    }

    #[test]
    fn concat_examples() {
        assert_eq!(Diagram::cup().concat(&Diagram::cup()), Diagram::cup_power(2));
        assert_eq!(Diagram::empty().concat(&d("(())")), d("(())"));
        assert_eq!(d("(())").concat(&Diagram::cup()), d("(())()"));
    }

    #[test]
    fn stitch_examples() {
        let cup = Diagram::cup();
        assert_eq!(cup.stitch(&cup, 2).unwrap(), (1, Diagram::empty()));
        assert_eq!(cup.stitch(&cup, 1).unwrap(), (0, cup.clone()));
        assert_eq!(d("(())").stitch(&d("()"), 0).unwrap(), (0, d("(())()")));
        assert!(cup.stitch(&cup, 3).is_err());
    }

    #[test]
    fn cap_examples() {
        assert_eq!(Diagram::cup().cap(Side::Right).unwrap(), (1, Diagram::empty()));
        assert_eq!(d("(())").cap(Side::Right).unwrap(), (0, Diagram::cup()));
        assert_eq!(d("()()").cap(Side::Left).unwrap(), (1, Diagram::cup()));
        assert_eq!(Diagram::empty().cap(Side::Left), Err(DiagramError::CapOnEmpty));
    }

    #[test]
    fn cap_is_a_depth_two_stitch_with_a_cup() {
        for n in 1..=5 {
            for x in enumerate_diagrams(n) {
                assert_eq!(x.cap(Side::Right).unwrap(), x.stitch(&Diagram::cup(), 2).unwrap());
                assert_eq!(x.cap(Side::Left).unwrap(), Diagram::cup().stitch(&x, 2).unwrap());
            }
        }
    }

    #[test]
    fn close_examples() {
        let c2 = Diagram::cup_power(2);
        assert_eq!(Diagram::cup().close_pairing(&Diagram::cup()).unwrap(), 1);
        assert_eq!(c2.close_pairing(&c2).unwrap(), 2);
        assert_eq!(c2.close_pairing(&d("(())")).unwrap(), 1);
        assert!(c2.close_pairing(&Diagram::cup()).is_err());
    }

    #[test]
    fn reflect_examples() {
        let c2 = Diagram::cup_power(2);
        assert_eq!(c2.reflect(), c2);
        let x = Diagram::from_pairs(&[(1, 2), (3, 6), (4, 5)]).unwrap();
        assert_eq!(x.reflect(), Diagram::from_pairs(&[(5, 6), (1, 4), (2, 3)]).unwrap());
        for n in 0..=4 {
            for x in enumerate_diagrams(n) {
                assert_eq!(x.reflect().reflect(), x);
            }
        }
    }

    #[test]
    fn json_encoding() {
        let j = serde_json::to_string(&d("(())")).unwrap();
        assert_eq!(j, r#"{"n":2,"d":"(())"}"#);
        assert!(serde_json::from_str::<Diagram>(r#"{"n":3,"d":"(())"}"#).is_err());
    }
}
