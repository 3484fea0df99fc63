//! Rectangular Temperley-Lieb diagrams `a -> b` (`a` points on the bottom,
//! `b` on the top) with vertical composition, and the Jones-Wenzl
//! idempotents built from them.

use std::collections::BTreeMap;

use super::{trace_gluing, Diagram};
use crate::scalar::{quantum_integer, Scalar};

/// A non-crossing pairing of `top + bottom` points. Points `0..top` are the
/// top edge left to right, `top..top + bottom` the bottom edge left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    top: usize,
    bottom: usize,
    partner: Vec<u8>,
}

/// A linear combination of morphisms with the same source and target.
pub type MorphismSum = BTreeMap<Morphism, Scalar>;

impl Morphism {
    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|x| if x < n { (x + n) as u8 } else { (x - n) as u8 }).collect();
        Morphism { top: n, bottom: n, partner }
    }

    /// The generator `e_i` on `n` strands (1-based `i`, `1 <= i < n`).
    pub fn e(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "e_{i} undefined on {n} strands");
        let mut m = Morphism::identity(n);
        let (a, b) = (i - 1, i);
        m.partner[a] = b as u8;
        m.partner[b] = a as u8;
        m.partner[n + a] = (n + b) as u8;
        m.partner[n + b] = (n + a) as u8;
        m
    }

    /// The cup `0 -> 2`.
    pub fn cup() -> Self {
        Morphism { top: 2, bottom: 0, partner: vec![1, 0] }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    fn partner(&self, x: usize) -> usize {
        self.partner[x] as usize
    }

    /// `self` on the left, `other` on the right.
    pub fn tensor(&self, other: &Morphism) -> Morphism {
        let (t1, b1, t2) = (self.top, self.bottom, other.top);
        let top = t1 + t2;
        // position of a point of either factor in the combined numbering
        let place1 = |x: usize| if x < t1 { x } else { top + (x - t1) };
        let place2 = |x: usize| if x < t2 { t1 + x } else { top + b1 + (x - t2) };
        let mut partner = vec![0u8; self.partner.len() + other.partner.len()];
        for x in 0..self.partner.len() {
            partner[place1(x)] = place1(self.partner(x)) as u8;
        }
        for x in 0..other.partner.len() {
            partner[place2(x)] = place2(other.partner(x)) as u8;
        }
        Morphism { top, bottom: b1 + other.bottom, partner }
    }

    /// `self` stacked on top of `below`; returns the loop count and `self ∘ below`.
    pub fn compose(&self, below: &Morphism) -> (u32, Morphism) {
        assert_eq!(self.bottom, below.top, "composition of incompatible morphisms");
        let (c, b, a) = (self.top, self.bottom, below.bottom);
        // combined numbering: self 0..c+b, below offset by c+b
        let off = c + b;
        let internal = |x: usize| if x < off { self.partner(x) } else { off + below.partner(x - off) };
        let glue = |x: usize| {
            if x >= c && x < off {
                Some(off + (x - c))
            } else if x >= off && x < off + b {
                Some(c + (x - off))
            } else {
                None
            }
        };
        let new_index = |x: usize| if x < c { x } else { c + (x - off - b) };
        let (loops, partner) = trace_gluing(off + b + a, c + a, internal, glue, new_index);
        (loops, Morphism { top: c, bottom: a, partner })
    }

    /// True if some bottom point is paired with another bottom point.
    pub fn has_bottom_turnback(&self) -> bool {
        (self.top..self.top + self.bottom).any(|x| self.partner(x) >= self.top)
    }

    /// Bend the bottom edge up around the right side, producing a diagram
    /// with `top + bottom` points on the top edge.
    pub fn to_diagram(&self) -> Diagram {
        let (t, b) = (self.top, self.bottom);
        let place = |x: usize| if x < t { x } else { t + (b - 1 - (x - t)) };
        let mut pairs = Vec::with_capacity((t + b) / 2);
        for x in 0..t + b {
            let y = self.partner(x);
            if x < y {
                let (i, j) = (place(x), place(y));
                pairs.push((i.min(j) + 1, i.max(j) + 1));
            }
        }
        Diagram::from_pairs(&pairs).expect("bending preserves planarity")
    }
}

fn add_term(acc: &mut MorphismSum, m: Morphism, c: Scalar) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// `f ∘ g` extended bilinearly, loops weighted by `delta`.
pub fn compose_sums(f: &MorphismSum, g: &MorphismSum) -> MorphismSum {
    let mut out = MorphismSum::new();
    for (a, ca) in f {
        for (b, cb) in g {
            let (loops, m) = a.compose(b);
            add_term(&mut out, m, ca.mul(cb).mul(&Scalar::delta_pow(loops as i32)));
        }
    }
    out
}

pub fn tensor_sums(f: &MorphismSum, g: &MorphismSum) -> MorphismSum {
    let mut out = MorphismSum::new();
    for (a, ca) in f {
        for (b, cb) in g {
            add_term(&mut out, a.tensor(b), ca.mul(cb));
        }
    }
    out
}

pub fn single(m: Morphism) -> MorphismSum {
    MorphismSum::from([(m, Scalar::one())])
}

/// The Jones-Wenzl idempotent `f^(n)` by Wenzl's recursion
/// `f^(k+1) = f^(k)⊗1 - [k]/[k+1] (f^(k)⊗1) e_k (f^(k)⊗1)`.
pub fn jones_wenzl(n: usize) -> MorphismSum {
    let mut f = single(Morphism::identity(n.min(1)));
    if n <= 1 {
        return f;
    }
    for k in 1..n {
        let fk1 = tensor_sums(&f, &single(Morphism::identity(1)));
        let ratio = quantum_integer(k as u32)
            .div(&quantum_integer(k as u32 + 1))
            .expect("quantum integers are nonzero polynomials");
        let middle = compose_sums(&compose_sums(&fk1, &single(Morphism::e(k + 1, k))), &fk1);
        let mut next = fk1;
        for (m, c) in middle {
            add_term(&mut next, m, c.mul(&ratio).neg());
        }
        f = next;
    }
    f
}
