//! Formal brackets (binary trees over `X0, X1, X2`) and the Hall order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Generator of the free Lie algebra: `X0` is the drift, `X1`, `X2` the controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    X0,
    X1,
    X2,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::X0, Generator::X1, Generator::X2];

    pub fn index(self) -> usize {
        match self {
            Generator::X0 => 0,
            Generator::X1 => 1,
            Generator::X2 => 2,
        }
    }

    /// Exchanges the two control generators.
    pub fn swapped(self) -> Generator {
        match self {
            Generator::X0 => Generator::X0,
            Generator::X1 => Generator::X2,
            Generator::X2 => Generator::X1,
        }
    }
}

/// Occurrence counts of a bracket: total length and per-generator counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Counts {
    pub len: usize,
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
}

impl Counts {
    /// Number of control occurrences `n1 + n2`.
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    fn of(g: Generator) -> Counts {
        let mut c = Counts { len: 1, ..Counts::default() };
        match g {
            Generator::X0 => c.n0 = 1,
            Generator::X1 => c.n1 = 1,
            Generator::X2 => c.n2 = 1,
        }
        c
    }

    fn add(self, o: Counts) -> Counts {
        Counts { len: self.len + o.len, n0: self.n0 + o.n0, n1: self.n1 + o.n1, n2: self.n2 + o.n2 }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Node {
    left: Bracket,
    right: Bracket,
    counts: Counts,
}

/// A formal bracket: a generator or an ordered pair of brackets.
///
/// Cloning is cheap; subtrees are shared.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bracket(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Gen(Generator),
    Pair(Arc<Node>),
}

impl Bracket {
    pub fn gen(g: Generator) -> Bracket {
        Bracket(Repr::Gen(g))
    }

    pub fn x0() -> Bracket {
        Bracket::gen(Generator::X0)
    }

    pub fn x1() -> Bracket {
        Bracket::gen(Generator::X1)
    }

    pub fn x2() -> Bracket {
        Bracket::gen(Generator::X2)
    }

    /// Formal pair `(left, right)`.
    pub fn pair(left: Bracket, right: Bracket) -> Bracket {
        let counts = left.counts().add(right.counts());
        Bracket(Repr::Pair(Arc::new(Node { left, right, counts })))
    }

    /// `b 0^nu`: right-iterated bracket with `X0`.
    pub fn with_drift(&self, nu: usize) -> Bracket {
        let mut b = self.clone();
        for _ in 0..nu {
            b = Bracket::pair(b, Bracket::x0());
        }
        b
    }

    pub fn generator(&self) -> Option<Generator> {
        match &self.0 {
            Repr::Gen(g) => Some(*g),
            Repr::Pair(_) => None,
        }
    }

    pub fn children(&self) -> Option<(&Bracket, &Bracket)> {
        match &self.0 {
            Repr::Gen(_) => None,
            Repr::Pair(node) => Some((&node.left, &node.right)),
        }
    }

    pub fn left(&self) -> Option<&Bracket> {
        self.children().map(|(l, _)| l)
    }

    pub fn right(&self) -> Option<&Bracket> {
        self.children().map(|(_, r)| r)
    }

    pub fn counts(&self) -> Counts {
        match &self.0 {
            Repr::Gen(g) => Counts::of(*g),
            Repr::Pair(node) => node.counts,
        }
    }

    /// Number of generator occurrences; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.counts().len
    }

    /// Number of control occurrences.
    pub fn n(&self) -> usize {
        self.counts().n()
    }

    /// Image under the automorphism exchanging `X1` and `X2`.
    pub fn swapped(&self) -> Bracket {
        match &self.0 {
            Repr::Gen(g) => Bracket::gen(g.swapped()),
            Repr::Pair(node) => Bracket::pair(node.left.swapped(), node.right.swapped()),
        }
    }

    /// Left factor used by the Hall axioms: the left child of a pair.
    fn lambda(&self) -> Option<&Bracket> {
        self.left()
    }

    /// Checks the Hall axioms recursively: every internal node `(a, b)` has
    /// `a < b` and either `b` a generator or `lambda(b) <= a`.
    pub fn is_hall(&self) -> bool {
        match self.children() {
            None => true,
            Some((a, b)) => {
                if !(a.is_hall() && b.is_hall()) || hall_cmp(a, b) != Ordering::Less {
                    return false;
                }
                match b.lambda() {
                    None => true,
                    Some(lb) => hall_cmp(lb, a) != Ordering::Greater,
                }
            }
        }
    }

    /// Parses `X0`, `X1`, `X2` and fully parenthesized pairs `(a,b)`;
    /// `[a,b]` is accepted as a synonym.
    pub fn parse(text: &str) -> Result<Bracket, String> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let b = parse_at(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(format!("unexpected trailing input at offset {pos}"));
        }
        Ok(b)
    }
}

fn parse_at(chars: &[char], pos: &mut usize) -> Result<Bracket, String> {
    match chars.get(*pos) {
        Some('X') | Some('x') => {
            let g = match chars.get(*pos + 1) {
                Some('0') => Generator::X0,
                Some('1') => Generator::X1,
                Some('2') => Generator::X2,
                _ => return Err(format!("expected generator index 0, 1 or 2 at offset {}", *pos + 1)),
            };
            *pos += 2;
            Ok(Bracket::gen(g))
        }
        Some(open @ ('(' | '[')) => {
            let close = if *open == '(' { ')' } else { ']' };
            *pos += 1;
            let left = parse_at(chars, pos)?;
            if chars.get(*pos) != Some(&',') {
                return Err(format!("expected ',' at offset {}", *pos));
            }
            *pos += 1;
            let right = parse_at(chars, pos)?;
            if chars.get(*pos) != Some(&close) {
                return Err(format!("expected '{close}' at offset {}", *pos));
            }
            *pos += 1;
            Ok(Bracket::pair(left, right))
        }
        Some(c) => Err(format!("unexpected '{c}' at offset {}", *pos)),
        None => Err("unexpected end of bracket".to_string()),
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Gen(g) => write!(f, "X{}", g.index()),
            Repr::Pair(node) => write!(f, "({},{})", node.left, node.right),
        }
    }
}

impl Serialize for Bracket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The total order on brackets used to define the Hall set.
///
/// `X0` is the largest element. Other brackets compare by number of control
/// occurrences, then by length, then by `(left, right)` lexicographically,
/// with `X1 < X2`.
pub fn hall_cmp(a: &Bracket, b: &Bracket) -> Ordering {
    let a_is_x0 = a.generator() == Some(Generator::X0);
    let b_is_x0 = b.generator() == Some(Generator::X0);
    match (a_is_x0, b_is_x0) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Greater,
        (false, true) => return Ordering::Less,
        _ => {}
    }
    let (ca, cb) = (a.counts(), b.counts());
    ca.n()
        .cmp(&cb.n())
        .then(ca.len.cmp(&cb.len))
        .then_with(|| match (a.children(), b.children()) {
            (None, None) => a.generator().cmp(&b.generator()),
            (Some((al, ar)), Some((bl, br))) => hall_cmp(al, bl).then_with(|| hall_cmp(ar, br)),
            // Equal lengths imply both are generators or both are pairs.
            _ => unreachable!("brackets of equal length with different shapes"),
        })
}

/// Decomposition `b = ad_{b1}^m (b2)` with `m` maximal, for a Hall pair.
pub fn hall_decompose(b: &Bracket) -> Option<(Bracket, Bracket, usize)> {
    let (b1, mut rest) = b.children()?;
    let mut m = 1;
    while let Some((l, r)) = rest.children() {
        if l == b1 {
            m += 1;
            rest = r;
        } else {
            break;
        }
    }
    Some((b1.clone(), rest.clone(), m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Bracket {
        Bracket::parse(s).unwrap()
    }

    #[test]
    fn parse_display_roundtrip() {
        let b = p("((X1,X0),[X1,X2])");
        assert_eq!(b.to_string(), "((X1,X0),(X1,X2))");
        assert_eq!(b.counts(), Counts { len: 4, n0: 1, n1: 2, n2: 1 });
        assert!(Bracket::parse("(X1,X3)").is_err());
        assert!(Bracket::parse("(X1,X2").is_err());
    }

    #[test]
    fn order_basics() {
        assert_eq!(hall_cmp(&Bracket::x1(), &Bracket::x2()), Ordering::Less);
        assert_eq!(hall_cmp(&p("(X2,X0)"), &Bracket::x0()), Ordering::Less);
        // Degree-one chain X1 0^k < X2 0^k < X1 0^{k+1}.
        assert_eq!(hall_cmp(&p("(X1,X0)"), &p("(X2,X0)")), Ordering::Less);
        assert_eq!(hall_cmp(&p("(X2,X0)"), &p("((X1,X0),X0)")), Ordering::Less);
        // Fewer controls always first.
        assert_eq!(hall_cmp(&p("(((X1,X0),X0),X0)"), &p("(X1,X2)")), Ordering::Less);
    }

    #[test]
    fn hall_membership() {
        assert!(p("(X1,(X1,X0))").is_hall());
        assert!(p("((X1,X0),((X1,X0),X0))").is_hall());
        assert!(!p("((X1,X0),X1)").is_hall());
        assert!(!p("(X1,X1)").is_hall());
        assert!(p("(X2,(X1,X0))").is_hall());
        assert!(!p("(X2,((X1,X0),X0))").is_hall());
    }

    #[test]
    fn decompose() {
        let (b1, b2, m) = hall_decompose(&p("(X1,(X1,X0))")).unwrap();
        assert_eq!((b1, b2, m), (Bracket::x1(), Bracket::x0(), 2));
        let (b1, b2, m) = hall_decompose(&p("((X1,X0),X0)")).unwrap();
        assert_eq!((b1.to_string(), b2, m), ("(X1,X0)".to_string(), Bracket::x0(), 1));
        assert!(hall_decompose(&Bracket::x1()).is_none());
    }
}
