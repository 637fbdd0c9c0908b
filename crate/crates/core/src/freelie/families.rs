//! The named bracket families with one or two control occurrences.
//!
//! * `M^i_j = X_i 0^j`
//! * `W^i_{j,l} = (M^i_{j-1}, M^i_j) 0^l` for `j >= 1`
//! * `C_{j,l} = (M^1_{j/2}, M^2_{j/2}) 0^l` for even `j`, and
//!   `(M^2_{(j-1)/2}, M^1_{(j+1)/2}) 0^l` for odd `j`.

use std::fmt;

use serde::Serialize;

use super::bracket::{Bracket, Generator};

/// One of the two controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Control {
    U,
    V,
}

impl Control {
    pub fn generator(self) -> Generator {
        match self {
            Control::U => Generator::X1,
            Control::V => Generator::X2,
        }
    }

    fn digit(self) -> u8 {
        match self {
            Control::U => 1,
            Control::V => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    M { control: Control, j: usize },
    W { control: Control, j: usize, l: usize },
    C { j: usize, l: usize },
}

/// `X_i 0^j`.
pub fn m(control: Control, j: usize) -> Bracket {
    Bracket::gen(control.generator()).with_drift(j)
}

/// `(M_{j-1}, M_j) 0^l`. Panics if `j == 0`.
pub fn w(control: Control, j: usize, l: usize) -> Bracket {
    assert!(j >= 1, "W family starts at j = 1");
    Bracket::pair(m(control, j - 1), m(control, j)).with_drift(l)
}

/// Cross family `C_{j,l}`.
pub fn c(j: usize, l: usize) -> Bracket {
    let core = if j.is_multiple_of(2) {
        Bracket::pair(m(Control::U, j / 2), m(Control::V, j / 2))
    } else {
        Bracket::pair(m(Control::V, j / 2), m(Control::U, j / 2 + 1))
    };
    core.with_drift(l)
}

impl Family {
    pub fn bracket(&self) -> Bracket {
        match *self {
            Family::M { control, j } => m(control, j),
            Family::W { control, j, l } => w(control, j, l),
            Family::C { j, l } => c(j, l),
        }
    }

    /// Parses `M1 j=2`, `W2 j=1 l=0`, `C j=3 l=1` (missing `l` means 0).
    pub fn parse(text: &str) -> Result<Family, String> {
        let mut words = text.split_whitespace();
        let kind = words.next().ok_or("empty family specification")?;
        let (mut j, mut l) = (None, 0usize);
        for word in words {
            let (key, value) = word.split_once('=').ok_or_else(|| format!("expected key=value, got '{word}'"))?;
            let value: usize = value.parse().map_err(|_| format!("'{value}' is not a non-negative integer"))?;
            match key {
                "j" => j = Some(value),
                "l" => l = value,
                _ => return Err(format!("unknown key '{key}', expected j or l")),
            }
        }
        let j = j.ok_or("missing j=")?;
        let fam = match kind {
            "M1" => Family::M { control: Control::U, j: j + l },
            "M2" => Family::M { control: Control::V, j: j + l },
            "W1" | "W2" => {
                if j == 0 {
                    return Err("W families need j >= 1".to_string());
                }
                let control = if kind == "W1" { Control::U } else { Control::V };
                Family::W { control, j, l }
            }
            "C" => Family::C { j, l },
            _ => return Err(format!("unknown family '{kind}', expected M1, M2, W1, W2 or C")),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::M { control, j } => write!(f, "M{}_{}", control.digit(), j),
            Family::W { control, j, l } => write!(f, "W{}_{{{},{}}}", control.digit(), j, l),
            Family::C { j, l } => write!(f, "C_{{{},{}}}", j, l),
        }
    }
}

/// Recognizes `b` as `M^i_j` for some control and `j`.
fn as_m(b: &Bracket) -> Option<(Control, usize)> {
    let mut cur = b;
    let mut j = 0;
    loop {
        match cur.children() {
            None => {
                return match cur.generator()? {
                    Generator::X1 => Some((Control::U, j)),
                    Generator::X2 => Some((Control::V, j)),
                    Generator::X0 => None,
                }
            }
            Some((l, r)) if r.generator() == Some(Generator::X0) => {
                cur = l;
                j += 1;
            }
            Some(_) => return None,
        }
    }
}

/// Identifies the family of `b`, if any.
pub fn identify(b: &Bracket) -> Option<Family> {
    if let Some((control, j)) = as_m(b) {
        return Some(Family::M { control, j });
    }
    let mut core = b;
    let mut l = 0;
    while let Some((left, right)) = core.children() {
        if right.generator() == Some(Generator::X0) {
            core = left;
            l += 1;
        } else {
            break;
        }
    }
    let (a, b) = core.children()?;
    let (ca, ja) = as_m(a)?;
    let (cb, jb) = as_m(b)?;
    match (ca, cb) {
        (x, y) if x == y && jb == ja + 1 => Some(Family::W { control: x, j: jb, l }),
        (Control::U, Control::V) if ja == jb => Some(Family::C { j: 2 * ja, l }),
        (Control::V, Control::U) if jb == ja + 1 => Some(Family::C { j: 2 * ja + 1, l }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(m(Control::U, 2).to_string(), "((X1,X0),X0)");
        assert_eq!(w(Control::U, 1, 0).to_string(), "(X1,(X1,X0))");
        assert_eq!(c(0, 0).to_string(), "(X1,X2)");
        assert_eq!(c(1, 0).to_string(), "(X2,(X1,X0))");
        assert_eq!(c(2, 1).to_string(), "(((X1,X0),(X2,X0)),X0)");
    }

    #[test]
    fn identify_roundtrip() {
        let fams = [
            Family::M { control: Control::V, j: 3 },
            Family::W { control: Control::U, j: 2, l: 1 },
            Family::W { control: Control::V, j: 1, l: 0 },
            Family::C { j: 0, l: 2 },
            Family::C { j: 5, l: 0 },
        ];
        for f in fams {
            assert_eq!(identify(&f.bracket()), Some(f), "{f}");
            assert!(f.bracket().is_hall(), "{f}");
        }
        assert_eq!(identify(&Bracket::parse("(X1,(X1,X2))").unwrap()), None);
    }

    #[test]
    fn parse_spec() {
        assert_eq!(Family::parse("W1 j=1 l=0"), Ok(Family::W { control: Control::U, j: 1, l: 0 }));
        assert_eq!(Family::parse("C j=3"), Ok(Family::C { j: 3, l: 0 }));
        assert_eq!(Family::parse("M2 j=1 l=2"), Ok(Family::M { control: Control::V, j: 3 }));
        assert!(Family::parse("W1 j=0").is_err());
        assert!(Family::parse("Z j=1").is_err());
    }
}
