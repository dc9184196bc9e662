//! Concrete finitely generated groups with exact normal forms.
//!
//! Each [`GroupModel`] fixes one standard symmetric generating set:
//!
//! | family | generators | size |
//! |--------|------------|------|
//! | `Z^d` | `±e_i` | `2d` |
//! | `H3` | `(±1,0,0)`, `(0,±1,0)` | 4 |
//! | `LL` | `t`, `t⁻¹`, `s` (toggle at cursor) | 3 |
//! | `Fk` | `g_i`, `g_i⁻¹` | `2k` |
//! | product | union of the factors' generators | sum |
//!
//! Walks multiply on the right, so the Cayley graph has edges `g ~ g·x`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A group family together with its standard generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupModel {
    /// The free abelian group `Z^d`.
    ZPower(usize),
    /// The discrete Heisenberg group in coordinates `(a, b, c)`.
    Heisenberg3,
    /// The lamplighter group `Z_2 ≀ Z` with the walk/switch generators.
    Lamplighter,
    /// The free group on `k` generators.
    Free(usize),
    /// Direct product; generators act on one factor at a time.
    Product(Vec<GroupModel>),
}

/// Normal form of a group element.
///
/// Normal forms are unique, so the derived `Eq`/`Hash` are equality and
/// hashing of group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Z(Vec<i64>),
    /// `(a, b, c)` is the matrix `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
    Heisenberg([i64; 3]),
    /// Lit lamps (sorted, unique) and the cursor position.
    Lamplighter {
        lamps: Vec<i64>,
        cursor: i64,
    },
    /// Reduced word; letter `i + 1` is generator `i`, `-(i + 1)` its inverse.
    Free(Vec<i32>),
    Product(Vec<Element>),
}

impl Element {
    fn family(&self) -> &'static str {
        match self {
            Element::Z(_) => "Z^d",
            Element::Heisenberg(_) => "H3",
            Element::Lamplighter { .. } => "LL",
            Element::Free(_) => "Fk",
            Element::Product(_) => "product",
        }
    }
}

fn letter_name(letter: i32) -> String {
    let idx = (letter.unsigned_abs() - 1) as u8;
    let base = if idx < 26 {
        ((b'a' + idx) as char).to_string()
    } else {
        format!("g{}", idx + 1)
    };
    if letter < 0 {
        format!("{base}⁻¹")
    } else {
        base
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Z(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::Heisenberg([a, b, c]) => write!(f, "({a},{b},{c})"),
            Element::Lamplighter { lamps, cursor } => {
                let parts: Vec<String> = lamps.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]@{}", parts.join(","), cursor)
            }
            Element::Free(w) if w.is_empty() => write!(f, "e"),
            Element::Free(w) => {
                let parts: Vec<String> = w.iter().map(|&l| letter_name(l)).collect();
                write!(f, "{}", parts.join(" "))
            }
            Element::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                write!(f, "<{}>", parts.join(" | "))
            }
        }
    }
}

/// Appends one free-group letter, cancelling against the last letter.
fn push_letter(word: &mut Vec<i32>, letter: i32) {
    if word.last() == Some(&-letter) {
        word.pop();
    } else {
        word.push(letter);
    }
}

/// Toggles the lamp at `pos` in a sorted lamp set.
fn toggle_lamp(lamps: &mut Vec<i64>, pos: i64) {
    match lamps.binary_search(&pos) {
        Ok(i) => {
            lamps.remove(i);
        }
        Err(i) => lamps.insert(i, pos),
    }
}

fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coordinate overflow")
}

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coordinate overflow")
}

/// Smallest `n` with `n * n >= x`.
fn ceil_sqrt(x: u64) -> u64 {
    let mut n = (x as f64).sqrt() as u64;
    while n * n > x {
        n -= 1;
    }
    while n * n < x {
        n += 1;
    }
    n
}

impl GroupModel {
    /// Descriptor grammar: factors `Z`, `Z^d`, `H3`, `LL`, `Fk`, joined by `x`.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Descriptor {
            descriptor: descriptor.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = descriptor.trim();
        if trimmed.is_empty() {
            return Err(bad("empty descriptor"));
        }
        let mut factors = Vec::new();
        for token in trimmed.split('x') {
            let token = token.trim();
            let factor = match token {
                "Z" => GroupModel::ZPower(1),
                "H3" => GroupModel::Heisenberg3,
                "LL" => GroupModel::Lamplighter,
                t if t.starts_with("Z^") => {
                    let d: usize = t[2..].parse().map_err(|_| bad("bad exponent in Z^d"))?;
                    if d == 0 {
                        return Err(bad("Z^0 is trivial"));
                    }
                    GroupModel::ZPower(d)
                }
                t if t.starts_with('F') => {
                    let k: usize = t[1..].parse().map_err(|_| bad("bad rank in Fk"))?;
                    if k == 0 {
                        return Err(bad("F0 is trivial"));
                    }
                    GroupModel::Free(k)
                }
                "" => return Err(bad("empty factor")),
                _ => return Err(bad(&format!("unknown factor {token:?}"))),
            };
            factors.push(factor);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            GroupModel::Product(factors)
        })
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupModel::ZPower(d) => Element::Z(vec![0; *d]),
            GroupModel::Heisenberg3 => Element::Heisenberg([0; 3]),
            GroupModel::Lamplighter => Element::Lamplighter {
                lamps: Vec::new(),
                cursor: 0,
            },
            GroupModel::Free(_) => Element::Free(Vec::new()),
            GroupModel::Product(fs) => Element::Product(fs.iter().map(|f| f.identity()).collect()),
        }
    }

    fn malformed(&self, reason: impl Into<String>) -> Error {
        Error::MalformedElement {
            model: self.to_string(),
            reason: reason.into(),
        }
    }

    /// Checks that `x` is a valid normal form for this model.
    pub fn validate(&self, x: &Element) -> Result<()> {
        match (self, x) {
            (GroupModel::ZPower(d), Element::Z(v)) => {
                if v.len() != *d {
                    return Err(self.malformed(format!("expected {d} coordinates, got {}", v.len())));
                }
                Ok(())
            }
            (GroupModel::Heisenberg3, Element::Heisenberg(_)) => Ok(()),
            (GroupModel::Lamplighter, Element::Lamplighter { lamps, .. }) => {
                if lamps.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(self.malformed("lamp set must be sorted without duplicates"));
                }
                Ok(())
            }
            (GroupModel::Free(k), Element::Free(w)) => {
                if w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > *k) {
                    return Err(self.malformed("letter out of range"));
                }
                if w.windows(2).any(|p| p[0] == -p[1]) {
                    return Err(self.malformed("word is not reduced"));
                }
                Ok(())
            }
            (GroupModel::Product(fs), Element::Product(parts)) => {
                if fs.len() != parts.len() {
                    return Err(self.malformed("wrong number of factors"));
                }
                fs.iter().zip(parts).try_for_each(|(f, p)| f.validate(p))
            }
            (_, other) => Err(self.malformed(format!("element of family {}", other.family()))),
        }
    }

    /// Normal form of `a · b`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        let mut out = a.clone();
        self.right_multiply(&mut out, b);
        Ok(out)
    }

    /// Replaces `x` by `x · g`. Both must be valid for this model.
    ///
    /// This is the walk engine's inner step: no validation, no allocation
    /// for the abelian, Heisenberg and free families.
    pub fn right_multiply(&self, x: &mut Element, g: &Element) {
        match (self, x, g) {
            (GroupModel::ZPower(_), Element::Z(v), Element::Z(w)) => {
                for (a, b) in v.iter_mut().zip(w) {
                    *a = add(*a, *b);
                }
            }
            (GroupModel::Heisenberg3, Element::Heisenberg(h), Element::Heisenberg(k)) => {
                h[2] = add(add(h[2], k[2]), mul(h[0], k[1]));
                h[0] = add(h[0], k[0]);
                h[1] = add(h[1], k[1]);
            }
            (
                GroupModel::Lamplighter,
                Element::Lamplighter { lamps, cursor },
                Element::Lamplighter {
                    lamps: other,
                    cursor: shift,
                },
            ) => {
                for &p in other {
                    toggle_lamp(lamps, add(p, *cursor));
                }
                *cursor = add(*cursor, *shift);
            }
            (GroupModel::Free(_), Element::Free(w), Element::Free(u)) => {
                for &l in u {
                    push_letter(w, l);
                }
            }
            (GroupModel::Product(fs), Element::Product(parts), Element::Product(others)) => {
                for ((f, p), o) in fs.iter().zip(parts.iter_mut()).zip(others) {
                    f.right_multiply(p, o);
                }
            }
            (model, x, g) => panic!("right_multiply on {model}: {x} · {g} mixes families"),
        }
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.validate(a)?;
        Ok(self.inverse_unchecked(a))
    }

    fn inverse_unchecked(&self, a: &Element) -> Element {
        match (self, a) {
            (GroupModel::ZPower(_), Element::Z(v)) => Element::Z(v.iter().map(|x| -x).collect()),
            (GroupModel::Heisenberg3, Element::Heisenberg([a, b, c])) => {
                Element::Heisenberg([-a, -b, add(-c, mul(*a, *b))])
            }
            (GroupModel::Lamplighter, Element::Lamplighter { lamps, cursor }) => Element::Lamplighter {
                lamps: lamps.iter().map(|p| p - cursor).collect(),
                cursor: -cursor,
            },
            (GroupModel::Free(_), Element::Free(w)) => Element::Free(w.iter().rev().map(|l| -l).collect()),
            (GroupModel::Product(fs), Element::Product(parts)) => {
                Element::Product(fs.iter().zip(parts).map(|(f, p)| f.inverse_unchecked(p)).collect())
            }
            _ => unreachable!("validated"),
        }
    }

    /// The symmetric generating set `X ∪ X⁻¹`, identity excluded.
    pub fn generators(&self) -> Vec<Element> {
        match self {
            GroupModel::ZPower(d) => {
                let mut out = Vec::with_capacity(2 * d);
                for i in 0..*d {
                    for sign in [1, -1] {
                        let mut v = vec![0; *d];
                        v[i] = sign;
                        out.push(Element::Z(v));
                    }
                }
                out
            }
            GroupModel::Heisenberg3 => vec![
                Element::Heisenberg([1, 0, 0]),
                Element::Heisenberg([-1, 0, 0]),
                Element::Heisenberg([0, 1, 0]),
                Element::Heisenberg([0, -1, 0]),
            ],
            GroupModel::Lamplighter => vec![
                Element::Lamplighter {
                    lamps: vec![],
                    cursor: 1,
                },
                Element::Lamplighter {
                    lamps: vec![],
                    cursor: -1,
                },
                Element::Lamplighter {
                    lamps: vec![0],
                    cursor: 0,
                },
            ],
            GroupModel::Free(k) => (1..=*k as i32)
                .flat_map(|i| [Element::Free(vec![i]), Element::Free(vec![-i])])
                .collect(),
            GroupModel::Product(fs) => {
                let ids: Vec<Element> = fs.iter().map(|f| f.identity()).collect();
                let mut out = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    for g in f.generators() {
                        let mut parts = ids.clone();
                        parts[i] = g;
                        out.push(Element::Product(parts));
                    }
                }
                out
            }
        }
    }

    /// Injective, deterministic byte encoding of a normal form.
    pub fn canonical_key(&self, a: &Element) -> Vec<u8> {
        let mut out = Vec::new();
        encode_key(a, &mut out);
        out
    }

    /// Exact word length, for families where it has a closed form.
    pub fn word_length(&self, x: &Element) -> Option<u64> {
        match (self, x) {
            (GroupModel::ZPower(_), Element::Z(v)) => Some(v.iter().map(|c| c.unsigned_abs()).sum()),
            (GroupModel::Free(_), Element::Free(w)) => Some(w.len() as u64),
            (GroupModel::Lamplighter, Element::Lamplighter { lamps, cursor }) => {
                Some(lamplighter_length(lamps, *cursor))
            }
            (GroupModel::Product(fs), Element::Product(parts)) => fs
                .iter()
                .zip(parts)
                .map(|(f, p)| f.word_length(p))
                .try_fold(0u64, |acc, d| d.map(|d| acc + d)),
            _ => None,
        }
    }

    /// Whether [`GroupModel::word_length`] is available for every element.
    pub fn has_closed_form_metric(&self) -> bool {
        match self {
            GroupModel::Heisenberg3 => false,
            GroupModel::Product(fs) => fs.iter().all(|f| f.has_closed_form_metric()),
            _ => true,
        }
    }

    /// A cheap lower bound on the word length of `x`.
    ///
    /// Exact where a closed form exists. For `H3` it is
    /// `max(|a| + |b|, ⌈2√|c|⌉)` bumped to the parity of `a + b`: a word
    /// with `n_a` horizontal and `n_b` vertical letters has `|c| ≤ n_a n_b`.
    pub fn distance_lower_bound(&self, x: &Element) -> u64 {
        match (self, x) {
            (GroupModel::Heisenberg3, Element::Heisenberg([a, b, c])) => {
                let flat = a.unsigned_abs() + b.unsigned_abs();
                let area = ceil_sqrt(4 * c.unsigned_abs());
                let lb = flat.max(area);
                if (lb + flat) % 2 == 1 {
                    lb + 1
                } else {
                    lb
                }
            }
            (GroupModel::Product(fs), Element::Product(parts)) => {
                fs.iter().zip(parts).map(|(f, p)| f.distance_lower_bound(p)).sum()
            }
            _ => self.word_length(x).expect("closed form exists for this family"),
        }
    }

    /// Growth degree for polynomial-growth families, `None` when superpolynomial.
    pub fn polynomial_degree(&self) -> Option<u32> {
        match self {
            GroupModel::ZPower(d) => Some(*d as u32),
            GroupModel::Heisenberg3 => Some(4),
            GroupModel::Lamplighter => None,
            GroupModel::Free(1) => Some(1),
            GroupModel::Free(_) => None,
            GroupModel::Product(fs) => fs
                .iter()
                .map(|f| f.polynomial_degree())
                .try_fold(0u32, |acc, d| d.map(|d| acc + d)),
        }
    }

    /// Transience table: only growth degree 1 or 2 is recurrent.
    pub fn is_transient(&self) -> bool {
        self.polynomial_degree().is_none_or(|d| d >= 3)
    }

    /// Parses a free-group word such as `"a b⁻¹ a"` (also `b^-1` or `B`),
    /// reducing it.
    pub fn free_word(&self, text: &str) -> Result<Element> {
        let GroupModel::Free(k) = self else {
            return Err(self.malformed("free_word needs a free group"));
        };
        let mut word = Vec::new();
        for token in text.split_whitespace() {
            let (base, inverse) = if let Some(b) = token.strip_suffix("⁻¹") {
                (b, true)
            } else if let Some(b) = token.strip_suffix("^-1") {
                (b, true)
            } else {
                (token, false)
            };
            let mut chars = base.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(self.malformed(format!("bad letter {token:?}")));
            };
            let (c, inverse) = if c.is_ascii_uppercase() {
                (c.to_ascii_lowercase(), !inverse)
            } else {
                (c, inverse)
            };
            if !c.is_ascii_lowercase() {
                return Err(self.malformed(format!("bad letter {token:?}")));
            }
            let idx = (c as u8 - b'a') as i32 + 1;
            if idx as usize > *k {
                return Err(self.malformed(format!("letter {c} outside F{k}")));
            }
            push_letter(&mut word, if inverse { -idx } else { idx });
        }
        Ok(Element::Free(word))
    }
}

/// `|A|` toggles plus the shortest cursor path from 0 to `cursor` that
/// visits every lit lamp.
fn lamplighter_length(lamps: &[i64], cursor: i64) -> u64 {
    let lo = lamps.first().copied().unwrap_or(0).min(0).min(cursor);
    let hi = lamps.last().copied().unwrap_or(0).max(0).max(cursor);
    let span = hi - lo;
    let left_first = (0 - lo) + span + (hi - cursor);
    let right_first = hi + span + (cursor - lo);
    lamps.len() as u64 + left_first.min(right_first) as u64
}

fn encode_key(a: &Element, out: &mut Vec<u8>) {
    match a {
        Element::Z(v) => {
            out.push(0);
            out.extend_from_slice(&(v.len() as u32).to_le_bytes());
            for x in v {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        Element::Heisenberg(h) => {
            out.push(1);
            for x in h {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        Element::Lamplighter { lamps, cursor } => {
            out.push(2);
            out.extend_from_slice(&cursor.to_le_bytes());
            out.extend_from_slice(&(lamps.len() as u32).to_le_bytes());
            for x in lamps {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        Element::Free(w) => {
            out.push(3);
            out.extend_from_slice(&(w.len() as u32).to_le_bytes());
            for x in w {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        Element::Product(parts) => {
            out.push(4);
            out.extend_from_slice(&(parts.len() as u32).to_le_bytes());
            for p in parts {
                encode_key(p, out);
            }
        }
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupModel::ZPower(1) => write!(f, "Z"),
            GroupModel::ZPower(d) => write!(f, "Z^{d}"),
            GroupModel::Heisenberg3 => write!(f, "H3"),
            GroupModel::Lamplighter => write!(f, "LL"),
            GroupModel::Free(k) => write!(f, "F{k}"),
            GroupModel::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

impl FromStr for GroupModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupModel::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Element {
        Element::Z(v.to_vec())
    }

    /// Upper unitriangular 3x3 integer matrices.
    fn heis_matrix(h: [i64; 3]) -> [[i64; 3]; 3] {
        [[1, h[0], h[2]], [0, 1, h[1]], [0, 0, 1]]
    }

    fn matmul(x: [[i64; 3]; 3], y: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
        let mut out = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        out
    }

    #[test]
    fn identities() {
        assert_eq!(GroupModel::ZPower(2).identity(), z(&[0, 0]));
        assert_eq!(GroupModel::Free(2).identity(), Element::Free(vec![]));
        assert_eq!(GroupModel::Heisenberg3.identity(), Element::Heisenberg([0, 0, 0]));
    }

    #[test]
    fn multiply_examples() {
        let z2 = GroupModel::ZPower(2);
        assert_eq!(z2.multiply(&z(&[1, 0]), &z(&[0, 1])).unwrap(), z(&[1, 1]));

        let h = GroupModel::Heisenberg3;
        let p = h
            .multiply(&Element::Heisenberg([1, 0, 0]), &Element::Heisenberg([0, 1, 0]))
            .unwrap();
        assert_eq!(p, Element::Heisenberg([1, 1, 1]));
        let m = matmul(heis_matrix([1, 0, 0]), heis_matrix([0, 1, 0]));
        assert_eq!(m, heis_matrix([1, 1, 1]));

        let f2 = GroupModel::Free(2);
        let ab = f2.free_word("a b").unwrap();
        let binv = f2.free_word("b⁻¹").unwrap();
        assert_eq!(f2.multiply(&ab, &binv).unwrap(), f2.free_word("a").unwrap());
    }

    #[test]
    fn heisenberg_product_matches_matrices() {
        let h = GroupModel::Heisenberg3;
        let samples = [[1, 2, 3], [-4, 0, 7], [2, -3, -5], [0, 0, 1], [5, 5, -2]];
        for x in samples {
            for y in samples {
                let p = h.multiply(&Element::Heisenberg(x), &Element::Heisenberg(y)).unwrap();
                let Element::Heisenberg(pc) = p else { unreachable!() };
                assert_eq!(heis_matrix(pc), matmul(heis_matrix(x), heis_matrix(y)));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let z3 = GroupModel::ZPower(3);
        assert_eq!(z3.inverse(&z(&[1, -2, 0])).unwrap(), z(&[-1, 2, 0]));

        let f2 = GroupModel::Free(2);
        assert_eq!(
            f2.inverse(&f2.free_word("a b").unwrap()).unwrap(),
            f2.free_word("b⁻¹ a⁻¹").unwrap()
        );

        let h = GroupModel::Heisenberg3;
        let inv = h.inverse(&Element::Heisenberg([1, 1, 1])).unwrap();
        assert_eq!(inv, Element::Heisenberg([-1, -1, 0]));
        assert_eq!(h.multiply(&Element::Heisenberg([1, 1, 1]), &inv).unwrap(), h.identity());
    }

    #[test]
    fn malformed_elements_are_rejected() {
        let z2 = GroupModel::ZPower(2);
        assert!(matches!(
            z2.multiply(&z(&[1, 0]), &Element::Free(vec![1])),
            Err(Error::MalformedElement { .. })
        ));
        assert!(z2.inverse(&z(&[1, 0, 0])).is_err());
        let f2 = GroupModel::Free(2);
        assert!(f2.validate(&Element::Free(vec![1, -1])).is_err());
        assert!(f2.validate(&Element::Free(vec![3])).is_err());
        let ll = GroupModel::Lamplighter;
        assert!(ll
            .validate(&Element::Lamplighter {
                lamps: vec![2, 1],
                cursor: 0
            })
            .is_err());
    }

    #[test]
    fn generator_sets() {
        let z2 = GroupModel::ZPower(2).generators();
        assert_eq!(z2.len(), 4);
        for v in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            assert!(z2.contains(&z(&v)));
        }
        assert_eq!(GroupModel::Free(2).generators().len(), 4);

        let ll = GroupModel::Lamplighter;
        let gens = ll.generators();
        assert_eq!(gens.len(), 3);
        for g in &gens {
            assert!(gens.contains(&ll.inverse(g).unwrap()));
        }
        let s = &gens[2];
        assert_eq!(&ll.inverse(s).unwrap(), s, "toggle is an involution");
    }

    #[test]
    fn generators_symmetric_and_exclude_identity() {
        for model in ["Z^3", "H3", "LL", "F3", "Z^2xF2", "LLxZ"] {
            let g = GroupModel::parse(model).unwrap();
            let gens = g.generators();
            let id = g.identity();
            assert!(!gens.contains(&id));
            for x in &gens {
                assert!(gens.contains(&g.inverse(x).unwrap()), "{model}: {x}");
            }
            let mut dedup = gens.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), gens.len());
        }
    }

    #[test]
    fn keys() {
        let z1 = GroupModel::ZPower(1);
        assert_eq!(z1.canonical_key(&z(&[0])), z1.canonical_key(&z(&[0])));
        let f2 = GroupModel::Free(2);
        let reduced = f2.free_word("a b b⁻¹").unwrap();
        assert_eq!(
            f2.canonical_key(&reduced),
            f2.canonical_key(&f2.free_word("a").unwrap())
        );
        assert_ne!(
            f2.canonical_key(&Element::Free(vec![1, 2])),
            f2.canonical_key(&Element::Free(vec![2, 1]))
        );
    }

    #[test]
    fn descriptor_round_trip() {
        for d in ["Z", "Z^3", "H3", "LL", "F2", "Z^2xF2", "H3xLLxZ"] {
            let g = GroupModel::parse(d).unwrap();
            assert_eq!(g.to_string(), d);
        }
        assert_eq!(
            GroupModel::parse("Z^2xF2").unwrap(),
            GroupModel::Product(vec![GroupModel::ZPower(2), GroupModel::Free(2)])
        );
        for bad in ["", "Z^0", "F0", "Q", "Z^x", "Zx"] {
            assert!(GroupModel::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn transience_table() {
        let t = |d: &str| GroupModel::parse(d).unwrap().is_transient();
        assert!(!t("Z"));
        assert!(!t("Z^2"));
        assert!(!t("F1"));
        assert!(!t("ZxZ"));
        assert!(t("Z^3"));
        assert!(t("H3"));
        assert!(t("LL"));
        assert!(t("F2"));
        assert!(t("Z^2xF2"));
    }

    #[test]
    fn lamplighter_lengths_by_hand() {
        assert_eq!(lamplighter_length(&[], 0), 0);
        assert_eq!(lamplighter_length(&[], 3), 3);
        assert_eq!(lamplighter_length(&[0], 0), 1);
        assert_eq!(lamplighter_length(&[1], 1), 2);
        // t s t⁻¹ t⁻¹ s t: lamps {-1, 1}, cursor 0
        assert_eq!(lamplighter_length(&[-1, 1], 0), 2 + 4);
    }
}
