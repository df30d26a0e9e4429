//! Freely reduced words over opaque generator ids.
//!
//! Conventions: `a^b = b̄ a b` and `[a, b] = b̄ a b ā`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Opaque generator id, issued by whatever owns the generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u32);

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    /// Product of two signs.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: Gen, sign: Sign) -> Letter {
        Letter { gen, sign }
    }

    pub fn pos(gen: Gen) -> Letter {
        Letter::new(gen, Sign::Pos)
    }

    pub fn neg(gen: Gen) -> Letter {
        Letter::new(gen, Sign::Neg)
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.gen, self.sign.flip())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("generator {0} has no component assignment")]
    UnknownGenerator(Gen),
}

/// A freely reduced word. Every constructor reduces, so equality of words is
/// equality in the free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Free reduction of an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&last) if last == l.inverse() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn gen(g: Gen) -> Word {
        Word(vec![Letter::pos(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self^b = b̄ · self · b`.
    pub fn conjugate(&self, b: &Word) -> Word {
        b.inverse().mul(self).mul(b)
    }

    /// `[self, b] = b̄ · self · b · self̄`.
    pub fn commutator(&self, b: &Word) -> Word {
        b.inverse().mul(self).mul(b).mul(&self.inverse())
    }

    /// Replaces every occurrence of `g` by `r` (and of `ḡ` by `r̄`).
    pub fn substitute(&self, g: Gen, r: &Word) -> Word {
        let rinv = r.inverse();
        let mut seq = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if l.gen == g {
                match l.sign {
                    Sign::Pos => seq.extend_from_slice(&r.0),
                    Sign::Neg => seq.extend_from_slice(&rinv.0),
                }
            } else {
                seq.push(*l);
            }
        }
        reduce(seq)
    }

    /// Renames generators letter by letter.
    pub fn rename(&self, f: impl Fn(Gen) -> Gen) -> Word {
        reduce(self.0.iter().map(|l| Letter::new(f(l.gen), l.sign)))
    }

    pub fn contains(&self, g: Gen) -> bool {
        self.0.iter().any(|l| l.gen == g)
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().map(|l| l.gen)
    }

    /// Prefix and suffix at `cut`; both halves are reduced because `self` is.
    pub fn split_at(&self, cut: usize) -> (Word, Word) {
        let (a, b) = self.0.split_at(cut);
        (Word(a.to_vec()), Word(b.to_vec()))
    }

    /// Algebraic count of letters whose generator lies in component `i`.
    pub fn component_weight(
        &self,
        comp_of: &BTreeMap<Gen, usize>,
        i: usize,
    ) -> Result<i64, FreeGroupError> {
        let mut total = 0;
        for l in &self.0 {
            let c = comp_of
                .get(&l.gen)
                .ok_or(FreeGroupError::UnknownGenerator(l.gen))?;
            if *c == i {
                total += l.sign.as_i64();
            }
        }
        Ok(total)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        reduce(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Gen {
        Gen(0)
    }
    fn b() -> Gen {
        Gen(1)
    }
    fn c() -> Gen {
        Gen(2)
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce([Letter::pos(a()), Letter::neg(a())]).is_identity());
        let w = reduce([
            Letter::pos(a()),
            Letter::pos(b()),
            Letter::neg(b()),
            Letter::pos(a()),
        ]);
        assert_eq!(w.letters(), &[Letter::pos(a()), Letter::pos(a())]);
        let seq = [
            Letter::neg(b()),
            Letter::pos(a()),
            Letter::pos(b()),
            Letter::neg(a()),
        ];
        assert_eq!(reduce(seq).letters(), &seq);
    }

    #[test]
    fn notation_conventions() {
        let wa = Word::gen(a());
        let wb = Word::gen(b());
        assert_eq!(
            wa.conjugate(&wb).letters(),
            &[Letter::neg(b()), Letter::pos(a()), Letter::pos(b())]
        );
        assert_eq!(
            wa.commutator(&wb).letters(),
            &[
                Letter::neg(b()),
                Letter::pos(a()),
                Letter::pos(b()),
                Letter::neg(a())
            ]
        );
        assert!(wa.commutator(&wa).is_identity());
        assert!(wa.commutator(&Word::identity()).is_identity());
        assert_eq!(wa.conjugate(&Word::identity()), wa);
        assert!(Word::identity().conjugate(&wb).is_identity());
    }

    #[test]
    fn inverse_and_concat() {
        let w: Word = [Letter::pos(a()), Letter::neg(b())].into_iter().collect();
        assert_eq!(w.inverse().letters(), &[Letter::pos(b()), Letter::neg(a())]);
        assert!(w.mul(&w.inverse()).is_identity());
        assert!(Word::gen(a()).mul(&Word::letter(Letter::neg(a()))).is_identity());
    }

    #[test]
    fn substitution_examples() {
        let ab: Word = [Letter::pos(a()), Letter::pos(b())].into_iter().collect();
        assert_eq!(
            ab.substitute(b(), &Word::gen(c())).letters(),
            &[Letter::pos(a()), Letter::pos(c())]
        );
        let bbar = Word::letter(Letter::neg(b()));
        let ac: Word = [Letter::pos(a()), Letter::pos(c())].into_iter().collect();
        assert_eq!(
            bbar.substitute(b(), &ac).letters(),
            &[Letter::neg(c()), Letter::neg(a())]
        );
        assert_eq!(ab.substitute(b(), &Word::gen(b())), ab);
    }

    #[test]
    fn weight_examples() {
        let m1 = Gen(1);
        let m2 = Gen(2);
        let comp_of: BTreeMap<Gen, usize> = [(m1, 1), (m2, 2)].into_iter().collect();
        let w: Word = [Letter::pos(m2), Letter::pos(m1), Letter::pos(m1)]
            .into_iter()
            .collect();
        assert_eq!(w.component_weight(&comp_of, 1), Ok(2));
        assert_eq!(w.component_weight(&comp_of, 2), Ok(1));
        let k = Word::gen(m1).commutator(&Word::gen(m2));
        assert_eq!(k.component_weight(&comp_of, 1), Ok(0));
        assert_eq!(
            Word::gen(Gen(9)).component_weight(&comp_of, 1),
            Err(FreeGroupError::UnknownGenerator(Gen(9)))
        );
    }
}
