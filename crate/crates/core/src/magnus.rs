//! Reduced Magnus expansion into noncommuting series modulo monomials with a
//! repeated variable.
//!
//! Variables are 0-based here (`X_0 .. X_{ℓ-1}`); printers add one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::freegroup::{Gen, Sign, Word};

/// Largest supported variable count.
pub const MAX_VARS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("{0} variables requested, at most {MAX_VARS} supported")]
    TooManyVariables(usize),
    #[error("generator {0} has no variable assigned")]
    Unmapped(Gen),
    #[error("variable {var} out of range for {vars} variables")]
    VariableOutOfRange { var: usize, vars: usize },
    #[error("series over {0} and {1} variables cannot be combined")]
    VarMismatch(usize, usize),
    #[error("index sequence repeats variable {0}")]
    RepeatedIndex(usize),
    #[error("series with constant term other than 1 is not inverted here")]
    NotUnipotent,
    #[error("coefficient overflow")]
    Overflow,
}

/// A duplicate-free monomial: `mask` holds its variables and `seq` their
/// order, four bits per position with the first variable lowest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Mono {
    mask: u16,
    seq: u64,
}

impl Mono {
    const ONE: Mono = Mono { mask: 0, seq: 0 };

    fn len(self) -> u32 {
        self.mask.count_ones()
    }

    fn concat(self, other: Mono) -> Mono {
        if other.mask == 0 {
            return self;
        }
        Mono {
            mask: self.mask | other.mask,
            seq: self.seq | (other.seq << (4 * self.len())),
        }
    }

    fn var(v: usize) -> Mono {
        Mono {
            mask: 1 << v,
            seq: v as u64,
        }
    }

    fn vars(self) -> Vec<u8> {
        (0..self.len()).map(|k| ((self.seq >> (4 * k)) & 15) as u8).collect()
    }
}

/// Exact series over duplicate-free monomials. Terms are kept sorted with
/// no zero coefficients, so equality is structural. Coefficients are `i128`
/// with checked arithmetic: an overflow is reported, never wrapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    vars: usize,
    terms: Vec<(Mono, i128)>,
}

/// Sorts terms, merges equal monomials and drops zeros.
fn normalize(mut terms: Vec<(Mono, i128)>) -> Result<Vec<(Mono, i128)>, MagnusError> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(Mono, i128)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = last.1.checked_add(c).ok_or(MagnusError::Overflow)?,
            _ => {
                if out.last().is_some_and(|l| l.1 == 0) {
                    out.pop();
                }
                out.push((m, c));
            }
        }
    }
    if out.last().is_some_and(|l| l.1 == 0) {
        out.pop();
    }
    Ok(out)
}

impl Series {
    pub fn zero(vars: usize) -> Result<Series, MagnusError> {
        if vars > MAX_VARS {
            return Err(MagnusError::TooManyVariables(vars));
        }
        Ok(Series {
            vars,
            terms: Vec::new(),
        })
    }

    pub fn one(vars: usize) -> Result<Series, MagnusError> {
        let mut s = Series::zero(vars)?;
        s.terms.push((Mono::ONE, 1));
        Ok(s)
    }

    /// `1 + ε X_var`.
    pub fn binomial(vars: usize, var: usize, sign: Sign) -> Result<Series, MagnusError> {
        let mut s = Series::one(vars)?;
        if var >= vars {
            return Err(MagnusError::VariableOutOfRange { var, vars });
        }
        s.terms.push((Mono::var(var), sign.as_i64() as i128));
        s.terms.sort_unstable_by_key(|t| t.0);
        Ok(s)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Nonzero terms as variable sequences with their coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u8>, BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (m.vars(), BigInt::from(*c)))
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(Mono::ONE, 1)]
    }

    fn check_vars(&self, other: &Series) -> Result<(), MagnusError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(MagnusError::VarMismatch(self.vars, other.vars))
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series, MagnusError> {
        self.check_vars(other)?;
        let all = self.terms.iter().chain(&other.terms).copied().collect();
        Ok(Series {
            vars: self.vars,
            terms: normalize(all)?,
        })
    }

    pub fn neg(&self) -> Result<Series, MagnusError> {
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| c.checked_neg().map(|c| (m, c)).ok_or(MagnusError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Series { vars: self.vars, terms })
    }

    pub fn mul(&self, other: &Series) -> Result<Series, MagnusError> {
        self.check_vars(other)?;
        let mut out = Vec::new();
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &other.terms {
                if m1.mask & m2.mask == 0 {
                    out.push((m1.concat(m2), c1.checked_mul(c2).ok_or(MagnusError::Overflow)?));
                }
            }
        }
        Ok(Series {
            vars: self.vars,
            terms: normalize(out)?,
        })
    }

    /// Right multiplication by `1 + ε X_var`, in place of a full product.
    fn mul_binomial(&mut self, var: usize, sign: Sign) -> Result<(), MagnusError> {
        let x = Mono::var(var);
        let mut all = self.terms.clone();
        for &(m, c) in &self.terms {
            if m.mask & x.mask == 0 {
                let c = if sign == Sign::Pos { c } else { c.checked_neg().ok_or(MagnusError::Overflow)? };
                all.push((m.concat(x), c));
            }
        }
        self.terms = normalize(all)?;
        Ok(())
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Series, MagnusError> {
        if self.terms.first() != Some(&(Mono::ONE, 1)) {
            return Err(MagnusError::NotUnipotent);
        }
        // s = 1 + n with n nilpotent of order ≤ ℓ + 1, so s⁻¹ = Σ (−n)^k.
        let neg_n = Series {
            vars: self.vars,
            terms: self.terms[1..].to_vec(),
        }
        .neg()?;
        let mut acc = Series::one(self.vars)?;
        let mut power = acc.clone();
        for _ in 0..self.vars {
            power = power.mul(&neg_n)?;
            if power.terms.is_empty() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Coefficient of `X_{I[0]} … X_{I[r-1]}`; `I` must be duplicate-free.
    pub fn coefficient(&self, index: &[usize]) -> Result<BigInt, MagnusError> {
        let mut key = Mono::ONE;
        for &v in index {
            if v >= self.vars {
                return Err(MagnusError::VariableOutOfRange {
                    var: v,
                    vars: self.vars,
                });
            }
            if key.mask & (1 << v) != 0 {
                return Err(MagnusError::RepeatedIndex(v));
            }
            key = key.concat(Mono::var(v));
        }
        Ok(match self.terms.binary_search_by_key(&key, |t| t.0) {
            Ok(i) => BigInt::from(self.terms[i].1),
            Err(_) => BigInt::zero(),
        })
    }
}

/// `E(w)` with `μ^ε ↦ 1 + ε X_{meridian_of(μ)}`.
pub fn expand(
    w: &Word,
    meridian_of: &BTreeMap<Gen, usize>,
    vars: usize,
) -> Result<Series, MagnusError> {
    let mut s = Series::one(vars)?;
    for l in w.letters() {
        let var = *meridian_of.get(&l.gen).ok_or(MagnusError::Unmapped(l.gen))?;
        if var >= vars {
            return Err(MagnusError::VariableOutOfRange { var, vars });
        }
        s.mul_binomial(var, l.sign)?;
    }
    Ok(s)
}

/// Whether `w` is trivial in the reduced free group, decided through `E`.
pub fn is_trivial_in_reduced(
    w: &Word,
    meridian_of: &BTreeMap<Gen, usize>,
    vars: usize,
) -> Result<bool, MagnusError> {
    Ok(expand(w, meridian_of, vars)?.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Letter;

    fn setup(n: u32) -> BTreeMap<Gen, usize> {
        (0..n).map(|i| (Gen(i), i as usize)).collect()
    }

    #[test]
    fn single_letters() {
        let m = setup(2);
        let e = expand(&Word::gen(Gen(0)), &m, 2).unwrap();
        assert_eq!(e, Series::binomial(2, 0, Sign::Pos).unwrap());
        let e = expand(&Word::letter(Letter::neg(Gen(0))), &m, 2).unwrap();
        assert_eq!(e.coefficient(&[0]).unwrap(), BigInt::from(-1));
        assert_eq!(e.terms().count(), 2);
    }

    #[test]
    fn commutator_oracle() {
        // (1 − X1)(1 + X0)(1 + X1)(1 − X0) by hand: 1 + X0X1 − X1X0.
        let m = setup(2);
        let k = Word::gen(Gen(0)).commutator(&Word::gen(Gen(1)));
        let e = expand(&k, &m, 2).unwrap();
        let terms: Vec<(Vec<u8>, BigInt)> = e.terms().collect();
        assert_eq!(terms.len(), 3);
        assert!(terms.contains(&(vec![0, 1], BigInt::from(1))));
        assert!(terms.contains(&(vec![1, 0], BigInt::from(-1))));
        assert_eq!(e.coefficient(&[0, 1]).unwrap(), BigInt::from(1));
        assert_eq!(e.coefficient(&[1, 0]).unwrap(), BigInt::from(-1));
        assert_eq!(e.coefficient(&[]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn ring_examples() {
        let p = Series::binomial(2, 0, Sign::Pos).unwrap();
        let n = Series::binomial(2, 0, Sign::Neg).unwrap();
        assert!(p.mul(&n).unwrap().is_one());
        let q = Series::binomial(2, 1, Sign::Pos).unwrap();
        let pq = p.mul(&q).unwrap();
        assert_eq!(pq.terms().count(), 4);
        assert_eq!(pq.coefficient(&[0, 1]).unwrap(), BigInt::from(1));
        assert_eq!(pq.mul(&Series::one(2).unwrap()).unwrap(), pq);
        assert_eq!(p.inverse().unwrap(), n);
    }

    #[test]
    fn sixteen_variables() {
        let m = setup(16);
        let w: Word = (0..16).map(|i| Letter::pos(Gen(i))).collect();
        let e = expand(&w, &m, 16).unwrap();
        let all: Vec<usize> = (0..16).collect();
        assert_eq!(e.coefficient(&all).unwrap(), BigInt::from(1));
        let rev: Vec<usize> = (0..16).rev().collect();
        assert_eq!(e.coefficient(&rev).unwrap(), BigInt::zero());
        assert_eq!(e.terms().count(), 1 << 16);
    }

    #[test]
    fn errors() {
        assert_eq!(Series::one(17), Err(MagnusError::TooManyVariables(17)));
        let m = setup(1);
        assert_eq!(
            expand(&Word::gen(Gen(5)), &m, 1),
            Err(MagnusError::Unmapped(Gen(5)))
        );
        let s = Series::one(3).unwrap();
        assert_eq!(s.coefficient(&[1, 1]), Err(MagnusError::RepeatedIndex(1)));
        assert_eq!(
            s.mul(&Series::one(2).unwrap()),
            Err(MagnusError::VarMismatch(3, 2))
        );
    }

    #[test]
    fn triviality() {
        let m = setup(3);
        assert!(is_trivial_in_reduced(&Word::identity(), &m, 3).unwrap());
        assert!(!is_trivial_in_reduced(&Word::gen(Gen(0)), &m, 3).unwrap());
        let g: Word = [Letter::pos(Gen(1)), Letter::neg(Gen(2)), Letter::pos(Gen(0))]
            .into_iter()
            .collect();
        let mu = Word::gen(Gen(0));
        let rel = mu.commutator(&mu.conjugate(&g));
        assert!(!rel.is_identity());
        assert!(is_trivial_in_reduced(&rel, &m, 3).unwrap());
    }
}
