//! Non-repeated Milnor invariants of welded forests and the resulting
//! decision procedure for sv-equivalence.
//!
//! Every vertex `v` of component `i` equals `p̄ μ_i p` in the reduced group,
//! where `p` is the word of the tree path from the meridian `μ_i` to `v`.
//! Iterating this substitution inside the reduced Magnus ring reaches a
//! fixed point after at most `ℓ` rounds, since each round fixes one more
//! degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::freegroup::{Gen, Sign, Word};
use crate::magnus::{MagnusError, Series, MAX_VARS};
use crate::peripheral::{path_end, path_word, preferred, spanning_tree, Basing, PeripheralError};
use crate::wgraph::WGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("component {} is not a tree with a marked vertex", .0 + 1)]
    NotForest(usize),
    #[error("graph types differ: {0:?} and {1:?}")]
    TypeMismatch(Vec<(usize, usize)>, Vec<(usize, usize)>),
    #[error("{0} components exceed the supported {MAX_VARS}")]
    TooManyComponents(usize),
    #[error("meridian images did not stabilize")]
    NoFixedPoint,
    #[error(transparent)]
    Magnus(#[from] MagnusError),
    #[error(transparent)]
    Peripheral(#[from] PeripheralError),
}

/// Every component is a tree carrying at least one marked vertex.
pub fn is_welded_forest(g: &WGraph) -> bool {
    g.graph_type().iter().all(|&(m, b)| b == 0 && m >= 1)
}

fn forest_check(g: &WGraph) -> Result<(), MilnorError> {
    if let Some(c) = g.graph_type().iter().position(|&(m, b)| b != 0 || m == 0) {
        return Err(MilnorError::NotForest(c));
    }
    if g.num_components() > MAX_VARS {
        return Err(MilnorError::TooManyComponents(g.num_components()));
    }
    Ok(())
}

/// Expansion of a word given the images of its letters.
pub fn evaluate(w: &Word, images: &BTreeMap<Gen, (Series, Series)>, vars: usize) -> Result<Series, MilnorError> {
    let mut s = Series::one(vars)?;
    for l in w.letters() {
        let (pos, neg) = images.get(&l.gen).ok_or(MagnusError::Unmapped(l.gen))?;
        s = s.mul(if l.sign == Sign::Pos { pos } else { neg })?;
    }
    Ok(s)
}

/// Images of all vertices (with their inverses) in the reduced Magnus ring,
/// meridian `μ_i` mapping to `1 + X_i`.
pub fn vertex_images(g: &WGraph, basing: &Basing) -> Result<BTreeMap<Gen, (Series, Series)>, MilnorError> {
    let vars = g.num_components();
    // Tree vertices by depth, each with its component and last tree step.
    let mut order: Vec<(Gen, usize, Option<(Gen, usize, bool)>)> = Vec::new();
    for (c, &mu) in basing.meridians.iter().enumerate() {
        let (tree, _) = spanning_tree(g, mu);
        let mut verts: Vec<(usize, Gen, Option<(Gen, usize, bool)>)> = Vec::new();
        for (v, p) in tree {
            let step = match p.split_last() {
                Some((&(i, fwd), rest)) => Some((path_end(g, mu, rest)?, i, fwd)),
                None => None,
            };
            verts.push((p.len(), v, step));
        }
        verts.sort_by_key(|(d, v, _)| (*d, *v));
        order.extend(verts.into_iter().map(|(_, v, step)| (v, c, step)));
    }
    let mut images = BTreeMap::new();
    for (v, c, _) in &order {
        let x = Series::binomial(vars, *c, Sign::Pos)?;
        let xi = x.inverse()?;
        images.insert(*v, (x, xi));
    }
    for _ in 0..=vars + 1 {
        let mut labels = BTreeMap::new();
        let mut prefix: BTreeMap<Gen, Series> = BTreeMap::new();
        let mut next = BTreeMap::new();
        for (v, c, step) in &order {
            let e = match step {
                None => Series::one(vars)?,
                Some((u, i, fwd)) => {
                    if !labels.contains_key(i) {
                        let l = evaluate(&g.edges()[*i].label, &images, vars)?;
                        let li = l.inverse()?;
                        labels.insert(*i, (l, li));
                    }
                    let (l, li) = &labels[i];
                    prefix[u].mul(if *fwd { l } else { li })?
                }
            };
            let ei = e.inverse()?;
            let x = ei.mul(&Series::binomial(vars, *c, Sign::Pos)?)?.mul(&e)?;
            let xi = ei.mul(&Series::binomial(vars, *c, Sign::Neg)?)?.mul(&e)?;
            next.insert(*v, (x, xi));
            prefix.insert(*v, e);
        }
        if next == images {
            return Ok(images);
        }
        images = next;
    }
    Err(MilnorError::NoFixedPoint)
}

/// Key ordering: length of `I`, then `I`, then `i`, then `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    len: usize,
    seq: Vec<usize>,
    i: usize,
    j: usize,
}

/// Nonzero invariants `μ(I; i, j)`, all indices 0-based, `I` avoiding `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorTable {
    ncomp: usize,
    entries: BTreeMap<Key, BigInt>,
}

impl MilnorTable {
    pub fn num_components(&self) -> usize {
        self.ncomp
    }

    /// `μ(I; i, j)`, zero when absent.
    pub fn get(&self, seq: &[usize], i: usize, j: usize) -> BigInt {
        let key = Key {
            len: seq.len(),
            seq: seq.to_vec(),
            i,
            j,
        };
        self.entries.get(&key).cloned().unwrap_or_default()
    }

    /// Nonzero entries as `(I, i, j, value)` in printing order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], usize, usize, &BigInt)> {
        self.entries.iter().map(|(k, v)| (k.seq.as_slice(), k.i, k.j, v))
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One `mu(I; i,j) = v` line per nonzero entry, 1-based.
impl fmt::Display for MilnorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (seq, i, j, v) in self.entries() {
            let s: Vec<String> = seq.iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "mu({}; {},{}) = {v}", s.join(","), i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// Coefficients of the expansions of the preferred arc longitudes `α^i_j`,
/// `j ≥ 2`, over duplicate-free sequences avoiding `i`. The canonical basing
/// is used.
pub fn milnor_invariants(g: &WGraph) -> Result<MilnorTable, MilnorError> {
    forest_check(g)?;
    let basing = Basing::canonical(g);
    let vars = g.num_components();
    let images = vertex_images(g, &basing)?;
    let comp_of = g.comp_map();
    let mut entries = BTreeMap::new();
    for (i, &mu) in basing.meridians.iter().enumerate() {
        for (j, arc) in basing.arcs[i].iter().enumerate().skip(1) {
            let w = preferred(&path_word(g, mu, arc)?, mu, &comp_of, i);
            let e = evaluate(&w, &images, vars)?;
            for (mono, c) in e.terms() {
                if mono.is_empty() || mono.contains(&(i as u8)) || c.is_zero() {
                    continue;
                }
                let seq: Vec<usize> = mono.iter().map(|x| *x as usize).collect();
                entries.insert(
                    Key {
                        len: seq.len(),
                        seq,
                        i,
                        j,
                    },
                    c.clone(),
                );
            }
        }
    }
    Ok(MilnorTable { ncomp: vars, entries })
}

/// Decides sv-equivalence of two welded forests by comparing their tables.
/// Different graph types are reported as [`MilnorError::TypeMismatch`].
pub fn forests_sv_equivalent(a: &WGraph, b: &WGraph) -> Result<bool, MilnorError> {
    forest_check(a)?;
    forest_check(b)?;
    if a.graph_type() != b.graph_type() {
        return Err(MilnorError::TypeMismatch(a.graph_type(), b.graph_type()));
    }
    Ok(milnor_invariants(a)? == milnor_invariants(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgraph::tests::w;
    use crate::wgraph::Edge;

    /// One interval per component; `labels[c]` decorates its only edge.
    pub(crate) fn strands(labels: &[Word]) -> WGraph {
        let n = labels.len() as u32;
        let decl: Vec<(Gen, bool)> = (0..2 * n).map(|v| (Gen(v), true)).collect();
        let edges = labels
            .iter()
            .enumerate()
            .map(|(c, l)| Edge::new(Gen(2 * c as u32), Gen(2 * c as u32 + 1), l.clone()))
            .collect();
        WGraph::from_parts(&decl, edges).unwrap()
    }

    #[test]
    fn trivial_forest() {
        let g = strands(&[Word::identity(), Word::identity()]);
        let t = milnor_invariants(&g).unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.to_string(), "");
    }

    #[test]
    fn single_crossing() {
        let g = strands(&[Word::identity(), w(&[(0, 1)])]);
        let t = milnor_invariants(&g).unwrap();
        assert_eq!(t.get(&[0], 1, 1), BigInt::from(1));
        assert_eq!(t.to_string(), "mu(1; 2,2) = 1\n");
        let trivial = strands(&[Word::identity(), Word::identity()]);
        assert!(!forests_sv_equivalent(&g, &trivial).unwrap());
    }

    #[test]
    fn commutator_forest() {
        // Third strand labelled [μ1, μ2] = μ̄2 μ1 μ2 μ̄1.
        let a = Word::gen(Gen(0));
        let b = Word::gen(Gen(2));
        let g = strands(&[Word::identity(), Word::identity(), a.commutator(&b)]);
        let t = milnor_invariants(&g).unwrap();
        assert_eq!(t.get(&[0, 1], 2, 1), BigInt::from(1));
        assert_eq!(t.get(&[1, 0], 2, 1), BigInt::from(-1));
        assert_eq!(t.get(&[0], 2, 1), BigInt::zero());
    }

    #[test]
    fn arc_through_other_vertices() {
        // The label uses the final vertex of strand 1, a conjugate of μ1.
        let g = strands(&[w(&[(2, 1)]), w(&[(1, 1)])]);
        let direct = milnor_invariants(&g).unwrap();
        assert_eq!(direct.get(&[0], 1, 1), BigInt::from(1));
        assert_eq!(direct.get(&[1], 0, 1), BigInt::from(1));
    }

    #[test]
    fn rejects_non_forests() {
        let g = WGraph::from_parts(&[(Gen(0), false)], vec![Edge::new(Gen(0), Gen(0), Word::identity())]).unwrap();
        assert!(!is_welded_forest(&g));
        assert_eq!(milnor_invariants(&g), Err(MilnorError::NotForest(0)));
        let a = strands(&[Word::identity()]);
        let b = strands(&[Word::identity(), Word::identity()]);
        assert!(matches!(forests_sv_equivalent(&a, &b), Err(MilnorError::TypeMismatch(..))));
    }
}
