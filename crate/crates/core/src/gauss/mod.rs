//! Gauss diagrams of welded links and string links.
//!
//! A diagram is a list of components, each a sequence of arrow endpoints;
//! link components are read cyclically. Arrows carry a sign.

mod moves;
mod search;
mod star;
mod upsilon;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::freegroup::Sign;

pub use moves::{GaussMove, Site};
pub use star::{exchange, lemma_star};
pub use upsilon::{trivial_upsilon, UpsilonPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrowEnd {
    Tail,
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub arrow: ArrowId,
    pub end: ArrowEnd,
}

impl Endpoint {
    pub fn tail(a: ArrowId) -> Endpoint {
        Endpoint {
            arrow: a,
            end: ArrowEnd::Tail,
        }
    }

    pub fn head(a: ArrowId) -> Endpoint {
        Endpoint {
            arrow: a,
            end: ArrowEnd::Head,
        }
    }

    pub fn is_tail(&self) -> bool {
        self.end == ArrowEnd::Tail
    }

    pub fn is_head(&self) -> bool {
        self.end == ArrowEnd::Head
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Link,
    StringLink,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("arrow {0} does not have exactly one tail and one head")]
    Malformed(ArrowId),
    #[error("arrow {0} has no sign")]
    Unsigned(ArrowId),
    #[error("arrow {0} does not exist")]
    UnknownArrow(ArrowId),
    #[error("component {} does not exist", .0 + 1)]
    UnknownComponent(usize),
    #[error("position {pos} is out of range on component {}", comp + 1)]
    BadPosition { comp: usize, pos: usize },
    #[error("pattern mismatch at {at}: {why}")]
    Pattern { at: String, why: String },
    #[error("move not available on {0:?} diagrams")]
    WrongKind(Kind),
    #[error("separating head word is not trivial")]
    NontrivialWord,
}

pub(crate) fn mismatch(at: impl fmt::Display, why: impl Into<String>) -> GaussError {
    GaussError::Pattern {
        at: at.to_string(),
        why: why.into(),
    }
}

#[derive(Debug, Clone)]
pub struct GaussDiagram {
    kind: Kind,
    comps: Vec<Vec<Endpoint>>,
    signs: BTreeMap<ArrowId, Sign>,
    next: u32,
}

impl PartialEq for GaussDiagram {
    fn eq(&self, other: &GaussDiagram) -> bool {
        self.kind == other.kind && self.comps == other.comps && self.signs == other.signs
    }
}

impl Eq for GaussDiagram {}

impl GaussDiagram {
    pub fn new(
        kind: Kind,
        comps: Vec<Vec<Endpoint>>,
        signs: BTreeMap<ArrowId, Sign>,
    ) -> Result<GaussDiagram, GaussError> {
        let next = signs.keys().next_back().map_or(0, |a| a.0 + 1);
        let d = GaussDiagram {
            kind,
            comps,
            signs,
            next,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn empty(kind: Kind, ncomp: usize) -> GaussDiagram {
        GaussDiagram {
            kind,
            comps: vec![Vec::new(); ncomp],
            signs: BTreeMap::new(),
            next: 0,
        }
    }

    pub fn validate(&self) -> Result<(), GaussError> {
        let mut tails = BTreeSet::new();
        let mut heads = BTreeSet::new();
        for p in self.comps.iter().flatten() {
            let fresh = match p.end {
                ArrowEnd::Tail => tails.insert(p.arrow),
                ArrowEnd::Head => heads.insert(p.arrow),
            };
            if !fresh {
                return Err(GaussError::Malformed(p.arrow));
            }
        }
        if let Some(a) = tails.symmetric_difference(&heads).next() {
            return Err(GaussError::Malformed(*a));
        }
        for a in &tails {
            if !self.signs.contains_key(a) {
                return Err(GaussError::Unsigned(*a));
            }
        }
        if let Some(a) = self.signs.keys().find(|a| !tails.contains(a)) {
            return Err(GaussError::Malformed(*a));
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn components(&self) -> &[Vec<Endpoint>] {
        &self.comps
    }

    pub fn component(&self, c: usize) -> Result<&[Endpoint], GaussError> {
        self.comps
            .get(c)
            .map(|v| v.as_slice())
            .ok_or(GaussError::UnknownComponent(c))
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn arrows(&self) -> impl Iterator<Item = (ArrowId, Sign)> + '_ {
        self.signs.iter().map(|(a, s)| (*a, *s))
    }

    pub fn num_arrows(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, a: ArrowId) -> Result<Sign, GaussError> {
        self.signs.get(&a).copied().ok_or(GaussError::UnknownArrow(a))
    }

    /// `(component, index)` of an endpoint.
    pub fn locate(&self, p: Endpoint) -> Result<(usize, usize), GaussError> {
        for (c, comp) in self.comps.iter().enumerate() {
            if let Some(i) = comp.iter().position(|q| *q == p) {
                return Ok((c, i));
            }
        }
        Err(GaussError::UnknownArrow(p.arrow))
    }

    pub fn tail_of(&self, a: ArrowId) -> Result<(usize, usize), GaussError> {
        self.locate(Endpoint::tail(a))
    }

    pub fn head_of(&self, a: ArrowId) -> Result<(usize, usize), GaussError> {
        self.locate(Endpoint::head(a))
    }

    pub(crate) fn fresh_arrow(&mut self, sign: Sign) -> ArrowId {
        let a = ArrowId(self.next);
        self.next += 1;
        self.signs.insert(a, sign);
        a
    }

    /// Next index after `i` on component `c`, wrapping on links.
    pub(crate) fn succ(&self, c: usize, i: usize) -> Option<usize> {
        let n = self.comps[c].len();
        if i + 1 < n {
            Some(i + 1)
        } else if self.kind == Kind::Link && n > 1 {
            Some(0)
        } else {
            None
        }
    }

    /// Whether the two endpoints are consecutive on one component; returns
    /// `Some(true)` when `p` comes right before `q`.
    pub(crate) fn adjacency(&self, p: Endpoint, q: Endpoint) -> Result<Option<bool>, GaussError> {
        let (cp, ip) = self.locate(p)?;
        let (cq, iq) = self.locate(q)?;
        if cp != cq {
            return Ok(None);
        }
        if self.succ(cp, ip) == Some(iq) {
            Ok(Some(true))
        } else if self.succ(cq, iq) == Some(ip) {
            Ok(Some(false))
        } else {
            Ok(None)
        }
    }

    /// Arrow ids renumbered by first appearance, with each link component
    /// rotated to a canonical basepoint. Equal keys mean equal diagrams up to
    /// arrow names and, for links, basepoints.
    pub fn canonical(&self) -> CanonicalDiagram {
        let rotations: Vec<Vec<usize>> = (0..self.comps.len())
            .map(|c| match self.kind {
                Kind::StringLink => vec![0],
                Kind::Link => self.best_rotations(c),
            })
            .collect();
        let mut best: Option<CanonicalDiagram> = None;
        let mut choice = vec![0usize; rotations.len()];
        loop {
            let rot: Vec<usize> = choice.iter().enumerate().map(|(c, &k)| rotations[c][k]).collect();
            let cand = self.relabel(&rot);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            let mut c = 0;
            loop {
                if c == choice.len() {
                    return best.expect("at least one rotation");
                }
                choice[c] += 1;
                if choice[c] < rotations[c].len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
        }
    }

    /// Rotations of link component `c` minimizing a basepoint-free encoding.
    fn best_rotations(&self, c: usize) -> Vec<usize> {
        let seq = &self.comps[c];
        let n = seq.len();
        if n == 0 {
            return vec![0];
        }
        let enc: Vec<(u8, i8, usize, usize)> = seq
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let other = Endpoint {
                    arrow: p.arrow,
                    end: match p.end {
                        ArrowEnd::Tail => ArrowEnd::Head,
                        ArrowEnd::Head => ArrowEnd::Tail,
                    },
                };
                let (oc, oi) = self.locate(other).expect("valid diagram");
                let dist = if oc == c { (oi + n - i) % n } else { usize::MAX };
                (p.end as u8, self.signs[&p.arrow].as_i64() as i8, oc, dist)
            })
            .collect();
        let rot = |k: usize| -> Vec<(u8, i8, usize, usize)> {
            enc[k..].iter().chain(enc[..k].iter()).copied().collect()
        };
        let mut best = rot(0);
        let mut out = vec![0];
        for k in 1..n {
            let r = rot(k);
            match r.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = r;
                    out = vec![k];
                }
                std::cmp::Ordering::Equal => out.push(k),
                std::cmp::Ordering::Greater => {}
            }
        }
        out
    }

    fn relabel(&self, rot: &[usize]) -> CanonicalDiagram {
        let mut names: BTreeMap<ArrowId, u32> = BTreeMap::new();
        let mut comps = Vec::with_capacity(self.comps.len());
        for (c, seq) in self.comps.iter().enumerate() {
            let k = rot[c];
            let mut out = Vec::with_capacity(seq.len());
            for p in seq[k..].iter().chain(seq[..k].iter()) {
                let next = names.len() as u32;
                let id = *names.entry(p.arrow).or_insert(next);
                out.push((p.end == ArrowEnd::Head, id));
            }
            comps.push(out);
        }
        let mut signs = vec![0i8; names.len()];
        for (a, id) in &names {
            signs[*id as usize] = self.signs[a].as_i64() as i8;
        }
        CanonicalDiagram {
            link: self.kind == Kind::Link,
            comps,
            signs,
        }
    }

    /// Whether the two diagrams agree up to arrow names (and basepoints of
    /// link components).
    pub fn same_diagram(&self, other: &GaussDiagram) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Basepoint- and name-free form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalDiagram {
    link: bool,
    comps: Vec<Vec<(bool, u32)>>,
    signs: Vec<i8>,
}

/// Shorthand used by tests and the format module: `t3` / `h3` tokens.
pub fn parse_tokens(s: &str) -> Option<Vec<Endpoint>> {
    s.split_whitespace()
        .map(|tok| {
            let (end, rest) = match tok.as_bytes().first()? {
                b't' => (ArrowEnd::Tail, &tok[1..]),
                b'h' => (ArrowEnd::Head, &tok[1..]),
                _ => return None,
            };
            rest.parse::<u32>().ok().map(|n| Endpoint {
                arrow: ArrowId(n),
                end,
            })
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn diagram(kind: Kind, comps: &[&str], signs: &[(u32, i64)]) -> GaussDiagram {
        GaussDiagram::new(
            kind,
            comps.iter().map(|c| parse_tokens(c).unwrap()).collect(),
            signs
                .iter()
                .map(|&(a, s)| (ArrowId(a), Sign::from_i64(s).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let bad = GaussDiagram::new(
            Kind::StringLink,
            vec![parse_tokens("t0 h0 h0").unwrap()],
            [(ArrowId(0), Sign::Pos)].into_iter().collect(),
        );
        assert_eq!(bad, Err(GaussError::Malformed(ArrowId(0))));
        let unsigned = GaussDiagram::new(
            Kind::StringLink,
            vec![parse_tokens("t0 h0").unwrap()],
            BTreeMap::new(),
        );
        assert_eq!(unsigned, Err(GaussError::Unsigned(ArrowId(0))));
    }

    #[test]
    fn canonical_ignores_names_and_basepoints() {
        let a = diagram(Kind::Link, &["t0 h1 h0 t1"], &[(0, 1), (1, -1)]);
        let b = diagram(Kind::Link, &["h5 h7 t5 t7"], &[(7, 1), (5, -1)]);
        assert!(a.same_diagram(&b));
        let c = diagram(Kind::StringLink, &["t0 h1 h0 t1"], &[(0, 1), (1, -1)]);
        let d = diagram(Kind::StringLink, &["h1 t1 t0 h0"], &[(0, 1), (1, -1)]);
        assert!(!c.same_diagram(&d));
    }
}
