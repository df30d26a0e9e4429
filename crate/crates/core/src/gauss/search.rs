//! Bounded search for Reid1/2/3 paths between one-component string-link
//! diagrams, working modulo TC.
//!
//! A state lists the heads in order and, between consecutive heads, the set
//! of tails found there. Arrows are named by the position of their head, which
//! makes the representation canonical.

use std::collections::{BTreeMap, VecDeque};

/// Canonical block form: `blocks[i]` precedes head `i`, head `i` precedes
/// `blocks[i + 1]`; head `i` belongs to arrow `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Blocks {
    pub blocks: Vec<Vec<u8>>,
    pub signs: Vec<i8>,
}

/// Moves on block forms; arrows are canonical labels of the source state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum BlockMove {
    /// New self-arrow at a gap of `block`; `mask` selects the tails kept
    /// before the gap (bit `k` is the `k`-th smallest label of the block).
    R1Insert {
        block: usize,
        mask: u32,
        head_first: bool,
        sign: i8,
    },
    R1Delete { arrow: u8 },
    /// Heads `P` (sign `sign`), `Q` inserted at a gap of `block`; both tails
    /// go to block `target` of the state after the heads are inserted.
    R2Insert {
        block: usize,
        mask: u32,
        sign: i8,
        target: usize,
    },
    R2Delete { p: u8, q: u8 },
    R3 { a: u8, c: u8, c2: u8 },
}

/// Non-canonical intermediate: heads carry explicit ids.
struct Raw {
    blocks: Vec<Vec<u8>>,
    heads: Vec<(u8, i8)>,
}

impl Raw {
    fn from(s: &Blocks) -> Raw {
        Raw {
            blocks: s.blocks.clone(),
            heads: s.signs.iter().enumerate().map(|(i, &g)| (i as u8, g)).collect(),
        }
    }

    fn canonical(&self) -> Blocks {
        let mut name = [u8::MAX; 256];
        for (i, (id, _)) in self.heads.iter().enumerate() {
            name[*id as usize] = i as u8;
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut v: Vec<u8> = b.iter().map(|x| name[*x as usize]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Blocks {
            blocks,
            signs: self.heads.iter().map(|(_, s)| *s).collect(),
        }
    }

    fn tail_block(&self, a: u8) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&a))
            .expect("every arrow has a tail")
    }

    fn split(&mut self, block: usize, mask: u32) -> (Vec<u8>, Vec<u8>) {
        let b = &self.blocks[block];
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for (k, x) in b.iter().enumerate() {
            if mask & (1 << k) != 0 {
                s1.push(*x);
            } else {
                s2.push(*x);
            }
        }
        (s1, s2)
    }
}

impl Blocks {
    pub fn arrows(&self) -> usize {
        self.signs.len()
    }

    fn block_of(&self, a: u8) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&a))
            .expect("every arrow has a tail")
    }

    /// Applies a block move, or `None` when its pattern is absent.
    pub fn apply(&self, m: BlockMove) -> Option<Blocks> {
        let n = self.arrows() as u8;
        let mut r = Raw::from(self);
        match m {
            BlockMove::R1Insert {
                block,
                mask,
                head_first,
                sign,
            } => {
                let (s1, s2) = r.split(block, mask);
                let (left, right) = if head_first {
                    let mut right = vec![n];
                    right.extend(s2);
                    (s1, right)
                } else {
                    let mut left = s1;
                    left.push(n);
                    (left, s2)
                };
                r.blocks[block] = left;
                r.blocks.insert(block + 1, right);
                r.heads.insert(block, (n, sign));
            }
            BlockMove::R1Delete { arrow } => {
                let j = arrow as usize;
                let tb = self.block_of(arrow);
                if tb != j && tb != j + 1 {
                    return None;
                }
                r.blocks[tb].retain(|x| *x != arrow);
                let after = r.blocks.remove(j + 1);
                r.blocks[j].extend(after);
                r.heads.remove(j);
            }
            BlockMove::R2Insert {
                block,
                mask,
                sign,
                target,
            } => {
                if target == block + 1 {
                    return None;
                }
                let (s1, s2) = r.split(block, mask);
                r.blocks[block] = s1;
                r.blocks.insert(block + 1, s2);
                r.blocks.insert(block + 1, Vec::new());
                r.heads.insert(block, (n + 1, -sign));
                r.heads.insert(block, (n, sign));
                if target >= r.blocks.len() {
                    return None;
                }
                r.blocks[target].push(n);
                r.blocks[target].push(n + 1);
            }
            BlockMove::R2Delete { p, q } => {
                let i = p as usize;
                if q != p + 1 || self.signs[i] != -self.signs[i + 1] {
                    return None;
                }
                if !self.blocks[i + 1].is_empty() || self.block_of(p) != self.block_of(q) {
                    return None;
                }
                let b = self.block_of(p);
                r.blocks[b].retain(|x| *x != p && *x != q);
                let tail = r.blocks.remove(i + 2);
                r.blocks.remove(i + 1);
                r.blocks[i].extend(tail);
                r.heads.drain(i..i + 2);
            }
            BlockMove::R3 { a, c, c2 } => {
                if a == c || a == c2 || c == c2 || (a as i32 - c2 as i32).abs() != 1 {
                    return None;
                }
                let (lo, hi) = (a.min(c2) as usize, a.max(c2) as usize);
                if !self.blocks[hi].is_empty() || self.block_of(c) != self.block_of(c2) {
                    return None;
                }
                let hc = c as usize;
                let ta = self.block_of(a);
                let before = if ta == hc {
                    true
                } else if ta == hc + 1 {
                    false
                } else {
                    return None;
                };
                let o1: i8 = if before { 1 } else { -1 };
                let o2: i8 = if a < c2 { 1 } else { -1 };
                if self.signs[c2 as usize] != o1 * o2 * self.signs[c as usize] {
                    return None;
                }
                r.blocks[ta].retain(|x| *x != a);
                let dest = if before { hc + 1 } else { hc };
                r.blocks[dest].push(a);
                r.heads.swap(lo, hi);
                debug_assert_eq!(r.tail_block(a), dest);
            }
        }
        Some(r.canonical())
    }

    /// Every applicable move with its result, in a fixed order.
    pub fn successors(&self, max_arrows: usize) -> Vec<(BlockMove, Blocks)> {
        let n = self.arrows();
        let mut out = Vec::new();
        let mut push = |m: BlockMove| {
            if let Some(s) = self.apply(m) {
                out.push((m, s));
            }
        };
        if n < max_arrows {
            for (block, b) in self.blocks.iter().enumerate() {
                for mask in 0..(1u32 << b.len()) {
                    for head_first in [false, true] {
                        for sign in [1, -1] {
                            push(BlockMove::R1Insert {
                                block,
                                mask,
                                head_first,
                                sign,
                            });
                        }
                    }
                }
            }
        }
        if n + 1 < max_arrows {
            for (block, b) in self.blocks.iter().enumerate() {
                for mask in 0..(1u32 << b.len()) {
                    for sign in [1, -1] {
                        for target in 0..self.blocks.len() + 2 {
                            push(BlockMove::R2Insert {
                                block,
                                mask,
                                sign,
                                target,
                            });
                        }
                    }
                }
            }
        }
        for arrow in 0..n as u8 {
            push(BlockMove::R1Delete { arrow });
        }
        for p in 0..n.saturating_sub(1) as u8 {
            push(BlockMove::R2Delete { p, q: p + 1 });
        }
        for a in 0..n as u8 {
            for c2 in [a.wrapping_sub(1), a + 1] {
                if c2 as usize >= n {
                    continue;
                }
                for c in 0..n as u8 {
                    push(BlockMove::R3 { a, c, c2 });
                }
            }
        }
        out
    }
}

struct Visit {
    parent: Option<(Blocks, BlockMove)>,
    depth: usize,
}

fn bfs(start: &Blocks, depth: usize, max_arrows: usize) -> BTreeMap<Blocks, Visit> {
    let mut seen = BTreeMap::new();
    seen.insert(
        start.clone(),
        Visit {
            parent: None,
            depth: 0,
        },
    );
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(s) = queue.pop_front() {
        let d = seen[&s].depth;
        if d == depth {
            continue;
        }
        for (m, t) in s.successors(max_arrows) {
            if !seen.contains_key(&t) {
                seen.insert(
                    t.clone(),
                    Visit {
                        parent: Some((s.clone(), m)),
                        depth: d + 1,
                    },
                );
                queue.push_back(t);
            }
        }
    }
    seen
}

fn trace_back(map: &BTreeMap<Blocks, Visit>, end: &Blocks) -> (Vec<Blocks>, Vec<BlockMove>) {
    let mut states = vec![end.clone()];
    let mut moves = Vec::new();
    let mut cur = end.clone();
    while let Some((p, m)) = &map[&cur].parent {
        moves.push(*m);
        states.push(p.clone());
        cur = p.clone();
    }
    states.reverse();
    moves.reverse();
    (states, moves)
}

/// A path from `from` to `to` as a state list and the moves between
/// consecutive states.
#[derive(Debug, Clone)]
pub(crate) struct BlockPath {
    pub states: Vec<Blocks>,
    pub moves: Vec<BlockMove>,
}

/// Meet-in-the-middle search with `depth` moves from each side.
pub(crate) fn connect(from: &Blocks, to: &Blocks, depth: usize, max_arrows: usize) -> Option<BlockPath> {
    let left = bfs(from, depth, max_arrows);
    let right = bfs(to, depth, max_arrows);
    let meet = left
        .iter()
        .filter_map(|(s, v)| right.get(s).map(|w| (v.depth + w.depth, s)))
        .min()?
        .1
        .clone();
    let (mut states, mut moves) = trace_back(&left, &meet);
    let (rstates, _) = trace_back(&right, &meet);
    // Walk the right half backwards, recovering each reverse step.
    for k in (0..rstates.len() - 1).rev() {
        let (cur, prev) = (&rstates[k + 1], &rstates[k]);
        let m = cur
            .successors(max_arrows.max(cur.arrows() + 2))
            .into_iter()
            .find(|(_, t)| t == prev)
            .map(|(m, _)| m)?;
        moves.push(m);
        states.push(prev.clone());
    }
    Some(BlockPath { states, moves })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_delete_inverse() {
        let s = Blocks {
            blocks: vec![vec![1], vec![0], vec![]],
            signs: vec![1, -1],
        };
        for (m, t) in s.successors(4) {
            let back = t.successors(4).into_iter().any(|(_, u)| u == s);
            assert!(back, "{m:?} has no inverse");
        }
    }
}
