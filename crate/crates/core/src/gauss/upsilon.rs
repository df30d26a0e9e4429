//! The Υ move and its expansion into Reid moves when no other arrow meets
//! the pattern.
//!
//! Read along one component, the forward side of the pattern at arrow `A` is
//!
//! ```text
//! x_t  w̄  hC(-η)  hA'(-ε)  x_r  hA(ε)  hC'(η)  w  x_b
//! ```
//!
//! where `x_t`, `x_r`, `x_b` are maximal runs of tails, `x_t` holds the tails
//! of `A` and `A'`, `x_r` those of `C` and `C'`, and `w`, `w̄` are runs of
//! heads whose arrows pair up with opposite signs and tails in a common run,
//! `w̄` read backwards. The move carries `tA tA'` to the front of `x_b`; the
//! backward side has them there and moves them to the end of `x_t`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Mutex, OnceLock};

use crate::freegroup::Sign;

use super::search::{connect, BlockMove, BlockPath, Blocks};
use super::{mismatch, ArrowId, Endpoint, GaussDiagram, GaussError, GaussMove, Kind, Site};

/// Half-open run of positions, in unwrapped coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    start: isize,
    end: isize,
}

impl Span {
    fn contains(&self, i: isize) -> bool {
        self.start <= i && i < self.end
    }

    fn len(&self) -> usize {
        (self.end - self.start) as usize
    }
}

/// A matched Υ pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsilonPattern {
    pub comp: usize,
    pub a: ArrowId,
    pub a2: ArrowId,
    pub c: ArrowId,
    pub c2: ArrowId,
    pub eps: Sign,
    pub eta: Sign,
    /// Head run after `hC'`.
    pub w: Vec<ArrowId>,
    /// Head run before `hC`.
    pub wbar: Vec<ArrowId>,
    pub top: Vec<ArrowId>,
    pub right: Vec<ArrowId>,
    pub bottom: Vec<ArrowId>,
    xt: Span,
    xb: Span,
}

/// Cyclic (links) or bounded (string links) view of one component.
struct Ring<'a> {
    seq: &'a [Endpoint],
    link: bool,
}

impl Ring<'_> {
    fn n(&self) -> isize {
        self.seq.len() as isize
    }

    fn at(&self, i: isize) -> Option<Endpoint> {
        if self.link {
            Some(self.seq[i.rem_euclid(self.n()) as usize])
        } else if (0..self.n()).contains(&i) {
            Some(self.seq[i as usize])
        } else {
            None
        }
    }

    fn is_tail(&self, i: isize) -> bool {
        self.at(i).is_some_and(|p| p.is_tail())
    }

    fn head(&self, i: isize, what: &str) -> Result<ArrowId, GaussError> {
        match self.at(i) {
            Some(p) if p.is_head() => Ok(p.arrow),
            _ => Err(mismatch(what, "expected a head")),
        }
    }

    /// Unwrapped offset of the index `i` relative to `p`, in `(0, n)` on links.
    fn offset(&self, p: isize, i: isize) -> isize {
        if self.link {
            (i - p).rem_euclid(self.n())
        } else {
            i - p
        }
    }

    fn arrows(&self, s: Span) -> Vec<ArrowId> {
        (s.start..s.end).map(|i| self.at(i).expect("span in range").arrow).collect()
    }
}

impl GaussDiagram {
    /// Matches the Υ pattern at `arrow`; `forward` expects the tails of `A`
    /// and `A'` in `x_t`, otherwise in `x_b`.
    pub fn upsilon_pattern(&self, arrow: ArrowId, forward: bool) -> Result<UpsilonPattern, GaussError> {
        let (comp, hp) = self.head_of(arrow)?;
        let (tc, ti) = self.tail_of(arrow)?;
        if tc != comp {
            return Err(mismatch(arrow, "Υ needs a self-arrow"));
        }
        let ring = Ring {
            seq: &self.comps[comp],
            link: self.kind == Kind::Link,
        };
        let n = ring.n();
        let p = hp as isize;
        let c2 = ring.head(p + 1, "hC'")?;
        let mut k = p - 1;
        while ring.is_tail(k) && p - k < n {
            k -= 1;
        }
        let xr = Span { start: k + 1, end: p };
        let a2 = ring.head(xr.start - 1, "hA'")?;
        let hc = xr.start - 2;
        let c = ring.head(hc, "hC")?;
        let d = ring.offset(p, ti as isize);
        let (xt, wbar, w, xb);
        if forward {
            let t = if ring.link { p + d - n } else { p + d };
            if t >= hc {
                return Err(mismatch(arrow, "tail of A is not before the pattern"));
            }
            let mut e = t + 1;
            while e < hc && ring.is_tail(e) {
                e += 1;
            }
            wbar = Span { start: e, end: hc };
            let m = wbar.len() as isize;
            w = Span {
                start: p + 2,
                end: p + 2 + m,
            };
            let mut s = t;
            while ring.is_tail(s - 1) && s > w.end - n {
                s -= 1;
            }
            xt = Span { start: s, end: e };
            let mut f = w.end;
            while ring.is_tail(f) && f < xt.start + n {
                f += 1;
            }
            xb = Span { start: w.end, end: f };
        } else {
            let t = p + d;
            let mut e = p + 2;
            while e < t && ring.at(e).is_some_and(|q| q.is_head()) {
                e += 1;
            }
            w = Span { start: p + 2, end: e };
            let m = w.len() as isize;
            wbar = Span {
                start: hc - m,
                end: hc,
            };
            let mut f = e;
            while ring.is_tail(f) && f < wbar.start + n {
                f += 1;
            }
            xb = Span { start: e, end: f };
            if !xb.contains(t) {
                return Err(mismatch(arrow, "tail of A is not after the pattern"));
            }
            let mut s = wbar.start;
            while ring.is_tail(s - 1) && s > xb.end - n {
                s -= 1;
            }
            xt = Span {
                start: s,
                end: wbar.start,
            };
        }
        if xt.start < xb.end - n {
            return Err(mismatch(arrow, "pattern longer than its component"));
        }
        for i in wbar.start..wbar.end {
            ring.head(i, "w̄")?;
        }
        for i in w.start..w.end {
            ring.head(i, "w")?;
        }
        let (top, right, bottom) = (ring.arrows(xt), ring.arrows(xr), ring.arrows(xb));
        let home = if forward { &top } else { &bottom };
        if !home.contains(&arrow) || !home.contains(&a2) {
            return Err(mismatch(arrow, "tails of A and A' are not in one run"));
        }
        if !right.contains(&c) || !right.contains(&c2) {
            return Err(mismatch(arrow, "tails of C and C' are not between hA' and hA"));
        }
        let eps = self.sign(arrow)?;
        let eta = self.sign(c2)?;
        if self.sign(a2)? != eps.flip() || self.sign(c)? != eta.flip() {
            return Err(mismatch(arrow, "signs do not match the Υ pattern"));
        }
        let (w, wbar) = (ring.arrows(w), ring.arrows(wbar));
        for (x, y) in wbar.iter().zip(w.iter().rev()) {
            if self.tail_run(*x)? != self.tail_run(*y)? || self.sign(*x)? == self.sign(*y)? {
                return Err(mismatch(x, "w̄ is not the inverse of w"));
            }
        }
        let word: BTreeSet<ArrowId> = w.iter().chain(&wbar).copied().collect();
        let core = [arrow, a2, c, c2];
        if top
            .iter()
            .chain(&right)
            .chain(&bottom)
            .any(|x| !core.contains(x) && word.contains(x))
        {
            return Err(mismatch(arrow, "a tail run is tied to w"));
        }
        Ok(UpsilonPattern {
            comp,
            a: arrow,
            a2,
            c,
            c2,
            eps,
            eta,
            w,
            wbar,
            top,
            right,
            bottom,
            xt,
            xb,
        })
    }

    /// `(component, first index)` of the maximal tail run holding `tX`.
    pub(crate) fn tail_run(&self, x: ArrowId) -> Result<(usize, usize), GaussError> {
        let (c, i) = self.tail_of(x)?;
        let ring = Ring {
            seq: &self.comps[c],
            link: self.kind == Kind::Link,
        };
        let mut s = i as isize;
        let mut steps = 0;
        while ring.is_tail(s - 1) && steps < ring.n() {
            s -= 1;
            steps += 1;
        }
        if steps == ring.n() {
            return Ok((c, 0));
        }
        Ok((c, s.rem_euclid(ring.n()) as usize))
    }

    pub(crate) fn upsilon(&mut self, arrow: ArrowId, forward: bool) -> Result<(), GaussError> {
        let pat = self.upsilon_pattern(arrow, forward)?;
        let link = self.kind == Kind::Link;
        let seq = &self.comps[pat.comp];
        let n = seq.len() as isize;
        let base = if link { pat.xt.start } else { 0 };
        let rot = base.rem_euclid(n.max(1)) as usize;
        let mut lin: Vec<Endpoint> = seq[rot..].iter().chain(&seq[..rot]).copied().collect();
        let moving = [Endpoint::tail(pat.a), Endpoint::tail(pat.a2)];
        lin.retain(|q| !moving.contains(q));
        let at = if forward {
            (pat.xb.start - base) as usize - 2
        } else {
            (pat.xt.end - base) as usize
        };
        lin.splice(at..at, moving);
        let split = lin.len() - rot;
        self.comps[pat.comp] = lin[split..].iter().chain(&lin[..split]).copied().collect();
        Ok(())
    }
}

/// Heads in order and the tail runs between them, as `(start, arrows)`.
struct Layout {
    blocks: Vec<(usize, Vec<ArrowId>)>,
    heads: Vec<ArrowId>,
}

impl Layout {
    fn of(d: &GaussDiagram) -> Layout {
        let mut blocks = vec![(0, Vec::new())];
        let mut heads = Vec::new();
        for (i, p) in d.comps[0].iter().enumerate() {
            if p.is_head() {
                heads.push(p.arrow);
                blocks.push((i + 1, Vec::new()));
            } else {
                blocks.last_mut().expect("nonempty").1.push(p.arrow);
            }
        }
        Layout { blocks, heads }
    }

    fn label(&self, a: ArrowId) -> u8 {
        self.heads.iter().position(|h| *h == a).expect("known arrow") as u8
    }

    fn block_of(&self, a: ArrowId) -> usize {
        self.blocks
            .iter()
            .position(|(_, b)| b.contains(&a))
            .expect("known arrow")
    }

    fn canonical(&self, d: &GaussDiagram) -> Blocks {
        Blocks {
            blocks: self
                .blocks
                .iter()
                .map(|(_, b)| {
                    let mut v: Vec<u8> = b.iter().map(|a| self.label(*a)).collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
            signs: self.heads.iter().map(|a| d.signs[a].as_i64() as i8).collect(),
        }
    }

    /// Splits block `b` by a mask over its sorted labels.
    fn split(&self, b: usize, mask: u32) -> (Vec<ArrowId>, Vec<ArrowId>) {
        let mut members: Vec<(u8, ArrowId)> = self.blocks[b].1.iter().map(|a| (self.label(*a), *a)).collect();
        members.sort_unstable();
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        for (k, (_, a)) in members.into_iter().enumerate() {
            if mask & (1 << k) != 0 {
                s1.push(a);
            } else {
                s2.push(a);
            }
        }
        (s1, s2)
    }
}

/// Replays local moves on a one-component window of a larger diagram.
struct Session {
    local: GaussDiagram,
    global: GaussDiagram,
    comp: usize,
    trace: Vec<GaussMove>,
}

impl Session {
    fn step(&mut self, m: GaussMove) -> Result<(), GaussError> {
        let (_, off) = self.global.locate(self.local.comps[0][0])?;
        let n = self.global.comps[self.comp].len();
        let gap = |g: usize| {
            let x = off + g;
            if x > n {
                x - n
            } else {
                x
            }
        };
        let site = |s: Site| Site {
            comp: self.comp,
            pos: gap(s.pos),
        };
        let g = match m.clone() {
            GaussMove::Reid1Insert {
                site: s,
                sign,
                head_first,
            } => GaussMove::Reid1Insert {
                site: site(s),
                sign,
                head_first,
            },
            GaussMove::Reid2Insert {
                head,
                tail,
                sign,
                tails_swapped,
                tails_first,
            } => {
                let (h, t) = (site(head), site(tail));
                let tails_first = if h.pos == t.pos && head.pos != tail.pos {
                    tail.pos > head.pos
                } else {
                    tails_first
                };
                GaussMove::Reid2Insert {
                    head: h,
                    tail: t,
                    sign,
                    tails_swapped,
                    tails_first,
                }
            }
            GaussMove::Tc { pos, .. } => GaussMove::Tc {
                comp: self.comp,
                pos: (off + pos) % n,
            },
            other => other,
        };
        self.local.apply_in_place(&m)?;
        self.global.apply_in_place(&g)?;
        self.trace.push(g);
        Ok(())
    }

    /// Reorders block `b` of the local window into `order` with TC moves.
    fn arrange(&mut self, b: usize, order: &[ArrowId]) -> Result<(), GaussError> {
        let lay = Layout::of(&self.local);
        let (start, mut cur) = lay.blocks[b].clone();
        for (i, x) in order.iter().enumerate() {
            let mut j = cur.iter().position(|y| y == x).expect("block member");
            while j > i {
                self.step(GaussMove::Tc {
                    comp: 0,
                    pos: start + j - 1,
                })?;
                cur.swap(j - 1, j);
                j -= 1;
            }
        }
        Ok(())
    }

    fn realize(&mut self, m: BlockMove) -> Result<(), GaussError> {
        let lay = Layout::of(&self.local);
        let sign = |s: i8| Sign::from_i64(s as i64).expect("unit sign");
        let without = |b: usize, xs: &[ArrowId]| -> Vec<ArrowId> {
            lay.blocks[b].1.iter().filter(|a| !xs.contains(a)).copied().collect()
        };
        match m {
            BlockMove::R1Insert {
                block,
                mask,
                head_first,
                sign: s,
            } => {
                let (s1, s2) = lay.split(block, mask);
                let at = lay.blocks[block].0 + s1.len();
                self.arrange(block, &[s1, s2].concat())?;
                self.step(GaussMove::Reid1Insert {
                    site: Site { comp: 0, pos: at },
                    sign: sign(s),
                    head_first,
                })
            }
            BlockMove::R1Delete { arrow } => {
                let x = lay.heads[arrow as usize];
                let b = lay.block_of(x);
                let rest = without(b, &[x]);
                let order = if b == arrow as usize {
                    [rest, vec![x]].concat()
                } else {
                    [vec![x], rest].concat()
                };
                self.arrange(b, &order)?;
                self.step(GaussMove::Reid1Delete { arrow: x })
            }
            BlockMove::R2Insert {
                block,
                mask,
                sign: s,
                target,
            } => {
                let (s1, s2) = lay.split(block, mask);
                let start = lay.blocks[block].0;
                let head = start + s1.len();
                let end_of = |b: usize| lay.blocks[b].0 + lay.blocks[b].1.len();
                let (tail, tails_first) = if target == block {
                    (head, true)
                } else if target == block + 2 {
                    (end_of(block), false)
                } else if target < block {
                    (end_of(target), false)
                } else {
                    (end_of(target - 2), false)
                };
                self.arrange(block, &[s1, s2].concat())?;
                self.step(GaussMove::Reid2Insert {
                    head: Site { comp: 0, pos: head },
                    tail: Site { comp: 0, pos: tail },
                    sign: sign(s),
                    tails_swapped: false,
                    tails_first,
                })
            }
            BlockMove::R2Delete { p, q } => {
                let (x, y) = (lay.heads[p as usize], lay.heads[q as usize]);
                let b = lay.block_of(x);
                self.arrange(b, &[without(b, &[x, y]), vec![x, y]].concat())?;
                self.step(GaussMove::Reid2Delete { a: x, b: y })
            }
            BlockMove::R3 { a, c, c2 } => {
                let (xa, xc, xc2) = (lay.heads[a as usize], lay.heads[c as usize], lay.heads[c2 as usize]);
                let ta = lay.block_of(xa);
                let beta = lay.block_of(xc);
                let before = ta == c as usize;
                if ta == beta {
                    let rest = without(ta, &[xa, xc, xc2]);
                    let order = if before {
                        [rest, vec![xc, xc2, xa]].concat()
                    } else {
                        [vec![xa, xc, xc2], rest].concat()
                    };
                    self.arrange(ta, &order)?;
                } else {
                    let rest = without(ta, &[xa]);
                    let order = if before {
                        [rest, vec![xa]].concat()
                    } else {
                        [vec![xa], rest].concat()
                    };
                    self.arrange(ta, &order)?;
                    self.arrange(beta, &[without(beta, &[xc, xc2]), vec![xc, xc2]].concat())?;
                }
                self.step(GaussMove::Reid3 { a: xa, c: xc, c2: xc2 })
            }
        }
    }
}

type PathCache = Mutex<BTreeMap<(Blocks, Blocks), Option<BlockPath>>>;

fn cached_path(from: &Blocks, to: &Blocks) -> Option<BlockPath> {
    static CACHE: OnceLock<PathCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (from.clone(), to.clone());
    if let Some(p) = cache.lock().expect("cache lock").get(&key) {
        return p.clone();
    }
    let path = connect(from, to, 5, 6);
    cache.lock().expect("cache lock").insert(key, path.clone());
    path
}

/// Expands the forward Υ move at `arrow` into Reid1/2/3 and TC moves, for a
/// pattern with empty `w`, `x_t = {tA, tA'}`, `x_r = {tC, tC'}` and `η = -ε`.
/// Replaying the trace on `d` gives `d` after the Υ move, up to arrow names.
pub fn trivial_upsilon(d: &GaussDiagram, arrow: ArrowId) -> Result<Vec<GaussMove>, GaussError> {
    let pat = d.upsilon_pattern(arrow, true)?;
    if !pat.w.is_empty() {
        return Err(mismatch(arrow, "w is not empty"));
    }
    if pat.top.len() != 2 || pat.right.len() != 2 {
        return Err(mismatch(arrow, "interfering tail in the pattern"));
    }
    if pat.eta != pat.eps.flip() {
        return Err(mismatch(arrow, "needs η = -ε"));
    }
    let ring = Ring {
        seq: &d.comps[pat.comp],
        link: d.kind == Kind::Link,
    };
    let window: Vec<Endpoint> = (pat.xt.start..pat.xt.start + 8)
        .map(|i| ring.at(i).expect("pattern in range"))
        .collect();
    let signs = [pat.a, pat.a2, pat.c, pat.c2]
        .into_iter()
        .map(|x| (x, d.signs[&x]))
        .collect();
    let mut local = GaussDiagram::new(Kind::StringLink, vec![window], signs)?;
    local.next = d.next;
    let target = local.apply(&GaussMove::Upsilon { arrow, forward: true })?;
    let from = Layout::of(&local).canonical(&local);
    let goal_layout = Layout::of(&target);
    let goal = goal_layout.canonical(&target);
    let path = cached_path(&from, &goal).ok_or_else(|| mismatch(arrow, "no Reid path found"))?;
    let mut s = Session {
        local,
        global: d.clone(),
        comp: pat.comp,
        trace: Vec::new(),
    };
    for (k, m) in path.moves.iter().enumerate() {
        s.realize(*m)?;
        let lay = Layout::of(&s.local);
        if lay.canonical(&s.local) != path.states[k + 1] {
            return Err(mismatch(arrow, "block move realized incorrectly"));
        }
    }
    // Match the tail order of each run to the target.
    let lay = Layout::of(&s.local);
    for (b, (_, want)) in goal_layout.blocks.iter().enumerate() {
        let order: Vec<ArrowId> = want
            .iter()
            .map(|x| lay.heads[goal_layout.label(*x) as usize])
            .collect();
        s.arrange(b, &order)?;
    }
    if !s.local.same_diagram(&target) {
        return Err(mismatch(arrow, "expansion does not reach the Υ image"));
    }
    Ok(s.trace)
}
