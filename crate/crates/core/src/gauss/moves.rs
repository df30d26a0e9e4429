//! Welded moves on Gauss diagrams, addressed by positions and arrow ids.

use crate::freegroup::Sign;

use super::{mismatch, ArrowEnd, ArrowId, Endpoint, GaussDiagram, GaussError, Kind};

/// A gap on a component: `pos` ranges over `0..=len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Site {
    pub comp: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GaussMove {
    /// Inserts a self-arrow with adjacent endpoints at a gap.
    Reid1Insert {
        site: Site,
        sign: Sign,
        head_first: bool,
    },
    Reid1Delete { arrow: ArrowId },
    /// Inserts arrows `P` (sign `sign`) and `Q` (opposite sign) with heads
    /// `hP hQ` at `head` and tails at `tail`, both gaps taken before the
    /// move. `tails_first` orders the two pairs when the gaps coincide.
    Reid2Insert {
        head: Site,
        tail: Site,
        sign: Sign,
        tails_swapped: bool,
        tails_first: bool,
    },
    Reid2Delete { a: ArrowId, b: ArrowId },
    /// Arrows `a`, `c`, `c2` with `tA` next to `hC`, `hA` next to `hC2` and
    /// `tC` next to `tC2`; each pair is swapped. The sign of `c2` must be
    /// `o1 o2` times that of `c`, where `o1` (resp. `o2`) is `+` when `tA`
    /// precedes `hC` (resp. `hA` precedes `hC2`).
    Reid3 { a: ArrowId, c: ArrowId, c2: ArrowId },
    /// Swaps two adjacent tails at `pos` and `pos + 1` (cyclically on links).
    Tc { comp: usize, pos: usize },
    /// Inserts a self-arrow with arbitrary endpoints on one component.
    SvInsert {
        comp: usize,
        tail: usize,
        head: usize,
        sign: Sign,
        tail_first: bool,
    },
    SvDelete { arrow: ArrowId },
    /// Reverses a link component and flips arrows heading to it.
    Gr { comp: usize },
    /// The Υ move moving the tails of `arrow` and its partner across the
    /// pattern; `forward` goes from the tails-first side to the other.
    Upsilon { arrow: ArrowId, forward: bool },
}

impl GaussMove {
    pub fn name(&self) -> &'static str {
        match self {
            GaussMove::Reid1Insert { .. } => "r1i",
            GaussMove::Reid1Delete { .. } => "r1d",
            GaussMove::Reid2Insert { .. } => "r2i",
            GaussMove::Reid2Delete { .. } => "r2d",
            GaussMove::Reid3 { .. } => "r3",
            GaussMove::Tc { .. } => "tc",
            GaussMove::SvInsert { .. } => "svi",
            GaussMove::SvDelete { .. } => "svd",
            GaussMove::Gr { .. } => "gr",
            GaussMove::Upsilon { .. } => "upsilon",
        }
    }

    /// Whether the move is one of Reid1/2/3 or TC.
    pub fn is_welded(&self) -> bool {
        matches!(
            self,
            GaussMove::Reid1Insert { .. }
                | GaussMove::Reid1Delete { .. }
                | GaussMove::Reid2Insert { .. }
                | GaussMove::Reid2Delete { .. }
                | GaussMove::Reid3 { .. }
                | GaussMove::Tc { .. }
        )
    }
}

impl GaussDiagram {
    pub fn apply(&self, m: &GaussMove) -> Result<GaussDiagram, GaussError> {
        let mut d = self.clone();
        d.apply_in_place(m)?;
        debug_assert_eq!(d.validate(), Ok(()));
        Ok(d)
    }

    pub(crate) fn apply_in_place(&mut self, m: &GaussMove) -> Result<(), GaussError> {
        match m {
            GaussMove::Reid1Insert {
                site,
                sign,
                head_first,
            } => {
                self.check_gap(*site)?;
                let a = self.fresh_arrow(*sign);
                let pair = if *head_first {
                    [Endpoint::head(a), Endpoint::tail(a)]
                } else {
                    [Endpoint::tail(a), Endpoint::head(a)]
                };
                self.comps[site.comp].splice(site.pos..site.pos, pair);
                Ok(())
            }
            GaussMove::Reid1Delete { arrow } => {
                let adj = self.adjacency(Endpoint::tail(*arrow), Endpoint::head(*arrow))?;
                if adj.is_none() {
                    return Err(mismatch(arrow, "tail and head are not adjacent"));
                }
                self.remove_arrow(*arrow);
                Ok(())
            }
            GaussMove::Reid2Insert {
                head,
                tail,
                sign,
                tails_swapped,
                tails_first,
            } => {
                self.check_gap(*head)?;
                self.check_gap(*tail)?;
                let p = self.fresh_arrow(*sign);
                let q = self.fresh_arrow(sign.flip());
                let heads = vec![Endpoint::head(p), Endpoint::head(q)];
                let tails = if *tails_swapped {
                    vec![Endpoint::tail(q), Endpoint::tail(p)]
                } else {
                    vec![Endpoint::tail(p), Endpoint::tail(q)]
                };
                self.insert_two(*head, heads, *tail, tails, !*tails_first);
                Ok(())
            }
            GaussMove::Reid2Delete { a, b } => {
                if a == b || self.sign(*a)? == self.sign(*b)? {
                    return Err(mismatch(a, "Reid2 needs two arrows of opposite signs"));
                }
                if self.adjacency(Endpoint::head(*a), Endpoint::head(*b))?.is_none() {
                    return Err(mismatch(a, "heads are not adjacent"));
                }
                if self.adjacency(Endpoint::tail(*a), Endpoint::tail(*b))?.is_none() {
                    return Err(mismatch(a, "tails are not adjacent"));
                }
                self.remove_arrow(*a);
                self.remove_arrow(*b);
                Ok(())
            }
            GaussMove::Reid3 { a, c, c2 } => self.reid3(*a, *c, *c2),
            GaussMove::Tc { comp, pos } => {
                let n = self.component(*comp)?.len();
                let j = match self.succ(*comp, *pos) {
                    Some(j) if *pos < n => j,
                    _ => return Err(GaussError::BadPosition { comp: *comp, pos: *pos }),
                };
                let seq = &mut self.comps[*comp];
                if !(seq[*pos].is_tail() && seq[j].is_tail()) {
                    return Err(mismatch(pos, "TC needs two adjacent tails"));
                }
                seq.swap(*pos, j);
                Ok(())
            }
            GaussMove::SvInsert {
                comp,
                tail,
                head,
                sign,
                tail_first,
            } => {
                let (ts, hs) = (
                    Site {
                        comp: *comp,
                        pos: *tail,
                    },
                    Site {
                        comp: *comp,
                        pos: *head,
                    },
                );
                self.check_gap(ts)?;
                self.check_gap(hs)?;
                let a = self.fresh_arrow(*sign);
                self.insert_two(hs, vec![Endpoint::head(a)], ts, vec![Endpoint::tail(a)], !*tail_first);
                Ok(())
            }
            GaussMove::SvDelete { arrow } => {
                let (ct, _) = self.tail_of(*arrow)?;
                let (ch, _) = self.head_of(*arrow)?;
                if ct != ch {
                    return Err(mismatch(arrow, "not a self-arrow"));
                }
                self.remove_arrow(*arrow);
                Ok(())
            }
            GaussMove::Gr { comp } => {
                if self.kind != Kind::Link {
                    return Err(GaussError::WrongKind(self.kind));
                }
                self.component(*comp)?;
                self.comps[*comp].reverse();
                let flipped: Vec<ArrowId> = self.comps[*comp]
                    .iter()
                    .filter(|p| p.is_head())
                    .map(|p| p.arrow)
                    .collect();
                for a in flipped {
                    let s = self.signs.get_mut(&a).expect("valid arrow");
                    *s = s.flip();
                }
                Ok(())
            }
            GaussMove::Upsilon { arrow, forward } => self.upsilon(*arrow, *forward),
        }
    }

    fn check_gap(&self, s: Site) -> Result<(), GaussError> {
        let n = self.component(s.comp)?.len();
        if s.pos > n {
            return Err(GaussError::BadPosition {
                comp: s.comp,
                pos: s.pos,
            });
        }
        Ok(())
    }

    /// Inserts two runs at pre-move gaps; on equal gaps `first_first` puts
    /// run `x` before run `y`.
    fn insert_two(
        &mut self,
        sx: Site,
        x: Vec<Endpoint>,
        sy: Site,
        y: Vec<Endpoint>,
        first_first: bool,
    ) {
        let x_later = sx.comp == sy.comp && (sx.pos > sy.pos || (sx.pos == sy.pos && !first_first));
        // Insert the later run first so the earlier gap index stays valid.
        if x_later {
            self.comps[sx.comp].splice(sx.pos..sx.pos, x);
            self.comps[sy.comp].splice(sy.pos..sy.pos, y);
        } else {
            self.comps[sy.comp].splice(sy.pos..sy.pos, y);
            self.comps[sx.comp].splice(sx.pos..sx.pos, x);
        }
    }

    pub(crate) fn remove_arrow(&mut self, a: ArrowId) {
        for seq in &mut self.comps {
            seq.retain(|p| p.arrow != a);
        }
        self.signs.remove(&a);
    }

    fn reid3(&mut self, a: ArrowId, c: ArrowId, c2: ArrowId) -> Result<(), GaussError> {
        if a == c || a == c2 || c == c2 {
            return Err(mismatch(a, "Reid3 needs three distinct arrows"));
        }
        let o1 = self
            .adjacency(Endpoint::tail(a), Endpoint::head(c))?
            .ok_or_else(|| mismatch(a, "tail of a is not next to head of c"))?;
        let o2 = self
            .adjacency(Endpoint::head(a), Endpoint::head(c2))?
            .ok_or_else(|| mismatch(a, "head of a is not next to head of c2"))?;
        self.adjacency(Endpoint::tail(c), Endpoint::tail(c2))?
            .ok_or_else(|| mismatch(c, "tails of c and c2 are not adjacent"))?;
        let s = |b: bool| if b { Sign::Pos } else { Sign::Neg };
        if self.sign(c2)? != s(o1).times(s(o2)).times(self.sign(c)?) {
            return Err(mismatch(c2, "signs do not form a Reid3 triangle"));
        }
        self.swap_endpoints(Endpoint::tail(a), Endpoint::head(c))?;
        self.swap_endpoints(Endpoint::head(a), Endpoint::head(c2))?;
        self.swap_endpoints(Endpoint::tail(c), Endpoint::tail(c2))
    }

    fn swap_endpoints(&mut self, p: Endpoint, q: Endpoint) -> Result<(), GaussError> {
        let (cp, ip) = self.locate(p)?;
        let (cq, iq) = self.locate(q)?;
        self.comps[cp][ip] = q;
        self.comps[cq][iq] = p;
        Ok(())
    }

    /// Arrows whose two endpoints lie on component `c`.
    pub fn self_arrows(&self, c: usize) -> Vec<ArrowId> {
        self.comps[c]
            .iter()
            .filter(|p| p.end == ArrowEnd::Tail)
            .filter(|p| self.comps[c].contains(&Endpoint::head(p.arrow)))
            .map(|p| p.arrow)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::diagram;
    use super::*;

    #[test]
    fn reid2_insert_delete_roundtrip() {
        let d = diagram(Kind::StringLink, &["t0 h0", "h1 t1"], &[(0, 1), (1, -1)]);
        let m = GaussMove::Reid2Insert {
            head: Site { comp: 0, pos: 1 },
            tail: Site { comp: 1, pos: 2 },
            sign: Sign::Pos,
            tails_swapped: false,
            tails_first: false,
        };
        let e = d.apply(&m).unwrap();
        assert_eq!(e.num_arrows(), 4);
        let back = e
            .apply(&GaussMove::Reid2Delete {
                a: ArrowId(2),
                b: ArrowId(3),
            })
            .unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn tc_swaps_only_the_pair() {
        let d = diagram(Kind::StringLink, &["t0 t1 h0 h1"], &[(0, 1), (1, 1)]);
        let e = d.apply(&GaussMove::Tc { comp: 0, pos: 0 }).unwrap();
        assert_eq!(e.components()[0][0], Endpoint::tail(ArrowId(1)));
        assert_eq!(e.components()[0][1], Endpoint::tail(ArrowId(0)));
        assert_eq!(e.components()[0][2..], d.components()[0][2..]);
        assert!(d.apply(&GaussMove::Tc { comp: 0, pos: 1 }).is_err());
    }

    #[test]
    fn gr_is_an_involution() {
        let d = diagram(Kind::Link, &["t0 h1", "h0 t1"], &[(0, 1), (1, -1)]);
        let e = d.apply(&GaussMove::Gr { comp: 1 }).unwrap();
        assert_eq!(e.sign(ArrowId(0)), Ok(Sign::Neg));
        assert_eq!(e.apply(&GaussMove::Gr { comp: 1 }).unwrap(), d);
        let s = diagram(Kind::StringLink, &["t0 h0"], &[(0, 1)]);
        assert_eq!(
            s.apply(&GaussMove::Gr { comp: 0 }),
            Err(GaussError::WrongKind(Kind::StringLink))
        );
    }

    #[test]
    fn sv_delete_last_arrow() {
        let d = diagram(Kind::Link, &["t0 h0"], &[(0, 1)]);
        let e = d.apply(&GaussMove::SvDelete { arrow: ArrowId(0) }).unwrap();
        assert_eq!(e.num_arrows(), 0);
        assert!(e.components()[0].is_empty());
    }

    #[test]
    fn reid1_pair() {
        let d = diagram(Kind::StringLink, &["t0 h0"], &[(0, 1)]);
        let e = d
            .apply(&GaussMove::Reid1Insert {
                site: Site { comp: 0, pos: 1 },
                sign: Sign::Neg,
                head_first: true,
            })
            .unwrap();
        assert_eq!(e.components()[0].len(), 4);
        assert_eq!(e.apply(&GaussMove::Reid1Delete { arrow: ArrowId(1) }).unwrap(), d);
    }

    #[test]
    fn reid3_is_an_involution() {
        // tA hC · hA hC2 · tC tC2 with all orientations positive.
        let d = diagram(
            Kind::StringLink,
            &["t0 h1 h0 h2 t1 t2"],
            &[(0, 1), (1, 1), (2, 1)],
        );
        let m = GaussMove::Reid3 {
            a: ArrowId(0),
            c: ArrowId(1),
            c2: ArrowId(2),
        };
        let e = d.apply(&m).unwrap();
        assert_eq!(e.apply(&m).unwrap(), d);
        let bad = diagram(
            Kind::StringLink,
            &["t0 h1 h0 h2 t1 t2"],
            &[(0, 1), (1, 1), (2, -1)],
        );
        assert!(bad.apply(&m).is_err());
    }
}
