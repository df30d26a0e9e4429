//! Isomorphism of w-graphs preserving component order, marked order,
//! orientations and labels.

use std::collections::{BTreeMap, BTreeSet};

use crate::freegroup::{Gen, Word};

use super::WGraph;

/// Local invariants used to prune candidate images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    comp: usize,
    marked: bool,
    out_deg: usize,
    in_deg: usize,
    loops: usize,
    label_lens: Vec<usize>,
    occurrences: usize,
}

fn signatures(g: &WGraph) -> BTreeMap<Gen, Signature> {
    let mut out: BTreeMap<Gen, Signature> = g
        .vertices()
        .map(|(v, info)| {
            (
                v,
                Signature {
                    comp: info.comp,
                    marked: info.marked,
                    out_deg: 0,
                    in_deg: 0,
                    loops: 0,
                    label_lens: Vec::new(),
                    occurrences: 0,
                },
            )
        })
        .collect();
    for e in g.edges() {
        if e.is_loop() {
            out.get_mut(&e.src).unwrap().loops += 1;
        } else {
            out.get_mut(&e.src).unwrap().out_deg += 1;
            out.get_mut(&e.dst).unwrap().in_deg += 1;
        }
        out.get_mut(&e.src).unwrap().label_lens.push(e.label.len());
        for l in e.label.gens() {
            out.get_mut(&l).unwrap().occurrences += 1;
        }
    }
    for s in out.values_mut() {
        s.label_lens.sort_unstable();
    }
    out
}

fn edge_multiset(g: &WGraph, phi: &BTreeMap<Gen, Gen>) -> Vec<(Gen, Gen, Word)> {
    let mut v: Vec<(Gen, Gen, Word)> = g
        .edges()
        .iter()
        .map(|e| (phi[&e.src], phi[&e.dst], e.label.rename(|x| phi[&x])))
        .collect();
    v.sort();
    v
}

/// Decides isomorphism by backtracking over vertex images.
pub fn is_isomorphic(g: &WGraph, h: &WGraph) -> bool {
    if g.graph_type() != h.graph_type()
        || g.num_vertices() != h.num_vertices()
        || g.edges().len() != h.edges().len()
    {
        return false;
    }
    let sg = signatures(g);
    let sh = signatures(h);
    let mut bag_g: Vec<&Signature> = sg.values().collect();
    let mut bag_h: Vec<&Signature> = sh.values().collect();
    bag_g.sort();
    bag_h.sort();
    if bag_g != bag_h {
        return false;
    }
    let mut phi: BTreeMap<Gen, Gen> = BTreeMap::new();
    let mut used: BTreeSet<Gen> = BTreeSet::new();
    for c in 0..g.num_components() {
        for (a, b) in g.marked(c).iter().zip(h.marked(c)) {
            if sg[a] != sh[b] {
                return false;
            }
            phi.insert(*a, *b);
            used.insert(*b);
        }
    }
    // Order the remaining vertices by BFS from the fixed ones so that
    // adjacency constraints bite early.
    let mut adj: BTreeMap<Gen, Vec<Gen>> = BTreeMap::new();
    for e in g.edges() {
        adj.entry(e.src).or_default().push(e.dst);
        adj.entry(e.dst).or_default().push(e.src);
    }
    let mut order: Vec<Gen> = Vec::new();
    let mut seen: BTreeSet<Gen> = phi.keys().copied().collect();
    let mut queue: std::collections::VecDeque<Gen> = phi.keys().copied().collect();
    loop {
        while let Some(x) = queue.pop_front() {
            for y in adj.get(&x).into_iter().flatten() {
                if seen.insert(*y) {
                    order.push(*y);
                    queue.push_back(*y);
                }
            }
        }
        match g.vertices().map(|(v, _)| v).find(|v| !seen.contains(v)) {
            Some(v) => {
                seen.insert(v);
                order.push(v);
                queue.push_back(v);
            }
            None => break,
        }
    }
    let hcounts = pair_counts(h);
    let gcounts = pair_counts(g);
    let target = {
        let id: BTreeMap<Gen, Gen> = h.vertices().map(|(v, _)| (v, v)).collect();
        edge_multiset(h, &id)
    };
    let hverts: Vec<Gen> = h.vertices().map(|(v, _)| v).collect();
    search(
        g, &order, 0, &mut phi, &mut used, &sg, &sh, &hverts, &gcounts, &hcounts, &target,
    )
}

fn pair_counts(g: &WGraph) -> BTreeMap<(Gen, Gen), usize> {
    let mut m = BTreeMap::new();
    for e in g.edges() {
        *m.entry((e.src, e.dst)).or_insert(0) += 1;
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &WGraph,
    order: &[Gen],
    k: usize,
    phi: &mut BTreeMap<Gen, Gen>,
    used: &mut BTreeSet<Gen>,
    sg: &BTreeMap<Gen, Signature>,
    sh: &BTreeMap<Gen, Signature>,
    hverts: &[Gen],
    gcounts: &BTreeMap<(Gen, Gen), usize>,
    hcounts: &BTreeMap<(Gen, Gen), usize>,
    target: &[(Gen, Gen, Word)],
) -> bool {
    if k == order.len() {
        return edge_multiset(g, phi) == target;
    }
    let v = order[k];
    for &cand in hverts {
        if used.contains(&cand) || sg[&v] != sh[&cand] {
            continue;
        }
        // Edge counts between v and already-mapped vertices must agree.
        let consistent = phi.iter().chain(std::iter::once((&v, &cand))).all(|(x, y)| {
            let a = gcounts.get(&(v, *x)).copied().unwrap_or(0);
            let b = hcounts.get(&(cand, *y)).copied().unwrap_or(0);
            let c = gcounts.get(&(*x, v)).copied().unwrap_or(0);
            let d = hcounts.get(&(*y, cand)).copied().unwrap_or(0);
            a == b && c == d
        });
        if !consistent {
            continue;
        }
        phi.insert(v, cand);
        used.insert(cand);
        if search(
            g,
            order,
            k + 1,
            phi,
            used,
            sg,
            sh,
            hverts,
            gcounts,
            hcounts,
            target,
        ) {
            return true;
        }
        phi.remove(&v);
        used.remove(&cand);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::tests::w;
    use super::super::Edge;
    use super::*;

    fn g1(relabel: u32) -> WGraph {
        let r = |x: u32| Gen(x + relabel);
        WGraph::from_parts(
            &[(r(0), true), (r(1), false), (r(2), true)],
            vec![
                Edge::new(r(0), r(1), w(&[(relabel + 1, 1)])),
                Edge::new(r(1), r(2), w(&[(relabel + 2, -1)])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn renaming_is_isomorphism() {
        assert!(is_isomorphic(&g1(0), &g1(10)));
    }

    #[test]
    fn label_difference_detected() {
        let a = g1(0);
        let b = a.apply(&crate::wgraph::Move::Reid1 {
            edge: 0,
            sign: crate::freegroup::Sign::Pos,
        })
        .unwrap();
        assert!(!is_isomorphic(&a, &b));
    }

    #[test]
    fn type_difference_detected() {
        let a = g1(0);
        let b = WGraph::from_parts(&[(Gen(0), false)], vec![Edge::new(Gen(0), Gen(0), w(&[]))])
            .unwrap();
        assert!(!is_isomorphic(&a, &b));
    }
}
