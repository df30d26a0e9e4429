//! Line-oriented text formats for w-graphs, Gauss diagrams, words and move
//! descriptors.
//!
//! ```text
//! wgraph
//! v a marked
//! v b
//! e a b c c'
//! ```
//!
//! Words are whitespace-separated vertex names, with `'` marking an inverse.
//! `#` starts a comment.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freegroup::{Gen, Letter, Sign, Word};
use crate::gauss::{parse_tokens, ArrowEnd, ArrowId, GaussDiagram, GaussError, Kind};
use crate::wgraph::{Edge, End, Move, WGraph, WGraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid graph: {0}")]
    Graph(#[from] WGraphError),
    #[error("invalid diagram: {0}")]
    Gauss(#[from] GaussError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Vertex names. Vertices without a recorded name print as `v<id>`, with
/// underscores appended on collision.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Names {
    by_gen: BTreeMap<Gen, String>,
    by_name: BTreeMap<String, Gen>,
}

impl Names {
    pub fn insert(&mut self, g: Gen, name: String) -> bool {
        if self.by_name.contains_key(&name) || self.by_gen.contains_key(&g) {
            return false;
        }
        self.by_name.insert(name.clone(), g);
        self.by_gen.insert(g, name);
        true
    }

    pub fn lookup(&self, name: &str) -> Result<Gen, FormatError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| FormatError::UnknownName(name.to_string()))
    }

    /// Gives every vertex of `g` a name, keeping existing ones.
    pub fn complete(&mut self, g: &WGraph) {
        for (v, _) in g.vertices() {
            if !self.by_gen.contains_key(&v) {
                let mut cand = format!("v{}", v.0);
                while self.by_name.contains_key(&cand) {
                    cand.push('_');
                }
                self.insert(v, cand);
            }
        }
    }

    pub fn name(&self, g: Gen) -> String {
        self.by_gen.get(&g).cloned().unwrap_or_else(|| format!("v{}", g.0))
    }
}

pub fn render_letter(l: Letter, name: &dyn Fn(Gen) -> String) -> String {
    match l.sign {
        Sign::Pos => name(l.gen),
        Sign::Neg => format!("{}'", name(l.gen)),
    }
}

pub fn render_word(w: &Word, name: &dyn Fn(Gen) -> String) -> String {
    w.letters()
        .iter()
        .map(|l| render_letter(*l, name))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_letter(tok: &str, names: &Names) -> Result<Letter, FormatError> {
    match tok.strip_suffix('\'') {
        Some(n) => Ok(Letter::neg(names.lookup(n)?)),
        None => Ok(Letter::pos(names.lookup(tok)?)),
    }
}

pub fn parse_word<'a>(toks: impl IntoIterator<Item = &'a str>, names: &Names) -> Result<Word, FormatError> {
    toks.into_iter().map(|t| parse_letter(t, names)).collect()
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGraphFile {
    pub graph: WGraph,
    pub names: Names,
}

impl WGraphFile {
    /// Wraps a graph, naming its vertices `v<id>`.
    pub fn new(graph: WGraph) -> WGraphFile {
        let mut names = Names::default();
        names.complete(&graph);
        WGraphFile { graph, names }
    }

    /// Replaces the graph, keeping names of surviving vertices.
    pub fn with_graph(&self, graph: WGraph) -> WGraphFile {
        let mut names = self.names.clone();
        names.complete(&graph);
        WGraphFile { graph, names }
    }

    pub fn parse(text: &str) -> Result<WGraphFile, FormatError> {
        let mut it = lines(text);
        match it.next() {
            Some((_, "wgraph")) => {}
            Some((n, _)) => return Err(syntax(n, "expected header `wgraph`")),
            None => return Err(syntax(1, "empty file")),
        }
        let mut names = Names::default();
        let mut decl = Vec::new();
        let mut edges = Vec::new();
        for (n, line) in it {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["v", id, rest @ ..] => {
                    let marked = match rest {
                        [] => false,
                        ["marked"] => true,
                        _ => return Err(syntax(n, "expected `v <id> [marked]`")),
                    };
                    if !valid_name(id) {
                        return Err(syntax(n, format!("bad vertex name `{id}`")));
                    }
                    let g = Gen(decl.len() as u32);
                    if !names.insert(g, id.to_string()) {
                        return Err(syntax(n, format!("vertex `{id}` declared twice")));
                    }
                    decl.push((g, marked));
                }
                ["e", src, dst, word @ ..] => {
                    let src = names.lookup(src)?;
                    let dst = names.lookup(dst)?;
                    let w = parse_word(word.iter().copied(), &names)?;
                    edges.push(Edge::new(src, dst, w));
                }
                _ => return Err(syntax(n, "expected a `v` or `e` line")),
            }
        }
        let graph = WGraph::from_parts(&decl, edges)?;
        Ok(WGraphFile { graph, names })
    }

    /// Vertices component by component, by id, with marked vertices filling
    /// the marked slots in their order; then the edges in order.
    pub fn render(&self) -> String {
        let mut names = self.names.clone();
        names.complete(&self.graph);
        let name = |g: Gen| names.name(g);
        let g = &self.graph;
        let mut out = String::from("wgraph\n");
        for c in 0..g.num_components() {
            let mut marked = g.marked(c).iter();
            for v in g.component_vertices(c) {
                if g.is_marked(v) {
                    let m = marked.next().expect("marked slot");
                    out.push_str(&format!("v {} marked\n", name(*m)));
                } else {
                    out.push_str(&format!("v {}\n", name(v)));
                }
            }
        }
        for e in g.edges() {
            out.push_str(&format!("e {} {}", name(e.src), name(e.dst)));
            if !e.label.is_identity() {
                out.push(' ');
                out.push_str(&render_word(&e.label, &name));
            }
            out.push('\n');
        }
        out
    }
}

pub fn parse_gauss(text: &str) -> Result<GaussDiagram, FormatError> {
    let mut it = lines(text);
    let (kind, ncomp) = match it.next().map(|(n, l)| (n, l.split_whitespace().collect::<Vec<_>>())) {
        Some((n, toks)) => match toks.as_slice() {
            ["gauss", kind, count] => {
                let kind = match *kind {
                    "link" => Kind::Link,
                    "stringlink" => Kind::StringLink,
                    _ => return Err(syntax(n, format!("unknown kind `{kind}`"))),
                };
                let count: usize = count.parse().map_err(|_| syntax(n, "bad component count"))?;
                (kind, count)
            }
            _ => return Err(syntax(n, "expected `gauss link|stringlink <count>`")),
        },
        None => return Err(syntax(1, "empty file")),
    };
    let mut comps: Vec<Option<Vec<_>>> = vec![None; ncomp];
    let mut signs = BTreeMap::new();
    for (n, line) in it {
        if let Some(rest) = line.strip_prefix("comp") {
            let (idx, toks) = rest
                .split_once(':')
                .ok_or_else(|| syntax(n, "expected `comp <i>: <tokens>`"))?;
            let i: usize = idx.trim().parse().map_err(|_| syntax(n, "bad component index"))?;
            if i == 0 || i > ncomp {
                return Err(syntax(n, format!("component {i} out of range")));
            }
            let seq = parse_tokens(toks).ok_or_else(|| syntax(n, "bad endpoint token"))?;
            if comps[i - 1].replace(seq).is_some() {
                return Err(syntax(n, format!("component {i} given twice")));
            }
        } else {
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["arrow", k, s] => {
                    let k: u32 = k.parse().map_err(|_| syntax(n, "bad arrow id"))?;
                    let s = match *s {
                        "+" => Sign::Pos,
                        "-" => Sign::Neg,
                        _ => return Err(syntax(n, "sign must be + or -")),
                    };
                    if signs.insert(ArrowId(k), s).is_some() {
                        return Err(syntax(n, format!("arrow {k} given twice")));
                    }
                }
                _ => return Err(syntax(n, "expected a `comp` or `arrow` line")),
            }
        }
    }
    let comps = comps.into_iter().map(|c| c.unwrap_or_default()).collect();
    Ok(GaussDiagram::new(kind, comps, signs)?)
}

pub fn render_gauss(d: &GaussDiagram) -> String {
    let kind = match d.kind() {
        Kind::Link => "link",
        Kind::StringLink => "stringlink",
    };
    let mut out = format!("gauss {kind} {}\n", d.num_components());
    for (c, seq) in d.components().iter().enumerate() {
        out.push_str(&format!("comp {}:", c + 1));
        for p in seq {
            let t = if p.end == ArrowEnd::Tail { 't' } else { 'h' };
            out.push_str(&format!(" {t}{}", p.arrow.0));
        }
        out.push('\n');
    }
    for (a, s) in d.arrows() {
        let s = if s == Sign::Pos { '+' } else { '-' };
        out.push_str(&format!("arrow {} {s}\n", a.0));
    }
    out
}

fn num<T: std::str::FromStr>(tok: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| syntax(1, format!("expected a number, got `{tok}`")))
}

fn sign_tok(tok: &str) -> Result<Sign, FormatError> {
    match tok {
        "+" => Ok(Sign::Pos),
        "-" => Ok(Sign::Neg),
        _ => Err(syntax(1, format!("expected + or -, got `{tok}`"))),
    }
}

/// Parses a move descriptor. Edges are 0-based indices, vertices are names:
///
/// ```text
/// contract <e> | or <e> | r1 <e> <+|-> | r3 <e> <witness> [back]
/// stab <v> <letter> | genstab <v> <letter> | push <v> <word>
/// split <e> <cut> | merge <v> | sv <e> <letter|-> | rr3 <e> <pos> <witness> <rot> [inv]
/// expand <v> <at> [<e>s|<e>d ...] [o<e>:<pos> ...]
/// ```
pub fn parse_move(desc: &str, names: &Names) -> Result<Move, FormatError> {
    let toks: Vec<&str> = desc.split_whitespace().collect();
    let bad = || syntax(1, format!("malformed move `{desc}`"));
    let m = match toks.as_slice() {
        ["contract", e] => Move::Contract { edge: num(e)? },
        ["or", e] => Move::ReverseEdge { edge: num(e)? },
        ["r1", e, s] => Move::Reid1 {
            edge: num(e)?,
            sign: sign_tok(s)?,
        },
        ["r3", e, wi, rest @ ..] => Move::Reid3 {
            edge: num(e)?,
            witness: num(wi)?,
            backward: match rest {
                [] => false,
                ["back"] => true,
                _ => return Err(bad()),
            },
        },
        ["stab", v, l] => Move::Stabilize {
            vertex: names.lookup(v)?,
            letter: parse_letter(l, names)?,
        },
        ["genstab", v, l] => Move::GenStabilize {
            vertex: names.lookup(v)?,
            letter: parse_letter(l, names)?,
        },
        ["push", v, word @ ..] => Move::Push {
            vertex: names.lookup(v)?,
            word: parse_word(word.iter().copied(), names)?,
        },
        ["split", e, cut] => Move::Split {
            edge: num(e)?,
            cut: num(cut)?,
        },
        ["merge", v] => Move::Merge {
            vertex: names.lookup(v)?,
        },
        ["sv", e, l] => Move::SelfVirtualize {
            edge: num(e)?,
            letter: if *l == "-" { None } else { Some(parse_letter(l, names)?) },
        },
        ["rr3", e, pos, wi, rot, rest @ ..] => Move::RephrasedReid3 {
            edge: num(e)?,
            pos: num(pos)?,
            witness: num(wi)?,
            rotation: num(rot)?,
            inverse: match rest {
                [] => false,
                ["inv"] => true,
                _ => return Err(bad()),
            },
        },
        ["expand", v, at, rest @ ..] => {
            let mut ends = Vec::new();
            let mut occurrences = Vec::new();
            for t in rest {
                if let Some(o) = t.strip_prefix('o') {
                    let (e, p) = o.split_once(':').ok_or_else(bad)?;
                    occurrences.push((num(e)?, num(p)?));
                } else if let Some(e) = t.strip_suffix('s') {
                    ends.push((num(e)?, End::Src));
                } else if let Some(e) = t.strip_suffix('d') {
                    ends.push((num(e)?, End::Dst));
                } else {
                    return Err(bad());
                }
            }
            Move::Expand {
                vertex: names.lookup(v)?,
                ends,
                occurrences,
                at: num(at)?,
            }
        }
        _ => return Err(bad()),
    };
    Ok(m)
}

pub fn render_move(m: &Move, name: &dyn Fn(Gen) -> String) -> String {
    let sign = |s: Sign| if s == Sign::Pos { "+" } else { "-" };
    match m {
        Move::Contract { edge } => format!("contract {edge}"),
        Move::ReverseEdge { edge } => format!("or {edge}"),
        Move::Reid1 { edge, sign: s } => format!("r1 {edge} {}", sign(*s)),
        Move::Reid3 {
            edge,
            witness,
            backward,
        } => format!("r3 {edge} {witness}{}", if *backward { " back" } else { "" }),
        Move::Stabilize { vertex, letter } => format!("stab {} {}", name(*vertex), render_letter(*letter, name)),
        Move::GenStabilize { vertex, letter } => {
            format!("genstab {} {}", name(*vertex), render_letter(*letter, name))
        }
        Move::Push { vertex, word } => format!("push {} {}", name(*vertex), render_word(word, name))
            .trim_end()
            .to_string(),
        Move::Split { edge, cut } => format!("split {edge} {cut}"),
        Move::Merge { vertex } => format!("merge {}", name(*vertex)),
        Move::SelfVirtualize { edge, letter } => match letter {
            Some(l) => format!("sv {edge} {}", render_letter(*l, name)),
            None => format!("sv {edge} -"),
        },
        Move::RephrasedReid3 {
            edge,
            pos,
            witness,
            rotation,
            inverse,
        } => format!(
            "rr3 {edge} {pos} {witness} {rotation}{}",
            if *inverse { " inv" } else { "" }
        ),
        Move::Expand {
            vertex,
            ends,
            occurrences,
            at,
        } => {
            let mut s = format!("expand {} {at}", name(*vertex));
            for (e, end) in ends {
                s.push_str(&format!(" {e}{}", if *end == End::Src { 's' } else { 'd' }));
            }
            for (e, p) in occurrences {
                s.push_str(&format!(" o{e}:{p}"));
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "wgraph\n# two strands\nv a marked\nv b marked\nv c marked\nv d marked\ne a b\ne c d a\n";

    #[test]
    fn wgraph_round_trip() {
        let f = WGraphFile::parse(HOPF).unwrap();
        assert_eq!(f.graph.graph_type(), vec![(2, 0), (2, 0)]);
        let text = f.render();
        assert_eq!(text, "wgraph\nv a marked\nv b marked\nv c marked\nv d marked\ne a b\ne c d a\n");
        assert_eq!(WGraphFile::parse(&text).unwrap().render(), text);
    }

    #[test]
    fn wgraph_errors() {
        assert!(matches!(WGraphFile::parse("graph\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert_eq!(
            WGraphFile::parse("wgraph\nv a\ne a b\n"),
            Err(FormatError::UnknownName("b".into()))
        );
        assert!(matches!(
            WGraphFile::parse("wgraph\nv a\nv a\n"),
            Err(FormatError::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn marked_order_survives() {
        let text = "wgraph\nv x\nv f marked\nv i marked\ne i x\ne x f\n";
        let f = WGraphFile::parse(text).unwrap();
        let out = f.render();
        assert_eq!(out, text);
        let g = WGraphFile::parse(&out).unwrap();
        assert_eq!(g.names.name(g.graph.marked(0)[0]), "f");
    }

    #[test]
    fn gauss_round_trip() {
        let text = "gauss stringlink 2\ncomp 1: t0 h1\ncomp 2: h0 t1\narrow 0 +\narrow 1 -\n";
        let d = parse_gauss(text).unwrap();
        assert_eq!(render_gauss(&d), text);
        assert!(parse_gauss("gauss knot 1\n").is_err());
        assert!(parse_gauss("gauss link 1\ncomp 1: t0\narrow 0 +\n").is_err());
    }

    #[test]
    fn moves_round_trip() {
        let f = WGraphFile::parse(HOPF).unwrap();
        let name = |g: Gen| f.names.name(g);
        for desc in [
            "contract 0",
            "or 1",
            "r1 1 -",
            "r3 0 1 back",
            "stab b a'",
            "genstab b a",
            "push b c d'",
            "split 1 0",
            "merge b",
            "sv 0 a",
            "sv 0 -",
            "rr3 1 0 0 2 inv",
            "expand a 2 0s o1:0",
        ] {
            let m = parse_move(desc, &f.names).unwrap();
            assert_eq!(render_move(&m, &name), desc);
        }
        assert!(parse_move("twist 3", &f.names).is_err());
    }
}
