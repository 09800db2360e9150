//! Dessins d'enfants of the curves `X_Γ` attached to coset actions.
//!
//! Edges are the points of the action. Black vertices (cusps above 0) are the
//! cycles of `π_y`, white vertices (cusps above ∞) the cycles of `π_x⁻¹`, and
//! faces (cusps above 1) the cycles of `π₁ = π_x⁻¹ ∘ π_y`, i.e.
//! `face[i] = white[black[i]]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::curves::rh_genus;
use crate::heisenberg::{HeisElement, HeisParams};
use crate::nilpotent::LevelParams;
use crate::perm::{cycles, invert, PermAction};
use crate::{Error, Result};

/// Edge label `(a, c, b)` for the edge `x^a z^c y^b`.
pub type EdgeLabel = [u64; 3];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDessin", into = "RawDessin")]
pub struct Dessin {
    black: Vec<usize>,
    white: Vec<usize>,
    face: Vec<usize>,
    labels: Option<Vec<EdgeLabel>>,
}

#[derive(Serialize, Deserialize)]
struct RawDessin {
    degree: usize,
    black: Vec<usize>,
    white: Vec<usize>,
    face: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<EdgeLabel>>,
}

impl TryFrom<RawDessin> for Dessin {
    type Error = Error;

    fn try_from(r: RawDessin) -> Result<Self> {
        // `PermAction` validates both permutations and transitivity.
        let action = PermAction::new(invert(&r.white), r.black.clone())
            .map_err(|e| Error::Parse(format!("invalid dessin: {e}")))?;
        let d = Dessin::from_action(&action)?;
        if d.degree() != r.degree || d.face != r.face {
            return Err(Error::Parse("face permutation is not white∘black".into()));
        }
        match r.labels {
            Some(l) if l.len() != r.degree => Err(Error::Parse("one label per edge expected".into())),
            labels => Ok(Dessin { labels, ..d }),
        }
    }
}

impl From<Dessin> for RawDessin {
    fn from(d: Dessin) -> Self {
        RawDessin {
            degree: d.black.len(),
            black: d.black,
            white: d.white,
            face: d.face,
            labels: d.labels,
        }
    }
}

impl Dessin {
    fn from_action(action: &PermAction) -> Result<Self> {
        action.require_transitive()?;
        let black = action.py().to_vec();
        let white = invert(action.px());
        let face: Vec<usize> = black.iter().map(|&i| white[i]).collect();
        debug_assert_eq!(face, action.p1());
        Ok(Self {
            black,
            white,
            face,
            labels: None,
        })
    }

    pub fn degree(&self) -> usize {
        self.black.len()
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn face(&self) -> &[usize] {
        &self.face
    }

    pub fn labels(&self) -> Option<&[EdgeLabel]> {
        self.labels.as_deref()
    }

    pub fn black_vertices(&self) -> Vec<Vec<usize>> {
        cycles(&self.black)
    }

    pub fn white_vertices(&self) -> Vec<Vec<usize>> {
        cycles(&self.white)
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        cycles(&self.face)
    }

    pub fn counts(&self) -> DessinCounts {
        let (b, w, f) = (self.black_vertices(), self.white_vertices(), self.faces());
        let degs = |v: &[Vec<usize>]| {
            let mut d: Vec<usize> = v.iter().map(Vec::len).collect();
            d.sort_unstable();
            d
        };
        DessinCounts {
            edges: self.degree(),
            black_vertices: b.len(),
            white_vertices: w.len(),
            vertices: b.len() + w.len(),
            faces: f.len(),
            black_degrees: degs(&b),
            white_degrees: degs(&w),
            face_degrees: degs(&f),
        }
    }

    /// The action `(π_x, π_y)` this dessin encodes.
    pub fn action(&self) -> PermAction {
        PermAction::new(invert(&self.white), self.black.clone()).expect("validated on construction")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dessin serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Vertices and labelled edges as they appear in [`export_dot`].
    pub fn dot_graph(&self) -> DotGraph {
        let vertex_of = |cyc: Vec<Vec<usize>>, prefix: &str| {
            let mut v = vec![String::new(); self.degree()];
            for (k, c) in cyc.iter().enumerate() {
                for &i in c {
                    v[i] = format!("{prefix}_{k}");
                }
            }
            (v, cyc.len())
        };
        let (bv, nb) = vertex_of(self.black_vertices(), "b");
        let (wv, nw) = vertex_of(self.white_vertices(), "w");
        let mut nodes: Vec<String> = (0..nb).map(|k| format!("b_{k}")).collect();
        nodes.extend((0..nw).map(|k| format!("w_{k}")));
        let edges = (0..self.degree())
            .map(|i| DotEdge {
                from: bv[i].clone(),
                to: wv[i].clone(),
                label: self.edge_label(i),
            })
            .collect();
        DotGraph { nodes, edges }
    }

    fn edge_label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => {
                let [a, c, b] = l[i];
                format!("({a},{c},{b})")
            }
            None => format!("e{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinCounts {
    pub edges: usize,
    pub black_vertices: usize,
    pub white_vertices: usize,
    pub vertices: usize,
    pub faces: usize,
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
    pub face_degrees: Vec<usize>,
}

pub fn build_dessin(action: &PermAction) -> Result<Dessin> {
    Dessin::from_action(action)
}

/// Dessin of the regular action of `H`, edges labelled by `(a, c, b)`.
pub fn heisenberg_dessin(p: &HeisParams) -> Dessin {
    let mut d = Dessin::from_action(&p.regular_action()).expect("regular action is transitive");
    d.labels = Some(
        (0..p.order() as usize)
            .map(|i| {
                let g = p.from_index(i);
                [g.a, g.c, g.b]
            })
            .collect(),
    );
    d
}

/// Dessin of `X′_N`: the regular action of `H_{N,N,N′}`.
pub fn x_prime_dessin(n: u64) -> Result<Dessin> {
    let lp = LevelParams::new(n)?;
    Ok(heisenberg_dessin(&HeisParams::new(n, n, lp.n_prime)?))
}

/// `g` with `V − E + F = 2 − 2g`.
pub fn dessin_genus(d: &Dessin) -> Result<u64> {
    let c = d.counts();
    let chi = c.vertices as i64 - c.edges as i64 + c.faces as i64;
    if chi % 2 != 0 || chi > 2 {
        return Err(Error::Invariant(format!("Euler characteristic {chi}")));
    }
    Ok(((2 - chi) / 2) as u64)
}

/// Euler-characteristic genus and the Riemann–Hurwitz genus of the same action.
pub fn genus_cross_check(action: &PermAction) -> Result<(u64, u64)> {
    let d = build_dessin(action)?;
    Ok((dessin_genus(&d)?, rh_genus(action)?.genus))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotEdge {
    pub from: String,
    pub to: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<DotEdge>,
}

/// Undirected DOT graph; black vertices are filled, white ones are not.
pub fn export_dot(d: &Dessin) -> String {
    let g = d.dot_graph();
    let mut s = String::from("graph dessin {\n");
    for n in &g.nodes {
        let style = if n.starts_with('b') {
            "shape=circle, style=filled, fillcolor=black, label=\"\""
        } else {
            "shape=circle, style=solid, fillcolor=white, label=\"\""
        };
        let _ = writeln!(s, "  {n} [{style}];");
    }
    for e in &g.edges {
        let _ = writeln!(s, "  {} -- {} [label=\"{}\"];", e.from, e.to, e.label);
    }
    s.push_str("}\n");
    s
}

pub fn export_json(d: &Dessin) -> String {
    d.to_json()
}

/// Parses the subset of DOT written by [`export_dot`]: node statements and
/// undirected edge statements with an optional `label` attribute.
pub fn parse_dot(text: &str) -> Result<DotGraph> {
    let body = text
        .trim()
        .strip_prefix("graph")
        .and_then(|r| {
            let open = r.find('{')?;
            let close = r.rfind('}')?;
            Some(&r[open + 1..close])
        })
        .ok_or_else(|| Error::Parse("expected `graph NAME { … }`".into()))?;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for stmt in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (head, attrs) = match stmt.find('[') {
            Some(i) => (
                stmt[..i].trim(),
                stmt[i + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse(format!("unterminated attributes in `{stmt}`")))?,
            ),
            None => (stmt, ""),
        };
        if let Some((from, to)) = head.split_once("--") {
            let label = dot_attr(attrs, "label").unwrap_or_default();
            edges.push(DotEdge {
                from: from.trim().to_string(),
                to: to.trim().to_string(),
                label,
            });
        } else if head.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            nodes.push(head.to_string());
        } else {
            return Err(Error::Parse(format!("unrecognised statement `{stmt}`")));
        }
    }
    Ok(DotGraph { nodes, edges })
}

fn dot_attr(attrs: &str, key: &str) -> Option<String> {
    let i = attrs.find(&format!("{key}=\""))? + key.len() + 2;
    let len = attrs[i..].find('"')?;
    Some(attrs[i..i + len].to_string())
}

/// Bijection `f` with `f∘s₁ = s₂∘f` and `f∘t₁ = t₂∘f`, if the transitive
/// pairs `(s₁, t₁)` and `(s₂, t₂)` are isomorphic.
pub fn pair_isomorphism(
    (s1, t1): (&[usize], &[usize]),
    (s2, t2): (&[usize], &[usize]),
) -> Option<Vec<usize>> {
    let n = s1.len();
    if n == 0 || [t1.len(), s2.len(), t2.len()].iter().any(|&l| l != n) {
        return None;
    }
    'target: for start in 0..n {
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        f[0] = start;
        used[start] = true;
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            for (g1, g2) in [(s1, s2), (t1, t2)] {
                let (q, img) = (g1[p], g2[f[p]]);
                if f[q] == usize::MAX {
                    if used[img] {
                        continue 'target;
                    }
                    f[q] = img;
                    used[img] = true;
                    stack.push(q);
                } else if f[q] != img {
                    continue 'target;
                }
            }
        }
        if f.iter().all(|&x| x != usize::MAX) {
            return Some(f);
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjacencyReport {
    #[serde(rename = "N")]
    pub n: u64,
    /// `(a,c,b) ~ (a,c,b+1)` around black vertices.
    pub black_rule_matches: bool,
    /// Ground truth `(a,c,b)·x⁻¹ = (a−1, c+b, b)` for every edge.
    pub white_rule_ground_truth: String,
    pub white_rule_ground_truth_holds: bool,
    /// The rule `(a,c,b) ~ (a−1, c−ab, b)`.
    pub white_rule_displayed: String,
    pub white_rule_displayed_matches: bool,
    /// Edges where the displayed rule disagrees with group multiplication.
    pub displayed_mismatches: usize,
    /// The cusp invariant `(b, c+ab)` is constant on white vertices.
    pub invariant_holds_ground_truth: bool,
    pub invariant_holds_displayed: bool,
    /// The displayed rules, read as a permutation pair, are transitive.
    pub displayed_pair_transitive: bool,
    /// Whether some relabelling of the edges carries the displayed pair onto
    /// the true one.
    pub reconciling_relabeling_exists: bool,
    /// The relabelling, as `label ↦ label`, when it exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relabeling: Option<BTreeMap<String, String>>,
    pub displayed_genus: Option<u64>,
    pub true_genus: u64,
}

fn fmt_label([a, c, b]: EdgeLabel) -> String {
    format!("({a},{c},{b})")
}

/// Compares the stated black and white adjacency rules of the `X′_N`
/// dessin with group multiplication in `H_{N,N,N′}`.
pub fn adjacency_rule_check(n: u64) -> Result<AdjacencyReport> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParams(format!("N = {n} must be odd and ≥ 3")));
    }
    let lp = LevelParams::new(n)?;
    let p = HeisParams::new(n, n, lp.n_prime)?;
    let d = heisenberg_dessin(&p);
    let (nn, l) = (n as i128, lp.n_prime as i128);
    let idx = |a: i128, c: i128, b: i128| {
        p.index_of(&HeisElement {
            a: a.rem_euclid(nn) as u64,
            c: c.rem_euclid(l) as u64,
            b: b.rem_euclid(nn) as u64,
        })
    };
    let size = p.order() as usize;
    let mut black_ok = true;
    let mut truth_ok = true;
    let mut displayed = vec![0; size];
    for i in 0..size {
        let g = p.from_index(i);
        let (a, c, b) = (g.a as i128, g.c as i128, g.b as i128);
        black_ok &= d.black[i] == idx(a, c, b + 1);
        truth_ok &= d.white[i] == idx(a - 1, c + b, b);
        displayed[i] = idx(a - 1, c - a * b, b);
    }
    let mismatches = (0..size).filter(|&i| displayed[i] != d.white[i]).count();

    let invariant = |i: usize| {
        let g = p.from_index(i);
        (g.b, (g.c as i128 + g.a as i128 * g.b as i128).rem_euclid(l))
    };
    let inv_holds = |w: &[usize]| (0..size).all(|i| invariant(i) == invariant(w[i]));

    let displayed_action = PermAction::new(invert(&displayed), d.black.clone())?;
    let transitive = displayed_action.is_transitive();
    let iso = pair_isomorphism((&d.black, &d.white), (&d.black, &displayed));
    let relabeling = iso.as_ref().map(|f| {
        (0..size)
            .map(|i| {
                let (g, h) = (p.from_index(i), p.from_index(f[i]));
                (fmt_label([g.a, g.c, g.b]), fmt_label([h.a, h.c, h.b]))
            })
            .collect()
    });
    let displayed_genus = if transitive {
        Some(dessin_genus(&build_dessin(&displayed_action)?)?)
    } else {
        None
    };
    Ok(AdjacencyReport {
        n,
        black_rule_matches: black_ok,
        white_rule_ground_truth: "(a-1, c+b, b)".into(),
        white_rule_ground_truth_holds: truth_ok,
        white_rule_displayed: "(a-1, c-ab, b)".into(),
        white_rule_displayed_matches: mismatches == 0,
        displayed_mismatches: mismatches,
        invariant_holds_ground_truth: inv_holds(&d.white),
        invariant_holds_displayed: inv_holds(&displayed),
        displayed_pair_transitive: transitive,
        reconciling_relabeling_exists: iso.is_some(),
        relabeling,
        displayed_genus,
        true_genus: dessin_genus(&d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::FreeWord;
    use proptest::prelude::*;

    fn h(m: u64, n: u64, l: u64) -> HeisParams {
        HeisParams::new(m, n, l).unwrap()
    }

    #[test]
    fn x2_dessin() {
        let d = build_dessin(&PermAction::trivial()).unwrap();
        let c = d.counts();
        assert_eq!((c.edges, c.vertices, c.faces), (1, 2, 1));
        assert_eq!(dessin_genus(&d).unwrap(), 0);
        let g = parse_dot(&export_dot(&d)).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (2, 1));
    }

    #[test]
    fn x3_prime_counts() {
        let d = x_prime_dessin(3).unwrap();
        let c = d.counts();
        assert_eq!(c.edges, 27);
        assert_eq!((c.black_vertices, c.white_vertices), (9, 9));
        assert_eq!(c.faces, 9);
        assert!(c.black_degrees.iter().chain(&c.white_degrees).all(|&k| k == 3));
        assert_eq!(dessin_genus(&d).unwrap(), 1);
        let g = parse_dot(&export_dot(&d)).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (18, 27));
        assert_eq!(g, d.dot_graph());
    }

    #[test]
    fn fermat_x3() {
        let d = heisenberg_dessin(&h(3, 3, 1));
        let c = d.counts();
        assert_eq!((c.edges, c.black_vertices, c.white_vertices, c.faces), (9, 3, 3, 3));
        assert_eq!(dessin_genus(&d).unwrap(), 1);
    }

    #[test]
    fn regular_dessin_degrees() {
        for n in [3u64, 5, 7] {
            let lp = LevelParams::new(n).unwrap();
            let d = x_prime_dessin(n).unwrap();
            let c = d.counts();
            assert!(c.black_degrees.iter().chain(&c.white_degrees).all(|&k| k as u64 == n));
            assert_eq!(c.faces as u64, n * lp.n_prime);
        }
    }

    #[test]
    fn json_round_trip() {
        for d in [x_prime_dessin(3).unwrap(), build_dessin(&PermAction::trivial()).unwrap()] {
            let s = export_json(&d);
            let back = Dessin::from_json(&s).unwrap();
            assert_eq!(back, d);
            assert_eq!(export_json(&back), s);
            assert_eq!(parse_dot(&export_dot(&d)).unwrap(), back.dot_graph());
        }
        assert!(Dessin::from_json(r#"{"degree":2,"black":[0,1],"white":[0,1],"face":[0,1]}"#).is_err());
        assert!(Dessin::from_json(r#"{"degree":2,"black":[1,0],"white":[0,1],"face":[0,1]}"#).is_err());
    }

    #[test]
    fn non_transitive_rejected() {
        let a = PermAction::new(vec![0, 1], vec![0, 1]).unwrap();
        assert!(matches!(build_dessin(&a), Err(Error::NotTransitive { .. })));
    }

    #[test]
    fn adjacency_rules() {
        for n in [3u64, 5] {
            let r = adjacency_rule_check(n).unwrap();
            assert!(r.black_rule_matches);
            assert!(r.white_rule_ground_truth_holds);
            assert!(r.invariant_holds_ground_truth);
            assert!(!r.white_rule_displayed_matches);
            assert!(!r.invariant_holds_displayed);
        }
        // Isomorphic pairs have equal genus; the displayed rule changes it.
        let r = adjacency_rule_check(3).unwrap();
        assert_ne!(r.displayed_genus, Some(r.true_genus));
        assert!(!r.reconciling_relabeling_exists);
        assert!(adjacency_rule_check(4).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let a = PermAction::new(vec![1, 2, 0], vec![0, 2, 1]).unwrap();
        let f = pair_isomorphism((a.px(), a.py()), (a.px(), a.py())).unwrap();
        assert_eq!(f, vec![0, 1, 2]);
        let b = PermAction::new(vec![1, 2, 0], vec![1, 0, 2]).unwrap();
        let g = pair_isomorphism((a.px(), a.py()), (b.px(), b.py())).unwrap();
        for i in 0..3 {
            assert_eq!(g[a.px()[i]], b.px()[g[i]]);
            assert_eq!(g[a.py()[i]], b.py()[g[i]]);
        }
        let c = PermAction::new(vec![1, 2, 0], vec![1, 2, 0]).unwrap();
        assert!(pair_isomorphism((a.px(), a.py()), (c.px(), c.py())).is_none());
    }

    #[test]
    fn dot_parser_rejects_garbage() {
        assert!(parse_dot("digraph {}").is_err());
        assert!(parse_dot("graph g { a -> b [label=\"x\"; }").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn genus_matches_rh(m in 1u64..=5, n in 1u64..=5, l in 1u64..=5, w in prop::collection::vec(prop::sample::select(vec!["a", "b", "A", "B"]), 0..6)) {
            let p = HeisParams::new(m, n, l);
            prop_assume!(p.is_ok());
            let p = p.unwrap();
            let word: FreeWord = if w.is_empty() { FreeWord::identity() } else { w.concat().parse().unwrap() };
            let action = p.coset_action(&[p.from_word(&word)]).unwrap();
            let (eg, rg) = genus_cross_check(&action).unwrap();
            prop_assert_eq!(eg, rg);
            let d = build_dessin(&action).unwrap();
            let c = d.counts();
            prop_assert_eq!((c.vertices + c.faces + c.edges) % 2, 0);
            prop_assert_eq!(Dessin::from_json(&export_json(&d)).unwrap(), d);
        }
    }
}
