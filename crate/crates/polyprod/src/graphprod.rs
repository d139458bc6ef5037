//! Graph products of finite groups: canonical word forms, the fundamental
//! group of a polyhedral product read off the 1-skeleton, commutation
//! graphs of subgroup families, and the extension-problem decision with
//! witnesses and certificates.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::groups::{l_stage_centralizer_family, FiniteGroup, Subgroup};
use crate::simplicial::{Face, SimplicialComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphProductError {
    #[error("{got} factors supplied for {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("syllable ({0},{1}) is not a valid nonidentity factor element")]
    InvalidSyllable(usize, usize),
    #[error("the ambient group has nontrivial center")]
    CenterNonTrivial,
    #[error("the ambient group is not {0}-transitively commutative")]
    NotKTC(usize),
    #[error("no suitable stage-centralizer witness inside subgroup {0}")]
    HypothesisUnmet(usize),
}

/// Simple graph on vertices 1..=n recording which factor pairs commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl CommutationGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(
                    a != b && a >= 1 && b >= 1 && a <= n && b <= n,
                    "bad edge ({a},{b})"
                );
                (a.min(b), a.max(b))
            })
            .collect();
        CommutationGraph { n, edges }
    }

    pub fn discrete(n: usize) -> Self {
        CommutationGraph::new(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Self {
        CommutationGraph::new(n, (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices-and-edges simplicial complex of the graph.
    pub fn as_complex(&self) -> SimplicialComplex {
        let facets = self
            .edges
            .iter()
            .map(|&(a, b)| Face::new(vec![a, b]))
            .chain((1..=self.n).map(|v| Face::new(vec![v])))
            .collect();
        SimplicialComplex::from_facets(self.n, facets).expect("graph covers its vertices")
    }
}

/// One syllable: a nonidentity element of the factor at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub element: usize,
}

/// A word in the free product of the factors, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Word {
            syllables: pairs
                .iter()
                .map(|&(vertex, element)| Syllable { vertex, element })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// Graph product of finite vertex groups over a commutation graph.
#[derive(Debug, Clone)]
pub struct GraphProduct {
    graph: CommutationGraph,
    factors: Vec<FiniteGroup>,
}

impl GraphProduct {
    pub fn new(
        graph: CommutationGraph,
        factors: Vec<FiniteGroup>,
    ) -> Result<Self, GraphProductError> {
        if factors.len() != graph.vertex_count() {
            return Err(GraphProductError::DimensionMismatch {
                expected: graph.vertex_count(),
                got: factors.len(),
            });
        }
        Ok(GraphProduct { graph, factors })
    }

    pub fn graph(&self) -> &CommutationGraph {
        &self.graph
    }

    pub fn factors(&self) -> &[FiniteGroup] {
        &self.factors
    }

    fn check_syllable(&self, s: Syllable) -> Result<(), GraphProductError> {
        let ok = s.vertex >= 1
            && s.vertex <= self.factors.len()
            && s.element >= 1
            && s.element < self.factors[s.vertex - 1].order();
        if ok {
            Ok(())
        } else {
            Err(GraphProductError::InvalidSyllable(s.vertex, s.element))
        }
    }

    /// Canonical form in two stages. Reduction: each incoming syllable
    /// merges with the same-vertex syllable it can see through commuting
    /// neighbors, if any; a blocker between two same-vertex syllables can
    /// never be removed by a later merge (seeing past the right one would
    /// need the adjacency the blocker lacks), so one pass per syllable
    /// reaches a reduced word. Linearization: repeatedly extract the least
    /// (vertex, element) syllable among those movable to the front, the
    /// unique ShortLex-least shuffle of the reduced word. Soundness is
    /// checked against a rewriting oracle in the tests, not assumed.
    pub fn normal_form(&self, w: &Word) -> Result<Word, GraphProductError> {
        let mut reduced: Vec<Syllable> = Vec::with_capacity(w.len());
        for &s in &w.syllables {
            self.check_syllable(s)?;
            self.push_syllable(&mut reduced, s);
        }
        Ok(Word {
            syllables: self.canonical_order(reduced),
        })
    }

    fn push_syllable(&self, word: &mut Vec<Syllable>, s: Syllable) {
        let group = &self.factors[s.vertex - 1];
        let mut i = word.len();
        while i > 0 {
            let prev = word[i - 1];
            if prev.vertex == s.vertex {
                let merged = group.mul(prev.element, s.element);
                if merged == 0 {
                    word.remove(i - 1);
                } else {
                    word[i - 1].element = merged;
                }
                return;
            }
            if !self.graph.adjacent(prev.vertex, s.vertex) {
                break;
            }
            i -= 1;
        }
        word.push(s);
    }

    fn canonical_order(&self, mut rem: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(rem.len());
        while !rem.is_empty() {
            let mut best = 0;
            for i in 1..rem.len() {
                let frontable = (0..i).all(|j| self.graph.adjacent(rem[j].vertex, rem[i].vertex));
                if frontable
                    && (rem[i].vertex, rem[i].element) < (rem[best].vertex, rem[best].element)
                {
                    best = i;
                }
            }
            out.push(rem.remove(best));
        }
        out
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Result<Word, GraphProductError> {
        let mut joined = a.clone();
        joined.syllables.extend(b.syllables.iter().copied());
        self.normal_form(&joined)
    }

    pub fn invert(&self, w: &Word) -> Result<Word, GraphProductError> {
        let syllables = w
            .syllables
            .iter()
            .rev()
            .map(|s| {
                self.check_syllable(*s)?;
                Ok(Syllable {
                    vertex: s.vertex,
                    element: self.factors[s.vertex - 1].inv(s.element),
                })
            })
            .collect::<Result<_, _>>()?;
        self.normal_form(&Word { syllables })
    }

    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool, GraphProductError> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// All canonical forms, by breadth-first closure under right
    /// multiplication by syllables. Returns None when `limit` is hit,
    /// which is what happens for infinite graph products.
    pub fn enumerate_elements(&self, limit: usize) -> Option<Vec<Word>> {
        let mut seen: HashSet<Word> = HashSet::new();
        let empty = Word::empty();
        seen.insert(empty.clone());
        let mut queue = VecDeque::from([empty]);
        while let Some(w) = queue.pop_front() {
            for vertex in 1..=self.factors.len() {
                for element in 1..self.factors[vertex - 1].order() {
                    let mut reduced = w.syllables.clone();
                    self.push_syllable(&mut reduced, Syllable { vertex, element });
                    let next = Word {
                        syllables: self.canonical_order(reduced),
                    };
                    if seen.insert(next.clone()) {
                        if seen.len() > limit {
                            return None;
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut out: Vec<Word> = seen.into_iter().collect();
        out.sort();
        Some(out)
    }
}

/// The fundamental-group presentation of the product model over K: the
/// graph product of the vertex groups over the edges of the 1-skeleton.
/// Depends only on the 1-skeleton by construction, and the output for K
/// and for skeleton(K, 1) is structurally identical.
pub fn pi1_polyhedral_product(
    k: &SimplicialComplex,
    factors: Vec<FiniteGroup>,
) -> Result<GraphProduct, GraphProductError> {
    if factors.len() != k.vertex_count() {
        return Err(GraphProductError::DimensionMismatch {
            expected: k.vertex_count(),
            got: factors.len(),
        });
    }
    let graph = CommutationGraph::new(k.vertex_count(), k.edges());
    GraphProduct::new(graph, factors)
}

/// Edge {i,j} iff the subgroups commute elementwise in G.
pub fn commutation_graph(g: &FiniteGroup, subgroups: &[Subgroup]) -> CommutationGraph {
    let n = subgroups.len();
    let edges = (1..=n).flat_map(|i| {
        (i + 1..=n).filter_map(move |j| {
            let all_commute = subgroups[i - 1].elements().iter().all(|&a| {
                subgroups[j - 1]
                    .elements()
                    .iter()
                    .all(|&b| g.commutes(a, b))
            });
            all_commute.then_some((i, j))
        })
    });
    CommutationGraph::new(n, edges.collect::<Vec<_>>())
}

/// First non-commuting pair on an edge of the 1-skeleton, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub edge: (usize, usize),
    pub left: usize,
    pub right: usize,
    pub left_name: String,
    pub right_name: String,
}

#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub extends: bool,
    pub graph: CommutationGraph,
    pub violation: Option<Violation>,
}

/// The product-of-subgroups evaluation factors through the graph product
/// over the 1-skeleton exactly when every skeleton edge commutes in G.
/// On failure the lexicographically first witness comes back.
pub fn extension_exists(
    k: &SimplicialComplex,
    g: &FiniteGroup,
    subgroups: &[Subgroup],
) -> Result<ExtensionReport, GraphProductError> {
    if subgroups.len() != k.vertex_count() {
        return Err(GraphProductError::DimensionMismatch {
            expected: k.vertex_count(),
            got: subgroups.len(),
        });
    }
    let graph = commutation_graph(g, subgroups);
    for (i, j) in k.edges() {
        if graph.adjacent(i, j) {
            continue;
        }
        let (a, b) = first_noncommuting_pair(g, &subgroups[i - 1], &subgroups[j - 1])
            .expect("missing edge implies a witness");
        return Ok(ExtensionReport {
            extends: false,
            graph,
            violation: Some(Violation {
                edge: (i, j),
                left: a,
                right: b,
                left_name: g.name(a).to_string(),
                right_name: g.name(b).to_string(),
            }),
        });
    }
    Ok(ExtensionReport {
        extends: true,
        graph,
        violation: None,
    })
}

fn first_noncommuting_pair(
    g: &FiniteGroup,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Option<(usize, usize)> {
    for &a in h1.elements() {
        for &b in h2.elements() {
            if !g.commutes(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Evaluates a word over the subgroup factors in G: syllable (v, idx)
/// names the idx-th element of subgroup v.
pub fn evaluate_in_group(g: &FiniteGroup, subgroups: &[Subgroup], w: &Word) -> usize {
    w.syllables.iter().fold(0, |acc, s| {
        let elem = subgroups[s.vertex - 1].elements()[s.element];
        g.mul(acc, elem)
    })
}

/// Non-extension certificate for a family of subgroups of an ambient
/// group with trivial center that is (l+1)-transitively commutative:
/// inside each subgroup we exhibit a nontrivial l-stage centralizer of a
/// nonidentity element of Γˡ(G), distinct across subgroups and pairwise
/// trivially intersecting, and check the commutation graph is edgeless.
#[derive(Debug, Clone)]
pub struct NonExtensionCertificate {
    pub stage: usize,
    /// witnessing element index per subgroup
    pub witnesses: Vec<usize>,
    pub witness_names: Vec<String>,
    pub centralizer_orders: Vec<usize>,
    pub graph: CommutationGraph,
}

pub fn non_extension_certificate(
    g: &FiniteGroup,
    subgroups: &[Subgroup],
    l: usize,
) -> Result<NonExtensionCertificate, GraphProductError> {
    assert!(l >= 1);
    if g.center().order() != 1 {
        return Err(GraphProductError::CenterNonTrivial);
    }
    if !g.is_k_tc(l + 1) {
        return Err(GraphProductError::NotKTC(l + 1));
    }
    let family = l_stage_centralizer_family(g, l);
    let mut chosen: Vec<(usize, &Subgroup)> = Vec::new();
    if !pick_witnesses(subgroups, &family, 0, &mut chosen) {
        let stuck = chosen.len();
        return Err(GraphProductError::HypothesisUnmet(stuck + 1));
    }
    let graph = commutation_graph(g, subgroups);
    assert!(
        graph.is_edgeless(),
        "distinct trivially-intersecting stage centralizers force an edgeless graph"
    );
    Ok(NonExtensionCertificate {
        stage: l,
        witnesses: chosen.iter().map(|(w, _)| *w).collect(),
        witness_names: chosen.iter().map(|(w, _)| g.name(*w).to_string()).collect(),
        centralizer_orders: chosen.iter().map(|(_, c)| c.order()).collect(),
        graph,
    })
}

fn pick_witnesses<'a>(
    subgroups: &[Subgroup],
    family: &'a [(usize, Subgroup)],
    i: usize,
    chosen: &mut Vec<(usize, &'a Subgroup)>,
) -> bool {
    if i == subgroups.len() {
        return true;
    }
    'candidates: for (witness, cent) in family {
        if cent.order() <= 1 {
            continue;
        }
        if !cent.elements().iter().all(|&e| subgroups[i].contains(e)) {
            continue;
        }
        for (_, prev) in chosen.iter() {
            if prev.elements() == cent.elements() || prev.intersection(cent).len() > 1 {
                continue 'candidates;
            }
        }
        chosen.push((*witness, cent));
        if pick_witnesses(subgroups, family, i + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
