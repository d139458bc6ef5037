//! Abstract simplicial complexes on the vertex set {1, ..., n}, stored by
//! their maximal faces. Membership of an arbitrary face is tested by
//! inclusion in a facet, so downward closure is implicit.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("vertex label {0} is out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("vertex {0} is not covered by any facet")]
    VertexNotCovered(usize),
    #[error("the restriction index set is empty")]
    EmptyIndexSet,
    #[error("a complex needs at least one vertex")]
    EmptyVertexSet,
}

/// A face: a sorted, duplicate-free list of 1-based vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    verts: Vec<usize>,
}

impl Face {
    /// Builds a face from arbitrary vertex labels, sorting and deduplicating.
    pub fn new(mut verts: Vec<usize>) -> Self {
        verts.sort_unstable();
        verts.dedup();
        Face { verts }
    }

    pub fn empty() -> Self {
        Face { verts: Vec::new() }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Dimension of the face; the empty face has no dimension.
    pub fn dim(&self) -> Option<usize> {
        self.verts.len().checked_sub(1)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.verts.iter().all(|v| other.contains(*v))
    }

    pub fn intersect(&self, other: &Face) -> Face {
        Face {
            verts: self
                .verts
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        }
    }

    /// All subsets obtained by deleting exactly one vertex, in deletion order.
    pub fn boundary_faces(&self) -> Vec<Face> {
        (0..self.verts.len())
            .map(|i| {
                let mut v = self.verts.clone();
                v.remove(i);
                Face { verts: v }
            })
            .collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl From<&[usize]> for Face {
    fn from(verts: &[usize]) -> Self {
        Face::new(verts.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Face {
    fn from(verts: [usize; N]) -> Self {
        Face::new(verts.to_vec())
    }
}

/// An abstract simplicial complex on vertices 1..=n. Every singleton is a
/// face, the empty set is a face, and no stored facet contains another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given facets. Every vertex of
    /// 1..=n must appear in some facet; isolated vertices have to be listed
    /// as singleton facets explicitly.
    pub fn from_facets(n: usize, facets: Vec<Face>) -> Result<Self, SimplicialError> {
        if n == 0 {
            return Err(SimplicialError::EmptyVertexSet);
        }
        let mut covered = vec![false; n + 1];
        for f in &facets {
            for &v in f.vertices() {
                if v == 0 || v > n {
                    return Err(SimplicialError::OutOfRange(v, n));
                }
                covered[v] = true;
            }
        }
        if let Some(v) = (1..=n).find(|&v| !covered[v]) {
            return Err(SimplicialError::VertexNotCovered(v));
        }
        let mut maximal: Vec<Face> = Vec::new();
        let mut sorted = facets;
        // Keep only inclusion-maximal faces; longer first so subset pruning
        // is a single pass.
        sorted.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        for f in sorted {
            if !maximal.iter().any(|m| f.is_subset_of(m)) {
                maximal.push(f);
            }
        }
        maximal.sort();
        Ok(SimplicialComplex { n, facets: maximal })
    }

    /// The full simplex on n vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex::from_facets(n, vec![Face::new((1..=n).collect())])
            .expect("full simplex is always valid")
    }

    /// n isolated points.
    pub fn discrete(n: usize) -> Self {
        SimplicialComplex::from_facets(n, (1..=n).map(|v| Face::new(vec![v])).collect())
            .expect("discrete complex is always valid")
    }

    /// Boundary of the full simplex on n vertices (n >= 2).
    pub fn simplex_boundary(n: usize) -> Self {
        let all: Vec<usize> = (1..=n).collect();
        let facets = (0..n)
            .map(|i| {
                let mut v = all.clone();
                v.remove(i);
                Face::new(v)
            })
            .collect();
        SimplicialComplex::from_facets(n, facets).expect("simplex boundary is always valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Largest face dimension.
    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    /// Face membership, including the empty face.
    pub fn contains(&self, face: &Face) -> bool {
        if face.is_empty() {
            return true;
        }
        self.facets.iter().any(|m| face.is_subset_of(m))
    }

    /// All nonempty faces, grouped and deduplicated.
    pub fn faces(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for facet in &self.facets {
            let k = facet.len();
            // every nonempty subset of the facet
            for mask in 1u64..(1u64 << k) {
                let verts: Vec<usize> = facet
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                out.insert(Face { verts });
            }
        }
        out
    }

    /// Number of faces in each dimension 0..=dim.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.dim() + 1];
        for face in self.faces() {
            f[face.len() - 1] += 1;
        }
        f
    }

    /// Alternating sum of face counts over the nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &count)| {
                if d % 2 == 0 {
                    count as i64
                } else {
                    -(count as i64)
                }
            })
            .sum()
    }

    /// Faces with at most q+1 vertices.
    pub fn skeleton(&self, q: usize) -> SimplicialComplex {
        let cap = q + 1;
        let mut candidates: BTreeSet<Face> = BTreeSet::new();
        for facet in &self.facets {
            if facet.len() <= cap {
                candidates.insert(facet.clone());
            } else {
                for sub in subsets_of_size(facet.vertices(), cap) {
                    candidates.insert(Face { verts: sub });
                }
            }
        }
        SimplicialComplex::from_facets(self.n, candidates.into_iter().collect())
            .expect("skeleton of a valid complex is valid")
    }

    /// Edge set of the 1-skeleton, as sorted pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = BTreeSet::new();
        for facet in &self.facets {
            let vs = facet.vertices();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    out.insert((vs[i], vs[j]));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Restriction {σ ∩ I : σ ∈ K} relabeled to 1..=|I|. The second return
    /// value maps new labels (index + 1) back to the original labels.
    pub fn full_subcomplex(
        &self,
        index_set: &Face,
    ) -> Result<(SimplicialComplex, Vec<usize>), SimplicialError> {
        if index_set.is_empty() {
            return Err(SimplicialError::EmptyIndexSet);
        }
        for &v in index_set.vertices() {
            if v == 0 || v > self.n {
                return Err(SimplicialError::OutOfRange(v, self.n));
            }
        }
        let old_labels: Vec<usize> = index_set.vertices().to_vec();
        let relabel = |v: usize| old_labels.binary_search(&v).unwrap() + 1;
        let facets = self
            .facets
            .iter()
            .map(|f| {
                Face::new(
                    f.intersect(index_set)
                        .vertices()
                        .iter()
                        .map(|&v| relabel(v))
                        .collect(),
                )
            })
            .chain((1..=old_labels.len()).map(|v| Face::new(vec![v])))
            .filter(|f| !f.is_empty())
            .collect();
        let sub = SimplicialComplex::from_facets(old_labels.len(), facets)?;
        Ok((sub, old_labels))
    }

    /// All S with |S| >= min_size, S not a face, every proper subset a face.
    /// Sorted lexicographically.
    ///
    /// Candidates of size >= 3 are found by extending cliques of the
    /// 1-skeleton instead of scanning all 2^n subsets: every minimal
    /// non-face on three or more vertices is a clique, and any superset of
    /// a non-face is non-minimal, so the search prunes at the first
    /// non-face it meets.
    pub fn minimal_nonfaces(&self, min_size: usize) -> Vec<Face> {
        assert!(min_size >= 2, "minimal non-faces of size < 2 do not exist");
        let mut out: Vec<Face> = Vec::new();
        let adj = self.adjacency();
        if min_size == 2 {
            let nonedges = (1..=self.n)
                .flat_map(|i| (i + 1..=self.n).map(move |j| (i, j)))
                .filter(|&(i, j)| !adj[i][j]);
            out.extend(nonedges.map(|(i, j)| Face::new(vec![i, j])));
        }
        let mut stack: Vec<usize> = Vec::new();
        for v in 1..=self.n {
            stack.push(v);
            self.extend_clique(&mut stack, &adj, min_size, &mut out);
            stack.pop();
        }
        out.sort();
        out
    }

    fn extend_clique(
        &self,
        clique: &mut Vec<usize>,
        adj: &[Vec<bool>],
        min_size: usize,
        out: &mut Vec<Face>,
    ) {
        let last = *clique.last().unwrap();
        for v in last + 1..=self.n {
            if !clique.iter().all(|&u| adj[u][v]) {
                continue;
            }
            clique.push(v);
            let face = Face::new(clique.clone());
            if self.contains(&face) {
                self.extend_clique(clique, adj, min_size, out);
            } else if face.len() >= 3
                && face.len() >= min_size
                && face.boundary_faces().iter().all(|b| self.contains(b))
            {
                out.push(face);
            }
            clique.pop();
        }
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for (i, j) in self.edges() {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }

    /// True iff every clique of the 1-skeleton is a face. This is the
    /// clique-scan route; `minimal_nonfaces(3).is_empty()` is the
    /// independent second route.
    pub fn is_flag(&self) -> bool {
        let adj = self.adjacency();
        self.maximal_cliques(&adj)
            .iter()
            .all(|c| self.contains(&Face::new(c.clone())))
    }

    /// The clique complex of the 1-skeleton.
    pub fn flag_completion(&self) -> SimplicialComplex {
        let adj = self.adjacency();
        let facets = self
            .maximal_cliques(&adj)
            .into_iter()
            .map(Face::new)
            .collect();
        SimplicialComplex::from_facets(self.n, facets)
            .expect("clique complex of a valid complex is valid")
    }

    /// Bron-Kerbosch without pivoting; fine at this scale.
    fn maximal_cliques(&self, adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
        let mut cliques = Vec::new();
        let mut r = Vec::new();
        let p: Vec<usize> = (1..=self.n).collect();
        self.bron_kerbosch(&mut r, p, Vec::new(), adj, &mut cliques);
        cliques
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        adj: &[Vec<bool>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        while let Some(v) = p.first().copied() {
            r.push(v);
            let p2 = p.iter().copied().filter(|&u| adj[u][v]).collect();
            let x2 = x.iter().copied().filter(|&u| adj[u][v]).collect();
            self.bron_kerbosch(r, p2, x2, adj, out);
            r.pop();
            p.remove(0);
            x.push(v);
        }
    }

    /// Cone over the complex: a fresh vertex n+1 joined to every facet.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.n + 1;
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut v = f.vertices().to_vec();
                v.push(apex);
                Face::new(v)
            })
            .collect();
        SimplicialComplex::from_facets(apex, facets).expect("cone of a valid complex is valid")
    }
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}
