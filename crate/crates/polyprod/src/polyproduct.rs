//! Finite cell model of the polyhedral product of marked intervals over a
//! simplicial complex.
//!
//! Coordinate i carries a copy of [0,1] with m_i marked points. A cell of
//! the model picks a marked point or a gap segment in every coordinate;
//! the set of segment coordinates (the support) must be a face of K. Only
//! the counts m_i matter, so the API takes them directly.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::homology::{groups_equal, homology_of, ChainComplex, HomologyGroup, IntMatrix};
use crate::simplicial::{Face, SimplicialComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("{got} mark counts supplied for a complex on {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cell model would have {predicted} cells, over the limit of {limit}")]
    CellLimitExceeded { predicted: u128, limit: u128 },
}

/// Marked-point counts (m_1, ..., m_n), every m_i >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marks(Vec<usize>);

impl Marks {
    pub fn new(m: Vec<usize>) -> Self {
        assert!(
            !m.is_empty() && m.iter().all(|&x| x >= 1),
            "marks must be >= 1"
        );
        Marks(m)
    }

    pub fn uniform(count: usize, m: usize) -> Self {
        Marks::new(vec![m; count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty() // never true: the constructor requires a count
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn product(&self) -> u128 {
        self.0.iter().map(|&m| m as u128).product()
    }
}

/// One coordinate of a cubical cell: the j-th marked point, or the j-th
/// gap segment between consecutive marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Vertex(usize),
    Edge(usize),
}

/// Product cell; its dimension is the number of Edge coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicalCell {
    pub coords: Vec<Coord>,
}

impl CubicalCell {
    pub fn dim(&self) -> usize {
        self.coords
            .iter()
            .filter(|c| matches!(c, Coord::Edge(_)))
            .count()
    }

    /// Coordinates carrying a segment, as a 1-based face.
    pub fn support(&self) -> Face {
        Face::new(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| matches!(c, Coord::Edge(_)))
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }
}

impl fmt::Display for CubicalCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match c {
                Coord::Vertex(j) => write!(f, "v{j}")?,
                Coord::Edge(j) => write!(f, "e{j}")?,
            }
        }
        write!(f, ")")
    }
}

/// Cells of the model grouped by dimension, each group sorted.
#[derive(Debug, Clone)]
pub struct CubicalComplex {
    marks: Marks,
    cells: Vec<Vec<CubicalCell>>,
}

impl CubicalComplex {
    /// Enumerates every coordinate-wise product of marked points and gap
    /// segments whose support is a face of K.
    pub fn build(k: &SimplicialComplex, marks: &Marks) -> Result<Self, PolyError> {
        Self::build_with_limit(k, marks, u128::MAX)
    }

    /// Same, refusing up front when the predicted cell count exceeds `limit`.
    pub fn build_with_limit(
        k: &SimplicialComplex,
        marks: &Marks,
        limit: u128,
    ) -> Result<Self, PolyError> {
        if marks.len() != k.vertex_count() {
            return Err(PolyError::DimensionMismatch {
                expected: k.vertex_count(),
                got: marks.len(),
            });
        }
        let predicted = predicted_cell_count(k, marks);
        if predicted > limit {
            return Err(PolyError::CellLimitExceeded { predicted, limit });
        }
        let n = marks.len();
        let mut cells: Vec<Vec<CubicalCell>> = vec![Vec::new(); k.dim() + 2];
        let mut top = 0;
        for support in std::iter::once(Face::empty()).chain(k.faces()) {
            let dim = support.len();
            top = top.max(dim);
            let mut coords = vec![Coord::Vertex(1); n];
            enumerate_cells(marks, &support, 0, &mut coords, &mut cells[dim]);
        }
        cells.truncate(top + 1);
        for group in &mut cells {
            group.sort();
        }
        Ok(CubicalComplex {
            marks: marks.clone(),
            cells,
        })
    }

    pub fn marks(&self) -> &Marks {
        &self.marks
    }

    /// Top cell dimension.
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells_of_dim(&self, d: usize) -> &[CubicalCell] {
        self.cells.get(d).map_or(&[], |v| v)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|g| g.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|g| g.len()).sum()
    }

    /// Signed cubical boundary. Differentiating the t-th segment coordinate
    /// (in coordinate order) contributes (-1)^t (top face minus bottom
    /// face), where the segment [f_j, f_{j+1}] has top f_{j+1} and bottom
    /// f_j.
    pub fn chain_complex(&self) -> ChainComplex {
        let dims: Vec<usize> = self.cell_counts();
        let mut boundaries = vec![IntMatrix::zero(0, dims[0])];
        for d in 1..dims.len() {
            let index: HashMap<&CubicalCell, usize> = self.cells[d - 1]
                .iter()
                .enumerate()
                .map(|(i, c)| (c, i))
                .collect();
            let mut m = IntMatrix::zero(dims[d - 1], dims[d]);
            for (col, cell) in self.cells[d].iter().enumerate() {
                let mut edge_seen = 0;
                for (i, coord) in cell.coords.iter().enumerate() {
                    let Coord::Edge(j) = coord else { continue };
                    let sign = if edge_seen % 2 == 0 { 1i64 } else { -1i64 };
                    edge_seen += 1;
                    let mut top = cell.clone();
                    top.coords[i] = Coord::Vertex(j + 1);
                    let mut bottom = cell.clone();
                    bottom.coords[i] = Coord::Vertex(*j);
                    let rt = index[&top];
                    let rb = index[&bottom];
                    let cur = m.get(rt, col) + BigInt::from(sign);
                    m.set(rt, col, cur);
                    let cur = m.get(rb, col) - BigInt::from(sign);
                    m.set(rb, col, cur);
                }
            }
            boundaries.push(m);
        }
        ChainComplex { dims, boundaries }
    }

    /// Connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let verts = &self.cells[0];
        let index: HashMap<&CubicalCell, usize> =
            verts.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in self.cells_of_dim(1) {
            let (i, coord) = edge
                .coords
                .iter()
                .enumerate()
                .find(|(_, c)| matches!(c, Coord::Edge(_)))
                .unwrap();
            let Coord::Edge(j) = coord else {
                unreachable!()
            };
            let mut a = edge.clone();
            a.coords[i] = Coord::Vertex(*j);
            let mut b = edge.clone();
            b.coords[i] = Coord::Vertex(j + 1);
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut roots: Vec<usize> = (0..verts.len()).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

fn enumerate_cells(
    marks: &Marks,
    support: &Face,
    i: usize,
    coords: &mut Vec<Coord>,
    out: &mut Vec<CubicalCell>,
) {
    if i == marks.len() {
        out.push(CubicalCell {
            coords: coords.clone(),
        });
        return;
    }
    let m = marks.counts()[i];
    if support.contains(i + 1) {
        for j in 1..m {
            coords[i] = Coord::Edge(j);
            enumerate_cells(marks, support, i + 1, coords, out);
        }
    } else {
        for j in 1..=m {
            coords[i] = Coord::Vertex(j);
            enumerate_cells(marks, support, i + 1, coords, out);
        }
    }
}

/// Predicted cell count: Σ over faces σ (with the empty face) of
/// ∏_{i∈σ}(m_i − 1) · ∏_{i∉σ} m_i.
pub fn predicted_cell_count(k: &SimplicialComplex, marks: &Marks) -> u128 {
    std::iter::once(Face::empty())
        .chain(k.faces())
        .map(|f| {
            marks
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &m)| {
                    if f.contains(i + 1) {
                        (m - 1) as u128
                    } else {
                        m as u128
                    }
                })
                .product::<u128>()
        })
        .sum()
}

/// Reduced (or unreduced) integral homology of the cell model.
pub fn polyproduct_homology(
    k: &SimplicialComplex,
    marks: &Marks,
    reduced: bool,
) -> Result<Vec<HomologyGroup>, PolyError> {
    let complex = CubicalComplex::build(k, marks)?;
    Ok(homology_of(&complex.chain_complex(), reduced).expect("cubical boundary composes to zero"))
}

/// Closed form for the kernel rank: (r−1)·∏m_i − Σ_i ∏_{j≠i} m_j + 1.
/// The empty products make r = 1 come out as zero.
pub fn rank_closed_form(marks: &Marks) -> u64 {
    let r = marks.len() as i128;
    let prod: i128 = marks.counts().iter().map(|&m| m as i128).product();
    let drop_one: i128 = (0..marks.len())
        .map(|i| {
            marks
                .counts()
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &m)| m as i128)
                .product::<i128>()
        })
        .sum();
    let n = (r - 1) * prod - drop_one + 1;
    debug_assert!(n >= 0);
    n as u64
}

/// The same rank by the recurrence N_r = m_r·N_{r−1} + (m_r − 1)(∏_{i<r} m_i − 1),
/// folded up from N_1 = 0.
pub fn rank_recurrence(marks: &Marks) -> u64 {
    let mut n: u128 = 0;
    let mut prefix_product: u128 = marks.counts()[0] as u128;
    for &m in &marks.counts()[1..] {
        let m = m as u128;
        n = m * n + (m - 1) * (prefix_product - 1);
        prefix_product *= m;
    }
    n as u64
}

/// Spanning-tree oracle: first Betti number E − V + C of the 1-skeleton of
/// the model over isolated vertices. Avoids the SNF pipeline entirely.
pub fn rank_oracle(marks: &Marks) -> u64 {
    let k0 = SimplicialComplex::discrete(marks.len());
    let complex = CubicalComplex::build(&k0, marks).expect("marks match vertex count");
    let v = complex.cells_of_dim(0).len() as i64;
    let e = complex.cells_of_dim(1).len() as i64;
    let c = complex.component_count() as i64;
    (e - v + c) as u64
}

/// Degree-shifted restriction sum: the degree-k group collects the reduced
/// (k−1)-st homology of every restriction K_I over nonempty I, weighted by
/// ∏_{i∈I}(m_i − 1) copies. With all m_i = 2 the weights are 1. Must agree
/// with `polyproduct_homology` in every degree.
pub fn splitting_homology(
    k: &SimplicialComplex,
    marks: &Marks,
) -> Result<Vec<HomologyGroup>, PolyError> {
    if marks.len() != k.vertex_count() {
        return Err(PolyError::DimensionMismatch {
            expected: k.vertex_count(),
            got: marks.len(),
        });
    }
    let n = k.vertex_count();
    let mut betti = vec![0usize; n + 2];
    let mut torsion: Vec<Vec<BigInt>> = vec![Vec::new(); n + 2];
    for mask in 1u64..(1u64 << n) {
        let verts: Vec<usize> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        let weight: u128 = verts
            .iter()
            .map(|&v| (marks.counts()[v - 1] - 1) as u128)
            .product();
        if weight == 0 {
            continue;
        }
        let weight = usize::try_from(weight).expect("weight fits at desk scale");
        let (sub, _) = k
            .full_subcomplex(&Face::new(verts))
            .expect("nonempty index set");
        let groups = crate::homology::simplicial_homology(&sub, true);
        for (d, g) in groups.iter().enumerate() {
            let degree = d + 1;
            betti[degree] += weight * g.betti;
            for t in &g.torsion {
                torsion[degree].extend(std::iter::repeat_n(t.clone(), weight));
            }
        }
    }
    let top = (0..betti.len())
        .rev()
        .find(|&d| betti[d] > 0 || !torsion[d].is_empty())
        .unwrap_or(0);
    Ok((0..=top)
        .map(|d| HomologyGroup {
            betti: betti[d],
            torsion: invariant_factor_form(torsion[d].clone()),
        })
        .collect())
}

/// Canonicalizes a direct sum of cyclic torsion groups into an invariant
/// factor chain d₁ | d₂ | …, by repeated gcd/lcm exchanges.
pub fn invariant_factor_form(mut torsion: Vec<BigInt>) -> Vec<BigInt> {
    torsion.retain(|t| !t.is_one());
    loop {
        torsion.sort();
        let mut changed = false;
        for i in 0..torsion.len() {
            for j in i + 1..torsion.len() {
                if (&torsion[j] % &torsion[i]).is_zero() {
                    continue;
                }
                let g = torsion[i].gcd(&torsion[j]);
                let l = &torsion[i] * &torsion[j] / &g;
                torsion[i] = g;
                torsion[j] = l;
                changed = true;
            }
        }
        torsion.retain(|t| !t.is_one());
        if !changed {
            break;
        }
    }
    torsion
}

/// Aspherical-or-not report. When K is not flag, a smallest minimal
/// non-face σ witnesses the embedded sphere: the model over K_σ with two
/// marks per coordinate has reduced homology Z concentrated in degree
/// |σ| − 1, and the report carries the verified degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmReport {
    pub aspherical: bool,
    pub witness: Option<Face>,
    /// degree where the witness sphere carries its Z, checked by the
    /// cubical pipeline
    pub verified_sphere_degree: Option<usize>,
}

pub fn classify_em(k: &SimplicialComplex) -> EmReport {
    let mut nonfaces = k.minimal_nonfaces(3);
    if nonfaces.is_empty() {
        debug_assert!(k.is_flag());
        return EmReport {
            aspherical: true,
            witness: None,
            verified_sphere_degree: None,
        };
    }
    debug_assert!(!k.is_flag());
    nonfaces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let witness = nonfaces.into_iter().next().unwrap();
    let size = witness.len();
    let (sub, _) = k.full_subcomplex(&witness).expect("non-face is nonempty");
    let groups = polyproduct_homology(&sub, &Marks::uniform(size, 2), true)
        .expect("marks match restriction");
    let expected_degree = size - 1;
    let sphere_ok = groups.iter().enumerate().all(|(d, g)| {
        if d == expected_degree {
            *g == HomologyGroup::free(1)
        } else {
            g.is_trivial()
        }
    });
    assert!(
        sphere_ok,
        "minimal non-face {witness} did not produce a sphere: {groups:?}"
    );
    EmReport {
        aspherical: false,
        witness: Some(witness),
        verified_sphere_degree: Some(expected_degree),
    }
}

/// Convenience check used in tests and by the CLI rank mode.
pub fn rank_agreement(marks: &Marks) -> (u64, u64, u64, bool) {
    let closed = rank_closed_form(marks);
    let rec = rank_recurrence(marks);
    let oracle = rank_oracle(marks);
    (closed, rec, oracle, closed == rec && rec == oracle)
}

/// Splitting and cubical homology computed side by side.
pub fn splitting_matches_cubical(k: &SimplicialComplex, marks: &Marks) -> Result<bool, PolyError> {
    let split = splitting_homology(k, marks)?;
    let cubical = polyproduct_homology(k, marks, true)?;
    Ok(groups_equal(&split, &cubical))
}
