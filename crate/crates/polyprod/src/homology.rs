//! Exact integral homology of finite chain complexes via Smith normal form.
//!
//! Matrices carry arbitrary-precision entries: SNF intermediates overflow
//! 64-bit words even on modest inputs. The pivot rule picks the nonzero
//! entry of least absolute value, the standard anti-swell heuristic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::simplicial::SimplicialComplex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary composition is nonzero between degrees {0} and {1}")]
    NotAComplex(usize, usize),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c) - q * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, dst) - q * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    /// row[dst] += row[src]
    fn row_add(&mut self, dst: usize, src: usize) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// Fraction-free Bareiss determinant; test oracle for SNF (∏dᵢ = |det|).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Invariant factors d₁ | d₂ | … | d_r (all positive) and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// SNF together with the unimodular transforms: left * m * right = diag(factors).
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub snf: SmithNormalForm,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfDecomposition {
    /// Verification mode: recomputes left·M·right and compares it with the
    /// diagonal the factors describe.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let product = self.left.mul(m).mul(&self.right);
        if product.rows() != m.rows() || product.cols() != m.cols() {
            return false;
        }
        for r in 0..product.rows() {
            for c in 0..product.cols() {
                let expected = if r == c && r < self.snf.factors.len() {
                    self.snf.factors[r].clone()
                } else {
                    BigInt::zero()
                };
                if *product.get(r, c) != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Smith normal form without transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    snf_impl(m, false).snf
}

/// Smith normal form with unimodular transforms, for verification.
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SnfDecomposition {
    snf_impl(m, true)
}

struct Transforms {
    left: IntMatrix,
    right: IntMatrix,
    track: bool,
}

fn snf_impl(m: &IntMatrix, track: bool) -> SnfDecomposition {
    let mut a = m.clone();
    let mut t = Transforms {
        left: IntMatrix::identity(if track { m.rows() } else { 0 }),
        right: IntMatrix::identity(if track { m.cols() } else { 0 }),
        track,
    };
    let steps = m.rows().min(m.cols());
    let mut k = 0;
    while k < steps {
        if !reduce_stage(&mut a, k, &mut t) {
            break;
        }
        k += 1;
    }
    let mut factors = Vec::new();
    for i in 0..k {
        let d = a.get(i, i).clone();
        debug_assert!(d.is_positive());
        factors.push(d);
    }
    debug_assert!(factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    SnfDecomposition {
        snf: SmithNormalForm {
            rank: factors.len(),
            factors,
        },
        left: t.left,
        right: t.right,
    }
}

/// Clears row and column k and enforces that the pivot divides the rest of
/// the submatrix. Returns false when the submatrix is already zero.
fn reduce_stage(a: &mut IntMatrix, k: usize, t: &mut Transforms) -> bool {
    loop {
        let Some((pi, pj)) = min_abs_entry(a, k) else {
            return false;
        };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        if t.track {
            t.left.swap_rows(k, pi);
            t.right.swap_cols(k, pj);
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            if t.track {
                t.left.negate_row(k);
            }
        }
        let pivot = a.get(k, k).clone();
        let mut dirty = false;
        for i in k + 1..a.rows() {
            if a.get(i, k).is_zero() {
                continue;
            }
            let q = a.get(i, k).div_floor(&pivot);
            a.row_sub(i, k, &q);
            if t.track {
                t.left.row_sub(i, k, &q);
            }
            if !a.get(i, k).is_zero() {
                dirty = true; // remainder smaller than pivot stays behind
            }
        }
        for j in k + 1..a.cols() {
            if a.get(k, j).is_zero() {
                continue;
            }
            let q = a.get(k, j).div_floor(&pivot);
            a.col_sub(j, k, &q);
            if t.track {
                t.right.col_sub(j, k, &q);
            }
            if !a.get(k, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // pivot must divide everything that remains so the diagonal chains
        match find_nondivisible(a, k, &pivot) {
            None => return true,
            Some(i) => {
                a.row_add(k, i);
                if t.track {
                    t.left.row_add(k, i);
                }
            }
        }
    }
}

fn min_abs_entry(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let vabs = v.abs();
            if best.is_none() || vabs < best_abs {
                best = Some((i, j));
                best_abs = vabs;
            }
        }
    }
    best
}

fn find_nondivisible(a: &IntMatrix, k: usize, pivot: &BigInt) -> Option<usize> {
    for i in k + 1..a.rows() {
        for j in k + 1..a.cols() {
            if !(a.get(i, j) % pivot).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Betti rank plus invariant-factor torsion of one homology group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Chain groups given by ranks in degrees 0..=D and boundary maps
/// boundaries[d]: C_d -> C_{d-1} (boundaries[0] is the zero map).
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, HomologyError> {
        if boundaries.len() != dims.len() {
            return Err(HomologyError::ShapeMismatch(format!(
                "{} boundary maps for {} degrees",
                boundaries.len(),
                dims.len()
            )));
        }
        for d in 0..dims.len() {
            let expected_rows = if d == 0 { 0 } else { dims[d - 1] };
            if boundaries[d].cols() != dims[d] || boundaries[d].rows() != expected_rows {
                return Err(HomologyError::ShapeMismatch(format!(
                    "boundary[{d}] is {}x{}, expected {}x{}",
                    boundaries[d].rows(),
                    boundaries[d].cols(),
                    expected_rows,
                    dims[d]
                )));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    fn check_composition(&self) -> Result<(), HomologyError> {
        for d in 2..=self.top_degree() {
            if !self.boundaries[d - 1].mul(&self.boundaries[d]).is_zero() {
                return Err(HomologyError::NotAComplex(d, d - 1));
            }
        }
        Ok(())
    }
}

/// H_d = ker ∂_d / im ∂_{d+1} from SNF ranks and invariant factors. With
/// `reduced`, the degree-0 rank drops by one for the augmentation.
pub fn homology_of(c: &ChainComplex, reduced: bool) -> Result<Vec<HomologyGroup>, HomologyError> {
    c.check_composition()?;
    let top = c.top_degree();
    let snfs: Vec<SmithNormalForm> = (0..=top)
        .map(|d| smith_normal_form(&c.boundaries[d]))
        .collect();
    let mut out = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let kernel_rank = c.dims[d] - snfs[d].rank;
        let image = if d < top {
            snfs[d + 1].clone()
        } else {
            SmithNormalForm {
                factors: Vec::new(),
                rank: 0,
            }
        };
        let mut betti = kernel_rank - image.rank;
        if reduced && d == 0 {
            betti -= 1; // components minus one; degree 0 is always free
        }
        let torsion: Vec<BigInt> = image.factors.into_iter().filter(|f| !f.is_one()).collect();
        out.push(HomologyGroup { betti, torsion });
    }
    Ok(out)
}

/// Ordered-simplex boundary with alternating signs over ascending vertex
/// labels, so ∂{1,2} = {2} - {1}.
pub fn simplicial_chain_complex(k: &SimplicialComplex) -> ChainComplex {
    let mut by_dim: Vec<Vec<crate::simplicial::Face>> = vec![Vec::new(); k.dim() + 1];
    for f in k.faces() {
        by_dim[f.len() - 1].push(f);
    }
    // faces() yields a sorted set and the split preserves order per degree
    let dims: Vec<usize> = by_dim.iter().map(|v| v.len()).collect();
    let mut boundaries = vec![IntMatrix::zero(0, dims[0])];
    for d in 1..dims.len() {
        let index: std::collections::HashMap<&crate::simplicial::Face, usize> = by_dim[d - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let mut m = IntMatrix::zero(dims[d - 1], dims[d]);
        for (col, f) in by_dim[d].iter().enumerate() {
            for (pos, b) in f.boundary_faces().into_iter().enumerate() {
                let row = index[&b];
                let sign = if pos % 2 == 0 { 1i64 } else { -1i64 };
                m.set(row, col, BigInt::from(sign));
            }
        }
        boundaries.push(m);
    }
    ChainComplex { dims, boundaries }
}

/// Reduced (or unreduced) integral homology of a simplicial complex.
pub fn simplicial_homology(k: &SimplicialComplex, reduced: bool) -> Vec<HomologyGroup> {
    homology_of(&simplicial_chain_complex(k), reduced)
        .expect("simplicial boundary always composes to zero")
}

/// Compares group lists that may differ in trailing trivial entries.
pub fn groups_equal(a: &[HomologyGroup], b: &[HomologyGroup]) -> bool {
    let len = a.len().max(b.len());
    let trivial = HomologyGroup::trivial();
    (0..len).all(|d| a.get(d).unwrap_or(&trivial) == b.get(d).unwrap_or(&trivial))
}
