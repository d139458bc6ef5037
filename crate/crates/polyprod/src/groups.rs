//! Finite groups as validated Cayley tables: subgroup machinery,
//! centralizers, the descending central series, transitive-commutation
//! classification and commuting-tuple counts.
//!
//! Element 0 is always the identity. Everything here assumes desk-scale
//! orders (the bundled corpus tops out at |G| = 24), so scans are
//! exhaustive.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table entry {0} at ({1},{2}) is out of range")]
    NotClosed(usize, usize, usize),
    #[error("table row {0} has {1} entries, expected {2}")]
    RaggedTable(usize, usize, usize),
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("associativity fails on ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("row or column {0} of the table is not a permutation")]
    NotLatin(usize),
    #[error("generator is not a permutation of 1..={0}")]
    BadPermutation(usize),
    #[error("operation requires a nonabelian group")]
    AbelianInput,
}

/// How many triples to sample when the order is too large for the
/// exhaustive associativity check.
const ASSOC_EXHAUSTIVE_LIMIT: usize = 64;
const ASSOC_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates a composition table: closure, identity at index 0, Latin
    /// square, inverses, associativity. Associativity is exhaustive up to
    /// order 64 and sampled with a fixed seed above that.
    pub fn from_cayley(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_cayley_seeded(table, 0)
    }

    pub fn from_cayley_seeded(table: Vec<Vec<usize>>, seed: u64) -> Result<Self, GroupError> {
        let n = table.len();
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::RaggedTable(i, row.len(), n));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotClosed(v, i, j));
                }
                flat.push(v);
            }
        }
        let g = FiniteGroup {
            order: n,
            table: flat,
            inverse: vec![0; n],
            names: (0..n)
                .map(|i| if i == 0 { "e".into() } else { format!("g{i}") })
                .collect(),
        };
        g.validate(seed)
    }

    fn validate(mut self, seed: u64) -> Result<Self, GroupError> {
        let n = self.order;
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::NoIdentity);
            }
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                let r = self.mul(a, b);
                let c = self.mul(b, a);
                if row_seen[r] || col_seen[c] {
                    return Err(GroupError::NotLatin(a));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for a in 0..n {
            match (0..n).find(|&b| self.mul(a, b) == 0 && self.mul(b, a) == 0) {
                Some(b) => self.inverse[a] = b,
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        if n <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
            let mut next = move || {
                // splitmix64
                state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                (z ^ (z >> 31)) as usize
            };
            for _ in 0..ASSOC_SAMPLES {
                let (a, b, c) = (next() % n, next() % n, next() % n);
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        Ok(self)
    }

    /// Closes a set of permutations of 1..=degree under composition and
    /// builds the table. Elements are sorted lexicographically as
    /// permutation words, which puts the identity first.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        for p in generators {
            if p.len() != degree {
                return Err(GroupError::BadPermutation(degree));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x == 0 || x > degree || seen[x - 1] {
                    return Err(GroupError::BadPermutation(degree));
                }
                seen[x - 1] = true;
            }
        }
        let identity: Vec<usize> = (1..=degree).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> {
            // (p ∘ q)(x) = p(q(x))
            (0..degree).map(|x| p[q[x] - 1]).collect()
        };
        let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
        elements.insert(identity.clone());
        let mut frontier: Vec<Vec<usize>> = vec![identity];
        while let Some(p) = frontier.pop() {
            for gen in generators {
                let q = compose(gen, &p);
                if elements.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = elements.into_iter().collect();
        let index: std::collections::HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = elements.len();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[compose(&elements[i], &elements[j]).as_slice()];
            }
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        let g = FiniteGroup {
            order: n,
            table,
            inverse: vec![0; n],
            names,
        };
        g.validate(0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// [a,b] = a⁻¹ b⁻¹ a b
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.order);
        self.names = names;
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    // ---- subgroups -------------------------------------------------------

    pub fn centralizer(&self, g: usize) -> Subgroup {
        Subgroup::checked(
            self,
            (0..self.order).filter(|&h| self.commutes(g, h)).collect(),
        )
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::checked(
            self,
            (0..self.order)
                .filter(|&z| (0..self.order).all(|g| self.commutes(z, g)))
                .collect(),
        )
    }

    /// Centralizer of a whole subset: ∩_{a} C(a).
    pub fn centralizer_of_set(&self, elements: &[usize]) -> Subgroup {
        Subgroup::checked(
            self,
            (0..self.order)
                .filter(|&h| elements.iter().all(|&a| self.commutes(a, h)))
                .collect(),
        )
    }

    /// Subgroup generated by a set, by closure under multiplication.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        Subgroup::checked(self, (0..self.order).filter(|&x| seen[x]).collect())
    }

    /// Subgroup generated by all [a,b] with a in A, b in B.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = BTreeSet::new();
        for &x in a.elements() {
            for &y in b.elements() {
                gens.insert(self.commutator(x, y));
            }
        }
        let gens: Vec<usize> = gens.into_iter().collect();
        self.generated_subgroup(&gens)
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::checked(self, (0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::checked(self, vec![0])
    }

    /// Re-indexes a subgroup as a standalone group; element 0 stays the
    /// identity because subgroup element lists are sorted.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> FiniteGroup {
        let elems = sub.elements();
        let index: std::collections::HashMap<usize, usize> =
            elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = elems.len();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&self.mul(elems[i], elems[j])];
            }
        }
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        let mut g = FiniteGroup {
            order: n,
            table,
            inverse: vec![0; n],
            names,
        };
        for a in 0..n {
            g.inverse[a] = index[&self.inv(elems[a])];
        }
        g
    }

    /// Every subgroup, by closing generator sets one element at a time.
    /// Exponential in principle; meant for the small corpus orders.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        while let Some(h) = frontier.pop() {
            for g in 1..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let bigger = self.generated_subgroup(&gens);
                if found.insert(bigger.elements().to_vec()) {
                    frontier.push(bigger.elements().to_vec());
                }
            }
        }
        found
            .into_iter()
            .map(|e| Subgroup::checked(self, e))
            .collect()
    }

    /// Maximal abelian subgroups are exactly the maximal sets of pairwise
    /// commuting elements, so Bron-Kerbosch on the commuting graph finds
    /// them. Sorted canonically.
    pub fn maximal_abelian_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order;
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        let mut r: Vec<usize> = Vec::new();
        let p: Vec<usize> = (0..n).collect();
        self.commuting_cliques(&mut r, p, Vec::new(), &mut cliques);
        let mut subs: Vec<Subgroup> = cliques
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                Subgroup::checked(self, c)
            })
            .collect();
        subs.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements().cmp(b.elements()))
        });
        subs
    }

    fn commuting_cliques(
        &self,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        while let Some(v) = p.first().copied() {
            r.push(v);
            let p2 = p
                .iter()
                .copied()
                .filter(|&u| u != v && self.commutes(u, v))
                .collect();
            let x2 = x.iter().copied().filter(|&u| self.commutes(u, v)).collect();
            self.commuting_cliques(r, p2, x2, out);
            r.pop();
            p.remove(0);
            x.push(v);
        }
    }

    /// No proper nontrivial normal subgroup; every nonidentity normal
    /// closure must be everything.
    pub fn is_simple(&self) -> bool {
        if self.order == 1 {
            return false;
        }
        for g in 1..self.order {
            let conjugates: BTreeSet<usize> = (0..self.order)
                .map(|h| self.mul(self.mul(h, g), self.inv(h)))
                .collect();
            let gens: Vec<usize> = conjugates.into_iter().collect();
            if self.generated_subgroup(&gens).order() != self.order {
                return false;
            }
        }
        true
    }

    // ---- descending central series & transitive commutation -------------

    /// Γ¹ = G, Γ^{n+1} = [Γⁿ, G], iterated one step past stabilization to
    /// witness it; the stored chain is strictly descending.
    pub fn descending_central_series(&self) -> CentralSeries {
        let whole = self.full_subgroup();
        let mut stages = vec![whole.clone()];
        loop {
            let last = stages.last().unwrap();
            let next = self.commutator_subgroup(last, &whole);
            if next.elements() == last.elements() {
                break;
            }
            stages.push(next);
        }
        CentralSeries { stages }
    }

    /// Number of strict descents to reach the trivial group, or None when
    /// the series stabilizes above it.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.descending_central_series();
        if series.stable_term().order() == 1 {
            Some(series.stages.len() - 1)
        } else {
            None
        }
    }

    /// C_G(g) ∩ Γˡ(G). The flag reports when l ran past stabilization and
    /// the stable term was used.
    pub fn l_stage_centralizer(&self, g: usize, l: usize) -> (Subgroup, bool) {
        assert!(l >= 1);
        let series = self.descending_central_series();
        let (gamma, exhausted) = series.gamma(l);
        let cent = self.centralizer(g);
        let elems: Vec<usize> = gamma
            .elements()
            .iter()
            .copied()
            .filter(|e| cent.contains(*e))
            .collect();
        (Subgroup::checked(self, elems), exhausted)
    }

    /// Transitivity of commuting through nonidentity middle elements, with
    /// the outer pair drawn from Γ^{k−1}(G): whenever [g,h] = [h,c] = 1
    /// with h ≠ e, also [g,c] = 1.
    pub fn is_k_tc(&self, k: usize) -> bool {
        assert!(k >= 2, "k-TC is defined for k >= 2");
        let series = self.descending_central_series();
        let (gamma, _) = series.gamma(k - 1);
        self.tc_holds_on(gamma.elements())
    }

    fn tc_holds_on(&self, outer: &[usize]) -> bool {
        for h in 1..self.order {
            let commuting: Vec<usize> = outer
                .iter()
                .copied()
                .filter(|&g| self.commutes(g, h))
                .collect();
            for (i, &g) in commuting.iter().enumerate() {
                for &c in &commuting[i + 1..] {
                    if !self.commutes(g, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Least k >= 2 that is k-TC. Beyond stabilization of the central
    /// series the answer is constant, so that constant decides between a
    /// finite class and Unbounded.
    pub fn tc_class(&self) -> TcClass {
        let series = self.descending_central_series();
        for k in 2..=series.stages.len() + 1 {
            if self.is_k_tc(k) {
                return TcClass::Class(k);
            }
        }
        TcClass::Unbounded
    }

    /// The four equivalent characterizations of transitive commutation,
    /// each evaluated independently over nonidentity elements. The caller
    /// gets all four; they must agree.
    pub fn tc_equivalences(&self) -> Result<TcEquivalences, GroupError> {
        if self.is_abelian() {
            return Err(GroupError::AbelianInput);
        }
        let n = self.order;
        // (a) every nonidentity element has an abelian centralizer
        let abelian_centralizers = (1..n).all(|g| self.centralizer(g).is_abelian(self));
        // (b) commuting nonidentity elements share their centralizer
        let mut equal_centralizers = true;
        'b: for g in 1..n {
            for h in 1..n {
                if self.commutes(g, h)
                    && self.centralizer(g).elements() != self.centralizer(h).elements()
                {
                    equal_centralizers = false;
                    break 'b;
                }
            }
        }
        // (c) commuting is transitive through nonidentity middles
        let all: Vec<usize> = (0..n).collect();
        let transitive_commuting = self.tc_holds_on(&all);
        // (d) no strict chain 1 < C_G(A) < C_G(B) < G; A, B range over
        // subgroups generated by at most two elements
        let mut centralizers: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..n {
            centralizers.insert(self.centralizer(a).elements().to_vec());
            for b in a..n {
                centralizers.insert(self.centralizer_of_set(&[a, b]).elements().to_vec());
            }
        }
        let mut centralizer_chain = true;
        'd: for ca in &centralizers {
            if ca.len() <= 1 || ca.len() == n {
                continue;
            }
            for cb in &centralizers {
                if cb.len() == n || cb == ca {
                    continue;
                }
                if ca.iter().all(|x| cb.binary_search(x).is_ok()) {
                    centralizer_chain = false;
                    break 'd;
                }
            }
        }
        Ok(TcEquivalences {
            abelian_centralizers,
            equal_centralizers,
            transitive_commuting,
            centralizer_chain,
        })
    }

    /// Same as condition (d) but quantified over every subgroup; only
    /// sensible for small orders.
    pub fn centralizer_chain_full(&self) -> bool {
        let n = self.order;
        let mut centralizers: BTreeSet<Vec<usize>> = BTreeSet::new();
        for sub in self.all_subgroups() {
            centralizers.insert(self.centralizer_of_set(sub.elements()).elements().to_vec());
        }
        for ca in &centralizers {
            if ca.len() <= 1 || ca.len() == n {
                continue;
            }
            for cb in &centralizers {
                if cb.len() == n || cb == ca {
                    continue;
                }
                if ca.iter().all(|x| cb.binary_search(x).is_ok()) {
                    return false;
                }
            }
        }
        true
    }

    // ---- commuting tuples ------------------------------------------------

    /// Number of pairwise-commuting k-tuples, i.e. |Hom(Z^k, G)|, by
    /// recursion over centralizers.
    pub fn commuting_tuple_count(&self, k: usize) -> u128 {
        assert!(k >= 1);
        if k == 1 {
            return self.order as u128;
        }
        (0..self.order)
            .map(|g| {
                let cent = self.centralizer(g);
                self.subgroup_as_group(&cent).commuting_tuple_count(k - 1)
            })
            .sum()
    }

    /// Brute-force enumeration of commuting k-tuples; the independent
    /// route for the count.
    pub fn commuting_tuple_count_enumerated(&self, k: usize) -> u128 {
        assert!(k >= 1);
        let mut tuple = Vec::with_capacity(k);
        self.count_tuples(k, &mut tuple)
    }

    fn count_tuples(&self, k: usize, tuple: &mut Vec<usize>) -> u128 {
        if tuple.len() == k {
            return 1;
        }
        let mut total = 0;
        for g in 0..self.order {
            if tuple.iter().all(|&t| self.commutes(t, g)) {
                tuple.push(g);
                total += self.count_tuples(k, tuple);
                tuple.pop();
            }
        }
        total
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start + 1 {
            continue;
        }
        out.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x] - 1;
            if x == start {
                break;
            }
            out.push(' ');
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Sorted element-index set, validated to be closed under the group
/// operations on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Wraps a sorted element list after re-checking the subgroup axioms.
    pub fn checked(g: &FiniteGroup, mut elements: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        assert!(
            elements.binary_search(&0).is_ok(),
            "subgroup must contain the identity"
        );
        for &a in &elements {
            assert!(
                elements.binary_search(&g.inv(a)).is_ok(),
                "subgroup not closed under inverse"
            );
            for &b in &elements {
                assert!(
                    elements.binary_search(&g.mul(a, b)).is_ok(),
                    "subgroup not closed under multiplication"
                );
            }
        }
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.commutes(a, b)))
    }

    pub fn intersection(&self, other: &Subgroup) -> Vec<usize> {
        self.elements
            .iter()
            .copied()
            .filter(|e| other.contains(*e))
            .collect()
    }

    pub fn names<'a>(&self, g: &'a FiniteGroup) -> Vec<&'a str> {
        self.elements.iter().map(|&e| g.name(e)).collect()
    }
}

/// Strictly descending chain Γ¹ ⊳ Γ² ⊳ … down to the stable term;
/// stabilization is witnessed during construction by one extra step.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    pub stages: Vec<Subgroup>,
}

impl CentralSeries {
    /// Γˡ, with a flag set when l is past stabilization and the stable
    /// term is returned in its place.
    pub fn gamma(&self, l: usize) -> (&Subgroup, bool) {
        assert!(l >= 1);
        if l <= self.stages.len() {
            (&self.stages[l - 1], false)
        } else {
            (self.stages.last().unwrap(), true)
        }
    }

    pub fn stable_term(&self) -> &Subgroup {
        self.stages.last().unwrap()
    }

    pub fn stage_orders(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.order()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcClass {
    Class(usize),
    Unbounded,
}

impl fmt::Display for TcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TcClass::Class(k) => write!(f, "{k}"),
            TcClass::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// The four transitive-commutation conditions, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TcEquivalences {
    pub abelian_centralizers: bool,
    pub equal_centralizers: bool,
    pub transitive_commuting: bool,
    pub centralizer_chain: bool,
}

impl TcEquivalences {
    pub fn all_agree(&self) -> bool {
        let v = self.abelian_centralizers;
        self.equal_centralizers == v
            && self.transitive_commuting == v
            && self.centralizer_chain == v
    }

    pub fn value(&self) -> bool {
        self.abelian_centralizers
    }
}

/// Distinct l-stage centralizers of the nonidentity elements of Γˡ(G);
/// used by the pairwise trivial-or-coincide law and the non-extension
/// certificate search.
pub fn l_stage_centralizer_family(g: &FiniteGroup, l: usize) -> Vec<(usize, Subgroup)> {
    let series = g.descending_central_series();
    let (gamma, _) = series.gamma(l);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for &x in gamma.elements() {
        if x == 0 {
            continue;
        }
        let (c, _) = g.l_stage_centralizer(x, l);
        if seen.insert(c.elements().to_vec()) {
            out.push((x, c));
        }
    }
    out
}
