//! Constructions for the bundled test corpus: every group of order at
//! most 16 plus a few classics above that. Each construction runs through
//! full Cayley-table validation.

use std::fmt::Debug;

use crate::groups::FiniteGroup;

fn group_from_elements<T, F, N>(mut elements: Vec<T>, identity: T, op: F, name: N) -> FiniteGroup
where
    T: Clone + Ord + Debug,
    F: Fn(&T, &T) -> T,
    N: Fn(&T) -> String,
{
    elements.sort();
    elements.dedup();
    let pos = elements
        .iter()
        .position(|e| *e == identity)
        .expect("identity not among elements");
    elements.remove(pos);
    elements.insert(0, identity);
    let index = |t: &T| elements.iter().position(|e| e == t).expect("not closed");
    let n = elements.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = index(&op(&elements[i], &elements[j]));
        }
    }
    let mut g = FiniteGroup::from_cayley(table).expect("construction is a group");
    g.set_names(elements.iter().map(&name).collect());
    g
}

fn close_under<T, F>(generators: Vec<T>, identity: T, op: &F) -> Vec<T>
where
    T: Clone + Ord,
    F: Fn(&T, &T) -> T,
{
    let mut elements = std::collections::BTreeSet::new();
    elements.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for g in &generators {
            let y = op(g, &x);
            if elements.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    elements.into_iter().collect()
}

/// Z/n.
pub fn cyclic(n: usize) -> FiniteGroup {
    group_from_elements(
        (0..n).collect(),
        0usize,
        |a, b| (a + b) % n,
        |a| {
            if *a == 0 {
                "e".into()
            } else {
                format!("t^{a}")
            }
        },
    )
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let elements: Vec<(usize, usize)> = (0..a.order())
        .flat_map(|x| (0..b.order()).map(move |y| (x, y)))
        .collect();
    group_from_elements(
        elements,
        (0, 0),
        |p, q| (a.mul(p.0, q.0), b.mul(p.1, q.1)),
        |p| format!("({},{})", a.name(p.0), b.name(p.1)),
    )
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(orders: &[usize]) -> FiniteGroup {
    orders.iter().skip(1).fold(cyclic(orders[0]), |acc, &m| {
        direct_product(&acc, &cyclic(m))
    })
}

/// Symmetries of the regular n-gon, order 2n, as permutations.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let rotation: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    let reflection: Vec<usize> = (1..=n).rev().collect();
    FiniteGroup::from_permutations(n, &[rotation, reflection]).expect("dihedral generators")
}

/// Dicyclic group of order 4n on pairs (i, j) with i mod 2n: the n = 2
/// case is the quaternion group, n = 4 the generalized quaternion of
/// order 16.
pub fn dicyclic(n: usize) -> FiniteGroup {
    assert!(n >= 2);
    let m = 2 * n;
    let elements: Vec<(usize, usize)> = (0..m).flat_map(|i| [(i, 0), (i, 1)]).collect();
    group_from_elements(
        elements,
        (0, 0),
        move |p, q| match (p, q) {
            ((i, 0), (k, j)) => ((i + k) % m, *j),
            ((i, 1), (k, 0)) => ((i + m - k % m) % m, 1),
            ((i, 1), (k, 1)) => ((i + m - k % m + n) % m, 0),
            _ => unreachable!(),
        },
        |p| format!("a^{}b^{}", p.0, p.1),
    )
}

pub fn quaternion8() -> FiniteGroup {
    let mut q = dicyclic(2);
    // elements sorted as (i, j): 1, j, i, k, -1, -j, -i, -k
    q.set_names(
        ["1", "j", "i", "k", "-1", "-j", "-i", "-k"]
            .into_iter()
            .map(String::from)
            .collect(),
    );
    q
}

/// Full symmetric group on n letters; meant for tiny n.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((2..=5).contains(&n));
    let transposition: Vec<usize> = std::iter::once(2)
        .chain(std::iter::once(1))
        .chain(3..=n)
        .collect();
    let cycle: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    FiniteGroup::from_permutations(n, &[transposition, cycle]).expect("symmetric generators")
}

pub fn alternating4() -> FiniteGroup {
    FiniteGroup::from_permutations(4, &[vec![2, 3, 1, 4], vec![2, 1, 4, 3]])
        .expect("alternating generators")
}

/// Z/m ⋊ Z/k where the k-cycle generator acts by x -> a·x mod m;
/// requires a^k = 1 mod m.
pub fn semidirect_cyclic(m: usize, k: usize, a: usize) -> FiniteGroup {
    let mut power = 1usize;
    for _ in 0..k {
        power = power * a % m;
    }
    assert_eq!(power % m, 1 % m, "action must have order dividing k");
    let act = move |j: usize, x: usize| {
        let mut y = x;
        for _ in 0..j {
            y = y * a % m;
        }
        y
    };
    let elements: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    group_from_elements(
        elements,
        (0, 0),
        move |p, q| ((p.0 + act(p.1, q.0)) % m, (p.1 + q.1) % k),
        |p| format!("a^{}b^{}", p.0, p.1),
    )
}

/// (Z/2 x Z/2) ⋊ Z/4 with the 4-cycle swapping the two coordinates.
pub fn klein_semidirect_c4() -> FiniteGroup {
    let elements: Vec<((u8, u8), usize)> = (0..2u8)
        .flat_map(|x| (0..2u8).flat_map(move |y| (0..4usize).map(move |j| ((x, y), j))))
        .collect();
    let act = |j: usize, v: (u8, u8)| if j % 2 == 1 { (v.1, v.0) } else { v };
    group_from_elements(
        elements,
        ((0, 0), 0),
        move |p, q| {
            let w = act(p.1, q.0);
            (((p.0 .0 + w.0) % 2, (p.0 .1 + w.1) % 2), (p.1 + q.1) % 4)
        },
        |p| format!("v{}{}b^{}", p.0 .0, p.0 .1, p.1),
    )
}

/// The order-16 group of signed Pauli words: phases i^s against I, X, Y, Z.
pub fn pauli16() -> FiniteGroup {
    // letter product table and the phase (power of i) it produces
    const PROD: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    const PHASE: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 0, 1, 3], [0, 3, 0, 1], [0, 1, 3, 0]];
    const NAMES: [&str; 4] = ["I", "X", "Y", "Z"];
    let elements: Vec<(usize, usize)> = (0..4).flat_map(|s| (0..4).map(move |p| (s, p))).collect();
    group_from_elements(
        elements,
        (0, 0),
        |a, b| ((a.0 + b.0 + PHASE[a.1][b.1]) % 4, PROD[a.1][b.1]),
        |e| {
            let prefix = ["", "i", "-", "-i"][e.0];
            format!("{}{}", prefix, NAMES[e.1])
        },
    )
}

/// 2x2 matrices of determinant 1 over Z/3, order 24. Its descending
/// central series stabilizes at a nonabelian stage, so it is not k-TC for
/// any k.
pub fn special_linear_2_3() -> FiniteGroup {
    type M = [u8; 4];
    let mul = |a: &M, b: &M| -> M {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    let identity: M = [1, 0, 0, 1];
    let gens: Vec<M> = vec![[1, 1, 0, 1], [0, 2, 1, 0]];
    let elements = close_under(gens, identity, &mul);
    assert_eq!(elements.len(), 24);
    group_from_elements(elements, identity, mul, |m| {
        format!("[{} {}; {} {}]", m[0], m[1], m[2], m[3])
    })
}

/// Every group of order <= 16 (42 of them), keyed by a short file-safe
/// name, orders ascending.
pub fn all_groups_up_to_16() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("c1", cyclic(1)),
        ("c2", cyclic(2)),
        ("c3", cyclic(3)),
        ("c4", cyclic(4)),
        ("c2xc2", abelian(&[2, 2])),
        ("c5", cyclic(5)),
        ("c6", cyclic(6)),
        ("s3", symmetric(3)),
        ("c7", cyclic(7)),
        ("c8", cyclic(8)),
        ("c4xc2", abelian(&[4, 2])),
        ("c2xc2xc2", abelian(&[2, 2, 2])),
        ("d4", dihedral(4)),
        ("q8", quaternion8()),
        ("c9", cyclic(9)),
        ("c3xc3", abelian(&[3, 3])),
        ("c10", cyclic(10)),
        ("d5", dihedral(5)),
        ("c11", cyclic(11)),
        ("c12", cyclic(12)),
        ("c6xc2", abelian(&[6, 2])),
        ("d6", dihedral(6)),
        ("a4", alternating4()),
        ("dic3", dicyclic(3)),
        ("c13", cyclic(13)),
        ("c14", cyclic(14)),
        ("d7", dihedral(7)),
        ("c15", cyclic(15)),
        ("c16", cyclic(16)),
        ("c8xc2", abelian(&[8, 2])),
        ("c4xc4", abelian(&[4, 4])),
        ("c4xc2xc2", abelian(&[4, 2, 2])),
        ("c2xc2xc2xc2", abelian(&[2, 2, 2, 2])),
        ("d8", dihedral(8)),
        ("q16", dicyclic(4)),
        ("sd16", semidirect_cyclic(8, 2, 3)),
        ("m4_2", semidirect_cyclic(8, 2, 5)),
        ("d4xc2", direct_product(&dihedral(4), &cyclic(2))),
        ("q8xc2", direct_product(&quaternion8(), &cyclic(2))),
        ("c4sc4", semidirect_cyclic(4, 4, 3)),
        ("c2c2sc4", klein_semidirect_c4()),
        ("pauli16", pauli16()),
    ]
}

/// The full corpus: everything of order <= 16 plus the named extras.
pub fn full_corpus() -> Vec<(&'static str, FiniteGroup)> {
    let mut all = all_groups_up_to_16();
    all.push(("s4", symmetric(4)));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn expected_counts_per_order() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for (_, g) in all_groups_up_to_16() {
            *counts.entry(g.order()).or_insert(0) += 1;
        }
        let expected: Vec<(usize, usize)> = vec![
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 2),
            (5, 1),
            (6, 2),
            (7, 1),
            (8, 5),
            (9, 2),
            (10, 2),
            (11, 1),
            (12, 5),
            (13, 1),
            (14, 2),
            (15, 1),
            (16, 14),
        ];
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), expected);
    }

    /// Invariant fingerprint that separates non-isomorphic groups at this
    /// scale: element orders, center element orders, central series stage
    /// orders, and (order, abelian) over every subgroup.
    fn fingerprint(g: &FiniteGroup) -> String {
        let mut element_orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
        element_orders.sort_unstable();
        let center = g.center();
        let mut center_orders: Vec<usize> = center
            .elements()
            .iter()
            .map(|&z| g.element_order(z))
            .collect();
        center_orders.sort_unstable();
        let series = g.descending_central_series().stage_orders();
        let mut subgroup_types: Vec<(usize, bool)> = g
            .all_subgroups()
            .iter()
            .map(|s| (s.order(), s.is_abelian(g)))
            .collect();
        subgroup_types.sort_unstable();
        format!("{element_orders:?}|{center_orders:?}|{series:?}|{subgroup_types:?}")
    }

    #[test]
    fn corpus_groups_pairwise_distinct() {
        let groups = all_groups_up_to_16();
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let (na, a) = &groups[i];
                let (nb, b) = &groups[j];
                if a.order() != b.order() {
                    continue;
                }
                assert_ne!(
                    fingerprint(a),
                    fingerprint(b),
                    "{na} and {nb} look isomorphic"
                );
            }
        }
    }

    #[test]
    fn two_groups_are_nilpotent() {
        for (name, g) in all_groups_up_to_16() {
            if g.order().is_power_of_two() && g.order() > 1 {
                assert!(g.nilpotency_class().is_some(), "{name} should be nilpotent");
            }
        }
    }

    #[test]
    fn known_centers() {
        assert_eq!(dihedral(8).center().order(), 2);
        assert_eq!(dicyclic(4).center().order(), 2);
        assert_eq!(semidirect_cyclic(8, 2, 3).center().order(), 2);
        assert_eq!(semidirect_cyclic(8, 2, 5).center().order(), 4);
        assert_eq!(pauli16().center().order(), 4);
        assert_eq!(klein_semidirect_c4().center().order(), 4);
        assert_eq!(symmetric(4).center().order(), 1);
        assert_eq!(alternating4().center().order(), 1);
    }

    #[test]
    fn known_orders() {
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(dihedral(7).order(), 14);
        assert_eq!(dicyclic(3).order(), 12);
        assert_eq!(pauli16().order(), 16);
        assert_eq!(special_linear_2_3().order(), 24);
    }

    #[test]
    fn pauli_relations() {
        let p = pauli16();
        // X, Y, Z all square to the identity; iI generates the center
        let x = (0..16).find(|&e| p.name(e) == "X").unwrap();
        let y = (0..16).find(|&e| p.name(e) == "Y").unwrap();
        assert_eq!(p.mul(x, x), 0);
        let xy = p.mul(x, y);
        assert_eq!(p.name(xy), "iZ");
    }
}
