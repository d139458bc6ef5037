//! Acceptance suite. One test per criterion; each prints a PASS line with
//! the scale it covered. Everything is exact integer equality.

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use polyprod::corpus;
use polyprod::graphprod::{
    commutation_graph, evaluate_in_group, extension_exists, non_extension_certificate,
    CommutationGraph, GraphProduct, Syllable, Word,
};
use polyprod::groups::{l_stage_centralizer_family, FiniteGroup, TcClass};
use polyprod::homology::{groups_equal, HomologyGroup};
use polyprod::io::parse_group;
use polyprod::polyproduct::{
    classify_em, polyproduct_homology, rank_closed_form, rank_oracle, rank_recurrence, Marks,
};
use polyprod::simplicial::{Face, SimplicialComplex};

fn corpus_groups_from_files() -> Vec<(String, FiniteGroup)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/groups");
    let mut out = Vec::new();
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .expect("bundled corpus directory")
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    for path in paths {
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&path).unwrap();
        out.push((name, parse_group(&text, 0).unwrap()));
    }
    out
}

/// Every simplicial complex on exactly n labeled vertices (all singletons
/// present), enumerated as downward-closed systems of faces of size >= 2,
/// one level at a time.
fn complexes_on(n: usize) -> Vec<SimplicialComplex> {
    fn masks_of_size(n: usize, k: usize) -> Vec<u32> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .collect()
    }
    fn sub_masks_one_smaller(mask: u32) -> Vec<u32> {
        (0..32)
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| mask & !(1 << b))
            .collect()
    }
    fn build(n: usize, chosen: &[u32]) -> SimplicialComplex {
        let facets = chosen
            .iter()
            .map(|&m| Face::new((0..n).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect()))
            .chain((1..=n).map(|v| Face::new(vec![v])))
            .collect();
        SimplicialComplex::from_facets(n, facets).unwrap()
    }
    fn recurse(
        n: usize,
        level: usize,
        prev: &HashSet<u32>,
        chosen: &mut Vec<u32>,
        out: &mut Vec<SimplicialComplex>,
    ) {
        if level > n {
            out.push(build(n, chosen));
            return;
        }
        let allowed: Vec<u32> = masks_of_size(n, level)
            .into_iter()
            .filter(|&m| level == 2 || sub_masks_one_smaller(m).iter().all(|s| prev.contains(s)))
            .collect();
        for pick in 0u32..1 << allowed.len() {
            let picked: HashSet<u32> = allowed
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            let before = chosen.len();
            chosen.extend(picked.iter().copied());
            recurse(n, level + 1, &picked, chosen, out);
            chosen.truncate(before);
        }
    }
    if n == 1 {
        return vec![SimplicialComplex::discrete(1)];
    }
    let mut out = Vec::new();
    recurse(n, 2, &HashSet::new(), &mut Vec::new(), &mut out);
    out
}

fn all_small_complexes() -> Vec<SimplicialComplex> {
    (1..=5).flat_map(complexes_on).collect()
}

#[test]
fn criterion_01_rank_formula_triple_agreement() {
    let mut cases = 0;
    for r in 1..=4usize {
        let mut stack = vec![Vec::new()];
        while let Some(m) = stack.pop() {
            if m.len() == r {
                let marks = Marks::new(m.clone());
                let closed = rank_closed_form(&marks);
                let rec = rank_recurrence(&marks);
                let oracle = rank_oracle(&marks);
                let k0 = SimplicialComplex::discrete(r);
                let homology = polyproduct_homology(&k0, &marks, true).unwrap();
                let betti1 = homology.get(1).map_or(0, |g| g.betti) as u64;
                assert_eq!(closed, rec, "closed vs recurrence at {m:?}");
                assert_eq!(rec, oracle, "recurrence vs oracle at {m:?}");
                assert_eq!(oracle, betti1, "oracle vs cubical rank at {m:?}");
                cases += 1;
                continue;
            }
            for v in 1..=4usize {
                let mut next = m.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    assert_eq!(cases, 4 + 16 + 64 + 256);
    println!("criterion 01 rank-formula triple agreement: PASS ({cases} mark vectors)");
}

#[test]
fn criterion_02_sphere_recovery() {
    // two isolated points: a single circle
    let h =
        polyproduct_homology(&SimplicialComplex::discrete(2), &Marks::uniform(2, 2), true).unwrap();
    assert!(groups_equal(
        &h,
        &[HomologyGroup::trivial(), HomologyGroup::free(1)]
    ));
    // boundaries of simplexes: spheres in rising dimension
    for k in 3..=5usize {
        let complex = SimplicialComplex::simplex_boundary(k);
        let h = polyproduct_homology(&complex, &Marks::uniform(k, 2), true).unwrap();
        for (degree, group) in h.iter().enumerate() {
            if degree == k - 1 {
                assert_eq!(*group, HomologyGroup::free(1), "k={k}");
            } else {
                assert!(group.is_trivial(), "k={k} degree={degree}: {group}");
            }
        }
        assert_eq!(h.len(), k);
    }
    println!("criterion 02 sphere recovery: PASS (circle plus spheres k=3,4,5)");
}

#[test]
fn criterion_03_splitting_equality_exhaustive() {
    let mut count = 0;
    for k in all_small_complexes() {
        let marks = Marks::uniform(k.vertex_count(), 2);
        let split = polyprod::polyproduct::splitting_homology(&k, &marks).unwrap();
        let cubical = polyproduct_homology(&k, &marks, true).unwrap();
        assert!(
            groups_equal(&split, &cubical),
            "splitting mismatch on {:?}\nsplit:   {split:?}\ncubical: {cubical:?}",
            k.facets()
        );
        count += 1;
    }
    println!("criterion 03 splitting equality: PASS ({count} complexes, <= 5 vertices)");
}

#[test]
fn criterion_04_flag_dichotomy_exhaustive() {
    let mut count = 0;
    let mut nonflag = 0;
    for k in all_small_complexes() {
        // classify_em internally verifies the witness sphere homology and
        // panics if the embedded-sphere check fails
        let report = classify_em(&k);
        assert_eq!(report.aspherical, k.is_flag(), "on {:?}", k.facets());
        assert_eq!(report.aspherical, k.minimal_nonfaces(3).is_empty());
        if !report.aspherical {
            let witness = report.witness.expect("non-flag complexes carry a witness");
            assert_eq!(report.verified_sphere_degree, Some(witness.len() - 1));
            nonflag += 1;
        }
        count += 1;
    }
    assert!(nonflag > 0);
    println!("criterion 04 flag dichotomy: PASS ({count} complexes, {nonflag} non-flag witnesses verified)");
}

// Not a numbered criterion: the Euler characteristic must equal the
// alternating sum of unreduced Betti numbers on every enumerated complex.
#[test]
fn euler_characteristic_matches_betti_over_corpus() {
    for k in all_small_complexes() {
        let groups = polyprod::homology::simplicial_homology(&k, false);
        let alternating: i64 = groups
            .iter()
            .enumerate()
            .map(|(d, g)| {
                let b = g.betti as i64;
                if d % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        assert_eq!(alternating, k.euler_characteristic(), "on {:?}", k.facets());
    }
}

#[test]
fn criterion_05_quaternion_golden_values() {
    let q8 = corpus::quaternion8();
    assert_eq!(q8.tc_class(), TcClass::Class(3));
    assert!(!q8.is_k_tc(2));
    assert!(q8.is_k_tc(3));
    let series = q8.descending_central_series();
    assert_eq!(series.stage_orders(), vec![8, 2, 1]);
    assert_eq!(q8.nilpotency_class(), Some(2));
    let derived = q8.commutator_subgroup(&q8.full_subgroup(), &q8.full_subgroup());
    assert_eq!(derived.order(), 2);
    assert_eq!(derived.elements(), q8.center().elements());
    println!("criterion 05 quaternion golden values: PASS (class 3, series 8|2|1)");
}

#[test]
fn criterion_06_tc_equivalence_agreement_and_monotonicity() {
    let groups = corpus_groups_from_files();
    assert_eq!(groups.len(), 43);
    let mut nonabelian = 0;
    for (name, g) in &groups {
        let series = g.descending_central_series();
        let ks: Vec<usize> = (2..=series.stages.len() + 1).collect();
        let flags: Vec<bool> = ks.iter().map(|&k| g.is_k_tc(k)).collect();
        for w in flags.windows(2) {
            assert!(!w[0] || w[1], "{name}: k-TC monotonicity broken: {flags:?}");
        }
        if !g.is_abelian() {
            let eq = g.tc_equivalences().unwrap();
            assert!(
                eq.all_agree(),
                "{name}: TC equivalence flags disagree: {eq:?}"
            );
            // the 2-generated chain condition must match full subgroup
            // enumeration at small orders
            if g.order() <= 16 {
                assert_eq!(
                    eq.centralizer_chain,
                    g.centralizer_chain_full(),
                    "{name}: 2-generated chain check diverges from full enumeration"
                );
            }
            nonabelian += 1;
        }
    }
    println!(
        "criterion 06 TC equivalence agreement: PASS ({} groups, {nonabelian} nonabelian)",
        groups.len()
    );
}

#[test]
fn criterion_07_l_stage_centralizer_law() {
    let groups = corpus_groups_from_files();
    let mut checked = 0;
    for (name, g) in &groups {
        if g.center().order() != 1 || g.order() == 1 {
            continue;
        }
        let series = g.descending_central_series();
        for l in 1..=series.stages.len() {
            if !g.is_k_tc(l + 1) {
                continue;
            }
            let family = l_stage_centralizer_family(g, l);
            for (i, (_, a)) in family.iter().enumerate() {
                for (_, b) in &family[i + 1..] {
                    let meet = a.intersection(b);
                    assert!(
                        meet.len() <= 1 || a.elements() == b.elements(),
                        "{name} at stage {l}: centralizers {:?} and {:?} overlap in {:?}",
                        a.elements(),
                        b.elements(),
                        meet
                    );
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 0);
    println!("criterion 07 l-stage centralizer law: PASS ({checked} (group, stage) pairs)");
}

#[test]
fn criterion_08_extension_decisions() {
    let s3 = corpus::symmetric(3);
    let maxab = s3.maximal_abelian_subgroups();
    assert!(commutation_graph(&s3, &maxab).is_edgeless());
    let mut with_edges = 0;
    for k in complexes_on(4) {
        let report = extension_exists(&k, &s3, &maxab).unwrap();
        if k.edges().is_empty() {
            assert!(report.extends, "edgeless complex must extend");
        } else {
            assert!(!report.extends, "extension granted on {:?}", k.facets());
            let v = report.violation.unwrap();
            assert!(!s3.commutes(v.left, v.right));
            with_edges += 1;
        }
    }
    // the stage-1 certificate backs the blanket refusal
    let cert = non_extension_certificate(&s3, &maxab, 1).unwrap();
    assert!(cert.graph.is_edgeless());

    // sandwich complexes between a commutation graph and its flag
    // completion always extend, and every edge commutator evaluates to
    // the identity
    let ambient = corpus::abelian(&[2, 2, 2]);
    let family: Vec<_> = (0..3)
        .map(|i| ambient.generated_subgroup(&[1 << i]))
        .collect();
    let d4 = corpus::dihedral(4);
    let rotations = d4.generated_subgroup(&[(1..8).find(|&e| d4.element_order(e) == 4).unwrap()]);
    let center = d4.center();
    let reflection = {
        let r = (1..8)
            .find(|&e| d4.element_order(e) == 2 && !rotations.contains(e))
            .unwrap();
        d4.generated_subgroup(&[r])
    };
    let d4_family = vec![rotations, center, reflection];
    let mut sandwiches = 0;
    for (g, family) in [(&ambient, &family), (&d4, &d4_family)] {
        let graph = commutation_graph(g, family);
        let flag = graph.as_complex().flag_completion();
        for k in complexes_on(family.len()) {
            let same_edges = k.edges() == flag.skeleton(1).edges();
            let inside_flag = k.facets().iter().all(|f| flag.contains(f));
            if !(same_edges && inside_flag) {
                continue;
            }
            let report = extension_exists(&k, g, family).unwrap();
            assert!(report.extends, "sandwich complex refused: {:?}", k.facets());
            for (i, j) in k.edges() {
                for a in 1..family[i - 1].order() {
                    for b in 1..family[j - 1].order() {
                        let w = Word {
                            syllables: vec![
                                Syllable {
                                    vertex: i,
                                    element: a,
                                },
                                Syllable {
                                    vertex: j,
                                    element: b,
                                },
                                Syllable {
                                    vertex: i,
                                    element: a,
                                },
                                Syllable {
                                    vertex: j,
                                    element: b,
                                },
                            ],
                        };
                        // order-2 elements: aba⁻¹b⁻¹ = abab
                        if family[i - 1].elements().len() == 2
                            && family[j - 1].elements().len() == 2
                        {
                            assert_eq!(evaluate_in_group(g, family, &w), 0);
                        }
                    }
                }
                // general inverse form
                let subgroup_i = &family[i - 1];
                let subgroup_j = &family[j - 1];
                for &a in subgroup_i.elements() {
                    for &b in subgroup_j.elements() {
                        let c = g.mul(g.mul(g.mul(a, b), g.inv(a)), g.inv(b));
                        assert_eq!(c, 0, "edge ({i},{j}) commutator nontrivial");
                    }
                }
            }
            sandwiches += 1;
        }
    }
    assert!(sandwiches > 0);
    println!("criterion 08 extension decisions: PASS ({with_edges} refusals, {sandwiches} sandwich extensions)");
}

// ---- independent rewriting oracle for the word engine -----------------

fn rewrite_closure(p: &GraphProduct, w: &Word) -> HashSet<Word> {
    let mut seen = HashSet::new();
    seen.insert(w.clone());
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        let s = &cur.syllables;
        for i in 0..s.len() {
            if i + 1 < s.len() && s[i].vertex == s[i + 1].vertex {
                let g = &p.factors()[s[i].vertex - 1];
                let merged = g.mul(s[i].element, s[i + 1].element);
                let mut next = s.clone();
                next.remove(i + 1);
                if merged == 0 {
                    next.remove(i);
                } else {
                    next[i].element = merged;
                }
                let next = Word { syllables: next };
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            if i + 1 < s.len() && p.graph().adjacent(s[i].vertex, s[i + 1].vertex) {
                let mut next = s.clone();
                next.swap(i, i + 1);
                let next = Word { syllables: next };
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

fn oracle_canonical(p: &GraphProduct, w: &Word) -> Word {
    let closure = rewrite_closure(p, w);
    let min_len = closure.iter().map(Word::len).min().unwrap();
    closure
        .into_iter()
        .filter(|x| x.len() == min_len)
        .min()
        .unwrap()
}

fn words_up_to(alphabet: &[(usize, usize)], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for &s in alphabet {
                let mut w = prefix.clone();
                w.push(s);
                out.push(Word::from_pairs(&w));
                next.push(w);
            }
        }
        layer = next;
    }
    out
}

#[test]
fn criterion_09_word_engine() {
    // complete graphs: canonical-form count equals the product order
    let combos: Vec<Vec<usize>> = vec![
        vec![2, 3],
        vec![3, 3],
        vec![2, 2, 2],
        vec![4, 4, 2],
        vec![2, 2, 2, 2, 2, 2],
    ];
    for orders in combos {
        let product: usize = orders.iter().product();
        assert!(product <= 64);
        let factors: Vec<FiniteGroup> = orders.iter().map(|&m| corpus::cyclic(m)).collect();
        let p = GraphProduct::new(CommutationGraph::complete(orders.len()), factors).unwrap();
        let forms = p.enumerate_elements(product + 1).unwrap();
        assert_eq!(forms.len(), product, "complete graph over {orders:?}");
    }

    // the infinite dihedral group: nine words of length at most four
    let z2 = corpus::cyclic(2);
    let p = GraphProduct::new(CommutationGraph::discrete(2), vec![z2.clone(), z2.clone()]).unwrap();
    let forms: HashSet<Word> = words_up_to(&[(1, 1), (2, 1)], 4)
        .iter()
        .map(|w| p.normal_form(w).unwrap())
        .collect();
    assert_eq!(forms.len(), 9);

    // canonical equality matches the rewriting oracle on short words
    let z3 = corpus::cyclic(3);
    let cases: Vec<(CommutationGraph, Vec<FiniteGroup>)> = vec![
        (CommutationGraph::discrete(2), vec![z3.clone(), z3.clone()]),
        (CommutationGraph::discrete(2), vec![z2.clone(), z3.clone()]),
        (CommutationGraph::complete(2), vec![z2.clone(), z3.clone()]),
        (
            CommutationGraph::new(3, [(1, 2), (2, 3)]),
            vec![z2.clone(), z3.clone(), z2.clone()],
        ),
    ];
    let mut words_checked = 0;
    for (graph, factors) in cases {
        let alphabet: Vec<(usize, usize)> = (1..=factors.len())
            .flat_map(|v| (1..factors[v - 1].order()).map(move |e| (v, e)))
            .collect();
        let p = GraphProduct::new(graph, factors).unwrap();
        let mut nf_to_oracle: HashMap<Word, Word> = HashMap::new();
        let mut oracle_to_nf: HashMap<Word, Word> = HashMap::new();
        for w in words_up_to(&alphabet, 5) {
            let nf = p.normal_form(&w).unwrap();
            let oracle = oracle_canonical(&p, &w);
            let o = nf_to_oracle
                .entry(nf.clone())
                .or_insert_with(|| oracle.clone());
            assert_eq!(*o, oracle, "normal form conflates distinct elements");
            let n = oracle_to_nf.entry(oracle).or_insert_with(|| nf.clone());
            assert_eq!(*n, nf, "normal form splits one element in two");
            words_checked += 1;
        }
    }
    println!("criterion 09 word engine: PASS (complete-graph counts, 9 short dihedral words, {words_checked} oracle comparisons)");
}

#[test]
fn criterion_10_commuting_tuple_counts() {
    let s3 = corpus::symmetric(3);
    assert_eq!(s3.commuting_tuple_count(2), 18);
    assert_eq!(s3.commuting_tuple_count_enumerated(2), 18);
    let q8 = corpus::quaternion8();
    assert_eq!(q8.commuting_tuple_count(2), 40);
    assert_eq!(q8.commuting_tuple_count_enumerated(2), 40);
    println!("criterion 10 commuting tuples: PASS (18 pairs in S3, 40 pairs in Q8, both routes)");
}

#[test]
fn criterion_11_one_skeleton_dependence() {
    let z2 = corpus::cyclic(2);
    let s4 = corpus::symmetric(4);
    let transpositions: Vec<usize> = (1..s4.order())
        .filter(|&g| s4.element_order(g) == 2)
        .collect();
    let mut count = 0;
    for k in all_small_complexes() {
        let n = k.vertex_count();
        let skeleton = k.skeleton(1);
        let factors = vec![z2.clone(); n];
        let a = polyprod::graphprod::pi1_polyhedral_product(&k, factors.clone()).unwrap();
        let b = polyprod::graphprod::pi1_polyhedral_product(&skeleton, factors).unwrap();
        assert_eq!(
            a.graph(),
            b.graph(),
            "presentation differs on {:?}",
            k.facets()
        );

        let family: Vec<_> = (0..n)
            .map(|i| s4.generated_subgroup(&[transpositions[i % transpositions.len()]]))
            .collect();
        let ra = extension_exists(&k, &s4, &family).unwrap();
        let rb = extension_exists(&skeleton, &s4, &family).unwrap();
        assert_eq!(ra.extends, rb.extends, "on {:?}", k.facets());
        assert_eq!(ra.violation, rb.violation, "on {:?}", k.facets());

        // homology shadow: degree one of the cell model only sees edges
        if n <= 4 {
            let marks = Marks::uniform(n, 2);
            let full = polyproduct_homology(&k, &marks, true).unwrap();
            let skel = polyproduct_homology(&skeleton, &marks, true).unwrap();
            let trivial = HomologyGroup::trivial();
            assert_eq!(
                full.get(1).unwrap_or(&trivial),
                skel.get(1).unwrap_or(&trivial),
                "degree-1 drift on {:?}",
                k.facets()
            );
        }
        count += 1;
    }
    println!("criterion 11 one-skeleton dependence: PASS ({count} complexes)");
}
