//! Congruences against a partition-enumeration oracle.

use tensym::congruence::{congruences_bruteforce_with, lattice_congruences_bruteforce, Mode};
use tensym::duality::DualSpace;
use tensym::{
    build_corpus, complex_algebra, congruence_lattice, congruences_bruteforce, samples,
    tms_subsets, verify_theorem_t2, Congruence, Error, Guards, Lattice, TmsAlgebra,
};

/// Every set partition of `0..n` as a label vector.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(labels.clone());
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            go(i + 1, n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn compatible_with_lattice(l: &Lattice, labels: &[usize]) -> bool {
    let n = labels.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            labels[a] != labels[b]
                || (0..n).all(|c| {
                    labels[l.meet(a, c)] == labels[l.meet(b, c)]
                        && labels[l.join(a, c)] == labels[l.join(b, c)]
                })
        })
    })
}

fn oracle(a: &TmsAlgebra, lattice_only: bool) -> Vec<Vec<usize>> {
    let n = a.len();
    let ops = [a.negation_table(), a.future_table(), a.past_table()];
    let mut out: Vec<Vec<usize>> = partitions(n)
        .into_iter()
        .filter(|labels| {
            compatible_with_lattice(a.lattice(), labels)
                && (lattice_only
                    || (0..n).all(|x| {
                        (0..n).all(|y| {
                            labels[x] != labels[y]
                                || ops.iter().all(|op| labels[op[x]] == labels[op[y]])
                        })
                    }))
        })
        .collect();
    out.sort();
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn canonical(parent: &mut [usize]) -> Vec<usize> {
    let n = parent.len();
    let roots: Vec<usize> = (0..n).map(|x| find(parent, x)).collect();
    let mut seen: Vec<usize> = Vec::new();
    roots
        .iter()
        .map(|r| match seen.iter().position(|s| s == r) {
            Some(i) => i,
            None => {
                seen.push(*r);
                seen.len() - 1
            }
        })
        .collect()
}

/// The smallest congruence containing `seed` and the pairs of `base`, by
/// closing under translations `x ↦ x∧c`, `x ↦ x∨c` and the unary operations.
fn generated(a: &TmsAlgebra, base: &[usize], seed: (usize, usize)) -> Vec<usize> {
    let n = a.len();
    let l = a.lattice();
    let ops = [a.negation_table(), a.future_table(), a.past_table()];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut work = vec![seed];
    for x in 0..n {
        for y in x + 1..n {
            if base[x] == base[y] {
                work.push((x, y));
            }
        }
    }
    while let Some((x, y)) = work.pop() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[rx] = ry;
        for op in &ops {
            work.push((op[x], op[y]));
        }
        for c in 0..n {
            work.push((l.meet(x, c), l.meet(y, c)));
            work.push((l.join(x, c), l.join(y, c)));
        }
    }
    canonical(&mut parent)
}

/// All congruences as joins of principal ones.
fn principal_oracle(a: &TmsAlgebra) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut found: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut i = 0;
    while i < found.len() {
        let base = found[i].clone();
        for x in 0..n {
            for y in x + 1..n {
                if base[x] != base[y] {
                    let next = generated(a, &base, (x, y));
                    if !found.contains(&next) {
                        found.push(next);
                    }
                }
            }
        }
        i += 1;
    }
    found.sort();
    found
}

fn sorted_labels(cs: &[Congruence]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = cs.iter().map(|c| c.labels().to_vec()).collect();
    out.sort();
    out
}

fn test_algebras() -> Vec<TmsAlgebra> {
    let corpus = build_corpus(3, &[1, 2]).unwrap();
    let mut out: Vec<TmsAlgebra> = corpus.entries.into_iter().map(|e| e.algebra).collect();
    out.extend([samples::b2(), samples::k3(), samples::dm4(), samples::b4()]);
    out.retain(|a| a.len() <= 8);
    out
}

#[test]
fn partition_counts_are_bell_numbers() {
    let bell: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
    assert_eq!(bell, vec![1, 2, 5, 15, 52, 203]);
}

#[test]
fn brute_force_matches_partition_oracle() {
    for a in test_algebras() {
        let ours = congruences_bruteforce(&a, &Guards::default()).unwrap();
        assert_eq!(sorted_labels(&ours.congruences), oracle(&a, false));
        assert_eq!(principal_oracle(&a), oracle(&a, false));
        let lat = lattice_congruences_bruteforce(a.lattice(), &Guards::default()).unwrap();
        assert_eq!(sorted_labels(&lat), oracle(&a, true));
    }
}

#[test]
fn parallel_mode_gives_the_same_ordered_list() {
    for a in test_algebras() {
        let seq = congruences_bruteforce_with(&a, &Guards::default(), Mode::Sequential).unwrap();
        let par = congruences_bruteforce_with(&a, &Guards::default(), Mode::Parallel).unwrap();
        assert_eq!(seq.congruences, par.congruences);
    }
}

#[test]
fn congruence_lattice_operations() {
    for a in test_algebras() {
        let lat = congruences_bruteforce(&a, &Guards::default()).unwrap();
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                let (ci, cj) = (&lat.congruences[i], &lat.congruences[j]);
                assert_eq!(lat.leq(i, j), ci.refines(cj));
                let m = &lat.congruences[lat.meet(i, j)];
                assert!(m.refines(ci) && m.refines(cj));
                let k = &lat.congruences[lat.join(i, j)];
                assert!(ci.refines(k) && cj.refines(k));
            }
        }
        assert!(lat.position(&Congruence::identity(a.len())).is_some());
        assert!(lat.position(&Congruence::total(a.len())).is_some());
    }
}

#[test]
fn pinned_counts() {
    let g = Guards::default();
    assert_eq!(congruences_bruteforce(&samples::b2(), &g).unwrap().len(), 2);
    assert_eq!(congruences_bruteforce(&samples::k3(), &g).unwrap().len(), 2);
    // the two product collapses of 2² put an atom with 0, and N sends that
    // pair to the atom and 1, which lie in different blocks
    assert_eq!(
        congruences_bruteforce(&samples::dm4(), &g).unwrap().len(),
        2
    );
    assert_eq!(
        lattice_congruences_bruteforce(samples::dm4().lattice(), &g)
            .unwrap()
            .len(),
        4
    );
}

#[test]
fn sixteen_element_instance_needs_a_raised_guard() {
    let a = complex_algebra(&samples::four_cycle_space()).unwrap();
    assert_eq!(a.len(), 16);
    assert!(matches!(
        congruences_bruteforce(&a, &Guards::default()),
        Err(Error::SizeGuard { .. })
    ));
    let raised = Guards {
        algebra: 16,
        space: 6,
    };
    assert_eq!(principal_oracle(&a).len(), 2);
    let direct = congruences_bruteforce(&a, &raised).unwrap();
    assert_eq!(sorted_labels(&direct.congruences), principal_oracle(&a));
    let dual = DualSpace::of(&a).unwrap();
    assert_eq!(tms_subsets(&dual.space, &raised).unwrap().len(), 2);
    assert!(verify_theorem_t2(&a, &raised).unwrap().passed());
}

#[test]
fn lattice_rejects_missing_or_non_closed_families() {
    let a = samples::dm4();
    assert!(congruence_lattice(&a, vec![Congruence::identity(4)]).is_err());
    let all = congruences_bruteforce(&a, &Guards::default())
        .unwrap()
        .congruences;
    assert!(congruence_lattice(&a, all).is_ok());
}
