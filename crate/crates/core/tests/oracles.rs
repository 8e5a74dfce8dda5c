use std::collections::BTreeSet;

use gramcode_core::codes::{aecc_membership, grc_by_intersection, AeccSpec, Source};
use gramcode_core::euler::{euler_decode, euler_decode_in, is_closed_word};
use gramcode_core::gram::{enumerate_profile_classes, profile, GramSet, ProfileVector};
use gramcode_core::graph::DeBruijnGraph;
use gramcode_core::lattice::{
    build_system, count_points, fit_quasipolynomial, for_each_point, polytope_vertices, reciprocity_check, Strictness,
    Variant,
};
use gramcode_core::Limits;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn weight_constrained_sets_are_eulerian() {
    let limits = Limits::default();
    for q in 2..=4 {
        for ell in 2..=5 {
            for qstar in 1..q {
                for w1 in 1..=ell {
                    for w2 in w1 + 1..=ell {
                        let set = GramSet::weight_constrained(q, ell, qstar, w1, w2).unwrap();
                        let g = DeBruijnGraph::build(&set);
                        assert!(g.is_eulerian(), "S({q},{ell};{qstar},[{w1},{w2}])");
                    }
                }
            }
        }
    }
    for (q, ell) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let g = DeBruijnGraph::build(&GramSet::full(q, ell).unwrap());
        let cycle = g.find_hamiltonian_cycle(&limits).unwrap().expect("hamiltonian");
        assert_eq!(cycle.len(), g.node_count());
        assert_eq!(cycle.nodes.iter().collect::<BTreeSet<_>>().len(), g.node_count());
    }
}

fn reachability(g: &DeBruijnGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
    }
    for a in g.arcs() {
        r[a.source][a.target] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

#[test]
fn scc_partition_matches_transitive_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (q, ell) in [(2, 4), (3, 3), (2, 5)] {
        let full = GramSet::full(q, ell).unwrap();
        for _ in 0..60 {
            let density = rng.gen_range(0.2..0.9);
            let keep: Vec<usize> = (0..full.len()).filter(|_| rng.gen_bool(density)).collect();
            if keep.is_empty() {
                continue;
            }
            let set = full.subset(keep).unwrap();
            let g = DeBruijnGraph::build(&set);
            let r = reachability(&g);
            let expected: BTreeSet<BTreeSet<usize>> = (0..g.node_count())
                .map(|v| (0..g.node_count()).filter(|&w| r[v][w] && r[w][v]).collect())
                .collect();
            let got: BTreeSet<BTreeSet<usize>> =
                g.scc_partition().into_iter().map(|c| c.into_iter().collect()).collect();
            assert_eq!(got, expected);
            let all = expected.len() == 1;
            assert_eq!(g.is_strongly_connected(), all || strongly_connected_ignoring_isolated(&g, &r));
        }
    }
}

fn strongly_connected_ignoring_isolated(g: &DeBruijnGraph, r: &[Vec<bool>]) -> bool {
    let active: Vec<usize> = (0..g.node_count())
        .filter(|&v| !g.out_arcs(v).is_empty() || !g.in_arcs(v).is_empty())
        .collect();
    active.iter().all(|&v| active.iter().all(|&w| r[v][w]))
}

#[test]
fn closed_profiles_are_sandwiched() {
    let limits = Limits::default();
    for ell in [2usize, 3] {
        let set = GramSet::full(2, ell).unwrap();
        let graph = DeBruijnGraph::build(&set);
        for n in ell..=14 {
            let t = (n - ell + 1) as u64;
            let closed = enumerate_profile_classes(n, &set, true, &limits).unwrap();
            let interior = build_system(&set, &Variant::Plain, t, Strictness::Interior).unwrap();
            let boundary = build_system(&set, &Variant::Plain, t, Strictness::Boundary).unwrap();
            let e = count_points(&interior, &limits).unwrap();
            let f = count_points(&boundary, &limits).unwrap();
            assert!(e <= closed.len() as u128 && closed.len() as u128 <= f, "ℓ={ell} n={n}");
            let mut seen = 0u128;
            for_each_point(&interior, &limits, &mut |x| {
                let u: Vec<u64> = x.iter().map(|&v| v as u64).collect();
                assert!(closed.contains(&u));
                let w = euler_decode_in(&graph, &u).unwrap();
                assert_eq!(w.len(), n);
                assert!(is_closed_word(&w, ell).unwrap());
                assert_eq!(profile(&w, &set).unwrap().counts(), &u[..]);
                seen += 1;
            })
            .unwrap();
            assert_eq!(seen, e);
        }
    }
}

fn solve(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = rows[0].len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = BigRational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=n {
                    let v = &m[row][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) || pivots.len() < n {
        return None;
    }
    Some(m[..n].iter().map(|r| r[n].clone()).collect())
}

fn basic_feasible_vertices(set: &GramSet) -> BTreeSet<Vec<BigRational>> {
    let system = build_system(set, &Variant::Plain, 1, Strictness::Boundary).unwrap();
    let cols = set.len();
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    let a: Vec<Vec<BigRational>> = system.a.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    let b: Vec<BigRational> = system.rhs.iter().map(|&v| rat(v)).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << cols) {
        let support: Vec<usize> = (0..cols).filter(|&c| mask >> c & 1 == 1).collect();
        let sub: Vec<Vec<BigRational>> = a.iter().map(|r| support.iter().map(|&c| r[c].clone()).collect()).collect();
        if support.is_empty() {
            continue;
        }
        if let Some(x) = solve(&sub, &b) {
            if x.iter().all(|v| *v >= BigRational::zero()) {
                let mut full = vec![BigRational::zero(); cols];
                for (&c, v) in support.iter().zip(x) {
                    full[c] = v;
                }
                out.insert(full);
            }
        }
    }
    out
}

#[test]
fn cycle_vertices_match_basic_solutions() {
    let limits = Limits::default();
    for (q, ell) in [(2, 2), (2, 3), (3, 2)] {
        let set = GramSet::full(q, ell).unwrap();
        let from_cycles: BTreeSet<Vec<BigRational>> = polytope_vertices(&set, &Variant::Plain, &limits)
            .unwrap()
            .into_iter()
            .map(|v| v.coordinates)
            .collect();
        assert_eq!(from_cycles, basic_feasible_vertices(&set), "[{q}]^{ell}");
    }
}

#[test]
fn reciprocity_on_fitted_instances() {
    let limits = Limits::default();
    let cases = [
        (GramSet::full(2, 2).unwrap(), 2u64, 2usize),
        (GramSet::full(2, 3).unwrap(), 12, 4),
        (GramSet::full(3, 2).unwrap(), 6, 6),
    ];
    for (set, lambda, degree) in cases {
        let count = |strictness| {
            let set = set.clone();
            move |t| count_points(&build_system(&set, &Variant::Plain, t, strictness)?, &limits)
        };
        let samples = degree + 2;
        let f = fit_quasipolynomial(degree, lambda, samples, count(Strictness::Boundary)).unwrap();
        let e = fit_quasipolynomial(degree, lambda, samples, count(Strictness::Interior)).unwrap();
        assert!(reciprocity_check(&f, &e, 8).is_empty());
        assert_eq!(f.leading(), e.leading());
    }
}

#[test]
fn intersection_codewords_are_members_and_decode() {
    let limits = Limits::default();
    let set = GramSet::full(2, 3).unwrap();
    let graph = DeBruijnGraph::build(&set);
    for beta in 0..11 {
        let spec = AeccSpec::varshamov((1..=8).collect(), 1, 11, vec![beta]).unwrap();
        for source in [Source::Exhaustive, Source::Interior] {
            let book = grc_by_intersection(&spec, 16, &set, source, &limits).unwrap();
            for u in &book.codewords {
                assert!(aecc_membership(u, &spec).unwrap());
                let w = euler_decode_in(&graph, u).unwrap();
                assert_eq!(w.len(), 16);
                assert_eq!(profile(&w, &set).unwrap().counts(), &u[..]);
            }
        }
    }
    let u = ProfileVector::new(set.clone(), vec![1, 1, 0, 1, 1, 0, 1, 0]).unwrap();
    assert_eq!(euler_decode(&u).unwrap().len(), 7);
}
