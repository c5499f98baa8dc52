use dynmatch_core::assignment::initial_potential;
use dynmatch_core::fair::{envy_cycle_assignment, is_efx, welfare, AdditiveValuations, Bundle, Valuations};
use dynmatch_core::oracle::{brute_min_perfect_matching, find_negative_cycle};
use dynmatch_core::*;

fn fix_a() -> (BipartiteGraph, EdgeWeights<i64>) {
    let g = BipartiteGraph::new(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
    let w = EdgeWeights::new(&g, vec![1, 4, 2, 1]).unwrap();
    (g, w)
}

#[test]
fn fix_a_solve_update_and_stream() {
    let (g, w) = fix_a();
    assert_eq!(initial_potential(&g, &w).unwrap().as_slice(), &[0, 0, 1, 1]);
    let sol = hungarian(&g, &w).unwrap();
    assert_eq!(matching_weight(&w, &sol.matching).unwrap(), 2);
    assert!(verify_optimal(&g, &w, &sol.matching, &sol.potential).unwrap().is_valid());

    let event = UpdateEvent::new(Vertex::Left(0), vec![(0, 10), (1, 1)]);
    let out = primal_dual_update(&g, &w, &sol.matching, &sol.potential, &event).unwrap();
    assert_eq!(matching_weight(&out.weights, &out.matching).unwrap(), 3);
    assert_eq!(brute_min_perfect_matching(&g, &out.weights).unwrap().unwrap().0, 3);

    let stream = process_event_stream(g.clone(), w.clone(), &[event]).unwrap();
    let initial = matching_weight(&w, &sol.matching).unwrap();
    let mut all = vec![initial];
    all.extend(stream.weights);
    assert_eq!(all, vec![2, 3]);
}

#[test]
fn fix_a_suboptimal_matching_has_negative_cycle() {
    let (g, w) = fix_a();
    let worse = Matching::from_edges(&g, [1, 2]).unwrap();
    let view = AuxiliaryView::new(&g, &w, &worse);
    let cycle = find_negative_cycle(&view).unwrap().expect("weight-6 matching is not optimal");
    assert_eq!(cycle.len(), 4);
    let total: i64 = cycle.iter().map(|a| a.weight).sum();
    assert_eq!(total, -4);
    for p in [vec![0, 0, 0, 0], vec![0, 0, 1, 1], vec![5, -3, 2, 7]] {
        assert!(!verify_optimal(&g, &w, &worse, &Potential::from_vec(p)).unwrap().is_valid());
    }
}

#[test]
fn fix_b_assignment_procedure() {
    let v = AdditiveValuations::new(vec![vec![3, 2, 1], vec![3, 2, 1]]).unwrap();
    let out = envy_cycle_assignment(&v, &[0, 1, 2]).unwrap();
    let a = &out.allocation;
    let mut values: Vec<u64> = (0..2).map(|i| v.value(i, a.bundle_of(i))).collect();
    values.sort();
    assert_eq!(values, vec![3, 3]);
    let mut bundles = a.bundles().to_vec();
    bundles.sort();
    assert_eq!(bundles, vec![Bundle::from_items([0]), Bundle::from_items([1, 2])]);
    assert!(is_efx(a, &v).is_accept());
    assert_eq!(welfare(a, &v), 6);
}

#[test]
fn infeasible_instances_are_reported() {
    let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 0)]).unwrap();
    let w = EdgeWeights::new(&g, vec![1i64, 2]).unwrap();
    assert!(matches!(hungarian(&g, &w), Err(Error::Infeasible(_))));
    assert!(matches!(solve_by_updates(&g, &w), Err(Error::Infeasible(_))));
    assert!(brute_min_perfect_matching(&g, &w).unwrap().is_none());
}

#[test]
fn overflowing_weights_are_rejected() {
    let g = BipartiteGraph::complete(2, 2);
    let w = EdgeWeights::new(&g, vec![i64::MAX, i64::MAX, i64::MAX, i64::MAX]).unwrap();
    let sol = hungarian(&g, &w).unwrap();
    assert!(matches!(matching_weight(&w, &sol.matching), Err(Error::Overflow)));
    let mixed = EdgeWeights::new(&g, vec![i64::MAX, -i64::MAX, -i64::MAX, 0]).unwrap();
    assert!(matches!(hungarian(&g, &mixed), Err(Error::Overflow)));
    assert!(EdgeWeights::new(&g, vec![i64::MIN, 0, 0, 0]).is_err());
}
