//! Property tests: invariants checked against brute-force oracles on
//! randomized inputs.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lcfm::{
    bottleneck_path_value, build_grid, compute_lcfm, decide_connected, decide_standard,
    dedup_same_boundary, discrete_frechet, discrete_lcfm_path, enumerate_events,
    enumerate_monotone_paths, frechet_distance, free_interval, matching_max_distance,
    min_connecting_value, Curve2d, FaceSide, GridNode, Interval, MatchGrid, MatchGrid2d,
    MatchTree, NodeStatus, ParamMatching2d, ParentPreference, PathMax, Point2, Point2d,
    Segment2d,
};

fn curve(pts: &[(f64, f64)]) -> Curve2d {
    Curve2d::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
}

/// Random curve with `edges` edges and integer coordinates, consecutive
/// vertices distinct.
fn random_int_curve(rng: &mut StdRng, edges: usize, span: i32) -> Curve2d {
    let mut pts: Vec<Point2d> = Vec::with_capacity(edges + 1);
    while pts.len() < edges + 1 {
        let p = Point2::new(
            rng.random_range(0..=span) as f64,
            rng.random_range(0..=span) as f64,
        );
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    Curve2d::new(pts).unwrap()
}

/// Random curve with continuous coordinates.
fn random_curve(rng: &mut StdRng, edges: usize, span: f64) -> Curve2d {
    let mut pts: Vec<Point2d> = Vec::with_capacity(edges + 1);
    while pts.len() < edges + 1 {
        let p = Point2::new(rng.random_range(0.0..span), rng.random_range(0.0..span));
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    Curve2d::new(pts).unwrap()
}

fn random_grid(rng: &mut StdRng, cols: usize, rows: usize, max: f64) -> MatchGrid2d {
    let values = (0..cols * rows)
        .map(|_| rng.random_range(0.0..max))
        .collect();
    MatchGrid::from_values(cols, rows, values).unwrap()
}

// ---------------------------------------------------------------------------
// Brute-force tree helpers.

fn root_path(tree: &MatchTree<f64>, node: GridNode) -> Vec<GridNode> {
    let mut path = vec![node];
    let mut cur = node;
    while let Some(p) = tree.parent(cur) {
        path.push(p);
        cur = p;
    }
    path
}

/// Nearest common ancestor by marking one root path and walking the other.
fn brute_nca(tree: &MatchTree<f64>, a: GridNode, b: GridNode) -> GridNode {
    let a_anc: Vec<GridNode> = root_path(tree, a);
    let mut cur = b;
    loop {
        if a_anc.contains(&cur) {
            return cur;
        }
        cur = tree.parent(cur).expect("paths share the root");
    }
}

/// Maximum on the tree path from `node` (inclusive) to `ancestor`
/// (exclusive), as the sentinel-aware type.
fn brute_path_max(
    tree: &MatchTree<f64>,
    grid: &MatchGrid2d,
    node: GridNode,
    ancestor: GridNode,
) -> PathMax<f64> {
    let mut max = PathMax::Empty;
    let mut cur = node;
    while cur != ancestor {
        max = max.with(grid.value(cur));
        cur = tree.parent(cur).expect("ancestor must be on the path");
    }
    max
}

fn inserted_nodes(tree: &MatchTree<f64>, grid: &MatchGrid2d) -> Vec<GridNode> {
    let mut out = Vec::new();
    for j in 0..grid.rows() {
        for i in 0..grid.cols() {
            let node = (i, j);
            if tree.is_inserted(node) && tree.status(node) != NodeStatus::Removed {
                out.push(node);
            }
        }
    }
    out
}

/// Every stored shortcut must point at an ancestor and carry the true path
/// maximum.
fn check_shortcuts(tree: &MatchTree<f64>, grid: &MatchGrid2d) {
    for &node in &inserted_nodes(tree, grid) {
        for side in [FaceSide::Left, FaceSide::Right] {
            if let Some(sc) = tree.shortcut(node, side) {
                let anc = root_path(tree, node);
                assert!(
                    anc.contains(&sc.sink),
                    "shortcut sink {:?} of {:?} is not an ancestor",
                    sc.sink,
                    node
                );
                let walked = brute_path_max(tree, grid, node, sc.sink);
                assert_eq!(
                    walked, sc.max,
                    "shortcut max of {node:?} ({side:?}) does not match a tree walk"
                );
            }
        }
    }
}

/// Strong local correctness: for every node and every proper ancestor, the
/// tree path maximum excluding the ancestor equals the bottleneck optimum
/// excluding the first node.
fn check_strongly_locally_correct(tree: &MatchTree<f64>, grid: &MatchGrid2d) {
    for &node in &inserted_nodes(tree, grid) {
        let path = root_path(tree, node);
        for anc in path.iter().skip(1) {
            let observed = brute_path_max(tree, grid, node, *anc);
            let expected = bottleneck_path_value(grid, *anc, node, false).unwrap();
            assert_eq!(
                observed.cmp_max(expected),
                std::cmp::Ordering::Equal,
                "path {anc:?} → {node:?} is not strongly locally correct"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Dense-sampling Fréchet oracle, independent of the decision machinery.

fn resample(c: &Curve2d, per_edge: usize) -> Vec<Point2d> {
    let mut out = Vec::new();
    for e in 0..c.edge_count() {
        let seg = c.edge(e);
        for k in 0..per_edge {
            let t = k as f64 / per_edge as f64;
            out.push(seg.point_at(t));
        }
    }
    out.push(*c.vertices().last().unwrap());
    out
}

fn sampled_frechet(p: &Curve2d, q: &Curve2d, per_edge: usize) -> f64 {
    let a = resample(p, per_edge);
    let b = resample(q, per_edge);
    let (n, m) = (a.len(), b.len());
    let mut dp = vec![0.0f64; n * m];
    for i in 0..n {
        for j in 0..m {
            let d = a[i].distance(b[j]);
            let prev = match (i, j) {
                (0, 0) => None,
                (_, 0) => Some(dp[(i - 1) * m]),
                (0, _) => Some(dp[j - 1]),
                _ => Some(
                    dp[(i - 1) * m + j]
                        .min(dp[(i - 1) * m + j - 1])
                        .min(dp[i * m + j - 1]),
                ),
            };
            dp[i * m + j] = match prev {
                Some(x) => x.max(d),
                None => d,
            };
        }
    }
    dp[n * m - 1]
}

// ---------------------------------------------------------------------------
// Curve model.

proptest! {
    #[test]
    fn point_at_integer_parameters_are_vertices(
        raw in prop::collection::vec((-50i32..50, -50i32..50), 1..8)
    ) {
        let pts: Vec<Point2d> = raw.iter().map(|&(x, y)| Point2::new(x as f64, y as f64)).collect();
        let c = Curve2d::new(pts).unwrap();
        for i in 0..=c.edge_count() {
            prop_assert_eq!(c.point_at(i as f64).unwrap(), c.vertex(i));
        }
    }

    #[test]
    fn point_at_is_lipschitz(
        raw in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..7),
        s in 0.0f64..1.0

    ) {
        let pts: Vec<Point2d> = raw.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        let c = match Curve2d::new(pts) {
            Ok(c) if c.edge_count() >= 1 => c,
            _ => return Ok(()),
        };
        let lip = c.max_edge_length();
        let h = 1e-6;
        let s = s * (c.param_end() - h);
        let a = c.point_at(s).unwrap();
        let b = c.point_at(s + h).unwrap();
        prop_assert!(a.distance(b) <= lip * h + 1e-12);
    }

    #[test]
    fn subcurve_roundtrips_endpoints(
        raw in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 3..7),
        cut_a in 0.0f64..1.0,
        cut_b in 0.0f64..1.0,
    ) {
        let pts: Vec<Point2d> = raw.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        let c = match Curve2d::new(pts) {
            Ok(c) if c.edge_count() >= 1 => c,
            _ => return Ok(()),
        };
        let m = c.param_end();
        let (a, b) = ((cut_a * m).min(cut_b * m), (cut_a * m).max(cut_b * m));
        let s = c.subcurve(a, b).unwrap();
        let again = s.subcurve(0.0, s.param_end()).unwrap();
        prop_assert!(again.vertex(0).distance(c.point_at(a).unwrap()) <= 1e-12);
        let last = again.vertex(again.vertices().len() - 1);
        prop_assert!(last.distance(c.point_at(b).unwrap()) <= 1e-12);
    }

    #[test]
    fn free_interval_nested_in_eps(
        px in -4.0f64..4.0, py in -4.0f64..4.0,
        ax in -4.0f64..4.0, ay in -4.0f64..4.0,
        bx in -4.0f64..4.0, by in -4.0f64..4.0,
        e1 in 0.0f64..6.0, e2 in 0.0f64..6.0,
    ) {
        let seg = Segment2d::new(Point2::new(ax, ay), Point2::new(bx, by));
        if seg.is_degenerate() {
            return Ok(());
        }
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        let small = free_interval(Point2::new(px, py), seg, lo).unwrap();
        let big = free_interval(Point2::new(px, py), seg, hi).unwrap();
        prop_assert!(small.subset_of(&big), "{small:?} ⊄ {big:?}");
    }
}

// ---------------------------------------------------------------------------
// Decision procedures.

#[test]
fn decisions_are_monotone_in_eps() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..30 {
        let (pe, qe) = (rng.random_range(1..4), rng.random_range(1..4));
        let p = random_curve(&mut rng, pe, 4.0);
        let q = random_curve(&mut rng, qe, 4.0);
        let mut ladder: Vec<f64> = (0..25).map(|_| rng.random_range(0.0..8.0)).collect();
        ladder.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut seen_true = false;
        for &eps in &ladder {
            let d = decide_standard(&p, &q, eps);
            assert!(!(seen_true && !d), "decide_standard not monotone");
            seen_true = seen_true || d;
        }
        if p.edge_count() + q.edge_count() > 2 {
            let mut seen_true = false;
            for &eps in &ladder {
                let d = decide_connected(&p, &q, eps, &[]);
                assert!(!(seen_true && !d), "decide_connected not monotone");
                seen_true = seen_true || d;
            }
        }
    }
}

#[test]
fn standard_implies_connected_and_blocking_is_antimonotone() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..40 {
        let (pe, qe) = (rng.random_range(1..4), rng.random_range(2..4));
        let p = random_int_curve(&mut rng, pe, 6);
        let q = random_int_curve(&mut rng, qe, 6);
        if p.edge_count() + q.edge_count() <= 2 {
            continue;
        }
        for _ in 0..6 {
            let eps = rng.random_range(0.0..9.0);
            if decide_standard(&p, &q, eps) {
                assert!(decide_connected(&p, &q, eps, &[]));
            }
        }
        // Blocking anti-monotone on the realizing group.
        let (eps, group) = min_connecting_value(&p, &q);
        if group.len() < 2 {
            continue;
        }
        for _ in 0..8 {
            let mut big: Vec<_> = group
                .iter()
                .copied()
                .filter(|_| rng.random_bool(0.5))
                .collect();
            if decide_connected(&p, &q, eps, &big) && !big.is_empty() {
                let drop = rng.random_range(0..big.len());
                big.remove(drop);
                assert!(
                    decide_connected(&p, &q, eps, &big),
                    "shrinking the blocked set flipped the decision to false"
                );
            }
        }
    }
}

#[test]
fn connecting_value_is_a_sharp_threshold() {
    let mut rng = StdRng::seed_from_u64(37);
    for _ in 0..40 {
        let (pe, qe) = (rng.random_range(1..4), rng.random_range(2..5));
        let p = random_curve(&mut rng, pe, 5.0);
        let q = random_curve(&mut rng, qe, 5.0);
        let (eps, group) = min_connecting_value(&p, &q);
        assert!(decide_connected(&p, &q, eps, &[]));
        assert!(!group.is_empty());
        // Largest enumerated value strictly below the connecting one.
        let events = enumerate_events(&p, &q);
        let below = events
            .iter()
            .map(|e| e.value)
            .filter(|&v| v < eps - 1e-9 * eps.max(1.0))
            .fold(f64::NEG_INFINITY, f64::max);
        if below.is_finite() {
            assert!(
                !decide_connected(&p, &q, below, &[]),
                "decision already true one event below the reported threshold"
            );
        }
    }
}

#[test]
fn event_values_recompute_and_dedup_is_stable() {
    let mut rng = StdRng::seed_from_u64(41);
    for _ in 0..30 {
        let (pe, qe) = (rng.random_range(1..5), rng.random_range(1..5));
        let p = random_int_curve(&mut rng, pe, 8);
        let q = random_int_curve(&mut rng, qe, 8);
        if p.edge_count() + q.edge_count() <= 2 {
            continue;
        }
        let events = enumerate_events(&p, &q);
        for e in &events {
            let r = e.recompute_value(&p, &q);
            assert!(
                (r - e.value).abs() <= 1e-12 * e.value.max(1.0),
                "stored event value drifts from its geometry"
            );
        }
        for w in events.windows(2) {
            assert!(w[0].cmp_order(&w[1]) != std::cmp::Ordering::Greater);
        }
        let deduped = dedup_same_boundary(&events[0..events.len().min(6)]);
        assert!(deduped.len() <= events.len().min(6));
    }
}

// ---------------------------------------------------------------------------
// Continuous matchings.

#[test]
fn frechet_distance_agrees_with_dense_sampling() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..12 {
        let (pe, qe) = (rng.random_range(1..4), rng.random_range(1..4));
        let p = random_curve(&mut rng, pe, 4.0);
        let q = random_curve(&mut rng, qe, 4.0);
        let d = frechet_distance(&p, &q);
        let sampled = sampled_frechet(&p, &q, 200);
        let spacing = (p.max_edge_length() + q.max_edge_length()) / 200.0;
        assert!(
            d <= sampled + 1e-9,
            "distance {d} exceeds the sampled relaxation {sampled}"
        );
        assert!(
            sampled <= d + spacing,
            "sampled value {sampled} did not converge to {d}"
        );
    }
}

#[test]
fn lcfm_is_optimal_and_locally_correct_on_small_inputs() {
    let mut rng = StdRng::seed_from_u64(99);
    for round in 0..25 {
        let (pe, qe) = (rng.random_range(1..5), rng.random_range(1..5));
        let p = random_int_curve(&mut rng, pe, 8);
        let q = random_int_curve(&mut rng, qe, 8);
        let matching = compute_lcfm(&p, &q);
        let d = frechet_distance(&p, &q);
        let observed =
            matching_max_distance(&p, &q, &matching, 0, matching.len() - 1).unwrap();
        assert!(
            (observed - d).abs() <= 1e-9,
            "round {round}: matching max {observed} vs distance {d}"
        );
        let report = lcfm::verify_lc_continuous(&p, &q, &matching).unwrap();
        assert!(
            report.passed(),
            "round {round}: local-correctness failures {:?}",
            report.failures
        );
    }
}

#[test]
fn lcfm_interior_bound_by_connecting_value() {
    let mut rng = StdRng::seed_from_u64(55);
    for _ in 0..25 {
        let (pe, qe) = (rng.random_range(1..5), rng.random_range(1..5));
        let p = random_int_curve(&mut rng, pe, 8);
        let q = random_int_curve(&mut rng, qe, 8);
        let (m, n) = (p.param_end(), q.param_end());
        if p.edge_count() + q.edge_count() <= 2 {
            continue;
        }
        let (eps, _) = min_connecting_value(&p, &q);
        let matching = compute_lcfm(&p, &q);
        for pt in matching.path() {
            let interior_start = pt.x >= 1.0 || pt.y >= 1.0;
            let interior_end = pt.x <= m - 1.0 || pt.y <= n - 1.0;
            if interior_start && interior_end {
                let d = p
                    .point_at(pt.x)
                    .unwrap()
                    .distance(q.point_at(pt.y).unwrap());
                assert!(
                    d <= eps + 1e-9,
                    "interior matched distance {d} above the split value {eps}"
                );
            }
        }
    }
}

#[test]
fn lcfm_is_deterministic_and_translation_stable() {
    let mut rng = StdRng::seed_from_u64(77);
    for _ in 0..10 {
        let (pe, qe) = (rng.random_range(2..5), rng.random_range(1..5));
        let p = random_int_curve(&mut rng, pe, 8);
        let q = random_int_curve(&mut rng, qe, 8);
        let a = compute_lcfm(&p, &q);
        let b = compute_lcfm(&p, &q);
        assert_eq!(a, b, "identical inputs must give bit-identical matchings");

        if p.edge_count() + q.edge_count() > 2 {
            let (eps, _) = min_connecting_value(&p, &q);
            let delta = Point2::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3));
            let shifted =
                Curve2d::new(p.vertices().iter().map(|&v| v + delta).collect()).unwrap();
            let (eps2, _) = min_connecting_value(&shifted, &q);
            let shift = (delta.x * delta.x + delta.y * delta.y).sqrt();
            assert!(
                (eps - eps2).abs() <= shift + 1e-9,
                "connecting value moved {} under a {} translation",
                (eps - eps2).abs(),
                shift
            );
        }
    }
}

#[test]
fn matching_endpoints_always_bound_the_max() {
    let p = curve(&[(0.0, 0.0), (3.0, 1.0), (5.0, 0.0)]);
    let q = curve(&[(0.0, 2.0), (4.0, 3.0), (5.0, 2.0)]);
    let matching = compute_lcfm(&p, &q);
    let full = matching_max_distance(&p, &q, &matching, 0, matching.len() - 1).unwrap();
    let ends = p.vertex(0).distance(q.vertex(0)).max(
        p.vertices().last().unwrap().distance(*q.vertices().last().unwrap()),
    );
    assert!(full >= ends - 1e-12);
}

// ---------------------------------------------------------------------------
// Discrete tree.

#[test]
fn tree_shortcuts_and_nca_agree_with_walks() {
    let mut rng = StdRng::seed_from_u64(3);
    for round in 0..40 {
        let cols = rng.random_range(2..6);
        let rows = rng.random_range(2..6);
        let grid = if round % 3 == 0 {
            // Small integer values force plenty of ties.
            let values = (0..cols * rows)
                .map(|_| rng.random_range(0..3) as f64)
                .collect();
            MatchGrid::from_values(cols, rows, values).unwrap()
        } else {
            random_grid(&mut rng, cols, rows, 5.0)
        };
        let mut tree = MatchTree::new(&grid, ParentPreference::default());
        for j in 1..rows {
            for i in 1..cols {
                // Compare the constant-time queries against brute walks
                // for all three candidate pairs before the insertion uses
                // them.
                let pairs = [
                    ((i - 1, j), (i - 1, j - 1)),
                    ((i - 1, j - 1), (i, j - 1)),
                    ((i - 1, j), (i, j - 1)),
                ];
                for (a, b) in pairs {
                    let (ma, mb) = tree.nca_max(&grid, a, b);
                    let nca = brute_nca(&tree, a, b);
                    let wa = brute_path_max(&tree, &grid, a, nca);
                    let wb = brute_path_max(&tree, &grid, b, nca);
                    assert_eq!(ma, wa, "round {round}: pair {a:?},{b:?} first max");
                    assert_eq!(mb, wb, "round {round}: pair {a:?},{b:?} second max");
                }
                tree.insert(&grid, i, j);
                check_shortcuts(&tree, &grid);
            }
        }
    }
}

#[test]
fn tree_paths_are_strongly_locally_correct_after_every_insertion() {
    let mut rng = StdRng::seed_from_u64(5);
    for round in 0..30 {
        let cols = rng.random_range(2..6);
        let rows = rng.random_range(2..6);
        let grid = if round % 2 == 0 {
            let values = (0..cols * rows)
                .map(|_| rng.random_range(0..3) as f64)
                .collect();
            MatchGrid::from_values(cols, rows, values).unwrap()
        } else {
            random_grid(&mut rng, cols, rows, 4.0)
        };
        let mut tree = MatchTree::new(&grid, ParentPreference::default());
        for j in 1..rows {
            for i in 1..cols {
                tree.insert(&grid, i, j);
                check_strongly_locally_correct(&tree, &grid);
            }
        }
    }
}

#[test]
fn final_discrete_path_is_locally_correct_and_optimal() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..150 {
        let cols = rng.random_range(2..6);
        let rows = rng.random_range(2..6);
        let grid = random_grid(&mut rng, cols, rows, 5.0);
        let path = discrete_lcfm_path(&grid);
        let max = path
            .iter()
            .map(|&nd| grid.value(nd))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(max, discrete_frechet(&grid));
        let report = lcfm::verify_lc_discrete(&grid, &path).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
    }
}

#[test]
fn extension_counter_stays_within_budget() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..10 {
        let cols = rng.random_range(4..12);
        let rows = rng.random_range(4..12);
        let grid = random_grid(&mut rng, cols, rows, 3.0);
        let tree = MatchTree::build(&grid, ParentPreference::default());
        assert!(
            tree.extension_count() <= 3 * (cols as u64) * (rows as u64),
            "{} extensions on a {cols}×{rows} grid",
            tree.extension_count()
        );
    }
}

#[test]
fn bottleneck_oracle_matches_enumeration_on_random_grids() {
    let mut rng = StdRng::seed_from_u64(29);
    for _ in 0..60 {
        let cols = rng.random_range(1..5);
        let rows = rng.random_range(1..5);
        let grid = random_grid(&mut rng, cols, rows, 4.0);
        let t = (cols - 1, rows - 1);
        let paths = enumerate_monotone_paths(&grid, (0, 0), t).unwrap();
        let brute = paths
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&nd| grid.value(nd))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        let dp = bottleneck_path_value(&grid, (0, 0), t, true)
            .unwrap()
            .value()
            .unwrap();
        assert_eq!(dp, brute);
        assert_eq!(dp, discrete_frechet(&grid));
    }
}

#[test]
fn discrete_matching_of_curves_matches_grid_pipeline() {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..20 {
        let (pe, qe) = (rng.random_range(1..6), rng.random_range(1..6));
        let p = random_int_curve(&mut rng, pe, 8);
        let q = random_int_curve(&mut rng, qe, 8);
        let path = lcfm::compute_discrete_lcfm(&p, &q);
        let grid = build_grid(&p, &q);
        assert_eq!(path, discrete_lcfm_path(&grid));
        assert_eq!(path[0], (0, 0));
        assert_eq!(*path.last().unwrap(), grid.top_right());
    }
}

// ---------------------------------------------------------------------------
// Matching-type invariants under proptest.

proptest! {
    #[test]
    fn interval_clip_preserves_subset(
        lo in 0.0f64..1.0, width in 0.0f64..1.0, min in 0.0f64..1.5
    ) {
        let hi = (lo + width).min(1.0);
        let iv = Interval::new(lo, hi);
        let clipped = iv.clip_lo(min);
        prop_assert!(clipped.subset_of(&iv));
    }
}

#[test]
fn lcfm_survives_degenerate_coordinate_grids() {
    // Tiny integer spans maximize coincident critical values (repeated
    // vertices, equal distances, clamped feet), which is where event
    // selection has to work hardest.
    let mut rng = StdRng::seed_from_u64(4242);
    for round in 0..400 {
        let span = 2 + round % 2;
        let (pe, qe) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let p = random_int_curve(&mut rng, pe, span);
        let q = random_int_curve(&mut rng, qe, span);
        let matching = compute_lcfm(&p, &q);
        let d = frechet_distance(&p, &q);
        let max = matching_max_distance(&p, &q, &matching, 0, matching.len() - 1).unwrap();
        assert!(
            (max - d).abs() <= 1e-9,
            "round {round}: max {max} vs distance {d}\nP {:?}\nQ {:?}",
            p.vertices(),
            q.vertices()
        );
        let report = lcfm::verify_lc_continuous(&p, &q, &matching).unwrap();
        assert!(
            report.passed(),
            "round {round}: {:?}\nP {:?}\nQ {:?}",
            report.failures,
            p.vertices(),
            q.vertices()
        );
    }
}

#[test]
fn split_edge_counts_are_conserved() {
    let mut rng = StdRng::seed_from_u64(83);
    for _ in 0..30 {
        let (pe, qe) = (rng.random_range(1..5), rng.random_range(1..5));
        let p = random_int_curve(&mut rng, pe, 8);
        let q = random_int_curve(&mut rng, qe, 8);
        if p.edge_count() + q.edge_count() <= 2 {
            continue;
        }
        let (m, n) = (p.edge_count(), q.edge_count());
        let e = lcfm::find_realizing_event(&p, &q);
        let parts = lcfm::split_at_event(&p, &q, &e);
        let (m1, m2) = (parts.p1.edge_count(), parts.p2.edge_count());
        let (n1, n2) = (parts.q1.edge_count(), parts.q2.edge_count());
        // A single cut inserts at most one vertex; a passage piece consumes
        // the span between its start and end boundary on its own axis.
        match (e.kind, e.end.side) {
            (lcfm::EventKind::A, _) => {
                // Corner cuts land exactly on vertices.
                assert_eq!(m1 + m2, m);
                assert_eq!(n1 + n2, n);
            }
            (lcfm::EventKind::B, _) => {
                assert!(m1 + m2 == m || m1 + m2 == m + 1, "{m1}+{m2} vs {m}");
                assert!(n1 + n2 == n || n1 + n2 == n + 1, "{n1}+{n2} vs {n}");
            }
            (lcfm::EventKind::C, lcfm::Side::Left) => {
                assert_eq!(m1 + m2, m - (e.end.col - e.start.col));
                assert!(n1 + n2 == n || n1 + n2 == n + 1);
            }
            (lcfm::EventKind::C, lcfm::Side::Bottom) => {
                assert!(m1 + m2 == m || m1 + m2 == m + 1);
                assert_eq!(n1 + n2, n - (e.end.row - e.start.row));
            }
        }
    }
}

#[test]
fn event_order_is_total() {
    let mut rng = StdRng::seed_from_u64(71);
    let p = random_int_curve(&mut rng, 4, 8);
    let q = random_int_curve(&mut rng, 4, 8);
    let events = enumerate_events(&p, &q);
    for a in events.iter().step_by(3) {
        assert_eq!(a.cmp_order(a), std::cmp::Ordering::Equal);
        for b in events.iter().step_by(5) {
            assert_eq!(a.cmp_order(b), b.cmp_order(a).reverse());
            for c in events.iter().step_by(7) {
                if a.cmp_order(b).is_le() && b.cmp_order(c).is_le() {
                    assert!(a.cmp_order(c).is_le());
                }
            }
        }
    }
}

#[test]
fn single_precision_instantiation_works() {
    let p = lcfm::Curve::<f32>::new(vec![
        Point2::new(0.0f32, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(4.0, 0.0),
    ])
    .unwrap();
    let q = lcfm::Curve::<f32>::new(vec![Point2::new(0.0f32, 1.0), Point2::new(4.0, 1.0)])
        .unwrap();
    let d = frechet_distance(&p, &q);
    assert!((d - 1.0).abs() < 1e-6);
    let matching = compute_lcfm(&p, &q);
    assert_eq!(matching.path().len(), 3);
    let grid = build_grid(&p, &q);
    let path = discrete_lcfm_path(&grid);
    assert_eq!(path.first(), Some(&(0, 0)));
    assert_eq!(path.last(), Some(&(2, 1)));
    let dd = discrete_frechet(&grid);
    assert!(dd >= d - 1e-6);
}

#[test]
fn computed_matchings_validate_as_param_matchings() {
    let mut rng = StdRng::seed_from_u64(61);
    for _ in 0..20 {
        let (pe, qe) = (rng.random_range(1..5), rng.random_range(1..5));
        let p = random_int_curve(&mut rng, pe, 8);
        let q = random_int_curve(&mut rng, qe, 8);
        let matching = compute_lcfm(&p, &q);
        // Re-validating through the public constructor must succeed.
        let again = ParamMatching2d::new(&p, &q, matching.path().to_vec()).unwrap();
        assert_eq!(again, matching);
    }
}
