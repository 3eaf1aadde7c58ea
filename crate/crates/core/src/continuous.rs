//! Continuous locally correct Fréchet matchings.
//!
//! [`compute_lcfm`] finds the minimal distance at which the free-space
//! diagram is connected between its first and last cells, locates one event
//! of a minimal realizing set by binary search over the concurrent events,
//! splits both curves there and recurses. Gluing the sub-matchings around
//! the event yields a matching that is optimal on every matched subcurve
//! pair, not just globally.

use crate::curve::{Curve, ParamPoint};
use crate::error::Error;
use crate::events::{
    candidate_events, dedup_same_boundary, enumerate_events, group_ranges, CriticalEvent,
    EventKind, Side,
};
use crate::freespace::{decide_connected, decide_standard};
use crate::Scalar;

/// Monotone polyline in parameter space from `(0, 0)` to `(m, n)`,
/// linear inside every cell: the executable form of a matching.
///
/// Cell-boundary crossings are explicit vertices, so per-piece maxima are
/// attained at stored vertices (the matched distance is convex along a
/// linear piece within one cell). When one curve is a single point the
/// diagram has no cells and the straight two-point path is allowed.
///
/// Values are immutable after construction and safe to share across
/// threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamMatching<T> {
    path: Vec<ParamPoint<T>>,
}

impl<T: Scalar> ParamMatching<T> {
    /// Validates a path as a matching of `p` and `q`.
    pub fn new(p: &Curve<T>, q: &Curve<T>, path: Vec<ParamPoint<T>>) -> Result<Self, Error> {
        let m = p.param_end();
        let n = q.param_end();
        if path.is_empty() {
            return Err(Error::domain("empty matching path"));
        }
        let first = path[0];
        let last = path[path.len() - 1];
        if first.x != T::zero() || first.y != T::zero() {
            return Err(Error::domain("matching must start at (0, 0)"));
        }
        if last.x != m || last.y != n {
            return Err(Error::domain(format!("matching must end at ({m}, {n})")));
        }
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b.x < a.x || b.y < a.y {
                return Err(Error::domain("matching path must be monotone"));
            }
        }
        for pt in &path {
            if pt.x < T::zero() || pt.x > m || pt.y < T::zero() || pt.y > n {
                return Err(Error::domain("matching path leaves the diagram"));
            }
        }
        // Cell linearity; void for a degenerate axis, which has no cells.
        if m > T::zero() && n > T::zero() {
            for w in path.windows(2) {
                let (a, b) = (w[0], w[1]);
                let col_span = b.x.max(a.x).ceil() - a.x.min(b.x).floor();
                let row_span = b.y.max(a.y).ceil() - a.y.min(b.y).floor();
                if col_span > T::one() || row_span > T::one() {
                    return Err(Error::domain(
                        "matching path segment spans more than one cell",
                    ));
                }
            }
        }
        Ok(ParamMatching { path })
    }

    pub fn path(&self) -> &[ParamPoint<T>] {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// Maximum matched distance over the path vertices `a..=b`.
///
/// Piece maxima are attained at vertices because the matching is linear in
/// every cell and the distance along a linear piece is convex.
pub fn matching_max_distance<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    matching: &ParamMatching<T>,
    a: usize,
    b: usize,
) -> Result<T, Error> {
    if a > b || b >= matching.path.len() {
        return Err(Error::domain(format!(
            "vertex range {a}..={b} out of bounds for path of length {}",
            matching.path.len()
        )));
    }
    let mut best = T::zero();
    for pt in &matching.path[a..=b] {
        let d = p
            .point_at(pt.x)
            .expect("matching coordinates in range")
            .distance(q.point_at(pt.y).expect("matching coordinates in range"));
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Sorted, exactly deduplicated critical-value ladder used by
/// [`frechet_distance`]: endpoint distances plus every enumerated event
/// value, with no corner-boundary exclusion.
pub fn frechet_candidate_values<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> Vec<T> {
    let mut vals: Vec<T> = candidate_events(p, q).iter().map(|e| e.value).collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.dedup();
    vals
}

/// Fréchet distance: the smallest critical value admitting a monotone
/// corner-to-corner path in free space.
pub fn frechet_distance<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> T {
    let m = p.edge_count();
    let n = q.edge_count();
    if m == 0 {
        // Distance from a point to a curve: maximal over the curve, which
        // is attained at a vertex.
        let p0 = p.vertex(0);
        return q
            .vertices()
            .iter()
            .map(|v| p0.distance(*v))
            .fold(T::zero(), T::max);
    }
    if n == 0 {
        let q0 = q.vertex(0);
        return p
            .vertices()
            .iter()
            .map(|v| q0.distance(*v))
            .fold(T::zero(), T::max);
    }
    let vals = frechet_candidate_values(p, q);
    let idx = vals.partition_point(|&v| !decide_standard(p, q, v));
    assert!(
        idx < vals.len(),
        "no candidate value admits a monotone path"
    );
    vals[idx]
}

/// Smallest enumerated critical value at which the free-space diagram is
/// connected between its first and last cells, together with the ordered,
/// same-boundary-deduplicated group of concurrent events at that value.
pub fn min_connecting_value<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
) -> (T, Vec<CriticalEvent<T>>) {
    let events = enumerate_events(p, q);
    let ranges = group_ranges(&events);
    assert!(!ranges.is_empty());
    // Group values increase, so connectivity is monotone over groups.
    let idx = ranges.partition_point(|&(s, _)| !decide_connected(p, q, events[s].value, &[]));
    assert!(
        idx < ranges.len(),
        "free space never connects at any enumerated value"
    );
    let (s, e) = ranges[idx];
    (events[s].value, dedup_same_boundary(&events[s..e]))
}

/// Whether one half of a split can carry a matching that stays within
/// `eps` on its interior: connectivity of its diagram at `eps`, with the
/// degenerate shapes reduced to their vertex conditions.
fn half_supports<T: Scalar>(p: &Curve<T>, q: &Curve<T>, eps: T) -> bool {
    let m = p.edge_count();
    let n = q.edge_count();
    let slack = eps + crate::events::value_group_tolerance(eps);
    if m == 0 && n == 0 {
        return true;
    }
    if m == 0 {
        // Straight matching against a point: interior vertices must be in
        // range (per-edge maxima sit at vertices).
        return (1..n).all(|j| p.vertex(0).distance(q.vertex(j)) <= slack);
    }
    if n == 0 {
        return (1..m).all(|i| q.vertex(0).distance(p.vertex(i)) <= slack);
    }
    if m == 1 && n == 1 {
        return true;
    }
    decide_connected(p, q, eps, &[])
}

/// The opening of an event as its two extremal diagram points (equal for
/// point openings).
fn opening_span<T: Scalar>(e: &CriticalEvent<T>) -> ((T, T), (T, T)) {
    match e.end.side {
        Side::Left => {
            let y = T::from(e.end.row).unwrap() + e.end.offset;
            (
                (T::from(e.start.col).unwrap(), y),
                (T::from(e.end.col).unwrap(), y),
            )
        }
        Side::Bottom => {
            let x = T::from(e.end.col).unwrap() + e.end.offset;
            (
                (x, T::from(e.start.row).unwrap()),
                (x, T::from(e.end.row).unwrap()),
            )
        }
    }
}

/// One event of a minimal realizing set at the minimal connecting value.
///
/// The binary search over blocked prefixes of the concurrency group is the
/// primary selector, as in the modified decision procedure. Coincident
/// openings (several passages at exactly the same value, routine with
/// degenerate coordinates) can fool the boundary-reach blocking in either
/// direction, so the selected event is verified on two exact conditions
/// and the group is scanned in order when it fails them:
///
/// - both halves of its split must be connected at the value, and
/// - no monotone path strictly below the value may bypass its opening
///   (connect the region before the opening to the region after it) —
///   an event with such a bypass can be dropped from every realizing set
///   and splitting there would leave an avoidable spike in the matching.
pub fn find_realizing_event<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> CriticalEvent<T> {
    let (eps, group) = min_connecting_value(p, q);
    // A value strictly between the previous critical value and this one:
    // the free space there is exactly "just below" the group's openings.
    let tol = crate::events::value_group_tolerance(eps);
    let below = enumerate_events(p, q)
        .iter()
        .map(|e| e.value)
        .filter(|&v| v < eps - tol)
        .fold(T::neg_infinity(), T::max);
    let two = T::one() + T::one();
    let eps_below = if below.is_finite() {
        (below + eps) / two
    } else {
        eps / two
    };

    let feasible = |e: &CriticalEvent<T>| {
        let parts = split_at_event(p, q, e);
        half_supports(&parts.p1, &parts.q1, eps) && half_supports(&parts.p2, &parts.q2, eps)
    };
    let sound = |e: &CriticalEvent<T>| {
        let (from, to) = opening_span(e);
        feasible(e) && !crate::freespace::region_connects(p, q, eps_below, from, to)
    };

    if group.len() == 1 {
        return group[0];
    }
    // decide(k): connected while blocking everything after the first k
    // events; monotone in k, true at k = len, and false at k = 0 whenever
    // every opening at this value is an enumerated event.
    let mut lo = 0usize;
    let mut hi = group.len();
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if decide_connected(p, q, eps, &group[mid..]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo >= 1 {
        return group[lo - 1];
    }
    // Blocking the whole group did not disconnect: connectivity at this
    // value is also enabled by a coincident opening outside the event
    // taxonomy (an interior vertex pair at exactly this distance — routine
    // with degenerate coordinates). Scan for an event the matching can
    // safely pass through, preferring ones with no strictly-below bypass.
    for e in &group {
        if sound(e) {
            return *e;
        }
    }
    for e in &group {
        if feasible(e) {
            return *e;
        }
    }
    panic!("no event of the minimal concurrency group admits a connected split")
}

/// Curves and matching piece produced by splitting at an event.
#[derive(Debug, Clone)]
pub struct SplitParts<T> {
    pub p1: Curve<T>,
    pub q1: Curve<T>,
    pub p2: Curve<T>,
    pub q2: Curve<T>,
    /// The event's own matched piece in parent diagram coordinates: a
    /// single point for type B, a horizontal or vertical segment for type C.
    pub piece: Vec<ParamPoint<T>>,
    /// Cut parameters on `p`: end of the first piece, start of the second.
    pub p_cut: (T, T),
    /// Cut parameters on `q`.
    pub q_cut: (T, T),
}

/// Splits both curves at a critical event strictly inside the diagram.
pub fn split_at_event<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    e: &CriticalEvent<T>,
) -> SplitParts<T> {
    let m = p.param_end();
    let n = q.param_end();
    let (p_cut, q_cut, piece) = match e.end.side {
        Side::Left => {
            let y = T::from(e.end.row).unwrap() + e.end.offset;
            let x_s = T::from(e.start.col).unwrap();
            let x_e = T::from(e.end.col).unwrap();
            let piece = if e.kind == EventKind::C {
                vec![ParamPoint::new(x_s, y), ParamPoint::new(x_e, y)]
            } else {
                vec![ParamPoint::new(x_e, y)]
            };
            ((x_s, x_e), (y, y), piece)
        }
        Side::Bottom => {
            let x = T::from(e.end.col).unwrap() + e.end.offset;
            let y_s = T::from(e.start.row).unwrap();
            let y_e = T::from(e.end.row).unwrap();
            let piece = if e.kind == EventKind::C {
                vec![ParamPoint::new(x, y_s), ParamPoint::new(x, y_e)]
            } else {
                vec![ParamPoint::new(x, y_e)]
            };
            ((x, x), (y_s, y_e), piece)
        }
    };
    let p1 = p.subcurve(T::zero(), p_cut.0).expect("cut in range");
    let p2 = p.subcurve(p_cut.1, m).expect("cut in range");
    let q1 = q.subcurve(T::zero(), q_cut.0).expect("cut in range");
    let q2 = q.subcurve(q_cut.1, n).expect("cut in range");
    let (pm, qn) = (p.edge_count(), q.edge_count());
    for (pp, qq) in [(&p1, &q1), (&p2, &q2)] {
        let (mi, ni) = (pp.edge_count(), qq.edge_count());
        assert!(
            mi <= pm && ni <= qn && (mi < pm || ni < qn),
            "split event on an excluded boundary: subproblem did not shrink"
        );
    }
    SplitParts {
        p1,
        q1,
        p2,
        q2,
        piece,
        p_cut,
        q_cut,
    }
}

/// Monotone map from a subcurve's parameters back into the parent curve's.
#[derive(Debug, Clone, Copy)]
enum AxisMap<T> {
    /// Prefix cut exactly on a vertex, or cut point merged into one.
    Identity,
    /// Prefix with a mid-edge cut: identity up to `k0`, the last sub-edge
    /// compressed into `[k0, cut]`.
    Prefix { cut: T, k0: T, sub_end: T },
    /// Suffix starting exactly on a vertex (or merged into one): shift.
    SuffixShift { shift: T },
    /// Suffix with a mid-edge cut: first sub-edge stretched over
    /// `[cut, k0 + 1]`, then shifted identity.
    Suffix { cut: T, k0: T },
}

impl<T: Scalar> AxisMap<T> {
    fn prefix(cut: T, sub_edges: usize) -> Self {
        let k0 = cut.floor();
        if cut == k0 || T::from(sub_edges).unwrap() == k0 {
            // Second disjunct: the cut point merged into vertex k0 during
            // subcurve extraction; the sliver (k0, cut] is below merge
            // tolerance.
            AxisMap::Identity
        } else {
            AxisMap::Prefix {
                cut,
                k0,
                sub_end: T::from(sub_edges).unwrap(),
            }
        }
    }

    fn suffix(cut: T, total_edges: usize, sub_edges: usize) -> Self {
        let k0 = cut.floor();
        if cut == k0 {
            AxisMap::SuffixShift { shift: cut }
        } else if T::from(total_edges - sub_edges).unwrap() == k0 + T::one() {
            // Cut point merged into vertex k0 + 1.
            AxisMap::SuffixShift {
                shift: k0 + T::one(),
            }
        } else {
            AxisMap::Suffix { cut, k0 }
        }
    }

    fn apply(&self, u: T) -> T {
        match *self {
            AxisMap::Identity => u,
            AxisMap::Prefix { cut, k0, sub_end } => {
                if u == sub_end {
                    cut
                } else if u <= k0 {
                    u
                } else {
                    (k0 + (u - k0) * (cut - k0)).min(cut)
                }
            }
            AxisMap::SuffixShift { shift } => u + shift,
            AxisMap::Suffix { cut, k0 } => {
                if u >= T::one() {
                    k0 + u
                } else {
                    (cut + u * (k0 + T::one() - cut)).min(k0 + T::one())
                }
            }
        }
    }
}

/// Appends a path vertex, inserting explicit vertices at integer cell
/// crossings of axis-aligned segments and dropping exact duplicates.
fn push_with_crossings<T: Scalar>(out: &mut Vec<ParamPoint<T>>, pt: ParamPoint<T>) {
    if let Some(&last) = out.last() {
        if last.x == pt.x && last.y == pt.y {
            return;
        }
        if last.x == pt.x {
            let mut k = last.y.floor() + T::one();
            while k < pt.y {
                out.push(ParamPoint::new(pt.x, k));
                k = k + T::one();
            }
        } else if last.y == pt.y {
            let mut k = last.x.floor() + T::one();
            while k < pt.x {
                out.push(ParamPoint::new(k, pt.y));
                k = k + T::one();
            }
        }
    }
    out.push(pt);
}

fn lcfm_path<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> Vec<ParamPoint<T>> {
    let m = p.edge_count();
    let n = q.edge_count();
    let zero = T::zero();
    if m == 0 && n == 0 {
        return vec![ParamPoint::new(zero, zero)];
    }
    if m == 0 || n == 0 {
        return vec![
            ParamPoint::new(zero, zero),
            ParamPoint::new(p.param_end(), q.param_end()),
        ];
    }
    if m == 1 && n == 1 {
        return vec![ParamPoint::new(zero, zero), ParamPoint::new(T::one(), T::one())];
    }

    let event = find_realizing_event(p, q);
    let parts = split_at_event(p, q, &event);
    debug_assert!(
        parts.p1.edge_count() + parts.q1.edge_count() < m + n
            && parts.p2.edge_count() + parts.q2.edge_count() < m + n
    );
    let sub1 = lcfm_path(&parts.p1, &parts.q1);
    let sub2 = lcfm_path(&parts.p2, &parts.q2);

    let map1x = AxisMap::prefix(parts.p_cut.0, parts.p1.edge_count());
    let map1y = AxisMap::prefix(parts.q_cut.0, parts.q1.edge_count());
    let map2x = AxisMap::suffix(parts.p_cut.1, m, parts.p2.edge_count());
    let map2y = AxisMap::suffix(parts.q_cut.1, n, parts.q2.edge_count());

    let mut path = Vec::with_capacity(sub1.len() + sub2.len() + 2);
    for v in sub1 {
        push_with_crossings(
            &mut path,
            ParamPoint::new(map1x.apply(v.x), map1y.apply(v.y)),
        );
    }
    for v in parts.piece {
        push_with_crossings(&mut path, v);
    }
    for v in sub2 {
        push_with_crossings(
            &mut path,
            ParamPoint::new(map2x.apply(v.x), map2y.apply(v.y)),
        );
    }
    path
}

/// Computes a locally correct Fréchet matching.
///
/// Base cases: a point is matched to the whole other curve by the straight
/// path, and two single segments by the diagonal. Otherwise the curves are
/// split at a realizing event and the sub-matchings are glued around it.
/// The result is deterministic for identical inputs.
pub fn compute_lcfm<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> ParamMatching<T> {
    let path = lcfm_path(p, q);
    ParamMatching::new(p, q, path).expect("construction preserves matching invariants")
}
