//! Free-space predicates and the reachability decision procedures.
//!
//! For a distance bound `eps`, a point `(x, y)` of the parameter space is
//! *free* when `|P(x) − Q(y)| ≤ eps`. On each cell boundary the free set is
//! a single interval (the sublevel set of a quadratic), and a monotone path
//! through free space exists iff the usual interval sweep reaches the far
//! corner. Two decision variants are provided:
//!
//! - [`decide_standard`]: a monotone path from `(0, 0)` to `(m, n)` exists;
//! - [`decide_connected`]: a monotone path exists from the boundary of the
//!   first cell to the boundary of the last cell, optionally forbidden from
//!   using a set of blocked critical events.
//!
//! The connected variant drives matching construction: at a critical value
//! it reveals which events are necessary for connectivity. Necessity is
//! decided through *entry points* (the last column or row from which the
//! sweep entered the current row or column) rather than singleton-interval
//! tests, which keeps the test combinatorial instead of metric.

use std::collections::BTreeMap;

use crate::curve::{Curve, Point2, Segment2};
use crate::error::Error;
use crate::events::{CriticalEvent, Side};
use crate::Scalar;

/// Closed subinterval of `[0, 1]` on one boundary edge, or empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T>(Option<(T, T)>);

impl<T: Scalar> Interval<T> {
    pub fn empty() -> Self {
        Interval(None)
    }

    /// Non-empty interval; `lo ≤ hi` required.
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Interval(Some((lo, hi)))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn bounds(&self) -> Option<(T, T)> {
        self.0
    }

    pub fn lo(&self) -> Option<T> {
        self.0.map(|(lo, _)| lo)
    }

    pub fn hi(&self) -> Option<T> {
        self.0.map(|(_, hi)| hi)
    }

    pub fn contains(&self, t: T) -> bool {
        matches!(self.0, Some((lo, hi)) if lo <= t && t <= hi)
    }

    /// Whether this is the whole `[0, 1]` range.
    pub fn is_unit(&self) -> bool {
        self.0 == Some((T::zero(), T::one()))
    }

    /// Intersection with `[min, ∞)`.
    pub fn clip_lo(self, min: T) -> Self {
        match self.0 {
            Some((lo, hi)) => {
                let lo = lo.max(min);
                if lo <= hi {
                    Interval(Some((lo, hi)))
                } else {
                    Interval(None)
                }
            }
            None => Interval(None),
        }
    }

    /// Intersection with `(-∞, max]`.
    pub fn clip_hi(self, max: T) -> Self {
        match self.0 {
            Some((lo, hi)) => {
                let hi = hi.min(max);
                if lo <= hi {
                    Interval(Some((lo, hi)))
                } else {
                    Interval(None)
                }
            }
            None => Interval(None),
        }
    }

    /// Smallest interval containing both.
    pub(crate) fn hull(self, other: Self) -> Self {
        match (self.0, other.0) {
            (None, o) => Interval(o),
            (s, None) => Interval(s),
            (Some((a, b)), Some((c, d))) => Interval(Some((a.min(c), b.max(d)))),
        }
    }

    /// Whether `self ⊆ other` (the empty interval is contained in all).
    pub fn subset_of(&self, other: &Self) -> bool {
        match (self.0, other.0) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => c <= a && b <= d,
        }
    }
}

/// Free set `{t ∈ [0, 1] : |p − seg(t)| ≤ eps}` on one boundary edge.
///
/// Solved from the quadratic in `t`. A discriminant within rounding of zero
/// is snapped to zero so that tangencies at the queried value yield true
/// singletons.
pub fn free_interval<T: Scalar>(
    p: Point2<T>,
    seg: Segment2<T>,
    eps: T,
) -> Result<Interval<T>, Error> {
    if seg.is_degenerate() {
        return Err(Error::domain("degenerate segment in free-space predicate"));
    }
    if !(eps >= T::zero() && eps.is_finite()) {
        return Err(Error::domain(format!("distance bound {eps} invalid")));
    }
    Ok(free_interval_raw(p, seg, eps, true))
}

/// Quadratic solve in foot-centred form: the interval is the foot parameter
/// plus/minus a half-width from `eps² − perp²`, where `perp` is the distance
/// to the supporting line computed from the cross product. Unlike the
/// textbook `b² − 4ac` discriminant this loses no precision when `eps` is
/// many orders below the point's distance scale, which matters for
/// near-identical subcurves whose true distance is machine noise.
///
/// The decision sweeps evaluate at a padded value, which turns every true
/// tangency into a genuinely positive gap well above rounding noise;
/// snapping there would collapse corner tangencies to a point strictly
/// inside the edge and break the exact endpoint tests, so they skip it.
fn free_interval_raw<T: Scalar>(
    p: Point2<T>,
    seg: Segment2<T>,
    eps: T,
    snap_tangency: bool,
) -> Interval<T> {
    let d = seg.direction();
    let w = seg.start - p;
    let a = d.dot(d);
    let t_foot = -w.dot(d) / a;
    let cross = w.x * d.y - w.y * d.x;
    let perp_sq = cross * cross / a;
    let mut gap = eps * eps - perp_sq;
    if snap_tangency {
        let snap = T::from(1e-12).unwrap() * (eps * eps).max(perp_sq);
        if gap.abs() <= snap {
            gap = T::zero();
        }
    }
    if gap < T::zero() {
        return Interval::empty();
    }
    let halfwidth = (gap / a).sqrt();
    let lo = (t_foot - halfwidth).max(T::zero());
    let hi = (t_foot + halfwidth).min(T::one());
    if lo > hi {
        Interval::empty()
    } else {
        Interval::new(lo, hi)
    }
}

/// Decision padding: candidate values reach the decision through a
/// different arithmetic route than the interval roots they must tie
/// against, so the sweep evaluates at `eps` plus a relative pad four
/// orders below the event-grouping tolerance. Exact ties open reliably;
/// distinct critical values (separated by the 1e-9 grouping) never reorder.
fn padded_eps<T: Scalar>(eps: T) -> T {
    eps + T::from(1e-12).unwrap() * eps.max(T::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Standard,
    Connected,
}

/// Per-boundary reachability of one decision sweep: the reachable
/// subinterval of every free interval, plus the entry point feeding it.
///
/// The entry point of a vertical boundary in column `c` is the greatest
/// cell column `c' < c` whose bottom boundary in the same row is reachable
/// (`None` when the row was never entered from below); horizontal
/// boundaries mirror this with rows. A sweep is confined to one decision
/// and never shared.
#[derive(Debug, Clone)]
pub struct ReachabilityState<T> {
    m: usize,
    n: usize,
    v_reach: Vec<Interval<T>>,
    h_reach: Vec<Interval<T>>,
    v_entry: Vec<Option<usize>>,
    h_entry: Vec<Option<usize>>,
    decision: bool,
}

impl<T: Scalar> ReachabilityState<T> {
    /// Sweep for the corner-to-corner decision.
    pub fn standard(p: &Curve<T>, q: &Curve<T>, eps: T) -> Self {
        sweep(p, q, eps, Mode::Standard, &[])
    }

    /// Sweep for the first-cell-to-last-cell decision with blocked events.
    pub fn connected(p: &Curve<T>, q: &Curve<T>, eps: T, blocked: &[CriticalEvent<T>]) -> Self {
        sweep(p, q, eps, Mode::Connected, blocked)
    }

    /// The sweep's yes/no answer.
    pub fn decision(&self) -> bool {
        self.decision
    }

    fn v_idx(&self, c: usize, r: usize) -> usize {
        debug_assert!(c <= self.m && r < self.n);
        c * self.n + r
    }

    fn h_idx(&self, c: usize, r: usize) -> usize {
        debug_assert!(c < self.m && r <= self.n);
        c * (self.n + 1) + r
    }

    /// Reachable interval of the vertical boundary at `x = c` in cell row `r`.
    pub fn vertical_reach(&self, c: usize, r: usize) -> Interval<T> {
        self.v_reach[self.v_idx(c, r)]
    }

    /// Reachable interval of the horizontal boundary at `y = r` in cell column `c`.
    pub fn horizontal_reach(&self, c: usize, r: usize) -> Interval<T> {
        self.h_reach[self.h_idx(c, r)]
    }

    pub fn vertical_entry(&self, c: usize, r: usize) -> Option<usize> {
        self.v_entry[self.v_idx(c, r)]
    }

    pub fn horizontal_entry(&self, c: usize, r: usize) -> Option<usize> {
        self.h_entry[self.h_idx(c, r)]
    }
}

/// Monotone path from `(0, 0)` to `(m, n)` in free space at `eps`,
/// including the corner-freeness conditions on both endpoint pairs.
pub fn decide_standard<T: Scalar>(p: &Curve<T>, q: &Curve<T>, eps: T) -> bool {
    ReachabilityState::standard(p, q, eps).decision()
}

/// Monotone path from the boundary of the first cell to the boundary of the
/// last cell at `eps`, not using any blocked event whose passage is
/// necessary for the reach that hosts it.
pub fn decide_connected<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    eps: T,
    blocked: &[CriticalEvent<T>],
) -> bool {
    ReachabilityState::connected(p, q, eps, blocked).decision()
}

type BlockedMap = BTreeMap<(u8, usize, usize), usize>;

struct BlockedEvents {
    /// Per end boundary, the rightmost passage start among blocked events.
    map: BlockedMap,
    /// Lattice points opened by blocked events whose offset is exactly 0
    /// or 1 (clamped feet): passages through diagram corners. Edge slides
    /// travel through such corners without touching the hosting boundary's
    /// reach, so they are checked separately.
    corners: std::collections::BTreeSet<(usize, usize)>,
}

fn blocked_events<T: Scalar>(blocked: &[CriticalEvent<T>]) -> BlockedEvents {
    let mut map = BlockedMap::new();
    let mut corners = std::collections::BTreeSet::new();
    for e in blocked {
        let key = match e.end.side {
            Side::Left => (0u8, e.end.col, e.end.row),
            Side::Bottom => (1u8, e.end.col, e.end.row),
        };
        let start = e.start_line();
        map.entry(key)
            .and_modify(|s| *s = (*s).max(start))
            .or_insert(start);
        for pos in [&e.start, &e.end] {
            let off = if pos.offset == T::zero() {
                Some(0)
            } else if pos.offset == T::one() {
                Some(1)
            } else {
                None
            };
            if let Some(off) = off {
                let corner = match pos.side {
                    Side::Left => (pos.col, pos.row + off),
                    Side::Bottom => (pos.col + off, pos.row),
                };
                corners.insert(corner);
            }
        }
    }
    BlockedEvents { map, corners }
}

fn sweep<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    eps: T,
    mode: Mode,
    blocked: &[CriticalEvent<T>],
) -> ReachabilityState<T> {
    let m = p.edge_count();
    let n = q.edge_count();
    assert!(m >= 1 && n >= 1, "decision sweeps need two real curves");
    if mode == Mode::Connected {
        assert!(m + n > 2, "connected decision needs more than one cell");
    }
    let eps = padded_eps(eps);
    let zero = T::zero();
    let one = T::one();

    // Free intervals on every boundary.
    let mut v_free = Vec::with_capacity((m + 1) * n);
    for c in 0..=m {
        for r in 0..n {
            v_free.push(free_interval_raw(p.vertex(c), q.edge(r), eps, false));
        }
    }
    let mut h_free = Vec::with_capacity(m * (n + 1));
    for c in 0..m {
        for r in 0..=n {
            h_free.push(free_interval_raw(q.vertex(r), p.edge(c), eps, false));
        }
    }

    let blocked = blocked_events(blocked);
    let mut st = ReachabilityState {
        m,
        n,
        v_reach: vec![Interval::empty(); (m + 1) * n],
        h_reach: vec![Interval::empty(); m * (n + 1)],
        v_entry: vec![None; (m + 1) * n],
        h_entry: vec![None; m * (n + 1)],
        decision: false,
    };

    let vi = |c: usize, r: usize| c * n + r;
    let hi = |c: usize, r: usize| c * (n + 1) + r;

    // Empties a freshly computed reach when a blocked event ending on the
    // boundary is necessary: the entry point sits before the passage start.
    let apply_block_v = |st: &mut ReachabilityState<T>, c: usize, r: usize| {
        if let Some(&start) = blocked.map.get(&(0u8, c, r)) {
            if st.v_entry[vi(c, r)].is_none_or(|e| e < start) {
                st.v_reach[vi(c, r)] = Interval::empty();
            }
        }
    };
    let apply_block_h = |st: &mut ReachabilityState<T>, c: usize, r: usize| {
        if let Some(&start) = blocked.map.get(&(1u8, c, r)) {
            if st.h_entry[hi(c, r)].is_none_or(|e| e < start) {
                st.h_reach[hi(c, r)] = Interval::empty();
            }
        }
    };

    match mode {
        Mode::Standard => {
            // Prefix reach along the bottom and left diagram edges, anchored
            // at the start corner.
            let mut contiguous = true;
            for c in 0..m {
                let f = h_free[hi(c, 0)];
                if contiguous && f.lo() == Some(zero) {
                    st.h_reach[hi(c, 0)] = Interval::new(zero, f.hi().unwrap());
                }
                contiguous = contiguous && f.is_unit();
            }
            let mut contiguous = true;
            for r in 0..n {
                let f = v_free[vi(0, r)];
                if contiguous && f.lo() == Some(zero) {
                    st.v_reach[vi(0, r)] = Interval::new(zero, f.hi().unwrap());
                }
                contiguous = contiguous && f.is_unit();
            }
        }
        Mode::Connected => {
            // The right and top boundaries of the first cell are reachable
            // wherever they are free; every escaping path crosses one of
            // them.
            st.v_reach[vi(1, 0)] = v_free[vi(1, 0)];
            apply_block_v(&mut st, 1, 0);
            st.h_reach[hi(0, 1)] = h_free[hi(0, 1)];
            apply_block_h(&mut st, 0, 1);

            // Slide along the bottom edge from (1, 0). The slide travels
            // through the lattice corners (c, 0); a blocked opening at such
            // a corner severs it.
            let mut contiguous = st.v_reach[vi(1, 0)].lo() == Some(zero);
            for c in 1..m {
                if blocked.corners.contains(&(c, 0)) {
                    contiguous = false;
                }
                let f = h_free[hi(c, 0)];
                if contiguous && f.lo() == Some(zero) {
                    st.h_reach[hi(c, 0)] = Interval::new(zero, f.hi().unwrap());
                }
                apply_block_h(&mut st, c, 0);
                contiguous = contiguous && st.h_reach[hi(c, 0)].is_unit();
            }
            // Slide up the left edge from (0, 1), mirrored.
            let mut contiguous = st.h_reach[hi(0, 1)].lo() == Some(zero);
            for r in 1..n {
                if blocked.corners.contains(&(0, r)) {
                    contiguous = false;
                }
                let f = v_free[vi(0, r)];
                if contiguous && f.lo() == Some(zero) {
                    st.v_reach[vi(0, r)] = Interval::new(zero, f.hi().unwrap());
                }
                apply_block_v(&mut st, 0, r);
                contiguous = contiguous && st.v_reach[vi(0, r)].is_unit();
            }
        }
    }

    // Cell sweep. Inside one convex free cell a monotone path exists from
    // any bottom point to any right/top point, and from a left point to any
    // target not below it.
    for r in 0..n {
        for c in 0..m {
            let skip_outputs = mode == Mode::Connected && c == 0 && r == 0;
            if skip_outputs {
                continue;
            }
            let reach_l = st.v_reach[vi(c, r)];
            let reach_b = st.h_reach[hi(c, r)];

            // Right boundary.
            let f = v_free[vi(c + 1, r)];
            let out = if !reach_b.is_empty() {
                f
            } else if let Some((lo, _)) = reach_l.bounds() {
                f.clip_lo(lo)
            } else {
                Interval::empty()
            };
            st.v_entry[vi(c + 1, r)] = if !reach_b.is_empty() {
                Some(c)
            } else {
                st.v_entry[vi(c, r)]
            };
            st.v_reach[vi(c + 1, r)] = out;
            apply_block_v(&mut st, c + 1, r);

            // Top boundary.
            let f = h_free[hi(c, r + 1)];
            let out = if !reach_l.is_empty() {
                f
            } else if let Some((lo, _)) = reach_b.bounds() {
                f.clip_lo(lo)
            } else {
                Interval::empty()
            };
            st.h_entry[hi(c, r + 1)] = if !reach_l.is_empty() {
                Some(r)
            } else {
                st.h_entry[hi(c, r)]
            };
            st.h_reach[hi(c, r + 1)] = out;
            apply_block_h(&mut st, c, r + 1);
        }
    }

    st.decision = match mode {
        Mode::Standard => {
            // The end corner is reached by climbing the right edge from a
            // reachable boundary whose free interval extends to the top,
            // with every boundary above it fully free — or symmetrically
            // along the top edge. A direct finish through the last cell is
            // the degenerate climb of length zero.
            let mut ok = false;
            let mut clear_above = true;
            for r in (0..n).rev() {
                let f = v_free[vi(m, r)];
                if clear_above && !st.v_reach[vi(m, r)].is_empty() && f.hi() == Some(one) {
                    ok = true;
                    break;
                }
                clear_above = clear_above && f.is_unit();
                if !clear_above {
                    break;
                }
            }
            if !ok {
                let mut clear_right = true;
                for c in (0..m).rev() {
                    let f = h_free[hi(c, n)];
                    if clear_right && !st.h_reach[hi(c, n)].is_empty() && f.hi() == Some(one) {
                        ok = true;
                        break;
                    }
                    clear_right = clear_right && f.is_unit();
                    if !clear_right {
                        break;
                    }
                }
            }
            ok
        }
        Mode::Connected => {
            !st.v_reach[vi(m - 1, n - 1)].is_empty()
                || !st.h_reach[hi(m - 1, n - 1)].is_empty()
        }
    };
    st
}

/// Whether the free space at `eps` contains a monotone path from some point
/// componentwise at most `from` to some point componentwise at least `to`.
///
/// This is the bypass question behind realizing-event selection: an event
/// whose opening spans `from → to` can be dropped from every realizing set
/// exactly when such a path exists strictly below the event's value. Start
/// and target points sit on cell-boundary lines, so boundary reaches capture
/// every such path; reaches that accumulate from several sources are kept
/// as interval hulls, which can only overstate connectivity — an
/// overstated bypass merely rejects a candidate event in favour of a
/// later concurrent one.
pub(crate) fn region_connects<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    eps: T,
    from: (T, T),
    to: (T, T),
) -> bool {
    let m = p.edge_count();
    let n = q.edge_count();
    assert!(m >= 1 && n >= 1);
    let eps = padded_eps(eps);
    let zero = T::zero();
    let one = T::one();

    let vi = |c: usize, r: usize| c * n + r;
    let hi = |c: usize, r: usize| c * (n + 1) + r;
    let mut v_free = Vec::with_capacity((m + 1) * n);
    for c in 0..=m {
        for r in 0..n {
            v_free.push(free_interval_raw(p.vertex(c), q.edge(r), eps, false));
        }
    }
    let mut h_free = Vec::with_capacity(m * (n + 1));
    for c in 0..m {
        for r in 0..=n {
            h_free.push(free_interval_raw(q.vertex(r), p.edge(c), eps, false));
        }
    }

    let mut v_reach = vec![Interval::empty(); (m + 1) * n];
    let mut h_reach = vec![Interval::empty(); m * (n + 1)];

    // Free boundary parts inside the start region.
    for c in 0..=m {
        let cx = T::from(c).unwrap();
        if cx > from.0 {
            continue;
        }
        for r in 0..n {
            let lim = from.1 - T::from(r).unwrap();
            if lim >= zero {
                v_reach[vi(c, r)] = v_free[vi(c, r)].clip_hi(lim.min(one));
            }
        }
    }
    for r in 0..=n {
        let ry = T::from(r).unwrap();
        if ry > from.1 {
            continue;
        }
        for c in 0..m {
            let lim = from.0 - T::from(c).unwrap();
            if lim >= zero {
                h_reach[hi(c, r)] = h_free[hi(c, r)].clip_hi(lim.min(one));
            }
        }
    }

    // Slides along the outer bottom and left edges continue rightward and
    // upward wherever the edge stays free through the shared corner.
    for c in 1..m {
        if h_reach[hi(c - 1, 0)].hi() == Some(one) && h_free[hi(c, 0)].lo() == Some(zero) {
            h_reach[hi(c, 0)] = h_free[hi(c, 0)];
        }
    }
    for r in 1..n {
        if v_reach[vi(0, r - 1)].hi() == Some(one) && v_free[vi(0, r)].lo() == Some(zero) {
            v_reach[vi(0, r)] = v_free[vi(0, r)];
        }
    }

    for r in 0..n {
        for c in 0..m {
            let reach_l = v_reach[vi(c, r)];
            let reach_b = h_reach[hi(c, r)];
            let f = v_free[vi(c + 1, r)];
            let out = if !reach_b.is_empty() {
                f
            } else if let Some((lo, _)) = reach_l.bounds() {
                f.clip_lo(lo)
            } else {
                Interval::empty()
            };
            v_reach[vi(c + 1, r)] = v_reach[vi(c + 1, r)].hull(out);

            let f = h_free[hi(c, r + 1)];
            let out = if !reach_l.is_empty() {
                f
            } else if let Some((lo, _)) = reach_b.bounds() {
                f.clip_lo(lo)
            } else {
                Interval::empty()
            };
            h_reach[hi(c, r + 1)] = h_reach[hi(c, r + 1)].hull(out);
        }
    }

    // Slides along the top and right edges, mirrored.
    for c in 1..m {
        if h_reach[hi(c - 1, n)].hi() == Some(one) && h_free[hi(c, n)].lo() == Some(zero) {
            h_reach[hi(c, n)] = h_free[hi(c, n)];
        }
    }
    for r in 1..n {
        if v_reach[vi(m, r - 1)].hi() == Some(one) && v_free[vi(m, r)].lo() == Some(zero) {
            v_reach[vi(m, r)] = v_free[vi(m, r)];
        }
    }

    // Any reached boundary point inside the target region answers yes.
    for c in 0..=m {
        let cx = T::from(c).unwrap();
        if cx < to.0 {
            continue;
        }
        for r in 0..n {
            if let Some((_, hi_t)) = v_reach[vi(c, r)].bounds() {
                if T::from(r).unwrap() + hi_t >= to.1 {
                    return true;
                }
            }
        }
    }
    for r in 0..=n {
        let ry = T::from(r).unwrap();
        if ry < to.1 {
            continue;
        }
        for c in 0..m {
            if let Some((_, hi_t)) = h_reach[hi(c, r)].bounds() {
                if T::from(c).unwrap() + hi_t >= to.0 {
                    return true;
                }
            }
        }
    }
    false
}
