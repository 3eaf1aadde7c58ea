//! Critical events of the free-space diagram.
//!
//! As the distance bound grows from zero, the free space gains passages at
//! discrete thresholds: the endpoints come within range of each other
//! (type A), a passage opens on a single cell boundary (type B), or a
//! passage opens across a whole row or column where two vertices of one
//! curve pinch an edge of the other (type C). The minimum over monotone
//! matchings is always attained at one of these values, so enumerating them
//! turns distance computation and matching construction into searches over
//! a finite ladder.

use std::cmp::Ordering;

use crate::curve::{Curve, Point2, Segment2};
use crate::Scalar;

/// Event type, in the order passages appear in the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EventKind {
    /// The endpoint pair comes within range: a diagram corner opens.
    A,
    /// Passage opens on a single cell boundary.
    B,
    /// Passage opens across a row or column.
    C,
}

/// Which boundary of a cell a position sits on.
///
/// `Left` is a vertical boundary: `col` is the x-line (a vertex index of the
/// first curve), `row` the cell row it spans, and `offset` the parameter on
/// that edge of the second curve. `Bottom` is the mirrored horizontal case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Bottom,
}

/// Passage orientation of a type-C event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Row,
    Column,
}

/// A position on one cell boundary of the diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPos<T> {
    pub col: usize,
    pub row: usize,
    pub side: Side,
    pub offset: T,
}

/// A passage-opening record: its distance value and where the passage
/// starts and ends.
///
/// For types A and B the start equals the end. For a type-C row event the
/// passage runs from the start boundary to the end boundary at a common
/// vertical offset; column events are symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalEvent<T> {
    pub kind: EventKind,
    pub value: T,
    pub end: BoundaryPos<T>,
    pub start: BoundaryPos<T>,
}

impl<T: Scalar> CriticalEvent<T> {
    /// Row/column orientation; only type-C events have one.
    pub fn orientation(&self) -> Option<Orientation> {
        match (self.kind, self.end.side) {
            (EventKind::C, Side::Left) => Some(Orientation::Row),
            (EventKind::C, Side::Bottom) => Some(Orientation::Column),
            _ => None,
        }
    }

    /// Recomputes the opening distance from the stored positions.
    ///
    /// Self-consistency check: the result must match `value` to within
    /// rounding.
    pub fn recompute_value(&self, p: &Curve<T>, q: &Curve<T>) -> T {
        let point_on = |pos: &BoundaryPos<T>| match pos.side {
            Side::Left => (p.vertex(pos.col), q.edge(pos.row).point_at(pos.offset)),
            Side::Bottom => (q.vertex(pos.row), p.edge(pos.col).point_at(pos.offset)),
        };
        let (v, x) = point_on(&self.end);
        v.distance(x)
    }

    /// Total order used everywhere events are sorted: value first, then the
    /// end position, then the start position, then the kind.
    pub fn cmp_order(&self, other: &Self) -> Ordering {
        cmp_t(self.value, other.value)
            .then_with(|| self.end.row.cmp(&other.end.row))
            .then_with(|| self.end.col.cmp(&other.end.col))
            .then_with(|| self.end.side.cmp(&other.end.side))
            .then_with(|| cmp_t(self.end.offset, other.end.offset))
            .then_with(|| self.start.col.cmp(&other.start.col))
            .then_with(|| self.start.row.cmp(&other.start.row))
            .then_with(|| cmp_t(self.start.offset, other.start.offset))
            .then_with(|| self.kind.cmp(&other.kind))
    }

    /// Scalar start coordinate compared against entry points when the event
    /// is blocked: the start column for row passages, the start row for
    /// column passages.
    pub(crate) fn start_line(&self) -> usize {
        match self.end.side {
            Side::Left => self.start.col,
            Side::Bottom => self.start.row,
        }
    }
}

fn cmp_t<T: Scalar>(a: T, b: T) -> Ordering {
    a.partial_cmp(&b).expect("event coordinates are finite")
}

/// Distance from a vertex to an edge, with the parameter of the closest
/// point clamped to the edge.
pub fn type_b_value<T: Scalar>(v: Point2<T>, seg: Segment2<T>) -> (T, T) {
    debug_assert!(!seg.is_degenerate());
    let t = seg.project(v).max(T::zero()).min(T::one());
    (v.distance(seg.point_at(t)), t)
}

/// Intersection of the bisector of `u`, `w` with an edge: the distance at
/// which the free intervals of the two vertices touch on that edge.
///
/// Returns the common distance and the edge parameter, or `None` when the
/// bisector misses the segment. A bisector containing the whole segment
/// degenerates to the shared closest point.
pub fn type_c_value<T: Scalar>(
    u: Point2<T>,
    w: Point2<T>,
    seg: Segment2<T>,
) -> Option<(T, T)> {
    debug_assert!(u != w);
    debug_assert!(!seg.is_degenerate());
    let d = seg.direction();
    let diff = w - u;
    let denom = diff.dot(d);
    let scale = diff.dot(diff).sqrt() * d.dot(d).sqrt();
    if denom.abs() <= T::from(1e-12).unwrap() * scale {
        // Bisector parallel to the edge: either it contains the edge and
        // every point is equidistant, or it misses entirely.
        let du = u.distance(seg.start);
        let dw = w.distance(seg.start);
        let tol = T::from(1e-12).unwrap() * du.max(T::one());
        if (du - dw).abs() <= tol {
            let t = seg.project(u).max(T::zero()).min(T::one());
            return Some((u.distance(seg.point_at(t)), t));
        }
        return None;
    }
    let half = (w.dot(w) - u.dot(u)) / (T::one() + T::one());
    let t = (half - diff.dot(seg.start)) / denom;
    if t < T::zero() || t > T::one() {
        return None;
    }
    Some((u.distance(seg.point_at(t)), t))
}

fn left_pos<T: Scalar>(col: usize, row: usize, offset: T) -> BoundaryPos<T> {
    BoundaryPos {
        col,
        row,
        side: Side::Left,
        offset,
    }
}

fn bottom_pos<T: Scalar>(col: usize, row: usize, offset: T) -> BoundaryPos<T> {
    BoundaryPos {
        col,
        row,
        side: Side::Bottom,
        offset,
    }
}

/// Enumerates the splittable events, sorted by `(value, position)`: every
/// type-B candidate and every gated type-C candidate.
///
/// Events on the outer boundaries of the two corner cells are dropped:
/// splitting there would not shrink the problem. Type-C candidates are kept
/// only in the pinch configuration (the bisector point lies between the two
/// feet), since only those open a passage.
pub fn enumerate_events<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> Vec<CriticalEvent<T>> {
    let m = p.edge_count();
    let n = q.edge_count();
    assert!(m >= 1 && n >= 1 && m + n > 2, "diagram too small for events");
    let mut out = collect_events(p, q, true);
    out.sort_by(CriticalEvent::cmp_order);
    out
}

/// Enumerates the full critical-value ladder for distance computation:
/// every corner, boundary and row/column opening with no exclusion.
pub fn candidate_events<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> Vec<CriticalEvent<T>> {
    let m = p.edge_count();
    let n = q.edge_count();
    assert!(m >= 1 && n >= 1, "both curves need at least one edge");
    let mut out = collect_events(p, q, false);
    out.sort_by(CriticalEvent::cmp_order);
    out
}

fn collect_events<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    exclude_corner_boundaries: bool,
) -> Vec<CriticalEvent<T>> {
    let m = p.edge_count();
    let n = q.edge_count();
    let mut out = Vec::new();

    let v_excluded = |c: usize, r: usize| {
        exclude_corner_boundaries && ((c == 0 && r == 0) || (c == m && r == n - 1))
    };
    let h_excluded = |c: usize, r: usize| {
        exclude_corner_boundaries && ((c == 0 && r == 0) || (c == m - 1 && r == n))
    };

    // Type A at the two endpoint corners, for the full candidate ladder
    // only: they are never splittable.
    if !exclude_corner_boundaries {
        for (i, j) in [(0, 0), (m, n)] {
            let pos = if j < n {
                left_pos(i, j, T::zero())
            } else {
                left_pos(i, n - 1, T::one())
            };
            out.push(CriticalEvent {
                kind: EventKind::A,
                value: p.vertex(i).distance(q.vertex(j)),
                end: pos,
                start: pos,
            });
        }
    }

    // Type B on vertical boundaries: vertex of P against edge of Q.
    for c in 0..=m {
        for r in 0..n {
            if v_excluded(c, r) {
                continue;
            }
            let (value, offset) = type_b_value(p.vertex(c), q.edge(r));
            let pos = left_pos(c, r, offset);
            out.push(CriticalEvent {
                kind: EventKind::B,
                value,
                end: pos,
                start: pos,
            });
        }
    }
    // Type B on horizontal boundaries: vertex of Q against edge of P.
    for c in 0..m {
        for r in 0..=n {
            if h_excluded(c, r) {
                continue;
            }
            let (value, offset) = type_b_value(q.vertex(r), p.edge(c));
            let pos = bottom_pos(c, r, offset);
            out.push(CriticalEvent {
                kind: EventKind::B,
                value,
                end: pos,
                start: pos,
            });
        }
    }
    // Type C row events: two vertices of P pinching an edge of Q. The
    // bisector point opens a passage only when it is the lower end of the
    // first vertex's free interval and the upper end of the second's, that
    // is, when it lies between their feet on the edge.
    for r in 0..n {
        let seg = q.edge(r);
        for a in 0..=m {
            for b in (a + 1)..=m {
                let u = p.vertex(a);
                let w = p.vertex(b);
                if u == w || v_excluded(a, r) || v_excluded(b, r) {
                    continue;
                }
                if let Some((value, offset)) = type_c_value(u, w, seg) {
                    if seg.project(w) <= offset && offset <= seg.project(u) {
                        out.push(CriticalEvent {
                            kind: EventKind::C,
                            value,
                            end: left_pos(b, r, offset),
                            start: left_pos(a, r, offset),
                        });
                    }
                }
            }
        }
    }
    // Type C column events: two vertices of Q pinching an edge of P.
    for c in 0..m {
        let seg = p.edge(c);
        for a in 0..=n {
            for b in (a + 1)..=n {
                let u = q.vertex(a);
                let w = q.vertex(b);
                if u == w || h_excluded(c, a) || h_excluded(c, b) {
                    continue;
                }
                if let Some((value, offset)) = type_c_value(u, w, seg) {
                    if seg.project(w) <= offset && offset <= seg.project(u) {
                        out.push(CriticalEvent {
                            kind: EventKind::C,
                            value,
                            end: bottom_pos(c, b, offset),
                            start: bottom_pos(c, a, offset),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Among same-value type-C events ending at the same boundary, keeps only
/// the one starting at the rightmost column (row events) or highest row
/// (column events). Type-B events coincide with their boundary and pass
/// through unchanged.
pub fn dedup_same_boundary<T: Scalar>(events: &[CriticalEvent<T>]) -> Vec<CriticalEvent<T>> {
    let mut keep = vec![true; events.len()];
    for (i, e) in events.iter().enumerate() {
        if e.kind != EventKind::C || !keep[i] {
            continue;
        }
        for (j, f) in events.iter().enumerate().skip(i + 1) {
            if f.kind != EventKind::C || !keep[j] {
                continue;
            }
            let same_boundary = e.end.side == f.end.side
                && e.end.col == f.end.col
                && e.end.row == f.end.row;
            if !same_boundary {
                continue;
            }
            if f.start_line() > e.start_line() {
                keep[i] = false;
            } else {
                keep[j] = false;
            }
        }
    }
    events
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(e, _)| *e)
        .collect()
}

/// Relative tolerance at which two event values count as one critical value.
pub(crate) fn value_group_tolerance<T: Scalar>(value: T) -> T {
    T::from(1e-9).unwrap() * value.max(T::one())
}

/// Partitions a sorted event list into concurrency groups: runs of values
/// whose neighbours are closer than the grouping tolerance.
pub(crate) fn group_ranges<T: Scalar>(events: &[CriticalEvent<T>]) -> Vec<(usize, usize)> {
    let mut ranges = Vec::new();
    let mut start = 0;
    for i in 1..=events.len() {
        let split = i == events.len() || {
            let prev = events[i - 1].value;
            let cur = events[i].value;
            cur - prev > value_group_tolerance(cur)
        };
        if split {
            ranges.push((start, i));
            start = i;
        }
    }
    ranges
}
