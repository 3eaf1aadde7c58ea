//! Independent brute-force verifiers.
//!
//! These are the ground truth the fast algorithms are tested against: a
//! bottleneck dynamic program and full path enumeration for grids, and a
//! subcurve-by-subcurve Fréchet check for continuous matchings. They stay
//! deliberately naive.

use crate::continuous::{frechet_distance, matching_max_distance, ParamMatching};
use crate::curve::{Curve, ParamPoint};
use crate::discrete::{GridNode, MatchGrid, PathMax};
use crate::error::Error;
use crate::Scalar;

/// Absolute tolerance for distance comparisons during verification; the
/// test corpus keeps coordinates at unit scale so this is meaningful.
pub fn verification_tolerance<T: Scalar>() -> T {
    T::from(1e-9).unwrap()
}

/// One verification failure: the witness range, what the independent
/// computation expected and what the matching delivered.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure<T> {
    pub witness: (usize, usize),
    pub expected: T,
    pub observed: T,
}

/// Outcome of a verification run; `passed` holds exactly when no failures
/// were recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    pub failures: Vec<Failure<T>>,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Minimum over monotone paths from `s` to `t` of the maximum node value,
/// by dynamic programming over the subrectangle.
///
/// With `include_first` false the first node is left out of every maximum,
/// which is the induction invariant of the tree construction; a one-node
/// path then has the empty maximum.
pub fn bottleneck_path_value<T: Scalar>(
    g: &MatchGrid<T>,
    s: GridNode,
    t: GridNode,
    include_first: bool,
) -> Result<PathMax<T>, Error> {
    if s.0 > t.0 || s.1 > t.1 {
        return Err(Error::domain(format!(
            "bottleneck endpoints {s:?} → {t:?} are not componentwise ordered"
        )));
    }
    if t.0 >= g.cols() || t.1 >= g.rows() {
        return Err(Error::domain("bottleneck endpoint outside the grid"));
    }
    let w = t.0 - s.0 + 1;
    let h = t.1 - s.1 + 1;
    let mut dp: Vec<PathMax<T>> = vec![PathMax::Empty; w * h];
    for dj in 0..h {
        for di in 0..w {
            let node = (s.0 + di, s.1 + dj);
            let v = g.value(node);
            let cell = if di == 0 && dj == 0 {
                if include_first {
                    PathMax::Value(v)
                } else {
                    PathMax::Empty
                }
            } else {
                let mut best: Option<PathMax<T>> = None;
                let mut consider = |cand: PathMax<T>| {
                    best = Some(match best {
                        None => cand,
                        Some(b) => {
                            if cand.cmp_max(b).is_lt() {
                                cand
                            } else {
                                b
                            }
                        }
                    });
                };
                if di > 0 {
                    consider(dp[dj * w + di - 1]);
                }
                if dj > 0 {
                    consider(dp[(dj - 1) * w + di]);
                }
                if di > 0 && dj > 0 {
                    consider(dp[(dj - 1) * w + di - 1]);
                }
                best.unwrap().with(v)
            };
            dp[dj * w + di] = cell;
        }
    }
    Ok(dp[w * h - 1])
}

/// All monotone right/up/diagonal paths from `s` to `t`. Guarded to
/// subrectangles of at most 5×5 nodes.
pub fn enumerate_monotone_paths<T: Scalar>(
    g: &MatchGrid<T>,
    s: GridNode,
    t: GridNode,
) -> Result<Vec<Vec<GridNode>>, Error> {
    if s.0 > t.0 || s.1 > t.1 {
        return Err(Error::domain("path endpoints are not componentwise ordered"));
    }
    if t.0 >= g.cols() || t.1 >= g.rows() {
        return Err(Error::domain("path endpoint outside the grid"));
    }
    if t.0 - s.0 + 1 > 5 || t.1 - s.1 + 1 > 5 {
        return Err(Error::guard("path enumeration limited to 5×5 nodes"));
    }
    let mut out = Vec::new();
    let mut stack = vec![s];
    fn rec(
        cur: GridNode,
        t: GridNode,
        stack: &mut Vec<GridNode>,
        out: &mut Vec<Vec<GridNode>>,
    ) {
        if cur == t {
            out.push(stack.clone());
            return;
        }
        let steps = [(1usize, 0usize), (0, 1), (1, 1)];
        for (di, dj) in steps {
            let next = (cur.0 + di, cur.1 + dj);
            if next.0 <= t.0 && next.1 <= t.1 {
                stack.push(next);
                rec(next, t, stack, out);
                stack.pop();
            }
        }
    }
    rec(s, t, &mut stack, &mut out);
    Ok(out)
}

/// Checks a grid path for local correctness: every contiguous subpath's
/// maximum equals the bottleneck optimum between its endpoints.
pub fn verify_lc_discrete<T: Scalar>(
    g: &MatchGrid<T>,
    path: &[GridNode],
) -> Result<VerificationReport<T>, Error> {
    if path.is_empty() {
        return Err(Error::domain("empty grid path"));
    }
    for node in path {
        if node.0 >= g.cols() || node.1 >= g.rows() {
            return Err(Error::domain("path node outside the grid"));
        }
    }
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let ok = b.0 >= a.0 && b.1 >= a.1 && b.0 - a.0 <= 1 && b.1 - a.1 <= 1 && b != a;
        if !ok {
            return Err(Error::domain(format!(
                "path step {a:?} → {b:?} is not a monotone grid step"
            )));
        }
    }
    let mut failures = Vec::new();
    // Prefix maxima make the subpath maximum O(1) per pair.
    for t1 in 0..path.len() {
        let mut observed = T::zero();
        for (t2, node) in path.iter().enumerate().skip(t1) {
            observed = observed.max(g.value(*node));
            if t2 < t1 {
                continue;
            }
            let expected = bottleneck_path_value(g, path[t1], *node, true)?
                .value()
                .expect("non-empty path maximum");
            if observed != expected {
                failures.push(Failure {
                    witness: (t1, t2),
                    expected,
                    observed,
                });
            }
        }
    }
    Ok(VerificationReport { failures })
}

/// Checks a continuous matching for local correctness: for every ordered
/// pair of path vertices, the maximum matched distance over that range must
/// equal the Fréchet distance of the cut subcurves, to within
/// [`verification_tolerance`].
///
/// Vertex pairs suffice because the matching is piecewise linear per cell
/// and the matched distance is convex on each linear piece, so every
/// subrange maximum is attained at a path vertex; correctness on vertex
/// pairs extends to interior parameters by continuity. Straight multi-cell
/// pieces (which arise when one curve is a single point) are subdivided at
/// integer crossings first so the argument applies.
pub fn verify_lc_continuous<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    matching: &ParamMatching<T>,
) -> Result<VerificationReport<T>, Error> {
    // Re-validate (and normalize) through the public constructor so
    // hand-built paths get the same scrutiny as computed ones.
    let normalized = subdivide_straight_pieces(p, q, matching)?;
    let path = normalized.path();
    let tol = verification_tolerance::<T>();
    let mut failures = Vec::new();
    for a in 0..path.len() {
        for b in a..path.len() {
            let observed = matching_max_distance(p, q, &normalized, a, b)?;
            let sub_p = p.subcurve(path[a].x, path[b].x)?;
            let sub_q = q.subcurve(path[a].y, path[b].y)?;
            let expected = frechet_distance(&sub_p, &sub_q);
            if (observed - expected).abs() > tol {
                failures.push(Failure {
                    witness: (a, b),
                    expected,
                    observed,
                });
            }
        }
    }
    Ok(VerificationReport { failures })
}

/// Inserts integer crossings into axis-aligned path pieces so that piece
/// maxima are attained at stored vertices even on degenerate diagrams.
fn subdivide_straight_pieces<T: Scalar>(
    p: &Curve<T>,
    q: &Curve<T>,
    matching: &ParamMatching<T>,
) -> Result<ParamMatching<T>, Error> {
    let mut path: Vec<ParamPoint<T>> = Vec::with_capacity(matching.path().len());
    for &pt in matching.path() {
        if let Some(&last) = path.last() {
            if last.x == pt.x && last.y != pt.y {
                let mut k = last.y.floor() + T::one();
                while k < pt.y {
                    path.push(ParamPoint::new(pt.x, k));
                    k = k + T::one();
                }
            } else if last.y == pt.y && last.x != pt.x {
                let mut k = last.x.floor() + T::one();
                while k < pt.x {
                    path.push(ParamPoint::new(k, pt.y));
                    k = k + T::one();
                }
            }
        }
        path.push(pt);
    }
    ParamMatching::new(p, q, path)
}
