//! Discrete locally correct Fréchet matchings in O(mn).
//!
//! Vertices of the two curves form a grid of pairwise distances; a discrete
//! matching is a monotone path of grid nodes from `(0, 0)` to `(m, n)`. The
//! dynamic program for the discrete Fréchet distance yields the optimal
//! bottleneck, but not a path that is optimal on all of its subpaths. The
//! [`MatchTree`] builds such a path incrementally: every grid node is
//! attached to the candidate parent with the lowest maximum value on the
//! tree path to their nearest common ancestor, excluding the ancestor
//! itself. Maintaining that comparison in constant time is what the face,
//! sink and shortcut machinery below is for.
//!
//! Terminology, relative to the already-inserted region of the grid:
//!
//! - a *growth* node still has an uninserted grid neighbour; growth nodes
//!   form a staircase along the insertion frontier;
//! - a *living* node is a non-growth ancestor of a growth node; a *dead*
//!   node is neither, and dead paths are pruned when the insertion sweep
//!   encloses them;
//! - a *face* is the region enclosed between the tree paths of two
//!   neighbouring growth nodes; its *sink* is the unique node of the face
//!   in the lowest column and row, where the two paths join;
//! - each node keeps up to two *shortcuts*, one per face flanking the
//!   segment to its parent, holding the face's sink and the maximum value
//!   on the path from the node to that sink (sink excluded, node included).
//!
//! Removing a dead path merges its two flanking faces, and the shortcuts
//! that pointed at the vanished sink are extended toward the surviving one;
//! each node is on the receiving end of at most three such extensions over
//! a whole run, which keeps the construction linear in the grid size.

use std::cmp::Ordering;

use crate::curve::Curve;
use crate::error::Error;
use crate::Scalar;

/// Grid node addressed as `(column, row)`.
pub type GridNode = (usize, usize);

/// Maximum over a possibly empty path of values; the empty maximum compares
/// strictly below every real value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathMax<T> {
    Empty,
    Value(T),
}

impl<T: Scalar> PathMax<T> {
    pub fn value(self) -> Option<T> {
        match self {
            PathMax::Empty => None,
            PathMax::Value(v) => Some(v),
        }
    }

    /// Maximum of the two path maxima.
    pub fn combine(self, other: Self) -> Self {
        match (self, other) {
            (PathMax::Empty, o) => o,
            (s, PathMax::Empty) => s,
            (PathMax::Value(a), PathMax::Value(b)) => PathMax::Value(a.max(b)),
        }
    }

    /// Extends the path by one node of value `v`.
    pub fn with(self, v: T) -> Self {
        self.combine(PathMax::Value(v))
    }

    pub fn cmp_max(self, other: Self) -> Ordering {
        match (self, other) {
            (PathMax::Empty, PathMax::Empty) => Ordering::Equal,
            (PathMax::Empty, PathMax::Value(_)) => Ordering::Less,
            (PathMax::Value(_), PathMax::Empty) => Ordering::Greater,
            (PathMax::Value(a), PathMax::Value(b)) => {
                a.partial_cmp(&b).expect("grid values are finite")
            }
        }
    }
}

/// Grid of non-negative vertex-pair distances; `(0, 0)` is the bottom-left
/// node and `(m, n)` the top-right one.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchGrid<T> {
    cols: usize,
    rows: usize,
    values: Vec<T>,
}

impl<T: Scalar> MatchGrid<T> {
    /// Builds a grid from raw values (row-major, index `row * cols + col`).
    ///
    /// The tree machinery only needs non-negative finite values, so tests
    /// may feed arbitrary grids here.
    pub fn from_values(cols: usize, rows: usize, values: Vec<T>) -> Result<Self, Error> {
        if cols == 0 || rows == 0 || values.len() != cols * rows {
            return Err(Error::format(format!(
                "grid dimensions {cols}×{rows} do not match {} values",
                values.len()
            )));
        }
        for v in &values {
            if !(*v >= T::zero() && v.is_finite()) {
                return Err(Error::format("grid values must be non-negative and finite"));
            }
        }
        Ok(MatchGrid { cols, rows, values })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn value(&self, node: GridNode) -> T {
        self.values[node.1 * self.cols + node.0]
    }

    pub fn top_right(&self) -> GridNode {
        (self.cols - 1, self.rows - 1)
    }
}

/// Grid of pairwise vertex distances of two curves.
pub fn build_grid<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> MatchGrid<T> {
    let cols = p.vertices().len();
    let rows = q.vertices().len();
    let mut values = Vec::with_capacity(cols * rows);
    for j in 0..rows {
        for i in 0..cols {
            values.push(p.vertex(i).distance(q.vertex(j)));
        }
    }
    MatchGrid { cols, rows, values }
}

/// Discrete Fréchet distance: minimum over monotone grid paths of the
/// maximum node value, by dynamic programming.
pub fn discrete_frechet<T: Scalar>(g: &MatchGrid<T>) -> T {
    let (cols, rows) = (g.cols, g.rows);
    let mut dp = vec![T::zero(); cols * rows];
    for j in 0..rows {
        for i in 0..cols {
            let v = g.value((i, j));
            let best_prev = match (i, j) {
                (0, 0) => None,
                (_, 0) => Some(dp[i - 1]),
                (0, _) => Some(dp[(j - 1) * cols]),
                _ => {
                    let left = dp[j * cols + i - 1];
                    let below = dp[(j - 1) * cols + i];
                    let diag = dp[(j - 1) * cols + i - 1];
                    Some(left.min(below).min(diag))
                }
            };
            dp[j * cols + i] = match best_prev {
                Some(b) => b.max(v),
                None => v,
            };
        }
    }
    dp[rows * cols - 1]
}

/// Conceptual state of a tree node; computed lazily from the structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeStatus {
    Growth,
    Living,
    Dead,
    Removed,
}

/// Which face of the parent segment a shortcut belongs to, looking from the
/// node toward its parent: `Left` faces and `Right` faces never swap as the
/// path bends because tree paths are monotone toward the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSide {
    Left,
    Right,
}

/// Cached link to the sink of a face, with the maximum value on the tree
/// path from the owning node to the sink (sink excluded, owner included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shortcut<T> {
    pub sink: GridNode,
    pub max: PathMax<T>,
}

/// Tie-breaking order among the candidate parents of `(i, j)`.
///
/// Only the default (left neighbour, then diagonal, then below) yields
/// locally correct paths in general; the alternatives are selectable so
/// regression tests can demonstrate where they fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParentPreference {
    /// `G[i−1,j] ≻ G[i−1,j−1] ≻ G[i,j−1]`.
    #[default]
    LeftDiagonalBelow,
    /// Diagonal preferred over both others.
    DiagonalFirst,
    /// Diagonal preferred over neither.
    DiagonalLast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Candidate {
    Left,
    Diagonal,
    Below,
}

impl ParentPreference {
    fn rank(self, c: Candidate) -> u8 {
        match (self, c) {
            (ParentPreference::LeftDiagonalBelow, Candidate::Left) => 0,
            (ParentPreference::LeftDiagonalBelow, Candidate::Diagonal) => 1,
            (ParentPreference::LeftDiagonalBelow, Candidate::Below) => 2,
            (ParentPreference::DiagonalFirst, Candidate::Diagonal) => 0,
            (ParentPreference::DiagonalFirst, Candidate::Left) => 1,
            (ParentPreference::DiagonalFirst, Candidate::Below) => 2,
            (ParentPreference::DiagonalLast, Candidate::Left) => 0,
            (ParentPreference::DiagonalLast, Candidate::Below) => 1,
            (ParentPreference::DiagonalLast, Candidate::Diagonal) => 2,
        }
    }
}

#[derive(Debug, Clone)]
struct NodeState<T> {
    inserted: bool,
    removed: bool,
    parent: Option<GridNode>,
    children: Vec<GridNode>,
    sc_left: Option<Shortcut<T>>,
    sc_right: Option<Shortcut<T>>,
}

impl<T> Default for NodeState<T> {
    fn default() -> Self {
        NodeState {
            inserted: false,
            removed: false,
            parent: None,
            children: Vec::new(),
            sc_left: None,
            sc_right: None,
        }
    }
}

/// Result of one nearest-common-ancestor query between two candidates:
/// both path maxima (candidate included, ancestor excluded) and the
/// ancestor itself.
#[derive(Debug, Clone, Copy)]
struct PairMax<T> {
    first: PathMax<T>,
    second: PathMax<T>,
    nca: GridNode,
}

/// Incrementally built tree over a grid whose every ancestor-to-descendant
/// path is optimal for the maximum excluding its first node.
#[derive(Debug, Clone)]
pub struct MatchTree<T> {
    cols: usize,
    rows: usize,
    nodes: Vec<NodeState<T>>,
    preference: ParentPreference,
    extensions: u64,
}

impl<T: Scalar> MatchTree<T> {
    /// Tree seeded with the root and the full first-row and first-column
    /// chains, ready for row-major insertion of the interior.
    pub fn new(grid: &MatchGrid<T>, preference: ParentPreference) -> Self {
        let (cols, rows) = (grid.cols, grid.rows);
        let mut tree = MatchTree {
            cols,
            rows,
            nodes: vec![NodeState::default(); cols * rows],
            preference,
            extensions: 0,
        };
        tree.node_mut((0, 0)).inserted = true;
        for i in 1..cols {
            tree.link((i, 0), (i - 1, 0));
        }
        for j in 1..rows {
            tree.link((0, j), (0, j - 1));
        }
        tree
    }

    /// Runs the full insertion sweep.
    pub fn build(grid: &MatchGrid<T>, preference: ParentPreference) -> Self {
        let mut tree = MatchTree::new(grid, preference);
        for j in 1..grid.rows {
            for i in 1..grid.cols {
                tree.insert(grid, i, j);
            }
        }
        tree
    }

    fn idx(&self, node: GridNode) -> usize {
        debug_assert!(node.0 < self.cols && node.1 < self.rows);
        node.1 * self.cols + node.0
    }

    fn node(&self, node: GridNode) -> &NodeState<T> {
        &self.nodes[self.idx(node)]
    }

    fn node_mut(&mut self, node: GridNode) -> &mut NodeState<T> {
        let idx = self.idx(node);
        &mut self.nodes[idx]
    }

    fn link(&mut self, child: GridNode, parent: GridNode) {
        {
            let c = self.node_mut(child);
            c.inserted = true;
            c.parent = Some(parent);
        }
        self.node_mut(parent).children.push(child);
    }

    pub fn is_inserted(&self, node: GridNode) -> bool {
        self.node(node).inserted
    }

    pub fn parent(&self, node: GridNode) -> Option<GridNode> {
        self.node(node).parent
    }

    pub fn children(&self, node: GridNode) -> &[GridNode] {
        &self.node(node).children
    }

    pub fn shortcut(&self, node: GridNode, side: FaceSide) -> Option<Shortcut<T>> {
        match side {
            FaceSide::Left => self.node(node).sc_left,
            FaceSide::Right => self.node(node).sc_right,
        }
    }

    /// Total shortcut extensions performed by dead-path removal so far.
    pub fn extension_count(&self) -> u64 {
        self.extensions
    }

    /// A node is a growth node while some grid neighbour (including
    /// diagonal neighbours) has not been inserted yet.
    pub fn is_growth(&self, node: GridNode) -> bool {
        if self.node(node).removed || !self.node(node).inserted {
            return false;
        }
        let (i, j) = node;
        for dj in -1i64..=1 {
            for di in -1i64..=1 {
                if di == 0 && dj == 0 {
                    continue;
                }
                let ni = i as i64 + di;
                let nj = j as i64 + dj;
                if ni < 0 || nj < 0 || ni >= self.cols as i64 || nj >= self.rows as i64 {
                    continue;
                }
                if !self.node((ni as usize, nj as usize)).inserted {
                    return true;
                }
            }
        }
        false
    }

    /// Lazily computed node status. Detection of dead nodes walks the
    /// children, so this is meant for inspection and tests, not hot paths.
    pub fn status(&self, node: GridNode) -> NodeStatus {
        if self.node(node).removed {
            return NodeStatus::Removed;
        }
        if self.is_growth(node) {
            return NodeStatus::Growth;
        }
        fn has_growth_descendant<T: Scalar>(tree: &MatchTree<T>, node: GridNode) -> bool {
            tree.children(node)
                .iter()
                .any(|&c| tree.is_growth(c) || has_growth_descendant(tree, c))
        }
        if has_growth_descendant(self, node) {
            NodeStatus::Living
        } else {
            NodeStatus::Dead
        }
    }

    fn depth(node: GridNode) -> usize {
        node.0 + node.1
    }

    /// Path maxima from two candidate-parent nodes to their nearest common
    /// ancestor, each excluding the ancestor's value, in constant time.
    ///
    /// `a` and `b` must be horizontally, vertically or diagonally adjacent
    /// nodes in a candidate-parent configuration; anything else is a usage
    /// bug and panics.
    pub fn nca_max(&self, grid: &MatchGrid<T>, a: GridNode, b: GridNode) -> (PathMax<T>, PathMax<T>) {
        assert!(
            self.node(a).inserted && !self.node(a).removed,
            "query node not in tree"
        );
        assert!(
            self.node(b).inserted && !self.node(b).removed,
            "query node not in tree"
        );
        let (ai, aj) = (a.0 as i64, a.1 as i64);
        let (bi, bj) = (b.0 as i64, b.1 as i64);
        let pm = match (bi - ai, bj - aj) {
            (0, -1) => self.pair_vertical(grid, a, b),
            (0, 1) => {
                let r = self.pair_vertical(grid, b, a);
                return (r.second, r.first);
            }
            (1, 0) => self.pair_horizontal(grid, a, b),
            (-1, 0) => {
                let r = self.pair_horizontal(grid, b, a);
                return (r.second, r.first);
            }
            (1, -1) => self.pair_diagonal(grid, a, b),
            (-1, 1) => {
                let r = self.pair_diagonal(grid, b, a);
                return (r.second, r.first);
            }
            _ => panic!("nodes {a:?} and {b:?} are not candidate-parent neighbours"),
        };
        (pm.first, pm.second)
    }

    /// Pair (upper, lower) with `lower` directly below `upper`; the face
    /// between their paths flanks `upper` on its left and `lower` on its
    /// right.
    fn pair_vertical(&self, grid: &MatchGrid<T>, upper: GridNode, lower: GridNode) -> PairMax<T> {
        if self.parent(upper) == Some(lower) {
            return PairMax {
                first: PathMax::Value(grid.value(upper)),
                second: PathMax::Empty,
                nca: lower,
            };
        }
        let sa = self.node(upper).sc_left.expect("upper face shortcut");
        if sa.sink == lower {
            return PairMax {
                first: sa.max,
                second: PathMax::Empty,
                nca: lower,
            };
        }
        let sd = self.node(lower).sc_right.expect("lower face shortcut");
        debug_assert_eq!(sa.sink, sd.sink, "face sinks disagree");
        PairMax {
            first: sa.max,
            second: sd.max,
            nca: sa.sink,
        }
    }

    /// Pair (left, right) with `right` directly right of `left`.
    fn pair_horizontal(&self, grid: &MatchGrid<T>, left: GridNode, right: GridNode) -> PairMax<T> {
        if self.parent(right) == Some(left) {
            return PairMax {
                first: PathMax::Empty,
                second: PathMax::Value(grid.value(right)),
                nca: left,
            };
        }
        let sb = self.node(right).sc_right.expect("right face shortcut");
        if sb.sink == left {
            return PairMax {
                first: PathMax::Empty,
                second: sb.max,
                nca: left,
            };
        }
        let sd = self.node(left).sc_left.expect("left face shortcut");
        debug_assert_eq!(sd.sink, sb.sink, "face sinks disagree");
        PairMax {
            first: sd.max,
            second: sb.max,
            nca: sd.sink,
        }
    }

    /// Diagonal pair (`upper` = `(i−1, j)`, `lower` = `(i, j−1)`), bridged
    /// through the node between them at `(i−1, j−1)`.
    fn pair_diagonal(&self, grid: &MatchGrid<T>, upper: GridNode, lower: GridNode) -> PairMax<T> {
        let mid = (upper.0, upper.1 - 1);
        debug_assert_eq!((lower.0, lower.1 + 1), (mid.0 + 1, mid.1 + 1));
        let up_linked = self.parent(upper) == Some(mid);
        let low_linked = self.parent(lower) == Some(mid);
        match (up_linked, low_linked) {
            (true, true) => PairMax {
                first: PathMax::Value(grid.value(upper)),
                second: PathMax::Value(grid.value(lower)),
                nca: mid,
            },
            (true, false) => {
                // upper's path runs through mid; NCA is the sink of the
                // face between mid's and lower's paths.
                let sb = self.node(lower).sc_right.expect("lower face shortcut");
                if sb.sink == mid {
                    return PairMax {
                        first: PathMax::Value(grid.value(upper)),
                        second: sb.max,
                        nca: mid,
                    };
                }
                let sd = self.node(mid).sc_left.expect("mid left shortcut");
                debug_assert_eq!(sd.sink, sb.sink);
                PairMax {
                    first: sd.max.with(grid.value(upper)),
                    second: sb.max,
                    nca: sd.sink,
                }
            }
            (false, true) => {
                let sa = self.node(upper).sc_left.expect("upper face shortcut");
                if sa.sink == mid {
                    return PairMax {
                        first: sa.max,
                        second: PathMax::Value(grid.value(lower)),
                        nca: mid,
                    };
                }
                let sd = self.node(mid).sc_right.expect("mid right shortcut");
                debug_assert_eq!(sd.sink, sa.sink);
                PairMax {
                    first: sa.max,
                    second: sd.max.with(grid.value(lower)),
                    nca: sa.sink,
                }
            }
            (false, false) => {
                let sa = self.node(upper).sc_left.expect("upper face shortcut");
                let sb = self.node(lower).sc_right.expect("lower face shortcut");
                let s1 = sa.sink;
                let s2 = sb.sink;
                if s1 == s2 {
                    return PairMax {
                        first: sa.max,
                        second: sb.max,
                        nca: s1,
                    };
                }
                if Self::depth(s1) > Self::depth(s2) {
                    // The NCA is s2; bridge upper's side across [s1, s2).
                    let bridge = self.node(s1).sc_left.expect("bridge shortcut");
                    debug_assert_eq!(bridge.sink, s2);
                    PairMax {
                        first: sa.max.combine(bridge.max),
                        second: sb.max,
                        nca: s2,
                    }
                } else {
                    let bridge = self.node(s2).sc_right.expect("bridge shortcut");
                    debug_assert_eq!(bridge.sink, s1);
                    PairMax {
                        first: sa.max,
                        second: sb.max.combine(bridge.max),
                        nca: s1,
                    }
                }
            }
        }
    }

    /// Attaches `(i, j)` to its best candidate parent, prunes the diagonal's
    /// dead path when it just left the frontier, and refreshes shortcuts.
    pub fn insert(&mut self, grid: &MatchGrid<T>, i: usize, j: usize) {
        assert!(
            i >= 1 && j >= 1 && i < self.cols && j < self.rows,
            "insertion out of grid interior"
        );
        let g = (i, j);
        let left = (i - 1, j);
        let diag = (i - 1, j - 1);
        let below = (i, j - 1);
        assert!(!self.node(g).inserted, "node inserted twice");
        for c in [left, diag, below] {
            assert!(
                self.node(c).inserted && !self.node(c).removed,
                "candidate parents must be in the tree"
            );
        }

        let q_ld = self.pair_vertical(grid, left, diag);
        let q_db = self.pair_horizontal(grid, diag, below);
        let q_lb = self.pair_diagonal(grid, left, below);

        let maxima = |x: Candidate, y: Candidate| -> (PathMax<T>, PathMax<T>) {
            match (x, y) {
                (Candidate::Left, Candidate::Diagonal) => (q_ld.first, q_ld.second),
                (Candidate::Diagonal, Candidate::Left) => (q_ld.second, q_ld.first),
                (Candidate::Diagonal, Candidate::Below) => (q_db.first, q_db.second),
                (Candidate::Below, Candidate::Diagonal) => (q_db.second, q_db.first),
                (Candidate::Left, Candidate::Below) => (q_lb.first, q_lb.second),
                (Candidate::Below, Candidate::Left) => (q_lb.second, q_lb.first),
                _ => unreachable!(),
            }
        };
        let beats = |x: Candidate, y: Candidate| -> bool {
            let (mx, my) = maxima(x, y);
            match mx.cmp_max(my) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.preference.rank(x) < self.preference.rank(y),
            }
        };
        let semi = if beats(Candidate::Left, Candidate::Diagonal) {
            Candidate::Left
        } else {
            Candidate::Diagonal
        };
        let best = if beats(semi, Candidate::Below) {
            semi
        } else {
            Candidate::Below
        };
        // Under the default order a universal winner exists because tree
        // paths cannot cross; the alternative orders break exactly this, so
        // only the default is checked.
        debug_assert!(
            self.preference != ParentPreference::LeftDiagonalBelow
                || [Candidate::Left, Candidate::Diagonal, Candidate::Below]
                    .into_iter()
                    .filter(|&c| c != best)
                    .all(|c| beats(best, c)),
            "candidate comparison is not consistent"
        );

        let chosen = match best {
            Candidate::Left => left,
            Candidate::Diagonal => diag,
            Candidate::Below => below,
        };
        self.link(g, chosen);

        if self.node(diag).children.is_empty() {
            debug_assert!(!self.is_growth(diag));
            self.retire_dead_path(diag);
        }

        // Shortcut creation, mirroring how faces closed around the new
        // square: the left/below neighbours gain their missing face
        // shortcut exactly when the diagonal is their parent, and the new
        // node gains one shortcut per enclosed face.
        let gv = grid.value(g);
        if self.parent(left) == Some(diag) {
            let sc = if self.parent(g) == Some(diag) || self.parent(below) == Some(diag) {
                Shortcut {
                    sink: diag,
                    max: PathMax::Value(grid.value(left)),
                }
            } else {
                let sd = self.node(diag).sc_left.expect("diagonal left shortcut");
                Shortcut {
                    sink: sd.sink,
                    max: sd.max.with(grid.value(left)),
                }
            };
            self.node_mut(left).sc_left = Some(sc);
        }
        if self.parent(below) == Some(diag) {
            let sc = if self.parent(g) == Some(diag) || self.parent(left) == Some(diag) {
                Shortcut {
                    sink: diag,
                    max: PathMax::Value(grid.value(below)),
                }
            } else {
                let sd = self.node(diag).sc_right.expect("diagonal right shortcut");
                Shortcut {
                    sink: sd.sink,
                    max: sd.max.with(grid.value(below)),
                }
            };
            self.node_mut(below).sc_right = Some(sc);
        }
        match best {
            Candidate::Diagonal => {
                let sc_left = if self.parent(below) == Some(diag) {
                    Shortcut {
                        sink: diag,
                        max: PathMax::Value(gv),
                    }
                } else {
                    let sd = self.node(diag).sc_left.expect("diagonal left shortcut");
                    Shortcut {
                        sink: sd.sink,
                        max: sd.max.with(gv),
                    }
                };
                let sc_right = if self.parent(left) == Some(diag) {
                    Shortcut {
                        sink: diag,
                        max: PathMax::Value(gv),
                    }
                } else {
                    let sd = self.node(diag).sc_right.expect("diagonal right shortcut");
                    Shortcut {
                        sink: sd.sink,
                        max: sd.max.with(gv),
                    }
                };
                let n = self.node_mut(g);
                n.sc_left = Some(sc_left);
                n.sc_right = Some(sc_right);
            }
            Candidate::Left => {
                self.node_mut(g).sc_left = Some(Shortcut {
                    sink: q_lb.nca,
                    max: q_lb.first.with(gv),
                });
            }
            Candidate::Below => {
                self.node_mut(g).sc_right = Some(Shortcut {
                    sink: q_lb.nca,
                    max: q_lb.second.with(gv),
                });
            }
        }
    }

    /// Removes the maximal all-dead path ending at `end` and extends the
    /// incoming shortcuts stranded at the surviving node across the merged
    /// faces.
    ///
    /// `end` must be the diagonal node that just left the frontier, so the
    /// growth nodes flanking the dead path sit directly above and to its
    /// right; the path of one of them hosts the shortcuts to extend. Paths
    /// that end in the highest row or rightmost column never reach this
    /// point: the sweep only retires the diagonal of an interior insertion.
    ///
    /// Panics if `end` is not dead.
    pub fn retire_dead_path(&mut self, end: GridNode) {
        assert!(
            self.node(end).inserted
                && !self.node(end).removed
                && !self.is_growth(end)
                && self.node(end).children.is_empty(),
            "retire_dead_path called on a non-dead node"
        );
        let left_anchor = (end.0, end.1 + 1);
        let below_anchor = (end.0 + 1, end.1);
        let s1 = self.node(end).sc_right.expect("dead node right shortcut").sink;
        let s2 = self.node(end).sc_left.expect("dead node left shortcut").sink;

        // Walk and unlink the dead suffix.
        let mut removed = 0usize;
        let mut cur = end;
        let survivor;
        loop {
            let parent = self.node(cur).parent.expect("dead paths never reach the root");
            {
                let p = self.node_mut(parent);
                p.children.retain(|&c| c != cur);
            }
            let n = self.node_mut(cur);
            n.removed = true;
            n.parent = None;
            n.sc_left = None;
            n.sc_right = None;
            removed += 1;
            if self.is_growth(parent) || !self.node(parent).children.is_empty() {
                survivor = parent;
                break;
            }
            cur = parent;
        }

        // Merge the two flanking faces: shortcuts that pointed at the
        // deeper sink are extended toward the shallower one.
        let before = self.extensions;
        if s1 != s2 {
            if Self::depth(s1) > Self::depth(s2) {
                debug_assert_eq!(survivor, s1);
                let bridge = self.node(s1).sc_left.expect("survivor bridge shortcut");
                debug_assert_eq!(bridge.sink, s2);
                let mut x = left_anchor;
                while x != s1 {
                    let sc = self.node(x).sc_left.expect("shortcut along merged face");
                    debug_assert_eq!(sc.sink, s1);
                    self.node_mut(x).sc_left = Some(Shortcut {
                        sink: s2,
                        max: sc.max.combine(bridge.max),
                    });
                    self.extensions += 1;
                    x = self.node(x).parent.expect("anchor path reaches the sink");
                }
            } else {
                debug_assert_eq!(survivor, s2);
                let bridge = self.node(s2).sc_right.expect("survivor bridge shortcut");
                debug_assert_eq!(bridge.sink, s1);
                let mut x = below_anchor;
                while x != s2 {
                    let sc = self.node(x).sc_right.expect("shortcut along merged face");
                    debug_assert_eq!(sc.sink, s2);
                    self.node_mut(x).sc_right = Some(Shortcut {
                        sink: s1,
                        max: sc.max.combine(bridge.max),
                    });
                    self.extensions += 1;
                    x = self.node(x).parent.expect("anchor path reaches the sink");
                }
            }
        } else {
            debug_assert_eq!(survivor, s1);
        }
        debug_assert!(
            (self.extensions - before) as usize <= 2 * removed + 1,
            "extension count exceeds the dead-path bound"
        );
    }

    /// Tree path between the root and `node`, root first.
    pub fn path_from_root(&self, node: GridNode) -> Vec<GridNode> {
        assert!(self.node(node).inserted && !self.node(node).removed);
        let mut path = vec![node];
        let mut cur = node;
        while let Some(p) = self.node(cur).parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Locally correct discrete matching of a raw grid: the tree path from
/// `(0, 0)` to the top-right node after the full insertion sweep.
pub fn discrete_lcfm_path<T: Scalar>(g: &MatchGrid<T>) -> Vec<GridNode> {
    let tree = MatchTree::build(g, ParentPreference::default());
    tree.path_from_root(g.top_right())
}

/// Locally correct discrete Fréchet matching of two curves, as a monotone
/// sequence of vertex-index pairs. Its maximum grid value equals the
/// discrete Fréchet distance exactly.
pub fn compute_discrete_lcfm<T: Scalar>(p: &Curve<T>, q: &Curve<T>) -> Vec<GridNode> {
    discrete_lcfm_path(&build_grid(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Point2;

    fn grid(cols: usize, rows: usize, vals: &[f64]) -> MatchGrid<f64> {
        MatchGrid::from_values(cols, rows, vals.to_vec()).unwrap()
    }

    /// Column-major helper mirroring how the examples in this crate's specs
    /// are written: `cols[i][j]` indexed by column then row.
    fn grid_cols(cols: &[&[f64]]) -> MatchGrid<f64> {
        let c = cols.len();
        let r = cols[0].len();
        let mut vals = vec![0.0; c * r];
        for (i, col) in cols.iter().enumerate() {
            for (j, v) in col.iter().enumerate() {
                vals[j * c + i] = *v;
            }
        }
        MatchGrid::from_values(c, r, vals).unwrap()
    }

    fn curve(pts: &[(f64, f64)]) -> Curve<f64> {
        Curve::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn build_grid_distances() {
        let p = curve(&[(0.0, 0.0), (1.0, 0.0)]);
        let q = curve(&[(0.0, 1.0)]);
        let g = build_grid(&p, &q);
        assert_eq!((g.cols(), g.rows()), (2, 1));
        assert_eq!(g.value((0, 0)), 1.0);
        assert!((g.value((1, 0)) - 2f64.sqrt()).abs() < 1e-15);

        let p = curve(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0)]);
        let g = build_grid(&p, &p);
        for i in 0..3 {
            assert_eq!(g.value((i, i)), 0.0);
        }
    }

    #[test]
    fn discrete_frechet_small_cases() {
        let g = grid_cols(&[&[0.0, 2.0], &[2.0, 1.0]]);
        assert_eq!(discrete_frechet(&g), 1.0);
        let g = grid(1, 1, &[7.5]);
        assert_eq!(discrete_frechet(&g), 7.5);
    }

    #[test]
    fn discrete_frechet_at_least_endpoints() {
        let g = grid_cols(&[&[3.0, 0.1], &[0.2, 2.0]]);
        let d = discrete_frechet(&g);
        assert!(d >= g.value((0, 0)).max(g.value((1, 1))));
    }

    #[test]
    fn grid_validation() {
        assert!(MatchGrid::from_values(2, 2, vec![0.0; 3]).is_err());
        assert!(MatchGrid::from_values(2, 1, vec![0.0, -1.0]).is_err());
        assert!(MatchGrid::<f64>::from_values(0, 1, vec![]).is_err());
    }

    #[test]
    fn diagonal_parent_wins_empty_sentinel() {
        // All finite maxima tie; the diagonal's empty path wins strictly.
        let g = grid_cols(&[&[0.0, 1.0], &[1.0, 1.0]]);
        let tree = MatchTree::build(&g, ParentPreference::default());
        assert_eq!(tree.parent((1, 1)), Some((0, 0)));
    }

    #[test]
    fn diagonal_beats_expensive_detours() {
        let g = grid_cols(&[&[0.0, 5.0], &[5.0, 1.0]]);
        let path = discrete_lcfm_path(&g);
        assert_eq!(path, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn left_preferred_on_finite_ties() {
        // At (2, 2) the left and below candidates both reach the root with
        // path maximum 1 while the diagonal's path costs 9; the tie goes to
        // the left neighbour under the default order.
        let g = grid_cols(&[
            &[0.0, 1.0, 9.0],
            &[1.0, 9.0, 1.0],
            &[9.0, 1.0, 0.0],
        ]);
        let tree = MatchTree::build(&g, ParentPreference::default());
        assert_eq!(tree.parent((2, 2)), Some((1, 2)));
        let path = tree.path_from_root((2, 2));
        assert_eq!(path, vec![(0, 0), (0, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn nca_max_parent_linked_sentinel() {
        let g = grid_cols(&[&[0.0, 2.0], &[7.0, 1.0]]);
        let tree = MatchTree::build(&g, ParentPreference::default());
        // (0,1) and (1,0) are children of the root chain: parent((0,1)) is
        // the root, so querying the vertical pair ((0,1), (0,0)) gives the
        // single-node path against the empty sentinel.
        let (a, b) = tree.nca_max(&g, (0, 1), (0, 0));
        assert_eq!(a, PathMax::Value(2.0));
        assert_eq!(b, PathMax::Empty);
        // Children of a common ancestor with single-node paths.
        let (a, b) = tree.nca_max(&g, (0, 1), (1, 0));
        assert_eq!(a, PathMax::Value(2.0));
        assert_eq!(b, PathMax::Value(7.0));
    }

    #[test]
    fn single_node_grid_yields_single_node_path() {
        let p = curve(&[(0.0, 0.0)]);
        let q = curve(&[(3.0, 4.0)]);
        assert_eq!(compute_discrete_lcfm(&p, &q), vec![(0, 0)]);
        let g = grid(1, 1, &[5.0]);
        assert_eq!(discrete_lcfm_path(&g), vec![(0, 0)]);
    }

    #[test]
    fn final_path_max_equals_dp() {
        let g = grid_cols(&[
            &[0.0, 3.0, 1.0, 4.0],
            &[2.0, 1.0, 5.0, 2.0],
            &[4.0, 2.0, 1.0, 3.0],
            &[1.0, 5.0, 2.0, 0.0],
        ]);
        let path = discrete_lcfm_path(&g);
        let max = path
            .iter()
            .map(|&nd| g.value(nd))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(max, discrete_frechet(&g));
        assert_eq!(path[0], (0, 0));
        assert_eq!(*path.last().unwrap(), (3, 3));
    }

    #[test]
    fn removal_keeps_surviving_paths_intact() {
        let g = grid_cols(&[
            &[0.0, 1.0, 2.0],
            &[1.0, 9.0, 1.0],
            &[2.0, 1.0, 0.0],
        ]);
        let mut tree = MatchTree::new(&g, ParentPreference::default());
        let mut snapshots: Vec<Vec<GridNode>> = Vec::new();
        for j in 1..g.rows() {
            for i in 1..g.cols() {
                tree.insert(&g, i, j);
                snapshots.push(tree.path_from_root((i, j)));
            }
        }
        // Every recorded root path stays monotone.
        for path in snapshots {
            for w in path.windows(2) {
                assert!(w[1].0 >= w[0].0 && w[1].1 >= w[0].1);
                assert!(w[1].0 - w[0].0 <= 1 && w[1].1 - w[0].1 <= 1);
            }
        }
    }

    #[test]
    fn statuses_reflect_frontier() {
        let g = grid_cols(&[&[0.0, 1.0, 2.0], &[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0]]);
        let mut tree = MatchTree::new(&g, ParentPreference::default());
        tree.insert(&g, 1, 1);
        assert_eq!(tree.status((1, 1)), NodeStatus::Growth);
        assert_eq!(tree.status((0, 0)), NodeStatus::Living);
        tree.insert(&g, 2, 1);
        assert_eq!(tree.status((1, 1)), NodeStatus::Growth);
        // (2, 0) sits in the rightmost column with no children: dead, but
        // never pruned because only interior diagonals trigger removal.
        assert_eq!(tree.status((2, 0)), NodeStatus::Dead);
        assert_eq!(tree.status((1, 0)), NodeStatus::Living);
    }

    #[test]
    fn retired_nodes_are_removed() {
        // (1, 1) attracts no children and is pruned when (2, 2) encloses it.
        let g = grid_cols(&[
            &[0.0, 1.0, 9.0],
            &[1.0, 9.0, 1.0],
            &[9.0, 1.0, 0.0],
        ]);
        let tree = MatchTree::build(&g, ParentPreference::default());
        assert_eq!(tree.status((1, 1)), NodeStatus::Removed);
        assert_eq!(tree.parent((1, 1)), None);
    }
}
