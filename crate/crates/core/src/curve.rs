//! Polygonal curves in the plane and their parameter space.
//!
//! A curve with vertices `v_0, …, v_m` is the continuous map on `[0, m]`
//! that linearly interpolates vertex `i` to `i + 1` over `[i, i + 1]`.
//! Everything else in this crate (free-space predicates, matchings, grids)
//! is phrased in terms of these parameters.

use std::ops::{Add, Mul, Sub};

use crate::error::Error;
use crate::Scalar;

/// Point (or displacement) in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// Euclidean distance. This is the one distance routine used everywhere
    /// (event values, grid values, verification), so equal geometry always
    /// yields bit-equal values.
    pub fn distance(self, other: Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Affine interpolation `(1-t)·self + t·other`.
    pub fn lerp(self, other: Self, t: T) -> Self {
        let one = T::one();
        Point2::new(
            (one - t) * self.x + t * other.x,
            (one - t) * self.y + t * other.y,
        )
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Point2<T>;
    fn add(self, rhs: Self) -> Self {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Point2<T>;
    fn sub(self, rhs: Self) -> Self {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Point2<T>;
    fn mul(self, s: T) -> Self {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Directed line segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2<T> {
    pub start: Point2<T>,
    pub end: Point2<T>,
}

impl<T: Scalar> Segment2<T> {
    pub fn new(start: Point2<T>, end: Point2<T>) -> Self {
        Segment2 { start, end }
    }

    pub fn direction(self) -> Point2<T> {
        self.end - self.start
    }

    pub fn is_degenerate(self) -> bool {
        self.start == self.end
    }

    /// Point at parameter `t ∈ [0, 1]`; endpoints are returned exactly.
    pub fn point_at(self, t: T) -> Point2<T> {
        if t == T::zero() {
            self.start
        } else if t == T::one() {
            self.end
        } else {
            self.start.lerp(self.end, t)
        }
    }

    /// Parameter of the point on the supporting line closest to `p`
    /// (unclamped).
    pub fn project(self, p: Point2<T>) -> T {
        let d = self.direction();
        (p - self.start).dot(d) / d.dot(d)
    }
}

/// Point in the parameter space `[0, m] × [0, n]` of a curve pair.
///
/// `x` addresses the first curve, `y` the second. Matchings are monotone
/// polylines of these points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> ParamPoint<T> {
    pub fn new(x: T, y: T) -> Self {
        ParamPoint { x, y }
    }
}

/// Two interpolated subcurve vertices closer than this are merged.
fn merge_tolerance<T: Scalar>() -> T {
    T::from(1e-12).unwrap()
}

/// Polygonal curve with at least one vertex and no zero-length edges.
///
/// A single vertex is allowed: it is the constant map on `[0, 0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> Curve<T> {
    /// Validates raw points into a curve: consecutive duplicates are
    /// collapsed, so splits landing exactly on vertices compose cleanly.
    pub fn new(points: Vec<Point2<T>>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::format("a curve needs at least one point"));
        }
        let mut vertices: Vec<Point2<T>> = Vec::with_capacity(points.len());
        for (idx, p) in points.into_iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::format(format!(
                    "point {idx} has a non-finite coordinate"
                )));
            }
            if vertices.last() != Some(&p) {
                vertices.push(p);
            }
        }
        Ok(Curve { vertices })
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2<T> {
        self.vertices[i]
    }

    /// Number of edges `m`; zero for a single point.
    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Edge `i` as a segment, `0 ≤ i < m`.
    pub fn edge(&self, i: usize) -> Segment2<T> {
        Segment2::new(self.vertices[i], self.vertices[i + 1])
    }

    /// Upper end of the parameter range as a scalar.
    pub fn param_end(&self) -> T {
        T::from(self.edge_count()).unwrap()
    }

    /// Evaluates the curve at parameter `s ∈ [0, m]`.
    ///
    /// Integer parameters return the vertex exactly, with no floating-point
    /// drift.
    pub fn point_at(&self, s: T) -> Result<Point2<T>, Error> {
        let m = self.param_end();
        if !(s >= T::zero() && s <= m) {
            return Err(Error::domain(format!(
                "parameter {s} outside [0, {m}]"
            )));
        }
        let floor = s.floor();
        if s == floor {
            let i = floor.to_usize().unwrap();
            return Ok(self.vertices[i]);
        }
        let i = floor.to_usize().unwrap();
        Ok(self.edge(i).point_at(s - floor))
    }

    /// Extracts the subcurve between parameters `a ≤ b`.
    ///
    /// The result runs from `point_at(a)` to `point_at(b)` and keeps every
    /// vertex strictly between them; `a == b` yields a single-point curve.
    pub fn subcurve(&self, a: T, b: T) -> Result<Curve<T>, Error> {
        if a > b {
            return Err(Error::domain(format!("subcurve range reversed: {a} > {b}")));
        }
        let start = self.point_at(a)?;
        let end = self.point_at(b)?;
        let mut vertices = vec![start];
        let mut i = a.floor().to_usize().unwrap() + 1;
        let b_floor = b.floor();
        let upper = if b == b_floor {
            b_floor.to_usize().unwrap()
        } else {
            b_floor.to_usize().unwrap() + 1
        };
        let tol = merge_tolerance::<T>();
        while i < upper {
            let v = self.vertices[i];
            if vertices.last().unwrap().distance(v) > tol {
                vertices.push(v);
            }
            i += 1;
        }
        if vertices.last().unwrap().distance(end) > tol {
            vertices.push(end);
        }
        Ok(Curve { vertices })
    }

    /// Longest edge length; zero for a point curve.
    pub fn max_edge_length(&self) -> T {
        let mut best = T::zero();
        for i in 0..self.edge_count() {
            let len = self.vertices[i].distance(self.vertices[i + 1]);
            if len > best {
                best = len;
            }
        }
        best
    }
}
