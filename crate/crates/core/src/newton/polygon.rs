use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::poly::IntegerPolynomial;

/// A lattice point `(x, y)` of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    #[serde(with = "crate::decimal")]
    pub x: u64,
    #[serde(with = "crate::decimal")]
    pub y: u64,
}

impl Point {
    pub const fn new(x: u64, y: u64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(u64, u64)> for Point {
    fn from((x, y): (u64, u64)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    #[serde(with = "crate::decimal")]
    pub p: u64,
    #[serde(with = "crate::decimal")]
    pub phi_degree: u64,
    /// `(i, ν_p(aᵢ))` for each nonzero `aᵢ` of the φ-expansion.
    pub points: Vec<Point>,
    /// Lower convex hull, by increasing abscissa, collinear points dropped.
    pub vertices: Vec<Point>,
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ox, oy) = (o.x as i128, o.y as i128);
    (a.x as i128 - ox) * (b.y as i128 - oy) - (a.y as i128 - oy) * (b.x as i128 - ox)
}

/// Monotone-chain lower hull of points with distinct abscissae, sorted by
/// `x`. Points on a segment between two vertices are not vertices.
pub fn lower_hull(points: &[Point]) -> Vec<Point> {
    let mut hull: Vec<Point> = Vec::with_capacity(points.len());
    for &pt in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

impl NewtonPolygon {
    /// Builds the polygon from a point cloud (any order, distinct abscissae).
    pub fn from_points(p: u64, phi_degree: u64, mut points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        points.sort();
        if points.windows(2).any(|w| w[0].x == w[1].x) {
            return Err(Error::Degenerate("two points share an abscissa".into()));
        }
        let vertices = lower_hull(&points);
        Ok(NewtonPolygon {
            p,
            phi_degree,
            points,
            vertices,
        })
    }

    /// `⌊h(x)⌋` where `h` is the polygonal path, or `None` outside its span.
    pub fn floor_height(&self, x: u64) -> Option<u64> {
        let first = self.vertices.first()?;
        let last = self.vertices.last()?;
        if x < first.x || x > last.x {
            return None;
        }
        if self.vertices.len() == 1 {
            return Some(first.y);
        }
        let seg = self
            .vertices
            .windows(2)
            .find(|w| w[0].x <= x && x <= w[1].x)
            .expect("x lies in the span");
        let (a, b) = (seg[0], seg[1]);
        // y = a.y + (b.y − a.y)(x − a.x)/(b.x − a.x), floored exactly
        let num = a.y as i128 * (b.x - a.x) as i128 + (b.y as i128 - a.y as i128) * (x - a.x) as i128;
        Some(Integer::div_floor(&num, &((b.x - a.x) as i128)) as u64)
    }

    /// Whether `(x, y)` lies on or below the path (false outside its span).
    pub fn on_or_below(&self, pt: Point) -> bool {
        self.floor_height(pt.x).is_some_and(|h| pt.y <= h)
    }

    /// Whether `(x, y)` lies strictly below the path.
    pub fn strictly_below(&self, pt: Point) -> bool {
        let Some(_) = self.floor_height(pt.x) else {
            return false;
        };
        let seg = self
            .vertices
            .windows(2)
            .find(|w| w[0].x <= pt.x && pt.x <= w[1].x);
        match seg {
            Some(w) => {
                let (a, b) = (w[0], w[1]);
                // y·(b.x − a.x) < a.y·(b.x − a.x) + (b.y − a.y)(x − a.x)
                let lhs = pt.y as i128 * (b.x - a.x) as i128;
                let rhs = a.y as i128 * (b.x - a.x) as i128
                    + (b.y as i128 - a.y as i128) * (pt.x - a.x) as i128;
                lhs < rhs
            }
            None => pt.y < self.vertices[0].y,
        }
    }

    /// Slopes of consecutive sides as reduced `(numerator, denominator)`.
    pub fn slopes(&self) -> Vec<(i64, u64)> {
        self.vertices
            .windows(2)
            .map(|w| {
                let dy = w[1].y as i64 - w[0].y as i64;
                let dx = (w[1].x - w[0].x) as i64;
                let g = dy.gcd(&dx);
                (dy / g, (dx / g) as u64)
            })
            .collect()
    }
}

/// The φ-Newton polygon of `f` at `p`. The valuation of a remainder `aᵢ`
/// is the least valuation among its coefficients.
pub fn phi_newton_polygon(
    f: &IntegerPolynomial,
    phi: &IntegerPolynomial,
    p: u64,
) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let phi_degree = match phi.degree() {
        Some(d) if d >= 1 => d as u64,
        _ => return Err(Error::DegreeTooSmall(1)),
    };
    let expansion = f.phi_expand(phi)?;
    let points = expansion
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.content_valuation(p).map(|v| Point::new(i as u64, v as u64)))
        .collect();
    NewtonPolygon::from_points(p, phi_degree, points)
}

/// `deg φ` times the number of lattice points `(x, y)` with `x >= 1`,
/// `y >= 1` on or below the polygon.
pub fn phi_index(polygon: &NewtonPolygon) -> u64 {
    let (Some(first), Some(last)) = (polygon.vertices.first(), polygon.vertices.last()) else {
        return 0;
    };
    let count: u64 = (first.x.max(1)..=last.x)
        .map(|x| polygon.floor_height(x).unwrap_or(0))
        .sum();
    polygon.phi_degree * count
}

/// Exhaustive lattice count over the bounding box, for cross-checking
/// [`phi_index`]. The path is convex, so it is the pointwise maximum of the
/// lines through its sides; each box point is tested against all of them.
pub fn phi_index_brute_force(polygon: &NewtonPolygon) -> u64 {
    let (Some(first), Some(last)) = (polygon.vertices.first(), polygon.vertices.last()) else {
        return 0;
    };
    let top = polygon.vertices.iter().map(|v| v.y).max().unwrap_or(0);
    let sides: Vec<(Point, Point)> = polygon.vertices.windows(2).map(|w| (w[0], w[1])).collect();
    let mut count = 0;
    for x in first.x.max(1)..=last.x {
        for y in 1..=top {
            let under = if sides.is_empty() {
                y <= first.y
            } else {
                sides.iter().any(|&(a, b)| {
                    let dx = (b.x - a.x) as i128;
                    let dy = b.y as i128 - a.y as i128;
                    y as i128 * dx <= a.y as i128 * dx + dy * (x as i128 - a.x as i128)
                })
            };
            if under {
                count += 1;
            }
        }
    }
    polygon.phi_degree * count
}
