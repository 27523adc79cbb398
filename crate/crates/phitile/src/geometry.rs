//! Exact 2-D primitives: points, axis-aligned rectangles with power-of-φ
//! dimension tags, canonical tile collections, and convex containment tests.
//!
//! Every predicate here reduces to [`GoldenNumber`] sign tests. There is no
//! floating-point fallback path.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::golden::{phi_pow, GoldenNumber};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("rectangle extents must be positive")]
    EmptyExtent,
    #[error("rectangle carries no power-of-phi dimension tags")]
    Untagged,
}

/// A point with exact golden-ring coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoldenPoint {
    pub x: GoldenNumber,
    pub y: GoldenNumber,
}

impl GoldenPoint {
    pub fn new(x: GoldenNumber, y: GoldenNumber) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(GoldenNumber::zero(), GoldenNumber::zero())
    }

    /// Both coordinates are powers of φ.
    pub fn from_exps(x_exp: i64, y_exp: i64) -> Self {
        Self::new(phi_pow(x_exp), phi_pow(y_exp))
    }

    /// Exact test for membership on the ray `y = φ^k · x`, x ≥ 0.
    pub fn on_ray(&self, slope_exp: i64) -> bool {
        !self.x.is_negative() && self.y == phi_pow(slope_exp) * &self.x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Landscape,
    Portrait,
    Square,
}

/// Axis-aligned rectangle with optional exact power-of-φ dimension tags and
/// an optional ray classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRect {
    pub lo: GoldenPoint,
    pub hi: GoldenPoint,
    width_exp: Option<i64>,
    height_exp: Option<i64>,
    slope_exp: Option<i64>,
}

impl GoldenRect {
    /// Rectangle anchored at `lo` with dimensions exactly `φ^i × φ^j`.
    /// The tags are trustworthy by construction.
    pub fn from_power_dims(lo: GoldenPoint, width_exp: i64, height_exp: i64) -> Self {
        let hi = GoldenPoint::new(&lo.x + phi_pow(width_exp), &lo.y + phi_pow(height_exp));
        Self {
            lo,
            hi,
            width_exp: Some(width_exp),
            height_exp: Some(height_exp),
            slope_exp: None,
        }
    }

    /// Untagged rectangle from two corners.
    pub fn from_corners(lo: GoldenPoint, hi: GoldenPoint) -> Result<Self, GeometryError> {
        if (&hi.x - &lo.x).signum() <= 0 || (&hi.y - &lo.y).signum() <= 0 {
            return Err(GeometryError::EmptyExtent);
        }
        Ok(Self {
            lo,
            hi,
            width_exp: None,
            height_exp: None,
            slope_exp: None,
        })
    }

    pub fn width_exp(&self) -> Option<i64> {
        self.width_exp
    }

    pub fn height_exp(&self) -> Option<i64> {
        self.height_exp
    }

    pub fn slope_exp(&self) -> Option<i64> {
        self.slope_exp
    }

    pub fn with_slope(mut self, slope_exp: i64) -> Self {
        self.slope_exp = Some(slope_exp);
        self
    }

    pub fn width(&self) -> GoldenNumber {
        &self.hi.x - &self.lo.x
    }

    pub fn height(&self) -> GoldenNumber {
        &self.hi.y - &self.lo.y
    }

    pub fn area(&self) -> GoldenNumber {
        self.width() * self.height()
    }

    /// Orientation decided by the exact width/height comparison.
    pub fn orientation(&self) -> Orientation {
        match (self.height() - self.width()).signum() {
            1 => Orientation::Portrait,
            -1 => Orientation::Landscape,
            _ => Orientation::Square,
        }
    }

    /// Open-interior disjointness; shared edges are allowed.
    pub fn interior_disjoint(&self, other: &Self) -> bool {
        self.hi.x <= other.lo.x
            || other.hi.x <= self.lo.x
            || self.hi.y <= other.lo.y
            || other.hi.y <= self.lo.y
    }

    /// Closed containment of `other` inside `self`.
    pub fn contains_rect(&self, other: &Self) -> bool {
        self.lo.x <= other.lo.x
            && self.lo.y <= other.lo.y
            && other.hi.x <= self.hi.x
            && other.hi.y <= self.hi.y
    }

    /// If the lo→hi diagonal lies on a ray `y = φ^s·x`, return `s`.
    pub fn diagonal_ray(&self) -> Option<i64> {
        if self.lo.x.is_zero() && self.lo.y.is_zero() {
            let s = self.hi.y.checked_div(&self.hi.x)?.as_phi_power()?;
            return Some(s);
        }
        if self.lo.x.is_zero() || self.lo.y.is_zero() {
            return None; // on an axis but not at the origin: off every ray
        }
        let s = self.lo.y.checked_div(&self.lo.x)?.as_phi_power()?;
        (self.hi.y == phi_pow(s) * &self.hi.x).then_some(s)
    }

    /// Dilatation about the origin by `φ^k`; dimension tags shift by `k`,
    /// ray membership is unchanged.
    pub fn scale_by_phi_pow(&self, k: i64) -> Self {
        let f = phi_pow(k);
        Self {
            lo: GoldenPoint::new(&self.lo.x * &f, &self.lo.y * &f),
            hi: GoldenPoint::new(&self.hi.x * &f, &self.hi.y * &f),
            width_exp: self.width_exp.map(|e| e + k),
            height_exp: self.height_exp.map(|e| e + k),
            slope_exp: self.slope_exp,
        }
    }

    /// Reflection about the ray `y = x`: coordinates and tags swap, a ray
    /// slope `φ^s` becomes `φ^-s`.
    pub fn reflect_diagonal(&self) -> Self {
        Self {
            lo: GoldenPoint::new(self.lo.y.clone(), self.lo.x.clone()),
            hi: GoldenPoint::new(self.hi.y.clone(), self.hi.x.clone()),
            width_exp: self.height_exp,
            height_exp: self.width_exp,
            slope_exp: self.slope_exp.map(|s| -s),
        }
    }
}

impl Serialize for GoldenRect {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = 5 + usize::from(self.slope_exp.is_some());
        let mut st = serializer.serialize_struct("GoldenRect", n)?;
        st.serialize_field("lo", &self.lo)?;
        st.serialize_field("hi", &self.hi)?;
        st.serialize_field("width_exp", &self.width_exp)?;
        st.serialize_field("height_exp", &self.height_exp)?;
        st.serialize_field("orientation", &self.orientation())?;
        if self.slope_exp.is_some() {
            st.serialize_field("slope_exp", &self.slope_exp)?;
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for GoldenRect {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: GoldenPoint,
            hi: GoldenPoint,
            width_exp: Option<i64>,
            height_exp: Option<i64>,
            #[allow(dead_code)]
            orientation: Option<Orientation>,
            slope_exp: Option<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(GoldenRect {
            lo: raw.lo,
            hi: raw.hi,
            width_exp: raw.width_exp,
            height_exp: raw.height_exp,
            slope_exp: raw.slope_exp,
        })
    }
}

/// A finite collection of tiles in canonical order (lexicographic by exact
/// `lo.x`, then `lo.y`, then the `hi` corner).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TileSet {
    tiles: Vec<GoldenRect>,
}

impl TileSet {
    pub fn new(mut tiles: Vec<GoldenRect>) -> Self {
        tiles.sort_by(|p, q| {
            (&p.lo, &p.hi.x, &p.hi.y).cmp(&(&q.lo, &q.hi.x, &q.hi.y))
        });
        Self { tiles }
    }

    pub fn tiles(&self) -> &[GoldenRect] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GoldenRect> {
        self.tiles.iter()
    }

    pub fn total_area(&self) -> GoldenNumber {
        self.tiles.iter().map(|t| t.area()).sum()
    }

    /// Exact pairwise interior disjointness.
    pub fn pairwise_interior_disjoint(&self) -> bool {
        for (i, a) in self.tiles.iter().enumerate() {
            for b in &self.tiles[i + 1..] {
                if !a.interior_disjoint(b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale_by_phi_pow(&self, k: i64) -> TileSet {
        TileSet::new(self.tiles.iter().map(|t| t.scale_by_phi_pow(k)).collect())
    }

    pub fn reflect_diagonal(&self) -> TileSet {
        TileSet::new(self.tiles.iter().map(|t| t.reflect_diagonal()).collect())
    }

    /// Tiles fully inside the closed `bounds` rectangle.
    pub fn restrict_to(&self, bounds: &GoldenRect) -> TileSet {
        TileSet::new(
            self.tiles
                .iter()
                .filter(|t| bounds.contains_rect(t))
                .cloned()
                .collect(),
        )
    }

    /// Exact set equality on geometry and dimension tags (ray labels are
    /// derived data and do not participate).
    pub fn same_tiles(&self, other: &TileSet) -> bool {
        self.tiles.len() == other.tiles.len()
            && self.tiles.iter().zip(&other.tiles).all(|(p, q)| {
                p.lo == q.lo
                    && p.hi == q.hi
                    && p.width_exp == q.width_exp
                    && p.height_exp == q.height_exp
            })
    }
}

impl<'a> IntoIterator for &'a TileSet {
    type Item = &'a GoldenRect;
    type IntoIter = std::slice::Iter<'a, GoldenRect>;
    fn into_iter(self) -> Self::IntoIter {
        self.tiles.iter()
    }
}

/// Closed half-plane `a·x + b·y + c ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: GoldenNumber,
    pub b: GoldenNumber,
    pub c: GoldenNumber,
}

impl HalfPlane {
    pub fn contains(&self, p: &GoldenPoint) -> bool {
        (&self.a * &p.x + &self.b * &p.y + &self.c).signum() >= 0
    }
}

/// Convex region as an intersection of closed half-planes, with its vertex
/// list kept for serialization and rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexRegion {
    pub vertices: Vec<GoldenPoint>,
    pub halfplanes: Vec<HalfPlane>,
}

impl ConvexRegion {
    pub fn contains_point(&self, p: &GoldenPoint) -> bool {
        self.halfplanes.iter().all(|h| h.contains(p))
    }

    /// A rectangle lies in a convex region iff all four corners do.
    pub fn contains_rect(&self, r: &GoldenRect) -> bool {
        let corners = [
            r.lo.clone(),
            GoldenPoint::new(r.hi.x.clone(), r.lo.y.clone()),
            GoldenPoint::new(r.lo.x.clone(), r.hi.y.clone()),
            r.hi.clone(),
        ];
        corners.iter().all(|c| self.contains_point(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(x_exp: i64, y_exp: i64, w: i64, h: i64) -> GoldenRect {
        GoldenRect::from_power_dims(GoldenPoint::from_exps(x_exp, y_exp), w, h)
    }

    #[test]
    fn power_dims_are_exact() {
        let r = rect(0, 1, 1, 2);
        assert_eq!(r.width(), phi_pow(1));
        assert_eq!(r.height(), phi_pow(2));
        assert_eq!(r.area(), phi_pow(3));
        assert_eq!(r.orientation(), Orientation::Portrait);
    }

    #[test]
    fn orientation_cases() {
        assert_eq!(rect(0, 0, 2, -1).orientation(), Orientation::Landscape);
        assert_eq!(rect(0, 0, 3, 3).orientation(), Orientation::Square);
    }

    #[test]
    fn empty_extent_rejected() {
        let p = GoldenPoint::from_exps(1, 1);
        assert_eq!(
            GoldenRect::from_corners(p.clone(), p),
            Err(GeometryError::EmptyExtent)
        );
    }

    #[test]
    fn diagonal_ray_detection() {
        // bead [φ⁰,φ²]×[φ¹,φ³]: both corners on y = φx
        let bead = rect(0, 1, 1, 2);
        assert_eq!(bead.diagonal_ray(), Some(1));
        // unit square at the origin: diagonal on y = x
        let unit = GoldenRect::from_corners(
            GoldenPoint::origin(),
            GoldenPoint::new(GoldenNumber::one(), GoldenNumber::one()),
        )
        .unwrap();
        assert_eq!(unit.diagonal_ray(), Some(0));
        // off-ray tile: lo=(φ¹,φ⁰), hi=(φ²,φ¹)
        let off = rect(1, 0, 0, 0);
        assert_eq!(off.diagonal_ray(), None);
    }

    #[test]
    fn interior_disjoint_shares_edges() {
        let a = rect(0, 0, 0, 0);
        let b = GoldenRect::from_power_dims(
            GoldenPoint::new(&phi_pow(0) + phi_pow(0), phi_pow(0)),
            0,
            0,
        );
        assert!(a.interior_disjoint(&b));
        let c = rect(0, 0, 1, 1); // overlaps a
        assert!(!a.interior_disjoint(&c));
    }

    #[test]
    fn transforms_preserve_tags() {
        let r = rect(0, 1, 1, 2);
        let s = r.scale_by_phi_pow(2);
        assert_eq!(s.width_exp(), Some(3));
        assert_eq!(s.lo.x, phi_pow(2));
        assert_eq!(s.diagonal_ray(), Some(1)); // dilatation keeps the ray
        let m = r.reflect_diagonal();
        assert_eq!(m.width_exp(), Some(2));
        assert_eq!(m.height_exp(), Some(1));
        assert_eq!(m.diagonal_ray(), Some(-1));
    }

    #[test]
    fn tileset_canonical_order_and_equality() {
        let a = rect(0, 0, 0, 1);
        let b = rect(2, 0, 1, 1);
        let s1 = TileSet::new(vec![b.clone(), a.clone()]);
        let s2 = TileSet::new(vec![a.clone(), b.clone()]);
        assert_eq!(s1.tiles()[0], a);
        assert!(s1.same_tiles(&s2));
        // slope labels do not affect set equality
        let s3 = TileSet::new(vec![a.with_slope(1), b]);
        assert!(s1.same_tiles(&s3));
    }

    #[test]
    fn tileset_json_round_trip() {
        let set = TileSet::new(vec![rect(0, 1, 1, 2).with_slope(1), rect(2, 1, 3, 2)]);
        let json = serde_json::to_string(&set).unwrap();
        let back: TileSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
        assert!(json.contains("\"orientation\""));
    }

    #[test]
    fn convex_region_containment() {
        // triangle 0 ≤ y, x ≤ 1, y ≤ φ⁻¹x
        let tri = ConvexRegion {
            vertices: vec![
                GoldenPoint::origin(),
                GoldenPoint::new(GoldenNumber::one(), GoldenNumber::zero()),
                GoldenPoint::new(GoldenNumber::one(), phi_pow(-1)),
            ],
            halfplanes: vec![
                HalfPlane {
                    a: GoldenNumber::zero(),
                    b: GoldenNumber::one(),
                    c: GoldenNumber::zero(),
                },
                HalfPlane {
                    a: -GoldenNumber::one(),
                    b: GoldenNumber::zero(),
                    c: GoldenNumber::one(),
                },
                HalfPlane {
                    a: phi_pow(-1),
                    b: -GoldenNumber::one(),
                    c: GoldenNumber::zero(),
                },
            ],
        };
        // first tile of the square tiling: [φ⁻¹,1]×[0,φ⁻²]
        let sq = GoldenRect::from_power_dims(
            GoldenPoint::new(phi_pow(-1), GoldenNumber::zero()),
            -2,
            -2,
        );
        assert!(tri.contains_rect(&sq));
        let too_tall = GoldenRect::from_power_dims(
            GoldenPoint::new(phi_pow(-1), GoldenNumber::zero()),
            -2,
            -1,
        );
        assert!(!tri.contains_rect(&too_tall));
    }
}
