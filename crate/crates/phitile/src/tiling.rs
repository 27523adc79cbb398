//! The two φ-power grid tilings of the first quadrant and their structure:
//! fundamental tiles, the divider zig-zag between the slope-φ and slope-φ⁻¹
//! rays, and the chains of rectangular beads strung along rays `y = φ^k x`.
//!
//! Grids are infinite in principle; every constructor takes an explicit
//! exponent window `[min_exp, max_exp]` and produces the finite part of the
//! pattern whose grid lines fall inside it.

use serde::{Deserialize, Serialize};

use crate::geometry::{GoldenPoint, GoldenRect, TileSet};
use crate::golden::{phi_pow, GoldenNumber};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TilingError {
    #[error("invalid exponent window [{min}, {max}]")]
    InvalidWindow { min: i64, max: i64 },
    #[error("window too small: need at least two grid lines per axis")]
    WindowTooSmall,
    #[error("ray slope exponent {slope_exp} must be odd in an alternating-power grid")]
    ParityViolation { slope_exp: i64 },
    #[error("tile carries no power-of-phi dimension tags")]
    UntaggedTile,
}

/// Which parity of exponents a grid axis carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn matches(self, e: i64) -> bool {
        (e.rem_euclid(2) == 0) == (self == Parity::Even)
    }

    pub fn opposite(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Grid flavour: lines every second power per axis with staggered parity,
/// or lines at every integer power on both axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    /// Alternating powers: one axis holds the even exponents, the other the
    /// odd ones. Every tile aspect ratio is an odd power of φ.
    Ap,
    /// Every power on both axes; the refinement of the alternating grid.
    Ep,
}

/// An exponent window over one of the two grid flavours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub mode: GridMode,
    pub x_parity: Parity,
    pub min_exp: i64,
    pub max_exp: i64,
}

impl GridSpec {
    /// `min_exp == max_exp` is allowed (a degenerate window with lines but
    /// no cells); `min_exp > max_exp` is rejected.
    pub fn new(mode: GridMode, x_parity: Parity, min_exp: i64, max_exp: i64) -> Result<Self, TilingError> {
        if min_exp > max_exp {
            return Err(TilingError::InvalidWindow {
                min: min_exp,
                max: max_exp,
            });
        }
        Ok(Self {
            mode,
            x_parity,
            min_exp,
            max_exp,
        })
    }

    pub fn ap(min_exp: i64, max_exp: i64) -> Result<Self, TilingError> {
        Self::new(GridMode::Ap, Parity::Even, min_exp, max_exp)
    }

    pub fn ep(min_exp: i64, max_exp: i64) -> Result<Self, TilingError> {
        Self::new(GridMode::Ep, Parity::Even, min_exp, max_exp)
    }

    /// Grid-line exponents on the x axis, ascending.
    pub fn x_exponents(&self) -> Vec<i64> {
        self.axis_exponents(self.x_parity)
    }

    /// Grid-line exponents on the y axis, ascending.
    pub fn y_exponents(&self) -> Vec<i64> {
        self.axis_exponents(self.x_parity.opposite())
    }

    fn axis_exponents(&self, parity: Parity) -> Vec<i64> {
        match self.mode {
            GridMode::Ep => (self.min_exp..=self.max_exp).collect(),
            GridMode::Ap => (self.min_exp..=self.max_exp)
                .filter(|&e| parity.matches(e))
                .collect(),
        }
    }

    /// The rectangle spanned by the window's outermost grid lines, if the
    /// window holds at least two lines per axis.
    pub fn span_rect(&self) -> Result<GoldenRect, TilingError> {
        let xs = self.x_exponents();
        let ys = self.y_exponents();
        if xs.len() < 2 || ys.len() < 2 {
            return Err(TilingError::WindowTooSmall);
        }
        GoldenRect::from_corners(
            GoldenPoint::from_exps(xs[0], ys[0]),
            GoldenPoint::from_exps(*xs.last().unwrap(), *ys.last().unwrap()),
        )
        .map_err(|_| TilingError::WindowTooSmall)
    }
}

/// Sorted, duplicate-free grid-line positions `(x_positions, y_positions)`.
pub fn grid_lines(spec: &GridSpec) -> (Vec<GoldenNumber>, Vec<GoldenNumber>) {
    let to_positions = |exps: Vec<i64>| exps.into_iter().map(phi_pow).collect();
    (to_positions(spec.x_exponents()), to_positions(spec.y_exponents()))
}

/// One tagged tile per grid cell, in canonical order.
///
/// Tags are exact because adjacent lines differ by one or two exponents and
/// `φ^(e+2) − φ^e = φ^(e+1)`, `φ^(e+1) − φ^e = φ^(e-1)`.
pub fn fundamental_tiles(spec: &GridSpec) -> Result<TileSet, TilingError> {
    let xs = spec.x_exponents();
    let ys = spec.y_exponents();
    if xs.len() < 2 || ys.len() < 2 {
        return Err(TilingError::WindowTooSmall);
    }
    let cell_dim_exp = |e: i64| match spec.mode {
        GridMode::Ap => e + 1, // cell [φ^e, φ^(e+2)]
        GridMode::Ep => e - 1, // cell [φ^e, φ^(e+1)]
    };
    let mut tiles = Vec::with_capacity((xs.len() - 1) * (ys.len() - 1));
    for &ex in &xs[..xs.len() - 1] {
        for &ey in &ys[..ys.len() - 1] {
            tiles.push(GoldenRect::from_power_dims(
                GoldenPoint::from_exps(ex, ey),
                cell_dim_exp(ex),
                cell_dim_exp(ey),
            ));
        }
    }
    Ok(TileSet::new(tiles))
}

/// Axis direction of a divider segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// One axis-parallel segment of the divider, oriented along the walk
/// toward the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividerSegment {
    pub start: GoldenPoint,
    pub end: GoldenPoint,
    pub length: GoldenNumber,
    pub direction: Direction,
}

/// The zig-zag path descending between the rays `y = φx` and `y = φ⁻¹x`,
/// each segment a factor φ shorter than the one before.
#[derive(Debug, Clone)]
pub struct DividerPath {
    segments: Vec<DividerSegment>,
    descent_start: usize,
}

impl DividerPath {
    /// All segments, ordered from the outermost vertex toward the origin.
    pub fn segments(&self) -> &[DividerSegment] {
        &self.segments
    }

    /// The segments descending from the anchor vertex toward the origin.
    pub fn descending_segments(&self) -> &[DividerSegment] {
        &self.segments[self.descent_start..]
    }
}

/// Build the divider anchored at `B = (φ^n, φ^(n-1))`, the vertex where the
/// slope condition pins the construction to the x-offset `φ^n`.
///
/// Walking toward the origin the k-th descending segment has length
/// `φ^(n-k)`, alternating horizontal/vertical with endpoints exactly on the
/// two rays; `steps_up` continues the same geometric chain away from the
/// origin.
pub fn divider(n: i64, steps_down: u32, steps_up: u32) -> DividerPath {
    assert!(steps_down >= 1 && steps_up >= 1, "segment counts must be >= 1");
    // vertex exponents (xe, ye): horizontal moves set xe from ye, vertical
    // moves set ye from xe
    let anchor = (n, n - 1);

    // ascending chain: vertical first (to the slope-φ ray), then horizontal
    let mut up_vertices = vec![anchor];
    let mut cur = anchor;
    for k in 1..=steps_up {
        cur = if k % 2 == 1 {
            (cur.0, cur.0 + 1)
        } else {
            (cur.1 + 1, cur.1)
        };
        up_vertices.push(cur);
    }
    up_vertices.reverse(); // outermost vertex first

    // descending chain: horizontal first (to the slope-φ ray)
    let mut vertices = up_vertices;
    let mut cur = anchor;
    for k in 1..=steps_down {
        cur = if k % 2 == 1 {
            (cur.1 - 1, cur.1)
        } else {
            (cur.0, cur.0 - 1)
        };
        vertices.push(cur);
    }

    let segments = vertices
        .windows(2)
        .map(|w| {
            let (s, e) = (w[0], w[1]);
            let start = GoldenPoint::from_exps(s.0, s.1);
            let end = GoldenPoint::from_exps(e.0, e.1);
            let (direction, length) = if s.1 == e.1 {
                (Direction::Horizontal, (&start.x - &end.x).abs())
            } else {
                (Direction::Vertical, (&start.y - &end.y).abs())
            };
            DividerSegment {
                start,
                end,
                length,
                direction,
            }
        })
        .collect();

    DividerPath {
        segments,
        descent_start: steps_up as usize,
    }
}

/// A chain of similar rectangles whose lo→hi diagonals all lie on the ray
/// `y = φ^k x`. Grid-level chains step two exponents at a time (linear
/// scale φ² between consecutive beads); merged chains built from
/// subdivision step one exponent (scale φ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeadedRay {
    pub slope_exp: i64,
    pub beads: Vec<GoldenRect>,
}

impl BeadedRay {
    /// Exact validity of the chain for a given exponent step between
    /// consecutive beads: every corner on the ray, every aspect ratio
    /// exactly `φ^slope_exp`, and each bead the `φ^step`-dilate of its
    /// predecessor.
    pub fn is_valid_chain(&self, step: i64) -> bool {
        if self.beads.is_empty() {
            return false;
        }
        let ratio = phi_pow(self.slope_exp);
        let on_ray_and_golden = self.beads.iter().all(|b| {
            b.lo.on_ray(self.slope_exp)
                && b.hi.on_ray(self.slope_exp)
                && b.height() == &ratio * b.width()
        });
        if !on_ray_and_golden {
            return false;
        }
        self.beads.windows(2).all(|w| {
            let scaled = w[0].scale_by_phi_pow(step);
            scaled.lo == w[1].lo && scaled.hi == w[1].hi
        })
    }
}

/// The chain of beads on the ray `y = φ^k x` with the first bead anchored
/// at `lo = (φ^first_exp, φ^(first_exp+k))`.
///
/// In an alternating-power grid only odd `k` carries beads; an every-power
/// grid has a chain for every integer `k`.
pub fn beaded_ray(
    mode: GridMode,
    slope_exp: i64,
    first_exp: i64,
    count: u32,
) -> Result<BeadedRay, TilingError> {
    if mode == GridMode::Ap && slope_exp.rem_euclid(2) == 0 {
        return Err(TilingError::ParityViolation { slope_exp });
    }
    let beads = (0..count as i64)
        .map(|t| {
            let a = first_exp + 2 * t;
            GoldenRect::from_power_dims(GoldenPoint::from_exps(a, a + slope_exp), a + 1, a + slope_exp + 1)
                .with_slope(slope_exp)
        })
        .collect();
    Ok(BeadedRay {
        slope_exp,
        beads,
    })
}

/// Ray classification of a tagged tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayClass {
    /// Diagonal on a ray of odd slope exponent: a bead of the
    /// alternating-power tiling.
    ApBead(i64),
    /// Diagonal on a ray of even slope exponent: a bead only the
    /// every-power tiling carries.
    EpBead(i64),
    /// Corners not on a common power-of-φ ray through the origin.
    OffRay,
}

/// Classify a tile by testing its lo→hi diagonal against the ray family.
///
/// The slope exponent comes out of the corner coordinates themselves (the
/// dimension tags alone cannot distinguish congruent tiles sitting on
/// different rays).
pub fn classify_tile(rect: &GoldenRect) -> Result<RayClass, TilingError> {
    if rect.width_exp().is_none() || rect.height_exp().is_none() {
        return Err(TilingError::UntaggedTile);
    }
    Ok(match rect.diagonal_ray() {
        Some(s) if s.rem_euclid(2) == 1 => RayClass::ApBead(s),
        Some(s) => RayClass::EpBead(s),
        None => RayClass::OffRay,
    })
}

/// Copy of the tile set with every on-ray tile labelled by its slope
/// exponent.
pub fn classify_all(tiles: &TileSet) -> Result<TileSet, TilingError> {
    let labelled = tiles
        .iter()
        .map(|t| match classify_tile(t)? {
            RayClass::ApBead(s) | RayClass::EpBead(s) => Ok(t.clone().with_slope(s)),
            RayClass::OffRay => Ok(t.clone()),
        })
        .collect::<Result<Vec<_>, TilingError>>()?;
    Ok(TileSet::new(labelled))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ap_grid_lines_alternate() {
        let spec = GridSpec::ap(-2, 3).unwrap();
        let (xs, ys) = grid_lines(&spec);
        assert_eq!(xs, vec![phi_pow(-2), phi_pow(0), phi_pow(2)]);
        assert_eq!(ys, vec![phi_pow(-1), phi_pow(1), phi_pow(3)]);
    }

    #[test]
    fn ep_grid_lines_every_power() {
        let spec = GridSpec::ep(0, 2).unwrap();
        let (xs, ys) = grid_lines(&spec);
        assert_eq!(xs, vec![phi_pow(0), phi_pow(1), phi_pow(2)]);
        assert_eq!(ys, xs);
    }

    #[test]
    fn degenerate_window_has_lines_but_no_cells() {
        let spec = GridSpec::ap(0, 0).unwrap();
        let (xs, ys) = grid_lines(&spec);
        assert_eq!(xs, vec![phi_pow(0)]);
        assert!(ys.is_empty());
        assert_eq!(fundamental_tiles(&spec), Err(TilingError::WindowTooSmall));
        assert!(GridSpec::ap(3, 2).is_err());
    }

    #[test]
    fn ap_cell_tags() {
        // window 0..3: single x cell [φ⁰,φ²], single y cell [φ¹,φ³]
        let spec = GridSpec::ap(0, 3).unwrap();
        let tiles = fundamental_tiles(&spec).unwrap();
        assert_eq!(tiles.len(), 1);
        let t = &tiles.tiles()[0];
        assert_eq!(t.width_exp(), Some(1));
        assert_eq!(t.height_exp(), Some(2));
        assert_eq!(t.orientation(), crate::geometry::Orientation::Portrait);
        assert_eq!(t.width(), phi_pow(1));
        assert_eq!(t.height(), phi_pow(2));
    }

    #[test]
    fn ap_aspect_exponents_are_odd() {
        let spec = GridSpec::ap(-4, 4).unwrap();
        for t in fundamental_tiles(&spec).unwrap().iter() {
            let d = t.height_exp().unwrap() - t.width_exp().unwrap();
            assert_eq!(d.rem_euclid(2), 1, "tile {t:?}");
        }
    }

    #[test]
    fn ep_cell_next_to_one_is_a_square() {
        let spec = GridSpec::ep(0, 1).unwrap();
        let tiles = fundamental_tiles(&spec).unwrap();
        assert_eq!(tiles.len(), 1);
        let t = &tiles.tiles()[0];
        assert_eq!((t.width_exp(), t.height_exp()), (Some(-1), Some(-1)));
        assert_eq!(t.orientation(), crate::geometry::Orientation::Square);
    }

    #[test]
    fn tiles_partition_the_window() {
        for spec in [GridSpec::ap(-3, 4).unwrap(), GridSpec::ep(-2, 3).unwrap()] {
            let tiles = fundamental_tiles(&spec).unwrap();
            assert!(tiles.pairwise_interior_disjoint());
            let span = spec.span_rect().unwrap();
            assert_eq!(tiles.total_area(), span.area(), "mode {:?}", spec.mode);
        }
    }

    #[test]
    fn divider_descending_lengths() {
        let d = divider(0, 6, 2);
        let lens: Vec<_> = d.descending_segments().iter().map(|s| s.length.clone()).collect();
        assert_eq!(lens[0], phi_pow(-1));
        assert_eq!(lens[1], phi_pow(-2));
        assert_eq!(lens[2], phi_pow(-3));
        assert_eq!(lens[5], phi_pow(-6));
    }

    #[test]
    fn divider_alternates_and_shrinks_by_phi() {
        let d = divider(2, 8, 5);
        let segs = d.segments();
        assert_eq!(segs.len(), 13);
        for w in segs.windows(2) {
            assert_ne!(w[0].direction, w[1].direction);
            assert_eq!(w[1].length, phi_pow(-1) * &w[0].length);
        }
    }

    #[test]
    fn divider_vertices_stay_in_the_ray_wedge() {
        let d = divider(0, 10, 4);
        for s in d.segments() {
            for p in [&s.start, &s.end] {
                // φ⁻¹x ≤ y ≤ φx
                assert!((&p.y - phi_pow(-1) * &p.x).signum() >= 0);
                assert!((phi_pow(1) * &p.x - &p.y).signum() >= 0);
            }
        }
        // endpoints alternate between the two rays
        let on_upper: Vec<bool> = d
            .segments()
            .iter()
            .map(|s| s.end.on_ray(1))
            .collect();
        for w in on_upper.windows(2) {
            assert_ne!(w[0], w[1]);
        }
    }

    #[test]
    fn divider_horizontal_sum_is_phi_n() {
        // first K horizontal descending segments sum toward φ^n
        let n = 0;
        let d = divider(n, 10, 1);
        let horiz: GoldenNumber = d
            .descending_segments()
            .iter()
            .filter(|s| s.direction == Direction::Horizontal)
            .map(|s| s.length.clone())
            .sum();
        // φ⁻¹+φ⁻³+φ⁻⁵+φ⁻⁷+φ⁻⁹ = φ⁰ − φ⁻¹⁰
        assert_eq!(horiz, phi_pow(n) - phi_pow(n - 10));
    }

    #[test]
    fn beaded_ray_examples() {
        let r = beaded_ray(GridMode::Ap, 1, 0, 3).unwrap();
        let b0 = &r.beads[0];
        assert_eq!(b0.lo, GoldenPoint::from_exps(0, 1));
        assert_eq!(b0.hi, GoldenPoint::from_exps(2, 3));
        assert_eq!(b0.orientation(), crate::geometry::Orientation::Portrait);
        assert!(r.is_valid_chain(2));

        let lg = beaded_ray(GridMode::Ap, -1, 0, 4).unwrap();
        assert!(lg
            .beads
            .iter()
            .all(|b| b.orientation() == crate::geometry::Orientation::Landscape));

        let cubic = beaded_ray(GridMode::Ap, 3, -2, 5).unwrap();
        for b in &cubic.beads {
            assert_eq!(b.height(), phi_pow(3) * b.width());
        }
    }

    #[test]
    fn beaded_ray_parity_rule() {
        assert_eq!(
            beaded_ray(GridMode::Ap, 2, 0, 1),
            Err(TilingError::ParityViolation { slope_exp: 2 })
        );
        assert!(beaded_ray(GridMode::Ep, 2, 0, 1).is_ok());
    }

    #[test]
    fn classify_examples() {
        let bead = GoldenRect::from_power_dims(GoldenPoint::from_exps(0, 1), 1, 2);
        assert_eq!(classify_tile(&bead), Ok(RayClass::ApBead(1)));

        let unit = GoldenRect::from_power_dims(GoldenPoint::origin(), 0, 0);
        assert_eq!(classify_tile(&unit), Ok(RayClass::EpBead(0)));

        let off = GoldenRect::from_power_dims(GoldenPoint::from_exps(1, 0), 0, 0);
        assert_eq!(classify_tile(&off), Ok(RayClass::OffRay));

        let untagged = GoldenRect::from_corners(
            GoldenPoint::origin(),
            GoldenPoint::new(GoldenNumber::one(), GoldenNumber::one()),
        )
        .unwrap();
        assert_eq!(classify_tile(&untagged), Err(TilingError::UntaggedTile));
    }
}
