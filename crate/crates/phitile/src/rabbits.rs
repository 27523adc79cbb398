//! Fibonacci rabbit genealogy and the two self-similar tilings it indexes:
//! squares filling the right triangle below `y = φ⁻¹x`, and golden
//! rectangles filling the trapezoid right of `y = φx`.
//!
//! A pair born in month `m` produces one new pair in every month `≥ m+2`,
//! so the population in month `k` is `F_k`. Month-`k` tiles measure
//! `φ^(-k-1) × φ^(-k-1)` (triangle) or `φ^(-k-1) × φ^(-k)` (trapezoid), so
//! the covered areas are partial sums of the Fibonacci-weighted series at
//! `n = -3` and `n = -2`, and the uncovered remainder is exactly that
//! series' closed-form residual.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::fib::fibonacci;
use crate::geometry::{ConvexRegion, GoldenPoint, GoldenRect, HalfPlane};
use crate::golden::{phi_pow, GoldenNumber};
use crate::series::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RabbitError {
    #[error("a breeding run needs at least one month")]
    ZeroMonths,
}

/// One rabbit pair in the genealogy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RabbitPair {
    pub id: u32,
    pub parent_id: Option<u32>,
    pub birth_month: u32,
}

/// Deterministic genealogy through `months` months. Ids are assigned in
/// `(birth_month, parent_id)` lexicographic order, with the original pair
/// as id 0 born in month 1.
pub fn breed(months: u32) -> Result<Vec<RabbitPair>, RabbitError> {
    if months == 0 {
        return Err(RabbitError::ZeroMonths);
    }
    let mut pairs = vec![RabbitPair {
        id: 0,
        parent_id: None,
        birth_month: 1,
    }];
    for month in 2..=months {
        let breeders: Vec<u32> = pairs
            .iter()
            .filter(|p| p.birth_month + 2 <= month)
            .map(|p| p.id)
            .collect();
        for parent in breeders {
            let id = pairs.len() as u32;
            pairs.push(RabbitPair {
                id,
                parent_id: Some(parent),
                birth_month: month,
            });
        }
    }
    Ok(pairs)
}

/// Pairs alive in month `k` (everyone born so far; rabbits live forever).
pub fn alive_in_month(pairs: &[RabbitPair], month: u32) -> usize {
    pairs.iter().filter(|p| p.birth_month <= month).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RabbitShape {
    Triangle,
    Trapezoid,
}

/// One tile of a rabbit tiling: the image of `pair` in month `month`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RabbitTile {
    pub pair_id: u32,
    pub month: u32,
    pub rect: GoldenRect,
}

/// Wire form of a tile: `{pair, month, lo, hi}`.
#[derive(Serialize, Deserialize)]
struct TileWire {
    pair: u32,
    month: u32,
    lo: GoldenPoint,
    hi: GoldenPoint,
}

/// A finite rabbit tiling with its exact target region.
#[derive(Debug, Clone, PartialEq)]
pub struct RabbitTiling {
    pub shape: RabbitShape,
    pub months: u32,
    pub region: ConvexRegion,
    pub tiles: Vec<RabbitTile>,
}

/// Right triangle `O=(0,0)`, `R=(1,0)`, `Q=(1,φ⁻¹)`; hypotenuse on
/// `y = φ⁻¹x`.
pub fn triangle_region() -> ConvexRegion {
    ConvexRegion {
        vertices: vec![
            GoldenPoint::origin(),
            GoldenPoint::new(GoldenNumber::one(), GoldenNumber::zero()),
            GoldenPoint::new(GoldenNumber::one(), phi_pow(-1)),
        ],
        halfplanes: vec![
            // y >= 0
            HalfPlane {
                a: GoldenNumber::zero(),
                b: GoldenNumber::one(),
                c: GoldenNumber::zero(),
            },
            // x <= 1
            HalfPlane {
                a: -GoldenNumber::one(),
                b: GoldenNumber::zero(),
                c: GoldenNumber::one(),
            },
            // y <= φ⁻¹ x
            HalfPlane {
                a: phi_pow(-1),
                b: -GoldenNumber::one(),
                c: GoldenNumber::zero(),
            },
        ],
    }
}

/// Trapezoid `O=(0,0)`, `P=(φ⁻²,φ⁻¹)`, `Q=(1,φ⁻¹)`, `R=(1,0)`; the left
/// edge OP lies on `y = φx`.
pub fn trapezoid_region() -> ConvexRegion {
    ConvexRegion {
        vertices: vec![
            GoldenPoint::origin(),
            GoldenPoint::new(phi_pow(-2), phi_pow(-1)),
            GoldenPoint::new(GoldenNumber::one(), phi_pow(-1)),
            GoldenPoint::new(GoldenNumber::one(), GoldenNumber::zero()),
        ],
        halfplanes: vec![
            // y >= 0
            HalfPlane {
                a: GoldenNumber::zero(),
                b: GoldenNumber::one(),
                c: GoldenNumber::zero(),
            },
            // y <= φ x
            HalfPlane {
                a: phi_pow(1),
                b: -GoldenNumber::one(),
                c: GoldenNumber::zero(),
            },
            // y <= φ⁻¹
            HalfPlane {
                a: GoldenNumber::zero(),
                b: -GoldenNumber::one(),
                c: phi_pow(-1),
            },
            // x <= 1
            HalfPlane {
                a: -GoldenNumber::one(),
                b: GoldenNumber::zero(),
                c: GoldenNumber::one(),
            },
        ],
    }
}

/// Square tiling of the right triangle.
///
/// The triangle with apex `o` on the hypotenuse and horizontal leg `φ^e`
/// decomposes into the corner square of side `φ^(e-2)` (its upper-left
/// corner back on the hypotenuse), a left copy scaled by `φ⁻¹` and an
/// upper copy scaled by `φ⁻²`. Walking left ages the pair by one month;
/// walking up starts the pair's next child two months on — exactly the
/// breeding recursion, so month-`k` squares number `F_k`.
pub fn layout_triangle(months: u32) -> Result<RabbitTiling, RabbitError> {
    let pairs = breed(months)?;
    let child_ids = child_lookup(&pairs);
    let mut tiles = Vec::new();
    // stack of (apex, scale_exp, month, pair)
    let mut stack = vec![(GoldenPoint::origin(), 0i64, 1u32, 0u32)];
    while let Some((apex, e, month, pair_id)) = stack.pop() {
        if month > months {
            continue;
        }
        let corner = GoldenPoint::new(&apex.x + phi_pow(e - 1), apex.y.clone());
        tiles.push(RabbitTile {
            pair_id,
            month,
            rect: GoldenRect::from_power_dims(corner.clone(), e - 2, e - 2),
        });
        // same pair, one month older, in the left sub-triangle
        stack.push((apex.clone(), e - 1, month + 1, pair_id));
        // child born two months on, in the upper sub-triangle
        if let Some(&child) = child_ids.get(&(pair_id, month + 2)) {
            let upper_apex = GoldenPoint::new(corner.x, &apex.y + phi_pow(e - 2));
            stack.push((upper_apex, e - 2, month + 2, child));
        }
    }
    tiles.sort_by(|p, q| (p.month, p.pair_id).cmp(&(q.month, q.pair_id)));
    Ok(RabbitTiling {
        shape: RabbitShape::Triangle,
        months,
        region: triangle_region(),
        tiles,
    })
}

/// Golden-rectangle tiling of the trapezoid.
///
/// Every pair owns a convergence point on the edge OP: the original pair
/// converges to the origin, and a pair born in month `m` sits one
/// ancestor-tile further along the ray, shifted by the width and height of
/// its parent's month-`(m-1)` tile, `(φ^-m, φ^(-m+1))`. The pair's
/// month-`j` tile spans `x ∈ [c.x+φ^-j, c.x+φ^(1-j)]`, `y ∈ [c.y, c.y+φ^-j]`,
/// marching leftward toward `c` as the pair ages.
pub fn layout_trapezoid(months: u32) -> Result<RabbitTiling, RabbitError> {
    let pairs = breed(months)?;
    let points = convergence_points(&pairs);
    let mut tiles = Vec::new();
    for pair in &pairs {
        let c = &points[pair.id as usize];
        for month in pair.birth_month..=months {
            let j = month as i64;
            let lo = GoldenPoint::new(&c.x + phi_pow(-j), c.y.clone());
            tiles.push(RabbitTile {
                pair_id: pair.id,
                month,
                rect: GoldenRect::from_power_dims(lo, -j - 1, -j),
            });
        }
    }
    tiles.sort_by(|p, q| (p.month, p.pair_id).cmp(&(q.month, q.pair_id)));
    Ok(RabbitTiling {
        shape: RabbitShape::Trapezoid,
        months,
        region: trapezoid_region(),
        tiles,
    })
}

/// Convergence point of each pair's leftward tile series, indexed by pair
/// id. Every point lies exactly on the ray `y = φx`.
pub fn convergence_points(pairs: &[RabbitPair]) -> Vec<GoldenPoint> {
    let mut points: Vec<GoldenPoint> = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let p = match pair.parent_id {
            None => GoldenPoint::origin(),
            Some(parent) => {
                let base = &points[parent as usize];
                let m = pair.birth_month as i64;
                GoldenPoint::new(&base.x + phi_pow(-m), &base.y + phi_pow(-m + 1))
            }
        };
        points.push(p);
    }
    points
}

fn child_lookup(pairs: &[RabbitPair]) -> BTreeMap<(u32, u32), u32> {
    pairs
        .iter()
        .filter_map(|p| p.parent_id.map(|parent| ((parent, p.birth_month), p.id)))
        .collect()
}

/// Exact verification record for a rabbit tiling; every check is an exact
/// predicate or ring identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RabbitVerifyReport {
    pub shape: RabbitShape,
    pub months: u32,
    /// month-k tile count equals F_k for every k
    pub counts_match_fibonacci: bool,
    /// month-k tiles have the exact power-of-φ dimensions of their shape
    pub dimensions_exact: bool,
    pub pairwise_interior_disjoint: bool,
    pub contained_in_region: bool,
    /// covered area equals the Fibonacci-weighted partial sum and
    /// `covered + residual = rhs` exactly
    pub area_identity_exact: bool,
}

impl RabbitVerifyReport {
    pub fn all_pass(&self) -> bool {
        self.counts_match_fibonacci
            && self.dimensions_exact
            && self.pairwise_interior_disjoint
            && self.contained_in_region
            && self.area_identity_exact
    }
}

/// Run every exact check on a tiling. Failures land in the report rather
/// than in an error.
pub fn verify_tiling(t: &RabbitTiling) -> RabbitVerifyReport {
    let mut counts = BTreeMap::new();
    for tile in &t.tiles {
        *counts.entry(tile.month).or_insert(0i64) += 1;
    }
    let counts_match_fibonacci = (1..=t.months).all(|k| {
        counts.get(&k).copied().unwrap_or(0) == fib_i64(k)
    });

    let dimensions_exact = t.tiles.iter().all(|tile| {
        let (w, h) = tile_dim_exps(t.shape, tile.month);
        tile.rect.width() == phi_pow(w) && tile.rect.height() == phi_pow(h)
    });

    let mut pairwise_interior_disjoint = true;
    'outer: for (i, a) in t.tiles.iter().enumerate() {
        for b in &t.tiles[i + 1..] {
            if !a.rect.interior_disjoint(&b.rect) {
                pairwise_interior_disjoint = false;
                break 'outer;
            }
        }
    }

    let contained_in_region = t.tiles.iter().all(|tile| t.region.contains_rect(&tile.rect));

    let covered: GoldenNumber = t.tiles.iter().map(|tile| tile.rect.area()).sum();
    let n = match t.shape {
        RabbitShape::Triangle => -3,
        RabbitShape::Trapezoid => -2,
    };
    let formula = Formula::FibWeighted;
    let area_identity_exact = covered == {
        let mut partial = GoldenNumber::zero();
        for k in 1..=t.months {
            partial += &formula.term(n, k);
        }
        partial
    } && &covered + formula.residual(n, t.months) == formula.rhs(n);

    RabbitVerifyReport {
        shape: t.shape,
        months: t.months,
        counts_match_fibonacci,
        dimensions_exact,
        pairwise_interior_disjoint,
        contained_in_region,
        area_identity_exact,
    }
}

fn fib_i64(k: u32) -> i64 {
    let f = fibonacci(k as i64);
    i64::try_from(&f).expect("fibonacci count fits i64 for tested months")
}

fn tile_dim_exps(shape: RabbitShape, month: u32) -> (i64, i64) {
    let k = month as i64;
    match shape {
        RabbitShape::Triangle => (-k - 1, -k - 1),
        RabbitShape::Trapezoid => (-k - 1, -k),
    }
}

impl Serialize for RabbitTiling {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<TileWire> = self
            .tiles
            .iter()
            .map(|t| TileWire {
                pair: t.pair_id,
                month: t.month,
                lo: t.rect.lo.clone(),
                hi: t.rect.hi.clone(),
            })
            .collect();
        let mut st = serializer.serialize_struct("RabbitTiling", 4)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("months", &self.months)?;
        st.serialize_field("region", &self.region.vertices)?;
        st.serialize_field("tiles", &wire)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RabbitTiling {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            shape: RabbitShape,
            months: u32,
            #[allow(dead_code)]
            region: Vec<GoldenPoint>,
            tiles: Vec<TileWire>,
        }
        let raw = Raw::deserialize(deserializer)?;
        // the region and the tile dimension tags are canonical per shape
        let region = match raw.shape {
            RabbitShape::Triangle => triangle_region(),
            RabbitShape::Trapezoid => trapezoid_region(),
        };
        let tiles = raw
            .tiles
            .into_iter()
            .map(|w| {
                let (we, he) = tile_dim_exps(raw.shape, w.month);
                let rect = GoldenRect::from_power_dims(w.lo, we, he);
                if rect.hi != w.hi {
                    return Err(D::Error::custom(format!(
                        "tile for pair {} month {} has inconsistent corners",
                        w.pair, w.month
                    )));
                }
                Ok(RabbitTile {
                    pair_id: w.pair,
                    month: w.month,
                    rect,
                })
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Ok(RabbitTiling {
            shape: raw.shape,
            months: raw.months,
            region,
            tiles,
        })
    }
}
