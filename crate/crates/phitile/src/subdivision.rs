//! Golden-ratio subdivision of a `φ^i × φ^j` rectangle into four
//! sub-rectangles, with the smaller slice first on each axis (the split
//! points sit at `lo + φ^(i-2)` and `lo + φ^(j-2)`, since
//! `φ^e = φ^(e-2) + φ^(e-1)`).
//!
//! Applied to every cell of an alternating-power window this refinement
//! lands the new grid lines exactly on the missing powers and reproduces
//! the every-power tiling; the A/D sub-rectangles of adjacent bead chains
//! interleave into the chains of the intermediate rays.

use crate::geometry::{GoldenPoint, GoldenRect, TileSet};
use crate::golden::phi_pow;
use crate::tiling::BeadedRay;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubdivisionError {
    #[error("parent rectangle carries no power-of-phi dimension tags")]
    UntaggedParent,
    #[error("input is not an alternating-power tiling (tile with even or missing aspect exponent)")]
    NotApTiles,
    #[error("rays with slope exponents {upper} and {lower} are not adjacent odd rays")]
    NonAdjacentRays { upper: i64, lower: i64 },
    #[error("merged sub-rectangles do not form a valid beaded ray")]
    InvalidMergedChain,
}

/// The four sub-rectangles of one golden split, named by position:
/// `a` left/top, `b` left/bottom, `c` right/top, `d` right/bottom.
///
/// Their diagonal slopes are `φ^(j-i+1)`, `φ^(j-i)`, `φ^(j-i)` and
/// `φ^(j-i-1)` for a `φ^i × φ^j` parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionQuad {
    pub a: GoldenRect,
    pub b: GoldenRect,
    pub c: GoldenRect,
    pub d: GoldenRect,
}

impl SubdivisionQuad {
    pub fn tiles(&self) -> [&GoldenRect; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn into_tiles(self) -> [GoldenRect; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// Split a tagged rectangle in the golden ratio on both axes, smaller
/// slice first.
pub fn subdivide(parent: &GoldenRect) -> Result<SubdivisionQuad, SubdivisionError> {
    let (i, j) = match (parent.width_exp(), parent.height_exp()) {
        (Some(i), Some(j)) => (i, j),
        _ => return Err(SubdivisionError::UntaggedParent),
    };
    let lo = &parent.lo;
    let split_x = &lo.x + phi_pow(i - 2);
    let split_y = &lo.y + phi_pow(j - 2);
    let at = |x: &crate::golden::GoldenNumber, y: &crate::golden::GoldenNumber| {
        GoldenPoint::new(x.clone(), y.clone())
    };
    Ok(SubdivisionQuad {
        a: GoldenRect::from_power_dims(at(&lo.x, &split_y), i - 2, j - 1),
        b: GoldenRect::from_power_dims(at(&lo.x, &lo.y), i - 2, j - 2),
        c: GoldenRect::from_power_dims(at(&split_x, &split_y), i - 1, j - 1),
        d: GoldenRect::from_power_dims(at(&split_x, &lo.y), i - 1, j - 2),
    })
}

/// Subdivide `depth` times, producing `4^depth` tiles.
pub fn subdivide_iter(parent: &GoldenRect, depth: u32) -> Result<TileSet, SubdivisionError> {
    let mut tiles = vec![parent.clone()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(tiles.len() * 4);
        for t in &tiles {
            next.extend(subdivide(t)?.into_tiles());
        }
        tiles = next;
    }
    Ok(TileSet::new(tiles))
}

/// Refine an alternating-power fundamental tiling into the every-power
/// tiling over the same window by splitting every cell once.
///
/// The split of a cell `x ∈ [φ^e, φ^(e+2)]` lands at
/// `φ^e + φ^(e-1+2·0)… = φ^e + φ^(e+1-2) · φ… = φ^(e+1)` — concretely
/// `lo + φ^(i-2)` with `i = e+1` is `φ^e + φ^(e-1) = φ^(e+1)`, exactly the
/// grid line the alternating pattern omits.
pub fn refine_ap_to_ep(ap_tiles: &TileSet) -> Result<TileSet, SubdivisionError> {
    let mut out = Vec::with_capacity(ap_tiles.len() * 4);
    for t in ap_tiles.iter() {
        match (t.width_exp(), t.height_exp()) {
            (Some(i), Some(j)) if (j - i).rem_euclid(2) == 1 => {}
            _ => return Err(SubdivisionError::NotApTiles),
        }
        out.extend(subdivide(t)?.into_tiles());
    }
    Ok(TileSet::new(out))
}

/// Merge the `d` sub-rectangles of the upper chain (slope `φ^(k+2)`) with
/// the `a` sub-rectangles of the lower chain (slope `φ^k`) into the chain
/// of the intermediate ray `φ^(k+1)`, and verify it exactly.
pub fn merged_ray_check(
    upper: &BeadedRay,
    lower: &BeadedRay,
) -> Result<BeadedRay, SubdivisionError> {
    if lower.slope_exp.rem_euclid(2) == 0 || upper.slope_exp != lower.slope_exp + 2 {
        return Err(SubdivisionError::NonAdjacentRays {
            upper: upper.slope_exp,
            lower: lower.slope_exp,
        });
    }
    let mut beads = Vec::with_capacity(upper.beads.len() + lower.beads.len());
    for bead in &upper.beads {
        beads.push(subdivide(bead)?.d);
    }
    for bead in &lower.beads {
        beads.push(subdivide(bead)?.a);
    }
    beads.sort_by(|p, q| p.lo.cmp(&q.lo));
    let merged = BeadedRay {
        slope_exp: lower.slope_exp + 1,
        beads,
    };
    // interleaved sub-rectangles must step one exponent at a time
    if !merged.is_valid_chain(1) {
        return Err(SubdivisionError::InvalidMergedChain);
    }
    Ok(merged)
}
