//! Synthetic benchmark: hexagonal tiling, localized vector-field flows,
//! and seeded Gaussian noise.
//!
//! Hexagon centers sit on an odd-row-offset triangular lattice scaled so
//! the grid of centers spans the requested extent in both axes. Complex
//! structure: one vertex per hexagon, one edge per pair of hexagons sharing
//! a side, one triangle per triple of hexagons meeting at a corner. Shared
//! sides are Voronoi facets of the (scaled) center lattice, so each side is
//! the perpendicular bisector segment between its two centers: its midpoint
//! is the centers' midpoint and its normal points from the lower-indexed to
//! the higher-indexed hexagon, matching the canonical edge orientation.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::spectral::EdgeSignal;

/// Axis-aligned rectangle the grid of centers is scaled to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extent {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Default for Extent {
    fn default() -> Self {
        Self {
            xmin: -2.0,
            xmax: 2.0,
            ymin: -2.0,
            ymax: 2.0,
        }
    }
}

/// Geometry of one shared hexagon side, aligned with the edge order of the
/// accompanying complex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharedSide {
    pub midpoint: [f64; 2],
    /// Unit vector from the lower-indexed to the higher-indexed hexagon.
    pub normal: [f64; 2],
    pub length: f64,
}

/// Hexagon centers plus per-edge shared-side records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexGeometry {
    pub centers: Vec<[f64; 2]>,
    pub sides: Vec<SharedSide>,
}

const ROW_STEP: f64 = 0.866_025_403_784_438_6; // sqrt(3)/2

/// Builds the hexagonal-tiling complex and its geometry. `rows * cols`
/// hexagons; centers span `extent`.
pub fn hex_complex(
    rows: usize,
    cols: usize,
    extent: &Extent,
) -> Result<(SimplicialComplex, HexGeometry)> {
    if rows == 0 || cols == 0 {
        return Err(Error::DegenerateGrid {
            reason: format!("empty grid {rows}x{cols}"),
        });
    }
    let width = extent.xmax - extent.xmin;
    let height = extent.ymax - extent.ymin;
    if !(width > 0.0) || !(height > 0.0) {
        return Err(Error::DegenerateGrid {
            reason: format!("extent must have positive width and height, got {width}x{height}"),
        });
    }

    let raw_w = (cols - 1) as f64 + if rows > 1 { 0.5 } else { 0.0 };
    let raw_h = (rows - 1) as f64 * ROW_STEP;
    let ax = if raw_w > 0.0 {
        width / raw_w
    } else if raw_h > 0.0 {
        height / raw_h
    } else {
        1.0
    };
    let ay = if raw_h > 0.0 { height / raw_h } else { ax };
    let x0 = if raw_w > 0.0 {
        extent.xmin
    } else {
        (extent.xmin + extent.xmax) / 2.0
    };
    let y0 = if raw_h > 0.0 {
        extent.ymin
    } else {
        (extent.ymin + extent.ymax) / 2.0
    };

    let mut centers = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let x_raw = c as f64 + if r % 2 == 1 { 0.5 } else { 0.0 };
            centers.push([x0 + ax * x_raw, y0 + ay * (r as f64 * ROW_STEP)]);
        }
    }

    // Lattice basis after scaling and the three positive neighbor directions.
    let u = [ax, 0.0];
    let w = [ax / 2.0, ay * ROW_STEP];
    let wu = [w[0] - u[0], w[1] - u[1]];
    let neg = |v: [f64; 2]| [-v[0], -v[1]];
    let diff = |a: [f64; 2], b: [f64; 2]| [a[0] - b[0], a[1] - b[1]];
    // Voronoi facet of direction v, bounded by the Voronoi vertices shared
    // with the two lattice neighbors flanking v.
    let facet_len = |v: [f64; 2], p: [f64; 2], q: [f64; 2]| -> Result<f64> {
        let c1 = circumcenter(v, p)?;
        let c2 = circumcenter(v, q)?;
        Ok(((c1[0] - c2[0]).powi(2) + (c1[1] - c2[1]).powi(2)).sqrt())
    };
    let scale = ax.abs().max(ay.abs());
    let lengths = [
        facet_len(u, w, diff(u, w))?,
        facet_len(w, u, wu)?,
        facet_len(wu, w, neg(u))?,
    ];
    let open = [
        lengths[0] > 1e-9 * scale,
        lengths[1] > 1e-9 * scale,
        lengths[2] > 1e-9 * scale,
    ];

    // dir 0 = u (same row), dir 1 = w (next row, offset-right),
    // dir 2 = w - u (next row, offset-left).
    let neighbor = |r: usize, c: usize, dir: usize| -> Option<usize> {
        let (nr, nc) = match dir {
            0 => (r as isize, c as isize + 1),
            1 => (
                r as isize + 1,
                if r % 2 == 0 {
                    c as isize
                } else {
                    c as isize + 1
                },
            ),
            _ => (
                r as isize + 1,
                if r % 2 == 0 {
                    c as isize - 1
                } else {
                    c as isize
                },
            ),
        };
        if nr >= 0 && (nr as usize) < rows && nc >= 0 && (nc as usize) < cols {
            Some(nr as usize * cols + nc as usize)
        } else {
            None
        }
    };

    let mut edges: Vec<[usize; 2]> = Vec::new();
    let mut dir_of: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let i = r * cols + c;
            let nbs = [neighbor(r, c, 0), neighbor(r, c, 1), neighbor(r, c, 2)];
            for dir in 0..3 {
                if open[dir] {
                    if let Some(j) = nbs[dir] {
                        edges.push([i, j]);
                        dir_of.insert((i, j), dir);
                    }
                }
            }
            if open.iter().all(|&o| o) {
                if let (Some(a), Some(b)) = (nbs[0], nbs[1]) {
                    triangles.push([i, a, b]);
                }
                if let (Some(a), Some(b)) = (nbs[2], nbs[1]) {
                    triangles.push([i, a, b]);
                }
            }
        }
    }

    let complex = SimplicialComplex::build(rows * cols, &edges, &triangles)?;
    let sides = complex
        .edges()
        .iter()
        .map(|e| {
            let (p, q) = (e[0], e[1]);
            let (cp, cq) = (centers[p], centers[q]);
            let d = [cq[0] - cp[0], cq[1] - cp[1]];
            let dist = (d[0] * d[0] + d[1] * d[1]).sqrt();
            SharedSide {
                midpoint: [(cp[0] + cq[0]) / 2.0, (cp[1] + cq[1]) / 2.0],
                normal: [d[0] / dist, d[1] / dist],
                length: lengths[dir_of[&(p, q)]],
            }
        })
        .collect();

    Ok((complex, HexGeometry { centers, sides }))
}

/// Circumcenter of the triangle (origin, p, q): the Voronoi vertex shared
/// by those three lattice points.
fn circumcenter(p: [f64; 2], q: [f64; 2]) -> Result<[f64; 2]> {
    let det = 2.0 * (p[0] * q[1] - p[1] * q[0]);
    if det.abs() < 1e-30 || !det.is_finite() {
        return Err(Error::DegenerateGrid {
            reason: "collinear lattice directions".to_string(),
        });
    }
    let rp = p[0] * p[0] + p[1] * p[1];
    let rq = q[0] * q[0] + q[1] * q[1];
    Ok([(rp * q[1] - rq * p[1]) / det, (rq * p[0] - rp * q[0]) / det])
}

/// Planar vector field restricted to a union of balls:
/// F(x, y) = (cos(x + y), sin(x - y)) inside, zero outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub ball_centers: Vec<[f64; 2]>,
    pub radius: f64,
}

impl Default for FieldSpec {
    fn default() -> Self {
        let q = std::f64::consts::FRAC_PI_4;
        Self {
            ball_centers: vec![[q, q], [-q, -q]],
            radius: 0.7,
        }
    }
}

impl FieldSpec {
    pub fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        let inside = self.ball_centers.iter().any(|c| {
            let dx = p[0] - c[0];
            let dy = p[1] - c[1];
            dx * dx + dy * dy <= self.radius * self.radius
        });
        if inside {
            [(p[0] + p[1]).cos(), (p[0] - p[1]).sin()]
        } else {
            [0.0, 0.0]
        }
    }
}

/// Quadrature rule for the flux integral across a side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quadrature {
    #[default]
    Midpoint,
    ThreePoint,
}

/// Net flux of the field through every shared side, normalized to unit
/// norm (left as zero if the field misses the grid entirely).
pub fn field_flow(geometry: &HexGeometry, field: &FieldSpec, quadrature: Quadrature) -> EdgeSignal {
    let mut flow = DVector::zeros(geometry.sides.len());
    for (i, side) in geometry.sides.iter().enumerate() {
        let n = side.normal;
        let tangent = [-n[1], n[0]];
        let half = side.length / 2.0;
        flow[i] = match quadrature {
            Quadrature::Midpoint => {
                let f = field.eval(side.midpoint);
                side.length * (f[0] * n[0] + f[1] * n[1])
            }
            Quadrature::ThreePoint => {
                let t = (3.0f64 / 5.0).sqrt();
                [(-t, 5.0 / 9.0), (0.0, 8.0 / 9.0), (t, 5.0 / 9.0)]
                    .iter()
                    .map(|&(node, weight)| {
                        let p = [
                            side.midpoint[0] + half * node * tangent[0],
                            side.midpoint[1] + half * node * tangent[1],
                        ];
                        let f = field.eval(p);
                        weight * half * (f[0] * n[0] + f[1] * n[1])
                    })
                    .sum()
            }
        };
    }
    let norm = flow.norm();
    if norm > 0.0 {
        flow /= norm;
    }
    flow
}

/// Adds i.i.d. N(0, sigma^2) noise with a seeded generator.
pub fn add_noise(x: &EdgeSignal, sigma: f64, seed: u64) -> EdgeSignal {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    x + sigma * gaussian_vector(x.len(), &mut rng)
}

/// Standard normal vector draw.
pub fn gaussian_vector(dim: usize, rng: &mut impl rand::Rng) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| StandardNormal.sample(rng))
}

/// Signal-to-noise ratio of a unit-norm signal under i.i.d. noise:
/// 1 / (sigma^2 E).
pub fn snr_of(sigma: f64, edge_count: usize) -> f64 {
    1.0 / (sigma * sigma * edge_count as f64)
}

/// Noise level that realizes a target SNR for a unit-norm signal.
pub fn sigma_for(snr: f64, edge_count: usize) -> f64 {
    1.0 / (snr * edge_count as f64).sqrt()
}
