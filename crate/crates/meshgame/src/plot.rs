//! Ternary plot of the three-provider imputation simplex: the triangle of
//! efficient, individually rational payoffs, with the region where some
//! pair of providers would defect shaded and allocation points marked.

use crate::error::{Error, Result};
use crate::game::CharacteristicFunction;
use crate::lp::hybrid_tol;

pub const WIDTH: u32 = 800;
pub const HEIGHT: u32 = 700;

/// Pixel corners for providers 1, 2, 3: top, bottom-left, bottom-right.
const CORNERS: [[f64; 2]; 3] = [[400.0, 70.0], [90.0, 610.0], [710.0, 610.0]];

const MARKER_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// `v(grand) - sum of standalone values`: the payoff range the simplex
/// spreads over. Errors unless the game has exactly three providers and
/// the range is positive enough to carry coordinates.
fn simplex_span(cf: &CharacteristicFunction) -> Result<f64> {
    if cf.providers() != 3 {
        return Err(Error::PlotDimension(cf.providers()));
    }
    let grand = cf.value(cf.grand());
    let span = grand - (1..=3).map(|m| cf.standalone(m)).sum::<f64>();
    if span <= hybrid_tol(grand) {
        return Err(Error::DegenerateSimplex(span));
    }
    Ok(span)
}

/// Maps an efficient payoff vector onto the simplex:
/// `lambda[m] = (x[m] - v({m})) / span`. Coordinates sum to one; a
/// negative coordinate means provider `m + 1` is paid below its
/// standalone worth.
pub fn barycentric_coords(cf: &CharacteristicFunction, payoffs: &[f64]) -> Result<[f64; 3]> {
    let span = simplex_span(cf)?;
    if payoffs.len() != 3 {
        return Err(Error::InvalidAllocation(format!(
            "expected 3 payoffs, got {}",
            payoffs.len()
        )));
    }
    let grand = cf.value(cf.grand());
    let total: f64 = payoffs.iter().sum();
    if (total - grand).abs() > hybrid_tol(grand) {
        return Err(Error::InvalidAllocation(format!(
            "payoffs sum to {total} but the grand coalition is worth {grand}; only efficient allocations live on the simplex"
        )));
    }
    let mut lambda = [0.0; 3];
    for m in 0..3 {
        lambda[m] = (payoffs[m] - cf.standalone(m as u32 + 1)) / span;
    }
    Ok(lambda)
}

/// Per-provider ceilings cutting the core out of the simplex: the core is
/// exactly `{ lambda in triangle : lambda[k] <= bounds[k] }`, since paying
/// provider `k + 1` more than this starves the opposing pair below its
/// standalone worth.
pub fn core_upper_bounds(cf: &CharacteristicFunction) -> Result<[f64; 3]> {
    let span = simplex_span(cf)?;
    let grand = cf.grand();
    let mut bounds = [0.0; 3];
    for k in 1..=3u32 {
        bounds[k as usize - 1] =
            (cf.value(grand) - cf.value(grand.without(k)) - cf.standalone(k)) / span;
    }
    Ok(bounds)
}

/// A labeled allocation placed on the simplex.
#[derive(Clone, Debug)]
pub struct BarycentricPoint {
    pub label: String,
    pub lambda: [f64; 3],
}

impl BarycentricPoint {
    pub fn from_payoffs(
        cf: &CharacteristicFunction,
        label: impl Into<String>,
        payoffs: &[f64],
    ) -> Result<Self> {
        Ok(BarycentricPoint {
            label: label.into(),
            lambda: barycentric_coords(cf, payoffs)?,
        })
    }
}

fn to_pixel(lambda: &[f64; 3]) -> [f64; 2] {
    let mut p = [0.0; 2];
    for (l, corner) in lambda.iter().zip(CORNERS) {
        p[0] += l * corner[0];
        p[1] += l * corner[1];
    }
    p
}

/// Sutherland-Hodgman step: the part of `poly` with `lambda[k] >= bound`.
/// Vertices stay in simplex coordinates so the cut is a straight line.
fn clip_half_plane(poly: &[[f64; 3]], k: usize, bound: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (i, &a) in poly.iter().enumerate() {
        let b = poly[(i + 1) % poly.len()];
        let fa = a[k] - bound;
        let fb = b[k] - bound;
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa < 0.0) != (fb < 0.0) {
            let t = fa / (fa - fb);
            let mut cut = [0.0; 3];
            for j in 0..3 {
                cut[j] = a[j] + t * (b[j] - a[j]);
            }
            out.push(cut);
        }
    }
    out
}

fn pixel_area(poly: &[[f64; 2]]) -> f64 {
    let mut twice = 0.0;
    for (i, a) in poly.iter().enumerate() {
        let b = poly[(i + 1) % poly.len()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    twice.abs() / 2.0
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polygon_points(poly: &[[f64; 3]]) -> String {
    poly.iter()
        .map(|l| {
            let [x, y] = to_pixel(l);
            format!("{x:.2},{y:.2}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders the simplex as a standalone SVG document: the imputation
/// triangle with corners labeled SP1..SP3, the unstable part (payoffs some
/// pair can improve on alone) shaded, and each point marked and labeled.
/// Output is deterministic byte for byte.
pub fn render_barycentric(
    cf: &CharacteristicFunction,
    points: &[BarycentricPoint],
) -> Result<String> {
    let bounds = core_upper_bounds(cf)?;
    let triangle: Vec<[f64; 3]> = vec![
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ];

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));

    // Unstable region: for each provider ceiling, the part of the triangle
    // beyond it. Overlaps darken, which is faithful: there several
    // coalitions object at once.
    for (k, &bound) in bounds.iter().enumerate() {
        let region = clip_half_plane(&triangle, k, bound);
        if region.len() < 3 {
            continue;
        }
        let pixels: Vec<[f64; 2]> = region.iter().map(to_pixel).collect();
        if pixel_area(&pixels) < 0.5 {
            continue;
        }
        svg.push_str(&format!(
            "<polygon points=\"{}\" fill=\"#808080\" fill-opacity=\"0.25\"/>\n",
            polygon_points(&region)
        ));
    }

    svg.push_str(&format!(
        "<polygon points=\"{}\" fill=\"none\" stroke=\"#303030\" stroke-width=\"1.5\"/>\n",
        polygon_points(&triangle)
    ));

    let corner_labels = [
        (CORNERS[0][0], CORNERS[0][1] - 14.0, "SP1"),
        (CORNERS[1][0], CORNERS[1][1] + 26.0, "SP2"),
        (CORNERS[2][0], CORNERS[2][1] + 26.0, "SP3"),
    ];
    for (x, y, label) in corner_labels {
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"17\" text-anchor=\"middle\" fill=\"#303030\">{label}</text>\n"
        ));
    }

    for (i, point) in points.iter().enumerate() {
        let color = MARKER_COLORS[i % MARKER_COLORS.len()];
        let [x, y] = to_pixel(&point.lambda);
        svg.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"{color}\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"15\" fill=\"{color}\">{}</text>\n",
            x + 10.0,
            y - 10.0,
            escape_xml(&point.label)
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
