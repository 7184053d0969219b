//! Graphs of one-variable PL functions (SVG or binary PPM) and density plots
//! of unary terms over two-variable generators (binary PPM).
//!
//! Output depends only on the inputs: no timestamps, fixed palette, fixed
//! decimal formatting.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mcnaughton::PLFunction;
use crate::mv::ChainProduct;
use crate::rational::Rational;
use crate::term::Term;

const SVG_SIDE: f64 = 400.0;
const SVG_MARGIN: f64 = 20.0;

/// Vector graph of `f`. The polyline vertices are the exact breakpoints; they
/// are also recorded as `p/q` strings in `data-breakpoints` and `data-values`.
pub fn svg_graph(f: &PLFunction) -> String {
    let total = SVG_SIDE + 2.0 * SVG_MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" width="{SVG_SIDE}" height="{SVG_SIDE}" fill="white" stroke="black" stroke-width="1"/>"#
    );
    let coords: Vec<String> = f
        .points()
        .iter()
        .map(|(x, y)| {
            let px = SVG_MARGIN + x.to_f64() * SVG_SIDE;
            let py = SVG_MARGIN + (1.0 - y.to_f64()) * SVG_SIDE;
            format!("{px:.4},{py:.4}")
        })
        .collect();
    let xs: Vec<String> = f.points().iter().map(|(x, _)| x.to_string()).collect();
    let ys: Vec<String> = f.points().iter().map(|(_, y)| y.to_string()).collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="black" stroke-width="2" points="{}" data-breakpoints="{}" data-values="{}"/>"#,
        coords.join(" "),
        xs.join(" "),
        ys.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

/// Reads back the exact vertices recorded by [`svg_graph`].
pub fn svg_vertices(svg: &str) -> Result<Vec<(Rational, Rational)>> {
    let attr = |name: &str| -> Result<Vec<Rational>> {
        let key = format!("{name}=\"");
        let start = svg
            .find(&key)
            .ok_or_else(|| Error::Schema(format!("svg lacks `{name}`")))?
            + key.len();
        let len = svg[start..]
            .find('"')
            .ok_or_else(|| Error::Schema(format!("unterminated `{name}`")))?;
        svg[start..start + len].split_whitespace().map(str::parse).collect()
    };
    let xs = attr("data-breakpoints")?;
    let ys = attr("data-values")?;
    if xs.len() != ys.len() {
        return Err(Error::Schema("breakpoint and value counts differ".into()));
    }
    Ok(xs.into_iter().zip(ys).collect())
}

/// Square binary PPM (P6) of side `size`: black curve on white.
pub fn ppm_graph(f: &PLFunction, size: usize) -> Result<Vec<u8>> {
    check_grid(size)?;
    let mut pixels = vec![255u8; size * size * 3];
    let row_of = |c: usize| -> usize {
        let x = Rational::frac(2 * c as i64 + 1, 2 * size as i64);
        let y = f.eval(&x).expect("sample inside [0,1]").to_f64();
        ((1.0 - y) * (size - 1) as f64).round() as usize
    };
    let mut prev = None;
    for c in 0..size {
        let r = row_of(c);
        let (lo, hi) = match prev {
            Some(p) if p < r => (p + 1, r),
            Some(p) if p > r => (r, p - 1),
            _ => (r, r),
        };
        // vertical run joins neighbouring columns on steep pieces
        for row in lo..=hi {
            let at = (row * size + c) * 3;
            pixels[at..at + 3].fill(0);
        }
        prev = Some(r);
    }
    Ok(ppm(size, size, &pixels))
}

/// Two-variable function sampled in a density plot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `x`
    X,
    /// `y`
    Y,
    /// `|x − y|`
    Dist,
    /// `min(1, x + y)`
    Sum,
    /// `max(0, x + y − 1)`
    Prod,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::X,
        Generator::Y,
        Generator::Dist,
        Generator::Sum,
        Generator::Prod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::X => "x",
            Generator::Y => "y",
            Generator::Dist => "dist",
            Generator::Sum => "sum",
            Generator::Prod => "prod",
        }
    }

    /// Value at `(x, y) = (a/d, b/d)` as a numerator over `d`.
    fn numerator(self, a: u32, b: u32, d: u32) -> u32 {
        match self {
            Generator::X => a,
            Generator::Y => b,
            Generator::Dist => a.abs_diff(b),
            Generator::Sum => (a + b).min(d),
            Generator::Prod => (a + b).saturating_sub(d),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Schema(format!("unknown generator `{s}` (x, y, dist, sum, prod)")))
    }
}

/// `grid × grid` grayscale P6 raster of `term ∘ generator`, sampled at cell
/// centres `((i + 1/2)/grid, (j + 1/2)/grid)`; brightness is the value
/// (0 black, 1 white), `y` grows upward.
pub fn ppm_density(term: &Term, generator: Generator, grid: usize) -> Result<Vec<u8>> {
    check_grid(grid)?;
    // every sample and every generator value is a multiple of 1/(2·grid),
    // and MV operations stay on that lattice
    let d = u32::try_from(2 * grid).map_err(|_| Error::Schema("grid too large".into()))?;
    let chain = ChainProduct::chain(d)?;
    let shades: Vec<u8> = chain
        .elements()
        .map(|e| {
            let k = u64::from(e.apply_term(term).numerators()[0]);
            ((510 * k + u64::from(d)) / (2 * u64::from(d))) as u8
        })
        .collect();
    let mut pixels = Vec::with_capacity(grid * grid * 3);
    for row in 0..grid {
        let b = 2 * (grid - 1 - row) as u32 + 1;
        for col in 0..grid {
            let a = 2 * col as u32 + 1;
            let shade = shades[generator.numerator(a, b, d) as usize];
            pixels.extend_from_slice(&[shade; 3]);
        }
    }
    Ok(ppm(grid, grid, &pixels))
}

/// Share of pixels that are neither pure black nor pure white.
pub fn grey_fraction(ppm_bytes: &[u8]) -> f64 {
    let body = ppm_body(ppm_bytes);
    let pixels = body.len() / 3;
    let grey = body.chunks(3).filter(|p| p[0] != 0 && p[0] != 255).count();
    grey as f64 / pixels.max(1) as f64
}

fn ppm_body(bytes: &[u8]) -> &[u8] {
    // header is three whitespace-terminated fields after the magic number
    let mut fields = 0;
    let mut i = 0;
    while fields < 4 && i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            fields += 1;
        }
        i += 1;
    }
    &bytes[i..]
}

fn ppm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 2 {
        return Err(Error::Schema(format!("grid must be at least 2, got {grid}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_svg_records_exact_vertices() {
        let svg = svg_graph(&PLFunction::sigma_star());
        assert!(svg.contains(r#"data-breakpoints="0/1 1/3 2/3 1/1""#));
        assert!(svg.contains(r#"data-values="0/1 0/1 1/1 1/1""#));
        let pts = svg_vertices(&svg).unwrap();
        assert_eq!(PLFunction::from_points(pts).unwrap(), PLFunction::sigma_star());
    }

    #[test]
    fn constant_graph_is_horizontal() {
        let f = PLFunction::constant(Rational::half()).unwrap();
        let img = ppm_graph(&f, 9).unwrap();
        let body = ppm_body(&img);
        for c in 0..9 {
            for r in 0..9 {
                let black = body[(r * 9 + c) * 3] == 0;
                assert_eq!(black, r == 4, "pixel ({r},{c})");
            }
        }
    }

    #[test]
    fn density_shades_follow_generator() {
        let img = ppm_density(&Term::var(), Generator::X, 2).unwrap();
        assert_eq!(&img[..11], b"P6\n2 2\n255\n");
        // x = 1/4 and 3/4 in both rows
        assert_eq!(ppm_body(&img), [64, 64, 64, 191, 191, 191, 64, 64, 64, 191, 191, 191]);
    }

    #[test]
    fn iterating_sigma_shrinks_grey_zone() {
        let mut t = Term::var();
        let mut last = 1.0;
        for _ in 0..3 {
            t = Term::sigma().substitute(&t);
            let g = grey_fraction(&ppm_density(&t, Generator::Dist, 64).unwrap());
            assert!(g < last);
            last = g;
        }
    }

    #[test]
    fn bad_grid() {
        assert!(ppm_density(&Term::var(), Generator::X, 1).is_err());
        assert!(ppm_graph(&PLFunction::identity(), 0).is_err());
        assert!("tent".parse::<Generator>().is_err());
    }
}
