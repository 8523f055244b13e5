//! Static SVG of a planar group element and its lattice translates.

use std::fmt::Write;

use multitile::{Error, GroupElement, Lattice, QVector};

const CELLS: i64 = 3;
const WIDTH: f64 = 600.0;
const MARGIN: f64 = 20.0;

pub fn render(p: &GroupElement, l: &Lattice) -> Result<String, Error> {
    if p.dim() != 2 || l.dim() != 2 {
        return Err(Error::UnsupportedDimension(p.dim().max(l.dim())));
    }
    let b: Vec<[f64; 2]> = l.basis().rows().iter().map(to_xy).collect();
    let shifts: Vec<(i64, i64, [f64; 2])> = (0..CELLS)
        .flat_map(|i| (0..CELLS).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (x, y) = (i as f64, j as f64);
            (i, j, [x * b[0][0] + y * b[1][0], x * b[0][1] + y * b[1][1]])
        })
        .collect();
    let cell = |o: [f64; 2]| -> Vec<[f64; 2]> {
        vec![
            o,
            [o[0] + b[0][0], o[1] + b[0][1]],
            [o[0] + b[0][0] + b[1][0], o[1] + b[0][1] + b[1][1]],
            [o[0] + b[1][0], o[1] + b[1][1]],
        ]
    };
    let triangles: Vec<(i64, Vec<[f64; 2]>)> = p
        .terms()
        .iter()
        .map(|t| (t.coeff, t.simplex.vertices().iter().map(to_xy).collect()))
        .collect();

    let mut all: Vec<[f64; 2]> = shifts.iter().flat_map(|&(_, _, o)| cell(o)).collect();
    for &(_, _, o) in &shifts {
        all.extend(triangles.iter().flat_map(|(_, t)| t.iter().map(move |v| [v[0] + o[0], v[1] + o[1]])));
    }
    let (min_x, max_x) = extent(all.iter().map(|v| v[0]));
    let (min_y, max_y) = extent(all.iter().map(|v| v[1]));
    let scale = (WIDTH - 2.0 * MARGIN) / (max_x - min_x).max(max_y - min_y).max(1e-9);
    let height = (max_y - min_y) * scale + 2.0 * MARGIN;
    let pt = |v: [f64; 2]| format!("{:.3},{:.3}", MARGIN + (v[0] - min_x) * scale, height - MARGIN - (v[1] - min_y) * scale);
    let poly = |pts: &[[f64; 2]]| pts.iter().map(|&v| pt(v)).collect::<Vec<_>>().join(" ");

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for &(_, _, o) in &shifts {
        writeln!(svg, r##"<polygon points="{}" fill="none" stroke="#999" stroke-dasharray="4 3"/>"##, poly(&cell(o))).unwrap();
    }
    for &(i, j, o) in &shifts {
        let base = i == 0 && j == 0;
        for (coeff, t) in &triangles {
            let moved: Vec<[f64; 2]> = t.iter().map(|v| [v[0] + o[0], v[1] + o[1]]).collect();
            let color = if *coeff > 0 { "#3b6fb6" } else { "#c0392b" };
            let opacity = if base { 0.6 } else { 0.2 } * (coeff.unsigned_abs() as f64).min(3.0) / 3.0 + 0.1;
            writeln!(
                svg,
                r#"<polygon points="{}" fill="{color}" fill-opacity="{opacity:.2}" stroke="{color}" stroke-width="{}"/>"#,
                poly(&moved),
                if base { 1.5 } else { 0.5 }
            )
            .unwrap();
        }
    }
    for &(_, _, o) in &shifts {
        let c = pt(o);
        let (x, y) = c.split_once(',').expect("formatted pair");
        writeln!(svg, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="black"/>"#).unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn to_xy(v: &QVector) -> [f64; 2] {
    let f = v.to_f64();
    [f[0], f[1]]
}

fn extent(xs: impl Iterator<Item = f64>) -> (f64, f64) {
    xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}
