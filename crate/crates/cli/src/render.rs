//! `kol31 render`: PGM images of the windows, the boundary and the tiling.

use kol31::io::{write_points_csv, Raster};
use kol31::windows::{
    attractor_cloud, boundary_cloud, tiling_lattice, BoundaryScope, CloudMode, MapRegistry, WindowLabel,
};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::{check_cap, Failure, Format, RenderArgs, Which, MAX_DEPTH};

pub const MAX_WIDTH: usize = 8192;

/// Points with grey levels.
fn layers(a: &RenderArgs) -> Result<Vec<(Complex64, u8)>, Failure> {
    let depth = a.depth;
    let ab = || attractor_cloud(WindowLabel::AB, CloudMode::FullDepth { depth }).map(|c| c.points);
    let reg = MapRegistry::new();
    let f = [reg.f1.numeric(), reg.f2.numeric(), reg.f3.numeric(), reg.f4.numeric()];
    let shade = |pts: &[Complex64], maps: &[(usize, u8)]| -> Vec<(Complex64, u8)> {
        maps.iter()
            .flat_map(|&(i, g)| pts.iter().map(move |&z| (f[i].apply(z), g)))
            .collect()
    };
    Ok(match a.which {
        Which::A => shade(&ab()?, &[(0, 0)]),
        Which::B => shade(&ab()?, &[(1, 0), (2, 0)]),
        Which::C => shade(&ab()?, &[(3, 0)]),
        Which::Ab => shade(&ab()?, &[(0, 40), (1, 110), (2, 170)]),
        Which::Omega => shade(&ab()?, &[(0, 40), (1, 110), (2, 170), (3, 80)]),
        Which::Boundary => boundary_cloud(depth, BoundaryScope::AB)?
            .points
            .into_iter()
            .map(|z| (z, 0))
            .collect(),
        Which::Tiling => {
            let omega = attractor_cloud(WindowLabel::Omega, CloudMode::FullDepth { depth })?.points;
            let [l1, l2] = tiling_lattice().map(|v| v.to_complex());
            let mut out = Vec::with_capacity(omega.len() * 9);
            for i in -1i32..=1 {
                for j in -1i32..=1 {
                    let t = l1 * i as f64 + l2 * j as f64;
                    let g = (20 + 25 * ((i + 1) * 3 + (j + 1))) as u8;
                    out.extend(omega.iter().map(|&z| (z + t, g)));
                }
            }
            out
        }
    })
}

pub fn render(a: &RenderArgs) -> Result<(), Failure> {
    check_cap("depth", a.depth as u64, MAX_DEPTH)?;
    check_cap("width", a.width as u64, MAX_WIDTH as u64)?;
    let pts = layers(a)?;
    if a.format == Some(Format::Csv) {
        let zs: Vec<Complex64> = pts.iter().map(|p| p.0).collect();
        return Ok(write_points_csv(&a.out, &zs)?);
    }
    let zs: Vec<Complex64> = pts.iter().map(|p| p.0).collect();
    let (lo, hi) = kol31::windows::geometry::bbox(&zs);
    let mut img = Raster::framing(lo, hi, a.width)?;
    check_cap("height", img.height as u64, MAX_WIDTH as u64)?;
    for &(z, g) in &pts {
        img.plot(z, g);
    }
    let mut extra = Map::new();
    extra.insert("which".into(), json!(format!("{:?}", a.which).to_lowercase()));
    extra.insert("depth".into(), Value::from(a.depth));
    extra.insert("points".into(), Value::from(pts.len()));
    extra.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    Ok(img.write(&a.out, &extra)?)
}
