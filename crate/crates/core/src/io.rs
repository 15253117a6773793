//! File outputs: CSV point clouds, PGM rasters with a JSON sidecar.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::sig12;

/// Writes `bytes` to a temporary sibling, then renames it over `path`.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let tmp: PathBuf = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// Shortest decimal for `x` rounded to 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    let r = sig12(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn points_csv(points: &[Complex64]) -> String {
    let mut s = String::with_capacity(points.len() * 32 + 8);
    s.push_str("re,im\n");
    for z in points {
        s.push_str(&fmt_sig(z.re));
        s.push(',');
        s.push_str(&fmt_sig(z.im));
        s.push('\n');
    }
    s
}

pub fn write_points_csv(path: &Path, points: &[Complex64]) -> Result<()> {
    atomic_write(path, points_csv(points).as_bytes())
}

/// Greyscale raster; pixel (0, 0) is the top-left corner.
#[derive(Clone, Debug)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    /// Complex coordinate of the bottom-left corner of the image.
    pub origin: Complex64,
    /// Side length of one pixel.
    pub scale: f64,
    pub pixels: Vec<u8>,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    width: usize,
    height: usize,
    origin_re: f64,
    origin_im: f64,
    scale: f64,
    #[serde(flatten)]
    extra: &'a serde_json::Map<String, serde_json::Value>,
}

impl Raster {
    /// Blank raster framing `lo..hi` with a small margin.
    pub fn framing(lo: Complex64, hi: Complex64, width: usize) -> Result<Self> {
        if width == 0 || width > 16384 {
            return Err(Error::InvalidArgument("raster width must be in 1..=16384".into()));
        }
        let pad = 0.02 * (hi.re - lo.re).max(hi.im - lo.im).max(1e-9);
        let lo = lo - Complex64::new(pad, pad);
        let hi = hi + Complex64::new(pad, pad);
        let scale = (hi.re - lo.re) / width as f64;
        let height = (((hi.im - lo.im) / scale).ceil() as usize).clamp(1, 16384);
        Ok(Self {
            width,
            height,
            origin: lo,
            scale,
            pixels: vec![255; width * height],
        })
    }

    pub fn pixel_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let x = ((z.re - self.origin.re) / self.scale).floor();
        let y = ((z.im - self.origin.im) / self.scale).floor();
        if x < 0.0 || y < 0.0 || x >= self.width as f64 || y >= self.height as f64 {
            return None;
        }
        Some((x as usize, self.height - 1 - y as usize))
    }

    /// Centre of pixel (column, row).
    pub fn center_of(&self, col: usize, row: usize) -> Complex64 {
        let y = (self.height - 1 - row) as f64;
        self.origin + Complex64::new((col as f64 + 0.5) * self.scale, (y + 0.5) * self.scale)
    }

    pub fn plot(&mut self, z: Complex64, value: u8) {
        if let Some((x, y)) = self.pixel_of(z) {
            self.pixels[y * self.width + x] = value;
        }
    }

    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn sidecar_json(&self, extra: &serde_json::Map<String, serde_json::Value>) -> String {
        serde_json::to_string_pretty(&Sidecar {
            width: self.width,
            height: self.height,
            origin_re: sig12(self.origin.re),
            origin_im: sig12(self.origin.im),
            scale: sig12(self.scale),
            extra,
        })
        .expect("sidecar serialises")
    }

    /// Writes `path` (PGM) and `path.json`.
    pub fn write(&self, path: &Path, extra: &serde_json::Map<String, serde_json::Value>) -> Result<()> {
        atomic_write(path, &self.to_pgm())?;
        let mut side = path.as_os_str().to_owned();
        side.push(".json");
        atomic_write(Path::new(&side), self.sidecar_json(extra).as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_format() {
        let s = points_csv(&[Complex64::new(0.1 + 0.2, -1.0 / 3.0)]);
        assert_eq!(s, "re,im\n0.3,-0.333333333333\n");
        assert_eq!(fmt_sig(1.351639727561e-15), "1.35163972756e-15");
    }

    #[test]
    fn raster_round_trip() {
        let mut r = Raster::framing(Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0), 50).unwrap();
        let z = Complex64::new(0.5, 0.9);
        r.plot(z, 0);
        let (x, y) = r.pixel_of(z).unwrap();
        assert!((r.center_of(x, y) - z).norm() <= r.scale);
        let pgm = r.to_pgm();
        assert!(pgm.starts_with(b"P5\n50 "));
        assert_eq!(pgm.iter().filter(|&&b| b == 0).count(), 1);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = std::env::temp_dir().join(format!("kol31-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join("a.csv");
        atomic_write(&p, b"one").unwrap();
        atomic_write(&p, b"two").unwrap();
        assert_eq!(fs::read(&p).unwrap(), b"two");
        fs::remove_dir_all(&dir).unwrap();
    }
}
