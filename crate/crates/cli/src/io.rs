//! Grid CSV, binary PPM heatmaps and JSON records.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use helmstab_core::{GridFunction2D, GridSpec};
use serde::Serialize;

pub const CSV_HEADER: &str = "x,y,value";

/// Writes `x,y,value` rows in m-major order with 17 significant digits.
pub fn write_grid_csv(grid: &GridFunction2D, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    let spec = grid.grid();
    writeln!(w, "{CSV_HEADER}")?;
    for m in 0..=spec.m() {
        let x = spec.x(m);
        for (n, v) in grid.slice(m).iter().enumerate() {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", x, spec.y(n), v)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a file written by [`write_grid_csv`]; the grid size is inferred from
/// the rows.
pub fn read_grid_csv(path: &Path) -> Result<GridFunction2D> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim() != CSV_HEADER {
        bail!("{}: missing header {CSV_HEADER:?}", path.display());
    }
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let mut next = |what: &str| -> Result<f64> {
            let s = cols
                .next()
                .with_context(|| format!("row {}: missing {what}", i + 2))?;
            s.trim()
                .parse()
                .with_context(|| format!("row {}: bad {what} {s:?}", i + 2))
        };
        let x = next("x")?;
        let _y = next("y")?;
        values.push(next("value")?);
        xs.push(x);
    }
    if xs.is_empty() {
        bail!("{}: no data rows", path.display());
    }
    let per_column = xs.iter().take_while(|&&x| x == xs[0]).count();
    if per_column < 3 || values.len() % per_column != 0 {
        bail!("{}: rows do not form a grid", path.display());
    }
    let columns = values.len() / per_column;
    if columns < 3 {
        bail!("{}: rows do not form a grid", path.display());
    }
    let spec = GridSpec::new(columns - 1, per_column - 1)?;
    Ok(GridFunction2D::from_values(spec, values)?)
}

/// Blue, white, red.
fn colormap(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0);
    let (a, b, s) = if t < 0.5 {
        ([59.0, 76.0, 192.0], [245.0, 245.0, 245.0], 2.0 * t)
    } else {
        ([245.0, 245.0, 245.0], [180.0, 4.0, 38.0], 2.0 * t - 1.0)
    };
    let mut px = [0u8; 3];
    for c in 0..3 {
        px[c] = (a[c] + (b[c] - a[c]) * s).round() as u8;
    }
    px
}

/// Binary PPM with one pixel per node, `x` to the right and `y` upward.
pub fn write_heatmap(grid: &GridFunction2D, path: &Path) -> Result<()> {
    let spec = grid.grid();
    let (width, height) = (spec.x_nodes(), spec.y_nodes());
    let (lo, hi) = grid
        .values()
        .iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = hi - lo;
    let mut pixels = Vec::with_capacity(width * height * 3);
    for n in (0..height).rev() {
        for m in 0..width {
            let v = grid.get(m, n);
            let t = if span > 0.0 && span.is_finite() {
                (v - lo) / span
            } else {
                0.5
            };
            pixels.extend_from_slice(&colormap(t));
        }
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    write!(w, "P6\n{width} {height}\n255\n")?;
    w.write_all(&pixels)?;
    w.flush()?;
    Ok(())
}

/// Width, height and RGB bytes of a binary PPM.
pub fn read_ppm(path: &Path) -> Result<(usize, usize, Vec<u8>)> {
    let mut bytes = Vec::new();
    File::open(path)
        .with_context(|| format!("opening {}", path.display()))?
        .read_to_end(&mut bytes)?;
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            bail!("{}: truncated header", path.display());
        }
        fields.push(std::str::from_utf8(&bytes[start..pos])?.to_string());
    }
    if fields[0] != "P6" || fields[3] != "255" {
        bail!("{}: not an 8-bit binary PPM", path.display());
    }
    let width: usize = fields[1].parse()?;
    let height: usize = fields[2].parse()?;
    let data = bytes[pos + 1..].to_vec();
    if data.len() != width * height * 3 {
        bail!(
            "{}: expected {} bytes of pixels",
            path.display(),
            width * height * 3
        );
    }
    Ok((width, height, data))
}

/// Pretty JSON; keys follow the field order of `T`.
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
