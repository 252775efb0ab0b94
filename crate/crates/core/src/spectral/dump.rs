//! Binary field dumps.
//!
//! Layout (little-endian): magic `MHD2`, `u32` version, `u32 nx`, `u32 ny`,
//! `f64 Lx`, `f64 Ly`, then `nx·ny` coefficients as interleaved `f64`
//! `(re, im)` in grid order (kx fastest).

use std::io::{Read, Write};

use num_complex::Complex;

use super::field::SpectralField;
use super::grid::Grid2D;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAGIC: &[u8; 4] = b"MHD2";
pub const VERSION: u32 = 1;

pub fn write_field<T: Scalar, W: Write>(mut w: W, f: &SpectralField<T>) -> Result<()> {
    let g = f.grid();
    let mut buf = Vec::with_capacity(32 + 16 * g.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(g.nx() as u32).to_le_bytes());
    buf.extend_from_slice(&(g.ny() as u32).to_le_bytes());
    buf.extend_from_slice(&g.lx().to_f64_lossy().to_le_bytes());
    buf.extend_from_slice(&g.ly().to_f64_lossy().to_le_bytes());
    for c in f.coeffs() {
        buf.extend_from_slice(&c.re.to_f64_lossy().to_le_bytes());
        buf.extend_from_slice(&c.im.to_f64_lossy().to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_field<R: Read>(mut r: R) -> Result<SpectralField<f64>> {
    let mut head = [0u8; 32];
    r.read_exact(&mut head).map_err(|_| Error::Format("truncated header".into()))?;
    if &head[..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let u32_at = |i: usize| u32::from_le_bytes(head[i..i + 4].try_into().unwrap());
    let f64_at = |i: usize| f64::from_le_bytes(head[i..i + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let grid = Grid2D::new(u32_at(8) as usize, u32_at(12) as usize, f64_at(16), f64_at(24))?;
    let mut body = vec![0u8; 16 * grid.len()];
    r.read_exact(&mut body).map_err(|_| Error::Format("truncated coefficient block".into()))?;
    let coeffs = body
        .chunks_exact(16)
        .map(|c| {
            Complex::new(f64::from_le_bytes(c[..8].try_into().unwrap()), f64::from_le_bytes(c[8..].try_into().unwrap()))
        })
        .collect();
    SpectralField::new(grid, coeffs)
}
