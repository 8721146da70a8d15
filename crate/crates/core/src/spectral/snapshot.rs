//! Binary field snapshots.
//!
//! Layout (little-endian): `b"BQSF"`, version `u16`, dim `u16`, N `u32`, L `f64`,
//! 12 reserved zero bytes (32-byte header), then `N^dim` row-major `f64` physical values.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::spectral::{Field, GridSpec};

pub const MAGIC: &[u8; 4] = b"BQSF";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 32;

pub fn write_snapshot<W: Write>(mut out: W, field: &Field) -> Result<()> {
    let grid = field.grid();
    let physical = field.to_physical();
    let values = physical.as_physical()?;
    let mut header = [0u8; HEADER_LEN];
    header[0..4].copy_from_slice(MAGIC);
    header[4..6].copy_from_slice(&VERSION.to_le_bytes());
    header[6..8].copy_from_slice(&(grid.dim() as u16).to_le_bytes());
    header[8..12].copy_from_slice(&(grid.points_per_axis() as u32).to_le_bytes());
    header[12..20].copy_from_slice(&grid.half_length().to_le_bytes());
    out.write_all(&header)?;
    let mut body = Vec::with_capacity(values.len() * 8);
    for v in values {
        body.extend_from_slice(&v.to_le_bytes());
    }
    out.write_all(&body)?;
    Ok(())
}

pub fn read_snapshot<R: Read>(mut input: R) -> Result<Field> {
    let mut header = [0u8; HEADER_LEN];
    input.read_exact(&mut header)?;
    if &header[0..4] != MAGIC {
        return Err(Error::Format("bad snapshot magic".into()));
    }
    let version = u16::from_le_bytes([header[4], header[5]]);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported snapshot version {version}")));
    }
    let dim = u16::from_le_bytes([header[6], header[7]]) as usize;
    let n = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
    let l = f64::from_le_bytes(header[12..20].try_into().unwrap());
    let grid = GridSpec::new(dim, n, l)?;
    let mut body = vec![0u8; grid.len() * 8];
    input.read_exact(&mut body)?;
    let values = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    Field::physical(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout_and_round_trip() {
        let g = GridSpec::new(2, 4, 1.25).unwrap();
        let f = Field::from_fn(g, |x| x[0] - 2.0 * x[1]);
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &f).unwrap();
        assert_eq!(buf.len(), HEADER_LEN + 16 * 8);
        assert_eq!(&buf[0..4], b"BQSF");
        assert_eq!(u16::from_le_bytes([buf[6], buf[7]]), 2);
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), 4);
        assert_eq!(f64::from_le_bytes(buf[12..20].try_into().unwrap()), 1.25);
        assert!(buf[20..32].iter().all(|&b| b == 0));
        assert_eq!(read_snapshot(buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_magic() {
        let mut buf = vec![0u8; 64];
        buf[0..4].copy_from_slice(b"XXXX");
        assert!(read_snapshot(buf.as_slice()).is_err());
    }
}
