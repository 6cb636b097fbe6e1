//! Binary persistence for sieved `a`-value windows.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! offset  size  field
//! 0       6     magic "ABSUM1"
//! 6       2     u16 value width in bits (currently always 16)
//! 8       8     u64 first n in the window
//! 16      8     u64 one past the last n
//! 24      8     u64 lookahead margin the window was sieved with
//! 32      2*len raw u16 a-values, len = end - first
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::sieve::AValueWindow;

const MAGIC: &[u8; 6] = b"ABSUM1";
const WIDTH_BITS: u16 = 16;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not a checkpoint file (bad magic)")]
    BadMagic,
    #[error("unsupported value width {width} bits")]
    UnsupportedWidth { width: u16 },
    #[error("inconsistent bounds: first {first}, end {end}")]
    BadBounds { first: u64, end: u64 },
    #[error("payload length {actual} bytes, header implies {expected}")]
    LengthMismatch { expected: u64, actual: u64 },
}

pub fn write_checkpoint(
    path: &Path,
    window: &AValueWindow,
    margin: u64,
) -> Result<(), CheckpointError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&WIDTH_BITS.to_le_bytes())?;
    w.write_all(&window.offset().to_le_bytes())?;
    let end = window.offset() + window.len() as u64;
    w.write_all(&end.to_le_bytes())?;
    w.write_all(&margin.to_le_bytes())?;
    for &v in window.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a window back, returning it with the margin it was sieved under.
pub fn read_checkpoint(path: &Path) -> Result<(AValueWindow, u64), CheckpointError> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 6];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(CheckpointError::BadMagic);
    }
    let mut b2 = [0u8; 2];
    r.read_exact(&mut b2)?;
    let width = u16::from_le_bytes(b2);
    if width != WIDTH_BITS {
        return Err(CheckpointError::UnsupportedWidth { width });
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let first = u64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let end = u64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let margin = u64::from_le_bytes(b8);
    if first < 1 || end < first {
        return Err(CheckpointError::BadBounds { first, end });
    }
    let len = end - first;
    let expected = len
        .checked_mul(2)
        .ok_or(CheckpointError::BadBounds { first, end })?;
    let mut payload = Vec::new();
    r.read_to_end(&mut payload)?;
    if payload.len() as u64 != expected {
        return Err(CheckpointError::LengthMismatch {
            expected,
            actual: payload.len() as u64,
        });
    }
    let values: Vec<u16> = payload
        .chunks_exact(2)
        .map(|c| u16::from_le_bytes([c[0], c[1]]))
        .collect();
    Ok((AValueWindow::new(first, values), margin))
}
