//! Binary checkpoint format for a network plus its input normalizer.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! offset  size        field
//! 0       4           magic bytes "SSQN"
//! 4       4           format version, u32 (currently 1)
//! 8       4           layer width count D, u32
//! 12      4 * D       layer widths, u32 each, input first
//! ...                 for each of the D-1 layers, in order:
//!                       weights, f64 x (in_dim * out_dim), row-major
//!                       with shape [in_dim][out_dim]
//!                       biases, f64 x out_dim
//! ...     8 * dims[0] normalizer shift, f64 each
//! ...     8 * dims[0] normalizer scale, f64 each
//! ```
//!
//! Activations are not stored: they are fixed by the layer count (hidden
//! layers are ReLU except the last, which is tanh; the output is linear).
//! Save followed by load reproduces every parameter bit for bit.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::network::QNetwork;
use super::normalizer::Normalizer;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"SSQN";
const VERSION: u32 = 1;

pub fn write_checkpoint(w: &mut impl Write, net: &QNetwork, norm: &Normalizer) -> Result<()> {
    let dims = net.layer_dims();
    if norm.dim() != dims[0] {
        return Err(Error::DimensionMismatch {
            expected: dims[0],
            got: norm.dim(),
        });
    }
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(dims.len() as u32).to_le_bytes())?;
    for &d in &dims {
        w.write_all(&(d as u32).to_le_bytes())?;
    }
    for layer in &net.layers {
        write_f64s(w, &layer.weights)?;
        write_f64s(w, &layer.biases)?;
    }
    write_f64s(w, &norm.shift)?;
    write_f64s(w, &norm.scale)?;
    Ok(())
}

pub fn read_checkpoint(r: &mut impl Read) -> Result<(QNetwork, Normalizer)> {
    let mut magic = [0u8; 4];
    read_exact(r, &mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Checkpoint(format!(
            "bad magic bytes {magic:02x?}, not a checkpoint file"
        )));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(Error::Checkpoint(format!(
            "unsupported version {version}, expected {VERSION}"
        )));
    }
    let dim_count = read_u32(r)? as usize;
    if dim_count < 2 {
        return Err(Error::Checkpoint(format!(
            "need at least 2 layer widths, got {dim_count}"
        )));
    }
    let mut dims = Vec::with_capacity(dim_count);
    for _ in 0..dim_count {
        let d = read_u32(r)? as usize;
        if d == 0 {
            return Err(Error::Checkpoint("zero layer width".into()));
        }
        dims.push(d);
    }
    // Topology first, then overwrite every parameter from the stream.
    let mut net = QNetwork::with_dims(&dims, &mut ChaCha8Rng::seed_from_u64(0));
    for layer in &mut net.layers {
        read_f64s(r, &mut layer.weights)?;
        read_f64s(r, &mut layer.biases)?;
    }
    let mut norm = Normalizer::identity(dims[0]);
    read_f64s(r, &mut norm.shift)?;
    read_f64s(r, &mut norm.scale)?;
    let mut trailing = [0u8; 1];
    match r.read(&mut trailing)? {
        0 => Ok((net, norm)),
        _ => Err(Error::Checkpoint("trailing bytes after checkpoint".into())),
    }
}

pub fn save_checkpoint(path: impl AsRef<Path>, net: &QNetwork, norm: &Normalizer) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_checkpoint(&mut w, net, norm)?;
    w.flush()?;
    Ok(())
}

pub fn load_checkpoint(path: impl AsRef<Path>) -> Result<(QNetwork, Normalizer)> {
    let mut r = BufReader::new(File::open(path)?);
    read_checkpoint(&mut r)
}

fn write_f64s(w: &mut impl Write, values: &[f64]) -> Result<()> {
    for &v in values {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_f64s(r: &mut impl Read, out: &mut [f64]) -> Result<()> {
    let mut buf = [0u8; 8];
    for v in out {
        read_exact(r, &mut buf)?;
        *v = f64::from_le_bytes(buf);
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut buf = [0u8; 4];
    read_exact(r, &mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_exact(r: &mut impl Read, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf)
        .map_err(|e| Error::Checkpoint(format!("truncated checkpoint: {e}")))
}
