//! Field snapshot container.
//!
//! Layout (little-endian):
//!
//! ```text
//! magic   4 bytes  "TSNS"
//! version u32      1
//! dim     u32
//! n       u32      points per dimension
//! ncomp   u32      component count
//! data    ncomp · n^dim f64, row-major real grid samples per component
//! ```

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::TorusGrid;

const MAGIC: &[u8; 4] = b"TSNS";
const VERSION: u32 = 1;

pub fn write_snapshot(path: &Path, field: &SpectralField) -> Result<()> {
    let grid = field.grid();
    let mut file = std::fs::File::create(path)?;
    file.write_all(MAGIC)?;
    for v in [VERSION, grid.dim() as u32, grid.n() as u32, field.ncomp() as u32] {
        file.write_all(&v.to_le_bytes())?;
    }
    for comp in field.to_grid_values() {
        for v in comp {
            file.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<SpectralField> {
    let mut file = std::fs::File::open(path)?;
    let mut magic = [0u8; 4];
    file.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::config("not a field snapshot (bad magic)"));
    }
    let mut word = [0u8; 4];
    let mut next_u32 = |f: &mut std::fs::File| -> Result<u32> {
        f.read_exact(&mut word)?;
        Ok(u32::from_le_bytes(word))
    };
    let version = next_u32(&mut file)?;
    if version != VERSION {
        return Err(Error::config(format!("unsupported snapshot version {version}")));
    }
    let dim = next_u32(&mut file)? as usize;
    let n = next_u32(&mut file)? as usize;
    let ncomp = next_u32(&mut file)? as usize;
    let grid = TorusGrid::new(dim, n)?;
    if ncomp != dim {
        return Err(Error::config("snapshot component count must equal dim"));
    }
    let mut comps = Vec::with_capacity(ncomp);
    let mut buf = vec![0u8; grid.len() * 8];
    for _ in 0..ncomp {
        file.read_exact(&mut buf)?;
        let vals: Vec<f64> =
            buf.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        comps.push(vals);
    }
    SpectralField::from_grid_values(grid, &comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::random_dealiased_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip_snapshot() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_dealiased_field(grid, &mut rng);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("field.tsns");
        write_snapshot(&path, &f).unwrap();
        let g = read_snapshot(&path).unwrap();
        let mut diff = g.clone();
        diff.axpy(-1.0, &f);
        assert!(diff.l2_norm() <= 1e-12 * f.l2_norm());
    }
}
