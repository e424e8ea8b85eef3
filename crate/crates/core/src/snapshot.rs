//! Binary snapshot format for spectral fields.
//!
//! Layout (all little-endian): magic `GVLC`, u32 version = 1, u32 dim,
//! u32 n, u32 components, u64 count, then `count` complex values as
//! interleaved f64 `(re, im)`, frequency-major (row-major over the integer
//! frequency lattice in ascending `k` per axis) with components innermost.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::grid::GridSpec;

pub const MAGIC: [u8; 4] = *b"GVLC";
pub const VERSION: u32 = 1;

/// Ascending-k flat offset -> storage offset used by `SpectralField`.
fn sorted_to_fft_offset(spec: GridSpec, sorted: usize) -> usize {
    let n = spec.n;
    let half = (n / 2) as i64;
    let mut rem = sorted;
    let mut idx = [0usize; 3];
    for d in (0..spec.dim).rev() {
        idx[d] = rem % n;
        rem /= n;
    }
    let mut off = 0usize;
    for d in 0..spec.dim {
        let k = idx[d] as i64 - half; // ascending order starts at -n/2
        off = off * n + spec.index_of_k(k);
    }
    off
}

pub fn write_snapshot<W: Write>(w: &mut W, field: &SpectralField) -> Result<()> {
    let spec = field.spec;
    let count = (spec.points() * field.components()) as u64;
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(spec.dim as u32).to_le_bytes())?;
    w.write_all(&(spec.n as u32).to_le_bytes())?;
    w.write_all(&(field.components() as u32).to_le_bytes())?;
    w.write_all(&count.to_le_bytes())?;
    for sorted in 0..spec.points() {
        let off = sorted_to_fft_offset(spec, sorted);
        for c in 0..field.components() {
            let z = field.comp(c)[off];
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn write_snapshot_file(path: &std::path::Path, field: &SpectralField) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_snapshot(&mut f, field)
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

pub fn read_snapshot<R: Read>(r: &mut R) -> Result<SpectralField> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)
        .map_err(|_| CoreError::SnapshotFormat("file too short for header".into()))?;
    if magic != MAGIC {
        return Err(CoreError::SnapshotFormat(format!(
            "bad magic {magic:?}, expected {MAGIC:?}"
        )));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(CoreError::SnapshotFormat(format!(
            "unsupported version {version}, expected {VERSION}"
        )));
    }
    let dim = read_u32(r)? as usize;
    let n = read_u32(r)? as usize;
    let components = read_u32(r)? as usize;
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let count = u64::from_le_bytes(b8);
    let spec = GridSpec::torus(dim, n)
        .map_err(|e| CoreError::SnapshotFormat(format!("invalid grid in header: {e}")))?;
    let want = (spec.points() * components) as u64;
    if count != want {
        return Err(CoreError::SnapshotFormat(format!(
            "count {count} does not match dim/n/components (expected {want})"
        )));
    }
    let mut field = SpectralField::zeros(spec, components.max(1));
    if components == 0 {
        return Err(CoreError::SnapshotFormat("zero components".into()));
    }
    let mut buf = vec![0u8; 16];
    for sorted in 0..spec.points() {
        let off = sorted_to_fft_offset(spec, sorted);
        for c in 0..components {
            r.read_exact(&mut buf)
                .map_err(|_| CoreError::SnapshotFormat("truncated payload".into()))?;
            let re = f64::from_le_bytes(buf[0..8].try_into().unwrap());
            let im = f64::from_le_bytes(buf[8..16].try_into().unwrap());
            field.comp_mut(c)[off] = Complex64::new(re, im);
        }
    }
    field.set_real_symmetric(field.hermitian_residual() < 1e-12);
    Ok(field)
}

pub fn read_snapshot_file(path: &std::path::Path) -> Result<SpectralField> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    read_snapshot(&mut f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_field(spec: GridSpec, comps: usize, seed: u64) -> SpectralField {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let phys: Vec<Complex64> = (0..comps * spec.points())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        crate::transform::forward_transform_complex(&phys, spec, comps).unwrap()
    }

    #[test]
    fn round_trip_preserves_coefficients() {
        let spec = GridSpec::torus(3, 8).unwrap();
        let f = random_field(spec, 3, 1);
        let mut bytes = Vec::new();
        write_snapshot(&mut bytes, &f).unwrap();
        assert_eq!(
            bytes.len(),
            4 + 4 + 4 + 4 + 4 + 8 + 16 * spec.points() * 3
        );
        let g = read_snapshot(&mut bytes.as_slice()).unwrap();
        assert_eq!(f.coeffs(), g.coeffs());
    }

    #[test]
    fn header_layout_is_bit_exact() {
        let spec = GridSpec::torus(1, 8).unwrap();
        let mut f = SpectralField::zeros(spec, 1);
        f.set(0, &[-4], Complex64::new(1.5, -2.5));
        let mut bytes = Vec::new();
        write_snapshot(&mut bytes, &f).unwrap();
        assert_eq!(&bytes[0..4], b"GVLC");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 1); // dim
        assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 8); // n
        assert_eq!(u32::from_le_bytes(bytes[16..20].try_into().unwrap()), 1); // comps
        assert_eq!(u64::from_le_bytes(bytes[20..28].try_into().unwrap()), 8); // count
        // first payload value is k = -4 (ascending order starts at -n/2)
        let re = f64::from_le_bytes(bytes[28..36].try_into().unwrap());
        let im = f64::from_le_bytes(bytes[36..44].try_into().unwrap());
        assert_eq!((re, im), (1.5, -2.5));
    }

    #[test]
    fn rejects_bad_magic_version_and_truncation() {
        let spec = GridSpec::torus(1, 8).unwrap();
        let f = SpectralField::zeros(spec, 1);
        let mut bytes = Vec::new();
        write_snapshot(&mut bytes, &f).unwrap();

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(
            read_snapshot(&mut bad.as_slice()),
            Err(CoreError::SnapshotFormat(_))
        ));

        let mut badv = bytes.clone();
        badv[4] = 9;
        assert!(matches!(
            read_snapshot(&mut badv.as_slice()),
            Err(CoreError::SnapshotFormat(_))
        ));

        let truncated = &bytes[..bytes.len() - 7];
        assert!(matches!(
            read_snapshot(&mut &truncated[..]),
            Err(CoreError::SnapshotFormat(_))
        ));
    }
}
