//! On-disk cache for built tables.
//!
//! Layout, all little endian: magic "CUBL", version u16, variant tag u8,
//! limit u64, eta num/den u64 pair, sigma num/den u64 pair, window p u64,
//! then (limit + 1) counts as u32. Unused parameter slots are zero. A header
//! that fails to match the requested parameters is treated as absent and the
//! table is rebuilt and rewritten, so stale files invalidate themselves.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::arith::Frac;
use crate::error::CubeError;
use crate::rho::{RhoTable, RhoVariant};

const MAGIC: &[u8; 4] = b"CUBL";
const VERSION: u16 = 1;

fn variant_tag(v: &RhoVariant) -> u8 {
    match v {
        RhoVariant::Plain => 0,
        RhoVariant::Smooth { .. } => 1,
        RhoVariant::Window { .. } => 2,
    }
}

fn variant_params(v: &RhoVariant) -> [u64; 5] {
    match v {
        RhoVariant::Plain => [0, 0, 0, 0, 0],
        RhoVariant::Smooth { eta } => [*eta.numer(), *eta.denom(), 0, 0, 0],
        RhoVariant::Window { sigma, p, eta } => {
            [*eta.numer(), *eta.denom(), *sigma.numer(), *sigma.denom(), *p]
        }
    }
}

fn variant_from(tag: u8, params: [u64; 5]) -> Result<RhoVariant, CubeError> {
    let frac = |n: u64, d: u64, what: &str| {
        if d == 0 {
            Err(CubeError::CacheFormat(format!("zero denominator for {what}")))
        } else {
            Ok(Frac::new(n, d))
        }
    };
    match tag {
        0 => Ok(RhoVariant::Plain),
        1 => Ok(RhoVariant::Smooth { eta: frac(params[0], params[1], "eta")? }),
        2 => Ok(RhoVariant::Window {
            sigma: frac(params[2], params[3], "sigma")?,
            p: params[4],
            eta: frac(params[0], params[1], "eta")?,
        }),
        t => Err(CubeError::CacheFormat(format!("unknown variant tag {t}"))),
    }
}

/// Stable file name for a (limit, variant) pair inside a cache directory.
pub fn cache_file_name(limit: u64, variant: &RhoVariant) -> String {
    let p = variant_params(variant);
    format!(
        "rho-v{}-t{}-{}-{}_{}-{}_{}-{}.cubl",
        VERSION,
        variant_tag(variant),
        limit,
        p[0],
        p[1],
        p[2],
        p[3],
        p[4]
    )
}

pub fn write_table(path: &Path, table: &RhoTable) -> Result<(), CubeError> {
    let mut buf = Vec::with_capacity(64 + 4 * table.counts().len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.push(variant_tag(table.variant()));
    buf.extend_from_slice(&table.limit().to_le_bytes());
    for word in variant_params(table.variant()) {
        buf.extend_from_slice(&word.to_le_bytes());
    }
    for &c in table.counts() {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    let tmp = path.with_extension("cubl.tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_table(path: &Path) -> Result<RhoTable, CubeError> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    let fail = |msg: &str| CubeError::CacheFormat(format!("{}: {msg}", path.display()));
    if bytes.len() < 55 {
        return Err(fail("truncated header"));
    }
    if &bytes[..4] != MAGIC {
        return Err(fail("bad magic"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(fail("unsupported version"));
    }
    let tag = bytes[6];
    let mut at = 7;
    let mut read_u64 = || {
        let w = u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
        at += 8;
        w
    };
    let limit = read_u64();
    let params = [read_u64(), read_u64(), read_u64(), read_u64(), read_u64()];
    let variant = variant_from(tag, params)?;
    let body = &bytes[at..];
    let expect = (limit + 1) as usize * 4;
    if body.len() != expect {
        return Err(fail("body length does not match header"));
    }
    let counts = body
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(RhoTable::from_parts(variant, counts))
}

/// Loads a matching table from `dir`, or builds it (with `parts` partitions)
/// and writes it back. The bool reports whether the cache was hit.
pub fn load_or_build(
    dir: &Path,
    limit: u64,
    variant: RhoVariant,
    parts: usize,
) -> Result<(RhoTable, bool), CubeError> {
    fs::create_dir_all(dir)?;
    let path: PathBuf = dir.join(cache_file_name(limit, &variant));
    if path.exists() {
        if let Ok(table) = read_table(&path) {
            if table.limit() == limit && *table.variant() == variant {
                return Ok((table, true));
            }
        }
    }
    let table = RhoTable::build_partitioned(limit, variant, parts)?;
    write_table(&path, &table)?;
    Ok((table, false))
}
