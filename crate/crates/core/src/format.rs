//! Portable binary table file.
//!
//! All integers are little-endian:
//!
//! | field            | encoding                                         |
//! |------------------|--------------------------------------------------|
//! | magic            | `b"SORN"`                                        |
//! | version          | `u16` ([`FORMAT_VERSION`])                       |
//! | `n_b`, `n_s`     | `u8`, `u8`                                       |
//! | point count `p`  | `u32`                                            |
//! | lattice points   | `p` × (`u16` byte length, UTF-8 exact decimal)   |
//! | add, mul tables  | `N(N+1)/2` × (`u16` start, `u16` end) each       |
//! | log table        | `N` × (`u16` start, `u16` end)                   |
//! | neg, inv, abs    | `N` × `u16` each                                 |
//! | checksum         | `u32` CRC-32 (IEEE) of every preceding byte      |
//!
//! with `N = 8(p + 1) = 2^n_b`.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::TableError;
use crate::lattice::{decade_lattice, lattice_size_from_bits, Lattice};
use crate::lut::{triangular_len, TableSet};
use crate::rational::Rational;

pub const MAGIC: &[u8; 4] = b"SORN";
pub const FORMAT_VERSION: u16 = 1;

/// Byte size of a serialized table set, given its lattice point strings.
pub fn encoded_len(n: usize, point_bytes: usize, points: usize) -> usize {
    4 + 2 + 1 + 1 + 4 + 2 * points + point_bytes + 2 * 4 * triangular_len(n) + 4 * n + 3 * 2 * n + 4
}

fn point_strings(lattice: &Lattice) -> Vec<String> {
    lattice.points().iter().map(Rational::to_string).collect()
}

/// Size of the file [`serialize`] produces for `t`.
pub fn file_size(t: &TableSet) -> usize {
    let pts = point_strings(t.lattice());
    encoded_len(t.unum_count(), pts.iter().map(String::len).sum(), pts.len())
}

pub fn serialize(t: &TableSet) -> Result<Vec<u8>, TableError> {
    let n = t.unum_count();
    if t.n_b() == 0 || n != 1usize << t.n_b() {
        return Err(TableError::NotSerializable(format!(
            "{n} Unums is not a power of two"
        )));
    }
    let pts = point_strings(t.lattice());
    let mut out = Vec::with_capacity(encoded_len(n, pts.iter().map(String::len).sum(), pts.len()));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(t.n_b());
    out.push(t.n_s());
    out.extend_from_slice(&(pts.len() as u32).to_le_bytes());
    for s in &pts {
        let len = u16::try_from(s.len())
            .map_err(|_| TableError::NotSerializable(format!("lattice point `{s}` too long")))?;
        out.extend_from_slice(&len.to_le_bytes());
        out.extend_from_slice(s.as_bytes());
    }
    for code in t
        .add_table()
        .iter()
        .chain(t.mul_table())
        .chain(t.log_table())
    {
        out.extend_from_slice(&((code >> 16) as u16).to_le_bytes());
        out.extend_from_slice(&(*code as u16).to_le_bytes());
    }
    for i in t.neg_map().iter().chain(t.inv_map()).chain(t.abs_map()) {
        out.extend_from_slice(&i.to_le_bytes());
    }
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    Ok(out)
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8], TableError> {
        let end = self
            .pos
            .checked_add(k)
            .filter(|&e| e <= self.data.len())
            .ok_or(TableError::Truncated {
                needed: self.pos.saturating_add(k),
                available: self.data.len(),
            })?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, TableError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, TableError> {
        Ok(u16::from_le_bytes(
            self.take(2)?.try_into().expect("2 bytes"),
        ))
    }

    fn u32(&mut self) -> Result<u32, TableError> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn codes(&mut self, count: usize) -> Result<Vec<u32>, TableError> {
        let bytes = self.take(
            count
                .checked_mul(4)
                .ok_or(TableError::Malformed("size".into()))?,
        )?;
        Ok(bytes
            .chunks_exact(4)
            .map(|c| {
                (u16::from_le_bytes([c[0], c[1]]) as u32) << 16
                    | u16::from_le_bytes([c[2], c[3]]) as u32
            })
            .collect())
    }

    fn indices(&mut self, count: usize) -> Result<Vec<u16>, TableError> {
        let bytes = self.take(count * 2)?;
        Ok(bytes
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]))
            .collect())
    }
}

pub fn deserialize(data: &[u8]) -> Result<TableSet, TableError> {
    let mut r = Reader { data, pos: 0 };
    if r.take(4).map_err(|_| TableError::BadMagic)? != MAGIC {
        return Err(TableError::BadMagic);
    }
    let version = r.u16()?;
    if version != FORMAT_VERSION {
        return Err(TableError::VersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let n_b = r.u8()?;
    let n_s = r.u8()?;
    let count = r.u32()? as usize;
    if !(1..=16).contains(&n_b) || (count + 1) * 8 != 1usize << n_b {
        return Err(TableError::Malformed(format!(
            "{count} lattice points do not fit {n_b} bits"
        )));
    }
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let len = r.u16()? as usize;
        let text = std::str::from_utf8(r.take(len)?)
            .map_err(|_| TableError::Malformed("lattice point is not UTF-8".into()))?;
        points.push(Rational::parse(text).map_err(|e| TableError::Malformed(e.to_string()))?);
    }
    let n = 1usize << n_b;
    let needed = r.pos + 2 * 4 * triangular_len(n) + 4 * n + 3 * 2 * n + 4;
    if data.len() < needed {
        return Err(TableError::Truncated {
            needed,
            available: data.len(),
        });
    }
    if data.len() > needed {
        return Err(TableError::Malformed(format!(
            "{} trailing bytes",
            data.len() - needed
        )));
    }
    let body = &data[..needed - 4];
    let stored = u32::from_le_bytes(data[needed - 4..].try_into().expect("4 bytes"));
    let computed = crc32fast::hash(body);
    if stored != computed {
        return Err(TableError::ChecksumMismatch { stored, computed });
    }

    let lattice = Lattice::new(points)?;
    if n_s != 0 {
        let expected = decade_lattice(lattice_size_from_bits(n_b as u32)?, n_s as u32)?;
        if expected != lattice {
            return Err(TableError::Malformed(
                "lattice is not the decade lattice it claims".into(),
            ));
        }
    }
    let tri = triangular_len(n);
    let add = r.codes(tri)?;
    let mul = r.codes(tri)?;
    let log = r.codes(n)?;
    let neg = r.indices(n)?;
    let inv = r.indices(n)?;
    let abs = r.indices(n)?;
    TableSet::from_parts(n_b, n_s, lattice, add, mul, log, neg, inv, abs)
}

pub fn write_file(t: &TableSet, path: &Path) -> Result<(), TableError> {
    let bytes = serialize(t)?;
    let mut f = fs::File::create(path)?;
    f.write_all(&bytes)?;
    f.sync_all()?;
    Ok(())
}

pub fn read_file(path: &Path) -> Result<TableSet, TableError> {
    deserialize(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_small() {
        let t = TableSet::generate(6, 1).unwrap();
        let bytes = serialize(&t).unwrap();
        assert_eq!(bytes.len(), file_size(&t));
        assert_eq!(deserialize(&bytes).unwrap(), t);
    }

    #[test]
    fn distinct_errors() {
        let t = TableSet::generate(4, 1).unwrap();
        let bytes = serialize(&t).unwrap();

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(deserialize(&bad), Err(TableError::BadMagic)));
        assert!(matches!(deserialize(b"SO"), Err(TableError::BadMagic)));

        let mut bad = bytes.clone();
        bad[4] = 9;
        assert!(matches!(
            deserialize(&bad),
            Err(TableError::VersionMismatch { found: 9, .. })
        ));

        assert!(matches!(
            deserialize(&bytes[..bytes.len() - 10]),
            Err(TableError::Truncated { .. })
        ));

        let mut bad = bytes.clone();
        let mid = bad.len() / 2;
        bad[mid] ^= 0x40;
        assert!(matches!(
            deserialize(&bad),
            Err(TableError::ChecksumMismatch { .. })
        ));
    }

    #[test]
    fn non_power_of_two_env_is_rejected() {
        let env = crate::env::UnumEnv::new(Lattice::parse(&["2", "3.5", "5", "6"]).unwrap());
        let t = TableSet::for_env(&env).unwrap();
        assert!(matches!(serialize(&t), Err(TableError::NotSerializable(_))));
    }
}
