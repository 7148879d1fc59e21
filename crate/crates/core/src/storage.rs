//! Binary cache format for [`DimTable`].
//!
//! ```text
//! magic       4 bytes   "RDIM"
//! version     u16 LE    1
//! n_max       u32 LE
//! record k    for k = 0..=n_max:
//!   bit_len   u64 LE    (k² - k)/2 + 1, or 1 for k = 0
//!   words     ceil(bit_len / 64) × u64 LE, padding bits zero
//! checksum    u64 LE    wrapping sum of every record word
//! ```

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::dims::{bit_length, DimSet, DimTable};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"RDIM";
pub const VERSION: u16 = 1;

struct Counting<W> {
    inner: W,
    written: u64,
}

impl<W: Write> Counting<W> {
    fn put(&mut self, bytes: &[u8]) -> Result<()> {
        self.inner.write_all(bytes).map_err(|source| Error::Write {
            written: self.written,
            source,
        })?;
        self.written += bytes.len() as u64;
        Ok(())
    }
}

/// Writes `table` and returns the number of bytes written.
pub fn save_table<W: Write>(table: &DimTable, sink: W) -> Result<u64> {
    let mut out = Counting {
        inner: sink,
        written: 0,
    };
    out.put(MAGIC)?;
    out.put(&VERSION.to_le_bytes())?;
    out.put(&table.n_max().to_le_bytes())?;
    let mut checksum = 0u64;
    let mut buf = Vec::new();
    for set in table.sets() {
        out.put(&(set.bit_len() as u64).to_le_bytes())?;
        buf.clear();
        for &w in set.words() {
            checksum = checksum.wrapping_add(w);
            buf.extend_from_slice(&w.to_le_bytes());
        }
        out.put(&buf)?;
    }
    out.put(&checksum.to_le_bytes())?;
    out.inner.flush().map_err(|source| Error::Write {
        written: out.written,
        source,
    })?;
    Ok(out.written)
}

fn read_exact_or<R: Read>(src: &mut R, buf: &mut [u8], err: impl FnOnce() -> Error) -> Result<()> {
    match src.read_exact(buf) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => Err(err()),
        Err(e) => Err(e.into()),
    }
}

/// Reads and validates a table written by [`save_table`].
pub fn load_table<R: Read>(mut source: R) -> Result<DimTable> {
    let mut header = [0u8; 10];
    read_exact_or(&mut source, &mut header, || {
        Error::UnsupportedFormat("file shorter than the 10-byte header".into())
    })?;
    if &header[..4] != MAGIC {
        return Err(Error::UnsupportedFormat(format!(
            "bad magic {:?}",
            String::from_utf8_lossy(&header[..4])
        )));
    }
    let version = u16::from_le_bytes([header[4], header[5]]);
    if version != VERSION {
        return Err(Error::UnsupportedFormat(format!("version {version}")));
    }
    let n_max = u32::from_le_bytes(header[6..10].try_into().expect("4 bytes"));

    let mut checksum = 0u64;
    let mut sets = Vec::new();
    let mut word_buf = [0u8; 8];
    let mut bytes = Vec::new();
    for k in 0..=n_max {
        let record = k as usize;
        let truncated = || Error::Corrupt {
            record,
            reason: "truncated".into(),
        };
        read_exact_or(&mut source, &mut word_buf, truncated)?;
        let bit_len = u64::from_le_bytes(word_buf);
        let expected = bit_length(k) as u64;
        if bit_len != expected {
            return Err(Error::Corrupt {
                record,
                reason: format!("bit length {bit_len}, expected {expected}"),
            });
        }
        let words = (bit_len as usize).div_ceil(64);
        bytes.resize(words * 8, 0);
        read_exact_or(&mut source, &mut bytes, truncated)?;
        let words: Vec<u64> = bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        for &w in &words {
            checksum = checksum.wrapping_add(w);
        }
        let set = DimSet::from_words(k, bit_len as usize, words).map_err(|_| Error::Corrupt {
            record,
            reason: "non-zero padding bits".into(),
        })?;
        sets.push(set);
    }
    let footer = n_max as usize + 1;
    read_exact_or(&mut source, &mut word_buf, || Error::Corrupt {
        record: footer,
        reason: "missing checksum".into(),
    })?;
    let stored = u64::from_le_bytes(word_buf);
    if stored != checksum {
        return Err(Error::Checksum {
            stored,
            computed: checksum,
        });
    }
    let mut probe = [0u8; 1];
    if source.read(&mut probe)? != 0 {
        return Err(Error::Corrupt {
            record: footer,
            reason: "trailing bytes after checksum".into(),
        });
    }
    DimTable::from_sets(sets)
}

pub fn save_table_to_path(table: &DimTable, path: impl AsRef<Path>) -> Result<u64> {
    let file = File::create(path)?;
    save_table(table, BufWriter::new(file))
}

pub fn load_table_from_path(path: impl AsRef<Path>) -> Result<DimTable> {
    let file = File::open(path)?;
    load_table(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::{build_table, DEFAULT_MEMORY_LIMIT};

    fn bytes_of(n_max: u32) -> (DimTable, Vec<u8>) {
        let t = build_table(n_max, DEFAULT_MEMORY_LIMIT).unwrap();
        let mut buf = Vec::new();
        let written = save_table(&t, &mut buf).unwrap();
        assert_eq!(written as usize, buf.len());
        (t, buf)
    }

    #[test]
    fn empty_table_layout() {
        let (_, buf) = bytes_of(0);
        let mut expect = Vec::new();
        expect.extend_from_slice(b"RDIM");
        expect.extend_from_slice(&1u16.to_le_bytes());
        expect.extend_from_slice(&0u32.to_le_bytes());
        expect.extend_from_slice(&1u64.to_le_bytes());
        expect.extend_from_slice(&1u64.to_le_bytes());
        expect.extend_from_slice(&1u64.to_le_bytes()); // checksum
        assert_eq!(buf, expect);
    }

    #[test]
    fn round_trip_small() {
        let (t, buf) = bytes_of(4);
        let back = load_table(&buf[..]).unwrap();
        assert_eq!(back, t);
        assert_eq!(
            back.set(4).unwrap().iter().collect::<Vec<_>>(),
            vec![4, 6, 8, 10, 16]
        );
    }

    #[test]
    fn every_single_bit_flip_is_rejected() {
        let (_, buf) = bytes_of(4);
        for byte in 0..buf.len() {
            for bit in 0..8 {
                let mut bad = buf.clone();
                bad[byte] ^= 1 << bit;
                assert!(load_table(&bad[..]).is_err(), "flip at byte {byte} bit {bit}");
            }
        }
    }

    #[test]
    fn error_kinds() {
        let (_, buf) = bytes_of(6);
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(load_table(&bad[..]), Err(Error::UnsupportedFormat(_))));

        let mut bad = buf.clone();
        bad[4] = 2;
        assert!(matches!(load_table(&bad[..]), Err(Error::UnsupportedFormat(_))));

        let last = buf.len() - 1;
        let mut bad = buf.clone();
        bad[last] ^= 0x80;
        assert!(matches!(load_table(&bad[..]), Err(Error::Checksum { .. })));

        // Cut inside record 5: header 10 bytes, records 0..=4 take 5 × 16.
        let cut = 10 + 5 * 16 + 4;
        assert!(matches!(
            load_table(&buf[..cut]),
            Err(Error::Corrupt { record: 5, .. })
        ));

        let mut long = buf.clone();
        long.push(0);
        assert!(matches!(load_table(&long[..]), Err(Error::Corrupt { record: 7, .. })));
    }

    #[test]
    fn write_failure_reports_progress() {
        struct Limited(usize);
        impl Write for Limited {
            fn write(&mut self, b: &[u8]) -> io::Result<usize> {
                if self.0 == 0 {
                    return Err(io::Error::other("full"));
                }
                let n = b.len().min(self.0);
                self.0 -= n;
                Ok(n)
            }
            fn flush(&mut self) -> io::Result<()> {
                Ok(())
            }
        }
        let t = build_table(4, DEFAULT_MEMORY_LIMIT).unwrap();
        match save_table(&t, Limited(20)) {
            Err(Error::Write { written, .. }) => assert_eq!(written, 18),
            other => panic!("unexpected {other:?}"),
        }
    }
}
