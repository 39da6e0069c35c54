//! On-disk catalog: `<dir>/<n>.grp`.
//!
//! ```text
//! GRPCAT 1
//! order 8
//! count 5
//! checksum 0123456789abcdef
//! # provenance cyclic-extension
//! %table 8
//! ...
//! ```
//!
//! The checksum is CRC-64/ECMA-182 over every byte after the checksum line.

use std::path::{Path, PathBuf};

use crc::{Crc, CRC_64_ECMA_182};

use super::{CatalogEntry, Provenance};
use crate::error::{Error, Result};
use crate::format::{parse_blocks, write_table, GroupSpec};
use crate::group::GroupTable;

const CRC64: Crc<u64> = Crc::<u64>::new(&CRC_64_ECMA_182);

#[derive(Debug)]
pub struct CatalogLoad {
    pub entries: Vec<CatalogEntry>,
    /// No file for this order; the caller has to generate it.
    pub needs_generation: bool,
}

pub fn catalog_path(dir: &Path, order: usize) -> PathBuf {
    dir.join(format!("{order}.grp"))
}

pub fn catalog_store(dir: &Path, order: usize, entries: &[CatalogEntry]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut payload = String::new();
    for e in entries {
        assert_eq!(e.order, order);
        payload.push_str(&format!("# provenance {}\n", e.provenance.tag()));
        payload.push_str(&write_table(&e.group));
    }
    let sum = CRC64.checksum(payload.as_bytes());
    let text = format!("GRPCAT 1\norder {order}\ncount {}\nchecksum {sum:016x}\n{payload}", entries.len());
    let path = catalog_path(dir, order);
    let tmp = path.with_extension("grp.tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

pub fn catalog_load(dir: &Path, order: usize) -> Result<CatalogLoad> {
    let path = catalog_path(dir, order);
    let bytes = match std::fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Ok(CatalogLoad { entries: Vec::new(), needs_generation: true })
        }
        Err(e) => return Err(e.into()),
    };
    let corrupt = |m: &str| Error::CorruptCatalog(format!("{}: {m}", path.display()));
    let text = String::from_utf8(bytes).map_err(|_| corrupt("not UTF-8"))?;
    let mut header = text.splitn(5, '\n');
    let mut field = |name: &str| -> Result<String> {
        let line = header.next().ok_or_else(|| corrupt("truncated header"))?;
        if name == "GRPCAT" {
            return if line == "GRPCAT 1" { Ok(String::new()) } else { Err(corrupt("bad magic")) };
        }
        line.strip_prefix(name)
            .and_then(|v| v.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| corrupt(&format!("missing {name}")))
    };
    field("GRPCAT")?;
    let file_order: usize = field("order")?.parse().map_err(|_| corrupt("bad order"))?;
    let count: usize = field("count")?.parse().map_err(|_| corrupt("bad count"))?;
    let sum = u64::from_str_radix(&field("checksum")?, 16).map_err(|_| corrupt("bad checksum"))?;
    let payload = header.next().unwrap_or("");
    if CRC64.checksum(payload.as_bytes()) != sum {
        return Err(corrupt("checksum mismatch"));
    }
    if file_order != order {
        return Err(corrupt("order mismatch"));
    }
    let blocks = parse_blocks(payload).map_err(|e| corrupt(&e.to_string()))?;
    if blocks.len() != count {
        return Err(corrupt("entry count mismatch"));
    }
    let mut entries = Vec::with_capacity(count);
    for b in blocks {
        let provenance = b
            .comments
            .iter()
            .find_map(|c| c.strip_prefix("provenance ").and_then(Provenance::from_tag))
            .ok_or_else(|| corrupt("entry without provenance"))?;
        let GroupSpec::Table(rows) = b.spec else {
            return Err(corrupt("catalog entries must be tables"));
        };
        let g = GroupTable::from_table(&rows).map_err(|e| corrupt(&e.to_string()))?;
        if g.order() != order {
            return Err(corrupt("entry of the wrong order"));
        }
        entries.push(CatalogEntry::new(g, provenance));
    }
    Ok(CatalogLoad { entries, needs_generation: false })
}
