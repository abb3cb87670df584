//! On-disk formats and the error-to-exit-code mapping shared by every
//! subcommand.
//!
//! Two binary containers, both little-endian and CRC-terminated:
//!
//! instance ("CPI1"): magic, n: u64, m: u32, flags: u8 (bit 0 = planted
//! metadata present), optional (i: u64, j: u64, dist: u32), n rows of
//! ceil(m/8) packed bytes, CRC-32 of everything before it.
//!
//! code table ("GVT1"): magic, m: u32, d: u32, radius: u32, k: u64,
//! entry width: u8 (2 or 4), k codewords as u32, 2^m lookup entries of the
//! stated width (all-ones sentinel = no codeword in range), CRC-32.
//!
//! Instances may also be plain text, one '0'/'1' row per line; the first
//! byte of the file decides which parser runs.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::sync::OnceLock;

use codepair::bitvec::BitVector;
use codepair::codes::{BinaryCode, GilbertCode, LookupView};
use codepair::solver::{Instance, PlantedMeta};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// A failed run, tagged with the process exit code it should produce.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    /// Arguments no run could satisfy.
    Config(String),
    /// A violated internal invariant; a bug, not a user error.
    Internal(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CliError::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input: {m}"),
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Internal(m) => write!(f, "internal: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

// Library errors surfacing here are bad parameters, not bad files; paths
// that parse input map errors to Input explicitly.
impl From<codepair::Error> for CliError {
    fn from(e: codepair::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

const INSTANCE_MAGIC: &[u8; 4] = b"CPI1";
const CODE_MAGIC: &[u8; 4] = b"GVT1";

fn crc_table() -> &'static [u32; 256] {
    static TABLE: OnceLock<[u32; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u32; 256];
        for (i, slot) in t.iter_mut().enumerate() {
            let mut c = i as u32;
            for _ in 0..8 {
                c = if c & 1 == 1 { 0xedb8_8320 ^ (c >> 1) } else { c >> 1 };
            }
            *slot = c;
        }
        t
    })
}

/// CRC-32, reflected polynomial 0xEDB88320 (the zlib/PNG checksum).
pub fn crc32(data: &[u8]) -> u32 {
    let table = crc_table();
    let mut c = 0xffff_ffffu32;
    for &b in data {
        c = table[((c ^ b as u32) & 0xff) as usize] ^ (c >> 8);
    }
    c ^ 0xffff_ffff
}

/// Cursor over an untrusted byte buffer; every read is bounds-checked.
struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    fn take(&mut self, len: usize, what: &str) -> CliResult<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.buf.len());
        match end {
            Some(end) => {
                let s = &self.buf[self.pos..end];
                self.pos = end;
                Ok(s)
            }
            None => Err(CliError::input(format!("file truncated reading {what}"))),
        }
    }

    fn u8(&mut self, what: &str) -> CliResult<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u32_le(&mut self, what: &str) -> CliResult<u32> {
        let s = self.take(4, what)?;
        Ok(u32::from_le_bytes(s.try_into().unwrap()))
    }

    fn u64_le(&mut self, what: &str) -> CliResult<u64> {
        let s = self.take(8, what)?;
        Ok(u64::from_le_bytes(s.try_into().unwrap()))
    }
}

/// Checks the CRC-32 trailer and returns the covered payload.
fn checked_payload<'a>(data: &'a [u8], what: &str) -> CliResult<&'a [u8]> {
    if data.len() < 4 {
        return Err(CliError::input(format!("{what} shorter than its checksum")));
    }
    let (payload, trailer) = data.split_at(data.len() - 4);
    let stored = u32::from_le_bytes(trailer.try_into().unwrap());
    let actual = crc32(payload);
    if stored != actual {
        return Err(CliError::input(format!(
            "{what} checksum mismatch: stored {stored:08x}, computed {actual:08x}"
        )));
    }
    Ok(payload)
}

/// Canonical binary encoding of an instance; also the digest preimage, so
/// a text file and its binary twin hash identically.
pub fn encode_instance(inst: &Instance) -> Vec<u8> {
    let row_bytes = inst.m().div_ceil(8);
    let mut buf = Vec::with_capacity(4 + 8 + 4 + 1 + 25 + inst.n() * row_bytes + 4);
    buf.extend_from_slice(INSTANCE_MAGIC);
    buf.extend_from_slice(&(inst.n() as u64).to_le_bytes());
    buf.extend_from_slice(&(inst.m() as u32).to_le_bytes());
    match inst.meta() {
        Some(meta) => {
            buf.push(1);
            buf.extend_from_slice(&(meta.i as u64).to_le_bytes());
            buf.extend_from_slice(&(meta.j as u64).to_le_bytes());
            buf.extend_from_slice(&meta.dist.to_le_bytes());
        }
        None => buf.push(0),
    }
    for v in inst.vectors() {
        buf.extend_from_slice(&v.to_bytes());
    }
    let crc = crc32(&buf);
    buf.extend_from_slice(&crc.to_le_bytes());
    buf
}

pub fn write_instance(path: &Path, inst: &Instance) -> CliResult<()> {
    fs::write(path, encode_instance(inst))
        .map_err(|e| CliError::input(format!("writing {}: {e}", path.display())))
}

/// Parses either container by sniffing the first byte: '0'/'1' rows are the
/// text form, anything else must open with the binary magic.
pub fn decode_instance(data: &[u8]) -> CliResult<Instance> {
    match data.first() {
        Some(b'0') | Some(b'1') => decode_text_instance(data),
        Some(_) => decode_binary_instance(data),
        None => Err(CliError::input("empty instance file")),
    }
}

pub fn read_instance(path: &Path) -> CliResult<Instance> {
    let data = fs::read(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    decode_instance(&data)
}

fn decode_text_instance(data: &[u8]) -> CliResult<Instance> {
    let text = std::str::from_utf8(data)
        .map_err(|_| CliError::input("text instance is not valid UTF-8"))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let v = BitVector::from_str01(line)
            .map_err(|e| CliError::input(format!("line {}: {e}", lineno + 1)))?;
        rows.push(v);
    }
    Instance::new(rows).map_err(|e| CliError::input(format!("text instance: {e}")))
}

fn decode_binary_instance(data: &[u8]) -> CliResult<Instance> {
    let payload = checked_payload(data, "instance file")?;
    let mut r = Reader::new(payload);
    if r.take(4, "magic")? != INSTANCE_MAGIC {
        return Err(CliError::input("not an instance file (bad magic)"));
    }
    let n = r.u64_le("vector count")?;
    let m = r.u32_le("dimension")? as usize;
    let flags = r.u8("flags")?;
    if flags & !1 != 0 {
        return Err(CliError::input(format!("unknown flag bits {flags:#04x}")));
    }
    let meta = if flags & 1 == 1 {
        let i = r.u64_le("planted i")? as usize;
        let j = r.u64_le("planted j")? as usize;
        let dist = r.u32_le("planted distance")?;
        Some(PlantedMeta { i, j, dist })
    } else {
        None
    };
    let row_bytes = m.div_ceil(8);
    // Bound n by what the file can actually hold before allocating.
    let body = payload.len() - r.pos;
    let max_rows = body.checked_div(row_bytes).unwrap_or(0);
    if n > max_rows as u64 {
        return Err(CliError::input(format!(
            "header claims {n} rows but the file holds at most {max_rows}"
        )));
    }
    let n = n as usize;
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let bytes = r.take(row_bytes, "vector row")?;
        let v = BitVector::from_bytes(m, bytes)
            .map_err(|e| CliError::input(format!("row {k}: {e}")))?;
        rows.push(v);
    }
    if r.pos != payload.len() {
        return Err(CliError::input(format!(
            "{} trailing bytes after the last row",
            payload.len() - r.pos
        )));
    }
    let inst = match meta {
        Some(meta) => Instance::with_meta(rows, meta),
        None => Instance::new(rows),
    }
    .map_err(|e| CliError::input(format!("instance file: {e}")))?;
    if let Some(meta) = inst.meta() {
        let actual = inst.vectors()[meta.i]
            .hamming(&inst.vectors()[meta.j])
            .map_err(|e| CliError::input(format!("instance file: {e}")))?;
        if actual != meta.dist {
            return Err(CliError::input(format!(
                "planted metadata claims distance {} but the rows are {} apart",
                meta.dist, actual
            )));
        }
    }
    Ok(inst)
}

/// Header fields of a serialized code table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeHeader {
    pub m: u32,
    pub d: u32,
    pub radius: u32,
    pub k: u64,
    pub entry_bytes: u8,
}

pub fn encode_code(code: &GilbertCode) -> Vec<u8> {
    let m = code.block_len();
    let k = code.codeword_count();
    let entries = 1usize << m;
    let view = code.lookup_view();
    let entry_bytes: usize = match view {
        LookupView::Narrow(_) => 2,
        LookupView::Wide(_) => 4,
    };
    let mut buf = Vec::with_capacity(4 + 12 + 8 + 1 + 4 * k + entry_bytes * entries + 4);
    buf.extend_from_slice(CODE_MAGIC);
    buf.extend_from_slice(&(m as u32).to_le_bytes());
    buf.extend_from_slice(&code.construction_distance().to_le_bytes());
    buf.extend_from_slice(&code.decode_radius().to_le_bytes());
    buf.extend_from_slice(&(k as u64).to_le_bytes());
    buf.push(entry_bytes as u8);
    for &cw in code.codeword_values() {
        buf.extend_from_slice(&cw.to_le_bytes());
    }
    match view {
        LookupView::Narrow(t) => {
            for &e in t {
                buf.extend_from_slice(&e.to_le_bytes());
            }
        }
        LookupView::Wide(t) => {
            for &e in t {
                buf.extend_from_slice(&e.to_le_bytes());
            }
        }
    }
    let crc = crc32(&buf);
    buf.extend_from_slice(&crc.to_le_bytes());
    buf
}

pub fn write_code(path: &Path, code: &GilbertCode) -> CliResult<()> {
    fs::write(path, encode_code(code))
        .map_err(|e| CliError::input(format!("writing {}: {e}", path.display())))
}

/// Validates checksum and layout, returning the header. The caller is
/// expected to rebuild from the header and byte-compare; this alone does
/// not prove the table matches the greedy construction.
pub fn read_code_header(data: &[u8]) -> CliResult<CodeHeader> {
    let payload = checked_payload(data, "code file")?;
    let mut r = Reader::new(payload);
    if r.take(4, "magic")? != CODE_MAGIC {
        return Err(CliError::input("not a code file (bad magic)"));
    }
    let m = r.u32_le("dimension")?;
    let d = r.u32_le("construction distance")?;
    let radius = r.u32_le("decode radius")?;
    let k = r.u64_le("codeword count")?;
    let entry_bytes = r.u8("entry width")?;
    if !(entry_bytes == 2 || entry_bytes == 4) {
        return Err(CliError::input(format!(
            "lookup entry width must be 2 or 4 bytes, got {entry_bytes}"
        )));
    }
    if m > 30 {
        return Err(CliError::input(format!("dimension {m} out of range")));
    }
    if k > 1u64 << m {
        return Err(CliError::input(format!(
            "codeword count {k} exceeds the 2^{m} cube"
        )));
    }
    let want = 4 * k + (entry_bytes as u64) * (1u64 << m);
    let have = (payload.len() - r.pos) as u64;
    if want != have {
        return Err(CliError::input(format!(
            "table section holds {have} bytes, header implies {want}"
        )));
    }
    Ok(CodeHeader {
        m,
        d,
        radius,
        k,
        entry_bytes,
    })
}
