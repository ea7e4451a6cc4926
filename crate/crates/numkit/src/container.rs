//! Flat binary parameter container: magic `BTF1`, a little-endian u32
//! header length, a JSON header (shape registry, precision, seed, free-form
//! meta), then raw little-endian values in registration order.

use crate::{Error, Matrix, Real, Result};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"BTF1";

/// On-disk value encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Precision {
    #[serde(rename = "f32")]
    F32,
    #[serde(rename = "f64")]
    F64,
}

impl Precision {
    /// The precision this build computes in.
    pub fn native() -> Precision {
        if cfg!(feature = "f32") {
            Precision::F32
        } else {
            Precision::F64
        }
    }

    pub fn parse(s: &str) -> Option<Precision> {
        match s {
            "f32" => Some(Precision::F32),
            "f64" => Some(Precision::F64),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Precision::F32 => "f32",
            Precision::F64 => "f64",
        }
    }

    fn width(self) -> usize {
        match self {
            Precision::F32 => 4,
            Precision::F64 => 8,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    version: u32,
    precision: Precision,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    meta: serde_json::Value,
    entries: Vec<EntryHeader>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryHeader {
    name: String,
    rows: usize,
    cols: usize,
}

/// A named list of matrices plus free-form JSON metadata.
#[derive(Debug, Clone)]
pub struct Container {
    pub precision: Precision,
    pub seed: Option<u64>,
    pub meta: serde_json::Value,
    entries: Vec<(String, Matrix)>,
}

impl Container {
    pub fn new(precision: Precision, seed: Option<u64>) -> Self {
        Container {
            precision,
            seed,
            meta: serde_json::Value::Null,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, m: Matrix) {
        self.entries.push((name.to_string(), m));
    }

    pub fn get(&self, name: &str) -> Option<&Matrix> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &Matrix)> {
        self.entries.iter().map(|(n, m)| (n.as_str(), m))
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        let header = Header {
            version: 1,
            precision: self.precision,
            seed: self.seed,
            meta: self.meta.clone(),
            entries: self
                .entries
                .iter()
                .map(|(n, m)| EntryHeader {
                    name: n.clone(),
                    rows: m.rows(),
                    cols: m.cols(),
                })
                .collect(),
        };
        let header_bytes = serde_json::to_vec(&header)?;
        w.write_all(MAGIC)?;
        w.write_all(&(header_bytes.len() as u32).to_le_bytes())?;
        w.write_all(&header_bytes)?;
        for (_, m) in &self.entries {
            match self.precision {
                Precision::F64 => {
                    for &v in m.data() {
                        w.write_all(&(v as f64).to_le_bytes())?;
                    }
                }
                Precision::F32 => {
                    for &v in m.data() {
                        w.write_all(&(v as f32).to_le_bytes())?;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Container> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Container(format!(
                "bad magic {:?}, expected \"BTF1\"",
                magic
            )));
        }
        let mut len = [0u8; 4];
        r.read_exact(&mut len)?;
        let mut header_bytes = vec![0u8; u32::from_le_bytes(len) as usize];
        r.read_exact(&mut header_bytes)?;
        let header: Header = serde_json::from_slice(&header_bytes)?;
        if header.version != 1 {
            return Err(Error::Container(format!(
                "unsupported container version {}",
                header.version
            )));
        }
        let mut entries = Vec::with_capacity(header.entries.len());
        let width = header.precision.width();
        let mut buf = Vec::new();
        for e in &header.entries {
            let n = e.rows * e.cols;
            buf.resize(n * width, 0);
            r.read_exact(&mut buf)?;
            let mut data = Vec::with_capacity(n);
            match header.precision {
                Precision::F64 => {
                    for chunk in buf.chunks_exact(8) {
                        data.push(f64::from_le_bytes(chunk.try_into().unwrap()) as Real);
                    }
                }
                Precision::F32 => {
                    for chunk in buf.chunks_exact(4) {
                        data.push(f32::from_le_bytes(chunk.try_into().unwrap()) as Real);
                    }
                }
            }
            entries.push((e.name.clone(), Matrix::from_vec(e.rows, e.cols, data)?));
        }
        Ok(Container {
            precision: header.precision,
            seed: header.seed,
            meta: header.meta,
            entries,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Container> {
        let mut r = BufReader::new(File::open(path)?);
        Container::read_from(&mut r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rng;

    #[test]
    fn round_trip_is_byte_identical() {
        let mut rng = Rng::new(11);
        let mut c = Container::new(Precision::native(), Some(11));
        c.meta = serde_json::json!({"kind": "test"});
        c.push("a", rng.draw_matrix(3, 5, 0.3));
        c.push("b", rng.draw_matrix(1, 7, 2.0));

        let mut first = Vec::new();
        c.write_to(&mut first).unwrap();
        let reread = Container::read_from(&mut first.as_slice()).unwrap();
        let mut second = Vec::new();
        reread.write_to(&mut second).unwrap();
        assert_eq!(first, second);
        assert_eq!(reread.get("a").unwrap(), c.get("a").unwrap());
        assert_eq!(reread.seed, Some(11));
    }

    #[test]
    fn f32_storage_loads_with_reduced_precision() {
        let mut c = Container::new(Precision::F32, None);
        c.push(
            "m",
            Matrix::from_vec(1, 2, vec![0.1, 1.0 / 3.0]).unwrap(),
        );
        let mut bytes = Vec::new();
        c.write_to(&mut bytes).unwrap();
        let back = Container::read_from(&mut bytes.as_slice()).unwrap();
        let m = back.get("m").unwrap();
        assert!((m.get(0, 0) - 0.1).abs() < 1e-7);
        assert_eq!(m.get(0, 0), 0.1f32 as Real);
    }

    #[test]
    fn bad_magic_is_rejected() {
        let bytes = b"NOPE\x00\x00\x00\x00".to_vec();
        let err = Container::read_from(&mut bytes.as_slice()).unwrap_err();
        assert!(err.to_string().contains("magic"));
    }
}
