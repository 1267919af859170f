//! File formats: matrix CSV, blob tables, result tables and 16-bit PNG.
//!
//! Matrix CSV is headerless, one image row per line, values in shortest
//! round-trip scientific notation so a write/read cycle is lossless.

use std::io::{Cursor, Write};
use std::path::{Path, PathBuf};

use image::{ImageBuffer, ImageFormat, Luma};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::spectral::Image;
use crate::synthgen::{Blob, BlobSet};

/// Writes `bytes` to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn format_value(v: f64) -> String {
    format!("{v:e}")
}

pub fn matrix_to_csv(image: &Image) -> Vec<u8> {
    let mut out = String::with_capacity(image.as_slice().len() * 24);
    for row in image.rows() {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format_value(*v));
        }
        out.push('\n');
    }
    out.into_bytes()
}

fn format_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

pub fn parse_matrix_csv(path: &Path, bytes: &[u8]) -> Result<Image> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut data = Vec::new();
    let mut width = None;
    let mut height = 0;
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format_error(path, e.to_string()))?;
        if width.is_some_and(|w| w != record.len()) {
            return Err(format_error(
                path,
                format!("row {} has {} columns", line + 1, record.len()),
            ));
        }
        width = Some(record.len());
        for field in record.iter() {
            let v: f64 = field.parse().map_err(|_| {
                format_error(path, format!("row {}: cannot parse {field:?}", line + 1))
            })?;
            data.push(v);
        }
        height += 1;
    }
    let width = width.ok_or_else(|| format_error(path, "empty matrix"))?;
    Image::new(width, height, data).map_err(|e| format_error(path, e.to_string()))
}

pub fn read_matrix_csv(path: &Path) -> Result<Image> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_matrix_csv(path, &bytes)
}

pub fn blob_table_csv(blobs: &BlobSet) -> Vec<u8> {
    let mut out = String::from("cx,cy,sigma_x,sigma_y,amplitude\n");
    for b in blobs.blobs() {
        let fields = [b.cx, b.cy, b.sigma_x, b.sigma_y, b.amplitude].map(format_value);
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

pub fn parse_blob_table(path: &Path, bytes: &[u8], width: usize, height: usize) -> Result<BlobSet> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| format_error(path, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["cx", "cy", "sigma_x", "sigma_y", "amplitude"] {
        return Err(format_error(
            path,
            "expected header cx,cy,sigma_x,sigma_y,amplitude",
        ));
    }
    let mut blobs = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| format_error(path, e.to_string()))?;
        let v = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| format_error(path, format!("cannot parse {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        blobs.push(Blob {
            cx: v[0],
            cy: v[1],
            sigma_x: v[2],
            sigma_y: v[3],
            amplitude: v[4],
        });
    }
    BlobSet::new(blobs, width, height)
}

/// `variant,cosine` table with four decimals.
pub fn cosine_table_csv(rows: &[(&str, f64)]) -> Vec<u8> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["variant", "cosine"])
        .expect("write to Vec");
    for (label, value) in rows {
        writer
            .write_record([*label, &format!("{value:.4}")])
            .expect("write to Vec");
    }
    writer.into_inner().expect("flush Vec")
}

/// Header row followed by full-precision records.
pub fn table_csv(header: &[&str], rows: &[Vec<String>]) -> Vec<u8> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("write to Vec");
    for row in rows {
        writer.write_record(row).expect("write to Vec");
    }
    writer.into_inner().expect("flush Vec")
}

/// Min–max normalized 16-bit grayscale PNG. Returns the encoded bytes and
/// the `(min, max)` used for normalization.
pub fn encode_png16(image: &Image) -> Result<(Vec<u8>, (f64, f64))> {
    let (lo, hi) = (image.min(), image.max());
    let span = hi - lo;
    let pixels: Vec<u16> = image
        .as_slice()
        .iter()
        .map(|&v| {
            if span > 0.0 {
                ((v - lo) / span * f64::from(u16::MAX)).round() as u16
            } else {
                0
            }
        })
        .collect();
    let buffer: ImageBuffer<Luma<u16>, Vec<u16>> =
        ImageBuffer::from_raw(image.width() as u32, image.height() as u32, pixels)
            .ok_or_else(|| Error::param("image too large for PNG export"))?;
    let mut bytes = Cursor::new(Vec::new());
    buffer
        .write_to(&mut bytes, ImageFormat::Png)
        .map_err(|e| Error::param(format!("PNG encoding failed: {e}")))?;
    Ok((bytes.into_inner(), (lo, hi)))
}

/// Collects written files so a manifest can list them with checksums.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    files: Vec<FileRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FileRecord {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
    /// Normalization bounds for exported images.
    pub bounds: Option<(f64, f64)>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        std::fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
        Ok(Self {
            root: root.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn files(&self) -> &[FileRecord] {
        &self.files
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        self.write_with_bounds(name, bytes, None)
    }

    fn write_with_bounds(
        &mut self,
        name: &str,
        bytes: &[u8],
        bounds: Option<(f64, f64)>,
    ) -> Result<()> {
        let path = self.root.join(name);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        write_atomic(&path, bytes)?;
        self.files.push(FileRecord {
            name: name.to_string(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len(),
            bounds,
        });
        Ok(())
    }

    pub fn write_matrix(&mut self, name: &str, image: &Image) -> Result<()> {
        self.write(name, &matrix_to_csv(image))
    }

    pub fn write_png(&mut self, name: &str, image: &Image) -> Result<()> {
        let (bytes, bounds) = encode_png16(image)?;
        self.write_with_bounds(name, &bytes, Some(bounds))
    }
}
