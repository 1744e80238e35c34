//! The file formats the tooling exchanges: dataset CSV, embedding JSON,
//! similarity-matrix CSV, projection CSV, profile CSV, and the generation
//! manifest.
//!
//! All files are UTF-8 with LF line endings and are written atomically
//! (temp file + rename), so interrupted runs never leave partial artifacts.
//! JSON numbers carry 17 significant digits, which round-trips every f64
//! exactly; human-facing matrix values are printed to 4 decimal places.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::dataset::{Dataset, RelationshipClass};
use crate::embedding::{MiEmbedding, SimilarityMatrix};
use crate::error::{Error, Result};
use crate::pca::PcaProjection;
use crate::synth::GenParams;
use crate::windows::{CorrelationProfile, MiProfile, MultiScaleSpec};

/// Formats an f64 as a JSON number with 17 significant digits.
pub fn json_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes content to `path` atomically via a temp file in the same
/// directory.
pub fn atomic_write(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or_else(|| Path::new(".")))?;
    fs::write(tmp.path(), content)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Dataset CSV: header `x,y`, one sample per row.
// ---------------------------------------------------------------------------

pub fn dataset_to_csv(d: &Dataset) -> String {
    let mut out = String::with_capacity(d.len() * 16 + 4);
    out.push_str("x,y\n");
    for (x, y) in d.xs().iter().zip(d.ys()) {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

pub fn write_dataset_csv(path: &Path, d: &Dataset) -> Result<()> {
    atomic_write(path, &dataset_to_csv(d))
}

/// Reads a dataset CSV, reporting the offending line on malformed input.
/// The label is left unset; callers attach one if they know it.
pub fn read_dataset_csv(path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !saw_header {
            if line != "x,y" {
                return Err(parse_err(
                    line_no,
                    format!("expected header 'x,y', got '{line}'"),
                ));
            }
            saw_header = true;
            continue;
        }
        let mut fields = line.split(',');
        let (x_str, y_str) = match (fields.next(), fields.next(), fields.next()) {
            (Some(x), Some(y), None) => (x, y),
            _ => {
                return Err(parse_err(
                    line_no,
                    "expected exactly two fields".to_string(),
                ))
            }
        };
        let x: f64 = x_str
            .trim()
            .parse()
            .map_err(|_| parse_err(line_no, format!("non-numeric value '{}'", x_str.trim())))?;
        let y: f64 = y_str
            .trim()
            .parse()
            .map_err(|_| parse_err(line_no, format!("non-numeric value '{}'", y_str.trim())))?;
        xs.push(x);
        ys.push(y);
    }

    if xs.is_empty() {
        return Err(Error::EmptySequence);
    }
    Dataset::new(xs, ys)
}

// ---------------------------------------------------------------------------
// Embedding JSON.
// ---------------------------------------------------------------------------

fn window_spec_json(spec: &MultiScaleSpec) -> String {
    let sizes: Vec<String> = spec.window_sizes.iter().map(|s| s.to_string()).collect();
    format!(
        "{{\"window_sizes\":[{}],\"stride_fraction\":{},\"x_bins\":{},\"y_bins\":{}}}",
        sizes.join(","),
        json_f64(spec.stride_fraction),
        spec.x_bins,
        spec.y_bins
    )
}

pub fn embedding_to_json(e: &MiEmbedding) -> String {
    let window_spec = match e.window_spec() {
        Some(spec) => window_spec_json(spec),
        None => "null".to_string(),
    };
    let label = match e.label() {
        Some(class) => format!("\"{class}\""),
        None => "null".to_string(),
    };
    let scores: Vec<String> = e.scores().iter().map(|&s| json_f64(s)).collect();
    format!(
        "{{\n  \"schema_version\": 1,\n  \"bin_ceiling\": {},\n  \"window_spec\": {},\n  \"label\": {},\n  \"scores\": [{}]\n}}\n",
        e.bin_ceiling(),
        window_spec,
        label,
        scores.join(",")
    )
}

pub fn write_embedding_json(path: &Path, e: &MiEmbedding) -> Result<()> {
    atomic_write(path, &embedding_to_json(e))
}

#[derive(Deserialize)]
struct EmbeddingDoc {
    schema_version: u32,
    bin_ceiling: usize,
    window_spec: Option<MultiScaleSpec>,
    label: Option<String>,
    scores: Vec<f64>,
}

pub fn read_embedding_json(path: &Path) -> Result<MiEmbedding> {
    let format_err = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };
    let text = fs::read_to_string(path)?;
    let doc: EmbeddingDoc = serde_json::from_str(&text).map_err(|e| format_err(e.to_string()))?;
    if doc.schema_version != 1 {
        return Err(format_err(format!(
            "unsupported schema_version {}",
            doc.schema_version
        )));
    }
    let label = doc
        .label
        .map(|s| s.parse::<RelationshipClass>())
        .transpose()?;
    Ok(MiEmbedding::from_parts(
        doc.scores,
        doc.bin_ceiling,
        doc.window_spec,
        label,
    ))
}

// ---------------------------------------------------------------------------
// Similarity matrix CSV: class names on both axes, values to 4 decimals.
// ---------------------------------------------------------------------------

pub fn similarity_to_csv(m: &SimilarityMatrix) -> String {
    let mut out = String::new();
    out.push_str("class");
    for class in m.classes() {
        let _ = write!(out, ",{class}");
    }
    out.push('\n');
    for (i, class) in m.classes().iter().enumerate() {
        let _ = write!(out, "{class}");
        for j in 0..m.classes().len() {
            let _ = write!(out, ",{:.4}", m.get(i, j));
        }
        out.push('\n');
    }
    out
}

pub fn write_similarity_csv(path: &Path, m: &SimilarityMatrix) -> Result<()> {
    atomic_write(path, &similarity_to_csv(m))
}

pub fn read_similarity_csv(path: &Path) -> Result<SimilarityMatrix> {
    let text = fs::read_to_string(path)?;
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header".to_string()))?;
    let classes: Vec<RelationshipClass> = header
        .split(',')
        .skip(1)
        .map(|s| s.trim().parse())
        .collect::<Result<_>>()?;

    let mut means = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != classes.len() + 1 {
            return Err(parse_err(idx + 1, "wrong field count".to_string()));
        }
        let row: Vec<f64> = fields[1..]
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| parse_err(idx + 1, format!("non-numeric value '{s}'")))
            })
            .collect::<Result<_>>()?;
        means.push(row);
    }
    if means.len() != classes.len() {
        return Err(parse_err(0, "row/column count mismatch".to_string()));
    }
    Ok(SimilarityMatrix::from_parts(classes, means))
}

// ---------------------------------------------------------------------------
// Projection CSV: one row per embedding.
// ---------------------------------------------------------------------------

pub fn projection_to_csv(p: &PcaProjection, files: &[String]) -> String {
    let mut out = String::from("file,label,pc1,pc2\n");
    for ((file, point), label) in files.iter().zip(p.projected()).zip(p.labels()) {
        let label = label.map(|c| c.name()).unwrap_or("");
        let _ = writeln!(out, "{file},{label},{},{}", point[0], point[1]);
    }
    out
}

pub fn write_projection_csv(path: &Path, p: &PcaProjection, files: &[String]) -> Result<()> {
    atomic_write(path, &projection_to_csv(p, files))
}

// ---------------------------------------------------------------------------
// Profile CSV: windowed MI rows per scale, then per-bin correlation rows.
// Undefined correlations stay blank rather than printing 0.
// ---------------------------------------------------------------------------

pub fn profiles_to_csv(scales: &[(usize, MiProfile)], correlation: &CorrelationProfile) -> String {
    let mut out = String::from("kind,window_size,center,mi,mi_gradient,correlation\n");
    for (window_size, profile) in scales {
        for (i, (&center, &mi)) in profile.centers().iter().zip(profile.values()).enumerate() {
            let gradient = profile
                .gradients()
                .get(i)
                .map(|g| format!("{g:.6}"))
                .unwrap_or_default();
            let _ = writeln!(out, "mi,{window_size},{center:.6},{mi:.6},{gradient},");
        }
    }
    for (&center, correlation) in correlation
        .bin_centers()
        .iter()
        .zip(correlation.correlations())
    {
        let value = correlation.map(|r| format!("{r:.4}")).unwrap_or_default();
        let _ = writeln!(out, "correlation,,{center:.6},,,{value}");
    }
    out
}

pub fn write_profiles_csv(
    path: &Path,
    scales: &[(usize, MiProfile)],
    correlation: &CorrelationProfile,
) -> Result<()> {
    atomic_write(path, &profiles_to_csv(scales, correlation))
}

// ---------------------------------------------------------------------------
// Generation manifest JSON: one entry per emitted dataset file.
// ---------------------------------------------------------------------------

pub struct ManifestEntry {
    pub file: String,
    pub params: GenParams,
}

pub fn manifest_to_json(seed: u64, per_class: usize, entries: &[ManifestEntry]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"schema_version\": 1,");
    let _ = writeln!(out, "  \"seed\": {seed},");
    let _ = writeln!(out, "  \"per_class\": {per_class},");
    let _ = writeln!(out, "  \"entries\": [");
    for (i, entry) in entries.iter().enumerate() {
        let p = &entry.params;
        let coefficients: Vec<String> = p.coefficients.iter().map(|&c| json_f64(c)).collect();
        let comma = if i + 1 < entries.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {{\"file\":\"{}\",\"label\":\"{}\",\"seed\":{},\"params\":{{\"class\":\"{}\",\"coefficients\":[{}],\"noise_sigma\":{},\"x_low\":{},\"x_high\":{},\"n\":{}}}}}{}",
            entry.file,
            p.class,
            p.seed,
            p.class,
            coefficients.join(","),
            json_f64(p.noise_sigma),
            json_f64(p.x_low),
            json_f64(p.x_high),
            p.n,
            comma
        );
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}

pub fn write_manifest_json(
    path: &Path,
    seed: u64,
    per_class: usize,
    entries: &[ManifestEntry],
) -> Result<()> {
    atomic_write(path, &manifest_to_json(seed, per_class, entries))
}
