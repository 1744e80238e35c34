//! The six file-based workflows behind the subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use relmi::io::{self, ManifestEntry};
use relmi::{
    corpus_params, embed, generate, knn_classify, pca_2d, similarity_matrix, top_k_neighbors,
    windowed_correlation, windowed_mi, MiEmbedding, RelationshipClass,
};

use crate::config::RunConfig;

/// Label inferred from a dataset file name: the stem's class-name prefix,
/// if any (`linear_003.csv` -> Linear).
fn label_from_path(path: &Path) -> Option<RelationshipClass> {
    let stem = path.file_stem()?.to_str()?.to_ascii_lowercase();
    RelationshipClass::ALL
        .into_iter()
        .find(|class| stem.starts_with(&class.name().to_ascii_lowercase()))
}

fn read_dataset(path: &Path) -> anyhow::Result<relmi::Dataset> {
    let mut dataset = io::read_dataset_csv(path).with_context(|| format!("{}", path.display()))?;
    dataset.set_label(label_from_path(path));
    Ok(dataset)
}

fn read_embeddings(paths: &[PathBuf]) -> anyhow::Result<Vec<(String, MiEmbedding)>> {
    let mut embeddings = Vec::with_capacity(paths.len());
    for path in paths {
        let embedding =
            io::read_embedding_json(path).with_context(|| format!("{}", path.display()))?;
        if let Some((_, first)) = embeddings.first() {
            if !embedding.comparable(first) {
                bail!(
                    "incompatible embeddings: {} does not match {}",
                    path.display(),
                    paths[0].display()
                );
            }
        }
        embeddings.push((path.display().to_string(), embedding));
    }
    Ok(embeddings)
}

/// Writes `5 * per_class` dataset CSVs plus a JSON manifest.
pub fn cmd_generate(config: &RunConfig) -> anyhow::Result<()> {
    let out = config.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;

    let params = corpus_params(config.per_class, config.seed, &config.noise);
    let mut entries = Vec::with_capacity(params.len());
    for (i, p) in params.iter().enumerate() {
        let dataset = generate(p)?;
        let file = format!(
            "{}_{:03}.csv",
            p.class.name().to_ascii_lowercase(),
            i % config.per_class
        );
        io::write_dataset_csv(&out.join(&file), &dataset)?;
        entries.push(ManifestEntry {
            file,
            params: p.clone(),
        });
    }
    io::write_manifest_json(
        &out.join("manifest.json"),
        config.seed,
        config.per_class,
        &entries,
    )?;
    println!(
        "wrote {} datasets and manifest.json to {}",
        entries.len(),
        out.display()
    );
    Ok(())
}

/// Embeds each dataset CSV into a JSON file next to the others in `--out`.
pub fn cmd_embed(config: &RunConfig, datasets: &[PathBuf]) -> anyhow::Result<()> {
    let out = config.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
    let spec = config.embedding_spec();

    for path in datasets {
        let dataset = read_dataset(path)?;
        let embedding = embed(&dataset, config.bin_ceiling, spec.as_ref())
            .with_context(|| format!("{}", path.display()))?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .context("dataset path has no file name")?;
        io::write_embedding_json(&out.join(format!("{stem}.json")), &embedding)?;
    }
    println!("wrote {} embeddings to {}", datasets.len(), out.display());
    Ok(())
}

/// Builds the class-by-class mean-cosine matrix from labeled embeddings.
pub fn cmd_similarity(config: &RunConfig, embeddings: &[PathBuf]) -> anyhow::Result<()> {
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("similarity.csv"));
    let loaded = read_embeddings(embeddings)?;
    let embeddings: Vec<MiEmbedding> = loaded.into_iter().map(|(_, e)| e).collect();
    let matrix = similarity_matrix(&embeddings)?;
    io::write_similarity_csv(&out, &matrix)?;
    println!(
        "wrote {}x{} matrix to {}",
        matrix.classes().len(),
        matrix.classes().len(),
        out.display()
    );
    Ok(())
}

/// Classifies a query dataset against training embeddings, printing the
/// prediction and top-k neighbor similarities as JSON on stdout.
pub fn cmd_classify(config: &RunConfig, train: &[PathBuf], query: &Path) -> anyhow::Result<()> {
    let loaded = read_embeddings(train)?;
    let train_embeddings: Vec<MiEmbedding> = loaded.into_iter().map(|(_, e)| e).collect();
    let reference = &train_embeddings[0];

    let dataset = read_dataset(query)?;
    let query_embedding = embed(&dataset, reference.bin_ceiling(), reference.window_spec())?;

    let neighbors = top_k_neighbors(&train_embeddings, &query_embedding, config.k)?;
    let predicted = knn_classify(&train_embeddings, &query_embedding, config.k)?;

    let neighbor_json: Vec<String> = neighbors
        .iter()
        .map(|&(idx, similarity)| {
            let label = train_embeddings[idx]
                .label()
                .map(|c| format!("\"{c}\""))
                .unwrap_or_else(|| "null".to_string());
            format!(
                "{{\"index\":{idx},\"label\":{label},\"similarity\":{}}}",
                io::json_f64(similarity)
            )
        })
        .collect();
    println!(
        "{{\"predicted\":\"{predicted}\",\"k\":{},\"neighbors\":[{}]}}",
        config.k,
        neighbor_json.join(",")
    );
    Ok(())
}

/// Projects embeddings onto their top two principal components.
pub fn cmd_pca(config: &RunConfig, embeddings: &[PathBuf]) -> anyhow::Result<()> {
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("pca.csv"));
    let loaded = read_embeddings(embeddings)?;
    let files: Vec<String> = loaded.iter().map(|(f, _)| f.clone()).collect();
    let embeddings: Vec<MiEmbedding> = loaded.into_iter().map(|(_, e)| e).collect();
    let projection = pca_2d(&embeddings)?;
    io::write_projection_csv(&out, &projection, &files)?;
    println!("wrote {} projections to {}", files.len(), out.display());
    Ok(())
}

/// Writes per-window MI/gradient rows for each configured scale plus the
/// per-bin correlation profile of one dataset.
pub fn cmd_gradients(config: &RunConfig, dataset: &Path) -> anyhow::Result<()> {
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("gradients.csv"));
    let data = read_dataset(dataset)?;

    let mut scales = Vec::new();
    for cfg in config.window_spec().configs()? {
        let profile = windowed_mi(&data, &cfg)
            .with_context(|| format!("window size {}", cfg.window_size()))?;
        scales.push((cfg.window_size(), profile));
    }
    let correlation = windowed_correlation(&data, config.corr_bins)?;
    io::write_profiles_csv(&out, &scales, &correlation)?;

    let mi_rows: usize = scales.iter().map(|(_, p)| p.values().len()).sum();
    println!(
        "wrote {mi_rows} windowed-MI rows and {} correlation rows to {}",
        correlation.bin_centers().len(),
        out.display()
    );
    Ok(())
}
