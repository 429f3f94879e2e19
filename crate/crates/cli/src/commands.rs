use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use cantomine::corpus::{
    escape_cell, load_manifest, merge_validation, write_corpus, CorpusFormat, DatasetSplit,
};
use cantomine::embed::EmbedderSpec;
use cantomine::eval::{
    corpus_bleu, evaluate_systems, CopySystem, FileSystem, Lexicon, LexiconSystem, System, TestSet,
};
use cantomine::mining::{mine_corpus, threshold_sweep, ScoredSentencePair};
use cantomine::text::{normalize, tokenize_with, TokenSequence, TokenizeOptions};
use cantomine::wiki::{
    clean_wikitext, load_langlinks, pair_articles, parse_dump, resolve_pairs, ArticlePair,
    ArticlePairRecord, CleanArticle, LinkFormat, LinkOptions, PairOptions,
};
use regex::Regex;
use serde::Serialize;

use crate::config::{provenance_path, Provenance, RunConfig};
use crate::error::{CliResult, Failure};
use crate::io::{create, finish, open, read_jsonl, read_lines, write_jsonl_line};
use crate::{
    BleuArgs, IngestArgs, MineArgs, MiningInputs, PairArgs, ReportArgs, SplitArgs, SweepArgs,
};

pub fn ingest(args: &IngestArgs) -> CliResult<()> {
    let config = RunConfig::default();
    let input = open(&args.dump)?;
    let empty = std::fs::metadata(&args.dump)
        .map_err(|e| Failure::io(&args.dump, e))?
        .len()
        == 0;
    let mut out = create(&args.out)?;
    let (mut pages, mut articles, mut redirects, mut skipped) = (0usize, 0usize, 0usize, 0usize);
    if empty {
        log::warn!("{} is empty", args.dump.display());
    } else {
        let mut reader = parse_dump(input);
        for page in reader.by_ref() {
            let page = page.map_err(|e| Failure::at(&args.dump, e))?;
            pages += 1;
            if page.is_redirect {
                redirects += 1;
            }
            if let Some(article) = clean_wikitext(&page, &args.lang) {
                write_jsonl_line(&mut out, &article, &args.out)?;
                articles += 1;
            }
        }
        skipped = reader.skipped();
    }
    finish(out, &args.out)?;
    let mut prov = Provenance::new("ingest", &config);
    prov.input(&args.dump)?;
    prov.output(&args.out);
    prov.write(&provenance_path(&args.out))?;
    println!("pages\t{pages}\narticles\t{articles}\nredirects\t{redirects}\nskipped\t{skipped}");
    Ok(())
}

fn read_articles(path: &Path) -> CliResult<Vec<CleanArticle>> {
    read_jsonl(path)
}

pub fn pair(args: &PairArgs) -> CliResult<()> {
    let config = RunConfig::default();
    let src = read_articles(&args.src)?;
    let tgt = read_articles(&args.tgt)?;
    let exclude_titles = args
        .exclude
        .as_deref()
        .map(Regex::new)
        .transpose()
        .map_err(|e| Failure::invariant(format!("--exclude: {e}")))?;
    let source_lang = match &args.source_lang {
        Some(l) => l.clone(),
        None => src.first().map(|a| a.lang.clone()).unwrap_or_default(),
    };
    let options = LinkOptions {
        reverse: args.reverse,
        source_lang,
        page_titles: if args.links_format == LinkFormat::SqlDump {
            tgt.iter()
                .filter_map(|a| a.id.map(|id| (id, a.title.clone())))
                .collect()
        } else {
            HashMap::new()
        },
    };
    let loaded = load_langlinks(open(&args.links)?, args.links_format, &options)
        .map_err(|e| Failure::at(&args.links, e))?;
    if loaded.links.is_empty() && loaded.malformed > 0 {
        return Err(Failure::format(format!(
            "{}: no usable links ({} malformed records)",
            args.links.display(),
            loaded.malformed
        )));
    }
    let pairing = pair_articles(&src, &tgt, &loaded.links, &PairOptions { exclude_titles })?;
    let mut out = create(&args.out)?;
    for p in &pairing.pairs {
        write_jsonl_line(&mut out, &ArticlePairRecord::from(p), &args.out)?;
    }
    finish(out, &args.out)?;
    let mut prov = Provenance::new("pair", &config);
    for path in [&args.src, &args.tgt, &args.links] {
        prov.input(path)?;
    }
    prov.output(&args.out);
    prov.write(&provenance_path(&args.out))?;
    println!(
        "pairs\t{}\nunmatched\t{}\nexcluded\t{}\nmalformed_links\t{}\nduplicate_links\t{}",
        pairing.pairs.len(),
        pairing.unmatched,
        pairing.excluded,
        loaded.malformed,
        loaded.duplicates
    );
    Ok(())
}

/// Loads the run config and applies the flag overrides shared by `mine` and
/// `sweep`.
fn mining_config(inputs: &MiningInputs, threshold: Option<f64>) -> CliResult<RunConfig> {
    let mut config = RunConfig::load(inputs.config.as_deref())?;
    if let Some(t) = threshold {
        config.mining.threshold = t;
    }
    if let Some(w) = inputs.workers {
        config.workers = w;
    }
    if inputs.no_digit_filter {
        config.mining.digit_filter = false;
    }
    if let Some(scope) = inputs.dedup_scope {
        config.mining.dedup_scope = scope;
    }
    if let Some(n) = inputs.min_tokens {
        config.mining.min_tokens = n;
    }
    config.validate()?;
    Ok(config)
}

fn load_pairs(inputs: &MiningInputs) -> CliResult<Vec<ArticlePair>> {
    let records: Vec<ArticlePairRecord> = read_jsonl(&inputs.pairs)?;
    let src = read_articles(&inputs.src)?;
    let tgt = read_articles(&inputs.tgt)?;
    let pairing = resolve_pairs(&records, &src, &tgt)?;
    if pairing.pairs.len() != records.len() {
        return Err(Failure::invariant(format!(
            "{}: {} of {} article pairs not found in the article files",
            inputs.pairs.display(),
            records.len() - pairing.pairs.len(),
            records.len()
        )));
    }
    Ok(pairing.pairs)
}

fn mining_provenance<'a>(
    command: &'a str,
    inputs: &MiningInputs,
    config: &'a RunConfig,
) -> CliResult<Provenance<'a>> {
    let mut prov = Provenance::new(command, config);
    for path in [&inputs.pairs, &inputs.src, &inputs.tgt] {
        prov.input(path)?;
    }
    if let Some(path) = &inputs.config {
        prov.input(path)?;
    }
    if let EmbedderSpec::ExternalFile { path, .. } = &config.embedder {
        prov.input(path)?;
    }
    Ok(prov)
}

#[derive(Serialize)]
struct MinedRecord<'a> {
    src: &'a str,
    tgt: &'a str,
    score: f64,
    article_pair_id: usize,
}

fn write_mined<W: Write>(
    out: &mut W,
    mined: &[ScoredSentencePair<f64>],
    format: CorpusFormat,
    path: &Path,
) -> CliResult<()> {
    for p in mined {
        match format {
            CorpusFormat::Tsv => writeln!(
                out,
                "{}\t{}\t{:.6}\t{}",
                escape_cell(&p.src.text),
                escape_cell(&p.tgt.text),
                p.score,
                p.article_pair_id
            )
            .map_err(|e| Failure::io(path, e))?,
            CorpusFormat::Jsonl => write_jsonl_line(
                out,
                &MinedRecord {
                    src: &p.src.text,
                    tgt: &p.tgt.text,
                    score: p.score,
                    article_pair_id: p.article_pair_id,
                },
                path,
            )?,
        }
    }
    Ok(())
}

pub fn mine(args: &MineArgs) -> CliResult<()> {
    let config = mining_config(&args.inputs, args.threshold)?;
    let pairs = load_pairs(&args.inputs)?;
    let embedder = config.embedder.build::<f64>()?;
    let mined = mine_corpus(&pairs, &embedder, &config.mining, config.workers)?;
    let mut out = create(&args.out)?;
    write_mined(&mut out, &mined, args.format, &args.out)?;
    finish(out, &args.out)?;
    let mut prov = mining_provenance("mine", &args.inputs, &config)?;
    prov.output(&args.out);
    prov.write(&provenance_path(&args.out))?;
    println!(
        "article_pairs\t{}\nsentence_pairs\t{}",
        pairs.len(),
        mined.len()
    );
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> CliResult<()> {
    let config = mining_config(&args.inputs, None)?;
    let pairs = load_pairs(&args.inputs)?;
    let embedder = config.embedder.build::<f64>()?;
    let rows = threshold_sweep(
        &pairs,
        &embedder,
        &config.mining,
        &args.thresholds,
        config.workers,
    )?;
    let mut table = String::from("threshold\tcount\n");
    for r in &rows {
        table.push_str(&format!("{}\t{}\n", r.threshold, r.count));
    }
    match &args.out {
        Some(path) => {
            let mut out = create(path)?;
            out.write_all(table.as_bytes())
                .map_err(|e| Failure::io(path, e))?;
            finish(out, path)?;
            let mut prov = mining_provenance("sweep", &args.inputs, &config)?;
            prov.output(path);
            prov.write(&provenance_path(path))?;
        }
        None => print!("{table}"),
    }
    Ok(())
}

fn split_manifest(
    manifest_path: &Path,
    config: &RunConfig,
) -> CliResult<(cantomine::corpus::Manifest, Vec<DatasetSplit>)> {
    let manifest = load_manifest(manifest_path).map_err(|e| Failure::at(manifest_path, e))?;
    let splits = manifest.split_all(config.split_seed)?;
    Ok((manifest, splits))
}

pub const MERGED_VALID: &str = "merged_valid.tsv";

pub fn split(args: &SplitArgs) -> CliResult<()> {
    let mut config = RunConfig::load(args.config.as_deref())?;
    if let Some(seed) = args.seed {
        config.split_seed = seed;
    }
    let (manifest, splits) = split_manifest(&args.manifest, &config)?;
    std::fs::create_dir_all(&args.out).map_err(|e| Failure::io(&args.out, e))?;
    let mut prov = Provenance::new("split", &config);
    prov.input(&args.manifest)?;
    for entry in &manifest.entries {
        prov.input(&manifest.resolve(entry))?;
    }
    let write = |name: &str, pairs: &[(String, String)], prov: &mut Provenance| -> CliResult<()> {
        let path = args.out.join(name);
        let mut out = create(&path)?;
        write_corpus(pairs, CorpusFormat::Tsv, &mut out)?;
        finish(out, &path)?;
        prov.output(&path);
        Ok(())
    };
    println!("dataset\ttrain\tvalid\ttest");
    let (mut train, mut valid, mut test) = (0, 0, 0);
    for s in &splits {
        write(&format!("{}.train.tsv", s.name), &s.train, &mut prov)?;
        write(&format!("{}.valid.tsv", s.name), &s.valid, &mut prov)?;
        write(&format!("{}.test.tsv", s.name), &s.test, &mut prov)?;
        let (a, b, c) = s.sizes();
        println!("{}\t{a}\t{b}\t{c}", s.name);
        train += a;
        valid += b;
        test += c;
    }
    println!("total\t{train}\t{valid}\t{test}");
    let merged = merge_validation(&splits, &manifest.excluded_from_merged_valid())?;
    write(MERGED_VALID, &merged, &mut prov)?;
    println!("merged_valid\t{}", merged.len());
    prov.write(&args.out.join("provenance.json"))?;
    Ok(())
}

fn tokens(lines: &[String], options: TokenizeOptions) -> Vec<TokenSequence> {
    lines
        .iter()
        .map(|l| tokenize_with(&normalize(l), options))
        .collect()
}

pub fn bleu(args: &BleuArgs) -> CliResult<()> {
    let options = TokenizeOptions {
        lowercase: args.lowercase,
    };
    let hyps = read_lines(&args.hyp)?;
    let refs = read_lines(&args.reference)?;
    let result = corpus_bleu::<f64>(&tokens(&hyps, options), &tokens(&refs, options))?;
    log::info!(
        "precisions {:?} bp {} hyp_len {} ref_len {}",
        result.precisions,
        result.brevity_penalty,
        result.hyp_length,
        result.ref_length
    );
    println!("{}", result.display());
    Ok(())
}

fn parse_system(spec: &str, lexicon: &Lexicon) -> CliResult<Box<dyn System>> {
    match spec {
        "copy" => Ok(Box::new(CopySystem)),
        "lexicon" => Ok(Box::new(LexiconSystem {
            name: "lexicon".into(),
            lexicon: lexicon.clone(),
        })),
        _ => {
            let rest = spec
                .strip_prefix("file:")
                .ok_or_else(|| Failure::invariant(format!("unknown system `{spec}`")))?;
            let (name, dir) = rest
                .split_once('=')
                .filter(|(n, d)| !n.is_empty() && !d.is_empty())
                .ok_or_else(|| {
                    Failure::invariant(format!("expected file:NAME=DIR, got `{spec}`"))
                })?;
            Ok(Box::new(FileSystem {
                name: name.into(),
                dir: dir.into(),
                extension: "txt".into(),
            }))
        }
    }
}

pub fn report(args: &ReportArgs) -> CliResult<()> {
    let mut config = RunConfig::load(args.config.as_deref())?;
    if let Some(seed) = args.seed {
        config.split_seed = seed;
    }
    if args.lowercase {
        config.lowercase = true;
    }
    let mut lexicon = Lexicon::default_mappings();
    if let Some(path) = &args.lexicon {
        lexicon.extend(&Lexicon::from_tsv(open(path)?).map_err(|e| Failure::at(path, e))?);
    }
    let systems = args
        .systems
        .iter()
        .map(|s| parse_system(s, &lexicon))
        .collect::<CliResult<Vec<_>>>()?;
    let mut names = std::collections::HashSet::new();
    for s in &systems {
        if !names.insert(s.name()) {
            return Err(Failure::invariant(format!(
                "system `{}` listed twice",
                s.name()
            )));
        }
    }
    let (manifest, splits) = split_manifest(&args.manifest, &config)?;
    let sets: Vec<TestSet> = splits
        .iter()
        .map(|s| TestSet::from_pairs(s.name.clone(), &s.test))
        .collect();
    let refs: Vec<&dyn System> = systems.iter().map(|s| s.as_ref()).collect();
    let report = evaluate_systems::<f64>(
        &sets,
        &refs,
        TokenizeOptions {
            lowercase: config.lowercase,
        },
    )?;
    print!("{}", report.to_text());
    if let Some(path) = &args.out {
        let mut out = create(path)?;
        out.write_all(report.to_tsv().as_bytes())
            .map_err(|e| Failure::io(path, e))?;
        finish(out, path)?;
        let mut prov = Provenance::new("report", &config);
        prov.input(&args.manifest)?;
        for entry in &manifest.entries {
            prov.input(&manifest.resolve(entry))?;
        }
        if let Some(lex) = &args.lexicon {
            prov.input(lex)?;
        }
        prov.output(path);
        prov.write(&provenance_path(path))?;
    }
    Ok(())
}
