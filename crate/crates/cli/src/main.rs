//! `cookalign`: command-line surface over the alignment toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 input format error, 3 pipeline
//! error.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cookalign_core::align::{self, Alignment};
use cookalign_core::classifier::{self, SentenceLabel};
use cookalign_core::clips::{self, ClipLabel};
use cookalign_core::config::{read_config, PipelineConfig};
use cookalign_core::confidence::{self, AffordanceModel};
use cookalign_core::corpus_io::{
    load_detector_track, load_embeddings, load_transcript, read_clip_corpus, write_clip_corpus,
    write_transcript, ClipCorpus, DetectorTrack, EmbeddingTable,
};
use cookalign_core::interval::Interval;
use cookalign_core::parser::{self, read_recipe, write_recipe};
use cookalign_core::refine::{self, DetectorMatch};
use cookalign_core::synth::{self, SynthNoise};
use cookalign_core::words;
use cookalign_core::Error;

#[derive(Parser)]
#[command(name = "cookalign", about = "Align recipes to cooking-video transcripts", version)]
struct Cli {
    /// Pipeline configuration file (versioned key-value text).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train or evaluate the 3-class sentence classifier.
    Classifier {
        #[command(subcommand)]
        command: ClassifierCommand,
    },
    /// Parse ingredient and step sentences into a recipe file.
    Parse(ParseArgs),
    /// Align a recipe to a transcript with the factored HMM.
    Align(AlignArgs),
    /// Build a labeled clip corpus (keyword, hmm, or hybrid mode).
    Label(LabelArgs),
    /// Refine clip windows against a detector score track.
    Refine(RefineArgs),
    /// Train or query the affordance model.
    Affordance {
        #[command(subcommand)]
        command: AffordanceCommand,
    },
    /// Score clip confidence and optionally filter by threshold.
    Confidence(ConfidenceArgs),
    /// Search a clip corpus for an (action, object) query.
    Search(SearchArgs),
    /// Plan one illustrating clip + keyframe per recipe step.
    Illustrate(IllustrateArgs),
    /// Generate a synthetic alignment case with known ground truth.
    Synth(SynthArgs),
    /// Score a predicted alignment against a ground-truth alignment.
    Eval(EvalArgs),
}

#[derive(Subcommand)]
enum ClassifierCommand {
    /// Train from a labels file (`<label>\t<sentence>` per line).
    Train {
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Additive smoothing pseudo-count (overrides config).
        #[arg(long)]
        smoothing: Option<f64>,
    },
    /// Print per-class precision/recall/F1 on a labels file.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        labels: PathBuf,
    },
}

#[derive(Args)]
struct ParseArgs {
    /// Ingredient sentences, one per line.
    #[arg(long)]
    ingredients: Option<PathBuf>,
    /// Step sentences, one per line.
    #[arg(long)]
    steps: PathBuf,
    /// Word embedding table for ingredient canonicalization.
    #[arg(long)]
    embeddings: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AlignArgs {
    #[arg(long)]
    recipe: PathBuf,
    #[arg(long)]
    transcript: PathBuf,
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Background stay probability (overrides config).
    #[arg(long)]
    gamma: Option<f64>,
    /// Emission softmax temperature (overrides config).
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LabelArgs {
    /// keyword, hmm, or hybrid.
    #[arg(long)]
    mode: String,
    /// Transcript file (required for keyword and hybrid modes).
    #[arg(long)]
    transcript: Option<PathBuf>,
    /// Alignment file (required for hmm and hybrid modes).
    #[arg(long)]
    alignment: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RefineArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    track: PathBuf,
    /// Maximum window shift in seconds (overrides config).
    #[arg(long)]
    max_shift: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum AffordanceCommand {
    /// Estimate the low-rank affordance model from a labeled corpus.
    Train {
        #[arg(long)]
        corpus: PathBuf,
        /// SVD rank cap (overrides config).
        #[arg(long)]
        rank: Option<usize>,
        /// Also export the probability matrix as CSV for plotting.
        #[arg(long)]
        heatmap: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print P(object | action) under a trained model.
    Query {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        action: String,
        #[arg(long)]
        object: String,
    },
}

#[derive(Args)]
struct ConfidenceArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    model: PathBuf,
    /// Keep only clips with confidence >= threshold.
    #[arg(long)]
    threshold: Option<f64>,
    /// Visual weight (overrides config).
    #[arg(long)]
    lambda_visual: Option<f64>,
    /// Affordance weight (overrides config).
    #[arg(long)]
    lambda_affordance: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    action: Option<String>,
    #[arg(long)]
    object: Option<String>,
    #[arg(long, default_value_t = 10)]
    max_results: usize,
}

#[derive(Args)]
struct IllustrateArgs {
    #[arg(long)]
    alignment: PathBuf,
    /// Detector track for keyframe selection (midpoint fallback without).
    #[arg(long)]
    track: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    /// Number of recipe steps.
    #[arg(long, default_value_t = 8)]
    steps: usize,
    /// Content words per step.
    #[arg(long, default_value_t = 10)]
    words_per_step: usize,
    /// Word substitution probability in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    wer: f64,
    /// Number of background filler tokens to insert.
    #[arg(long, default_value_t = 0)]
    pad: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "synth")]
    video_id: String,
    #[arg(long)]
    out_recipe: PathBuf,
    #[arg(long)]
    out_transcript: PathBuf,
    /// Ground truth, written in the alignment format.
    #[arg(long)]
    out_truth: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    predicted: PathBuf,
    #[arg(long)]
    truth: PathBuf,
}

/// Failure category carrying the process exit code.
enum Failure {
    Usage(String),
    Input(String),
    Pipeline(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Pipeline(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Pipeline(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Io(_) | Error::Format { .. } | Error::Version { .. } => {
                Failure::Input(err.to_string())
            }
            Error::Invalid(_) => Failure::Pipeline(err.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap handles --help/--version as "errors" with successful exit
            if err.use_stderr() {
                eprintln!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(config) => config,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            return ExitCode::from(failure.code());
        }
    };
    let outcome = match cli.command {
        Command::Classifier { command } => cmd_classifier(command, &config),
        Command::Parse(args) => cmd_parse(args, &config),
        Command::Align(args) => cmd_align(args, &config),
        Command::Label(args) => cmd_label(args),
        Command::Refine(args) => cmd_refine(args, &config),
        Command::Affordance { command } => cmd_affordance(command, &config),
        Command::Confidence(args) => cmd_confidence(args, &config),
        Command::Search(args) => cmd_search(args),
        Command::Illustrate(args) => cmd_illustrate(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Eval(args) => cmd_eval(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<PipelineConfig, Failure> {
    match path {
        Some(path) => Ok(read_config(path)?),
        None => Ok(PipelineConfig::default()),
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, Failure> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn read_labels(path: &Path) -> Result<Vec<(String, SentenceLabel)>, Failure> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut examples = Vec::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (label, sentence) = line.split_once('\t').ok_or_else(|| {
            Failure::Input(format!(
                "{} line {}: expected `<label>\\t<sentence>`",
                path.display(),
                i + 1
            ))
        })?;
        let label = SentenceLabel::parse(label).ok_or_else(|| {
            Failure::Input(format!("{} line {}: unknown label `{label}`", path.display(), i + 1))
        })?;
        examples.push((sentence.to_string(), label));
    }
    Ok(examples)
}

fn load_embeddings_opt(path: Option<&Path>) -> Result<EmbeddingTable, Failure> {
    match path {
        Some(path) => Ok(load_embeddings(path)?),
        None => Ok(EmbeddingTable::empty()),
    }
}

fn cmd_classifier(command: ClassifierCommand, config: &PipelineConfig) -> CliResult {
    match command {
        ClassifierCommand::Train { labels, out, smoothing } => {
            let examples = read_labels(&labels)?;
            let model = classifier::train(&examples, smoothing.unwrap_or(config.smoothing))?;
            classifier::write_model(&model, &out)?;
            println!("trained on {} sentences -> {}", examples.len(), out.display());
            Ok(())
        }
        ClassifierCommand::Eval { model, labels } => {
            let model = classifier::read_model(&model)?;
            let examples = read_labels(&labels)?;
            let metrics = classifier::evaluate(&model, &examples);
            println!("class\tprecision\trecall\tf1");
            for (label, m) in &metrics {
                println!("{}\t{:.4}\t{:.4}\t{:.4}", label.as_str(), m.precision, m.recall, m.f1);
            }
            let macro_f1 =
                metrics.values().map(|m| m.f1).sum::<f64>() / metrics.len() as f64;
            println!("macro-f1\t{macro_f1:.4}");
            Ok(())
        }
    }
}

fn cmd_parse(args: ParseArgs, config: &PipelineConfig) -> CliResult {
    let ingredients = match &args.ingredients {
        Some(path) => read_lines(path)?,
        None => Vec::new(),
    };
    let steps = read_lines(&args.steps)?;
    let embeddings = load_embeddings_opt(args.embeddings.as_deref())?;
    let recipe = parser::parse_recipe(&ingredients, &steps, &embeddings, &config.parser_config())?;
    write_recipe(&recipe, &args.out)?;
    println!("parsed {} steps -> {}", recipe.step_count(), args.out.display());
    Ok(())
}

fn cmd_align(args: AlignArgs, config: &PipelineConfig) -> CliResult {
    let recipe = read_recipe(&args.recipe)?;
    let transcript = load_transcript(&args.transcript)?;
    let embeddings = load_embeddings_opt(args.embeddings.as_deref())?;
    let mut align_config = config.align_config();
    if let Some(gamma) = args.gamma {
        align_config.gamma = gamma;
    }
    if let Some(tau) = args.tau {
        align_config.tau = tau;
    }
    let model = align::build_model(&recipe, &transcript, &embeddings, &align_config)?;
    let path = align::viterbi_align(&model);
    let segments = align::extract_segments(&path, &recipe, &transcript);
    let alignment = Alignment::from_parts(&recipe, &transcript, &path, &segments);
    align::write_alignment(&alignment, &args.out)?;
    println!(
        "aligned {} tokens over {} steps ({} hulls) -> {}",
        transcript.tokens.len(),
        recipe.step_count(),
        alignment.hulls.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_label(args: LabelArgs) -> CliResult {
    let whitelist = words::cooking_verbs();
    let labeled = match args.mode.as_str() {
        "keyword" => {
            let transcript_path = args.transcript.as_deref().ok_or_else(|| {
                Failure::Usage("--transcript is required for keyword mode".into())
            })?;
            let transcript = load_transcript(transcript_path)?;
            let duration = transcript.end_time();
            clips::label_keyword(&transcript, whitelist, duration)
        }
        "hmm" => {
            let alignment_path = args.alignment.as_deref().ok_or_else(|| {
                Failure::Usage("--alignment is required for hmm mode".into())
            })?;
            let alignment = align::read_alignment(alignment_path)?;
            clips::label_hmm(&alignment.segments(), &alignment.video_id)
        }
        "hybrid" => {
            let alignment_path = args.alignment.as_deref().ok_or_else(|| {
                Failure::Usage("--alignment is required for hybrid mode".into())
            })?;
            let alignment = align::read_alignment(alignment_path)?;
            let transcript = match args.transcript.as_deref() {
                Some(path) => load_transcript(path)?,
                None => alignment.transcript(),
            };
            let duration = transcript.end_time();
            clips::label_hybrid(
                &transcript,
                whitelist,
                duration,
                &alignment.segments(),
                alignment.step_count,
            )
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown mode `{other}` (expected keyword, hmm, or hybrid)"
            )))
        }
    };
    let count = labeled.len();
    let corpus = ClipCorpus::new(labeled)?;
    write_clip_corpus(&corpus, &args.out)?;
    println!("labeled {count} clips -> {}", args.out.display());
    Ok(())
}

fn cmd_refine(args: RefineArgs, config: &PipelineConfig) -> CliResult {
    let corpus = read_clip_corpus(&args.corpus)?;
    let track = load_detector_track(&args.track)?;
    let max_shift = args.max_shift.unwrap_or(config.max_shift);
    let refined: Vec<ClipLabel> = corpus
        .clips
        .iter()
        .map(|clip| refine::refine_clip(&track, clip, max_shift))
        .collect();
    let count = refined.len();
    let corpus = ClipCorpus::new(refined)?;
    write_clip_corpus(&corpus, &args.out)?;
    println!("refined {count} clips -> {}", args.out.display());
    Ok(())
}

fn cmd_affordance(command: AffordanceCommand, config: &PipelineConfig) -> CliResult {
    match command {
        AffordanceCommand::Train { corpus, rank, heatmap, out } => {
            let corpus = read_clip_corpus(&corpus)?;
            let counts = confidence::build_counts(&corpus.clips)?;
            let rank = rank
                .unwrap_or(config.rank)
                .min(AffordanceModel::default_rank(&counts));
            let model = AffordanceModel::build(&counts, rank)?;
            confidence::write_affordance(&model, &out)?;
            if let Some(heatmap) = heatmap {
                std::fs::write(&heatmap, model.heatmap_csv())
                    .map_err(|e| Failure::Input(format!("{}: {e}", heatmap.display())))?;
            }
            println!(
                "trained rank-{rank} model over {} actions x {} objects -> {}",
                model.actions.len(),
                model.objects.len(),
                out.display()
            );
            Ok(())
        }
        AffordanceCommand::Query { model, action, object } => {
            let model = confidence::read_affordance(&model)?;
            let p = model.probability(&action, &object).ok_or_else(|| {
                Failure::Pipeline(format!("pair ({action}, {object}) not in the model vocabulary"))
            })?;
            println!("{p}");
            Ok(())
        }
    }
}

/// Affordance value for a clip: best probability over its objects; clips
/// with no object or only unknown pairs contribute 0.
fn clip_affordance(model: &AffordanceModel, clip: &ClipLabel) -> f64 {
    clip.objects
        .iter()
        .filter_map(|object| model.probability(&clip.action, object))
        .fold(0.0, f64::max)
}

fn cmd_confidence(args: ConfidenceArgs, config: &PipelineConfig) -> CliResult {
    let corpus = read_clip_corpus(&args.corpus)?;
    let model = confidence::read_affordance(&args.model)?;
    let weights = (
        args.lambda_visual.unwrap_or(config.lambda_visual),
        args.lambda_affordance.unwrap_or(config.lambda_affordance),
    );
    let scored: Vec<ClipLabel> = corpus
        .clips
        .iter()
        .map(|clip| {
            let mut scored = clip.clone();
            scored.confidence = Some(confidence::clip_confidence(
                clip.visual_score.unwrap_or(0.0),
                clip_affordance(&model, clip),
                weights,
            ));
            scored
        })
        .collect();
    let total = scored.len();
    let (kept, fraction) = match args.threshold {
        Some(threshold) => confidence::filter_by_confidence(&scored, threshold),
        None => (scored, 1.0),
    };
    let corpus = ClipCorpus::new(kept)?;
    write_clip_corpus(&corpus, &args.out)?;
    println!(
        "scored {total} clips, retained {} ({:.1}%) -> {}",
        corpus.len(),
        fraction * 100.0,
        args.out.display()
    );
    Ok(())
}

fn lemma_set(text: &str) -> BTreeSet<String> {
    words::tokenize(text)
        .iter()
        .map(|t| words::lemmatize(t))
        .collect()
}

fn cmd_search(args: SearchArgs) -> CliResult {
    if args.action.is_none() && args.object.is_none() {
        return Err(Failure::Usage("provide at least one of --action / --object".into()));
    }
    let corpus = read_clip_corpus(&args.corpus)?;
    let action_lemma = args.action.as_deref().map(words::lemmatize);
    let object_lemmas = args.object.as_deref().map(lemma_set);
    let mut matches: Vec<&ClipLabel> = corpus
        .clips
        .iter()
        .filter(|clip| {
            let action_ok = action_lemma
                .as_ref()
                .map(|lemma| &words::lemmatize(&clip.action) == lemma)
                .unwrap_or(true);
            let object_ok = object_lemmas
                .as_ref()
                .map(|lemmas| {
                    clip.objects
                        .iter()
                        .any(|object| !lemma_set(object).is_disjoint(lemmas))
                })
                .unwrap_or(true);
            action_ok && object_ok
        })
        .collect();
    // provenance order stands in for confidence when it is absent
    let provenance_rank = |clip: &ClipLabel| match clip.provenance {
        clips::Provenance::Hybrid => 0,
        clips::Provenance::Hmm => 1,
        clips::Provenance::Keyword => 2,
        clips::Provenance::HybridFallback => 3,
    };
    matches.sort_by(|a, b| {
        b.confidence
            .unwrap_or(f64::NEG_INFINITY)
            .partial_cmp(&a.confidence.unwrap_or(f64::NEG_INFINITY))
            .unwrap()
            .then_with(|| provenance_rank(a).cmp(&provenance_rank(b)))
            .then_with(|| a.clip_id.cmp(&b.clip_id))
    });
    println!("rank\tclip_id\tvideo_id\tseek_time\tconfidence");
    for (rank, clip) in matches.iter().take(args.max_results).enumerate() {
        println!(
            "{}\t{}\t{}\t{}\t{}",
            rank + 1,
            clip.clip_id,
            clip.video_id,
            clip.interval.start,
            clip.confidence.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
        );
    }
    Ok(())
}

/// Midpoint time of the best-scoring track frame overlapping the hull,
/// clamped into the hull; hull midpoint when no frame or class matches.
fn keyframe_time(hull: &Interval, entities: &[String], track: Option<&DetectorTrack>) -> f64 {
    let midpoint = (hull.start + hull.end) / 2.0;
    let Some(track) = track else {
        return midpoint;
    };
    let mut class_indices = BTreeSet::new();
    for entity in entities {
        class_indices.extend(refine::match_detectors(entity, &track.class_names).class_indices);
    }
    if class_indices.is_empty() {
        return midpoint;
    }
    let matched = DetectorMatch {
        object: entities.join(" "),
        class_indices,
    };
    let mut best: Option<(f64, f64)> = None; // (score, time)
    for frame in 0..track.num_frames() {
        let (fs, fe) = track.frame_interval(frame);
        if fs >= hull.end || fe <= hull.start {
            continue;
        }
        let score = refine::frame_score(track, frame, &matched).expect("frame in range");
        let time = ((fs + fe) / 2.0).clamp(hull.start, hull.end);
        if best.map(|(s, _)| score > s).unwrap_or(true) {
            best = Some((score, time));
        }
    }
    best.map(|(_, time)| time).unwrap_or(midpoint)
}

fn cmd_illustrate(args: IllustrateArgs) -> CliResult {
    let alignment = align::read_alignment(&args.alignment)?;
    let track = match args.track.as_deref() {
        Some(path) => Some(load_detector_track(path)?),
        None => None,
    };
    let mut out = String::from("illustration v1\n");
    for step in 1..=alignment.step_count {
        match alignment.hulls.iter().find(|h| h.step_index == step) {
            Some(hull) => {
                let keyframe = keyframe_time(&hull.interval, &hull.entities, track.as_ref());
                out.push_str(&format!(
                    "step\t{step}\t{}\t{}\t{keyframe}\n",
                    hull.interval.start, hull.interval.end
                ));
            }
            None => out.push_str(&format!("step\t{step}\t-\t-\t-\n")),
        }
    }
    std::fs::write(&args.out, &out).map_err(|e| Failure::Input(format!("{}: {e}", args.out.display())))?;
    println!(
        "planned {} of {} steps -> {}",
        alignment.hulls.len(),
        alignment.step_count,
        args.out.display()
    );
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> CliResult {
    if !(0.0..=1.0).contains(&args.wer) {
        return Err(Failure::Usage("--wer must be in [0, 1]".into()));
    }
    let recipe = synth::synth_recipe(args.steps, args.words_per_step, args.seed);
    let noise = SynthNoise {
        word_error_rate: args.wer,
        background_pad: args.pad,
        seed: args.seed,
    };
    let case = synth::synth_generate(&recipe, &noise, &args.video_id);
    write_recipe(&case.recipe, &args.out_recipe)?;
    write_transcript(&case.transcript, &args.out_transcript)?;
    let truth_segments = align::extract_segments(&case.truth, &case.recipe, &case.transcript);
    let truth = Alignment::from_parts(&case.recipe, &case.transcript, &case.truth, &truth_segments);
    align::write_alignment(&truth, &args.out_truth)?;
    println!(
        "generated {} tokens over {} steps -> {}, {}, {}",
        case.transcript.tokens.len(),
        recipe.step_count(),
        args.out_recipe.display(),
        args.out_transcript.display(),
        args.out_truth.display()
    );
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> CliResult {
    let predicted = align::read_alignment(&args.predicted)?;
    let truth = align::read_alignment(&args.truth)?;
    let metrics = synth::evaluate_segments(
        &predicted.path(),
        &truth.path(),
        &predicted.segments(),
        &truth.segments(),
        truth.step_count,
    )?;
    println!("token_accuracy\t{}", metrics.token_accuracy);
    println!("mean_step_iou\t{}", metrics.mean_step_iou);
    println!("coverage\t{}", metrics.coverage);
    Ok(())
}
