//! End-to-end tests of the `cookalign` binary: pipeline flows, output
//! formats, and the documented exit codes (0 ok, 1 usage, 2 input format,
//! 3 pipeline).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cookalign"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cookalign")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn assert_exit(args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "command {args:?}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn synth_align_eval_pipeline() {
    let dir = TempDir::new().unwrap();
    let recipe = dir.path().join("r.recipe");
    let transcript = dir.path().join("t.tsv");
    let truth = dir.path().join("truth.align");
    let predicted = dir.path().join("pred.align");
    run_ok(&[
        "synth", "--steps", "4", "--words-per-step", "6", "--pad", "6", "--seed", "11",
        "--out-recipe", p(&recipe), "--out-transcript", p(&transcript), "--out-truth", p(&truth),
    ]);
    run_ok(&[
        "align", "--recipe", p(&recipe), "--transcript", p(&transcript), "--tau", "0.1",
        "--out", p(&predicted),
    ]);
    let metrics = run_ok(&["eval", "--predicted", p(&predicted), "--truth", p(&truth)]);
    assert!(metrics.contains("token_accuracy"), "{metrics}");
    assert!(metrics.contains("mean_step_iou"));
    assert!(metrics.contains("coverage"));
    // a truth alignment evaluates perfectly against itself
    let perfect = run_ok(&["eval", "--predicted", p(&truth), "--truth", p(&truth)]);
    assert!(perfect.contains("token_accuracy\t1"), "{perfect}");
    assert!(perfect.contains("coverage\t1"));
}

#[test]
fn synth_is_deterministic_across_runs() {
    let dir = TempDir::new().unwrap();
    let args = |suffix: &str| {
        let r = dir.path().join(format!("r{suffix}"));
        let t = dir.path().join(format!("t{suffix}"));
        let g = dir.path().join(format!("g{suffix}"));
        (r, t, g)
    };
    let (r1, t1, g1) = args("1");
    let (r2, t2, g2) = args("2");
    for (r, t, g) in [(&r1, &t1, &g1), (&r2, &t2, &g2)] {
        run_ok(&[
            "synth", "--seed", "3", "--pad", "5", "--wer", "0.3",
            "--out-recipe", p(r), "--out-transcript", p(t), "--out-truth", p(g),
        ]);
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert_eq!(std::fs::read(&t1).unwrap(), std::fs::read(&t2).unwrap());
    assert_eq!(std::fs::read(&g1).unwrap(), std::fs::read(&g2).unwrap());
}

#[test]
fn parse_produces_recipe_file() {
    let dir = TempDir::new().unwrap();
    let ingredients = write(dir.path(), "ing.txt", "2 cups flour\n3 eggs\n");
    let steps = write(
        dir.path(),
        "steps.txt",
        "Mix the flour and crack the eggs\nBake for ten minutes\n",
    );
    let out = dir.path().join("r.recipe");
    run_ok(&[
        "parse", "--ingredients", p(&ingredients), "--steps", p(&steps), "--out", p(&out),
    ]);
    let content = std::fs::read_to_string(&out).unwrap();
    assert!(content.starts_with("recipe v1\n"), "{content}");
    assert!(content.contains("\tmix\t"));
    assert!(content.contains("\tbake\t"));
}

#[test]
fn parse_with_no_usable_steps_exits_3() {
    let dir = TempDir::new().unwrap();
    let steps = write(dir.path(), "steps.txt", "the the the\n");
    let out = dir.path().join("r.recipe");
    assert_exit(&["parse", "--steps", p(&steps), "--out", p(&out)], 3);
}

#[test]
fn align_with_malformed_transcript_exits_2() {
    let dir = TempDir::new().unwrap();
    let ingredients = write(dir.path(), "ing.txt", "eggs\n");
    let steps = write(dir.path(), "steps.txt", "Crack the eggs\n");
    let recipe = dir.path().join("r.recipe");
    run_ok(&[
        "parse", "--ingredients", p(&ingredients), "--steps", p(&steps), "--out", p(&recipe),
    ]);
    let bad = write(dir.path(), "t.tsv", "not\ta\ttranscript at all\n0.5\n");
    let out = dir.path().join("a.align");
    assert_exit(&["align", "--recipe", p(&recipe), "--transcript", p(&bad), "--out", p(&out)], 2);
    // missing file is an input error too
    let missing = dir.path().join("nope.tsv");
    assert_exit(
        &["align", "--recipe", p(&recipe), "--transcript", p(&missing), "--out", p(&out)],
        2,
    );
}

fn transcript_line(start: f64, word: &str) -> String {
    format!("{start}\t0.5\t{word}\n")
}

fn cooking_transcript(dir: &Path) -> PathBuf {
    let mut content = String::new();
    for (i, word) in ["okay", "now", "chop", "the", "onions", "and", "stir", "the", "soup", "gently"]
        .iter()
        .enumerate()
    {
        content.push_str(&transcript_line(i as f64, word));
    }
    write(dir, "cook.tsv", &content)
}

#[test]
fn label_keyword_mode_spots_verbs() {
    let dir = TempDir::new().unwrap();
    let transcript = cooking_transcript(dir.path());
    let out = dir.path().join("c.clips");
    run_ok(&["label", "--mode", "keyword", "--transcript", p(&transcript), "--out", p(&out)]);
    let content = std::fs::read_to_string(&out).unwrap();
    assert!(content.starts_with("clipcorpus v1\n"));
    assert!(content.contains("\tchop\t"), "{content}");
    assert!(content.contains("\tstir\t"));
    assert!(content.contains("\tkeyword\t"));
}

#[test]
fn label_usage_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.clips");
    let transcript = cooking_transcript(dir.path());
    // hybrid and hmm without an alignment
    assert_exit(
        &["label", "--mode", "hybrid", "--transcript", p(&transcript), "--out", p(&out)],
        1,
    );
    assert_exit(&["label", "--mode", "hmm", "--out", p(&out)], 1);
    // unknown mode
    assert_exit(
        &["label", "--mode", "bogus", "--transcript", p(&transcript), "--out", p(&out)],
        1,
    );
    // missing required flag entirely (clap usage error)
    assert_exit(&["label", "--out", p(&out)], 1);
}

/// 5 fps, one "onion" class: low scores except an impulse at 6.0-6.4 s.
fn impulse_track(dir: &Path) -> PathBuf {
    let mut content = String::from("fps=5 classes=onion\n");
    for f in 0..60 {
        let score = if (30..32).contains(&f) { 1.0 } else { 0.05 };
        content.push_str(&format!("{score}\n"));
    }
    write(dir, "track.tsv", &content)
}

#[test]
fn refine_records_visual_scores() {
    let dir = TempDir::new().unwrap();
    let transcript = cooking_transcript(dir.path());
    let clips = dir.path().join("c.clips");
    run_ok(&["label", "--mode", "keyword", "--transcript", p(&transcript), "--out", p(&clips)]);
    let track = impulse_track(dir.path());
    let refined = dir.path().join("refined.clips");
    run_ok(&["refine", "--corpus", p(&clips), "--track", p(&track), "--out", p(&refined)]);
    let content = std::fs::read_to_string(&refined).unwrap();
    for line in content.lines().skip(2) {
        let fields: Vec<&str> = line.split('\t').collect();
        // visual_score column populated
        assert_ne!(fields[7], "-", "{line}");
    }
}

#[test]
fn affordance_confidence_search_flow() {
    let dir = TempDir::new().unwrap();
    // hand-written corpus: (chop, onion) frequent with strong visuals,
    // (chop, sofa) rare and weak
    let mut corpus = String::from("clipcorpus v1\nclips\t5\n");
    for i in 0..4 {
        corpus.push_str(&format!(
            "c{i}\tv\tchop\tonion\t{}\t{}\thybrid\t0.9\t-\n",
            i * 10,
            i * 10 + 4
        ));
    }
    corpus.push_str("c9\tv\tchop\tsofa\t50\t54\thybrid\t0.1\t-\n");
    let corpus = write(dir.path(), "c.clips", &corpus);
    let model = dir.path().join("m.affordance");
    let heatmap = dir.path().join("probs.csv");
    run_ok(&[
        "affordance", "train", "--corpus", p(&corpus), "--out", p(&model),
        "--heatmap", p(&heatmap),
    ]);
    assert!(std::fs::read_to_string(&heatmap).unwrap().contains("chop"));
    let p_onion: f64 = run_ok(&[
        "affordance", "query", "--model", p(&model), "--action", "chop", "--object", "onion",
    ])
    .trim()
    .parse()
    .unwrap();
    let p_sofa: f64 = run_ok(&[
        "affordance", "query", "--model", p(&model), "--action", "chop", "--object", "sofa",
    ])
    .trim()
    .parse()
    .unwrap();
    assert!(p_onion > p_sofa, "{p_onion} vs {p_sofa}");
    // unknown pair is a pipeline error
    assert_exit(
        &["affordance", "query", "--model", p(&model), "--action", "peel", "--object", "onion"],
        3,
    );

    let scored = dir.path().join("scored.clips");
    run_ok(&["confidence", "--corpus", p(&corpus), "--model", p(&model), "--out", p(&scored)]);
    let results = run_ok(&["search", "--corpus", p(&scored), "--action", "chop"]);
    let lines: Vec<&str> = results.lines().collect();
    assert_eq!(lines[0], "rank\tclip_id\tvideo_id\tseek_time\tconfidence");
    assert_eq!(lines.len(), 6);
    // strong onion clips rank above the weak sofa clip
    assert!(lines[1].contains("c0"));
    assert!(lines[5].contains("c9"), "{results}");

    // object query matches by token overlap
    let results = run_ok(&["search", "--corpus", p(&scored), "--object", "onions"]);
    assert_eq!(results.lines().count(), 5);

    // no query at all is a usage error
    assert_exit(&["search", "--corpus", p(&scored)], 1);

    // thresholding drops the weak clip
    let filtered = dir.path().join("filtered.clips");
    run_ok(&[
        "confidence", "--corpus", p(&corpus), "--model", p(&model), "--threshold", "0.4",
        "--out", p(&filtered),
    ]);
    let content = std::fs::read_to_string(&filtered).unwrap();
    assert!(!content.contains("sofa"), "{content}");
    assert!(content.contains("clips\t4"));
}

#[test]
fn illustrate_plans_keyframes() {
    let dir = TempDir::new().unwrap();
    // alignment with one aligned step (hull 5.0-7.0 around the impulse) and
    // one unaligned step
    let alignment = write(
        dir.path(),
        "a.align",
        "alignment v1\nvideo\tv\nsteps\t2\n\
         token\t5\t0.5\tchop\t1\t0\n\
         token\t5.5\t0.5\tonions\t1\t0\n\
         token\t6\t1\tnow\t1\t1\n\
         hull\t1\t5\t7\tchop\tonion\n",
    );
    let plan = dir.path().join("plan.txt");
    run_ok(&["illustrate", "--alignment", p(&alignment), "--out", p(&plan)]);
    let content = std::fs::read_to_string(&plan).unwrap();
    let lines: Vec<&str> = content.lines().collect();
    assert_eq!(lines[0], "illustration v1");
    // no track: midpoint keyframe
    assert_eq!(lines[1], "step\t1\t5\t7\t6");
    assert_eq!(lines[2], "step\t2\t-\t-\t-");

    // with the impulse track the keyframe snaps to the impulse frames
    let track = impulse_track(dir.path());
    run_ok(&["illustrate", "--alignment", p(&alignment), "--track", p(&track), "--out", p(&plan)]);
    let content = std::fs::read_to_string(&plan).unwrap();
    let keyframe: f64 = content
        .lines()
        .nth(1)
        .unwrap()
        .split('\t')
        .nth(4)
        .unwrap()
        .parse()
        .unwrap();
    assert!((6.0..6.4).contains(&keyframe), "keyframe {keyframe}");
}

#[test]
fn classifier_train_and_eval() {
    let dir = TempDir::new().unwrap();
    let mut labels = String::new();
    for i in 0..30 {
        labels.push_str(&format!("step\tmix the flour bowl{i}\n"));
        labels.push_str(&format!("ingredient\ttwo cups sugar{i}\n"));
        labels.push_str(&format!("background\tthanks for watching clip{i}\n"));
    }
    let labels = write(dir.path(), "labels.tsv", &labels);
    let model = dir.path().join("m.nbmodel");
    run_ok(&["classifier", "train", "--labels", p(&labels), "--out", p(&model)]);
    let report = run_ok(&["classifier", "eval", "--model", p(&model), "--labels", p(&labels)]);
    assert!(report.contains("class\tprecision\trecall\tf1"), "{report}");
    assert!(report.contains("macro-f1"));

    // bad label file is an input error
    let bad = write(dir.path(), "bad.tsv", "nonsense-label\thello\n");
    assert_exit(&["classifier", "train", "--labels", p(&bad), "--out", p(&model)], 2);
}

#[test]
fn config_file_is_honored_and_validated() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.config", "config v1\ngamma = 0.6\ntau = 0.1\n");
    let bad = write(dir.path(), "bad.config", "config v1\nbogus = 1\n");
    let recipe = dir.path().join("r.recipe");
    let transcript = dir.path().join("t.tsv");
    let truth = dir.path().join("g.align");
    run_ok(&[
        "synth", "--steps", "3", "--seed", "2",
        "--out-recipe", p(&recipe), "--out-transcript", p(&transcript), "--out-truth", p(&truth),
    ]);
    let out = dir.path().join("a.align");
    run_ok(&[
        "--config", p(&good),
        "align", "--recipe", p(&recipe), "--transcript", p(&transcript), "--out", p(&out),
    ]);
    assert_exit(
        &[
            "--config", p(&bad),
            "align", "--recipe", p(&recipe), "--transcript", p(&transcript), "--out", p(&out),
        ],
        2,
    );
}
