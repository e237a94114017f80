use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use scenetalk::commands::read_narration;
use scenetalk::{narrate, Bundle};
use scenetalk_nlg::Tense;

const L1_SENTENCE: &str = "Irene occupies the right quadrant, while The Driver occupies the left quadrant.";

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scenetalk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Copy of a fixture bundle that a test may damage.
fn scratch_copy(name: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(fixture(name)).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    dir
}

#[test]
fn narrate_l1_emits_the_quadrant_sentence() {
    let o = run(&["narrate", path(&fixture("l1_quadrants"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().any(|l| l == L1_SENTENCE), "{}", stdout(&o));
}

#[test]
fn narrate_l2_emits_walk_and_attraction() {
    let o = run(&["narrate", path(&fixture("l2_wayfinding"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for want in [
        "Barbara walks from the emergency, through the atrium lobby to the blue elevators.",
        "While walking through the hallway, Barbaras attention is attracted by the outside view.",
    ] {
        assert!(text.lines().any(|l| l == want), "missing {want:?} in\n{text}");
    }
}

#[test]
fn narrate_accepts_the_bundle_file_itself() {
    let o = run(&["narrate", path(&fixture("l1_quadrants").join("bundle.toml"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains(L1_SENTENCE));
}

#[test]
fn tense_flag_selects_the_tense() {
    let o = run(&["narrate", path(&fixture("l1_quadrants")), "--tense", "past"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Irene occupied the right quadrant, while The Driver occupied the left quadrant."));
    let o = run(&["narrate", path(&fixture("l2_wayfinding")), "--tense", "future_continuous"]);
    assert!(stdout(&o)
        .contains("Barbara will be walking from the emergency, through the atrium lobby to the blue elevators."));
    let o = run(&["narrate", path(&fixture("l1_quadrants")), "--tense", "pluperfect"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_regions_file_is_a_validation_failure() {
    let dir = scratch_copy("l1_quadrants");
    fs::remove_file(dir.path().join("regions.json")).unwrap();
    let o = run(&["narrate", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("regions.json"), "{}", stderr(&o));
}

#[test]
fn malformed_track_record_names_file_and_line() {
    let dir = scratch_copy("l1_quadrants");
    let tracks = dir.path().join("tracks.jsonl");
    let mut lines: Vec<String> = fs::read_to_string(&tracks).unwrap().lines().map(String::from).collect();
    lines[4] = r#"{"entity_id": "irene_face", "kind": "face", "t": "soon"}"#.into();
    fs::write(&tracks, lines.join("\n")).unwrap();
    let o = run(&["narrate", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("tracks.jsonl:5"), "{}", stderr(&o));
}

#[test]
fn relations_filters_by_fluent_and_relation() {
    let l1 = fixture("l1_quadrants");
    let o = run(&["relations", path(&l1), "--fluent", "topology(irene_face,right_quadrant)", "--relation", "ntpp"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "holds(topology(irene_face,right_quadrant), ntpp, between(10.0, 18.4))\n");

    let o = run(&["relations", path(&l1), "--fluent", "topology(irene_face,right_quadrant)"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert!(lines.len() > 1);
    assert!(lines.iter().all(|l| l.starts_with("holds(topology(irene_face,right_quadrant), ")));
}

#[test]
fn relations_outside_the_timeline_is_empty() {
    let o = run(&["relations", path(&fixture("l1_quadrants")), "--at", "999"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn relations_without_filters_dumps_the_narrative() {
    let l1 = fixture("l1_quadrants");
    let o = run(&["relations", path(&l1)]);
    assert_eq!(o.status.code(), Some(0));
    let bundle = Bundle::load(&l1, None).unwrap();
    let store = narrate(&bundle, Tense::SimplePresent).unwrap().narrative;
    assert_eq!(stdout(&o).lines().count(), store.holding_count());
}

#[test]
fn bad_fluent_syntax_is_a_usage_error() {
    for bad in ["topology(irene_face", "teleport(a,b)", "topology(a)"] {
        let o = run(&["relations", path(&fixture("l1_quadrants")), "--fluent", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(stderr(&o).contains("usage"), "{}", stderr(&o));
    }
}

#[test]
fn parse_the_quadrant_sentence_gives_one_tree() {
    let o = run(&["parse", "--sentence", L1_SENTENCE]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("1 parse\nparse 1:\nS\n"), "{text}");

    let o = run(&["parse", "--sentence", L1_SENTENCE, "--json"]);
    let trees: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(trees.as_array().unwrap().len(), 1);
}

#[test]
fn parse_failures_exit_with_token_diagnostics() {
    let o = run(&["parse", "--sentence", ""]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());

    let o = run(&["parse", "--sentence", "Irene occupies the purple quadrant."]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("word 4 `purple`"), "{}", stderr(&o));
}

#[test]
fn ambiguous_sentence_prints_every_tree() {
    let lexicon = fixture("ambiguous").join("lexicon.toml");
    let sentence = "Barbaras attention is attracted by the outside view.";
    let o = run(&["parse", "--lexicon", path(&lexicon), "--sentence", sentence]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("2 parses\n"), "{text}");
    assert!(text.contains("parse 2:"));

    let o = run(&["parse", "--sentence", sentence]);
    assert!(stdout(&o).starts_with("1 parse\n"));
}

#[test]
fn json_narrative_reloads_into_an_equal_store() {
    for name in ["l1_quadrants", "l2_wayfinding"] {
        let o = run(&["narrate", path(&fixture(name)), "--json"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let reloaded = read_narration(&stdout(&o)).unwrap();
        let bundle = Bundle::load(&fixture(name), None).unwrap();
        let direct = narrate(&bundle, Tense::SimplePresent).unwrap();
        assert_eq!(reloaded.narrative, direct.narrative, "{name}");
        assert_eq!(reloaded, direct, "{name}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for name in ["l1_quadrants", "l2_wayfinding"] {
        for flags in [&[][..], &["--json"][..]] {
            let bundle = fixture(name);
            let mut args = vec!["narrate", path(&bundle)];
            args.extend_from_slice(flags);
            let first = run(&args).stdout;
            for _ in 0..2 {
                assert_eq!(run(&args).stdout, first, "{name} {flags:?}");
            }
        }
    }
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("summary.txt");
    let o = run(&["narrate", path(&fixture("l1_quadrants")), "--out", path(&target)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&target).unwrap(), format!("{L1_SENTENCE}\n"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);

    let o = run(&["narrate", path(&fixture("l1_quadrants")), "--out", path(&dir.path().join("no/such/dir/x.txt"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_override_replaces_the_scene_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("scene.toml");
    fs::write(&config, "axis = \"image\"\n\n[[fluent]]\nfamily = \"topology\"\nargs = [\"irene_face\", \"nowhere\"]\n")
        .unwrap();
    let o = run(&["narrate", path(&fixture("l1_quadrants")), "--config", path(&config)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("scene.toml"), "{}", stderr(&o));
}
