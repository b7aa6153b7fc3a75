use std::fs;
use std::path::PathBuf;

use floqsync::config::ExperimentConfig;
use floqsync::runner;

fn recipes() -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../recipes");
    let mut out: Vec<(PathBuf, String)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    out
}

fn tier(text: &str) -> &str {
    text.lines().find_map(|l| l.strip_prefix("# tier: ")).expect("recipe declares a tier").split_whitespace().next().unwrap()
}

#[test]
fn every_recipe_validates() {
    let all = recipes();
    assert!(all.len() >= 6);
    for (path, text) in &all {
        let cfg = ExperimentConfig::load(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(["quick", "minutes", "hours", "large-memory"].contains(&tier(text)), "{}", path.display());
        let g = cfg.graph().unwrap();
        cfg.subset(g.num_sites()).unwrap();
    }
}

#[test]
fn quick_recipes_run_to_completion() {
    for (path, text) in recipes().iter().filter(|(_, t)| tier(t) == "quick") {
        let cfg = ExperimentConfig::load(path).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let summary = runner::run(&cfg, dir.path()).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        for f in ["trajectory.csv", "sync_report.csv", "manifest.json", "config.toml"] {
            assert!(dir.path().join(f).exists(), "{} missing {f}", path.display());
        }
        assert_eq!(summary.record.num_steps(), cfg.floquet.n_cycles + 1);
        if text.contains("[noise]") {
            assert!(dir.path().join("mitigated.csv").exists());
        }
    }
}
