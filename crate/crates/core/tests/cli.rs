use std::fs;
use std::path::Path;

use perc_lab::cli::{parse_config, replay, run, CliError, RunOptions};

fn run_in(dir: &Path, text: &str, seed: Option<u64>) -> Result<perc_lab::cli::RunManifest, CliError> {
    let cfg = parse_config(text)?;
    run(cfg, &RunOptions { seed, workers: None, out: Some(dir.to_path_buf()), fast: false })
}

const Z2: &str = "[graph]\nkind = \"zd_box\"\ndim = 2\nside = 21\n";

fn configs() -> Vec<(&'static str, String)> {
    let perc = "[percolation]\np = 0.6\nq = 0.8\nepsilon = 0.5\nseed = 3\n";
    let g = |body: &str| format!("{Z2}{perc}[experiment]\n{body}");
    let free = |body: &str| format!("{perc}[experiment]\n{body}");
    vec![
        ("phi-profile", g("kind = \"phi-profile\"\nn_max = 4\n")),
        ("phi-of-set", g("kind = \"phi-of-set\"\nset = { kind = \"origin\" }\n")),
        ("geometry-check", g("kind = \"geometry-check\"\nepsilon = 0.5\nset = { kind = \"block\", half_side = 2 }\n")),
        ("layers-check", g("kind = \"layers-check\"\nsamples = 200\nexact_edges = 3\n")),
        ("volume-tail", g("kind = \"volume-tail\"\nradius = 8\ngrid = [1, 2, 4]\nsamples = 200\n")),
        ("radius-tail", g("kind = \"radius-tail\"\nradius = 8\ngrid = [1, 2, 4]\nsamples = 200\n")),
        (
            "decay-fit",
            g("kind = \"decay-fit\"\nradius = 9\ngrid = [1, 2, 3, 4, 5, 6]\nsamples = 2000\nprofile_n_max = 5\n"),
        ),
        ("psi", g("kind = \"psi\"\nset = { kind = \"origin\" }\nradii = [3, 5]\nsamples = 100\n")),
        (
            "merge-bound",
            format!("{Z2}[percolation]\np = 0.8\nq = 0.6\n[experiment]\nkind = \"merge-bound\"\nset = {{ kind = \"origin\" }}\nt = 2\nsamples = 100\n"),
        ),
        (
            "explore",
            g("kind = \"explore\"\nset = { kind = \"block\", half_side = 1 }\nradius = 7\nt = 3\nruns = 3\nestimator_samples = 20\n"),
        ),
        ("v-n", free("kind = \"v-n\"\nsize_s = 1\nc = 0.25\nn_max = 5\ndegree = 4\nmodel = { kind = \"constant\", value = 4.0 }\n")),
        (
            "collect-mass",
            g("kind = \"collect-mass\"\nset = { kind = \"origin\" }\nc = 0.25\nn_max = 4\nsamples = 50\nprofile_n_max = 4\n"),
        ),
        ("block-scan", free("kind = \"block-scan\"\nd = 2\nk = 1\nn_grid = [3, 4]\nc = 2\nsamples = 50\nuniqueness = true\n")),
        ("coarse-grain", free("kind = \"coarse-grain\"\nd = 2\nk = 1\nn = 3\nc = 2\nwindow = 3\nsamples = 20\n")),
        ("density-scan", free("kind = \"density-scan\"\nd = 2\nk = 1\nn_grid = [2]\ndelta = 0.5\nsamples = 20\n")),
        ("slab-crossing", free("kind = \"slab-crossing\"\nd = 3\nell = 1\nlengths = [4, 8]\nsamples = 20\n")),
        ("half-space", free("kind = \"half-space\"\nd = 3\nn = 2\nc0 = 0.2\nsamples = 20\n")),
    ]
}

#[test]
fn every_experiment_runs_and_replays() {
    let root = tempfile::tempdir().unwrap();
    for (name, text) in configs() {
        let a = root.path().join(format!("{name}-a"));
        let b = root.path().join(format!("{name}-b"));
        let ma = run_in(&a, &text, None).unwrap_or_else(|e| panic!("{name}: {e}"));
        let mb = run_in(&b, &text, None).unwrap();
        assert_eq!(ma.experiment, name);
        assert!(!ma.outputs.is_empty());
        assert_eq!(ma.outputs, mb.outputs, "{name}: reruns differ");
        for f in &ma.outputs {
            let text = fs::read_to_string(a.join(&f.file)).unwrap();
            if f.file.ends_with(".csv") {
                assert!(text.starts_with(&format!("# config_hash={}\n", ma.config_hash)), "{name}");
                assert!(text.lines().count() >= 3, "{name}: {} has no data rows", f.file);
            }
        }
        let rep = replay(&a.join("manifest.json")).unwrap();
        assert!(rep.pass, "{name}: replay failed {:?}", rep.files);
    }
}

#[test]
fn phi_profile_rows() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{Z2}[experiment]\nkind = \"phi-profile\"\nn_max = 4\n");
    run_in(dir.path(), &text, None).unwrap();
    let csv = fs::read_to_string(dir.path().join("phi_profile.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(2).collect();
    assert_eq!(rows, ["1,4", "2,6", "3,8", "4,8"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = run_in(dir.path(), "[experiment]\nkind = \"nope\"\n", None).unwrap_err();
    assert_eq!(unknown.exit_code(), 2);
    let typo = run_in(dir.path(), &format!("{Z2}[experiment]\nkind = \"phi-profile\"\nn_max = 4\nnmax = 3\n"), None).unwrap_err();
    assert_eq!(typo.exit_code(), 2);
    let missing_p = run_in(dir.path(), &format!("{Z2}[experiment]\nkind = \"volume-tail\"\nradius = 4\ngrid = [1]\n"), None).unwrap_err();
    assert_eq!(missing_p.exit_code(), 2);
    // S reaches the truncation boundary
    let pre = run_in(
        dir.path(),
        &format!("{Z2}[percolation]\nq = 0.5\n[experiment]\nkind = \"psi\"\nset = {{ kind = \"origin\" }}\nradii = [30]\nsamples = 5\n"),
        None,
    )
    .unwrap_err();
    assert_eq!(pre.exit_code(), 3);
    let budget = run_in(
        dir.path(),
        "[percolation]\np = 0.5\n[experiment]\nkind = \"block-scan\"\nd = 3\nk = 1\nn_grid = [2000]\nc = 2\nsamples = 1\n",
        None,
    )
    .unwrap_err();
    assert_eq!(budget.exit_code(), 4);
}

#[test]
fn replay_detects_corruption_and_seed_changes() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{Z2}[percolation]\np = 0.6\nseed = 9\n[experiment]\nkind = \"volume-tail\"\nradius = 8\ngrid = [1, 2, 4]\nsamples = 300\n");
    run_in(dir.path(), &text, None).unwrap();
    let manifest = dir.path().join("manifest.json");
    assert!(replay(&manifest).unwrap().pass);

    let csv = dir.path().join("volume_tail.csv");
    let original = fs::read_to_string(&csv).unwrap();
    fs::write(&csv, original.replace("300", "301")).unwrap();
    let rep = replay(&manifest).unwrap();
    assert!(!rep.pass);
    assert_eq!(rep.failures().map(|f| f.file.as_str()).collect::<Vec<_>>(), ["volume_tail.csv"]);
    fs::write(&csv, &original).unwrap();

    let m = fs::read_to_string(&manifest).unwrap();
    fs::write(&manifest, m.replace("\"seed\": 9", "\"seed\": 10")).unwrap();
    assert!(!replay(&manifest).unwrap().pass);
}

#[test]
fn seed_override_changes_outputs() {
    let root = tempfile::tempdir().unwrap();
    let text = format!("{Z2}[percolation]\np = 0.6\n[experiment]\nkind = \"volume-tail\"\nradius = 8\ngrid = [1, 2, 4]\nsamples = 300\n");
    let a = run_in(&root.path().join("a"), &text, Some(1)).unwrap();
    let b = run_in(&root.path().join("b"), &text, Some(2)).unwrap();
    assert_ne!(a.config_hash, b.config_hash);
    assert_ne!(a.outputs, b.outputs);
}

#[test]
fn worker_count_does_not_change_outputs() {
    let root = tempfile::tempdir().unwrap();
    let text = "[percolation]\np = 0.6\n[experiment]\nkind = \"slab-crossing\"\nd = 3\nell = 1\nlengths = [4, 8]\nsamples = 64\n";
    let one = run(parse_config(text).unwrap(), &RunOptions { workers: Some(1), out: Some(root.path().join("1")), ..Default::default() }).unwrap();
    let three = run(parse_config(text).unwrap(), &RunOptions { workers: Some(3), out: Some(root.path().join("3")), ..Default::default() }).unwrap();
    assert_eq!(one.outputs, three.outputs);
}
