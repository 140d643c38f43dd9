//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use graph_slepian::{
    eig_laplacian, filter_laplacian, filter_slepian, generators, slepian_1d, slepian_basis,
    BandLimit, Design, DftDesign, Graph, LaplacianKind, NodeSubset, SpectralWindow, TriMesh,
};
use gslep_testkit as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = fn() -> Check;

/// Command name, arguments, and the flags that take output paths.
type Run<'a> = (&'a str, Vec<String>, Vec<&'a str>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn edges_of(g: &Graph) -> Vec<(usize, usize, f64)> {
    g.edges().iter().map(|e| (e.i, e.j, e.weight)).collect()
}

fn offdiag_max(m: graph_slepian::MatRef<'_, f64>, diag: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let e = if i == j { diag[i] } else { 0.0 };
            worst = worst.max((m[(i, j)] - e).abs());
        }
    }
    worst
}

fn shannon_transition_1d() -> Check {
    let start = Instant::now();
    let design = DftDesign::centered(512, 129, 256, 17).map_err(|e| e.to_string())?;
    let basis = slepian_1d(&design).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let k = design.shannon_number();
    ensure(
        k == 17.0 * 129.0 / 512.0 && format!("{k:.4}") == "4.2832",
        || format!("K = {k}"),
    )?;
    let sum: f64 = basis.mu().iter().sum();
    ensure((sum - k).abs() < 1e-10, || {
        format!("sum mu = {sum}, K = {k}")
    })?;
    let above = basis.count_above(0.5);
    ensure(above == 4 || above == 5, || {
        format!("#(mu > 0.5) = {above}")
    })?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "K = {k}, |sum mu - K| = {:.1e}, #(mu > 0.5) = {above}, {elapsed:.2?}",
        (sum - k).abs()
    ))
}

fn double_orthogonality() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for trial in 0..50u64 {
        let n = rng.random_range(8..=60);
        let g = generators::random_connected(n, rng.random_range(0.0..0.3), 1000 + trial);
        let n_s = rng.random_range(1..=n);
        let n_w = rng.random_range(2..=n);
        let subset = NodeSubset::new(generators::random_subset(n, n_s, 2000 + trial), n)
            .map_err(|e| e.to_string())?;
        let spec = eig_laplacian(&g, LaplacianKind::Normalized, n).map_err(|e| e.to_string())?;
        let band = BandLimit::new(n_w, &spec).map_err(|e| e.to_string())?;
        let basis = slepian_basis(&spec, band, &subset, Design::Concentration)
            .map_err(|e| e.to_string())?;
        let ones = vec![1.0; n_w];
        let a = offdiag_max(basis.graph_gram().as_ref(), &ones);
        let b = offdiag_max(basis.subset_gram().as_ref(), basis.values());
        worst = worst.max(a).max(b);
        ensure(a < 1e-8 && b < 1e-8, || {
            format!("trial {trial}: N={n} N_S={n_s} N_W={n_w} deviation {a:.1e}/{b:.1e}")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "50 graphs, worst Gram deviation {worst:.1e}, {elapsed:.2?}"
    ))
}

fn clusters(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > gap {
            out.push(start..k);
            start = k;
        }
    }
    out
}

fn to_dense(m: graph_slepian::MatRef<'_, f64>) -> oracle::Dense {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn embedding_reduction() -> Check {
    let mut graphs: Vec<(String, Graph)> = (0..10u64)
        .map(|s| {
            (
                format!("random #{s}"),
                generators::random_connected(10 + 4 * s as usize, 0.2, 300 + s),
            )
        })
        .collect();
    graphs.push(("grid 5x6".into(), generators::grid(5, 6)));
    graphs.push((
        "icosahedron".into(),
        TriMesh::icosahedron()
            .to_graph()
            .map_err(|e| e.to_string())?,
    ));
    let (mut worst_val, mut worst_vec): (f64, f64) = (0.0, 0.0);
    for (name, g) in &graphs {
        for kind in [LaplacianKind::Combinatorial, LaplacianKind::Normalized] {
            let n = g.n_nodes();
            let spec = eig_laplacian(g, kind, n).map_err(|e| e.to_string())?;
            let n_w = (2 * n) / 3;
            let band = BandLimit::new(n_w, &spec).map_err(|e| e.to_string())?;
            let basis = slepian_basis(&spec, band, &NodeSubset::full(n), Design::Embedding)
                .map_err(|e| e.to_string())?;
            let lam = &spec.eigenvalues()[..n_w];
            for (x, l) in basis.values().iter().zip(lam) {
                worst_val = worst_val.max((x - l).abs());
            }
            let u = to_dense(spec.eigenvectors());
            let v = to_dense(basis.vectors());
            for r in clusters(lam, 1e-6) {
                // A cluster cut by the band edge has no well-defined subspace.
                if r.end == n_w && n_w < n && spec.eigenvalues()[n_w] - lam[n_w - 1] <= 1e-6 {
                    continue;
                }
                let d = oracle::projector_distance(
                    &oracle::columns(&u, r.clone()),
                    &oracle::columns(&v, r.clone()),
                );
                worst_vec = worst_vec.max(d);
            }
            ensure(worst_val < 1e-8, || {
                format!("{name} ({kind}): |xi - lambda| = {worst_val:.1e}")
            })?;
            ensure(worst_vec < 1e-6, || {
                format!("{name} ({kind}): subspace distance {worst_vec:.1e}")
            })?;
        }
    }
    Ok(format!(
        "{} graphs x 2 Laplacians, max |xi - lambda| {worst_val:.1e}, max subspace distance {worst_vec:.1e}",
        graphs.len()
    ))
}

fn full_bandwidth_projector() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for trial in 0..20u64 {
        let n = rng.random_range(3..=30);
        let g = generators::random_connected(n, rng.random_range(0.0..0.5), 400 + trial);
        let n_s = rng.random_range(1..=n);
        let subset = NodeSubset::new(generators::random_subset(n, n_s, 500 + trial), n)
            .map_err(|e| e.to_string())?;
        for kind in [LaplacianKind::Combinatorial, LaplacianKind::Normalized] {
            let spec = eig_laplacian(&g, kind, n).map_err(|e| e.to_string())?;
            let band = BandLimit::new(n, &spec).map_err(|e| e.to_string())?;
            let basis = slepian_basis(&spec, band, &subset, Design::Concentration)
                .map_err(|e| e.to_string())?;
            for (k, &m) in basis.values().iter().enumerate() {
                let e = if k < n_s { 1.0 } else { 0.0 };
                worst = worst.max((m - e).abs());
            }
        }
        ensure(worst < 1e-8, || {
            format!("trial {trial}: N={n} N_S={n_s} deviation {worst:.1e}")
        })?;
    }
    Ok(format!(
        "20 graphs x 2 Laplacians, max deviation from N_S ones {worst:.1e}"
    ))
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let trials = 200u64;
    for trial in 0..trials {
        let n = rng.random_range(2..=12);
        let g = generators::random_connected(n, rng.random_range(0.0..0.6), 600 + trial);
        let n_s = rng.random_range(1..=n);
        let n_w = rng.random_range(1..=n);
        let subset_idx = generators::random_subset(n, n_s, 700 + trial);
        let kind = if trial % 2 == 0 {
            LaplacianKind::Normalized
        } else {
            LaplacianKind::Combinatorial
        };
        let dense = oracle::dense_slepian(
            n,
            &edges_of(&g),
            kind == LaplacianKind::Normalized,
            &subset_idx,
            n_w,
        );
        let spec = eig_laplacian(&g, kind, n).map_err(|e| e.to_string())?;
        let band = BandLimit::new(n_w, &spec).map_err(|e| e.to_string())?;
        let subset = NodeSubset::new(subset_idx, n).map_err(|e| e.to_string())?;
        for (design, reference) in [
            (Design::Concentration, &dense.mu),
            (Design::Embedding, &dense.xi),
        ] {
            let basis = slepian_basis(&spec, band, &subset, design).map_err(|e| e.to_string())?;
            let mut values = basis.values().to_vec();
            values.sort_by(f64::total_cmp);
            for (a, b) in values.iter().zip(reference) {
                worst = worst.max((a - b).abs());
            }
            ensure(worst < 1e-8, || {
                format!("trial {trial} ({design}): N={n} N_W={n_w} deviation {worst:.1e}")
            })?;
        }
    }
    Ok(format!(
        "{trials} cases, both designs, max eigenvalue deviation {worst:.1e}"
    ))
}

fn fiedler_bipartition() -> Check {
    let g = generators::barbell(5);
    let (cut, side) = oracle::min_cut_with_side(10, &edges_of(&g), 5);
    ensure(cut == 1.0, || format!("minimum balanced cut {cut}"))?;
    for kind in [LaplacianKind::Combinatorial, LaplacianKind::Normalized] {
        let spec = eig_laplacian(&g, kind, 2).map_err(|e| e.to_string())?;
        let f = spec.fiedler_vector().map_err(|e| e.to_string())?;
        let positive: Vec<usize> = (0..10).filter(|&i| f[i] > 0.0).collect();
        let ours: Vec<usize> = if positive.contains(&0) {
            positive
        } else {
            (0..10).filter(|i| !positive.contains(i)).collect()
        };
        ensure(f.iter().all(|v| v.abs() > 1e-12), || {
            format!("{kind}: zero entry in Fiedler vector")
        })?;
        ensure(ours == side, || {
            format!("{kind}: sign split {ours:?}, optimal side {side:?}")
        })?;
        let our_cut: f64 = g
            .edges()
            .iter()
            .filter(|e| (f[e.i] > 0.0) != (f[e.j] > 0.0))
            .map(|e| e.weight)
            .sum();
        ensure(our_cut == cut, || format!("{kind}: sign cut {our_cut}"))?;
    }
    Ok(format!(
        "both Laplacians split {side:?} | rest, cut 1 = exhaustive minimum over 126 balanced cuts"
    ))
}

struct Transition {
    outside: f64,
    crossing: usize,
}

fn transition(mu: &[f64]) -> Transition {
    Transition {
        outside: mu.iter().filter(|&&m| m <= 0.1 || m >= 0.9).count() as f64 / mu.len() as f64,
        crossing: mu.iter().filter(|&&m| m > 0.5).count(),
    }
}

fn phase_transition_sphere() -> Check {
    let start = Instant::now();
    let mesh = TriMesh::icosphere(4);
    let g = mesh.to_graph().map_err(|e| e.to_string())?;
    let n = g.n_nodes();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        mesh.vertices[b][2]
            .total_cmp(&mesh.vertices[a][2])
            .then(a.cmp(&b))
    });
    let n_s = n / 3;
    let subset = NodeSubset::new(order[..n_s].iter().copied(), n).map_err(|e| e.to_string())?;
    let n_w = 500;
    let spec = eig_laplacian(&g, LaplacianKind::Normalized, n_w).map_err(|e| e.to_string())?;
    let band = BandLimit::new(n_w, &spec).map_err(|e| e.to_string())?;
    let k = (n_w * n_s) as f64 / n as f64;

    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for design in [Design::Concentration, Design::Embedding] {
        let basis = slepian_basis(&spec, band, &subset, design).map_err(|e| e.to_string())?;
        let mu: Vec<f64> = basis.metrics().iter().map(|m| m.mu).collect();
        let t = transition(&mu);
        let ok_outside = t.outside >= 0.9;
        let ok_crossing = (t.crossing as f64 - k).abs() <= 0.1 * k;
        parts.push(format!(
            "{design}: {:.1}% outside (0.1, 0.9), #(mu > 0.5) = {}",
            100.0 * t.outside,
            t.crossing
        ));
        if !ok_outside || !ok_crossing {
            failures.push(design.to_string());
        }
    }
    let elapsed = start.elapsed();
    let summary = format!(
        "N = {n}, N_S = {n_s}, N_W = {n_w}, K = {k:.1}; {}; {elapsed:.1?}",
        parts.join("; ")
    );
    within(elapsed, Duration::from_secs(120)).map_err(|e| format!("{summary}; {e}"))?;
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; failing: {}", failures.join(", ")))
    }
}

fn filter_reduction() -> Check {
    let window = SpectralWindow::parse_spec("heat:40").map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cases = 0;
    for seed in 0..8u64 {
        let n = 20 + 10 * seed as usize;
        let g = generators::random_connected(n, 0.1, 800 + seed);
        let f: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        for n_w in [n / 4, n / 2, n] {
            let spec =
                eig_laplacian(&g, LaplacianKind::Normalized, n_w).map_err(|e| e.to_string())?;
            let band = BandLimit::new(n_w, &spec).map_err(|e| e.to_string())?;
            let basis = slepian_basis(&spec, band, &NodeSubset::full(n), Design::Embedding)
                .map_err(|e| e.to_string())?;
            let a = filter_slepian(&basis, &window, &f, false).map_err(|e| e.to_string())?;
            let b = filter_laplacian(&spec, &window, &f, false).map_err(|e| e.to_string())?;
            for (x, y) in a.iter().zip(&b) {
                worst = worst.max((x - y).abs());
            }
            cases += 1;
        }
    }
    ensure(worst < 1e-8, || format!("max difference {worst:.1e}"))?;
    Ok(format!(
        "{cases} graph/band cases, max |slepian - laplacian| {worst:.1e}"
    ))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli_determinism() -> Check {
    let runs: Vec<Run> = vec![
        (
            "spectrum",
            vec![
                "spectrum",
                "--graph",
                &fixture("grid6x8.edges"),
                "--nev",
                "20",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec!["--out", "--eigvecs"],
        ),
        (
            "slepian",
            vec![
                "slepian",
                "--graph",
                &fixture("grid6x8.edges"),
                "--subset",
                &fixture("grid6x8.subset"),
                "--bandwidth",
                "15",
                "--design",
                "embedding",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec!["--basis-out", "--metrics-out"],
        ),
        (
            "slepian (mesh)",
            vec![
                "slepian",
                "--graph",
                &fixture("icosahedron.off"),
                "--mesh-off",
                "--subset",
                &fixture("icosahedron.subset"),
                "--bandwidth",
                "6",
                "--design",
                "concentration",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec!["--basis-out", "--metrics-out"],
        ),
        (
            "classic1d",
            [
                "classic1d",
                "--n",
                "512",
                "--ns",
                "129",
                "--center",
                "256",
                "--nw",
                "17",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec!["--out", "--mu-out"],
        ),
        (
            "filter",
            vec![
                "filter",
                "--graph",
                &fixture("grid6x8.edges"),
                "--signal",
                &fixture("grid6x8.signal.csv"),
                "--window",
                "heat:40",
                "--basis",
                "slepian",
                "--subset",
                &fixture("grid6x8.subset"),
                "--bandwidth",
                "20",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec!["--out"],
        ),
        (
            "synth-signal",
            vec![
                "synth-signal",
                "--graph",
                &fixture("grid6x8.edges"),
                "--eigvec",
                "2",
                "--cycles",
                "4",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec!["--out"],
        ),
        (
            "metrics",
            vec![
                "metrics",
                "--graph",
                &fixture("grid6x8.edges"),
                "--subset",
                &fixture("grid6x8.subset"),
                "--bandwidth",
                "10",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec!["--out"],
        ),
    ];
    let dirs = [
        tempfile::tempdir().map_err(|e| e.to_string())?,
        tempfile::tempdir().map_err(|e| e.to_string())?,
    ];
    let mut files = 0;
    for (name, args, outputs) in &runs {
        let mut produced: Vec<Vec<Vec<u8>>> = Vec::new();
        for dir in &dirs {
            let paths: Vec<PathBuf> = outputs
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    dir.path()
                        .join(format!("{}-{i}.csv", name.replace(' ', "_")))
                })
                .collect();
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_gslep"));
            cmd.args(args);
            for (flag, path) in outputs.iter().zip(&paths) {
                cmd.arg(flag).arg(path);
            }
            let out = cmd.output().map_err(|e| e.to_string())?;
            ensure(out.status.success(), || {
                format!(
                    "{name} failed: {}",
                    String::from_utf8_lossy(&out.stderr).trim()
                )
            })?;
            produced.push(
                paths
                    .iter()
                    .map(|p| std::fs::read(p).unwrap_or_default())
                    .collect(),
            );
        }
        for (i, (a, b)) in produced[0].iter().zip(&produced[1]).enumerate() {
            ensure(!a.is_empty() && a == b, || {
                format!("{name}: output {} differs between runs", outputs[i])
            })?;
            files += 1;
        }
    }
    Ok(format!(
        "{} commands, {files} output files byte-identical across two runs",
        runs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("1-D Shannon transition", shannon_transition_1d),
        ("double orthogonality", double_orthogonality),
        ("embedding reduction", embedding_reduction),
        ("full-bandwidth projector", full_bandwidth_projector),
        ("oracle equivalence", oracle_equivalence),
        ("Fiedler bipartition", fiedler_bipartition),
        ("phase-transition scaling", phase_transition_sphere),
        ("filter reduction", filter_reduction),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
