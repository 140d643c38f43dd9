use std::path::{Path, PathBuf};

use graph_slepian::io::{matrix_csv, signal_csv, Csv};
use graph_slepian::{
    cross_metrics, eig_laplacian, filter_laplacian, filter_slepian, load_edge_list, load_mesh_off,
    slepian_1d, slepian_basis, synth_eigvec_signal, BandLimit, Design, DftDesign, Error, Graph,
    LaplacianSpectrum, NodeSubset, Result, SpectralWindow,
};

use crate::output::{check_target, write_all};
use crate::{BandArgs, Command, FilterBasis, GraphArgs, Order};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Spectrum {
            graph,
            nev,
            out,
            eigvecs,
        } => spectrum(&graph, nev, out, eigvecs),
        Command::Slepian {
            graph,
            band,
            design,
            order,
            basis_out,
            metrics_out,
        } => slepian(&graph, &band, design, order, basis_out, metrics_out),
        Command::Classic1d {
            n,
            ns,
            center,
            nw,
            out,
            mu_out,
        } => classic1d(n, ns, center.unwrap_or(n / 2), nw, out, mu_out),
        Command::Filter {
            graph,
            signal,
            window,
            basis,
            subset,
            bandwidth,
            design,
            mu_abscissa,
            passthrough,
            out,
        } => filter(FilterRun {
            graph: &graph,
            signal: &signal,
            window: &window,
            basis,
            subset: subset.as_deref(),
            bandwidth,
            design,
            mu_abscissa,
            passthrough,
            out,
        }),
        Command::SynthSignal {
            graph,
            eigvec,
            cycles,
            out,
        } => synth_signal(&graph, eigvec, cycles, out),
        Command::Metrics { graph, band, out } => metrics(&graph, &band, out),
    }
}

fn check_targets<'a>(paths: impl IntoIterator<Item = &'a PathBuf>) -> Result<()> {
    paths.into_iter().try_for_each(|p| check_target(p))
}

fn load_graph(args: &GraphArgs) -> Result<Graph> {
    if args.mesh_off {
        if args.nodes.is_some() {
            return Err(Error::InvalidArgument(
                "--nodes does not apply to a mesh".into(),
            ));
        }
        load_mesh_off(&args.graph)
    } else {
        load_edge_list(&args.graph, args.nodes)
    }
}

fn graph_comments(args: &GraphArgs, graph: &Graph) -> Vec<String> {
    vec![
        format!(
            "graph: {}{}",
            args.graph.display(),
            if args.mesh_off { " (OFF mesh)" } else { "" }
        ),
        format!("nodes: {}", graph.n_nodes()),
        format!("edges: {}", graph.n_edges()),
        format!("laplacian: {}", args.laplacian),
    ]
}

fn with_comments(lines: &[String]) -> Csv {
    lines.iter().fold(Csv::new(), |csv, line| csv.comment(line))
}

fn check_range(name: &str, value: usize, max: usize) -> Result<()> {
    if value == 0 || value > max {
        return Err(Error::InvalidArgument(format!(
            "--{name} {value} out of range 1..={max}"
        )));
    }
    Ok(())
}

fn spectrum(args: &GraphArgs, nev: usize, out: PathBuf, eigvecs: Option<PathBuf>) -> Result<()> {
    let graph = load_graph(args)?;
    if nev == 0 || nev > graph.n_nodes() {
        return Err(Error::EigenCount {
            requested: nev,
            available: graph.n_nodes(),
        });
    }
    check_targets(std::iter::once(&out).chain(eigvecs.as_ref()))?;

    let spec = eig_laplacian(&graph, args.laplacian, nev)?;
    let mut comments = vec!["gslep spectrum".to_string()];
    comments.extend(graph_comments(args, &graph));
    comments.push(format!("nev: {nev}"));

    let mut csv = with_comments(&comments).header(["k", "lambda"]);
    for (k, &l) in spec.eigenvalues().iter().enumerate() {
        csv.row(k + 1, [l]);
    }
    let mut files = vec![(out, csv.finish())];
    if let Some(path) = eigvecs {
        let mut text = with_comments(&comments)
            .comment(format!("rows: nodes, columns: u_1..u_{nev}"))
            .finish();
        text.push_str(&matrix_csv(spec.eigenvectors()));
        files.push((path, text));
    }
    write_all(files)
}

/// Graph, subset and band, validated before any eigendecomposition.
struct Setup {
    graph: Graph,
    subset: NodeSubset,
    n_w: usize,
}

fn load_setup(graph: &GraphArgs, band: &BandArgs) -> Result<Setup> {
    let g = load_graph(graph)?;
    let subset = NodeSubset::load(&band.subset, g.n_nodes())?;
    if band.bandwidth == 0 || band.bandwidth > g.n_nodes() {
        return Err(Error::Bandwidth {
            n_w: band.bandwidth,
            available: g.n_nodes(),
        });
    }
    Ok(Setup {
        graph: g,
        subset,
        n_w: band.bandwidth,
    })
}

fn band_comments(args: &GraphArgs, band: &BandArgs, setup: &Setup) -> Vec<String> {
    let n = setup.graph.n_nodes();
    let n_s = setup.subset.len();
    let mut lines = graph_comments(args, &setup.graph);
    lines.push(format!("subset: {} ({n_s} nodes)", band.subset.display()));
    lines.push(format!("N = {n}, N_S = {n_s}, N_W = {}", setup.n_w));
    lines.push(format!(
        "K = N_W*N_S/N = {}",
        graph_slepian::io::fmt_value(setup.n_w as f64 * n_s as f64 / n as f64)
    ));
    lines
}

fn slepian(
    args: &GraphArgs,
    band: &BandArgs,
    design: Design,
    order: Option<Order>,
    basis_out: PathBuf,
    metrics_out: PathBuf,
) -> Result<()> {
    let setup = load_setup(args, band)?;
    check_targets([&basis_out, &metrics_out])?;

    let spec = eig_laplacian(&setup.graph, args.laplacian, setup.n_w)?;
    let limit = BandLimit::new(setup.n_w, &spec)?;
    let basis = slepian_basis(&spec, limit, &setup.subset, design)?;

    let canonical = match design {
        Design::Concentration => Order::Desc,
        Design::Embedding => Order::Asc,
    };
    let order = order.unwrap_or(canonical);
    let mut columns: Vec<usize> = (0..basis.len()).collect();
    if order != canonical {
        columns.reverse();
    }
    let value_name = match design {
        Design::Concentration => "mu",
        Design::Embedding => "xi",
    };

    let mut comments = vec!["gslep slepian".to_string()];
    comments.extend(band_comments(args, band, &setup));
    comments.push(format!("design: {design}"));
    comments.push(format!(
        "order: {value_name} {}",
        if order == Order::Asc {
            "ascending"
        } else {
            "descending"
        }
    ));

    let names: Vec<String> = (1..=columns.len()).map(|k| format!("s_{k}")).collect();
    let mut basis_csv = with_comments(&comments)
        .header(std::iter::once("node").chain(names.iter().map(String::as_str)));
    let v = basis.vectors();
    for i in 0..v.nrows() {
        basis_csv.row(i, columns.iter().map(|&k| v[(i, k)]));
    }

    let mut metrics_csv = with_comments(&comments)
        .comment(format!("value: {value_name}"))
        .header(["k", "value", "lambda_metric", "mu_metric", "xi_metric"]);
    for (pos, &k) in columns.iter().enumerate() {
        let m = basis.metrics()[k];
        metrics_csv.row(pos + 1, [basis.values()[k], m.lambda, m.mu, m.xi]);
    }
    write_all(vec![
        (basis_out, basis_csv.finish()),
        (metrics_out, metrics_csv.finish()),
    ])
}

fn classic1d(
    n: usize,
    n_s: usize,
    center: usize,
    n_w: usize,
    out: PathBuf,
    mu_out: PathBuf,
) -> Result<()> {
    let design = DftDesign::centered(n, n_s, center, n_w)?;
    check_targets([&out, &mu_out])?;
    let basis = slepian_1d(&design)?;

    let interval = design.interval();
    let comments = vec![
        "gslep classic1d".to_string(),
        format!("N = {n}, N_S = {n_s}, N_W = {n_w}, center = {center}"),
        format!(
            "interval: {}..={}",
            interval[0],
            interval[interval.len() - 1]
        ),
        format!(
            "K = N_W*N_S/N = {}",
            graph_slepian::io::fmt_value(design.shannon_number())
        ),
    ];

    let mut mu_csv = with_comments(&comments).header(["k", "mu"]);
    for (k, &m) in basis.mu().iter().enumerate() {
        mu_csv.row(k + 1, [m]);
    }

    let v = basis.vectors();
    let vectors_csv = match basis.real_vectors() {
        Some(real) => {
            let names: Vec<String> = (1..=n_w).map(|k| format!("s_{k}")).collect();
            let mut csv = with_comments(&comments)
                .comment(format!(
                    "real vectors, max imaginary residue {:.3e}",
                    basis.imag_residue()
                ))
                .header(std::iter::once("sample").chain(names.iter().map(String::as_str)));
            for i in 0..n {
                csv.row(i, (0..n_w).map(|k| real[(i, k)]));
            }
            csv
        }
        None => {
            let names: Vec<String> = (1..=n_w)
                .flat_map(|k| [format!("re_s_{k}"), format!("im_s_{k}")])
                .collect();
            let mut csv = with_comments(&comments)
                .comment("complex vectors (band not symmetric about DC)")
                .header(std::iter::once("sample").chain(names.iter().map(String::as_str)));
            for i in 0..n {
                csv.row(i, (0..n_w).flat_map(|k| [v[(i, k)].re, v[(i, k)].im]));
            }
            csv
        }
    };
    write_all(vec![(out, vectors_csv.finish()), (mu_out, mu_csv.finish())])
}

struct FilterRun<'a> {
    graph: &'a GraphArgs,
    signal: &'a Path,
    window: &'a str,
    basis: FilterBasis,
    subset: Option<&'a Path>,
    bandwidth: Option<usize>,
    design: Design,
    mu_abscissa: bool,
    passthrough: bool,
    out: PathBuf,
}

fn filter(run: FilterRun<'_>) -> Result<()> {
    let graph = load_graph(run.graph)?;
    let n = graph.n_nodes();
    let signal = graph_slepian::io::load_signal(run.signal, n)?;
    let window = SpectralWindow::parse_spec(run.window)?;
    let n_w = run.bandwidth.unwrap_or(n);
    check_range("bandwidth", n_w, n)?;
    let subset = match (run.basis, run.subset) {
        (FilterBasis::Slepian, Some(path)) => NodeSubset::load(path, n)?,
        (FilterBasis::Slepian, None) => NodeSubset::full(n),
        (FilterBasis::Laplacian, Some(_)) => {
            return Err(Error::InvalidArgument(
                "--subset requires --basis slepian".into(),
            ))
        }
        (FilterBasis::Laplacian, None) => NodeSubset::full(n),
    };
    if run.basis == FilterBasis::Slepian && run.design == Design::Concentration && !run.mu_abscissa
    {
        return Err(Error::DesignMismatch(
            "filtering a concentration basis uses μ as abscissa; pass --mu-abscissa",
        ));
    }
    check_target(&run.out)?;

    let spec: LaplacianSpectrum = eig_laplacian(&graph, run.graph.laplacian, n_w)?;
    let filtered = match run.basis {
        FilterBasis::Laplacian => filter_laplacian(&spec, &window, &signal, run.passthrough)?,
        FilterBasis::Slepian => {
            let band = BandLimit::new(n_w, &spec)?;
            let basis = slepian_basis(&spec, band, &subset, run.design)?;
            let mut out = filter_slepian(&basis, &window, &signal, run.mu_abscissa)?;
            if run.passthrough {
                for (o, r) in out.iter_mut().zip(basis.out_of_band(&signal)?) {
                    *o += r;
                }
            }
            out
        }
    };

    let mut comments = vec!["gslep filter".to_string()];
    comments.extend(graph_comments(run.graph, &graph));
    comments.push(format!("signal: {}", run.signal.display()));
    comments.push(format!("window: {}", run.window));
    match run.basis {
        FilterBasis::Laplacian => comments.push("basis: laplacian".into()),
        FilterBasis::Slepian => {
            comments.push(format!("basis: slepian ({})", run.design));
            comments.push(match run.subset {
                Some(p) => format!("subset: {} ({} nodes)", p.display(), subset.len()),
                None => format!("subset: all {n} nodes"),
            });
        }
    }
    comments.push(format!("bandwidth: {n_w}"));
    comments.push(format!("passthrough: {}", run.passthrough));
    write_all(vec![(run.out, signal_csv(&filtered, &comments))])
}

fn synth_signal(args: &GraphArgs, eigvec: usize, cycles: u32, out: PathBuf) -> Result<()> {
    let graph = load_graph(args)?;
    check_range("eigvec", eigvec, graph.n_nodes())?;
    check_target(&out)?;
    let spec = eig_laplacian(&graph, args.laplacian, eigvec)?;
    let signal = synth_eigvec_signal(&spec, eigvec, cycles)?;

    let mut comments = vec!["gslep synth-signal".to_string()];
    comments.extend(graph_comments(args, &graph));
    comments.push(format!("eigvec: {eigvec}, cycles: {cycles}"));
    write_all(vec![(out, signal_csv(&signal, &comments))])
}

fn metrics(args: &GraphArgs, band: &BandArgs, out: PathBuf) -> Result<()> {
    let setup = load_setup(args, band)?;
    check_target(&out)?;
    let spec = eig_laplacian(&setup.graph, args.laplacian, setup.n_w)?;
    let limit = BandLimit::new(setup.n_w, &spec)?;

    let mut comments = vec!["gslep metrics".to_string()];
    comments.extend(band_comments(args, band, &setup));
    comments.push("rows: Laplacian eigenvectors u_1..u_N_W".into());
    let mut csv = with_comments(&comments).header(["k", "lambda_metric", "mu_metric", "xi_metric"]);
    for k in 0..setup.n_w {
        let m = cross_metrics(&spec, limit, &setup.subset, &spec.eigenvector(k))?;
        csv.row(k + 1, [m.lambda, m.mu, m.xi]);
    }
    write_all(vec![(out, csv.finish())])
}
