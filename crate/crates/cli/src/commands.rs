use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use hyperham::bipartite::BipartiteMatrix;
use hyperham::formulas::{c_k_ell, ck_matching_bound_log, dirac_lower_bound_log, gnp_expected_ham_log, psi, psi_ln};
use hyperham::hypergraph::{read_instance, write_instance, EllCycle, VertexSequence};
use hyperham::matching::{estimate_mindeg_probability, PermutationTuple};
use hyperham::models::{gen_binomial, gen_dirac, DiracParams, GenSpec};
use hyperham::oracle::{count_ham_ell_cycles, count_perfect_matchings, maximum_matching, permanent, OracleConfig};
use hyperham::pipeline::{sample_ham_cycles, sample_good_partition, PipelineConfig};
use hyperham::report::{mindeg_table, pipeline_table, Table, TIMING_COLUMN};
use hyperham::rng::{self, Stage};
use hyperham::{Error, KGraph, PartiteView};

use crate::{Cli, Command, Family, Format, Global, OracleMode};

pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    fn runtime(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::Infeasible(_) | Error::LimitExceeded { .. } => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cli: Cli) -> Outcome {
    let g = cli.global;
    if g.workers == 0 {
        return Err(Failure::usage("--workers must be at least 1"));
    }
    match cli.command {
        Command::Gen {
            family,
            n,
            k,
            p,
            delta,
            eps,
        } => gen(&g, family, n, k, p, delta, eps),
        Command::Oracle { instance, ell, mode } => oracle(&g, &instance, ell, mode),
        Command::Formula {
            n,
            k,
            ell,
            psi,
            psi_ln,
            c,
            dirac_bound,
            gnp,
            ck,
            delta,
            slack,
            p,
            m,
            d,
        } => formula(FormulaArgs {
            n,
            k,
            ell,
            psi,
            psi_ln,
            c,
            dirac_bound,
            gnp,
            ck,
            delta,
            slack,
            p,
            m,
            d,
        }),
        Command::Bpi {
            instance,
            partition,
            m,
            eps,
            trials,
        } => bpi(&g, &instance, partition.as_deref(), m, eps, trials),
        Command::Pipeline {
            instance,
            ell,
            count,
            m,
            t,
            eta,
            dstar_threshold,
            max_tries,
            verify,
        } => {
            let h = load(&instance)?;
            match verify {
                Some(path) => verify_cycles(&h, ell, &path),
                None => {
                    let dstar = match dstar_threshold.as_str() {
                        "auto" => None,
                        s => Some(s.parse::<usize>().map_err(|_| {
                            Failure::usage(format!("--dstar-threshold expects an integer or `auto`, got `{s}`"))
                        })?),
                    };
                    let cfg = PipelineConfig {
                        target_m: m,
                        target_t: t,
                        eta_target: eta,
                        dstar_threshold: dstar,
                        max_tries,
                        workers: g.workers,
                        ..PipelineConfig::default()
                    };
                    pipeline(&g, &h, ell, count, &cfg)
                }
            }
        }
        Command::Scan {
            family,
            k,
            ell,
            n,
            p,
            delta,
            reps,
        } => scan(&g, family, k, ell, &n, &p, &delta, reps),
    }
}

fn seed_of(g: &Global) -> u64 {
    g.seed.unwrap_or_else(|| {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        let seed = rng::child_seed(nanos, Stage::Generator, 0);
        eprintln!("# seed={seed}");
        seed
    })
}

fn load(path: &Path) -> Result<KGraph, Failure> {
    read_instance(path).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))
}

fn write_out(g: &Global, text: &str) -> Outcome {
    match &g.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::runtime(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(g: &Global, table: &Table) -> Outcome {
    let text = match g.format {
        Format::Csv => table.to_csv(),
        Format::Plain => table.to_plain(),
    };
    write_out(g, &text)
}

fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("{what} needs --{flag}")))
}

fn gen(g: &Global, family: Family, n: usize, k: usize, p: Option<f64>, delta: Option<f64>, eps: Option<f64>) -> Outcome {
    let (spec, label) = match family {
        Family::Complete => (GenSpec::Complete { n, k }, format!("family=complete n={n} k={k}")),
        Family::Binomial => {
            let p = need(p, "p", "the binomial family")?;
            let seed = seed_of(g);
            (
                GenSpec::Binomial { n, k, p, seed },
                format!("family=binomial n={n} k={k} p={p} seed={seed}"),
            )
        }
        Family::Dirac => {
            let delta = need(delta, "delta", "the dirac family")?;
            let seed = seed_of(g);
            (
                GenSpec::DiracRejection { n, k, delta, seed },
                format!("family=dirac n={n} k={k} delta={delta} seed={seed}"),
            )
        }
        Family::Bipartite3 => (GenSpec::Bipartite3 { n }, format!("family=bipartite3 n={n}")),
        Family::HEpsilon => {
            let eps = need(eps, "eps", "the h-epsilon family")?;
            (GenSpec::HEpsilon { n, eps }, format!("family=h-epsilon n={n} eps={eps}"))
        }
    };
    if k != 3 && matches!(family, Family::Bipartite3 | Family::HEpsilon) {
        return Err(Failure::usage("the bipartite constructions are 3-graphs; drop --k or pass --k 3"));
    }
    let h = spec.generate()?;
    write_out(g, &format!("# {label}\n{}", write_instance(&h)))
}

fn oracle_config(g: &Global) -> OracleConfig {
    OracleConfig::default().with_limit_n(g.limit_n).with_workers(g.workers)
}

fn oracle(g: &Global, path: &Path, ell: usize, mode: OracleMode) -> Outcome {
    let h = load(path)?;
    let cfg = oracle_config(g);
    let id = instance_id(path);
    let start = Instant::now();
    let table = match mode {
        OracleMode::Cycles => {
            let census = count_ham_ell_cycles(&h, ell, &cfg)?;
            let mut t = Table::new(["instance", "n", "k", "ell", "distinct", "orderings", "degenerate", TIMING_COLUMN]);
            t.push([
                id,
                h.n().to_string(),
                h.k().to_string(),
                ell.to_string(),
                census.distinct_cycles.to_string(),
                census.orderings.to_string(),
                census.degenerate.to_string(),
                secs(start),
            ])?;
            t
        }
        OracleMode::Matchings => {
            let perfect = count_perfect_matchings(&h, &cfg)?;
            let max = maximum_matching(&h, &cfg)?;
            let mut t = Table::new(["instance", "n", "k", "perfect_matchings", "max_matching", TIMING_COLUMN]);
            t.push([
                id,
                h.n().to_string(),
                h.k().to_string(),
                perfect.to_string(),
                max.len().to_string(),
                secs(start),
            ])?;
            t
        }
        OracleMode::Permanent => {
            let b = bipartite_of(&h)?;
            let value = permanent(&b)?;
            let mut t = Table::new(["instance", "n", "side", "permanent", TIMING_COLUMN]);
            t.push([id, h.n().to_string(), b.size().to_string(), value.to_string(), secs(start)])?;
            t
        }
    };
    emit(g, &table)
}

/// A 2-graph on `2m` vertices read as a bipartite graph between `0..m` and `m..2m`.
fn bipartite_of(h: &KGraph) -> Result<BipartiteMatrix, Failure> {
    if h.k() != 2 || h.n() % 2 != 0 {
        return Err(Failure::usage(
            "permanent mode needs a 2-graph on 2m vertices with sides 0..m and m..2m",
        ));
    }
    let m = h.n() / 2;
    let mut b = BipartiteMatrix::new(m)?;
    for e in h.edges() {
        let (u, v) = (e[0], e[1]);
        if u >= m || v < m {
            return Err(Failure::usage(format!("edge {u} {v} does not cross the sides 0..{m} and {m}..{}", 2 * m)));
        }
        b.set(u, v - m, true);
    }
    Ok(b)
}

fn secs(start: Instant) -> String {
    format!("{:.3}", start.elapsed().as_secs_f64())
}

struct FormulaArgs {
    n: Option<usize>,
    k: Option<usize>,
    ell: Option<usize>,
    psi: bool,
    psi_ln: bool,
    c: bool,
    dirac_bound: bool,
    gnp: bool,
    ck: bool,
    delta: Option<f64>,
    slack: f64,
    p: Option<f64>,
    m: Option<usize>,
    d: Option<f64>,
}

fn formula(a: FormulaArgs) -> Outcome {
    let selected = [a.psi, a.psi_ln, a.c, a.dirac_bound, a.gnp, a.ck].iter().filter(|&&b| b).count();
    if selected > 1 {
        return Err(Failure::usage("pick at most one of --psi, --psi-ln, --c, --dirac-bound, --gnp, --ck"));
    }
    let n = || need(a.n, "n", "this formula");
    let k = || need(a.k, "k", "this formula");
    let ell = || need(a.ell, "ell", "this formula");
    if a.psi {
        let value = psi(n()?, k()?, ell()?)?;
        if !value.reliable {
            eprintln!("W: degenerate shape; the closed form may differ from the number of distinct edge sets");
        }
        match value.to_integer() {
            Some(v) => println!("{v}"),
            None => println!("{}", value.value),
        }
    } else if a.psi_ln {
        println!("{}", psi_ln(n()?, k()?, ell()?)?);
    } else if a.c {
        println!("{}", c_k_ell(k()?, ell()?)?);
    } else if a.dirac_bound {
        let b = dirac_lower_bound_log(n()?, k()?, ell()?, need(a.delta, "delta", "--dirac-bound")?, a.slack)?;
        if let Some(w) = b.warning {
            eprintln!("W: {w:?}");
        }
        println!("{}", b.log_value);
    } else if a.gnp {
        println!("{}", gnp_expected_ham_log(n()?, need(a.p, "p", "--gnp")?)?);
    } else if a.ck {
        let b = ck_matching_bound_log(need(a.m, "m", "--ck")?, need(a.d, "d", "--ck")?)?;
        if let Some(w) = b.warning {
            eprintln!("W: {w:?}");
        }
        println!("{}", b.log_value);
    } else {
        let (n, k, ell) = (n()?, k()?, ell()?);
        let value = psi(n, k, ell)?;
        println!("psi {}", value.to_integer().map_or_else(|| value.value.to_string(), |v| v.to_string()));
        println!("psi_ln {}", psi_ln(n, k, ell)?);
        println!("c {}", c_k_ell(k, ell)?);
        println!("reliable {}", value.reliable);
    }
    Ok(())
}

fn read_partition(path: &Path) -> Result<Vec<Vec<usize>>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Failure::runtime(format!("{}:{i}: `{tok}` is not a vertex", path.display())))
                })
                .collect()
        })
        .collect()
}

fn bpi(g: &Global, path: &Path, partition: Option<&Path>, m: Option<usize>, eps: f64, trials: usize) -> Outcome {
    let h = load(path)?;
    let seed = seed_of(g);
    let parts = match (partition, m) {
        (Some(p), _) => read_partition(p)?,
        (None, Some(m)) => {
            let k = h.k();
            if k * m > h.n() {
                return Err(Failure::usage(format!("k·m = {} exceeds n = {}", k * m, h.n())));
            }
            let vertices: Vec<usize> = (0..k * m).collect();
            sample_good_partition(&h, &vertices, m, 0, 1, seed)?.parts
        }
        (None, None) => return Err(Failure::usage("bpi needs --partition or --m")),
    };
    let view = PartiteView::equipartition(&h, parts)?;
    let k = h.k();
    if view.num_parts() != k {
        return Err(Failure::usage(format!("the partition has {} parts; need k = {k}", view.num_parts())));
    }
    let prefix = PermutationTuple::new((0..k - 2).map(|i| view.part(i).to_vec()).collect())?;
    let start = Instant::now();
    let est = estimate_mindeg_probability(&view, &prefix, eps, trials, seed, g.workers)?;
    let m = view.part_size().expect("equipartition");
    emit(g, &mindeg_table(&est, m, eps, seed, start.elapsed().as_secs_f64()))
}

fn pipeline(g: &Global, h: &KGraph, ell: usize, count: usize, cfg: &PipelineConfig) -> Outcome {
    let seed = seed_of(g);
    let start = Instant::now();
    let out = sample_ham_cycles(h, ell, count, seed, cfg)?;
    let seconds = start.elapsed().as_secs_f64();
    if let Some(w) = &out.diagnostics.dirac_warning {
        eprintln!("W: {w}");
    }
    let mut lines = String::new();
    for c in &out.cycles {
        let ord: Vec<String> = c.cycle.ordering().iter().map(usize::to_string).collect();
        lines.push_str(&ord.join(" "));
        lines.push('\n');
    }
    print!("{lines}");
    let table = pipeline_table(&out, seed, count, seconds);
    match &g.out {
        Some(_) => emit(g, &table)?,
        None => {
            let text = match g.format {
                Format::Csv => table.to_csv(),
                Format::Plain => table.to_plain(),
            };
            print!("{text}");
        }
    }
    match out.failure {
        None => Ok(()),
        Some(f) => Err(Failure::runtime(f)),
    }
}

/// Re-validates cycle lines up to the first `# schema` line.
fn verify_cycles(h: &KGraph, ell: usize, path: &PathBuf) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?;
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with("# schema") {
            break;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Failure::runtime(format!("{}:{}: {msg}", path.display(), i + 1));
        let order = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad(format!("`{t}` is not a vertex"))))
            .collect::<Result<Vec<_>, _>>()?;
        if order.len() != h.n() {
            return Err(bad(format!("{} vertices, the instance has {}", order.len(), h.n())));
        }
        let cycle = VertexSequence::cyclic(order)
            .and_then(|seq| EllCycle::new(seq, h.k(), ell))
            .map_err(|e| bad(e.to_string()))?;
        let report = cycle.validate(h).map_err(|e| bad(e.to_string()))?;
        if !report.is_ok() {
            return Err(bad(format!("windows at {:?} are not edges", report.violations)));
        }
        if !seen.insert(cycle.canonical().clone()) {
            return Err(bad("repeats an earlier cycle".to_string()));
        }
        count += 1;
    }
    println!("verified {count} cycles");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn scan(g: &Global, family: Family, k: usize, ell: usize, ns: &[usize], ps: &[f64], deltas: &[f64], reps: usize) -> Outcome {
    let cfg = oracle_config(g);
    let params: Vec<Option<f64>> = match family {
        Family::Complete => vec![None],
        Family::Binomial if !ps.is_empty() => ps.iter().copied().map(Some).collect(),
        Family::Dirac if !deltas.is_empty() => deltas.iter().copied().map(Some).collect(),
        Family::Binomial => return Err(Failure::usage("scan over the binomial family needs --p")),
        Family::Dirac => return Err(Failure::usage("scan over the dirac family needs --delta")),
        _ => return Err(Failure::usage("scan supports the complete, binomial and dirac families")),
    };
    if let Some(&n) = ns.iter().find(|&&n| n > cfg.limit_n) {
        return Err(Failure::usage(format!(
            "cell n = {n} exceeds the oracle limit {}; scan does not fall back to sampling",
            cfg.limit_n
        )));
    }
    let seed = seed_of(g);
    let mut table = Table::new([
        "n", "k", "ell", "family", "param", "rep", "seed", "observed", "psi", "bound", "ratio", "reliable", TIMING_COLUMN,
    ]);
    let mut cell = 0u64;
    for &n in ns {
        let closed = psi(n, k, ell)?;
        let psi_f = closed.ln().exp();
        for &param in &params {
            for rep in 0..reps {
                let cell_seed = rng::child_seed(seed, Stage::Generator, cell);
                cell += 1;
                let start = Instant::now();
                let (h, density) = match (family, param) {
                    (Family::Binomial, Some(p)) => (gen_binomial(n, k, p, cell_seed)?, p),
                    (Family::Dirac, Some(d)) => (gen_dirac(n, k, DiracParams::new(d), cell_seed)?.graph, d),
                    _ => (GenSpec::Complete { n, k }.generate()?, 1.0),
                };
                let observed = count_ham_ell_cycles(&h, ell, &cfg)?.distinct_cycles;
                let bound = psi_f * density.powi((n / (k - ell)) as i32);
                table.push([
                    n.to_string(),
                    k.to_string(),
                    ell.to_string(),
                    format!("{family:?}").to_lowercase(),
                    param.map_or_else(String::new, |p| p.to_string()),
                    rep.to_string(),
                    cell_seed.to_string(),
                    observed.to_string(),
                    format!("{psi_f:.6e}"),
                    format!("{bound:.6e}"),
                    format!("{:.6}", observed as f64 / bound),
                    closed.reliable.to_string(),
                    secs(start),
                ])?;
            }
        }
    }
    emit(g, &table)
}
