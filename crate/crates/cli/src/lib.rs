//! Command-line surface for the `cherednik` crate: every computation and check
//! as a subcommand with a stable JSON report.

pub mod cache;
pub mod error;
pub mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cherednik::algebra::GradedBasis;
use cherednik::coxeter::CartanType;
use cherednik::flat::{default_samples, flat_filtration_check};
use cherednik::quasi::{
    adjointness_check, bilinear_checks, centralizer_search, closure_check, cv_operator_checks, closed_form_hilbert_series,
    hilbert_compare, CvSetup, QuasiInvariantRing,
};
use cherednik::rational::{fmt_q, parse_q};
use cherednik::rca::{
    isotypic_conjugation_check, lefschetz_check, module_character, singular_vectors, sl2_data, verify_relations,
    dunkl_commutativity, StandardModule,
};
use cherednik::selftest::{run_criterion, CriterionReport, CRITERIA};
use cherednik::shift::{
    baker_akhiezer, bihomogeneity_check, double_quasiinvariance_check, eigenfunction_check, flip, shift_operator,
    BispectralKernel,
};
use cherednik::symmetric::{
    f_polynomial, lattice_restriction_character, multiplicity_vector, parse_class, partitions, s_set_constraints,
    trace_consistency, trace_of_class, trace_of_idempotent, YoungDiagram,
};
use cherednik::{GroupData, Multiplicity, Polynomial, RootSystem};

use crate::cache::Cache;
use crate::error::{CliError, Result};
use crate::output::{Format, Record, Report, RunConfig, Table, Timing};

pub const CACHE_ENV: &str = "CHEREDNIK_CACHE";
const GROUP_BOUND: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "cherednik", version, about = "Exact computations for rational Cherednik algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Cache root; caching is off when unset.
    #[arg(long, env = CACHE_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for the character-table splitting.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads for `selftest`.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct System {
    /// Cartan label: A, B, D or G.
    pub label: String,
    pub rank: usize,
    /// Multiplicity, one value per root orbit (long roots first) or a single value.
    #[arg(long, default_value = "1")]
    pub c: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Defining relations, Dunkl commutativity and the sl2 triple on polynomials of degree <= deg.
    VerifyRelations {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 5)]
        deg: usize,
    },
    /// Graded basis of the quasi-invariants.
    QcBasis {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 6)]
        deg: usize,
        /// Also run the closure check and the bounded centralizer search up to this order.
        #[arg(long)]
        order_bound: Option<usize>,
    },
    /// Hilbert series of Q_c against the closed form.
    Hilbert {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 10)]
        deg: usize,
    },
    /// The operator L_P for a homogeneous quasi-invariant P.
    CvOp {
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// Gram matrices of the bilinear form on Q_c, and adjointness.
    BilinearGram {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 4)]
        deg: usize,
    },
    /// The shift operator S_c.
    ShiftOp {
        #[command(flatten)]
        sys: System,
    },
    /// The Baker-Akhiezer kernel Phi.
    Baker {
        #[command(flatten)]
        sys: System,
    },
    /// Eigenfunction property of Phi e^{(x,k)} for Q_c basis elements.
    Eigencheck {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 3)]
        deg: usize,
    },
    /// Character of the standard module M(tau).
    ModuleChar {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 0)]
        tau: usize,
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// Singular vectors of M(tau) by degree.
    Singular {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 0)]
        tau: usize,
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// Conjugation of y^2 by the partial discriminant of a linear character.
    IsotypicShift {
        #[command(flatten)]
        sys: System,
        /// Linear character index; all nontrivial ones when omitted.
        #[arg(long)]
        eps: Option<usize>,
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// The maps (ad y^2)^k on degree-k polynomials.
    Lefschetz {
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        deg: usize,
    },
    /// Trace of a class or of an isotypic idempotent, as a multiple of Tr(1).
    Trace {
        #[arg(long)]
        n: usize,
        /// Class in cycle notation, e.g. (123), or as a cycle type 3,1.
        #[arg(long)]
        g: Option<String>,
        /// Partition for the idempotent e_tau.
        #[arg(long)]
        tau: Option<String>,
        #[arg(long)]
        c: String,
    },
    /// F_tau by contents and by power sums, with the class-sum identity.
    Fpoly {
        #[arg(long)]
        tau: Option<String>,
        /// All partitions of n.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Multiplicities of irreducibles in a finite-dimensional module.
    Multiplicity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 1)]
        dimv: u64,
        #[arg(long, default_value_t = 1_000_000)]
        search_bound: u64,
    },
    /// Necessary conditions for c to admit finite-dimensional modules.
    Sset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: String,
    },
    /// Permutation character of S_n on h_Z / r h_Z.
    LatticeRestrict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Filtration by weight + order on sampled operators.
    FlatFiltration {
        #[command(flatten)]
        sys: System,
        /// Largest degree of P among the L_P and multiplication samples.
        #[arg(long, default_value_t = 3)]
        deg: usize,
        /// Degree bound of the Q_c basis used for preservation checks.
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// The acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
    cache: Option<Cache>,
}

struct Output {
    records: Vec<Record>,
    table: Option<Table>,
}

impl Output {
    fn records(records: Vec<Record>) -> Self {
        Output { records, table: None }
    }
}

fn checks(list: impl IntoIterator<Item = cherednik::report::CheckResult>) -> Vec<Record> {
    list.into_iter().map(Record::from).collect()
}

struct Loaded {
    rs: RootSystem,
    gd: GroupData,
    c: Multiplicity,
}

impl Ctx<'_> {
    fn system(&self, sys: &System) -> Result<Loaded> {
        let label: CartanType = sys.label.parse()?;
        let rs = RootSystem::new(label, sys.rank)?;
        let gd = GroupData::with_options(&rs, GROUP_BOUND, self.cli.seed)?;
        let c = Multiplicity::parse(&rs, &sys.c)?;
        Ok(Loaded { rs, gd, c })
    }

    fn ring(&self, l: &Loaded, bound: usize) -> Result<QuasiInvariantRing> {
        l.c.integral()?;
        let header = l.rs.normalization_header();
        let params = json!({ "c": l.c.values.iter().map(fmt_q).collect::<Vec<_>>(), "N": bound });
        let names = Polynomial::default_names(l.rs.rank);
        if let Some(cache) = &self.cache {
            if let Some(lines) = cache.load("qc-basis", &header, &params)? {
                let mut graded = GradedBasis::new(l.rs.rank);
                for line in &lines {
                    let mut parts = line.split('\t');
                    let d: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| CliError::CacheCorruption(format!("bad degree line {line:?}")))?;
                    let basis = parts.map(|p| Polynomial::parse(p, &names)).collect::<cherednik::Result<Vec<_>>>()?;
                    graded.insert(d, basis);
                }
                if graded.pieces.len() != bound + 1 {
                    return Err(CliError::CacheCorruption("missing degrees in Q_c basis".into()));
                }
                return Ok(QuasiInvariantRing { rs: l.rs.clone(), c: l.c.clone(), bound, graded });
            }
        }
        let ring = QuasiInvariantRing::new(&l.rs, &l.gd, &l.c, bound)?;
        if let Some(cache) = &self.cache {
            let lines: Vec<String> = (0..=bound)
                .map(|d| {
                    let mut parts = vec![d.to_string()];
                    parts.extend(ring.basis(d).iter().map(|p| p.to_text(&names)));
                    parts.join("\t")
                })
                .collect();
            cache.store("qc-basis", &header, &params, &lines)?;
        }
        Ok(ring)
    }

    fn kernel(&self, l: &Loaded) -> Result<(cherednik::AlgebraContext, BispectralKernel, String)> {
        let header = l.rs.normalization_header();
        let params = json!({ "c": l.c.values.iter().map(fmt_q).collect::<Vec<_>>() });
        let names = Polynomial::xk_names(l.rs.rank);
        let spec = cherednik::AlgebraContext::spectral(&l.rs, &l.gd);
        if let Some(cache) = &self.cache {
            if let Some(lines) = cache.load("baker", &header, &params)? {
                let [op, phi] = lines.as_slice() else {
                    return Err(CliError::CacheCorruption("baker entry must have two lines".into()));
                };
                let phi = Polynomial::parse(phi, &names)?;
                let normalization = phi.constant_term();
                return Ok((spec, BispectralKernel { phi, normalization }, op.clone()));
            }
        }
        let s = shift_operator(&l.rs, &l.gd, &l.c)?;
        let (spec, kernel) = baker_akhiezer(&s)?;
        let text = s.text();
        if let Some(cache) = &self.cache {
            cache.store("baker", &header, &params, &[text.clone(), kernel.text(l.rs.rank)])?;
        }
        Ok((spec, kernel, text))
    }
}

fn parse_partition(text: &str) -> Result<YoungDiagram> {
    Ok(YoungDiagram::parse(text)?)
}

fn series_table(header: &[&str], columns: &[Vec<String>]) -> Table {
    let mut t = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    let len = columns.iter().map(Vec::len).max().unwrap_or(0);
    for i in 0..len {
        let mut row = vec![i.to_string()];
        row.extend(columns.iter().map(|c| c.get(i).cloned().unwrap_or_default()));
        t.push(row);
    }
    t
}

fn config_of(cli: &Cli) -> RunConfig {
    let (command, sys, params): (&str, Option<&System>, Value) = match &cli.command {
        Command::VerifyRelations { sys, deg } => ("verify-relations", Some(sys), json!({ "deg": deg })),
        Command::QcBasis { sys, deg, order_bound } => ("qc-basis", Some(sys), json!({ "deg": deg, "order_bound": order_bound })),
        Command::Hilbert { sys, deg } => ("hilbert", Some(sys), json!({ "deg": deg })),
        Command::CvOp { sys, p, deg } => ("cv-op", Some(sys), json!({ "p": p, "deg": deg })),
        Command::BilinearGram { sys, deg } => ("bilinear-gram", Some(sys), json!({ "deg": deg })),
        Command::ShiftOp { sys } => ("shift-op", Some(sys), json!({})),
        Command::Baker { sys } => ("baker", Some(sys), json!({})),
        Command::Eigencheck { sys, deg } => ("eigencheck", Some(sys), json!({ "deg": deg })),
        Command::ModuleChar { sys, tau, deg } => ("module-char", Some(sys), json!({ "tau": tau, "deg": deg })),
        Command::Singular { sys, tau, deg } => ("singular", Some(sys), json!({ "tau": tau, "deg": deg })),
        Command::IsotypicShift { sys, eps, deg } => ("isotypic-shift", Some(sys), json!({ "eps": eps, "deg": deg })),
        Command::Lefschetz { sys, k, deg } => ("lefschetz", Some(sys), json!({ "k": k, "deg": deg })),
        Command::Trace { n, g, tau, c } => ("trace", None, json!({ "n": n, "g": g, "tau": tau, "c": c })),
        Command::Fpoly { tau, n } => ("fpoly", None, json!({ "tau": tau, "n": n })),
        Command::Multiplicity { n, c, dimv, search_bound } => {
            ("multiplicity", None, json!({ "n": n, "c": c, "dimv": dimv, "search_bound": search_bound }))
        }
        Command::Sset { n, c } => ("sset", None, json!({ "n": n, "c": c })),
        Command::LatticeRestrict { n, r } => ("lattice-restrict", None, json!({ "n": n, "r": r })),
        Command::FlatFiltration { sys, deg, bound } => ("flat-filtration", Some(sys), json!({ "deg": deg, "bound": bound })),
        Command::Selftest { only } => ("selftest", None, json!({ "only": only })),
    };
    let params: BTreeMap<String, Value> =
        params.as_object().map(|m| m.iter().filter(|(_, v)| !v.is_null()).map(|(k, v)| (k.clone(), v.clone())).collect()).unwrap_or_default();
    RunConfig {
        command: command.to_string(),
        system: sys.map(|s| format!("{}{}", s.label.to_ascii_uppercase(), s.rank)),
        c: sys.map(|s| s.c.clone()),
        params,
        format: cli.format,
        cache: cli.cache_dir.is_some(),
        seed: cli.seed,
        jobs: cli.jobs,
    }
}

/// Runs the parsed command and assembles its report.
pub fn run(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let ctx = Ctx { cli, cache: cli.cache_dir.as_ref().map(Cache::new) };
    let out = dispatch(&ctx)?;
    Ok(Report {
        config: config_of(cli),
        results: out.records,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() },
        table: out.table,
    })
}

/// Parses `args` (program name first) and runs them.
pub fn run_args<I, T>(args: I) -> Result<Report>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli)
}

fn dispatch(ctx: &Ctx) -> Result<Output> {
    match &ctx.cli.command {
        Command::VerifyRelations { sys, deg } => {
            let l = ctx.system(sys)?;
            let mut records = checks(verify_relations(&l.rs, &l.gd, &l.c, *deg)?);
            records.push(dunkl_commutativity(&l.rs, &l.c, *deg).into());
            let sl2 = sl2_data(&l.rs, &l.c, *deg);
            records.extend(checks(sl2.checks));
            Ok(Output::records(records))
        }
        Command::QcBasis { sys, deg, order_bound } => {
            let l = ctx.system(sys)?;
            let ring = ctx.ring(&l, *deg)?;
            let names = Polynomial::default_names(l.rs.rank);
            let mut records: Vec<Record> = (0..=*deg)
                .map(|d| {
                    let basis: Vec<String> = ring.basis(d).iter().map(|p| p.to_text(&names)).collect();
                    Record::value(format!("Q_c degree {d}"), json!({ "degree": d, "dimension": basis.len(), "basis": basis }))
                })
                .collect();
            records.push(Record::value("dimensions", json!(ring.dims())));
            records.extend(checks(ring.structure_checks(&l.gd)?));
            if let Some(k) = order_bound {
                let setup = CvSetup::new(&l.rs, &l.gd, &l.c)?;
                records.push(closure_check(&setup, &ring)?.into());
                records.push(centralizer_search(&setup, &ring, *k)?.into());
            }
            let table = series_table(&["degree", "dimension"], &[ring.dims().iter().map(ToString::to_string).collect()]);
            Ok(Output { records, table: Some(table) })
        }
        Command::Hilbert { sys, deg } => {
            let l = ctx.system(sys)?;
            let ring = ctx.ring(&l, *deg)?;
            let fv = closed_form_hilbert_series(&l.rs, &l.gd, &l.c, *deg)?;
            let records = vec![hilbert_compare(&ring, &l.gd)?.into()];
            let table = series_table(
                &["degree", "computed", "closed_form"],
                &[ring.dims().iter().map(ToString::to_string).collect(), fv.to_strings()],
            );
            Ok(Output { records, table: Some(table) })
        }
        Command::CvOp { sys, p, deg } => {
            let l = ctx.system(sys)?;
            let ring = ctx.ring(&l, *deg)?;
            let setup = CvSetup::new(&l.rs, &l.gd, &l.c)?;
            let p = Polynomial::parse(p, &Polynomial::default_names(l.rs.rank))?;
            let lp = setup.cv_operator(&p)?;
            Ok(Output::records(vec![cv_operator_checks(&setup, &ring, &p, &lp)?.into()]))
        }
        Command::BilinearGram { sys, deg } => {
            let l = ctx.system(sys)?;
            let ring = ctx.ring(&l, *deg)?;
            let setup = CvSetup::new(&l.rs, &l.gd, &l.c)?;
            let mut records = Vec::new();
            for d in 0..=*deg {
                let gram = setup.gram_matrix(ring.basis(d))?;
                let shown: Vec<Vec<String>> = gram.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
                records.push(Record::value(format!("Gram matrix degree {d}"), json!({ "degree": d, "matrix": shown })));
            }
            records.extend(checks(bilinear_checks(&setup, &ring, *deg)?));
            records.push(adjointness_check(&setup, &ring, (*deg).min(3), *deg)?.into());
            Ok(Output::records(records))
        }
        Command::ShiftOp { sys } => {
            let l = ctx.system(sys)?;
            let s = shift_operator(&l.rs, &l.gd, &l.c)?;
            Ok(Output::records(checks(s.checks())))
        }
        Command::Baker { sys } => {
            let l = ctx.system(sys)?;
            let (_, kernel, op) = ctx.kernel(&l)?;
            let r = l.rs.rank;
            let mut records = vec![Record::value(
                "Baker-Akhiezer kernel",
                json!({ "shift_operator": op, "phi": kernel.text(r), "phi(0,0)": fmt_q(&kernel.normalization) }),
            )];
            records.push(double_quasiinvariance_check(&l.rs, &l.c, &kernel)?.into());
            records.push(bihomogeneity_check(r, &kernel).into());
            let mut sym = cherednik::report::CheckResult::new("Phi(x, k) = Phi(Bk, Gx)");
            let flipped = flip(&l.rs, &kernel.phi);
            sym.require(flipped == kernel.phi, || flipped.to_text(&Polynomial::xk_names(r)));
            records.push(sym.into());
            Ok(Output::records(records))
        }
        Command::Eigencheck { sys, deg } => {
            let l = ctx.system(sys)?;
            let ring = ctx.ring(&l, *deg)?;
            let (spec, kernel, _) = ctx.kernel(&l)?;
            let setup = CvSetup::new(&l.rs, &l.gd, &l.c)?;
            let mut records = Vec::new();
            for d in 1..=*deg {
                for p in ring.basis(d) {
                    let lp = setup.cv_operator(p)?;
                    records.push(eigenfunction_check(&spec, &kernel, p, &lp).into());
                }
            }
            Ok(Output::records(records))
        }
        Command::ModuleChar { sys, tau, deg } => {
            let l = ctx.system(sys)?;
            let m = StandardModule::new(&l.rs, &l.gd, &l.c, *tau, *deg)?;
            let ch = module_character(&m);
            let mut records = vec![Record::value(
                "character",
                json!({
                    "lowest_weight": fmt_q(&ch.lowest_weight),
                    "dims": ch.dims,
                    "spherical": ch.spherical,
                }),
            )];
            records.extend(checks(ch.checks));
            records.extend(checks(m.check_relations()));
            records.extend(m.dunkl_cross_check().into_iter().map(Record::from));
            let table = series_table(
                &["degree", "dimension", "spherical"],
                &[ch.dims.iter().map(ToString::to_string).collect(), ch.spherical.iter().map(ToString::to_string).collect()],
            );
            Ok(Output { records, table: Some(table) })
        }
        Command::Singular { sys, tau, deg } => {
            let l = ctx.system(sys)?;
            let m = StandardModule::new(&l.rs, &l.gd, &l.c, *tau, *deg)?;
            let mut records = Vec::new();
            for d in 1..=*deg {
                let vs = singular_vectors(&m, d)?;
                let shown: Vec<String> = vs.iter().map(|v| m.element_text(d, v)).collect();
                records.push(Record::value(format!("singular vectors degree {d}"), json!({ "degree": d, "basis": shown })));
            }
            Ok(Output::records(records))
        }
        Command::IsotypicShift { sys, eps, deg } => {
            let l = ctx.system(sys)?;
            let list: Vec<usize> = match eps {
                Some(e) => vec![*e],
                None => l.gd.linear_characters().into_iter().filter(|&e| e != 0).collect(),
            };
            let mut records = Vec::new();
            for e in list {
                records.push(isotypic_conjugation_check(&l.rs, &l.gd, &l.c, e, *deg)?.into());
            }
            Ok(Output::records(records))
        }
        Command::Lefschetz { sys, k, deg } => {
            let l = ctx.system(sys)?;
            let m = lefschetz_check(&l.rs, &l.c, *k, *deg)?;
            let shown: Vec<Vec<String>> = m.matrix.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
            let mut records = vec![Record::value("matrix", json!({ "k": m.k, "rank": m.rank, "matrix": shown }))];
            records.extend(checks(m.checks));
            Ok(Output::records(records))
        }
        Command::Trace { n, g, tau, c } => {
            let c = parse_q(c)?;
            let mut records = Vec::new();
            let mut table = vec![vec!["label".to_string(), "cycle_type".into(), "value".into()]];
            if let Some(g) = g {
                let mu = parse_class(*n, g)?;
                let t = trace_of_class(&mu);
                let text = t.text_at(&c)?;
                table.push(vec![g.clone(), mu.to_string(), text.clone()]);
                records.push(Record::value(
                    format!("Tr({g})"),
                    json!({ "cycle_type": mu.to_string(), "value": text, "symbolic": t.symbolic_text() }),
                ));
            }
            if let Some(tau) = tau {
                let tau = parse_partition(tau)?;
                if tau.n() != *n {
                    return Err(CliError::Core(cherednik::Error::SizeMismatch { partition: tau.n(), class: *n }));
                }
                let t = trace_of_idempotent(&tau);
                let text = t.text_at(&c)?;
                table.push(vec![format!("e_{tau}"), tau.to_string(), text.clone()]);
                records.push(Record::value(
                    format!("Tr(e_{tau})"),
                    json!({ "value": text, "symbolic": t.symbolic_text() }),
                ));
                records.push(trace_consistency(&tau).into());
            }
            if g.is_none() && tau.is_none() {
                return Err(CliError::Usage("trace needs --g or --tau".into()));
            }
            Ok(Output { records, table: Some(table) })
        }
        Command::Fpoly { tau, n } => {
            let taus = match (tau, n) {
                (Some(t), None) => vec![parse_partition(t)?],
                (None, Some(n)) => partitions(*n),
                _ => return Err(CliError::Usage("fpoly needs exactly one of --tau and --n".into())),
            };
            let mut records = Vec::new();
            let mut table = vec![vec!["tau".to_string(), "F".into()]];
            for t in &taus {
                let f = f_polynomial(t);
                table.push(vec![t.to_string(), f.text.clone()]);
                records.push(Record::value(format!("F_{t}"), json!({ "F": f.text, "coefficients": f.contents })));
                records.extend(checks(f.checks));
            }
            Ok(Output { records, table: Some(table) })
        }
        Command::Multiplicity { n, c, dimv, search_bound } => {
            let m = multiplicity_vector(*n, &parse_q(c)?, *dimv, *search_bound)?;
            let mut table = vec![vec!["tau".to_string(), "multiplicity".into(), "nonnegative".into(), "integral".into()]];
            for e in &m.entries {
                table.push(vec![e.tau.to_string(), e.value.clone(), e.nonnegative.to_string(), e.integral.to_string()]);
            }
            let mut complete = cherednik::report::CheckResult::new("sum dim tau [tau : V] = dim V");
            complete.require(m.completeness, || "sum differs from dim V".into());
            let records = vec![Record::value("multiplicities", serde_json::to_value(&m).unwrap_or(Value::Null)), complete.into()];
            Ok(Output { records, table: Some(table) })
        }
        Command::Sset { n, c } => {
            let v = s_set_constraints(*n, &parse_q(c)?);
            Ok(Output::records(vec![Record::value("constraints", serde_json::to_value(&v).unwrap_or(Value::Null))]))
        }
        Command::LatticeRestrict { n, r } => {
            let l = lattice_restriction_character(*n, *r)?;
            let mut prop = cherednik::report::CheckResult::new(format!("character of h_Z/{r}h_Z = r^cycl / r"));
            prop.require(l.proportional, || format!("{:?} vs {:?}", l.character, l.expected));
            let mut integral = cherednik::report::CheckResult::new("decomposition has nonnegative integer multiplicities");
            integral.require(l.decomposition_integral, || format!("{:?}", l.decomposition));
            let mut table = vec![vec!["class".to_string(), "character".into(), "expected".into()]];
            for ((cls, ch), ex) in l.classes.iter().zip(&l.character).zip(&l.expected) {
                table.push(vec![cls.clone(), ch.to_string(), ex.clone()]);
            }
            let records = vec![
                Record::value("lattice character", serde_json::to_value(&l).unwrap_or(Value::Null)),
                prop.into(),
                integral.into(),
            ];
            Ok(Output { records, table: Some(table) })
        }
        Command::FlatFiltration { sys, deg, bound } => {
            let l = ctx.system(sys)?;
            let ring = ctx.ring(&l, *bound)?;
            let setup = CvSetup::new(&l.rs, &l.gd, &l.c)?;
            let samples = default_samples(&setup, &ring, *deg)?;
            let report = flat_filtration_check(&setup, &ring, &samples)?;
            let mut records = vec![Record::value("samples", serde_json::to_value(&report.entries).unwrap_or(Value::Null))];
            records.extend(checks(report.checks));
            Ok(Output::records(records))
        }
        Command::Selftest { only } => selftest(ctx, only),
    }
}

/// Commands whose warm-cache reruns are compared byte for byte.
pub const REPRODUCIBILITY_RUNS: [&[&str]; 4] = [
    &["qc-basis", "A", "2", "--c", "1", "--deg", "6"],
    &["hilbert", "B", "2", "--c", "1,2", "--deg", "8"],
    &["baker", "A", "2", "--c", "1"],
    &["eigencheck", "A", "1", "--c", "2", "--deg", "4"],
];

/// Criterion 12 in-process: a cold run and two warm runs of each command in
/// `REPRODUCIBILITY_RUNS` must render identically once timing is removed.
pub fn reproducibility_check(cache_root: &std::path::Path) -> Result<cherednik::report::CheckResult> {
    let mut res = cherednik::report::CheckResult::new("warm-cache reruns are byte-identical modulo timing");
    let dir = cache_root.join(format!("reproducibility-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let mut runs = Vec::new();
    for args in REPRODUCIBILITY_RUNS {
        let mut full = vec!["cherednik".to_string(), "--cache-dir".into(), dir.display().to_string()];
        full.extend(args.iter().map(|s| s.to_string()));
        let mut outputs = Vec::new();
        for _ in 0..3 {
            outputs.push(output::strip_timing(&run_args(full.clone())?.render()?));
        }
        res.require(outputs[0] == outputs[1] && outputs[1] == outputs[2], || format!("{} differs between runs", args.join(" ")));
        runs.push(args.join(" "));
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(res.with_data(json!({ "commands": runs })))
}

fn criterion_record(report: &CriterionReport) -> Record {
    let failed: Vec<&cherednik::report::CheckResult> = report.failures().collect();
    Record {
        name: format!("criterion {}: {}", report.id, report.title),
        status: if failed.is_empty() { "pass" } else { "fail" },
        data: json!({
            "checks": report.checks.len(),
            "failed": failed.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
        }),
        witnesses: failed
            .iter()
            .flat_map(|c| c.witnesses.iter().map(move |w| format!("{}: {w}", c.name)))
            .take(16)
            .collect(),
    }
}

fn selftest(ctx: &Ctx, only: &[usize]) -> Result<Output> {
    let ids: Vec<usize> = if only.is_empty() { (1..=12).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=12).contains(&i)) {
        return Err(CliError::Usage(format!("no criterion {bad}")));
    }
    let in_process: Vec<usize> = ids.iter().copied().filter(|&i| i <= 11).collect();
    let jobs = ctx.cli.jobs.max(1);
    let mut reports: Vec<(usize, cherednik::Result<CriterionReport>)> = Vec::new();
    for chunk in in_process.chunks(jobs) {
        let done: Vec<_> = std::thread::scope(|s| {
            let handles: Vec<_> = chunk.iter().map(|&id| (id, s.spawn(move || run_criterion(id)))).collect();
            handles.into_iter().map(|(id, h)| (id, h.join().expect("criterion thread panicked"))).collect()
        });
        reports.extend(done);
    }
    let mut records = Vec::new();
    for (id, rep) in reports {
        let rep = rep?;
        let rec = criterion_record(&rep);
        if !rec.passed() && records.iter().all(Record::passed) {
            if let Some(w) = rec.witnesses.first() {
                eprintln!("criterion {id} failed: {w}");
            }
        }
        records.push(rec);
    }
    if ids.contains(&12) {
        let root = ctx.cli.cache_dir.clone().unwrap_or_else(std::env::temp_dir);
        let check = reproducibility_check(&root)?;
        let rep = CriterionReport { id: 12, title: CRITERIA[11].to_string(), checks: vec![check] };
        records.push(criterion_record(&rep));
    }
    Ok(Output::records(records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> Report {
        let mut full = vec!["cherednik"];
        full.extend_from_slice(args);
        run_args(full).unwrap()
    }

    #[test]
    fn qc_basis_rank_one() {
        let r = run_ok(&["qc-basis", "A", "1", "--c", "1", "--deg", "5"]);
        let dims = r.results.iter().find(|x| x.name == "dimensions").unwrap();
        assert_eq!(dims.data, json!([1, 0, 1, 1, 1, 1]));
        assert!(r.passed());
    }

    #[test]
    fn shift_op_rank_one() {
        let r = run_ok(&["shift-op", "A", "1", "--c", "1"]);
        assert!(r.passed());
        assert_eq!(r.results[0].data["operator"], "x1*d1 - 1");
        assert_eq!(r.results[0].data["S[1]"], "-1");
    }

    #[test]
    fn trace_three_cycle() {
        let r = run_ok(&["--format", "text", "trace", "--n", "3", "--g", "(123)", "--c", "1"]);
        assert_eq!(r.results[0].data["value"], "(1/9)·Tr(1)");
        let csv = run_ok(&["--format", "csv", "trace", "--n", "3", "--g", "(123)", "--c", "1"]).render().unwrap();
        assert_eq!(csv, "label,cycle_type,value\n(123),(3),(1/9)·Tr(1)\n");
    }

    #[test]
    fn errors() {
        assert!(matches!(run_args(["cherednik", "frobnicate"]), Err(CliError::Usage(_))));
        assert!(matches!(
            run_args(["cherednik", "qc-basis", "A", "1", "--c", "1/2"]),
            Err(CliError::Core(cherednik::Error::NonIntegralMultiplicity(_)))
        ));
        assert!(matches!(
            run_args(["cherednik", "trace", "--n", "2", "--g", "(12)", "--c", "0"]),
            Err(CliError::Core(cherednik::Error::ZeroParameter))
        ));
        assert!(matches!(run_args(["cherednik", "shift-op", "H", "3"]), Err(CliError::Core(cherednik::Error::UnsupportedType(_)))));
    }

    #[test]
    fn lattice_failure_sets_status() {
        let r = run_ok(&["lattice-restrict", "--n", "2", "--r", "2"]);
        assert!(!r.passed());
        let r = run_ok(&["lattice-restrict", "--n", "2", "--r", "3"]);
        assert!(r.passed());
    }

    #[test]
    fn cache_is_used_and_checked() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let args = ["cherednik", "--cache-dir", d, "baker", "A", "1", "--c", "1"];
        let cold = run_args(args).unwrap().render().unwrap();
        let warm = run_args(args).unwrap().render().unwrap();
        assert_eq!(output::strip_timing(&cold), output::strip_timing(&warm));
        assert!(warm.contains("x1*k1 - 1"));
        let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
        let text = std::fs::read_to_string(&file).unwrap();
        std::fs::write(&file, text.replace("x1*k1 - 1", "x1*k1 + 1")).unwrap();
        assert!(matches!(run_args(args), Err(CliError::CacheCorruption(_))));
    }
}
