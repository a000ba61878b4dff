//! Job configuration, execution and exit statuses.

use std::path::PathBuf;

use invforms_core::chern_simons::{cs_constant, cs_form_via_integral, is_multiple, tau};
use invforms_core::poly::{invariant_polynomials, MAX_POLY_DEGREE};
use invforms_core::structure::{full_decomposition, pair_lemma_instance, DecompositionReport};
use invforms_core::{
    catalog, ext, Caps, Error, Executor, LieAlgebra, Representation, Sequential, SpaceTag, SymmetricPair,
};

use crate::format::{parse_algebra, ParseError};
use crate::lemma::{self, AMBIENT_DIM};
use crate::parallel::Pool;
use crate::report::{
    CatalogAlgebraRow, CatalogPairRow, CatalogReport, CsRow, DecomposeReport, GeneratorsReport, LemmaRow, PairInfo,
    PoincareReport, Render, VerifyCsReport, VerifyLemmaReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INVALID_PAIR: i32 = 4;
pub const EXIT_CAP: i32 = 5;
pub const EXIT_IO: i32 = 6;
pub const EXIT_COMPUTATION: i32 = 7;

pub const EXIT_CODES_HELP: &str = "\
Exit status:
  0  success, every verification verdict true
  1  a verification verdict is false
  2  invalid command line or configuration
  3  malformed algebra file (line or field named; Jacobi failures name the triple)
  4  invalid algebra or pair (not semisimple, not an involution, not an automorphism,
     degenerate splitting, no compact dual, unknown catalog entry)
  5  degree cap exceeded or insufficient to generate all invariant forms
  6  file could not be read or written
  7  other computation error";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Parse { .. } => EXIT_PARSE,
            Self::Io { .. } => EXIT_IO,
            Self::Core(e) => match e {
                Error::JacobiViolation { .. } | Error::BracketOrder { .. } | Error::ParseScalar(_) => EXIT_PARSE,
                Error::NotSemisimple
                | Error::NotInvolution
                | Error::NotAutomorphism { .. }
                | Error::DegenerateRestriction(_)
                | Error::PairInvariant(_)
                | Error::DualNotCompact
                | Error::InvalidBasis(_)
                | Error::UnknownCatalogEntry(_)
                | Error::TooLarge(_) => EXIT_INVALID_PAIR,
                Error::DegreeCapExceeded { .. } | Error::CapInsufficient { .. } => EXIT_CAP,
                _ => EXIT_COMPUTATION,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Poincare,
    Generators,
    Decompose,
    VerifyCs,
    VerifyLemma,
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// Where the pair or algebra comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Pair(String),
    Algebra(String),
    File(PathBuf),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    pub source: Source,
    pub max_poly_degree: usize,
    pub max_form_degree: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub seed: u64,
    pub instances: usize,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            command: Command::Catalog,
            source: Source::None,
            max_poly_degree: invforms_core::poly::DEFAULT_DEGREE_CAP,
            max_form_degree: None,
            format: Format::Table,
            out: None,
            jobs: 1,
            seed: 0,
            instances: 100,
        }
    }
}

/// The rendered report and the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

fn render<R: Render>(r: &R, format: Format) -> String {
    match format {
        Format::Table => r.table(),
        Format::Json => r.json(),
    }
}

fn read_file(path: &PathBuf) -> Result<crate::format::AlgebraSpec, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let spec = parse_algebra(&text).map_err(|source| CliError::Parse { path: shown, source })?;
    if !spec.algebra.is_semisimple() {
        return Err(Error::NotSemisimple.into());
    }
    Ok(spec)
}

fn load_pair(source: &Source) -> Result<(String, SymmetricPair), CliError> {
    match source {
        Source::Pair(name) => Ok((name.clone(), catalog::pair(name)?)),
        Source::File(path) => Ok((path.display().to_string(), read_file(path)?.pair()?)),
        Source::Algebra(name) => Ok((format!("group:{name}"), catalog::pair(&format!("group:{name}"))?)),
        Source::None => Err(CliError::Usage("this command needs --pair, --file or --algebra".into())),
    }
}

fn load_algebra(source: &Source) -> Result<(String, LieAlgebra), CliError> {
    match source {
        Source::Algebra(name) => Ok((name.clone(), catalog::algebra(name)?)),
        Source::File(path) => Ok((path.display().to_string(), read_file(path)?.algebra)),
        Source::Pair(name) => {
            let dual = catalog::pair(name)?.dual_pair()?;
            Ok((format!("compact dual of {name}"), dual.algebra().clone()))
        }
        Source::None => Err(CliError::Usage("this command needs --algebra, --file or --pair".into())),
    }
}

fn pair_info(name: &str, pair: &SymmetricPair) -> PairInfo {
    PairInfo {
        name: name.into(),
        g_dim: pair.algebra().dim(),
        h_dim: pair.h_dim(),
        m_dim: pair.m_dim(),
        symmetric: pair.is_symmetric(),
    }
}

fn validate(config: &JobConfig) -> Result<(), CliError> {
    if config.max_poly_degree == 0 || config.max_poly_degree > MAX_POLY_DEGREE {
        return Err(CliError::Usage(format!(
            "--max-poly-degree must lie in 1..={MAX_POLY_DEGREE}, got {}",
            config.max_poly_degree
        )));
    }
    if config.jobs == 0 {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    Ok(())
}

/// Runs a job; errors are returned for the caller to print and map to an
/// exit code with [`CliError::exit_code`].
pub fn run(config: &JobConfig) -> Result<Outcome, CliError> {
    validate(config)?;
    if config.jobs > 1 {
        let pool = Pool::new(config.jobs).map_err(|e| CliError::Usage(e.to_string()))?;
        run_with(config, &pool)
    } else {
        run_with(config, &Sequential)
    }
}

fn decomposition<E: Executor>(config: &JobConfig, exec: &E) -> Result<DecompositionReport, CliError> {
    let (name, pair) = load_pair(&config.source)?;
    Ok(full_decomposition(
        &pair,
        &name,
        Caps::uniform(config.max_poly_degree),
        exec,
    )?)
}

pub fn run_with<E: Executor>(config: &JobConfig, exec: &E) -> Result<Outcome, CliError> {
    let (text, ok) = match config.command {
        Command::Poincare => {
            let (name, pair) = load_pair(&config.source)?;
            let top = config.max_form_degree.unwrap_or(pair.m_dim()).min(pair.m_dim());
            let poincare = exec.map(top + 1, |k| ext::pair_invariant_forms(&pair, k).len());
            let r = PoincareReport {
                pair: pair_info(&name, &pair),
                max_form_degree: top,
                poincare,
            };
            (render(&r, config.format), true)
        }
        Command::Generators => {
            let r = GeneratorsReport::new(&decomposition(config, exec)?);
            let ok = r.generators.chern_simons.iter().all(|c| c.holds);
            (render(&r, config.format), ok)
        }
        Command::Decompose => {
            let r = DecomposeReport::new(&decomposition(config, exec)?);
            (render(&r, config.format), r.verdict)
        }
        Command::VerifyCs => {
            let r = verify_cs(config, exec)?;
            (render(&r, config.format), r.verdict)
        }
        Command::VerifyLemma => {
            let r = verify_lemma(config, exec)?;
            (render(&r, config.format), r.verdict)
        }
        Command::Catalog => (render(&catalog_list()?, config.format), true),
    };
    Ok(Outcome {
        text,
        exit_code: if ok { EXIT_OK } else { EXIT_VERDICT },
    })
}

fn verify_cs<E: Executor>(config: &JobConfig, exec: &E) -> Result<VerifyCsReport, CliError> {
    let (name, g) = load_algebra(&config.source)?;
    let adjoint = Representation::adjoint(&g, SpaceTag::G);
    let mut checks = Vec::new();
    for k in 1..=config.max_poly_degree {
        let polys = invariant_polynomials(&adjoint, k, config.max_poly_degree)?;
        if polys.is_empty() {
            continue;
        }
        let constant = cs_constant(k as u32);
        let results = exec.map(polys.len(), |i| -> Result<(bool, bool), Error> {
            let t = tau(&g, &polys[i])?;
            let cs = cs_form_via_integral(&g, &polys[i])?;
            Ok((!t.is_zero(), is_multiple(&cs, &t, &constant)))
        });
        let results: Vec<(bool, bool)> = results.into_iter().collect::<Result<_, _>>()?;
        checks.push(CsRow {
            poly_degree: k,
            constant: invforms_core::scalar::format_scalar(&constant),
            polynomials: polys.len(),
            tau_nonzero: results.iter().filter(|r| r.0).count(),
            holds: results.iter().all(|r| r.1),
        });
    }
    let verdict = checks.iter().all(|c| c.holds);
    Ok(VerifyCsReport {
        algebra: name,
        dim: g.dim(),
        max_poly_degree: config.max_poly_degree,
        conventions: crate::report::conventions(),
        checks,
        verdict,
    })
}

fn verify_lemma<E: Executor>(config: &JobConfig, exec: &E) -> Result<VerifyLemmaReport, CliError> {
    let instances = lemma::random_instances(config.seed, config.instances, AMBIENT_DIM);
    let results = exec.map(instances.len(), |i| lemma::check(&instances[i]).map(|w| w.holds));
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        if !r? {
            failures.push(i);
        }
    }
    let (pair, pair_degrees) = match &config.source {
        Source::None => (None, Vec::new()),
        source => {
            let (name, pair) = load_pair(source)?;
            let dual = pair.dual_pair()?;
            let top = config.max_form_degree.unwrap_or(dual.m_dim()).min(dual.m_dim());
            let rows = exec.map(top + 1, |k| {
                pair_lemma_instance(&dual, k).map(|w| LemmaRow {
                    degree: k,
                    f1_dim: w.f1_dim,
                    f2_dim: w.f2_dim,
                    image_dim: w.image.len(),
                    kernel_dim: w.kernel.len(),
                    holds: w.holds,
                })
            });
            let rows: Vec<LemmaRow> = rows.into_iter().collect::<Result<_, _>>()?;
            (Some(pair_info(&name, &pair)), rows)
        }
    };
    let verdict = failures.is_empty() && pair_degrees.iter().all(|r| r.holds);
    Ok(VerifyLemmaReport {
        seed: config.seed,
        ambient_dim: AMBIENT_DIM,
        instances: instances.len(),
        passed: instances.len() - failures.len(),
        failures,
        pair,
        pair_degrees,
        verdict,
    })
}

pub fn catalog_list() -> Result<CatalogReport, CliError> {
    let mut pairs = Vec::new();
    for p in catalog::PAIRS {
        let pair = catalog::pair(p.name)?;
        pairs.push(CatalogPairRow {
            name: p.name.into(),
            compact_dual: p.compact_dual.into(),
            g_dim: pair.algebra().dim(),
            h_dim: pair.h_dim(),
            m_dim: pair.m_dim(),
        });
    }
    let mut algebras = Vec::new();
    for name in catalog::ALGEBRAS {
        algebras.push(CatalogAlgebraRow {
            name: (*name).into(),
            dim: catalog::algebra(name)?.dim(),
        });
    }
    Ok(CatalogReport { pairs, algebras })
}

/// Writes the report to `config.out`, or returns it for standard output.
pub fn emit(config: &JobConfig, outcome: &Outcome) -> Result<Option<String>, CliError> {
    match &config.out {
        Some(path) => {
            std::fs::write(path, &outcome.text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(None)
        }
        None => Ok(Some(outcome.text.clone())),
    }
}
