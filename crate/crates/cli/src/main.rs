use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use contactforge::liealg::{build_algebra, class_report, survey_report, AlgebraSpec, Covector};
use contactforge::numeric::{t5_sigma_points, torus_suite, FormFn, Points, DEFAULT_TOL};
use contactforge::orthogroup::so3_contact_check;
use contactforge::report::VerifyReport;
use contactforge::slcontact::{
    h_algebra, invariance_loci, reeb_field, structural_checks, u_decomposition, verify_contact_identity,
    DEFAULT_MAX_TERMS,
};
use contactforge::{Error, Rat, Result};

const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "contactforge", version, about = "Exact verification of contact forms on matrix groups")]
struct Cli {
    /// Write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Cap on the number of terms in intermediate forms.
    #[arg(long, global = true, env = "CONTACTFORGE_MAX_TERMS", default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ω ∧ (dω)^(m-1) ∧ dΔ = C·Δ·V on SL(2p).
    VerifyContact {
        #[arg(long)]
        p: usize,
    },
    /// Pairing and contraction identities for the Reeb field.
    Reeb {
        #[arg(long)]
        p: usize,
    },
    /// Left and right invariance loci of ω.
    Invariance {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The algebra {Y : JY + YᵀJ = 0}.
    HAlgebra {
        #[arg(long)]
        p: usize,
    },
    /// Coefficients u_{i,j} of ω in the left-invariant coframe.
    UDecomp {
        #[arg(long)]
        p: usize,
    },
    /// Brackets, Lie derivatives and the duality pattern of the frames.
    Structural {
        #[arg(long)]
        p: usize,
    },
    /// Cartan class of one linear form.
    CartanClass {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Coordinates in the dual basis, e.g. `1,-2,3/4`. Defaults to e_1*.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        form: Option<Vec<String>>,
    },
    /// Class histogram over seeded random covectors.
    ClassSurvey {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The induced form on SO(3) and its top-degree coefficient.
    So3Check {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Floating point class scan of a torus form.
    Scan {
        #[arg(long, value_enum)]
        form: TorusForm,
        #[arg(long, default_value_t = 1)]
        n1: i64,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Every suite for one value of p.
    All {
        #[arg(long)]
        p: usize,
    },
}

#[derive(clap::Args, Debug)]
struct AlgebraArgs {
    /// `sl`, `so`, `heisenberg` or `file:PATH`.
    #[arg(long)]
    algebra: String,
    /// Matrix size for sl and so, dimension for heisenberg; ignored for files.
    #[arg(long)]
    n: Option<usize>,
}

impl AlgebraArgs {
    fn spec(&self) -> Result<AlgebraSpec> {
        if let Some(path) = self.algebra.strip_prefix("file:") {
            return Ok(AlgebraSpec::FromFile(PathBuf::from(path)));
        }
        let n = self.n.ok_or_else(|| Error::Parameter(format!("--n is required for {}", self.algebra)))?;
        match self.algebra.as_str() {
            "sl" => Ok(AlgebraSpec::Sl(n)),
            "so" => Ok(AlgebraSpec::So(n)),
            "heisenberg" => Ok(AlgebraSpec::Heisenberg(n)),
            other => Err(Error::Parameter(format!("unknown algebra {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TorusForm {
    T3,
    T5Lutz,
}

fn parse_form(values: &[String], dim: usize) -> Result<Covector> {
    let coords = values
        .iter()
        .map(|v| v.trim().parse::<Rat>().map_err(|_| Error::Parameter(format!("not a rational number: {v:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != dim {
        return Err(Error::Dimension(format!("form has {} coordinates, algebra has dimension {dim}", coords.len())));
    }
    Ok(Covector(coords))
}

fn suite_for_p(command: &Command, max_terms: usize) -> Result<VerifyReport> {
    match *command {
        Command::VerifyContact { p } => Ok(verify_contact_identity(p, max_terms)?.to_report()),
        Command::Reeb { p } => Ok(reeb_field(p)?.report),
        Command::Invariance { p, samples, seed } => invariance_loci(p, samples, seed),
        Command::HAlgebra { p } => Ok(h_algebra(p)?.report),
        Command::UDecomp { p } => u_decomposition(p),
        Command::Structural { p } => structural_checks(p),
        _ => unreachable!("not a per-p suite"),
    }
}

fn run(cli: &Cli) -> Result<VerifyReport> {
    match &cli.command {
        Command::CartanClass { algebra, form } => {
            let g = build_algebra(&algebra.spec()?)?;
            let alpha = match form {
                Some(values) => parse_form(values, g.dim())?,
                None => Covector::basis(g.dim(), 0),
            };
            class_report(&g, &alpha)
        }
        Command::ClassSurvey { algebra, rank, samples, seed } => {
            let g = build_algebra(&algebra.spec()?)?;
            survey_report(&g, *rank, *samples, *seed)
        }
        Command::So3Check { samples, seed } => Ok(so3_contact_check(*samples, *seed)?.report),
        Command::Scan { form, n1, points, seed, tol } => {
            let pts = Points::Random { count: *points, seed: *seed };
            let mut report = match form {
                TorusForm::T3 => torus_suite(&FormFn::t3(*n1), &[1, 2], &pts, &[], *tol, *seed)?,
                TorusForm::T5Lutz => torus_suite(&FormFn::t5_lutz(), &[3, 4], &pts, &t5_sigma_points(8), *tol, *seed)?,
            };
            if let TorusForm::T3 = form {
                report = report.param("n1", *n1);
            }
            Ok(report)
        }
        Command::All { p } => {
            let p = *p;
            let mut all = VerifyReport::new("all").param("p", p);
            let suites = [
                Command::VerifyContact { p },
                Command::Reeb { p },
                Command::Invariance { p, samples: 20, seed: 1 },
                Command::HAlgebra { p },
                Command::UDecomp { p },
                Command::Structural { p },
            ];
            for s in &suites {
                all.absorb(suite_for_p(s, cli.max_terms)?);
            }
            all.absorb(so3_contact_check(50, 1)?.report);
            let sl = build_algebra(&AlgebraSpec::Sl(2 * p))?;
            all.absorb(survey_report(&sl, 2 * p - 1, 50, 1)?);
            let pts = Points::Random { count: 1000, seed: 1 };
            all.absorb(torus_suite(&FormFn::t3(1), &[1, 2], &pts, &[], DEFAULT_TOL, 1)?);
            all.absorb(torus_suite(&FormFn::t5_lutz(), &[3, 4], &pts, &t5_sigma_points(8), DEFAULT_TOL, 1)?);
            Ok(all)
        }
        other => suite_for_p(other, cli.max_terms),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code.clamp(0, 255) as u8);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if matches!(e, Error::Resource { .. }) { EXIT_RESOURCE } else { EXIT_USAGE });
        }
    };
    print!("{}", report.summary());
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_REFUTED)
    }
}
