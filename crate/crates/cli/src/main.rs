use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use inextensible::analysis::{VERDICT_N, VERDICT_TOL};
use inextensible::covering::DEFAULT_RESOLUTION;
use inextensible::{
    area_profile, build_family_domain, covering_check, critical_lattice, critical_triangles, inextensibility_verdict,
    sas_check, solve_family, Domain, DomainFile, Error, NamedDomain,
};

mod render;

const INPUT_HELP: &str = "Domain JSON file, or a named shorthand: disk:R, ellipse:A:B:PHI, \
parallelogram:UX:UY:VX:VY, ngon:N:R (N even, vertex at angle 0). PHI is in radians. \
An existing file path always wins over a shorthand.";

#[derive(Parser)]
#[command(
    name = "inextensible",
    version,
    about = "Anchored-triangle profiles, critical lattices and inextensibility checks for symmetric convex domains",
    after_help = "Angles in all output are radians. Exit codes: 1 bad arguments or input, \
2 invalid domain (the message names the failed check), 3 solver did not converge."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Area, critical determinant, verdict and Sas ratio as JSON.
    Analyze {
        #[arg(help = INPUT_HELP)]
        input: String,
        /// Profile grid size over [0, pi).
        #[arg(long, default_value_t = VERDICT_N)]
        n: usize,
        /// Relative A-spread treated as constant.
        #[arg(long, default_value_t = VERDICT_TOL)]
        tol: f64,
    },
    /// CSV of A(theta) on theta = i pi / n.
    Profile {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 360)]
        n: usize,
    },
    /// Critical lattice basis, determinant and covering density as JSON.
    Lattice {
        #[arg(help = INPUT_HELP)]
        input: String,
    },
    /// Sampled covering check of the critical lattice as JSON.
    CoverCheck {
        #[arg(help = INPUT_HELP)]
        input: String,
        /// Samples per basis direction.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Solve the disk-to-square family member for parameter s.
    Family {
        #[arg(long)]
        s: f64,
        /// Also write the member as a domain JSON file.
        #[arg(long)]
        domain_out: Option<PathBuf>,
    },
    /// SVG drawing of the domain.
    Render {
        #[arg(help = INPUT_HELP)]
        input: String,
        /// Draw up to this many critical triangles.
        #[arg(long, default_value_t = 0)]
        triangles: usize,
        /// Draw translates by the critical lattice.
        #[arg(long)]
        lattice: bool,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Invalid(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

fn load_domain(input: &str) -> Result<Domain, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{input}: {e}")))?;
        let file: DomainFile =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{input}: malformed domain file: {e}")))?;
        return Ok(Domain::from_file(&file)?);
    }
    let named: NamedDomain = input
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("{e} (and no such file)")))?;
    Ok(Domain::from_named(&named)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Analyze { input, n, tol } => {
            let k = load_domain(&input)?;
            let verdict = inextensibility_verdict(&k, n.max(3), tol);
            let sas = sas_check(&k);
            Ok(pretty(&json!({
                "area": k.area(),
                "delta": 2.0 * verdict.a_max,
                "a_max": verdict.a_max,
                "inextensible": verdict.inextensible,
                "spread": verdict.relative_spread,
                "sas_ratio": verdict.a_max / k.area(),
                "witness_theta": verdict.witness_theta,
                "sas_bound_holds": sas.ratio_holds() && sas.corollary_holds(),
            })))
        }
        Command::Profile { input, n } => {
            let k = load_domain(&input)?;
            let p = area_profile(&k, n.max(3));
            let mut out = String::from("theta_rad,area\n");
            for (t, a) in p.thetas.iter().zip(&p.values) {
                let _ = writeln!(out, "{t:.16e},{a:.16e}");
            }
            Ok(out)
        }
        Command::Lattice { input } => {
            let k = load_domain(&input)?;
            let l = critical_lattice(&k)?;
            Ok(pretty(&json!({
                "basis": l.basis(),
                "determinant": l.determinant(),
                "density": k.area() / l.determinant(),
            })))
        }
        Command::CoverCheck { input, resolution } => {
            let k = load_domain(&input)?;
            let l = critical_lattice(&k)?;
            Ok(pretty(&covering_check(&k, &l, resolution)))
        }
        Command::Family { s, domain_out } => {
            let p = solve_family(s)?;
            if let Some(path) = domain_out {
                let d = build_family_domain(&p)?;
                std::fs::write(&path, d.to_json() + "\n")
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            Ok(pretty(&p))
        }
        Command::Render {
            input,
            triangles,
            lattice,
            out,
        } => {
            let k = load_domain(&input)?;
            let tris: Vec<_> = if triangles > 0 {
                critical_triangles(&k, 1e-7)
                    .into_iter()
                    .take(triangles)
                    .map(|c| c.triangle)
                    .collect()
            } else {
                Vec::new()
            };
            let l = if lattice { Some(critical_lattice(&k)?) } else { None };
            let svg = render::render_svg(&k, &tris, l.as_ref());
            match out {
                Some(path) => {
                    std::fs::write(&path, svg).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(svg),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::NoConvergence { .. } | Error::ClosureFailure { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
