//! `prg`: command-line front end for the preregular-form toolkit.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "prg", version, about = "Exact checks for preregular forms and their quantum symmetry cogroupoids")]
struct Cli {
    /// Output format; text is a projection of the JSON report.
    #[arg(long, value_enum, global = true, default_value_t = FormatArg::Json)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Preregularity, dual forms and automorphisms.
    #[command(subcommand)]
    Form(FormCmd),
    /// Relations and graded dimensions of A(f, N).
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Presentations H(e, f) and their structure maps.
    #[command(subcommand)]
    Uqg(UqgCmd),
    /// Twisting pairs and Zhang-twist connectivity.
    #[command(subcommand)]
    Twist(TwistCmd),
    /// Build and check a graded module family over H_2(e, f).
    ModuleFamily {
        e: PathBuf,
        f: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        /// Degree window (must contain 0).
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, default_values_t = [-5, 5])]
        window: Vec<i64>,
    },
    /// Emit a certificate that H_2(e, f) is nonzero (bilinear forms only).
    Nonvanishing {
        e: PathBuf,
        f: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
}

#[derive(Args, Debug)]
struct SeedArgs {
    /// Matrix A^(0); drawn at random when omitted.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// RNG seed for the random draw.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
}

#[derive(Subcommand, Debug)]
enum FormCmd {
    /// Nondegeneracy and cyclic twist of a form.
    Check { form: PathBuf },
    /// A dual form and its contraction check.
    Dual { form: PathBuf },
    /// Whether phi scales the form, and by which factor.
    Aut { form: PathBuf, phi: PathBuf },
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Degree-N relations of A(f, N).
    Relations {
        form: PathBuf,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Graded dimensions of A(f, N) up to --max-deg.
    Dims {
        form: PathBuf,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_deg: usize,
    },
}

#[derive(Subcommand, Debug)]
enum UqgCmd {
    /// Generators, grading and relations of H(e, f).
    Present {
        e: PathBuf,
        f: PathBuf,
    },
    /// Cocategory laws on (e, f, g, h) and the antipode laws on (e, f); g and h default to e and f.
    VerifyAxioms {
        e: PathBuf,
        f: PathBuf,
        g: Option<PathBuf>,
        h: Option<PathBuf>,
        /// Longest word segment allowed in membership witnesses (default 2m + 4).
        #[arg(long)]
        len_bound: Option<usize>,
    },
    /// The matrix identities BA = I, XB^T = I, B^T X = I, AB = I in H(e, f).
    Lemma {
        e: PathBuf,
        f: PathBuf,
        #[arg(long)]
        len_bound: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum TwistCmd {
    /// The twisting pair (phi1, phi2) attached to an automorphism phi.
    Pair {
        e: PathBuf,
        phi: PathBuf,
        #[arg(long)]
        len_bound: Option<usize>,
    },
    /// Relation preservation of the map from H(e^phi) into the Zhang twist of H(e).
    Cocycle {
        e: PathBuf,
        phi: PathBuf,
        #[arg(long)]
        len_bound: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CertifyCmd {
    /// Recompute a nonvanishing certificate and compare.
    Verify { cert: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    match commands::run(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error of the check itself.
            let _ = writeln!(stdout, "{}", output::render(&outcome.report, format));
            ExitCode::from(outcome.verdict.exit_code() as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(3)
        }
    }
}
