use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use knotconc::legendrian::LegInvariants;
use knotconc_cli::commands::{self, FrontSource, IndependenceParams, KnotInput, OpKind, Outcome};
use knotconc_cli::poly::parse_poly;
use num::BigInt;
use std::process::ExitCode;

/// Exact concordance invariants, primality criteria and certificates for
/// cabled doubling operators.
///
/// Exit status: 0 on success or an asserted conclusion, 1 on a sound
/// refusal (unknown verdict or failed certificate), 2 on input errors.
#[derive(Parser)]
#[command(name = "knotconc", version)]
struct Cli {
    /// Worker threads for commands that run several independent cells.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial, Arf, genus bound, signature profile, rho0 and tau.
    Invariants {
        /// Knot expression, e.g. "cable(infect(Q(3), twist(2)), 2)".
        expr: Option<String>,
        /// Read a Seifert matrix file instead (`g=<genus>` then 2g rows).
        #[arg(long, conflicts_with = "expr")]
        seifert: Option<String>,
        #[arg(long)]
        facts: Option<String>,
    },
    /// Irreducibility over the rationals.
    Prime {
        poly: String,
        /// Also run the two-prime valuation criterion with these primes.
        #[arg(long, num_args = 2, value_names = ["Q1", "Q2"])]
        primes: Option<Vec<String>>,
    },
    /// Irreducibility of f(t^k) for every nonzero k.
    StronglyPrime {
        poly: String,
        #[arg(long, default_value_t = 12)]
        search_bound: u32,
    },
    /// Coprimality of f(t^k) and g(t^l) for all nonzero k, l.
    StronglyCoprime { f: String, g: String },
    /// Solutions of x^a - y^b = 1 in a box.
    Catalan {
        #[arg(long, default_value_t = 1000)]
        x_max: u64,
        #[arg(long, default_value_t = 1000)]
        y_max: u64,
        #[arg(long, default_value_t = 20)]
        a_max: u32,
        #[arg(long, default_value_t = 20)]
        b_max: u32,
    },
    /// Thurston-Bennequin and rotation numbers with the induced tau bounds.
    Legendrian {
        /// Front file; tokens L<i>, R<i>, X<i>.
        file: Option<String>,
        #[arg(long, conflicts_with = "file")]
        builtin: Option<FrontBuiltin>,
        /// Treat the file as an operator front with this many endpoints.
        #[arg(long)]
        endpoints: Option<usize>,
        #[arg(long)]
        j: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        /// tb of the companion's Legendrian representative.
        #[arg(long, allow_hyphen_values = true)]
        companion_tb: Option<i64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        companion_rot: i64,
        /// Number of times the operator is applied.
        #[arg(long, default_value_t = 1)]
        iterate: u32,
        /// Upper bound on the genus, for an exact tau.
        #[arg(long)]
        genus: Option<i64>,
    },
    /// Robustness certificates for operators and their cables.
    Robust {
        #[arg(long)]
        op: OpArg,
        /// k values, e.g. 3 or 1..5.
        #[arg(long)]
        k: String,
        /// Cable parameters, e.g. 1..5.
        #[arg(long, default_value = "1")]
        p: String,
        /// Base knot tied into the band of R.
        #[arg(long, default_value = "neg-trefoils-3")]
        j: String,
        #[arg(long)]
        facts: String,
    },
    /// Linear independence certificate for a family of iterated infections.
    Independence {
        #[arg(long, default_value = "cabled-iterates")]
        family: FamilyArg,
        #[arg(long)]
        k: String,
        /// Depth of the iteration.
        #[arg(long)]
        n: usize,
        /// Cable parameters of the outermost operator.
        #[arg(long)]
        p: String,
        /// Number of twist-knot companions twist(2), ..., twist(2m).
        #[arg(long)]
        m: u32,
        /// Values rho0(twist(2j)), j = 1..N, entering the relation search.
        #[arg(long)]
        relation_values: Option<u32>,
        #[arg(long, default_value_t = 100)]
        relation_bound: u32,
        #[arg(long, default_value = "neg-trefoils-3")]
        j: String,
        #[arg(long)]
        facts: String,
    },
    /// Certified filtration levels of a knot expression.
    Filtration {
        expr: String,
        #[arg(long)]
        facts: Option<String>,
    },
    /// Derivative-curve examples d = L # -L_{2,1}.
    Kauffman {
        #[arg(long)]
        facts: Option<String>,
    },
    /// Signature profile as TSV: arc start, arc end (as theta/pi), level.
    ProfileDump {
        expr: Option<String>,
        #[arg(long, conflicts_with = "expr")]
        seifert: Option<String>,
        #[arg(long)]
        facts: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FrontBuiltin {
    TwistFront,
    QFront,
    Unknot,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "R", alias = "r")]
    R,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// n-fold iterates of R(k, J) with the outermost copy cabled.
    #[value(name = "cabled-iterates", alias = "thmA")]
    CabledIterates,
}

fn knot_input(expr: Option<String>, seifert: Option<String>) -> Result<KnotInput> {
    match (expr, seifert) {
        (Some(e), None) => KnotInput::expr(&e),
        (None, Some(f)) => KnotInput::matrix_file(&f),
        _ => bail!("give either a knot expression or --seifert <file>"),
    }
}

fn require<T>(x: Option<T>, flag: &str) -> Result<T> {
    x.ok_or_else(|| anyhow!("{} is required here", flag))
}

fn run(cli: Cli) -> Result<Outcome> {
    if cli.jobs == 0 {
        bail!("--jobs must be positive");
    }
    match cli.command {
        Command::Invariants { expr, seifert, facts } => {
            let input = knot_input(expr, seifert)?;
            commands::invariants(&input, &commands::load_facts(facts.as_deref())?)
        }
        Command::ProfileDump { expr, seifert, facts } => {
            let input = knot_input(expr, seifert)?;
            commands::profile_dump(&input, &commands::load_facts(facts.as_deref())?)
        }
        Command::Prime { poly, primes } => {
            let f = parse_poly(&poly)?;
            let pair = match primes {
                Some(v) => {
                    let q: Vec<BigInt> =
                        v.iter().map(|s| s.parse().with_context(|| format!("bad prime {}", s))).collect::<Result<_>>()?;
                    Some((q[0].clone(), q[1].clone()))
                }
                None => None,
            };
            commands::prime(&f, pair)
        }
        Command::StronglyPrime { poly, search_bound } => commands::strongly_prime_cmd(&parse_poly(&poly)?, search_bound),
        Command::StronglyCoprime { f, g } => commands::strongly_coprime_cmd(&parse_poly(&f)?, &parse_poly(&g)?),
        Command::Catalan { x_max, y_max, a_max, b_max } => commands::catalan(x_max, y_max, a_max, b_max),
        Command::Legendrian { file, builtin, endpoints, j, k, companion_tb, companion_rot, iterate, genus } => {
            let src = match (builtin, file) {
                (Some(FrontBuiltin::TwistFront), None) => FrontSource::TwistFront { j: require(j, "--j")? },
                (Some(FrontBuiltin::QFront), None) => FrontSource::QFront {
                    k: require(k, "--k")?,
                    companion: companion_tb.map(|tb| LegInvariants::new(tb, companion_rot)),
                    iterate,
                },
                (Some(FrontBuiltin::Unknot), None) => FrontSource::Unknot,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path))?;
                    FrontSource::Text { text, endpoints }
                }
                _ => bail!("give either a front file or --builtin"),
            };
            commands::legendrian(&src, genus)
        }
        Command::Robust { op, k, p, j, facts } => {
            let kind = match op {
                OpArg::Q => OpKind::Q,
                OpArg::R => OpKind::R,
            };
            let ks = commands::parse_range(&k)?;
            let ps = commands::parse_positive_range(&p)?;
            let facts = commands::load_facts(Some(&facts))?;
            commands::robust(kind, &ks, &ps, &j, &facts, cli.jobs)
        }
        Command::Independence { family: FamilyArg::CabledIterates, k, n, p, m, relation_values, relation_bound, j, facts } => {
            let ks = commands::parse_range(&k)?;
            let ps = commands::parse_positive_range(&p)?;
            let facts = commands::load_facts(Some(&facts))?;
            let params = IndependenceParams {
                ks: &ks,
                n,
                ps: &ps,
                m,
                relation_values: relation_values.unwrap_or(m + 1),
                relation_bound,
                j: &j,
            };
            commands::independence(&params, &facts, cli.jobs)
        }
        Command::Filtration { expr, facts } => {
            let e = knotconc::concordance::parse_expr(&expr)?;
            commands::filtration(&e, &commands::load_facts(facts.as_deref())?)
        }
        Command::Kauffman { facts } => commands::kauffman(&commands::load_facts(facts.as_deref())?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(u8::from(o.refused))
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
