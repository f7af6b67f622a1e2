mod format;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use braidrep::braid::{normal_form, pair_transport, shift_check, swap_word, words_equal, BraidWord};
use braidrep::cyclotomic::CycNumber;
use braidrep::fusion::{self, FusionRing};
use braidrep::image::{
    closure_enumerate, derived_series, rootbound_threshold, solvable_constancy_audit, sporadic_threshold, DEFAULT_CAP,
};
use braidrep::matrix::{Matrix, FLOAT_TOL};
use braidrep::projective::{anticommuting_fixture, degree_bound_predicate, lift, obstruction, ProjRep};
use braidrep::rep::{GenRep, RepSpec};
use braidrep::spectral::{
    eigenspace_translation_defect, generator_spectrum, intersection_sequence, is_weakly_convex, level_of, shift_operator,
    IntersectionSequence, LevelQuery,
};
use braidrep::subspace::{eigenspace, DEFAULT_RANK_TOL};
use braidrep::Error;

use format::{complex, cyc, real, Output};

#[derive(Parser)]
#[command(name = "braidrep", version, about = "Braid group representations: words, matrices, images, lifts and fusion growth")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Braid words and normal forms.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Representation families.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Finite images and thresholds.
    #[command(subcommand)]
    Image(ImageCmd),
    /// Projective lifting.
    #[command(subcommand)]
    Lift(LiftCmd),
    /// Eigenspace sequences and level windows.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Fusion rings and tensor power growth.
    #[command(subcommand)]
    Fusion(FusionCmd),
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Left normal form of a word.
    Nf {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether two words give the same braid.
    Eq {
        #[arg(long)]
        n: usize,
        #[arg(long, num_args = 1, required = true, allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// Check that conjugating x_i by x_1 ⋯ x_k gives x_{i+1}.
    ShiftCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
    },
    /// The word exchanging x_a and x_{a+2} under conjugation.
    Swap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
    },
    /// A word conjugating the pair (x_i, x_j) to (x_k, x_l).
    Transport {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Args, Clone)]
struct RepSource {
    /// Representation spec file.
    #[arg(long, conflicts_with_all = ["family", "factor"])]
    spec: Option<PathBuf>,
    /// Family name: burau, jones_tl or constant.
    #[arg(long)]
    family: Option<String>,
    /// Number of strands.
    #[arg(long)]
    n: Option<usize>,
    /// Parameter, as "zeta m k" or a rational.
    #[arg(long, alias = "t", alias = "param", allow_hyphen_values = true)]
    q: Option<String>,
    /// Two-row shape "a,b" for jones_tl.
    #[arg(long)]
    factor: Option<String>,
}

impl RepSource {
    fn build(&self) -> Result<GenRep, CliError> {
        if let Some(path) = &self.spec {
            let mut spec = RepSpec::parse(&read(path)?)?;
            if let Some(n) = self.n {
                spec.strands = n;
            }
            return Ok(spec.build()?);
        }
        let family = self.family.clone().ok_or_else(|| usage("give --spec FILE or --family"))?;
        let strands = self.n.ok_or_else(|| usage("--n is required with --family"))?;
        let parameter = self.q.as_deref().map(str::parse::<CycNumber>).transpose()?;
        let factor = match &self.factor {
            Some(f) => {
                let (a, b) = f.split_once(',').ok_or_else(|| usage("--factor takes 'a,b'"))?;
                let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| usage("--factor takes 'a,b'"));
                Some((parse(a)?, parse(b)?))
            }
            None => None,
        };
        Ok(RepSpec { family, strands, parameter, factor, rows: Vec::new() }.build()?)
    }
}

#[derive(Subcommand)]
enum RepCmd {
    /// Build a representation and print its generator images.
    Build(RepSource),
    /// Verify the braid relations and report unitarity.
    Check(RepSource),
    /// Evaluate a braid word.
    Eval {
        #[command(flatten)]
        source: RepSource,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Report whether all generators act identically.
    Constancy(RepSource),
}

#[derive(Subcommand)]
enum ImageCmd {
    /// Enumerate the finite image of an exact representation.
    Enum {
        #[command(flatten)]
        source: RepSource,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// List every element, sorted by canonical key.
        #[arg(long)]
        elements: bool,
    },
    /// Derived series, solvability and classification candidates.
    Report {
        #[command(flatten)]
        source: RepSource,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Strand thresholds from a group dimension or from k and |H|.
    Thresholds {
        #[arg(long)]
        dim: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        h: Option<u64>,
    },
}

#[derive(Args, Clone)]
struct ProjSource {
    #[command(flatten)]
    rep: RepSource,
    /// Use the anticommuting fixture on this many strands instead of a representation.
    #[arg(long, conflicts_with_all = ["spec", "family"])]
    anticommuting: Option<usize>,
}

impl ProjSource {
    fn build(&self) -> Result<ProjRep, CliError> {
        match self.anticommuting {
            Some(n) => Ok(anticommuting_fixture(n)?),
            None => Ok(ProjRep::projectivize(&self.rep.build()?)),
        }
    }
}

#[derive(Subcommand)]
enum LiftCmd {
    /// The far-commutator sign.
    Obstruction(ProjSource),
    /// Lift to a linear representation and print its images.
    Apply(ProjSource),
}

#[derive(Subcommand)]
enum SpectralCmd {
    /// Intersection sequences of eigenspaces under the shift, or a given sequence.
    Convexity {
        #[command(flatten)]
        source: RepSource,
        /// Explicit sequence d_0 d_1 … d_K to test instead of a representation.
        #[arg(long, conflicts_with_all = ["spec", "family"])]
        dims: Option<String>,
        /// Largest index K (defaults to the degree plus one).
        #[arg(long = "kmax")]
        k_max: Option<usize>,
    },
    /// Compare eigenspaces of x_k with shifted eigenspaces of x_1.
    Translation {
        #[command(flatten)]
        source: RepSource,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Classify a degree into level windows.
    Level {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Args, Clone)]
struct RingSource {
    /// Fusion ring file.
    #[arg(long, conflicts_with = "builtin")]
    ring: Option<PathBuf>,
    /// fibonacci, ising, rep_s3 or Z_n.
    #[arg(long)]
    builtin: Option<String>,
}

impl RingSource {
    fn build(&self) -> Result<FusionRing, CliError> {
        match (&self.ring, &self.builtin) {
            (Some(path), _) => Ok(fusion::parse_ring(&read(path)?)?),
            (None, Some(name)) => Ok(fusion::builtin(name)?),
            (None, None) => Err(usage("give --ring FILE or --builtin NAME")),
        }
    }
}

#[derive(Subcommand)]
enum FusionCmd {
    /// Validate a ring and summarize it.
    Load(RingSource),
    /// Perron–Frobenius dimensions.
    Pf {
        #[command(flatten)]
        source: RingSource,
        #[arg(long)]
        i: Option<String>,
    },
    /// Multiplicity of X_j in X_i^n for n = 1..nmax.
    Hom {
        #[command(flatten)]
        source: RingSource,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Dimension of End(X_i^n) for n = 1..nmax.
    End {
        #[command(flatten)]
        source: RingSource,
        #[arg(long)]
        i: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Check multiplicities against D^n.
    Bound {
        #[command(flatten)]
        source: RingSource,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        nmax: usize,
    },
}

enum CliError {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn usage(msg: &str) -> CliError {
    CliError::Usage(msg.to_string())
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))
}

fn word(n: usize, text: &str) -> Result<BraidWord, CliError> {
    Ok(BraidWord::parse(n, text)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe_rep(out: &mut Output, rep: &GenRep) {
    let p = rep.params();
    out.field("family", &p.family);
    if let Some(x) = &p.parameter {
        out.field("param", cyc(x));
    }
    if let Some((a, b)) = p.factor {
        out.field("factor", format!("{},{}", a, b));
    }
    out.field("strands", rep.strands());
    out.field("degree", rep.degree());
    out.field("mode", if rep.is_exact() { "exact" } else { "float" });
    out.field("unitary", yes_no(rep.is_unitary()));
}

fn print_images(out: &mut Output, images: &[Matrix]) {
    for (k, m) in images.iter().enumerate() {
        out.matrix(&format!("x{}", k + 1), m);
    }
}

fn run_braid(cmd: BraidCmd, out: &mut Output) -> Result<(), CliError> {
    match cmd {
        BraidCmd::Nf { n, word: w } => {
            let nf = normal_form(&word(n, &w)?);
            if out.is_kv() {
                out.field("infimum", nf.infimum());
                out.field("canonical_length", nf.canonical_length());
                out.field("word", nf.to_word());
            } else {
                out.raw(&nf.to_string());
            }
        }
        BraidCmd::Eq { n, word: ws } => {
            if ws.len() != 2 {
                return Err(usage("eq takes exactly two --word arguments"));
            }
            let same = words_equal(&word(n, &ws[0])?, &word(n, &ws[1])?)?;
            if out.is_kv() {
                out.field("equal", same);
            } else {
                out.result("equal", if same { "equal" } else { "not equal" });
            }
        }
        BraidCmd::ShiftCheck { n, k, i } => out.result("holds", shift_check(k, i, n)?),
        BraidCmd::Swap { n, a } => out.result("word", swap_word(a, n)?),
        BraidCmd::Transport { n, i, j, k, l } => {
            let z = pair_transport(i, j, k, l, n)?;
            out.result("word", if z.is_empty() { "identity".to_string() } else { z.to_string() });
        }
    }
    Ok(())
}

fn run_rep(cmd: RepCmd, out: &mut Output) -> Result<(), CliError> {
    match cmd {
        RepCmd::Build(src) => {
            let rep = src.build()?;
            describe_rep(out, &rep);
            print_images(out, rep.images());
        }
        RepCmd::Check(src) => {
            let rep = src.build()?;
            out.field("relations", if rep.verify_braid_relations(FLOAT_TOL) { "ok" } else { "fail" });
            out.field("unitary", yes_no(rep.is_unitary()));
            out.field("constant", yes_no(rep.is_constant()));
        }
        RepCmd::Eval { source, word: w } => {
            let rep = source.build()?;
            let m = rep.evaluate_word(&word(rep.strands(), &w)?)?;
            out.matrix("image", &m);
        }
        RepCmd::Constancy(src) => {
            let rep = src.build()?;
            let constant = rep.is_constant();
            if out.is_kv() {
                out.field("constant", constant);
            } else {
                out.result("constant", if constant { "constant" } else { "nonconstant" });
            }
            match rep.commuting_consecutive_pair() {
                Some(i) => out.field("commuting", format!("x{} x{}", i, i + 1)),
                None => out.field("commuting", "none"),
            }
        }
    }
    Ok(())
}

fn run_image(cmd: ImageCmd, out: &mut Output) -> Result<(), CliError> {
    match cmd {
        ImageCmd::Enum { source, cap, elements } => {
            let rep = source.build()?;
            let g = closure_enumerate(&rep, cap)?;
            out.field("order", g.order());
            out.field("radius", g.radius());
            out.field("degree", g.degree());
            if elements {
                for (k, e) in g.elements().into_iter().enumerate() {
                    out.matrix(&format!("g{}", k), &Matrix::Exact(e));
                }
            }
        }
        ImageCmd::Report { source, cap } => {
            let rep = source.build()?;
            let g = closure_enumerate(&rep, cap)?;
            let report = derived_series(&g)?;
            if out.is_kv() {
                out.raw(&report.to_kv());
            } else {
                out.raw(&report.to_string());
            }
            let audit = solvable_constancy_audit(&rep, &report);
            out.field("audit", if audit.passed { "pass" } else { "fail" });
            if let Some(note) = audit.note {
                out.field("note", note);
            }
        }
        ImageCmd::Thresholds { dim, k, h } => {
            if dim.is_none() && (k.is_none() || h.is_none()) {
                return Err(usage("give --dim, or both --k and --h"));
            }
            if let Some(d) = dim {
                out.field("rootbound", rootbound_threshold(d));
            }
            if let (Some(k), Some(h)) = (k, h) {
                out.field("sporadic", sporadic_threshold(k, h));
            }
        }
    }
    Ok(())
}

fn run_lift(cmd: LiftCmd, out: &mut Output) -> Result<(), CliError> {
    match cmd {
        LiftCmd::Obstruction(src) => {
            let p = src.build()?;
            let sign = obstruction(&p)?;
            out.field("obstruction", if sign > 0 { "+1" } else { "-1" });
            out.field("degree_bound", degree_bound_predicate(&p)?);
        }
        LiftCmd::Apply(src) => {
            let p = src.build()?;
            let rep = lift(&p)?;
            out.field("strands", rep.strands());
            out.field("degree", rep.degree());
            out.field("mode", if rep.is_exact() { "exact" } else { "float" });
            print_images(out, rep.images());
        }
    }
    Ok(())
}

fn sequence_line(out: &mut Output, s: &IntersectionSequence) {
    out.field("dims", s);
    out.field("convex", yes_no(is_weakly_convex(s)));
}

fn run_spectral(cmd: SpectralCmd, out: &mut Output) -> Result<(), CliError> {
    match cmd {
        SpectralCmd::Convexity { source, dims, k_max } => {
            if let Some(text) = dims {
                let dims = text
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| usage("--dims takes non-negative integers")))
                    .collect::<Result<Vec<_>, _>>()?;
                if dims.is_empty() {
                    return Err(usage("--dims is empty"));
                }
                sequence_line(out, &IntersectionSequence::from_dims(dims[0], dims));
                return Ok(());
            }
            let rep = source.build()?;
            let t = shift_operator(&rep)?;
            let gens = rep.unitary_images().ok_or(Error::NotUnitary)?;
            let k_max = k_max.unwrap_or(rep.degree() + 1);
            for lambda in generator_spectrum(&rep)? {
                let w = eigenspace(&gens[0], lambda, 1e-7)?;
                let s = intersection_sequence(&w, &t, k_max, DEFAULT_RANK_TOL)?;
                out.field("lambda", complex(lambda));
                sequence_line(out, &s);
            }
        }
        SpectralCmd::Translation { source, tol } => {
            let rep = source.build()?;
            let mut all = true;
            for lambda in generator_spectrum(&rep)? {
                let d = eigenspace_translation_defect(&rep, lambda)?;
                all &= d < tol;
                out.field("lambda", complex(lambda));
                out.field("defect", real(d));
            }
            out.field("translation", if all { "pass" } else { "fail" });
        }
        SpectralCmd::Level { n, m, l } => out.result("level", level_of(&LevelQuery::new(n, m, l)?)),
    }
    Ok(())
}

fn run_fusion(cmd: FusionCmd, out: &mut Output) -> Result<(), CliError> {
    match cmd {
        FusionCmd::Load(src) => {
            let ring = src.build()?;
            out.field("rank", ring.rank());
            out.field("labels", ring.labels().join(" "));
            out.field("unit", ring.unit());
            let duals: Vec<String> = (0..ring.rank()).map(|i| ring.dual(i).to_string()).collect();
            out.field("duals", duals.join(" "));
            out.field("self_dual", yes_no(ring.is_self_dual()));
            out.field("global_dim", real(fusion::global_dim_bound(&ring)?));
        }
        FusionCmd::Pf { source, i } => {
            let ring = source.build()?;
            match i {
                Some(i) => {
                    let i = ring.index_of(&i)?;
                    out.result("pf", real(fusion::pf_dimension(&ring, i, fusion::PF_TOL)?));
                }
                None => {
                    for (k, label) in ring.labels().iter().enumerate() {
                        out.field(label, real(fusion::pf_dimension(&ring, k, fusion::PF_TOL)?));
                    }
                    out.field("D", real(fusion::global_dim_bound(&ring)?));
                }
            }
        }
        FusionCmd::Hom { source, i, j, nmax } => {
            let ring = source.build()?;
            let (i, j) = (ring.index_of(&i)?, ring.index_of(&j)?);
            for n in 1..=nmax {
                out.result(&format!("n{}", n), format!("{} {}", n, fusion::hom_dim(&ring, j, i, n)?));
            }
        }
        FusionCmd::End { source, i, nmax } => {
            let ring = source.build()?;
            let i = ring.index_of(&i)?;
            for n in 1..=nmax {
                out.result(&format!("n{}", n), format!("{} {}", n, fusion::end_dim(&ring, i, n)?));
            }
        }
        FusionCmd::Bound { source, i, j, nmax } => {
            let ring = source.build()?;
            let (i, j) = (ring.index_of(&i)?, ring.index_of(&j)?);
            let holds = fusion::growth_bound_check(&ring, i, j, nmax)?;
            out.field("D", real(fusion::global_dim_bound(&ring)?));
            out.field("bound", if holds { "holds" } else { "fails" });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::new(cli.format == Format::Kv);
    let result = match cli.command {
        Command::Braid(c) => run_braid(c, &mut out),
        Command::Rep(c) => run_rep(c, &mut out),
        Command::Image(c) => run_image(c, &mut out),
        Command::Lift(c) => run_lift(c, &mut out),
        Command::Spectral(c) => run_spectral(c, &mut out),
        Command::Fusion(c) => run_fusion(c, &mut out),
    };
    match result {
        Ok(()) => {
            print!("{}", out.render());
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(e)) => {
            eprintln!("{}: {}", e.name(), e);
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("IoError: {}", msg);
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {}", msg);
            ExitCode::from(2)
        }
    }
}
