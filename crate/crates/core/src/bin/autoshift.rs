use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use autoshift::automatic::{bijective_presentation, AutomaticPair, Presentation};
use autoshift::compression::{compress, twist};
use autoshift::report::{
    self, AnalysisReport, CompressionView, DecomposeReport, DecompositionView, MinimizeReport, SubstitutionView,
    VerifyReport, DEFAULT_P_MAX,
};
use autoshift::rule::LocalRule;
use autoshift::{Error, LetterCoding, Substitution};

/// Constant-length substitution shifts: invariants, factors, automorphisms
/// and roots of the shift.
#[derive(Parser)]
#[command(name = "autoshift", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest period of fractional κ-values searched.
    #[arg(long, global = true, default_value_t = DEFAULT_P_MAX)]
    p_max: u32,
    /// Language window for decompositions, factor maps and injectivity.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// A presentation recorded by `minimize --json`, replayed on the input.
    #[arg(long, global = true)]
    replay: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, G(θ), automorphisms and roots of one substitution.
    Analyze {
        substitution: PathBuf,
        /// Also present the coded factor.
        #[arg(long)]
        coding: Option<PathBuf>,
    },
    /// Bijective presentation of a coded substitution shift.
    Minimize { substitution: PathBuf, coding: PathBuf },
    /// Check a local rule as an automorphism, a coded automorphism or a
    /// factor map.
    VerifyRule {
        substitution: PathBuf,
        rule: PathBuf,
        /// Claimed κ period; with `--k` the rule is checked for
        /// κ = k/(1 − r^p) (k = 0 for the kernel).
        #[arg(long, requires = "k")]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        k: Option<u64>,
        /// The rule acts on the shift coded by this file.
        #[arg(long, conflicts_with = "onto")]
        coding: Option<PathBuf>,
        /// The rule is a factor map onto this substitution shift.
        #[arg(long)]
        onto: Option<PathBuf>,
    },
    /// Twisted-compression decomposition, one per root of the shift.
    Decompose { substitution: PathBuf },
    /// The k-compression.
    Compress {
        substitution: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// The twist by a letter automorphism, given as letter images in
    /// alphabet order (`--tau "e f g h a b c d"`).
    Twist {
        substitution: PathBuf,
        #[arg(long)]
        tau: String,
    },
}

/// Exit statuses: 0 success, 1 mathematical rejection, 2 input error.
enum Failure {
    Rejected(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidSubstitution(_) | Error::UnknownLetter(_) => {
                Failure::Input(e.to_string())
            }
            e => Failure::Rejected(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: autoshift::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}:{m}", path.display())),
        f => f,
    })
}

fn load_substitution(path: &Path) -> Result<Substitution, Failure> {
    in_file(path, Substitution::parse(&read(path)?))
}

fn load_coding(path: &Path, theta: &Substitution) -> Result<LetterCoding, Failure> {
    in_file(path, LetterCoding::parse(&read(path)?, theta.alphabet()))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> String {
    if json {
        serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
    } else {
        text(value)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, accepted)) => {
            print!("{out}");
            if accepted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Rejected(m)) => {
            eprintln!("rejected: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.replay.is_some() && !matches!(cli.command, Command::Minimize { .. }) {
        return Err(Failure::Input("--replay only applies to minimize".into()));
    }
    match &cli.command {
        Command::Analyze { substitution, coding } => {
            let theta = load_substitution(substitution)?;
            let coding = coding.as_deref().map(|c| load_coding(c, &theta)).transpose()?;
            let r = report::analyze(&theta, coding.as_ref(), cli.p_max, cli.window)?;
            Ok((emit(cli.json, &r, analysis_text), true))
        }
        Command::Minimize { substitution, coding } => {
            let theta = load_substitution(substitution)?;
            let tau = load_coding(coding, &theta)?;
            let pair = AutomaticPair::new(theta, tau)?;
            if let Some(path) = &cli.replay {
                return replay(&pair, path, cli.json);
            }
            let p = bijective_presentation(&pair)?;
            let r = MinimizeReport::new(&pair, &p);
            Ok((emit(cli.json, &r, minimize_text), true))
        }
        Command::VerifyRule {
            substitution,
            rule,
            p,
            k,
            coding,
            onto,
        } => {
            let theta = load_substitution(substitution)?;
            let text = read(rule)?;
            let r = if let Some(c) = coding {
                let tau = load_coding(c, &theta)?;
                let g = in_file(rule, LocalRule::parse(&text, &tau.target, Some(&tau.target)))?;
                let pair = AutomaticPair::new(theta, tau)?;
                let radius = cli.window.unwrap_or(2 * pair.theta.size());
                report::verify_coded_automorphism(&pair, &g, radius)?
            } else if let Some(t) = onto {
                let target = load_substitution(t)?;
                let g = in_file(rule, LocalRule::parse(&text, theta.alphabet(), Some(target.alphabet())))?;
                report::verify_onto(&theta, &g, &target, cli.window.unwrap_or(8))?
            } else {
                let g = in_file(rule, LocalRule::parse(&text, theta.alphabet(), Some(theta.alphabet())))?;
                let claim = p.zip(*k);
                report::verify_automorphism(&theta, &g, claim, cli.p_max)?
            };
            let accepted = r.accepted;
            Ok((emit(cli.json, &r, verify_text), accepted))
        }
        Command::Decompose { substitution } => {
            let theta = load_substitution(substitution)?;
            let r = report::decompose(&theta, cli.p_max, cli.window)?;
            Ok((emit(cli.json, &r, decompose_text), true))
        }
        Command::Compress { substitution, k } => {
            let theta = load_substitution(substitution)?;
            if *k == 0 {
                return Err(Failure::Input("k must be at least 1".into()));
            }
            let c = CompressionView::from(&compress(&theta, *k)?);
            Ok((emit(cli.json, &c, |c| c.theta.rules.join("\n") + "\n"), true))
        }
        Command::Twist { substitution, tau } => {
            let theta = load_substitution(substitution)?;
            let map = report::parse_letter_map(tau, theta.alphabet()).map_err(|e| Failure::Input(format!("--tau: {e}")))?;
            let t = SubstitutionView::from(&twist(&theta, &map)?);
            Ok((emit(cli.json, &t, |t| t.rules.join("\n") + "\n"), true))
        }
    }
}

fn replay(pair: &AutomaticPair, path: &Path, json: bool) -> Outcome {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    // a whole minimize report, or just its presentation
    let inner = value.get("presentation").cloned().unwrap_or(value);
    let p: Presentation =
        serde_json::from_value(inner).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    p.replay(pair)?;
    let out = if json {
        serde_json::json!({ "replayed": true, "steps": p.steps.len() }).to_string() + "\n"
    } else {
        format!("replayed {} steps: presentation reproduced\n", p.steps.len())
    };
    Ok((out, true))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "unknown".into(), T::to_string)
}

fn substitution_text(out: &mut String, view: &SubstitutionView, indent: &str) {
    for line in &view.rules {
        let _ = writeln!(out, "{indent}{line}");
    }
}

fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let i = &r.invariants;
    let _ = writeln!(out, "substitution of length {} on {} letters", i.length, i.letters);
    substitution_text(&mut out, &r.input, "  ");
    let _ = writeln!(
        out,
        "primitive: {} (exponent {})",
        yes(i.primitive),
        opt(&i.primitivity_exponent)
    );
    let _ = writeln!(
        out,
        "injective: {}, strongly injective: {}",
        yes(i.injective),
        i.strongly_injective.map_or("unknown", yes)
    );
    let _ = writeln!(out, "height: {}", opt(&i.height));
    let _ = writeln!(out, "column number: {}", opt(&i.column_number));
    let sets: Vec<String> = i.minimal_sets.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
    let _ = writeln!(out, "minimal sets: {}", sets.join(" "));
    if let Some(g) = &r.group {
        let _ = writeln!(out, "G: {} of order {}: {}", g.name, g.order, g.elements.join(", "));
        for s in g.sigmas.iter().filter(|s| s.perm != "id") {
            let _ = writeln!(out, "  σ[{},{}] = {}", s.set, s.digit, s.perm);
        }
        let _ = writeln!(out, "centralizer of G: {}", g.centralizer.join(", "));
    }
    if let Some(k) = &r.kernel {
        let _ = writeln!(out, "radius-0 automorphisms: {}", k.topological.join(", "));
        if !k.measurable_only.is_empty() {
            let _ = writeln!(out, "measurable only: {}", k.measurable_only.join(", "));
        }
        let _ = writeln!(out, "reduced: {}", yes(k.reduced));
    }
    if let Some(a) = &r.automorphisms {
        let _ = writeln!(
            out,
            "automorphisms (p ≤ {}): kernel of order {}, κ classes {}",
            a.p_max,
            a.kernel_order,
            a.kappa_classes.join(" ")
        );
        if a.only_shift_powers {
            let _ = writeln!(out, "  only powers of the shift");
        }
        for root in &a.roots {
            let _ = writeln!(
                out,
                "  root with κ = {}: Φ^{} = σ ∘ {}{}",
                root.kappa,
                root.k,
                root.tau,
                if root.exact { " (exact)" } else { "" }
            );
        }
    }
    for d in &r.decompositions {
        decomposition_text(&mut out, d);
    }
    if let Some(f) = &r.factor {
        if let Some(p) = &f.presentation {
            let _ = writeln!(out, "bijective presentation (power {}):", p.power);
            substitution_text(&mut out, &p.theta_star, "  ");
        }
        if let Some(m) = &f.mef {
            let _ = writeln!(out, "maximal equicontinuous factor: Z_{} × Z/{}Z", m.r, m.h_bar);
        }
    }
    let _ = writeln!(out, "bounds: p ≤ {}, window {}", r.bounds.p_max, r.bounds.window);
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn decomposition_text(out: &mut String, d: &DecompositionView) {
    let _ = writeln!(
        out,
        "decomposition: k = {}, root κ = {}{}, τ̄ = {} (on input letters {})",
        d.k,
        d.root_kappa,
        if d.root_exact { " exact" } else { "" },
        d.tau_bar,
        d.tau_bar_on_input
    );
    let _ = writeln!(out, "  η:");
    substitution_text(out, &d.eta_reduced, "    ");
    let _ = writeln!(out, "  languages agree up to length {}", d.verified_window);
}

fn minimize_text(r: &MinimizeReport) -> String {
    let mut out = String::new();
    let p = &r.summary;
    let _ = writeln!(out, "power: {}", p.power);
    substitution_text(&mut out, &p.theta_star, "");
    let _ = writeln!(out, "coding:");
    for line in &p.coding {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(
        out,
        "coding injective with radius {} (checked up to {})",
        opt(&p.injectivity_radius),
        p.radius_bound
    );
    out
}

fn verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", if r.accepted { "accepted" } else { "rejected" });
    if let Some(k) = &r.kappa {
        let _ = writeln!(out, "κ = {k} (class {})", opt(&r.kappa_class));
    }
    if let Some(rel) = &r.relation {
        let _ = writeln!(out, "{rel}");
    }
    if let Some(l) = &r.lifted {
        let _ = writeln!(out, "letter automorphism: {l}, coding injective with radius {}", opt(&r.injectivity_radius));
    }
    if let Some([lo, hi]) = r.fibers {
        let _ = writeln!(out, "fibres of {lo} to {hi} words");
    }
    if let Some(m) = &r.message {
        let _ = writeln!(out, "{m}");
    }
    out
}

fn decompose_text(r: &DecomposeReport) -> String {
    let mut out = String::new();
    if r.decompositions.is_empty() {
        let _ = writeln!(out, "no roots of the shift: k = 1");
    }
    for d in &r.decompositions {
        decomposition_text(&mut out, d);
    }
    out
}
