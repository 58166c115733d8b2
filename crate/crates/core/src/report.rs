//! Plain-data reports for the command-line front end. Every type here
//! derives a JSON schema; the published schemas live in `schema/`.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::alphabet::{cycle_notation, Alphabet, LetterMap};
use crate::automatic::{
    bijective_presentation, mef_descriptor, verify_factor_map, AutomaticPair, MefDescriptor, Presentation,
};
use crate::automorphism::kappa::KappaValue;
use crate::automorphism::kernel::essential_centralizer_roots;
use crate::automorphism::perm::{perm_notation, PermGroup, DEFAULT_DEGREE_CAP};
use crate::automorphism::search::{search_in, AutomorphismSearch};
use crate::automorphism::verify::{
    kappa_in, recenter, verify_factor_automorphism, verify_kappa_in, verify_kernel_in, VerifyContext,
};
use crate::automorphism::GroupData;
use crate::compression::Compression;
use crate::error::{Error, Result};
use crate::fixed_points::{height, is_strongly_injective};
use crate::language::primitivity_exponent;
use crate::pair_graph::minimal_sets;
use crate::roots::{decompose_with, default_window, root_order, roots_from_search, RootsDecomposition};
use crate::rule::LocalRule;
use crate::substitution::{LetterCoding, Substitution};

pub const DEFAULT_P_MAX: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SubstitutionView {
    pub alphabet: Vec<String>,
    pub length: usize,
    /// One `a -> image` line per letter.
    pub rules: Vec<String>,
}

impl From<&Substitution> for SubstitutionView {
    fn from(theta: &Substitution) -> Self {
        SubstitutionView {
            alphabet: theta.alphabet().names().to_vec(),
            length: theta.length(),
            rules: theta.to_string().lines().map(str::to_string).collect(),
        }
    }
}

fn coding_lines(tau: &LetterCoding) -> Vec<String> {
    tau.to_string().lines().map(str::to_string).collect()
}

fn rule_lines(rule: &LocalRule) -> Vec<String> {
    rule.to_string().lines().map(str::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Bounds {
    pub p_max: u32,
    /// Language window for decompositions and factor maps.
    pub window: usize,
    /// Degree up to which centralizers are computed by brute force.
    pub degree_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Invariants {
    pub length: usize,
    pub letters: usize,
    pub primitive: bool,
    pub primitivity_exponent: Option<usize>,
    pub injective: bool,
    pub strongly_injective: Option<bool>,
    pub height: Option<usize>,
    pub column_number: Option<usize>,
    pub minimal_sets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SigmaView {
    /// The minimal set, e.g. `{a,b}`.
    pub set: String,
    pub digit: usize,
    /// Cycle notation on `1..=c`.
    pub perm: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct GroupView {
    pub order: usize,
    pub name: String,
    pub sigmas: Vec<SigmaView>,
    pub elements: Vec<String>,
    pub centralizer: Vec<String>,
}

fn elements(group: &PermGroup) -> Vec<String> {
    group.elements.iter().map(|e| perm_notation(e)).collect()
}

/// Radius-0 automorphisms against the centralizer of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct KernelView {
    /// Radius-0 automorphisms in cycle notation on letters.
    pub topological: Vec<String>,
    /// Centralizer elements with no radius-0 automorphism above them.
    pub measurable_only: Vec<String>,
    pub reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AutomorphismView {
    pub kappa: String,
    pub left: usize,
    pub right: usize,
    pub rule: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct RootView {
    pub k: usize,
    pub kappa: String,
    /// `Φ^k = σ ∘ τ`; exact when `τ` is the identity.
    pub tau: String,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AutomorphismsReport {
    pub p_max: u32,
    /// Automorphisms with `κ = 0`.
    pub kernel_order: usize,
    pub kappa_classes: Vec<String>,
    pub only_shift_powers: bool,
    pub representatives: Vec<AutomorphismView>,
    pub roots: Vec<RootView>,
}

fn class_string((num, den): (u128, u128)) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

impl AutomorphismsReport {
    pub fn new(theta: &Substitution, search: &AutomorphismSearch) -> Result<Self> {
        let k = root_order(search);
        let roots = if k > 1 {
            roots_from_search(theta, search, k)?
                .into_iter()
                .map(|r| RootView {
                    k,
                    kappa: r.kappa.to_string(),
                    tau: cycle_notation(&r.tau, theta.alphabet()),
                    exact: r.is_exact(),
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(AutomorphismsReport {
            p_max: search.p_max,
            kernel_order: search.kernel.len(),
            kappa_classes: search.kappa_classes().into_iter().map(class_string).collect(),
            only_shift_powers: search.only_shift_powers(),
            representatives: search
                .kernel
                .iter()
                .chain(&search.fractional)
                .map(|a| AutomorphismView {
                    kappa: a.kappa.to_string(),
                    left: a.rule.left,
                    right: a.rule.right,
                    rule: rule_lines(&a.rule),
                })
                .collect(),
            roots,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CompressionView {
    pub k: usize,
    /// Block letter names in alphabet order, each the block it stands for.
    pub blocks: Vec<String>,
    pub theta: SubstitutionView,
}

impl From<&Compression> for CompressionView {
    fn from(c: &Compression) -> Self {
        CompressionView {
            k: c.k,
            blocks: c.theta.alphabet().names().to_vec(),
            theta: (&c.theta).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DecompositionView {
    pub k: usize,
    /// Power of the substitution the root was normalized against.
    pub n: usize,
    pub root_kappa: String,
    pub root_exact: bool,
    pub root_rule: Vec<String>,
    pub eta: SubstitutionView,
    pub eta_reduced: SubstitutionView,
    pub compression: CompressionView,
    /// `τ̄` on the block letters.
    pub tau_bar: String,
    /// `τ̄` carried back to the input letters.
    pub tau_bar_on_input: String,
    /// Pairs `[input letter, block letter]`.
    pub bijection: Vec<[String; 2]>,
    pub verified_window: usize,
}

impl DecompositionView {
    pub fn new(theta: &Substitution, d: &RootsDecomposition) -> Self {
        let blocks = d.compression.theta.alphabet();
        let back: LetterMap = (0..d.bijection.len())
            .map(|a| {
                d.bijection
                    .iter()
                    .position(|&b| b == d.tau_bar[d.bijection[a]])
                    .expect("bijection")
            })
            .collect();
        DecompositionView {
            k: d.k,
            n: d.n,
            root_kappa: d.root.kappa.to_string(),
            root_exact: d.root.is_exact(),
            root_rule: rule_lines(&d.root.rule),
            eta: (&d.eta).into(),
            eta_reduced: (&d.eta_reduced).into(),
            compression: (&d.compression).into(),
            tau_bar: cycle_notation(&d.tau_bar, blocks),
            tau_bar_on_input: cycle_notation(&back, theta.alphabet()),
            bijection: theta
                .alphabet()
                .letters()
                .map(|a| [theta.alphabet().name(a).to_string(), blocks.name(d.bijection[a]).to_string()])
                .collect(),
            verified_window: d.verified_window,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct PresentationView {
    pub power: usize,
    pub theta_star: SubstitutionView,
    pub coding: Vec<String>,
    pub injectivity_radius: Option<usize>,
    pub radius_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct FactorReport {
    pub coding: Vec<String>,
    pub presentation: Option<PresentationView>,
    pub mef: Option<MefDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AnalysisReport {
    pub input: SubstitutionView,
    pub bounds: Bounds,
    pub invariants: Invariants,
    pub group: Option<GroupView>,
    pub kernel: Option<KernelView>,
    pub automorphisms: Option<AutomorphismsReport>,
    pub factor: Option<FactorReport>,
    pub decompositions: Vec<DecompositionView>,
    /// Steps that could not run, and why.
    pub notes: Vec<String>,
}

/// Runs every analysis that applies; failures become notes.
pub fn analyze(theta: &Substitution, coding: Option<&LetterCoding>, p_max: u32, window: Option<usize>) -> Result<AnalysisReport> {
    let window = window.unwrap_or_else(|| default_window(theta));
    let mut notes = Vec::new();
    let mut note = |what: &str, e: &Error| notes.push(format!("{what}: {e}"));
    let exponent = primitivity_exponent(theta);
    let primitive = exponent.is_some();
    let mut invariants = Invariants {
        length: theta.length(),
        letters: theta.size(),
        primitive,
        primitivity_exponent: exponent,
        injective: theta.is_injective(),
        strongly_injective: None,
        height: None,
        column_number: None,
        minimal_sets: Vec::new(),
    };
    let mut report = AnalysisReport {
        input: theta.into(),
        bounds: Bounds {
            p_max,
            window,
            degree_cap: DEFAULT_DEGREE_CAP,
        },
        invariants: invariants.clone(),
        group: None,
        kernel: None,
        automorphisms: None,
        factor: None,
        decompositions: Vec::new(),
        notes: Vec::new(),
    };
    if !primitive {
        notes.push("not primitive: partial analysis only".into());
        report.notes = notes;
        return Ok(report);
    }
    match is_strongly_injective(theta) {
        Ok(v) => invariants.strongly_injective = Some(v),
        Err(e) => note("strong injectivity", &e),
    }
    match height(theta) {
        Ok(h) => invariants.height = Some(h),
        Err(e) => note("height", &e),
    }
    match minimal_sets(theta) {
        Ok(ms) => {
            invariants.column_number = Some(ms.c);
            invariants.minimal_sets = ms
                .sets
                .iter()
                .map(|s| s.iter().map(|&a| theta.alphabet().name(a).to_string()).collect())
                .collect();
        }
        Err(e) => note("minimal sets", &e),
    }
    match GroupData::new(theta) {
        Ok(data) => {
            let sets = data.minimal.tilde_theta.alphabet();
            let centralizer = data.group.centralizer(DEFAULT_DEGREE_CAP);
            if let Err(e) = &centralizer {
                note("centralizer", e);
            }
            report.group = Some(GroupView {
                order: data.group.order(),
                name: data.group.describe(),
                sigmas: data
                    .sigmas
                    .iter()
                    .map(|s| SigmaView {
                        set: sets.name(s.set).to_string(),
                        digit: s.digit,
                        perm: perm_notation(&s.perm),
                    })
                    .collect(),
                elements: elements(&data.group),
                centralizer: centralizer.as_ref().map(elements).unwrap_or_default(),
            });
        }
        Err(e) => note("G", &e),
    }
    if theta.is_injective() {
        match essential_centralizer_roots(theta) {
            Ok(ec) => {
                report.kernel = Some(KernelView {
                    topological: ec.topological.iter().map(|t| cycle_notation(t, theta.alphabet())).collect(),
                    measurable_only: ec.measurable_only.iter().map(|p| perm_notation(p)).collect(),
                    reduced: ec.reduced,
                })
            }
            Err(e) => note("radius-0 automorphisms", &e),
        }
    }
    match VerifyContext::new(theta).and_then(|ctx| search_in(&ctx, p_max)) {
        Ok(search) => {
            match AutomorphismsReport::new(theta, &search) {
                Ok(a) => report.automorphisms = Some(a),
                Err(e) => note("automorphisms", &e),
            }
            match decompose_with(theta, &search, Some(window)) {
                Ok(ds) => report.decompositions = ds.iter().map(|d| DecompositionView::new(theta, d)).collect(),
                Err(e) => note("decomposition", &e),
            }
        }
        Err(e) => note("automorphism search", &e),
    }
    if let Some(tau) = coding {
        let pair = AutomaticPair::new(theta.clone(), tau.clone())?;
        let presentation = match bijective_presentation(&pair) {
            Ok(p) => Some(PresentationView::from(&p)),
            Err(e) => {
                note("bijective presentation", &e);
                None
            }
        };
        let mef = match mef_descriptor(&pair) {
            Ok(m) => Some(m),
            Err(e) => {
                note("maximal equicontinuous factor", &e);
                None
            }
        };
        report.factor = Some(FactorReport {
            coding: coding_lines(tau),
            presentation,
            mef,
        });
    }
    report.invariants = invariants;
    report.notes = notes;
    Ok(report)
}

impl From<&Presentation> for PresentationView {
    fn from(p: &Presentation) -> Self {
        PresentationView {
            power: p.power,
            theta_star: (&p.theta_star).into(),
            coding: coding_lines(&p.tau_star),
            injectivity_radius: p.injectivity_radius,
            radius_bound: p.radius_bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct MinimizeReport {
    pub input: SubstitutionView,
    pub coding: Vec<String>,
    pub summary: PresentationView,
    /// The full presentation, replayable with `--replay`.
    pub presentation: Presentation,
}

impl MinimizeReport {
    pub fn new(pair: &AutomaticPair, p: &Presentation) -> Self {
        MinimizeReport {
            input: (&pair.theta).into(),
            coding: coding_lines(&pair.tau),
            summary: p.into(),
            presentation: p.clone(),
        }
    }
}

/// `Φ^b = σ^m ∘ K` for `κ(Φ) ≡ a/b`, with `K` in the kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Relation {
    pub power: usize,
    pub shift: i64,
    /// `K` in cycle notation when it has radius 0.
    pub kernel_letter_map: Option<String>,
    /// Order of `K`, when at most the cap.
    pub kernel_order: Option<usize>,
    pub order_cap: usize,
}

impl Relation {
    pub fn describe(&self) -> String {
        let k = self.kernel_letter_map.clone().unwrap_or_else(|| "K".into());
        let shift = match self.shift {
            0 => String::new(),
            1 => "σ ∘ ".into(),
            m => format!("σ^{m} ∘ "),
        };
        format!("Φ^{} = {shift}{k}", self.power)
    }
}

pub fn relation(theta: &Substitution, rule: &LocalRule, kappa: &KappaValue, order_cap: usize) -> Result<Relation> {
    let (num, den) = kappa.as_rational();
    // κ(Φ^b) = b·κ(Φ) = a
    let power = den as usize;
    let shift = num as i64;
    let p = rule.pow(power, theta)?;
    let m = shift.unsigned_abs() as usize;
    let wide = p.widen(p.left + m, p.right + m, theta)?;
    let k = recenter(&wide, shift as isize, theta)?.trim(theta)?;
    let identity = LocalRule::identity(theta.alphabet());
    let mut acc = k.clone();
    let mut kernel_order = None;
    for n in 1..=order_cap {
        if acc.equivalent(&identity, theta)? {
            kernel_order = Some(n);
            break;
        }
        acc = acc.then(&k, theta)?.trim(theta)?;
    }
    Ok(Relation {
        power,
        shift,
        kernel_letter_map: k.letter_map(theta)?.map(|t| cycle_notation(&t, theta.alphabet())),
        kernel_order,
        order_cap,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// An automorphism of the substitution shift.
    Automorphism,
    /// An automorphism of a coded shift, checked through the coding.
    FactorAutomorphism,
    /// A factor map onto another substitution shift.
    FactorMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub accepted: bool,
    pub kappa: Option<String>,
    pub kappa_class: Option<String>,
    pub relation: Option<String>,
    pub relation_detail: Option<Relation>,
    /// The letter automorphism lifted from a coded rule.
    pub lifted: Option<String>,
    pub injectivity_radius: Option<usize>,
    pub onto: Option<bool>,
    pub fibers: Option<[usize; 2]>,
    pub bounds: Bounds,
    pub message: Option<String>,
}

impl VerifyReport {
    fn empty(mode: VerifyMode, bounds: Bounds) -> Self {
        VerifyReport {
            mode,
            accepted: false,
            kappa: None,
            kappa_class: None,
            relation: None,
            relation_detail: None,
            lifted: None,
            injectivity_radius: None,
            onto: None,
            fibers: None,
            bounds,
            message: None,
        }
    }
}

const ORDER_CAP: usize = 24;

/// Checks a rule as an automorphism, with a claimed `κ = k/(1 − r^p)`
/// when `claim` is given and with `κ` searched up to `p_max` otherwise.
/// Verification failures are rejections, not errors.
pub fn verify_automorphism(theta: &Substitution, rule: &LocalRule, claim: Option<(u32, u64)>, p_max: u32) -> Result<VerifyReport> {
    let bounds = Bounds {
        p_max,
        window: 0,
        degree_cap: DEFAULT_DEGREE_CAP,
    };
    let mut report = VerifyReport::empty(VerifyMode::Automorphism, bounds);
    rule.check_total(theta).map_err(|e| match e {
        Error::RuleNotTotal { .. } => {
            let missing: Vec<String> = rule
                .missing(theta)
                .unwrap_or_default()
                .iter()
                .map(|w| theta.alphabet().render(w))
                .collect();
            Error::pre(format!("rule has no output on {}", missing.join(", ")))
        }
        e => e,
    })?;
    let ctx = VerifyContext::new(theta)?;
    let kappa = match claim {
        Some((p, k)) => {
            let ok = if k == 0 {
                verify_kernel_in(&ctx, rule)?
            } else {
                verify_kappa_in(&ctx, rule, p, k)?
            };
            if !ok {
                report.message = Some(format!("rule does not commute as claimed with κ = {k}/(1 − r^{p})"));
                return Ok(report);
            }
            kappa_in(&ctx, rule, p.max(1))?
        }
        None => match kappa_in(&ctx, rule, p_max) {
            Ok(k) => k,
            Err(Error::Verification(m)) => {
                report.message = Some(m);
                return Ok(report);
            }
            Err(e) => return Err(e),
        },
    };
    let rel = relation(theta, rule, &kappa, ORDER_CAP)?;
    report.accepted = true;
    report.kappa = Some(kappa.to_string());
    report.kappa_class = Some(class_string(kappa.class()));
    report.relation = Some(rel.describe());
    report.relation_detail = Some(rel);
    Ok(report)
}

pub fn verify_coded_automorphism(pair: &AutomaticPair, rule: &LocalRule, max_radius: usize) -> Result<VerifyReport> {
    let bounds = Bounds {
        p_max: 0,
        window: max_radius,
        degree_cap: DEFAULT_DEGREE_CAP,
    };
    let mut report = VerifyReport::empty(VerifyMode::FactorAutomorphism, bounds);
    match verify_factor_automorphism(pair, rule, max_radius) {
        Ok(found) => {
            report.accepted = true;
            report.lifted = Some(cycle_notation(&found.psi, pair.theta.alphabet()));
            report.injectivity_radius = Some(found.injectivity_radius);
        }
        Err(Error::Verification(m)) => report.message = Some(m),
        Err(e) => return Err(e),
    }
    Ok(report)
}

pub fn verify_onto(theta: &Substitution, rule: &LocalRule, target: &Substitution, width: usize) -> Result<VerifyReport> {
    let bounds = Bounds {
        p_max: 0,
        window: width,
        degree_cap: DEFAULT_DEGREE_CAP,
    };
    let mut report = VerifyReport::empty(VerifyMode::FactorMap, bounds);
    match verify_factor_map(theta, rule, target, width) {
        Ok(check) => {
            report.accepted = check.onto;
            report.onto = Some(check.onto);
            report.fibers = Some([check.fibers.0, check.fibers.1]);
            if !check.onto {
                report.message = Some("some target words have no preimage".into());
            }
        }
        Err(Error::Verification(m)) => report.message = Some(m),
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DecomposeReport {
    pub input: SubstitutionView,
    pub bounds: Bounds,
    /// `κ(Aut) = ⟨1/k⟩`; 1 when there are no roots of the shift.
    pub k: usize,
    pub decompositions: Vec<DecompositionView>,
}

pub fn decompose(theta: &Substitution, p_max: u32, window: Option<usize>) -> Result<DecomposeReport> {
    let window = window.unwrap_or_else(|| default_window(theta));
    let search = search_in(&VerifyContext::new(theta)?, p_max)?;
    let ds = decompose_with(theta, &search, Some(window))?;
    Ok(DecomposeReport {
        input: theta.into(),
        bounds: Bounds {
            p_max,
            window,
            degree_cap: DEFAULT_DEGREE_CAP,
        },
        k: root_order(&search),
        decompositions: ds.iter().map(|d| DecompositionView::new(theta, d)).collect(),
    })
}

/// Letter images in alphabet order, separated by spaces: `e f g h a b c d`.
pub fn parse_letter_map(text: &str, alphabet: &Alphabet) -> Result<LetterMap> {
    let map = text
        .split_whitespace()
        .enumerate()
        .map(|(i, name)| {
            alphabet
                .letter(name)
                .ok_or_else(|| Error::parse(1, i + 1, format!("unknown letter {name:?}")))
        })
        .collect::<Result<LetterMap>>()?;
    if map.len() != alphabet.len() {
        return Err(Error::parse(1, 1, format!("expected {} letters, found {}", alphabet.len(), map.len())));
    }
    Ok(map)
}

/// Every report type with its schema file name.
pub fn schemas() -> Vec<(&'static str, serde_json::Value)> {
    vec![
        ("analysis_report", serde_json::to_value(schemars::schema_for!(AnalysisReport)).unwrap()),
        ("minimize_report", serde_json::to_value(schemars::schema_for!(MinimizeReport)).unwrap()),
        ("verify_report", serde_json::to_value(schemars::schema_for!(VerifyReport)).unwrap()),
        ("decompose_report", serde_json::to_value(schemars::schema_for!(DecomposeReport)).unwrap()),
        ("compression", serde_json::to_value(schemars::schema_for!(CompressionView)).unwrap()),
        ("substitution", serde_json::to_value(schemars::schema_for!(SubstitutionView)).unwrap()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn salvaged_relation_carries_the_involution() {
        let t = fixtures::substitution("salvaged").unwrap();
        let rule = fixtures::rule("salvaged", t.alphabet(), Some(t.alphabet())).unwrap();
        let v = verify_automorphism(&t, &rule, None, 1).unwrap();
        assert!(v.accepted);
        assert_eq!(v.kappa_class.as_deref(), Some("1/2"));
        let rel = v.relation_detail.unwrap();
        assert_eq!((rel.power, rel.shift), (2, -1));
        assert_eq!(rel.kernel_letter_map.as_deref(), Some("(AK)(BG)(CD)(EH)(FI)(JL)"));
        assert_eq!(rel.kernel_order, Some(2));
    }

    #[test]
    fn shift_relation() {
        let t = fixtures::substitution("thue_morse").unwrap();
        let v = verify_automorphism(&t, &LocalRule::shift(&t, 1).unwrap(), None, 1).unwrap();
        assert!(v.accepted);
        assert_eq!(v.kappa.as_deref(), Some("1"));
        assert_eq!(v.relation.as_deref(), Some("Φ^1 = σ ∘ id"));
    }

    #[test]
    fn corrupted_rule_rejected() {
        let t = fixtures::substitution("twisted").unwrap();
        let mut rule = fixtures::rule("twisted", t.alphabet(), Some(t.alphabet())).unwrap();
        let first = rule.table.keys().next().unwrap().clone();
        let v = rule.table[&first];
        rule.table.insert(first, (v + 1) % t.size());
        let report = verify_automorphism(&t, &rule, Some((2, 16)), 2).unwrap();
        assert!(!report.accepted);
    }

    #[test]
    fn analysis_of_centraliser_example() {
        let t = fixtures::substitution("centraliser_larger").unwrap();
        let r = analyze(&t, None, 1, None).unwrap();
        assert_eq!(r.invariants.minimal_sets, vec![vec!["a", "b"], vec!["a", "c"]]);
        let g = r.group.unwrap();
        assert_eq!(g.elements, vec!["id", "(12)"]);
        assert_eq!(r.kernel.unwrap().topological, vec!["id"]);
    }
}
