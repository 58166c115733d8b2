use std::path::PathBuf;

use autoshift::fixtures;
use autoshift::report::{self, DEFAULT_P_MAX};

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema")
}

/// Set AUTOSHIFT_WRITE_SCHEMA=1 to regenerate the checked-in files.
#[test]
fn checked_in_schemas_are_current() {
    let write = std::env::var_os("AUTOSHIFT_WRITE_SCHEMA").is_some();
    for (name, schema) in report::schemas() {
        let path = schema_dir().join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(&schema).unwrap() + "\n";
        if write {
            std::fs::write(&path, &text).unwrap();
        } else {
            let on_disk = std::fs::read_to_string(&path).unwrap_or_default();
            assert_eq!(on_disk, text, "{} is stale", path.display());
        }
    }
}

fn validator(name: &str) -> jsonschema::Validator {
    let (_, schema) = report::schemas().into_iter().find(|(n, _)| *n == name).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, instance: &serde_json::Value, what: &str) {
    let errors: Vec<String> = v.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{what}: {errors:?}");
}

#[test]
fn analysis_reports_validate() {
    let v = validator("analysis_report");
    for name in ["centraliser_larger", "thue_morse", "no_automorphism", "merging", "no_hope_eta1"] {
        let theta = fixtures::substitution(name).unwrap();
        let r = report::analyze(&theta, None, DEFAULT_P_MAX, None).unwrap();
        assert_valid(&v, &serde_json::to_value(&r).unwrap(), name);
    }
    let theta = fixtures::substitution("theta_prime").unwrap();
    let coding = fixtures::coding("theta_prime").unwrap();
    let r = report::analyze(&theta, Some(&coding), DEFAULT_P_MAX, None).unwrap();
    assert_valid(&v, &serde_json::to_value(&r).unwrap(), "theta_prime");
}

#[test]
fn verify_and_decompose_reports_validate() {
    let theta = fixtures::substitution("twisted").unwrap();
    let rule = fixtures::rule("twisted", theta.alphabet(), Some(theta.alphabet())).unwrap();
    let r = report::verify_automorphism(&theta, &rule, Some((2, 16)), DEFAULT_P_MAX).unwrap();
    assert!(r.accepted);
    assert_valid(&validator("verify_report"), &serde_json::to_value(&r).unwrap(), "verify");

    let d = report::decompose(&fixtures::substitution("no_hope").unwrap(), DEFAULT_P_MAX, None).unwrap();
    assert_valid(&validator("decompose_report"), &serde_json::to_value(&d).unwrap(), "decompose");
}

#[test]
fn reports_round_trip() {
    let theta = fixtures::substitution("centraliser_larger").unwrap();
    let r = report::analyze(&theta, None, DEFAULT_P_MAX, None).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: report::AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}
