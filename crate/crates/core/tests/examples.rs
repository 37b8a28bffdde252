//! Every example under `examples/` runs to completion.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "algorithm_a",
    "compactify",
    "dimacs_io",
    "exact_oracle",
    "generator",
    "golden_bound",
    "kernels",
    "matching_autarky",
    "surd_arithmetic",
    "tight_family",
];

/// `cargo test` builds examples next to the test binaries' parent directory.
fn example_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("examples")
}

#[test]
fn examples_run() {
    let listed: Vec<String> = std::fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/examples"))
        .unwrap()
        .map(|e| {
            e.unwrap()
                .path()
                .file_stem()
                .unwrap()
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    for name in EXAMPLES {
        assert!(
            listed.iter().any(|l| l == name),
            "{name} is not in examples/"
        );
    }
    assert_eq!(listed.len(), EXAMPLES.len(), "update EXAMPLES");

    for name in EXAMPLES {
        let path = example_dir().join(name);
        let out = Command::new(&path)
            .output()
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
