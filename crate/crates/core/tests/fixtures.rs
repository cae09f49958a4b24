//! Golden-file checks for the `fixtures/` corpus at the repository root.
//!
//! Every fixture is reproducible from a constructor in this crate; this test
//! pins the file contents to those constructors. To regenerate after an
//! intentional generator change, run:
//!
//! ```text
//! REGEN_FIXTURES=1 cargo test -p sigma-nuclei --test fixtures
//! ```

use std::fs;
use std::path::PathBuf;

use sigma_nuclei::{random_quasigroup, Quasigroup};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn klein() -> Quasigroup {
    Quasigroup::from_rows(vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ])
    .unwrap()
}

fn left_loop_4() -> Quasigroup {
    Quasigroup::from_rows(vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![3, 2, 1, 0],
        vec![2, 3, 0, 1],
    ])
    .unwrap()
}

fn expected_fixtures() -> Vec<(String, String, Quasigroup)> {
    let mut out = Vec::new();
    for n in [1usize, 2, 3, 4, 5, 7] {
        out.push((
            format!("z{n}"),
            format!("cyclic group of order {n}"),
            Quasigroup::cyclic(n),
        ));
    }
    out.push((
        "klein".into(),
        "elementary abelian group of order 4".into(),
        klein(),
    ));
    out.push((
        "leftloop4".into(),
        "order-4 left loop (left identity 0, no right identity)".into(),
        left_loop_4(),
    ));
    for i in 0..5u64 {
        out.push((
            format!("rand5_{i}"),
            format!("random Latin square, order 5, seed {}", 1000 + i),
            random_quasigroup(5, 1000 + i),
        ));
        out.push((
            format!("rand6_{i}"),
            format!("random Latin square, order 6, seed {}", 2000 + i),
            random_quasigroup(6, 2000 + i),
        ));
    }
    out
}

#[test]
fn fixture_files_match_their_generators() {
    let dir = fixtures_dir();
    let regen = std::env::var("REGEN_FIXTURES").is_ok();
    if regen {
        fs::create_dir_all(&dir).unwrap();
    }
    for (name, header, q) in expected_fixtures() {
        let path = dir.join(format!("{name}.qg"));
        let content = format!("# {header}\n{q}\n");
        if regen {
            fs::write(&path, &content).unwrap();
            continue;
        }
        let on_disk = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing fixture {}: {e}", path.display()));
        assert_eq!(on_disk, content, "fixture {name} drifted from its generator");
        // The file must parse back to the same square through the public
        // parser (comments and blank lines included).
        assert_eq!(Quasigroup::parse(&on_disk).unwrap(), q, "fixture {name}");
    }
    assert!(
        !regen,
        "fixtures regenerated; rerun without REGEN_FIXTURES to verify"
    );
}
