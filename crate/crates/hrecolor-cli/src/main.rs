//! Command-line front end.
//!
//! Exit codes: 0 success (including a NO decision), 1 unreadable or
//! malformed input, 2 precondition violation or NO when --expect-yes was
//! given, 3 state budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hrecolor::graph::Graph;
use hrecolor::groupoid::{ReducedWalk, WalkFamily};
use hrecolor::instance::{
    instance_to_json, parse_instance, witness_from_json, witness_to_json, Instance,
};
use hrecolor::oracle;
use hrecolor::reconfig::{self, ReconfigError, RecoloringSequence};

#[derive(Parser)]
#[command(name = "hrecolor", version, about = "Decide and construct recoloring sequences between graph homomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the target graph for the monochromatic neighborhood property
    CheckH { file: PathBuf },
    /// Decide whether beta is reachable from alpha
    Decide {
        file: PathBuf,
        /// Base vertex, overriding the instance file
        #[arg(long)]
        q: Option<String>,
        /// Write the witness step list as JSON
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Exit nonzero on a NO answer
        #[arg(long)]
        expect_yes: bool,
    },
    /// Minimum number of recoloring steps from alpha to beta
    Shortest {
        file: PathBuf,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[arg(long)]
        expect_yes: bool,
    },
    /// Print the valid and realizable walk families at the base vertex
    Families {
        file: PathBuf,
        #[arg(long)]
        q: Option<String>,
    },
    /// Brute-force the solution graph and compare with the engine
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Validate a witness file against an instance
    Verify { instance: PathBuf, witness: PathBuf },
    /// Generate random valid instances
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Largest domain graph size to generate
        #[arg(long, default_value_t = 5)]
        max_g: usize,
        /// Directory for generated files (required when count > 1)
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::CheckH { file } => cmd_check_h(&file),
        Command::Decide {
            file,
            q,
            witness_out,
            expect_yes,
        } => cmd_decide(&file, q.as_deref(), witness_out.as_deref(), expect_yes),
        Command::Shortest {
            file,
            q,
            witness_out,
            expect_yes,
        } => cmd_shortest(&file, q.as_deref(), witness_out.as_deref(), expect_yes),
        Command::Families { file, q } => cmd_families(&file, q.as_deref()),
        Command::Oracle { file, max_states } => cmd_oracle(&file, max_states),
        Command::Verify { instance, witness } => cmd_verify(&instance, &witness),
        Command::Gen {
            seed,
            count,
            max_g,
            out_dir,
        } => cmd_gen(seed, count, max_g, out_dir.as_deref()),
    };
    ExitCode::from(code)
}

fn load_instance(path: &Path) -> Result<Instance, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        1u8
    })?;
    parse_instance(&text).map_err(|e| {
        eprintln!("cannot parse {}: {e}", path.display());
        1u8
    })
}

/// Flag override, then the file's q, then the first vertex.
fn resolve_q(inst: &Instance, flag: Option<&str>) -> Result<usize, u8> {
    match flag {
        Some(name) => inst.g.index_of(name).map_err(|e| {
            eprintln!("--q: {e}");
            1u8
        }),
        None => Ok(inst.q),
    }
}

fn precondition_gate(inst: &Instance) -> Result<(), u8> {
    reconfig::check_preconditions(&inst.g, &inst.h, &inst.alpha, &inst.beta).map_err(|e| {
        eprintln!("{e}");
        2u8
    })
}

fn engine_error(e: ReconfigError) -> u8 {
    match e {
        ReconfigError::Precondition(p) => {
            eprintln!("precondition violated: {p}");
            2
        }
        // Anything else at this layer is a broken engine invariant.
        other => panic!("internal error: {other}"),
    }
}

fn write_witness(
    path: Option<&Path>,
    inst: &Instance,
    seq: &RecoloringSequence,
) -> Result<(), u8> {
    if let Some(path) = path {
        let text = witness_to_json(&inst.g, &inst.h, &seq.steps);
        std::fs::write(path, text).map_err(|e| {
            eprintln!("cannot write {}: {e}", path.display());
            1u8
        })?;
    }
    Ok(())
}

fn cmd_check_h(file: &Path) -> u8 {
    let inst = match load_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    match inst.h.check_common_neighbor_bound() {
        Ok(()) => {
            println!("PASS");
            0
        }
        Err((a, b)) => {
            println!(
                "FAIL: colors {} and {} share more than one neighbor",
                inst.h.name(a),
                inst.h.name(b)
            );
            2
        }
    }
}

fn cmd_decide(file: &Path, q: Option<&str>, witness_out: Option<&Path>, expect_yes: bool) -> u8 {
    let inst = match load_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let q = match resolve_q(&inst, q) {
        Ok(q) => q,
        Err(code) => return code,
    };
    match reconfig::decide_reachable(&inst.g, &inst.h, &inst.alpha, &inst.beta, q) {
        Ok(Some(seq)) => {
            if let Err(code) = write_witness(witness_out, &inst, &seq) {
                return code;
            }
            println!("YES");
            0
        }
        Ok(None) => {
            println!("NO");
            if expect_yes {
                2
            } else {
                0
            }
        }
        Err(e) => engine_error(e),
    }
}

fn cmd_shortest(file: &Path, q: Option<&str>, witness_out: Option<&Path>, expect_yes: bool) -> u8 {
    let inst = match load_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let q = match resolve_q(&inst, q) {
        Ok(q) => q,
        Err(code) => return code,
    };
    match reconfig::shortest_sequence(&inst.g, &inst.h, &inst.alpha, &inst.beta, q) {
        Ok(Some((count, seq))) => {
            if let Err(code) = write_witness(witness_out, &inst, &seq) {
                return code;
            }
            println!("{count}");
            0
        }
        Ok(None) => {
            println!("NO");
            if expect_yes {
                2
            } else {
                0
            }
        }
        Err(e) => engine_error(e),
    }
}

fn fmt_walk(h: &Graph, w: &ReducedWalk) -> String {
    let names: Vec<&str> = w.seq().iter().map(|&v| h.name(v)).collect();
    format!("[{}]", names.join(" "))
}

fn fmt_family(h: &Graph, f: &WalkFamily) -> String {
    match f {
        WalkFamily::Empty { .. } => "Empty".to_string(),
        WalkFamily::Single { walk, .. } => format!("Single Q={}", fmt_walk(h, walk)),
        WalkFamily::Coset { root, rep, .. } => {
            format!("Coset R={} P={}", fmt_walk(h, root), fmt_walk(h, rep))
        }
        WalkFamily::AllReduced { .. } => "AllReduced".to_string(),
        WalkFamily::AllEvenReduced { .. } => "AllEvenReduced".to_string(),
    }
}

fn cmd_families(file: &Path, q: Option<&str>) -> u8 {
    let inst = match load_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let q = match resolve_q(&inst, q) {
        Ok(q) => q,
        Err(code) => return code,
    };
    if let Err(code) = precondition_gate(&inst) {
        return code;
    }
    let (_, _, valid) = reconfig::valid_family(&inst.g, &inst.alpha, &inst.beta, q);
    let (_, _, realizable) =
        reconfig::enumerate_realizable(&inst.g, &inst.h, &inst.alpha, &inst.beta, q);
    println!("valid: {}", fmt_family(&inst.h, &valid));
    println!("realizable: {}", fmt_family(&inst.h, &realizable));
    0
}

fn cmd_oracle(file: &Path, max_states: usize) -> u8 {
    let inst = match load_instance(file) {
        Ok(i) => i,
        Err(code) => return code,
    };
    if let Err(code) = precondition_gate(&inst) {
        return code;
    }
    let scan = match oracle::bfs_scan(&inst.g, &inst.h, &inst.alpha, max_states) {
        Ok(scan) => scan,
        Err(e @ oracle::OracleError::StateBudgetExceeded { .. }) => {
            eprintln!("{e}");
            return 3;
        }
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    println!("component size: {}", scan.size());
    let distance = scan.distance_to(&inst.beta);
    match distance {
        Some(d) => println!("distance to beta: {d}"),
        None => println!("distance to beta: unreachable"),
    }
    let frozen = oracle::frozen_set(&scan).expect("bfs_scan yields complete scans");
    let frozen_names: Vec<&str> = frozen.iter().map(|&v| inst.g.name(v)).collect();
    println!("frozen vertices: [{}]", frozen_names.join(" "));

    let decided = match reconfig::decide_reachable(&inst.g, &inst.h, &inst.alpha, &inst.beta, inst.q)
    {
        Ok(d) => d,
        Err(e) => return engine_error(e),
    };
    if decided.is_some() == distance.is_some() {
        println!("decide agreement: ok");
    } else {
        println!(
            "decide agreement: MISMATCH (engine={}, oracle={})",
            if decided.is_some() { "YES" } else { "NO" },
            if distance.is_some() { "YES" } else { "NO" }
        );
    }
    if let Some(d) = distance {
        let shortest =
            match reconfig::shortest_sequence(&inst.g, &inst.h, &inst.alpha, &inst.beta, inst.q) {
                Ok(s) => s,
                Err(e) => return engine_error(e),
            };
        match shortest {
            Some((count, _)) if count == d => println!("shortest agreement: ok ({count})"),
            Some((count, _)) => {
                println!("shortest agreement: MISMATCH (engine={count}, oracle={d})")
            }
            None => println!("shortest agreement: MISMATCH (engine=NO, oracle={d})"),
        }
    } else {
        println!("shortest agreement: not applicable");
    }
    0
}

fn cmd_verify(instance: &Path, witness: &Path) -> u8 {
    let inst = match load_instance(instance) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let text = match std::fs::read_to_string(witness) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", witness.display());
            return 1;
        }
    };
    let steps = match witness_from_json(&inst.g, &inst.h, &text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("cannot parse {}: {e}", witness.display());
            return 1;
        }
    };
    let seq = RecoloringSequence {
        start: inst.alpha.clone(),
        steps,
    };
    if let Err(violation) = oracle::validate_sequence(&inst.g, &inst.h, &seq) {
        println!("FAIL at step {}: {violation}", violation.index());
        return 2;
    }
    if seq.end() != inst.beta {
        println!("FAIL: sequence ends at a coloring different from beta");
        return 2;
    }
    println!("OK");
    0
}

fn cmd_gen(seed: u64, count: usize, max_g: usize, out_dir: Option<&Path>) -> u8 {
    let mut rng = hrecolor::gen::seeded(seed);
    match (count, out_dir) {
        (0, _) => 0,
        (1, None) => {
            let (_, inst) = hrecolor::gen::random_instance(&mut rng, max_g);
            print!("{}", instance_to_json(&inst));
            0
        }
        (_, None) => {
            eprintln!("--out-dir is required when generating more than one instance");
            1
        }
        (_, Some(dir)) => {
            if let Err(e) = std::fs::create_dir_all(dir) {
                eprintln!("cannot create {}: {e}", dir.display());
                return 1;
            }
            for i in 0..count {
                let (name, inst) = hrecolor::gen::random_instance(&mut rng, max_g);
                let path = dir.join(format!("instance-{i:04}-{name}.json"));
                if let Err(e) = std::fs::write(&path, instance_to_json(&inst)) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return 1;
                }
                println!("{}", path.display());
            }
            0
        }
    }
}
