//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for domain errors (bad rack or diagram,
//! budget exceeded, ill-defined induced action), 2 for usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::diagram::{parse_diagram, LensDiagram};
use crate::enumerate::enumerate_racks;
use crate::invariants::{
    integral_invariant_using, symmetry_invariant_using, writhe_enhanced_invariant_using,
    writhe_symmetry_invariant_using, Enumerator,
};
use crate::oracle::oracle_enumerate_homomorphisms;
use crate::poly::Polynomial;
use crate::rack::{parse_rack, Convention, RackTable};
use crate::solver::{enumerate_homomorphisms_with, Homomorphism, Semantics};

#[derive(Debug, Parser)]
#[command(name = "lensrack", version, about = "Rack counting invariants of links in L(p,1)")]
struct Cli {
    /// Read rack matrices as table(i,j) = j ▷ i
    #[arg(long, global = true)]
    transposed: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a rack file
    ValidateRack {
        #[arg(short, long)]
        rack: PathBuf,
    },
    /// Order, rank, quandle flag and operator classes
    RackInfo {
        #[arg(short, long)]
        rack: PathBuf,
    },
    /// List racks of order n
    EnumRacks {
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Count (or list) homomorphisms from the diagram's rack
    Homs {
        #[arg(short, long)]
        rack: PathBuf,
        #[arg(short, long)]
        diagram: PathBuf,
        #[arg(long)]
        list: bool,
        #[arg(long, conflicts_with = "semantics")]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Presentation)]
        semantics: SemanticsArg,
    },
    /// Compute one invariant
    Invariant {
        #[arg(short, long)]
        rack: PathBuf,
        #[arg(short, long)]
        diagram: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, conflicts_with = "semantics")]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Presentation)]
        semantics: SemanticsArg,
        /// Tab-separated exponent/coefficient lines
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Z,
    W,
    Sym,
    Wsym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Presentation,
    Equivariant,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Presentation => Semantics::Presentation,
            SemanticsArg::Equivariant => Semantics::Equivariant,
        }
    }
}

fn enumerator(oracle: bool, semantics: SemanticsArg) -> Enumerator {
    if oracle {
        Enumerator::Oracle
    } else {
        Enumerator::Search(semantics.into())
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let convention = if cli.transposed {
        Convention::Transposed
    } else {
        Convention::RowActedOn
    };
    match execute(cli.command, convention) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_rack(path: &Path, convention: Convention) -> Result<RackTable, String> {
    parse_rack(&read(path)?, convention).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_diagram(path: &Path) -> Result<LensDiagram, String> {
    parse_diagram(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(command: Command, convention: Convention) -> Result<String, String> {
    match command {
        Command::ValidateRack { rack } => {
            let r = load_rack(&rack, convention)?;
            Ok(format!("valid rack of order {}\n", r.order()))
        }
        Command::RackInfo { rack } => {
            let r = load_rack(&rack, convention)?;
            Ok(rack_info(&r))
        }
        Command::EnumRacks { n, up_to_iso } => {
            let racks = enumerate_racks(n, up_to_iso).map_err(|e| e.to_string())?;
            let mut s = format!("count {}\n", racks.len());
            for r in &racks {
                s.push('\n');
                s.push_str(&r.to_string());
            }
            Ok(s)
        }
        Command::Homs {
            rack,
            diagram,
            list,
            oracle,
            semantics,
        } => {
            let r = load_rack(&rack, convention)?;
            let d = load_diagram(&diagram)?;
            let homs = if oracle {
                oracle_enumerate_homomorphisms(&d, &r).map_err(|e| e.to_string())?
            } else {
                enumerate_homomorphisms_with(&d, &r, semantics.into())
            };
            let mut s = format!("count {}\n", homs.len());
            if list {
                for h in &homs {
                    s.push_str(&format_hom(h));
                    s.push('\n');
                }
            }
            Ok(s)
        }
        Command::Invariant {
            rack,
            diagram,
            kind,
            oracle,
            semantics,
            machine,
        } => {
            let r = load_rack(&rack, convention)?;
            let d = load_diagram(&diagram)?;
            let e = enumerator(oracle, semantics);
            let (key, poly): (&str, Polynomial) = match kind {
                Kind::Z => {
                    let z = integral_invariant_using(&d, &r, e).map_err(|e| e.to_string())?;
                    let mut p = Polynomial::zero(vec![]);
                    p.add_term(vec![], z);
                    ("phi_Z", p)
                }
                Kind::W => ("phi_W", writhe_enhanced_invariant_using(&d, &r, e).map_err(|e| e.to_string())?),
                Kind::Sym => ("phi_Sym", symmetry_invariant_using(&d, &r, e).map_err(|e| e.to_string())?),
                Kind::Wsym => (
                    "phi_WSym",
                    writhe_symmetry_invariant_using(&d, &r, e).map_err(|e| e.to_string())?,
                ),
            };
            if machine {
                Ok(poly.to_machine(key))
            } else {
                Ok(format!("{key} = {poly}\n"))
            }
        }
    }
}

fn rack_info(r: &RackTable) -> String {
    let classes: Vec<String> = r
        .operator_classes()
        .iter()
        .map(|c| {
            let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    format!(
        "order {}, rank {}, quandle: {}\noperator classes: {}\n",
        r.order(),
        r.rank(),
        if r.is_quandle() { "yes" } else { "no" },
        classes.join(" ")
    )
}

/// `f0=[1 2] f1=[2 1]`: one bracket per level, arcs in order.
fn format_hom(h: &Homomorphism) -> String {
    h.levels()
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let colors: Vec<String> = l.colors().iter().map(|c| c.to_string()).collect();
            format!("f{k}=[{}]", colors.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = std::iter::once("lensrack").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&args, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn temp(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("lensrack-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
        path
    }

    #[test]
    fn trivial_rack_gives_one() {
        let r = temp("one.rack", "rack 1\n1\n");
        let d = temp("u.diag", "p 3\narcs 1\ncomponent 1: 1\n");
        let (code, out, _) = run_str(&["invariant", "-r", r.to_str().unwrap(), "-d", d.to_str().unwrap(), "--kind", "z"]);
        assert_eq!(code, 0);
        assert_eq!(out, "phi_Z = 1\n");
    }

    #[test]
    fn usage_and_domain_errors() {
        assert_eq!(run_str(&["homs"]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
        let bad = temp("bad.rack", "rack 2\n1 1\n1 1\n");
        let (code, _, err) = run_str(&["validate-rack", "-r", bad.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
        assert_eq!(run_str(&["enum-racks", "-n", "9"]).0, 1);
    }

    #[test]
    fn rack_info_line() {
        let r = temp("r3.rack", "rack 3\n1 3 2\n3 2 1\n2 1 3\n");
        let (code, out, _) = run_str(&["rack-info", "-r", r.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "order 3, rank 1, quandle: yes\noperator classes: {1} {2} {3}\n");
    }
}
