//! `superhoch`: super-Hochschild cohomology from the command line.
//!
//! Exit codes: 0 success, 1 a check failed (with a witness on stderr or in the
//! report), 2 unreadable or malformed input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use superhoch::cohomology::{extension_algebra, extensions_equivalent, CohomologyReport};
use superhoch::deformation::{check_deformation, extend_deformation, obstruction};
use superhoch::format::{from_json, to_json};
use superhoch::{
    make_named, self_module, AlgebraFile, Cochain, CochainFile, Coeff, Deformation,
    DeformationFile, ExtendOutcome, Field, ModuleFile, Parity, ProductContext, SuperAlgebra,
    SuperBimodule,
};

#[derive(Parser)]
#[command(
    name = "superhoch",
    version,
    about = "Exact super-Hochschild cohomology of associative superalgebras"
)]
struct Cli {
    /// Field override, `Q` or `Fp:<p>`; takes precedence over the file's tag.
    #[arg(long, global = true, env = "SUPERHOCH_FIELD")]
    field: Option<Field>,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check grading and associativity of an algebra file.
    Validate { algebra: PathBuf },
    /// Dimensions of C, Z, B and H per degree and parity.
    Cohomology {
        algebra: PathBuf,
        #[command(flatten)]
        module: ModuleArg,
        /// Largest degree to compute.
        #[arg(long, default_value_t = superhoch::DEFAULT_MAX_ARITY)]
        max_arity: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::Both)]
        parity: ParityArg,
    },
    /// Coboundary of a cochain.
    Delta {
        algebra: PathBuf,
        f: PathBuf,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Cup product `f ∪ g`.
    Cup(Binary),
    /// `f ∘_i g` with `--i`, otherwise the full `f ∘ g`.
    Circ {
        #[command(flatten)]
        args: Binary,
        #[arg(long = "i")]
        slot: Option<usize>,
    },
    /// Bracket `[f, g]`.
    Bracket(Binary),
    /// Evaluate every product identity on seeded random cochains.
    Audit {
        algebra: PathBuf,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Formal deformations of the algebra's product.
    Deform {
        #[arg(value_enum)]
        action: DeformAction,
        algebra: PathBuf,
        deformation: PathBuf,
    },
    /// Singular extensions `E_h` of an algebra by a bimodule.
    Extension {
        #[arg(value_enum)]
        action: ExtensionAction,
        algebra: PathBuf,
        /// Bimodule file, or `self`.
        module: String,
        h: PathBuf,
        h2: Option<PathBuf>,
    },
    /// Print the algebra file of a built-in algebra such as `matrix(1|1)`.
    Named { name: String },
    /// Parse a file and print it in canonical form. Module, cochain and
    /// deformation files are read against `--algebra`.
    Canon {
        #[arg(value_enum)]
        kind: FileKind,
        file: PathBuf,
        #[arg(long, required_if_eq_any([("kind", "module"), ("kind", "cochain"), ("kind", "deformation")]))]
        algebra: Option<PathBuf>,
        #[command(flatten)]
        module: ModuleArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileKind {
    Algebra,
    Module,
    Cochain,
    Deformation,
}

#[derive(Args)]
struct ModuleArg {
    /// Coefficient bimodule file, or `self`.
    #[arg(long, default_value = "self")]
    module: String,
}

#[derive(Args)]
struct Binary {
    algebra: PathBuf,
    f: PathBuf,
    g: PathBuf,
    #[command(flatten)]
    module: ModuleArg,
    /// `f` takes values in the module rather than the algebra.
    #[arg(long)]
    f_module: bool,
    /// `g` takes values in the module rather than the algebra.
    #[arg(long)]
    g_module: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    #[value(name = "0")]
    Even,
    #[value(name = "1")]
    Odd,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeformAction {
    Check,
    Obstruct,
    Extend,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtensionAction {
    Build,
    Equiv,
}

/// An error in the input rather than a failed check.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

struct Session {
    field: Option<Field>,
    json: bool,
    out: String,
}

impl Session {
    fn read(&self, path: &Path) -> Result<String> {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }

    fn algebra(&self, path: &Path) -> Result<SuperAlgebra> {
        let file: AlgebraFile =
            from_json(&self.read(path)?).with_context(|| path.display().to_string())?;
        file.to_algebra(self.field)
            .with_context(|| path.display().to_string())
    }

    fn module(&self, a: &SuperAlgebra, arg: &str) -> Result<SuperBimodule> {
        if arg == "self" {
            return Ok(self_module(a));
        }
        let path = Path::new(arg);
        let file: ModuleFile = from_json(&self.read(path)?).with_context(|| arg.to_string())?;
        let p = file.to_module(a).with_context(|| arg.to_string())?;
        if let Some(v) = p.validate(a).first() {
            bail!("{arg}: not a bimodule: {v}");
        }
        Ok(p)
    }

    fn cochain(&self, path: &Path, a: &SuperAlgebra, target: &SuperBimodule) -> Result<Cochain> {
        let file: CochainFile =
            from_json(&self.read(path)?).with_context(|| path.display().to_string())?;
        file.to_cochain(a.field(), a.parities(), target.parities())
            .with_context(|| path.display().to_string())
    }

    /// Header for text reports computed under a field override.
    fn banner(&mut self) {
        if let Some(f) = self.field {
            self.out
                .push_str(&format!("# field override {f}: advisory result\n"));
        }
    }

    fn emit_cochain(&mut self, f: &Cochain) {
        self.out.push_str(&to_json(&CochainFile::from_cochain(f)));
    }
}

fn parities(arg: ParityArg) -> Vec<Parity> {
    match arg {
        ParityArg::Even => vec![Parity::EVEN],
        ParityArg::Odd => vec![Parity::ODD],
        ParityArg::Both => Parity::both().to_vec(),
    }
}

fn coeff(in_module: bool) -> Coeff {
    if in_module {
        Coeff::Module
    } else {
        Coeff::Algebra
    }
}

enum Op {
    Cup,
    Circ(Option<usize>),
    Bracket,
}

fn binary(s: &mut Session, args: &Binary, op: Op) -> Result<()> {
    let a = s.algebra(&args.algebra)?;
    let p = s.module(&a, &args.module.module)?;
    let own = self_module(&a);
    let target = |m: bool| if m { &p } else { &own };
    let f = s.cochain(&args.f, &a, target(args.f_module))?;
    let g = s.cochain(&args.g, &a, target(args.g_module))?;
    let (fk, gk) = (coeff(args.f_module), coeff(args.g_module));
    if matches!(op, Op::Circ(_)) && args.g_module {
        bail!("the inserted cochain g must take values in the algebra");
    }
    let ctx = ProductContext::new(a, Some(p))?;
    let result = match op {
        Op::Cup => ctx.cup(&f, fk, &g, gk)?,
        Op::Circ(Some(i)) => ctx.comp_i(&f, fk, &g, i)?,
        Op::Circ(None) => ctx.comp(&f, fk, &g)?,
        Op::Bracket => ctx.bracket(&f, fk, &g, gk)?,
    };
    s.emit_cochain(&result);
    Ok(())
}

fn run(cli: Cli) -> Result<(String, u8), InputError> {
    let mut s = Session {
        field: cli.field,
        json: cli.json,
        out: String::new(),
    };
    if let Some(f) = s.field {
        eprintln!("note: computing over {f} by override; results are advisory");
    }
    let mut code = 0;
    match cli.command {
        Command::Validate { algebra } => {
            let a = s.algebra(&algebra)?;
            let report = a.validate();
            s.banner();
            if report.is_valid() {
                s.out.push_str("valid\n");
            } else {
                for v in &report.violations {
                    s.out.push_str(&format!("violation: {v}\n"));
                }
                code = 1;
            }
        }
        Command::Cohomology {
            algebra,
            module,
            max_arity,
            parity,
        } => {
            let a = s.algebra(&algebra)?;
            let p = s.module(&a, &module.module)?;
            let report =
                CohomologyReport::compute(&a, &p, max_arity, &parities(parity), max_arity)?;
            if s.json {
                let v = json!({ "advisory": s.field.is_some(), "report": report });
                s.out
                    .push_str(&format!("{}\n", serde_json::to_string_pretty(&v)?));
            } else {
                s.banner();
                s.out.push_str(&report.to_string());
            }
        }
        Command::Delta { algebra, f, module } => {
            let a = s.algebra(&algebra)?;
            let p = s.module(&a, &module.module)?;
            let f = s.cochain(&f, &a, &p)?;
            let d = superhoch::delta(&a, &p, &f)?;
            s.emit_cochain(&d);
        }
        Command::Cup(args) => binary(&mut s, &args, Op::Cup)?,
        Command::Circ { args, slot } => binary(&mut s, &args, Op::Circ(slot))?,
        Command::Bracket(args) => binary(&mut s, &args, Op::Bracket)?,
        Command::Audit {
            algebra,
            module,
            seed,
            trials,
        } => {
            let a = s.algebra(&algebra)?;
            let p = s.module(&a, &module.module)?;
            let module = (module.module != "self").then_some(p);
            let report = ProductContext::new(a, module)?.audit(seed, trials)?;
            if s.json {
                let v = json!({ "advisory": s.field.is_some(), "seed": seed, "report": report });
                s.out
                    .push_str(&format!("{}\n", serde_json::to_string_pretty(&v)?));
            } else {
                s.banner();
                s.out.push_str(&format!("seed {seed}\n{report}"));
            }
            if !report.all_passed() {
                code = 1;
            }
        }
        Command::Deform {
            action,
            algebra,
            deformation,
        } => {
            let a = s.algebra(&algebra)?;
            let file: DeformationFile = from_json(&s.read(&deformation)?)?;
            let d = file.to_deformation(&a)?;
            code = deform(&mut s, action, &d)?;
        }
        Command::Extension {
            action,
            algebra,
            module,
            h,
            h2,
        } => {
            let a = s.algebra(&algebra)?;
            let p = s.module(&a, &module)?;
            let h = s.cochain(&h, &a, &p)?;
            match (action, h2) {
                (ExtensionAction::Build, None) => {
                    let e = extension_algebra(&a, &p, &h)?;
                    s.out.push_str(&to_json(&AlgebraFile::from_algebra(&e)));
                    if let Some(v) = e.validate().violations.first() {
                        eprintln!("E_h is not associative ({v}); h is not a cocycle");
                        code = 1;
                    }
                }
                (ExtensionAction::Build, Some(_)) => {
                    return Err(anyhow::anyhow!("build takes a single cochain h").into())
                }
                (ExtensionAction::Equiv, None) => {
                    return Err(anyhow::anyhow!("equiv needs two cochains h and h2").into())
                }
                (ExtensionAction::Equiv, Some(h2)) => {
                    let h2 = s.cochain(&h2, &a, &p)?;
                    match extensions_equivalent(&a, &p, &h, &h2)? {
                        Some(f) => s.emit_cochain(&f),
                        None => {
                            eprintln!("not equivalent: h - h2 is not a coboundary");
                            code = 1;
                        }
                    }
                }
            }
        }
        Command::Named { name } => {
            let a = make_named(&name, s.field.unwrap_or(Field::Rational))?;
            s.out.push_str(&to_json(&AlgebraFile::from_algebra(&a)));
        }
        Command::Canon {
            kind,
            file,
            algebra,
            module,
        } => {
            if kind == FileKind::Algebra {
                let a = s.algebra(&file)?;
                s.out.push_str(&to_json(&AlgebraFile::from_algebra(&a)));
                return Ok((s.out, 0));
            }
            let a = s.algebra(algebra.as_deref().expect("clap enforces --algebra"))?;
            match kind {
                FileKind::Module => {
                    let p = s.module(&a, &file.to_string_lossy())?;
                    s.out.push_str(&to_json(&ModuleFile::from_module(&p)));
                }
                FileKind::Cochain => {
                    let p = s.module(&a, &module.module)?;
                    let f = s.cochain(&file, &a, &p)?;
                    s.emit_cochain(&f);
                }
                FileKind::Deformation => {
                    let d: DeformationFile = from_json(&s.read(&file)?)?;
                    let d = d.to_deformation(&a)?;
                    s.out
                        .push_str(&to_json(&DeformationFile::from_deformation(&d)));
                }
                FileKind::Algebra => unreachable!(),
            }
        }
    }
    Ok((s.out, code))
}

fn deform(s: &mut Session, action: DeformAction, d: &Deformation) -> Result<u8> {
    let check = check_deformation(d);
    match action {
        DeformAction::Check => {
            if s.json {
                let orders: Vec<_> = check
                    .orders
                    .iter()
                    .map(|o| {
                        json!({ "order": o.order, "ok": o.witness.is_none(),
                        "witness": o.witness.as_ref().map(|w| w.to_string()) })
                    })
                    .collect();
                let v = json!({ "advisory": s.field.is_some(), "valid": check.is_valid(), "orders": orders });
                s.out
                    .push_str(&format!("{}\n", serde_json::to_string_pretty(&v)?));
            } else {
                s.banner();
                s.out.push_str(&check.to_string());
            }
            Ok(if check.is_valid() { 0 } else { 1 })
        }
        DeformAction::Obstruct => {
            let ob = obstruction(d)?;
            let order = d.order() + 1;
            if s.json {
                let v = json!({
                    "advisory": s.field.is_some(),
                    "order": order,
                    "formulas_agree": ob.formulas_agree,
                    "cocycle": ob.is_cocycle(),
                    "class_zero": ob.solution.is_some(),
                    "obstruction": CochainFile::from_cochain(&ob.obstruction),
                });
                s.out
                    .push_str(&format!("{}\n", serde_json::to_string_pretty(&v)?));
            } else {
                s.banner();
                let yes = |b: bool| if b { "yes" } else { "no" };
                s.out.push_str(&format!(
                    "obstruction order {order}\nzero cochain: {}\nformulas agree: {}\ncocycle: {}\nclass in H^3 vanishes: {}\n",
                    yes(ob.obstruction.is_zero()),
                    yes(ob.formulas_agree),
                    yes(ob.is_cocycle()),
                    yes(ob.solution.is_some()),
                ));
            }
            Ok(if ob.formulas_agree && ob.is_cocycle() {
                0
            } else {
                1
            })
        }
        DeformAction::Extend => match extend_deformation(d)? {
            ExtendOutcome::Extended(next) => {
                s.out
                    .push_str(&to_json(&DeformationFile::from_deformation(&next)));
                Ok(0)
            }
            ExtendOutcome::Obstructed(ob) => {
                eprintln!(
                    "obstructed at order {}: the obstruction class is nonzero",
                    d.order() + 1
                );
                s.emit_cochain(&ob);
                Ok(1)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
