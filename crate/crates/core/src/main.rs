use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use typeiso::arena::{hyperforest_to_dot, hyperforest_to_json, Hyperforest};
use typeiso::canon::{canonical_key, canonicalize, psi};
use typeiso::iso::{brute_force_iso, check_bijection, decide_iso};
use typeiso::lambdamu::{normalize_in, parse_term, typecheck, Term, TypingContext};
use typeiso::toolkit::{index_build, index_query, read_signature_list, IndexFile};
use typeiso::types::{free_type_vars, parse_type, type_to_json};
use typeiso::witness::witness_for_iso;
use typeiso::{CalculusMode, Error, Ident, TypeExpr};

/// Second-order type isomorphisms: canonical forms, arenas, coercions.
#[derive(Parser)]
#[command(name = "typeiso", version)]
struct Cli {
    /// Calculus to read types and terms in.
    #[arg(long, global = true, default_value = "lmu2", value_parser = parse_mode)]
    calculus: CalculusMode,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a type and print it back.
    Parse {
        ty: String,
        /// Print the JSON tree instead.
        #[arg(long)]
        json: bool,
    },
    /// Rewrite a type to its canonical form.
    Canon {
        ty: String,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
        /// Print the termination measure.
        #[arg(long)]
        psi: bool,
        /// Print the canonical key.
        #[arg(long)]
        key: bool,
    },
    /// Decide whether two types are isomorphic.
    Iso {
        a: String,
        b: String,
        /// Print the hyperforest bijection as JSON.
        #[arg(long)]
        witness: bool,
        /// Cross-check against the brute-force matcher.
        #[arg(long)]
        oracle: bool,
    },
    /// Build the coercion terms of an isomorphism.
    Witness {
        a: String,
        b: String,
        /// Check that both composites reduce to the identity.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
    /// Typecheck a term.
    CheckTerm {
        term: String,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Normalize a term.
    Normalize {
        term: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Dump the hyperforest of a type.
    Arena {
        ty: String,
        #[arg(long, value_enum, default_value = "json")]
        format: DumpFormat,
    },
    /// Build or search a signature index.
    Index {
        #[command(subcommand)]
        cmd: IndexCmd,
    },
}

#[derive(Subcommand)]
enum IndexCmd {
    /// Index a file of `name : signature` lines.
    Build {
        input: PathBuf,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the entries isomorphic to a type.
    Query { index: PathBuf, ty: String },
}

#[derive(Args)]
struct CtxArgs {
    /// A variable binding `x:TYPE`; may repeat.
    #[arg(long = "var", value_name = "x:TYPE")]
    vars: Vec<String>,
    /// A name binding `a:TYPE`; may repeat.
    #[arg(long = "name", value_name = "a:TYPE")]
    names: Vec<String>,
    /// An extra type variable; may repeat.
    #[arg(long = "tvar")]
    tvars: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpFormat {
    Json,
    Dot,
}

fn parse_mode(s: &str) -> Result<CalculusMode, String> {
    CalculusMode::from_short_name(s).ok_or_else(|| format!("unknown calculus {s:?}, expected f, lmu2p or lmu2"))
}

enum Outcome {
    Yes,
    No,
}

fn binding(s: &str, mode: CalculusMode) -> Result<(Ident, TypeExpr), Error> {
    let (x, ty) = s
        .split_once(':')
        .ok_or_else(|| Error::syntax(0, format!("expected `ident:TYPE`, got {s:?}")))?;
    Ok((Ident::new(x.trim()), parse_type(ty, mode)?))
}

impl CtxArgs {
    /// Free type variables of the bindings and of `t` are declared implicitly.
    fn context(&self, mode: CalculusMode, t: &Term) -> Result<TypingContext, Error> {
        let mut ctx = TypingContext::new(mode);
        for v in &self.vars {
            ctx.gamma.push(binding(v, mode)?);
        }
        for a in &self.names {
            ctx.delta.push(binding(a, mode)?);
        }
        for x in &self.tvars {
            ctx.tvars.push(Ident::new(x.trim()));
        }
        let mut implicit = t.free_type_vars();
        for (_, ty) in ctx.gamma.iter().chain(&ctx.delta) {
            implicit.extend(free_type_vars(ty));
        }
        for x in implicit {
            ctx.tvars.push(x);
        }
        Ok(ctx)
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let mode = cli.calculus;
    let ty = |s: &str| parse_type(s, mode);
    match cli.cmd {
        Cmd::Parse { ty: s, json } => {
            let t = ty(&s)?;
            if json {
                println!("{}", type_to_json(&t));
            } else {
                println!("{t}");
            }
        }
        Cmd::Canon { ty: s, trace, psi: show_psi, key } => {
            let t = ty(&s)?;
            let (cf, tr) = canonicalize(&t, mode)?;
            if trace {
                for st in &tr.steps {
                    let path: Vec<String> = st.path.iter().map(u8::to_string).collect();
                    println!("{} at [{}]: {} => {}", st.rule, path.join(","), st.before, st.after);
                }
            }
            println!("{cf}");
            if show_psi {
                match psi(&t) {
                    Some(n) => println!("psi: {n}"),
                    None => println!("psi: too large"),
                }
            }
            if key {
                println!("key: {}", hex::encode(canonical_key(&cf)));
            }
        }
        Cmd::Iso { a, b, witness, oracle } => {
            let (a, b) = (ty(&a)?, ty(&b)?);
            let v = decide_iso(&a, &b, mode)?;
            if oracle {
                let o = brute_force_iso(&v.left, &v.right)?;
                if o.is_some() != v.isomorphic {
                    return Err(Error::Internal(format!(
                        "the brute-force matcher says {}",
                        if o.is_some() { "isomorphic" } else { "not isomorphic" }
                    )));
                }
                if let Some(w) = &o {
                    if !check_bijection(&v.left, &v.right, w) {
                        return Err(Error::Internal("brute-force witness fails the bijection check".into()));
                    }
                }
                eprintln!("oracle agrees");
            }
            match (&v.witness, &v.reason) {
                (Some(w), _) => {
                    println!("isomorphic");
                    if witness {
                        println!("{}", w.to_json(&v.left, &v.right));
                    }
                    return Ok(Outcome::Yes);
                }
                (None, Some(r)) => println!("not isomorphic: {r}"),
                (None, None) => println!("not isomorphic"),
            }
            return Ok(Outcome::No);
        }
        Cmd::Witness { a, b, verify, fuel } => {
            let (a, b) = (ty(&a)?, ty(&b)?);
            let Some(w) = witness_for_iso(&a, &b, mode)? else {
                println!("not isomorphic");
                return Ok(Outcome::No);
            };
            println!("forward: {}", w.forward);
            println!("backward: {}", w.backward);
            if verify {
                let r = w.verify(fuel);
                println!("verification: {} ({}, {} steps)", r.status, r.detail, r.fuel_used);
                use typeiso::lambdamu::VerifyStatus as S;
                match r.status {
                    S::Verified => {}
                    S::TypecheckedOnly => return Ok(Outcome::No),
                    S::Failed => return Err(Error::Internal(format!("witness fails verification: {}", r.detail))),
                }
            }
        }
        Cmd::CheckTerm { term, ctx } => {
            let t = parse_term(&term)?;
            let ctx = ctx.context(mode, &t)?;
            match typecheck(&ctx, &t) {
                Ok(ty) => println!("{ty}"),
                Err(e @ Error::Typing { .. }) => {
                    println!("ill-typed: {e}");
                    return Ok(Outcome::No);
                }
                Err(e) => return Err(e),
            }
        }
        Cmd::Normalize { term, fuel, ctx } => {
            let t = parse_term(&term)?;
            let ctx = ctx.context(mode, &t)?;
            typecheck(&ctx, &t)?;
            let r = normalize_in(&ctx, &t, fuel);
            println!("{}", r.term);
            eprintln!("{} steps", r.steps);
            if r.exhausted {
                eprintln!("fuel exhausted before a normal form");
                return Ok(Outcome::No);
            }
        }
        Cmd::Arena { ty: s, format } => {
            let h = Hyperforest::of_type(&ty(&s)?);
            match format {
                DumpFormat::Json => println!("{}", serde_json::to_string_pretty(&hyperforest_to_json(&h)).expect("json")),
                DumpFormat::Dot => print!("{}", hyperforest_to_dot(&h)),
            }
        }
        Cmd::Index { cmd: IndexCmd::Build { input, output } } => {
            let text = read(&input)?;
            let entries = read_signature_list(&text, &input.display().to_string())?;
            let idx = index_build(&entries, mode)?;
            match output {
                Some(p) => {
                    fs::write(&p, idx.to_text()).map_err(|e| Error::Index(format!("{}: {e}", p.display())))?;
                    eprintln!("{} entries written to {}", idx.entries.len(), p.display());
                }
                None => print!("{}", idx.to_text()),
            }
        }
        Cmd::Index { cmd: IndexCmd::Query { index, ty: s } } => {
            let idx = IndexFile::from_text(&read(&index)?)?;
            if idx.mode != mode {
                return Err(Error::Index(format!(
                    "index is for {}, query is in {}",
                    idx.mode.short_name(),
                    mode.short_name()
                )));
            }
            let hits = index_query(&ty(&s)?, &idx)?;
            for e in &hits {
                println!("{} : {}\t{}", e.name, e.signature, e.source);
            }
            if hits.is_empty() {
                return Ok(Outcome::No);
            }
        }
    }
    Ok(Outcome::Yes)
}

fn read(p: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(p).map_err(|e| Error::Index(format!("{}: {e}", p.display())))
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors by itself
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e @ Error::Internal(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
