use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sp4_core::nearhol::json::{form_from_str, form_to_json, form_to_string};
use sp4_core::nearhol::{apply_word, holomorphy_test, mstar_test, numcheck_rootvectors, NearHolForm, SiegelPoint};
use sp4_core::scalar::{format_rational, Gq};
use sp4_core::selftest::{self, Size};
use sp4_core::structure::{self, DimTable};
use sp4_core::verma::{self, VermaModule, VermaVector};
use sp4_core::{BasisSymbol, Error, OperatorWord, Weight};

#[derive(Parser, Debug)]
#[command(name = "sp4", version, about = "Lowest-weight modules of Sp4(R) and nearly holomorphic Siegel modular forms")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModuleArg {
    #[value(name = "N")]
    N,
    #[value(name = "L")]
    L,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SizeArg {
    Small,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity of the K-type mu in N(lambda) or L(lambda).
    KtypeMult {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, value_enum, default_value = "N")]
        module: ModuleArg,
        /// Cross-check against linear algebra in N(lambda).
        #[arg(long)]
        oracle: bool,
    },
    /// Region, reducibility, composition series, Casimir and unitarity of N(lambda).
    VermaInfo {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Apply a word of navigation operators to the lowest weight vector of N(lambda).
    Navigate {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Words carrying weight (l',m') forms to weight (l,m) forms.
    IndexSet {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        source: String,
    },
    /// Dimension of the space of nearly holomorphic forms of weight (l,m).
    Dims {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        dimtable: PathBuf,
        #[arg(long)]
        cap: Option<i64>,
        #[arg(long)]
        noncusp: bool,
    },
    /// Apply a word of differential operators to a form.
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Holomorphy by lowering operators and by nearly holomorphic degree.
    HoloTest {
        #[arg(long)]
        form: PathBuf,
    },
    /// Membership in M*_{3,m}.
    MstarTest {
        #[arg(long)]
        form: PathBuf,
    },
    /// Finite-difference check of a root vector against its classical formula.
    Numcheck {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
    /// Run all invariant suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "small")]
        size: SizeArg,
    },
}

/// Residual above which `numcheck` reports a failed check.
const NUMCHECK_TOLERANCE: f64 = 1e-5;

struct Outcome {
    inputs: Value,
    outputs: Value,
    checks_passed: bool,
}

impl Outcome {
    fn ok(inputs: Value, outputs: Value) -> Self {
        Outcome { inputs, outputs, checks_passed: true }
    }
}

pub fn run(cli: Cli) -> (Value, u8) {
    let name = command_name(&cli.command);
    let start = Instant::now();
    let result = dispatch(cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(o) => {
            let status = if o.checks_passed { 0 } else { 1 };
            let report = json!({
                "command": name,
                "inputs": o.inputs,
                "outputs": o.outputs,
                "passed": o.checks_passed,
                "elapsed_ms": elapsed_ms,
            });
            (report, status)
        }
        Err(e) => {
            let (kind, status) = match &e {
                Error::Parse(_) | Error::Json(_) => ("parse", 2),
                Error::Invalid(_) => ("invalid", 2),
                Error::Infeasible { .. } => ("infeasible", 2),
                Error::Io(_) => ("io", 2),
                Error::Consistency(_) => ("consistency", 1),
            };
            let report = json!({
                "command": name,
                "error": { "kind": kind, "message": e.to_string() },
                "elapsed_ms": elapsed_ms,
            });
            (report, status)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::KtypeMult { .. } => "ktype-mult",
        Command::VermaInfo { .. } => "verma-info",
        Command::Navigate { .. } => "navigate",
        Command::IndexSet { .. } => "index-set",
        Command::Dims { .. } => "dims",
        Command::Apply { .. } => "apply",
        Command::HoloTest { .. } => "holo-test",
        Command::MstarTest { .. } => "mstar-test",
        Command::Numcheck { .. } => "numcheck",
        Command::Selftest { .. } => "selftest",
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(i64, i64), Error> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(Error::Parse(format!("{what}: expected two integers \"a,b\", got {s:?}"))),
        },
        _ => Err(Error::Parse(format!("{what}: expected two integers \"a,b\", got {s:?}"))),
    }
}

fn parse_weight(s: &str, what: &str) -> Result<Weight, Error> {
    let (k, l) = parse_pair(s, what)?;
    Ok(Weight::new(k, l))
}

fn read_form(path: &Path) -> Result<NearHolForm, Error> {
    form_from_str(&fs::read_to_string(path)?)
}

fn complex_json(c: &Gq) -> Value {
    json!({ "re": format_rational(&c.re), "im": format_rational(&c.im) })
}

fn vector_json(v: &VermaVector) -> Value {
    let terms: Vec<Value> = v.terms().map(|(m, c)| json!({ "monomial": m, "coeff": complex_json(c) })).collect();
    json!({
        "weight": v.weight().map(|w| w.to_string()),
        "is_zero": v.is_zero(),
        "terms": terms,
        "display": v.to_string(),
    })
}

fn dispatch(c: Command) -> Result<Outcome, Error> {
    match c {
        Command::KtypeMult { lambda, mu, module, oracle } => ktype_mult(&lambda, &mu, module, oracle),
        Command::VermaInfo { lambda } => verma_info(&lambda),
        Command::Navigate { lambda, word } => navigate(&lambda, &word),
        Command::IndexSet { target, source } => index_set(&target, &source),
        Command::Dims { target, dimtable, cap, noncusp } => dims(&target, &dimtable, cap, noncusp),
        Command::Apply { word, form, out } => apply(&word, &form, out.as_deref()),
        Command::HoloTest { form } => holo_test(&form),
        Command::MstarTest { form } => mstar(&form),
        Command::Numcheck { form, x, point, h } => numcheck(&form, &x, &point, h),
        Command::Selftest { seed, size } => run_selftest(seed, size),
    }
}

/// Multiplicity of `μ` in `N(λ)` as the dimension of the kernel of `N₊`.
fn kernel_multiplicity(lambda: Weight, mu: Weight) -> Result<u64, Error> {
    Ok(VermaModule::new(lambda)?.highest_weight_vectors(mu).len() as u64)
}

fn ktype_mult(lambda: &str, mu: &str, module: ModuleArg, oracle: bool) -> Result<Outcome, Error> {
    let lambda = parse_weight(lambda, "--lambda")?;
    let mu = parse_weight(mu, "--mu")?;
    if lambda.k < lambda.l || mu.k < mu.l {
        return Err(Error::Invalid(format!("weights must satisfy k ≥ ℓ; got λ = {lambda}, μ = {mu}")));
    }
    let (label, value) = match module {
        ModuleArg::N => ("N", verma::ktype_multiplicity_n(lambda, mu)),
        ModuleArg::L => ("L", verma::ktype_multiplicity_l(lambda, mu)),
    };
    let inputs = json!({ "lambda": lambda.to_string(), "mu": mu.to_string(), "module": label, "oracle": oracle });
    let mut outputs = json!({ "multiplicity": value });
    let mut passed = true;
    if oracle {
        // Alternating sum over the chain λ, socle(λ), socle²(λ), … of kernel dimensions.
        let mut chain = vec![lambda];
        if let ModuleArg::L = module {
            while let Some(s) = verma::socle(*chain.last().expect("nonempty")) {
                chain.push(s);
            }
        }
        let mut alt: i64 = 0;
        for (j, w) in chain.iter().enumerate() {
            let n = kernel_multiplicity(*w, mu)? as i64;
            alt += if j % 2 == 0 { n } else { -n };
        }
        passed = alt == value as i64;
        outputs["oracle"] = json!({ "kernel_of_n_plus": alt });
        if let ModuleArg::N = module {
            let weights = verma::ktype_multiplicity_n_from_weights(lambda, mu);
            passed &= weights == value;
            outputs["oracle"]["from_weight_multiplicities"] = json!(weights);
        }
        outputs["oracle"]["agrees"] = json!(passed);
    }
    Ok(Outcome { inputs, outputs, checks_passed: passed })
}

fn verma_info(lambda: &str) -> Result<Outcome, Error> {
    let lambda = parse_weight(lambda, "--lambda")?;
    if lambda.k < lambda.l {
        return Err(Error::Invalid(format!("λ = {lambda} must satisfy k ≥ ℓ")));
    }
    let series: Vec<String> = verma::composition_series(lambda).iter().map(ToString::to_string).collect();
    let u = verma::unitary_class(lambda);
    Ok(Outcome::ok(
        json!({ "lambda": lambda.to_string() }),
        json!({
            "region": verma::region(lambda),
            "irreducible": verma::is_irreducible(lambda),
            "socle": verma::socle(lambda).map(|s| s.to_string()),
            "composition_series": series,
            "casimir": format_rational(&verma::casimir_scalar(lambda)),
            "square_integrable": u.square_integrable,
            "tempered": u.tempered,
            "unitarizable": u.unitarizable,
        }),
    ))
}

fn navigate(lambda: &str, word: &str) -> Result<Outcome, Error> {
    let lambda = parse_weight(lambda, "--lambda")?;
    let word: OperatorWord = word.parse()?;
    let module = VermaModule::new(lambda)?;
    let v = module.navigate(&word);
    let hw = module.act_symbol_vec(BasisSymbol::Np, &v).is_zero();
    let mut outputs = vector_json(&v);
    outputs["highest_weight"] = json!(hw);
    Ok(Outcome::ok(json!({ "lambda": lambda.to_string(), "word": word.to_string() }), outputs))
}

fn index_set(target: &str, source: &str) -> Result<Outcome, Error> {
    let (l, m) = parse_pair(target, "--target")?;
    let (lp, mp) = parse_pair(source, "--source")?;
    let words = structure::index_set(l, m, lp, mp);
    let details: Vec<Value> = words
        .iter()
        .map(|w| {
            let sig = structure::op_signature(w, lp, mp.max(0), 0).ok();
            json!({ "word": w.to_string(), "pretty": w.pretty(), "signature": sig })
        })
        .collect();
    Ok(Outcome::ok(
        json!({ "target": [l, m], "source": [lp, mp] }),
        json!({
            "words": words.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "count": words.len(),
            "details": details,
        }),
    ))
}

fn dims(target: &str, table: &Path, cap: Option<i64>, noncusp: bool) -> Result<Outcome, Error> {
    let (l, m) = parse_pair(target, "--target")?;
    let dims = DimTable::from_json_str(&fs::read_to_string(table)?)?;
    let b = if noncusp {
        structure::noncusp_dimension(l, m, &dims, cap)?
    } else {
        structure::cusp_dimension(l, m, &dims, cap)?
    };
    Ok(Outcome::ok(
        json!({ "target": [l, m], "dimtable": table.display().to_string(), "cap": cap, "noncusp": noncusp }),
        serde_json::to_value(b)?,
    ))
}

fn apply(word: &str, form: &Path, out: Option<&Path>) -> Result<Outcome, Error> {
    let word: OperatorWord = word.parse()?;
    let f = read_form(form)?;
    let g = apply_word(&word, &f)?;
    if let Some(path) = out {
        fs::write(path, form_to_string(&g) + "\n")?;
    }
    Ok(Outcome::ok(
        json!({ "word": word.to_string(), "form": form.display().to_string(), "out": out.map(|p| p.display().to_string()) }),
        json!({ "form": form_to_json(&g), "is_zero": g.is_zero(), "degree": g.degree(), "rational": g.is_rational() }),
    ))
}

fn holo_test(form: &Path) -> Result<Outcome, Error> {
    let f = read_form(form)?;
    let r = holomorphy_test(&f)?;
    let consistent = r.consistent();
    let mut outputs = serde_json::to_value(&r)?;
    outputs["consistent"] = json!(consistent);
    Ok(Outcome { inputs: json!({ "form": form.display().to_string() }), outputs, checks_passed: consistent })
}

fn mstar(form: &Path) -> Result<Outcome, Error> {
    let f = read_form(form)?;
    let member = mstar_test(&f)?;
    Ok(Outcome::ok(json!({ "form": form.display().to_string() }), json!({ "member": member, "degree": f.degree() })))
}

fn numcheck(form: &Path, x: &str, point: &str, h: f64) -> Result<Outcome, Error> {
    let f = read_form(form)?;
    let sym = BasisSymbol::from_token(x).ok_or_else(|| Error::Parse(format!("unknown basis symbol {x:?}")))?;
    let z = SiegelPoint::parse(point)?;
    let a = numcheck_rootvectors(&f, sym, &z, h)?;
    let b = numcheck_rootvectors(&f, sym, &z, h / 2.0)?;
    let passed = a.residual <= NUMCHECK_TOLERANCE;
    Ok(Outcome {
        inputs: json!({ "form": form.display().to_string(), "x": sym.token(), "point": point, "h": h }),
        outputs: json!({
            "residual": a.residual,
            "residual_half_step": b.residual,
            "ratio": a.residual / b.residual,
            "tolerance": NUMCHECK_TOLERANCE,
            "lhs": a.lhs,
            "rhs": a.rhs,
        }),
        checks_passed: passed,
    })
}

fn run_selftest(seed: u64, size: SizeArg) -> Result<Outcome, Error> {
    let size = match size {
        SizeArg::Small => Size::Small,
        SizeArg::Full => Size::Full,
    };
    let r = selftest::run(seed, size);
    let passed = r.passed;
    Ok(Outcome { inputs: json!({ "seed": seed, "size": size }), outputs: serde_json::to_value(r)?, checks_passed: passed })
}
