use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linkatlas::catalog::{self, Catalog, Filter};
use linkatlas::config::Config;
use linkatlas::record::{compute_record, now_timestamp, record_cost, reverify, InvariantRecord};
use linkatlas::search::{
    parse_range, run_search, seven_sphere_sweep, Family, Predicate, SearchSpec,
};
use linkatlas::{ew_samples, AtlasError, Result};
use linkatlas_core::curvature::{berger, eta_fit, ew_function_check, heisenberg, RicciFit};
use linkatlas_core::eta::{
    einstein_scale, ew_mu, heisenberg_alpha, homothety, lorentzian_scale, parse_rational,
    scalar_curvature, scalar_flat_scale, squash_class, EtaConstants, EtaConstantsRepr,
    HomothetyScale,
};
use linkatlas_core::links::{
    ade_match, classify_sign, count_monomials, is_well_formed, pi1_class, solve_weights,
    solve_weights_at_degree, LinkDescriptor, MonomialMatrix, SignClass,
};
use linkatlas_core::milnor_orlik::betti;
use linkatlas_core::spheres::{
    bp8_class, brieskorn_signature, casson, kervaire_classify, kervaire_negative, SphereKind,
};
use linkatlas_core::BpExponents;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "atlas",
    version,
    about = "Invariants of weighted homogeneous links"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Catalog file (JSON Lines).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Cost budget in elementary steps.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Worker threads for searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Configuration file; defaults to $ATLAS_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, degree, dimension and sign class.
    Classify { link: String },
    /// Middle Betti number.
    Betti { link: String },
    /// Weight system of a polynomial given by its monomials.
    WeightsSolve {
        /// `mono:[...]` or `[...]`, rows separated by `;`.
        monomials: String,
        /// Require this degree.
        #[arg(long)]
        degree: Option<BigUint>,
    },
    /// Number of monomials of degree d.
    Monomials { link: String },
    /// Full invariant record, including the sphere verdict.
    Sphere { link: String },
    /// Classify L(2, 2r_1, ..., 2r_2m, a).
    Kervaire {
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u64>,
        #[arg(long)]
        a: u64,
    },
    /// Casson invariant of a Brieskorn homology 3-sphere.
    Casson { link: String },
    /// Signature of the Milnor fibre.
    Signature { link: String },
    /// bP8 residue of a 7-dimensional link.
    Bp8 { link: String },
    /// η-Einstein constants.
    #[command(subcommand)]
    Eta(EtaCommand),
    /// Curvature of left-invariant metrics.
    #[command(subcommand)]
    Curvature(CurvatureCommand),
    /// Enumerate a family and filter it.
    Search(SearchArgs),
    /// bP8 residues over L(k, k, k, k+1, p).
    Sweep7 {
        #[arg(long, default_value_t = 8)]
        k_max: u64,
        #[arg(long, default_value_t = 600)]
        p_max: u64,
    },
    /// Catalog maintenance.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args)]
struct Constants {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Checked against 2n - λ when given.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
}

impl Constants {
    fn build(&self) -> Result<EtaConstants> {
        let lambda = parse_rational(&self.lambda)?;
        Ok(match &self.nu {
            Some(nu) => EtaConstants::new(self.n, lambda, parse_rational(nu)?)?,
            None => EtaConstants::from_lambda(self.n, lambda)?,
        })
    }
}

#[derive(Subcommand)]
enum EtaCommand {
    /// Apply a D-homothety with scale a.
    Transform {
        #[command(flatten)]
        c: Constants,
        #[arg(long)]
        a: String,
    },
    /// Scale reaching the Sasakian-Einstein constants.
    Einstein {
        #[command(flatten)]
        c: Constants,
    },
    /// Scale of the Lorentzian Sasakian-Einstein structure.
    Lorentzian {
        #[command(flatten)]
        c: Constants,
    },
    /// Einstein-Weyl pair constant μ².
    Ew {
        #[command(flatten)]
        c: Constants,
    },
    /// Scalar curvature and the scalar-flat scale.
    Scalar {
        #[command(flatten)]
        c: Constants,
    },
    /// Squashed, Einstein or stretched.
    Squash {
        #[arg(long)]
        a: String,
    },
    /// α² for the Heisenberg group H(n).
    HeisenbergAlpha {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum CurvatureCommand {
    Heisenberg {
        #[arg(long)]
        n: usize,
    },
    Berger {
        #[arg(long)]
        a: String,
    },
    /// Check f² - ξ(f) = -α² for f = α tan(z + c) on random samples.
    CheckEw {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Box,
    #[value(name = "237m")]
    F237m,
    Kkk1p,
    Kkkk1p,
    Pqrpqr,
    Kervaire,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Exponent ranges for `box`, e.g. `2..6,2..6,2..6,2..6`.
    #[arg(long, value_delimiter = ',')]
    ranges: Vec<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    r1: Option<String>,
    #[arg(long)]
    r2: Option<String>,
    #[arg(long)]
    a: Option<String>,
    /// Predicates, all of which must hold: `sign=null`, `betti=21`,
    /// `rational_sphere`, `pairwise_coprime`, `coprime_to=2`.
    #[arg(long = "where")]
    predicates: Vec<String>,
    /// Append matching records to the catalog.
    #[arg(long)]
    append: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SphereArg {
    Standard,
    Kervaire,
    Homology,
    Rational,
    NotASphere,
    Undetermined,
}

impl From<SphereArg> for SphereKind {
    fn from(s: SphereArg) -> Self {
        match s {
            SphereArg::Standard => SphereKind::StandardSphere,
            SphereArg::Kervaire => SphereKind::KervaireSphere,
            SphereArg::Homology => SphereKind::HomologySphere,
            SphereArg::Rational => SphereKind::RationalHomologySphere,
            SphereArg::NotASphere => SphereKind::NotASphere,
            SphereArg::Undetermined => SphereKind::Undetermined,
        }
    }
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Compute and append records for the given links.
    Append { links: Vec<String> },
    Query {
        #[arg(long)]
        sign: Option<String>,
        #[arg(long)]
        betti: Option<u128>,
        #[arg(long, value_enum)]
        sphere: Option<SphereArg>,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Recompute every record and report disagreements.
    Verify,
}

struct Ctx {
    json: bool,
    config: Config,
}

impl Ctx {
    fn catalog_path(&self) -> Result<PathBuf> {
        self.config
            .catalog
            .clone()
            .ok_or_else(|| AtlasError::InvalidInput("no catalog path; pass --catalog".into()))
    }

    fn check_budget(&self, estimated: u128) -> Result<()> {
        if estimated > self.config.budget {
            return Err(AtlasError::BoundsTooLarge {
                estimated,
                budget: self.config.budget,
            });
        }
        Ok(())
    }

    /// Prints `rows` as an aligned table, or `value` as JSON.
    fn emit(&self, value: Value, rows: &[(&str, String)]) {
        if self.json {
            println!("{value}");
            return;
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            println!("{k:<width$}  {v}");
        }
    }
}

fn link(s: &str) -> Result<LinkDescriptor> {
    Ok(s.parse()?)
}

fn bp_only(s: &str) -> Result<BpExponents> {
    match link(s)? {
        LinkDescriptor::Bp(a) => Ok(a),
        other => Err(AtlasError::InvalidInput(format!(
            "{other} is not a Brieskorn-Pham link; use bp:a,b,c"
        ))),
    }
}

fn fit_rows(fit: &RicciFit) -> (Value, Vec<(&'static str, String)>) {
    let diag: Vec<String> = (0..fit.ricci.dim())
        .map(|i| fit.ricci.get(i, i).to_string())
        .collect();
    let value = json!({
        "lambda": fit.lambda_fit.to_string(),
        "nu": fit.nu_fit.to_string(),
        "residual": fit.residual.to_string(),
        "eta_einstein": fit.is_eta_einstein(),
        "k_contact_residual": fit.k_contact_residual.to_string(),
        "k_contact": fit.k_contact_holds(),
        "ricci_diagonal": diag,
    });
    let rows = vec![
        ("lambda", fit.lambda_fit.to_string()),
        ("nu", fit.nu_fit.to_string()),
        ("residual", fit.residual.to_string()),
        ("eta-Einstein", fit.is_eta_einstein().to_string()),
        ("K-contact", fit.k_contact_holds().to_string()),
        ("Ric diagonal", diag.join(", ")),
    ];
    (value, rows)
}

fn record_rows(r: &InvariantRecord) -> Vec<(&'static str, String)> {
    let mut rows = vec![
        ("key", r.key.clone()),
        ("sign", r.sign.to_string()),
        ("middle Betti", r.middle_betti.to_string()),
        ("torsion", r.torsion.to_string()),
        ("sphere", r.sphere.to_string()),
    ];
    if let Some(s) = r.signature {
        rows.push(("signature", s.to_string()));
    }
    if let Some(c) = &r.constants_note {
        rows.push((
            "constants",
            format!(
                "n={} λ={} ν={} ({})",
                c.constants.n, c.constants.lambda, c.constants.nu, c.normalization
            ),
        ));
    }
    rows
}

fn print_records(ctx: &Ctx, records: &[InvariantRecord]) {
    if ctx.json {
        for r in records {
            println!("{}", serde_json::to_string(r).unwrap_or_default());
        }
        return;
    }
    println!(
        "{:<28} {:<9} {:>7}  {:<14} {:>9}  sphere",
        "key", "sign", "betti", "torsion", "signature"
    );
    for r in records {
        println!(
            "{:<28} {:<9} {:>7}  {:<14} {:>9}  {}",
            r.key,
            r.sign.to_string(),
            r.middle_betti,
            r.torsion.to_string(),
            r.signature
                .map(|s| s.to_string())
                .unwrap_or_else(|| "-".into()),
            r.sphere
        );
    }
}

fn constants_value(c: &EtaConstants) -> Value {
    serde_json::to_value(EtaConstantsRepr::from(c)).unwrap_or(Value::Null)
}

fn required(name: &str, v: &Option<String>) -> Result<std::ops::RangeInclusive<u64>> {
    match v {
        Some(s) => parse_range(s),
        None => Err(AtlasError::InvalidInput(format!(
            "--{name} is required for this family"
        ))),
    }
}

fn family(args: &SearchArgs) -> Result<Family> {
    Ok(match args.family {
        FamilyName::Box => Family::BpBox {
            ranges: args
                .ranges
                .iter()
                .map(|s| parse_range(s))
                .collect::<Result<_>>()?,
        },
        FamilyName::F237m => Family::Family237m {
            m: required("m", &args.m)?,
        },
        FamilyName::Kkk1p => Family::Kkk1p {
            k: required("k", &args.k)?,
            p: required("p", &args.p)?,
        },
        FamilyName::Kkkk1p => Family::Kkkk1p {
            k: required("k", &args.k)?,
            p: required("p", &args.p)?,
        },
        FamilyName::Pqrpqr => Family::Pqrpqr {
            p: required("p", &args.p)?,
            q: required("q", &args.q)?,
            r: required("r", &args.r)?,
        },
        FamilyName::Kervaire => Family::Kervaire {
            r1: required("r1", &args.r1)?,
            r2: required("r2", &args.r2)?,
            a: required("a", &args.a)?,
        },
    })
}

fn run(cli: Cli) -> Result<()> {
    let mut config = Config::resolve(cli.config.as_deref())?;
    if let Some(c) = cli.catalog {
        config.catalog = Some(c);
    }
    if let Some(b) = cli.budget {
        config.budget = b;
    }
    if let Some(t) = cli.threads {
        config.threads = Some(t);
    }
    let ctx = Ctx {
        json: cli.json,
        config,
    };

    match cli.command {
        Command::Classify { link: s } => {
            let l = link(&s)?;
            let ws = l.weight_system()?;
            let sign = classify_sign(&ws);
            let mut value = json!({
                "key": l.key()?,
                "weights": ws.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "degree": ws.degree().to_string(),
                "link_dim": ws.link_dim(),
                "sign": sign,
            });
            let mut rows = vec![
                ("key", l.key()?),
                ("weight system", ws.to_string()),
                ("link dimension", ws.link_dim().to_string()),
                ("sign", sign.to_string()),
            ];
            if ws.nvars() == 3 {
                let pi1 = format!("{:?}", pi1_class(&ws)?);
                value["pi1"] = json!(pi1);
                rows.push(("pi_1", pi1));
                if let Some(label) = ade_match(&ws) {
                    value["ade"] = json!(label.to_string());
                    rows.push(("ADE", label.to_string()));
                }
            }
            if ws.nvars() == 4 {
                let wf = is_well_formed(&ws)?;
                value["well_formed"] = json!(wf);
                rows.push(("well-formed", wf.to_string()));
            }
            ctx.emit(value, &rows);
        }
        Command::Betti { link: s } => {
            let l = link(&s)?;
            let b = betti(&l.weight_system()?)?;
            ctx.emit(
                json!({
                    "key": l.key()?,
                    "middle_betti": b.middle_betti.to_string(),
                    "link_dim": b.link_dim,
                }),
                &[
                    ("key", l.key()?),
                    ("link dimension", b.link_dim.to_string()),
                    ("middle Betti", b.middle_betti.to_string()),
                ],
            );
        }
        Command::WeightsSolve { monomials, degree } => {
            let text = if monomials.trim_start().starts_with("mono:") {
                monomials
            } else {
                format!("mono:{monomials}")
            };
            let LinkDescriptor::Monomials(m) = link(&text)? else {
                return Err(AtlasError::InvalidInput(
                    "expected a monomial matrix".into(),
                ));
            };
            let ws = match degree {
                Some(d) => solve_weights_at_degree(&m, &d)?,
                None => solve_weights(&m)?,
            };
            ctx.emit(
                json!({
                    "key": ws.key(),
                    "weights": ws.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "degree": ws.degree().to_string(),
                    "sign": classify_sign(&ws),
                }),
                &[
                    ("monomials", MonomialMatrix::to_string(&m)),
                    ("weight system", ws.to_string()),
                    ("sign", classify_sign(&ws).to_string()),
                ],
            );
        }
        Command::Monomials { link: s } => {
            let ws = link(&s)?.weight_system()?;
            let count = count_monomials(&ws)?;
            ctx.emit(
                json!({ "key": ws.key(), "monomials": count.to_string() }),
                &[
                    ("weight system", ws.to_string()),
                    ("monomials", count.to_string()),
                ],
            );
        }
        Command::Sphere { link: s } => {
            let l = link(&s)?;
            ctx.check_budget(record_cost(&l))?;
            let r = compute_record(&l, &now_timestamp())?;
            ctx.emit(serde_json::to_value(&r)?, &record_rows(&r));
        }
        Command::Kervaire { r, a } => {
            let (verdict, sign) = kervaire_classify(&r, a)?;
            let negative = kervaire_negative(&r, a);
            ctx.emit(
                json!({ "sphere": verdict, "sign": sign, "negative_criterion": negative }),
                &[
                    ("sphere", verdict.to_string()),
                    ("sign", sign.to_string()),
                    ("Σ1/r_i < (a-2)/a", negative.to_string()),
                ],
            );
        }
        Command::Casson { link: s } => {
            let a = bp_only(&s)?;
            let v = casson(&a)?;
            ctx.emit(
                json!({ "key": a.key(), "casson": v }),
                &[("key", a.key()), ("Casson", v.to_string())],
            );
        }
        Command::Signature { link: s } => {
            let a = bp_only(&s)?;
            ctx.check_budget(record_cost(&LinkDescriptor::Bp(a.clone())))?;
            let sig = brieskorn_signature(&a)?;
            ctx.emit(
                serde_json::to_value(sig)?,
                &[
                    ("key", a.key()),
                    ("signature", sig.signature.to_string()),
                    ("σ+", sig.positive_count.to_string()),
                    ("σ-", sig.negative_count.to_string()),
                    ("integral", sig.integral_count.to_string()),
                ],
            );
        }
        Command::Bp8 { link: s } => {
            let a = bp_only(&s)?;
            ctx.check_budget(record_cost(&LinkDescriptor::Bp(a.clone())))?;
            let v = bp8_class(&a)?;
            ctx.emit(
                json!({ "key": a.key(), "sphere": v }),
                &[("key", a.key()), ("sphere", v.to_string())],
            );
        }
        Command::Eta(cmd) => eta(&ctx, cmd)?,
        Command::Curvature(cmd) => curvature(&ctx, cmd)?,
        Command::Search(args) => {
            let spec = SearchSpec {
                family: family(&args)?,
                predicates: args
                    .predicates
                    .iter()
                    .map(|p| p.parse::<Predicate>())
                    .collect::<Result<_>>()?,
            };
            let out = run_search(
                &spec,
                ctx.config.budget,
                ctx.config.threads,
                &now_timestamp(),
            )?;
            let appended = if args.append {
                let mut cat = Catalog::open(ctx.catalog_path()?)?;
                Some(cat.append(&out.records)?)
            } else {
                None
            };
            if ctx.json {
                println!(
                    "{}",
                    json!({ "summary": out.summary, "records": out.records, "catalog": appended })
                );
            } else {
                print_records(&ctx, &out.records);
                println!();
                println!(
                    "enumerated {}, matched {}",
                    out.summary.enumerated, out.summary.matched
                );
                for (sign, n) in &out.summary.by_sign {
                    println!("  {sign}: {n}");
                }
                for note in &out.summary.notes {
                    println!("note: {note}");
                }
                if let Some(rep) = appended {
                    println!("catalog: {} written, {} skipped", rep.written, rep.skipped);
                }
            }
        }
        Command::Sweep7 { k_max, p_max } => {
            let out = seven_sphere_sweep(k_max, p_max, ctx.config.budget, ctx.config.threads)?;
            if ctx.json {
                println!("{}", serde_json::to_string(&out)?);
            } else {
                println!("residue  witness");
                for (r, w) in &out.witnesses {
                    println!("{r:>7}  L({k},{k},{k},{},{})", w.k + 1, w.p, k = w.k);
                }
                println!(
                    "{} distinct residues from {} rational homology spheres ({} links examined)",
                    out.distinct, out.rational_spheres, out.examined
                );
            }
        }
        Command::Catalog(cmd) => catalog_cmd(&ctx, cmd)?,
    }
    Ok(())
}

fn eta(ctx: &Ctx, cmd: EtaCommand) -> Result<()> {
    match cmd {
        EtaCommand::Transform { c, a } => {
            let c = c.build()?;
            let a = HomothetyScale::new(parse_rational(&a)?)?;
            let out = homothety(&c, &a);
            ctx.emit(
                json!({ "input": constants_value(&c), "a": a.to_string(), "output": constants_value(&out) }),
                &[("input", c.to_string()), ("a", a.to_string()), ("output", out.to_string())],
            );
        }
        EtaCommand::Einstein { c } => {
            let c = c.build()?;
            let a = einstein_scale(&c)?;
            let out = homothety(&c, &a);
            ctx.emit(
                json!({ "a": a.to_string(), "output": constants_value(&out) }),
                &[("a", a.to_string()), ("output", out.to_string())],
            );
        }
        EtaCommand::Lorentzian { c } => {
            let c = c.build()?;
            let l = lorentzian_scale(&c)?;
            ctx.emit(
                json!({ "a": l.a.to_string(), "relation": l.relation }),
                &[("a", l.a.to_string()), ("relation", l.relation.to_string())],
            );
        }
        EtaCommand::Ew { c } => {
            let c = c.build()?;
            let ew = ew_mu(&c)?;
            let mu = ew.mu_exact().map(|m| m.to_string());
            ctx.emit(
                json!({ "mu_squared": ew.mu_squared.to_string(), "mu": mu, "mu_approx": ew.mu_f64() }),
                &[
                    ("μ²", ew.mu_squared.to_string()),
                    ("μ", mu.unwrap_or_else(|| format!("≈ {}", ew.mu_f64()))),
                ],
            );
        }
        EtaCommand::Scalar { c } => {
            let c = c.build()?;
            let s = scalar_curvature(&c);
            let flat = scalar_flat_scale(&c).ok().map(|a| a.to_string());
            ctx.emit(
                json!({ "scalar_curvature": s.to_string(), "scalar_flat_scale": flat }),
                &[
                    ("scalar curvature", s.to_string()),
                    ("scalar-flat scale", flat.unwrap_or_else(|| "-".into())),
                ],
            );
        }
        EtaCommand::Squash { a } => {
            let a = HomothetyScale::new(parse_rational(&a)?)?;
            let class = squash_class(&a);
            ctx.emit(
                json!({ "a": a.to_string(), "class": class }),
                &[("a", a.to_string()), ("class", class.to_string())],
            );
        }
        EtaCommand::HeisenbergAlpha { n } => {
            let a2 = heisenberg_alpha(n)?;
            ctx.emit(
                json!({ "n": n, "alpha_squared": a2.to_string() }),
                &[("α²", a2.to_string())],
            );
        }
    }
    Ok(())
}

fn curvature(ctx: &Ctx, cmd: CurvatureCommand) -> Result<()> {
    match cmd {
        CurvatureCommand::Heisenberg { n } => {
            let fit = eta_fit(&heisenberg::<BigRational>(n)?)?;
            let (v, rows) = fit_rows(&fit);
            ctx.emit(v, &rows);
        }
        CurvatureCommand::Berger { a } => {
            let fit = eta_fit(&berger(parse_rational(&a)?)?)?;
            let (v, rows) = fit_rows(&fit);
            ctx.emit(v, &rows);
        }
        CurvatureCommand::CheckEw {
            n,
            samples,
            seed,
            c,
        } => {
            let zs = ew_samples(samples, seed, c);
            let residual = ew_function_check(n, &zs, c)?;
            ctx.emit(
                json!({ "n": n, "samples": samples, "residual": residual }),
                &[
                    ("samples", samples.to_string()),
                    ("max residual", format!("{residual:e}")),
                ],
            );
        }
    }
    Ok(())
}

fn catalog_cmd(ctx: &Ctx, cmd: CatalogCommand) -> Result<()> {
    let path = ctx.catalog_path()?;
    match cmd {
        CatalogCommand::Append { links } => {
            let ts = now_timestamp();
            let descriptors = links.iter().map(|s| link(s)).collect::<Result<Vec<_>>>()?;
            ctx.check_budget(
                descriptors
                    .iter()
                    .map(record_cost)
                    .fold(0, u128::saturating_add),
            )?;
            let records = descriptors
                .iter()
                .map(|l| compute_record(l, &ts))
                .collect::<Result<Vec<_>>>()?;
            let mut cat = Catalog::open(&path)?;
            let rep = cat.append(&records)?;
            for c in &rep.corrupt {
                eprintln!("{}:{}: corrupt line: {}", path.display(), c.line, c.message);
            }
            ctx.emit(
                serde_json::to_value(&rep)?,
                &[
                    ("written", rep.written.to_string()),
                    ("skipped", rep.skipped.to_string()),
                ],
            );
        }
        CatalogCommand::Query {
            sign,
            betti,
            sphere,
            nvars,
        } => {
            let filter = Filter {
                sign: sign.map(|s| s.parse::<SignClass>()).transpose()?,
                betti,
                sphere: sphere.map(SphereKind::from),
                nvars,
            };
            let loaded = catalog::query(&path, &filter)?;
            for c in &loaded.corrupt {
                eprintln!("{}:{}: corrupt line: {}", path.display(), c.line, c.message);
            }
            print_records(ctx, &loaded.records);
        }
        CatalogCommand::Verify => {
            let loaded = catalog::load(&path)?;
            for c in &loaded.corrupt {
                eprintln!("{}:{}: corrupt line: {}", path.display(), c.line, c.message);
            }
            let mut bad = Vec::new();
            for r in &loaded.records {
                if !reverify(r)? {
                    bad.push(r.key.clone());
                }
            }
            ctx.emit(
                json!({ "checked": loaded.records.len(), "mismatched": bad, "corrupt_lines": loaded.corrupt.len() }),
                &[
                    ("checked", loaded.records.len().to_string()),
                    ("mismatched", if bad.is_empty() { "none".into() } else { bad.join(" ") }),
                    ("corrupt lines", loaded.corrupt.len().to_string()),
                ],
            );
            if !bad.is_empty() {
                return Err(AtlasError::InvalidInput(format!(
                    "{} record(s) disagree with recomputation",
                    bad.len()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
