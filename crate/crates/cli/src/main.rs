mod io;

use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use defspace::chevalley::{
    adjoint_invariants_sc, coadjoint_invariants_sc, nilradical_dual_invariants, LeviGenerators,
};
use defspace::components::{
    agen_shape, cgroup_component_group, component_count, dim_formulas, lgroup_datum, AgenShape,
    ComponentCount, DimFormulas, GaloisExtDesc, GaloisExtJson,
};
use defspace::extensions::{build_extension, extension_to_cocycle, CocycleJson, GenTwoCocycle};
use defspace::field::FiniteField;
use defspace::galois::{
    adjoint_rep, cohomology, presentation_numbers, relative_presentation, validate_tame_rep,
    LocalFieldDesc, TameRep, TameRepJson,
};
use defspace::group::GroupTable;
use defspace::lattice::{LatticeJson, LatticeWithAction};
use defspace::levi::{
    enumerate_standard_levis, has_codim2_levi, parabolic_partition, split_codim2,
};
use defspace::root_datum::{parse_type, DatumJson, GenReductiveDatum};
use defspace::scenario::{parse_scenarios, run_scenarios};
use defspace::semisimplify::{
    brauer_nesbitt_equal, is_absolutely_irreducible, random_block_triangular, semisimplify,
    BrauerNesbitt, CompositionFlag, FqMatrixRep, RepJson,
};

use io::{factors, json_arg, read_text, Printer};

const DEFAULT_SEED: u64 = 20_240_229;

#[derive(Parser)]
#[command(
    name = "defspace",
    version,
    about = "Root data, local Galois cohomology and component counts"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomised batteries.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root data: summary, fundamental group, étale covers.
    #[command(subcommand)]
    Rdx(Rdx),
    /// Standard Levi subgroups.
    Levis {
        #[command(flatten)]
        datum: DatumArg,
        /// Only report a Δ-stable codimension-2 Levi and split along it.
        #[arg(long)]
        codim2: bool,
        /// Levi of this cocharacter instead of the standard list.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
    },
    /// Invariants in Lie algebras over F_p.
    #[command(subcommand)]
    Lie(Lie),
    /// Cohomology of tame representations.
    #[command(subcommand)]
    Galois(Galois),
    /// Presentations and dimensions of deformation rings.
    #[command(subcommand)]
    Defring(Defring),
    /// Connected components, L-groups and C-groups.
    #[command(subcommand)]
    Components(Components),
    /// Extensions from generalised 2-cocycles.
    #[command(subcommand)]
    Ext(Ext),
    /// Semisimplification of matrix representations.
    #[command(subcommand)]
    Ssim(Ssim),
    /// Batch files of checks.
    #[command(subcommand)]
    Scenario(ScenarioCmd),
}

#[derive(Args, Clone)]
struct DatumArg {
    /// Type string such as GL3, PGL2xGL1, SL2xSO5.
    #[arg(long = "type", conflicts_with = "datum")]
    ty: Option<String>,
    /// Datum as JSON (inline or a file).
    #[arg(long)]
    datum: Option<String>,
}

impl DatumArg {
    fn load(&self) -> anyhow::Result<GenReductiveDatum> {
        match (&self.ty, &self.datum) {
            (Some(t), _) => Ok(GenReductiveDatum::connected(parse_type(t)?)),
            (None, Some(j)) => Ok(json_arg::<DatumJson>(j, "datum")?.to_datum()?),
            (None, None) => bail!("one of --type or --datum is required"),
        }
    }
}

#[derive(Subcommand)]
enum Rdx {
    Info {
        #[command(flatten)]
        datum: DatumArg,
    },
    Pi1 {
        #[command(flatten)]
        datum: DatumArg,
    },
    /// Cover `G₁ → G'` with étale fundamental group at `p`.
    Cover {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum Lie {
    /// `((Lie G_sc)*)^{G_sc}`.
    Coadjoint {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        p: u32,
    },
    /// `(Lie G_sc)^{G_sc}`.
    Adjoint {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        p: u32,
    },
    /// `((Lie U)*)^L` for every proper standard Levi.
    Nilradical {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Args)]
struct FieldRep {
    /// Local field as JSON, e.g. '{"p": 3}'.
    #[arg(long)]
    field: String,
    /// Tame representation as JSON: field, sigma, tau.
    #[arg(long, alias = "ad")]
    rep: String,
}

impl FieldRep {
    fn load(&self) -> anyhow::Result<(LocalFieldDesc, TameRep)> {
        let lf: LocalFieldDesc = json_arg(&self.field, "field")?;
        let rep = TameRep::from_json(&json_arg::<TameRepJson>(&self.rep, "rep")?)?;
        validate_tame_rep(&lf, &rep)?;
        Ok((lf, rep))
    }
}

#[derive(Subcommand)]
enum Galois {
    /// `h⁰, h¹, h²` and `dim Z¹`.
    H {
        #[command(flatten)]
        input: FieldRep,
    },
    Z1 {
        #[command(flatten)]
        input: FieldRep,
    },
}

#[derive(Subcommand)]
enum Defring {
    /// `(r, s)` for the framed ring, or `(r, t)` relative to `--quotient`.
    Presentation {
        #[command(flatten)]
        datum: DatumArg,
        /// Type of the quotient `H`; `--rep` is then the kernel of `ad G → ad H`.
        #[arg(long)]
        quotient: Option<String>,
        #[command(flatten)]
        input: FieldRep,
        /// Treat `--rep` as a GL_n representation and pass to its adjoint.
        #[arg(long)]
        adjoint: bool,
    },
    /// Dimension formulas for a base of degree `dF` over Q_p.
    Dims {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long = "dF")]
        d_f: usize,
    },
}

#[derive(Args)]
struct ExtArg {
    /// Galois extension as JSON; defaults to the trivial extension of Q_p.
    #[arg(long, conflicts_with = "p")]
    ext: Option<String>,
    /// Base Q_p when no `--ext` is given.
    #[arg(long)]
    p: Option<u32>,
}

impl ExtArg {
    fn load(&self) -> anyhow::Result<GaloisExtDesc> {
        match (&self.ext, self.p) {
            (Some(j), _) => Ok(GaloisExtDesc::from_json(json_arg::<GaloisExtJson>(
                j, "ext",
            )?)?),
            (None, Some(p)) => Ok(GaloisExtDesc::trivial(LocalFieldDesc::qp(p)?)),
            (None, None) => bail!("one of --ext or --p is required"),
        }
    }
}

#[derive(Subcommand)]
enum Components {
    /// Components of the generic fibre.
    Count {
        #[command(flatten)]
        ext: ExtArg,
        /// Torus quotient lattice `M` as JSON; otherwise taken from `--type`/`--datum`.
        #[arg(long)]
        lattice: Option<String>,
        #[command(flatten)]
        datum: DatumArg,
        /// Group table for a `--lattice` that does not carry one.
        #[arg(long, requires = "lattice")]
        group: Option<String>,
        /// Also report the shape of the generic-fibre ring for a base of this degree.
        #[arg(long = "dF")]
        d_f: Option<usize>,
        /// The torus quotient is a semidirect product (canonical labelling).
        #[arg(long)]
        semidirect: bool,
    },
    /// Dual datum with the contragredient action.
    Lgroup {
        #[command(flatten)]
        datum: DatumArg,
        #[command(flatten)]
        ext: ExtArg,
    },
    /// Component group for the fixed-cyclotomic C-group problem.
    Cgroup {
        #[command(flatten)]
        datum: DatumArg,
        #[command(flatten)]
        ext: ExtArg,
    },
}

#[derive(Subcommand)]
enum Ext {
    /// Multiplication table of `N ⋊_{ω,c} Δ`.
    Build {
        #[arg(long)]
        cocycle: String,
    },
    /// Axioms, group laws and recovery of the cocycle from the built extension.
    Verify {
        #[arg(long)]
        cocycle: String,
    },
}

#[derive(Subcommand)]
enum Ssim {
    /// Semisimplify one representation and compare characteristic polynomials.
    Run {
        #[arg(long)]
        rep: String,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
    },
    /// Seeded random block upper triangular representations.
    Battery {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        generators: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
    },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    /// Run a scenario file, resolved against the data directory when not found.
    Run { file: String },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Printer { json: cli.json };
    match run(cli.command, &out, cli.seed) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &Printer, seed: u64) -> anyhow::Result<Outcome> {
    match command {
        Command::Rdx(c) => rdx(c, out),
        Command::Levis {
            datum,
            codim2,
            lambda,
        } => levis(&datum.load()?, codim2, lambda, out),
        Command::Lie(c) => lie(c, out),
        Command::Galois(c) => galois(c, out),
        Command::Defring(c) => defring(c, out),
        Command::Components(c) => components(c, out),
        Command::Ext(c) => ext(c, out),
        Command::Ssim(c) => ssim(c, out, seed),
        Command::Scenario(ScenarioCmd::Run { file }) => scenario(&file, out),
    }
}

fn rdx(c: Rdx, out: &Printer) -> anyhow::Result<Outcome> {
    match c {
        Rdx::Info { datum } => {
            let d = datum.load()?;
            let b = d.base();
            let v = json!({
                "label": b.label(),
                "rank": b.rank_x(),
                "semisimple_rank": b.semisimple_rank(),
                "dim": d.dim_g(),
                "dim_centre": d.dim_z(),
                "roots": b.num_roots(),
                "pi1": b.pi1_derived(),
                "component_group_order": d.group().order(),
            });
            out.emit(&v, || {
                format!(
                    "{}: rank {}, semisimple rank {}, dim {}, centre dim {}, {} roots, pi1 {}",
                    b.label(),
                    b.rank_x(),
                    b.semisimple_rank(),
                    d.dim_g(),
                    d.dim_z(),
                    b.num_roots(),
                    factors(&b.pi1_derived())
                )
            })?;
        }
        Rdx::Pi1 { datum } => {
            let pi1 = datum.load()?.base().pi1_derived();
            out.emit(&json!({ "pi1": pi1 }), || factors(&pi1))?;
        }
        Rdx::Cover { datum, p } => {
            let d = datum.load()?;
            let cover = d.base().etale_pi1_cover(p);
            let pi1 = cover.pi1_derived();
            let etale = cover.is_pi1_etale(p);
            let v = json!({ "cover": DatumJson::from_datum(&GenReductiveDatum::connected(cover.clone())), "pi1": pi1, "etale": etale });
            out.emit(&v, || {
                format!(
                    "cover {} with pi1 {}, étale at {p}: {etale}",
                    cover.label(),
                    factors(&pi1)
                )
            })?;
        }
    }
    Ok(Outcome::Pass)
}

fn levis(
    d: &GenReductiveDatum,
    codim2: bool,
    lambda: Option<Vec<i64>>,
    out: &Printer,
) -> anyhow::Result<Outcome> {
    if let Some(lambda) = lambda {
        let l = parabolic_partition(d, &lambda)?;
        out.emit(&l, || {
            format!(
                "subset {:?}: dim L {}, dim U {}",
                l.subset, l.dim_l, l.dim_u
            )
        })?;
        return Ok(Outcome::Pass);
    }
    if codim2 {
        let Some(levi) = has_codim2_levi(d) else {
            out.emit(&json!({ "levi": null }), || {
                "no Δ-stable codimension-2 Levi".to_string()
            })?;
            return Ok(Outcome::Pass);
        };
        let split = split_codim2(d, &levi)?;
        let v = json!({
            "levi": levi,
            "g1": split.g1.label(),
            "beta": split.beta,
            "checked": split.checked,
        });
        out.emit(&v, || {
            format!(
                "Levi {:?}: adjoint quotient {} x PGL2 (β = root {}, {} combinations checked)",
                levi.subset,
                split.g1.label(),
                split.beta,
                split.checked
            )
        })?;
        return Ok(Outcome::Pass);
    }
    let all = enumerate_standard_levis(d);
    out.emit(&all, || {
        all.iter()
            .map(|l| {
                format!(
                    "{:?}: dim L {}, dim U {}, Δ-stable {}",
                    l.subset, l.dim_l, l.dim_u, l.delta_stable
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    Ok(Outcome::Pass)
}

fn lie(c: Lie, out: &Printer) -> anyhow::Result<Outcome> {
    match c {
        Lie::Coadjoint { datum, p } => {
            let inv = coadjoint_invariants_sc(datum.load()?.base(), p)?;
            out.emit(
                &json!({ "dim": inv.dim, "generators": inv.generators }),
                || format!("dim {} ({} generators)", inv.dim, inv.generators),
            )?;
        }
        Lie::Adjoint { datum, p } => {
            let inv = adjoint_invariants_sc(datum.load()?.base(), p)?;
            out.emit(
                &json!({ "dim": inv.dim, "generators": inv.generators }),
                || format!("dim {} ({} generators)", inv.dim, inv.generators),
            )?;
        }
        Lie::Nilradical { datum, p } => {
            let d = datum.load()?;
            let mut rows = Vec::new();
            for levi in enumerate_standard_levis(&d)
                .into_iter()
                .filter(|l| !l.is_whole_group())
            {
                let dim = nilradical_dual_invariants(&d, &levi, p, &LeviGenerators::Full)?.dim;
                rows.push(json!({ "subset": levi.subset, "dim_U": levi.dim_u, "dim": dim }));
            }
            out.emit(&rows, || {
                rows.iter()
                    .map(|r| {
                        format!(
                            "{}: dim U {}, invariants {}",
                            r["subset"], r["dim_U"], r["dim"]
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
        }
    }
    Ok(Outcome::Pass)
}

fn galois(c: Galois, out: &Printer) -> anyhow::Result<Outcome> {
    match c {
        Galois::H { input } => {
            let (lf, rep) = input.load()?;
            let h = cohomology(&lf, &rep)?;
            out.emit(&h, || format!("h0 {}\nh1 {}\nh2 {}", h.h0, h.h1, h.h2))?;
        }
        Galois::Z1 { input } => {
            let (lf, rep) = input.load()?;
            let z1 = cohomology(&lf, &rep)?.z1;
            out.emit(&json!({ "z1": z1 }), || format!("z1 {z1}"))?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct DimsOutput {
    #[serde(flatten)]
    formulas: DimFormulas,
    /// Relative dimension of the framed ring over the coefficients.
    rel_dim: usize,
}

fn defring(c: Defring, out: &Printer) -> anyhow::Result<Outcome> {
    match c {
        Defring::Presentation {
            datum,
            quotient,
            input,
            adjoint,
        } => {
            let dg = datum.load()?;
            let (lf, mut rep) = input.load()?;
            if adjoint {
                rep = adjoint_rep(&rep)?;
            }
            match quotient {
                None => {
                    let n = presentation_numbers(&dg, &lf, &rep)?;
                    out.emit(&n, || {
                        format!("r {}\ns {}\nrelative dim {}", n.r, n.s, n.relative_dim)
                    })?;
                }
                Some(h) => {
                    let dh = GenReductiveDatum::connected(parse_type(&h)?);
                    let n = relative_presentation(&dg, &dh, &lf, &rep)?;
                    out.emit(&n, || {
                        format!("r {}\nt {}\nrelative dim {}", n.r, n.t, n.relative_dim)
                    })?;
                }
            }
        }
        Defring::Dims { datum, d_f } => {
            if d_f == 0 {
                bail!("--dF must be positive");
            }
            let formulas = dim_formulas(&datum.load()?, d_f);
            let o = DimsOutput {
                formulas,
                rel_dim: formulas.rel_dim_rsquare,
            };
            out.emit(&o, || {
                format!(
                    "rel_dim {}\ndim Xgen {}\ndim Xgen special fibre {}\ndim Xps {}\nfibre offset {}",
                    o.rel_dim, formulas.dim_xgen, formulas.dim_xgen_special_fibre, formulas.dim_xps, formulas.fibre_offset
                )
            })?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct CountOutput {
    #[serde(flatten)]
    count: ComponentCount,
    #[serde(skip_serializing_if = "Option::is_none")]
    agen: Option<AgenShape>,
}

fn components(c: Components, out: &Printer) -> anyhow::Result<Outcome> {
    match c {
        Components::Count {
            ext,
            lattice,
            datum,
            group,
            d_f,
            semidirect,
        } => {
            let ext = ext.load()?;
            let p = ext.base().p as u64;
            let (m, etale) = match lattice {
                Some(j) => {
                    let mut lj: LatticeJson = json_arg(&j, "lattice")?;
                    if let Some(g) = group {
                        lj.group.get_or_insert(json_arg::<GroupTable>(&g, "group")?);
                    }
                    (LatticeWithAction::from_json(lj)?, true)
                }
                None => {
                    let d = datum.load().context("need --lattice or a datum")?;
                    (d.torus_quotient_lattice(), d.base().is_pi1_etale(p))
                }
            };
            let c = component_count(&ext, &m.m2(), etale, semidirect)?;
            let shape = d_f.map(|d| agen_shape(&ext, &m.m2(), d)).transpose()?;
            let o = CountOutput {
                count: c.clone(),
                agen: shape,
            };
            out.emit(&o, || {
                let cond = if c.conditional {
                    " (conditional: π₁ not étale)"
                } else {
                    ""
                };
                let mut s = format!("{} components, μ = {}{cond}", c.count, factors(&c.mu));
                if let Some(a) = shape {
                    s.push_str(&format!(
                        "\nring shape: |μ| = {}, {} power series variables, {} Laurent variables",
                        a.mu_order, a.r, a.s
                    ));
                }
                s
            })?;
        }
        Components::Lgroup { datum, ext } => {
            let h = datum.load()?;
            let e = match (&ext.ext, ext.p) {
                (None, None) => GaloisExtDesc::trivial(LocalFieldDesc::qp(2)?),
                _ => ext.load()?,
            };
            let dual = lgroup_datum(&h, &e)?;
            let j = DatumJson::from_datum(&dual);
            out.emit(&j, || {
                format!(
                    "dual of {}: simple roots {:?}, simple coroots {:?}",
                    h.base().label(),
                    j.simple_roots.clone().unwrap_or_default(),
                    j.simple_coroots.clone().unwrap_or_default()
                )
            })?;
        }
        Components::Cgroup { datum, ext } => {
            let c = cgroup_component_group(&datum.load()?, &ext.load()?)?;
            out.emit(&c, || {
                format!("{} components, μ = {}", c.count, factors(&c.mu))
            })?;
        }
    }
    Ok(Outcome::Pass)
}

fn load_cocycle(arg: &str) -> anyhow::Result<GenTwoCocycle> {
    Ok(GenTwoCocycle::from_json(json_arg::<CocycleJson>(
        arg, "cocycle",
    )?)?)
}

fn ext(c: Ext, out: &Printer) -> anyhow::Result<Outcome> {
    match c {
        Ext::Build { cocycle } => {
            let z = load_cocycle(&cocycle)?;
            let e = build_extension(&z)?;
            let g = &e.group;
            let v = json!({ "order": g.order(), "abelian": g.is_abelian(), "table": g.table() });
            out.emit(&v, || {
                let invol = g.elements().filter(|&a| g.element_order(a) == 2).count();
                format!(
                    "group of order {}, abelian {}, {invol} involutions",
                    g.order(),
                    g.is_abelian()
                )
            })?;
            Ok(Outcome::Pass)
        }
        Ext::Verify { cocycle } => {
            let z = load_cocycle(&cocycle)?;
            let result = build_extension(&z).and_then(|e| {
                e.check()?;
                let back = extension_to_cocycle(&e)?;
                Ok(back == z)
            });
            let (ok, reason) = match result {
                Ok(true) => (true, None),
                Ok(false) => (false, Some("recovered cocycle differs".to_string())),
                Err(e) => (false, Some(e.to_string())),
            };
            out.emit(
                &json!({ "valid": ok, "reason": reason }),
                || match &reason {
                    None => "valid: axioms hold and the cocycle is recovered".to_string(),
                    Some(r) => format!("invalid: {r}"),
                },
            )?;
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

#[derive(Serialize)]
struct SsimReport {
    flag: CompositionFlag,
    blocks: Vec<usize>,
    irreducible: Vec<bool>,
    absolutely_irreducible: Vec<bool>,
    brauer_nesbitt: BrauerNesbitt,
    semisimplification: RepJson,
}

fn ssim_one(rep: &FqMatrixRep, maxlen: usize) -> anyhow::Result<SsimReport> {
    let ss = semisimplify(rep)?;
    let mut irreducible = Vec::new();
    let mut absolute = Vec::new();
    for b in &ss.blocks {
        let i = is_absolutely_irreducible(b)?;
        irreducible.push(i.irreducible);
        absolute.push(i.absolutely_irreducible);
    }
    Ok(SsimReport {
        blocks: ss.flag.block_sizes(),
        flag: ss.flag.clone(),
        irreducible,
        absolutely_irreducible: absolute,
        brauer_nesbitt: brauer_nesbitt_equal(rep, &ss.rep, maxlen)?,
        semisimplification: ss.rep.to_json(),
    })
}

fn ssim_ok(r: &SsimReport) -> bool {
    r.brauer_nesbitt.is_consistent() && r.irreducible.iter().all(|&b| b)
}

fn ssim(c: Ssim, out: &Printer, seed: u64) -> anyhow::Result<Outcome> {
    match c {
        Ssim::Run { rep, maxlen } => {
            let rep = FqMatrixRep::from_json(&json_arg::<RepJson>(&rep, "rep")?)?;
            let r = ssim_one(&rep, maxlen)?;
            out.emit(&r, || {
                let bn = match &r.brauer_nesbitt {
                    BrauerNesbitt::ConsistentUpTo(n) => {
                        format!("characteristic polynomials agree on words of length <= {n}")
                    }
                    BrauerNesbitt::DistinguishedBy(w) => {
                        format!("characteristic polynomials differ on word {w:?}")
                    }
                };
                format!(
                    "blocks {:?}, irreducible {:?}\n{bn}",
                    r.blocks, r.irreducible
                )
            })?;
            Ok(if ssim_ok(&r) {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Ssim::Battery {
            p,
            degree,
            blocks,
            generators,
            count,
            maxlen,
        } => {
            if blocks.is_empty() {
                bail!("--blocks is required");
            }
            let f = FiniteField::new(p, degree)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = Vec::new();
            for i in 0..count {
                let rep = random_block_triangular(&f, &blocks, generators, true, &mut rng);
                if !ssim_ok(&ssim_one(&rep, maxlen)?) {
                    failures.push(i);
                }
            }
            let v = json!({ "seed": seed, "count": count, "failures": failures });
            out.emit(&v, || {
                format!(
                    "{} of {count} representations pass (seed {seed})",
                    count - failures.len()
                )
            })?;
            Ok(if failures.is_empty() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
    }
}

fn scenario(file: &str, out: &Printer) -> anyhow::Result<Outcome> {
    let parsed = parse_scenarios(&read_text(file)?).with_context(|| format!("parsing {file}"))?;
    let report = run_scenarios(&parsed);
    out.emit(&report, || {
        let mut lines = Vec::new();
        for c in &report.checks {
            if c.pass {
                lines.push(format!("PASS  {}.{} = {}", c.scenario, c.field, c.computed));
            } else {
                lines.push(format!(
                    "FAIL  {}.{}: expected {}, computed {}",
                    c.scenario, c.field, c.expected, c.computed
                ));
            }
        }
        for (name, e) in &report.errors {
            lines.push(format!("ERROR {name}: {e}"));
        }
        lines.push(format!(
            "{} passed, {} failed, {} errors",
            report.passed,
            report.failed,
            report.errors.len()
        ));
        lines.join("\n")
    })?;
    Ok(if report.all_pass() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
