//! `regmap`: construct, analyze, classify and enumerate regular maps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regmap::census::{
    enumerate_maps, solve_l213_traces, CensusQuery, GroupSpec, DEFAULT_GROUP_CAP,
};
use regmap::constructions::{
    build_an_map, build_l2p_map, build_l2q_class3, build_sn_map, covering_by_character,
    parallel_product_explicit, parallel_product_symbolic, sigma_plus_product, AnVariant,
    ConstructionRecord, CoverPreset, Seed, DEFAULT_BLADE_CAP,
};
use regmap::gf2field::{count_useful_generators, enumerate_useful_generators};
use regmap::mapcore::{are_isomorphic, classify, invariants, is_regular};
use regmap::{Error, FieldElement, FieldSpec, MapTriple, MapType};
use serde_json::{json, Map, Value};

mod render;

#[derive(Parser)]
#[command(
    name = "regmap",
    version,
    about = "Regular maps under duality and Petrie duality"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic facts about GF(2^e).
    #[command(subcommand)]
    Field(FieldCmd),
    /// Counting formulas.
    #[command(subcommand)]
    Count(CountCmd),
    /// Build a map.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Invariants of a map file.
    Analyze { map: PathBuf },
    /// Wilson class and derivates of a regular map.
    Classify {
        #[arg(conflicts_with = "map_flag", required_unless_present = "map_flag")]
        map: Option<PathBuf>,
        #[arg(long = "map", value_name = "MAP")]
        map_flag: Option<PathBuf>,
    },
    /// Decide whether two maps are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Enumerate the regular maps of a permutation group.
    Census(CensusArgs),
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Modulus, size and cubic subfield data.
    Info(FieldArgs),
    /// List the useful generators.
    Useful(FieldArgs),
    /// Count the useful generators by formula.
    Count(FieldArgs),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    e: u32,
}

#[derive(Subcommand)]
enum CountCmd {
    /// Number of useful generators and of dual pairs of class-III maps.
    Useful(FieldArgs),
}

#[derive(Args)]
struct Output {
    /// Write the map here and its sidecar next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest explicit map to build.
    #[arg(long, default_value_t = DEFAULT_BLADE_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Class-III map of L2(2^e) from a useful generator.
    L2q {
        #[arg(long)]
        e: u32,
        /// Generator as a bit pattern in the polynomial basis (default: automatic).
        #[arg(long)]
        x: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Class-I map of S_n.
    Sn {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Class-I map of A_n.
    An {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "A")]
        variant: AnVariant,
        #[command(flatten)]
        output: Output,
    },
    /// Class-I map of L2(p).
    L2p {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Elementary abelian 2-cover of a map.
    Cover {
        #[arg(long)]
        map: PathBuf,
        /// gamma02, gamma-star or gamma-prime.
        #[arg(long, conflicts_with = "images")]
        preset: Option<CoverPreset>,
        /// Images of r0, r1, r2 in GF(2)^k as integers, e.g. 1,2,4.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        images: Option<Vec<u32>>,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Parallel product: of map files, or the Σ⁺-product of a seed.
    Parallel {
        /// sn:<n>, an:<n>:<A|B>, l2p:<p> or pgl2-7.
        #[arg(long, conflicts_with = "maps", required_unless_present = "maps")]
        seed: Option<Seed>,
        /// Only compute invariants, never the explicit product.
        #[arg(long, requires = "seed")]
        symbolic: bool,
        #[arg(long, num_args = 2..)]
        maps: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct CensusArgs {
    #[command(subcommand)]
    command: Option<CensusCmd>,
    /// l2q:<e>, l2p:<p>, pgl2p:<p>, sym:<n>, alt:<n> or file:<path>.
    #[arg(long, required = true)]
    group: Option<GroupSpec>,
    /// Keep only maps of type p,q,r.
    #[arg(long = "type")]
    map_type: Option<MapType>,
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    cap: u128,
    /// Write each map to <dir>/map-<i>.json.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CensusCmd {
    /// Solve for the type-{7,7}_7 generating triples of L2(13).
    L213Traces,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command).and_then(|v| render::print(&v, cli.format)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}

fn run(cmd: Command) -> regmap::Result<Value> {
    match cmd {
        Command::Field(f) => field(f),
        Command::Count(CountCmd::Useful(a)) => count_useful(a.e),
        Command::Construct(c) => construct(c),
        Command::Analyze { map } => {
            let m = MapTriple::load(&map)?;
            let mut v = to_value(&invariants(&m))?;
            merge(&mut v, to_value(&is_regular(&m))?);
            Ok(v)
        }
        Command::Classify { map, map_flag } => {
            let m = MapTriple::load(map.or(map_flag).expect("clap requires one"))?;
            to_value(&classify(&m)?)
        }
        Command::Iso { first, second } => {
            let (a, b) = (MapTriple::load(first)?, MapTriple::load(second)?);
            Ok(json!({ "isomorphic": are_isomorphic(&a, &b, false) }))
        }
        Command::Census(c) => census(c),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> regmap::Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn element(x: FieldElement) -> Value {
    json!({ "bits": x.value(), "poly": x.to_string() })
}

fn field(cmd: FieldCmd) -> regmap::Result<Value> {
    match cmd {
        FieldCmd::Info(a) => {
            let s = FieldSpec::new(a.e)?;
            Ok(json!({
                "e": s.e(),
                "q": s.q(),
                "modulus": s.modulus(),
                "f": s.f(),
                "r": s.r(),
                "generator": element(s.generator()),
            }))
        }
        FieldCmd::Useful(a) => {
            let s = FieldSpec::new(a.e)?;
            let xs = enumerate_useful_generators(&s)?;
            Ok(
                json!({ "e": a.e, "count": xs.len(), "useful": xs.into_iter().map(element).collect::<Vec<_>>() }),
            )
        }
        FieldCmd::Count(a) => count_useful(a.e),
    }
}

fn count_useful(e: u32) -> regmap::Result<Value> {
    let n = count_useful_generators(e)?;
    Ok(json!({ "N_e": n, "dual_pairs": n / e as u128 }))
}

fn construct(cmd: ConstructCmd) -> regmap::Result<Value> {
    let (rec, output) = match cmd {
        ConstructCmd::L2q { e, x, output } => {
            let x = x
                .map(|bits| FieldSpec::new(e).map(|s| s.element(bits)))
                .transpose()?;
            (build_l2q_class3(e, x, output.cap)?, output)
        }
        ConstructCmd::Sn { n, output } => (build_sn_map(n, output.cap)?, output),
        ConstructCmd::An { n, variant, output } => (build_an_map(n, variant, output.cap)?, output),
        ConstructCmd::L2p { p, output } => (build_l2p_map(p, output.cap)?, output),
        ConstructCmd::Cover {
            map,
            preset,
            images,
            k,
            output,
        } => {
            let m = MapTriple::load(&map)?;
            let (k, images) = match (preset, images) {
                (Some(p), _) => p.character(),
                (None, Some(im)) => (k, [im[0], im[1], im[2]]),
                (None, None) => {
                    return Err(Error::InvalidParameter("give --preset or --images".into()))
                }
            };
            let cover = covering_by_character(&m, k, images)?;
            let params = json!({ "base": map, "k": k, "images": images, "preset": preset });
            (
                ConstructionRecord::from_explicit(cover.map, None, "cover", params)?,
                output,
            )
        }
        ConstructCmd::Parallel {
            seed: Some(seed),
            symbolic,
            output,
            ..
        } => {
            let base = seed.build(output.cap)?;
            let explicit = match (&base.map, symbolic) {
                (Some(m), false) => match sigma_plus_product(m, output.cap) {
                    Ok(p) => Some(p),
                    Err(Error::CapExceeded { .. }) => None,
                    Err(e) => return Err(e),
                },
                _ => None,
            };
            let rec = match explicit {
                Some(p) => ConstructionRecord::from_explicit(
                    p,
                    None,
                    "sigma-plus-product",
                    json!({ "seed": seed.to_string() }),
                )?,
                None => {
                    let (s, parity) = seed.simple_structure(&base)?;
                    parallel_product_symbolic(&base, s, parity)?
                }
            };
            (rec, output)
        }
        ConstructCmd::Parallel {
            seed: None,
            maps,
            output,
            ..
        } => {
            let ms = maps
                .iter()
                .map(MapTriple::load)
                .collect::<regmap::Result<Vec<_>>>()?;
            let p = parallel_product_explicit(&ms, output.cap)?;
            (
                ConstructionRecord::from_explicit(
                    p,
                    None,
                    "parallel-product",
                    json!({ "maps": maps }),
                )?,
                output,
            )
        }
    };
    rec.check_consistency()?;
    let mut v = to_value(&rec.sidecar())?;
    merge(&mut v, json!({ "certificate": rec.certificate }));
    match (&output.out, &rec.map) {
        (Some(path), Some(m)) => {
            m.save(path)?;
            std::fs::write(
                sidecar_path(path),
                serde_json::to_string_pretty(&rec.sidecar())? + "\n",
            )?;
            merge(&mut v, json!({ "map_file": path }));
        }
        (Some(_), None) => {
            return Err(Error::InvalidParameter(
                "no explicit map to write: raise --cap".into(),
            ))
        }
        (None, Some(m)) => merge(&mut v, json!({ "map": m })),
        (None, None) => {}
    }
    Ok(v)
}

/// `dir/name.json` → `dir/name.sidecar.json`.
fn sidecar_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}.sidecar.json"))
}

fn census(args: CensusArgs) -> regmap::Result<Value> {
    if let Some(CensusCmd::L213Traces) = args.command {
        let sols = solve_l213_traces();
        return Ok(json!({ "solutions": sols }));
    }
    let group = args.group.expect("clap requires --group");
    let mut q = CensusQuery::new(group.generators()?).with_cap(args.cap);
    if let Some(t) = args.map_type {
        q = q.with_type(t);
    }
    let result = enumerate_maps(&q)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
    }
    let mut maps = Vec::new();
    for (i, e) in result.entries.iter().enumerate() {
        let mut entry = Map::new();
        match &args.out {
            Some(dir) => {
                let path = dir.join(format!("map-{i}.json"));
                e.map.save(&path)?;
                entry.insert("map_file".into(), to_value(&path)?);
            }
            None => {
                entry.insert("map".into(), to_value(&e.map)?);
            }
        }
        entry.insert("invariants".into(), to_value(&e.invariants)?);
        entry.insert("class".into(), to_value(&e.classification.wilson_class)?);
        entry.insert(
            "derivates".into(),
            to_value(&e.classification.derivate_count)?,
        );
        entry.insert("sigma_orbit_id".into(), to_value(&e.sigma_orbit_id)?);
        entry.insert("witness".into(), to_value(&e.witness)?);
        maps.push(Value::Object(entry));
    }
    Ok(json!({
        "group_order": result.group_order,
        "triples": result.triples,
        "sigma_orbits": result.sigma_orbits(),
        "maps": maps,
    }))
}
