use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use blc::ancestry::{ancestries, count_table, verify_identities, Ancestry, IdentityReport, WordCtx};
use blc::clifford::Quat;
use blc::cw::{build_complex, collapse_evidence, component_census, euler_by_formula, homology_low, BuildOptions};
use blc::matrix_lab::{self, LowerTriangular};
use blc::order::{hasse_dot, ClosureCache};
use blc::perm::{Permutation, Word};
use blc::render::wiring_svg;

#[derive(Parser)]
#[command(name = "blc", version, about = "Ancestries, cell counts and CW complexes of the sets BL_z")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count table N(ε₀, z), or the ancestries of one z
    Enumerate {
        #[command(flatten)]
        job: Job,
        /// List the ancestries of BL_z instead of the count table
        #[arg(long)]
        list: bool,
    },
    /// Check the counting identities, Euler characteristics and the census
    Verify {
        #[command(flatten)]
        job: Job,
    },
    /// Build the CW complex of BL_z with homology and collapse evidence
    Complex {
        #[command(flatten)]
        job: Job,
    },
    /// Connected components of every BL_z
    Census {
        #[command(flatten)]
        job: Job,
    },
    /// Locate a lower triangular matrix (or random λ-samples) in its stratum
    Classify {
        #[command(flatten)]
        job: Job,
        /// Whitespace or comma separated unit lower triangular matrix
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Classify this many random λ-samples of random sign instead
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Wiring diagram (svg) or Hasse diagram of BL_z (dot)
    Render {
        #[command(flatten)]
        job: Job,
        /// Ancestry or preancestry to mark, e.g. "(-2,+1,+2)"
        #[arg(long)]
        eps: Option<String>,
    },
}

#[derive(Args)]
struct Job {
    /// Permutation in one-line notation, e.g. 4231
    #[arg(long)]
    perm: Option<String>,
    /// Reduced word, e.g. "a1 a2 a1" (defaults to the canonical word of --perm)
    #[arg(long)]
    word: Option<String>,
    /// Coset element: z0, -z0, "(1-a1a2)/sqrt2", "-a1*acute" or "all"
    #[arg(long, default_value = "all", allow_hyphen_values = true)]
    z: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smallest accepted distance to a stratum boundary when classifying
    #[arg(long, default_value_t = matrix_lab::TOL)]
    tolerance: f64,
    /// Write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Svg,
}

impl Job {
    fn ctx(&self) -> Result<WordCtx> {
        let perm = self.perm.as_deref().map(Permutation::parse).transpose()?;
        let ctx = match (&self.word, perm) {
            (Some(w), p) => {
                let word = Word::parse(w, p.map(|p| p.n()))?;
                if let Some(p) = p {
                    if word.product() != p {
                        bail!("word {word} is a word for {}, not {p}", word.product());
                    }
                }
                WordCtx::new(word)?
            }
            (None, Some(p)) => WordCtx::canonical(&p)?,
            (None, None) => bail!("one of --perm or --word is required"),
        };
        Ok(ctx)
    }

    fn zs(&self, ctx: &WordCtx) -> Result<Vec<Quat>> {
        if self.z == "all" {
            Ok(ctx.coset())
        } else {
            Ok(vec![ctx.parse_z(&self.z)?])
        }
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("this subcommand does not support that format");
        }
        Ok(f)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn setup_threads(&self) -> Result<()> {
        if let Some(t) = self.threads {
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
        }
        Ok(())
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn enumerate(job: &Job, list: bool) -> Result<bool> {
    let ctx = job.ctx()?;
    if list {
        #[derive(Serialize)]
        struct Listing {
            z: String,
            ancestries: Vec<Ancestry>,
        }
        let zs = job.zs(&ctx)?;
        let all = ancestries(&ctx);
        let out: Vec<Listing> = zs
            .iter()
            .map(|&r| Listing {
                z: ctx.z(r).to_string(),
                ancestries: all.iter().filter(|a| a.r() == r).cloned().collect(),
            })
            .collect();
        job.emit(&json(&out)?)?;
        return Ok(true);
    }
    let table = count_table(&ctx);
    let zs: Vec<String> = job.zs(&ctx)?.into_iter().map(|r| ctx.z(r).to_string()).collect();
    let rows: Vec<_> = table.rows(&ctx).into_iter().filter(|r| zs.contains(&r.z)).collect();
    match job.format(Format::Json, &[Format::Json, Format::Csv])? {
        Format::Csv => {
            let mut s = String::from("word,preancestry,dim,z,count\n");
            for r in &rows {
                s += &format!("{},\"{}\",{},{},{}\n", r.word, r.preancestry, r.dim, r.z, r.count);
            }
            job.emit(&s)?;
        }
        _ => job.emit(&json(&rows)?)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyReport {
    word: String,
    identities: IdentityReport,
    euler_mismatches: Vec<String>,
    components: Option<usize>,
    thin: Option<usize>,
    thick: Option<usize>,
    passed: bool,
}

fn verify(job: &Job) -> Result<bool> {
    let ctx = job.ctx()?;
    job.format(Format::Json, &[Format::Json])?;
    eprintln!("counting ancestries of {}", ctx.word());
    let table = count_table(&ctx);
    let identities = verify_identities(&ctx, &table);
    let mut euler_mismatches = Vec::new();
    if ctx.n() <= 4 {
        for r in job.zs(&ctx)? {
            let cx = build_complex(&ctx, r, BuildOptions::default())?;
            if cx.euler() != euler_by_formula(&table, r) {
                euler_mismatches.push(ctx.z(r).to_string());
            }
        }
    }
    let census = if ctx.blocks() == 0 {
        eprintln!("component census");
        Some(component_census(&ctx)?)
    } else {
        None
    };
    let passed = identities.passed() && euler_mismatches.is_empty();
    let rep = VerifyReport {
        word: ctx.word().to_string(),
        identities,
        euler_mismatches,
        components: census.as_ref().map(|c| c.components),
        thin: census.as_ref().map(|c| c.thin),
        thick: census.as_ref().map(|c| c.thick),
        passed,
    };
    job.emit(&json(&rep)?)?;
    Ok(passed)
}

fn complex(job: &Job) -> Result<bool> {
    let ctx = job.ctx()?;
    let zs = job.zs(&ctx)?;
    let format = job.format(Format::Json, &[Format::Json, Format::Dot])?;
    #[derive(Serialize)]
    struct Summary {
        z: String,
        cells: Vec<usize>,
        euler: i64,
        components: usize,
        component_euler: Vec<i64>,
        thin_components: usize,
        homology: Vec<blc::cw::ComponentHomology>,
        collapses: Vec<blc::cw::CollapseReport>,
        complex: blc::cw::CellComplex,
    }
    let mut out = Vec::new();
    let mut dots = String::new();
    for r in zs {
        let cx = build_complex(&ctx, r, BuildOptions::full())?;
        if format == Format::Dot {
            dots += &cx.to_dot();
            continue;
        }
        let thin_components = if ctx.blocks() == 0 { cx.thin_components(&ctx) } else { 0 };
        out.push(Summary {
            z: cx.z.clone(),
            cells: cx.cells_by_dim(),
            euler: cx.euler(),
            components: cx.components,
            component_euler: cx.component_euler(),
            thin_components,
            homology: homology_low(&cx),
            collapses: collapse_evidence(&cx),
            complex: cx,
        });
    }
    if format == Format::Dot {
        job.emit(&dots)?;
    } else if out.len() == 1 {
        job.emit(&json(&out[0])?)?;
    } else {
        job.emit(&json(&out)?)?;
    }
    Ok(true)
}

fn census(job: &Job) -> Result<bool> {
    let ctx = job.ctx()?;
    let format = job.format(Format::Csv, &[Format::Csv, Format::Json])?;
    eprintln!("component census of {}", ctx.word());
    let c = component_census(&ctx)?;
    match format {
        Format::Json => job.emit(&json(&c)?)?,
        _ => {
            let mut s = c.to_csv();
            s += &format!("# total components {}, thin {}, thick {}\n", c.components, c.thin, c.thick);
            job.emit(&s)?;
        }
    }
    Ok(true)
}

fn classify(job: &Job, matrix: Option<&PathBuf>, samples: Option<usize>) -> Result<bool> {
    let ctx = job.ctx()?;
    job.format(Format::Json, &[Format::Json])?;
    let near = |c: &matrix_lab::Classification| c.margin < job.tolerance;
    match (matrix, samples) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let l = LowerTriangular::parse(&text)?;
            let c = matrix_lab::ancestry_of(&ctx, &l)?;
            if near(&c) {
                bail!("matrix is within {} of a stratum boundary", job.tolerance);
            }
            let ok = c.component_consistent;
            job.emit(&json(&c)?)?;
            Ok(ok)
        }
        (None, Some(n)) => {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
            #[derive(Serialize)]
            struct Sample {
                signs: Vec<i8>,
                ancestry: String,
                p: String,
                predicted_p: String,
                ok: bool,
            }
            let mut out = Vec::new();
            for _ in 0..n {
                let signs: Vec<i8> = (0..ctx.len()).map(|_| if rng.gen() { 1 } else { -1 }).collect();
                let l = matrix_lab::random_sample(ctx.word(), &signs, &mut rng)?;
                let c = matrix_lab::ancestry_of(&ctx, &l)?;
                let predicted = Ancestry::new(&ctx, signs.clone())?.p_product(&ctx).to_string();
                let ok = c.ancestry.eps() == signs.as_slice() && c.p == predicted && c.component_consistent && !near(&c);
                out.push(Sample { signs, ancestry: c.ancestry.to_string(), p: c.p, predicted_p: predicted, ok });
            }
            let ok = out.iter().all(|s| s.ok);
            job.emit(&json(&out)?)?;
            Ok(ok)
        }
        _ => bail!("give exactly one of --matrix or --samples"),
    }
}

fn render(job: &Job, eps: Option<&str>) -> Result<bool> {
    let ctx = job.ctx()?;
    match job.format(Format::Svg, &[Format::Svg, Format::Dot])? {
        Format::Dot => {
            let zs = job.zs(&ctx)?;
            if zs.len() != 1 {
                bail!("the Hasse diagram needs a single --z");
            }
            let cells = blc::cw::cells_of(&ctx, zs[0]);
            job.emit(&hasse_dot(&ctx, &ClosureCache::new(), &cells))?;
        }
        _ => {
            let marks = eps.map(blc::ancestry::parse_signs).transpose()?;
            if let Some(m) = &marks {
                if m.len() != ctx.len() {
                    bail!("expected {} entries, found {}", ctx.len(), m.len());
                }
            }
            job.emit(&wiring_svg(ctx.word(), marks.as_deref()))?;
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Enumerate { job, list } => {
            job.setup_threads()?;
            enumerate(job, *list)
        }
        Cmd::Verify { job } => {
            job.setup_threads()?;
            verify(job)
        }
        Cmd::Complex { job } => {
            job.setup_threads()?;
            complex(job)
        }
        Cmd::Census { job } => {
            job.setup_threads()?;
            census(job)
        }
        Cmd::Classify { job, matrix, samples } => classify(job, matrix.as_ref(), *samples),
        Cmd::Render { job, eps } => render(job, eps.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("assertion failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
