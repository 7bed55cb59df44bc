use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use fano_core::{Caps, ExperimentConfig, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "fano", version, about = "Seeded experiments on lines of cubic hypersurfaces, reported as JSON")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, env = "FANO_SEED")]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = "FANO_TOL_NEWTON")]
    pub tol_newton: Option<f64>,
    #[arg(long, global = true, env = "FANO_TOL_RESIDUAL")]
    pub tol_residual: Option<f64>,
    #[arg(long, global = true, env = "FANO_TOL_DEDUP")]
    pub tol_dedup: Option<f64>,
    #[arg(long, global = true, env = "FANO_TOL_CLUSTER")]
    pub tol_cluster: Option<f64>,
    #[arg(long, visible_alias = "cap", global = true, env = "FANO_CAP_LOOPS")]
    pub cap_loops: Option<usize>,
    #[arg(long, global = true, env = "FANO_CAP_ITERATIONS")]
    pub cap_iterations: Option<usize>,
    #[arg(long, global = true, env = "FANO_SAMPLES")]
    pub samples: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalOpts {
    pub fn config(&self) -> ExperimentConfig {
        let (t, c) = (Tolerances::default(), Caps::default());
        ExperimentConfig {
            seed: self.seed.unwrap_or(0),
            tolerances: Tolerances {
                newton: self.tol_newton.unwrap_or(t.newton),
                residual: self.tol_residual.unwrap_or(t.residual),
                dedup: self.tol_dedup.unwrap_or(t.dedup),
                cluster: self.tol_cluster.unwrap_or(t.cluster),
            },
            caps: Caps {
                loops: self.cap_loops.unwrap_or(c.loops),
                iterations: self.cap_iterations.unwrap_or(c.iterations),
                samples: self.samples.unwrap_or(c.samples),
            },
            output: self.out.clone(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Fermat cubic fourfold.
    #[command(subcommand)]
    Fermat4(Fermat4),
    /// The Fermat cubic threefold.
    #[command(subcommand)]
    Fermat3(Fermat3),
    /// Degenerations with a marked point.
    #[command(subcommand)]
    X0(X0),
    /// Monodromy of the line coverings of a cubic threefold.
    #[command(subcommand)]
    Mono(Mono),
    /// Exact computations for a single line.
    #[command(subcommand)]
    Line(LineCmd),
}

#[derive(Debug, Subcommand)]
pub enum Fermat4 {
    /// Build the 55 second-type components and type sampled rulings.
    Components,
    /// Degrees of the second-type loci.
    Degrees,
    /// Count the lines through a random point residual to second-type rulings.
    Count360,
    /// Residuals of rulings of a cone piece.
    Contraction {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        mu: u8,
    },
    /// Residuals of join rulings landing on a cone piece.
    Inclusion,
    /// Intersections of generic residual lines with V(0,1,2).
    TwoPoint,
    /// Intersections of cone-piece rulings with V(0,2,3).
    ThreePoint,
}

#[derive(Debug, Subcommand)]
pub enum Fermat3 {
    /// The thirty cones and their rulings.
    Cones,
    /// Line counts over random points and over cone points.
    BirationalSpotcheck {
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum X0 {
    /// Build an example and type the lines through its marked point.
    Build {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        nodes: u8,
    },
}

#[derive(Debug, Subcommand)]
pub enum Mono {
    /// Lines through a moving point of X (degree 6).
    SixLines(CubicSel),
    /// Lines meeting a first-type line (degree 5).
    Cl(CubicSel),
    /// Lines meeting a ruling of a cone of the Fermat threefold (degree 4).
    Cl2 {
        /// Index of the cone, 0..30.
        #[arg(long, default_value_t = 0)]
        cone: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CubicSel {
    /// Cubic form as JSON ({"n_vars", "terms": [{"exps", "a", "b"}]}).
    #[arg(long, conflicts_with = "fermat")]
    pub cubic: Option<PathBuf>,
    /// Builtin Fermat cubic threefold (3) or fourfold (4).
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
    pub fermat: Option<u8>,
}

#[derive(Debug, Clone, Args)]
pub struct LineArgs {
    #[command(flatten)]
    pub cubic: CubicSel,
    /// Line as JSON ({"rows": [[{"a", "b"}, ...], ...]}).
    #[arg(long)]
    pub line: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum LineCmd {
    /// First or second type, by the rank of the restricted quadrics.
    Type(LineArgs),
    /// Directions of the planes tangent along the line.
    Tangents(LineArgs),
    /// The residual line of a tangent plane.
    Residual {
        #[command(flatten)]
        args: LineArgs,
        #[arg(long)]
        plane: PathBuf,
    },
}
