//! One function per subcommand. Each returns the expectation it checks, the
//! verdict, and a JSON result.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use fano_core::fermat::components::component_census;
use fano_core::fermat::experiments::{contraction, inclusion, three_point, two_point};
use fano_core::fermat::threefold::{birational_spotcheck, cone_census, degree_bookkeeping, threefold_cones};
use fano_core::fermat::x0::node_example;
use fano_core::fermat::{count_360, eckardt_points, fermat_form, fermat_point_numeric, FermatComponent};
use fano_core::geometry::{contains_line, eckardt_test, line_type, restricted_quadrics, tangent_spans, voisin_residual};
use fano_core::monodromy::experiments::sample_first_type_line;
use fano_core::monodromy::{marked_fiber, run_cl, run_cl_second, run_six_lines, GroupReport};
use fano_core::{CubicForm, ExperimentConfig, Line, LineType, MultiPoly, Plane};

use crate::args::{CubicSel, Fermat3, Fermat4, LineArgs, LineCmd, Mono, X0};
use crate::CliError;

/// Containment and incidence residuals accepted by the numeric checks.
const INCIDENCE_TOL: f64 = 1e-8;

pub struct Outcome {
    pub expectation: String,
    pub verified: bool,
    pub result: Value,
}

fn outcome<T: Serialize>(expectation: impl Into<String>, verified: bool, result: &T) -> Result<Outcome, CliError> {
    Ok(Outcome { expectation: expectation.into(), verified, result: serde_json::to_value(result)? })
}

fn rng(config: &ExperimentConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed)
}

pub fn fermat4(cmd: &Fermat4, config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let samples = config.caps.samples;
    match cmd {
        Fermat4::Components => {
            let census = component_census(samples, config.seed)?;
            let f = fermat_form(4);
            let eckardt = eckardt_points(4);
            let passing = eckardt.iter().filter(|p| eckardt_test(&f, &p.point).unwrap_or(false)).count();
            let verified = census.components == 55 && census.all_second_type() && eckardt.len() == 45 && passing == 45;
            let result = json!({
                "count": census.components,
                "census": census,
                "eckardt_points": eckardt.len(),
                "eckardt_passing": passing,
            });
            outcome("55 components (10 joins, 45 cone pieces), every sampled ruling of second type", verified, &result)
        }
        Fermat4::Degrees => {
            let r = degree_bookkeeping(&mut rng(config))?;
            outcome("fourfold degree 225, threefold cone total 90", r.fourfold_total == 225 && r.threefold_total == 90, &r)
        }
        Fermat4::Count360 => {
            let p = fermat_point_numeric(&mut rng(config), 6);
            let r = count_360(&p, config.seed, config.tolerances.dedup)?;
            let verified =
                r.count == 360 && r.max_containment_residual < INCIDENCE_TOL && r.max_point_distance < INCIDENCE_TOL;
            outcome("360 distinct lines through the point, each on X and through the point", verified, &r)
        }
        Fermat4::Contraction { i, j, mu } => {
            if !(i < j && *j < 6) {
                return Err(CliError::Usage(format!("need i < j < 6, got i = {i}, j = {j}")));
            }
            let c = FermatComponent::ConePiece { i: *i, j: *j, mu: *mu };
            let r = contraction(&c, samples, &mut rng(config))?;
            outcome("every residual passes through the vertex", r.through_vertex == r.samples, &r)
        }
        Fermat4::Inclusion => {
            let r = inclusion(samples, &mut rng(config))?;
            outcome("residuals of join rulings equal the prescribed cone-piece lines", r.max_distance < INCIDENCE_TOL, &r)
        }
        Fermat4::TwoPoint => {
            let r = two_point(samples, &mut rng(config))?;
            outcome("every residual line meets V(0,1,2) in exactly 2 points", r.all_equal(2), &r)
        }
        Fermat4::ThreePoint => {
            let r = three_point(samples, &mut rng(config))?;
            outcome("every ruling of the cone piece at e0 - e1 meets V(0,2,3) in exactly 3 points", r.all_equal(3), &r)
        }
    }
}

pub fn fermat3(cmd: &Fermat3, config: &ExperimentConfig) -> Result<Outcome, CliError> {
    match cmd {
        Fermat3::Cones => {
            let r = cone_census(config.caps.samples, &mut rng(config))?;
            let verified = r.cones == 30 && r.hyperplane_sections == 30 && r.second_type_rulings == 30 * r.samples_per_cone;
            outcome("30 cones, each a hyperplane section with second-type rulings", verified, &r)
        }
        Fermat3::BirationalSpotcheck { points } => {
            let r = birational_spotcheck(*points, &mut rng(config), config.seed)?;
            outcome(
                "6 simple lines through random points; through cone points 5 distinct, one doubled second-type ruling and 4 first-type",
                r.passes(),
                &r,
            )
        }
    }
}

pub fn x0(cmd: &X0, config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let X0::Build { nodes } = cmd;
    let m = node_example(*nodes as usize)?;
    let fiber = marked_fiber(&m, config.seed)?;
    let smooth = m.smoothness(config.seed);
    let doubled_second = fiber.lines.iter().filter(|l| l.multiplicity == 2 && l.line_type == LineType::Second).count();
    let shape = match nodes {
        0 => fiber.distinct == 6 && fiber.first_type == 6,
        1 => fiber.distinct == 5 && doubled_second == 1 && fiber.first_type == 4,
        _ => fiber.distinct == 4 && doubled_second == 2 && fiber.first_type == 2 && fiber.residual_types() == [(1, 2), (1, 2)],
    };
    let expectation = match nodes {
        0 => "smooth, 6 first-type lines through the marked point",
        1 => "smooth, 5 lines through the marked point: one doubled of second type, 4 of first type",
        _ => "smooth, 4 lines through the marked point: 2 doubled of second type, 2 of first type",
    };
    let result = json!({
        "form": m.form,
        "marked_point": m.marked_point,
        "provenance": m.provenance,
        "fiber": fiber,
        "smoothness": { "paths": smooth.paths, "failed_paths": smooth.failed_paths, "singular_points": smooth.singular_points },
    });
    outcome(expectation, shape && smooth.smooth() && m.is_on_cubic(), &result)
}

fn group_outcome(r: GroupReport, degree: usize, order: usize, name: &str) -> Result<Outcome, CliError> {
    let verified = r.degree == degree && r.order == order;
    outcome(format!("{name}: fiber of {degree} lines, group of order {order}"), verified, &r)
}

pub fn mono(cmd: &Mono, config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let mc = config.monodromy();
    match cmd {
        Mono::SixLines(sel) => {
            let f = threefold(sel)?;
            group_outcome(run_six_lines(&f, &mc)?, 6, 720, "S6")
        }
        Mono::Cl(sel) => {
            let f = threefold(sel)?;
            let (l, x) = sample_first_type_line(&f, &mc)?;
            group_outcome(run_cl(&f, &l, &x, &mc)?, 5, 120, "S5")
        }
        Mono::Cl2 { cone } => {
            let cones = threefold_cones();
            let c = cones.get(*cone).ok_or_else(|| CliError::Usage(format!("cone index {cone} out of range 0..30")))?;
            let f = CubicForm::from_poly(&fermat_form(3));
            group_outcome(run_cl_second(&f, c, &mc)?, 4, 24, "S4")
        }
    }
}

fn threefold(sel: &CubicSel) -> Result<CubicForm, CliError> {
    let f = match (&sel.cubic, sel.fermat) {
        (None, None) => fermat_form(3),
        _ => cubic(sel)?,
    };
    if f.n_vars() != 5 {
        return Err(CliError::Usage(format!("monodromy needs a cubic threefold (5 variables), got {}", f.n_vars())));
    }
    Ok(CubicForm::from_poly(&f))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input { path: path.to_path_buf(), message: e.to_string() })
}

fn cubic(sel: &CubicSel) -> Result<MultiPoly, CliError> {
    let f: MultiPoly = match (&sel.cubic, sel.fermat) {
        (Some(path), _) => read_json(path)?,
        (None, Some(n)) => fermat_form(n as usize),
        (None, None) => return Err(CliError::Usage("pass --cubic <file> or --fermat 3|4".into())),
    };
    if f.homogeneous_degree() != Some(3) {
        return Err(CliError::Usage("the form is not a homogeneous cubic".into()));
    }
    Ok(f)
}

fn load_line(args: &LineArgs) -> Result<(MultiPoly, Line), CliError> {
    let f = cubic(&args.cubic)?;
    let l: Line = read_json(&args.line)?;
    if l.ambient_dim() != f.n_vars() {
        return Err(CliError::Usage(format!("line has {} coordinates, the cubic {}", l.ambient_dim(), f.n_vars())));
    }
    Ok((f, l))
}

pub fn line(cmd: &LineCmd) -> Result<Outcome, CliError> {
    match cmd {
        LineCmd::Type(args) => {
            let (f, l) = load_line(args)?;
            let rank = restricted_quadrics(&f, &l)?.rank();
            let ty = line_type(&f, &l)?;
            outcome("the line lies on the cubic", true, &json!({ "line": l, "type": ty, "rank": rank }))
        }
        LineCmd::Tangents(args) => {
            let (f, l) = load_line(args)?;
            let rank = restricted_quadrics(&f, &l)?.rank();
            let spans = tangent_spans(&f, &l)?;
            // the tangent directions modulo L are cut out by `rank` conditions
            let consistent = spans.quotient_dim + 2 + rank == f.n_vars();
            let result = json!({
                "line": l,
                "type": line_type(&f, &l)?,
                "quotient_dim": spans.quotient_dim,
                "directions": spans.directions,
            });
            outcome("tangent directions modulo the line number n+1 - rank - 2", consistent, &result)
        }
        LineCmd::Residual { args, plane } => {
            let (f, l) = load_line(args)?;
            let p: Plane = read_json(plane)?;
            let r = voisin_residual(&f, &l, &p)?;
            let on_cubic = contains_line(&f, &r.line)?;
            let in_plane = r.line.rows().iter().all(|v| p.contains_point(v));
            let result = json!({ "line": l, "plane": p, "residual": r.line, "triple": r.triple });
            outcome("the residual line lies on the cubic and in the plane", on_cubic && in_plane, &result)
        }
    }
}
