//! Monodromy of the lines through a moving point.
//!
//! Three coverings of a cubic threefold X are probed: the six lines through
//! a point of X, the five further lines through a point moving on a line of
//! first type, and the four further lines through a point moving on a line
//! of second type. Random closed loops are tracked in the parameter space
//! and the induced permutations generate a subgroup of S_d; since the
//! monodromy group is a subgroup of S_d anyway, reaching order d! settles it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perm::{factorial, PermGroup, Permutation};
use super::MonodromyError;
use crate::fermat::threefold::Cone;
use crate::geometry::LineType;
use crate::numeric::cubic::CubicForm;
use crate::numeric::family::{monodromy_loop, FiberFamily, LineFamily, LoopPath};
use crate::numeric::linalg::{hdot, normalize, random_vector, scale, sub, CVec, C, ZERO};
use crate::numeric::lines::{solve_lines_through_point, FiberOptions, LineSolution, NumLine};
use crate::numeric::newton::{newton_correct, Multiplicity, NewtonOptions};
use crate::numeric::roots::binary_roots;
use crate::numeric::tracker::TrackOptions;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyConfig {
    pub seed: u64,
    pub cap_loops: usize,
    /// Stop after this many consecutive successful loops add nothing.
    pub window: usize,
    /// Loops tracked concurrently before their permutations are merged.
    pub batch: usize,
    /// Range of the size of the random triangles, relative to the base.
    pub min_scale: f64,
    pub max_scale: f64,
    pub match_tol: f64,
    pub track: TrackOptions,
    pub fiber: FiberOptions,
}

impl Default for MonodromyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            cap_loops: 200,
            window: 25,
            batch: 4,
            min_scale: 0.3,
            max_scale: 1.5,
            match_tol: 1e-6,
            track: TrackOptions::default(),
            fiber: FiberOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The collected group is all of S_d.
    Symmetric,
    /// The group stopped growing over the stabilization window.
    Subgroup,
    /// The loop cap was reached while the group was still growing.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Progress {
    pub loops: usize,
    pub order: usize,
    pub transitivity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub experiment: String,
    pub degree: usize,
    pub order: usize,
    pub verdict: Verdict,
    /// Image arrays (0-based) of the loop permutations that enlarged the group.
    pub generators: Vec<Permutation>,
    pub loops_attempted: usize,
    pub loops_succeeded: usize,
    /// Successful loops whose permutation is a transposition.
    pub transposition_loops: usize,
    pub transitivity: usize,
    pub has_transposition: bool,
    pub progress: Vec<Progress>,
    pub seed: u64,
    pub config: MonodromyConfig,
}

/// The stream-separated generator of loop number `i`.
fn loop_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64 + 1);
    rng
}

fn collect_group<F, M>(
    experiment: &str,
    family: &F,
    fiber: &[CVec],
    config: &MonodromyConfig,
    make_loop: M,
) -> GroupReport
where
    F: FiberFamily + ?Sized,
    M: Fn(&mut ChaCha8Rng) -> LoopPath + Sync,
{
    let d = fiber.len();
    let mut group = PermGroup::trivial(d);
    let mut report = GroupReport {
        experiment: experiment.to_string(),
        degree: d,
        order: 1,
        verdict: Verdict::Inconclusive,
        generators: Vec::new(),
        loops_attempted: 0,
        loops_succeeded: 0,
        transposition_loops: 0,
        transitivity: 0,
        has_transposition: false,
        progress: Vec::new(),
        seed: config.seed,
        config: *config,
    };
    let mut since_growth = 0;
    'outer: while report.loops_attempted < config.cap_loops && since_growth < config.window && !group.is_symmetric() {
        let start = report.loops_attempted;
        let end = (start + config.batch.max(1)).min(config.cap_loops);
        let results: Vec<_> = (start..end)
            .into_par_iter()
            .map(|i| {
                let path = make_loop(&mut loop_rng(config.seed, i));
                monodromy_loop(family, fiber, &path, &config.track, config.match_tol)
            })
            .collect();
        for r in results {
            report.loops_attempted += 1;
            let Ok(images) = r else { continue };
            let Ok(perm) = Permutation::new(images) else { continue };
            report.loops_succeeded += 1;
            if perm.is_transposition() {
                report.transposition_loops += 1;
            }
            if group.add_generator(perm.clone()).expect("fiber size is the degree") {
                since_growth = 0;
                report.generators.push(perm);
                report.progress.push(Progress {
                    loops: report.loops_attempted,
                    order: group.order(),
                    transitivity: group.transitivity_degree(),
                });
            } else {
                since_growth += 1;
            }
            if group.is_symmetric() || since_growth >= config.window {
                break 'outer;
            }
        }
    }
    report.order = group.order();
    report.transitivity = group.transitivity_degree();
    report.has_transposition = group.has_transposition();
    report.verdict = if report.order == factorial(d) {
        Verdict::Symmetric
    } else if since_growth >= config.window {
        Verdict::Subgroup
    } else {
        Verdict::Inconclusive
    };
    report
}

/// A point of V(f) on a random line.
pub fn random_point_on<R: Rng + ?Sized>(f: &CubicForm, rng: &mut R) -> CVec {
    let n = f.n_vars();
    let l = NumLine::through(&random_vector(rng, n), &random_vector(rng, n)).expect("random vectors are independent");
    let roots = binary_roots(&l.restrict_cubic(f));
    let r = roots[rng.random_range(0..roots.len())];
    normalize(&l.point(r[0], r[1]))
}

fn encode_fiber(fam: &LineFamily, params: &[C], x: &[C], lines: &[&LineSolution]) -> Option<Vec<CVec>> {
    let sys = fam.at(params);
    lines
        .iter()
        .map(|s| {
            let z = fam.encode(x, &s.line)?;
            newton_correct(&sys, &z, &NewtonOptions::default()).ok().map(|s| s.z)
        })
        .collect()
}

fn scaled_triangle(rng: &mut ChaCha8Rng, base: &[C], config: &MonodromyConfig) -> LoopPath {
    let scale = rng.random_range(config.min_scale..=config.max_scale);
    LoopPath::random_triangle(rng, base, scale)
}

const BASE_ATTEMPTS: usize = 20;

/// A base fiber of the six-lines covering: the family in an affine chart
/// of X around a random point with six simple lines, the chart parameters
/// of the point, and the encoded lines.
pub struct SixLineBase {
    pub family: LineFamily,
    pub params: CVec,
    pub fiber: Vec<CVec>,
}

pub fn six_lines_base(f: &CubicForm, config: &MonodromyConfig) -> Result<SixLineBase, MonodromyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for attempt in 0..BASE_ATTEMPTS {
        let x = random_point_on(f, &mut rng);
        let Ok(sols) = solve_lines_through_point(f, &x, config.seed + attempt as u64, &config.fiber) else { continue };
        if sols.len() != 6 || sols.iter().any(|s| s.multiplicity != Multiplicity::Simple) {
            continue;
        }
        let (family, params) = LineFamily::on_cubic(f.clone(), &x, &mut rng);
        let refs: Vec<&LineSolution> = sols.iter().collect();
        let Some(fiber) = encode_fiber(&family, &params, &x, &refs) else { continue };
        return Ok(SixLineBase { family, params, fiber });
    }
    Err(MonodromyError::NoBasePoint(BASE_ATTEMPTS))
}

/// The covering of X by the lines through its points, of degree six.
pub fn run_six_lines(f: &CubicForm, config: &MonodromyConfig) -> Result<GroupReport, MonodromyError> {
    let b = six_lines_base(f, config)?;
    Ok(collect_group("six-lines", &b.family, &b.fiber, config, |r| scaled_triangle(r, &b.params, config)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopAgreement {
    pub loops: usize,
    /// Loops whose end fiber matched the start fiber at both step sizes.
    pub tracked: usize,
    pub agreeing: usize,
    /// Loops which, followed by their reverse, give the identity.
    pub retraced_identity: usize,
}

/// Tracks the same random loops of the six-lines covering with the
/// configured steps and with all steps halved, and compares permutations.
/// Each loop is also tracked there and back, which must give the identity.
pub fn step_halving_agreement(f: &CubicForm, config: &MonodromyConfig, loops: usize) -> Result<LoopAgreement, MonodromyError> {
    let b = six_lines_base(f, config)?;
    let fine = config.track.refined(2.0);
    let mut out = LoopAgreement { loops, tracked: 0, agreeing: 0, retraced_identity: 0 };
    for i in 0..loops {
        let path = scaled_triangle(&mut loop_rng(config.seed, i), &b.params, config);
        let coarse = monodromy_loop(&b.family, &b.fiber, &path, &config.track, config.match_tol);
        let finer = monodromy_loop(&b.family, &b.fiber, &path, &fine, config.match_tol);
        if let (Ok(a), Ok(c)) = (coarse, finer) {
            out.tracked += 1;
            if a == c {
                out.agreeing += 1;
            }
        }
        let back = monodromy_loop(&b.family, &b.fiber, &path.then(&path.reversed()), &config.track, config.match_tol);
        if back.is_ok_and(|p| p.iter().enumerate().all(|(i, &j)| i == j)) {
            out.retraced_identity += 1;
        }
    }
    Ok(out)
}

/// A first-type line through a random point of X, and the point.
pub fn sample_first_type_line(f: &CubicForm, config: &MonodromyConfig) -> Result<(NumLine, CVec), MonodromyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xc1);
    for attempt in 0..BASE_ATTEMPTS {
        let x = random_point_on(f, &mut rng);
        let Ok(sols) = solve_lines_through_point(f, &x, config.seed + attempt as u64, &config.fiber) else { continue };
        if sols.len() != 6 {
            continue;
        }
        if let Some(s) = sols.iter().find(|s| s.line.numeric_type(f) == Ok(LineType::First)) {
            return Ok((s.line.clone(), x));
        }
    }
    Err(MonodromyError::NoBasePoint(BASE_ATTEMPTS))
}

/// Runs the monodromy of the lines through x = a + λb, λ ∈ C, other than
/// the line L = span(a, b) itself: the fiber over λ = 0 consists of the
/// lines through a with L removed (L has multiplicity `l_mult`).
fn run_on_line(
    experiment: &str,
    f: &CubicForm,
    a: &[C],
    b: &[C],
    l_mult: usize,
    config: &MonodromyConfig,
) -> Result<GroupReport, MonodromyError> {
    let l = NumLine::through(a, b).expect("distinct points");
    let sols = solve_lines_through_point(f, a, config.seed, &config.fiber)?;
    let (on_l, rest): (Vec<&LineSolution>, Vec<&LineSolution>) = sols.iter().partition(|s| s.line.distance(&l) < 1e-6);
    let mult = |s: &LineSolution| match s.multiplicity {
        Multiplicity::Simple => 1,
        Multiplicity::Cluster(k) => k,
    };
    if on_l.len() != 1 || mult(on_l[0]) != l_mult || rest.iter().any(|s| s.multiplicity != Multiplicity::Simple) {
        return Err(MonodromyError::UnexpectedFiber { expected: 6 - l_mult, found: rest.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x11);
    let fam = LineFamily::on_line(f.clone(), a.to_vec(), b.to_vec(), &mut rng);
    let base = vec![ZERO];
    let fiber = encode_fiber(&fam, &base, a, &rest).ok_or(MonodromyError::UnexpectedFiber { expected: rest.len(), found: 0 })?;
    Ok(collect_group(experiment, &fam, &fiber, config, |r| scaled_triangle(r, &base, config)))
}

/// The degree-five covering of a first-type line L by the other lines
/// meeting it.
pub fn run_cl(f: &CubicForm, l: &NumLine, x: &[C], config: &MonodromyConfig) -> Result<GroupReport, MonodromyError> {
    // the point of L Hermitian-orthogonal to x goes to λ = ∞
    let (h, k) = (hdot(x, &l.p), hdot(x, &l.q));
    let b = normalize(&sub(&scale(&l.p, k), &scale(&l.q, h)));
    run_on_line("cl", f, x, &b, 1, config)
}

/// The degree-four covering of a second-type line L (a ruling of a cone of
/// the Fermat threefold) by the other lines meeting it. The vertex is put
/// at λ = ∞.
pub fn run_cl_second(f: &CubicForm, cone: &Cone, config: &MonodromyConfig) -> Result<GroupReport, MonodromyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xc2);
    let (x, _) = cone.point_numeric(&mut rng);
    let x = normalize(&x);
    let v = cone.vertex.to_complex();
    run_on_line("cl2", f, &x, &v, 2, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::{fermat_form, threefold_cones};

    fn fermat3() -> CubicForm {
        CubicForm::from_poly(&fermat_form(3))
    }

    #[test]
    fn random_points_lie_on_the_cubic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = fermat3();
        for _ in 0..10 {
            assert!(f.eval(&random_point_on(&f, &mut rng)).norm() < 1e-12);
        }
    }

    #[test]
    fn six_lines_monodromy_is_symmetric() {
        let r = run_six_lines(&fermat3(), &MonodromyConfig::default()).unwrap();
        assert_eq!(r.degree, 6);
        assert_eq!(r.order, 720, "{r:?}");
        assert_eq!(r.verdict, Verdict::Symmetric);
        assert_eq!(720 % r.order, 0);
        assert!(r.progress.iter().any(|p| p.transitivity >= 2 || p.order == 720));
    }

    #[test]
    fn halving_the_steps_does_not_change_permutations() {
        let a = step_halving_agreement(&fermat3(), &MonodromyConfig { seed: 5, ..Default::default() }, 6).unwrap();
        assert_eq!(a.tracked, 6);
        assert_eq!(a.agreeing, 6);
        assert_eq!(a.retraced_identity, 6);
    }

    #[test]
    fn first_type_line_monodromy_is_symmetric() {
        let f = fermat3();
        let config = MonodromyConfig::default();
        let (l, x) = sample_first_type_line(&f, &config).unwrap();
        let r = run_cl(&f, &l, &x, &config).unwrap();
        assert_eq!(r.degree, 5);
        assert_eq!(r.order, 120, "{r:?}");
        assert!(r.transposition_loops > 0);
    }

    #[test]
    fn second_type_line_monodromy_is_symmetric() {
        let f = fermat3();
        let r = run_cl_second(&f, &threefold_cones()[4], &MonodromyConfig::default()).unwrap();
        assert_eq!(r.degree, 4);
        assert_eq!(r.order, 24, "{r:?}");
    }
}
