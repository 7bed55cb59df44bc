//! Univariate root finding: companion-matrix eigenvalues, Newton polishing,
//! and clustering of nearby roots into multiple roots.

use nalgebra::DMatrix;
use num_complex::Complex64;

type C = Complex64;

fn eval_with_derivs(coeffs: &[C], z: C) -> (C, C) {
    let mut p = C::new(0.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Value of Σ cₖ zᵏ.
pub fn horner(coeffs: &[C], z: C) -> C {
    eval_with_derivs(coeffs, z).0
}

/// Coefficients of the derivative.
pub fn derivative(coeffs: &[C]) -> Vec<C> {
    coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

/// Drops leading coefficients that are negligible against the largest one.
pub fn trim(coeffs: &[C], rel: f64) -> &[C] {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].norm() <= rel * scale {
        n -= 1;
    }
    &coeffs[..n]
}

/// All complex roots of Σ cₖ zᵏ (constant term first), with multiplicity.
/// The leading coefficient must be nonzero.
pub fn poly_roots(coeffs: &[C]) -> Vec<C> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    assert!(lead.norm() > 0.0, "leading coefficient must be nonzero");
    if n == 1 {
        return vec![-coeffs[0] / lead];
    }
    // zero roots are split off so the companion matrix stays nonsingular
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let core = &coeffs[zeros..];
    let m = core.len() - 1;
    let mut out = vec![C::new(0.0, 0.0); zeros];
    if m > 0 {
        let mut comp = DMatrix::<C>::zeros(m, m);
        for i in 1..m {
            comp[(i, i - 1)] = C::new(1.0, 0.0);
        }
        for i in 0..m {
            comp[(i, m - 1)] = -core[i] / lead;
        }
        let eig = nalgebra::linalg::Schur::try_new(comp.clone(), f64::EPSILON, 10_000)
            .and_then(|s| s.eigenvalues())
            .map(|v| v.iter().copied().collect::<Vec<_>>())
            .unwrap_or_else(|| aberth(core));
        out.extend(eig.into_iter().map(|z| polish(core, z, 3)));
    }
    out
}

/// Aberth–Ehrlich iteration; fallback when the eigenvalue iteration fails.
fn aberth(coeffs: &[C]) -> Vec<C> {
    let n = coeffs.len() - 1;
    let radius = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max) / coeffs[n].norm();
    let mut z: Vec<C> = (0..n)
        .map(|k| C::from_polar(radius.clamp(0.5, 10.0), 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivs(coeffs, z[i]);
            let ratio = p / dp;
            let s: C = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// A few Newton steps, kept only while they reduce the residual.
pub fn polish(coeffs: &[C], mut z: C, iters: usize) -> C {
    let mut r = horner(coeffs, z).norm();
    for _ in 0..iters {
        let (p, dp) = eval_with_derivs(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let cand = z - p / dp;
        let rc = horner(coeffs, cand).norm();
        // also stops on NaN
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(rc < r) {
            break;
        }
        z = cand;
        r = rc;
    }
    z
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootCluster {
    pub value: C,
    pub multiplicity: usize,
}

/// Groups roots whose mutual distance is below `tol` (relative to their
/// size). A cluster of size m is represented by its mean, refined as a
/// simple root of the (m−1)-th derivative.
pub fn cluster_roots(coeffs: &[C], roots: &[C], tol: f64) -> Vec<RootCluster> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![roots[i]];
        // transitive closure, so a chain of close roots forms one cluster
        let mut k = 0;
        while k < members.len() {
            let z = members[k];
            for j in 0..roots.len() {
                if !used[j] && (roots[j] - z).norm() <= tol * (1.0 + z.norm()) {
                    used[j] = true;
                    members.push(roots[j]);
                }
            }
            k += 1;
        }
        let m = members.len();
        let mean = members.iter().sum::<C>() / m as f64;
        let value = if m > 1 {
            let mut d = coeffs.to_vec();
            for _ in 0..m - 1 {
                d = derivative(&d);
            }
            polish(&d, mean, 5)
        } else {
            mean
        };
        out.push(RootCluster { value, multiplicity: m });
    }
    out
}

/// Roots of the binary form Σ cₖ s^{d−k} tᵏ as projective pairs [s : t],
/// with roots at s = 0 returned as [0 : 1].
pub fn binary_roots(coeffs: &[C]) -> Vec<[C; 2]> {
    let d = coeffs.len() - 1;
    let core = trim(coeffs, 1e-13);
    let mut out: Vec<[C; 2]> = poly_roots(core).into_iter().map(|t| [C::new(1.0, 0.0), t]).collect();
    while out.len() < d {
        out.push([C::new(0.0, 0.0), C::new(1.0, 0.0)]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn quadratic_roots() {
        // z² − 3z + 2
        let mut r = poly_roots(&[c(2.0), c(-3.0), c(1.0)]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(1.0)).norm() < 1e-12);
        assert!((r[1] - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn cube_roots_of_minus_one_squared() {
        // (t³ + 1)² = t⁶ + 2t³ + 1
        let coeffs = [c(1.0), c(0.0), c(0.0), c(2.0), c(0.0), c(0.0), c(1.0)];
        let roots = poly_roots(&coeffs);
        let cl = cluster_roots(&coeffs, &roots, 1e-6);
        assert_eq!(cl.len(), 3);
        let w = C::from_polar(1.0, std::f64::consts::PI / 3.0);
        for target in [c(-1.0), w, c(1.0) - w] {
            let hit = cl.iter().find(|r| (r.value - target).norm() < 1e-10).expect("root found");
            assert_eq!(hit.multiplicity, 2);
        }
    }

    #[test]
    fn zero_roots_and_infinity() {
        let r = poly_roots(&[c(0.0), c(0.0), c(1.0), c(1.0)]);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        let b = binary_roots(&[c(1.0), c(1.0), c(0.0)]);
        assert_eq!(b.len(), 2);
        assert!(b.iter().any(|p| p[0].norm() == 0.0));
    }

    #[test]
    fn aberth_agrees_with_companion() {
        let coeffs = [c(-6.0), c(11.0), c(-6.0), c(1.0)];
        let mut a = aberth(&coeffs);
        a.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        for (z, e) in a.iter().zip([1.0, 2.0, 3.0]) {
            assert!((z - c(e)).norm() < 1e-10);
        }
    }
}
