//! Gauss-Jacobi rules and a general-purpose adaptive integrator.
//!
//! Rules come from the symmetric tridiagonal matrix of the orthonormal Jacobi
//! recurrence: its eigenvalues are the nodes and the squared first components
//! of its eigenvectors, times the total mass of the weight, are the weights.
//! The eigenproblem is solved with implicit-shift QL iterations that only
//! track the first row of the eigenvector matrix, then every node gets one
//! Newton step on `p̃_n`.

use crate::error::{Error, Result};
use crate::special::{recurrence_coefficients, total_mass, JacobiParams};

pub const MAX_NODES: usize = 2048;

const QL_TOLERANCE: f64 = 1e-15;
const QL_MAX_SWEEPS: usize = 50;

/// `n`-point Gauss rule for the weight `(1 - x)^α (1 + x)^β` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    params: JacobiParams,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn params(&self) -> &JacobiParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in strictly increasing order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i f(x_i)`, which equals `∫ (1-x)^α (1+x)^β f(x) dx` for
    /// polynomials of degree `<= 2n - 1`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Builds the `n`-point Gauss-Jacobi rule, `1 <= n <= 2048`.
pub fn gauss_jacobi(params: &JacobiParams, n: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_NODES).contains(&n) {
        return Err(Error::domain(format!(
            "Gauss-Jacobi node count must be in 1..={MAX_NODES}, got {n}"
        )));
    }
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    for k in 0..n {
        diag.push(recurrence_coefficients(params, k).0);
        off.push(if k + 1 < n {
            recurrence_coefficients(params, k + 1).1
        } else {
            0.0
        });
    }

    let (values, first) = tridiagonal_eigen(diag, off)?;
    let mass = total_mass(params);

    let mut pairs: Vec<(f64, f64)> = values
        .into_iter()
        .zip(first)
        .map(|(x, z)| (newton_polish(params, n, x), mass * z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();

    Ok(QuadratureRule {
        params: *params,
        nodes,
        weights,
    })
}

/// One Newton step on `p̃_n` starting from an eigenvalue estimate.
fn newton_polish(params: &JacobiParams, n: usize, x: f64) -> f64 {
    let (mut p_prev, mut d_prev) = (0.0, 0.0);
    let (mut p, mut d) = (1.0, 0.0);
    let mut off = 0.0;
    for k in 0..n {
        let (diag, _) = recurrence_coefficients(params, k);
        let (_, next_off) = recurrence_coefficients(params, k + 1);
        let p_next = ((x - diag) * p - off * p_prev) / next_off;
        let d_next = ((x - diag) * d + p - off * d_prev) / next_off;
        p_prev = p;
        d_prev = d;
        p = p_next;
        d = d_next;
        off = next_off;
    }
    if d == 0.0 || !d.is_finite() {
        return x;
    }
    let step = p / d;
    let polished = x - step;
    if polished.abs() < 1.0 {
        polished
    } else {
        x
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// sub-diagonal `e` (`e[i]` couples rows `i` and `i + 1`; the last entry is
/// ignored), together with the first component of each unit eigenvector.
fn tridiagonal_eigen(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut z = vec![0.0; n];
    if n == 0 {
        return Ok((d, z));
    }
    z[0] = 1.0;
    if n > 0 {
        e[n - 1] = 0.0;
    }

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= QL_TOLERANCE * dd || e[m].abs() < f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: QL_MAX_SWEEPS,
                });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;

            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

// 15-point Kronrod extension of the 7-point Gauss rule, nodes on [0, 1).
const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for KRONROD_NODES[1], [3], [5], [7].
const GAUSS7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4000;

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS7_WEIGHTS[3] * fc;
    for j in 0..7 {
        let dx = half * KRONROD_NODES[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += KRONROD_WEIGHTS[j] * pair;
        if j % 2 == 1 {
            gauss += GAUSS7_WEIGHTS[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// `∫_a^b f(x) dx` by globally adaptive 15-point Gauss-Kronrod bisection.
///
/// Stops once the summed `|K15 - G7|` estimate falls below
/// `rel_tol · |integral|` (or an absolute floor of `1e-300`), or after
/// 4000 segments.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut segments = vec![kronrod15(&mut f, a, b)];
    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= (rel_tol * total.abs()).max(1e-300) || segments.len() >= MAX_SEGMENTS {
            return total;
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("non-empty");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        segments.push(kronrod15(&mut f, seg.a, mid));
        segments.push(kronrod15(&mut f, mid, seg.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    #[test]
    fn two_point_legendre() {
        let rule = gauss_jacobi(&p(0.0, 0.0), 2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((rule.nodes()[0] + x).abs() < 1e-15);
        assert!((rule.nodes()[1] - x).abs() < 1e-15);
        for w in rule.weights() {
            assert!((w - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn one_point_rule_is_midpoint() {
        let rule = gauss_jacobi(&p(0.0, 0.0), 1).unwrap();
        assert_eq!(rule.nodes(), &[0.0]);
        assert!((rule.weights()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn three_point_chebyshev() {
        let rule = gauss_jacobi(&p(-0.5, -0.5), 3).unwrap();
        let want = [-(3f64.sqrt()) / 2.0, 0.0, 3f64.sqrt() / 2.0];
        for (x, w) in rule.nodes().iter().zip(want) {
            assert!((x - w).abs() < 1e-15, "{x} vs {w}");
        }
        for w in rule.weights() {
            assert!((w - PI / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn chebyshev_nodes_match_cosines() {
        let n = 200;
        let rule = gauss_jacobi(&p(-0.5, -0.5), n).unwrap();
        for (i, x) in rule.nodes().iter().enumerate() {
            let want = -((2 * i + 1) as f64 * PI / (2 * n) as f64).cos();
            assert!((x - want).abs() < 1e-14, "i={i}");
        }
    }

    #[test]
    fn integrate_examples() {
        let rule = gauss_jacobi(&p(0.0, 0.0), 2).unwrap();
        assert!((rule.integrate(|_| 1.0) - 2.0).abs() < 1e-14);
        assert!((rule.integrate(|x| x * x) - 2.0 / 3.0).abs() < 1e-15);

        let params = p(1.0, 0.0);
        let rule = gauss_jacobi(&params, 3).unwrap();
        let v = rule.integrate(|x| {
            crate::special::jacobi_eval(&params, 2, x) * crate::special::jacobi_eval(&params, 3, x)
        });
        assert!(v.abs() < 1e-12, "{v}");
    }

    #[test]
    fn node_count_limits() {
        assert!(matches!(gauss_jacobi(&p(0.0, 0.0), 0), Err(Error::Domain(_))));
        assert!(matches!(gauss_jacobi(&p(0.0, 0.0), 2049), Err(Error::Domain(_))));
        assert_eq!(gauss_jacobi(&p(7.0, 3.0), 2048).unwrap().len(), 2048);
    }

    #[test]
    fn ql_on_known_matrix() {
        // tridiag(-1, 2, -1) of size 5: eigenvalues 2 - 2 cos(kπ/6)
        let (mut vals, first) = tridiagonal_eigen(vec![2.0; 5], vec![-1.0; 5]).unwrap();
        let norm: f64 = first.iter().map(|z| z * z).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        vals.sort_by(f64::total_cmp);
        for (k, v) in vals.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * PI / 6.0).cos();
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn adaptive_integrator() {
        let v = integrate_adaptive(f64::sin, 0.0, PI, 1e-14);
        assert!((v - 2.0).abs() < 1e-14);
        let v = integrate_adaptive(|x| (-x * x).exp(), -6.0, 6.0, 1e-14);
        assert!((v - PI.sqrt()).abs() < 1e-13);
        // endpoint square-root behaviour still converges
        let v = integrate_adaptive(f64::sqrt, 0.0, 1.0, 1e-12);
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }
}
