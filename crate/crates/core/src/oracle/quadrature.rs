//! Globally adaptive 15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

/// Maximum bisection depth of any subinterval.
pub const MAX_DEPTH: u32 = 60;

const MAX_INTERVALS: usize = 20_000;

const INITIAL_SEGMENTS: usize = 16;

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Integral estimate with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = kronrod * half;
    let abs_half = half.abs();
    let res_abs = abs_sum * abs_half;
    let res_asc = asc * abs_half;

    // QUADPACK error scaling
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`, bisecting the
/// subinterval with the largest error estimate until the summed estimate
/// drops below `tol`.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    if !(a.is_finite() && b.is_finite()) {
        return domain(format!("integration limits must be finite, got [{a}, {b}]"));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
        });
    }
    // a single 15-point rule can step over a narrow peak entirely
    let mut heap = BinaryHeap::new();
    let mut total_error = 0.0;
    let width = (b - a) / INITIAL_SEGMENTS as f64;
    for k in 0..INITIAL_SEGMENTS {
        let sa = a + k as f64 * width;
        let sb = if k + 1 == INITIAL_SEGMENTS {
            b
        } else {
            sa + width
        };
        let (value, error) = gauss_kronrod_15(&f, sa, sb);
        total_error += error;
        heap.push(Segment {
            a: sa,
            b: sb,
            value,
            error,
            depth: 0,
        });
    }
    loop {
        if total_error <= tol {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= MAX_DEPTH || heap.len() + 2 > MAX_INTERVALS {
            heap.push(worst);
            let (value, error) = sum_heap(&heap);
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                tol,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gauss_kronrod_15(&f, worst.a, mid);
        let (rv, re) = gauss_kronrod_15(&f, mid, worst.b);
        total_error += le + re - worst.error;
        for (sa, sb, v, e) in [(worst.a, mid, lv, le), (mid, worst.b, rv, re)] {
            heap.push(Segment {
                a: sa,
                b: sb,
                value: v,
                error: e,
                depth: worst.depth + 1,
            });
        }
        // the running sums drift; resum occasionally
        if heap.len() % 64 == 0 {
            total_error = sum_heap(&heap).1;
        }
    }
    let (value, error) = sum_heap(&heap);
    Ok(Quadrature { value, error })
}

fn sum_heap(heap: &BinaryHeap<Segment>) -> (f64, f64) {
    // deterministic order regardless of heap layout
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    segs.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let k: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        let g: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        // Kronrod-15 integrates degree 22 exactly
        let (v, _) = gauss_kronrod_15(&|x: f64| x.powi(22), -1.0, 1.0);
        assert!((v - 2.0 / 23.0).abs() < 1e-15);
    }

    #[test]
    fn simple_polynomial() {
        let q = adaptive_integrate(|x| x * x, 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_integrals_and_honest_errors() {
        // (integrand, a, b, exact)
        type Case = (Box<dyn Fn(f64) -> f64>, f64, f64, f64);
        let cases: Vec<Case> = vec![
            (Box::new(|x: f64| (-x * x).exp()), -30.0, 30.0, PI.sqrt()),
            (
                Box::new(|x: f64| x * x * (-x * x).exp()),
                -30.0,
                30.0,
                0.5 * PI.sqrt(),
            ),
            (
                Box::new(|x: f64| (-(x - 5.0).powi(2)).exp()),
                -15.0,
                25.0,
                PI.sqrt(),
            ),
            (
                Box::new(|x: f64| (-x * x / (2.0 * 0.01)).exp()),
                -3.0,
                3.0,
                (2.0 * PI * 0.01).sqrt(),
            ),
            (
                Box::new(|x: f64| (-x * x).exp() * (3.0 * x).cos()),
                -40.0,
                40.0,
                PI.sqrt() * (-2.25f64).exp(),
            ),
        ];
        for (k, (f, a, b, exact)) in cases.into_iter().enumerate() {
            for tol in [1e-6, 1e-10] {
                let q = adaptive_integrate(&f, a, b, tol).unwrap();
                let err = (q.value - exact).abs();
                assert!(
                    err <= q.error.max(1e-15),
                    "case {k} tol {tol}: true {err:e} > est {:e}",
                    q.error
                );
                assert!(err <= tol.max(q.error), "case {k}");
            }
        }
    }

    #[test]
    fn reports_non_convergence_with_estimate() {
        // a jump defeats bisection at machine precision
        let r = adaptive_integrate(|x: f64| if x < 0.3 { 0.0 } else { 1.0 }, 0.0, 1.0, 1e-300);
        match r {
            Err(Error::NonConvergence { estimate, .. }) => assert!((estimate - 0.7).abs() < 1e-6),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(adaptive_integrate(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(adaptive_integrate(|x| x, 0.0, f64::INFINITY, 1e-8).is_err());
        assert_eq!(
            adaptive_integrate(|x| x, 1.0, 1.0, 1e-8).unwrap().value,
            0.0
        );
    }
}
