use super::NumError;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

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

const MAX_INTERVALS: usize = 4000;

/// 15-point Kronrod estimate and its difference from the embedded 7-point Gauss rule.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Globally adaptive Gauss-Kronrod quadrature on `[a, b]`; `b` may be
/// `f64::INFINITY`, in which case `x = a + s/(1-s)` maps the range onto `[0, 1)`.
/// `tol` bounds the estimated error, absolute or relative to the result,
/// whichever is looser.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, NumError> {
    if !(tol >= 1e-15) {
        return Err(NumError::Domain(format!("tolerance must be at least 1e-15, got {tol}")));
    }
    if b == f64::INFINITY {
        let g = |s: f64| {
            let d = 1.0 - s;
            let v = f(a + s / d) / (d * d);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        return adapt(&g, 0.0, 1.0, tol);
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(NumError::Domain("integration bounds must be finite or b = +inf".into()));
    }
    adapt(&f, a, b, tol)
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, NumError> {
    let (value, error) = gk15(f, a, b);
    let mut heap = BinaryHeap::from([Piece { a, b, value, error }]);
    let (mut total, mut err) = (value, error);
    while err > tol * total.abs().max(1.0) * 0.5 {
        if heap.len() >= MAX_INTERVALS {
            return Err(NumError::NoConvergence(format!(
                "adaptive quadrature on [{a}, {b}] stalled at estimated error {err:e}"
            )));
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(f, p.a, m);
        let (v2, e2) = gk15(f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.error;
        heap.push(Piece {
            a: p.a,
            b: m,
            value: v1,
            error: e1,
        });
        heap.push(Piece {
            a: m,
            b: p.b,
            value: v2,
            error: e2,
        });
        if !total.is_finite() {
            return Err(NumError::NoConvergence("integrand is not finite".into()));
        }
    }
    // resum to shed the drift of the running updates
    Ok(heap.iter().map(|p| p.value).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_tail() {
        let v = integrate(|x| (-x).exp(), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_five_halves() {
        let v = integrate(
            |x| 2.0 / std::f64::consts::PI.sqrt() * x * x.sqrt() * (-x).exp(),
            0.0,
            f64::INFINITY,
            1e-12,
        )
        .unwrap();
        assert!((v - 1.5).abs() < 1e-11, "{v}");
    }

    #[test]
    fn additive_over_splits() {
        let f = |x: f64| (3.0 * x).sin() * (-x * x).exp();
        let whole = integrate(f, -1.0, 2.0, 1e-13).unwrap();
        let parts = integrate(f, -1.0, 0.3, 1e-13).unwrap() + integrate(f, 0.3, 2.0, 1e-13).unwrap();
        assert!((whole - parts).abs() < 1e-12);
    }

    #[test]
    fn sqrt_endpoint() {
        let v = integrate(|x| x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bad_tolerance() {
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
