use super::AsymptError;
use crate::exactalg::{int, to_f64, Rational};
use crate::genfun::Family;

fn check_d(family: Family, d: i64) -> Result<(), AsymptError> {
    if d < family.min_d() {
        return Err(AsymptError::Domain(format!(
            "{family}: hull perimeters are defined for d ≥ {}, got d = {d}",
            family.min_d()
        )));
    }
    Ok(())
}

/// `W_∞(α;d) = lim_k E_k[α^{ℒ(d)}]`.
pub fn winf(family: Family, alpha: f64, d: i64) -> Result<f64, AsymptError> {
    check_d(family, d)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(AsymptError::Domain(format!("W_∞ needs 0 < α ≤ 1, got α = {alpha}")));
    }
    let d = d as f64;
    Ok(match family {
        Family::Quadrangulation => {
            let a2 = alpha * alpha;
            let a4 = a2 * a2;
            let first = ((d - 2.0).powi(2) * (d + 3.0).powi(2) * a4
                - 26.0 * (d - 2.0) * d * (d + 1.0) * (d + 3.0) * a2
                + 25.0 * d * d * (d + 1.0).powi(2))
            .sqrt()
                / (d * (d + 1.0) * (1.0 - a2) + 6.0 * a2);
            let second = ((d - 1.0).powi(2) * (d + 4.0).powi(2) * a4
                - 26.0 * (d - 1.0) * (d + 1.0) * (d + 2.0) * (d + 4.0) * a2
                + 25.0 * (d + 1.0).powi(2) * (d + 2.0).powi(2))
            .sqrt()
                / ((d + 1.0) * (d + 2.0) * (1.0 - a2) + 6.0 * a2);
            0.5 * (second - first)
        }
        Family::Triangulation => {
            let part = |m: f64| {
                (m * (m * (9.0 - alpha) * (1.0 - alpha) - 20.0 * alpha + 36.0) + 36.0).sqrt()
                    / (m * (1.0 - alpha) + 2.0)
            };
            0.5 * (part(d * (d + 3.0)) - part((d - 1.0) * (d + 2.0)))
        }
    })
}

/// `E_∞[ℒ(d)]`, exact.
pub fn einf_l_exact(family: Family, d: i64) -> Result<Rational, AsymptError> {
    check_d(family, d)?;
    let q = |n: i64| int(n);
    Ok(match family {
        Family::Quadrangulation => {
            q(2) * q(d + 1) * q(d + 1) * q(3 * d * d + 6 * d - 4) / (q(3) * q(2 * d + 1) * q(2 * d + 3))
        }
        Family::Triangulation => q(3) * q(d) * q(d + 1) * q(d + 1) * q(d + 2) / (q(2 * d + 1) * q(2 * d + 3)),
    })
}

#[allow(non_snake_case)]
pub fn einf_L(family: Family, d: i64) -> Result<f64, AsymptError> {
    Ok(to_f64(&einf_l_exact(family, d)?))
}

/// `E_k[ℒ(d)]` at finite `k`, exact.
pub fn ek_l_exact(family: Family, d: i64, k: i64) -> Result<Rational, AsymptError> {
    check_d(family, d)?;
    if d >= k {
        return Err(AsymptError::Domain(format!(
            "{family}: E_k[ℒ(d)] needs d < k, got d = {d}, k = {k}"
        )));
    }
    let (d, k) = (int(d), int(k));
    let one = int(1);
    let n = |v: i64| int(v);
    let sq = |x: &Rational| x * x;
    Ok(match family {
        Family::Quadrangulation => {
            let k1 = &k + &one;
            let k2 = &k + n(2);
            let pref = &k * &k1 * &k2
                / (n(2)
                    * (sq(&k) + n(2) * &k - &one)
                    * (n(5) * k.pow(4) + n(20) * k.pow(3) + n(27) * sq(&k) + n(14) * &k + n(4)));
            let dd = (&d - &one) * (&d + &one) * (&d + n(2)) * (&d + n(4));
            let a = &dd
                * (n(2) * &k + n(3))
                * ((&one - &d) * (&d + &one) * (&d + n(2)) * (&d + n(4)) * (n(5) * sq(&d) + n(15) * &d + n(17))
                    + sq(&k1) * sq(&k2) * (n(5) * sq(&k) + n(15) * &k + n(2))
                    - n(4))
                / (n(3) * (n(2) * &d + n(3)) * sq(&k1) * sq(&k2));
            let ee = (&d - n(2)) * &d * (&d + &one) * (&d + n(3));
            let b = &ee
                * (n(2) * &k + &one)
                * ((n(2) - &d) * &d * (&d + &one) * (&d + n(3)) * (n(5) * sq(&d) + n(5) * &d + n(7))
                    + sq(&k) * sq(&k1) * (n(5) * sq(&k) + n(5) * &k - n(8))
                    - n(4))
                / (n(3) * (n(2) * &d + &one) * sq(&k) * sq(&k1));
            pref * (a - b)
        }
        Family::Triangulation => {
            let k1 = &k + &one;
            let pref = sq(&k) * sq(&k1)
                / (n(2)
                    * (n(2) * &k + &one)
                    * (n(5) * k.pow(6) + n(15) * k.pow(5) + n(14) * k.pow(4) + n(3) * k.pow(3) - sq(&k) - &one));
            let dd = &d * (&d + &one) * (&d + n(2)) * (&d + n(3));
            let a = &dd
                * (n(10) * k1.pow(6) - n(7) * k1.pow(4) - n(2) * &dd * (n(5) * sq(&d) + n(15) * &d + n(14)) - n(2))
                / (k1.pow(3) * (n(2) * &d + n(3)));
            let ee = (&d - &one) * &d * (&d + &one) * (&d + n(2));
            let b = &ee * (n(10) * k.pow(6) - n(7) * k.pow(4) - n(2) * &ee * (n(5) * sq(&d) + n(5) * &d + n(4)) - n(2))
                / (k.pow(3) * (n(2) * &d + &one));
            pref * (a - b)
        }
    })
}

#[allow(non_snake_case)]
pub fn ek_L(family: Family, d: i64, k: i64) -> Result<f64, AsymptError> {
    Ok(to_f64(&ek_l_exact(family, d, k)?))
}
