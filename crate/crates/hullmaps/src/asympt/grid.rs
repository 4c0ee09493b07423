//! Tabulated laws, written as CSV with a JSON header line.

use super::*;
use crate::genfun::Family;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LawName {
    Pinf,
    Pu,
    Ptilde,
    Joint,
    Cor,
    Lav,
    Profile,
    Ek,
    Winf,
}

impl LawName {
    pub const ALL: [LawName; 9] = [
        LawName::Pinf,
        LawName::Pu,
        LawName::Ptilde,
        LawName::Joint,
        LawName::Cor,
        LawName::Lav,
        LawName::Profile,
        LawName::Ek,
        LawName::Winf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawName::Pinf => "pinf",
            LawName::Pu => "pu",
            LawName::Ptilde => "ptilde",
            LawName::Joint => "joint",
            LawName::Cor => "cor",
            LawName::Lav => "lav",
            LawName::Profile => "profile",
            LawName::Ek => "ek",
            LawName::Winf => "winf",
        }
    }

    fn x_name(self) -> &'static str {
        match self {
            LawName::Pinf | LawName::Pu => "L",
            LawName::Ptilde => "R",
            LawName::Joint => "L2",
            LawName::Cor => "v",
            LawName::Lav | LawName::Profile => "u",
            LawName::Ek => "d",
            LawName::Winf => "alpha",
        }
    }
}

impl FromStr for LawName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        LawName::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = LawName::ALL.iter().map(|l| l.as_str()).collect();
            format!("unknown law `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// `start:stop:step`, both ends included when they fall on the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, h] = parts.as_slice() else {
            return Err(format!("grid `{s}` is not of the form start:stop:step"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("grid `{s}`: {e}"));
        let g = GridSpec {
            start: num(a)?,
            stop: num(b)?,
            step: num(h)?,
        };
        if !(g.step > 0.0 && g.stop >= g.start && g.start.is_finite() && g.stop.is_finite()) {
            return Err(format!("grid `{s}` needs step > 0 and stop ≥ start"));
        }
        if (g.stop - g.start) / g.step > 1e7 {
            return Err(format!("grid `{s}` has more than 10⁷ points"));
        }
        Ok(g)
    }
}

/// Everything needed to tabulate one law.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawRequest {
    pub law: LawName,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub grid: GridSpec,
}

impl LawRequest {
    pub fn new(law: LawName, c: f64, grid: GridSpec) -> Self {
        LawRequest {
            law,
            family: None,
            c,
            u: None,
            v: None,
            l1: None,
            d: None,
            k: None,
            grid,
        }
    }

    /// Name of the abscissa column; `lav` with `l1` set is `L_av(v|L₁)`.
    pub fn x_name(&self) -> &'static str {
        match (self.law, self.l1) {
            (LawName::Lav, Some(_)) => "v",
            (law, _) => law.x_name(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawTable {
    pub request: LawRequest,
    pub rows: Vec<(f64, f64)>,
}

impl LawTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header = serde_json::to_string(&self.request).expect("request serializes");
        writeln!(out, "# {header}").unwrap();
        writeln!(out, "{},value", self.request.x_name()).unwrap();
        for (x, y) in &self.rows {
            writeln!(out, "{x},{y}").unwrap();
        }
        out
    }

    /// Trapezoidal integral of the tabulated values.
    pub fn trapezoid(&self) -> f64 {
        trapezoid_every(&self.rows, 1)
    }

    /// Integral of the table, Richardson-extrapolated over the step
    /// multiples 1, 2, 4, 5 with error terms `h^{3/2}, h², h^{5/2}` (a
    /// `√x` endpoint, as in every density here). Falls back to the plain
    /// trapezoid when the number of intervals is not a multiple of 20.
    pub fn integral(&self) -> f64 {
        let n = self.rows.len().saturating_sub(1);
        if n == 0 || n % 20 != 0 {
            return self.trapezoid();
        }
        let h = self.rows[1].0 - self.rows[0].0;
        let levels = [1usize, 2, 4, 5];
        let mut a = [[0.0; 5]; 4];
        for (row, &s) in a.iter_mut().zip(&levels) {
            let hs = s as f64 * h;
            *row = [1.0, hs.powf(1.5), hs * hs, hs.powf(2.5), trapezoid_every(&self.rows, s)];
        }
        solve4(a)[0]
    }
}

fn trapezoid_every(rows: &[(f64, f64)], s: usize) -> f64 {
    let pts: Vec<&(f64, f64)> = rows.iter().step_by(s).collect();
    pts.windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum()
}

/// Gaussian elimination with partial pivoting on an augmented 4×5 system.
fn solve4(mut a: [[f64; 5]; 4]) -> [f64; 4] {
    for col in 0..4 {
        let p = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, p);
        for r in col + 1..4 {
            let f = a[r][col] / a[col][col];
            for j in col..5 {
                a[r][j] -= f * a[col][j];
            }
        }
    }
    let mut x = [0.0; 4];
    for r in (0..4).rev() {
        let s: f64 = (r + 1..4).map(|j| a[r][j] * x[j]).sum();
        x[r] = (a[r][4] - s) / a[r][r];
    }
    x
}

fn need<T>(x: Option<T>, what: &str, law: LawName) -> Result<T, AsymptError> {
    x.ok_or_else(|| AsymptError::Domain(format!("law `{}` needs --{what}", law.as_str())))
}

pub fn tabulate(req: &LawRequest) -> Result<LawTable, AsymptError> {
    let c = req.c;
    let law = req.law;
    let f: Box<dyn Fn(f64) -> Result<f64, AsymptError>> = match law {
        LawName::Pinf => Box::new(move |l| pinf_density(l, c)),
        LawName::Pu => {
            let u = need(req.u, "u", law)?;
            Box::new(move |l| pu_density(l, u, c))
        }
        LawName::Ptilde => {
            let u = need(req.u, "u", law)?;
            if u == 1.0 {
                Box::new(move |r| ptilde1_density(r, c))
            } else {
                Box::new(move |r| ptilde_density(r, u, c))
            }
        }
        LawName::Joint => {
            let (v, l1) = (need(req.v, "v", law)?, need(req.l1, "l1", law)?);
            Box::new(move |l2| joint_density(l1, l2, v, c))
        }
        LawName::Cor => Box::new(cor),
        LawName::Lav => match req.l1 {
            Some(l1) => Box::new(move |v| lav_cond(v, l1, c)),
            None => Box::new(move |u| lav(u, c)),
        },
        LawName::Profile => Box::new(move |u| profile(u, c)),
        LawName::Ek => {
            let family = need(req.family, "family", law)?;
            let k = need(req.k, "k", law)?;
            Box::new(move |d| ek_L(family, d.round() as i64, k))
        }
        LawName::Winf => {
            let family = need(req.family, "family", law)?;
            let d = need(req.d, "d", law)?;
            Box::new(move |alpha| winf(family, alpha, d))
        }
    };
    let rows = req
        .grid
        .points()
        .into_iter()
        .map(|x| Ok((x, f(x)?)))
        .collect::<Result<_, AsymptError>>()?;
    Ok(LawTable {
        request: req.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: GridSpec = "0:1:0.25".parse().unwrap();
        assert_eq!(g.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!("0:5:0.01".parse::<GridSpec>().unwrap().points().len(), 501);
        assert!("1:0:0.1".parse::<GridSpec>().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
    }

    #[test]
    fn pinf_table_is_normalised() {
        let req = LawRequest::new(LawName::Pinf, 1.0 / 3.0, "0:5:0.01".parse().unwrap());
        let t = tabulate(&req).unwrap();
        // the mass beyond L = 5 is 1.38e-6
        let tail = 1.38005703129325e-6;
        assert!((t.integral() + tail - 1.0).abs() < 5e-7);
        assert!((t.trapezoid() - 1.0).abs() > 1e-3);
        let csv = t.to_csv();
        assert!(csv.starts_with("# {\"law\":\"pinf\""));
        assert_eq!(csv.lines().nth(1), Some("L,value"));
    }

    #[test]
    fn missing_parameters() {
        let g = "0:1:0.5".parse().unwrap();
        assert!(tabulate(&LawRequest::new(LawName::Pu, 0.5, g)).is_err());
        assert!(tabulate(&LawRequest::new(LawName::Winf, 0.5, g)).is_err());
    }
}
