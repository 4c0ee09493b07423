use super::{z_single, Family, GenfunError};
use crate::exactalg::{int, Poly, Rational};
use num::BigInt;
use std::fmt;

type Rows = &'static [(usize, &'static [(usize, i64)])];

const Q: Family = Family::Quadrangulation;
const T: Family = Family::Triangulation;

/// Published low-order tables: `(family, d, k, order, rows)` with rows
/// `(N, [(ℒ, count)])`.
const TABLES: &[(Family, i64, i64, i64, Rows)] = &[
    (
        Q,
        2,
        3,
        8,
        &[
            (2, &[(2, 1)]),
            (3, &[(2, 15)]),
            (4, &[(2, 178), (4, 1)]),
            (5, &[(2, 1967), (4, 28)]),
            (6, &[(2, 21165), (4, 518), (6, 1)]),
            (7, &[(2, 225488), (4, 8018), (6, 42)]),
            (8, &[(2, 2395983), (4, 112671), (6, 1075), (8, 1)]),
        ],
    ),
    (
        Q,
        2,
        4,
        8,
        &[
            (3, &[(2, 1)]),
            (4, &[(2, 22)]),
            (5, &[(2, 342), (4, 1)]),
            (6, &[(2, 4640), (4, 36)]),
            (7, &[(2, 58799), (4, 815), (6, 1)]),
            (8, &[(2, 716865), (4, 14914), (6, 51)]),
        ],
    ),
    (
        Q,
        3,
        4,
        8,
        &[
            (3, &[(2, 1)]),
            (4, &[(2, 22)]),
            (5, &[(2, 341), (4, 2)]),
            (6, &[(2, 4605), (4, 71)]),
            (7, &[(2, 58026), (4, 1586), (6, 3)]),
            (8, &[(2, 703025), (4, 28655), (6, 150)]),
        ],
    ),
    (
        Q,
        2,
        5,
        8,
        &[
            (4, &[(2, 1)]),
            (5, &[(2, 29)]),
            (6, &[(2, 555), (4, 1)]),
            (7, &[(2, 8876), (4, 43)]),
            (8, &[(2, 128712), (4, 1127), (6, 1)]),
        ],
    ),
    (
        Q,
        3,
        5,
        8,
        &[
            (4, &[(2, 1)]),
            (5, &[(2, 29)]),
            (6, &[(2, 554), (4, 2)]),
            (7, &[(2, 8832), (4, 87)]),
            (8, &[(2, 127537), (4, 2300), (6, 3)]),
        ],
    ),
    (
        Q,
        4,
        5,
        8,
        &[
            (4, &[(2, 1)]),
            (5, &[(2, 29)]),
            (6, &[(2, 554), (4, 2)]),
            (7, &[(2, 8833), (4, 86)]),
            (8, &[(2, 127586), (4, 2251), (6, 3)]),
        ],
    ),
    (
        T,
        1,
        2,
        12,
        &[
            (2, &[(1, 1)]),
            (4, &[(1, 14), (2, 1)]),
            (6, &[(1, 199), (2, 26), (3, 1)]),
            (8, &[(1, 2952), (2, 533), (3, 39), (4, 1)]),
            (10, &[(1, 45473), (2, 10147), (3, 1062), (4, 53), (5, 1)]),
            (12, &[(1, 722498), (2, 187756), (3, 25040), (4, 1824), (5, 68), (6, 1)]),
        ],
    ),
    (
        T,
        1,
        3,
        12,
        &[
            (4, &[(1, 1)]),
            (6, &[(1, 28), (2, 1)]),
            (8, &[(1, 612), (2, 42), (3, 1)]),
            (10, &[(1, 12326), (2, 1220), (3, 57), (4, 1)]),
            (12, &[(1, 239793), (2, 30456), (3, 2090), (4, 73), (5, 1)]),
        ],
    ),
    (
        T,
        2,
        3,
        12,
        &[
            (4, &[(1, 1)]),
            (6, &[(1, 27), (2, 2)]),
            (8, &[(1, 573), (2, 79), (3, 3)]),
            (10, &[(1, 11263), (2, 2178), (3, 159), (4, 4)]),
            (12, &[(1, 214689), (2, 51970), (3, 5479), (4, 270), (5, 5)]),
        ],
    ),
    (
        T,
        1,
        4,
        12,
        &[
            (6, &[(1, 1)]),
            (8, &[(1, 42), (2, 1)]),
            (10, &[(1, 1225), (2, 56), (3, 1)]),
            (12, &[(1, 30792), (2, 2031), (3, 71), (4, 1)]),
        ],
    ),
    (
        T,
        2,
        4,
        12,
        &[
            (6, &[(1, 1)]),
            (8, &[(1, 41), (2, 2)]),
            (10, &[(1, 1168), (2, 111), (3, 3)]),
            (12, &[(1, 28694), (2, 3984), (3, 213), (4, 4)]),
        ],
    ),
    (
        T,
        3,
        4,
        12,
        &[
            (6, &[(1, 1)]),
            (8, &[(1, 41), (2, 2)]),
            (10, &[(1, 1171), (2, 108), (3, 3)]),
            (12, &[(1, 28896), (2, 3791), (3, 204), (4, 4)]),
        ],
    ),
];

/// A reference table: `coefficients[N]` is the α-polynomial at `g^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedTable {
    pub family: Family,
    pub d: i64,
    pub k: i64,
    pub order: i64,
    pub coefficients: Vec<Poly>,
}

/// The twelve reference tables.
pub fn appendix_b_tables() -> Vec<ExpectedTable> {
    TABLES
        .iter()
        .map(|&(family, d, k, order, rows)| {
            let mut coefficients = vec![Poly::zero(); order as usize + 1];
            for &(n, terms) in rows {
                let mut c = vec![Rational::from_integer(0.into()); terms.iter().map(|t| t.0).max().unwrap_or(0) + 1];
                for &(l, v) in terms {
                    c[l] = int(v);
                }
                coefficients[n] = Poly::new(c);
            }
            ExpectedTable {
                family,
                d,
                k,
                order,
                coefficients,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub family: Family,
    pub d: i64,
    pub k: i64,
    pub n: usize,
    pub l: usize,
    pub expected: BigInt,
    pub computed: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} d={} k={} N={} L={}: expected {}, computed {}",
            self.family.short(),
            self.d,
            self.k,
            self.n,
            self.l,
            self.expected,
            self.computed
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct AppendixBReport {
    pub tables_checked: usize,
    pub tables_matching: usize,
    pub mismatches: Vec<Mismatch>,
}

impl AppendixBReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty() && self.tables_checked == self.tables_matching
    }
}

/// Recomputes each expected table and diffs coefficient by coefficient.
pub fn check_expected(expected: &[ExpectedTable]) -> Result<AppendixBReport, GenfunError> {
    let mut report = AppendixBReport::default();
    for e in expected {
        let z = z_single(e.family, e.d, e.k, e.order)?;
        let before = report.mismatches.len();
        for n in 0..=e.order as usize {
            let (p, q) = (&e.coefficients[n], &z.coefficients[n]);
            let top = p.degree().max(q.degree());
            for l in 0..=top.max(0) as usize {
                if p.coeff(l) != q.coeff(l) {
                    report.mismatches.push(Mismatch {
                        family: e.family,
                        d: e.d,
                        k: e.k,
                        n,
                        l,
                        expected: p.coeff(l).to_integer(),
                        computed: q.coeff(l).to_integer(),
                    });
                }
            }
        }
        report.tables_checked += 1;
        if report.mismatches.len() == before {
            report.tables_matching += 1;
        }
    }
    Ok(report)
}

/// Checks all twelve built-in tables.
pub fn appendix_b_check() -> Result<AppendixBReport, GenfunError> {
    check_expected(&appendix_b_tables())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_tables() {
        let t = appendix_b_tables();
        assert_eq!(t.len(), 12);
        assert_eq!(t[0].coefficients[4].coeff(4), int(1));
    }

    #[test]
    fn alpha_one_sums_agree_within_k() {
        let t = appendix_b_tables();
        let one = int(1);
        for a in &t {
            for b in &t {
                if a.family == b.family && a.k == b.k {
                    for n in 0..=a.order as usize {
                        assert_eq!(a.coefficients[n].eval(&one), b.coefficients[n].eval(&one));
                    }
                }
            }
        }
    }

    #[test]
    fn perturbation_detected() {
        let mut t = vec![appendix_b_tables().remove(0)];
        let mut c = t[0].coefficients[5].coeffs().to_vec();
        c[2] += int(1);
        t[0].coefficients[5] = Poly::new(c);
        let r = check_expected(&t).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!((r.mismatches[0].n, r.mismatches[0].l), (5, 2));
    }
}
