//! The `k` table and the closed-form relation series.
//!
//! With `k = n_L - 2`, every count is linear in `k`:
//! `n_H = 3k`, `m_H = 6k`, `nu_H = 3k + 1`.

use num_rational::Ratio;

use super::identities::identity_report;
use super::plot::{line_chart, Series};
use crate::conjugate::ConjugateGraph;
use crate::fixtures;
use crate::generate::stacked;
use crate::verdict::Verdict;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct KRow {
    pub k: u64,
    pub n_l: u64,
    pub n_h: u64,
    pub m_h: u64,
    pub nu_h: u64,
}

impl KRow {
    pub fn of(k: u64) -> Self {
        KRow { k, n_l: k + 2, n_h: 3 * k, m_h: 6 * k, nu_h: 3 * k + 1 }
    }
}

pub fn k_table(k_max: u64) -> Vec<KRow> {
    (1..=k_max).map(KRow::of).collect()
}

/// Largest `k` that [`k_table_validated`] checks against a built instance.
pub const K_VALIDATE_MAX: u64 = 7;

/// Compares a row with the measured counts of `h`.
pub fn k_row_check(row: &KRow, h: &ConjugateGraph) -> Verdict {
    let Some(r) = identity_report(h) else {
        return Verdict::Skipped("disk mode".into());
    };
    let measured = [r.n_l, r.n_h, r.m_h, r.nu_h];
    let expected = [row.n_l, row.n_h, row.m_h, row.nu_h].map(|x| x as i64);
    let names = ["n_L", "n_H", "m_H", "nu_H"];
    Verdict::from_failures(
        (0..4)
            .filter(|&i| measured[i] != expected[i])
            .map(|i| format!("k = {}: {} measured {} expected {}", row.k, names[i], measured[i], expected[i]))
            .collect(),
    )
}

/// Rows for `1..=k_max`; rows up to [`K_VALIDATE_MAX`] carry the result of
/// checking them against a stacked instance on `k + 2` vertices (the
/// two-triangle sphere for `k = 1`).
pub fn k_table_validated(k_max: u64) -> Vec<(KRow, Option<Verdict>)> {
    k_table(k_max)
        .into_iter()
        .map(|row| {
            if row.k > K_VALIDATE_MAX {
                return (row, None);
            }
            let t = if row.k == 1 { fixtures::triangle() } else { stacked(row.n_l as usize, row.k).expect("n_L >= 4") };
            let v = match ConjugateGraph::of(&t) {
                Ok(h) => k_row_check(&row, &h),
                Err(e) => Verdict::Fail(vec![e.to_string()]),
            };
            (row, Some(v))
        })
        .collect()
}

pub fn k_table_csv(rows: &[KRow]) -> String {
    let mut s = String::from("k,n_L,n_H,m_H,nu_H\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.k, r.n_l, r.n_h, r.m_h, r.nu_h));
    }
    s
}

fn ratio(num: i64, den: i64) -> Ratio<i64> {
    Ratio::new(num, den)
}

fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Closed forms for a sphere triangulation on `n_L` vertices.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Relations {
    pub n_l: i64,
    pub m_l: i64,
    pub nu_l: i64,
    pub n_h: i64,
    pub m_h: i64,
    pub nu_h: i64,
    pub nu_m: i64,
    pub delta: i64,
}

impl Relations {
    pub fn of(n_l: i64) -> Self {
        Relations {
            n_l,
            m_l: 3 * n_l - 6,
            nu_l: 2 * n_l - 5,
            n_h: 3 * n_l - 6,
            m_h: 6 * n_l - 12,
            nu_h: 3 * n_l - 5,
            nu_m: n_l - 1,
            delta: n_l,
        }
    }

    pub fn nu_l_per_vertex(&self) -> Ratio<i64> {
        ratio(self.nu_l, self.n_l)
    }

    pub fn nu_h_per_vertex(&self) -> Ratio<i64> {
        ratio(self.nu_h, self.n_h)
    }
}

/// A named output file.
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

/// Comma-separated tables and SVG charts for `n_L = 3..=n_max`.
pub fn relation_tables(n_max: i64) -> Vec<Artifact> {
    let rows: Vec<Relations> = (3..=n_max.max(3)).map(Relations::of).collect();
    let mut out = Vec::new();

    let mut counts = String::from("n_L,m_L,nu_L,n_H,m_H,nu_H,nu_M,Delta\n");
    for r in &rows {
        counts.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n_l, r.m_l, r.nu_l, r.n_h, r.m_h, r.nu_h, r.nu_m, r.delta
        ));
    }
    out.push(Artifact { name: "relations_by_vertex_count.csv".into(), contents: counts });

    let mut ratios = String::from("n_L,nu_L/n_L,n_H,nu_H/n_H\n");
    for r in &rows {
        ratios.push_str(&format!("{},{},{},{}\n", r.n_l, r.nu_l_per_vertex(), r.n_h, r.nu_h_per_vertex()));
    }
    out.push(Artifact { name: "cyclomatic_per_vertex.csv".into(), contents: ratios });

    let mut by_k = String::from("k,n_L,m_L,nu_L,n_H,m_H,nu_H\n");
    for r in &rows {
        by_k.push_str(&format!("{},{},{},{},{},{},{}\n", r.n_l - 2, r.n_l, r.m_l, r.nu_l, r.n_h, r.m_h, r.nu_h));
    }
    out.push(Artifact { name: "relations_by_k.csv".into(), contents: by_k });

    let pts = |f: &dyn Fn(&Relations) -> (f64, f64)| rows.iter().map(f).collect::<Vec<_>>();
    let charts = [
        (
            "cyclomatic_interrelation.svg",
            "nu(H) against nu(L)",
            "nu(L)",
            "nu(H)",
            vec![Series::new("nu(H)", pts(&|r| (r.nu_l as f64, r.nu_h as f64)), "")],
        ),
        (
            "pt_counts.svg",
            "Triangulation L: edges and cyclomatic number",
            "n_L",
            "count",
            vec![
                Series::new("m_L", pts(&|r| (r.n_l as f64, r.m_l as f64)), ""),
                Series::new("nu(L)", pts(&|r| (r.n_l as f64, r.nu_l as f64)), "6 3"),
            ],
        ),
        (
            "pct_counts.svg",
            "Conjugated triangulation H: edges and cyclomatic number",
            "n_H",
            "count",
            vec![
                Series::new("m_H", pts(&|r| (r.n_h as f64, r.m_h as f64)), ""),
                Series::new("nu(H)", pts(&|r| (r.n_h as f64, r.nu_h as f64)), "6 3"),
            ],
        ),
        (
            "cyclomatic_per_vertex.svg",
            "Cyclomatic number per vertex",
            "vertex count",
            "ratio",
            vec![
                Series::new("nu(L)/n_L", pts(&|r| (r.n_l as f64, to_f64(r.nu_l_per_vertex()))), ""),
                Series::new("nu(H)/n_H", pts(&|r| (r.n_h as f64, to_f64(r.nu_h_per_vertex()))), "2 3"),
            ],
        ),
        (
            "pt_by_k.svg",
            "Triangulation L against k",
            "k",
            "count",
            vec![
                Series::new("n_L", pts(&|r| ((r.n_l - 2) as f64, r.n_l as f64)), ""),
                Series::new("m_L", pts(&|r| ((r.n_l - 2) as f64, r.m_l as f64)), "2 3"),
                Series::new("nu(L)", pts(&|r| ((r.n_l - 2) as f64, r.nu_l as f64)), "8 3 2 3"),
            ],
        ),
        (
            "pct_by_k.svg",
            "Conjugated triangulation H against k",
            "k",
            "count",
            vec![
                Series::new("n_H", pts(&|r| ((r.n_l - 2) as f64, r.n_h as f64)), ""),
                Series::new("m_H", pts(&|r| ((r.n_l - 2) as f64, r.m_h as f64)), "2 3"),
                Series::new("nu(H)", pts(&|r| ((r.n_l - 2) as f64, r.nu_h as f64)), "8 3 2 3"),
            ],
        ),
    ];
    for (name, title, xl, yl, series) in charts {
        out.push(Artifact { name: name.into(), contents: line_chart(title, xl, yl, &series) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        let t = k_table(10);
        assert_eq!((t[0].n_l, t[0].n_h, t[0].m_h, t[0].nu_h), (3, 3, 6, 4));
        assert_eq!((t[1].n_l, t[1].n_h, t[1].m_h, t[1].nu_h), (4, 6, 12, 7));
        assert_eq!((t[9].n_l, t[9].n_h, t[9].m_h, t[9].nu_h), (12, 30, 60, 31));
    }

    #[test]
    fn validated_rows_pass() {
        for (row, v) in k_table_validated(9) {
            match v {
                Some(v) => assert!(v.is_pass(), "k = {}: {v}", row.k),
                None => assert!(row.k > K_VALIDATE_MAX),
            }
        }
    }

    #[test]
    fn icosahedron_matches_k10() {
        let h = ConjugateGraph::of(&fixtures::icosahedron()).unwrap();
        assert!(k_row_check(&KRow::of(10), &h).is_pass());
        assert!(k_row_check(&KRow::of(9), &h).is_fail());
    }

    #[test]
    fn per_vertex_ratios() {
        assert_eq!(Relations::of(5).nu_l_per_vertex(), ratio(1, 1));
        assert_eq!(Relations::of(4).nu_l_per_vertex(), ratio(3, 4));
        assert_eq!(Relations::of(4).nu_h_per_vertex(), ratio(7, 6));
    }

    #[test]
    fn artifacts_named_and_stable() {
        let a = relation_tables(20);
        let b = relation_tables(20);
        assert_eq!(a.len(), 9);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((&x.name, &x.contents), (&y.name, &y.contents));
        }
        assert!(a[1].contents.contains("\n5,1,9,10/9\n"));
    }
}
