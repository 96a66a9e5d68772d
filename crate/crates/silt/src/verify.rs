//! Reproducible checks with known answers, reported as rows of expected
//! against computed values.

use silt_core::algebra::Algebra;
use silt_core::exactmat::PrimeField;
use silt_core::explorer::{Limits, WaveExecutor};
use silt_core::orders::{self, Digraph, Family};

use crate::run::explore_checked;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Row {
    fn new(check: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self {
            check: check.into(),
            pass: expected == computed,
            expected,
            computed,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    pub fn render(&self) -> String {
        let w = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
        let e = self.rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
        let c = self.rows.iter().map(|r| r.computed.len()).max().unwrap_or(8).max(8);
        let mut out = format!("{:w$}  {:e$}  {:c$}  result\n", "check", "expected", "computed");
        for r in &self.rows {
            let verdict = if r.pass { "ok" } else { "MISMATCH" };
            out.push_str(&format!("{:w$}  {:e$}  {:c$}  {verdict}\n", r.check, r.expected, r.computed));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }

    fn push(&mut self, row: Row) {
        self.rows.push(row);
    }
}

type Res<T> = silt_core::Result<T>;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn hasse_row(name: &str, check: Option<bool>) -> Row {
    Row::new(
        format!("{name} hasse"),
        "pass",
        match check {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "incomplete",
        },
    )
}

/// Counts of silting modules and torsion classes, sincere balance and the
/// Hasse property for the hereditary orders of rank `1..=max_n`.
pub fn hereditary<E: WaveExecutor>(field: PrimeField, max_n: usize, exec: &E) -> Res<Report> {
    let mut rep = Report::default();
    for n in 1..=max_n {
        let alg = Family::Hereditary(n).build(field)?;
        let (eq, check) = explore_checked(&alg, Limits::default(), exec)?;
        let c = binomial(2 * n as u64, n as u64);
        let name = format!("hereditary n={n}");
        rep.push(Row::new(format!("{name} silting"), c, eq.node_count()));
        let sincere = orders::classify_sincere(&eq)?;
        let s = sincere.iter().filter(|&&b| b).count();
        rep.push(Row::new(format!("{name} sincere"), eq.node_count() - s, s));
        let tors = orders::assemble_tors_hasse(&eq, &sincere)?;
        rep.push(Row::new(format!("{name} torsion"), 3 * c / 2, tors.nodes.len()));
        rep.push(hasse_row(&name, check));
    }
    Ok(rep)
}

/// The Auslander orders of Bass type V at `n = 0..=max_n` against the weak
/// order on `S_{n+2}`.
pub fn weak_order<E: WaveExecutor>(field: PrimeField, max_n: usize, exec: &E) -> Res<Report> {
    let mut rep = Report::default();
    for n in 0..=max_n {
        let alg = Family::AuslanderBassV(n).build(field)?;
        let (eq, check) = explore_checked(&alg, Limits::default(), exec)?;
        let name = format!("auslander n={n}");
        rep.push(Row::new(format!("{name} silting"), factorial(n as u64 + 2), eq.node_count()));
        let weak = orders::weak_order_hasse(n + 2)?;
        let iso = orders::poset_isomorphic(&Digraph::from_exchange(&eq), &weak.digraph())?;
        rep.push(Row::new(format!("{name} weak order S{}", n + 2), true, iso));
        rep.push(hasse_row(&name, check));
    }
    Ok(rep)
}

/// `kQ_n/<Q_2n>` and `kQ_n/<Q_n>` have isomorphic silting posets.
pub fn reduction<E: WaveExecutor>(field: PrimeField, ns: &[usize], exec: &E) -> Res<Report> {
    let mut rep = Report::default();
    for &n in ns {
        let explore = |alg: &Algebra| explore_checked(alg, Limits::default(), exec);
        let (a, _) = explore(&orders::hereditary_truncation(field, n, 1)?)?;
        let (b, _) = explore(&orders::hereditary_truncation(field, n, 2)?)?;
        let iso = orders::poset_isomorphic(&Digraph::from_exchange(&a), &Digraph::from_exchange(&b))?;
        rep.push(Row::new(format!("truncation n={n} bound 2n vs n"), true, iso));
    }
    Ok(rep)
}

/// The small worked examples: the A2 path algebra and the Bass order of
/// type V.
pub fn examples<E: WaveExecutor>(field: PrimeField, exec: &E) -> Res<Report> {
    let mut rep = Report::default();
    for (name, fam, nodes, edges) in [
        ("triangular_a2", Family::TriangularA2, 5, 5),
        ("bass_v", Family::BassV, 6, 6),
    ] {
        let alg = fam.build(field)?;
        let (eq, check) = explore_checked(&alg, Limits::default(), exec)?;
        rep.push(Row::new(format!("{name} nodes"), nodes, eq.node_count()));
        rep.push(Row::new(format!("{name} edges"), edges, eq.edge_count()));
        rep.push(hasse_row(name, check));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use silt_core::explorer::Sequential;

    #[test]
    fn small_reports_pass() {
        let k = PrimeField::default();
        assert!(hereditary(k, 2, &Sequential).unwrap().passed());
        assert!(weak_order(k, 1, &Sequential).unwrap().passed());
        assert!(reduction(k, &[1, 2], &Sequential).unwrap().passed());
        assert!(examples(k, &Sequential).unwrap().passed());
    }

    #[test]
    fn render_marks_mismatch() {
        let rep = Report {
            rows: vec![Row::new("x", 1, 2)],
        };
        assert!(!rep.passed());
        assert!(rep.render().contains("MISMATCH"));
        assert!(rep.render().ends_with("FAIL\n"));
    }

    #[test]
    fn combinatorics() {
        assert_eq!((1..=5).map(|n| binomial(2 * n, n)).collect::<Vec<_>>(), [2, 6, 20, 70, 252]);
        assert_eq!(factorial(5), 120);
    }
}
