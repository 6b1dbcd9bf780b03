//! Counting identities between `L`, `H` and the arithmetic companion `M`.
//!
//! Everything is measured on the built graphs and compared in exact
//! rational arithmetic. `nu_M` has no graph behind it and is computed as
//! `(nu_L + 3) / 2`.

use num_rational::Ratio;

use super::Severity;
use crate::conjugate::ConjugateGraph;
use crate::triangulation::Mode;

pub type Q = Ratio<i64>;

fn q(x: i64) -> Q {
    Q::from_integer(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub statement: &'static str,
    pub lhs: Q,
    pub rhs: Q,
    pub severity: Severity,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub n_l: i64,
    pub m_l: i64,
    /// All faces of `L`.
    pub mu_l: i64,
    pub n_h: i64,
    pub m_h: i64,
    pub mu_h1: i64,
    /// Finite class-2 faces.
    pub mu_h2: i64,
    pub nu_l: i64,
    pub nu_h: i64,
    pub nu_m: Q,
    /// `nu_H - nu_L`.
    pub delta: i64,
    pub k: i64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn hard_failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.severity == Severity::Hard && !c.holds())
    }

    pub fn claim_failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.severity == Severity::Claim && !c.holds())
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    pub fn check(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// `None` outside sphere mode.
pub fn identity_report(h: &ConjugateGraph) -> Option<IdentityReport> {
    if h.mode() != Mode::Sphere {
        return None;
    }
    let l = h.source();
    let n_l = l.n() as i64;
    let m_l = l.m() as i64;
    let mu_l = l.faces().len() as i64;
    let n_h = h.n() as i64;
    let m_h = h.m() as i64;
    let mu_h1 = h.class1_count() as i64;
    let mu_h2 = h.class2_finite_count() as i64;
    let nu_l = l.embedding().cyclomatic_number();
    let nu_h = h.embedding().cyclomatic_number();
    let h_finite = h.faces().len() as i64 - 1;
    let nu_m = Q::new(nu_l + 3, 2);
    let delta = nu_h - nu_l;
    let k = n_l - 2;

    let half = |x: i64| Q::new(x, 2);
    let hard = Severity::Hard;
    let mut checks = Vec::new();
    let mut add = |id, statement, lhs, rhs, severity| checks.push(IdentityCheck { id, statement, lhs, rhs, severity });

    add("n_h_eq_m_l", "n_H = m_L", q(n_h), q(m_l), hard);
    add("n_h_eq_3n_l_minus_6", "n_H = 3 n_L - 6", q(n_h), q(3 * n_l - 6), hard);
    add("m_h_eq_6n_l_minus_12", "m_H = 6 n_L - 12", q(m_h), q(6 * n_l - 12), hard);
    add("m_h_eq_2n_h", "m_H = 2 n_H", q(m_h), q(2 * n_h), hard);
    add("m_l_eq_3n_l_minus_6", "m_L = 3 n_L - 6", q(m_l), q(3 * n_l - 6), hard);
    add("mu_h1_eq_mu_l", "mu_H1 = mu_L", q(mu_h1), q(mu_l), hard);
    add("mu_h1_eq_2n_l_minus_4", "mu_H1 = 2 n_L - 4", q(mu_h1), q(2 * n_l - 4), hard);
    add("mu_h2_eq_n_l_minus_1", "mu_H2 = n_L - 1", q(mu_h2), q(n_l - 1), hard);
    add("m_h_eq_3mu_h1", "m_H = 3 mu_H1", q(m_h), q(3 * mu_h1), hard);
    add("two_n_h_eq_3mu_l", "2 n_H = 3 mu_L", q(2 * n_h), q(3 * mu_l), hard);
    add("nu_h_eq_finite_faces", "nu_H = number of finite faces of H", q(nu_h), q(h_finite), hard);
    add("nu_h_eq_mu_h1_plus_mu_h2", "nu_H = mu_H1 + mu_H2", q(nu_h), q(mu_h1 + mu_h2), hard);
    add("nu_h_eq_n_h_plus_1", "nu_H = n_H + 1", q(nu_h), q(n_h + 1), hard);
    add("nu_h_eq_half_m_h_plus_1", "nu_H = m_H / 2 + 1", q(nu_h), half(m_h) + 1, hard);
    add("nu_h_eq_m_l_plus_1", "nu_H = m_L + 1", q(nu_h), q(m_l + 1), hard);
    add("nu_h_eq_3n_l_minus_5", "nu_H = 3 n_L - 5", q(nu_h), q(3 * n_l - 5), hard);
    add("nu_l_eq_2n_l_minus_5", "nu_L = 2 n_L - 5", q(nu_l), q(2 * n_l - 5), hard);
    add("nu_l_eq_two_thirds_m_l_minus_1", "nu_L = 2/3 m_L - 1", q(nu_l), Q::new(2 * m_l, 3) - 1, hard);
    add("nu_h_eq_3half_nu_l_plus_5half", "nu_H = 3/2 nu_L + 5/2", q(nu_h), Q::new(3 * nu_l + 5, 2), hard);
    add("delta_eq_half_nu_l_plus_5", "Delta = (nu_L + 5) / 2", q(delta), half(nu_l + 5), hard);
    add("nu_h_eq_nu_l_plus_delta", "nu_H = nu_L + Delta", q(nu_h), q(nu_l) + half(nu_l + 5), hard);
    add("delta_integral", "(nu_L + 5) / 2 is an integer", q((nu_l + 5).rem_euclid(2)), q(0), hard);
    add("delta_even", "Delta is even", q(delta.rem_euclid(2)), q(0), Severity::Claim);
    add("nu_m_eq_n_l_minus_1", "nu_M = n_L - 1", nu_m, q(n_l - 1), hard);
    add("nu_l_eq_2nu_m_minus_3", "nu_L = 2 nu_M - 3", q(nu_l), nu_m * 2 - 3, hard);
    add("nu_h_eq_3nu_m_minus_2", "nu_H = 3 nu_M - 2", q(nu_h), nu_m * 3 - 2, hard);
    add("nu_m_eq_third_nu_h_plus_2", "nu_M = (nu_H + 2) / 3", nu_m, Q::new(nu_h + 2, 3), hard);
    add("nu_l_eq_2nu_h_minus_5_over_3", "nu_L = (2 nu_H - 5) / 3", q(nu_l), Q::new(2 * nu_h - 5, 3), hard);
    add("nu_h_mod_3_eq_1", "nu_H = 1 (mod 3)", q(nu_h.rem_euclid(3)), q(1), hard);
    add("k_n_h_eq_3k", "n_H = 3k", q(n_h), q(3 * k), hard);
    add("k_m_h_eq_6k", "m_H = 6k", q(m_h), q(6 * k), hard);
    add("k_nu_h_eq_3k_plus_1", "nu_H = 3k + 1", q(nu_h), q(3 * k + 1), hard);

    Some(IdentityReport { n_l, m_l, mu_l, n_h, m_h, mu_h1, mu_h2, nu_l, nu_h, nu_m, delta, k, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn report(t: crate::Triangulation) -> IdentityReport {
        identity_report(&ConjugateGraph::of(&t).unwrap()).unwrap()
    }

    #[test]
    fn tetrahedron_values() {
        let r = report(fixtures::tetrahedron());
        assert_eq!((r.n_h, r.m_h, r.nu_l, r.nu_h, r.delta, r.k), (6, 12, 3, 7, 4, 2));
        assert_eq!(r.nu_m, q(3));
        assert!(r.all_hold(), "{:?}", r.checks.iter().filter(|c| !c.holds()).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_values() {
        let r = report(fixtures::triangle());
        assert_eq!((r.n_h, r.m_h, r.nu_h, r.k), (3, 6, 4, 1));
        assert_eq!(r.hard_failures().count(), 0);
        // Delta = n_L = 3 here.
        assert_eq!(r.delta, 3);
        assert!(!r.check("delta_even").unwrap().holds());
    }

    #[test]
    fn icosahedron_values() {
        let r = report(fixtures::icosahedron());
        assert_eq!((r.n_h, r.m_h, r.nu_h, r.nu_l), (30, 60, 31, 19));
        assert_eq!(r.hard_failures().count(), 0);
    }

    #[test]
    fn disk_is_skipped() {
        assert!(identity_report(&ConjugateGraph::of(&fixtures::fan()).unwrap()).is_none());
    }
}
