//! Window enumeration: candidate threshold values in `(1/k, 1/(k-1))` per
//! family under the effective parameter bounds, oracle-backed realization of
//! candidates, the full `(1/2, 1)` census, and accumulation reports showing
//! the squeeze toward `1/k`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::classify::{classified_weight, comparison_weights, Presentation};
use crate::error::CtError;
use crate::rational::Rational;
use crate::support::{Monomial, SeriesSupport};
use crate::threshold::{brute_force_ct, representation_qp, Caps};
use crate::weights::{weighted_multiplicity, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Smooth,
    Quotient,
    CA,
    CAn,
    CD1,
    CD2,
    CDh1,
    CDh2,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Smooth,
        Family::Quotient,
        Family::CA,
        Family::CAn,
        Family::CD1,
        Family::CD2,
        Family::CDh1,
        Family::CDh2,
    ];

    pub fn parse(s: &str) -> Result<Family, CtError> {
        match s {
            "smooth" => Ok(Family::Smooth),
            "quotient" => Ok(Family::Quotient),
            "cA" | "ca" => Ok(Family::CA),
            "cAn" | "can" => Ok(Family::CAn),
            "cD1" | "cd1" => Ok(Family::CD1),
            "cD2" | "cd2" => Ok(Family::CD2),
            "cDh1" | "cdh1" => Ok(Family::CDh1),
            "cDh2" | "cdh2" => Ok(Family::CDh2),
            other => Err(CtError::Parse(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Smooth => "smooth",
            Family::Quotient => "quotient",
            Family::CA => "cA",
            Family::CAn => "cAn",
            Family::CD1 => "cD1",
            Family::CD2 => "cD2",
            Family::CDh1 => "cDh1",
            Family::CDh2 => "cDh2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizedWitness {
    pub presentation: Presentation,
    pub divisor: SeriesSupport,
    pub realizing_weight: WeightVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizeStatus {
    NotAttempted,
    Realized,
    /// Search budget exhausted without a certified witness; says nothing
    /// about unrealizability.
    Unknown,
}

/// One enumerated candidate threshold value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub family: Family,
    /// Instantiated parameters in a fixed per-family order.
    pub params: Vec<(String, i128)>,
    pub value: Rational,
    /// `value = 1/k + q/p` in lowest terms.
    pub qp: Option<(i128, i128)>,
    pub realized: Option<RealizedWitness>,
    pub realize_status: RealizeStatus,
}

impl CandidateRecord {
    fn new(family: Family, params: Vec<(&str, i128)>, value: Rational, k: u32) -> Self {
        let qp = representation_qp(value, k).ok();
        CandidateRecord {
            family,
            params: params
                .into_iter()
                .map(|(n, v)| (n.to_string(), v))
                .collect(),
            value,
            qp,
            realized: None,
            realize_status: RealizeStatus::NotAttempted,
        }
    }

    pub fn param(&self, name: &str) -> Option<i128> {
        self.params
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    fn param_values(&self) -> Vec<i128> {
        self.params.iter().map(|(_, v)| *v).collect()
    }
}

fn window_m_range(a: i128, k: i128) -> (i128, i128) {
    // value a/m lies in the open window iff a(k-1) < m < ak
    (a * (k - 1) + 1, a * k - 1)
}

/// Enumerate candidate values for one family in `(1/k, 1/(k-1))`.
///
/// The grid is exactly the region the family's effective bounds close: for
/// `cD1`, `cD2` and `cDh2` that region is finite with no caps at all; the
/// open ladder directions elsewhere are cut by `caps.a_max`. Smooth and `cA`
/// candidates additionally pass the proven `q <= 2k` conclusion filter.
/// Output is deduplicated by value and sorted descending.
pub fn enumerate_window(
    family: Family,
    k: u32,
    caps: &Caps,
) -> Result<Vec<CandidateRecord>, CtError> {
    if k < 2 {
        return Err(CtError::Precondition("window index k must be >= 2".into()));
    }
    let kk = k as i128;
    let a_max = caps.a_max as i128;
    let mut out: Vec<CandidateRecord> = Vec::new();
    match family {
        Family::Quotient => {
            // quotient values 1/i never lie strictly inside a window
        }
        Family::Smooth => {
            if a_max < 2 {
                return Err(CtError::CapTooSmall {
                    requirement:
                        "a_max >= 2 to cover alpha+beta (the bound `alpha < 2k` leaves beta open)"
                            .into(),
                    got: caps.a_max,
                });
            }
            for alpha in 1..(2 * kk) {
                for beta in alpha..=(a_max - alpha) {
                    let a = alpha + beta;
                    let (lo, hi) = window_m_range(a, kk);
                    let lo = lo.max(beta * kk);
                    for m in lo..=hi {
                        let value = Rational::new(a, m);
                        let (q, _) = representation_qp(value, k)?;
                        if q > 2 * kk {
                            continue;
                        }
                        out.push(CandidateRecord::new(
                            Family::Smooth,
                            vec![("alpha", alpha), ("beta", beta), ("m", m)],
                            value,
                            k,
                        ));
                    }
                }
            }
        }
        Family::CA => {
            if a_max < 2 {
                return Err(CtError::CapTooSmall {
                    requirement: "a_max >= 2 to cover the discrepancy ladder".into(),
                    got: caps.a_max,
                });
            }
            for r1 in 1..(2 * kk) {
                for d in 1..=(r1 * kk) {
                    for a in 1..=a_max {
                        let r2 = a * d - r1;
                        if r2 < r1 {
                            continue;
                        }
                        let (lo, hi) = window_m_range(a, kk);
                        // r2*k <= d*m
                        let lo = lo.max((r2 * kk + d - 1).div_euclid(d));
                        for m in lo..=hi {
                            let value = Rational::new(a, m);
                            let (q, _) = representation_qp(value, k)?;
                            if q > 2 * kk {
                                continue;
                            }
                            out.push(CandidateRecord::new(
                                Family::CA,
                                vec![("r1", r1), ("r2", r2), ("a", a), ("d", d), ("m", m)],
                                value,
                                k,
                            ));
                        }
                    }
                }
            }
        }
        Family::CAn => {
            if a_max < 5 {
                return Err(CtError::CapTooSmall {
                    requirement: "a_max >= 5 to reach the classified regime (a >= 5)".into(),
                    got: caps.a_max,
                });
            }
            for a in 5..=a_max {
                let Some((n, b, r1, r2, d)) = can_window_fill(a, k) else {
                    continue;
                };
                let (lo, hi) = window_m_range(a, kk);
                for m in lo..=hi {
                    let value = Rational::new(a, m);
                    out.push(CandidateRecord::new(
                        Family::CAn,
                        vec![
                            ("n", n),
                            ("b", b),
                            ("r1", r1),
                            ("r2", r2),
                            ("a", a),
                            ("d", d),
                            ("m", m),
                        ],
                        value,
                        k,
                    ));
                }
            }
        }
        Family::CD1 => {
            // fully closed: d <= 2k-1, r <= 8k^2, m < 4kr
            let mut d = 3;
            while d <= 2 * kk - 1 {
                let mut a = 5;
                loop {
                    let two_r = a * d - 1;
                    let r = two_r / 2;
                    if r > 8 * kk * kk {
                        break;
                    }
                    // a odd and d odd make 2r+1 = ad automatic
                    let (lo, hi) = window_m_range(a, kk);
                    let hi = hi.min(4 * kk * r - 1);
                    for m in lo..=hi {
                        out.push(CandidateRecord::new(
                            Family::CD1,
                            vec![("r", r), ("a", a), ("d", d), ("m", m)],
                            Rational::new(a, m),
                            k,
                        ));
                    }
                    a += 2;
                }
                d += 2;
            }
        }
        Family::CD2 => {
            for d in 2..=(kk - 1) {
                for a in 5.. {
                    let r = a * d - 1;
                    if r > 8 * kk * kk - 2 {
                        break;
                    }
                    let (lo, hi) = window_m_range(a, kk);
                    let hi = hi.min(4 * kk * r - 1);
                    for m in lo..=hi {
                        out.push(CandidateRecord::new(
                            Family::CD2,
                            vec![("r", r), ("a", a), ("d", d), ("m", m)],
                            Rational::new(a, m),
                            k,
                        ));
                    }
                }
            }
        }
        Family::CDh1 => {
            if a_max < 5 {
                return Err(CtError::CapTooSmall {
                    requirement:
                        "a_max >= 5 to reach the classified regime (r is unbounded in this case)"
                            .into(),
                    got: caps.a_max,
                });
            }
            let mut d = 2;
            while d <= kk {
                let mut a = 5;
                while a <= a_max {
                    let r = a * d - 1;
                    let (lo, hi) = window_m_range(a, kk);
                    let hi = hi.min(4 * kk * r - 1);
                    for m in lo..=hi {
                        out.push(CandidateRecord::new(
                            Family::CDh1,
                            vec![("r", r), ("a", a), ("d", d), ("m", m)],
                            Rational::new(a, m),
                            k,
                        ));
                    }
                    a += 2;
                }
                d += 2;
            }
        }
        Family::CDh2 => {
            let mut d = 1;
            while 2 * d + 1 <= kk - 1 {
                for a in 5.. {
                    let r = a * (2 * d + 1) - 2;
                    if r > 16 * kk * kk - 4 {
                        break;
                    }
                    let (lo, hi) = window_m_range(a, kk);
                    let hi = hi.min(4 * kk * r - 1);
                    for m in lo..=hi {
                        out.push(CandidateRecord::new(
                            Family::CDh2,
                            vec![("r", r), ("a", a), ("d", d), ("m", m)],
                            Rational::new(a, m),
                            k,
                        ));
                    }
                }
                d += 1;
            }
        }
    }
    // merge duplicates, sorted descending by value with lex-least parameters
    out.sort_by(|x, y| {
        y.value
            .cmp(&x.value)
            .then_with(|| x.param_values().cmp(&y.param_values()))
    });
    out.dedup_by(|a, b| a.value == b.value);
    Ok(out)
}

/// First valid parameter fill `(n, b, r1, r2, d)` for a `cA/n` candidate with
/// discrepancy `a` in window `k`, under `n <= 3k`, `r1 < 2kn`, `dn < 4k` and
/// the gcd side conditions.
fn can_window_fill(a: i128, k: u32) -> Option<(i128, i128, i128, i128, i128)> {
    let kk = k as i128;
    for n in 2..=(3 * kk) {
        for d in 1..=((4 * kk - 1) / n) {
            for b in 1..n {
                if b.gcd(&n) != 1 {
                    continue;
                }
                for r1 in 1..(2 * kk * n) {
                    let r2 = a * d * n - r1;
                    if r2 < r1 {
                        break;
                    }
                    if (a - b * r1).rem_euclid(n) != 0 {
                        continue;
                    }
                    let g2 = ((a - b * r1) / n).unsigned_abs().gcd(&r1.unsigned_abs());
                    let g3 = ((a + b * r2) / n).unsigned_abs().gcd(&r2.unsigned_abs());
                    if g2 == 1 && g3 == 1 {
                        return Some((n, b, r1, r2, d));
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub enum RealizeOutcome {
    Realized(RealizedWitness),
    /// Budget or cutoff exhausted; distinct from proved unrealizable.
    Unknown { reason: String },
}

/// Try to exhibit a presentation and divisor whose certified oracle value
/// equals the candidate's. Witness supports follow a fixed small grammar
/// (power supports and binomials compatible with the family's equation);
/// only certified oracle hits count as realized.
pub fn realize(c: &CandidateRecord, k: u32, caps: &Caps) -> RealizeOutcome {
    let bank = oracle_bank(c.family, caps);
    realize_against(c, k, caps, &bank)
}

/// Certified oracle results for the family's fixed witness pairs, computed
/// once and shared across a window run.
type OracleBank = Vec<(Presentation, SeriesSupport, crate::threshold::ThresholdResult)>;

fn oracle_bank(family: Family, caps: &Caps) -> OracleBank {
    let mut out = Vec::new();
    for (p, f) in fixed_bank(family) {
        let Ok(cw) = classified_weight(&p) else {
            continue;
        };
        let cap = caps.cap.max(*cw.numerators.iter().max().unwrap());
        if let Ok(r) = brute_force_ct(&p, &f, cap) {
            out.push((p, f, r));
        }
    }
    out
}

fn realize_against(
    c: &CandidateRecord,
    k: u32,
    caps: &Caps,
    bank: &OracleBank,
) -> RealizeOutcome {
    let floor = Rational::new(1, k as i128);
    if c.value - floor < caps.tail_cutoff(k) {
        return RealizeOutcome::Unknown {
            reason: format!(
                "value within {} of the accumulation endpoint 1/{k}; outside the realized layer",
                caps.tail_cutoff(k)
            ),
        };
    }
    // candidate-shaped witnesses (power supports from the value itself)
    for (p, f) in value_witnesses(c, k, caps) {
        let Ok(cw) = classified_weight(&p) else {
            continue;
        };
        let cap = caps
            .cap
            .max(*cw.numerators.iter().max().unwrap())
            .max(
                f.iter()
                    .map(|m| m.total_degree())
                    .max()
                    .unwrap_or(1)
                    .min(caps.degree_max),
            );
        match brute_force_ct(&p, &f, cap) {
            Ok(r) if r.certified && r.value == c.value => {
                return RealizeOutcome::Realized(RealizedWitness {
                    presentation: p,
                    divisor: f,
                    realizing_weight: r.realizing_weight,
                });
            }
            _ => continue,
        }
    }
    for (p, f, r) in bank {
        if r.certified && r.value == c.value {
            return RealizeOutcome::Realized(RealizedWitness {
                presentation: p.clone(),
                divisor: f.clone(),
                realizing_weight: r.realizing_weight.clone(),
            });
        }
    }
    RealizeOutcome::Unknown {
        reason: "witness grammar exhausted without a certified match".into(),
    }
}

/// Witnesses derived from the candidate's value rather than the fixed bank.
/// For a smooth value `a/m` every split `a = alpha + beta` with `alpha | tm`
/// and `beta | tm` inside the window grid gives the power support
/// `{x^tm, y^tm/alpha, z^tm/beta}`.
fn value_witnesses(c: &CandidateRecord, k: u32, caps: &Caps) -> Vec<(Presentation, SeriesSupport)> {
    let mut out = Vec::new();
    let kk = k as i128;
    match c.family {
        Family::Smooth => {
            let (a0, m0) = (c.value.numer(), c.value.denom());
            let mut t = 1;
            while t * a0 <= caps.a_max as i128 {
                let (a, m) = (t * a0, t * m0);
                for alpha in 1..(2 * kk).min(a) {
                    let beta = a - alpha;
                    if beta < alpha || m < beta * kk || m > caps.degree_max as i128 {
                        continue;
                    }
                    if m % alpha != 0 || m % beta != 0 {
                        continue;
                    }
                    let f = SeriesSupport::polynomial(
                        3,
                        vec![
                            vec![m as u32, 0, 0],
                            vec![0, (m / alpha) as u32, 0],
                            vec![0, 0, (m / beta) as u32],
                        ],
                    );
                    out.push((
                        Presentation::Smooth {
                            alpha: alpha as u32,
                            beta: beta as u32,
                        },
                        f,
                    ));
                }
                t += 1;
            }
        }
        Family::Quotient => {
            if c.value.numer() == 1 {
                let i = c.value.denom();
                if i >= 1 && i <= caps.degree_max as i128 {
                    out.push((
                        Presentation::Quotient {
                            n: 2,
                            b: vec![1, 1, 1],
                        },
                        SeriesSupport::polynomial(3, vec![vec![0, 0, i as u32]]),
                    ));
                }
            }
        }
        _ => {}
    }
    out
}

fn fixed_bank(family: Family) -> Vec<(Presentation, SeriesSupport)> {
    let mut out = Vec::new();
    match family {
        Family::Smooth | Family::Quotient => {}
        Family::CA => {
            // the ordinary double point with a cubic tail carries the deep
            // divisors x + y^s
            let odp = Presentation::CA {
                r1: 1,
                r2: 1,
                a: 1,
                d: 2,
                g: SeriesSupport::polynomial(4, vec![vec![0, 0, 2, 0], vec![0, 0, 0, 3]]),
            };
            for s in 2..=8u32 {
                let f = SeriesSupport::polynomial(4, vec![vec![1, 0, 0, 0], vec![0, s, 0, 0]]);
                out.push((odp.clone(), f));
            }
            out.push((odp, SeriesSupport::polynomial(4, vec![vec![0, 0, 1, 1]])));
        }
        Family::CAn => {
            let x = Presentation::CAn {
                n: 2,
                b: 1,
                r1: 1,
                r2: 9,
                a: 5,
                d: 1,
                g: SeriesSupport::polynomial(4, vec![vec![0, 0, 2, 0]]),
            };
            for f in [
                vec![vec![0, 0, 1, 0]],
                vec![vec![0, 0, 2, 0]],
                vec![vec![0, 0, 1, 1]],
                vec![vec![0, 0, 0, 1]],
            ] {
                out.push((x.clone(), SeriesSupport::polynomial(4, f)));
            }
        }
        Family::CD1 => {
            let x = Presentation::CD1 {
                r: 7,
                a: 5,
                d: 3,
                q: SeriesSupport::polynomial(4, vec![vec![0, 0, 3, 0]]),
                p: SeriesSupport::polynomial(4, vec![vec![0, 3, 0, 0]]),
                lambda_nonzero: true,
                mu_nonzero: true,
                eta_nonzero: true,
            };
            for f in [
                vec![vec![1, 0, 0, 0]],
                vec![vec![0, 1, 0, 0]],
                vec![vec![0, 0, 1, 0]],
                vec![vec![0, 0, 0, 1]],
            ] {
                out.push((x.clone(), SeriesSupport::polynomial(4, f)));
            }
        }
        Family::CD2 => {
            let x = Presentation::CD2 {
                r: 9,
                a: 5,
                d: 2,
                p: SeriesSupport::polynomial(5, vec![vec![0, 2, 0, 2, 0]]),
                q: SeriesSupport::polynomial(5, vec![vec![0, 0, 2, 0, 0]]),
            };
            for f in [
                vec![vec![1, 0, 0, 0, 0]],
                vec![vec![0, 1, 0, 0, 0]],
                vec![vec![0, 0, 1, 0, 0]],
                vec![vec![0, 0, 0, 1, 0]],
            ] {
                out.push((x.clone(), SeriesSupport::polynomial(5, f)));
            }
        }
        Family::CDh1 => {
            let x = Presentation::CDh1 {
                r: 9,
                a: 5,
                d: 2,
                alpha: 2,
                q: SeriesSupport::polynomial(4, vec![vec![0, 0, 2, 0]]),
                p: SeriesSupport::polynomial(4, vec![vec![0, 0, 4, 0]]),
                lambda_nonzero: true,
            };
            for f in [
                vec![vec![1, 0, 0, 0]],
                vec![vec![0, 1, 0, 0]],
                vec![vec![0, 0, 1, 0]],
                vec![vec![0, 0, 0, 1]],
            ] {
                out.push((x.clone(), SeriesSupport::polynomial(4, f)));
            }
        }
        Family::CDh2 => {
            let x = Presentation::CDh2 {
                r: 13,
                a: 5,
                d: 1,
                p: SeriesSupport::polynomial(5, vec![vec![0, 0, 6, 0, 0]]),
                q: SeriesSupport::polynomial(5, vec![vec![0, 0, 2, 0, 0]]),
            };
            for f in [
                vec![vec![1, 0, 0, 0, 0]],
                vec![vec![0, 1, 0, 0, 0]],
                vec![vec![0, 0, 1, 0, 0]],
                vec![vec![0, 0, 0, 1, 0]],
            ] {
                out.push((x.clone(), SeriesSupport::polynomial(5, f)));
            }
        }
    }
    out
}

/// The serialized window census: candidates across all families with the
/// realized layer, plus soundness alarms for the `(1/2, 1)` window whose
/// realized set is known exactly.
#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub k: u32,
    pub candidates: Vec<CandidateRecord>,
    pub realized_values: Vec<Rational>,
    pub alarms: Vec<String>,
}

/// Enumerate and realize across all families for window `k`.
pub fn window_report(k: u32, caps: &Caps) -> Result<WindowReport, CtError> {
    let mut candidates: Vec<CandidateRecord> = Vec::new();
    for family in [
        Family::Smooth,
        Family::CA,
        Family::CAn,
        Family::CD1,
        Family::CD2,
        Family::CDh1,
        Family::CDh2,
    ] {
        let mut records = enumerate_window(family, k, caps)?;
        let bank = oracle_bank(family, caps);
        for rec in records.iter_mut() {
            match realize_against(rec, k, caps, &bank) {
                RealizeOutcome::Realized(w) => {
                    rec.realized = Some(w);
                    rec.realize_status = RealizeStatus::Realized;
                }
                RealizeOutcome::Unknown { .. } => {
                    rec.realize_status = RealizeStatus::Unknown;
                }
            }
        }
        candidates.extend(records);
    }
    candidates.sort_by(|x, y| {
        y.value
            .cmp(&x.value)
            .then_with(|| x.family.cmp(&y.family))
            .then_with(|| x.param_values().cmp(&y.param_values()))
    });
    let mut realized_values: Vec<Rational> = candidates
        .iter()
        .filter(|c| c.realize_status == RealizeStatus::Realized)
        .map(|c| c.value)
        .collect();
    realized_values.sort_by(|a, b| b.cmp(a));
    realized_values.dedup();
    let mut alarms = Vec::new();
    if k == 2 {
        for v in &realized_values {
            if !in_known_half_one_set(*v) {
                alarms.push(format!(
                    "realized value {v} lies outside the known (1/2,1) threshold set"
                ));
            }
        }
    }
    Ok(WindowReport {
        k,
        candidates,
        realized_values,
        alarms,
    })
}

/// The `(1/2, 1)` census.
pub fn window_half_one(caps: &Caps) -> Result<WindowReport, CtError> {
    window_report(2, caps)
}

/// Membership in `{1/2 + 1/j : j >= 3} union {4/5}`.
pub fn in_known_half_one_set(v: Rational) -> bool {
    if v == Rational::new(4, 5) {
        return true;
    }
    let d = v - Rational::new(1, 2);
    d.is_positive() && d.numer() == 1 && d.denom() >= 3
}

/// One sample along the unbounded-parameter ladder.
#[derive(Debug, Clone, Serialize)]
pub struct LadderPoint {
    pub a: i128,
    pub params: Vec<(String, i128)>,
    /// Exponents of the comparison-weight minimizer the squeeze reads off.
    pub witness: Monomial,
    pub value: Rational,
    pub lower: Rational,
    pub upper: Rational,
    /// Distance from the sample value to the accumulation limit.
    pub gap: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct AccumulationReport {
    pub family: Family,
    pub k: u32,
    /// The accumulation limit the samples approach (`1/k`, or 0 for the
    /// quotient family).
    pub limit: Rational,
    pub epsilons: Vec<Rational>,
    /// Candidates in `(1/k + eps, 1/(k-1))` per epsilon; non-increasing.
    pub counts: Vec<usize>,
    pub samples: Vec<LadderPoint>,
}

impl AccumulationReport {
    /// Largest distance to the limit among samples with ladder parameter
    /// at least `a_min`.
    pub fn max_gap_from(&self, a_min: i128) -> Option<Rational> {
        self.samples
            .iter()
            .filter(|s| s.a >= a_min)
            .map(|s| s.gap)
            .max()
    }
}

/// Build the accumulation report for a family along a strictly increasing
/// ladder of its unbounded parameter. Supported: `cAn` and `cDh1` (squeeze
/// toward `1/k`), and `quotient` (values `1/i` accumulating at 0).
pub fn accumulation_report(
    family: Family,
    k: u32,
    ladder: &[u32],
    caps: &Caps,
) -> Result<AccumulationReport, CtError> {
    if k < 2 {
        return Err(CtError::Precondition("window index k must be >= 2".into()));
    }
    if !ladder.windows(2).all(|w| w[0] < w[1]) {
        return Err(CtError::Precondition(
            "ladder must be strictly increasing".into(),
        ));
    }
    let kk = k as i128;
    let limit = match family {
        Family::Quotient => Rational::zero(),
        _ => Rational::new(1, kk),
    };
    let mut samples = Vec::new();
    match family {
        Family::Quotient => {
            for &i in ladder {
                let value = Rational::new(1, i as i128);
                samples.push(LadderPoint {
                    a: i as i128,
                    params: vec![("i".to_string(), i as i128)],
                    witness: Monomial::new(vec![0, 0, i]),
                    value,
                    lower: value,
                    upper: value,
                    gap: value,
                });
            }
        }
        Family::CAn => {
            for &a in ladder {
                if let Some(pt) = can_ladder_point(a, k)? {
                    samples.push(pt);
                }
            }
        }
        Family::CDh1 => {
            for &a in ladder {
                if let Some(pt) = cdh1_ladder_point(a, k)? {
                    samples.push(pt);
                }
            }
        }
        other => {
            return Err(CtError::Precondition(format!(
                "no accumulation ladder for family {other}"
            )))
        }
    }
    // epsilon ladder: halvings of the window width, ascending
    let width = Rational::new(1, kk - 1) - Rational::new(1, kk);
    let epsilons: Vec<Rational> = (1..=6)
        .rev()
        .map(|i| width / Rational::from_integer(1 << i))
        .collect();
    let cand_values: Vec<Rational> = if family == Family::Quotient {
        Vec::new()
    } else {
        enumerate_window(family, k, caps)?
            .into_iter()
            .map(|c| c.value)
            .collect()
    };
    let counts: Vec<usize> = epsilons
        .iter()
        .map(|eps| cand_values.iter().filter(|v| **v > limit + *eps).count())
        .collect();
    Ok(AccumulationReport {
        family,
        k,
        limit,
        epsilons,
        counts,
        samples,
    })
}

/// A valid `cA/n` instance for ladder point `a`, with the squeeze bounds
/// evaluated exactly from the comparison-weight minimizer.
fn can_ladder_point(a: u32, k: u32) -> Result<Option<LadderPoint>, CtError> {
    let kk = k as i128;
    let aa = a as i128;
    // fill with dn <= k so the sample monomial y*z^(k-dn) exists
    let mut fill = None;
    'outer: for n in 2..=kk {
        for d in 1..=(kk / n) {
            for b in 1..n {
                if b.gcd(&n) != 1 {
                    continue;
                }
                for r1 in 1..(2 * kk * n).min(aa) {
                    let r2 = aa * d * n - r1;
                    if r2 < r1 {
                        break;
                    }
                    if (aa - b * r1).rem_euclid(n) != 0 {
                        continue;
                    }
                    let g2 = ((aa - b * r1) / n).unsigned_abs().gcd(&r1.unsigned_abs());
                    let g3 = ((aa + b * r2) / n).unsigned_abs().gcd(&r2.unsigned_abs());
                    if g2 == 1 && g3 == 1 {
                        fill = Some((n, b, r1, r2, d));
                        break 'outer;
                    }
                }
            }
        }
    }
    let Some((n, b, r1, r2, d)) = fill else {
        return Ok(None);
    };
    let p = Presentation::CAn {
        n: n as u32,
        b: b as u32,
        r1: r1 as u32,
        r2: r2 as u32,
        a,
        d: d as u32,
        g: SeriesSupport::polynomial(4, vec![vec![0, 0, (d * n) as u32, 0]]),
    };
    p.require_valid()?;
    let w = classified_weight(&p)?;
    let l3 = (kk - d * n) as u32;
    let f = SeriesSupport::polynomial(4, vec![vec![0, 1, l3, 0]]);
    let m = w.scaled_multiplicity(&f)?;
    let value = Rational::new(aa, m);
    // the squeeze reads exponents off the w_{a-n} minimizer
    let w_an = WeightVector::new(
        vec![
            r1 as u32,
            (r2 - d * n * n) as u32,
            (aa - n) as u32,
            n as u32,
        ],
        n as u32,
    );
    let witness = weighted_multiplicity(&f, &w_an)?.witness;
    let (l2, l3) = (witness.0[1] as i128, witness.0[2] as i128);
    let lower = Rational::new(1, d * n * l2 + l3);
    // (1 - n/a) / (k - ((r1 + d n^2) l2 + n l3)/a)
    let upper = (Rational::one() - Rational::new(n, aa))
        / (Rational::from_integer(kk) - Rational::new((r1 + d * n * n) * l2 + n * l3, aa));
    let gap = (value - Rational::new(1, kk)).abs();
    Ok(Some(LadderPoint {
        a: aa,
        params: vec![
            ("n".to_string(), n),
            ("b".to_string(), b),
            ("r1".to_string(), r1),
            ("r2".to_string(), r2),
            ("d".to_string(), d),
            ("m".to_string(), m),
        ],
        witness,
        value,
        lower,
        upper,
        gap,
    }))
}

/// A valid `cD/2` hypersurface-case instance for odd ladder point `a`, with
/// the squeeze bounds evaluated from the `w_{a-2}` minimizer.
fn cdh1_ladder_point(a: u32, k: u32) -> Result<Option<LadderPoint>, CtError> {
    if a % 2 == 0 || a < 5 {
        return Ok(None);
    }
    let kk = k as i128;
    let aa = a as i128;
    let d: i128 = 2;
    if d > kk {
        return Ok(None);
    }
    let r = aa * d - 1;
    let p = Presentation::CDh1 {
        r: r as u32,
        a,
        d: d as u32,
        alpha: (d / 2 + 1) as u32,
        q: SeriesSupport::polynomial(4, vec![vec![0, 0, d as u32, 0]]),
        p: SeriesSupport::polynomial(4, vec![vec![0, 0, (2 * d) as u32, 0]]),
        lambda_nonzero: true,
    };
    p.require_valid()?;
    let w = classified_weight(&p)?;
    let l3 = (kk - d) as u32;
    let f = SeriesSupport::polynomial(4, vec![vec![0, 1, l3, 0]]);
    let m = w.scaled_multiplicity(&f)?;
    let value = Rational::new(aa, m);
    let set = comparison_weights(&p, k)?;
    let w_a2 = set
        .get("w_{a-2}")
        .map(|e| e.weight.clone())
        .unwrap_or_else(|| {
            WeightVector::new(
                vec![
                    (r - 2 * d + 2) as u32,
                    (r - 2 * d) as u32,
                    (aa - 2) as u32,
                    2,
                ],
                2,
            )
        });
    let witness = weighted_multiplicity(&f, &w_a2)?.witness;
    let (l1, l2, l3) = (
        witness.0[0] as i128,
        witness.0[1] as i128,
        witness.0[2] as i128,
    );
    let lower = Rational::new(1, d * l1 + d * l2 + l3);
    // (a-2) / ((r-2d+2) l1 + (r-2d) l2 + (a-2) l3)
    let upper = Rational::new(
        aa - 2,
        (r - 2 * d + 2) * l1 + (r - 2 * d) * l2 + (aa - 2) * l3,
    );
    let gap = (value - Rational::new(1, kk)).abs();
    Ok(Some(LadderPoint {
        a: aa,
        params: vec![
            ("r".to_string(), r),
            ("d".to_string(), d),
            ("m".to_string(), m),
        ],
        witness,
        value,
        lower,
        upper,
        gap,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_window_two_contains_quoted_records() {
        let caps = Caps::default();
        let records = enumerate_window(Family::Smooth, 2, &caps).unwrap();
        let values: Vec<Rational> = records.iter().map(|c| c.value).collect();
        assert!(values.contains(&Rational::new(5, 6)));
        assert!(values.contains(&Rational::new(3, 4)));
        // the 5/6 record carries (alpha,beta,m) = (2,3,6)
        let r56 = records
            .iter()
            .find(|c| c.value == Rational::new(5, 6))
            .unwrap();
        assert_eq!(
            r56.params,
            vec![
                ("alpha".to_string(), 2),
                ("beta".to_string(), 3),
                ("m".to_string(), 6)
            ]
        );
        // sorted descending with no adjacent duplicates
        assert!(values.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn q_bound_holds_on_smooth_and_ca_grids() {
        let caps = Caps::default();
        for k in 2..=5u32 {
            for family in [Family::Smooth, Family::CA] {
                for c in enumerate_window(family, k, &caps).unwrap() {
                    let (q, _) = c.qp.unwrap();
                    assert!(q <= 2 * k as i128, "{family} k={k}: q={q}");
                }
            }
        }
    }

    #[test]
    fn cd1_window_two_is_finite_with_quoted_bounds() {
        let caps = Caps::default();
        let records = enumerate_window(Family::CD1, 2, &caps).unwrap();
        assert!(!records.is_empty());
        for c in &records {
            assert!(c.param("d").unwrap() <= 3);
            assert!(c.param("r").unwrap() <= 32);
        }
    }

    #[test]
    fn realize_smooth_brieskorn() {
        let caps = Caps::default();
        let records = enumerate_window(Family::Smooth, 2, &caps).unwrap();
        let c = records
            .iter()
            .find(|c| c.value == Rational::new(5, 6))
            .unwrap();
        match realize(c, 2, &caps) {
            RealizeOutcome::Realized(w) => {
                // x^6 + y^3 + z^2 under weights (1,2,3)
                assert_eq!(
                    w.divisor,
                    SeriesSupport::polynomial(3, vec![vec![6, 0, 0], vec![0, 3, 0], vec![0, 0, 2]])
                );
            }
            other => panic!("expected realization, got {other:?}"),
        }
    }

    #[test]
    fn quotient_windows_are_empty() {
        let caps = Caps::default();
        for k in 2..=4 {
            assert!(enumerate_window(Family::Quotient, k, &caps)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn counts_nested_by_epsilon_and_squeeze_holds() {
        let caps = Caps::default();
        let report = accumulation_report(Family::CAn, 2, &[11, 21, 41, 101], &caps).unwrap();
        for w in report.counts.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert!(!report.samples.is_empty());
        for s in &report.samples {
            assert!(s.lower <= s.value && s.value <= s.upper, "{s:?}");
            assert!(s.value > Rational::new(1, 2) && s.value < Rational::one());
        }
    }
}
