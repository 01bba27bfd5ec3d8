//! The classified singularity presentations and their weights.
//!
//! Each variant packages the integer parameters, the ambient cyclic quotient
//! and the defining-series tails of one classified family. Coordinates are
//! ordered (x, y, z, u) in dimension 4 and (x, y, z, u, t) in dimension 5;
//! all stored supports use ambient exponent vectors.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{CtError, Severity, Violation};
use crate::rational::Rational;
use crate::support::{Completeness, Monomial, SeriesSupport};
use crate::weights::{
    is_admissible, mod_inverse, weighted_multiplicity, CyclicQuotient, WeightVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Presentation {
    /// Smooth 3-fold point; the weight of interest is `(1, alpha, beta)`.
    #[serde(rename = "smooth")]
    Smooth { alpha: u32, beta: u32 },

    /// Cyclic-quotient 3-fold point `C^3/(1/n)(b1,b2,b3)`; `n = 1` is smooth.
    #[serde(rename = "quotient")]
    Quotient { n: u32, b: Vec<u32> },

    /// `xy + g(z,u) = 0` in `C^4`, weight `(r1, r2, a, 1)`.
    #[serde(rename = "cA")]
    CA {
        r1: u32,
        r2: u32,
        a: u32,
        d: u32,
        g: SeriesSupport,
    },

    /// `xy + g(z^n,u) = 0` in `C^4/(1/n)(1,-1,b,0)`, weight `(1/n)(r1,r2,a,n)`.
    #[serde(rename = "cAn")]
    CAn {
        n: u32,
        b: u32,
        r1: u32,
        r2: u32,
        a: u32,
        d: u32,
        g: SeriesSupport,
    },

    /// `x^2 + x q(z,u) + y^2 u + lambda y z^2 + mu z^3 + p(y,z,u) = 0` in `C^4`,
    /// weight `(r+1, r, a, 1)` with `2r+1 = ad`.
    #[serde(rename = "cD1")]
    CD1 {
        r: u32,
        a: u32,
        d: u32,
        q: SeriesSupport,
        p: SeriesSupport,
        lambda_nonzero: bool,
        mu_nonzero: bool,
        /// Genericity of the degree-`d` coefficient that keeps the small
        /// comparison weight's exceptional locus irreducible.
        eta_nonzero: bool,
    },

    /// `x^2 + yt + p(y,z,u) = yu + z^d + q(z,u)u + t = 0` in `C^5`,
    /// weight `(r+1, r, a, 1, r+2)` with `r+1 = ad`.
    #[serde(rename = "cD2")]
    CD2 {
        r: u32,
        a: u32,
        d: u32,
        p: SeriesSupport,
        q: SeriesSupport,
    },

    /// `x^2 + x z q(z^2,u) + y^2 u + lambda y z^{2 alpha - 1} + p(z^2,u) = 0`
    /// in `C^4/(1/2)(1,1,1,0)`, weight `(1/2)(r+2, r, a, 2)` with `r+1 = ad`.
    #[serde(rename = "cDh1")]
    CDh1 {
        r: u32,
        a: u32,
        d: u32,
        alpha: u32,
        q: SeriesSupport,
        p: SeriesSupport,
        lambda_nonzero: bool,
    },

    /// `x^2 + yt + p(z^2,u) = yu + z^{2d+1} + q(z^2,u)zu + t = 0`
    /// in `C^5/(1/2)(1,1,1,0,1)`, weight `(1/2)(r+2, r, a, 2, r+4)` with
    /// `r+2 = a(2d+1)`.
    #[serde(rename = "cDh2")]
    CDh2 {
        r: u32,
        a: u32,
        d: u32,
        p: SeriesSupport,
        q: SeriesSupport,
    },
}

impl Presentation {
    pub fn family_name(&self) -> &'static str {
        match self {
            Presentation::Smooth { .. } => "smooth",
            Presentation::Quotient { .. } => "quotient",
            Presentation::CA { .. } => "cA",
            Presentation::CAn { .. } => "cAn",
            Presentation::CD1 { .. } => "cD1",
            Presentation::CD2 { .. } => "cD2",
            Presentation::CDh1 { .. } => "cDh1",
            Presentation::CDh2 { .. } => "cDh2",
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Presentation::Smooth { .. } | Presentation::Quotient { .. } => 3,
            Presentation::CA { .. }
            | Presentation::CAn { .. }
            | Presentation::CD1 { .. }
            | Presentation::CDh1 { .. } => 4,
            Presentation::CD2 { .. } | Presentation::CDh2 { .. } => 5,
        }
    }

    pub fn quotient(&self) -> CyclicQuotient {
        match self {
            Presentation::Smooth { .. } => CyclicQuotient::trivial(3),
            Presentation::Quotient { n, b } => CyclicQuotient::new(*n, b.clone()),
            Presentation::CA { .. } => CyclicQuotient::trivial(4),
            Presentation::CAn { n, b, .. } => {
                CyclicQuotient::new(*n, vec![1 % n, (n - 1) % n, b % n, 0])
            }
            Presentation::CD1 { .. } => CyclicQuotient::trivial(4),
            Presentation::CD2 { .. } => CyclicQuotient::trivial(5),
            Presentation::CDh1 { .. } => CyclicQuotient::new(2, vec![1, 1, 1, 0]),
            Presentation::CDh2 { .. } => CyclicQuotient::new(2, vec![1, 1, 1, 0, 1]),
        }
    }

    /// The defining equations, assembled as full ambient supports
    /// (fixed skeleton terms plus the stored tails, honoring genericity flags).
    pub fn equations(&self) -> Vec<SeriesSupport> {
        match self {
            Presentation::Smooth { .. } | Presentation::Quotient { .. } => vec![],
            Presentation::CA { g, .. } | Presentation::CAn { g, .. } => {
                vec![union_supports(
                    4,
                    vec![
                        SeriesSupport::polynomial(4, vec![vec![1, 1, 0, 0]]),
                        g.clone(),
                    ],
                )]
            }
            Presentation::CD1 {
                q,
                p,
                lambda_nonzero,
                mu_nonzero,
                ..
            } => {
                let mut parts = vec![
                    SeriesSupport::polynomial(4, vec![vec![2, 0, 0, 0], vec![0, 2, 0, 1]]),
                    q.shifted(&Monomial::new(vec![1, 0, 0, 0])),
                    p.clone(),
                ];
                if *lambda_nonzero {
                    parts.push(SeriesSupport::polynomial(4, vec![vec![0, 1, 2, 0]]));
                }
                if *mu_nonzero {
                    parts.push(SeriesSupport::polynomial(4, vec![vec![0, 0, 3, 0]]));
                }
                vec![union_supports(4, parts)]
            }
            Presentation::CD2 { d, p, q, .. } => {
                let eq1 = union_supports(
                    5,
                    vec![
                        SeriesSupport::polynomial(
                            5,
                            vec![vec![2, 0, 0, 0, 0], vec![0, 1, 0, 0, 1]],
                        ),
                        p.clone(),
                    ],
                );
                let eq2 = union_supports(
                    5,
                    vec![
                        SeriesSupport::polynomial(
                            5,
                            vec![
                                vec![0, 1, 0, 1, 0],
                                vec![0, 0, *d, 0, 0],
                                vec![0, 0, 0, 0, 1],
                            ],
                        ),
                        q.shifted(&Monomial::new(vec![0, 0, 0, 1, 0])),
                    ],
                );
                vec![eq1, eq2]
            }
            Presentation::CDh1 {
                alpha,
                q,
                p,
                lambda_nonzero,
                ..
            } => {
                let mut parts = vec![
                    SeriesSupport::polynomial(4, vec![vec![2, 0, 0, 0], vec![0, 2, 0, 1]]),
                    q.shifted(&Monomial::new(vec![1, 0, 1, 0])),
                    p.clone(),
                ];
                if *lambda_nonzero {
                    parts.push(SeriesSupport::polynomial(4, vec![vec![0, 1, 2 * alpha - 1, 0]]));
                }
                vec![union_supports(4, parts)]
            }
            Presentation::CDh2 { d, p, q, .. } => {
                let eq1 = union_supports(
                    5,
                    vec![
                        SeriesSupport::polynomial(
                            5,
                            vec![vec![2, 0, 0, 0, 0], vec![0, 1, 0, 0, 1]],
                        ),
                        p.clone(),
                    ],
                );
                let eq2 = union_supports(
                    5,
                    vec![
                        SeriesSupport::polynomial(
                            5,
                            vec![
                                vec![0, 1, 0, 1, 0],
                                vec![0, 0, 2 * d + 1, 0, 0],
                                vec![0, 0, 0, 0, 1],
                            ],
                        ),
                        q.shifted(&Monomial::new(vec![0, 0, 1, 1, 0])),
                    ],
                );
                vec![eq1, eq2]
            }
        }
    }

    /// The family's integer weighted discrepancy parameter `a`.
    pub fn family_discrepancy(&self) -> i128 {
        match self {
            Presentation::Smooth { alpha, beta } => *alpha as i128 + *beta as i128,
            Presentation::Quotient { .. } => {
                let w = quotient_minimal_weight(&self.quotient());
                w.sum_numerators() - self.quotient().n as i128
            }
            Presentation::CA { a, .. }
            | Presentation::CAn { a, .. }
            | Presentation::CD1 { a, .. }
            | Presentation::CD2 { a, .. }
            | Presentation::CDh1 { a, .. }
            | Presentation::CDh2 { a, .. } => *a as i128,
        }
    }

    pub fn is_valid(&self) -> bool {
        validate(self)
            .iter()
            .all(|v| v.severity != Severity::Error)
    }

    pub fn require_valid(&self) -> Result<(), CtError> {
        let errors: Vec<Violation> = validate(self)
            .into_iter()
            .filter(|v| v.severity == Severity::Error)
            .collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(CtError::InvalidPresentation(errors))
        }
    }
}

fn union_supports(dim: usize, parts: Vec<SeriesSupport>) -> SeriesSupport {
    let mut terms = std::collections::BTreeSet::new();
    let mut completeness = Completeness::Exact;
    for part in parts {
        assert_eq!(part.dim, dim);
        completeness = match (completeness, part.completeness) {
            (Completeness::Exact, c) => c,
            (c, Completeness::Exact) => c,
            (Completeness::UpTo(a), Completeness::UpTo(b)) => Completeness::UpTo(a.min(b)),
        };
        terms.extend(part.terms);
    }
    SeriesSupport {
        dim,
        terms,
        completeness,
    }
}

/// Smallest admissible weight over a quotient: for each congruence class take
/// the least positive numerators, then pick the class with smallest sum.
pub fn quotient_minimal_weight(q: &CyclicQuotient) -> WeightVector {
    let n = q.n;
    if n == 1 {
        return WeightVector::integral(vec![1; q.dim()]);
    }
    let mut best: Option<WeightVector> = None;
    for s in 0..n {
        let numerators: Vec<u32> = q
            .b
            .iter()
            .map(|&b| {
                let r = ((s as u64 * b as u64) % n as u64) as u32;
                if r == 0 {
                    n
                } else {
                    r
                }
            })
            .collect();
        let w = WeightVector::new(numerators, n);
        if best
            .as_ref()
            .map_or(true, |bw| w.sum_numerators() < bw.sum_numerators())
        {
            best = Some(w);
        }
    }
    best.expect("at least one class")
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Checks every family constraint; violations are data, not errors.
/// Advisory constraints come back with `Severity::Warning`.
pub fn validate(p: &Presentation) -> Vec<Violation> {
    let mut out = Vec::new();
    match p {
        Presentation::Smooth { alpha, beta } => {
            if *alpha < 1 || *beta < *alpha {
                out.push(Violation::error(
                    "1 <= alpha <= beta",
                    format!("alpha={alpha}, beta={beta}"),
                ));
            }
        }
        Presentation::Quotient { n, b } => {
            if *n < 1 {
                out.push(Violation::error("n >= 1", format!("n={n}")));
            }
            if b.len() != 3 {
                out.push(Violation::error(
                    "three residues",
                    format!("got {}", b.len()),
                ));
            }
            if *n >= 1 && b.iter().any(|&bi| bi >= *n) {
                out.push(Violation::error("0 <= b_i < n", format!("b={b:?}, n={n}")));
            }
        }
        Presentation::CA { r1, r2, a, d, g } => {
            validate_ca(&mut out, *r1, *r2, *a, *d, g);
        }
        Presentation::CAn {
            n,
            b,
            r1,
            r2,
            a,
            d,
            g,
        } => {
            validate_can(&mut out, *n, *b, *r1, *r2, *a, *d, g);
        }
        Presentation::CD1 {
            r,
            a,
            d,
            q,
            p,
            lambda_nonzero,
            mu_nonzero,
            ..
        } => {
            validate_cd1(&mut out, *r, *a, *d, q, p, *lambda_nonzero, *mu_nonzero);
        }
        Presentation::CD2 { r, a, d, p, q } => {
            validate_cd2(&mut out, *r, *a, *d, p, q);
        }
        Presentation::CDh1 {
            r,
            a,
            d,
            alpha,
            q,
            p,
            lambda_nonzero,
        } => {
            validate_cdh1(&mut out, *r, *a, *d, *alpha, q, p, *lambda_nonzero);
        }
        Presentation::CDh2 { r, a, d, p, q } => {
            validate_cdh2(&mut out, *r, *a, *d, p, q);
        }
    }
    out
}

fn check_positive(out: &mut Vec<Violation>, pairs: &[(&str, u32)]) {
    for (name, v) in pairs {
        if *v < 1 {
            out.push(Violation::error(
                format!("{name} >= 1"),
                format!("{name}={v}"),
            ));
        }
    }
}

/// Every term of `tail` restricted to the named coordinates only.
fn check_coordinates(out: &mut Vec<Violation>, tail: &SeriesSupport, allowed: &[usize], what: &str) {
    for m in tail.iter() {
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 && !allowed.contains(&i) {
                out.push(Violation::error(
                    format!("{what} uses only the allowed coordinates"),
                    format!("term {m:?} involves coordinate {i}"),
                ));
                return;
            }
        }
    }
}

fn dot(m: &Monomial, weights: &[u32]) -> i128 {
    m.0.iter()
        .zip(weights)
        .map(|(l, k)| *l as i128 * *k as i128)
        .sum()
}

/// Every term of `tail` has scaled weight >= bound under `weights`.
fn check_min_weight(
    out: &mut Vec<Violation>,
    tail: &SeriesSupport,
    weights: &[u32],
    offset: i128,
    bound: i128,
    what: &str,
) {
    for m in tail.iter() {
        if m.dim() != weights.len() {
            out.push(Violation::error(
                "tail dimension matches ambient",
                format!("{what}: term {m:?} has dim {}", m.dim()),
            ));
            return;
        }
        let s = dot(m, weights) + offset;
        if s < bound {
            out.push(Violation::error(
                format!("{what} >= {bound}"),
                format!("term {m:?} has weight {s}"),
            ));
            return;
        }
    }
}

fn validate_ca(out: &mut Vec<Violation>, r1: u32, r2: u32, a: u32, d: u32, g: &SeriesSupport) {
    check_positive(out, &[("r1", r1), ("r2", r2), ("a", a), ("d", d)]);
    if r1 > r2 {
        out.push(Violation::error("r1 <= r2", format!("r1={r1}, r2={r2}")));
    }
    if (r1 + r2) as i128 != a as i128 * d as i128 {
        out.push(Violation::error(
            "r1+r2 = ad",
            format!("r1+r2={}, ad={}", r1 + r2, a as i128 * d as i128),
        ));
    }
    if g.is_empty() {
        out.push(Violation::error("g != 0", "empty support for g"));
        return;
    }
    check_coordinates(out, g, &[2, 3], "g(z,u)");
    // every term of g has weight >= r1+r2 under (z,u) -> (a,1)
    check_min_weight(out, g, &[0, 0, a, 1], 0, (r1 + r2) as i128, "w(g)");
    // and the minimum is attained
    if !g.iter().any(|m| dot(m, &[0, 0, a, 1]) == (r1 + r2) as i128) {
        out.push(Violation::error(
            "w(g) = r1+r2",
            "no term of g attains the required weight",
        ));
    }
}

fn validate_can(
    out: &mut Vec<Violation>,
    n: u32,
    b: u32,
    r1: u32,
    r2: u32,
    a: u32,
    d: u32,
    g: &SeriesSupport,
) {
    check_positive(out, &[("n", n), ("r1", r1), ("r2", r2), ("a", a), ("d", d)]);
    if n < 2 {
        out.push(Violation::error("n >= 2", format!("n={n} (use cA for n=1)")));
        return;
    }
    if b == 0 || b >= n {
        out.push(Violation::error("0 < b < n", format!("b={b}, n={n}")));
        return;
    }
    if r1 > r2 {
        out.push(Violation::error("r1 <= r2", format!("r1={r1}, r2={r2}")));
    }
    let adn = a as i128 * d as i128 * n as i128;
    if (r1 as i128 + r2 as i128) != adn {
        out.push(Violation::error(
            "r1+r2 = adn",
            format!("r1+r2={}, adn={adn}", r1 as i128 + r2 as i128),
        ));
    }
    if (a as i128 - b as i128 * r1 as i128).rem_euclid(n as i128) != 0 {
        out.push(Violation::error(
            "a = b*r1 (mod n)",
            format!("a={a}, b*r1={} mod {n}", (b as u64 * r1 as u64) % n as u64),
        ));
    } else {
        // gcd bullets only meaningful once the congruence holds
        let gcd1 = b.gcd(&n);
        let v1 = (a as i128 - b as i128 * r1 as i128) / n as i128;
        let gcd2 = (v1.unsigned_abs() as u128).gcd(&(r1 as u128));
        let v2 = (a as i128 + b as i128 * r2 as i128) / n as i128;
        let gcd3 = (v2.unsigned_abs() as u128).gcd(&(r2 as u128));
        if gcd1 != 1 || gcd2 != 1 || gcd3 != 1 {
            out.push(Violation::error(
                "gcd(b,n) = gcd((a-br1)/n, r1) = gcd((a+br2)/n, r2) = 1",
                format!("gcds = ({gcd1}, {gcd2}, {gcd3})"),
            ));
        }
    }
    if g.is_empty() {
        out.push(Violation::error("g != 0", "empty support for g"));
        return;
    }
    check_coordinates(out, g, &[2, 3], "g(z^n,u)");
    if g.iter().any(|m| m.0[2] % n != 0) {
        out.push(Violation::error(
            "g = g(z^n, u)",
            "a term has z-exponent not divisible by n",
        ));
    }
    let zdn = Monomial::new(vec![0, 0, d * n, 0]);
    if !g.contains(&zdn) {
        out.push(Violation::error("z^{dn} in g", format!("missing {zdn:?}")));
    }
    // scaled weight of each term: a*l3 + n*l4 >= adn
    check_min_weight(out, g, &[0, 0, a, n], 0, adn, "n*w(g)");
}

#[allow(clippy::too_many_arguments)]
fn validate_cd1(
    out: &mut Vec<Violation>,
    r: u32,
    a: u32,
    d: u32,
    q: &SeriesSupport,
    p: &SeriesSupport,
    lambda_nonzero: bool,
    mu_nonzero: bool,
) {
    check_positive(out, &[("r", r), ("a", a), ("d", d)]);
    let lhs = 2 * r as i128 + 1;
    if lhs != a as i128 * d as i128 {
        out.push(Violation::error(
            "2r+1 = ad",
            format!("2r+1={lhs}, ad={}", a as i128 * d as i128),
        ));
    }
    if d < 3 {
        out.push(Violation::error("d >= 3", format!("d={d}")));
    }
    if a % 2 == 0 {
        out.push(Violation::error("a odd", format!("a={a}")));
    }
    if a < 5 {
        out.push(Violation::warning(
            "a >= 5",
            format!("a={a}: the classified-regime bounds are not invoked"),
        ));
    }
    check_coordinates(out, q, &[2, 3], "q(z,u)");
    // x*q-terms must have weight >= 2r+1: (r+1) + a*l3 + l4 >= 2r+1
    check_min_weight(out, q, &[0, 0, a, 1], r as i128 + 1, 2 * r as i128 + 1, "w(x*q)");
    check_coordinates(out, p, &[1, 2, 3], "p(y,z,u)");
    check_min_weight(out, p, &[0, r, a, 1], 0, 2 * r as i128 + 1, "w(p)");
    if lambda_nonzero && (r as i128 + 2 * a as i128) < 2 * r as i128 + 1 {
        out.push(Violation::error(
            "w(y*z^2) >= 2r+1",
            format!("r+2a={} < 2r+1={}", r + 2 * a, 2 * r + 1),
        ));
    }
    if mu_nonzero && 3 * a as i128 > 0 && (3 * a as i128) < 2 * r as i128 + 1 {
        out.push(Violation::error(
            "w(z^3) >= 2r+1",
            format!("3a={} < 2r+1={}", 3 * a, 2 * r + 1),
        ));
    }
}

fn validate_cd2(
    out: &mut Vec<Violation>,
    r: u32,
    a: u32,
    d: u32,
    p: &SeriesSupport,
    q: &SeriesSupport,
) {
    check_positive(out, &[("r", r), ("a", a), ("d", d)]);
    if (r as i128 + 1) != a as i128 * d as i128 {
        out.push(Violation::error(
            "r+1 = ad",
            format!("r+1={}, ad={}", r as i128 + 1, a as i128 * d as i128),
        ));
    }
    if d < 2 {
        out.push(Violation::error("d >= 2", format!("d={d}")));
    }
    if a < 5 {
        out.push(Violation::warning(
            "a >= 5",
            format!("a={a}: the classified-regime bounds are not invoked"),
        ));
    }
    check_coordinates(out, p, &[1, 2, 3], "p(y,z,u)");
    check_min_weight(out, p, &[0, r, a, 1, 0], 0, 2 * r as i128 + 2, "w(p)");
    check_coordinates(out, q, &[2, 3], "q(z,u)");
    // q*u-terms in phi2 must weigh >= r+1: a*l3 + l4 + 1 >= r+1
    check_min_weight(out, q, &[0, 0, a, 1, 0], 1, r as i128 + 1, "w(q*u)");
}

#[allow(clippy::too_many_arguments)]
fn validate_cdh1(
    out: &mut Vec<Violation>,
    r: u32,
    a: u32,
    d: u32,
    alpha: u32,
    q: &SeriesSupport,
    p: &SeriesSupport,
    lambda_nonzero: bool,
) {
    check_positive(out, &[("r", r), ("a", a), ("d", d), ("alpha", alpha)]);
    if (r as i128 + 1) != a as i128 * d as i128 {
        out.push(Violation::error(
            "r+1 = ad",
            format!("r+1={}, ad={}", r as i128 + 1, a as i128 * d as i128),
        ));
    }
    if a % 2 == 0 || r % 2 == 0 {
        out.push(Violation::error(
            "a and r odd",
            format!("a={a}, r={r}"),
        ));
    }
    if a < 5 {
        out.push(Violation::warning(
            "a >= 5",
            format!("a={a}: the classified-regime bounds are not invoked"),
        ));
    }
    check_coordinates(out, q, &[2, 3], "q(z^2,u)");
    if q.iter().any(|m| m.0[2] % 2 != 0) {
        out.push(Violation::error(
            "q = q(z^2,u)",
            "a term has odd z-exponent",
        ));
    }
    // x*z*q-terms: (r+2) + a + a*l3 + 2*l4 >= 2r+2
    check_min_weight(
        out,
        q,
        &[0, 0, a, 2],
        r as i128 + 2 + a as i128,
        2 * r as i128 + 2,
        "2w(x*z*q)",
    );
    check_coordinates(out, p, &[2, 3], "p(z^2,u)");
    if p.iter().any(|m| m.0[2] % 2 != 0) {
        out.push(Violation::error(
            "p = p(z^2,u)",
            "a term has odd z-exponent",
        ));
    }
    check_min_weight(out, p, &[0, 0, a, 2], 0, 2 * r as i128 + 2, "2w(p)");
    if lambda_nonzero {
        let w_term = r as i128 + (2 * alpha as i128 - 1) * a as i128;
        if w_term < 2 * r as i128 + 2 {
            out.push(Violation::error(
                "2w(y*z^{2alpha-1}) >= 2r+2",
                format!("r+(2alpha-1)a={w_term} < {}", 2 * r + 2),
            ));
        }
    }
}

fn validate_cdh2(
    out: &mut Vec<Violation>,
    r: u32,
    a: u32,
    d: u32,
    p: &SeriesSupport,
    q: &SeriesSupport,
) {
    check_positive(out, &[("r", r), ("a", a), ("d", d)]);
    if (r as i128 + 2) != a as i128 * (2 * d as i128 + 1) {
        out.push(Violation::error(
            "r+2 = a(2d+1)",
            format!("r+2={}, a(2d+1)={}", r as i128 + 2, a as i128 * (2 * d as i128 + 1)),
        ));
    }
    if a < 5 {
        out.push(Violation::warning(
            "a >= 5",
            format!("a={a}: the classified-regime bounds are not invoked"),
        ));
    }
    check_coordinates(out, p, &[2, 3], "p(z^2,u)");
    if p.iter().any(|m| m.0[2] % 2 != 0) {
        out.push(Violation::error(
            "p = p(z^2,u)",
            "a term has odd z-exponent",
        ));
    }
    check_min_weight(out, p, &[0, 0, a, 2, 0], 0, 2 * r as i128 + 4, "2w(p)");
    check_coordinates(out, q, &[2, 3], "q(z^2,u)");
    if q.iter().any(|m| m.0[2] % 2 != 0) {
        out.push(Violation::error(
            "q = q(z^2,u)",
            "a term has odd z-exponent",
        ));
    }
    // q*z*u-terms in phi2: a*(l3+1) + 2*(l4+1) >= r+2
    check_min_weight(
        out,
        q,
        &[0, 0, a, 2, 0],
        a as i128 + 2,
        r as i128 + 2,
        "2w(q*z*u)",
    );
}

// ---------------------------------------------------------------------------
// Classified and comparison weights; weighted discrepancy
// ---------------------------------------------------------------------------

/// The weight that computes the family's threshold.
pub fn classified_weight(p: &Presentation) -> Result<WeightVector, CtError> {
    p.require_valid()?;
    Ok(match p {
        Presentation::Smooth { alpha, beta } => WeightVector::integral(vec![1, *alpha, *beta]),
        Presentation::Quotient { .. } => quotient_minimal_weight(&p.quotient()),
        Presentation::CA { r1, r2, a, .. } => WeightVector::integral(vec![*r1, *r2, *a, 1]),
        Presentation::CAn { n, r1, r2, a, .. } => {
            WeightVector::new(vec![*r1, *r2, *a, *n], *n)
        }
        Presentation::CD1 { r, a, .. } => WeightVector::integral(vec![r + 1, *r, *a, 1]),
        Presentation::CD2 { r, a, .. } => {
            WeightVector::integral(vec![r + 1, *r, *a, 1, r + 2])
        }
        Presentation::CDh1 { r, a, .. } => WeightVector::new(vec![r + 2, *r, *a, 2], 2),
        Presentation::CDh2 { r, a, .. } => {
            WeightVector::new(vec![r + 2, *r, *a, 2, r + 4], 2)
        }
    })
}

/// Weighted discrepancy of the weighted blow-up with weight `w`:
/// the integer `a(w) = sum(k_j) - n - sum_i n*w(phi_i)`, so that
/// `K_Y = sigma^* K_X + (a(w)/n) E`.
pub fn weighted_discrepancy(p: &Presentation, w: &WeightVector) -> Result<Rational, CtError> {
    let q = p.quotient();
    if w.dim() != p.ambient_dim() {
        return Err(CtError::DimensionMismatch {
            expected: p.ambient_dim(),
            got: w.dim(),
        });
    }
    if !is_admissible(w, &q) {
        return Err(CtError::NotAdmissible);
    }
    let mut a = w.sum_numerators() - q.n as i128;
    for eq in p.equations() {
        let mult = weighted_multiplicity(&eq, w)?;
        if !mult.certified {
            return Err(CtError::UncertifiedMultiplicity);
        }
        a -= mult.scaled;
    }
    Ok(Rational::from_integer(a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRole {
    /// Weight with smaller discrepancy used for the floor/ceiling squeeze.
    LowerDiscrepancy,
    /// Small auxiliary weight witnessing the parameter bounds.
    SqueezeWitness,
    /// The index-dichotomy weight of the pair machinery.
    Dichotomy,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonWeight {
    pub name: String,
    pub weight: WeightVector,
    pub role: WeightRole,
    /// When the construction asserts `weight >= claimed_factor * classified`
    /// componentwise, the exact factor.
    pub claimed_factor: Option<Rational>,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct ComparisonWeightSet {
    pub entries: Vec<ComparisonWeight>,
    /// Weights whose side conditions failed, with the reason.
    pub omitted: Vec<(String, String)>,
}

impl ComparisonWeightSet {
    fn push(
        &mut self,
        name: &str,
        weight: WeightVector,
        role: WeightRole,
        claimed_factor: Option<Rational>,
    ) {
        self.entries.push(ComparisonWeight {
            name: name.to_string(),
            weight,
            role,
            claimed_factor,
        });
    }

    fn omit(&mut self, name: &str, reason: String) {
        self.omitted.push((name.to_string(), reason));
    }

    pub fn get(&self, name: &str) -> Option<&ComparisonWeight> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// The auxiliary weights each family's window argument uses, instantiated for
/// window index `k`. Side conditions are reported, never assumed.
pub fn comparison_weights(p: &Presentation, k: u32) -> Result<ComparisonWeightSet, CtError> {
    p.require_valid()?;
    let mut set = ComparisonWeightSet::default();
    match p {
        Presentation::Smooth { alpha, beta } => {
            if *beta >= 2 {
                set.push(
                    "w'",
                    WeightVector::integral(vec![1, *alpha, beta - 1]),
                    WeightRole::LowerDiscrepancy,
                    Some(Rational::new(*beta as i128 - 1, *beta as i128)),
                );
            } else {
                set.omit("w'", format!("beta={beta} < 2"));
            }
        }
        Presentation::Quotient { .. } => {}
        Presentation::CA { r1, r2, a, d, .. } => {
            if *r2 > *d && *a >= 2 {
                set.push(
                    "w_{a-1}",
                    WeightVector::integral(vec![*r1, r2 - d, a - 1, 1]),
                    WeightRole::LowerDiscrepancy,
                    Some(Rational::new(*r2 as i128 - *d as i128, *r2 as i128)),
                );
            } else {
                set.omit("w_{a-1}", format!("needs r2 > d and a >= 2 (r2={r2}, d={d}, a={a})"));
            }
        }
        Presentation::CAn {
            n, b, r1, r2, a, d, ..
        } => {
            let b_star = mod_inverse(*b, *n).expect("validated gcd(b,n)=1");
            let dn = *d as i128 * *n as i128;
            if dn > b_star as i128 {
                set.push(
                    "w1",
                    WeightVector::new(vec![b_star, (dn - b_star as i128) as u32, 1, *n], *n),
                    WeightRole::SqueezeWitness,
                    None,
                );
            } else {
                set.omit("w1", format!("needs dn > b* (dn={dn}, b*={b_star})"));
            }
            let dn2 = dn * *n as i128;
            let gate_rhs = *r1 as i128 + dn2 - *n as i128;
            let gate = *a as i128 > 6 * (k as i128) * (k as i128)
                && (*a as i128) * (dn - 1) > gate_rhs;
            if !gate {
                set.omit(
                    "w_{a-n}",
                    format!("gated by a > max(6k^2, (r1+dn^2-n)/(dn-1)) at k={k}"),
                );
            } else if *r2 as i128 > dn2 && *a > *n {
                set.push(
                    "w_{a-n}",
                    WeightVector::new(
                        vec![*r1, (*r2 as i128 - dn2) as u32, a - n, *n],
                        *n,
                    ),
                    WeightRole::LowerDiscrepancy,
                    Some(Rational::new(*r2 as i128 - dn2, *r2 as i128)),
                );
            } else {
                set.omit("w_{a-n}", format!("needs r2 > dn^2 and a > n (r2={r2}, dn^2={dn2}, a={a}, n={n})"));
            }
            match dichotomy_weight_fill(*n, *b, *d) {
                Some(w3) => set.push("w3", w3, WeightRole::Dichotomy, None),
                None => set.omit("w3", "no fill with min(r1',r2') > n".to_string()),
            }
        }
        Presentation::CD1 {
            r, a, d, eta_nonzero, ..
        } => {
            if *eta_nonzero {
                set.push(
                    "w1",
                    WeightVector::integral(vec![*d, *d, 2, 1]),
                    WeightRole::SqueezeWitness,
                    Some(Rational::new(*d as i128, *r as i128 + 1)),
                );
            } else {
                set.omit("w1", "requires the degree-d genericity flag".to_string());
            }
            if *r > *d && *a > 2 {
                set.push(
                    "w2",
                    WeightVector::integral(vec![r + 1 - d, r - d, a - 2, 1]),
                    WeightRole::LowerDiscrepancy,
                    Some(Rational::new(*r as i128 - *d as i128, *r as i128)),
                );
            } else {
                set.omit("w2", format!("needs r > d and a > 2 (r={r}, d={d}, a={a})"));
            }
        }
        Presentation::CD2 { r, a, d, .. } => {
            set.push(
                "w1",
                WeightVector::integral(vec![*d, *d, 1, 1, *d]),
                WeightRole::SqueezeWitness,
                Some(Rational::new(*d as i128, *r as i128 + 2)),
            );
            if *r > *d && *a >= 2 {
                set.push(
                    "w_{a-1}",
                    WeightVector::integral(vec![r - d + 1, r - d, a - 1, 1, r - d + 2]),
                    WeightRole::LowerDiscrepancy,
                    Some(Rational::new(*r as i128 - *d as i128, *r as i128)),
                );
            } else {
                set.omit("w_{a-1}", format!("needs r > d and a >= 2 (r={r}, d={d}, a={a})"));
            }
        }
        Presentation::CDh1 { r, a, d, .. } => {
            if *d >= 2 {
                let s = d - 1;
                set.push(
                    "w'",
                    WeightVector::new(vec![s + 2, s, 1, 2], 2),
                    WeightRole::SqueezeWitness,
                    Some(Rational::new(s as i128, *r as i128)),
                );
            } else {
                set.omit("w'", format!("needs d >= 2 (d={d})"));
            }
            if *r > 2 * d && *a > 2 {
                set.push(
                    "w_{a-2}",
                    WeightVector::new(vec![r - 2 * d + 2, r - 2 * d, a - 2, 2], 2),
                    WeightRole::LowerDiscrepancy,
                    Some(Rational::new(*r as i128 - 2 * *d as i128, *r as i128)),
                );
            } else {
                set.omit("w_{a-2}", format!("needs r > 2d and a > 2 (r={r}, d={d}, a={a})"));
            }
        }
        Presentation::CDh2 { r, a, d, .. } => {
            set.push(
                "w1",
                WeightVector::new(vec![2 * d + 1, 2 * d + 1, 1, 2, 2 * d + 1], 2),
                WeightRole::SqueezeWitness,
                Some(Rational::new(2 * *d as i128 + 1, *r as i128 + 4)),
            );
            if *r >= 2 * d + 2 && *a >= 2 {
                set.push(
                    "w_{a-1}",
                    WeightVector::new(
                        vec![r - 2 * d + 1, r - 2 * d - 1, a - 1, 2, r - 2 * d + 3],
                        2,
                    ),
                    WeightRole::LowerDiscrepancy,
                    Some(Rational::new(
                        *r as i128 - 2 * *d as i128 - 1,
                        *r as i128,
                    )),
                );
            } else {
                set.omit("w_{a-1}", format!("needs r >= 2d+2 and a >= 2 (r={r}, d={d}, a={a})"));
            }
        }
    }
    Ok(set)
}

/// Search the index-dichotomy weight `(1/n)(r1', r2', 3, n)` with
/// `r1'+r2' = 3dn`, `b*r1' = 3 (mod n)` and `min(r1',r2') > n`, choosing the
/// fill minimizing `|r1'-r2'|` (ties to the smaller `r1'`).
pub fn dichotomy_weight_fill(n: u32, b: u32, d: u32) -> Option<WeightVector> {
    let total = 3 * d as i128 * n as i128;
    let mut best: Option<(i128, i128)> = None;
    for r1p in (n as i128 + 1)..(total - n as i128) {
        if (b as i128 * r1p - 3).rem_euclid(n as i128) != 0 {
            continue;
        }
        let r2p = total - r1p;
        let spread = (r1p - r2p).abs();
        let better = match best {
            None => true,
            Some((bs, br1)) => spread < bs || (spread == bs && r1p < br1),
        };
        if better {
            best = Some((spread, r1p));
        }
    }
    best.map(|(_, r1p)| {
        WeightVector::new(
            vec![r1p as u32, (total - r1p) as u32, 3, n],
            n,
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn ca_example() -> Presentation {
        // r1+r2 = 4 = 1*4, g = z^4 attains weight 4 under (z,u) -> (1,1)
        Presentation::CA {
            r1: 1,
            r2: 3,
            a: 1,
            d: 4,
            g: SeriesSupport::polynomial(4, vec![vec![0, 0, 4, 0]]),
        }
    }

    pub fn can_example() -> Presentation {
        Presentation::CAn {
            n: 2,
            b: 1,
            r1: 1,
            r2: 9,
            a: 5,
            d: 1,
            g: SeriesSupport::polynomial(4, vec![vec![0, 0, 2, 0]]),
        }
    }

    #[test]
    fn validate_examples() {
        assert!(ca_example().is_valid());
        assert!(can_example().is_valid());
        // cD1 with 2r+1 != ad carries the violation naming the constraint
        let bad = Presentation::CD1 {
            r: 7,
            a: 5,
            d: 4,
            q: SeriesSupport::polynomial(4, vec![]),
            p: SeriesSupport::polynomial(4, vec![]),
            lambda_nonzero: false,
            mu_nonzero: false,
            eta_nonzero: true,
        };
        let vs = validate(&bad);
        assert!(vs.iter().any(|v| v.constraint == "2r+1 = ad"));
    }

    #[test]
    fn validate_is_monotone_under_single_repairs() {
        // fixing the one broken field never introduces a new violation
        let broken = Presentation::CA {
            r1: 2,
            r2: 1, // violates r1 <= r2 and the sum relation
            a: 1,
            d: 4,
            g: SeriesSupport::polynomial(4, vec![vec![0, 0, 4, 0]]),
        };
        let before: Vec<String> = validate(&broken)
            .into_iter()
            .map(|v| v.constraint)
            .collect();
        let repaired = ca_example();
        let after: Vec<String> = validate(&repaired)
            .into_iter()
            .map(|v| v.constraint)
            .collect();
        assert!(!before.is_empty());
        assert!(after.is_empty());
        for c in &after {
            assert!(before.contains(c), "repair introduced {c}");
        }
    }

    #[test]
    fn classified_weight_examples() {
        let w = classified_weight(&Presentation::Smooth { alpha: 2, beta: 3 }).unwrap();
        assert_eq!(w, WeightVector::integral(vec![1, 2, 3]));

        let p = Presentation::CDh2 {
            r: 8,
            a: 2,
            d: 2,
            p: SeriesSupport::polynomial(5, vec![vec![0, 0, 20, 0, 0]]),
            q: SeriesSupport::polynomial(5, vec![vec![0, 0, 4, 0, 0]]),
        };
        // r+2 = 10 = 2*(2*2+1)
        let w = classified_weight(&p).unwrap();
        assert_eq!(w, WeightVector::new(vec![10, 8, 2, 2, 12], 2));

        let w = classified_weight(&can_example()).unwrap();
        assert_eq!(w, WeightVector::new(vec![1, 9, 5, 2], 2));
    }

    #[test]
    fn discrepancy_examples() {
        // smooth (1,2,3): 1+2+3-1 = 5
        let p = Presentation::Smooth { alpha: 2, beta: 3 };
        let w = classified_weight(&p).unwrap();
        assert_eq!(weighted_discrepancy(&p, &w).unwrap(), Rational::from_integer(5));
        // quotient (1/2)(1,1,1): weighted discrepancy 1
        let p = Presentation::Quotient { n: 2, b: vec![1, 1, 1] };
        let w = classified_weight(&p).unwrap();
        assert_eq!(w, WeightVector::new(vec![1, 1, 1], 2));
        assert_eq!(weighted_discrepancy(&p, &w).unwrap(), Rational::one());
    }

    #[test]
    fn cd2_symbolic_discrepancy() {
        // (3r+a+4) - 1 - (2r+2) - (r+1) = a over a small grid
        for (a, d) in [(5u32, 2u32), (5, 3), (7, 2), (9, 4)] {
            let r = a * d - 1;
            let p = Presentation::CD2 {
                r,
                a,
                d,
                p: SeriesSupport::polynomial(5, vec![vec![0, 2, 0, 2, 0]]),
                q: SeriesSupport::polynomial(5, vec![vec![0, 0, d, 0, 0]]),
            };
            assert!(p.is_valid(), "{:?}", validate(&p));
            let w = classified_weight(&p).unwrap();
            assert_eq!(
                weighted_discrepancy(&p, &w).unwrap(),
                Rational::from_integer(a as i128)
            );
        }
    }

    #[test]
    fn cdh1_symbolic_discrepancy() {
        // (2r+a+4)/2 - 1 - (r+1) = a/2, i.e. weighted discrepancy a
        for (a, d) in [(5u32, 2u32), (7, 2), (5, 4), (9, 2)] {
            let r = a * d - 1;
            let p = Presentation::CDh1 {
                r,
                a,
                d,
                alpha: d / 2 + 1,
                q: SeriesSupport::polynomial(4, vec![vec![0, 0, d, 0]]),
                p: SeriesSupport::polynomial(4, vec![vec![0, 0, 2 * d, 0]]),
                lambda_nonzero: true,
            };
            assert!(p.is_valid(), "{:?}", validate(&p));
            let w = classified_weight(&p).unwrap();
            assert_eq!(
                weighted_discrepancy(&p, &w).unwrap(),
                Rational::from_integer(a as i128)
            );
        }
    }

    #[test]
    fn comparison_weight_examples() {
        // smooth (2,3): w' = (1,2,2)
        let set = comparison_weights(&Presentation::Smooth { alpha: 2, beta: 3 }, 2).unwrap();
        assert_eq!(
            set.get("w'").unwrap().weight,
            WeightVector::integral(vec![1, 2, 2])
        );
        // cD1 (r=7, a=5, d=3): w1 = (3,3,2,1), w2 = (5,4,3,1)
        let p = Presentation::CD1 {
            r: 7,
            a: 5,
            d: 3,
            q: SeriesSupport::polynomial(4, vec![vec![0, 0, 3, 0]]),
            p: SeriesSupport::polynomial(4, vec![vec![0, 3, 0, 0]]),
            lambda_nonzero: true,
            mu_nonzero: true,
            eta_nonzero: true,
        };
        assert!(p.is_valid(), "{:?}", validate(&p));
        let set = comparison_weights(&p, 2).unwrap();
        assert_eq!(set.get("w1").unwrap().weight, WeightVector::integral(vec![3, 3, 2, 1]));
        assert_eq!(set.get("w2").unwrap().weight, WeightVector::integral(vec![5, 4, 3, 1]));
        // cAn example: b* = 1, w1 = (1/2)(1,1,1,2)
        let set = comparison_weights(&can_example(), 2).unwrap();
        assert_eq!(set.get("w1").unwrap().weight, WeightVector::new(vec![1, 1, 1, 2], 2));
        // the w_{a-n} gate rejects a = 5 < 6k^2
        assert!(set.get("w_{a-n}").is_none());
        assert!(set.omitted.iter().any(|(n, _)| n == "w_{a-n}"));
    }

    #[test]
    fn comparison_weights_dominate_claimed_fraction() {
        let p = Presentation::CD1 {
            r: 7,
            a: 5,
            d: 3,
            q: SeriesSupport::polynomial(4, vec![vec![0, 0, 3, 0]]),
            p: SeriesSupport::polynomial(4, vec![vec![0, 3, 0, 0]]),
            lambda_nonzero: true,
            mu_nonzero: true,
            eta_nonzero: true,
        };
        let w = classified_weight(&p).unwrap();
        let set = comparison_weights(&p, 2).unwrap();
        for entry in &set.entries {
            if let Some(c) = entry.claimed_factor {
                for i in 0..w.dim() {
                    assert!(
                        entry.weight.coordinate(i) >= c * w.coordinate(i),
                        "{} fails domination at {}",
                        entry.name,
                        i
                    );
                }
            }
        }
    }

    #[test]
    fn classified_weights_are_admissible() {
        for p in [ca_example(), can_example()] {
            let w = classified_weight(&p).unwrap();
            assert!(is_admissible(&w, &p.quotient()));
        }
        let p = Presentation::CDh1 {
            r: 9,
            a: 5,
            d: 2,
            alpha: 2,
            q: SeriesSupport::polynomial(4, vec![vec![0, 0, 2, 0]]),
            p: SeriesSupport::polynomial(4, vec![vec![0, 0, 4, 0]]),
            lambda_nonzero: true,
        };
        assert!(p.is_valid(), "{:?}", validate(&p));
        let w = classified_weight(&p).unwrap();
        assert!(is_admissible(&w, &p.quotient()));
    }

    #[test]
    fn presentation_serde_round_trip() {
        for p in [
            Presentation::Smooth { alpha: 2, beta: 3 },
            Presentation::Quotient { n: 2, b: vec![1, 1, 1] },
            ca_example(),
            can_example(),
        ] {
            let s = serde_json::to_string(&p).unwrap();
            let back: Presentation = serde_json::from_str(&s).unwrap();
            assert_eq!(back, p);
        }
    }
}
