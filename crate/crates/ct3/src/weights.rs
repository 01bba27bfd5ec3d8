//! Cyclic-quotient data, admissible weight vectors, weighted multiplicity
//! and the floor/ceiling comparison machinery.
//!
//! A weight `w = (1/n)(k_1,...,k_r)` assigns the monomial `x^l` the value
//! `w(x^l) = sum(l_j k_j)/n`. The weighted multiplicity of a support `f` is
//! the minimum of `w` over its terms; `n*w(f)` is always an integer and is
//! the quantity the comparison inequalities speak about.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::CtError;
use crate::rational::Rational;
use crate::support::{Completeness, Monomial, SeriesSupport};

/// The quotient `C^r / (1/n)(b_1,...,b_r)`. `n = 1` encodes no quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicQuotient {
    pub n: u32,
    pub b: Vec<u32>,
}

impl CyclicQuotient {
    pub fn new(n: u32, b: Vec<u32>) -> Self {
        assert!(n >= 1, "quotient index must be positive");
        assert!(b.iter().all(|&bi| bi < n || n == 1), "residues must lie in 0..n");
        let b = if n == 1 { vec![0; b.len()] } else { b };
        CyclicQuotient { n, b }
    }

    /// No quotient at all in ambient dimension `dim`.
    pub fn trivial(dim: usize) -> Self {
        CyclicQuotient {
            n: 1,
            b: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    /// Residue of a monomial under the group character, `sum(l_j b_j) mod n`.
    pub fn residue(&self, m: &Monomial) -> u32 {
        if self.n == 1 {
            return 0;
        }
        let mut acc: u64 = 0;
        for (l, b) in m.0.iter().zip(&self.b) {
            acc = (acc + (*l as u64 % self.n as u64) * (*b as u64)) % self.n as u64;
        }
        acc as u32
    }
}

/// An admissible weight `(1/n)(k_1,...,k_r)` with all `k_i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightVector {
    pub numerators: Vec<u32>,
    pub denominator: u32,
}

impl WeightVector {
    pub fn new(numerators: Vec<u32>, denominator: u32) -> Self {
        assert!(denominator >= 1);
        assert!(
            numerators.iter().all(|&k| k >= 1),
            "weight numerators must be positive"
        );
        WeightVector {
            numerators,
            denominator,
        }
    }

    /// Integer weight vector (denominator 1).
    pub fn integral(numerators: Vec<u32>) -> Self {
        Self::new(numerators, 1)
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    /// The evaluated coordinate weight `k_i/n`.
    pub fn coordinate(&self, i: usize) -> Rational {
        Rational::new(self.numerators[i] as i128, self.denominator as i128)
    }

    /// `n * w(m) = sum(l_j k_j)`, always an integer.
    pub fn scaled_monomial_weight(&self, m: &Monomial) -> i128 {
        m.0.iter()
            .zip(&self.numerators)
            .map(|(l, k)| *l as i128 * *k as i128)
            .sum()
    }

    /// `n * w(f)`: minimum of the scaled weight over the support.
    pub fn scaled_multiplicity(&self, f: &SeriesSupport) -> Result<i128, CtError> {
        Ok(weighted_multiplicity(f, self)?.scaled)
    }

    pub fn sum_numerators(&self) -> i128 {
        self.numerators.iter().map(|&k| k as i128).sum()
    }
}

/// `w(m)` as a reduced rational.
pub fn monomial_weight(m: &Monomial, w: &WeightVector) -> Result<Rational, CtError> {
    if m.dim() != w.dim() {
        return Err(CtError::DimensionMismatch {
            expected: w.dim(),
            got: m.dim(),
        });
    }
    Ok(Rational::new(
        w.scaled_monomial_weight(m),
        w.denominator as i128,
    ))
}

/// Result of a weighted-multiplicity computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    /// `w(f)` as a rational.
    pub value: Rational,
    /// `n * w(f)`, the integer form.
    pub scaled: i128,
    /// Lexicographically first monomial attaining the minimum.
    pub witness: Monomial,
    /// True when the truncation bound rules out lighter unlisted terms:
    /// every monomial of total degree `> complete_up_to` has weight at least
    /// `(min_i k_i / n) * (complete_up_to + 1) >= value`.
    pub certified: bool,
}

/// Minimum weight over the support with witness and certification flag.
pub fn weighted_multiplicity(
    f: &SeriesSupport,
    w: &WeightVector,
) -> Result<Multiplicity, CtError> {
    if f.is_empty() {
        return Err(CtError::EmptySupport);
    }
    f.check_dim(w.dim())?;
    let mut best: Option<(i128, &Monomial)> = None;
    for m in f.iter() {
        let s = w.scaled_monomial_weight(m);
        // BTreeSet iterates in lex order, so strict < keeps the lex-first witness.
        if best.map_or(true, |(bs, _)| s < bs) {
            best = Some((s, m));
        }
    }
    let (scaled, witness) = best.expect("nonempty support");
    let value = Rational::new(scaled, w.denominator as i128);
    let certified = match f.completeness {
        Completeness::Exact => true,
        Completeness::UpTo(d) => {
            let min_k = *w.numerators.iter().min().expect("nonempty weight") as i128;
            let tail_floor = Rational::new(min_k * (d as i128 + 1), w.denominator as i128);
            tail_floor >= value
        }
    };
    Ok(Multiplicity {
        value,
        scaled,
        witness: witness.clone(),
        certified,
    })
}

/// Common residue of all terms of `f` under the quotient character, if any.
pub fn semi_invariant_class(
    f: &SeriesSupport,
    q: &CyclicQuotient,
) -> Result<Option<u32>, CtError> {
    f.check_dim(q.dim())?;
    let mut class: Option<u32> = None;
    for m in f.iter() {
        let r = q.residue(m);
        match class {
            None => class = Some(r),
            Some(c) if c != r => return Ok(None),
            _ => {}
        }
    }
    Ok(class)
}

/// Error-raising form: the common residue, or the two conflicting residues.
pub fn require_semi_invariant(f: &SeriesSupport, q: &CyclicQuotient) -> Result<u32, CtError> {
    f.check_dim(q.dim())?;
    let mut class: Option<u32> = None;
    for m in f.iter() {
        let r = q.residue(m);
        match class {
            None => class = Some(r),
            Some(c) if c != r => {
                return Err(CtError::NotSemiInvariant {
                    first: c,
                    second: r,
                })
            }
            _ => {}
        }
    }
    class.ok_or(CtError::EmptySupport)
}

/// True iff there is `s` with `k_i = s*b_i (mod n)` for every coordinate.
pub fn is_admissible(w: &WeightVector, q: &CyclicQuotient) -> bool {
    if w.dim() != q.dim() {
        return false;
    }
    let n = q.n as u64;
    if n == 1 {
        return true;
    }
    if w.denominator != q.n {
        return false;
    }
    (0..n).any(|s| {
        w.numerators
            .iter()
            .zip(&q.b)
            .all(|(&k, &b)| (k as u64) % n == (s * b as u64) % n)
    })
}

/// Outcome of the componentwise-domination ceiling comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonVerdict {
    /// `n * w(f)`.
    pub m: i128,
    /// `n' * w'(f)`.
    pub m_prime: i128,
    /// `ceil(c * m)`.
    pub ceil_cm: i128,
    /// Whether `m' >= ceil(c*m)` holds.
    pub holds: bool,
}

/// Checks the hypothesis `w' >= c*w` componentwise, then reports whether the
/// integer multiplicities satisfy `m' >= ceil(c*m)`.
pub fn multiplicity_comparison(
    f: &SeriesSupport,
    w: &WeightVector,
    w_prime: &WeightVector,
    c: Rational,
) -> Result<ComparisonVerdict, CtError> {
    if w.dim() != w_prime.dim() {
        return Err(CtError::DimensionMismatch {
            expected: w.dim(),
            got: w_prime.dim(),
        });
    }
    for i in 0..w.dim() {
        if w_prime.coordinate(i) < c * w.coordinate(i) {
            return Err(CtError::DominationFails { coordinate: i });
        }
    }
    let m = weighted_multiplicity(f, w)?.scaled;
    let m_prime = weighted_multiplicity(f, w_prime)?.scaled;
    let ceil_cm = (c * Rational::from_integer(m)).ceil();
    Ok(ComparisonVerdict {
        m,
        m_prime,
        ceil_cm,
        holds: m_prime >= ceil_cm,
    })
}

/// Streaming enumeration of all admissible numerator vectors with entries in
/// `1..=cap`, grouped by congruence class. The visitor returns `false` to
/// abort; the function reports whether the scan ran to completion. Weights
/// matching several classes are visited once.
pub fn scan_admissible(
    q: &CyclicQuotient,
    cap: u32,
    mut visit: impl FnMut(&[u32]) -> bool,
) -> bool {
    let n = q.n;
    let dim = q.dim();
    for s in 0..n {
        // residues of each coordinate in this class; numerators k = r, r+n, ...
        let duplicate = (0..s).any(|t| {
            q.b.iter()
                .all(|&b| (t as u64 * b as u64) % n as u64 == (s as u64 * b as u64) % n as u64)
        });
        if duplicate {
            continue;
        }
        let choices: Vec<Vec<u32>> = q
            .b
            .iter()
            .map(|&b| {
                let r = ((s as u64 * b as u64) % n as u64) as u32;
                let start = if r == 0 { n } else { r };
                (start..=cap).step_by(n as usize).collect()
            })
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; dim];
        let mut numerators: Vec<u32> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        'class: loop {
            if !visit(&numerators) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == dim {
                    break 'class;
                }
                if idx[i] + 1 < choices[i].len() {
                    idx[i] += 1;
                    numerators[i] = choices[i][idx[i]];
                    break;
                }
                idx[i] = 0;
                numerators[i] = choices[i][0];
                i += 1;
            }
        }
    }
    true
}

/// All admissible weights with numerators `<= cap`, materialized.
pub fn admissible_weights(q: &CyclicQuotient, cap: u32) -> Vec<WeightVector> {
    let mut out = Vec::new();
    scan_admissible(q, cap, |nums| {
        out.push(WeightVector::new(nums.to_vec(), q.n));
        true
    });
    out
}

/// Scaled weight of a monomial against a raw numerator slice.
pub fn scaled_dot(numerators: &[u32], m: &Monomial) -> i128 {
    m.0.iter()
        .zip(numerators)
        .map(|(l, k)| *l as i128 * *k as i128)
        .sum()
}

/// Modular inverse for small moduli, if it exists.
pub fn mod_inverse(a: u32, n: u32) -> Option<u32> {
    if n == 1 {
        return Some(0);
    }
    let a = a % n;
    if a.gcd(&n) != 1 {
        return None;
    }
    (1..n).find(|&x| (a as u64 * x as u64) % n as u64 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_111() -> (CyclicQuotient, WeightVector) {
        (
            CyclicQuotient::new(2, vec![1, 1, 1]),
            WeightVector::new(vec![1, 1, 1], 2),
        )
    }

    #[test]
    fn monomial_weight_examples() {
        // z^3 under (1/2)(1,1,1) -> 3/2
        let (_, w) = half_111();
        let z3 = Monomial::new(vec![0, 0, 3]);
        assert_eq!(monomial_weight(&z3, &w).unwrap(), Rational::new(3, 2));
        // constant monomial -> 0
        let one = Monomial::new(vec![0, 0, 0]);
        assert_eq!(monomial_weight(&one, &w).unwrap(), Rational::zero());
        // xy under (1/2)(1,9,5,2) -> 5
        let w = WeightVector::new(vec![1, 9, 5, 2], 2);
        let xy = Monomial::new(vec![1, 1, 0, 0]);
        assert_eq!(monomial_weight(&xy, &w).unwrap(), Rational::from_integer(5));
        // dimension mismatch is an error
        assert!(monomial_weight(&z3, &w).is_err());
    }

    #[test]
    fn weighted_multiplicity_examples() {
        let (_, w) = half_111();
        // f = {z^i}: (i/2, z^i, certified)
        for i in 1..=6u32 {
            let f = SeriesSupport::polynomial(3, vec![vec![0, 0, i]]);
            let m = weighted_multiplicity(&f, &w).unwrap();
            assert_eq!(m.value, Rational::new(i as i128, 2));
            assert_eq!(m.scaled, i as i128);
            assert_eq!(m.witness, Monomial::new(vec![0, 0, i]));
            assert!(m.certified);
        }
        // f = {x} under (1,alpha,beta): (1, x, certified)
        let w = WeightVector::integral(vec![1, 2, 3]);
        let f = SeriesSupport::polynomial(3, vec![vec![1, 0, 0]]);
        let m = weighted_multiplicity(&f, &w).unwrap();
        assert_eq!(m.value, Rational::one());
        assert!(m.certified);
        // f = {z^2, u^5} in 4 vars under (1,3,1,1): min(2,5) = 2 at z^2
        let w = WeightVector::integral(vec![1, 3, 1, 1]);
        let f = SeriesSupport::polynomial(4, vec![vec![0, 0, 2, 0], vec![0, 0, 0, 5]]);
        let m = weighted_multiplicity(&f, &w).unwrap();
        assert_eq!(m.value, Rational::from_integer(2));
        assert_eq!(m.witness, Monomial::new(vec![0, 0, 2, 0]));
        // empty support errors
        let empty = SeriesSupport::polynomial(3, vec![]);
        assert!(weighted_multiplicity(&empty, &WeightVector::integral(vec![1, 1, 1])).is_err());
    }

    #[test]
    fn truncation_certification() {
        // truncated at degree 3 with minimum weight 2: tail bound (3+1)*1 >= 2 certifies
        let f = SeriesSupport::truncated(3, vec![vec![0, 0, 2]], 3);
        let w = WeightVector::integral(vec![1, 1, 1]);
        assert!(weighted_multiplicity(&f, &w).unwrap().certified);
        // same truncation under a heavy weight is not certified: min = 8 > (3+1)*1
        let w = WeightVector::integral(vec![1, 1, 4]);
        assert!(!weighted_multiplicity(&f, &w).unwrap().certified);
    }

    #[test]
    fn semi_invariant_examples() {
        let (q, _) = half_111();
        let z2 = SeriesSupport::polynomial(3, vec![vec![0, 0, 2]]);
        assert_eq!(semi_invariant_class(&z2, &q).unwrap(), Some(0));
        let z = SeriesSupport::polynomial(3, vec![vec![0, 0, 1]]);
        assert_eq!(semi_invariant_class(&z, &q).unwrap(), Some(1));
        let q4 = CyclicQuotient::new(2, vec![1, 1, 1, 0]);
        let zu = SeriesSupport::polynomial(4, vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(semi_invariant_class(&zu, &q4).unwrap(), None);
    }

    #[test]
    fn admissibility_examples() {
        // n = 1 always admissible
        let w = WeightVector::integral(vec![3, 2, 1]);
        assert!(is_admissible(&w, &CyclicQuotient::trivial(3)));
        // (1/2)(1,9,5,2) over (1/2)(1,1,1,0): s = 1
        let q = CyclicQuotient::new(2, vec![1, 1, 1, 0]);
        let w = WeightVector::new(vec![1, 9, 5, 2], 2);
        assert!(is_admissible(&w, &q));
        // (1/2)(1,2,1) over (1/2)(1,1,1): no s works
        let q = CyclicQuotient::new(2, vec![1, 1, 1]);
        let w = WeightVector::new(vec![1, 2, 1], 2);
        assert!(!is_admissible(&w, &q));
    }

    #[test]
    fn admissibility_invariant_under_unit_rescaling() {
        // multiplying all b_i by a unit mod n does not change admissibility
        let n = 5u32;
        let b = vec![1, 4, 2];
        let q = CyclicQuotient::new(n, b.clone());
        for unit in [2u32, 3, 4] {
            let qb: Vec<u32> = b.iter().map(|&bi| (bi * unit) % n).collect();
            let q2 = CyclicQuotient::new(n, qb);
            for w in admissible_weights(&q, 6) {
                assert!(is_admissible(&w, &q2), "unit {unit} broke {w:?}");
            }
        }
    }

    #[test]
    fn comparison_identity() {
        let f = SeriesSupport::polynomial(3, vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 6]]);
        let w = WeightVector::integral(vec![3, 2, 1]);
        let v = multiplicity_comparison(&f, &w, &w, Rational::one()).unwrap();
        assert_eq!(v.m, v.m_prime);
        assert!(v.holds);
    }

    #[test]
    fn comparison_rejects_bad_hypothesis() {
        let f = SeriesSupport::polynomial(3, vec![vec![1, 0, 0]]);
        let w = WeightVector::integral(vec![3, 2, 1]);
        let w2 = WeightVector::integral(vec![1, 2, 1]);
        let err = multiplicity_comparison(&f, &w, &w2, Rational::one());
        assert!(matches!(err, Err(CtError::DominationFails { coordinate: 0 })));
    }

    #[test]
    fn enumeration_respects_admissibility_and_cap() {
        let q = CyclicQuotient::new(2, vec![1, 1, 1]);
        let ws = admissible_weights(&q, 5);
        assert!(!ws.is_empty());
        for w in &ws {
            assert!(is_admissible(w, &q));
            assert!(w.numerators.iter().all(|&k| k >= 1 && k <= 5));
        }
        // all-odd and all-even classes: 3^3 + 2^3
        assert_eq!(ws.len(), 27 + 8);
    }
}
