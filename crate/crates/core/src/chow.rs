//! Rank-one Chow ring `Q[H]/(H^{n+1})` of a weighted complete intersection,
//! Chern classes of its tangent bundle, and the Chern classes of the tangent
//! sheaf of a codimension-one distribution.
//!
//! Cycle classes are stored as rational multiples of `H^k`. A curve of
//! degree `δ` (meaning `H·[C] = δ` points) is the class `(δ / deg X)·H^2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{format_rational, rational_int, serde_rational, Rational};
use crate::variety::{catalog, VarietyError, WeightedCI};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("expected a threefold, got dimension {0}")]
    Dimension(u32),
    #[error("classes live on different spaces")]
    AmbientMismatch,
    #[error("ideal Chern class only for codimension 2 or 3, got {0}")]
    UnsupportedCodimension(u32),
    #[error("c3 requested but c3_IZ was not supplied")]
    MissingC3,
    #[error("class with zero constant term has no inverse")]
    NotInvertible,
    #[error("only the cases H.[Z] = 0 and H.[Z] = 2 are replayed, got {0}")]
    UnsupportedCase(i64),
    #[error("{0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// `∑ c_k H^k`, truncated above `H^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowClass {
    #[serde(with = "serde_rational::vec")]
    coefficients: Vec<Rational>,
    ambient: WeightedCI,
}

impl ChowClass {
    pub fn new(ambient: &WeightedCI, mut coefficients: Vec<Rational>) -> Self {
        let len = ambient.dim() as usize + 1;
        coefficients.resize(len, Rational::zero());
        ChowClass {
            coefficients,
            ambient: ambient.clone(),
        }
    }

    pub fn from_ints(ambient: &WeightedCI, c: &[i64]) -> Self {
        Self::new(ambient, c.iter().map(|&x| rational_int(x)).collect())
    }

    pub fn zero(ambient: &WeightedCI) -> Self {
        Self::new(ambient, Vec::new())
    }

    pub fn one(ambient: &WeightedCI) -> Self {
        Self::new(ambient, vec![Rational::one()])
    }

    /// `coeff · H^k`.
    pub fn monomial(ambient: &WeightedCI, k: usize, coeff: Rational) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        if k <= ambient.dim() as usize {
            c[k] = coeff;
        }
        Self::new(ambient, c)
    }

    /// `1 + a H`.
    pub fn linear(ambient: &WeightedCI, a: i64) -> Self {
        Self::from_ints(ambient, &[1, a])
    }

    pub fn ambient(&self) -> &WeightedCI {
        &self.ambient
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficient of `H^k`; zero past the top degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    /// Only the `H^k` part.
    pub fn component(&self, k: usize) -> Self {
        Self::monomial(&self.ambient, k, self.coeff(k))
    }

    /// `deg(c_k · H^{n-k})` in points: `c_k · deg X`.
    pub fn degree_of(&self, k: usize) -> Rational {
        self.coeff(k) * self.ambient.degree()
    }

    fn check(&self, other: &Self) -> Result<(), ChowError> {
        if self.ambient.weights() == other.ambient.weights() && self.ambient.degrees() == other.ambient.degrees() {
            Ok(())
        } else {
            Err(ChowError::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ChowError> {
        self.check(other)?;
        let c = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::new(&self.ambient, c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ChowError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.ambient, self.coefficients.iter().map(|a| a * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ChowError> {
        self.check(other)?;
        let len = self.coefficients.len();
        let mut c = vec![Rational::zero(); len];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(len - i) {
                c[i + j] += a * b;
            }
        }
        Ok(Self::new(&self.ambient, c))
    }

    /// Inverse in the truncated ring; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, ChowError> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(ChowError::NotInvertible);
        }
        let len = self.coefficients.len();
        let mut inv = vec![Rational::zero(); len];
        inv[0] = c0.recip();
        for k in 1..len {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += &self.coefficients[i] * &inv[k - i];
            }
            inv[k] = -s / &c0;
        }
        Ok(Self::new(&self.ambient, inv))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = c.abs().is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "H")?,
                1 => write!(f, "{mag}H")?,
                _ if unit => write!(f, "H^{k}")?,
                _ => write!(f, "{mag}H^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Total Chern class `∏(1 + a_i H) / ∏(1 + d_j H)` of the tangent bundle.
pub fn chern_tx(x: &WeightedCI) -> ChowClass {
    let mut num = ChowClass::one(x);
    for &a in x.weights() {
        num = num.mul(&ChowClass::linear(x, a as i64)).expect("same ambient");
    }
    let mut den = ChowClass::one(x);
    for &d in x.degrees() {
        den = den.mul(&ChowClass::linear(x, d as i64)).expect("same ambient");
    }
    num.mul(&den.inverse().expect("constant term 1")).expect("same ambient")
}

/// `c_k(I_Z) = (-1)^k (k-1)! [Z]` for a cycle of codimension `k` whose
/// degree against `H^{3-k}` is `cycle_degree`.
pub fn ideal_chern(k: u32, cycle_degree: &Rational, x: &WeightedCI) -> Result<ChowClass, ChowError> {
    if x.dim() != 3 {
        return Err(ChowError::Dimension(x.dim()));
    }
    let factorial: i64 = match k {
        2 => 1,
        3 => 2,
        other => return Err(ChowError::UnsupportedCodimension(other)),
    };
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let class = cycle_degree / x.degree();
    Ok(ChowClass::monomial(
        x,
        k as usize,
        class * rational_int(sign * factorial),
    ))
}

/// A codimension-one distribution `0 → T_F → TX → I_Z(r) → 0` on a threefold,
/// recorded by its numerical data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecDoc", into = "SpecDoc")]
pub struct DistributionSpec {
    pub variety: WeightedCI,
    pub c1_tf: i64,
    /// `ι_X - c1_tf`
    pub r: i64,
    /// `H·[C]`
    pub deg_c: Rational,
    pub len_q: u64,
    /// `H^3` coefficient of `c3(I_Z)`
    pub c3_iz: Option<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum VarietyDoc {
    Name(String),
    Wci(WeightedCI),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SpecDoc {
    variety: VarietyDoc,
    #[serde(rename = "c1_TF")]
    c1_tf: i64,
    #[serde(rename = "deg_C", with = "serde_rational")]
    deg_c: Rational,
    #[serde(rename = "len_Q", default)]
    len_q: u64,
    #[serde(
        rename = "c3_IZ",
        with = "serde_rational::option",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    c3_iz: Option<Rational>,
}

impl TryFrom<SpecDoc> for DistributionSpec {
    type Error = ChowError;
    fn try_from(doc: SpecDoc) -> Result<Self, ChowError> {
        let variety = match doc.variety {
            VarietyDoc::Name(n) => catalog(&n)?.variety,
            VarietyDoc::Wci(x) => x,
        };
        DistributionSpec::new(&variety, doc.c1_tf, doc.deg_c, doc.len_q, doc.c3_iz)
    }
}

impl From<DistributionSpec> for SpecDoc {
    fn from(s: DistributionSpec) -> Self {
        let variety = match s.variety.name() {
            Some(n) if catalog(n).is_ok_and(|e| e.variety == s.variety) => VarietyDoc::Name(n.to_string()),
            _ => VarietyDoc::Wci(s.variety),
        };
        SpecDoc {
            variety,
            c1_tf: s.c1_tf,
            deg_c: s.deg_c,
            len_q: s.len_q,
            c3_iz: s.c3_iz,
        }
    }
}

impl DistributionSpec {
    pub fn new(
        variety: &WeightedCI,
        c1_tf: i64,
        deg_c: Rational,
        len_q: u64,
        c3_iz: Option<Rational>,
    ) -> Result<Self, ChowError> {
        if variety.dim() != 3 {
            return Err(ChowError::Dimension(variety.dim()));
        }
        if deg_c.is_negative() {
            return Err(ChowError::InvalidSpec("deg_C must be nonnegative".into()));
        }
        Ok(DistributionSpec {
            variety: variety.clone(),
            c1_tf,
            r: variety.index() - c1_tf,
            deg_c,
            len_q,
            c3_iz,
        })
    }

    /// `[C]` as a multiple of `H^2`.
    pub fn curve_class(&self) -> Rational {
        &self.deg_c / self.variety.degree()
    }
}

/// How `c3` of a rank-one sheaf changes under `⊗ O(r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistRule {
    /// `c3(I(r)) = c3(I) - rH·c2(I)`, from `c_k(F⊗L) = ∑ C(1-i, k-i) c_i(F) c_1(L)^{k-i}`.
    Standard,
    /// `c3(I(r)) = c3(I) + rH·c2(I)`, the rule behind the displayed `c3` formula.
    Printed,
}

/// `c(I_Z(r))` with `c2(I_Z) = [C]` and `c3(I_Z)` as given (zero if absent).
pub fn chern_ideal_twisted(spec: &DistributionSpec, rule: TwistRule) -> ChowClass {
    let x = &spec.variety;
    let r = rational_int(spec.r);
    let c = spec.curve_class();
    let c3 = spec.c3_iz.clone().unwrap_or_default();
    let c3_twisted = match rule {
        TwistRule::Standard => c3 - &r * &c,
        TwistRule::Printed => c3 + &r * &c,
    };
    ChowClass::new(x, vec![Rational::one(), r, c, c3_twisted])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum C3Value {
    Value(#[serde(with = "serde_rational")] Rational),
    /// `c3(I_Z)` was not supplied.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionInvariants {
    /// coefficients of `H`, `H^2`, `H^3`
    #[serde(with = "serde_rational")]
    pub c1: Rational,
    #[serde(with = "serde_rational")]
    pub c2: Rational,
    pub c3: C3Value,
    /// `c2 · H` in points
    #[serde(with = "serde_rational")]
    pub c2_degree: Rational,
}

impl DistributionInvariants {
    pub fn total(&self, x: &WeightedCI) -> Result<ChowClass, ChowError> {
        let c3 = match &self.c3 {
            C3Value::Value(v) => v.clone(),
            C3Value::Unresolved => return Err(ChowError::MissingC3),
        };
        Ok(ChowClass::new(
            x,
            vec![Rational::one(), self.c1.clone(), self.c2.clone(), c3],
        ))
    }
}

/// Chern classes of `T_F` from `c(TX) = c(T_F) · c(I_Z(r))`, solved degree
/// by degree under the given twist rule.
pub fn invariants_by_elimination(spec: &DistributionSpec, rule: TwistRule) -> DistributionInvariants {
    let x = &spec.variety;
    let tx = chern_tx(x);
    let ideal = chern_ideal_twisted(spec, rule);
    let f1 = tx.coeff(1) - ideal.coeff(1);
    let f2 = tx.coeff(2) - &f1 * ideal.coeff(1) - ideal.coeff(2);
    let c3 = match spec.c3_iz {
        Some(_) => C3Value::Value(tx.coeff(3) - ideal.coeff(3) - &f1 * ideal.coeff(2) - &f2 * ideal.coeff(1)),
        None => C3Value::Unresolved,
    };
    DistributionInvariants {
        c2_degree: &f2 * x.degree(),
        c1: f1,
        c2: f2,
        c3,
    }
}

/// `c1, c2, c3` of `T_F`:
///
/// * `c1 = (ι - r) H`
/// * `c2 = c2(TX) - r ι H^2 + r^2 H^2 - [C]`
/// * `c3 = c3(TX) - c3(I_Z) + 3r H·[C] - ι H·[C] - r H·c2(TX) + r^2 ι H^3 - r^3 H^3`
pub fn distribution_invariants(spec: &DistributionSpec) -> Result<DistributionInvariants, ChowError> {
    let x = &spec.variety;
    if x.dim() != 3 {
        return Err(ChowError::Dimension(x.dim()));
    }
    let tx = chern_tx(x);
    let iota = rational_int(x.index());
    let r = rational_int(spec.r);
    let c = spec.curve_class();
    let c1 = &iota - &r;
    let c2 = tx.coeff(2) - &r * &iota + &r * &r - &c;
    let c3 = match &spec.c3_iz {
        Some(c3_iz) => C3Value::Value(
            tx.coeff(3) - c3_iz + rational_int(3) * &r * &c - &iota * &c - &r * tx.coeff(2) + &r * &r * &iota
                - &r * &r * &r,
        ),
        None => C3Value::Unresolved,
    };
    Ok(DistributionInvariants {
        c2_degree: &c2 * x.degree(),
        c1,
        c2,
        c3,
    })
}

/// `c3(T_F)`, which needs `c3(I_Z)`.
pub fn c3_tf(spec: &DistributionSpec) -> Result<Rational, ChowError> {
    match distribution_invariants(spec)?.c3 {
        C3Value::Value(v) => Ok(v),
        C3Value::Unresolved => Err(ChowError::MissingC3),
    }
}

/// The displayed `c3` expression
/// `c3(TX) - c3(I_Z) + rH·[C] - K^{-1}·[C] - rH·c2(TX) + r^2 H^2·K^{-1} - r^3 H^3`,
/// which agrees with [`invariants_by_elimination`] under [`TwistRule::Printed`].
pub fn printed_c3(spec: &DistributionSpec) -> Result<Rational, ChowError> {
    let c3_iz = spec.c3_iz.clone().ok_or(ChowError::MissingC3)?;
    let tx = chern_tx(&spec.variety);
    let iota = rational_int(spec.variety.index());
    let r = rational_int(spec.r);
    let c = spec.curve_class();
    Ok(tx.coeff(3) - c3_iz + &r * &c - &iota * &c - &r * tx.coeff(2) + &r * &r * &iota - &r * &r * &r)
}

/// `g = 1 + c2 (c1 - 3) / 2` from `ω_Γ = O_Γ(c1 - 3)` on `Q^3`, with `c2` the
/// degree of the curve `Γ`.
pub fn genus_from_dualizing(c1_tf: i64, c2_deg: &Rational) -> Rational {
    Rational::one() + c2_deg * rational_int(c1_tf - 3) / rational_int(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub h_dot_z: i64,
    /// degree of `Γ`, `4 - H·[Z]`
    pub gamma_degree: i64,
    #[serde(with = "serde_rational")]
    pub c3_iz: Rational,
    #[serde(with = "serde_rational")]
    pub g_dualizing: Rational,
    #[serde(with = "serde_rational")]
    pub g_c3: Rational,
    pub consistent: bool,
    pub note: String,
}

/// Genus of the curve `Γ` on `Q^3` (`c1(T_F) = 0`, `r = 3`) computed two
/// ways, for `H·[Z] ∈ {0, 2}`.
///
/// The first route is [`genus_from_dualizing`] with `c2 = 4 - H·[Z]`. The
/// second sets `c3(T_F) = 0` in [`printed_c3`], which gives `c3(I_Z) = -10`
/// (the `[C]` terms cancel at `r = ι`), and then uses
/// `c3(I_Z) = (2g - 2) + 3 H·[Z]`.
pub fn q3_stability_contradiction(h_dot_z: i64) -> Result<GenusReport, ChowError> {
    if h_dot_z != 0 && h_dot_z != 2 {
        return Err(ChowError::UnsupportedCase(h_dot_z));
    }
    let q3 = catalog("Q3")?.variety;
    let gamma_degree = 4 - h_dot_z;
    let g_dualizing = genus_from_dualizing(0, &rational_int(gamma_degree));
    // solve printed_c3 = 0 for c3(I_Z)
    let probe = DistributionSpec::new(&q3, 0, Rational::zero(), 0, Some(Rational::zero()))?;
    let c3_iz = printed_c3(&probe)?;
    let g_c3 = Rational::one() + (&c3_iz - rational_int(3 * h_dot_z)) / rational_int(2);
    let consistent = g_dualizing == g_c3;
    Ok(GenusReport {
        h_dot_z,
        gamma_degree,
        c3_iz,
        g_dualizing,
        g_c3,
        consistent,
        note: "curve degrees and H^2-classes are mixed as in the original argument; with deg H^3 = 2 \
               on Q^3 the two bookkeepings differ by a factor of 2"
            .into(),
    })
}

/// `(1+H)^{n+1}` truncated, for comparison with [`chern_tx`] on `P^n`.
pub fn binomial_class(x: &WeightedCI, n: u32) -> ChowClass {
    let c = (0..=n as u64 + 1)
        .map(|k| Rational::from_integer(BigInt::from(crate::exact_arith::binomial(n as u64 + 1, k as i64))))
        .collect();
    ChowClass::new(x, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{full_catalog, make_wci};

    fn q(n: i64, d: i64) -> Rational {
        crate::exact_arith::rational_from_ints(n, d)
    }

    #[test]
    fn chern_tx_examples() {
        let q3 = catalog("Q3").unwrap().variety;
        assert_eq!(chern_tx(&q3), ChowClass::from_ints(&q3, &[1, 3, 4, 2]));
        let p3 = catalog("P3").unwrap().variety;
        assert_eq!(chern_tx(&p3), ChowClass::from_ints(&p3, &[1, 4, 6, 4]));
        let x3 = catalog("X3").unwrap().variety;
        // (1+H)^5 (1 - 3H + 9H^2 - 27H^3)
        assert_eq!(chern_tx(&x3), ChowClass::from_ints(&x3, &[1, 2, 4, -2]));
        // topological Euler characteristic c3 · deg X = -6
        assert_eq!(chern_tx(&x3).degree_of(3), rational_int(-6));
    }

    #[test]
    fn c1_is_the_index() {
        for e in full_catalog() {
            assert_eq!(chern_tx(&e.variety).coeff(1), rational_int(e.index), "{}", e.key);
        }
    }

    #[test]
    fn projective_spaces() {
        for n in 1..=5u32 {
            let p = make_wci(vec![1; n as usize + 1], vec![]).unwrap();
            assert_eq!(chern_tx(&p), binomial_class(&p, n));
        }
    }

    #[test]
    fn ideal_chern_examples() {
        let q3 = catalog("Q3").unwrap().variety;
        let z = rational_int(2);
        assert_eq!(
            ideal_chern(2, &z, &q3).unwrap(),
            ChowClass::monomial(&q3, 2, rational_int(1))
        );
        assert_eq!(
            ideal_chern(3, &z, &q3).unwrap(),
            ChowClass::monomial(&q3, 3, rational_int(-2))
        );
        assert!(ideal_chern(2, &Rational::zero(), &q3).unwrap().is_zero());
        assert_eq!(ideal_chern(1, &z, &q3), Err(ChowError::UnsupportedCodimension(1)));
    }

    #[test]
    fn q3_r3_c2() {
        let q3 = catalog("Q3").unwrap().variety;
        let spec = DistributionSpec::new(&q3, 0, rational_int(3), 0, None).unwrap();
        assert_eq!(spec.r, 3);
        let inv = distribution_invariants(&spec).unwrap();
        // 4H^2 - [C], [C] = (3/2) H^2
        assert_eq!(inv.c2, rational_int(4) - q(3, 2));
        assert_eq!(inv.c3, C3Value::Unresolved);
        assert_eq!(c3_tf(&spec), Err(ChowError::MissingC3));
    }

    #[test]
    fn r_zero_recovers_tx() {
        for e in full_catalog() {
            let x = &e.variety;
            let spec = DistributionSpec::new(x, x.index(), Rational::zero(), 0, Some(Rational::zero())).unwrap();
            let inv = distribution_invariants(&spec).unwrap();
            assert_eq!(inv.total(x).unwrap(), chern_tx(x));
        }
    }

    #[test]
    fn closed_forms_match_elimination() {
        let x = catalog("X22").unwrap().variety;
        for c1 in -3..=3 {
            for deg in 0..5 {
                let spec = DistributionSpec::new(&x, c1, q(deg, 3), 1, Some(q(5 - deg, 7))).unwrap();
                assert_eq!(
                    distribution_invariants(&spec).unwrap(),
                    invariants_by_elimination(&spec, TwistRule::Standard)
                );
                let printed = invariants_by_elimination(&spec, TwistRule::Printed);
                assert_eq!(C3Value::Value(printed_c3(&spec).unwrap()), printed.c3);
            }
        }
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_from_dualizing(0, &rational_int(4)), rational_int(-5));
        assert_eq!(genus_from_dualizing(0, &rational_int(2)), rational_int(-2));
        assert_eq!(genus_from_dualizing(0, &rational_int(0)), rational_int(1));
    }

    #[test]
    fn stability_replay() {
        let a = q3_stability_contradiction(0).unwrap();
        assert_eq!(
            (a.g_dualizing.clone(), a.g_c3.clone(), a.consistent),
            (rational_int(-5), rational_int(-4), false)
        );
        assert_eq!(a.c3_iz, rational_int(-10));
        let b = q3_stability_contradiction(2).unwrap();
        assert_eq!(
            (b.g_dualizing, b.g_c3, b.consistent),
            (rational_int(-2), rational_int(-7), false)
        );
        assert_eq!(q3_stability_contradiction(1), Err(ChowError::UnsupportedCase(1)));
    }

    #[test]
    fn display() {
        let q3 = catalog("Q3").unwrap().variety;
        assert_eq!(chern_tx(&q3).to_string(), "1 + 3H + 4H^2 + 2H^3");
        assert_eq!(
            ChowClass::new(&q3, vec![Rational::zero(), q(-1, 2)]).to_string(),
            "-1/2H"
        );
    }

    #[test]
    fn spec_json() {
        let s: DistributionSpec =
            serde_json::from_str(r#"{"variety":"Q3","c1_TF":0,"deg_C":"3/2","len_Q":1,"c3_IZ":-10}"#).unwrap();
        assert_eq!(s.r, 3);
        assert_eq!(s.deg_c, q(3, 2));
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"variety":"Q3","c1_TF":0,"deg_C":"3/2","len_Q":1,"c3_IZ":-10}"#
        );
        let w: DistributionSpec =
            serde_json::from_str(r#"{"variety":{"weights":[1,1,1,1,2],"degrees":[4]},"c1_TF":1,"deg_C":2}"#).unwrap();
        assert_eq!(w.r, 1);
        assert!(serde_json::from_str::<DistributionSpec>(r#"{"variety":"P2","c1_TF":0,"deg_C":0}"#).is_err());
    }
}
