//! Exact evaluators for the closed-form bounds, plus a registry of cited
//! binding functions.
//!
//! Values are arbitrary-precision integers: the biclique bound is already
//! above `2^10000` at the smallest legal parameters.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("unknown bound '{0}'")]
    Unknown(String),
    #[error("parameter out of range for {bound}: {reason}")]
    Domain { bound: &'static str, reason: String },
}

fn domain(bound: &'static str, reason: &str) -> BoundError {
    BoundError::Domain { bound, reason: reason.to_string() }
}

/// An exact nonnegative integer with a floating `log2` for display.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub value: BigUint,
    pub log2_hint: f64,
}

impl BoundValue {
    pub fn new(value: BigUint) -> Self {
        let log2_hint = log2(&value);
        BoundValue { value, log2_hint }
    }

    pub fn from_u64(v: u64) -> Self {
        BoundValue::new(BigUint::from(v))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    /// Decimal digits, truncated to `max_digits` with an ellipsis and the
    /// total digit count when longer.
    pub fn to_decimal_capped(&self, max_digits: usize) -> String {
        let s = self.value.to_str_radix(10);
        if s.len() <= max_digits {
            s
        } else {
            format!("{}...({} digits)", &s[..max_digits], s.len())
        }
    }

    /// A compact rendering for reports: the exact value when short,
    /// otherwise `~2^x`.
    pub fn short(&self) -> String {
        if self.value.bits() <= 64 {
            self.value.to_string()
        } else {
            format!("~2^{:.2}", self.log2_hint)
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for BoundValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.value.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.short()),
        }
    }
}

/// `log2(v)` from the top 64 bits; `-inf` for zero.
pub fn log2(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return (v.to_u64().expect("fits") as f64).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("64 bits");
    (top as f64).log2() + shift as f64
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * big(i))
}

/// `sum_{i=from}^{to} t^i`.
fn power_sum(t: u64, from: u32, to: u32) -> BigUint {
    (from..=to).fold(BigUint::zero(), |acc, i| acc + big(t).pow(i))
}

/// Erdős–Szekeres: `R(s, t) <= C(s + t - 2, t - 1)`.
pub fn ramsey_upper(s: u64, t: u64) -> Result<BoundValue, BoundError> {
    if s < 1 || t < 1 {
        return Err(domain("ramsey_upper", "need s, t >= 1"));
    }
    Ok(BoundValue::new(binomial(s + t - 2, t - 1)))
}

/// Which published bound produced a [`phi_upper`] value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiBranch {
    /// `phi(3, w) <= floor(5(w - 1)/2) + 1`.
    TriangleClaim,
    /// `phi(n, w) <= C(n, 2)(w - 2) + n` for `n > 3`, `w > 1`.
    GeneralClaim,
    /// `phi(n, w) <= C(n, 2)(w - 1) + n`.
    Unified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiBound {
    pub value: BoundValue,
    pub branch: PhiBranch,
}

/// Upper bound on the `C4`-free Ramsey number `phi(n, w)`, using the
/// tightest applicable published branch.
pub fn phi_upper(n: u64, w: u64) -> Result<PhiBound, BoundError> {
    if n < 3 || w < 1 {
        return Err(domain("phi_upper", "need n >= 3 and w >= 1"));
    }
    if n == 3 {
        let v = 5 * (w - 1) / 2 + 1;
        return Ok(PhiBound { value: BoundValue::from_u64(v), branch: PhiBranch::TriangleClaim });
    }
    if w > 1 {
        let v = binomial(n, 2) * big(w - 2) + big(n);
        return Ok(PhiBound { value: BoundValue::new(v), branch: PhiBranch::GeneralClaim });
    }
    Ok(PhiBound { value: phi_unified(n, w)?, branch: PhiBranch::Unified })
}

/// `C(n, 2)(w - 1) + n`, valid for all `n >= 3`, `w >= 1`.
pub fn phi_unified(n: u64, w: u64) -> Result<BoundValue, BoundError> {
    if n < 3 || w < 1 {
        return Err(domain("phi_unified", "need n >= 3 and w >= 1"));
    }
    Ok(BoundValue::new(binomial(n, 2) * big(w - 1) + big(n)))
}

/// `(sum_{i<p} t^i)(s + t(2t + 9)) + t^p q`: the colouring bound for graphs
/// with no `(p, t)`-balloon of value `>= q` and no `t`-biclique of value `s`.
pub fn mgun_bound(p: u64, q: u64, s: u64, t: u64) -> Result<BoundValue, BoundError> {
    if p < 1 || q < 1 || s < 1 || t < 1 {
        return Err(domain("mgun_bound", "need p, q, s, t >= 1"));
    }
    Ok(BoundValue::new(mgun_big(p, &big(q), &big(s), t)))
}

fn mgun_big(p: u64, q: &BigUint, s: &BigUint, t: u64) -> BigUint {
    let geometric = power_sum(t, 0, p as u32 - 1);
    geometric * (s + big(t * (2 * t + 9))) + big(t).pow(p as u32) * q
}

/// Polynomial bound for `K_d(t)`-subgraph-free members with a forbidden
/// broom-like tree, by recursion on `d`: `t - 1` at `d = 1`, otherwise
/// `(sum_{i<p} t^i)(g + 1 + t(2t + 9)) + t^p (C(t,2)(dt - 1) + t + 2)`
/// with `g` the value at `d - 1`.
pub fn theorem_f(p: u64, t: u64, d: u64) -> Result<BoundValue, BoundError> {
    if p < 2 || t < 3 || d < 1 {
        return Err(domain("theorem_f", "need p >= 2, t >= 3, d >= 1"));
    }
    let balloon = |d: u64| binomial(t, 2) * big(d * t - 1) + big(t + 2);
    Ok(BoundValue::new(recursive_bound(p, t, d, &balloon)))
}

/// The same recursion with the balloon term replaced by `dt + 2`, for the
/// two-arm-star-free variant.
pub fn theorem_f_two_arm(p: u64, t: u64, d: u64) -> Result<BoundValue, BoundError> {
    if p < 1 || t < 5 || d < 1 {
        return Err(domain("theorem_f_two_arm", "need p >= 1, t >= 5, d >= 1"));
    }
    let balloon = |d: u64| big(d * t + 2);
    Ok(BoundValue::new(recursive_bound(p, t, d, &balloon)))
}

fn recursive_bound(p: u64, t: u64, d: u64, balloon: &dyn Fn(u64) -> BigUint) -> BigUint {
    let mut g = big(t - 1);
    for level in 2..=d {
        let s = g + BigUint::one();
        g = mgun_big(p, &balloon(level), &s, t);
    }
    g
}

/// `2 + (sum_{i=0}^{p} t^{i+2})^{(p+3)! * sum_{i=0}^{p} t^i}`.
pub fn biclique_value_bound(p: u64, t: u64) -> Result<BoundValue, BoundError> {
    if p < 2 || t < 3 {
        return Err(domain("biclique_value_bound", "need p >= 2 and t >= 3"));
    }
    Ok(BoundValue::new(big(2) + biclique_power(p, t)))
}

fn biclique_power(p: u64, t: u64) -> BigUint {
    let base = power_sum(t, 2, p as u32 + 2);
    let exponent = factorial(p + 3) * power_sum(t, 0, p as u32);
    base.pow(exponent.to_u32().expect("exponent fits in u32"))
}

/// `(h * zeta * t)^c` with `c = (eta + 3)! * h`: the degeneracy bound for
/// graphs excluding a rooted tree of order `h`, height `<= eta`, spread
/// `<= zeta`, and `K_{t,t}` as a subgraph.
pub fn degeneracy_bound(h: u64, zeta: u64, t: u64, eta: u64) -> Result<BoundValue, BoundError> {
    if h < 1 || zeta < 2 || t < 1 || eta < 1 {
        return Err(domain("degeneracy_bound", "need h >= 1, zeta >= 2, t >= 1, eta >= 1"));
    }
    let c = factorial(eta + 3) * big(h);
    let c = c.to_u32().ok_or_else(|| domain("degeneracy_bound", "exponent too large"))?;
    Ok(BoundValue::new(big(h * zeta * t).pow(c)))
}

/// Linear-in-`w` bound for `K_3(t)`-subgraph-free members:
/// `(sum_{i<p} t^i)(biclique bound + t(2t + 9)) + t^p (phi(t, w) + 2)`.
pub fn k3t_total_bound(p: u64, t: u64, w: u64) -> Result<(BoundValue, PhiBranch), BoundError> {
    if p < 2 || t < 3 || w < 1 {
        return Err(domain("k3t_total_bound", "need p >= 2, t >= 3, w >= 1"));
    }
    let phi = phi_upper(t, w)?;
    let s = biclique_value_bound(p, t)?.value;
    let q = phi.value.value + big(2);
    Ok((BoundValue::new(mgun_big(p, &q, &s, t)), phi.branch))
}

/// What a registered bound is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundArgument {
    CliqueNumber,
    Degeneracy,
}

/// How `chi` must relate to the evaluated bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    Equal,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRegistryEntry {
    pub name: &'static str,
    pub argument: BoundArgument,
    pub relation: Relation,
    /// The forbidden induced subgraphs of the class the bound is stated for,
    /// as pattern strings.
    pub class: &'static [&'static str],
    pub citation: &'static str,
    #[serde(skip)]
    evaluator: fn(u64) -> u64,
}

impl BoundRegistryEntry {
    pub fn evaluate(&self, arg: u64) -> u64 {
        (self.evaluator)(arg)
    }

    /// Whether `chi` satisfies the bound at `arg`.
    pub fn holds(&self, chi: u64, arg: u64) -> bool {
        let bound = self.evaluate(arg);
        match self.relation {
            Relation::AtMost => chi <= bound,
            Relation::Equal => chi == bound,
        }
    }
}

static REGISTRY: &[BoundRegistryEntry] = &[
    BoundRegistryEntry {
        name: "degeneracy_plus_one",
        argument: BoundArgument::Degeneracy,
        relation: Relation::AtMost,
        class: &[],
        citation: "chi(G) <= degeneracy(G) + 1 (greedy colouring along a degeneracy order)",
        evaluator: |d| d + 1,
    },
    BoundRegistryEntry {
        name: "p4free_equality",
        argument: BoundArgument::CliqueNumber,
        relation: Relation::Equal,
        class: &["P4"],
        citation: "P4-free graphs (cographs) are perfect: chi(G) = omega(G) (Seinsche)",
        evaluator: |w| w,
    },
    BoundRegistryEntry {
        name: "brause_p5c4",
        argument: BoundArgument::CliqueNumber,
        relation: Relation::AtMost,
        class: &["P5", "C4"],
        citation: "(P5, C4)-free graphs: chi(G) <= ceil((5 omega(G) - 1) / 4) (Brause et al.)",
        evaluator: |w| (5 * w).saturating_sub(1).div_ceil(4),
    },
    BoundRegistryEntry {
        name: "cameron_p6diamond",
        argument: BoundArgument::CliqueNumber,
        relation: Relation::AtMost,
        class: &["P6", "diamond"],
        citation: "(P6, diamond)-free graphs: chi(G) <= omega(G) + 3 (Cameron, Huang, Merkel)",
        evaluator: |w| w + 3,
    },
    BoundRegistryEntry {
        name: "chudnovsky_c4_2broom",
        argument: BoundArgument::CliqueNumber,
        relation: Relation::AtMost,
        class: &["C4", "broom:t=2,k=1"],
        citation: "(C4, 2-broom)-free graphs: chi(G) <= 3 omega(G) / 2 (Chudnovsky et al.)",
        evaluator: |w| 3 * w / 2,
    },
];

pub fn registry() -> &'static [BoundRegistryEntry] {
    REGISTRY
}

pub fn registry_lookup(name: &str) -> Result<&'static BoundRegistryEntry, BoundError> {
    REGISTRY.iter().find(|e| e.name == name).ok_or_else(|| BoundError::Unknown(name.to_string()))
}
