//! Which element orders occur in `Sp(2g, Z)`.
//!
//! An order `m` occurs iff the totients of the prime-power parts of `m`
//! fit in the budget `2g`, where the part `2^1` is free when `m ≡ 2 (mod 4)`.
//! Everything else here (solvability of `A^m = I`, the order set, the
//! maximal order and its closed-form upper bound) is derived from that test.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::numtheory::{
    factorize, is_prime, odd_part, Factorization, NumTheoryError, PrimePower, ALPHA,
    SHAPIRO_EXCEPTIONS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("order must be a positive integer")]
    ZeroOrder,
    #[error("m = {0}: solvability of A^m = I is only asked for m >= 2")]
    TrivialPower(u64),
    #[error("m = {0} lies in the exceptional set {SHAPIRO_EXCEPTIONS:?}")]
    Exceptional(u64),
    #[error("no element of order {m} exists in Sp({dim}, Z)")]
    NoSuchOrder { m: u64, dim: u64 },
    #[error("order exceeds 64-bit range for genus {0}")]
    Overflow(u32),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

/// Genus `g >= 1`; matrices are `2g x 2g` and the totient budget is `2g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self, CriterionError> {
        if g == 0 {
            Err(CriterionError::ZeroGenus)
        } else {
            Ok(Genus(g))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> usize {
        2 * self.0 as usize
    }

    pub fn budget(self) -> u64 {
        2 * u64::from(self.0)
    }

    /// Every prime dividing a finite order is at most `2g + 1`.
    pub fn max_prime(self) -> u64 {
        self.budget() + 1
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiTerm {
    pub prime: u64,
    pub exponent: u32,
    pub phi: u64,
}

impl PhiTerm {
    fn of(pp: &PrimePower) -> Self {
        PhiTerm {
            prime: pp.prime,
            exponent: pp.exponent,
            phi: pp.phi(),
        }
    }
}

/// The totient ledger behind an existence verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionWitness {
    pub m: u64,
    pub genus: Genus,
    /// `m ≡ 2 (mod 4)`: the factor 2 is excluded from `terms`.
    pub case_two_mod_four: bool,
    pub terms: Vec<PhiTerm>,
    pub phi_sum: u64,
    pub budget: u64,
    pub order_exists: bool,
}

pub fn burgisser_criterion(m: u64, genus: Genus) -> Result<CriterionWitness, CriterionError> {
    if m == 0 {
        return Err(CriterionError::ZeroOrder);
    }
    let case_two_mod_four = m.trailing_zeros() == 1;
    let terms: Vec<PhiTerm> = factorize(m)?
        .iter()
        .filter(|pp| !(case_two_mod_four && pp.prime == 2))
        .map(PhiTerm::of)
        .collect();
    let phi_sum = terms.iter().map(|t| t.phi).sum();
    Ok(CriterionWitness {
        m,
        genus,
        case_two_mod_four,
        terms,
        phi_sum,
        budget: genus.budget(),
        order_exists: phi_sum <= genus.budget(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolvabilityVerdict {
    pub m: u64,
    pub genus: Genus,
    pub solvable: bool,
    /// Smallest prime `p <= 2g + 1` dividing `m`.
    pub witness_prime: Option<u64>,
}

/// Whether some non-identity `A` in `Sp(2g, Z)` satisfies `A^m = I`.
///
/// This holds iff `m` has a prime factor `p <= 2g + 1`: an element of order
/// `p` exists, and conversely every prime dividing a finite order is that
/// small.
pub fn power_solvable(m: u64, genus: Genus) -> Result<SolvabilityVerdict, CriterionError> {
    if m <= 1 {
        return Err(CriterionError::TrivialPower(m));
    }
    let smallest = factorize(m)?.factors()[0].prime;
    let witness_prime = (smallest <= genus.max_prime()).then_some(smallest);
    Ok(SolvabilityVerdict {
        m,
        genus,
        solvable: witness_prime.is_some(),
        witness_prime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderSet {
    pub genus: Genus,
    pub orders: Vec<u64>,
}

impl OrderSet {
    pub fn contains(&self, m: u64) -> bool {
        self.orders.binary_search(&m).is_ok()
    }

    pub fn max(&self) -> u64 {
        *self.orders.last().expect("order set always contains 1")
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.orders.iter().copied()
    }
}

/// Per prime `p <= 2g + 1`, the prime powers whose totient fits the budget.
fn prime_power_options(genus: Genus) -> Vec<Vec<PrimePower>> {
    let budget = genus.budget();
    (2..=genus.max_prime())
        .filter(|&p| is_prime(p))
        .map(|prime| {
            (1u32..)
                .map(|exponent| PrimePower { prime, exponent })
                .take_while(|pp| {
                    pp.prime
                        .checked_pow(pp.exponent - 1)
                        .is_some_and(|q| q * (pp.prime - 1) <= budget)
                })
                .collect()
        })
        .collect()
}

/// All odd products of admissible prime powers, with their totient cost.
fn odd_products(genus: Genus) -> Result<Vec<(u64, u64)>, CriterionError> {
    let options: Vec<Vec<PrimePower>> = prime_power_options(genus)
        .into_iter()
        .filter(|opts| opts[0].prime != 2)
        .collect();
    let budget = genus.budget();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 1u64, 0u64)];
    while let Some((idx, value, cost)) = stack.pop() {
        if idx == options.len() {
            out.push((value, cost));
            continue;
        }
        stack.push((idx + 1, value, cost));
        for pp in &options[idx] {
            let c = cost + pp.phi();
            if c > budget {
                break;
            }
            let v = value
                .checked_mul(pp.value())
                .ok_or(CriterionError::Overflow(genus.get()))?;
            stack.push((idx + 1, v, c));
        }
    }
    Ok(out)
}

/// Every order realized in `Sp(2g, Z)`, ascending, including 1.
pub fn enumerate_orders(genus: Genus) -> Result<OrderSet, CriterionError> {
    let budget = genus.budget();
    let mut orders = Vec::new();
    for (odd, cost) in odd_products(genus)? {
        // 2^0 at full cost, 2^1 for free, 2^a (a >= 2) at cost 2^(a-1)
        orders.push(odd);
        orders.push(
            odd.checked_mul(2)
                .ok_or(CriterionError::Overflow(genus.get()))?,
        );
        let mut two_power = 4u64;
        while cost + two_power / 2 <= budget {
            orders.push(
                odd.checked_mul(two_power)
                    .ok_or(CriterionError::Overflow(genus.get()))?,
            );
            two_power *= 2;
        }
    }
    orders.sort_unstable();
    orders.dedup();
    Ok(OrderSet { genus, orders })
}

#[derive(Debug, Clone)]
struct Selection {
    value: u64,
    phi_sum: u64,
    parts: Vec<PrimePower>,
}

impl Selection {
    // Larger value wins, then smaller totient sum, then smaller prime list.
    fn better_than(&self, other: &Selection) -> bool {
        use std::cmp::Ordering::*;
        match self.value.cmp(&other.value) {
            Greater => true,
            Less => false,
            Equal => match self.phi_sum.cmp(&other.phi_sum) {
                Less => true,
                Greater => false,
                Equal => {
                    let a = self.parts.iter().map(|pp| pp.prime);
                    let b = other.parts.iter().map(|pp| pp.prime);
                    a.lt(b)
                }
            },
        }
    }
}

/// Group knapsack: pick at most one power of each prime, total totient
/// within `budget`, maximizing the product.
fn best_selection(
    groups: &[Vec<PrimePower>],
    budget: u64,
    genus: Genus,
) -> Result<Selection, CriterionError> {
    let width = budget as usize + 1;
    let mut best: Vec<Option<Selection>> = vec![None; width];
    best[0] = Some(Selection {
        value: 1,
        phi_sum: 0,
        parts: Vec::new(),
    });
    for group in groups {
        let mut next = best.clone();
        for (cost, slot) in best.iter().enumerate() {
            let Some(base) = slot else { continue };
            for pp in group {
                let c = cost + pp.phi() as usize;
                if c >= width {
                    break;
                }
                let value = base
                    .value
                    .checked_mul(pp.value())
                    .ok_or(CriterionError::Overflow(genus.get()))?;
                let mut parts = base.parts.clone();
                parts.push(*pp);
                let cand = Selection {
                    value,
                    phi_sum: c as u64,
                    parts,
                };
                if next[c].as_ref().is_none_or(|cur| cand.better_than(cur)) {
                    next[c] = Some(cand);
                }
            }
        }
        best = next;
    }
    let mut winner: Option<Selection> = None;
    for cand in best.into_iter().flatten() {
        if winner.as_ref().is_none_or(|w| cand.better_than(w)) {
            winner = Some(cand);
        }
    }
    Ok(winner.expect("the empty selection always fits"))
}

/// Largest order of an element of `Sp(2g, Z)` with its factorization.
pub fn max_order(genus: Genus) -> Result<(u64, Factorization), CriterionError> {
    let groups = prime_power_options(genus);
    let full = best_selection(&groups, genus.budget(), genus)?;
    let odd_groups: Vec<_> = groups.into_iter().filter(|g| g[0].prime != 2).collect();
    let odd = best_selection(&odd_groups, genus.budget(), genus)?;
    let mut doubled = odd.clone();
    doubled.value = odd
        .value
        .checked_mul(2)
        .ok_or(CriterionError::Overflow(genus.get()))?;
    doubled.parts.insert(
        0,
        PrimePower {
            prime: 2,
            exponent: 1,
        },
    );

    let winner = if doubled.better_than(&full) {
        doubled
    } else {
        full
    };
    let mut parts = winner.parts;
    parts.sort();
    Ok((winner.value, Factorization::from_parts(parts)?))
}

/// A real quantity with an exact integer value when one is available.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub approx: f64,
    pub exact: Option<BigUint>,
}

impl Bound {
    fn exact(v: BigUint) -> Self {
        Bound {
            approx: v.to_f64().unwrap_or(f64::INFINITY),
            exact: Some(v),
        }
    }

    fn approx(x: f64) -> Self {
        Bound {
            approx: x,
            exact: None,
        }
    }

    fn max(self, other: Bound) -> Bound {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => {
                if a >= b {
                    self
                } else {
                    other
                }
            }
            _ => {
                if self.approx >= other.approx {
                    self
                } else {
                    other
                }
            }
        }
    }

    /// Whether `m` does not exceed this bound.
    pub fn admits(&self, m: u64) -> bool {
        match &self.exact {
            Some(v) => BigUint::from(m) <= *v,
            None => (m as f64) <= self.approx,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(v) => write!(f, "{v}"),
            None => f.write_str(&format_significant(self.approx, 12)),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Bound", 3)?;
        st.serialize_field("value", &self.to_string())?;
        st.serialize_field("approx", &self.approx)?;
        st.serialize_field("exact", &self.exact.is_some())?;
        st.end()
    }
}

/// Rounds to `digits` significant digits, switching to scientific notation
/// once the integer part alone would need more digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() || x == 0.0 {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if magnitude >= digits as i32 || magnitude < -4 {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub genus: Genus,
    pub alpha: f64,
    /// `2 (2g)^(g/α)`
    pub two_mod_four_term: Bound,
    /// `(2g)^((g+1)/α)`
    pub general_term: Bound,
    #[serde(rename = "M")]
    pub m_value: Bound,
    /// `max{30, M}`
    pub analytic_bound: Bound,
    pub exact_max_order: u64,
    pub witness_factorization: Factorization,
}

/// The closed-form order bound `max{30, M}`, `M = max{2(2g)^(g/α),
/// (2g)^((g+1)/α)}`, next to the exact maximal order.
///
/// When `2g = 2^t` we have `(2g)^(1/α) = 3^t`, so both terms are integers.
pub fn order_bound(genus: Genus) -> Result<BoundReport, CriterionError> {
    let g = genus.get();
    let two_g = genus.budget();
    let (two_mod_four_term, general_term) = if two_g.is_power_of_two() {
        let t = two_g.trailing_zeros();
        let three = BigUint::from(3u32);
        (
            Bound::exact(three.pow(t * g) * 2u32),
            Bound::exact(three.pow(t * (g + 1))),
        )
    } else {
        let ln = (two_g as f64).ln();
        (
            Bound::approx(2.0 * (f64::from(g) / ALPHA * ln).exp()),
            Bound::approx((f64::from(g + 1) / ALPHA * ln).exp()),
        )
    };
    let m_value = two_mod_four_term.clone().max(general_term.clone());
    let analytic_bound = Bound::exact(BigUint::from(30u32)).max(m_value.clone());
    let (exact_max_order, witness_factorization) = max_order(genus)?;
    Ok(BoundReport {
        genus,
        alpha: ALPHA,
        two_mod_four_term,
        general_term,
        m_value,
        analytic_bound,
        exact_max_order,
        witness_factorization,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumLowerBound {
    pub m: u64,
    pub genus: Genus,
    pub case_two_mod_four: bool,
    /// `m` in the general case, the odd part of `m` when `m ≡ 2 (mod 4)`.
    pub base: u64,
    /// The applicable totient sum.
    pub sum: u64,
    /// `m^(α/(g+1))`, or `n^(α/g)` with `n = m/2`.
    pub lower: f64,
}

impl SumLowerBound {
    pub fn holds(&self) -> bool {
        self.sum as f64 > self.lower
    }
}

/// The totient sum from the criterion together with its AM-GM lower bound.
pub fn phi_sum_lower_bounds(m: u64, genus: Genus) -> Result<SumLowerBound, CriterionError> {
    if SHAPIRO_EXCEPTIONS.contains(&m) {
        return Err(CriterionError::Exceptional(m));
    }
    let witness = burgisser_criterion(m, genus)?;
    if !witness.order_exists {
        return Err(CriterionError::NoSuchOrder {
            m,
            dim: genus.budget(),
        });
    }
    let g = f64::from(genus.get());
    let (base, lower) = if witness.case_two_mod_four {
        let n = odd_part(m);
        (n, (n as f64).powf(ALPHA / g))
    } else {
        (m, (m as f64).powf(ALPHA / (g + 1.0)))
    };
    debug_assert!(!witness.case_two_mod_four || witness.terms.iter().all(|t| t.prime != 2));
    Ok(SumLowerBound {
        m,
        genus,
        case_two_mod_four: witness.case_two_mod_four,
        base,
        sum: witness.phi_sum,
        lower,
    })
}
