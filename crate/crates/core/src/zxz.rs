//! `ℤ × ℤ` with the divisibility relation `∣` and the existential encoding
//! of multiplication through three divisibility conditions.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZxZ {
    pub a: i64,
    pub b: i64,
}

impl ZxZ {
    pub const fn new(a: i64, b: i64) -> Self {
        ZxZ { a, b }
    }
}

impl Add for ZxZ {
    type Output = ZxZ;
    fn add(self, rhs: ZxZ) -> ZxZ {
        ZxZ::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for ZxZ {
    type Output = ZxZ;
    fn sub(self, rhs: ZxZ) -> ZxZ {
        ZxZ::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for ZxZ {
    type Output = ZxZ;
    fn neg(self) -> ZxZ {
        ZxZ::new(-self.a, -self.b)
    }
}

impl Mul<ZxZ> for i64 {
    type Output = ZxZ;
    fn mul(self, rhs: ZxZ) -> ZxZ {
        ZxZ::new(self * rhs.a, self * rhs.b)
    }
}

/// `d₁ ∣ d₂` iff `d₂ = r·d₁` for some integer `r`.
pub fn mid(d1: ZxZ, d2: ZxZ) -> bool {
    let r = if d1.a != 0 {
        if d2.a % d1.a != 0 {
            return false;
        }
        d2.a / d1.a
    } else if d1.b != 0 {
        if d2.b % d1.b != 0 {
            return false;
        }
        d2.b / d1.b
    } else {
        return d2 == ZxZ::new(0, 0);
    };
    d2 == r * d1
}

/// The three conditions on `X`:
/// `(1,1) ∣ X`, `(-1,1) ∣ X - 2(b,0)` and `2(a,0) + (1,1) ∣ X + 2(c,0)`.
pub fn relations(a: i64, b: i64, c: i64, x: ZxZ) -> [bool; 3] {
    [
        mid(ZxZ::new(1, 1), x),
        mid(ZxZ::new(-1, 1), x - 2 * ZxZ::new(b, 0)),
        mid(2 * ZxZ::new(a, 0) + ZxZ::new(1, 1), x + 2 * ZxZ::new(c, 0)),
    ]
}

/// Left-hand sides of the three conditions.
pub fn relation_templates(a: i64) -> [ZxZ; 3] {
    [ZxZ::new(1, 1), ZxZ::new(-1, 1), 2 * ZxZ::new(a, 0) + ZxZ::new(1, 1)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulInstance {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub witness: Option<ZxZ>,
}

impl MulInstance {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

/// Decides whether some `X` satisfies all three conditions. The first forces
/// `X = (x, x)`, the second then forces `x = b`, so only `(b, b)` needs to be
/// tested against the third.
pub fn mul_holds(a: i64, b: i64, c: i64) -> MulInstance {
    let x = ZxZ::new(b, b);
    let witness = relations(a, b, c, x).iter().all(|&r| r).then_some(x);
    MulInstance { a, b, c, witness }
}

/// All `X` with `|x₁|, |x₂| ≤ m` satisfying the three conditions.
pub fn brute_force_witnesses(a: i64, b: i64, c: i64, m: i64) -> Vec<ZxZ> {
    let mut out = Vec::new();
    for x1 in -m..=m {
        for x2 in -m..=m {
            let x = ZxZ::new(x1, x2);
            if relations(a, b, c, x).iter().all(|&r| r) {
                out.push(x);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingReport {
    pub range: i64,
    pub search_box: i64,
    pub triples: usize,
    pub true_products: usize,
    /// Triples where `mul_holds` disagrees with `c = ab`.
    pub decision_mismatches: usize,
    /// Triples with `c = ab` where the box search found no witness.
    pub missed_witnesses: usize,
    /// Triples with `c ≠ ab` where the box search found a witness.
    pub spurious_witnesses: usize,
    /// Whether every witness found by the box search was `(b, b)`.
    pub witnesses_are_diagonal: bool,
    /// Whether every condition's left-hand side has odd first component.
    pub templates_odd: bool,
    pub first_counterexample: Option<(i64, i64, i64)>,
}

impl EncodingReport {
    pub fn discrepancies(&self) -> usize {
        self.decision_mismatches + self.missed_witnesses + self.spurious_witnesses
    }

    pub fn pass(&self) -> bool {
        self.discrepancies() == 0 && self.witnesses_are_diagonal && self.templates_odd
    }
}

/// Default box for the brute-force search.
pub fn default_box(range: i64) -> i64 {
    3 * range + 5
}

/// Compares `mul_holds` with `c = ab` and with a box search over
/// `|x₁|, |x₂| ≤ search_box`, for all `|a|, |b|, |c| ≤ range`.
pub fn verify_encoding(exec: Execution, range: i64, search_box: i64) -> EncodingReport {
    let side = (2 * range + 1) as usize;
    let triple = |i: usize| {
        let a = (i / (side * side)) as i64 - range;
        let b = ((i / side) % side) as i64 - range;
        let c = (i % side) as i64 - range;
        (a, b, c)
    };
    let rows = par::map_range(exec, side * side * side, |i| {
        let (a, b, c) = triple(i);
        let truth = a * b == c;
        let decided = mul_holds(a, b, c).holds();
        let found = brute_force_witnesses(a, b, c, search_box);
        let diagonal = found.iter().all(|&x| x == ZxZ::new(b, b));
        let odd = relation_templates(a).iter().all(|t| t.a.rem_euclid(2) == 1);
        (truth, decided != truth, truth && found.is_empty(), !truth && !found.is_empty(), diagonal, odd)
    });
    let mut report = EncodingReport {
        range,
        search_box,
        triples: rows.len(),
        true_products: 0,
        decision_mismatches: 0,
        missed_witnesses: 0,
        spurious_witnesses: 0,
        witnesses_are_diagonal: true,
        templates_odd: true,
        first_counterexample: None,
    };
    for (i, &(truth, mismatch, missed, spurious, diagonal, odd)) in rows.iter().enumerate() {
        report.true_products += truth as usize;
        report.decision_mismatches += mismatch as usize;
        report.missed_witnesses += missed as usize;
        report.spurious_witnesses += spurious as usize;
        report.witnesses_are_diagonal &= diagonal;
        report.templates_odd &= odd;
        if (mismatch || missed || spurious || !diagonal) && report.first_counterexample.is_none() {
            report.first_counterexample = Some(triple(i));
        }
    }
    report
}
