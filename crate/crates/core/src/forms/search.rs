//! Bounded search for isotropy witnesses with small integer coordinates.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{DiagonalForm, IsotropyVerdict};
use crate::fields::{ConstField, Polynomial, Rational, RationalFunction, TruncatedLaurent};
use crate::par::{self, Execution};

/// Fields in which a constant vector `x ∈ ℚⁿ` zeroes `Σ aᵢxᵢ²` exactly when
/// a finite set of linear equations in the `xᵢ²` hold.
pub trait ConstantCoordinates: ConstField {
    /// One row per basis element (a power of `T`, of `Z`, …), one column per
    /// entry: `Σ aᵢxᵢ² = 0 ⟺ M·(x₁²,…,xₙ²) = 0`.
    fn coefficient_rows(entries: &[Self]) -> Vec<Vec<Rational>>;
}

impl ConstantCoordinates for Rational {
    fn coefficient_rows(entries: &[Self]) -> Vec<Vec<Rational>> {
        vec![entries.to_vec()]
    }
}

impl ConstantCoordinates for TruncatedLaurent {
    fn coefficient_rows(entries: &[Self]) -> Vec<Vec<Rational>> {
        let cap = entries.iter().filter_map(TruncatedLaurent::precision).min();
        let mut exps: Vec<i64> = entries
            .iter()
            .flat_map(|a| a.terms().map(|(e, _)| e).collect::<Vec<_>>())
            .filter(|&e| cap.is_none_or(|c| e < c))
            .collect();
        exps.sort_unstable();
        exps.dedup();
        exps.iter()
            .map(|&e| entries.iter().map(|a| a.coeff(e).unwrap_or_else(<Rational as ConstField>::zero)).collect())
            .collect()
    }
}

impl ConstantCoordinates for RationalFunction<Rational> {
    fn coefficient_rows(entries: &[Self]) -> Vec<Vec<Rational>> {
        let mut den = Polynomial::<Rational>::constant(<Rational as ConstField>::one());
        for a in entries {
            let g = den.gcd(a.den()).expect("nonzero denominators");
            den = den.mul_ref(&a.den().div_rem(&g).expect("gcd divides").0);
        }
        let nums: Vec<Polynomial<Rational>> = entries
            .iter()
            .map(|a| a.num().mul_ref(&den.div_rem(a.den()).expect("divides").0))
            .collect();
        let deg = nums.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        (0..=deg)
            .map(|k| nums.iter().map(|p| p.coeff(k).cloned().unwrap_or_else(<Rational as ConstField>::zero)).collect())
            .collect()
    }
}

trait SearchInt: Clone + Send + Sync + Integer + Signed + Roots + ToPrimitive + From<i64> {}
impl<N: Clone + Send + Sync + Integer + Signed + Roots + ToPrimitive + From<i64>> SearchInt for N {}

/// Rows scaled to integers, with all-zero rows dropped.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            r.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect()
}

/// Columns grouped into classes linked by shared nonzero rows.
fn components(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for r in rows {
        let cols: Vec<usize> = (0..n).filter(|&j| !r[j].is_zero()).collect();
        for w in cols.windows(2) {
            let (a, b) = (root(&mut parent, w[0]), root(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for j in 0..n {
        let r = root(&mut parent, j);
        if index[r] == usize::MAX {
            index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[r]].push(j);
    }
    groups
}

fn search_component<N: SearchInt>(rows: &[Vec<N>], bound: u64, exec: Execution) -> Option<Vec<u64>> {
    let k = rows[0].len();
    if k < 2 {
        return None;
    }
    let pivot = rows.iter().position(|r| !r[k - 1].is_zero())?;
    let b = bound as usize;
    let check = |prefix: &[u64]| -> Option<u64> {
        if prefix.iter().all(|&x| x == 0) {
            return None;
        }
        let sq: Vec<N> = prefix
            .iter()
            .map(|&x| {
                let x = N::from(x as i64);
                x.clone() * x
            })
            .collect();
        let row = &rows[pivot];
        let s = sq.iter().zip(row).fold(N::zero(), |acc, (x, c)| acc + x.clone() * c.clone());
        let c = row[k - 1].clone();
        let (q, r) = (N::zero() - s).div_rem(&c);
        if !r.is_zero() || q.is_negative() {
            return None;
        }
        let z = q.sqrt();
        if z.clone() * z.clone() != q || z > N::from(bound as i64) {
            return None;
        }
        let ok = rows.iter().all(|row| {
            let s = sq.iter().zip(row).fold(N::zero(), |acc, (x, c)| acc + x.clone() * c.clone());
            (s + q.clone() * row[k - 1].clone()).is_zero()
        });
        if !ok {
            return None;
        }
        z.to_u64()
    };
    let found = par::find_first(exec, b + 1, |x0| {
        let mut prefix = vec![0u64; k - 1];
        prefix[0] = x0 as u64;
        loop {
            if let Some(z) = check(&prefix) {
                let mut out = prefix.clone();
                out.push(z);
                return Some(out);
            }
            let mut i = k - 2;
            loop {
                if i == 0 {
                    return None;
                }
                if prefix[i] < bound {
                    prefix[i] += 1;
                    break;
                }
                prefix[i] = 0;
                i -= 1;
            }
        }
    });
    found.map(|(_, v)| v)
}

fn fits_i128(rows: &[Vec<BigInt>], bound: u64) -> bool {
    let max = rows.iter().flatten().map(|c| c.abs()).max().unwrap_or_default();
    let width = rows.first().map_or(0, Vec::len) as u64 + 1;
    let b = BigInt::from(bound) + 1u32;
    max * width * &b * &b < BigInt::one() << 100
}

/// Searches for a nonzero vector with nonnegative integer coordinates of
/// height at most `bound` on which the form vanishes. Coordinates are
/// constants even over function fields. `isotropic == false` only means that
/// nothing was found within the bound.
pub fn witness_search<E: ConstantCoordinates>(form: &DiagonalForm<E>, bound: u64) -> IsotropyVerdict<E> {
    witness_search_with(Execution::default(), form, bound)
}

pub fn witness_search_with<E: ConstantCoordinates>(
    exec: Execution,
    form: &DiagonalForm<E>,
    bound: u64,
) -> IsotropyVerdict<E> {
    let n = form.dim();
    let rows = integer_rows(&E::coefficient_rows(form.entries()));
    if bound == 0 || rows.is_empty() {
        return IsotropyVerdict::anisotropic();
    }
    for cols in components(&rows, n) {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&j| r[j].clone()).collect::<Vec<_>>())
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        if sub.is_empty() {
            continue;
        }
        let hit = if fits_i128(&sub, bound) {
            let small: Vec<Vec<i128>> = sub
                .iter()
                .map(|r| r.iter().map(|c| i128::try_from(c).expect("checked")).collect())
                .collect();
            search_component(&small, bound, exec)
        } else {
            search_component(&sub, bound, exec)
        };
        if let Some(xs) = hit {
            let mut w = vec![E::zero(); n];
            for (&j, &x) in cols.iter().zip(&xs) {
                w[j] = E::from_int(x as i64);
            }
            return IsotropyVerdict::with_witness(w);
        }
    }
    IsotropyVerdict::anisotropic()
}
