//! Divisor differences. `D*_n` holds `|a − b|` over factorizations
//! `n = ab`, `D⁺_n` the sums of two (possibly equal) nonzero members of
//! `D*_n`, and `n` has the Δ property when the two sets meet. These are the
//! multiplicities a triangle of equal multiplicities can carry in a factor
//! graph.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn d_star(n: u64) -> BTreeSet<u64> {
    divisors(n).into_iter().map(|a| a.abs_diff(n / a)).collect()
}

pub fn d_plus(n: u64) -> BTreeSet<u64> {
    let nz: Vec<u64> = d_star(n).into_iter().filter(|&x| x > 0).collect();
    let mut out = BTreeSet::new();
    for (i, &x) in nz.iter().enumerate() {
        for &y in &nz[i..] {
            out.insert(x + y);
        }
    }
    out
}

/// Membership straight from the two sets.
pub fn has_delta_raw(n: u64) -> bool {
    let plus = d_plus(n);
    d_star(n).iter().any(|x| plus.contains(x))
}

/// Least `(x, y, z)` with `1 < x < y ≤ z < √n`, all dividing `n`, and
/// `n/x − x = (n/y − y) + (n/z − z)`.
pub fn delta_witness(n: u64) -> Option<(u64, u64, u64)> {
    let ds: Vec<u64> = divisors(n).into_iter().filter(|&d| d > 1 && d * d < n).collect();
    for (i, &x) in ds.iter().enumerate() {
        let target = n / x - x;
        for (j, &y) in ds.iter().enumerate().skip(i + 1) {
            let gy = n / y - y;
            for &z in &ds[j..] {
                if gy + (n / z - z) == target {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn has_delta(n: u64) -> bool {
    delta_witness(n).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaCertificate {
    pub n: u64,
    pub member: bool,
    pub witness: Option<[u64; 3]>,
    pub primitive: Option<bool>,
    /// `(α, m)` with `n = α² m` and `m` primitive.
    pub decomposition: Option<(u64, u64)>,
}

pub fn certificate(n: u64) -> DeltaCertificate {
    let witness = delta_witness(n).map(|(x, y, z)| [x, y, z]);
    let member = witness.is_some();
    let decomposition = primitive_decomposition(n).ok();
    DeltaCertificate {
        n,
        member,
        witness,
        primitive: member.then(|| decomposition.is_some_and(|(a, _)| a == 1)),
        decomposition,
    }
}

/// A member not of the form `α² m` with `α ≥ 2` and `m` a member.
pub fn is_delta_primitive(n: u64) -> bool {
    primitive_decomposition(n).is_ok_and(|(a, _)| a == 1)
}

/// Largest `α` with `n / α²` a member; the quotient is then primitive.
pub fn primitive_decomposition(n: u64) -> Result<(u64, u64)> {
    if !has_delta(n) {
        return Err(Error::NotDelta(n));
    }
    let mut alpha = n.isqrt();
    while alpha > 1 {
        if n.is_multiple_of(alpha * alpha) && has_delta(n / (alpha * alpha)) {
            break;
        }
        alpha -= 1;
    }
    Ok((alpha, n / (alpha * alpha)))
}

/// `n(x) = (ax + b)(2ax + c)(αx + β)` with `α = 3a/(2b − c)` and
/// `β = (2c − b)/(2b − c)`. For `x ≥ n0` the first two factors give a
/// witness with `y = z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorPolynomial {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub alpha: i64,
    pub beta: i64,
    pub n0: u64,
}

impl GeneratorPolynomial {
    pub fn factors(&self, x: i64) -> [i128; 3] {
        let x = x as i128;
        [
            self.a as i128 * x + self.b as i128,
            2 * self.a as i128 * x + self.c as i128,
            self.alpha as i128 * x + self.beta as i128,
        ]
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.factors(x).iter().product()
    }

    /// `(x, y, z)` divisor triple at `x`, when the ordering conditions hold.
    pub fn witness(&self, x: i64) -> Option<(u64, u64, u64)> {
        let [f1, f2, _] = self.factors(x);
        let n = self.eval(x);
        (1 < f1 && f1 < f2 && f2 * f2 < n).then_some((f1 as u64, f2 as u64, f2 as u64))
    }
}

/// Coefficients of `p(x) = Σ coef[i] x^i` as a product of linear factors.
fn poly_mul(p: &[i128], q: &[i128]) -> Vec<i128> {
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, &x) in p.iter().enumerate() {
        for (j, &y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Every real root lies below `1 + max |coef[i] / lead|`.
fn cauchy_bound(p: &[i128]) -> i128 {
    let lead = p.last().unwrap().abs();
    1 + p[..p.len() - 1].iter().map(|c| (c.abs() + lead - 1) / lead).max().unwrap_or(0)
}

pub fn generator_polynomial(a: i64, b: i64, c: i64) -> Result<GeneratorPolynomial> {
    let reject = |why: &str| Err(Error::GeneratorRejected(format!("({a}, {b}, {c}): {why}")));
    if a <= 0 {
        return reject("a must be positive");
    }
    let den = 2 * b - c;
    if den == 0 {
        return reject("2b - c is zero");
    }
    if (3 * a) % den != 0 || (2 * c - b) % den != 0 {
        return reject("2b - c does not divide gcd(3a, 2c - b)");
    }
    let alpha = 3 * a / den;
    if alpha <= 0 {
        return reject("3a / (2b - c) is not positive");
    }
    let beta = (2 * c - b) / den;
    let (a1, b1, c1) = (a as i128, b as i128, c as i128);
    let n = poly_mul(&poly_mul(&[b1, a1], &[c1, 2 * a1]), &[beta as i128, alpha as i128]);
    let f2sq = poly_mul(&[c1, 2 * a1], &[c1, 2 * a1]);
    let gap: Vec<i128> = (0..4).map(|i| n[i] - f2sq.get(i).copied().unwrap_or(0)).collect();
    // past every root of the three conditions they stay true
    let bound = [cauchy_bound(&[b1 - 1, a1]), cauchy_bound(&[c1 - b1, a1]), cauchy_bound(&gap)]
        .into_iter()
        .max()
        .unwrap();
    let mut g = GeneratorPolynomial { a, b, c, alpha, beta, n0: 1 };
    let mut n0 = 1;
    for x in 1..=bound as i64 {
        if g.witness(x).is_none() {
            n0 = x as u64 + 1;
        }
    }
    g.n0 = n0;
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonDeltaTag {
    /// `2k` with `k` odd.
    TwoTimesOdd,
    /// `pk` with `p` prime and `p ≥ 2k − 1`.
    LargePrimeFactor,
    PrimePower,
    /// `pq` with distinct primes.
    Pq,
    /// `pq²` with distinct primes.
    PqSquared,
    /// `p²q²` with distinct primes.
    PSquaredQSquared,
    /// `p^x q^y` with `y ≥ 2` and `q > p^x`.
    DominantSquareFactor,
    /// `p^k q` outside `{2^(2h+1)·3, 2^(2h+1)·5 : h ≥ 1}`.
    PkqOutsideFamily,
}

/// Every impossibility result that applies to `n`; any tag rules out the
/// Δ property.
pub fn non_delta_predicates(n: u64) -> Vec<NonDeltaTag> {
    let mut tags = Vec::new();
    if n == 0 {
        return tags;
    }
    if n.is_multiple_of(2) && (n / 2) % 2 == 1 {
        tags.push(NonDeltaTag::TwoTimesOdd);
    }
    let f = factorize(n);
    if f.iter().any(|&(p, _)| p + 1 >= 2 * (n / p)) {
        tags.push(NonDeltaTag::LargePrimeFactor);
    }
    match f.as_slice() {
        [_] => tags.push(NonDeltaTag::PrimePower),
        &[(p, ep), (q, eq)] => {
            let exps = (ep.min(eq), ep.max(eq));
            match exps {
                (1, 1) => tags.push(NonDeltaTag::Pq),
                (1, 2) => tags.push(NonDeltaTag::PqSquared),
                (2, 2) => tags.push(NonDeltaTag::PSquaredQSquared),
                _ => {}
            }
            for ((s, es), (l, el)) in [((p, ep), (q, eq)), ((q, eq), (p, ep))] {
                if el >= 2 && (s as u128).pow(es) < l as u128 {
                    tags.push(NonDeltaTag::DominantSquareFactor);
                    break;
                }
            }
            if ep == 1 || eq == 1 {
                let two_power = n.trailing_zeros();
                let odd = n >> two_power;
                let in_family = two_power % 2 == 1 && two_power >= 3 && (odd == 3 || odd == 5);
                if !in_family {
                    tags.push(NonDeltaTag::PkqOutsideFamily);
                }
            }
        }
        _ => {}
    }
    tags.sort_unstable();
    tags.dedup();
    tags
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PqrVerdict {
    pub member: bool,
    pub reason: String,
}

/// Membership of `pqr` for primes `p < q < r` from the closed conditions.
pub fn pqr_check(p: u64, q: u64, r: u64) -> Result<PqrVerdict> {
    if !(p < q && q < r) || ![p, q, r].iter().all(|&x| is_prime(x)) {
        return Err(Error::InvalidPrimeTriple(format!("({p}, {q}, {r})")));
    }
    if (r + 1 - p) * (q + 1 - p) == p * p - p + 1 {
        return Ok(PqrVerdict { member: true, reason: "(r-p+1)(q-p+1) = p^2-p+1".into() });
    }
    if (q, r) == (p + 2, 2 * p + 1) || (q, r) == (2 * p - 1, 3 * p - 2) {
        return Ok(PqrVerdict { member: true, reason: format!("(q, r) = ({q}, {r}) is a special pair") });
    }
    Ok(PqrVerdict { member: false, reason: "neither condition holds".into() })
}

/// Members in `[lo, hi]`.
pub fn sieve(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(1)..=hi).filter(|&n| has_delta(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn small_sets() {
        assert_eq!(d_star(24), set(&[23, 10, 5, 2]));
        let both: BTreeSet<u64> = d_star(24).intersection(&d_plus(24)).copied().collect();
        assert_eq!(both, set(&[10]));
        assert!(d_plus(24).contains(&20));
        assert_eq!(d_star(1), set(&[0]));
        assert!(d_plus(1).is_empty());
        for p in [2, 3, 5, 7, 11, 101] {
            assert_eq!(d_star(p), set(&[p - 1]));
        }
    }

    #[test]
    fn witnesses() {
        assert_eq!(delta_witness(24), Some((2, 3, 3)));
        assert_eq!(delta_witness(40), Some((4, 5, 5)));
        assert!((25..=39).all(|n| !has_delta(n)));
        assert_eq!((1..).find(|&n| n % 2 == 1 && has_delta(n)), Some(105));
        assert_eq!((1u64..).map(|k| k * k).find(|&n| has_delta(n)), Some(900));
        for n in 1..=2000 {
            assert_eq!(has_delta(n), has_delta_raw(n), "n = {n}");
        }
    }

    #[test]
    fn primitives() {
        for n in [24, 40, 105, 385] {
            assert!(is_delta_primitive(n));
        }
        assert!(has_delta(96) && !is_delta_primitive(96));
        assert_eq!(primitive_decomposition(96).unwrap(), (2, 24));
        assert!(matches!(primitive_decomposition(25), Err(Error::NotDelta(25))));
    }

    #[test]
    fn generators() {
        let g = generator_polynomial(1, 0, -1).unwrap();
        assert_eq!((g.alpha, g.beta, g.n0), (3, -2, 2));
        assert_eq!(g.eval(2), 24);
        let g = generator_polynomial(3, 4, 7).unwrap();
        assert_eq!(g.n0, 1);
        for x in 1..=30 {
            assert_eq!(g.factors(x), [3 * x as i128 + 4, 6 * x as i128 + 7, 9 * x as i128 + 10]);
            assert!(has_delta(g.eval(x) as u64));
        }
        let g = generator_polynomial(1, 2, 1).unwrap();
        assert_eq!(g.eval(2), 40);
        assert_eq!(generator_polynomial(1, -1, -5).unwrap().n0, 5);
        assert_eq!(generator_polynomial(2, -4, -10).unwrap().n0, 4);
        assert!(generator_polynomial(1, 1, 2).is_err());
        assert!(generator_polynomial(0, 0, -1).is_err());
    }

    #[test]
    fn tags_imply_non_membership() {
        for n in 1..=3000 {
            if !non_delta_predicates(n).is_empty() {
                assert!(!has_delta(n), "n = {n} tagged {:?}", non_delta_predicates(n));
            }
        }
        assert!(non_delta_predicates(24).is_empty());
        assert!(non_delta_predicates(40).is_empty());
        assert!(non_delta_predicates(30).contains(&NonDeltaTag::TwoTimesOdd));
    }

    #[test]
    fn pqr() {
        for (p, q, r) in [(3, 5, 7), (5, 7, 11), (7, 13, 19)] {
            assert!(pqr_check(p, q, r).unwrap().member);
            assert!(has_delta(p * q * r));
        }
        assert!(pqr_check(3, 5, 4).is_err());
        assert!(pqr_check(4, 5, 7).is_err());
    }
}
