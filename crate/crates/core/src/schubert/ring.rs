//! Cohomology ring of `LG(r, 2r)` from its quadratic presentation.
//!
//! The ring is `Q[s_1..s_r]` modulo `s_i^2 + 2 sum_k (-1)^k s_{i+k} s_{i-k}`
//! with `s_0 = 1`. Products of distinct generators form a basis indexed by
//! strict partitions; a basis element is stored as a bitmask with bit
//! `i - 1` standing for `s_i`. Multiplication by each generator is tabulated
//! by rewriting squares with the relations, and the tables are then checked
//! to commute and to satisfy every relation, which proves they present the
//! quotient ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::rat;
use crate::algebra::{linalg, QMatrix, Rat};
use crate::error::{Error, Result};

pub const MAX_VERIFIED_RANK: usize = 8;

/// Strictly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition(Vec<usize>);

impl StrictPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "parts {parts:?} are not distinct"
            )));
        }
        Ok(StrictPartition(parts))
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    fn from_mask(mask: u32) -> Self {
        let mut parts: Vec<usize> = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        parts.reverse();
        StrictPartition(parts)
    }

    fn mask(&self) -> u32 {
        self.0.iter().fold(0, |m, &p| m | 1 << (p - 1))
    }

    /// The staircase `(r, r-1, .., 1)`.
    pub fn top(r: usize) -> Self {
        StrictPartition((1..=r).rev().collect())
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "s[{}]", parts.join(","))
    }
}

/// Number of strict partitions of `d` with parts at most `r`.
pub fn strict_partition_count(r: usize, d: usize) -> usize {
    let mut ways = vec![0usize; d + 1];
    ways[0] = 1;
    for part in 1..=r {
        for w in (part..=d).rev() {
            ways[w] += ways[w - part];
        }
    }
    ways[d]
}

type Elt = BTreeMap<u32, BigInt>;

fn add_into(acc: &mut Elt, other: &Elt, c: &BigInt) {
    for (m, v) in other {
        let e = acc.entry(*m).or_insert_with(BigInt::zero);
        *e += v * c;
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

fn mask_weight(m: u32) -> usize {
    (0..32).filter(|b| m >> b & 1 == 1).map(|b| b + 1).sum()
}

struct Builder {
    r: usize,
    memo: HashMap<(usize, u32), Elt>,
}

impl Builder {
    /// `s_i * basis(s)` in the strict basis.
    fn mul_gen(&mut self, i: usize, s: u32) -> Elt {
        if i == 0 {
            return Elt::from([(s, BigInt::one())]);
        }
        let bit = 1u32 << (i - 1);
        if s & bit == 0 {
            return Elt::from([(s | bit, BigInt::one())]);
        }
        if let Some(e) = self.memo.get(&(i, s)) {
            return e.clone();
        }
        let rest = s & !bit;
        let mut out = Elt::new();
        for k in 1..=(self.r - i).min(i) {
            let sign: i64 = if k % 2 == 0 { -2 } else { 2 };
            let inner = self.mul_gen(i - k, rest);
            let outer = self.mul_gen_elt(i + k, &inner);
            add_into(&mut out, &outer, &BigInt::from(sign));
        }
        self.memo.insert((i, s), out.clone());
        out
    }

    fn mul_gen_elt(&mut self, i: usize, e: &Elt) -> Elt {
        let mut out = Elt::new();
        for (m, c) in e {
            let p = self.mul_gen(i, *m);
            add_into(&mut out, &p, c);
        }
        out
    }
}

/// Multiplication tables of the ring in the strict-monomial basis.
#[derive(Clone, Debug)]
pub struct RingTable {
    r: usize,
    /// `gens[i - 1][mask]` is `s_i` times the basis element `mask`.
    gens: Vec<Vec<Elt>>,
    verified: bool,
}

impl RingTable {
    /// Builds the tables without the full consistency check. Used for
    /// ranks beyond the verified range where only low-degree products are
    /// needed.
    pub fn unverified(r: usize) -> Result<Self> {
        if r == 0 || r > 20 {
            return Err(Error::OutOfRange(format!("rank {r} outside 1..=20")));
        }
        let mut b = Builder {
            r,
            memo: HashMap::new(),
        };
        let size = 1u32 << r;
        let gens = (1..=r)
            .map(|i| (0..size).map(|s| b.mul_gen(i, s)).collect())
            .collect();
        Ok(RingTable {
            r,
            gens,
            verified: false,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn top_weight(&self) -> usize {
        self.r * (self.r + 1) / 2
    }

    /// Basis elements of weight `d`, in increasing mask order.
    pub fn basis(&self, d: usize) -> Vec<StrictPartition> {
        (0..1u32 << self.r)
            .filter(|&m| mask_weight(m) == d)
            .map(StrictPartition::from_mask)
            .collect()
    }

    pub fn graded_dimensions(&self) -> Vec<usize> {
        (0..=self.top_weight()).map(|d| self.basis(d).len()).collect()
    }

    fn apply_gen(&self, i: usize, e: &Elt) -> Elt {
        let mut out = Elt::new();
        for (m, c) in e {
            add_into(&mut out, &self.gens[i - 1][*m as usize], c);
        }
        out
    }

    /// Checks that the generator tables commute, respect the grading, and
    /// annihilate every relation. Together with the strict monomials
    /// spanning, this shows the tables present the quotient ring.
    fn check(&self) -> Result<()> {
        let r = self.r;
        let size = 1u32 << r;
        for s in 0..size {
            let unit = Elt::from([(s, BigInt::one())]);
            let w = mask_weight(s);
            for i in 1..=r {
                let si = self.apply_gen(i, &unit);
                if si.keys().any(|&m| mask_weight(m) != w + i) {
                    return Err(Error::invariant(
                        "generator table breaks the grading",
                        format!("s{i} * {}", StrictPartition::from_mask(s)),
                    ));
                }
                for j in i + 1..=r {
                    let a = self.apply_gen(j, &si);
                    let b = self.apply_gen(i, &self.apply_gen(j, &unit));
                    if a != b {
                        return Err(Error::invariant(
                            "generator tables do not commute",
                            format!("s{i}, s{j} on {}", StrictPartition::from_mask(s)),
                        ));
                    }
                }
                if !self.relation_residue(i, s).is_empty() {
                    return Err(Error::invariant(
                        "relation does not vanish",
                        format!("relation {i} on {}", StrictPartition::from_mask(s)),
                    ));
                }
            }
        }
        let dims = self.graded_dimensions();
        for (d, &n) in dims.iter().enumerate() {
            if n != strict_partition_count(r, d) {
                return Err(Error::invariant(
                    "graded dimension mismatch",
                    format!("weight {d}: {n}"),
                ));
            }
        }
        Ok(())
    }

    /// The `i`-th relation multiplied by a basis element, reduced.
    pub(crate) fn relation_residue(&self, i: usize, s: u32) -> Elt {
        let unit = Elt::from([(s, BigInt::one())]);
        let mut out = self.apply_gen(i, &self.apply_gen(i, &unit));
        for k in 1..=(self.r - i) {
            if k > i {
                break;
            }
            let sign: i64 = if k % 2 == 0 { 2 } else { -2 };
            let low = if i == k { unit.clone() } else { self.apply_gen(i - k, &unit) };
            let term = self.apply_gen(i + k, &low);
            add_into(&mut out, &term, &BigInt::from(sign));
        }
        out
    }

    pub fn one(&self) -> SchubertElt {
        SchubertElt::basis(self.r, StrictPartition::empty())
    }

    /// The generator `s_i`.
    pub fn sigma(&self, i: usize) -> Result<SchubertElt> {
        if i == 0 {
            return Ok(self.one());
        }
        if i > self.r {
            return Err(Error::OutOfRange(format!("s{i} with r = {}", self.r)));
        }
        Ok(SchubertElt::basis(self.r, StrictPartition(vec![i])))
    }

    fn check_rank(&self, a: &SchubertElt) -> Result<()> {
        if a.r != self.r {
            return Err(Error::DimensionMismatch(format!(
                "element of rank {} in ring of rank {}",
                a.r, self.r
            )));
        }
        if let Some(p) = a.terms.keys().find(|p| p.0.first().is_some_and(|&x| x > self.r)) {
            return Err(Error::OutOfRange(format!("{p} has a part above {}", self.r)));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &SchubertElt, b: &SchubertElt) -> Result<SchubertElt> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        let den = rat::common_denominator(a.terms.values().chain(b.terms.values()));
        let to_int = |c: &Rat| c.numer() * (&den / c.denom());
        let mut acc = Elt::new();
        for (pb, cb) in &b.terms {
            let mut e = Elt::new();
            for (pa, ca) in &a.terms {
                add_into(&mut e, &Elt::from([(pa.mask(), to_int(ca))]), &BigInt::one());
            }
            for &i in pb.parts().iter().rev() {
                e = self.apply_gen(i, &e);
            }
            add_into(&mut acc, &e, &to_int(cb));
        }
        let scale = Rat::from_integer(den.clone() * den);
        Ok(SchubertElt {
            r: self.r,
            terms: acc
                .into_iter()
                .map(|(m, c)| (StrictPartition::from_mask(m), Rat::from_integer(c) / &scale))
                .collect(),
        })
    }

    pub fn power(&self, a: &SchubertElt, n: usize) -> Result<SchubertElt> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Degree of a top-weight class: its coefficient on the staircase.
    pub fn integrate(&self, a: &SchubertElt) -> Result<Rat> {
        self.check_rank(a)?;
        let top = self.top_weight();
        if let Some(p) = a.terms.keys().find(|p| p.weight() != top) {
            return Err(Error::InvalidArgument(format!(
                "integrand has a term {p} of weight {} instead of {top}",
                p.weight()
            )));
        }
        Ok(a.coefficient(&StrictPartition::top(self.r)))
    }

    /// Gram matrix of the pairing between weights `d` and `top - d`.
    pub fn pairing_matrix(&self, d: usize) -> Result<QMatrix> {
        let top = self.top_weight();
        if d > top {
            return Err(Error::OutOfRange(format!("weight {d} above {top}")));
        }
        let left = self.basis(d);
        let right = self.basis(top - d);
        let mut rows = Vec::new();
        for a in &left {
            let mut row = Vec::new();
            for b in &right {
                let p = self.multiply(
                    &SchubertElt::basis(self.r, a.clone()),
                    &SchubertElt::basis(self.r, b.clone()),
                )?;
                row.push(self.integrate(&p)?);
            }
            rows.push(row);
        }
        QMatrix::from_rows(rows)
    }

    pub fn pairing_determinant(&self, d: usize) -> Result<Rat> {
        linalg::det(&self.pairing_matrix(d)?)
    }

    /// Parses and evaluates expressions such as `s1*s1*s2 - 2*s[2,1]`.
    pub fn evaluate(&self, expr: &str) -> Result<SchubertElt> {
        let mut total = SchubertElt::zero(self.r);
        let cleaned: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        for (sign, term) in split_terms(&cleaned)? {
            let mut acc = self.one().scale(&Rat::from_integer(BigInt::from(sign)));
            for factor in term.split('*') {
                let f = self.parse_factor(factor)?;
                acc = self.multiply(&acc, &f)?;
            }
            total = total.add(&acc)?;
        }
        Ok(total)
    }

    fn parse_factor(&self, f: &str) -> Result<SchubertElt> {
        if let Some(inner) = f.strip_prefix("s[").and_then(|t| t.strip_suffix(']')) {
            let parts = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad part in {f:?}"))))
                    .collect::<Result<Vec<_>>>()?
            };
            let p = StrictPartition::new(parts)?;
            let e = SchubertElt::basis(self.r, p);
            self.check_rank(&e)?;
            return Ok(e);
        }
        if let Some(idx) = f.strip_prefix('s') {
            let i: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator {f:?}")))?;
            return self.sigma(i);
        }
        let c = rat::parse(f)?;
        Ok(self.one().scale(&c))
    }
}

fn split_terms(s: &str) -> Result<Vec<(i64, &str)>> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch != '+' && ch != '-' {
            continue;
        }
        if i == start {
            if ch == '-' {
                sign = -sign;
            }
            start = i + 1;
        } else {
            out.push((sign, &s[start..i]));
            sign = if ch == '-' { -1 } else { 1 };
            start = i + 1;
        }
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling operator in {s:?}")));
    }
    out.push((sign, &s[start..]));
    Ok(out)
}

/// `s_i * s_j` without building the full tables.
pub fn generator_product(r: usize, i: usize, j: usize) -> Result<SchubertElt> {
    if i > r || j > r {
        return Err(Error::OutOfRange(format!("s{i} * s{j} with r = {r}")));
    }
    let mut b = Builder {
        r,
        memo: HashMap::new(),
    };
    let start = if j == 0 { 0 } else { 1u32 << (j - 1) };
    let e = b.mul_gen(i, start);
    Ok(SchubertElt::from_terms(
        r,
        e.into_iter()
            .map(|(m, c)| (StrictPartition::from_mask(m), Rat::from_integer(c))),
    ))
}

/// Builds and verifies the tables for `1 <= r <= 8`.
pub fn ring_tables(r: usize) -> Result<RingTable> {
    if r == 0 || r > MAX_VERIFIED_RANK {
        return Err(Error::OutOfRange(format!(
            "ring tables are built for 1 <= r <= {MAX_VERIFIED_RANK}, got {r}"
        )));
    }
    let mut t = RingTable::unverified(r)?;
    t.check()?;
    t.verified = true;
    Ok(t)
}

/// An element of the ring in the strict-monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertElt {
    pub r: usize,
    terms: BTreeMap<StrictPartition, Rat>,
}

impl SchubertElt {
    pub fn zero(r: usize) -> Self {
        SchubertElt {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(r: usize, p: StrictPartition) -> Self {
        SchubertElt {
            r,
            terms: BTreeMap::from([(p, Rat::one())]),
        }
    }

    pub fn from_terms(r: usize, terms: impl IntoIterator<Item = (StrictPartition, Rat)>) -> Self {
        SchubertElt {
            r,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<StrictPartition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &StrictPartition) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    /// Common weight of all terms, if homogeneous and nonzero.
    pub fn weight(&self) -> Option<usize> {
        let mut ws = self.terms.keys().map(StrictPartition::weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn scale(&self, c: &Rat) -> SchubertElt {
        SchubertElt::from_terms(self.r, self.terms.iter().map(|(p, x)| (p.clone(), x * c)))
    }

    pub fn add(&self, other: &SchubertElt) -> Result<SchubertElt> {
        if self.r != other.r {
            return Err(Error::DimensionMismatch(format!(
                "adding elements of rank {} and {}",
                self.r, other.r
            )));
        }
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let e = terms.entry(p.clone()).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(p);
            }
        }
        Ok(SchubertElt { r: self.r, terms })
    }

    fn ordered_terms(&self) -> Vec<(&StrictPartition, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.weight().cmp(&b.0.weight()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl fmt::Display for SchubertElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.ordered_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if abs.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{}*{p}", rat::to_string(&abs))?;
            }
        }
        Ok(())
    }
}

impl Serialize for SchubertElt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(
            self.ordered_terms()
                .into_iter()
                .map(|(p, c)| (p.to_string(), rat::to_string(c))),
        )
    }
}

impl FromStr for StrictPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("s[")
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s.trim());
        if inner.is_empty() {
            return Ok(StrictPartition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        StrictPartition::new(parts)
    }
}

pub fn lg_dimension(r: usize) -> usize {
    r * (r + 1) / 2
}

/// Degree of `LG(r, 2r)` in its Plücker embedding: the integral of
/// `s_1^dim`.
pub fn lg_degree(r: usize) -> Result<BigInt> {
    let t = ring_tables(r)?;
    let top = t.power(&t.sigma(1)?, lg_dimension(r))?;
    let d = t.integrate(&top)?;
    if !d.is_integer() || !d.is_positive() {
        return Err(Error::invariant("degree is not a positive integer", rat::to_string(&d)));
    }
    Ok(d.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    #[test]
    fn rank_two_relations() {
        let t = ring_tables(2).unwrap();
        assert_eq!(t.graded_dimensions(), vec![1, 1, 1, 1]);
        assert_eq!(t.evaluate("s1*s1").unwrap().to_string(), "2*s[2]");
        assert!(t.evaluate("s2*s2").unwrap().is_zero());
        assert_eq!(t.integrate(&t.evaluate("s1*s2").unwrap()).unwrap(), int(1));
    }

    #[test]
    fn rank_one_is_dual_numbers() {
        let t = ring_tables(1).unwrap();
        assert!(t.evaluate("s1*s1").unwrap().is_zero());
        assert_eq!(lg_degree(1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn parser() {
        let t = ring_tables(3).unwrap();
        let e = t.evaluate("-s1 + 2*s[2,1] - 3").unwrap();
        assert_eq!(e.to_string(), "-3*s[] - s[1] + 2*s[2,1]");
        assert!(t.evaluate("s4").is_err());
        assert!(t.evaluate("s[2,2]").is_err());
        assert!(t.evaluate("s1+").is_err());
    }

    #[test]
    fn integrate_wrong_weight() {
        let t = ring_tables(2).unwrap();
        assert!(t.integrate(&t.sigma(1).unwrap()).is_err());
        let other = ring_tables(3).unwrap();
        assert!(t.multiply(&t.sigma(1).unwrap(), &other.sigma(3).unwrap()).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(
            (0..=6).map(|d| strict_partition_count(3, d)).collect::<Vec<_>>(),
            vec![1, 1, 1, 2, 1, 1, 1]
        );
    }
}
