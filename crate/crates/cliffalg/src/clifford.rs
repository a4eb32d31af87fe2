//! Clifford algebras C(p,q) over ℚ(i) with blades as bitmasks: bit i (0-based)
//! stands for the generator e_{i+1}, and e_{i+1}² = +1 for i < p, −1 otherwise.

use crate::scalar::{rational_str, Scalar};
use crate::{Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

pub type Blade = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Self {
        Signature { p, q }
    }

    pub fn m(&self) -> usize {
        self.p + self.q
    }

    /// Sign and resulting blade of e_A · e_B. The sign counts the inversions
    /// of the concatenated index word plus a metric sign for every repeated
    /// generator with square −1.
    pub fn blade_product(&self, a: Blade, b: Blade) -> (i32, Blade) {
        let mut inversions = 0u32;
        let mut bits = b;
        while bits != 0 {
            let i = bits.trailing_zeros();
            inversions += (a >> (i + 1)).count_ones();
            bits &= bits - 1;
        }
        let common = a & b;
        let negatives = (common >> self.p).count_ones();
        let sign = if (inversions + negatives) % 2 == 0 { 1 } else { -1 };
        (sign, a ^ b)
    }

    /// All grade-k blades, ascending as masks.
    pub fn graded_blades(&self, k: usize) -> Vec<Blade> {
        (0..(1u32 << self.m()))
            .filter(|mask| mask.count_ones() as usize == k)
            .collect()
    }

    pub fn even_blades(&self) -> Vec<Blade> {
        let mut v: Vec<Blade> =
            (0..(1u32 << self.m())).filter(|mask| mask.count_ones() % 2 == 0).collect();
        v.sort_by_key(|mask| (mask.count_ones(), *mask));
        v
    }

    pub fn all_blades(&self) -> Vec<Blade> {
        let mut v: Vec<Blade> = (0..(1u32 << self.m())).collect();
        v.sort_by_key(|mask| (mask.count_ones(), *mask));
        v
    }
}

pub fn blade_indices(mask: Blade) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

pub fn blade_from_indices(indices: &[usize]) -> Result<Blade> {
    let mut mask = 0u32;
    for &i in indices {
        if i == 0 || i > 32 {
            return Err(Error::Invalid(format!("generator index {i} out of range")));
        }
        let bit = 1u32 << (i - 1);
        if mask & bit != 0 {
            return Err(Error::Invalid(format!("repeated generator index {i}")));
        }
        mask |= bit;
    }
    Ok(mask)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    pub sig: Signature,
    terms: BTreeMap<Blade, Scalar>,
}

impl CliffordElement {
    pub fn zero(sig: Signature) -> Self {
        CliffordElement { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: Scalar) -> Self {
        let mut e = Self::zero(sig);
        e.add_term(0, c);
        e
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, Scalar::one())
    }

    pub fn blade(sig: Signature, mask: Blade, c: Scalar) -> Self {
        let mut e = Self::zero(sig);
        e.add_term(mask, c);
        e
    }

    pub fn generator(sig: Signature, i: usize) -> Self {
        assert!(i >= 1 && i <= sig.m());
        Self::blade(sig, 1 << (i - 1), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: Blade) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, mask: Blade, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.sig, other.sig);
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.sig, other.sig);
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, x) in self.terms() {
            out.add_term(b, x * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.sig, other.sig);
        let mut out = Self::zero(self.sig);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let (sign, mask) = self.sig.blade_product(a, b);
                let mut c = x * y;
                if sign < 0 {
                    c = -&c;
                }
                out.add_term(mask, c);
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Grade involution: (−1)^k on grade k.
    pub fn grade_involution(&self) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, c) in self.terms() {
            let c = if b.count_ones() % 2 == 0 { c.clone() } else { -c };
            out.add_term(b, c);
        }
        out
    }

    /// The main anti-automorphism (reversion): (−1)^{k(k−1)/2} on grade k.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, c) in self.terms() {
            let k = b.count_ones() as u64;
            let c = if (k * (k.saturating_sub(1)) / 2) % 2 == 0 { c.clone() } else { -c };
            out.add_term(b, c);
        }
        out
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, c) in self.terms() {
            if b.count_ones() as usize == k {
                out.add_term(b, c.clone());
            }
        }
        out
    }

    pub fn grades(&self) -> Vec<usize> {
        let mut gs: Vec<usize> = self.terms.keys().map(|b| b.count_ones() as usize).collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    pub fn to_json(&self) -> Value {
        let mut terms: Vec<(Vec<usize>, &Scalar)> =
            self.terms.iter().map(|(b, c)| (blade_indices(*b), c)).collect();
        terms.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let terms: Vec<Value> = terms
            .into_iter()
            .map(|(blades, c)| {
                json!({
                    "blades": blades,
                    "re": rational_str(&c.re),
                    "im": rational_str(&c.im),
                })
            })
            .collect();
        json!({
            "signature": [self.sig.p, self.sig.q],
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let sig_arr = v
            .get("signature")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"signature\" array".into()))?;
        if sig_arr.len() != 2 {
            return Err(Error::Parse("\"signature\" must be [p, q]".into()));
        }
        let p = sig_arr[0].as_u64().ok_or_else(|| Error::Parse("p must be an integer".into()))?;
        let q = sig_arr[1].as_u64().ok_or_else(|| Error::Parse("q must be an integer".into()))?;
        let sig = Signature::new(p as usize, q as usize);
        if sig.m() > 16 {
            return Err(Error::UnsupportedSignature(sig.p, sig.q));
        }
        let mut out = Self::zero(sig);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"terms\" array".into()))?;
        for t in terms {
            let blades = t
                .get("blades")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term missing \"blades\"".into()))?;
            let mut idx = Vec::new();
            for b in blades {
                let i =
                    b.as_u64().ok_or_else(|| Error::Parse("blade index must be an integer".into()))?;
                if i as usize > sig.m() {
                    return Err(Error::Parse(format!(
                        "blade index {i} exceeds the number of generators {}",
                        sig.m()
                    )));
                }
                idx.push(i as usize);
            }
            let mask = blade_from_indices(&idx)?;
            let part = |key: &str| -> Result<num::BigRational> {
                match t.get(key) {
                    Some(Value::String(s)) => {
                        crate::scalar::parse_rational_str(s).map_err(Error::Parse)
                    }
                    Some(Value::Number(n)) if n.is_i64() => {
                        Ok(num::BigRational::from_integer(n.as_i64().unwrap().into()))
                    }
                    None => Ok(num::BigRational::from_integer(0.into())),
                    _ => Err(Error::Parse(format!("{key:?} must be a rational string"))),
                }
            };
            out.add_term(mask, Scalar::complex(part("re")?, part("im")?));
        }
        Ok(out)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(Vec<usize>, &Scalar)> =
            self.terms.iter().map(|(b, c)| (blade_indices(*b), c)).collect();
        terms.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut first = true;
        for (blades, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if blades.is_empty() {
                write!(f, "({c})")?;
            } else {
                let name: String =
                    blades.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("");
                write!(f, "({c})·{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Naive sign oracle: concatenate the two index words, bubble-sort with a
    /// sign flip per adjacent swap, contract adjacent equal pairs with the
    /// metric sign.
    fn naive_blade_product(sig: Signature, a: Blade, b: Blade) -> (i32, Blade) {
        let mut word: Vec<usize> = blade_indices(a);
        word.extend(blade_indices(b));
        let mut sign = 1i32;
        loop {
            let mut acted = false;
            let mut k = 0;
            while k + 1 < word.len() {
                if word[k] > word[k + 1] {
                    word.swap(k, k + 1);
                    sign = -sign;
                    acted = true;
                } else if word[k] == word[k + 1] {
                    if word[k] - 1 >= sig.p {
                        sign = -sign;
                    }
                    word.remove(k + 1);
                    word.remove(k);
                    acted = true;
                } else {
                    k += 1;
                }
            }
            if !acted {
                break;
            }
        }
        let mut mask = 0u32;
        for i in word {
            mask |= 1 << (i - 1);
        }
        (sign, mask)
    }

    #[test]
    fn blade_product_matches_naive_oracle() {
        for (p, q) in [(2, 0), (3, 1), (4, 3), (0, 4)] {
            let sig = Signature::new(p, q);
            let n = 1u32 << sig.m();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(
                        sig.blade_product(a, b),
                        naive_blade_product(sig, a, b),
                        "({p},{q}) a={a:b} b={b:b}"
                    );
                }
            }
        }
    }

    #[test]
    fn generator_relations() {
        let sig = Signature::new(2, 1);
        let e: Vec<_> = (1..=3).map(|i| CliffordElement::generator(sig, i)).collect();
        for i in 0..3 {
            let sq = e[i].mul(&e[i]);
            let expect = CliffordElement::scalar(sig, Scalar::from_int(if i < 2 { 1 } else { -1 }));
            assert_eq!(sq, expect);
            for j in 0..3 {
                if i != j {
                    assert_eq!(e[i].mul(&e[j]), e[j].mul(&e[i]).neg());
                }
            }
        }
        // orientation: e1e2 · e1 = −e2
        let e12 = e[0].mul(&e[1]);
        assert_eq!(e12.mul(&e[0]), e[1].neg());
    }

    fn random_element(sig: Signature, rng: &mut impl Rng) -> CliffordElement {
        let mut x = CliffordElement::zero(sig);
        for _ in 0..4 {
            let mask = rng.gen_range(0..(1u32 << sig.m()));
            let c = Scalar::complex(
                num::BigRational::from_integer(rng.gen_range(-4i64..=4).into()),
                num::BigRational::from_integer(rng.gen_range(-4i64..=4).into()),
            );
            x.add_term(mask, c);
        }
        x
    }

    #[test]
    fn associativity_and_star_antihomomorphism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, q) in [(3, 1), (2, 2), (1, 3)] {
            let sig = Signature::new(p, q);
            for _ in 0..25 {
                let x = random_element(sig, &mut rng);
                let y = random_element(sig, &mut rng);
                let z = random_element(sig, &mut rng);
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
                assert_eq!(x.mul(&y).grade_involution(), x.grade_involution().mul(&y.grade_involution()));
            }
        }
    }

    #[test]
    fn star_fixed_grades() {
        // on even elements, x + x* = 0 exactly on grades ≡ 2 mod 4
        let sig = Signature::new(4, 2);
        for k in [0usize, 2, 4, 6] {
            for mask in sig.graded_blades(k) {
                let x = CliffordElement::blade(sig, mask, Scalar::one());
                let s = x.add(&x.star());
                if k % 4 == 2 {
                    assert!(s.is_zero(), "grade {k} should be star-odd");
                } else {
                    assert!(!s.is_zero(), "grade {k} should be star-even");
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let sig = Signature::new(2, 1);
        let mut x = CliffordElement::zero(sig);
        x.add_term(0b011, Scalar::complex(
            num::BigRational::new(1.into(), 2.into()),
            num::BigRational::from_integer((-3).into()),
        ));
        x.add_term(0b100, Scalar::one());
        let v = x.to_json();
        let y = CliffordElement::from_json(&v).unwrap();
        assert_eq!(x, y);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"blades\":[1,2]"));
        assert!(s.contains("\"re\":\"1/2\""));
    }
}
