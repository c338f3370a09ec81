//! Arithmetic of products of split metacyclic groups `Z/p ⋊ Z/(p − 1)`,
//! used to produce 4-manifolds with distinct finite fundamental groups.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde_json::json;

use crate::certificate::{Certificate, CertificateKind, Check, Verdict};
use crate::error::{Error, Result};
use crate::exact::is_prime;

/// Distinct odd primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetacyclicTuple {
    primes: Vec<u64>,
}

impl MetacyclicTuple {
    /// Accepts the primes in any order.
    pub fn new(primes: &[u64]) -> Result<Self> {
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidArgument(format!("prime {} repeated", w[0])));
            }
        }
        for &p in &sorted {
            if p % 2 == 0 || p < 3 || !is_prime(p)? {
                return Err(Error::NotOddPrime(p));
            }
        }
        Ok(Self { primes: sorted })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

/// Which clause of the torsion condition a pair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H4Witness {
    /// `p_i = 3` and `p_j ≡ 1 (mod 3)`.
    ThreeAndOneModThree { three: u64, other: u64 },
    /// `gcd(p_i − 1, p_j − 1) > 2`.
    LargeGcd { p: u64, q: u64, gcd: u64 },
}

impl H4Witness {
    pub fn to_json(self) -> serde_json::Value {
        match self {
            H4Witness::ThreeAndOneModThree { three, other } => {
                json!({ "pair": [three.min(other), three.max(other)], "clause": "3 and p = 1 mod 3" })
            }
            H4Witness::LargeGcd { p, q, gcd } => {
                json!({ "pair": [p, q], "clause": "gcd(p-1, q-1) > 2", "gcd": gcd })
            }
        }
    }
}

/// Torsion condition guaranteeing an element of `H_4` of order greater than
/// two; returns the lexicographically first witnessing pair.
pub fn h4_condition(tuple: &MetacyclicTuple) -> Option<H4Witness> {
    let ps = &tuple.primes;
    for (i, &p) in ps.iter().enumerate() {
        for &q in &ps[i + 1..] {
            if p == 3 && q % 3 == 1 {
                return Some(H4Witness::ThreeAndOneModThree { three: p, other: q });
            }
            let g = (p - 1).gcd(&(q - 1));
            if g > 2 {
                return Some(H4Witness::LargeGcd { p, q, gcd: g });
            }
        }
    }
    None
}

pub fn h4_certificate(tuple: &MetacyclicTuple) -> Certificate {
    let witness = h4_condition(tuple);
    Certificate::builder(
        CertificateKind::GroupsH4,
        format!("the product of split metacyclic groups for primes {:?} has an element of order > 2 in H_4", tuple.primes),
    )
    .dimension(4)
    .input("primes", tuple.primes.clone())
    .check(Check::new(
        "torsion condition",
        Verdict::from_bool(witness.is_some()),
        witness.map_or(serde_json::Value::Null, H4Witness::to_json),
    ))
    .witness("order", group_order(tuple).to_string())
    .reference("torsion in H_4 of products of split metacyclic groups")
    .finish()
}

/// `∏ p(p − 1)`.
pub fn group_order(tuple: &MetacyclicTuple) -> BigUint {
    tuple.primes.iter().fold(BigUint::one(), |acc, &p| {
        acc * BigUint::from(p) * BigUint::from(p - 1)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSearch {
    pub count: usize,
    pub prime_bound: u64,
    pub tuples: Vec<(MetacyclicTuple, BigUint, H4Witness)>,
    /// Fewer than `count` tuples exist below the bound.
    pub partial: bool,
}

/// The `count` qualifying tuples of smallest group order, one per order,
/// from primes `≤ prime_bound`. Subsets are visited in increasing order
/// (ties broken by the tuple) by a best-first search that extends a tuple
/// only with larger primes, which is complete because appending a prime
/// strictly increases the order.
pub fn search_tuples(count: usize, prime_bound: u64) -> Result<TupleSearch> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let mut primes = Vec::new();
    for p in (3..=prime_bound).step_by(2) {
        if is_prime(p)? {
            primes.push(p);
        }
    }
    // heap entries: (order, tuple as prime indices)
    let mut heap: BinaryHeap<Reverse<(BigUint, Vec<u64>, usize)>> = BinaryHeap::new();
    for (i, &p) in primes.iter().enumerate() {
        heap.push(Reverse((BigUint::from(p * (p - 1)), vec![p], i)));
    }
    let mut seen_orders = BTreeSet::new();
    let mut tuples = Vec::new();
    while let Some(Reverse((order, ps, last))) = heap.pop() {
        for (j, &q) in primes.iter().enumerate().skip(last + 1) {
            let mut next = ps.clone();
            next.push(q);
            heap.push(Reverse((&order * BigUint::from(q * (q - 1)), next, j)));
        }
        let tuple = MetacyclicTuple { primes: ps };
        if let Some(w) = h4_condition(&tuple) {
            if seen_orders.insert(order.clone()) {
                tuples.push((tuple, order, w));
                if tuples.len() == count {
                    break;
                }
            }
        }
    }
    Ok(TupleSearch {
        count,
        prime_bound,
        partial: tuples.len() < count,
        tuples,
    })
}

impl TupleSearch {
    pub fn to_certificate(&self) -> Certificate {
        let list: Vec<_> = self
            .tuples
            .iter()
            .map(|(t, order, w)| json!({ "primes": t.primes, "order": order.to_string(), "witness": w.to_json() }))
            .collect();
        let distinct = self
            .tuples
            .iter()
            .map(|(_, o, _)| o)
            .collect::<BTreeSet<_>>()
            .len()
            == self.tuples.len();
        Certificate::builder(
            CertificateKind::GroupsH4,
            format!(
                "{} strongly chiral 4-manifolds with finite fundamental groups of pairwise different order",
                self.count
            ),
        )
        .dimension(4)
        .input("count", self.count)
        .input("prime_bound", self.prime_bound)
        .check(Check::new(
            "tuples found",
            Verdict::from_bool(!self.partial),
            json!({ "found": self.tuples.len(), "partial": self.partial }),
        ))
        .check(Check::new(
            "torsion condition on every tuple",
            Verdict::Pass,
            json!({ "tuples": list }),
        ))
        .check(Check::new("pairwise distinct orders", Verdict::from_bool(distinct), json!(null)))
        .witness(
            "cited_property",
            "every automorphism of a product of split metacyclic groups Z/p x| Z/(p-1) with distinct odd primes is inner (cited, not verified)",
        )
        .witness("conclusion", "the torsion condition yields an element m in H_4(pi) of order greater than two")
        .reference("4-manifolds whose fundamental group has only inner automorphisms")
        .reference("H_4 torsion condition for metacyclic products")
        .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(p: &[u64]) -> MetacyclicTuple {
        MetacyclicTuple::new(p).unwrap()
    }

    #[test]
    fn condition_examples() {
        assert_eq!(
            h4_condition(&tuple(&[3, 7])),
            Some(H4Witness::ThreeAndOneModThree { three: 3, other: 7 })
        );
        assert_eq!(
            h4_condition(&tuple(&[13, 5])),
            Some(H4Witness::LargeGcd {
                p: 5,
                q: 13,
                gcd: 4
            })
        );
        assert_eq!(h4_condition(&tuple(&[3, 5])), None);
        assert_eq!(h4_condition(&tuple(&[7])), None);
        assert!(MetacyclicTuple::new(&[3, 3]).is_err());
        assert!(MetacyclicTuple::new(&[2]).is_err());
        assert!(MetacyclicTuple::new(&[9]).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&tuple(&[3])), BigUint::from(6u32));
        assert_eq!(group_order(&tuple(&[3, 7])), BigUint::from(252u32));
        assert_eq!(group_order(&tuple(&[])), BigUint::one());
    }

    #[test]
    fn searches() {
        let one = search_tuples(1, 10).unwrap();
        assert_eq!(one.tuples[0].0, tuple(&[3, 7]));
        let three = search_tuples(3, 20).unwrap();
        let got: Vec<_> = three
            .tuples
            .iter()
            .map(|(t, o, _)| (t.primes.clone(), o.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![3, 7], BigUint::from(252u32)),
                (vec![3, 13], BigUint::from(936u32)),
                (vec![3, 19], BigUint::from(2052u32)),
            ]
        );
        let empty = search_tuples(1, 4).unwrap();
        assert!(empty.tuples.is_empty() && empty.partial);
    }
}
