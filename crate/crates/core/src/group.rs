//! Finite abelian groups written as direct products of cyclic groups.
//!
//! Elements are canonical residue tuples, so equality is structural. Every
//! group also carries a mixed-radix indexing `0..size()` which the search
//! code uses to keep its state in flat arrays.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A group element: one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub Vec<u64>);

impl Vertex {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for Vertex {
    fn from(v: Vec<u64>) -> Self {
        Vertex(v)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{orders[0]} x Z_{orders[1]} x ...`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup(
                "at least one cyclic factor is required".into(),
            ));
        }
        if let Some(o) = orders.iter().find(|&&o| o == 0) {
            return Err(Error::InvalidGroup(format!(
                "cyclic order {o} must be at least 1"
            )));
        }
        let size = orders
            .iter()
            .try_fold(1u64, |acc, &o| acc.checked_mul(o))
            .filter(|&s| s <= usize::MAX as u64)
            .ok_or_else(|| Error::InvalidGroup(format!("group Z_{orders:?} is too large")))?;
        debug_assert!(size >= 1);
        Ok(Self { orders })
    }

    /// The cyclic group `Z_k`.
    pub fn cyclic(k: u64) -> Result<Self> {
        Self::new(vec![k])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn zero(&self) -> Vertex {
        Vertex(vec![0; self.orders.len()])
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.0.len() == self.orders.len() && v.0.iter().zip(&self.orders).all(|(&c, &o)| c < o)
    }

    pub fn check(&self, v: &Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v.0.clone(),
                orders: self.orders.clone(),
            })
        }
    }

    /// Reduce arbitrary integers to a canonical element.
    pub fn element(&self, coords: &[i64]) -> Result<Vertex> {
        if coords.len() != self.orders.len() {
            return Err(Error::VertexOutOfRange {
                vertex: coords.iter().map(|&c| c as u64).collect(),
                orders: self.orders.clone(),
            });
        }
        Ok(Vertex(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &o)| c.rem_euclid(o as i64) as u64)
                .collect(),
        ))
    }

    /// Element of a cyclic group from a residue; panics on a non-cyclic group.
    pub fn cyclic_element(&self, x: u64) -> Vertex {
        assert_eq!(self.rank(), 1, "cyclic_element on a product group");
        Vertex(vec![x % self.orders[0]])
    }

    pub fn add(&self, x: &Vertex, y: &Vertex) -> Vertex {
        Vertex(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.orders)
                .map(|((&a, &b), &o)| (a + b) % o)
                .collect(),
        )
    }

    pub fn neg(&self, x: &Vertex) -> Vertex {
        Vertex(
            x.0.iter()
                .zip(&self.orders)
                .map(|(&a, &o)| (o - a) % o)
                .collect(),
        )
    }

    pub fn sub(&self, x: &Vertex, y: &Vertex) -> Vertex {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &Vertex, times: u64) -> Vertex {
        Vertex(
            x.0.iter()
                .zip(&self.orders)
                .map(|(&a, &o)| ((a as u128 * times as u128) % o as u128) as u64)
                .collect(),
        )
    }

    /// Mixed-radix index, first factor most significant.
    pub fn index_of(&self, v: &Vertex) -> usize {
        v.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&c, &o)| acc * o as usize + c as usize)
    }

    pub fn vertex_at(&self, mut index: usize) -> Vertex {
        let mut coords = vec![0u64; self.orders.len()];
        for (slot, &o) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = (index % o as usize) as u64;
            index /= o as usize;
        }
        Vertex(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.size()).map(move |i| self.vertex_at(i))
    }

    /// Subgroup generated by `gens`, by breadth-first closure from zero.
    pub fn closure(&self, gens: &[Vertex]) -> Vec<bool> {
        let mut seen = vec![false; self.size()];
        let zero = self.zero();
        seen[self.index_of(&zero)] = true;
        let mut queue = std::collections::VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                let iy = self.index_of(&y);
                if !seen[iy] {
                    seen[iy] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn generates(&self, gens: &[Vertex]) -> bool {
        self.closure(gens).into_iter().all(|b| b)
    }

    pub fn order_of(&self, x: &Vertex) -> u64 {
        x.0.iter()
            .zip(&self.orders)
            .map(|(&c, &o)| o / num_integer::gcd(c, o))
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|o| format!("Z_{o}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
