use crate::error::{Error, Result};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// Distinct knot positions with multiplicities (the repeated-knot list
/// `x0 <= x1 <= ... <= xN` in compressed form).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotSequence<T> {
    nodes: Vec<(T, usize)>,
}

impl<T: Real> KnotSequence<T> {
    pub fn new(nodes: Vec<(T, usize)>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Knots("at least one node is required".into()));
        }
        for (k, &(x, m)) in nodes.iter().enumerate() {
            if !(1..=4).contains(&m) {
                return Err(Error::Knots(format!("multiplicity {m} at node {k} not in 1..=4")));
            }
            if !x.is_finite() {
                return Err(Error::Knots(format!("node {k} is not finite")));
            }
            if k > 0 && !(nodes[k - 1].0 < x) {
                return Err(Error::Knots("positions must be strictly increasing".into()));
            }
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[(T, usize)] {
        &self.nodes
    }

    /// Number of knots counted with multiplicity.
    pub fn len(&self) -> usize {
        self.nodes.iter().map(|n| n.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Divided difference `u[x0, ..., xN]` over a repeated-knot sequence.
///
/// `data[k]` holds `u(x), u'(x), ...` at node `k`, exactly as many entries as
/// the node multiplicity.
pub fn divided_difference<T: Real>(knots: &KnotSequence<T>, data: &[Vec<T>]) -> Result<T> {
    let nodes = knots.nodes();
    if data.len() != nodes.len() {
        return Err(Error::Knots(format!(
            "{} nodes but data for {}",
            nodes.len(),
            data.len()
        )));
    }
    for (k, (&(_, m), d)) in nodes.iter().zip(data).enumerate() {
        if d.len() != m {
            return Err(Error::MultiplicityMismatch {
                node: k,
                multiplicity: m,
                supplied: d.len(),
            });
        }
    }
    // expanded knot list with owning node
    let mut xs = Vec::with_capacity(knots.len());
    let mut owner = Vec::with_capacity(knots.len());
    for (k, &(x, m)) in nodes.iter().enumerate() {
        for _ in 0..m {
            xs.push(x);
            owner.push(k);
        }
    }
    let n = xs.len();
    let mut table: Vec<T> = (0..n).map(|i| data[owner[i]][0]).collect();
    let mut fact = T::one();
    for order in 1..n {
        fact = fact * T::lit(order as f64);
        for i in 0..n - order {
            let (lo, hi) = (xs[i], xs[i + order]);
            table[i] = if lo == hi {
                data[owner[i]][order] / fact
            } else {
                (table[i + 1] - table[i]) / (hi - lo)
            };
        }
    }
    Ok(table[0])
}
