//! Closed graded traces: functionals on `A_0` vanishing on graded
//! commutators `m_2(a, b) − (−1)^{|a||b|} m_2(b, a)` and on `Im m_1`.

use num_traits::Zero;

use crate::algebra::AInfinityAlgebra;
use crate::exactlin::dense;
use crate::scalar::{sign, Q};

/// Basis of the space of closed graded traces, each a vector indexed by the
/// flat basis of `A` (zero outside degree 0).
pub fn closed_graded_traces(a: &AInfinityAlgebra) -> Vec<Vec<Q>> {
    let basis = a.basis();
    let n = a.dim();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut push = |row: Vec<Q>| {
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    };
    // Functionals supported on A_0.
    for e in 0..n as u32 {
        if basis.degree(e) != 0 {
            let mut row = vec![Q::zero(); n];
            row[e as usize] = Q::from_integer(1.into());
            push(row);
        }
    }
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            if basis.degree(x) + basis.degree(y) != 0 {
                continue;
            }
            let mut row = vec![Q::zero(); n];
            for (o, v) in a.mul(&[x, y]) {
                row[*o as usize] += v;
            }
            let s = sign(basis.degree(x) * basis.degree(y));
            for (o, v) in a.mul(&[y, x]) {
                row[*o as usize] -= &s * v;
            }
            push(row);
        }
    }
    for y in basis.in_degree(1) {
        let mut row = vec![Q::zero(); n];
        for (o, v) in a.mul(&[*y]) {
            row[*o as usize] += v;
        }
        push(row);
    }
    dense::kernel(&rows, n)
}

/// Whether `τ` is a closed graded trace.
pub fn is_closed_trace(a: &AInfinityAlgebra, tau: &[Q]) -> bool {
    let basis = closed_graded_traces(a);
    let mut ech = dense::Echelon::new(a.dim());
    for v in &basis {
        ech.insert(v);
    }
    ech.contains(tau)
}
