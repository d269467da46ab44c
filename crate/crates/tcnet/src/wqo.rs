//! Quasi-orders used for termination: pointwise vectors, products, the
//! monotone domination (embedding) order, the injective subset order and the
//! subword order.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension mismatch: {0} vs {1}")]
pub struct DimensionMismatch(pub usize, pub usize);

/// A decidable quasi-order.
pub trait QuasiOrder<T: ?Sized> {
    fn leq(&self, a: &T, b: &T) -> bool;
}

impl<T: ?Sized, F: Fn(&T, &T) -> bool> QuasiOrder<T> for F {
    fn leq(&self, a: &T, b: &T) -> bool {
        self(a, b)
    }
}

/// Equality as a quasi-order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Equality;

impl<T: PartialEq + ?Sized> QuasiOrder<T> for Equality {
    fn leq(&self, a: &T, b: &T) -> bool {
        a == b
    }
}

/// Pointwise order on vectors of naturals.
pub fn vec_leq(u: &[u32], v: &[u32]) -> Result<bool, DimensionMismatch> {
    if u.len() != v.len() {
        return Err(DimensionMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).all(|(a, b)| a <= b))
}

/// Componentwise conjunction of two orders on pairs.
pub fn product_leq<A, B>(left: impl QuasiOrder<A>, right: impl QuasiOrder<B>) -> impl Fn(&(A, B), &(A, B)) -> bool {
    move |p, q| left.leq(&p.0, &q.0) && right.leq(&p.1, &q.1)
}

/// Is there a strictly increasing `f` with `s[i] <= t[f(i)]`?
/// Matching each element to the earliest compatible position is optimal.
pub fn embed_leq<T>(base: &impl QuasiOrder<T>, s: &[T], t: &[T]) -> bool {
    let mut j = 0;
    for x in s {
        while j < t.len() && !base.leq(x, &t[j]) {
            j += 1;
        }
        if j == t.len() {
            return false;
        }
        j += 1;
    }
    true
}

/// Is there an injective `f` from `a` into `b` with `x <= f(x)`?
/// Decided by augmenting-path bipartite matching.
pub fn subset_leq<T>(base: &impl QuasiOrder<T>, a: &[T], b: &[T]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = a.iter().map(|x| (0..b.len()).filter(|&j| base.leq(x, &b[j])).collect()).collect();
    if adj.iter().any(Vec::is_empty) {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; b.len()];
    fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, owner, seen)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    (0..a.len()).all(|i| augment(i, &adj, &mut owner, &mut vec![false; b.len()]))
}

/// The subword order: `x` is obtained from `y` by deleting letters.
pub fn subword_leq<T: PartialEq>(x: &[T], y: &[T]) -> bool {
    embed_leq(&Equality, x, y)
}
