//! Exhaustive enumeration of vectors over a finite field.

use super::field::{FieldSpec, Scalar};

/// Every vector of F^m in index order (coordinate 0 varies fastest),
/// starting with the zero vector. Panics over Q.
pub fn all_vectors(field: &FieldSpec, m: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    let q = field.order().expect("enumeration needs a finite field") as u64;
    let total = field.space_size(m).expect("finite field");
    assert!(total <= u64::MAX as u128, "enumeration too large");
    (0..total as u64).map(move |mut idx| {
        (0..m)
            .map(|_| {
                let d = idx % q;
                idx /= q;
                field.element(d)
            })
            .collect()
    })
}

/// One representative of each line through the origin of F^m: vectors
/// whose first nonzero coordinate is 1. Together with their nonzero
/// scalar multiples these cover every nonzero vector.
pub fn projective_vectors(field: &FieldSpec, m: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    (0..m).flat_map(move |lead| {
        all_vectors(field, m - lead - 1).map(move |tail| {
            let mut v = vec![field.zero(); lead];
            v.push(field.one());
            v.extend(tail);
            v
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(all_vectors(&f3, 3).count(), 27);
        let proj: Vec<_> = projective_vectors(&f3, 3).collect();
        assert_eq!(proj.len(), 13);
        let distinct: HashSet<_> = proj.iter().cloned().collect();
        assert_eq!(distinct.len(), 13);
        let f4 = FieldSpec::extension(2, vec![1, 1, 1]).unwrap();
        assert_eq!(projective_vectors(&f4, 2).count(), 5);
        assert_eq!(projective_vectors(&f4, 0).count(), 0);
    }
}
