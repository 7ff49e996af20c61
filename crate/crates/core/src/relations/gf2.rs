//! Packed GF(2) rows and left-nullspace computation.

/// A row of bits packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut row = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                row.set(i);
            }
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Basis of `{ y : y^T A = 0 }` over GF(2), where `rows` are the rows of `A`.
///
/// Each returned row has one bit per input row and selects a subset of
/// input rows whose XOR vanishes.
pub fn left_nullspace(rows: &[BitRow]) -> Vec<BitRow> {
    let m = rows.len();
    let ncols = rows.first().map_or(0, BitRow::len);
    let mut work: Vec<(BitRow, BitRow)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut h = BitRow::zeros(m);
            h.set(i);
            (r.clone(), h)
        })
        .collect();
    let mut is_pivot = vec![false; m];
    for col in 0..ncols {
        let Some(p) = (0..m).find(|&i| !is_pivot[i] && work[i].0.get(col)) else {
            continue;
        };
        is_pivot[p] = true;
        let pivot = work[p].clone();
        for (i, (row, hist)) in work.iter_mut().enumerate() {
            if i != p && row.get(col) {
                row.xor_assign(&pivot.0);
                hist.xor_assign(&pivot.1);
            }
        }
    }
    work.into_iter()
        .zip(is_pivot)
        .filter(|((row, _), pivot)| !pivot && row.is_zero())
        .map(|((_, hist), _)| hist)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: &str) -> BitRow {
        BitRow::from_bits(s.chars().map(|c| c == '1'))
    }

    #[test]
    fn finds_dependency() {
        let rows = vec![row("110"), row("011"), row("101"), row("111")];
        let ns = left_nullspace(&rows);
        assert_eq!(ns.len(), 1);
        let sel: Vec<usize> = ns[0].ones().collect();
        assert_eq!(sel, vec![0, 1, 2]);
    }

    #[test]
    fn independent_rows_have_trivial_nullspace() {
        let rows = vec![row("100"), row("010"), row("001")];
        assert!(left_nullspace(&rows).is_empty());
        assert!(left_nullspace(&[]).is_empty());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut a = BitRow::zeros(130);
        a.set(0);
        a.set(129);
        let mut b = BitRow::zeros(130);
        b.set(129);
        let mut c = BitRow::zeros(130);
        c.set(0);
        let ns = left_nullspace(&[a, b, c]);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].ones().count(), 3);
    }

    proptest::proptest! {
        #[test]
        fn nullspace_vectors_annihilate(bits in proptest::collection::vec(proptest::bool::ANY, 8 * 5)) {
            let rows: Vec<BitRow> = bits.chunks(5).map(|c| BitRow::from_bits(c.iter().copied())).collect();
            let ns = left_nullspace(&rows);
            proptest::prop_assert!(ns.len() >= 3);
            for y in ns {
                let mut acc = BitRow::zeros(5);
                for i in y.ones() {
                    acc.xor_assign(&rows[i]);
                }
                proptest::prop_assert!(acc.is_zero());
                proptest::prop_assert!(!y.is_zero());
            }
        }
    }
}
