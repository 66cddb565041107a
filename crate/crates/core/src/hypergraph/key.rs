use std::fmt;

/// Largest supported uniformity. A vertex set of up to this many vertices packs into one `u128`.
pub const MAX_UNIFORMITY: usize = 8;
/// Largest supported vertex count. Slot values are `v + 1`, so the top label is `u16::MAX - 1`.
pub const MAX_VERTICES: usize = u16::MAX as usize;

const SLOT_BITS: u32 = 16;
const SLOT_MASK: u128 = 0xFFFF;

/// A set of at most [`MAX_UNIFORMITY`] vertices, stored sorted and packed 16 bits per slot.
///
/// The smallest vertex occupies the most significant slot and empty slots are zero, so the
/// derived `Ord` is the lexicographic order on sorted tuples.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetKey(u128);

impl SetKey {
    /// Packs an already sorted, duplicate-free slice.
    pub fn from_sorted(vertices: &[usize]) -> Self {
        debug_assert!(vertices.len() <= MAX_UNIFORMITY);
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut bits = 0u128;
        for (slot, &v) in vertices.iter().enumerate() {
            debug_assert!(v < MAX_VERTICES);
            bits |= ((v as u128) + 1) << (SLOT_BITS * (MAX_UNIFORMITY - 1 - slot) as u32);
        }
        SetKey(bits)
    }

    /// Packs a slice in any order. Returns `None` on repeated vertices or more than
    /// [`MAX_UNIFORMITY`] entries.
    pub fn from_unsorted(vertices: &[usize]) -> Option<Self> {
        if vertices.len() > MAX_UNIFORMITY {
            return None;
        }
        let mut buf = [0usize; MAX_UNIFORMITY];
        let buf = &mut buf[..vertices.len()];
        buf.copy_from_slice(vertices);
        buf.sort_unstable();
        if buf.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self::from_sorted(buf))
    }

    pub fn len(self) -> usize {
        (0..MAX_UNIFORMITY)
            .take_while(|&slot| self.slot(slot) != 0)
            .count()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    fn slot(self, slot: usize) -> u128 {
        (self.0 >> (SLOT_BITS * (MAX_UNIFORMITY - 1 - slot) as u32)) & SLOT_MASK
    }

    /// Sorted vertices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_UNIFORMITY)
            .map(move |slot| self.slot(slot))
            .take_while(|&raw| raw != 0)
            .map(|raw| raw as usize - 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn contains(self, v: usize) -> bool {
        self.iter().any(|u| u == v)
    }

    /// The set with `v` removed (unchanged when absent).
    pub fn without(self, v: usize) -> Self {
        let mut buf = [0usize; MAX_UNIFORMITY];
        let mut len = 0;
        for u in self.iter().filter(|&u| u != v) {
            buf[len] = u;
            len += 1;
        }
        Self::from_sorted(&buf[..len])
    }
}

impl fmt::Debug for SetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_order() {
        let a = SetKey::from_unsorted(&[4, 0, 2]).unwrap();
        assert_eq!(a.to_vec(), vec![0, 2, 4]);
        assert_eq!(a.len(), 3);
        let b = SetKey::from_sorted(&[0, 3, 4]);
        assert!(a < b);
        assert!(SetKey::from_sorted(&[0, 2]) < a);
        assert_eq!(a.without(2).to_vec(), vec![0, 4]);
        assert!(a.contains(4) && !a.contains(3));
    }

    #[test]
    fn rejects_repeats() {
        assert!(SetKey::from_unsorted(&[1, 1, 2]).is_none());
        assert!(SetKey::from_unsorted(&[0; 9]).is_none());
    }
}
