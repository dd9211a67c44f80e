use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A set of commodities, stored as a bitset over `0..b`.
///
/// The order is canonical: by cardinality, then by numeric bitset value
/// (commodity `k` is bit `k`). Sorting a family by it lists children before
/// their parents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommoditySet {
    words: Box<[u64]>,
}

impl CommoditySet {
    fn words_for(universe: usize) -> usize {
        universe.div_ceil(WORD).max(1)
    }

    pub fn empty(universe: usize) -> Self {
        CommoditySet {
            words: vec![0; Self::words_for(universe)].into_boxed_slice(),
        }
    }

    /// The full set `K = {0, .., universe - 1}`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for k in 0..universe {
            set.insert(k);
        }
        set
    }

    pub fn singleton(universe: usize, k: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(k);
        set
    }

    pub fn from_commodities(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for k in items {
            set.insert(k);
        }
        set
    }

    pub fn insert(&mut self, k: usize) {
        self.words[k / WORD] |= 1 << (k % WORD);
    }

    pub fn contains(&self, k: usize) -> bool {
        self.words
            .get(k / WORD)
            .is_some_and(|w| w & (1 << (k % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &CommoditySet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &CommoditySet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &CommoditySet) -> CommoditySet {
        CommoditySet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn union_with(&mut self, other: &CommoditySet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    /// Same members, stored for a universe of `universe` commodities.
    pub(crate) fn with_universe(&self, universe: usize) -> Self {
        let mut words = vec![0; Self::words_for(universe)];
        for (dst, src) in words.iter_mut().zip(self.words.iter()) {
            *dst = *src;
        }
        CommoditySet {
            words: words.into_boxed_slice(),
        }
    }

    /// Highest commodity index present plus one, or 0 when empty.
    pub(crate) fn span(&self) -> usize {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return i * WORD + (WORD - w.leading_zeros() as usize);
            }
        }
        0
    }

    /// Commodities in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + bit)
            })
        })
    }

    /// `'1'`/`'0'` per commodity, commodity 0 first.
    pub fn to_bit_string(&self, universe: usize) -> String {
        (0..universe)
            .map(|k| if self.contains(k) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(s: &str) -> Option<Self> {
        let mut set = Self::empty(s.len());
        for (k, c) in s.chars().enumerate() {
            match c {
                '1' => set.insert(k),
                '0' => {}
                _ => return None,
            }
        }
        Some(set)
    }
}

impl Ord for CommoditySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let n = self.words.len().max(other.words.len());
            for i in (0..n).rev() {
                let a = self.words.get(i).copied().unwrap_or(0);
                let b = other.words.get(i).copied().unwrap_or(0);
                match a.cmp(&b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for CommoditySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints 1-based commodity labels, e.g. `{1,2,5}`.
impl fmt::Debug for CommoditySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        write!(f, "}}")
    }
}
