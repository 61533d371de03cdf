use std::cmp::Ordering;
use std::fmt;

/// Generator families. `Dpos`/`Dneg` are the grouplike `D` and its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenClass {
    A,
    B,
    Dpos,
    Dneg,
    X,
}

/// A generator symbol: family, zero-based matrix position and tensor-factor tag.
///
/// Factor tags start at 1; plain algebras only use factor 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSymbol {
    pub factor: u8,
    pub class: GenClass,
    pub row: u16,
    pub col: u16,
}

impl GenSymbol {
    fn plain(class: GenClass, row: usize, col: usize) -> Self {
        Self { factor: 1, class, row: row as u16, col: col as u16 }
    }

    pub fn a(i: usize, j: usize) -> Self {
        Self::plain(GenClass::A, i, j)
    }

    pub fn b(i: usize, j: usize) -> Self {
        Self::plain(GenClass::B, i, j)
    }

    pub fn d() -> Self {
        Self::plain(GenClass::Dpos, 0, 0)
    }

    pub fn d_inv() -> Self {
        Self::plain(GenClass::Dneg, 0, 0)
    }

    pub fn x(i: usize) -> Self {
        Self::plain(GenClass::X, i, 0)
    }

    pub fn in_factor(mut self, factor: u8) -> Self {
        self.factor = factor;
        self
    }

    pub fn shifted(mut self, offset: u8) -> Self {
        self.factor += offset;
        self
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            GenClass::A => write!(f, "a[{},{}]", self.row + 1, self.col + 1)?,
            GenClass::B => write!(f, "b[{},{}]", self.row + 1, self.col + 1)?,
            GenClass::Dpos => write!(f, "D")?,
            GenClass::Dneg => write!(f, "D^-1")?,
            GenClass::X => write!(f, "x[{}]", self.row + 1)?,
        }
        if self.factor != 1 {
            write!(f, "@{}", self.factor)?;
        }
        Ok(())
    }
}

/// A word in the generators, ordered by length first and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<GenSymbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = GenSymbol>) -> Self {
        Word(symbols.into_iter().collect())
    }

    pub fn single(s: GenSymbol) -> Self {
        Word(vec![s])
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation without tensor normalization.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Stable reordering so that lower factor tags come first. Symbols from
    /// different tensor factors commute, so this is the canonical form.
    pub fn normalized(mut self) -> Word {
        if self.0.windows(2).any(|w| w[0].factor > w[1].factor) {
            self.0.sort_by_key(|s| s.factor);
        }
        self
    }

    /// Longest run of symbols from a single tensor factor.
    pub fn segment_length(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        let mut prev = None;
        for s in &self.0 {
            if Some(s.factor) == prev {
                run += 1;
            } else {
                run = 1;
                prev = Some(s.factor);
            }
            best = best.max(run);
        }
        best
    }

    /// First position at which `pat` occurs as a contiguous subword.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.is_empty() {
            return Some(0);
        }
        if pat.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(pat.0.len()).position(|w| w == pat.0.as_slice())
    }

    pub fn map(&self, f: impl Fn(GenSymbol) -> GenSymbol) -> Word {
        Word(self.0.iter().map(|&s| f(s)).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
