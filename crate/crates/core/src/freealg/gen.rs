use std::cmp::Ordering;
use std::fmt;

/// Generator families across the five algebras.
///
/// The derived order is part of the canonical word order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Yangian generator `t_ij^(r)`.
    YangT,
    /// Twisted Yangian generator `s_ij^(r)`.
    TwS,
    /// 𝒜-form generator `τ_ij^(r)`.
    Tau,
    /// 𝒜-form generator `τ̄_ij^(r)`.
    TauBar,
    /// Raw quantum loop generator `T_ij^(r)`.
    T,
    /// Raw quantum loop generator `T̄_ij^(r)`.
    TBar,
    /// Twisted quantum loop generator `S_ij^(r)`.
    QS,
    /// Filtration-adapted basis element; `level` carries the `(s-1)` order.
    Marker,
    /// `τ_ii^(0) + τ̄_ii^(0)`, which lies in every filtration ideal.
    Zee,
    /// Free symbol with no matrix indices (tests and generic algebra).
    Sym,
    /// Loop algebra basis element `E_ij s^r`, any integer `r`.
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gen {
    pub family: Family,
    pub i: u8,
    pub j: u8,
    pub level: i32,
}

impl Gen {
    pub const fn new(family: Family, i: usize, j: usize, level: i32) -> Self {
        Gen {
            family,
            i: i as u8,
            j: j as u8,
            level,
        }
    }

    pub const fn sym(k: usize) -> Self {
        Gen {
            family: Family::Sym,
            i: k as u8,
            j: 0,
            level: 0,
        }
    }

    pub fn yang(i: usize, j: usize, r: i32) -> Self {
        Gen::new(Family::YangT, i, j, r)
    }

    pub fn tau(i: usize, j: usize, r: i32) -> Self {
        Gen::new(Family::Tau, i, j, r)
    }

    pub fn taubar(i: usize, j: usize, r: i32) -> Self {
        Gen::new(Family::TauBar, i, j, r)
    }

    pub fn idx(&self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }

    fn key(&self) -> (Family, i32, u8, u8) {
        (self.family, self.level, self.i, self.j)
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, r) = (self.i, self.j, self.level);
        match self.family {
            Family::YangT => write!(f, "t{i}{j}^({r})"),
            Family::TwS => write!(f, "s{i}{j}^({r})"),
            Family::Tau => write!(f, "τ{i}{j}^({r})"),
            Family::TauBar => write!(f, "τ̄{i}{j}^({r})"),
            Family::T => write!(f, "T{i}{j}^({r})"),
            Family::TBar => write!(f, "T̄{i}{j}^({r})"),
            Family::QS => write!(f, "S{i}{j}^({r})"),
            Family::Marker => write!(f, "M{i}{j}[{r}]"),
            Family::Zee => write!(f, "Z{i}{i}"),
            Family::Sym => write!(f, "x{i}"),
            Family::Loop => write!(f, "E{i}{j}s^{r}"),
        }
    }
}

/// A word in the free monoid; ordered by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
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
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
