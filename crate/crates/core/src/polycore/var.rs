use std::fmt;

/// Number of variables in the fixed universe.
pub const NVARS: usize = 23;

/// The fixed variable universe, declared in canonical order.
///
/// `a0..a3` are the coefficients of the cubic, `b0..b6` those of the sextic
/// `b`, `c0..c6` those of the universal sextic, `x1, x2` the binary-form
/// variables and `t, s, m` free parameters used in symbolic group actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Var {
    A0,
    A1,
    A2,
    A3,
    B0,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    X1,
    X2,
    T,
    S,
    M,
}

const NAMES: [&str; NVARS] = [
    "a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "b4", "b5", "b6", "c0", "c1", "c2", "c3", "c4",
    "c5", "c6", "x1", "x2", "t", "s", "m",
];

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::A0,
        Var::A1,
        Var::A2,
        Var::A3,
        Var::B0,
        Var::B1,
        Var::B2,
        Var::B3,
        Var::B4,
        Var::B5,
        Var::B6,
        Var::C0,
        Var::C1,
        Var::C2,
        Var::C3,
        Var::C4,
        Var::C5,
        Var::C6,
        Var::X1,
        Var::X2,
        Var::T,
        Var::S,
        Var::M,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        Var::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }

    pub fn parse(name: &str) -> Option<Var> {
        NAMES.iter().position(|n| *n == name).map(|i| Var::ALL[i])
    }

    /// Coefficient `a_i` of the cubic, `i` in `0..=3`.
    pub fn a(i: usize) -> Var {
        assert!(i <= 3, "a-index out of range: {i}");
        Var::ALL[Var::A0.index() + i]
    }

    /// Coefficient `b_j` of the sextic, `j` in `0..=6`.
    pub fn b(j: usize) -> Var {
        assert!(j <= 6, "b-index out of range: {j}");
        Var::ALL[Var::B0.index() + j]
    }

    /// Coefficient `c_j` of the universal sextic, `j` in `0..=6`.
    pub fn c(j: usize) -> Var {
        assert!(j <= 6, "c-index out of range: {j}");
        Var::ALL[Var::C0.index() + j]
    }

    /// Subscript of an indexed coefficient variable (`a_i`, `b_j`, `c_j`).
    pub fn subscript(self) -> Option<usize> {
        let i = self.index();
        match self {
            Var::A0 | Var::A1 | Var::A2 | Var::A3 => Some(i - Var::A0.index()),
            Var::B0 | Var::B1 | Var::B2 | Var::B3 | Var::B4 | Var::B5 | Var::B6 => {
                Some(i - Var::B0.index())
            }
            Var::C0 | Var::C1 | Var::C2 | Var::C3 | Var::C4 | Var::C5 | Var::C6 => {
                Some(i - Var::C0.index())
            }
            _ => None,
        }
    }

    pub fn is_a(self) -> bool {
        (Var::A0..=Var::A3).contains(&self)
    }

    pub fn is_b(self) -> bool {
        (Var::B0..=Var::B6).contains(&self)
    }

    pub fn is_c(self) -> bool {
        (Var::C0..=Var::C6).contains(&self)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
