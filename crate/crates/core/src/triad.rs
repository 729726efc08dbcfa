//! Anchored triad classes.
//!
//! A triad containing the anchor `a` and two other nodes `v`, `w` is fully
//! described by the three dyad states `(a,v)`, `(a,w)` and `(v,w)`, giving
//! 64 labelled configurations. Exchanging `v` and `w` maps
//! `(d1, d2, d3)` to `(d2, d1, flip(d3))`; the orbits of that swap are the
//! 36 anchored classes. Each class refines one of the 16 Holland-Leinhardt
//! triad types and is named after it, with a variant letter when the type
//! splits into more than one anchored class.
//!
//! Letters follow ascending canonical configuration order inside a type,
//! except for four pinned variants:
//!
//! | class  | configuration | anchor position                      |
//! |--------|---------------|--------------------------------------|
//! | 012-b  | `(I,N,N)`     | receives the only edge               |
//! | 021U-a | `(I,I,N)`     | sink of both edges                   |
//! | 111D-b | `(I,M,N)`     | centre: mutual with one, target of other |
//! | 201-b  | `(M,M,N)`     | centre of both mutual dyads          |

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// State of an ordered pair `(x, y)`. Declaration order is the canonical
/// order `N < O < I < M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dyad {
    /// no edge
    Null,
    /// `x -> y` only
    Out,
    /// `y -> x` only
    In,
    /// both directions
    Mutual,
}

impl Dyad {
    pub const ALL: [Dyad; 4] = [Dyad::Null, Dyad::Out, Dyad::In, Dyad::Mutual];

    pub fn from_edges(forward: bool, backward: bool) -> Dyad {
        match (forward, backward) {
            (false, false) => Dyad::Null,
            (true, false) => Dyad::Out,
            (false, true) => Dyad::In,
            (true, true) => Dyad::Mutual,
        }
    }

    /// The same dyad seen from `(y, x)`.
    pub fn flip(self) -> Dyad {
        match self {
            Dyad::Out => Dyad::In,
            Dyad::In => Dyad::Out,
            d => d,
        }
    }

    pub fn forward(self) -> bool {
        matches!(self, Dyad::Out | Dyad::Mutual)
    }

    pub fn backward(self) -> bool {
        matches!(self, Dyad::In | Dyad::Mutual)
    }

    pub fn symbol(self) -> char {
        match self {
            Dyad::Null => 'N',
            Dyad::Out => 'O',
            Dyad::In => 'I',
            Dyad::Mutual => 'M',
        }
    }

    pub fn from_symbol(c: char) -> Option<Dyad> {
        Dyad::ALL.into_iter().find(|d| d.symbol() == c)
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// `(dyad(anchor, v), dyad(anchor, w), dyad(v, w))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriadConfig(pub Dyad, pub Dyad, pub Dyad);

impl TriadConfig {
    pub fn swap(self) -> TriadConfig {
        TriadConfig(self.1, self.0, self.2.flip())
    }

    /// Base-4 index in `0..64`, consistent with the canonical order.
    pub fn index(self) -> usize {
        self.0.index() * 16 + self.1.index() * 4 + self.2.index()
    }

    pub fn from_index(i: usize) -> TriadConfig {
        TriadConfig(Dyad::ALL[(i / 16) % 4], Dyad::ALL[(i / 4) % 4], Dyad::ALL[i % 4])
    }

    pub fn all() -> impl Iterator<Item = TriadConfig> {
        (0..64).map(TriadConfig::from_index)
    }

    /// Orbit representative: the smaller of the config and its swap.
    pub fn canonical(self) -> TriadConfig {
        self.min(self.swap())
    }

    pub fn dyads(self) -> [Dyad; 3] {
        [self.0, self.1, self.2]
    }

    /// Mutual, asymmetric and null dyad counts.
    pub fn man(self) -> (u8, u8, u8) {
        let mut man = (0, 0, 0);
        for d in self.dyads() {
            match d {
                Dyad::Mutual => man.0 += 1,
                Dyad::Null => man.2 += 1,
                _ => man.1 += 1,
            }
        }
        man
    }

    /// Adjacency over local nodes `0 = anchor`, `1 = v`, `2 = w`.
    pub fn adjacency(self) -> [[bool; 3]; 3] {
        let mut adj = [[false; 3]; 3];
        for (d, (x, y)) in self.dyads().into_iter().zip([(0, 1), (0, 2), (1, 2)]) {
            adj[x][y] = d.forward();
            adj[y][x] = d.backward();
        }
        adj
    }
}

impl fmt::Display for TriadConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0.symbol(), self.1.symbol(), self.2.symbol())
    }
}

/// The 16 isomorphism classes of directed triads, in the usual census order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriadType {
    T003,
    T012,
    T102,
    T021D,
    T021U,
    T021C,
    T111D,
    T111U,
    T030T,
    T030C,
    T201,
    T120D,
    T120U,
    T120C,
    T210,
    T300,
}

impl TriadType {
    pub const ALL: [TriadType; 16] = [
        TriadType::T003,
        TriadType::T012,
        TriadType::T102,
        TriadType::T021D,
        TriadType::T021U,
        TriadType::T021C,
        TriadType::T111D,
        TriadType::T111U,
        TriadType::T030T,
        TriadType::T030C,
        TriadType::T201,
        TriadType::T120D,
        TriadType::T120U,
        TriadType::T120C,
        TriadType::T210,
        TriadType::T300,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriadType::T003 => "003",
            TriadType::T012 => "012",
            TriadType::T102 => "102",
            TriadType::T021D => "021D",
            TriadType::T021U => "021U",
            TriadType::T021C => "021C",
            TriadType::T111D => "111D",
            TriadType::T111U => "111U",
            TriadType::T030T => "030T",
            TriadType::T030C => "030C",
            TriadType::T201 => "201",
            TriadType::T120D => "120D",
            TriadType::T120U => "120U",
            TriadType::T120C => "120C",
            TriadType::T210 => "210",
            TriadType::T300 => "300",
        }
    }

    /// Classifies an arbitrary 3-node adjacency matrix (diagonal ignored).
    pub fn of_adjacency(adj: &[[bool; 3]; 3]) -> TriadType {
        const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
        let (mut m, mut a) = (0, 0);
        for (x, y) in PAIRS {
            match (adj[x][y], adj[y][x]) {
                (true, true) => m += 1,
                (false, false) => {}
                _ => a += 1,
            }
        }
        let out = |x: usize| (0..3).filter(|&y| y != x && adj[x][y] && !adj[y][x]).count();
        let inn = |x: usize| (0..3).filter(|&y| y != x && adj[y][x] && !adj[x][y]).count();
        let mutual_pair = PAIRS.into_iter().find(|&(x, y)| adj[x][y] && adj[y][x]);

        match (m, a) {
            (0, 0) => TriadType::T003,
            (0, 1) => TriadType::T012,
            (1, 0) => TriadType::T102,
            (0, 2) => {
                if (0..3).any(|x| out(x) == 2) {
                    TriadType::T021D
                } else if (0..3).any(|x| inn(x) == 2) {
                    TriadType::T021U
                } else {
                    TriadType::T021C
                }
            }
            (1, 1) => {
                // The asymmetric edge joins the third node to one end of the
                // mutual dyad; D when it points into that end.
                let (x, y) = mutual_pair.expect("one mutual dyad");
                if inn(x) + inn(y) == 1 {
                    TriadType::T111D
                } else {
                    TriadType::T111U
                }
            }
            (0, 3) => {
                if (0..3).all(|x| out(x) == 1) {
                    TriadType::T030C
                } else {
                    TriadType::T030T
                }
            }
            (2, 0) => TriadType::T201,
            (1, 2) => {
                let (x, y) = mutual_pair.expect("one mutual dyad");
                let z = 3 - x - y;
                match out(z) {
                    2 => TriadType::T120D,
                    0 => TriadType::T120U,
                    _ => TriadType::T120C,
                }
            }
            (2, 1) => TriadType::T210,
            (3, 0) => TriadType::T300,
            _ => unreachable!("three dyads"),
        }
    }

    pub fn of_config(config: TriadConfig) -> TriadType {
        Self::of_adjacency(&config.adjacency())
    }
}

impl fmt::Display for TriadType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Index of an anchored class in canonical order (`0..36`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub u8);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredClass {
    pub id: ClassId,
    pub base: TriadType,
    /// `None` when the base type has a single anchored variant.
    pub variant: Option<char>,
    /// Canonical configuration first; the swap image second if distinct.
    pub members: Vec<TriadConfig>,
}

impl AnchoredClass {
    pub fn name(&self) -> String {
        match self.variant {
            Some(v) => alloc::format!("{}-{}", self.base.name(), v),
            None => String::from(self.base.name()),
        }
    }

    pub fn canonical(&self) -> TriadConfig {
        self.members[0]
    }

    pub fn man(&self) -> (u8, u8, u8) {
        self.canonical().man()
    }

    /// Whether instances of the class carry at least one edge.
    pub fn has_edges(&self) -> bool {
        self.base != TriadType::T003
    }
}

/// Total map from the 64 configurations to the 36 anchored classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    classes: Vec<AnchoredClass>,
    by_config: [u8; 64],
}

const PINNED: [(TriadConfig, char); 4] = [
    (TriadConfig(Dyad::In, Dyad::Null, Dyad::Null), 'b'),
    (TriadConfig(Dyad::In, Dyad::In, Dyad::Null), 'a'),
    (TriadConfig(Dyad::In, Dyad::Mutual, Dyad::Null), 'b'),
    (TriadConfig(Dyad::Mutual, Dyad::Mutual, Dyad::Null), 'b'),
];

impl ClassTable {
    pub fn new() -> Self {
        let mut reps: Vec<TriadConfig> = TriadConfig::all().map(TriadConfig::canonical).collect();
        reps.sort_unstable();
        reps.dedup();

        let mut classes = Vec::with_capacity(reps.len());
        for base in TriadType::ALL {
            let orbits: Vec<TriadConfig> = reps
                .iter()
                .copied()
                .filter(|c| TriadType::of_config(*c) == base)
                .collect();
            let letters = assign_letters(&orbits);
            for (rep, letter) in orbits.into_iter().zip(letters) {
                let mut members = alloc::vec![rep];
                if rep.swap() != rep {
                    members.push(rep.swap());
                }
                classes.push(AnchoredClass {
                    id: ClassId(0),
                    base,
                    variant: letter,
                    members,
                });
            }
        }
        classes.sort_by_key(|c| (c.base, c.variant));

        let mut by_config = [0u8; 64];
        for (i, class) in classes.iter_mut().enumerate() {
            class.id = ClassId(i as u8);
            for m in &class.members {
                by_config[m.index()] = i as u8;
            }
        }
        ClassTable { classes, by_config }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classify(&self, config: TriadConfig) -> ClassId {
        ClassId(self.by_config[config.index()])
    }

    pub fn class(&self, id: ClassId) -> &AnchoredClass {
        &self.classes[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &AnchoredClass> {
        self.classes.iter()
    }

    pub fn names(&self) -> Vec<String> {
        self.classes.iter().map(AnchoredClass::name).collect()
    }

    pub fn by_name(&self, name: &str) -> Result<ClassId, Error> {
        self.classes
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.id)
            .ok_or_else(|| Error::UnknownClass(String::from(name)))
    }
}

impl Default for ClassTable {
    fn default() -> Self {
        Self::new()
    }
}

/// `orbits` are the sorted representatives of one base type.
fn assign_letters(orbits: &[TriadConfig]) -> Vec<Option<char>> {
    if orbits.len() == 1 {
        return alloc::vec![None];
    }
    let mut letters: Vec<Option<char>> = orbits
        .iter()
        .map(|rep| {
            PINNED
                .iter()
                .find(|(c, _)| c.canonical() == *rep)
                .map(|&(_, l)| l)
        })
        .collect();
    let taken: Vec<char> = letters.iter().flatten().copied().collect();
    let mut free = ('a'..='c')
        .take(orbits.len())
        .filter(|l| !taken.contains(l));
    for slot in letters.iter_mut().filter(|l| l.is_none()) {
        *slot = free.next();
    }
    letters
}
