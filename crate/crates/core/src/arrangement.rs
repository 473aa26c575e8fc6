//! Real hyperplane arrangements with exact rational coefficients: parsing,
//! face enumeration by sign vectors, the face poset, composition of faces,
//! and the intersection poset with its Moebius function.

use crate::fourier_motzkin::MixedSystem;
use crate::linalg::{rank, system_consistent, Rat};
use num::{BigInt, Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("missing `dim <d>` header")]
    MissingDimension,
    #[error("malformed dimension: {0}")]
    BadDimension(String),
    #[error("line {line}: expected {expected} entries for a hyperplane, got {got}")]
    WrongArity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: malformed rational `{token}`")]
    BadRational { line: usize, token: String },
    #[error("line {line}: zero normal vector")]
    ZeroNormal { line: usize },
    #[error("line {line}: duplicate hyperplane after canonicalization")]
    DuplicateHyperplane { line: usize },
    #[error("line {line}: unrecognized directive `{token}`")]
    UnknownDirective { line: usize, token: String },
}

/// A hyperplane `normal . x = offset`, canonicalized to a primitive integer
/// normal with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Hyperplane {
    fn canonicalize(normal: Vec<Rat>, offset: Rat) -> Option<Hyperplane> {
        if normal.iter().all(Zero::is_zero) {
            return None;
        }
        let mut denom_lcm = BigInt::one();
        for r in normal.iter().chain(std::iter::once(&offset)) {
            denom_lcm = denom_lcm.lcm(r.denom());
        }
        let scale = Rat::from_integer(denom_lcm);
        let ints: Vec<BigInt> = normal
            .iter()
            .chain(std::iter::once(&offset))
            .map(|r| (r * &scale).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints[..ints.len() - 1] {
            g = g.gcd(v);
        }
        g = g.gcd(&ints[ints.len() - 1]);
        let lead = ints.iter().find(|v| !v.is_zero()).unwrap();
        if lead.is_negative() {
            g = -g;
        }
        let reduced: Vec<Rat> = ints.iter().map(|v| Rat::from_integer(v / &g)).collect();
        let (offset, normal) = reduced.split_last().unwrap();
        Some(Hyperplane {
            normal: normal.to_vec(),
            offset: offset.clone(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub dim: usize,
    pub hyperplanes: Vec<Hyperplane>,
}

fn parse_rat(token: &str, line: usize) -> Result<Rat, ArrangementError> {
    Rat::from_str(token).map_err(|_| ArrangementError::BadRational {
        line,
        token: token.to_string(),
    })
}

/// Parses the arrangement file format: `dim <d>` followed by lines
/// `H <a1> ... <ad> <b>` meaning the hyperplane `a . x = b`. Entries are
/// integers or `p/q` rationals; `#` starts a comment.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let mut dim: Option<usize> = None;
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let head = tokens.next().unwrap();
        match head {
            "dim" => {
                let tok = tokens.next().unwrap_or("");
                let d: usize = tok
                    .parse()
                    .map_err(|_| ArrangementError::BadDimension(tok.to_string()))?;
                if d == 0 {
                    return Err(ArrangementError::BadDimension(tok.to_string()));
                }
                dim = Some(d);
            }
            "H" => {
                let d = dim.ok_or(ArrangementError::MissingDimension)?;
                let entries: Vec<&str> = tokens.collect();
                if entries.len() != d + 1 {
                    return Err(ArrangementError::WrongArity {
                        line,
                        expected: d + 1,
                        got: entries.len(),
                    });
                }
                let vals: Vec<Rat> = entries
                    .iter()
                    .map(|t| parse_rat(t, line))
                    .collect::<Result<_, _>>()?;
                let (offset, normal) = vals.split_last().unwrap();
                let h = Hyperplane::canonicalize(normal.to_vec(), offset.clone())
                    .ok_or(ArrangementError::ZeroNormal { line })?;
                if hyperplanes.contains(&h) {
                    return Err(ArrangementError::DuplicateHyperplane { line });
                }
                hyperplanes.push(h);
            }
            other => {
                return Err(ArrangementError::UnknownDirective {
                    line,
                    token: other.to_string(),
                });
            }
        }
    }
    let dim = dim.ok_or(ArrangementError::MissingDimension)?;
    Ok(Arrangement { dim, hyperplanes })
}

pub type Sign = i8;

/// Renders a sign vector as a string over `+ - 0`, hyperplanes in file order.
pub fn signs_to_string(signs: &[Sign]) -> String {
    signs
        .iter()
        .map(|s| match s {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect()
}

pub fn signs_from_str(s: &str) -> Option<Vec<Sign>> {
    s.chars()
        .map(|c| match c {
            '+' => Some(1),
            '-' => Some(-1),
            '0' => Some(0),
            _ => None,
        })
        .collect()
}

/// Sort key realizing the convention 0 < - < +.
fn sign_key(signs: &[Sign]) -> Vec<u8> {
    signs
        .iter()
        .map(|s| match s {
            0 => 0,
            -1 => 1,
            _ => 2,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub signs: Vec<Sign>,
    pub codim: usize,
}

impl Face {
    pub fn is_chamber(&self) -> bool {
        self.signs.iter().all(|&s| s != 0)
    }

    pub fn label(&self) -> String {
        if self.signs.is_empty() {
            "()".to_string()
        } else {
            signs_to_string(&self.signs)
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The poset of realizable sign vectors, chambers minimal.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub faces: Vec<Face>,
    /// Witness interior points from the feasibility oracle, same indexing.
    pub witnesses: Vec<Vec<Rat>>,
    /// Indices of chambers, in face order.
    pub chambers: Vec<usize>,
}

impl FacePoset {
    /// `F1 >= F2` iff every nonzero sign of F1 agrees with F2.
    pub fn geq(&self, f1: usize, f2: usize) -> bool {
        signs_geq(&self.faces[f1].signs, &self.faces[f2].signs)
    }

    pub fn face_index(&self, signs: &[Sign]) -> Option<usize> {
        self.faces.iter().position(|f| f.signs == signs)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        let signs = if label == "()" {
            Vec::new()
        } else {
            signs_from_str(label)?
        };
        self.face_index(&signs)
    }

    /// Position of a chamber in `self.chambers`.
    pub fn chamber_position(&self, face: usize) -> Option<usize> {
        self.chambers.iter().position(|&c| c == face)
    }
}

pub fn signs_geq(upper: &[Sign], lower: &[Sign]) -> bool {
    upper
        .iter()
        .zip(lower)
        .all(|(&u, &l)| u == 0 || u == l)
}

fn feasibility_system(a: &Arrangement, signs: &[Sign]) -> MixedSystem {
    let mut sys = MixedSystem::new(a.dim);
    for (h, &s) in a.hyperplanes.iter().zip(signs) {
        match s {
            0 => sys.add_equality(h.normal.clone(), h.offset.clone()),
            1 => sys.add_strict_gt(h.normal.clone(), h.offset.clone()),
            _ => sys.add_strict_gt(
                h.normal.iter().map(|c| -c.clone()).collect(),
                -h.offset.clone(),
            ),
        }
    }
    sys
}

/// Evaluates the sign vector of a point, the geometric side of the oracle.
pub fn signs_at(a: &Arrangement, point: &[Rat]) -> Vec<Sign> {
    a.hyperplanes
        .iter()
        .map(|h| {
            let v: Rat = h
                .normal
                .iter()
                .zip(point)
                .map(|(c, x)| c * x)
                .fold(Rat::zero(), |acc, t| &acc + &t)
                - &h.offset;
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .collect()
}

fn codim_of(a: &Arrangement, signs: &[Sign]) -> usize {
    let zero_rows: Vec<Vec<Rat>> = a
        .hyperplanes
        .iter()
        .zip(signs)
        .filter(|(_, &s)| s == 0)
        .map(|(h, _)| h.normal.clone())
        .collect();
    rank(&zero_rows)
}

/// Enumerates every realizable sign vector by brute force over {-,0,+}^n,
/// deciding feasibility with exact Fourier-Motzkin elimination.
pub fn enumerate_faces(a: &Arrangement) -> FacePoset {
    let n = a.hyperplanes.len();
    let mut found: Vec<(Face, Vec<Rat>)> = Vec::new();
    let mut signs = vec![0i8; n];
    enumerate_rec(a, &mut signs, 0, &mut found);
    found.sort_by(|(f1, _), (f2, _)| sign_key(&f1.signs).cmp(&sign_key(&f2.signs)));
    let chambers = found
        .iter()
        .enumerate()
        .filter(|(_, (f, _))| f.is_chamber())
        .map(|(i, _)| i)
        .collect();
    let (faces, witnesses) = found.into_iter().unzip();
    FacePoset {
        faces,
        witnesses,
        chambers,
    }
}

fn enumerate_rec(a: &Arrangement, signs: &mut Vec<Sign>, pos: usize, out: &mut Vec<(Face, Vec<Rat>)>) {
    if pos == signs.len() {
        if let Some(witness) = feasibility_system(a, signs).solve() {
            debug_assert_eq!(signs_at(a, &witness), *signs);
            out.push((
                Face {
                    signs: signs.clone(),
                    codim: codim_of(a, signs),
                },
                witness,
            ));
        }
        return;
    }
    for s in [0i8, -1, 1] {
        signs[pos] = s;
        // Prune: the partial system must already be feasible.
        let partial = signs[..=pos].to_vec();
        let mut sys = MixedSystem::new(a.dim);
        for (h, &sv) in a.hyperplanes.iter().zip(partial.iter()) {
            match sv {
                0 => sys.add_equality(h.normal.clone(), h.offset.clone()),
                1 => sys.add_strict_gt(h.normal.clone(), h.offset.clone()),
                _ => sys.add_strict_gt(
                    h.normal.iter().map(|c| -c.clone()).collect(),
                    -h.offset.clone(),
                ),
            }
        }
        if sys.solve().is_some() {
            enumerate_rec(a, signs, pos + 1, out);
        }
    }
    signs[pos] = 0;
}

/// Componentwise composition: F's sign where nonzero, else P's.
pub fn compose(f: &[Sign], p: &[Sign]) -> Vec<Sign> {
    assert_eq!(f.len(), p.len(), "mismatched sign-vector lengths");
    f.iter()
        .zip(p)
        .map(|(&a, &b)| if a != 0 { a } else { b })
        .collect()
}

/// Hyperplanes with opposite nonzero signs on the two chambers.
pub fn separating_set(c1: &[Sign], c2: &[Sign]) -> Vec<usize> {
    assert!(c1.iter().all(|&s| s != 0) && c2.iter().all(|&s| s != 0), "inputs must be chambers");
    c1.iter()
        .zip(c2)
        .enumerate()
        .filter(|(_, (&a, &b))| a == -b)
        .map(|(i, _)| i)
        .collect()
}

/// The chamber opposite to C with respect to F: flip C's sign on support(F).
pub fn opposite_chamber(f: &[Sign], c: &[Sign]) -> Vec<Sign> {
    assert!(c.iter().all(|&s| s != 0), "C must be a chamber");
    assert!(signs_geq(f, c), "C must be adjacent to F");
    f.iter()
        .zip(c)
        .map(|(&fs, &cs)| if fs == 0 { -cs } else { cs })
        .collect()
}

/// The support of F (hyperplanes vanishing on it) together with the order
/// ideal of faces below F.
pub fn localize(poset: &FacePoset, face: usize) -> (Vec<usize>, Vec<usize>) {
    let support = poset.faces[face]
        .signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 0)
        .map(|(i, _)| i)
        .collect();
    let ideal = (0..poset.faces.len())
        .filter(|&g| poset.geq(face, g))
        .collect();
    (support, ideal)
}

/// A flat of the intersection poset, identified by the set of hyperplanes
/// containing it.
#[derive(Clone, Debug)]
pub struct Flat {
    pub hyperplanes: Vec<usize>,
    pub rank: usize,
    pub moebius: num::BigInt,
}

#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    pub flats: Vec<Flat>,
}

impl IntersectionPoset {
    /// X >= Y iff X is contained in Y as a subspace.
    pub fn geq(&self, x: usize, y: usize) -> bool {
        self.flats[y]
            .hyperplanes
            .iter()
            .all(|h| self.flats[x].hyperplanes.contains(h))
    }

    /// Whitney numbers |sum of Moebius values| per rank; these equal the
    /// Betti numbers of the complexified complement (Orlik-Solomon), used
    /// here purely as a cross-check oracle.
    pub fn whitney_numbers(&self) -> Vec<num::BigInt> {
        let max_rank = self.flats.iter().map(|f| f.rank).max().unwrap_or(0);
        let mut w = vec![num::BigInt::zero(); max_rank + 1];
        for f in &self.flats {
            w[f.rank] += f.moebius.abs();
        }
        w
    }
}

/// Builds L(A): nonempty intersections of subfamilies ordered by reverse
/// inclusion, with Moebius values from the recursion on lower intervals.
pub fn intersection_poset(a: &Arrangement) -> IntersectionPoset {
    let n = a.hyperplanes.len();
    let mut closures: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let coeffs: Vec<Vec<Rat>> = subset.iter().map(|&i| a.hyperplanes[i].normal.clone()).collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| a.hyperplanes[i].offset.clone()).collect();
        if !system_consistent(&coeffs, &rhs) {
            continue;
        }
        let base_rank = rank(&coeffs);
        // Closure: all hyperplanes containing the intersection.
        let closure: Vec<usize> = (0..n)
            .filter(|&j| {
                let mut c = coeffs.clone();
                let mut r = rhs.clone();
                c.push(a.hyperplanes[j].normal.clone());
                r.push(a.hyperplanes[j].offset.clone());
                system_consistent(&c, &r) && rank(&c) == base_rank
            })
            .collect();
        closures.entry(closure).or_insert(base_rank);
    }
    let mut flats: Vec<Flat> = closures
        .into_iter()
        .map(|(hyperplanes, rank)| Flat {
            hyperplanes,
            rank,
            moebius: num::BigInt::zero(),
        })
        .collect();
    flats.sort_by(|x, y| x.rank.cmp(&y.rank).then(x.hyperplanes.cmp(&y.hyperplanes)));
    let geq = |flats: &Vec<Flat>, x: usize, y: usize| -> bool {
        flats[y].hyperplanes.iter().all(|h| flats[x].hyperplanes.contains(h))
    };
    for x in 0..flats.len() {
        if flats[x].hyperplanes.is_empty() {
            flats[x].moebius = num::BigInt::one();
            continue;
        }
        let mut acc = num::BigInt::zero();
        for y in 0..flats.len() {
            if y != x && geq(&flats, x, y) {
                acc += &flats[y].moebius;
            }
        }
        flats[x].moebius = -acc;
    }
    IntersectionPoset { flats }
}
