//! The Minkowski cipher.
//!
//! A message is an ordered triple of points spanning a hyperbola `H`. Each
//! message point `mᵢ` is moved along the line towards its key point `kᵢ` to the
//! second intersection with `H`:
//!
//! | relation of `m` and `k` | ciphertext point                      |
//! |-------------------------|---------------------------------------|
//! | secant line             | the other point of `line(m,k) ∩ H`    |
//! | tangent line            | `m` itself                            |
//! | same x (gen1-parallel)  | the point of `H` on the row `y = y_k` |
//! | same y (gen2-parallel)  | the point of `H` on the column `x = x_k` |
//!
//! Decryption runs the same table from the ciphertext side. Parallel branches
//! swap on the way back, so the cipher is an involution for a fixed key.
//!
//! Keys are only meaningful relative to a message. [`MinkowskiCipher::validate_key`]
//! enforces, in this order: `kᵢ ∉ H`; no parallel move onto an asymptote;
//! disjoint footprints `H ∩ line(mᵢ,kᵢ)`; pairwise distinct ciphertext points.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSpec};
use crate::minkowski::{parallel_class, MinkCycle, MinkPoint, MinkowskiPlane, ParallelClass};

/// Default cap on rejection-sampling attempts in [`MinkowskiCipher::keygen`].
pub const DEFAULT_MAX_ATTEMPTS: u64 = 1_000_000;

/// An ordered triple of points on a common hyperbola, with that hyperbola.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MinkMessage {
    points: [MinkPoint; 3],
    cycle: MinkCycle,
}

/// Ciphertexts satisfy exactly the same invariants as messages.
pub type MinkCiphertext = MinkMessage;

impl MinkMessage {
    pub fn points(&self) -> [MinkPoint; 3] {
        self.points
    }

    pub fn cycle(&self) -> MinkCycle {
        self.cycle
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MinkKey {
    pub points: [MinkPoint; 3],
}

impl MinkKey {
    pub fn new(points: [MinkPoint; 3]) -> Self {
        MinkKey { points }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Secant,
    Tangent,
    Gen1Parallel,
    Gen2Parallel,
}

/// Why a single key point cannot be used with a given point of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointFault {
    OnCycle,
    AsymptoteParallel,
}

/// One move `m → c` along the line towards `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointStep {
    pub branch: Branch,
    pub c: MinkPoint,
    /// `H ∩ line(m,k)`; the second slot is filled only for secants.
    pub footprint: [Option<MinkPoint>; 2],
}

impl PointStep {
    fn hits(&self, p: &MinkPoint) -> bool {
        self.footprint.iter().any(|f| f.as_ref() == Some(p))
    }

    pub(crate) fn overlaps(&self, other: &PointStep) -> bool {
        self.footprint.iter().flatten().any(|p| other.hits(p))
    }
}

/// First violated key rule. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KeyViolation {
    KeyPointOnCycle { index: usize },
    AsymptoteParallel { index: usize },
    SharedIntersection { i: usize, j: usize },
    CoincidingCiphertext { i: usize, j: usize },
}

impl KeyViolation {
    /// Short machine-friendly rule name.
    pub fn rule(&self) -> &'static str {
        match self {
            KeyViolation::KeyPointOnCycle { .. } => "key_point_on_cycle",
            KeyViolation::AsymptoteParallel { .. } => "asymptote_parallel",
            KeyViolation::SharedIntersection { .. } => "shared_intersection",
            KeyViolation::CoincidingCiphertext { .. } => "coinciding_ciphertext",
        }
    }
}

impl fmt::Display for KeyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyViolation::KeyPointOnCycle { index } => write!(f, "key point on cycle (k{index})"),
            KeyViolation::AsymptoteParallel { index } => {
                write!(f, "parallel move onto an asymptote (k{index})")
            }
            KeyViolation::SharedIntersection { i, j } => {
                write!(f, "lines through m{i},k{i} and m{j},k{j} share a point of the cycle")
            }
            KeyViolation::CoincidingCiphertext { i, j } => {
                write!(f, "ciphertext points c{i} and c{j} coincide")
            }
        }
    }
}

impl std::error::Error for KeyViolation {}

/// Result of [`MinkowskiCipher::keygen`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeygenOutcome {
    pub key: MinkKey,
    pub attempts: u64,
}

#[derive(Debug, Clone)]
pub struct MinkowskiCipher {
    plane: MinkowskiPlane,
}

impl MinkowskiCipher {
    pub fn new(field: Field) -> Self {
        MinkowskiCipher {
            plane: MinkowskiPlane::new(field),
        }
    }

    pub fn field(&self) -> &Field {
        self.plane.field()
    }

    pub fn plane(&self) -> &MinkowskiPlane {
        &self.plane
    }

    /// Validates three points as a message and attaches their hyperbola.
    pub fn message(&self, points: [MinkPoint; 3]) -> Result<MinkMessage> {
        let q = self.field().order();
        for p in &points {
            if p.x.value() >= q || p.y.value() >= q {
                return Err(Error::InvalidMessage("coordinate outside the field".into()));
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if parallel_class(&points[i], &points[j]) != ParallelClass::None {
                return Err(Error::InvalidMessage(format!(
                    "points {} and {} are parallel",
                    i + 1,
                    j + 1
                )));
            }
        }
        let cycle = self
            .plane
            .cycle_through(&points[0], &points[1], &points[2])
            .map_err(|_| Error::InvalidMessage("points lie on one line".into()))?;
        Ok(MinkMessage { points, cycle })
    }

    /// Moves `m ∈ h` towards `k`. The caller guarantees `m ∈ h`.
    pub fn step(&self, h: &MinkCycle, m: &MinkPoint, k: &MinkPoint) -> Result<PointStep, PointFault> {
        let f = self.field();
        debug_assert!(self.plane.incident(m, h));
        if self.plane.incident(k, h) {
            return Err(PointFault::OnCycle);
        }
        let (branch, c) = match parallel_class(m, k) {
            ParallelClass::Gen1 => {
                let x = self.plane.meet_horizontal(h, k.y).ok_or(PointFault::AsymptoteParallel)?;
                (Branch::Gen1Parallel, MinkPoint::new(x, k.y))
            }
            ParallelClass::Gen2 => {
                let y = self.plane.meet_vertical(h, k.x).ok_or(PointFault::AsymptoteParallel)?;
                (Branch::Gen2Parallel, MinkPoint::new(k.x, y))
            }
            ParallelClass::Both => unreachable!("k = m would lie on the cycle"),
            ParallelClass::None => {
                // y = s·x + t into (x−a)(y−b) = c gives s·x² + (t−b−a·s)·x + … = 0;
                // the roots sum to −(t−b−a·s)/s.
                let s = f.div(f.sub(k.y, m.y), f.sub(k.x, m.x)).expect("non-parallel");
                let t = f.sub(m.y, f.mul(s, m.x));
                let lin = f.sub(f.sub(t, h.b()), f.mul(h.a(), s));
                let x2 = f.sub(f.neg(f.div(lin, s).expect("slanted")), m.x);
                let c = MinkPoint::new(x2, f.add(f.mul(s, x2), t));
                let branch = if c == *m { Branch::Tangent } else { Branch::Secant };
                (branch, c)
            }
        };
        let footprint = match branch {
            Branch::Secant => [Some(*m), Some(c)],
            _ => [Some(*m), None],
        };
        Ok(PointStep { branch, c, footprint })
    }

    /// Checks every key rule and returns the three moves on success.
    pub fn validate_key(&self, msg: &MinkMessage, key: &MinkKey) -> Result<[PointStep; 3], KeyViolation> {
        let h = msg.cycle;
        let mut steps = [None; 3];
        for i in 0..3 {
            steps[i] = Some(self.step(&h, &msg.points[i], &key.points[i]).map_err(|fault| match fault {
                PointFault::OnCycle => KeyViolation::KeyPointOnCycle { index: i + 1 },
                PointFault::AsymptoteParallel => KeyViolation::AsymptoteParallel { index: i + 1 },
            })?);
        }
        let steps = steps.map(|s| s.expect("filled above"));
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if steps[i].overlaps(&steps[j]) {
                return Err(KeyViolation::SharedIntersection { i: i + 1, j: j + 1 });
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if steps[i].c == steps[j].c {
                return Err(KeyViolation::CoincidingCiphertext { i: i + 1, j: j + 1 });
            }
        }
        Ok(steps)
    }

    /// Single-point encryption with per-point validation.
    pub fn encrypt_point(&self, h: &MinkCycle, m: &MinkPoint, k: &MinkPoint) -> Result<MinkPoint> {
        if !self.plane.incident(m, h) {
            return Err(Error::InvalidMessage("point is not on the cycle".into()));
        }
        self.step(h, m, k).map(|s| s.c).map_err(point_error)
    }

    pub fn encrypt(&self, msg: &MinkMessage, key: &MinkKey) -> Result<MinkCiphertext> {
        self.encrypt_traced(msg, key).map(|(ct, _)| ct)
    }

    /// Encryption that also reports which branch each point took.
    pub fn encrypt_traced(&self, msg: &MinkMessage, key: &MinkKey) -> Result<(MinkCiphertext, [Branch; 3])> {
        let steps = self.validate_key(msg, key).map_err(Error::InvalidKey)?;
        let ct = MinkMessage {
            points: steps.map(|s| s.c),
            cycle: msg.cycle,
        };
        Ok((ct, steps.map(|s| s.branch)))
    }

    /// Inverse of [`encrypt`](Self::encrypt).
    ///
    /// The ciphertext must be a valid message and every key point must be
    /// usable from its ciphertext point. The footprint rule is relative to the
    /// plaintext and is enforced at encryption only.
    pub fn decrypt(&self, ct: &MinkCiphertext, key: &MinkKey) -> Result<MinkMessage> {
        let h = ct.cycle;
        let mut out = [MinkPoint::default(); 3];
        for i in 0..3 {
            out[i] = self
                .step(&h, &ct.points[i], &key.points[i])
                .map_err(|fault| {
                    Error::InvalidKey(match fault {
                        PointFault::OnCycle => KeyViolation::KeyPointOnCycle { index: i + 1 },
                        PointFault::AsymptoteParallel => KeyViolation::AsymptoteParallel { index: i + 1 },
                    })
                })?
                .c;
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if out[i] == out[j] {
                return Err(Error::InvalidKey(KeyViolation::CoincidingCiphertext {
                    i: i + 1,
                    j: j + 1,
                }));
            }
        }
        Ok(MinkMessage {
            points: out,
            cycle: h,
        })
    }

    /// Rejection-samples a valid key for `msg` from uniform affine triples.
    pub fn keygen(&self, msg: &MinkMessage, seed: u64, max_attempts: u64) -> Result<KeygenOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = self.field();
        for attempt in 1..=max_attempts {
            let key = MinkKey::new(std::array::from_fn(|_| {
                let x = f.random(&mut rng);
                MinkPoint::new(x, f.random(&mut rng))
            }));
            if self.validate_key(msg, &key).is_ok() {
                return Ok(KeygenOutcome { key, attempts: attempt });
            }
        }
        Err(Error::Exhausted {
            attempts: max_attempts,
        })
    }
}

fn point_error(fault: PointFault) -> Error {
    match fault {
        PointFault::OnCycle => Error::InvalidKeyPoint("key point on cycle"),
        PointFault::AsymptoteParallel => Error::InvalidKeyPoint("parallel move onto an asymptote"),
    }
}

/// A coordinate in a JSON document: either a number or field text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Num(u64),
    Text(String),
}

impl Coord {
    fn resolve(&self, field: &Field) -> Result<FieldElement> {
        match self {
            Coord::Num(v) => field.element(*v),
            Coord::Text(s) => field.parse(s),
        }
    }
}

/// JSON document carrying any of a message, key and ciphertext:
/// `{"field":"p:5","msg":[[0,1],[1,2],[2,4]],"key":[[1,3],[0,3],[0,3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MinkDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub msg: Option<Vec<[Coord; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<Vec<[Coord; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ct: Option<Vec<[Coord; 2]>>,
}

impl MinkDoc {
    pub fn encode(points: &[MinkPoint; 3]) -> Vec<[Coord; 2]> {
        points
            .iter()
            .map(|p| [Coord::Num(p.x.value() as u64), Coord::Num(p.y.value() as u64)])
            .collect()
    }

    pub fn decode(field: &Field, coords: &[[Coord; 2]], what: &'static str) -> Result<[MinkPoint; 3]> {
        if coords.len() != 3 {
            return Err(Error::Parse {
                what,
                input: format!("{} points", coords.len()),
            });
        }
        let mut out = [MinkPoint::default(); 3];
        for (slot, [x, y]) in out.iter_mut().zip(coords) {
            *slot = MinkPoint::new(x.resolve(field)?, y.resolve(field)?);
        }
        Ok(out)
    }
}
