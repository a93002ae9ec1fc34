//! Pairwise vocabulary mutuality and the bilingual status derived from it.
//!
//! Two speakers can only converse using the vocabulary they share, so the
//! usable fraction of each language is the smaller of their two
//! competencies. The bilingual status is the status-weighted sum of those
//! usable fractions.

use crate::Error;

/// One person's competency in each language, both in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompetencyProfile {
    c_m1: f64,
    c_m2: f64,
}

impl CompetencyProfile {
    pub fn new(c_m1: f64, c_m2: f64) -> Result<Self, Error> {
        for value in [c_m1, c_m2] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::CompetencyOutOfRange { value });
            }
        }
        Ok(Self { c_m1, c_m2 })
    }

    pub fn c_m1(&self) -> f64 {
        self.c_m1
    }

    pub fn c_m2(&self) -> f64 {
        self.c_m2
    }
}

/// Shared usable fraction of each language in a two-person conversation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualityPair {
    pub x_m1: f64,
    pub x_m2: f64,
}

impl MutualityPair {
    pub fn new(x_m1: f64, x_m2: f64) -> Result<Self, Error> {
        for value in [x_m1, x_m2] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::CompetencyOutOfRange { value });
            }
        }
        Ok(Self { x_m1, x_m2 })
    }
}

pub fn mutuality(p1: &CompetencyProfile, p2: &CompetencyProfile) -> MutualityPair {
    MutualityPair {
        x_m1: p1.c_m1.min(p2.c_m1),
        x_m2: p1.c_m2.min(p2.c_m2),
    }
}

/// `s_B = s_M1·x_M1 + s_M2·x_M2`.
///
/// Statuses must each lie in (0, 1) and sum to at most 1, which keeps the
/// result inside (0, 1]. A pair with no shared vocabulary at all has no
/// defined status and yields [`Error::NoCommunication`].
pub fn bilingual_status(m: &MutualityPair, s_m1: f64, s_m2: f64) -> Result<f64, Error> {
    for (name, value) in [("s_m1", s_m1), ("s_m2", s_m2)] {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::StatusOutOfRange { name, value });
        }
    }
    let sum = s_m1 + s_m2;
    if sum > 1.0 {
        return Err(Error::StatusSumAboveOne { sum });
    }
    if !(0.0..=1.0).contains(&m.x_m1) {
        return Err(Error::CompetencyOutOfRange { value: m.x_m1 });
    }
    if !(0.0..=1.0).contains(&m.x_m2) {
        return Err(Error::CompetencyOutOfRange { value: m.x_m2 });
    }
    let s_b = s_m1 * m.x_m1 + s_m2 * m.x_m2;
    if s_b <= 0.0 {
        return Err(Error::NoCommunication);
    }
    Ok(s_b)
}
