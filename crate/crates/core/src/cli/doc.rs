//! Text serialization of states.
//!
//! A document lists the nonzero left-standing coefficients of a state,
//! ascending in `n`, minus before plus, and each coefficient as its blades
//! in ascending mask order. Bit `j-1` of a mask stands for `e_j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::superfock::{FockSpace, Sector, SuperState};

pub const STATE_VERSION: &str = "supergrass-state/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BladeRecord {
    pub mask: u32,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub n: usize,
    /// `"-"` or `"+"`.
    pub sector: String,
    pub blades: Vec<BladeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub version: String,
    #[serde(rename = "L")]
    pub order: usize,
    pub cutoff: usize,
    pub guard: usize,
    pub records: Vec<LevelRecord>,
}

impl StateDocument {
    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed state document: {e}")))
    }
}

pub fn serialize_state(psi: &SuperState) -> StateDocument {
    let space = psi.space();
    let mut records = Vec::new();
    for n in 0..=space.cutoff {
        for sector in [Sector::Minus, Sector::Plus] {
            let c = psi.get(n, sector);
            if c.is_zero() {
                continue;
            }
            let mut blades: Vec<BladeRecord> = c.blades().map(|(mask, z)| BladeRecord { mask, re: z.re, im: z.im }).collect();
            blades.sort_by_key(|b| b.mask);
            records.push(LevelRecord { n, sector: sector.symbol().to_string(), blades });
        }
    }
    StateDocument { version: STATE_VERSION.to_string(), order: space.order, cutoff: space.cutoff, guard: space.guard, records }
}

pub fn parse_state(doc: &StateDocument) -> Result<SuperState> {
    if doc.version != STATE_VERSION {
        return Err(Error::Config(format!("state document version {} (expected {STATE_VERSION})", doc.version)));
    }
    let space = FockSpace::new(doc.order, doc.cutoff, doc.guard)?;
    let mut coeffs = Vec::with_capacity(doc.records.len());
    for r in &doc.records {
        let sector = match r.sector.as_str() {
            "-" => Sector::Minus,
            "+" => Sector::Plus,
            s => return Err(Error::Config(format!("unknown sector {s:?} at n = {}", r.n))),
        };
        if r.n > doc.cutoff {
            return Err(Error::Config(format!("level {} above the cutoff {}", r.n, doc.cutoff)));
        }
        for b in &r.blades {
            if doc.order < 32 && b.mask >> doc.order != 0 {
                return Err(Error::Config(format!("mask {} needs more than {} generators", b.mask, doc.order)));
            }
        }
        let c = GrassmannElement::from_blades(doc.order, r.blades.iter().map(|b| (b.mask, Complex64::new(b.re, b.im))))?;
        coeffs.push((r.n, sector, c));
    }
    SuperState::from_coefficients(space, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil;

    #[test]
    fn vacuum_document() {
        let sp = FockSpace::new(4, 6, 2).unwrap();
        let doc = serialize_state(&sp.vacuum());
        assert_eq!(doc.records.len(), 1);
        let r = &doc.records[0];
        assert_eq!((r.n, r.sector.as_str()), (0, "-"));
        assert_eq!(r.blades, vec![BladeRecord { mask: 0, re: 1.0, im: 0.0 }]);
    }

    #[test]
    fn round_trip_is_exact() {
        let mut rng = testutil::rng(21);
        let sp = FockSpace::new(5, 10, 3).unwrap();
        for _ in 0..5 {
            let psi = testutil::state(&mut rng, sp, 10, 0.4);
            let text = serialize_state(&psi).to_text();
            let back = parse_state(&StateDocument::from_text(&text).unwrap()).unwrap();
            assert_eq!(back.sub(&psi).max_abs(), 0.0);
            assert_eq!(serialize_state(&back).to_text(), text);
        }
    }

    #[test]
    fn ordering_is_canonical() {
        let mut rng = testutil::rng(22);
        let sp = FockSpace::new(4, 5, 1).unwrap();
        let doc = serialize_state(&testutil::state(&mut rng, sp, 5, 0.6));
        let keys: Vec<(usize, bool)> = doc.records.iter().map(|r| (r.n, r.sector == "+")).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(doc.records.iter().all(|r| r.blades.windows(2).all(|w| w[0].mask < w[1].mask)));
    }

    #[test]
    fn corrupted_documents_are_rejected() {
        let sp = FockSpace::new(4, 6, 2).unwrap();
        let mut doc = serialize_state(&sp.vacuum());
        doc.records[0].blades[0].mask = 16;
        assert!(parse_state(&doc).is_err());
        let mut doc = serialize_state(&sp.vacuum());
        doc.version = "supergrass-state/0".into();
        assert!(parse_state(&doc).is_err());
        let mut doc = serialize_state(&sp.vacuum());
        doc.records[0].sector = "0".into();
        assert!(parse_state(&doc).is_err());
        assert!(StateDocument::from_text("{\"version\": 1}").is_err());
    }
}
