//! JSON exchange format for frames and models.
//!
//! ```json
//! {
//!   "worlds": ["w1", "w2", "wstar"],
//!   "edges": [["w1", "w2"], ["w1", "wstar"]],
//!   "domains": {"w1": ["a"], "w2": ["a", "b"], "wstar": ["a"]},
//!   "interp": {"P": {"w2": [["b"]]}, "p": {"w1": [[]]}},
//!   "arities": {"P": 1, "p": 0}
//! }
//! ```
//!
//! `domains` defaults to the constant singleton domain `["a0"]`. `interp`
//! lists, per letter and world, the tuples in the extension; worlds where
//! a letter is empty may be omitted. `arities` is optional and only needed
//! for letters whose extension is empty everywhere; otherwise the arity is
//! read off the tuples (and defaults to 0).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kripke::{Frame, KripkeModel, ModelError, PredicateFrame};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("world `{0}` has no entry in `domains`")]
    MissingDomain(String),
    #[error("letter `{letter}` has tuples of lengths {first} and {second}")]
    MixedArity {
        letter: String,
        first: usize,
        second: usize,
    },
}

type Interp = BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub worlds: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domains: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interp: Option<Interp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arities: Option<BTreeMap<String, usize>>,
}

impl ModelDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_frame(f: &Frame) -> Self {
        ModelDocument {
            worlds: f.worlds().to_vec(),
            edges: f
                .edges()
                .map(|(a, b)| (f.name(a).to_string(), f.name(b).to_string()))
                .collect(),
            domains: None,
            interp: None,
            arities: None,
        }
    }

    pub fn from_model(m: &KripkeModel) -> Self {
        let mut doc = Self::from_frame(m.frame());
        let f = m.frame();
        let pf = m.pframe();
        let trivial = pf.elements() == ["a0"];
        if !trivial {
            doc.domains = Some(
                (0..f.len())
                    .map(|w| {
                        let names = pf
                            .domain(w)
                            .iter()
                            .map(|&e| pf.elements()[e].clone())
                            .collect();
                        (f.name(w).to_string(), names)
                    })
                    .collect(),
            );
        }
        if !m.signature().is_empty() {
            let mut interp = Interp::new();
            for letter in m.signature().keys() {
                let mut per_world = BTreeMap::new();
                for w in 0..f.len() {
                    let tuples = m.tuples(letter, w).expect("declared letter");
                    if !tuples.is_empty() {
                        let rows = tuples
                            .iter()
                            .map(|t| t.iter().map(|&e| pf.elements()[e].clone()).collect())
                            .collect();
                        per_world.insert(f.name(w).to_string(), rows);
                    }
                }
                interp.insert(letter.clone(), per_world);
            }
            doc.interp = Some(interp);
            doc.arities = Some(m.signature().clone());
        }
        doc
    }

    pub fn to_frame(&self) -> Result<Frame, DocumentError> {
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let worlds: Vec<&str> = self.worlds.iter().map(String::as_str).collect();
        Ok(Frame::new(&worlds, &edges)?)
    }

    pub fn to_model(&self) -> Result<KripkeModel, DocumentError> {
        let frame = self.to_frame()?;
        let pframe = match &self.domains {
            None => PredicateFrame::singleton(frame),
            Some(domains) => {
                if let Some(extra) = domains.keys().find(|w| frame.world(w).is_none()) {
                    return Err(ModelError::UnknownWorld(extra.clone()).into());
                }
                let mut elements: Vec<String> = Vec::new();
                let mut sets = Vec::with_capacity(frame.len());
                for w in frame.worlds() {
                    let listed = domains
                        .get(w)
                        .ok_or_else(|| DocumentError::MissingDomain(w.clone()))?;
                    let mut set = BTreeSet::new();
                    for e in listed {
                        let idx = match elements.iter().position(|x| x == e) {
                            Some(i) => i,
                            None => {
                                elements.push(e.clone());
                                elements.len() - 1
                            }
                        };
                        set.insert(idx);
                    }
                    sets.push(set);
                }
                PredicateFrame::new(frame, elements, sets)?
            }
        };
        let empty = Interp::new();
        let interp = self.interp.as_ref().unwrap_or(&empty);
        let mut signature = self.arities.clone().unwrap_or_default();
        for (letter, per_world) in interp {
            for tuple in per_world.values().flatten() {
                match signature.get(letter) {
                    Some(&a) if a != tuple.len() => {
                        return Err(DocumentError::MixedArity {
                            letter: letter.clone(),
                            first: a,
                            second: tuple.len(),
                        })
                    }
                    Some(_) => {}
                    None => {
                        signature.insert(letter.clone(), tuple.len());
                    }
                }
            }
            signature.entry(letter.clone()).or_insert(0);
        }
        let mut model = KripkeModel::new(pframe, signature);
        for (letter, per_world) in interp {
            for (world, tuples) in per_world {
                let w = model.frame().world_or_err(world)?;
                for tuple in tuples {
                    let t = tuple
                        .iter()
                        .map(|e| {
                            model
                                .pframe()
                                .element(e)
                                .ok_or_else(|| ModelError::UnknownElement(e.clone()))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    model.insert(letter, w, t)?;
                }
            }
        }
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::ring_frame;

    #[test]
    fn frame_round_trip() {
        let g = ring_frame(3).unwrap();
        let doc = ModelDocument::from_frame(&g);
        let text = doc.to_json();
        assert!(!text.contains("domains"));
        let back = ModelDocument::parse(&text).unwrap().to_frame().unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn default_domain_is_a0() {
        let m = ModelDocument::parse(r#"{"worlds": ["u"], "edges": []}"#)
            .unwrap()
            .to_model()
            .unwrap();
        assert_eq!(m.pframe().elements(), ["a0"]);
    }

    #[test]
    fn model_round_trip() {
        let text = r#"{
            "worlds": ["u", "v"],
            "edges": [["u", "v"]],
            "domains": {"u": ["a"], "v": ["a", "b"]},
            "interp": {"P": {"v": [["b"]]}, "p": {"u": [[]]}, "Q": {}},
            "arities": {"Q": 2}
        }"#;
        let m = ModelDocument::parse(text).unwrap().to_model().unwrap();
        assert_eq!(m.signature()["Q"], 2);
        assert_eq!(m.signature()["P"], 1);
        assert!(m.holds("p", 0, &[]));
        let again = ModelDocument::from_model(&m).to_model().unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            ModelDocument::parse("{"),
            Err(DocumentError::Json(_))
        ));
        assert!(matches!(
            ModelDocument::parse(r#"{"worlds": [], "edges": []}"#)
                .unwrap()
                .to_frame(),
            Err(DocumentError::Model(ModelError::NoWorlds))
        ));
        let missing = r#"{"worlds": ["u", "v"], "edges": [], "domains": {"u": ["a"]}}"#;
        assert!(matches!(
            ModelDocument::parse(missing).unwrap().to_model(),
            Err(DocumentError::MissingDomain(_))
        ));
        let outside = r#"{"worlds": ["u"], "edges": [], "domains": {"u": ["a"]}, "interp": {"P": {"u": [["b"]]}}}"#;
        assert!(ModelDocument::parse(outside).unwrap().to_model().is_err());
        let unknown = r#"{"worlds": ["u"], "edges": [], "colour": 1}"#;
        assert!(ModelDocument::parse(unknown).is_err());
    }
}
