use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Diagnosis of a step that could not meet its threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureReport {
    pub stage: String,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub needed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved: Option<f64>,
}

impl FailureReport {
    pub fn new(stage: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            stage: stage.into(),
            reason: reason.into(),
            needed: None,
            achieved: None,
        }
    }

    pub fn shortfall(mut self, needed: f64, achieved: f64) -> Self {
        self.needed = Some(needed);
        self.achieved = Some(achieved);
        self
    }
}

/// Either the requested object or a diagnosis of why it could not be produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome<T> {
    Success(T),
    Failure(FailureReport),
}

impl<T> Outcome<T> {
    pub fn success(self) -> Option<T> {
        match self {
            Outcome::Success(t) => Some(t),
            Outcome::Failure(_) => None,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success(_))
    }
}

/// Payload of a [`Certificate`], tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertBody {
    Expansion(crate::lemmas::ExpansionCert),
    Bipartite(crate::constructor::BipartiteCert),
    Cycle(crate::constructor::CycleWitness),
    Reachability(crate::lemmas::PathFamily),
    Failure(FailureReport),
}

/// A proof object together with a digest of the inputs it was computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "inputs-hash")]
    pub inputs_hash: String,
    #[serde(flatten)]
    pub body: CertBody,
}

impl Certificate {
    /// `inputs` are hashed in order, each followed by a NUL byte.
    pub fn new(body: CertBody, inputs: &[&str]) -> Self {
        Self {
            inputs_hash: inputs_hash(inputs),
            body,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            CertBody::Expansion(_) => "expansion",
            CertBody::Bipartite(_) => "bipartite",
            CertBody::Cycle(_) => "cycle",
            CertBody::Reachability(_) => "reachability",
            CertBody::Failure(_) => "failure",
        }
    }
}

pub fn inputs_hash(inputs: &[&str]) -> String {
    let mut h = Sha256::new();
    for s in inputs {
        h.update(s.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_is_flat_and_round_trips() {
        let c = Certificate::new(
            CertBody::Failure(FailureReport::new("split", "no luck").shortfall(2.0, 1.0)),
            &["graph", "config"],
        );
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["kind"], "failure");
        assert_eq!(v["stage"], "split");
        assert_eq!(v["inputs-hash"].as_str().unwrap().len(), 64);
        let back: Certificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.kind(), "failure");
    }

    #[test]
    fn hash_separates_inputs() {
        assert_ne!(inputs_hash(&["ab", "c"]), inputs_hash(&["a", "bc"]));
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
