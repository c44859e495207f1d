use crate::arith::crt_pair;
use crate::error::{Error, Result};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Residues of one unknown modulo finitely many moduli.
///
/// Entries must agree on common factors. The residue modulo `M` is known
/// exactly when `M` divides the lcm of the moduli.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResidueProfile {
    entries: BTreeMap<u64, u64>,
    /// `(r, K)`: the unknown is `r` mod `K`, all entries combined.
    combined: (u64, u64),
}

impl ResidueProfile {
    pub fn new(entries: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, r) in entries {
            if map.insert(m, r).is_some() {
                return Err(Error::IncoherentProfile(format!("modulus {m} given twice")));
            }
        }
        Self::from_map(map)
    }

    fn from_map(entries: BTreeMap<u64, u64>) -> Result<Self> {
        let mut combined = (0u64, 1u64);
        for (&m, &r) in &entries {
            if m == 0 || r >= m {
                return Err(Error::IncoherentProfile(format!(
                    "residue {r} mod {m} is out of range"
                )));
            }
            combined = crt_pair(combined.0, combined.1, r, m).ok_or_else(|| {
                Error::IncoherentProfile(format!(
                    "residue {r} mod {m} contradicts the other entries"
                ))
            })?;
        }
        Ok(ResidueProfile { entries, combined })
    }

    /// Residue modulo `m`, if determined.
    pub fn get(&self, m: u64) -> Option<u64> {
        let (r, k) = self.combined;
        (m > 0 && k % m == 0).then(|| r % m)
    }

    /// The combined congruence `(r, K)`.
    pub fn combined(&self) -> (u64, u64) {
        self.combined
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&m, &r)| (m, r))
    }
}

impl Serialize for ResidueProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.entries.iter().map(|(m, r)| (m.to_string(), r)))
    }
}

impl<'de> Deserialize<'de> for ResidueProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ResidueProfile;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from decimal moduli to residues")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                use serde::de::Error as _;
                let mut pairs = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, u64>()? {
                    if k.is_empty() || !k.bytes().all(|c| c.is_ascii_digit()) {
                        return Err(A::Error::custom(format!(
                            "modulus key `{k}` is not a decimal integer"
                        )));
                    }
                    let m: u64 = k.parse().map_err(A::Error::custom)?;
                    pairs.push((m, v));
                }
                ResidueProfile::new(pairs).map_err(A::Error::custom)
            }
        }
        d.deserialize_map(V)
    }
}
