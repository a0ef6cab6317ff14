use serde::{Deserialize, Serialize};

/// Serializable construction recipe for a group.
///
/// Element indexing per constructor:
/// * `cyclic`: element `i` is `g^i`; the generator is `1`.
/// * `abelian` and `direct`: mixed radix with the first factor varying fastest.
/// * `semidirect`, `dihedral`, `wreath`, `holomorph`: pair `(a, b)` has index
///   `a + |A| * b`, with product `(a, b)(a', b') = (a * ᵇa', b b')`.
/// * `perm`: breadth-first closure order from the identity.
///
/// A semidirect `action` lists, for each constructor generator of `acting`,
/// the images of the constructor generators of `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "lowercase")]
pub enum GroupSpec {
    Perm { degree: usize, generators: Vec<Vec<u32>> },
    Cyclic { n: usize },
    Abelian { invariants: Vec<usize> },
    Symmetric { n: usize },
    Alternating { n: usize },
    /// `n` is the total order.
    Dihedral { n: usize },
    Direct { factors: Vec<GroupSpec> },
    Semidirect {
        base: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<u32>>,
    },
    Wreath { base: Box<GroupSpec>, top: Box<GroupSpec> },
    Holomorph { base: Box<GroupSpec> },
}

impl GroupSpec {
    pub fn cyclic(n: usize) -> Self {
        GroupSpec::Cyclic { n }
    }

    pub fn direct(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Direct { factors }
    }

    pub fn semidirect(base: GroupSpec, acting: GroupSpec, action: Vec<Vec<u32>>) -> Self {
        GroupSpec::Semidirect {
            base: Box::new(base),
            acting: Box::new(acting),
            action,
        }
    }

    pub fn wreath(base: GroupSpec, top: GroupSpec) -> Self {
        GroupSpec::Wreath {
            base: Box::new(base),
            top: Box::new(top),
        }
    }

    pub fn holomorph(base: GroupSpec) -> Self {
        GroupSpec::Holomorph { base: Box::new(base) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
