//! JSON input files. Permutations are arrays of 1-based images, scalars are
//! cyclotomics `{order, coeffs}` (or a rational string / integer), matrices
//! are arrays of rows.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::group::abelian::Element;
use crate::group::{generate, AbelianGroup, Perm, PermGroup};
use crate::thoma::SplitData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupFile {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupFile { degree: g.degree(), generators: g.generators().to_vec() }
    }

    pub fn to_group(&self, cap: usize) -> Result<PermGroup> {
        check_degrees(self.degree, &self.generators)?;
        generate(self.degree, &self.generators, cap)
    }
}

fn check_degrees(degree: usize, perms: &[Perm]) -> Result<()> {
    match perms.iter().find(|p| p.degree() != degree) {
        Some(p) => Err(Error::DegreeMismatch { expected: degree, found: p.degree() }),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitGenerator {
    pub lambda: Element,
    pub phi: Perm,
}

/// Λ ⋊ Φ: `action[i]` is the integer matrix of the i-th generator of Φ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitFile {
    pub lambda: AbelianGroup,
    pub phi: GroupFile,
    pub action: Vec<Vec<Vec<i64>>>,
    pub generators: Vec<SplitGenerator>,
}

impl SplitFile {
    pub fn to_data(&self, cap: usize) -> Result<SplitData> {
        let lambda = AbelianGroup::new(self.lambda.free_rank(), self.lambda.factors().to_vec())?;
        let phi = self.phi.to_group(cap)?;
        let gens = self.generators.iter().map(|g| (g.lambda.clone(), g.phi.clone())).collect();
        SplitData::new(lambda, phi, self.action.clone(), gens)
    }
}

/// Images of the generators of a group under a unitary representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupFile>,
    pub images: Vec<ExactMatrix>,
}

/// Images of the generators of a group under an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoFile {
    pub images: Vec<Perm>,
}

/// A finite group together with a chosen generating tuple, which need not
/// be the tuple the group was generated from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsFile {
    pub generators: Vec<Perm>,
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_json(value) + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Cyc};
    use crate::group::catalog;
    use crate::magic::MagicModel;

    #[test]
    fn group_file_round_trip() {
        let text = r#"{"degree": 6, "generators": [[2,1,4,3,5,6], [2,1,3,4,6,5]]}"#;
        let f: GroupFile = parse_json(text).unwrap();
        let g = f.to_group(1000).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(GroupFile::from_group(&g), f);
        let again: GroupFile = parse_json(&to_json(&f)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn bad_inputs_are_parse_or_domain_errors() {
        assert!(matches!(parse_json::<GroupFile>("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_json::<GroupFile>(r#"{"degree": 3, "generators": [[1,1,2]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_json::<GroupFile>(r#"{"degree": 3, "gens": []}"#), Err(Error::Parse(_))));
        let f: GroupFile = parse_json(r#"{"degree": 3, "generators": [[2,1]]}"#).unwrap();
        assert_eq!(f.to_group(10).unwrap_err(), Error::DegreeMismatch { expected: 3, found: 2 });
    }

    #[test]
    fn scalars_and_matrices() {
        assert_eq!(parse_json::<Cyc>(r#""-3/4""#).unwrap(), Cyc::rational(rat(-3, 4)));
        assert_eq!(parse_json::<Cyc>("2").unwrap(), Cyc::integer(2));
        let z = parse_json::<Cyc>(r#"{"order": 5, "coeffs": ["0", "1"]}"#).unwrap();
        assert_eq!(z, Cyc::root_of_unity(5, 1));
        let rep: RepFile = parse_json(r#"{"images": [[[0, 1], [1, 0]]]}"#).unwrap();
        assert_eq!(rep.images[0], catalog::permutation_matrix(&Perm::from_images(&[2, 1]).unwrap()));
        let back: RepFile = parse_json(&to_json(&rep)).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn split_file() {
        // infinite dihedral group Z ⋊ Z_2
        let text = r#"{
            "lambda": {"free_rank": 1, "factors": []},
            "phi": {"degree": 2, "generators": [[2, 1]]},
            "action": [[[-1]]],
            "generators": [{"lambda": [1], "phi": [1, 2]}, {"lambda": [0], "phi": [2, 1]}]
        }"#;
        let f: SplitFile = parse_json(text).unwrap();
        assert!(f.to_data(100).is_ok());
        assert_eq!(parse_json::<SplitFile>(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn model_file() {
        let text = r#"{"n": 1, "dim": 1, "points": [{"weight": "1", "entries": [[[[1]]]]}]}"#;
        let m: MagicModel<Cyc> = parse_json(text).unwrap();
        assert_eq!(parse_json::<MagicModel<Cyc>>(&to_json(&m)).unwrap(), m);
    }
}
