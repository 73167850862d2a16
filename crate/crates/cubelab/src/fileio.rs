//! The function file format: a single versioned JSON object with `n`, `d`,
//! the boolean flag, an optional space descriptor, and the value table in
//! index order. Floating values are serialized as shortest round-trip
//! decimals, so save/load is lossless.
//!
//! Scalar functions store `values` flat (`[1, -1, ...]`); vector-valued
//! functions store one `d`-vector per point (`[[..], [..], ...]`).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cube::CubeFunction;
use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, NormedSpace};

pub const FORMAT_VERSION: u32 = 1;

/// Target-space descriptor stored alongside a function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    Lq {
        d: usize,
        /// Norm exponent; the string `"inf"` denotes the max norm.
        #[serde(with = "q_exponent")]
        q: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        type2_bound: Option<f64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        typep_bounds: Vec<(f64, f64)>,
    },
    Metric {
        m: usize,
        dist: Vec<f64>,
    },
}

impl SpaceDescriptor {
    pub fn from_normed(space: &NormedSpace) -> Self {
        SpaceDescriptor::Lq {
            d: space.d,
            q: space.q,
            type2_bound: space.type2_bound,
            typep_bounds: space.typep_bounds.clone(),
        }
    }

    pub fn from_metric(space: &FiniteMetricSpace) -> Self {
        SpaceDescriptor::Metric {
            m: space.size(),
            dist: space.dist_matrix().to_vec(),
        }
    }

    pub fn to_normed(&self) -> Result<NormedSpace> {
        match self {
            SpaceDescriptor::Lq {
                d,
                q,
                type2_bound,
                typep_bounds,
            } => {
                let mut space = NormedSpace::lq(*d, *q)?;
                if type2_bound.is_some() {
                    space.type2_bound = *type2_bound;
                }
                space.typep_bounds = typep_bounds.clone();
                space.validate()?;
                Ok(space)
            }
            SpaceDescriptor::Metric { .. } => Err(Error::Config(
                "expected an l_q space descriptor, found a metric one".into(),
            )),
        }
    }

    pub fn to_metric(&self) -> Result<FiniteMetricSpace> {
        match self {
            SpaceDescriptor::Metric { m, dist } => FiniteMetricSpace::new(*m, dist.clone()),
            SpaceDescriptor::Lq { .. } => Err(Error::Config(
                "expected a metric space descriptor, found an l_q one".into(),
            )),
        }
    }
}

/// Serializes `q = inf` as the string `"inf"` (JSON has no infinity).
mod q_exponent {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &f64, s: S) -> Result<S::Ok, S::Error> {
        if q.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*q)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(q) => Ok(q),
            Raw::Text(s) if s == "inf" => Ok(f64::INFINITY),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "invalid norm exponent {s:?}"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FunctionFile {
    version: u32,
    n: usize,
    d: usize,
    boolean: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    space: Option<SpaceDescriptor>,
    values: Value,
}

fn file_error(path: &Path, field: &str, message: impl Into<String>) -> Error {
    Error::FileFormat {
        path: path.display().to_string(),
        field: field.to_string(),
        message: message.into(),
    }
}

/// Writes `f` (and optionally its space) to `path`.
pub fn save_function(f: &CubeFunction, space: Option<&SpaceDescriptor>, path: &Path) -> Result<()> {
    let values = if f.d() == 1 {
        Value::from(f.values().to_vec())
    } else {
        Value::from(
            (0..f.points())
                .map(|i| f.value(i).to_vec())
                .collect::<Vec<_>>(),
        )
    };
    let file = FunctionFile {
        version: FORMAT_VERSION,
        n: f.n(),
        d: f.d(),
        boolean: f.is_boolean(),
        space: space.cloned(),
        values,
    };
    let text = serde_json::to_string_pretty(&file).expect("serializable");
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Reads a function file; errors name the offending field.
pub fn load_function(path: &Path) -> Result<(CubeFunction, Option<SpaceDescriptor>)> {
    let text = fs::read_to_string(path)?;
    let file: FunctionFile = serde_json::from_str(&text)
        .map_err(|e| file_error(path, "(parse)", format!("{e}")))?;
    if file.version != FORMAT_VERSION {
        return Err(file_error(
            path,
            "version",
            format!("unsupported version {}", file.version),
        ));
    }
    if file.d == 0 {
        return Err(file_error(path, "d", "d must be at least 1"));
    }
    let expected_points = 1usize
        .checked_shl(file.n as u32)
        .filter(|_| file.n <= crate::cube::MAX_DIMENSION)
        .ok_or_else(|| file_error(path, "n", "dimension out of range"))?;

    let mut flat = Vec::with_capacity(expected_points * file.d);
    let rows = file
        .values
        .as_array()
        .ok_or_else(|| file_error(path, "values", "expected an array"))?;
    if rows.len() != expected_points {
        return Err(file_error(
            path,
            "values",
            format!(
                "expected 2^n = {} entries, found {}",
                expected_points,
                rows.len()
            ),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if file.d == 1 {
            let v = row
                .as_f64()
                .ok_or_else(|| file_error(path, "values", format!("entry {i} is not a number")))?;
            flat.push(v);
        } else {
            let vector = row.as_array().ok_or_else(|| {
                file_error(path, "values", format!("entry {i} is not a {}-vector", file.d))
            })?;
            if vector.len() != file.d {
                return Err(file_error(
                    path,
                    "values",
                    format!("entry {i} has {} components, expected {}", vector.len(), file.d),
                ));
            }
            for v in vector {
                flat.push(v.as_f64().ok_or_else(|| {
                    file_error(path, "values", format!("entry {i} has a non-number component"))
                })?);
            }
        }
    }

    let f = if file.boolean {
        CubeFunction::boolean(file.n, flat)
            .map_err(|e| file_error(path, "boolean", format!("{e}")))?
    } else {
        CubeFunction::vector(file.n, file.d, flat)
            .map_err(|e| file_error(path, "values", format!("{e}")))?
    };
    Ok((f, file.space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn scalar_roundtrip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.json");
        let f = zoo::majority(3).unwrap().heat(0.37).unwrap();
        save_function(&f, None, &path).unwrap();
        let (g, space) = load_function(&path).unwrap();
        assert_eq!(f.values(), g.values());
        assert_eq!(f.n(), g.n());
        assert!(space.is_none());
    }

    #[test]
    fn vector_roundtrip_with_space() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.json");
        let f = zoo::random_vector(3, 2, 9, zoo::VectorModel::Sphere).unwrap();
        let space = NormedSpace::lq(2, 4.0).unwrap();
        save_function(&f, Some(&SpaceDescriptor::from_normed(&space)), &path).unwrap();
        let (g, descriptor) = load_function(&path).unwrap();
        assert_eq!(f.values(), g.values());
        assert_eq!(descriptor.unwrap().to_normed().unwrap(), space);
    }

    #[test]
    fn infinite_norm_exponent_survives() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.json");
        let f = zoo::random_vector(2, 2, 1, zoo::VectorModel::Cube).unwrap();
        let space = NormedSpace::lq(2, f64::INFINITY).unwrap();
        save_function(&f, Some(&SpaceDescriptor::from_normed(&space)), &path).unwrap();
        let (_, descriptor) = load_function(&path).unwrap();
        assert!(descriptor.unwrap().to_normed().unwrap().q.is_infinite());
    }

    #[test]
    fn handwritten_dictator_loads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dict.json");
        std::fs::write(
            &path,
            r#"{"version": 1, "n": 1, "d": 1, "boolean": true, "values": [1, -1]}"#,
        )
        .unwrap();
        let (f, _) = load_function(&path).unwrap();
        assert_eq!(f.values(), zoo::dictator(1, 1).unwrap().values());
        assert!(f.is_boolean());
    }

    #[test]
    fn length_mismatch_names_the_field() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(
            &path,
            r#"{"version": 1, "n": 2, "d": 1, "boolean": false, "values": [1, -1]}"#,
        )
        .unwrap();
        match load_function(&path) {
            Err(Error::FileFormat { field, message, .. }) => {
                assert_eq!(field, "values");
                assert!(message.contains("2^n"), "{message}");
            }
            other => panic!("expected a values error, got {other:?}"),
        }
    }

    #[test]
    fn bad_version_and_bad_boolean_flag() {
        let dir = tempfile::tempdir().unwrap();
        let v = dir.path().join("v.json");
        std::fs::write(
            &v,
            r#"{"version": 9, "n": 1, "d": 1, "boolean": false, "values": [1, -1]}"#,
        )
        .unwrap();
        assert!(matches!(
            load_function(&v),
            Err(Error::FileFormat { field, .. }) if field == "version"
        ));

        let b = dir.path().join("b.json");
        std::fs::write(
            &b,
            r#"{"version": 1, "n": 1, "d": 1, "boolean": true, "values": [1, -0.5]}"#,
        )
        .unwrap();
        assert!(matches!(
            load_function(&b),
            Err(Error::FileFormat { field, .. }) if field == "boolean"
        ));
    }

    #[test]
    fn metric_descriptor_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let f = CubeFunction::from_index_fn(2, |i| (i & 1) as f64).unwrap();
        let metric = FiniteMetricSpace::two_point(2.0);
        save_function(&f, Some(&SpaceDescriptor::from_metric(&metric)), &path).unwrap();
        let (_, descriptor) = load_function(&path).unwrap();
        let loaded = descriptor.unwrap().to_metric().unwrap();
        assert_eq!(loaded, metric);
    }
}
