use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::complex::{matrix_from_rows, ChainMap, Complex, Degree};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::powers::Sign;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    version: String,
    #[serde(default)]
    objects: BTreeMap<String, Complex>,
    #[serde(default)]
    maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    tasks: Vec<Task>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapSpec {
    source: ObjectRef,
    target: ObjectRef,
    #[serde(default)]
    blocks: BTreeMap<Degree, Vec<Vec<Rational>>>,
}

/// A map end: the name of a declared object or an inline complex.
type ObjectRef = serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Wedge,
    Sym,
    Schur,
}

impl PowerKind {
    pub fn name(self) -> &'static str {
        match self {
            PowerKind::Wedge => "wedge",
            PowerKind::Sym => "sym",
            PowerKind::Schur => "schur",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase", deny_unknown_fields)]
pub enum Task {
    Powers {
        object: String,
        kind: PowerKind,
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        partition: Option<Vec<usize>>,
    },
    Dim {
        object: String,
    },
    Filtration {
        map: String,
        m: usize,
        sign: Sign,
    },
    Verify {
        map: String,
        sign: Sign,
        #[serde(default)]
        a_x: Option<usize>,
        #[serde(default)]
        b_z: Option<usize>,
    },
    Idempotents {
        n: usize,
    },
    Split {
        a: String,
        b: String,
        c: String,
        d: String,
    },
}

impl Task {
    pub fn command(&self) -> &'static str {
        match self {
            Task::Powers { .. } => "powers",
            Task::Dim { .. } => "dim",
            Task::Filtration { .. } => "filtration",
            Task::Verify { .. } => "verify",
            Task::Idempotents { .. } => "idempotents",
            Task::Split { .. } => "split",
        }
    }
}

/// A parsed instance with every name resolved and every map checked.
pub struct Instance {
    pub objects: BTreeMap<String, Arc<Complex>>,
    pub maps: BTreeMap<String, ChainMap>,
    pub tasks: Vec<Task>,
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        let raw: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported version {:?}, expected {SCHEMA_VERSION:?}", raw.version)));
        }
        let objects: BTreeMap<String, Arc<Complex>> = raw.objects.into_iter().map(|(k, c)| (k, Arc::new(c))).collect();
        let mut maps = BTreeMap::new();
        for (name, spec) in raw.maps {
            let lookup = |o: &ObjectRef| match o {
                ObjectRef::String(o) => objects
                    .get(o)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("map {name:?} refers to unknown object {o:?}"))),
                inline => serde_json::from_value::<Complex>(inline.clone())
                    .map(Arc::new)
                    .map_err(|e| Error::Parse(format!("map {name:?}: {e}"))),
            };
            let (source, target) = (lookup(&spec.source)?, lookup(&spec.target)?);
            let mut blocks = Vec::new();
            for (k, rows) in spec.blocks {
                let m = matrix_from_rows(rows, target.dim(k), source.dim(k))
                    .map_err(|e| Error::Parse(format!("map {name:?}, degree {k}: {e}")))?;
                blocks.push((k, m));
            }
            maps.insert(name, ChainMap::new(source, target, blocks)?);
        }
        let instance = Instance { objects, maps, tasks: raw.tasks };
        for task in &instance.tasks {
            instance.check_names(task)?;
        }
        Ok(instance)
    }

    fn check_names(&self, task: &Task) -> Result<()> {
        let objects: Vec<&String> = match task {
            Task::Powers { object, .. } | Task::Dim { object } => vec![object],
            _ => vec![],
        };
        let maps: Vec<&String> = match task {
            Task::Filtration { map, .. } | Task::Verify { map, .. } => vec![map],
            Task::Split { a, b, c, d } => vec![a, b, c, d],
            _ => vec![],
        };
        if let Some(o) = objects.into_iter().find(|o| !self.objects.contains_key(*o)) {
            return Err(Error::Parse(format!("task refers to unknown object {o:?}")));
        }
        if let Some(m) = maps.into_iter().find(|m| !self.maps.contains_key(*m)) {
            return Err(Error::Parse(format!("task refers to unknown map {m:?}")));
        }
        Ok(())
    }

    pub fn object(&self, name: &str) -> &Arc<Complex> {
        &self.objects[name]
    }

    pub fn map(&self, name: &str) -> &ChainMap {
        &self.maps[name]
    }
}
