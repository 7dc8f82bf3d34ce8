//! JSON interchange for graphs and vertex maps.
//!
//! Graph format: `{"name": string?, "n": int, "reflexive": bool | [vertex...], "edges": [[u,v], ...]}`.
//! Loops may appear as `[v,v]` pairs in `edges`, as a list under `reflexive`,
//! or on every vertex via `"reflexive": true`.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder, GraphError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LoopSpec {
    All(bool),
    Some(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    #[serde(default = "no_loops")]
    pub reflexive: LoopSpec,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

fn no_loops() -> LoopSpec {
    LoopSpec::All(false)
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(self.n);
        match &self.reflexive {
            LoopSpec::All(true) => (0..self.n).for_each(|v| b.add_loop(v)),
            LoopSpec::All(false) => {}
            LoopSpec::Some(vs) => {
                for &v in vs {
                    b.try_add_pair(v, v)?;
                }
            }
        }
        for &[u, v] in &self.edges {
            b.try_add_pair(u, v)?;
        }
        let mut g = b.build();
        if let Some(name) = &self.name {
            g = g.with_name(name.clone());
        }
        Ok(g)
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        let reflexive = if g.n() > 0 && g.is_reflexive() {
            LoopSpec::All(true)
        } else if g.loop_count() == 0 {
            LoopSpec::All(false)
        } else {
            LoopSpec::Some(g.loop_vertices().collect())
        };
        GraphJson {
            name: g.name().map(str::to_owned),
            n: g.n(),
            reflexive,
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GraphJson::deserialize(d)?.to_graph().map_err(serde::de::Error::custom)
    }
}

/// `{"map": [h0, h1, ...]}`, indexed by source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub map: Vec<usize>,
}
