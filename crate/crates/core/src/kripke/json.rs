use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{Frame, KripkeError, Model, PointedModel, State};
use crate::formula::Atom;

/// Wire form of a model: `{"states":[..],"rel":[[s,t],..],"val":{"#p":[..]},"point":s}`.
///
/// Incoming state ids may be any distinct integers; they are renumbered by
/// their position in `states`. Outgoing ids are always `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub states: Vec<i64>,
    pub rel: Vec<[i64; 2]>,
    pub val: BTreeMap<String, Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<i64>,
}

impl ModelJson {
    pub fn from_model(m: &Model, point: Option<State>) -> ModelJson {
        ModelJson {
            states: (0..m.len() as i64).collect(),
            rel: m
                .frame()
                .edges()
                .map(|(s, t)| [s as i64, t as i64])
                .collect(),
            val: m
                .valuation()
                .iter()
                .map(|(atom, states)| {
                    (atom.to_string(), states.iter().map(|&s| s as i64).collect())
                })
                .collect(),
            point: point.map(|p| p as i64),
        }
    }

    pub fn into_model(self) -> Result<(Model, Option<State>), KripkeError> {
        let mut ids = HashMap::with_capacity(self.states.len());
        for (i, &id) in self.states.iter().enumerate() {
            if ids.insert(id, i).is_some() {
                return Err(KripkeError::DuplicateState(id));
            }
        }
        let lookup = |id: i64| ids.get(&id).copied().ok_or(KripkeError::UnknownState(id));
        let edges = self
            .rel
            .iter()
            .map(|&[s, t]| Ok((lookup(s)?, lookup(t)?)))
            .collect::<Result<Vec<_>, KripkeError>>()?;
        let mut valuation = BTreeMap::new();
        for (name, states) in &self.val {
            let atom =
                Atom::from_concrete(name).map_err(|e| KripkeError::BadAtom(e.to_string()))?;
            let set = states
                .iter()
                .map(|&id| lookup(id))
                .collect::<Result<BTreeSet<_>, _>>()?;
            valuation.insert(atom, set);
        }
        let model = Model::new(Frame::new(self.states.len(), edges)?, valuation)?;
        let point = self.point.map(lookup).transpose()?;
        Ok((model, point))
    }
}

impl Model {
    pub fn to_json(&self) -> ModelJson {
        ModelJson::from_model(self, None)
    }

    pub fn from_json_str(text: &str) -> Result<(Model, Option<State>), KripkeError> {
        let raw: ModelJson =
            serde_json::from_str(text).map_err(|e| KripkeError::Json(e.to_string()))?;
        raw.into_model()
    }
}

impl PointedModel {
    pub fn to_json(&self) -> ModelJson {
        ModelJson::from_model(self.model(), Some(self.point()))
    }

    /// Requires the `point` field.
    pub fn from_json_str(text: &str) -> Result<PointedModel, KripkeError> {
        let (model, point) = Model::from_json_str(text)?;
        let point = point.ok_or_else(|| KripkeError::Json("missing `point`".into()))?;
        PointedModel::new(model, point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::chain_model;

    #[test]
    fn chain_serialises_exactly() {
        let text = serde_json::to_string(&chain_model(1).to_json()).unwrap();
        assert_eq!(
            text,
            r##"{"states":[0,1,2,3],"rel":[[0,0],[0,1],[1,0],[1,1],[1,2],[2,1],[2,2],[2,3],[3,2],[3,3]],"val":{"#p":[1],"#q":[2]}}"##
        );
    }

    #[test]
    fn reads_arbitrary_ids() {
        let (m, point) = Model::from_json_str(
            r##"{"states":[10,20],"rel":[[10,20],[20,10]],"val":{"x":[20],"#p":[]},"point":20}"##,
        )
        .unwrap();
        assert_eq!(point, Some(1));
        assert!(m.holds(&Atom::variable("x"), 1));
        assert!(m.frame().has_edge(0, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Model::from_json_str(r#"{"states":[0],"rel":[[0,1]],"val":{}}"#).unwrap_err(),
            KripkeError::UnknownState(1)
        );
        assert_eq!(
            Model::from_json_str(r#"{"states":[0,0],"rel":[],"val":{}}"#).unwrap_err(),
            KripkeError::DuplicateState(0)
        );
        assert!(matches!(
            Model::from_json_str(r#"{"states":[0],"rel":[],"val":{"p":[0]}}"#),
            Err(KripkeError::BadAtom(_))
        ));
        assert!(matches!(
            Model::from_json_str("{"),
            Err(KripkeError::Json(_))
        ));
        assert!(PointedModel::from_json_str(r#"{"states":[0],"rel":[],"val":{}}"#).is_err());
    }
}
