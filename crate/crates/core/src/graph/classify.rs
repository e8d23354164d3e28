// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use serde::{Deserialize, Serialize};

use super::{has_minor, is_planar, Graph};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub planar: bool,
    pub outerplanar: bool,
    /// `|E| <= 3|V| - 6`, taken as passed below three vertices where the
    /// bound does not apply.
    pub euler_quick_pass: bool,
    pub k4_minor: bool,
    pub k33_minus_edge_minor: bool,
    /// No `K4` and no `K3,3` minus an edge as a minor.
    pub theta_obstruction_free: bool,
}

pub fn euler_quick_pass(g: &Graph) -> bool {
    let v = g.vertex_count();
    v < 3 || g.edge_count() <= 3 * v - 6
}

pub fn classify(g: &Graph, budget: usize) -> Result<Classification> {
    let planar = is_planar(g).is_some();
    let k4_minor = has_minor(g, &Graph::complete(4), budget)?.is_some();
    let k33_minus_edge_minor = has_minor(g, &Graph::k33_minus_edge(), budget)?.is_some();
    let outerplanar =
        planar && !k4_minor && has_minor(g, &Graph::complete_bipartite(2, 3), budget)?.is_none();
    Ok(Classification {
        planar,
        outerplanar,
        euler_quick_pass: euler_quick_pass(g),
        k4_minor,
        k33_minus_edge_minor,
        theta_obstruction_free: !k4_minor && !k33_minus_edge_minor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        let c = classify(&Graph::complete(4), 1_000_000).unwrap();
        assert!(c.planar && !c.outerplanar && c.k4_minor && !c.theta_obstruction_free);
        let c = classify(&Graph::complete_bipartite(2, 3), 1_000_000).unwrap();
        assert!(c.planar && !c.outerplanar && c.theta_obstruction_free);
        let c = classify(&Graph::cycle(3), 1_000_000).unwrap();
        assert!(c.planar && c.outerplanar && c.euler_quick_pass && c.theta_obstruction_free);
        let c = classify(&Graph::complete(5), 1_000_000).unwrap();
        assert!(!c.planar && !c.euler_quick_pass);
        let c = classify(&Graph::k33_minus_edge(), 1_000_000).unwrap();
        assert!(c.planar && c.k33_minus_edge_minor && c.k4_minor);
    }
}
