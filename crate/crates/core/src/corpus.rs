//! Bundled example inputs, in the same text formats the CLI reads.

use crate::circuit::CircuitMatrix;
use crate::graphs::Hypergraph;
use crate::ising::IsingInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Graph,
    Circuit,
    Ising,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub summary: &'static str,
    pub text: &'static str,
}

impl Fixture {
    /// Suggested file name when written to disk.
    pub fn file_name(&self) -> String {
        let ext = match self.kind {
            FixtureKind::Graph => "graph",
            FixtureKind::Circuit => "h",
            FixtureKind::Ising => "ising",
        };
        format!("{}.{ext}", self.name)
    }

    pub fn graph(&self) -> Option<Hypergraph> {
        match self.kind {
            FixtureKind::Graph | FixtureKind::Ising => Hypergraph::parse(self.text).ok(),
            FixtureKind::Circuit => None,
        }
    }

    pub fn circuit(&self) -> Option<CircuitMatrix> {
        (self.kind == FixtureKind::Circuit).then(|| CircuitMatrix::parse(self.text).ok()).flatten()
    }

    pub fn ising(&self) -> Option<IsingInstance<f64>> {
        (self.kind == FixtureKind::Ising).then(|| IsingInstance::parse(self.text).ok()).flatten()
    }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "triangle",
        kind: FixtureKind::Graph,
        summary: "K3; one Eulerian subgraph besides the empty one",
        text: "v 3\n1 2\n2 3\n1 3\n",
    },
    Fixture {
        name: "bowtie",
        kind: FixtureKind::Graph,
        summary: "two triangles sharing vertex 3",
        text: "v 5\n1 2\n2 3\n1 3\n3 4\n4 5\n3 5\n",
    },
    Fixture {
        name: "cube",
        kind: FixtureKind::Graph,
        summary: "Q3 cube graph; bipartite, so every Eulerian subgraph has an even edge count",
        text: "v 8\n1 2\n1 3\n1 5\n2 4\n2 6\n3 4\n3 7\n4 8\n5 6\n5 7\n6 8\n7 8\n",
    },
    Fixture {
        name: "h-three-gate",
        kind: FixtureKind::Circuit,
        summary: "3 qubits, gates Z⊗X⊗Y, Z⊗Z⊗Y, Y⊗Z⊗Z",
        text: "# qubits=3 gates=3\n6 3\n1 1 1\n0 0 1\n0 1 1\n1 0 0\n1 1 1\n1 1 0\n",
    },
    Fixture {
        name: "h-six-gate",
        kind: FixtureKind::Circuit,
        summary: "4 qubits, 6 gates; flip bits give a multigraph with a double edge and a loop",
        text: "# qubits=4 gates=6\n8 6\n1 0 0 0 0 0\n1 0 0 1 0 0\n0 1 0 0 0 0\n0 1 0 0 1 0\n0 0 1 1 1 1\n0 0 1 0 1 1\n0 0 0 1 0 0\n1 1 1 1 0 0\n",
    },
    Fixture {
        name: "sign-flip",
        kind: FixtureKind::Circuit,
        summary: "triangle lift whose phase is odd on the full cycle; signed function 1 - x^3",
        text: "# qubits=3 gates=3\n6 3\n1 1 1\n1 0 1\n0 1 0\n1 1 0\n0 0 0\n0 1 1\n",
    },
    Fixture {
        name: "k3-ferro",
        kind: FixtureKind::Ising,
        summary: "ferromagnetic triangle, J = 1, beta = 1",
        text: "v 3\n1 2\n2 3\n1 3\nJ 1\nbeta 1\nw 000\n",
    },
    Fixture {
        name: "k3-frustrated",
        kind: FixtureKind::Ising,
        summary: "triangle with one antiferromagnetic bond, J = 1, beta = 1",
        text: "v 3\n1 2\n2 3\n1 3\nJ 1\nbeta 1\nw 100\n",
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
