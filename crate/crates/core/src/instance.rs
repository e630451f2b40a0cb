//! An arrangement bundled with its chambers, faces, chamber graph and stratifier.

use std::sync::OnceLock;

use crate::arrangement::{enumerate_chambers, enumerate_faces, generate, Arrangement, Face, GeneratorSpec};
use crate::bitset::ChamberSet;
use crate::chamber_graph::{build_graph, ChamberGraph};
use crate::error::Result;
use crate::strata::Stratifier;

#[derive(Debug)]
pub struct Instance {
    pub arr: Arrangement,
    pub chambers: Vec<Face>,
    pub graph: ChamberGraph,
    hash: String,
    faces: OnceLock<Vec<Face>>,
    stratifier: OnceLock<Stratifier>,
    bounded: OnceLock<ChamberSet>,
}

impl Instance {
    pub fn new(arr: Arrangement) -> Self {
        let chambers = enumerate_chambers(&arr);
        let graph = build_graph(&arr, &chambers);
        let hash = arr.content_hash();
        Instance {
            arr,
            chambers,
            graph,
            hash,
            faces: OnceLock::new(),
            stratifier: OnceLock::new(),
            bounded: OnceLock::new(),
        }
    }

    pub fn generate(spec: &GeneratorSpec) -> Result<Self> {
        Ok(Self::new(generate(spec)?))
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn n(&self) -> usize {
        self.arr.len()
    }

    pub fn d(&self) -> usize {
        self.arr.dim()
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    /// Every face of every codimension.
    pub fn faces(&self) -> &[Face] {
        self.faces.get_or_init(|| enumerate_faces(&self.arr, self.arr.len()))
    }

    pub fn stratifier(&self) -> &Stratifier {
        self.stratifier.get_or_init(|| {
            Stratifier::new(&self.arr, self.faces(), &self.graph).expect("faces come from the same arrangement")
        })
    }

    /// Chambers that are bounded regions.
    pub fn bounded_chambers(&self) -> &ChamberSet {
        self.bounded.get_or_init(|| {
            ChamberSet::from_indices(
                self.chamber_count(),
                (0..self.chamber_count()).filter(|&c| self.arr.is_bounded_region(&self.chambers[c].signs)),
            )
        })
    }

    pub fn empty_set(&self) -> ChamberSet {
        ChamberSet::empty(self.chamber_count())
    }
}
