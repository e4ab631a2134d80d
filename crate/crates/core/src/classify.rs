//! Troplanarity of trivalent planar graphs of genus at most six.
//!
//! Obstructions are tested in a fixed order; the first that fires is
//! reported. A graph with no obstruction is troplanar, with a realizing
//! triangulation attached when one exists over the polygon corpus.
//!
//! A realization is a proof and takes precedence: when an obstruction fires
//! on a graph the corpus realizes, the verdict is troplanar and the
//! obstruction is reported as refuted. At genus six this happens for three
//! graphs whose heavy component has a unit parallelogram of interior points
//! crossed by a triangulation edge, so that no three of its cycles share a
//! vertex.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus;
use crate::graph::{Graph, GraphError, Skeleton};
use crate::lattice::LatticePolygon;
use crate::obstruction::{
    compatible_embeddings, detect_catalog, detect_sprawling_node, detect_sprawling_triangle, heavy_item, Catalog,
    CatalogError, HeavyKind, Obstruction, ObstructionKind, Witness,
};
use crate::oracle::{realized_certificates, CensusOptions};
use crate::triangulation::Triangulation;

pub const MAX_GENUS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub polygon: LatticePolygon,
    pub triangulation: Triangulation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Troplanar(Option<Realization>),
    NotTroplanar(Obstruction),
    Unknown(String),
}

impl Verdict {
    pub fn is_troplanar(&self) -> bool {
        matches!(self, Verdict::Troplanar(_))
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            Verdict::NotTroplanar(o) => Some(o),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// An obstruction that fired although the corpus realizes the graph.
    pub refuted: Option<Obstruction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("genus {0} is above {MAX_GENUS}")]
    GenusOutOfRange(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("invalid graph: {0}")]
    Graph(GraphError),
}

/// Catalog kinds consulted by [`Classifier::obstruction`].
const CATALOG_KINDS: [ObstructionKind; 3] =
    [ObstructionKind::EnveLoopCatalog, ObstructionKind::Crowded, ObstructionKind::TieFighter];

pub struct Classifier {
    catalog: Catalog,
    /// Corpus polygons by genus.
    corpus: BTreeMap<usize, Vec<LatticePolygon>>,
    options: CensusOptions,
    realized: [OnceLock<BTreeMap<String, Realization>>; MAX_GENUS + 1],
}

impl Classifier {
    pub fn new(catalog: Catalog, polygons: Vec<LatticePolygon>, options: CensusOptions) -> Self {
        let mut corpus: BTreeMap<usize, Vec<LatticePolygon>> = BTreeMap::new();
        for p in polygons {
            corpus.entry(p.genus()).or_default().push(p);
        }
        Classifier { catalog, corpus, options, realized: Default::default() }
    }

    /// Bundled catalog and corpus, regular triangulations only.
    pub fn bundled() -> Self {
        let polys = (1..=MAX_GENUS).flat_map(corpus::bundled).collect();
        Self::new(Catalog::bundled(), polys, CensusOptions::default())
    }

    /// No corpus: verdicts never carry a realization.
    pub fn without_corpus(catalog: Catalog) -> Self {
        Self::new(catalog, Vec::new(), CensusOptions::default())
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    /// Realized skeleton certificates of the given genus over the corpus.
    pub fn realized(&self, genus: usize) -> &BTreeMap<String, Realization> {
        self.realized[genus.min(MAX_GENUS)].get_or_init(|| {
            let polys = self.corpus.get(&genus).map(Vec::as_slice).unwrap_or(&[]);
            realized_certificates(polys, self.options)
                .into_iter()
                .map(|(c, (polygon, triangulation))| (c, Realization { polygon, triangulation }))
                .collect()
        })
    }

    /// A corpus triangulation whose skeleton is `g`.
    pub fn witness(&self, g: &Graph) -> Option<Realization> {
        if g.genus() > MAX_GENUS {
            return None;
        }
        self.realized(g.genus()).get(&g.certificate()).cloned()
    }

    fn catalog_hit(&self, g: &Graph, kind: ObstructionKind) -> Option<Obstruction> {
        match detect_catalog(g, &self.catalog, kind) {
            Ok(o) => o,
            Err(CatalogError::CatalogMissing(_)) | Err(CatalogError::Format(_)) => None,
        }
    }

    /// The first obstruction in order, or `None`.
    pub fn obstruction(&self, g: &Graph) -> Option<Obstruction> {
        let s = g.as_skeleton()?;
        if s.genus() <= 2 {
            return None;
        }
        let genus = s.genus();
        let ordered: [&dyn Fn() -> Option<Obstruction>; 8] = [
            &|| self.catalog_hit(g, ObstructionKind::EnveLoopCatalog),
            &|| detect_sprawling_node(s),
            &|| detect_sprawling_triangle(s).filter(|_| genus >= 5),
            &|| self.catalog_hit(g, ObstructionKind::Crowded),
            &|| self.catalog_hit(g, ObstructionKind::TieFighter),
            &|| self.heavy(s, HeavyKind::TwoLoops),
            &|| self.heavy(s, HeavyKind::OneLoop),
            &|| self.heavy(s, HeavyKind::DoubleTwoLoops).filter(|_| genus == 6),
        ];
        ordered.iter().find_map(|f| f()).or_else(|| self.cut_edge_recursion(s))
    }

    fn heavy(&self, s: &Skeleton, kind: HeavyKind) -> Option<Obstruction> {
        heavy_item(s, &compatible_embeddings(s), kind)
    }

    fn cut_edge_recursion(&self, s: &Skeleton) -> Option<Obstruction> {
        for e in s.cut_edges() {
            let (a, b) = s.split_at_cut_edge(e).expect("cut edge");
            for piece in [a.graph, b.graph] {
                if let Some(o) = self.obstruction(&piece) {
                    return Some(Obstruction {
                        kind: ObstructionKind::CutEdgeRecursion,
                        witness: Witness::CutEdge { edge: e, piece: Box::new(o) },
                    });
                }
            }
        }
        None
    }

    pub fn classify(&self, g: &Graph) -> Result<Verdict, ClassifyError> {
        self.classify_detailed(g).map(|c| c.verdict)
    }

    /// The verdict with any obstruction a realization refutes.
    pub fn classify_detailed(&self, g: &Graph) -> Result<Classification, ClassifyError> {
        let genus = g.genus();
        if genus > MAX_GENUS {
            return Err(ClassifyError::GenusOutOfRange(genus));
        }
        if !g.is_planar() {
            return Err(ClassifyError::NotPlanar);
        }
        let obstruction = self.obstruction(g);
        let witness = self.witness(g);
        let verdict = match (obstruction, witness) {
            (o, Some(w)) => return Ok(Classification { verdict: Verdict::Troplanar(Some(w)), refuted: o }),
            (Some(o), None) => Verdict::NotTroplanar(o),
            (None, None) => self.unobstructed(genus),
        };
        Ok(Classification { verdict, refuted: None })
    }

    fn unobstructed(&self, genus: usize) -> Verdict {
        let missing: Vec<&str> = CATALOG_KINDS.iter().filter(|k| !self.catalog.has(**k)).map(|k| k.name()).collect();
        if genus > 2 && !missing.is_empty() {
            return Verdict::Unknown(format!(
                "no catalog entry for {}; no realization over the corpus",
                missing.join(", ")
            ));
        }
        Verdict::Troplanar(None)
    }

    /// Validates a raw edge list first.
    pub fn classify_edges(&self, n: usize, edges: &[(usize, usize)]) -> Result<Verdict, ClassifyError> {
        let s = Skeleton::new(n, edges.iter().copied()).map_err(|e| match e {
            GraphError::Disconnected => ClassifyError::Disconnected,
            e => ClassifyError::Graph(e),
        })?;
        self.classify(&Graph::Skeleton(s))
    }

    pub fn classify_all(&self, graphs: &[Graph]) -> Vec<Result<Verdict, ClassifyError>> {
        graphs.par_iter().map(|g| self.classify(g)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::tests::{dumbbell, k33, theta, triple_loop_star};
    use crate::skeleton::skeletonize;

    fn kind(c: &Classifier, g: &Graph) -> Option<ObstructionKind> {
        c.classify(g).unwrap().obstruction().map(|o| o.kind)
    }

    #[test]
    fn base_cases_have_witnesses() {
        let c = Classifier::bundled();
        for g in [Graph::Circle, Graph::Skeleton(theta()), Graph::Skeleton(dumbbell())] {
            let Verdict::Troplanar(Some(w)) = c.classify(&g).unwrap() else { panic!("{g:?}") };
            assert_eq!(skeletonize(&w.triangulation).unwrap().graph.certificate(), g.certificate());
        }
    }

    #[test]
    fn sprawling_star() {
        let c = Classifier::without_corpus(Catalog::bundled());
        assert_eq!(kind(&c, &Graph::Skeleton(triple_loop_star())), Some(ObstructionKind::SprawlingNode));
    }

    #[test]
    fn fig2_kinds() {
        let c = Classifier::without_corpus(Catalog::bundled());
        for (k, want) in [
            ('a', ObstructionKind::HeavyOneLoop),
            ('b', ObstructionKind::HeavyOneLoop),
            ('c', ObstructionKind::HeavyOneLoop),
            ('d', ObstructionKind::HeavyOneLoop),
            ('e', ObstructionKind::DoubleHeavyTwoLoops),
            ('f', ObstructionKind::DoubleHeavyTwoLoops),
            ('g', ObstructionKind::EnveLoopCatalog),
            ('h', ObstructionKind::DoubleHeavyTwoLoops),
        ] {
            assert_eq!(kind(&c, &fixtures::fig2_graph(k)), Some(want), "graph {k}");
        }
    }

    #[test]
    fn fig10_realized() {
        let c = Classifier::bundled();
        let Verdict::Troplanar(Some(w)) = c.classify(&fixtures::fig10_skeleton()).unwrap() else { panic!() };
        assert_eq!(skeletonize(&w.triangulation).unwrap().graph.certificate(), fixtures::fig10_skeleton().certificate());
    }

    #[test]
    fn realization_refutes_triple_vertex_condition() {
        let c = Classifier::bundled();
        let edges = [(0, 1), (0, 2), (0, 4), (1, 4), (1, 5), (2, 3), (2, 6), (3, 5), (3, 7), (4, 8), (5, 9), (6, 7), (6, 7), (8, 8), (9, 9)];
        let g = Graph::Skeleton(Skeleton::new(10, edges).unwrap());
        let d = c.classify_detailed(&g).unwrap();
        let Verdict::Troplanar(Some(w)) = &d.verdict else { panic!("{d:?}") };
        assert_eq!(skeletonize(&w.triangulation).unwrap().graph.certificate(), g.certificate());
        let o = d.refuted.unwrap();
        assert_eq!(o.kind, ObstructionKind::DoubleHeavyTwoLoops);
        assert!(matches!(o.witness, Witness::Heavy { violation: crate::obstruction::Violation::NoTripleVertex, .. }));
        for b in [crate::regularity::Backend::FourierMotzkin, crate::regularity::Backend::Simplex] {
            assert!(crate::regularity::is_regular_with(&w.triangulation, b).is_some());
        }
    }

    #[test]
    fn errors() {
        let c = Classifier::without_corpus(Catalog::bundled());
        assert_eq!(c.classify(&Graph::Skeleton(k33())), Err(ClassifyError::NotPlanar));
        // A 12-cycle with every other edge doubled.
        let big = Skeleton::new(12, (0..12).map(|i| (i, (i + 1) % 12)).chain((0..6).map(|k| (2 * k, 2 * k + 1)))).unwrap();
        assert_eq!(c.classify(&Graph::Skeleton(big)), Err(ClassifyError::GenusOutOfRange(7)));
        assert_eq!(
            c.classify_edges(4, &[(0, 0), (0, 1), (1, 1), (2, 2), (2, 3), (3, 3)]),
            Err(ClassifyError::Disconnected)
        );
    }
}
