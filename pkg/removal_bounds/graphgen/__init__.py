from removal_bounds.graphgen.tripartite import (
    SimpleGraph,
    TripartiteGraph,
    TripleSystem,
    build_tripartite,
    count_triangles,
    triples_match,
    verify_edge_disjoint,
)
from removal_bounds.graphgen.report import (
    ConstructionKind,
    DensityReport,
    GraphStats,
    RationalValue,
    ReportCounts,
    ReportParams,
    TheoryValues,
    VerifyLevel,
    density_report,
)
from removal_bounds.graphgen.export import (
    GRAPH_FORMATS,
    GraphDocument,
    export_graph,
    export_report,
    read_graph,
    read_report,
)

__all__ = ['SimpleGraph', 'TripartiteGraph', 'TripleSystem', 'build_tripartite', 'count_triangles',
           'triples_match', 'verify_edge_disjoint', 'ConstructionKind', 'DensityReport', 'GraphStats',
           'RationalValue', 'ReportCounts', 'ReportParams', 'TheoryValues', 'VerifyLevel', 'density_report',
           'GRAPH_FORMATS', 'GraphDocument', 'export_graph', 'export_report', 'read_graph', 'read_report']
