"""simrel: compression- and hit-count-based similarity, relation matrices, clustering."""

from .compressor import (
    BitString,
    ComplexityScore,
    CompressedForm,
    KeyDictionary,
    KeyEntry,
    approx_complexity,
    compress,
    compress_conditional,
    decompress,
    shared_information,
)
from .corpus import (
    CorpusIndex,
    Document,
    HitTable,
    Term,
    TokenizerConfig,
    build_index,
    hit_counts,
    tokenize,
)
from .distances import (
    AxiomReport,
    HitCounts,
    SimilarityKind,
    SimilarityScore,
    check_similarity_axioms,
    dice_similarity,
    information_distance,
    metric_m,
    ncd,
    ncd_from_strings,
    ngd,
    nid,
    nsd,
    similarity_from_counts,
)
from .errors import (
    MalformedInput,
    PairNotFound,
    ProviderFailure,
    SimrelError,
    UndefinedSimilarity,
)
from .relations import (
    CATEGORIES,
    ClusteringResult,
    NamedObject,
    RelationCategory,
    RelationMatrix,
    build_matrix,
    categorize,
    cluster,
    export_matrix,
    format_legend,
    import_matrix,
    load_objects_csv,
    matrix_from_values,
)

__version__ = "0.1.0"
