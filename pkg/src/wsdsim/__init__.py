"""Unsupervised word sense disambiguation via context-aware similarity.

The library scores each candidate sense of an ambiguous word against the
sentence it appears in, using either cosine similarity over pooled or
cached embeddings or the exact Word Mover's Distance, and picks the
best-scoring sense.  Evaluation utilities reproduce lexical-sample
benchmark protocols (per-word and global accuracy, MFS and random
baselines).
"""

from .dataset import (
    COARSEWSD_WORDS,
    Dataset,
    Instance,
    Sense,
    SenseInventory,
    WordData,
    build_sense_descriptors,
    dataset_fingerprint,
    instance_id,
    load_dataset,
    load_descriptor_overrides,
    normalize_label,
    save_dataset,
)
from .embedding import (
    CacheProvider,
    ContextualCache,
    LayerMix,
    PoolingWeights,
    StaticVectorProvider,
    WordVectorTable,
    embed_context,
    embed_sense,
    load_cache,
    load_cache_dir,
    load_vectors,
    mean_pool,
    mix_layers,
    save_cache,
    softmax_weights,
    weighted_pool,
)
from .engine import (
    GoldPredictor,
    MfsModel,
    MfsPredictor,
    Prediction,
    RandomPredictor,
    SimilarityPredictor,
    argmax_sense,
    disambiguate,
    expected_random_accuracy,
    fit_mfs,
    predict_random,
)
from .errors import (
    CacheFormatError,
    ConfigError,
    CoverageError,
    DatasetFormatError,
    OovError,
    SolverError,
    VectorTableError,
    WsdsimError,
)
from .evaluation import (
    EvaluationReport,
    WordResult,
    compare_reports,
    emit_plot_data,
    evaluate,
    expected_random_report,
    render_comparison,
    render_report_table,
    report_from_json,
    report_to_json,
)
from .similarity import (
    Score,
    SimilarityMeasure,
    cosine,
    cosine_cache_measure,
    cosine_static_measure,
    score,
    text_cosine,
    wmd_measure,
)
from .transport import (
    NBowDoc,
    TransportPlan,
    build_nbow,
    ground_cost,
    solve_transport,
    solve_wmd,
    wmd_similarity,
)

__version__ = "0.1.0"
