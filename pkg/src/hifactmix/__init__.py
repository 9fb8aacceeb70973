"""Evidence-grounded claim verification for code-mixed Hinglish.

Library surface: domain types, corpus tooling, embedding providers, a flat
L2 vector index, a shallow veracity classifier, explanation generation,
evaluation metrics, and the end-to-end pipeline. The CLI (`hifact`) and
the HTTP service live in `cli` and `service`.
"""

from .types import (
    EMBED_DIM,
    N_LABELS,
    AnnotatedClaim,
    Claim,
    EvidenceDoc,
    FactCheckResult,
    VeracityLabel,
)
from .dataset import (
    Corpus,
    CorpusStats,
    SplitAssignment,
    corpus_stats,
    generate_fixture,
    load_corpus,
    save_corpus,
    stratified_split,
)
from .encoding import EncoderConfig, ReferenceEncoder, RemoteEncoder, batch_encode
from .index import FlatIndex, SearchHit
from .classifier import (
    MLPParams,
    TrainConfig,
    TrainReport,
    checkpoint_load,
    checkpoint_save,
    forward,
    init_params,
    loss_and_grad,
    predict,
    train,
)
from .explanation import (
    GeneratorConfig,
    ReferenceGenerator,
    RemoteGenerator,
    build_prompt,
)
from .metrics import (
    BleuConfig,
    RougeScore,
    accuracy,
    bleu,
    corpus_bleu,
    lcs_length,
    macro_f1,
    rouge_l,
)
from .pipeline import (
    EvalReport,
    PipelineArtifacts,
    ablate_retrieval,
    build_artifacts,
    evaluate,
    verify,
)
from .text import code_mix_ratio, load_english_lexicon, tokenize_whitespace

__version__ = "0.1.0"

__all__ = [
    "EMBED_DIM",
    "N_LABELS",
    "AnnotatedClaim",
    "Claim",
    "EvidenceDoc",
    "FactCheckResult",
    "VeracityLabel",
    "Corpus",
    "CorpusStats",
    "SplitAssignment",
    "corpus_stats",
    "generate_fixture",
    "load_corpus",
    "save_corpus",
    "stratified_split",
    "EncoderConfig",
    "ReferenceEncoder",
    "RemoteEncoder",
    "batch_encode",
    "FlatIndex",
    "SearchHit",
    "MLPParams",
    "TrainConfig",
    "TrainReport",
    "checkpoint_load",
    "checkpoint_save",
    "forward",
    "init_params",
    "loss_and_grad",
    "predict",
    "train",
    "GeneratorConfig",
    "ReferenceGenerator",
    "RemoteGenerator",
    "build_prompt",
    "BleuConfig",
    "RougeScore",
    "accuracy",
    "bleu",
    "corpus_bleu",
    "lcs_length",
    "macro_f1",
    "rouge_l",
    "EvalReport",
    "PipelineArtifacts",
    "ablate_retrieval",
    "build_artifacts",
    "evaluate",
    "verify",
    "code_mix_ratio",
    "load_english_lexicon",
    "tokenize_whitespace",
]
