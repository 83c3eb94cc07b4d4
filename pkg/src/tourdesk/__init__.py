"""Counter-sales dialogue engine for choosing between two tourist destinations."""

from .embeddings import EmbeddingTable, WordVector, cosine, load_embeddings
from .intent import (
    ClassificationResult,
    IntentCategory,
    KeywordRule,
    ReferenceSet,
    Stage,
    classify,
    classify_keyword,
    classify_wrd,
)
from .knowledge import AttractionRecord, Catalog, answer, load_catalog
from .metrics import (
    AggregateReport,
    DesireRating,
    ImpressionResponse,
    aggregate,
    recommendation_effect,
)
from .motion import MotionEvent, MotionKind, TurnPhase, motions_for
from .scenario import DialogueEngine, SessionContext, TurnRecord
from .scenario_states import DialogueState
from .tokenizer import Gazetteer, Token, extract_proper_nouns, memorable_spot, tokenize
from .transport import Histogram, TransportPlan, solve_emd
from .wrd import SentenceDistribution, sentence_to_distribution, wrd_distance

__version__ = "0.1.0"
