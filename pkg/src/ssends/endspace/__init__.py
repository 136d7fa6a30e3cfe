from .cb import CBAnalysis, cb_analysis, derivative
from .classify import INFINITE, ClassificationReport, SurfaceSpec, classify_surface
from .descriptor import (
    GENUS, PLANAR, CantorAtom, CantorSeq, Descriptor, DescriptorError, FiniteUnion,
    Marking, OmegaSeq, Point, canonicalize, validate,
)
from .grammar import DescriptorSyntaxError, parse_descriptor, print_descriptor
from .order import (
    Cardinality, ClassPoset, EndClass, EndType, clopen_embeds, embeds_near, end_classes,
    end_types, germ_type, is_self_similar, is_stable_neighborhood,
    is_uniformly_self_similar, max_type,
)
