"""cift-extractor: image/video corpora to CIFTFVEC feature files."""

from cift_extractor.backbones import Backbone, load_backbone
from cift_extractor.errors import BackboneUnavailable, DecodeError, ExtractorError
from cift_extractor.extract import ExtractionJob, extract
from cift_extractor.fvec import read_fvec, write_fvec

__version__ = "0.1.0"

__all__ = [
    "Backbone",
    "BackboneUnavailable",
    "DecodeError",
    "ExtractionJob",
    "ExtractorError",
    "extract",
    "load_backbone",
    "read_fvec",
    "write_fvec",
]
