class ExtractorError(Exception):
    """Base class for extraction failures."""


class DecodeError(ExtractorError):
    """No decodable frames found, or a file could not be decoded."""


class BackboneUnavailable(ExtractorError):
    """The requested backbone (or its pretrained weights) cannot be loaded."""
