"""dicomrouter: classify DICOM X-ray scans into five anatomical groups and
route each file to its per-class destination."""

from .nn.classes import CLASS_BY_NAME, CLASS_NAMES, NUM_CLASSES, BodyPartClass

__version__ = "0.1.0"

__all__ = ["BodyPartClass", "CLASS_BY_NAME", "CLASS_NAMES", "NUM_CLASSES", "__version__"]
