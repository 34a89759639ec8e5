"""Consent-notice detectors: four independent methods over a PageSnapshot."""

from .results import DetectionResult, Method
from .domwalk import KeywordConfig, detect_domwalk, find_keyword_hits, walk_up
from .perceptive import PerceptiveConfig, detect_perceptive
from .filterlist import RuleSet, detect_filterlist, parse_filter_list
from .textclass import ClassifierModel, detect_textclass, load_model

__all__ = [
    "DetectionResult",
    "Method",
    "KeywordConfig",
    "find_keyword_hits",
    "walk_up",
    "detect_domwalk",
    "PerceptiveConfig",
    "detect_perceptive",
    "RuleSet",
    "parse_filter_list",
    "detect_filterlist",
    "ClassifierModel",
    "load_model",
    "detect_textclass",
]
