"""Dimension subrings and lower central series of finitely presented Lie rings."""

import json

from ._core import (
    BadParameters,
    ClassTooSmall,
    LiedimError,
    MalformedExpr,
    NotPreabelian,
    OutOfRange,
    ParseError,
    Presentation,
    UnknownGenerator,
    build_Ln,
    check_corollary,
    check_lemma2,
    check_sjogren,
    check_theorem1,
    delta,
    gamma,
    instantiate_metabelian,
    lyndon_words,
    parse,
    parse_file,
    preabelianize,
    sjogren,
    witt_dimension,
)
from . import _core


def series_report(presentation, max_n, class_bound=None, threads=1):
    """delta_n / gamma_n for n = 1..max_n as a dict (same shape as `liedim series --format json`)."""
    return json.loads(_core.series_report_json(presentation, max_n, class_bound, threads))


def verify_counterexample(n, degree=0):
    """Certificate for L(n) as a dict; degree 0 means 2n-4."""
    return json.loads(_core.verify_counterexample_json(n, degree))


__all__ = [
    "BadParameters",
    "ClassTooSmall",
    "LiedimError",
    "MalformedExpr",
    "NotPreabelian",
    "OutOfRange",
    "ParseError",
    "Presentation",
    "UnknownGenerator",
    "build_Ln",
    "check_corollary",
    "check_lemma2",
    "check_sjogren",
    "check_theorem1",
    "delta",
    "gamma",
    "instantiate_metabelian",
    "lyndon_words",
    "parse",
    "parse_file",
    "preabelianize",
    "series_report",
    "sjogren",
    "verify_counterexample",
    "witt_dimension",
]
