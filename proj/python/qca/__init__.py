"""Exact well-formedness checking for linear quantum cellular automata."""

from qca._core import (
    Lqca,
    Plqca,
    check_plqca,
    column_inner_product,
    column_inner_product_direct,
    column_sq_norm,
    compose,
    decide,
    is_unitary,
    normalize_document,
    parse_lqca,
    parse_plqca,
    render_lqca,
    render_plqca,
    simplify_document,
    step,
    transition_amplitude,
    window_check,
)

__all__ = [
    "Lqca",
    "Plqca",
    "check_plqca",
    "column_inner_product",
    "column_inner_product_direct",
    "column_sq_norm",
    "compose",
    "decide",
    "is_unitary",
    "normalize_document",
    "parse_lqca",
    "parse_plqca",
    "render_lqca",
    "render_plqca",
    "simplify_document",
    "step",
    "transition_amplitude",
    "window_check",
]
