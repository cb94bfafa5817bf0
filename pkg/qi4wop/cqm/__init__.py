"""Constrained quadratic model and the sub-WOP builder."""

from .builder import assignment_to_partial, build_subwop_model, label, variable_id
from .model import (
    Constraint,
    CqmModel,
    Evaluation,
    LinearExpr,
    Sense,
    Variable,
    Vartype,
    evaluate,
)
from .serialization import dump_model, load_model, model_from_dict, model_to_dict, save_model

__all__ = [
    "Constraint",
    "CqmModel",
    "Evaluation",
    "LinearExpr",
    "Sense",
    "Variable",
    "Vartype",
    "assignment_to_partial",
    "build_subwop_model",
    "dump_model",
    "evaluate",
    "label",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "save_model",
    "variable_id",
]
