"""Regulator constants of G-lattices, Brauer relations and unit checks."""

from fractions import Fraction
import json

from . import _core
from ._core import Error, bouc_spans_basis, is_factorisable, is_relation, relation_basis, subgroup_classes

__all__ = [
    "Error",
    "bouc_spans_basis",
    "check_units",
    "error_category",
    "factorisable_quotient",
    "is_factorisable",
    "is_relation",
    "regulator_constant",
    "relation_basis",
    "run",
    "subgroup_classes",
]


def _fraction(text):
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def error_category(exc):
    """Category of an Error, e.g. "validation"."""
    return str(exc).split(":", 1)[0]


def regulator_constant(spec, lattice, relation):
    return _fraction(_core.regulator_constant(spec, lattice, dict(relation)))


def factorisable_quotient(spec, values):
    raw = _core.factorisable_quotient(spec, {k: str(Fraction(v)) for k, v in values.items()})
    return {k: _fraction(v) for k, v in raw.items()}


def run(*args):
    return _core.run([str(a) for a in args])


def check_units(profile, candidate=None, p_part=False, bouc=False):
    """Runs check-units on a profile path; returns (verdict, report dict)."""
    args = ["check-units", str(profile), "--json"]
    if candidate is not None:
        args += ["--candidate", candidate]
    if p_part:
        args.append("--p-part")
    if bouc:
        args.append("--bouc")
    code, out, err = run(*args)
    if code == 2:
        raise Error(err.strip().removeprefix("error:"))
    return code == 0, json.loads(out)
