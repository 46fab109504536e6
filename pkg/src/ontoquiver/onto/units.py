"""Unit-expression algebra: fold a unit expression into an exponent vector.

Unit names are case-insensitive (``newton`` refers to ``NEWTON``); vectors
are keyed by the lower-cased basic-unit name.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Union

from ..errors import AliasCycle, UnknownUnitName
from .model import BasicUnit, OntologyDoc, UnitDecl, UnitExpr, UnitPower, UnitProduct, UnitRef

UnitVector = dict  # basic-unit name -> nonzero integer exponent


def unit_key(name: str) -> str:
    return " ".join(name.split()).lower()


def unit_table(units: Union[OntologyDoc, Iterable[UnitDecl]]) -> dict[str, UnitDecl]:
    decls = units.units if isinstance(units, OntologyDoc) else units
    table = {}
    for d in decls:
        table[unit_key(d.name)] = d
        if d.alias is not None:
            table.setdefault(unit_key(d.alias), d)
    return table


def _clean(vec: Mapping[str, int]) -> UnitVector:
    return {k: v for k, v in sorted(vec.items()) if v != 0}


def normalize_unit(expr: UnitExpr, units: Union[None, OntologyDoc, Iterable[UnitDecl], Mapping] = None) -> UnitVector:
    """Exponent vector of ``expr``.

    Products add exponents and powers multiply them.  With ``units`` given,
    names resolve through the declarations (raising UnknownUnitName or
    AliasCycle); without it, a bare name stands for a basic unit.
    """
    table = None
    if units is not None:
        table = dict(units) if isinstance(units, Mapping) else unit_table(units)

    def fold(e, resolving: tuple[str, ...]) -> Counter:
        if isinstance(e, BasicUnit):
            return Counter({unit_key(e.name): 1})
        if isinstance(e, UnitRef):
            key = unit_key(e.name)
            if table is None:
                return Counter({key: 1})
            if key not in table:
                raise UnknownUnitName(f"unknown unit {e.name!r}")
            if key in resolving:
                raise AliasCycle("unit aliases form a cycle: " + " -> ".join(resolving + (key,)))
            return fold(table[key].body, resolving + (key,))
        if isinstance(e, UnitProduct):
            out = Counter()
            for f in e.factors:
                out.update(fold(f, resolving))
            return out
        if isinstance(e, UnitPower):
            return Counter({k: v * e.exponent for k, v in fold(e.base, resolving).items()})
        raise TypeError(f"not a unit expression: {e!r}")

    return _clean(fold(expr, ()))


def normalize_declaration(units: Union[OntologyDoc, Iterable[UnitDecl]], name: str) -> UnitVector:
    """Exponent vector of the declared unit ``name``."""
    return normalize_unit(UnitRef(name), unit_table(units))


def vector_add(a: Mapping[str, int], b: Mapping[str, int]) -> UnitVector:
    out = Counter(a)
    out.update(b)
    return _clean(out)


def vector_scale(a: Mapping[str, int], n: int) -> UnitVector:
    return _clean({k: v * n for k, v in a.items()})


def format_vector(vec: Mapping[str, int]) -> str:
    if not vec:
        return "dimensionless"
    return " ".join(k if v == 1 else f"{k}^{v}" for k, v in sorted(vec.items()))
