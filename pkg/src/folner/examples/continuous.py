"""Parameter records for the horocycle-foliation and Sol torus-bundle leaves."""

from __future__ import annotations

from typing import Optional, Union

import sympy

from ..continuum import HYPERBOLIC, SOL, InvalidDomain, LeafDomain, _exact

HOROCYCLE = "horocycle"
SOL_EXAMPLE = "sol"

# eigenvalue > 1 of the trace-3 matrix [[2, 1], [1, 1]]
CAT_MAP_LAMBDA = (3 + sympy.sqrt(5)) / 2


class MissingLambda(InvalidDomain):
    pass


def continuum_spec(example: str, n: int, lam: Optional[Union[float, str, sympy.Expr]] = None) -> LeafDomain:
    """V_n for the named example.

    ``horocycle``: [−1, 1] × [e^−n, 1] in the leaf through ∞.
    ``sol``:       [−1, 1] × [λ^−n, 1] in (a, b) coordinates of the orbit of the identity.
    """
    if n < 1:
        raise InvalidDomain("n must be at least 1")
    if example == HOROCYCLE:
        return LeafDomain(-1, 1, sympy.exp(-n), 1, HYPERBOLIC, label=f"{HOROCYCLE} n={n}")
    if example == SOL_EXAMPLE:
        if lam is None:
            raise MissingLambda("the sol example needs λ > 1")
        lam = _exact(lam)
        if not bool(lam > 1):
            raise InvalidDomain(f"λ must exceed 1, got {lam}")
        return LeafDomain(-1, 1, lam ** (-n), 1, SOL, lam, label=f"{SOL_EXAMPLE} n={n} λ={lam}")
    raise InvalidDomain(f"unknown continuous example {example!r}")


def decay_constant(example: str, lam=None) -> sympy.Expr:
    """c in e^(−n c): 1 for the horocycle leaf, log λ for Sol."""
    return sympy.Integer(1) if example == HOROCYCLE else sympy.log(_exact(lam))
