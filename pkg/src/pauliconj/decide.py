"""Front-door deciders for the four conjugation questions.

Each decider picks the cheapest complete strategy the instance admits and
says which one it used:

- ``clifford-exact``: no T gates; a tableau settles everything.
- ``depth1-encoding``: one T layer; the closed-form coefficient formula.
- ``depth2-peel``: two T layers; split the circuit in the middle and compare
  the two halves' conjugates as Clifford unitaries, phase included.
- ``enumerative``: anything deeper walks the presentation's chains and is
  guarded by an explicit budget (the exact problems are #P/NP-hard in
  general, so there is no free lunch past depth two).

Answers are exact booleans (or an exact scalar for the conjugation
coefficient); no tolerance knobs exist anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .circuit import Circuit, Gate, dagger, layer_decompose, t_depth
from .exact import ExactScalar
from .f2 import SymplecticVec, anticommutation_map
from .pauli import (
    CliffordTableau,
    PhasedPauli,
    bracket,
    product_phase_exponent,
    tableau_from_circuit,
)
from .present import (
    DEFAULT_BUDGET,
    Presentation,
    coefficient,
    coefficient_depth1_fast,
    encode,
)

__all__ = [
    "DecisionError",
    "METHOD_TAGS",
    "DecisionResult",
    "decide_enic",
    "decide_commute",
    "decide_support",
    "conjugate_value",
]


class DecisionError(ValueError):
    pass


METHOD_TAGS = (
    "clifford-exact",
    "depth1-encoding",
    "depth2-peel",
    "enumerative",
    "oracle",
)


@dataclass(frozen=True)
class DecisionResult:
    """An exact answer plus how it was obtained."""

    answer: "bool | ExactScalar"
    method: str
    resources: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.method not in METHOD_TAGS:
            raise DecisionError(f"unknown method tag {self.method!r}")


def _depth1_tableau(lam: Presentation) -> CliffordTableau:
    """Tableau of the Clifford unitary a depth-<=1 presentation realizes.

    The unitary is prod_{i in mask} (I - (-1)^{sigma_i} i P^{b_i})/sqrt2
    times the signed outer Pauli, all factors commuting pairwise; each factor
    conjugates an anticommuting Q to (-1)^{sigma_i} i Q P^{b_i}, so the whole
    image is a phased-Pauli product we can walk generator by generator.
    """
    if lam.depth > 1:
        raise DecisionError("tableau extraction requires depth <= 1")
    n = lam.n
    y, _ = lam.outer
    if lam.depth == 1:
        basis, signs = lam.layers[0]
        active = list(anticommutation_map(basis, y).support())
    else:
        basis, signs, active = None, None, []
    images = []
    for gen in [SymplecticVec.e_z(j, n) for j in range(1, n + 1)] + [
        SymplecticVec.e_x(j, n) for j in range(1, n + 1)
    ]:
        q = PhasedPauli(2 * (bracket(y, gen) % 2), gen)
        for i in active:
            b = basis[i]
            if bracket(q.v, b) % 2:
                shift = 3 if signs[i] else 1
                q = PhasedPauli(
                    q.phase_exp + shift + product_phase_exponent(q.v, b), q.v ^ b
                )
        images.append((q.v, q.sign))
    return CliffordTableau(n, images[:n], images[n:])


def _peel_split(c: Circuit) -> tuple[Circuit, Circuit]:
    """C = D2 D1 with both halves of T-depth <= 1 (C itself has <= 2)."""
    ld = layer_decompose(c)
    first_layer = tuple(Gate("T", (w + 1,)) for w in ld.masks[0].support())
    d1 = Circuit(c.n, ld.segments[0] + first_layer)
    rest: tuple[Gate, ...] = ()
    for i in range(1, len(ld.masks) + 1):
        rest += ld.segments[i]
        if i < len(ld.masks):
            rest += tuple(Gate("T", (w + 1,)) for w in ld.masks[i].support())
    return d1, Circuit(c.n, rest)


def _clifford_halves_equal(
    left: Presentation, right: Presentation
) -> tuple[bool, dict[str, int]]:
    """Exact equality of the Clifford unitaries two depth-<=1 encodings give.

    Tableau agreement pins them up to a global phase; one shared nonzero
    coefficient (the outer Pauli always survives) kills the phase.
    """
    if _depth1_tableau(left) != _depth1_tableau(right):
        return False, {"tableau_compared": 1}
    anchor = left.outer[0]
    same = coefficient_depth1_fast(left, anchor) == coefficient_depth1_fast(
        right, anchor
    )
    return same, {"tableau_compared": 1, "coefficients_compared": 1}


def decide_commute(
    c: Circuit, x: SymplecticVec, budget: int = DEFAULT_BUDGET
) -> DecisionResult:
    """Does C P^x C† equal P^x exactly (sign and all)?"""
    if x.n != c.n:
        raise DecisionError("Pauli width != circuit width")
    if not x:
        raise DecisionError("the zero vector is not a Pauli instance")
    depth = t_depth(c)
    if depth == 0:
        image = tableau_from_circuit(c).conjugate(PhasedPauli(0, x))
        return DecisionResult(
            answer=image == PhasedPauli(0, x),
            method="clifford-exact",
            resources={"t_depth": 0, "width": c.n},
        )
    if depth <= 2:
        d1, d2 = _peel_split(c)
        left = encode(d1, x)
        right = encode(dagger(d2), x)
        same, used = _clifford_halves_equal(left, right)
        used.update({"t_depth": depth, "width": c.n})
        return DecisionResult(answer=same, method="depth2-peel", resources=used)
    val = coefficient(encode(c, x), x, budget)
    return DecisionResult(
        answer=val == ExactScalar.ONE,
        method="enumerative",
        resources={"t_depth": depth, "width": c.n, "budget": budget},
    )


def decide_enic(c: Circuit, budget: int = DEFAULT_BUDGET) -> DecisionResult:
    """Is C different from every global-phase multiple of the identity?"""
    depth = t_depth(c)
    if depth == 0:
        nontrivial = tableau_from_circuit(c) != CliffordTableau.identity(c.n)
        return DecisionResult(
            answer=nontrivial,
            method="clifford-exact",
            resources={"t_depth": 0, "width": c.n},
        )
    generators = [SymplecticVec.e_z(j, c.n) for j in range(1, c.n + 1)] + [
        SymplecticVec.e_x(j, c.n) for j in range(1, c.n + 1)
    ]
    if depth <= 2:
        from .reduce import enic_to_commute

        queries = enic_to_commute(c)
        fixes_all = all(decide_commute(qc, qx, budget).answer for qc, qx in queries)
        return DecisionResult(
            answer=not fixes_all,
            method="depth2-peel",
            resources={"t_depth": depth, "width": c.n, "queries": len(queries)},
        )
    fixes_all = all(
        coefficient(encode(c, g), g, budget) == ExactScalar.ONE for g in generators
    )
    return DecisionResult(
        answer=not fixes_all,
        method="enumerative",
        resources={
            "t_depth": depth,
            "width": c.n,
            "queries": len(generators),
            "budget": budget,
        },
    )


def decide_support(
    c: Circuit, x: SymplecticVec, budget: int = DEFAULT_BUDGET
) -> DecisionResult:
    """Does P^x appear with nonzero coefficient in C P^x C†?"""
    if x.n != c.n:
        raise DecisionError("Pauli width != circuit width")
    if not x:
        raise DecisionError("the zero vector is not a Pauli instance")
    enc = encode(c, x)
    if enc.depth == 0:
        return DecisionResult(
            answer=enc.outer[0] == x,
            method="clifford-exact",
            resources={"t_depth": 0, "width": c.n},
        )
    if enc.depth == 1:
        val = coefficient_depth1_fast(enc, x)
        return DecisionResult(
            answer=bool(val),
            method="depth1-encoding",
            resources={"t_depth": 1, "width": c.n},
        )
    val = coefficient(enc, x, budget)
    return DecisionResult(
        answer=bool(val),
        method="enumerative",
        resources={"t_depth": enc.depth, "width": c.n, "budget": budget},
    )


def conjugate_value(
    c: Circuit, x: SymplecticVec, budget: int = DEFAULT_BUDGET
) -> ExactScalar:
    """Exact <C P^x C†, P^x>.

    #P-hard in general, hence the budget; depth <= 1 takes the closed form.
    """
    if x.n != c.n:
        raise DecisionError("Pauli width != circuit width")
    enc = encode(c, x)
    if enc.depth == 0:
        if enc.outer[0] != x:
            return ExactScalar.ZERO
        return -ExactScalar.ONE if enc.outer[1] else ExactScalar.ONE
    if enc.depth == 1:
        return coefficient_depth1_fast(enc, x)
    return coefficient(enc, x, budget)


def conjugate_result(
    c: Circuit, x: SymplecticVec, budget: int = DEFAULT_BUDGET
) -> DecisionResult:
    """conjugate_value wrapped with the method tag it took."""
    depth = t_depth(c)
    method = (
        "clifford-exact"
        if depth == 0
        else "depth1-encoding"
        if depth == 1
        else "enumerative"
    )
    resources = {"t_depth": depth, "width": c.n}
    if method == "enumerative":
        resources["budget"] = budget
    return DecisionResult(
        answer=conjugate_value(c, x, budget), method=method, resources=resources
    )
