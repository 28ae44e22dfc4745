"""
Frontal surfaces: a jet-evaluable map together with a tangent moving basis
"""
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from src.errors import DegenerateBasis, DomainError
from src.exprlang import Expr, eval_jet, parse, to_text
from src.jets import Jet2, JetVector, cross, dot, seed_pair
from src.models import Domain, Point, Provenance
from src.utils.config import config

# (u, v, order) -> jets of the three coordinates; u, v may be arrays
PositionFn = Callable[[np.ndarray, np.ndarray, int], JetVector]
# (u, v, order) -> jets of the basis columns w1, w2
BasisFn = Callable[[np.ndarray, np.ndarray, int], Tuple[JetVector, JetVector]]
# (u, v) -> 2x2 matrix C with II_Omega = C Lambda^T
BFieldFn = Callable[[float, float], np.ndarray]


@dataclass(frozen=True)
class FrontalSurface:
    """Frontal x: U -> R^3 with tangent moving basis Omega = [w1 | w2]"""
    domain: Domain
    position: PositionFn
    basis: BasisFn
    provenance: Provenance
    b_field: Optional[BFieldFn] = None
    extended_gaussian: Optional[Callable[[float, float], float]] = None
    annotations: Dict = field(default_factory=dict)

    def x(self, u, v, order: int = 2) -> JetVector:
        return self.position(u, v, order)

    def omega(self, u, v, order: int = 1) -> Tuple[JetVector, JetVector]:
        return self.basis(u, v, order)

    def unit_normal(self, u, v, order: int = 1) -> JetVector:
        w1, w2 = self.basis(u, v, order)
        return normal_jets(w1, w2, u, v)


def normal_jets(w1: JetVector, w2: JetVector, u=0.0, v=0.0) -> JetVector:
    """n = (w1 x w2) / |w1 x w2| as jets; (u, v) only label errors"""
    big_n = cross(w1, w2)
    length2 = dot(big_n, big_n)
    length = np.sqrt(np.min(length2.value))
    if length <= config.BASIS_DEGENERACY:
        worst = int(np.argmin(np.ravel(length2.value)))
        raise DegenerateBasis(_as_point(u, v, worst), float(length))
    try:
        length_jet = length2.sqrt()
    except DomainError:
        raise DegenerateBasis(_as_point(u, v), 0.0) from None
    return tuple(c / length_jet for c in big_n)


def _as_point(u, v, index: int = 0) -> Point:
    shape = np.broadcast_shapes(np.shape(u), np.shape(v))
    u = np.ravel(np.broadcast_to(u, shape))
    v = np.ravel(np.broadcast_to(v, shape))
    index = min(index, u.size - 1)
    return (float(u[index]), float(v[index]))


def _expr_vector(exprs: Sequence[Expr]) -> Callable[[np.ndarray, np.ndarray, int], JetVector]:
    def evaluate(u, v, order):
        ju, jv = seed_pair(u, v, order)
        return tuple(eval_jet(e, {"u": ju, "v": jv}) for e in exprs)
    return evaluate


def surface_from_expressions(
    x: Sequence[str],
    w1: Sequence[str],
    w2: Sequence[str],
    domain: Domain,
    kind: str = "explicit",
) -> FrontalSurface:
    """Explicit frontal: coordinates and basis columns given as expression triples"""
    x_exprs = [parse(t) for t in x]
    w1_exprs = [parse(t) for t in w1]
    w2_exprs = [parse(t) for t in w2]
    position = _expr_vector(x_exprs)
    col1 = _expr_vector(w1_exprs)
    col2 = _expr_vector(w2_exprs)

    def basis(u, v, order):
        return col1(u, v, order), col2(u, v, order)

    params = {}
    for name, exprs in (("x", x_exprs), ("w1", w1_exprs), ("w2", w2_exprs)):
        for i, e in enumerate(exprs):
            params[f"{name}[{i}]"] = to_text(e)
    return FrontalSurface(domain, position, basis, Provenance(kind, params))


def with_basis(s: FrontalSurface, w1: Sequence[str], w2: Sequence[str]) -> FrontalSurface:
    """Same map, basis columns replaced by expression triples"""
    col1 = _expr_vector([parse(t) for t in w1])
    col2 = _expr_vector([parse(t) for t in w2])

    def basis(u, v, order):
        return col1(u, v, order), col2(u, v, order)

    params = dict(s.provenance.parameters)
    params.update({f"w1[{i}]": t for i, t in enumerate(w1)})
    params.update({f"w2[{i}]": t for i, t in enumerate(w2)})
    prov = Provenance(s.provenance.kind, params, dict(s.provenance.constants))
    return replace(s, basis=basis, provenance=prov, b_field=None)


def rebased(s: FrontalSurface, B: np.ndarray) -> FrontalSurface:
    """Change of tangent moving basis Omega_hat = Omega B (B constant, invertible)"""
    B = np.asarray(B, dtype=float)
    if abs(np.linalg.det(B)) <= config.BASIS_DEGENERACY:
        raise ValueError("basis change matrix is singular")

    def basis(u, v, order):
        w1, w2 = s.basis(u, v, order)
        c1 = tuple(w1[i] * B[0, 0] + w2[i] * B[1, 0] for i in range(3))
        c2 = tuple(w1[i] * B[0, 1] + w2[i] * B[1, 1] for i in range(3))
        return c1, c2

    b_field = None
    if s.b_field is not None:
        # II_hat = B^T II_Omega and Lambda_hat^T = B^{-1} Lambda^T
        def b_field(u, v):
            return B.T @ s.b_field(u, v) @ B
    return replace(s, basis=basis, b_field=b_field)


def parallel_surface(s: FrontalSurface, l: float) -> FrontalSurface:
    """x + l n with the same tangent moving basis"""
    def position(u, v, order):
        x = s.position(u, v, order)
        n = s.unit_normal(u, v, order)
        return tuple(x[i] + n[i] * l for i in range(3))

    constants = dict(s.provenance.constants)
    constants["parallel_offset"] = float(l)
    prov = Provenance("parallel", dict(s.provenance.parameters), constants)
    annotations = dict(s.annotations)
    annotations["base_kind"] = s.provenance.kind
    return FrontalSurface(s.domain, position, s.basis, prov, annotations=annotations)
