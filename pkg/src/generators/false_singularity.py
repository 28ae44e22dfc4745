"""
False singularities: a regular immersion y composed with a map m whose
Jacobian degenerates. x = y o m is a frontal with basis Omega = (Dy) o m,
so Lambda = Dm^T and the B field is the classical second fundamental form
of y at m.
"""
from typing import Callable, Optional, Tuple, Union

import numpy as np

from src.errors import NonProperComposition, PreconditionFailed
from src.exprlang import Expr, eval_jet, parse, to_text
from src.frontal.surface import FrontalSurface, normal_jets
from src.jets import Jet2, JetVector, seed_pair
from src.models import Domain, Provenance
from src.utils.config import config
from src.utils.logger import setup_logger

from .integrals import expr_jet
from .kinds import IMMERSIONS

logger = setup_logger("frontal-lab.generators")

Immersion = Callable[[Jet2, Jet2], JetVector]


def _graph(phi: Expr) -> Immersion:
    def y(s: Jet2, t: Jet2) -> JetVector:
        return s, t, eval_jet(phi, {"u": s, "v": t})
    return y


def _sphere(s: Jet2, t: Jet2) -> JetVector:
    """Longitude s, latitude t on the unit sphere"""
    return t.cos() * s.cos(), t.cos() * s.sin(), t.sin()


def _immersion(name: str, phi: Optional[Expr]) -> Immersion:
    if name == "graph":
        if phi is None:
            raise PreconditionFailed("graph immersion needs a phi expression")
        return _graph(phi)
    if name == "sphere":
        return _sphere
    raise PreconditionFailed(f"unknown immersion {name!r}, expected one of {list(IMMERSIONS)}")


def _check_proper(m1: Expr, m2: Expr, domain: Domain, grid: int) -> None:
    """Reject maps whose Jacobian vanishes on a whole grid cell"""
    us, vs = domain.grid(grid, grid)
    U, V = np.meshgrid(us, vs, indexing="ij")
    cu = 0.5 * (U[:-1, :-1] + U[1:, 1:])
    cv = 0.5 * (V[:-1, :-1] + V[1:, 1:])

    def jac(u, v):
        a, b = expr_jet(m1, u, v, 1), expr_jet(m2, u, v, 1)
        return np.abs(a.du * b.dv - a.dv * b.du)

    D = jac(U, V)
    flat = np.maximum.reduce([D[:-1, :-1], D[1:, :-1], D[:-1, 1:], D[1:, 1:], jac(cu, cv)])
    dead = np.argwhere(flat <= config.TAU_SING)
    if len(dead):
        i, j = dead[0]
        raise NonProperComposition(
            f"det Dm vanishes on the cell at ({us[i]:.6g}, {vs[j]:.6g}); "
            f"{len(dead)} of {flat.size} cells degenerate"
        )


def _second_form(Y: JetVector) -> np.ndarray:
    """Classical II of y from jets of order 2, shape (*batch, 2, 2)"""
    ys = [c.partial("u") for c in Y]
    yt = [c.partial("v") for c in Y]
    n = normal_jets(ys, yt)
    nv = [c.value for c in n]

    def pair(i, j):
        return sum(c.derivative(i, j) * nv[k] for k, c in enumerate(Y))

    e, f, g = pair(2, 0), pair(1, 1), pair(0, 2)
    e, f, g = np.broadcast_arrays(e, f, g)
    return np.stack([e, f, f, g], axis=-1).reshape(np.shape(e) + (2, 2))


def gen_false_singularity(
    immersion: str,
    m1: Union[str, Expr],
    m2: Union[str, Expr],
    domain: Domain,
    phi: Optional[Union[str, Expr]] = None,
) -> FrontalSurface:
    """x = y o m for a catalog immersion y

    Args:
        immersion: "graph" (y = (s, t, phi(s, t))) or "sphere"
        m1, m2: Components of m(u, v)
        domain: Parameter rectangle
        phi: Height function for the graph immersion

    Raises:
        NonProperComposition: det Dm vanishes on an open set
    """
    m1 = parse(m1) if isinstance(m1, str) else m1
    m2 = parse(m2) if isinstance(m2, str) else m2
    if isinstance(phi, str):
        phi = parse(phi)
    y = _immersion(immersion, phi)
    _check_proper(m1, m2, domain, config.PROPER_GRID)

    def inner(u, v, k) -> Tuple[Jet2, Jet2]:
        return expr_jet(m1, u, v, k), expr_jet(m2, u, v, k)

    def y_at(a: Jet2, b: Jet2, k: int) -> JetVector:
        s, t = seed_pair(a.value, b.value, k)
        return y(s, t)

    def position(u, v, k):
        a, b = inner(u, v, k)
        return tuple(c.compose(a, b) for c in y_at(a, b, k))

    def basis(u, v, k):
        a, b = inner(u, v, k)
        Y = y_at(a, b, k + 1)
        ys = tuple(c.partial("u").compose(a, b) for c in Y)
        yt = tuple(c.partial("v").compose(a, b) for c in Y)
        return ys, yt

    def b_field(u, v):
        a, b = inner(u, v, 0)
        return _second_form(y_at(a, b, 2))

    def extended_gaussian(u, v):
        a, b = inner(u, v, 0)
        Y = y_at(a, b, 2)
        ys = [c.partial("u") for c in Y]
        yt = [c.partial("v") for c in Y]
        E = sum(p.value * p.value for p in ys)
        F = sum(p.value * q.value for p, q in zip(ys, yt))
        G = sum(q.value * q.value for q in yt)
        II = _second_form(Y)
        return (II[..., 0, 0] * II[..., 1, 1] - II[..., 0, 1] ** 2) / (E * G - F * F)

    params = {"immersion": immersion, "m1": to_text(m1), "m2": to_text(m2)}
    if phi is not None:
        params["phi"] = to_text(phi)
    logger.info("built false-singularity surface: " + ", ".join(f"{k}={v}" for k, v in sorted(params.items())))
    return FrontalSurface(
        domain=domain,
        position=position,
        basis=basis,
        provenance=Provenance("false-singularity", params),
        b_field=b_field,
        extended_gaussian=extended_gaussian,
        annotations={"immersion": immersion},
    )
