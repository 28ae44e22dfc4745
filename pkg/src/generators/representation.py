"""
Surfaces from representation formulas.

Each generator returns a FrontalSurface whose position and basis are jet
functions (u, v, order). Coordinates defined by integrals get their value
from quadrature and all derivatives from closed-form gradient relations,
so Dx = Omega Lambda^T holds up to rounding even where the value slot
carries quadrature error. Position jets are available up to order 2,
basis jets up to order 1.
"""
from dataclasses import replace
from math import sqrt
from typing import Callable, Optional, Tuple, Union

import numpy as np

from src.errors import HarmonicityViolated, PreconditionFailed, WrongGeneratorKind
from src.exprlang import Expr, IntPow, Var, add, div, evaluate, free_variables, mul, num, parse, sub, substitute, to_text
from src.frontal.surface import FrontalSurface
from src.jets import Jet2, seed_pair
from src.models import Domain, Provenance
from src.utils.config import config
from src.utils.logger import setup_logger

from .integrals import (
    antiderivative_u,
    antiderivative_v,
    expr_jet,
    from_gradient,
    integral_value_u,
    integral_value_v,
    lift,
)

logger = setup_logger("frontal-lab.generators")

JetFn = Callable[[np.ndarray, np.ndarray, int], Jet2]
ExprLike = Union[str, Expr]

POINT_TOL = 1e-12


def _expr(e: ExprLike) -> Expr:
    return parse(e) if isinstance(e, str) else e


def _one_variable(name: str, e: Expr, variable: str) -> None:
    extra = free_variables(e) - {variable}
    if extra:
        raise PreconditionFailed(f"parameter {name} must depend on {variable} only, found {sorted(extra)}")


def _fn(e: Expr) -> JetFn:
    def jet(u, v, k):
        return expr_jet(e, u, v, k)
    return jet


def _partial(f: JetFn, name: str) -> JetFn:
    def jet(u, v, k):
        return f(u, v, k + 1).partial(name)
    return jet


def _shape(u, v) -> Tuple[int, ...]:
    return np.broadcast_shapes(np.shape(u), np.shape(v))


def _coords(u, v, k):
    return seed_pair(u, v, k)


def _integral_coordinate(value: Callable, cu: JetFn, cv: JetFn, u, v, k: int) -> Jet2:
    """Jet of a coordinate known by value (quadrature) and gradient (closed form)"""
    c0 = value(u, v)
    if k == 0:
        return lift(c0, 0, _shape(u, v))
    return from_gradient(c0, cu(u, v, k - 1), cv(u, v, k - 1), k)


def _graph_basis(g1: JetFn, g2: JetFn) -> Callable:
    """Basis columns (1, 0, g1), (0, 1, g2)"""
    def basis(u, v, k):
        shape = _shape(u, v)
        one, zero = lift(1.0, k, shape), lift(0.0, k, shape)
        return (one, zero, g1(u, v, k)), (zero, one, g2(u, v, k))
    return basis


def _second_coordinate(u, v, k):
    return _coords(u, v, k)[1]


def _texts(**exprs: Expr):
    return {name: to_text(e) for name, e in exprs.items()}


def _log_built(kind: str, params: dict) -> None:
    logger.info(f"built {kind} surface: " + ", ".join(f"{k}={v}" for k, v in sorted(params.items())))


# --- extendable normal curvature ------------------------------------------

def gen_extendable_normal(b: ExprLike, h: ExprLike, l: ExprLike, r: ExprLike, domain: Domain) -> FrontalSurface:
    """Rank-1 frontal with extendable normal curvature

    x = (u, b, c) with basis columns (1, 0, g1), (0, 1, g2), where
    g2 = int_0^v h b_v dt + int_0^u l, g1 = int_0^v h2 b_v dt + int_0^u r,
    h2 = g2_u - h b_u, and c solves c_u = g1 + b_u g2, c_v = b_v g2, c(0) = 0.
    The B field is C = [[h1, h2], [h2, h]] / sqrt(1 + g1^2 + g2^2) with
    h1 = g1_u - h2 b_u.

    Args:
        b: b(u, v)
        h: h(u, v)
        l: l(u)
        r: r(u)
        domain: Parameter rectangle
    """
    b, h, l, r = (_expr(e) for e in (b, h, l, r))
    _one_variable("l", l, "u")
    _one_variable("r", r, "u")
    inner = config.QUAD_INNER_TOL

    B, Hf, Lf, Rf = _fn(b), _fn(h), _fn(l), _fn(r)
    bu, bv = _partial(B, "u"), _partial(B, "v")

    def hb(u, t, k):
        return Hf(u, t, k) * bv(u, t, k)

    hb_u = _partial(hb, "u")

    def g2(u, v, k, tol=None):
        return antiderivative_v(hb, u, v, k, tol) + antiderivative_u(Lf, u, v, k, tol)

    def h2(u, v, k, tol=None):
        return antiderivative_v(hb_u, u, v, k, tol) + Lf(u, v, k) - Hf(u, v, k) * bu(u, v, k)

    def g1(u, v, k, tol=None):
        def integrand(uu, t, kk):
            return h2(uu, t, kk, inner) * bv(uu, t, kk)
        return antiderivative_v(integrand, u, v, k, tol) + antiderivative_u(Rf, u, v, k, tol)

    def c_value(u, v):
        def along_v(uu, t, kk):
            return bv(uu, t, kk) * g2(uu, t, kk, inner)

        def along_u(t, vv, kk):
            zero = np.zeros_like(vv)
            big_l = antiderivative_u(Lf, t, zero, kk, inner)
            big_r = antiderivative_u(Rf, t, zero, kk, inner)
            return big_r + bu(t, zero, kk) * big_l

        return integral_value_v(along_v, u, v) + integral_value_u(along_u, u, v)

    def cu(u, v, k):
        return g1(u, v, k) + bu(u, v, k) * g2(u, v, k)

    def cv(u, v, k):
        return bv(u, v, k) * g2(u, v, k)

    def position(u, v, k):
        ju, _ = _coords(u, v, k)
        return ju, B(u, v, k), _integral_coordinate(c_value, cu, cv, u, v, k)

    def b_field(u, v):
        g1_jet = g1(u, v, 1)
        g2_val = g2(u, v, 0).value
        h2_val = h2(u, v, 0).value
        h_val = Hf(u, v, 0).value
        h1 = g1_jet.du - h2_val * bu(u, v, 0).value
        scale = np.sqrt(1.0 + g1_jet.value ** 2 + g2_val ** 2)
        rows = np.broadcast_arrays(h1, h2_val, h2_val, h_val)
        C = np.stack(rows, axis=-1).reshape(np.shape(rows[0]) + (2, 2))
        return C / np.asarray(scale)[..., None, None]

    params = _texts(b=b, h=h, l=l, r=r)
    _log_built("extendable-normal", params)
    return FrontalSurface(
        domain=domain,
        position=position,
        basis=_graph_basis(g1, g2),
        provenance=Provenance("extendable-normal", params),
        b_field=b_field,
    )


# --- rank-1 wavefronts ----------------------------------------------------

def gen_rank1_front(lambda_hat: ExprLike, f1: ExprLike, f2: ExprLike, domain: Domain) -> FrontalSurface:
    """Wavefront germ at a rank-1 singularity

    y = (w, int_0^z lambda_hat dt + f1(w), int_0^z t lambda_hat dt + f2(w))
    with basis [y_w | (0, 1, z)] and Lambda = diag(1, lambda_hat).

    Raises:
        PreconditionFailed: lambda_hat(0, 0) != 0
    """
    lam, f1, f2 = (_expr(e) for e in (lambda_hat, f1, f2))
    _one_variable("f1", f1, "u")
    _one_variable("f2", f2, "u")
    at_origin = float(evaluate(lam, 0.0, 0.0))
    if abs(at_origin) > POINT_TOL:
        raise PreconditionFailed(f"rank1-front needs lambda_hat(0, 0) = 0, got {at_origin:.3e}")

    L, F1, F2 = _fn(lam), _fn(f1), _fn(f2)

    def t_lam(u, t, k):
        return _second_coordinate(u, t, k) * L(u, t, k)

    def position(u, v, k):
        ju, _ = _coords(u, v, k)
        y2 = antiderivative_v(L, u, v, k) + F1(u, v, k)
        y3 = antiderivative_v(t_lam, u, v, k) + F2(u, v, k)
        return ju, y2, y3

    def basis(u, v, k):
        shape = _shape(u, v)
        w1 = tuple(c.partial("u") for c in position(u, v, k + 1))
        zero, one = lift(0.0, k, shape), lift(1.0, k, shape)
        return w1, (zero, one, _second_coordinate(u, v, k))

    params = _texts(lambda_hat=lam, f1=f1, f2=f2)
    _log_built("rank1-front", params)
    return FrontalSurface(domain, position, basis, Provenance("rank1-front", params))


def rank1_to_nonvanishing(s: FrontalSurface) -> FrontalSurface:
    """Add w^2 to the third coordinate of a rank1-front surface

    The result has K_Omega(0) != 0. Applying it twice adds 2 w^2.

    Raises:
        WrongGeneratorKind: s was not built by gen_rank1_front
    """
    if s.provenance.kind not in ("rank1-front", "rank1-normalized"):
        raise WrongGeneratorKind(f"rank1 normalization needs a rank1-front surface, got {s.provenance.kind}")
    params = s.provenance.parameters
    f2 = add(parse(params["f2"]), IntPow(Var("u"), 2))
    out = gen_rank1_front(params["lambda_hat"], params["f1"], f2, s.domain)
    annotations = dict(s.annotations)
    annotations["base_kind"] = s.provenance.kind
    return replace(out, provenance=Provenance("rank1-normalized", out.provenance.parameters), annotations=annotations)


def gen_rank1_from_h(h: ExprLike, domain: Domain, kind: str = "rank1-from-h") -> FrontalSurface:
    """Rank-1 wavefront x = (u, -h_v, c) with basis (1, 0, h_u), (0, 1, v)

    c = int_0^u (h_u - v h_uv)(t, v) dt - int_0^v t h_vv(0, t) dt, so
    c_u = h_u - v h_uv, c_v = -v h_vv and lambda_Omega = -h_vv.
    """
    h = _expr(h)
    Hf = _fn(h)
    hu, hv = _partial(Hf, "u"), _partial(Hf, "v")
    huv, hvv = _partial(hu, "v"), _partial(hv, "v")

    def cu(u, v, k):
        return hu(u, v, k) - _second_coordinate(u, v, k) * huv(u, v, k)

    def cv(u, v, k):
        return -(_second_coordinate(u, v, k) * hvv(u, v, k))

    def c_value(u, v):
        def on_axis(uu, t, kk):
            return cv(np.zeros_like(uu), t, kk)
        return integral_value_u(cu, u, v) + integral_value_v(on_axis, u, v)

    def position(u, v, k):
        ju, _ = _coords(u, v, k)
        return ju, -hv(u, v, k), _integral_coordinate(c_value, cu, cv, u, v, k)

    params = _texts(h=h)
    _log_built(kind, params)
    return FrontalSurface(
        domain=domain,
        position=position,
        basis=_graph_basis(hu, _second_coordinate),
        provenance=Provenance(kind, params),
    )


def gen_vanishing_K(r1: ExprLike, r2: ExprLike, c1: float, c2: float, domain: Domain) -> FrontalSurface:
    """Ruled wavefront with vanishing Gaussian curvature

    x = (u, u r1 + r2, int_0^v t (u r1' + r2') dt + u c1 + c2) with basis
    (1, 0, c1 - int_0^v r1), (0, 1, v). Rulings are x_u = (1, r1(v),
    int_0^v t r1' dt + c1) along the directrix x(0, v).

    Raises:
        PreconditionFailed: r2'(0) != 0
    """
    r1, r2 = _expr(r1), _expr(r2)
    _one_variable("r1", r1, "v")
    _one_variable("r2", r2, "v")
    R1, R2 = _fn(r1), _fn(r2)
    slope = float(R2(0.0, 0.0, 1).dv)
    if abs(slope) > POINT_TOL:
        raise PreconditionFailed(f"vanishing-K needs r2'(0) = 0, got {slope:.3e}")
    c1, c2 = float(c1), float(c2)

    def b(u, v, k):
        ju, _ = _coords(u, v, k)
        return ju * R1(u, v, k) + R2(u, v, k)

    bv = _partial(b, "v")

    def t_bv(u, t, k):
        return _second_coordinate(u, t, k) * bv(u, t, k)

    def position(u, v, k):
        ju, _ = _coords(u, v, k)
        return ju, b(u, v, k), antiderivative_v(t_bv, u, v, k) + ju * c1 + c2

    def g1(u, v, k):
        return c1 - antiderivative_v(R1, u, v, k)

    params = _texts(r1=r1, r2=r2)
    _log_built("vanishing-K", params)
    annotations = {
        "ruled": True,
        "ruling": f"(1, {params['r1']}, int_0^v t r1'(t) dt + {c1!r})",
        "directrix": f"(0, {params['r2']}, int_0^v t r2'(t) dt + {c2!r})",
    }
    return FrontalSurface(
        domain=domain,
        position=position,
        basis=_graph_basis(g1, _second_coordinate),
        provenance=Provenance("vanishing-K", params, {"c1": c1, "c2": c2}),
        annotations=annotations,
    )


def ruled_parts(s: FrontalSurface, v) -> Tuple[np.ndarray, np.ndarray]:
    """Directrix point x(0, v) and ruling direction x_u(0, v), rows (..., 3)"""
    if s.provenance.kind != "vanishing-K":
        raise WrongGeneratorKind(f"ruled data needs a vanishing-K surface, got {s.provenance.kind}")
    v = np.asarray(v, dtype=float)
    x = s.position(np.zeros_like(v), v, 1)
    directrix = np.stack(np.broadcast_arrays(*[c.value for c in x]), axis=-1)
    ruling = np.stack(np.broadcast_arrays(*[c.du for c in x]), axis=-1)
    return directrix, ruling


# --- extendable Gaussian curvature ----------------------------------------

def _laplacian_residual(F: Expr, c: float, domain: Domain, grid: int) -> float:
    us, vs = domain.grid(grid, grid)
    U, V = np.meshgrid(us, vs, indexing="ij")
    jet = expr_jet(F, U, V / sqrt(c), 2)
    return float(np.max(np.abs(jet.duu + jet.dvv)))


def gen_extendable_K(
    mode: str,
    c: float,
    domain: Domain,
    h1: Optional[ExprLike] = None,
    h2: Optional[ExprLike] = None,
    F: Optional[ExprLike] = None,
) -> FrontalSurface:
    """Rank-1 wavefront with extendable Gaussian curvature

    h solves h_uu + c h_vv = 0 (wave mode, c < 0, from h1 and h2; laplace
    mode, c > 0, from a harmonic F), and the surface is gen_rank1_from_h(h).
    The extended Gaussian curvature is c (1 + h_u^2 + v^2)^-2.

    Raises:
        PreconditionFailed: sign of c does not match the mode
        HarmonicityViolated: laplace mode with a non-harmonic F
    """
    c = float(c)
    if mode == "wave":
        if c >= 0:
            raise PreconditionFailed(f"wave mode needs c < 0, got {c}")
        h1, h2 = _expr(h1), _expr(h2)
        _one_variable("h1", h1, "u")
        _one_variable("h2", h2, "u")
        k = num(sqrt(-c))
        minus = sub(Var("v"), mul(k, Var("u")))
        plus = add(Var("v"), mul(k, Var("u")))
        h = add(substitute(h1, {"u": minus}), substitute(h2, {"u": plus}))
        params = _texts(h1=h1, h2=h2)
    elif mode == "laplace":
        if c <= 0:
            raise PreconditionFailed(f"laplace mode needs c > 0, got {c}")
        F = _expr(F)
        residual = _laplacian_residual(F, c, domain, config.DEFAULT_GRID)
        if residual > config.HARMONIC_TOL:
            raise HarmonicityViolated(f"F is not harmonic: max |F_uu + F_vv| = {residual:.3e}")
        h = substitute(F, {"v": div(Var("v"), num(sqrt(c)))})
        params = _texts(F=F)
    else:
        raise ValueError(f"unknown extendable-K mode {mode!r}")

    kind = f"extendable-K-{mode}"
    base = gen_rank1_from_h(h, domain, kind=kind)
    hu = _partial(_fn(h), "u")

    def extended_gaussian(u, v):
        slope = hu(u, v, 0).value
        return c * (1.0 + slope ** 2 + np.asarray(v, dtype=float) ** 2) ** -2

    params["h"] = to_text(h)
    return replace(
        base,
        provenance=Provenance(kind, params, {"c": c}),
        extended_gaussian=extended_gaussian,
        annotations={"mode": mode, "c": c},
    )


# --- rank-0 wavefronts ----------------------------------------------------

def gen_rank0_front(h: ExprLike, domain: Domain) -> FrontalSurface:
    """Wavefront germ at a rank-0 singularity

    x = (h_u, h_v, c) with c_u = u h_uu + v h_uv, c_v = u h_uv + v h_vv,
    basis (1, 0, u), (0, 1, v) and Lambda^T = Hess(h).

    Raises:
        PreconditionFailed: Hess(h)(0, 0) != 0
    """
    h = _expr(h)
    Hf = _fn(h)
    hessian = Hf(0.0, 0.0, 2).hessian()
    if np.max(np.abs(hessian)) > POINT_TOL:
        raise PreconditionFailed(f"rank0-front needs Hess(h)(0, 0) = 0, got {hessian.tolist()}")
    hu, hv = _partial(Hf, "u"), _partial(Hf, "v")
    huu, huv, hvv = _partial(hu, "u"), _partial(hu, "v"), _partial(hv, "v")

    def cu(u, v, k):
        ju, jv = _coords(u, v, k)
        return ju * huu(u, v, k) + jv * huv(u, v, k)

    def cv(u, v, k):
        ju, jv = _coords(u, v, k)
        return ju * huv(u, v, k) + jv * hvv(u, v, k)

    def c_value(u, v):
        def on_axis(uu, t, kk):
            return cv(np.zeros_like(uu), t, kk)
        return integral_value_u(cu, u, v) + integral_value_v(on_axis, u, v)

    def position(u, v, k):
        return hu(u, v, k), hv(u, v, k), _integral_coordinate(c_value, cu, cv, u, v, k)

    def first_coordinate(u, v, k):
        return _coords(u, v, k)[0]

    params = _texts(h=h)
    _log_built("rank0-front", params)
    return FrontalSurface(
        domain=domain,
        position=position,
        basis=_graph_basis(first_coordinate, _second_coordinate),
        provenance=Provenance("rank0-front", params),
    )
