"""
Pointwise invariants of a frontal relative to its tangent moving basis.

Everything is computed from first-order jets of x and of the basis: Dn comes
from differentiating the normalized cross product of the basis columns, so
the matrices stay exact at singular points. The grid routines work on whole
batches of points; ``invariant_frame`` is the single-point view.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.errors import ComplexEigen, DomainError, UmbilicLike, ZeroDirection
from src.jets import Jet2, dot
from src.models import ClassicalFrame, InvariantFrame, Point
from src.utils.config import config
from src.utils.logger import setup_logger

from .surface import FrontalSurface, normal_jets

logger = setup_logger("frontal-lab.invariants")


def _T(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m, -1, -2)


def adj(m: np.ndarray) -> np.ndarray:
    """Adjugate of (batches of) 2x2 matrices"""
    m = np.asarray(m, dtype=float)
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    out[..., 1, 1] = m[..., 0, 0]
    return out


def det2(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def _stack(rows: Sequence[Sequence]) -> np.ndarray:
    """Nested rows of equally-broadcastable arrays -> array (*batch, r, c)"""
    flat = np.broadcast_arrays(*[np.asarray(a, dtype=float) for row in rows for a in row])
    out = np.stack(flat, axis=-1)
    return out.reshape(out.shape[:-1] + (len(rows), len(rows[0])))


def _jacobian(vector: Sequence[Jet2]) -> np.ndarray:
    return _stack([[c.du, c.dv] for c in vector])


@dataclass
class FrameArrays:
    """Invariant matrices over a batch of points; matrix axes last"""
    Dx: np.ndarray
    Dn: np.ndarray
    omega: np.ndarray
    normal: np.ndarray
    I: np.ndarray
    II: np.ndarray
    I_omega: np.ndarray
    II_omega: np.ndarray
    Lambda: np.ndarray
    mu: np.ndarray
    alpha: np.ndarray
    lam: np.ndarray
    K_omega: np.ndarray
    H_omega: np.ndarray

    @property
    def relative_shape(self) -> np.ndarray:
        """II_Omega adj(Lambda^T), symmetric in exact arithmetic"""
        return self.II_omega @ adj(_T(self.Lambda))


def frame_arrays(s: FrontalSurface, u, v) -> FrameArrays:
    """All invariant matrices at the points (u, v) (arrays broadcast together)"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    x = s.position(u, v, 1)
    w1, w2 = s.basis(u, v, 1)
    n = normal_jets(w1, w2, u, v)

    Dx = _jacobian(x)
    Dn = _jacobian(n)
    omega = _stack([[w1[i].value, w2[i].value] for i in range(3)])
    normal = np.stack(np.broadcast_arrays(*[c.value for c in n]), axis=-1)
    batch = np.broadcast_shapes(Dx.shape[:-2], Dn.shape[:-2], omega.shape[:-2], u.shape, v.shape)
    Dx, Dn, omega = (np.broadcast_to(a, batch + a.shape[-2:]) for a in (Dx, Dn, omega))
    normal = np.broadcast_to(normal, batch + (3,))

    I = _T(Dx) @ Dx
    II = -_T(Dx) @ Dn
    I_omega = _T(omega) @ omega
    II_omega = -_T(omega) @ Dn
    inv = np.linalg.inv(I_omega)
    Lambda = _T(Dx) @ omega @ inv
    mu = -_T(II_omega) @ inv
    alpha = mu @ adj(Lambda)
    return FrameArrays(
        Dx=Dx,
        Dn=Dn,
        omega=omega,
        normal=normal,
        I=I,
        II=II,
        I_omega=I_omega,
        II_omega=II_omega,
        Lambda=Lambda,
        mu=mu,
        alpha=alpha,
        lam=det2(Lambda),
        K_omega=det2(mu),
        H_omega=-0.5 * np.trace(alpha, axis1=-2, axis2=-1),
    )


def relative_principal_curvatures(H, lam, K) -> Tuple[Optional[float], Optional[float]]:
    disc = H * H - lam * K
    if disc < config.DISC_FLOOR:
        return None, None
    root = np.sqrt(max(disc, 0.0))
    return float(H - root), float(H + root)


def invariant_frame(s: FrontalSurface, p: Point) -> InvariantFrame:
    """Invariant frame of s at the parameter point p

    Args:
        s: Frontal surface
        p: Parameter point (u, v)

    Returns:
        InvariantFrame

    Raises:
        DegenerateBasis: the basis columns are dependent at p
    """
    a = frame_arrays(s, float(p[0]), float(p[1]))
    lam = float(a.lam)
    K = float(a.K_omega)
    H = float(a.H_omega)
    k1, k2 = relative_principal_curvatures(H, lam, K)
    if k1 is None:
        logger.warning(f"negative discriminant {H * H - lam * K:.3e} at {tuple(p)}, no relative principal curvatures")
    return InvariantFrame(
        point=(float(p[0]), float(p[1])),
        first_form=a.I,
        second_form=a.II,
        first_form_omega=a.I_omega,
        second_form_omega=a.II_omega,
        Lambda=a.Lambda,
        mu=a.mu,
        alpha=a.alpha,
        lam=lam,
        K_omega=K,
        H_omega=H,
        k1_omega=k1,
        k2_omega=k2,
        normal=a.normal,
        Dx=a.Dx,
        Dn=a.Dn,
        omega=a.omega,
    )


def lambda_jet(s: FrontalSurface, u, v, order: int = 0) -> Jet2:
    """lambda_Omega = det(Dx^T Omega) / det(I_Omega) as a jet (order <= 1)"""
    x = s.position(u, v, order + 1)
    w1, w2 = s.basis(u, v, order)
    xu = [c.partial("u") for c in x]
    xv = [c.partial("v") for c in x]
    top = dot(xu, w1) * dot(xv, w2) - dot(xu, w2) * dot(xv, w1)
    gram = dot(w1, w1) * dot(w2, w2) - dot(w1, w2) * dot(w1, w2)
    return top / gram


def lambda_grid(s: FrontalSurface, n: int, m: int, order: int = 0):
    """lambda_Omega on the n x m sample grid: (us, vs, jet with batch shape (n, m))"""
    us, vs = s.domain.grid(n, m)
    U, V = np.meshgrid(us, vs, indexing="ij")
    return us, vs, lambda_jet(s, U, V, order)


def relative_normal_curvature(f: InvariantFrame, omega) -> float:
    """(w^T II_Omega adj(Lambda^T) w) / (w^T I_Omega w)"""
    w = np.asarray(omega, dtype=float)
    if not np.any(w):
        raise ZeroDirection("relative normal curvature needs a nonzero direction")
    S = f.second_form_omega @ adj(f.Lambda.T)
    return float(w @ S @ w / (w @ f.first_form_omega @ w))


def _orient(vec: np.ndarray) -> np.ndarray:
    return -vec if vec[np.argmax(np.abs(vec))] < 0 else vec


def principal_directions(f: InvariantFrame):
    """Relative principal directions and curvatures

    Solves II_Omega adj(Lambda^T) w = k I_Omega w through a Cholesky
    factor of I_Omega.

    Returns:
        (w1, w2, k1, k2) with k1 <= k2 and I_Omega-unit eigenvectors

    Raises:
        ComplexEigen: negative discriminant
        UmbilicLike: the two eigenvalues coincide
    """
    if f.discriminant < config.DISC_FLOOR:
        raise ComplexEigen(f"discriminant {f.discriminant:.3e} at {f.point}")
    S = f.second_form_omega @ adj(f.Lambda.T)
    S = 0.5 * (S + S.T)
    L = np.linalg.cholesky(f.first_form_omega)
    L_inv = np.linalg.inv(L)
    k, Y = np.linalg.eigh(L_inv @ S @ L_inv.T)
    if k[1] - k[0] < config.UMBILIC_GAP:
        raise UmbilicLike(f"relative principal curvatures coincide at {f.point}: {k[0]:.6g}")
    W = L_inv.T @ Y
    return _orient(W[:, 0]), _orient(W[:, 1]), float(k[0]), float(k[1])


def classical_frame(s: FrontalSurface, p: Point) -> ClassicalFrame:
    """Classical fundamental forms and curvatures from x alone (regular points)

    The unit normal is x_u x x_v normalized and oriented like the basis
    normal, so signs agree with the relative invariants.
    """
    u, v = float(p[0]), float(p[1])
    x = s.position(u, v, 2)
    xu = np.array([c.du for c in x], dtype=float)
    xv = np.array([c.dv for c in x], dtype=float)
    xuu = np.array([c.duu for c in x], dtype=float)
    xuv = np.array([c.duv for c in x], dtype=float)
    xvv = np.array([c.dvv for c in x], dtype=float)
    N = np.cross(xu, xv)
    length = np.linalg.norm(N)
    if length <= config.BASIS_DEGENERACY:
        raise DomainError(f"classical frame undefined at the singular point {(u, v)}")
    N = N / length
    n = np.array([c.value for c in s.unit_normal(u, v, 0)], dtype=float)
    if N @ n < 0:
        N = -N
    I = np.array([[xu @ xu, xu @ xv], [xu @ xv, xv @ xv]])
    II = np.array([[xuu @ N, xuv @ N], [xuv @ N, xvv @ N]])
    weingarten = np.linalg.solve(I, II)
    K = float(np.linalg.det(II) / np.linalg.det(I))
    H = float(0.5 * np.trace(weingarten))
    root = np.sqrt(max(H * H - K, 0.0))
    return ClassicalFrame(
        point=(u, v),
        first_form=I,
        second_form=II,
        weingarten=weingarten,
        K=K,
        H=H,
        k1=float(H - root),
        k2=float(H + root),
        normal=N,
    )


def normal_curvature_classical(c: ClassicalFrame, zeta) -> float:
    """k_p(zeta) = (zeta^T II zeta) / (zeta^T I zeta)"""
    z = np.asarray(zeta, dtype=float)
    if not np.any(z):
        raise ZeroDirection("normal curvature needs a nonzero direction")
    return float(z @ c.second_form @ z / (z @ c.first_form @ z))
