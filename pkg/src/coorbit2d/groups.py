"""Matrix dilation groups of the plane: the similitude, diagonal and shearlet
families, arbitrary conjugates thereof, chart coordinates and Haar densities.

A group is described by a :class:`GroupSpec`: one of the three standard
families together with an invertible conjugator ``B``; the represented group
is ``B @ H_std @ inv(B)``.  Chart coordinates use the natural logarithm for
scales and radians for angles:

* similitude  ``(lam, theta)``      -> ``exp(lam) * [[cos t, sin t], [-sin t, cos t]]``
* diagonal    ``(lam1, lam2, e1, e2)`` -> ``diag(e1 exp(lam1), e2 exp(lam2))``
* shearlet c  ``(eps, lam, b)``     -> ``eps * [[exp(lam), b], [0, exp(c lam)]]``

The left Haar density of the full group ``R^2 x| H`` in these coordinates is
``dx dh / |det h|`` where ``dh`` is the Haar measure of ``H`` itself; the
chart densities of ``dh`` are 1, 1 and ``exp(-lam)`` respectively (verified by
the left-invariance quadrature oracle in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import ChartMismatchError, NotInGroupError, SingularMatrixError

SIMILITUDE = "similitude"
DIAGONAL = "diagonal"
SHEARLET = "shearlet"

DEFAULT_TOL = 1e-9

_I2 = np.eye(2)


def as_matrix(m, name="matrix", require_invertible=True):
    """Coerce to a read-only 2x2 float array, optionally requiring det != 0."""
    a = np.array(m, dtype=float)
    if a.shape != (2, 2):
        raise ValueError(f"{name} must be 2x2, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise SingularMatrixError(f"{name} has non-finite entries")
    if require_invertible and np.linalg.det(a) == 0.0:
        raise SingularMatrixError(f"{name} is singular")
    a.flags.writeable = False
    return a


def as_vector(v, name="vector"):
    a = np.array(v, dtype=float).reshape(-1)
    if a.shape != (2,):
        raise ValueError(f"{name} must have two components")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite components")
    return a


def rotation(phi):
    """Rotation matrix [[cos, sin], [-sin, cos]]; maps the line at angle g to g - phi."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [-s, c]])


def shear(s):
    """Upper unit shear [[1, s], [0, 1]]."""
    return np.array([[1.0, s], [0.0, 1.0]])


@dataclass(frozen=True)
class Family:
    """Tagged family: similitude, diagonal, or shearlet with exponent c."""

    kind: str
    c: Optional[float] = None

    def __post_init__(self):
        if self.kind not in (SIMILITUDE, DIAGONAL, SHEARLET):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == SHEARLET:
            if self.c is None or not np.isfinite(self.c):
                raise ValueError("shearlet family requires a finite exponent c")
        elif self.c is not None:
            raise ValueError(f"{self.kind} family takes no exponent")


def similitude():
    return Family(SIMILITUDE)


def diagonal():
    return Family(DIAGONAL)


def shearlet(c):
    return Family(SHEARLET, float(c))


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """A dilation group: standard family conjugated by an invertible matrix."""

    family: Family
    conjugator: np.ndarray = field(default_factory=lambda: _I2.copy())

    def __post_init__(self):
        object.__setattr__(
            self, "conjugator", as_matrix(self.conjugator, "conjugator")
        )

    @property
    def is_standard(self):
        return bool(np.array_equal(self.conjugator, _I2))

    def __repr__(self):
        fam = self.family.kind
        if self.family.kind == SHEARLET:
            fam += f"(c={self.family.c})"
        if self.is_standard:
            return f"GroupSpec({fam})"
        return f"GroupSpec({fam}, conjugator={self.conjugator.tolist()})"


def conjugate_spec(spec, a):
    """The spec of A H A^-1 where H is the group of `spec`."""
    a = as_matrix(a, "A")
    return GroupSpec(spec.family, a @ spec.conjugator)


# ---------------------------------------------------------------------------
# chart points


def _check_sign(e, name):
    if e not in (1, -1):
        raise ValueError(f"{name} must be +1 or -1, got {e}")
    return int(e)


@dataclass(frozen=True)
class SimilitudeChart:
    lam: float
    theta: float

    def __post_init__(self):
        if not (np.isfinite(self.lam) and np.isfinite(self.theta)):
            raise ValueError("chart coordinates must be finite")


@dataclass(frozen=True)
class DiagonalChart:
    lam1: float
    lam2: float
    eps1: int = 1
    eps2: int = 1

    def __post_init__(self):
        if not (np.isfinite(self.lam1) and np.isfinite(self.lam2)):
            raise ValueError("chart coordinates must be finite")
        object.__setattr__(self, "eps1", _check_sign(self.eps1, "eps1"))
        object.__setattr__(self, "eps2", _check_sign(self.eps2, "eps2"))


@dataclass(frozen=True)
class ShearletChart:
    eps: int
    lam: float
    shear: float

    def __post_init__(self):
        if not (np.isfinite(self.lam) and np.isfinite(self.shear)):
            raise ValueError("chart coordinates must be finite")
        object.__setattr__(self, "eps", _check_sign(self.eps, "eps"))


ChartPoint = Union[SimilitudeChart, DiagonalChart, ShearletChart]

_CHART_FOR_KIND = {
    SIMILITUDE: SimilitudeChart,
    DIAGONAL: DiagonalChart,
    SHEARLET: ShearletChart,
}


def _require_chart(spec, p):
    expected = _CHART_FOR_KIND[spec.family.kind]
    if not isinstance(p, expected):
        raise ChartMismatchError(
            f"chart point {type(p).__name__} does not match family {spec.family.kind}"
        )


# ---------------------------------------------------------------------------
# operations


def dual_action(h, zeta):
    """The dual action h^-T zeta of an invertible matrix on frequency space."""
    h = as_matrix(h, "h")
    zeta = as_vector(zeta, "zeta")
    return np.linalg.solve(h.T, zeta)


def _standard_matrix(family, p):
    if family.kind == SIMILITUDE:
        r = np.exp(p.lam)
        a, b = r * np.cos(p.theta), r * np.sin(p.theta)
        return np.array([[a, b], [-b, a]])
    if family.kind == DIAGONAL:
        return np.array(
            [[p.eps1 * np.exp(p.lam1), 0.0], [0.0, p.eps2 * np.exp(p.lam2)]]
        )
    a = np.exp(p.lam)
    return p.eps * np.array([[a, p.shear], [0.0, a ** family.c]])


def element_from_chart(spec, p):
    """Group element at chart point p, conjugated into the represented group."""
    _require_chart(spec, p)
    m = _standard_matrix(spec.family, p)
    b = spec.conjugator
    return b @ m @ np.linalg.inv(b)


def chart_from_element(spec, m, tol=DEFAULT_TOL):
    """Inverse of `element_from_chart`; raises NotInGroupError off the group."""
    if not contains(spec, m, tol):
        raise NotInGroupError("matrix is not in the represented group")
    b = spec.conjugator
    ms = np.linalg.solve(b, as_matrix(m, "m") @ b)
    kind = spec.family.kind
    if kind == SIMILITUDE:
        a, bb = ms[0, 0], ms[0, 1]
        return SimilitudeChart(lam=0.5 * np.log(a * a + bb * bb),
                               theta=np.arctan2(bb, a) % (2 * np.pi))
    if kind == DIAGONAL:
        return DiagonalChart(
            lam1=np.log(abs(ms[0, 0])), lam2=np.log(abs(ms[1, 1])),
            eps1=1 if ms[0, 0] > 0 else -1, eps2=1 if ms[1, 1] > 0 else -1,
        )
    eps = 1 if ms[0, 0] > 0 else -1
    a = eps * ms[0, 0]
    return ShearletChart(eps=eps, lam=np.log(a), shear=eps * ms[0, 1])


def haar_weight(spec, p):
    """Density of the left Haar measure of H at p, in chart coordinates.

    Conjugation rescales Haar measure by a positive constant only; the
    constant is fixed to 1 for every conjugate, so the density depends on the
    family alone.
    """
    _require_chart(spec, p)
    if spec.family.kind == SHEARLET:
        return float(np.exp(-p.lam))
    return 1.0


def g_weight(spec, p):
    """h-marginal density of the Haar measure of R^2 x| H: haar / |det h|."""
    _require_chart(spec, p)
    kind = spec.family.kind
    if kind == SIMILITUDE:
        return float(np.exp(-2.0 * p.lam))
    if kind == DIAGONAL:
        return float(np.exp(-(p.lam1 + p.lam2)))
    return float(np.exp(-p.lam) * np.exp(-(1.0 + spec.family.c) * p.lam))


def group_product(gx, g, hx, h):
    """Product (gx, g) o (hx, h) = (gx + g hx, g h) in R^2 x| GL(2)."""
    g = as_matrix(g, "g")
    h = as_matrix(h, "h")
    gx = as_vector(gx, "gx")
    hx = as_vector(hx, "hx")
    return gx + g @ hx, g @ h


def group_inverse(x, h):
    """Inverse (x, h)^-1 = (-h^-1 x, h^-1)."""
    h = as_matrix(h, "h")
    x = as_vector(x, "x")
    hinv = np.linalg.inv(h)
    return -hinv @ x, hinv


def contains(spec, m, tol=DEFAULT_TOL):
    """Whether m lies in the represented group, within relative tolerance."""
    m = as_matrix(m, "m")
    b = spec.conjugator
    ms = np.linalg.solve(b, m @ b)
    scale = np.max(np.abs(ms))
    if scale == 0.0:
        return False
    kind = spec.family.kind
    if kind == SIMILITUDE:
        return (abs(ms[0, 0] - ms[1, 1]) <= tol * scale
                and abs(ms[0, 1] + ms[1, 0]) <= tol * scale)
    if kind == DIAGONAL:
        return (abs(ms[0, 1]) <= tol * scale and abs(ms[1, 0]) <= tol * scale
                and abs(ms[0, 0]) > tol * scale and abs(ms[1, 1]) > tol * scale)
    c = spec.family.c
    if abs(ms[1, 0]) > tol * scale:
        return False
    if ms[0, 0] == 0.0 or np.sign(ms[0, 0]) != np.sign(ms[1, 1]):
        return False
    target = abs(ms[0, 0]) ** c
    return abs(abs(ms[1, 1]) - target) <= tol * max(abs(ms[1, 1]), target)


def lie_algebra_basis(spec):
    """Basis of the Lie algebra of the represented group (conjugated)."""
    kind = spec.family.kind
    if kind == SIMILITUDE:
        basis = [np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]])]
    elif kind == DIAGONAL:
        basis = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
    else:
        basis = [np.diag([1.0, spec.family.c]),
                 np.array([[0.0, 1.0], [0.0, 0.0]])]
    b = spec.conjugator
    binv = np.linalg.inv(b)
    return [b @ x @ binv for x in basis]


def component_representatives(spec):
    """One group element per connected component of the represented group."""
    kind = spec.family.kind
    if kind == SIMILITUDE:
        reps = [np.eye(2)]
    elif kind == DIAGONAL:
        reps = [np.diag([e1, e2]) for e1 in (1.0, -1.0) for e2 in (1.0, -1.0)]
    else:
        reps = [np.eye(2), -np.eye(2)]
    b = spec.conjugator
    binv = np.linalg.inv(b)
    return [b @ r @ binv for r in reps]


def same_group(spec_a, spec_b, tol=DEFAULT_TOL):
    """Whether two specs represent the same subgroup of GL(2, R).

    Tests equality of the Lie algebra spans (numerical rank of the stacked
    basis vectors) and then membership of one component representative per
    connected component, in both directions.
    """
    if spec_a.family.kind != spec_b.family.kind:
        return False
    if spec_a.family.kind == SHEARLET:
        if abs(spec_a.family.c - spec_b.family.c) > tol:
            return False
    rows = []
    for x in lie_algebra_basis(spec_a) + lie_algebra_basis(spec_b):
        v = x.reshape(-1)
        rows.append(v / np.linalg.norm(v))
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    if sv[2] > max(tol, 1e-12) * sv[0]:
        return False
    return all(contains(spec_a, r, tol) for r in component_representatives(spec_b)) and all(
        contains(spec_b, r, tol) for r in component_representatives(spec_a)
    )
