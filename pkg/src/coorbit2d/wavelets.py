"""Band-limited admissible wavelets with closed-form frequency profiles.

Each profile is built from the smooth compactly supported bump
``rho(t) = exp(1 - 1/(1 - t^2))`` on (-1, 1) and evaluated at ``eta = B^T xi``
where ``B`` is the conjugator of the owning group, which places the support
inside the conjugated dual orbit:

* similitude:  rho(log2(|eta| / s0) / w)
* diagonal:    rho(log2(|eta1| / s0) / w) * rho(log2(|eta2| / s0) / w)
* shearlet:    rho(log2(|eta1| / s0) / w) * rho((eta2 / eta1) / w)

with center scale ``s0`` and bandwidth factor ``w`` (defaults 1).  Values are
always computed from the closed form; no resampling or interpolation enters
any transform built on top.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classify import orbit_contains
from .errors import WaveletSupportError
from .groups import DIAGONAL, SHEARLET, SIMILITUDE, Family, as_matrix


def bump(t):
    """exp(1 - 1/(1-t^2)) inside (-1, 1), 0 outside; peak value 1 at t = 0."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = np.abs(t) < 1.0
    tm = t[m]
    out[m] = np.exp(1.0 - 1.0 / (1.0 - tm * tm))
    return out


@dataclass(frozen=True, eq=False)
class WaveletSpec:
    """Closed-form frequency profile tied to a group family and conjugator."""

    family: Family
    conjugator: np.ndarray
    center_scale: float = 1.0
    bandwidth: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "conjugator",
                           as_matrix(self.conjugator, "conjugator"))
        if self.center_scale <= 0 or self.bandwidth <= 0:
            raise ValueError("center scale and bandwidth must be positive")

    def evaluate(self, xi1, xi2):
        """psi-hat at arbitrary frequencies (broadcastable arrays or scalars)."""
        xi1 = np.asarray(xi1, dtype=float)
        xi2 = np.asarray(xi2, dtype=float)
        bt = self.conjugator.T
        e1, e2 = np.broadcast_arrays(bt[0, 0] * xi1 + bt[0, 1] * xi2,
                                     bt[1, 0] * xi1 + bt[1, 1] * xi2)
        shape = e1.shape
        e1 = np.atleast_1d(e1)
        e2 = np.atleast_1d(e2)
        out = np.zeros(e1.shape)
        s0, w = self.center_scale, self.bandwidth
        kind = self.family.kind
        if kind == SIMILITUDE:
            r = np.hypot(e1, e2)
            m = r > 0.0
            out[m] = bump(np.log2(r[m] / s0) / w)
        elif kind == DIAGONAL:
            m = (e1 != 0.0) & (e2 != 0.0)
            out[m] = (bump(np.log2(np.abs(e1[m]) / s0) / w)
                      * bump(np.log2(np.abs(e2[m]) / s0) / w))
        else:
            m = e1 != 0.0
            out[m] = (bump(np.log2(np.abs(e1[m]) / s0) / w)
                      * bump((e2[m] / e1[m]) / w))
        return (self.amplitude * out).reshape(shape)

    def scaled(self, factor):
        """Same profile with the amplitude multiplied by `factor`."""
        return WaveletSpec(self.family, self.conjugator, self.center_scale,
                           self.bandwidth, self.amplitude * factor)

    def support_box(self):
        """Half-widths (m1, m2) of a box bounding the support in eta coordinates."""
        hi = self.center_scale * 2.0 ** self.bandwidth
        if self.family.kind == SHEARLET:
            return hi, hi * self.bandwidth
        return hi, hi

    def support_boundary(self, n_per_edge=16):
        """Sample points (in eta coordinates) on the boundary of the support."""
        s0, w = self.center_scale, self.bandwidth
        lo, hi = s0 * 2.0 ** (-w), s0 * 2.0 ** w
        pts = []
        kind = self.family.kind
        if kind == SIMILITUDE:
            ang = np.linspace(0, 2 * np.pi, n_per_edge, endpoint=False)
            for r in (lo, hi):
                pts.extend(np.column_stack([r * np.cos(ang), r * np.sin(ang)]))
        elif kind == DIAGONAL:
            ts = np.linspace(lo, hi, n_per_edge)
            for s1 in (1.0, -1.0):
                for s2 in (1.0, -1.0):
                    for edge in (lo, hi):
                        pts.extend(np.column_stack([s1 * np.full_like(ts, edge), s2 * ts]))
                        pts.extend(np.column_stack([s1 * ts, s2 * np.full_like(ts, edge)]))
        else:
            rs = np.linspace(-w, w, n_per_edge)
            for s1 in (1.0, -1.0):
                for edge in (lo, hi):
                    e1 = s1 * np.full_like(rs, edge)
                    pts.extend(np.column_stack([e1, e1 * rs]))
                mags = np.linspace(lo, hi, n_per_edge)
                for r in (-w, w):
                    e1 = s1 * mags
                    pts.extend(np.column_stack([e1, e1 * r]))
        return np.array(pts)


def verify_support_in_orbit(wavelet, spec, tol=1e-12):
    """Check that the closure of the wavelet support lies in the dual orbit."""
    binv_t = np.linalg.inv(wavelet.conjugator).T
    for eta in wavelet.support_boundary():
        xi = binv_t @ eta
        if not orbit_contains(spec, xi, tol):
            raise WaveletSupportError(
                f"support boundary point {xi.tolist()} leaves the dual orbit"
            )


def default_wavelet(spec, center_scale=1.0, bandwidth=1.0, amplitude=1.0):
    """Standard admissible wavelet for a group spec, support-checked."""
    psi = WaveletSpec(spec.family, spec.conjugator, center_scale, bandwidth,
                      amplitude)
    verify_support_in_orbit(psi, spec)
    return psi
