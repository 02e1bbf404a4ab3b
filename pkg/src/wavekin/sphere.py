"""Quadrature rules on the unit sphere S^{d-1} for the resonant-manifold integral.

d=2 uses the N-point uniform rule on the circle (trapezoid; spectrally accurate
for smooth integrands).  d=3 defaults to the 26-point Lebedev rule (octahedral,
degree 7); a Gauss-Legendre x uniform product rule is available for convergence
studies at arbitrary order.

All rules carry surface measure (weights sum to 2*pi resp. 4*pi) and are stored
with antipodal pairing: nodes[i + n/2] == -nodes[i] with equal weights, which
collision sweeps exploit when the two interpolated slabs coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def surface_area(dim: int) -> float:
    if dim == 2:
        return 2.0 * np.pi
    if dim == 3:
        return 4.0 * np.pi
    raise ValueError(f"dim must be 2 or 3, got {dim}")


def unit_ball_volume(dim: int) -> float:
    if dim == 2:
        return np.pi
    if dim == 3:
        return 4.0 * np.pi / 3.0
    raise ValueError(f"dim must be 2 or 3, got {dim}")


@dataclass(frozen=True)
class SphereRule:
    """Nodes and weights on S^{d-1}; `antipodal` means nodes[i+n/2] = -nodes[i]."""

    dim: int
    nodes: np.ndarray   # (n, dim), unit vectors
    weights: np.ndarray  # (n,), positive, summing to the surface area
    antipodal: bool

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.ascontiguousarray(self.nodes, dtype=np.float64))
        object.__setattr__(self, "weights", np.ascontiguousarray(self.weights, dtype=np.float64))
        n = self.nodes.shape[0]
        if self.nodes.shape != (n, self.dim) or self.weights.shape != (n,):
            raise ValueError("inconsistent node/weight shapes")
        area = surface_area(self.dim)
        if abs(self.weights.sum() - area) > 1e-12 * area:
            raise ValueError("weights do not sum to the sphere surface area")
        if np.max(np.abs(np.linalg.norm(self.nodes, axis=1) - 1.0)) > 1e-12:
            raise ValueError("nodes are not unit vectors")
        moment = np.abs(self.weights @ self.nodes).max()
        if moment > 1e-12 * area:
            raise ValueError("rule is not antipodally balanced (linear moment != 0)")
        if self.antipodal:
            if n % 2 != 0 or np.max(np.abs(self.nodes[n // 2:] + self.nodes[:n // 2])) > 1e-14:
                raise ValueError("antipodal pairing violated")

    def __len__(self) -> int:
        return self.nodes.shape[0]


@lru_cache(maxsize=32)
def circle_rule(n: int = 16) -> SphereRule:
    """Uniform n-point rule on the unit circle, exact on harmonics of order < n."""
    if n < 2:
        raise ValueError("need n >= 2")
    theta = 2.0 * np.pi * np.arange(n) / n
    nodes = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    weights = np.full(n, 2.0 * np.pi / n)
    antipodal = n % 2 == 0
    if antipodal:
        # enforce exact sign symmetry against rounding in cos/sin
        nodes[n // 2:] = -nodes[: n // 2]
    return SphereRule(2, nodes, weights, antipodal)


def _octahedral_orbit(code: int, a: float = 0.0) -> np.ndarray:
    """Point orbits of the octahedral group used by the small Lebedev rules."""
    if code == 0:  # vertices (1,0,0)...: 6 points
        pts = []
        for axis in range(3):
            for s in (1.0, -1.0):
                p = [0.0, 0.0, 0.0]
                p[axis] = s
                pts.append(p)
        return np.array(pts)
    if code == 1:  # edge midpoints (0,a,a), a=1/sqrt(2): 12 points
        a = 1.0 / np.sqrt(2.0)
        pts = []
        for hole in range(3):
            for s1 in (1.0, -1.0):
                for s2 in (1.0, -1.0):
                    p = [0.0, 0.0, 0.0]
                    others = [ax for ax in range(3) if ax != hole]
                    p[others[0]] = s1 * a
                    p[others[1]] = s2 * a
                    pts.append(p)
        return np.array(pts)
    if code == 2:  # cube corners (a,a,a), a=1/sqrt(3): 8 points
        a = 1.0 / np.sqrt(3.0)
        return np.array(
            [[s1 * a, s2 * a, s3 * a] for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1)],
            dtype=np.float64,
        )
    if code == 3:  # (a,a,b) orbit with b = sqrt(1-2a^2): 24 points
        b = np.sqrt(1.0 - 2.0 * a * a)
        pts = []
        for bpos in range(3):
            others = [ax for ax in range(3) if ax != bpos]
            for s1 in (1.0, -1.0):
                for s2 in (1.0, -1.0):
                    for sb in (1.0, -1.0):
                        p = [0.0, 0.0, 0.0]
                        p[others[0]] = s1 * a
                        p[others[1]] = s2 * a
                        p[bpos] = sb * b
                        pts.append(p)
        return np.array(pts)
    raise ValueError(f"unknown orbit code {code}")


# (orbit code, extra parameter, weight / (4*pi)) for the classic small rules
_LEBEDEV_TABLES = {
    6: [(0, 0.0, 1.0 / 6.0)],
    14: [(0, 0.0, 1.0 / 15.0), (2, 0.0, 3.0 / 40.0)],
    26: [(0, 0.0, 1.0 / 21.0), (1, 0.0, 4.0 / 105.0), (2, 0.0, 9.0 / 280.0)],
    38: [
        (0, 0.0, 1.0 / 105.0),
        (2, 0.0, 9.0 / 280.0),
        (3, 0.4597008433809831, 1.0 / 35.0),
    ],
}

LEBEDEV_DEGREE = {6: 3, 14: 5, 26: 7, 38: 9}


@lru_cache(maxsize=8)
def lebedev_rule(n: int = 26) -> SphereRule:
    """Octahedrally symmetric Lebedev rule with n in {6, 14, 26, 38}."""
    if n not in _LEBEDEV_TABLES:
        raise ValueError(f"no Lebedev table for n={n}; available: {sorted(_LEBEDEV_TABLES)}")
    nodes, weights = [], []
    for code, a, w in _LEBEDEV_TABLES[n]:
        orbit = _octahedral_orbit(code, a)
        nodes.append(orbit)
        weights.append(np.full(orbit.shape[0], 4.0 * np.pi * w))
    nodes = np.vstack(nodes)
    weights = np.concatenate(weights)
    return SphereRule(3, *_antipodal_sort(nodes, weights), True)


def _antipodal_sort(nodes: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reorder an antipodal point set so nodes[i + n/2] == -nodes[i] exactly."""
    n = nodes.shape[0]
    if n % 2 != 0:
        raise ValueError("antipodal set must have even size")
    used = np.zeros(n, dtype=bool)
    first, second, w1, w2 = [], [], [], []
    for i in range(n):
        if used[i]:
            continue
        used[i] = True
        dist = np.linalg.norm(nodes + nodes[i], axis=1)
        dist[used] = np.inf
        j = int(np.argmin(dist))
        if dist[j] > 1e-12:
            raise ValueError("point set is not antipodal")
        used[j] = True
        first.append(nodes[i])
        second.append(-nodes[i])  # exact negation, not the stored partner
        w1.append(weights[i])
        w2.append(weights[j])
    return np.vstack(first + second), np.array(w1 + w2)


@lru_cache(maxsize=32)
def product_rule(n_theta: int = 8, n_phi: int = 16) -> SphereRule:
    """Gauss-Legendre (cos theta) x uniform (phi) product rule on S^2.

    Needs even counts so the node set is antipodal; accuracy grows with the
    orders, unlike the fixed-degree Lebedev tables.
    """
    if n_theta % 2 or n_phi % 2:
        raise ValueError("product rule needs even n_theta and n_phi")
    mu, wmu = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    wphi = 2.0 * np.pi / n_phi
    nodes, weights = [], []
    for i in range(n_theta):
        s = np.sqrt(max(0.0, 1.0 - mu[i] ** 2))
        for j in range(n_phi):
            nodes.append([s * np.cos(phi[j]), s * np.sin(phi[j]), mu[i]])
            weights.append(wmu[i] * wphi)
    return SphereRule(3, *_antipodal_sort(np.array(nodes), np.array(weights)), True)


def default_rule(dim: int, order: int | None = None) -> SphereRule:
    """Default manifold rule: 16-point circle (d=2), 26-point Lebedev (d=3)."""
    if dim == 2:
        return circle_rule(16 if order is None else order)
    if dim == 3:
        return lebedev_rule(26 if order is None else order)
    raise ValueError(f"dim must be 2 or 3, got {dim}")
