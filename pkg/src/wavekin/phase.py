"""Phase-space representation: grids, Gaussian initial data, weighted norms,
the free-transport change of frame, and multilinear interpolation.

All solver state lives in the transported ("sharp") frame, where the kinetic
equation has no advection term; the physical-frame field is reconstructed only
for output.  Fields are sampled on a uniform tensor grid covering
``[-x_extent, x_extent]^dim x [-v_extent, v_extent]^dim`` and extended by zero
outside that box, which the Gaussian near-vacuum decay justifies up to a
reportable truncation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class MaxwellianParams:
    """Rates of the Gaussian envelope e^{-alpha|x|^2 - beta|v|^2} and the dimension."""

    alpha: float
    beta: float
    dim: int

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta}")
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform tensor grid on [-x_extent, x_extent]^dim x [-v_extent, v_extent]^dim."""

    x_extent: float
    v_extent: float
    nx: int
    nv: int
    dim: int

    def __post_init__(self):
        if self.x_extent <= 0 or self.v_extent <= 0:
            raise ValueError("grid extents must be positive")
        if self.nx < 2 or self.nv < 2:
            raise ValueError("need at least 2 points per axis")
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")

    @property
    def dx(self) -> float:
        return 2.0 * self.x_extent / (self.nx - 1)

    @property
    def dv(self) -> float:
        return 2.0 * self.v_extent / (self.nv - 1)

    @property
    def field_shape(self) -> tuple[int, ...]:
        return (self.nx,) * self.dim + (self.nv,) * self.dim

    @property
    def n_x_nodes(self) -> int:
        return self.nx**self.dim

    @property
    def n_v_nodes(self) -> int:
        return self.nv**self.dim

    def x_axis(self) -> np.ndarray:
        return _axis(self.x_extent, self.nx)

    def v_axis(self) -> np.ndarray:
        return _axis(self.v_extent, self.nv)

    def x_nodes(self) -> np.ndarray:
        """All spatial nodes, shape (nx^dim, dim), row-major axis order."""
        return _node_table(self.x_extent, self.nx, self.dim)

    def v_nodes(self) -> np.ndarray:
        """All velocity nodes, shape (nv^dim, dim)."""
        return _node_table(self.v_extent, self.nv, self.dim)

    def truncation_errors(self, params: MaxwellianParams) -> tuple[float, float]:
        """Envelope mass left outside the box: (e^{-alpha Lx^2}, e^{-beta Lv^2})."""
        return (
            math.exp(-params.alpha * self.x_extent**2),
            math.exp(-params.beta * self.v_extent**2),
        )

    def check_truncation(self, params: MaxwellianParams, tol: float) -> None:
        ex, ev = self.truncation_errors(params)
        if ex > tol or ev > tol:
            raise ValueError(
                f"grid box too small for truncation tolerance {tol:g}: "
                f"exp(-alpha*Lx^2)={ex:.3e}, exp(-beta*Lv^2)={ev:.3e}"
            )


@lru_cache(maxsize=64)
def _axis(extent: float, n: int) -> np.ndarray:
    ax = np.linspace(-extent, extent, n)
    ax.flags.writeable = False
    return ax


@lru_cache(maxsize=64)
def _node_table(extent: float, n: int, dim: int) -> np.ndarray:
    ax = _axis(extent, n)
    grids = np.meshgrid(*([ax] * dim), indexing="ij")
    table = np.stack([g.ravel() for g in grids], axis=-1)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=64)
def _weight_tensor(grid: PhaseGrid, alpha: float, beta: float) -> np.ndarray:
    """e^{alpha|x|^2 + beta|v|^2} sampled on the grid, shape grid.field_shape."""
    xsq = (_node_table(grid.x_extent, grid.nx, grid.dim) ** 2).sum(axis=1)
    vsq = (_node_table(grid.v_extent, grid.nv, grid.dim) ** 2).sum(axis=1)
    w = np.exp(alpha * xsq[:, None] + beta * vsq[None, :])
    w = w.reshape(grid.field_shape)
    w.flags.writeable = False
    return w


@lru_cache(maxsize=64)
def envelope_tensor(grid: PhaseGrid, alpha: float, beta: float) -> np.ndarray:
    """e^{-alpha|x|^2 - beta|v|^2} sampled on the grid."""
    xsq = (_node_table(grid.x_extent, grid.nx, grid.dim) ** 2).sum(axis=1)
    vsq = (_node_table(grid.v_extent, grid.nv, grid.dim) ** 2).sum(axis=1)
    w = np.exp(-alpha * xsq[:, None] - beta * vsq[None, :]).reshape(grid.field_shape)
    w.flags.writeable = False
    return w


@dataclass
class PhaseField:
    """A function of (x, v) sampled on a PhaseGrid at one time instant."""

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != self.grid.field_shape:
            raise ValueError(
                f"values shape {self.values.shape} != grid shape {self.grid.field_shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")

    @classmethod
    def zeros(cls, grid: PhaseGrid) -> "PhaseField":
        return cls(grid, np.zeros(grid.field_shape))

    def copy(self) -> "PhaseField":
        return PhaseField(self.grid, self.values.copy())


@dataclass
class TimeSlab:
    """A trajectory sampled on a uniform time grid: slice k holds f^#(k*dt)."""

    grid: PhaseGrid
    dt: float
    values: np.ndarray  # shape (nt+1,) + grid.field_shape

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.values.ndim != 1 + 2 * self.grid.dim or self.values.shape[1:] != self.grid.field_shape:
            raise ValueError("slab values incompatible with grid")
        if self.values.shape[0] < 1:
            raise ValueError("slab needs at least one slice")

    @property
    def nt(self) -> int:
        return self.values.shape[0] - 1

    @property
    def horizon(self) -> float:
        return self.nt * self.dt

    def time(self, k: int) -> float:
        return k * self.dt

    def field(self, k: int) -> PhaseField:
        return PhaseField(self.grid, self.values[k])

    @classmethod
    def zeros(cls, grid: PhaseGrid, dt: float, nt: int) -> "TimeSlab":
        return cls(grid, dt, np.zeros((nt + 1,) + grid.field_shape))

    @classmethod
    def constant(cls, f: PhaseField, dt: float, nt: int) -> "TimeSlab":
        return cls(f.grid, dt, np.broadcast_to(f.values, (nt + 1,) + f.grid.field_shape).copy())

    def copy(self) -> "TimeSlab":
        return TimeSlab(self.grid, self.dt, self.values.copy())


@dataclass(frozen=True)
class GaussianTerm:
    """One term a * e^{-x_rate|x-x0|^2 - v_rate|v-v0|^2} of an initial datum."""

    amplitude: float
    x_center: tuple[float, ...]
    v_center: tuple[float, ...]
    x_rate: float
    v_rate: float


@dataclass(frozen=True)
class InitialDataSpec:
    """Closed-form Gaussian-sum initial data; rates must dominate the envelope's."""

    terms: tuple[GaussianTerm, ...]

    @classmethod
    def single(cls, amplitude, x_center, v_center, x_rate, v_rate) -> "InitialDataSpec":
        return cls((GaussianTerm(amplitude, tuple(x_center), tuple(v_center), x_rate, v_rate),))

    @classmethod
    def vacuum(cls) -> "InitialDataSpec":
        return cls(())

    def validate(self, params: MaxwellianParams) -> list[str]:
        """Return the list of violated invariants (empty when admissible as data)."""
        problems = []
        for i, term in enumerate(self.terms):
            if len(term.x_center) != params.dim or len(term.v_center) != params.dim:
                problems.append(f"term {i}: center dimension != {params.dim}")
                continue
            if term.x_rate < params.alpha or term.v_rate < params.beta:
                problems.append(
                    f"term {i}: rates ({term.x_rate}, {term.v_rate}) must dominate "
                    f"(alpha, beta) = ({params.alpha}, {params.beta})"
                )
            # equality of rates with an off-center term makes the weighted sup infinite
            if term.x_rate == params.alpha and any(c != 0.0 for c in term.x_center):
                problems.append(f"term {i}: x_rate == alpha requires x_center == 0")
            if term.v_rate == params.beta and any(c != 0.0 for c in term.v_center):
                problems.append(f"term {i}: v_rate == beta requires v_center == 0")
            if not math.isfinite(term.amplitude):
                problems.append(f"term {i}: non-finite amplitude")
        return problems

    def is_nonnegative(self) -> bool:
        return all(t.amplitude >= 0 for t in self.terms)

    def norm_bound(self, params: MaxwellianParams) -> float:
        """Triangle-inequality bound on the continuum weighted sup-norm.

        For a single term the bound is exact: the weighted envelope
        |a| e^{(alpha|x|^2 - ax|x-x0|^2) + (beta|v|^2 - av|v-v0|^2)} peaks at
        x* = ax*x0/(ax-alpha), giving the factor e^{ax*alpha|x0|^2/(ax-alpha)}.
        """
        problems = self.validate(params)
        if problems:
            raise ValueError("; ".join(problems))
        total = 0.0
        for t in self.terms:
            xc2 = sum(c * c for c in t.x_center)
            vc2 = sum(c * c for c in t.v_center)
            gx = 0.0 if xc2 == 0.0 else t.x_rate * params.alpha * xc2 / (t.x_rate - params.alpha)
            gv = 0.0 if vc2 == 0.0 else t.v_rate * params.beta * vc2 / (t.v_rate - params.beta)
            total += abs(t.amplitude) * math.exp(gx + gv)
        return total


def eval_initial(spec: InitialDataSpec, x, v) -> float:
    """Evaluate the Gaussian sum exactly at one point (no interpolation)."""
    x = np.asarray(x, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    total = 0.0
    for t in spec.terms:
        dx2 = float(((x - np.asarray(t.x_center)) ** 2).sum())
        dv2 = float(((v - np.asarray(t.v_center)) ** 2).sum())
        total += t.amplitude * math.exp(-t.x_rate * dx2 - t.v_rate * dv2)
    return total


def sample_initial(spec: InitialDataSpec, grid: PhaseGrid) -> PhaseField:
    """Sample the Gaussian sum on every grid node."""
    xn = grid.x_nodes()
    vn = grid.v_nodes()
    out = np.zeros((grid.n_x_nodes, grid.n_v_nodes))
    for t in spec.terms:
        ex = np.exp(-t.x_rate * ((xn - np.asarray(t.x_center)) ** 2).sum(axis=1))
        ev = np.exp(-t.v_rate * ((vn - np.asarray(t.v_center)) ** 2).sum(axis=1))
        out += t.amplitude * ex[:, None] * ev[None, :]
    return PhaseField(grid, out.reshape(grid.field_shape))


def maxwellian_norm(f: PhaseField, params: MaxwellianParams) -> float:
    """Discrete weighted sup-norm: max over nodes of |f| e^{alpha|x|^2 + beta|v|^2}.

    This is the grid maximum, hence a lower bound of the continuum sup.
    """
    if params.dim != f.grid.dim:
        raise ValueError("params/grid dimension mismatch")
    w = _weight_tensor(f.grid, params.alpha, params.beta)
    return float(np.max(np.abs(f.values) * w))


def slab_norm(s: TimeSlab, params: MaxwellianParams) -> float:
    """Trajectory norm: max of the weighted sup-norm over all time slices."""
    w = _weight_tensor(s.grid, params.alpha, params.beta)
    return float(np.max(np.abs(s.values) * w))


def slice_norms(s: TimeSlab, params: MaxwellianParams) -> np.ndarray:
    """Weighted sup-norm of every slice, shape (nt+1,)."""
    w = _weight_tensor(s.grid, params.alpha, params.beta)
    return np.max(np.abs(s.values) * w, axis=tuple(range(1, s.values.ndim)))


def continuity_diagnostic(s: TimeSlab, params: MaxwellianParams) -> float:
    """Max slice-to-slice change of the weighted norm (continuity-in-time proxy)."""
    norms = slice_norms(s, params)
    if norms.size < 2:
        return 0.0
    return float(np.max(np.abs(np.diff(norms))))


def interpolate(f: PhaseField, x, v):
    """Multilinear interpolation of a sampled field at (x, v) query points.

    Parameters
    ----------
    f : PhaseField
    x, v : array_like, shape (..., dim)
        Query coordinates.  Points outside the grid box evaluate to 0
        (vacuum extension); points inside use the 2*dim-linear blend of the
        containing cell, which reproduces node values and affine functions.

    Returns
    -------
    float or ndarray matching the broadcast batch shape.
    """
    grid = f.grid
    d = grid.dim
    x = np.asarray(x, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    scalar = x.ndim == 1 and v.ndim == 1
    x, v = np.broadcast_arrays(np.atleast_2d(x), np.atleast_2d(v))
    batch = x.shape[:-1]
    if x.shape[-1] != d or v.shape[-1] != d:
        raise ValueError(f"query must have {d} components per axis block")

    tx = (x.reshape(-1, d) + grid.x_extent) / grid.dx
    tv = (v.reshape(-1, d) + grid.v_extent) / grid.dv
    t = np.concatenate([tx, tv], axis=1)  # (m, 2d) cell coordinates
    sizes = np.array([grid.nx] * d + [grid.nv] * d)

    inside = np.all((t >= 0.0) & (t <= sizes - 1), axis=1)
    base = np.clip(np.floor(t).astype(np.int64), 0, sizes - 2)
    theta = t - base

    flat = f.values.ravel()
    strides = np.ones(2 * d, dtype=np.int64)
    for a in range(2 * d - 2, -1, -1):
        strides[a] = strides[a + 1] * sizes[a + 1]

    out = np.zeros(t.shape[0])
    for corner in range(1 << (2 * d)):
        w = np.ones(t.shape[0])
        idx = np.zeros(t.shape[0], dtype=np.int64)
        for a in range(2 * d):
            bit = (corner >> a) & 1
            w = w * (theta[:, a] if bit else 1.0 - theta[:, a])
            idx += (base[:, a] + bit) * strides[a]
        out += w * flat[idx]
    out[~inside] = 0.0
    if scalar:
        return float(out[0])
    return out.reshape(batch)


def sharp_pushforward(s: TimeSlab, k: int) -> PhaseField:
    """Physical-frame field at slice k: f(t_k, x, v) = f^#(t_k, x - t_k v, v).

    Evaluated by interpolation; intended for output and diagnostics only.
    """
    if not 0 <= k <= s.nt:
        raise ValueError(f"slice index {k} out of range [0, {s.nt}]")
    t = s.time(k)
    if t == 0.0:
        return s.field(0).copy()
    grid = s.grid
    xq = grid.x_nodes()[:, None, :] - t * grid.v_nodes()[None, :, :]
    vq = np.broadcast_to(grid.v_nodes()[None, :, :], xq.shape)
    vals = interpolate(s.field(k), xq, vq)
    return PhaseField(grid, vals.reshape(grid.field_shape))


def envelope_check(s: TimeSlab, R: float, params: MaxwellianParams) -> float:
    """Worst-case excess of |f^#| e^{alpha|x|^2+beta|v|^2} over 2R on the grid.

    A non-positive return certifies the Maxwellian envelope bound |f^#| <=
    2R e^{-alpha|x|^2-beta|v|^2} at every node of every slice.
    """
    w = _weight_tensor(s.grid, params.alpha, params.beta)
    return float(np.max(np.abs(s.values) * w) - 2.0 * R)
