# -*- coding: utf-8 -*-
"""
Discrete fields on disks and balls

Complex fields live on a polar grid of the disk D_R (rings r_i = i·h, uniform
angles, plus a single origin node) and carry finite-difference Wirtinger
derivatives, a polar Laplacian and a cell-area quadrature. Real fields in n
dimensions live on a uniform Cartesian lattice over a ball with the nodes outside
the ball masked, and carry the (2n+1)-point Laplacian. All stencils are exact on
polynomials of degree two.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache, singledispatch
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
import pandas as pd
from scipy import ndimage

try:
    from src.params_constants import ParameterRegimeError
except ImportError:
    from .params_constants import ParameterRegimeError

logger = logging.getLogger(__name__)

MIN_RADIAL_NODES = 8
MIN_ANGULAR_NODES = 16
MAX_LATTICE_DIMENSION = 5

CSV_FLOAT_FORMAT = "%.12g"


class GridResolutionError(ParameterRegimeError):
    """The grid cannot resolve the requested operation."""


@dataclass(frozen=True)
class Node:
    """Grid node: flat index (origin first on polar grids) and its coordinates."""

    index: int
    position: tuple

    def as_dict(self) -> dict:
        return {"index": int(self.index), "position": [float(x) for x in self.position]}


@dataclass(frozen=True)
class PolarGrid:
    """
    Polar lattice of the disk D_radius.

    Ring nodes sit at r_i = i·h (i = 1..n_r, h = radius/n_r) and θ_j = 2πj/n_t.
    The origin is one extra node, so there are n_r·n_t ring nodes plus the
    origin. Node i of ring cells owns the annulus [r_i − h/2, r_i + h/2]
    (clipped at the boundary) split evenly among the n_t angles; the origin
    owns the disk of radius h/2.
    """

    radius: float = 1.0
    n_r: int = 128
    n_t: int = 128

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise GridResolutionError("radius > 0", radius=self.radius)
        if self.n_r < MIN_RADIAL_NODES:
            raise GridResolutionError(f"n_r >= {MIN_RADIAL_NODES}", n_r=self.n_r)
        if self.n_t < MIN_ANGULAR_NODES:
            raise GridResolutionError(f"n_t >= {MIN_ANGULAR_NODES}", n_t=self.n_t)

    @property
    def h(self) -> float:
        return self.radius / self.n_r

    @property
    def node_count(self) -> int:
        return self.n_r * self.n_t + 1

    @cached_property
    def radii(self) -> np.ndarray:
        return self.h * np.arange(1, self.n_r + 1)

    @cached_property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_t) / self.n_t

    @cached_property
    def points(self) -> np.ndarray:
        """Complex coordinates of the ring nodes, shape (n_r, n_t)."""
        return self.radii[:, None] * np.exp(1j * self.angles)[None, :]

    def points_flat(self) -> np.ndarray:
        return np.concatenate([[0j], self.points.ravel()])

    def cell_areas(self, region: Optional[float] = None) -> tuple[np.ndarray, float]:
        """Per-node cell areas of each ring and of the origin, clipped to D_region."""
        region = self.radius if region is None else region
        if region > self.radius * (1.0 + 1e-12) or region < 0:
            raise GridResolutionError(
                "0 <= region <= grid radius", region=region, radius=self.radius
            )
        h = self.h
        inner = np.clip(self.radii - h / 2.0, 0.0, region)
        outer = np.clip(np.minimum(self.radii + h / 2.0, self.radius), 0.0, region)
        rings = np.pi * (outer**2 - inner**2) / self.n_t
        origin = np.pi * min(h / 2.0, region) ** 2
        return rings, origin

    def interior_mask(self) -> np.ndarray:
        """Ring nodes off the outermost ring (the origin is always interior)."""
        mask = np.ones((self.n_r, self.n_t), dtype=bool)
        mask[-1] = False
        return mask


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Values of a (complex or real) function at the nodes of a PolarGrid."""

    grid: PolarGrid
    values: np.ndarray
    center: Union[complex, float]

    def __post_init__(self) -> None:
        values = np.asarray(self.values)
        assert values.shape == (self.grid.n_r, self.grid.n_t), (
            f"Field shape {values.shape} does not match the grid "
            + f"({self.grid.n_r}, {self.grid.n_t})"
        )
        center = np.asarray(self.center).item()
        if not (np.all(np.isfinite(values)) and np.isfinite(center)):
            raise ValueError("Field values must be finite at every node")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "center", center)

    @classmethod
    def sample(cls, grid: PolarGrid, func: Callable) -> "ComplexField":
        """Evaluate func (vectorized over complex z) at every node."""
        points = grid.points
        values = np.broadcast_to(np.asarray(func(points)), points.shape).copy()
        center = np.broadcast_to(np.asarray(func(np.zeros(1, dtype=complex))), (1,))[0]
        return cls(grid, values, center)

    @classmethod
    def zeros(cls, grid: PolarGrid) -> "ComplexField":
        return cls(grid, np.zeros((grid.n_r, grid.n_t), dtype=complex), 0j)

    def with_values(self, values: np.ndarray, center) -> "ComplexField":
        return ComplexField(self.grid, values, center)

    def flat(self) -> np.ndarray:
        """Node values with the origin first, then rings in order."""
        return np.concatenate([[self.center], self.values.ravel()])

    def map(self, func: Callable) -> "ComplexField":
        """Apply a pointwise function to every node."""
        return self.with_values(func(self.values), func(np.asarray(self.center)))

    def abs(self) -> "ComplexField":
        return self.map(np.abs)

    @property
    def real(self) -> "ComplexField":
        return self.map(np.real)

    @property
    def imag(self) -> "ComplexField":
        return self.map(np.imag)

    def _combine(self, other, op) -> "ComplexField":
        if isinstance(other, ComplexField):
            assert other.grid == self.grid, "Fields live on different grids"
            return self.with_values(op(self.values, other.values), op(self.center, other.center))
        return self.with_values(op(self.values, other), op(self.center, other))

    def __add__(self, other) -> "ComplexField":
        return self._combine(other, np.add)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexField":
        return self._combine(other, np.subtract)

    def __mul__(self, other) -> "ComplexField":
        return self._combine(other, np.multiply)

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexField":
        return self.map(np.negative)

    def to_frame(self) -> pd.DataFrame:
        points = self.grid.points_flat()
        values = self.flat().astype(complex)
        return pd.DataFrame(
            {
                "x": points.real,
                "y": points.imag,
                "re": values.real,
                "im": values.imag,
                "abs": np.abs(values),
            }
        )

    def to_csv(self, path: Union[str, Path]) -> None:
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)


@dataclass(frozen=True, eq=False)
class ScalarFieldND:
    """
    Real values on a uniform Cartesian lattice over the ball of `radius` around `center`.

    Attributes:
        values: Array of shape (m,)*n.
        mask: Nodes inside the closed ball (or, for derived fields, nodes with a
            full stencil).
        spacing: Lattice step h.
        center: Center of the ball, shape (n,).
        radius: Radius of the ball.
    """

    values: np.ndarray
    mask: np.ndarray
    spacing: float
    center: np.ndarray
    radius: float = 1.0

    @classmethod
    def sample(
        cls,
        func: Callable,
        n: int,
        points_per_axis: int,
        radius: float = 1.0,
        center=None,
    ) -> "ScalarFieldND":
        """
        Sample func on the lattice; func receives coordinates of shape (n, m, ..., m).

        Warning:
            Lattices are limited to n <= 5 and must resolve the ball (n·h <= radius/2).
        """
        if not 1 <= n <= MAX_LATTICE_DIMENSION:
            raise GridResolutionError(f"1 <= n <= {MAX_LATTICE_DIMENSION}", n=n)
        if points_per_axis < 5:
            raise GridResolutionError("points_per_axis >= 5", points_per_axis=points_per_axis)
        spacing = 2.0 * radius / (points_per_axis - 1)
        if n * spacing > 0.5 * radius:
            raise GridResolutionError(
                "n * h <= radius / 2", n=n, h=spacing, radius=radius
            )
        center = np.zeros(n) if center is None else np.atleast_1d(np.asarray(center, float))
        axes = [c + np.linspace(-radius, radius, points_per_axis) for c in center]
        coordinates = np.stack(np.meshgrid(*axes, indexing="ij"))
        distance = np.sqrt(((coordinates - center.reshape((n,) + (1,) * n)) ** 2).sum(axis=0))
        mask = distance <= radius * (1.0 + 1e-12)
        values = np.where(mask, np.asarray(func(coordinates), dtype=float), 0.0)
        return cls(values, mask, spacing, center, radius)

    @property
    def dimension(self) -> int:
        return self.values.ndim

    @cached_property
    def coordinates(self) -> np.ndarray:
        m = self.values.shape[0]
        axes = [c + np.linspace(-self.radius, self.radius, m) for c in self.center]
        return np.stack(np.meshgrid(*axes, indexing="ij"))

    def distance_from_center(self) -> np.ndarray:
        shape = (self.dimension,) + (1,) * self.dimension
        return np.sqrt(((self.coordinates - self.center.reshape(shape)) ** 2).sum(axis=0))

    def with_values(self, values: np.ndarray, mask: Optional[np.ndarray] = None) -> "ScalarFieldND":
        mask = self.mask if mask is None else mask
        return ScalarFieldND(np.where(mask, values, 0.0), mask, self.spacing, self.center, self.radius)

    def value_at_center(self) -> float:
        """
        Value at the center of the ball.

        With an odd points_per_axis the center is a node; otherwise it is the
        multilinear interpolation of the 2^n surrounding nodes.
        """
        middle = (self.values.shape[0] - 1) / 2.0
        position = np.full((self.dimension, 1), middle)
        return float(ndimage.map_coordinates(self.values, position, order=1)[0])

    def node_at(self, flat_index: int) -> Node:
        index = np.unravel_index(flat_index, self.values.shape)
        position = tuple(float(self.coordinates[(k,) + index]) for k in range(self.dimension))
        return Node(int(flat_index), position)

    def to_frame(self) -> pd.DataFrame:
        columns = {
            f"x{k + 1}": self.coordinates[k][self.mask] for k in range(self.dimension)
        }
        columns["value"] = self.values[self.mask]
        return pd.DataFrame(columns)

    def to_csv(self, path: Union[str, Path]) -> None:
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)


# Angular stencils ##########################################################


@lru_cache(maxsize=32)
def _angular_weights(n_t: int) -> tuple[np.ndarray, np.ndarray]:
    """5-point periodic weights exact on the trigonometric modes |k| <= 2."""
    step = 2.0 * np.pi / n_t
    first = np.linalg.solve(
        np.array(
            [
                [2.0 * np.sin(step), 2.0 * np.sin(2.0 * step)],
                [2.0 * np.sin(2.0 * step), 2.0 * np.sin(4.0 * step)],
            ]
        ),
        np.array([1.0, 2.0]),
    )
    second = np.linalg.solve(
        np.array(
            [
                [1.0, 2.0, 2.0],
                [1.0, 2.0 * np.cos(step), 2.0 * np.cos(2.0 * step)],
                [1.0, 2.0 * np.cos(2.0 * step), 2.0 * np.cos(4.0 * step)],
            ]
        ),
        np.array([0.0, -1.0, -4.0]),
    )
    return first, second


def _angular_first(values: np.ndarray) -> np.ndarray:
    (w1, w2), _ = _angular_weights(values.shape[1])
    return w1 * (np.roll(values, -1, axis=1) - np.roll(values, 1, axis=1)) + w2 * (
        np.roll(values, -2, axis=1) - np.roll(values, 2, axis=1)
    )


def _angular_second(values: np.ndarray) -> np.ndarray:
    _, (v0, v1, v2) = _angular_weights(values.shape[1])
    return (
        v0 * values
        + v1 * (np.roll(values, -1, axis=1) + np.roll(values, 1, axis=1))
        + v2 * (np.roll(values, -2, axis=1) + np.roll(values, 2, axis=1))
    )


# Radial stencils ###########################################################


def _with_origin_row(f: ComplexField) -> np.ndarray:
    origin = np.full((1, f.grid.n_t), f.center, dtype=np.result_type(f.values, f.center))
    return np.vstack([origin, f.values])


def _radial_first(f: ComplexField) -> np.ndarray:
    e, h = _with_origin_row(f), f.grid.h
    d = np.empty_like(f.values)
    d[:-1] = (e[2:] - e[:-2]) / (2.0 * h)
    d[-1] = (3.0 * e[-1] - 4.0 * e[-2] + e[-3]) / (2.0 * h)
    return d


def _radial_second(f: ComplexField) -> np.ndarray:
    e, h = _with_origin_row(f), f.grid.h
    d = np.empty_like(f.values)
    d[:-1] = (e[2:] - 2.0 * e[1:-1] + e[:-2]) / h**2
    d[-1] = (2.0 * e[-1] - 5.0 * e[-2] + 4.0 * e[-3] - e[-4]) / h**2
    return d


# Derivatives ###############################################################


def _cartesian_partials(f: ComplexField) -> tuple[ComplexField, ComplexField]:
    grid = f.grid
    f_r = _radial_first(f)
    f_t = _angular_first(f.values)
    r = grid.radii[:, None]
    cos, sin = np.cos(grid.angles)[None, :], np.sin(grid.angles)[None, :]
    px = cos * f_r - sin * f_t / r
    py = sin * f_r + cos * f_t / r

    # Origin: first Fourier mode of the innermost ring
    scale = 2.0 / (grid.n_t * grid.h)
    ring = f.values[0]
    px0 = scale * np.sum(ring * cos[0])
    py0 = scale * np.sum(ring * sin[0])
    return f.with_values(px, px0), f.with_values(py, py0)


def partial_x(f: ComplexField) -> ComplexField:
    return _cartesian_partials(f)[0]


def partial_y(f: ComplexField) -> ComplexField:
    return _cartesian_partials(f)[1]


def wirtinger_dbar(f: ComplexField) -> ComplexField:
    """∂f/∂z̄ = ½(∂x + i∂y)f."""
    px, py = _cartesian_partials(f)
    return 0.5 * (px + 1j * py)


def wirtinger_dz(f: ComplexField) -> ComplexField:
    """∂f/∂z = ½(∂x − i∂y)f."""
    px, py = _cartesian_partials(f)
    return 0.5 * (px - 1j * py)


def _laplacian_polar(f: ComplexField) -> ComplexField:
    grid = f.grid
    r = grid.radii[:, None]
    values = _radial_second(f) + _radial_first(f) / r + _angular_second(f.values) / r**2
    center = 4.0 * (np.mean(f.values[0]) - f.center) / grid.h**2
    return f.with_values(values, center)


def _neighbour(padded: np.ndarray, axis: int, shift: int) -> np.ndarray:
    index = [slice(1, -1)] * padded.ndim
    index[axis] = slice(1 + shift, padded.shape[axis] - 1 + shift)
    return padded[tuple(index)]


def _laplacian_lattice(u: ScalarFieldND) -> ScalarFieldND:
    padded_mask = np.pad(u.mask, 1, constant_values=False)
    padded = np.pad(u.values, 1)
    total = -2.0 * u.dimension * u.values
    interior = u.mask.copy()
    for axis in range(u.dimension):
        for shift in (-1, 1):
            interior &= _neighbour(padded_mask, axis, shift)
            total = total + _neighbour(padded, axis, shift)
    return u.with_values(total / u.spacing**2, interior)


@singledispatch
def laplacian(u):
    """Discrete Laplacian; interior nodes only for lattices."""
    raise TypeError(f"Unsupported field type {type(u).__name__}")


laplacian.register(ComplexField, _laplacian_polar)
laplacian.register(ScalarFieldND, _laplacian_lattice)


def gradient_norm_sq(u: ScalarFieldND) -> ScalarFieldND:
    """|∇u|² by central differences on nodes with a full stencil."""
    padded_mask = np.pad(u.mask, 1, constant_values=False)
    padded = np.pad(u.values, 1)
    total = np.zeros_like(u.values)
    interior = u.mask.copy()
    for axis in range(u.dimension):
        interior &= _neighbour(padded_mask, axis, 1) & _neighbour(padded_mask, axis, -1)
        derivative = (_neighbour(padded, axis, 1) - _neighbour(padded, axis, -1)) / (
            2.0 * u.spacing
        )
        total = total + derivative**2
    return u.with_values(total, interior)


def stencil_support(
    grid: PolarGrid, mask: np.ndarray, center_ok: bool = True, width: int = 2
) -> tuple[np.ndarray, bool]:
    """Ring nodes (and the origin) whose whole stencil neighbourhood lies in the mask."""
    extended = np.vstack([np.full((1, grid.n_t), center_ok), mask])
    padded = np.pad(extended, ((0, 0), (width, width)), mode="wrap")
    structure = np.zeros((2 * width + 1, 2 * width + 1), dtype=bool)
    structure[width, :] = True
    structure[:, width] = True
    eroded = ndimage.binary_erosion(padded, structure=structure, border_value=1)
    rings = eroded[1:, width:-width]
    center = bool(center_ok and mask[:width].all())
    return rings, center


def lattice_support(mask: np.ndarray, width: int) -> np.ndarray:
    """Lattice nodes at least `width` nodes away from the complement of the mask."""
    structure = ndimage.generate_binary_structure(mask.ndim, 1)
    return ndimage.binary_erosion(mask, structure=structure, iterations=width, border_value=0)


# Functionals ###############################################################


@singledispatch
def sup_abs(f) -> tuple[float, Node]:
    """Maximum of |value| over the nodes, with the first node attaining it."""
    raise TypeError(f"Unsupported field type {type(f).__name__}")


@sup_abs.register
def _(f: ComplexField) -> tuple[float, Node]:
    magnitudes = np.abs(f.flat())
    index = int(np.argmax(magnitudes))
    point = f.grid.points_flat()[index]
    return float(magnitudes[index]), Node(index, (float(point.real), float(point.imag)))


@sup_abs.register
def _(f: ScalarFieldND) -> tuple[float, Node]:
    indices = np.flatnonzero(f.mask.ravel())
    magnitudes = np.abs(f.values.ravel()[indices])
    k = int(np.argmax(magnitudes))
    return float(magnitudes[k]), f.node_at(int(indices[k]))


@singledispatch
def integrate(f, region: Optional[float] = None):
    """Cell-area weighted midpoint quadrature over the sub-disk D_region."""
    raise TypeError(f"Unsupported field type {type(f).__name__}")


@integrate.register
def _(f: ComplexField, region: Optional[float] = None):
    rings, origin = f.grid.cell_areas(region)
    return np.sum(f.values * rings[:, None]) + f.center * origin


@integrate.register
def _(f: ScalarFieldND, region: Optional[float] = None):
    region = f.radius if region is None else region
    if region > f.radius * (1.0 + 1e-12) or region < 0:
        raise GridResolutionError("0 <= region <= grid radius", region=region, radius=f.radius)
    inside = f.mask & (f.distance_from_center() < region)
    return float(np.sum(f.values[inside]) * f.spacing**f.dimension)


def observed_order(coarse_error: float, fine_error: float, refinement: float = 2.0) -> float:
    """Convergence order log(e_coarse / e_fine) / log(refinement)."""
    return math.log(coarse_error / fine_error) / math.log(refinement)
