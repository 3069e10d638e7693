"""Dense quaternionic matrices and their faithful complex representation.

An n x n quaternionic matrix ``M = M1 + M2*j`` (entrywise complex pair) is
represented faithfully by the 2n x 2n complex matrix::

    chi(M) = [[ M1,        M2       ],
              [-conj(M2),  conj(M1) ]]

``chi`` is an algebra homomorphism that turns quaternionic spectral problems
into complex ones: the matrix exponential and all eigenvalue work happen in
the embedding, while products, adjoints and traces are computed directly in
quaternion components so the two routes stay independently verifiable.

Vectors of a right quaternionic Hilbert space are plain sequences of
:class:`~quatstat.quaternion.Quaternion`; column vectors take scalars on the
right, so the right-eigenvalue relation reads ``M v = v * lam``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .errors import ConstraintViolation, DimensionMismatch, NotNormal, NotSymplectic
from .quaternion import Quaternion, hamilton_product, qconj


class QMatrix:
    """Square quaternionic matrix over the right module convention.

    Stores a real array of shape ``(n, n, 4)`` holding the four components
    of every entry. Instances are treated as immutable values; all
    operations return new matrices.
    """

    __slots__ = ("comp",)

    def __init__(self, comp: np.ndarray):
        comp = np.asarray(comp, dtype=float)
        if comp.ndim != 3 or comp.shape[0] != comp.shape[1] or comp.shape[2] != 4:
            raise DimensionMismatch(f"expected shape (n, n, 4), got {comp.shape}")
        if not np.all(np.isfinite(comp)):
            raise ValueError("matrix entries must be finite")
        self.comp = comp
        self.comp.setflags(write=False)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, n: int) -> "QMatrix":
        return cls(np.zeros((n, n, 4)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        comp = np.zeros((n, n, 4))
        comp[np.arange(n), np.arange(n), 0] = 1.0
        return cls(comp)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Quaternion]]) -> "QMatrix":
        n = len(rows)
        comp = np.zeros((n, n, 4))
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DimensionMismatch("matrix rows must all have length n")
            for j, q in enumerate(row):
                comp[i, j] = q.as_array()
        return cls(comp)

    @classmethod
    def diag(cls, entries: Sequence[Quaternion]) -> "QMatrix":
        n = len(entries)
        comp = np.zeros((n, n, 4))
        for i, q in enumerate(entries):
            comp[i, i] = q.as_array()
        return cls(comp)

    @classmethod
    def from_complex(cls, z1: np.ndarray, z2: np.ndarray | None = None) -> "QMatrix":
        """Build ``M = Z1 + Z2*j`` from complex component matrices."""
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.zeros_like(z1) if z2 is None else np.asarray(z2, dtype=complex)
        if z1.shape != z2.shape:
            raise DimensionMismatch("component matrices must share a shape")
        comp = np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1)
        return cls(comp)

    @classmethod
    def from_json_dict(cls, data: dict) -> "QMatrix":
        """Parse the ``{"n": int, "entries": [[[q0,q1,q2,q3], ...], ...]}`` schema."""
        try:
            n = int(data["n"])
            entries = data["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix object: {exc}") from exc
        if len(entries) != n:
            raise ValueError(f"expected {n} rows, got {len(entries)}")
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise ValueError(f"ragged row {i}: expected {n} entries, got {len(row)}")
            rows.append([Quaternion.from_list(cell) for cell in row])
        return cls.from_rows(rows)

    # -- views -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.comp.shape[0]

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion(*self.comp[i, j])

    def complex_pair(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(M1, M2)`` with ``M = M1 + M2*j``; exact round trip."""
        z1 = self.comp[..., 0] + 1j * self.comp[..., 1]
        z2 = self.comp[..., 2] + 1j * self.comp[..., 3]
        return z1, z2

    def to_json_dict(self) -> dict:
        return {"n": self.n, "entries": self.comp.tolist()}

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_dim(other)
        return QMatrix(self.comp + other.comp)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_dim(other)
        return QMatrix(self.comp - other.comp)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.comp)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float)):
            return QMatrix(self.comp * scalar)
        return NotImplemented

    __rmul__ = __mul__

    def scale_left(self, q: Quaternion) -> "QMatrix":
        """Entrywise left multiplication ``q * M``."""
        return QMatrix(hamilton_product(q.as_array(), self.comp))

    def scale_right(self, q: Quaternion) -> "QMatrix":
        """Entrywise right multiplication ``M * q``."""
        return QMatrix(hamilton_product(self.comp, q.as_array()))

    def _check_same_dim(self, other: "QMatrix"):
        if self.n != other.n:
            raise DimensionMismatch(f"dimension mismatch: {self.n} vs {other.n}")

    def __repr__(self):
        return f"QMatrix(n={self.n})"


@dataclass(frozen=True)
class ComplexEmbedding:
    """The 2n x 2n complex representation of a quaternionic matrix."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"expected shape ({self.dim}, {self.dim}), got {entries.shape}"
            )
        object.__setattr__(self, "entries", entries)


def _embed(m: QMatrix) -> np.ndarray:
    z1, z2 = m.complex_pair()
    return np.block([[z1, z2], [-z2.conj(), z1.conj()]])


def embed(m: QMatrix) -> ComplexEmbedding:
    """Faithful complex representation; an algebra homomorphism."""
    return ComplexEmbedding(2 * m.n, _embed(m))


def _unembed_array(x: np.ndarray, tol: float = 1e-10) -> QMatrix:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] % 2:
        raise DimensionMismatch(f"expected even square matrix, got {x.shape}")
    n = x.shape[0] // 2
    a, b = x[:n, :n], x[:n, n:]
    c, d = x[n:, :n], x[n:, n:]
    scale = max(1.0, np.abs(x).max())
    residual = max(np.abs(c + b.conj()).max(), np.abs(d - a.conj()).max())
    if residual > tol * scale:
        raise NotSymplectic(
            f"block symmetry residual {residual:.3e} exceeds {tol:.1e} * {scale:.3e}"
        )
    return QMatrix.from_complex(a, b)


def unembed(x, tol: float = 1e-10) -> QMatrix:
    """Invert :func:`embed`; raises :class:`NotSymplectic` off the subalgebra."""
    if isinstance(x, ComplexEmbedding):
        x = x.entries
    return _unembed_array(x, tol=tol)


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    """Quaternionic matrix product, computed in real components.

    Expanding every entry product by the defining relations turns the
    quaternionic product into sixteen real matrix products, with no detour
    through the complex embedding.
    """
    a._check_same_dim(b)
    a0, a1, a2, a3 = (a.comp[..., s] for s in range(4))
    b0, b1, b2, b3 = (b.comp[..., s] for s in range(4))
    c0 = a0 @ b0 - a1 @ b1 - a2 @ b2 - a3 @ b3
    c1 = a0 @ b1 + a1 @ b0 + a2 @ b3 - a3 @ b2
    c2 = a0 @ b2 - a1 @ b3 + a2 @ b0 + a3 @ b1
    c3 = a0 @ b3 + a1 @ b2 - a2 @ b1 + a3 @ b0
    return QMatrix(np.stack([c0, c1, c2, c3], axis=-1))


def dagger(m: QMatrix) -> QMatrix:
    """Adjoint: transpose with entrywise quaternionic conjugation."""
    comp = m.comp.transpose(1, 0, 2).copy()
    comp[..., 1:] *= -1.0
    return QMatrix(comp)


def re_trace(m: QMatrix) -> float:
    """Sum of the real parts of the diagonal; the quaternionic trace functional."""
    return float(np.trace(m.comp[..., 0]))


def fro_norm(m: QMatrix) -> float:
    """Frobenius norm ``sqrt(sum |entry|^2)``."""
    return float(np.sqrt(np.sum(m.comp**2)))


def inverse(m: QMatrix) -> QMatrix:
    """Matrix inverse via the complex embedding."""
    return _unembed_array(np.linalg.inv(_embed(m)))


def mat_exp(m: QMatrix, t: float = 1.0) -> QMatrix:
    """Matrix exponential ``exp(M*t)``.

    Computed as ``unembed(expm(chi(M)*t))``; the complex exponential uses
    scaling-and-squaring with a Pade kernel. Raises ``OverflowError`` when
    the result leaves the representable range.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        e = scipy.linalg.expm(_embed(m) * float(t))
    if not np.all(np.isfinite(e)):
        raise OverflowError("matrix exponential overflowed the floating range")
    return _unembed_array(e)


def _normality_residual(m: QMatrix) -> float:
    md = dagger(m)
    return fro_norm(mat_mul(m, md) - mat_mul(md, m))


def standard_spectrum(
    m: QMatrix, tol: float = 1e-8, normal_tol: float = 1e-10
) -> list[tuple[complex, int]]:
    """Right-eigenvalue classes of a normal quaternionic matrix.

    The eigenvalues of the complex embedding occur in conjugate pairs; each
    quaternionic eigenvalue class is reported once through its standard
    representative (non-negative imaginary part) with its multiplicity.
    Raises :class:`NotNormal` when ``M M^dag - M^dag M`` is too large.
    """
    scale = fro_norm(m)
    if _normality_residual(m) > normal_tol * max(scale**2, 1e-30):
        raise NotNormal("matrix is not normal within tolerance")
    eig = np.linalg.eigvals(_embed(m))
    reps = eig.real + 1j * np.abs(eig.imag)
    cluster_tol = tol * max(1.0, np.abs(eig).max())
    # greedy 2-d clustering against running class centroids; adjacency in a
    # lexicographic sort is unreliable when rounding noise splits a class
    centroids: list[complex] = []
    counts: list[int] = []
    for point in reps:
        for idx, center in enumerate(centroids):
            if abs(point - center) <= cluster_tol:
                centroids[idx] = (center * counts[idx] + point) / (counts[idx] + 1)
                counts[idx] += 1
                break
        else:
            centroids.append(point)
            counts.append(1)
    out = []
    for center, count in zip(centroids, counts):
        if count % 2:
            raise NotNormal(
                "eigenvalues failed to pair into conjugate classes; "
                "matrix may be too close to a clustering boundary"
            )
        out.append((complex(center.real, center.imag), count // 2))
    out.sort(key=lambda item: (item[0].real, item[0].imag))
    return out


def energies_by_continuity(h0: QMatrix, hp: QMatrix, steps: int = 16) -> list[float]:
    """Signed energies of ``H0 + Hp`` tracked from the unperturbed spectrum.

    Starts from the standard representatives ``i*E`` of ``H0`` and follows
    each eigenvalue branch of ``chi(H0 + tau*Hp)`` as ``tau`` walks from 0
    to 1, matching branches by nearest distance to a linear prediction.
    This keeps the sign of an energy that crosses zero, which the standard
    representative alone would fold back to positive.
    """
    h0._check_same_dim(hp)
    refs: list[complex] = []
    for lam, mult in standard_spectrum(h0):
        refs.extend([lam] * mult)
    current = np.array(refs, dtype=complex)
    velocity = np.zeros_like(current)
    e0, ep = _embed(h0), _embed(hp)
    for step in range(1, steps + 1):
        tau = step / steps
        candidates = np.linalg.eigvals(e0 + tau * ep)
        predicted = current + velocity
        cost = np.abs(predicted[:, None] - candidates[None, :])
        rows, cols = linear_sum_assignment(cost)
        new = np.empty_like(current)
        new[rows] = candidates[cols]
        velocity = new - current
        current = new
    scale = max(1.0, np.abs(current).max())
    if np.abs(current.real).max() > 1e-8 * scale:
        raise ConstraintViolation(
            "tracked eigenvalues are not purely imaginary; "
            "energy assignment requires an anti-Hermitian total matrix"
        )
    return [float(v) for v in current.imag]


# -- vectors ----------------------------------------------------------------


def _vec_comp(v: Sequence[Quaternion]) -> np.ndarray:
    return np.stack([q.as_array() for q in v])


def mat_vec(m: QMatrix, v: Sequence[Quaternion]) -> tuple[Quaternion, ...]:
    """Apply ``M`` to a column vector (scalars act on the right)."""
    if len(v) != m.n:
        raise DimensionMismatch(f"vector length {len(v)} does not match n={m.n}")
    vc = _vec_comp(v)
    prod = hamilton_product(m.comp, vc[None, :, :])
    out = prod.sum(axis=1)
    return tuple(Quaternion(*row) for row in out)


def vec_scale_right(v: Sequence[Quaternion], q: Quaternion) -> tuple[Quaternion, ...]:
    return tuple(Quaternion(*hamilton_product(u.as_array(), q.as_array())) for u in v)


def vec_inner(u: Sequence[Quaternion], v: Sequence[Quaternion]) -> Quaternion:
    """Right Hilbert space inner product ``sum conj(u_i) v_i``."""
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    acc = np.zeros(4)
    for a, b in zip(u, v):
        acc += hamilton_product(qconj(a).as_array(), b.as_array())
    return Quaternion(*acc)


def vec_outer(u: Sequence[Quaternion], v: Sequence[Quaternion]) -> QMatrix:
    """Outer product ``|u><v| = u v^dag`` as a quaternionic matrix."""
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    uc = _vec_comp(u)
    vc = np.stack([qconj(q).as_array() for q in v])
    comp = hamilton_product(uc[:, None, :], vc[None, :, :])
    return QMatrix(comp)
