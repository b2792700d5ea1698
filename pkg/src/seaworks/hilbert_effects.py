"""Effects on a finite-dimensional complex Hilbert space.

An effect is a Hermitian matrix with spectrum in [0, 1]. Square roots,
support projections and Loewner comparisons all go through the package's
Jacobi eigensolver (``numpy.linalg`` is used only for QR when drawing random
unitaries). Default tolerances: hermiticity 1e-10, Loewner order 1e-9,
quotient certification 1e-8. The support cutoff is 1e-8 relative to the
largest eigenvalue and is shared with the pseudoinverse.

Besides the standard product ``A.B = A^(1/2) B A^(1/2)`` this module holds
the horizontal sum of E(H) with the scalar unit interval, whose product uses
a fixed faithful density operator ``W``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import _kernels
from .ea_core import QuotientWitness, check_sea_samples

TOL_HERM = 1e-10
TOL_LOEWNER = 1e-9
TOL_QUOTIENT = 1e-8
SUPPORT_EPS = 1e-8
# eigenvalues this close to 0 are rounding noise of a singular matrix
ZERO_EIG = 64 * np.finfo(float).eps
_NORMALIZE = 1e-12


class NotAnEffect(ValueError):
    pass


class DegenerateSpectrumError(ValueError):
    """An eigenvalue sits between rounding noise and the support cutoff."""


class NotFaithful(ValueError):
    pass


class QuotientError(ValueError):
    def __init__(self, msg, residuals=None):
        super().__init__(msg)
        self.residuals = residuals or {}


def eigh(a):
    """Ascending eigenvalues and eigenvectors of a Hermitian matrix."""
    return _kernels.jacobi_eigh(np.asarray(a, dtype=np.complex128))


def _herm(m):
    return (m + m.conj().T) / 2


def _mat(x):
    return x.matrix if isinstance(x, MatrixEffect) else np.asarray(x, dtype=np.complex128)


class MatrixEffect:
    """An immutable effect; its eigendecomposition is computed once."""

    __slots__ = ("matrix", "dim", "_w", "_v", "_sqrt")

    def __init__(self, m, tol=TOL_LOEWNER, herm_tol=TOL_HERM):
        m = np.array(m, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError("an effect is a non-empty square matrix")
        scale = max(1.0, float(np.max(np.abs(m))))
        asym = float(np.max(np.abs(m - m.conj().T)))
        if asym > herm_tol * scale:
            raise NotAnEffect(f"matrix is not Hermitian (asymmetry {asym:.2e})")
        m = _herm(m)
        w, v = eigh(m)
        if w[0] < -tol or w[-1] > 1 + tol:
            raise NotAnEffect(f"spectrum [{w[0]:.3g}, {w[-1]:.3g}] leaves [0, 1]")
        if w[0] < 0 or w[-1] > 1:
            w = np.clip(w, 0.0, 1.0)
            m = _herm((v * w) @ v.conj().T)
        self._set(m, w, v)

    def _set(self, m, w, v):
        m.setflags(write=False)
        self.matrix = m
        self.dim = m.shape[0]
        self._w = w
        self._v = v
        self._sqrt = None

    @classmethod
    def _from_parts(cls, m, w, v):
        obj = cls.__new__(cls)
        obj._set(np.array(m, dtype=np.complex128), np.asarray(w, dtype=float), v)
        return obj

    @classmethod
    def from_spectrum(cls, w, basis):
        """``U diag(w) U*`` for a unitary ``U``; ``w`` is clipped to [0, 1]."""
        w = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
        order = np.argsort(w, kind="stable")
        w, basis = w[order], np.asarray(basis, dtype=np.complex128)[:, order]
        return cls._from_parts(_herm((basis * w) @ basis.conj().T), w, basis)

    @classmethod
    def identity(cls, d):
        return cls._from_parts(np.eye(d), np.ones(d), np.eye(d, dtype=np.complex128))

    @classmethod
    def zero(cls, d):
        return cls._from_parts(np.zeros((d, d)), np.zeros(d), np.eye(d, dtype=np.complex128))

    @classmethod
    def diag(cls, values):
        return cls.from_spectrum(values, np.eye(len(values)))

    @property
    def eig(self):
        return self._w, self._v

    @property
    def eigenvalues(self):
        return self._w

    @property
    def sqrt(self) -> np.ndarray:
        """Principal square root; rounding-level eigenvalues map to 0."""
        if self._sqrt is None:
            w = np.where(self._w <= ZERO_EIG, 0.0, self._w)
            s = _herm((self._v * np.sqrt(w)) @ self._v.conj().T)
            s.setflags(write=False)
            self._sqrt = s
        return self._sqrt

    def complement(self) -> "MatrixEffect":
        return MatrixEffect._from_parts(np.eye(self.dim) - self.matrix,
                                        (1.0 - self._w)[::-1], self._v[:, ::-1])

    def scaled(self, lam: float) -> "MatrixEffect":
        if not 0 <= lam <= 1:
            raise ValueError("scale factor must lie in [0, 1]")
        return MatrixEffect._from_parts(self.matrix * lam, self._w * lam, self._v)

    def is_projection(self, tol=TOL_LOEWNER) -> bool:
        """Sharp iff every eigenvalue is 0 or 1 (within ``tol``)."""
        return bool(np.all(np.minimum(self._w, 1.0 - self._w) <= tol))

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"MatrixEffect(dim={self.dim}, spectrum={np.round(self._w, 4).tolist()})"


def as_effect(x) -> MatrixEffect:
    return x if isinstance(x, MatrixEffect) else MatrixEffect(x)


def dist(a, b) -> float:
    """Largest entrywise deviation."""
    return float(np.max(np.abs(_mat(a) - _mat(b))))


def loewner_gap(a, b) -> float:
    """Smallest eigenvalue of ``b - a``; ``a <= b`` iff it is ``>= -tol``."""
    w, _ = eigh(_herm(_mat(b) - _mat(a)))
    return float(w[0])


def loewner_leq(a, b, tol=TOL_LOEWNER) -> bool:
    return loewner_gap(a, b) >= -tol


def oplus(a: MatrixEffect, b: MatrixEffect, tol=TOL_LOEWNER) -> MatrixEffect | None:
    s = a.matrix + b.matrix
    w, _ = eigh(s)
    if w[-1] > 1 + tol:
        return None
    return MatrixEffect(s, tol=tol)


def _same_dim(a, b):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def std_product(a: MatrixEffect, b: MatrixEffect) -> MatrixEffect:
    """``a^(1/2) b a^(1/2)``."""
    _same_dim(a, b)
    s = a.sqrt
    return MatrixEffect(s @ b.matrix @ s)


def _support_mask(w, eps):
    top = float(w[-1])
    if top <= ZERO_EIG:
        return np.zeros(len(w), dtype=bool)
    cut = eps * top
    crowded = (w > ZERO_EIG) & (w <= cut)
    if np.any(crowded):
        raise DegenerateSpectrumError(
            f"eigenvalue {float(w[crowded][0]):.3e} lies between rounding noise and "
            f"the support cutoff {cut:.3e}")
    return w > cut


def support_projection(a: MatrixEffect, eps=SUPPORT_EPS) -> MatrixEffect:
    """Projection onto the range of ``a``: the least projection above it."""
    w, v = a.eig
    keep = _support_mask(w, eps)
    vk = v[:, keep]
    p = _herm(vk @ vk.conj().T)
    return MatrixEffect._from_parts(p, keep.astype(float), v)


def pinv_sqrt(b: MatrixEffect, eps=SUPPORT_EPS) -> np.ndarray:
    """Moore-Penrose inverse of ``b^(1/2)``, sharing the support decision."""
    w, v = b.eig
    keep = _support_mask(w, eps)
    inv = np.zeros(len(w))
    inv[keep] = 1.0 / np.sqrt(w[keep])
    return _herm((v * inv) @ v.conj().T)


def sequential_quotient(a: MatrixEffect, b: MatrixEffect, tol=TOL_QUOTIENT,
                        eps=SUPPORT_EPS) -> QuotientWitness:
    """``a / b``: the unique ``c <= P_b`` with ``b.c = a``.

    Built as ``T T*`` with ``T = pinv(b^(1/2)) a^(1/2)`` and certified by the
    reconstruction residual and ``c <= P_b``. Uniqueness is re-derived:
    any such ``c`` equals ``pinv(b^(1/2)) a pinv(b^(1/2))``.
    """
    _same_dim(a, b)
    gap = loewner_gap(a, b)
    if gap < -TOL_LOEWNER:
        raise QuotientError(f"a is not below b (min eigenvalue of b - a is {gap:.3e})",
                            {"loewner_gap": gap})
    pi = pinv_sqrt(b, eps)
    t = pi @ a.sqrt
    c_raw = _herm(t @ t.conj().T)
    try:
        c = MatrixEffect(c_raw, tol=tol)
    except NotAnEffect as exc:
        raise QuotientError(f"quotient is not an effect: {exc}") from None
    hat = support_projection(b, eps)
    sb = b.sqrt
    res = {
        "reconstruction": dist(sb @ c.matrix @ sb, a),
        "above_hat": max(0.0, -loewner_gap(c, hat)),
        "rederivation": dist(c, pi @ a.matrix @ pi),
    }
    if res["reconstruction"] > tol or res["above_hat"] > tol:
        raise QuotientError("quotient failed certification", res)
    return QuotientWitness(a, b, c, unique=res["rederivation"] <= tol, residuals=res)


class DensityOperator:
    """Positive trace-one matrix; faithful when strictly positive definite."""

    def __init__(self, m, tol=TOL_LOEWNER, eps=SUPPORT_EPS):
        m = np.array(m, dtype=np.complex128)
        if float(np.max(np.abs(m - m.conj().T))) > TOL_HERM:
            raise ValueError("density operator must be Hermitian")
        m = _herm(m)
        w, _ = eigh(m)
        if w[0] < -tol:
            raise ValueError("density operator must be positive")
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > tol:
            raise ValueError(f"density operator has trace {tr}, not 1")
        m.setflags(write=False)
        self.matrix = m
        self.dim = m.shape[0]
        self.eigenvalues = w
        self.faithful = bool(w[0] > eps)

    @classmethod
    def diag(cls, values):
        return cls(np.diag(np.asarray(values, dtype=float)))

    def expect(self, a) -> float:
        """``tr(W a)`` clipped to [0, 1]."""
        return min(1.0, max(0.0, float(np.trace(self.matrix @ _mat(a)).real)))

    def __repr__(self):
        return f"DensityOperator(dim={self.dim}, faithful={self.faithful})"


class RankOneProjection:
    """``P_x``, the projection onto the span of a nonzero vector ``x``."""

    def __init__(self, x):
        x = np.asarray(x, dtype=np.complex128).ravel()
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            raise ValueError("P_x needs a nonzero vector")
        self.vector = x / norm
        self.matrix = np.outer(self.vector, self.vector.conj())
        self.matrix.setflags(write=False)

    def effect(self) -> MatrixEffect:
        d = len(self.vector)
        w = np.zeros(d)
        w[-1] = 1.0
        basis = _complete_basis(self.vector)
        return MatrixEffect._from_parts(self.matrix, w, basis)


def _complete_basis(x):
    """A unitary whose last column is ``x``."""
    d = len(x)
    m = np.eye(d, dtype=np.complex128)
    m[:, 0] = x
    q, r = np.linalg.qr(m)
    q[:, 0] *= r[0, 0] / abs(r[0, 0])
    return np.roll(q, -1, axis=1)


# ---------------------------------------------------------------- random samples


def random_unitary(d, rng) -> np.ndarray:
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_unit_vector(d, rng) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def random_effect(d, rng, rank=None, basis=None) -> MatrixEffect:
    """Uniform spectrum in a Haar-random basis; ``rank`` zeroes the rest."""
    w = rng.uniform(0.0, 1.0, d)
    if rank is not None:
        w[rank:] = 0.0
    u = random_unitary(d, rng) if basis is None else basis
    return MatrixEffect.from_spectrum(w, u)


def random_density(d, rng, floor=0.05) -> DensityOperator:
    w = rng.uniform(floor, 1.0, d)
    w /= w.sum()
    u = random_unitary(d, rng)
    return DensityOperator(_herm((u * w) @ u.conj().T))


def _blocks(d, rng):
    k = int(rng.integers(1, d)) if d > 1 else 1
    return [list(range(k)), list(range(k, d))] if k < d else [list(range(d))]


def block_scalar(basis, blocks, values) -> MatrixEffect:
    """Multiple of the identity on each block of ``basis``."""
    w = np.zeros(basis.shape[0])
    for blk, val in zip(blocks, values):
        w[blk] = val
    return MatrixEffect.from_spectrum(w, basis)


def block_effect(basis, blocks, rng) -> MatrixEffect:
    """Random effect that leaves every block invariant."""
    d = basis.shape[0]
    m = np.zeros((d, d), dtype=np.complex128)
    for blk in blocks:
        k = len(blk)
        u = random_unitary(k, rng)
        w = rng.uniform(0.0, 1.0, k)
        m[np.ix_(blk, blk)] = (u * w) @ u.conj().T
    return MatrixEffect(basis @ m @ basis.conj().T)


# ---------------------------------------------------------------- model


class HilbertEffects:
    """E(H) for ``dim``-dimensional H with the standard product."""

    def __init__(self, dim: int, tol=TOL_LOEWNER):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.tol = tol
        self.zero = MatrixEffect.zero(dim)
        self.one = MatrixEffect.identity(dim)

    def __repr__(self):
        return f"HilbertEffects({self.dim})"

    def oplus(self, a, b):
        return oplus(a, b, self.tol)

    def complement(self, a):
        return a.complement()

    def product(self, a, b):
        return std_product(a, b)

    def hat(self, a):
        return support_projection(a)

    def leq(self, a, b):
        return loewner_leq(a, b, self.tol)

    def is_sharp(self, a):
        return a.is_projection(self.tol)

    def dist(self, a, b):
        return dist(a, b)

    def quotient(self, a, b):
        try:
            return sequential_quotient(a, b)
        except QuotientError as exc:
            return QuotientWitness(a, b, None, residuals=exc.residuals, reason=str(exc))

    def sample(self, rng):
        r = rng.integers(0, 4)
        if r == 0:
            return random_effect(self.dim, rng, rank=int(rng.integers(1, self.dim + 1)))
        return random_effect(self.dim, rng)

    def carrier(self, window=None):
        raise TypeError("E(H) is not finite; draw samples instead")


# ---------------------------------------------------------------- structure checks


def _summary(residuals, tol, applicable=None, extra=None):
    worst = float(max(residuals)) if len(residuals) else 0.0
    out = {"checked": len(residuals), "max_residual": worst, "passed": worst <= tol}
    if applicable is not None:
        out["applicable"] = applicable
    if extra:
        out.update(extra)
    return out


def check_thm48(a_samples, b_pairs, vector_pairs, lambdas, tol=TOL_LOEWNER) -> dict:
    """The three conditions characterising the standard product, f = sqrt.

    (1) ``A.(B1 + B2) = A.B1 + A.B2`` whenever ``B1 + B2 <= I``;
    (2) ``(lam A).B = lam (A.B)``;
    (3) ``<(A.P_x) y, y> = |<A^(1/2) x, y>|^2``.
    Sample lists are consumed in parallel.
    """
    r1, r2, r3 = [], [], []
    skipped = 0
    for a, (b1, b2), (x, y), lam in zip(a_samples, b_pairs, vector_pairs, lambdas):
        s = oplus(b1, b2)
        if s is None:
            skipped += 1
        else:
            r1.append(dist(std_product(a, s), std_product(a, b1).matrix + std_product(a, b2).matrix))
        r2.append(dist(std_product(a.scaled(lam), b1), lam * std_product(a, b1).matrix))
        p = RankOneProjection(x)
        y = np.asarray(y, dtype=np.complex128)
        lhs = float(np.vdot(y, std_product(a, p.effect()).matrix @ y).real)
        rhs = abs(np.vdot(y, a.sqrt @ p.vector)) ** 2
        r3.append(abs(lhs - rhs))
    conds = {
        "additivity": _summary(r1, tol, extra={"skipped": skipped}),
        "scaling": _summary(r2, tol),
        "rank_one": _summary(r3, tol),
    }
    return {"conditions": conds, "tol": tol,
            "passed": all(c["passed"] for c in conds.values())}


def check_sequential_order(pairs, triples, tol=TOL_QUOTIENT) -> dict:
    """Condition (1) on ``pairs`` ``(A, B)`` with ``A <= B``; Condition (2) on
    triples ``(C, A, B)``, kept when ``C.A <= C.B`` up to rounding.

    (2) is checked in its concrete form ``P_C A P_C <= P_C B P_C``, together
    with ``P_C . A = P_C A P_C``.
    """
    r1, fails1 = [], []
    for i, (a, b) in enumerate(pairs):
        try:
            q = sequential_quotient(a, b, tol=tol)
            r1.append(max(q.residuals["reconstruction"], q.residuals["above_hat"]))
        except QuotientError as exc:
            r1.append(float("inf"))
            fails1.append({"index": i, "reason": str(exc)})
    r2, fails2, kept, strict = [], [], 0, 0
    for i, (c, a, b) in enumerate(triples):
        if loewner_gap(std_product(c, a), std_product(c, b)) < -1e3 * ZERO_EIG:
            continue
        kept += 1
        strict += not loewner_leq(a, b)
        p = support_projection(c)
        pap = p.matrix @ a.matrix @ p.matrix
        pbp = p.matrix @ b.matrix @ p.matrix
        r = max(0.0, -loewner_gap(pap, pbp), dist(std_product(p, a), pap))
        r2.append(r)
        if r > tol:
            fails2.append({"index": i, "residual": r})
    c1 = _summary(r1, tol, extra={"counterexamples": fails1[:5]})
    c2 = _summary(r2, tol, applicable=kept, extra={"sampled": len(triples),
                                                   "a_not_below_b": strict,
                                                   "counterexamples": fails2[:5]})
    return {"condition1": c1, "condition2": c2, "tol": tol,
            "passed": c1["passed"] and c2["passed"]}


# ---------------------------------------------------------------- horizontal sum


@dataclass(frozen=True, eq=False)
class HSElement:
    """Element of the horizontal sum of E(H) and [0, 1].

    ``kind`` is ``zero``, ``one``, ``matrix`` (value a MatrixEffect) or
    ``scalar`` (value a float strictly inside (0, 1)).
    """

    kind: str
    value: Any = None

    def __repr__(self):
        if self.kind in ("zero", "one"):
            return self.kind
        if self.kind == "scalar":
            return f"scalar({self.value:.6g})"
        return f"matrix(spectrum={np.round(self.value.eigenvalues, 4).tolist()})"


HS_ZERO = HSElement("zero")
HS_ONE = HSElement("one")


def hs_matrix(m) -> HSElement:
    a = as_effect(m)
    if float(np.max(np.abs(a.matrix))) <= _NORMALIZE:
        return HS_ZERO
    if float(np.max(np.abs(a.matrix - np.eye(a.dim)))) <= _NORMALIZE:
        return HS_ONE
    return HSElement("matrix", a)


def hs_scalar(s) -> HSElement:
    s = float(s)
    if not -_NORMALIZE <= s <= 1 + _NORMALIZE:
        raise ValueError(f"scalar {s} outside [0, 1]")
    if s <= _NORMALIZE:
        return HS_ZERO
    if s >= 1 - _NORMALIZE:
        return HS_ONE
    return HSElement("scalar", s)


def hs_product(e1: HSElement, e2: HSElement, W: DensityOperator) -> HSElement:
    """Product on the horizontal sum; the shared 0 and 1 are handled first.

    ``A.B`` is the standard product, ``a.b = ab``, ``A.a = aA`` and
    ``a.A = a tr(WA)``.
    """
    if not W.faithful:
        raise NotFaithful("the horizontal-sum product needs a faithful W")
    if e1.kind == "zero" or e2.kind == "zero":
        return HS_ZERO
    if e1.kind == "one":
        return e2
    if e2.kind == "one":
        return e1
    if e1.kind == "matrix" and e2.kind == "matrix":
        return hs_matrix(std_product(e1.value, e2.value))
    if e1.kind == "scalar" and e2.kind == "scalar":
        return hs_scalar(e1.value * e2.value)
    if e1.kind == "matrix":
        return hs_matrix(e1.value.matrix * e2.value)
    return hs_scalar(e1.value * W.expect(e2.value))


class HSEffects:
    """Horizontal sum of E(H) and [0, 1] with the product fixed by ``W``."""

    def __init__(self, dim: int, W: DensityOperator | None = None, tol=TOL_LOEWNER):
        W = W if W is not None else DensityOperator(np.eye(dim) / dim)
        if W.dim != dim:
            raise ValueError("W has the wrong dimension")
        if not W.faithful:
            raise NotFaithful("the horizontal-sum product needs a faithful W")
        self.dim = dim
        self.W = W
        self.tol = tol
        self.zero = HS_ZERO
        self.one = HS_ONE

    def __repr__(self):
        return f"HSEffects({self.dim})"

    def oplus(self, a, b):
        if a.kind == "zero":
            return b
        if b.kind == "zero":
            return a
        if a.kind != b.kind or a.kind == "one":
            return None
        if a.kind == "scalar":
            s = a.value + b.value
            return None if s > 1 + self.tol else hs_scalar(min(s, 1.0))
        s = oplus(a.value, b.value, self.tol)
        return None if s is None else hs_matrix(s)

    def complement(self, a):
        if a.kind in ("zero", "one"):
            return HS_ONE if a.kind == "zero" else HS_ZERO
        if a.kind == "scalar":
            return hs_scalar(1.0 - a.value)
        return hs_matrix(a.value.complement())

    def product(self, a, b):
        return hs_product(a, b, self.W)

    def hat(self, a):
        if a.kind == "matrix":
            return hs_matrix(support_projection(a.value))
        return HS_ZERO if a.kind == "zero" else HS_ONE

    def leq(self, a, b):
        if a.kind == "zero" or b.kind == "one":
            return True
        if a.kind != b.kind:
            return False
        if a.kind == "scalar":
            return a.value <= b.value + self.tol
        return loewner_leq(a.value, b.value, self.tol)

    def is_sharp(self, a):
        return a.kind in ("zero", "one") or (a.kind == "matrix" and a.value.is_projection(self.tol))

    def _anchor(self, x, which):
        # distance of x from the shared 0 (which=0) or 1 (which=1)
        if x.kind in ("zero", "one"):
            return 0.0 if (x.kind == "one") == bool(which) else 1.0
        if x.kind == "scalar":
            return abs(x.value - which)
        return float(np.max(np.abs(x.value.matrix - which * np.eye(self.dim))))

    def dist(self, a, b):
        if a.kind == b.kind == "scalar":
            return abs(a.value - b.value)
        if a.kind == b.kind == "matrix":
            return dist(a.value, b.value)
        if a.kind == b.kind:
            return 0.0
        return min(max(self._anchor(a, 0), self._anchor(b, 0)),
                   max(self._anchor(a, 1), self._anchor(b, 1)))

    def quotient(self, a, b):
        if not self.leq(a, b):
            return QuotientWitness(a, b, None, reason="a is not below b")
        if a.kind == "zero":
            return QuotientWitness(a, b, HS_ZERO, unique=True)
        if b.kind == "one":
            return QuotientWitness(a, b, a, unique=True)
        if a.kind == "scalar":
            return QuotientWitness(a, b, hs_scalar(a.value / b.value), unique=True)
        q = HilbertEffects(self.dim, self.tol).quotient(a.value, b.value)
        c = None if q.c is None else hs_matrix(q.c)
        return QuotientWitness(a, b, c, unique=q.unique, residuals=q.residuals, reason=q.reason)

    def sample(self, rng):
        r = int(rng.integers(0, 10))
        if r == 0:
            return HS_ZERO
        if r == 1:
            return HS_ONE
        if r < 6:
            return hs_scalar(rng.uniform(0.01, 0.99))
        return hs_matrix(random_effect(self.dim, rng))


# ---------------------------------------------------------------- suites


def _rng(seed, d):
    return np.random.default_rng([int(seed), int(d)])


def axiom_samples(model: HilbertEffects, n, rng) -> dict:
    """Sample tuples for (S1)-(S5); S4/S5 tuples commute by construction."""
    d = model.dim
    s1, s2, s3, s4, s5 = [], [], [], [], []
    for i in range(n):
        a = model.sample(rng)
        b1 = random_effect(d, rng)
        b2 = std_product(b1.complement(), random_effect(d, rng))
        s1.append((a, b1, b2))
        s2.append(a)
        if i % 2 and d > 1:
            u = random_unitary(d, rng)
            k = int(rng.integers(1, d))
            w1, w2 = np.zeros(d), np.zeros(d)
            w1[:k] = rng.uniform(0.05, 1.0, k)
            w2[k:] = rng.uniform(0.05, 1.0, d - k)
            s3.append((MatrixEffect.from_spectrum(w1, u), MatrixEffect.from_spectrum(w2, u)))
        else:
            s3.append((a, b1))
        u = random_unitary(d, rng)
        blocks = _blocks(d, rng)
        c4 = block_scalar(u, blocks, rng.uniform(0.0, 1.0, len(blocks)))
        s4.append((c4, block_effect(u, blocks, rng), random_effect(d, rng)))
        x = block_effect(u, blocks, rng)
        y = std_product(x.complement(), block_effect(u, blocks, rng))
        s5.append((c4, x, y))
    return {"s1": s1, "s2": s2, "s3": s3, "s4": s4, "s5": s5}


def axioms_suite(d, samples=500, seed=0, tol=TOL_LOEWNER) -> dict:
    model = HilbertEffects(d, tol)
    rng = _rng(seed, d)
    tuples = axiom_samples(model, samples, rng)
    rules = check_sea_samples(model, **tuples)
    lo, hi = 1.0, 0.0
    for a, b, _ in tuples["s1"]:
        s = a.sqrt
        w, _ = eigh(s @ b.matrix @ s)
        lo, hi = min(lo, float(w[0])), max(hi, float(w[-1]))
    spectrum = {"min": lo, "max": hi, "passed": lo >= -tol and hi <= 1 + tol}
    return {"suite": "axioms", "dim": d, "samples": samples, "seed": seed, "tol": tol,
            "rules": rules, "spectrum": spectrum,
            "passed": spectrum["passed"] and all(r["passed"] for r in rules.values())}


def thm48_suite(d, samples=500, seed=0, tol=TOL_LOEWNER) -> dict:
    rng = _rng(seed, d)
    As, Bs, Vs, Ls = [], [], [], []
    for _ in range(samples):
        As.append(random_effect(d, rng))
        b1 = random_effect(d, rng)
        Bs.append((b1, std_product(b1.complement(), random_effect(d, rng))))
        Vs.append((random_unit_vector(d, rng), random_unit_vector(d, rng)))
        Ls.append(float(rng.uniform(0.0, 1.0)))
    rep = check_thm48(As, Bs, Vs, Ls, tol)
    rep.update({"suite": "thm48", "dim": d, "samples": samples, "seed": seed})
    return rep


def order_samples(d, n, rng):
    """Pairs ``A <= B`` and triples for Condition (2).

    Triples come in three flavours: a rank-deficient ``C`` with
    ``P_C A P_C = t P_C B P_C`` and arbitrary blocks off the support (so
    usually ``A`` is not below ``B``), a comparable pair under a random
    ``C``, and unconstrained draws that are kept only if the hypothesis holds.
    """
    pairs, triples = [], []
    for i in range(n):
        a = random_effect(d, rng, rank=int(rng.integers(1, d + 1)))
        b = MatrixEffect(a.matrix + std_product(a.complement(), random_effect(d, rng)).matrix)
        pairs.append((a, b))
        kind = i % 3
        if kind == 0 and d > 1:
            u = random_unitary(d, rng)
            r = int(rng.integers(1, d))
            c = random_effect(d, rng, rank=r, basis=u)
            p = support_projection(c).matrix
            q = np.eye(d) - p
            b0 = random_effect(d, rng).matrix
            t = float(rng.uniform(0.0, 1.0))
            aa = MatrixEffect(t * p @ b0 @ p + q @ random_effect(d, rng).matrix @ q)
            bb = MatrixEffect(p @ b0 @ p + q @ random_effect(d, rng).matrix @ q)
            triples.append((c, aa, bb))
        elif kind == 1:
            triples.append((random_effect(d, rng), a, b))
        else:
            triples.append((random_effect(d, rng), random_effect(d, rng), random_effect(d, rng)))
    return pairs, triples


def thm51_suite(d, samples=500, seed=0, tol=TOL_QUOTIENT) -> dict:
    pairs, triples = order_samples(d, samples, _rng(seed, d))
    rep = check_sequential_order(pairs, triples, tol)
    rep.update({"suite": "thm51", "dim": d, "samples": samples, "seed": seed})
    return rep


def quotient_suite(d, samples=500, seed=0, tol=TOL_QUOTIENT) -> dict:
    """Round trip ``B.(A/B) = A``, recovery of a planted ``C0 <= P_B`` and
    equality of the supports of ``C`` and ``C^(1/2)``."""
    rng = _rng(seed, d)
    rt, rec, ranks = [], [], 0
    for _ in range(samples):
        b = random_effect(d, rng, rank=int(rng.integers(1, d + 1)))
        p = support_projection(b).matrix
        c0 = MatrixEffect(p @ random_effect(d, rng).matrix @ p)
        a = std_product(b, c0)
        q = sequential_quotient(a, b, tol)
        rt.append(dist(std_product(b, q.c), a))
        rec.append(dist(q.c, c0))
        root = MatrixEffect(q.c.sqrt)
        pc = support_projection(q.c)
        # eigenvalues of C^(1/2) are square roots, so the relative cut is sqrt(eps)
        proot = support_projection(root, eps=math.sqrt(SUPPORT_EPS))
        if int(round(pc.trace())) != int(round(proot.trace())) or dist(pc, proot) > tol:
            ranks += 1
    out = {
        "round_trip": _summary(rt, tol),
        "recovery": _summary(rec, tol),
        "support_agreement": {"checked": samples, "mismatches": ranks, "passed": ranks == 0},
    }
    return {"suite": "quotient", "dim": d, "samples": samples, "seed": seed, "tol": tol,
            **out, "passed": all(v["passed"] for v in out.values())}


def hs_witnesses(d=2) -> dict:
    """Explicit pair on which two faithful ``W`` give different products."""
    w1 = DensityOperator.diag([1 / 2, 1 / 2] + [0.0] * (d - 2)) if d == 2 else \
        DensityOperator(np.eye(d) / d)
    w2_vals = np.array([3 / 4, 1 / 4] + [0.0] * (d - 2)) if d == 2 else \
        np.array([1 / 2] + [1 / (2 * (d - 1))] * (d - 1))
    w2 = DensityOperator.diag(w2_vals)
    a = hs_scalar(0.5)
    e = np.zeros(d)
    e[0] = 1.0
    A = hs_matrix(MatrixEffect.diag(e))
    p1, p2 = hs_product(a, A, w1), hs_product(a, A, w2)
    return {"a": 0.5, "A": e.tolist(), "W1": np.real(np.diag(w1.matrix)).tolist(),
            "W2": np.real(np.diag(w2.matrix)).tolist(), "product_W1": p1.value,
            "product_W2": p2.value, "differ": abs(p1.value - p2.value) > TOL_LOEWNER}


def hs_condition2_counterexample(model: HSEffects, rng, tries=1000):
    """Scalar ``c`` with ``c.A <= c.B`` but ``hat(c).A = A`` not below ``B``."""
    c = hs_scalar(0.5)
    for _ in range(tries):
        A = hs_matrix(random_effect(model.dim, rng))
        B = hs_matrix(random_effect(model.dim, rng))
        if A.kind != "matrix" or B.kind != "matrix":
            continue
        lhs, rhs = model.product(c, A), model.product(c, B)
        if model.leq(lhs, rhs) and not model.leq(model.product(model.hat(c), A), B):
            return {"c": 0.5, "A": A.value.matrix.tolist(), "B": B.value.matrix.tolist(),
                    "c.A": lhs.value, "c.B": rhs.value, "hat_c": repr(model.hat(c))}
    return None


def hs_samples(model: HSEffects, n, rng) -> dict:
    d = model.dim
    s1, s2, s3, s4, s5 = [], [], [], [], []
    for i in range(n):
        a = model.sample(rng)
        if i % 2:
            b = hs_scalar(rng.uniform(0.01, 0.99))
            c = hs_scalar(rng.uniform(0.0, 1.0 - b.value)) if i % 4 == 1 else model.complement(b)
        else:
            bm = random_effect(d, rng)
            b = hs_matrix(bm)
            c = hs_matrix(std_product(bm.complement(), random_effect(d, rng)))
        s1.append((a, b, c))
        s2.append(a)
        s3.append((a, model.sample(rng)))
        if i % 2:
            s4.append((hs_scalar(rng.uniform(0, 1)), hs_scalar(rng.uniform(0, 1)), model.sample(rng)))
            s5.append((hs_scalar(rng.uniform(0, 1)), hs_scalar(rng.uniform(0, 0.5)),
                       hs_scalar(rng.uniform(0, 0.5))))
        else:
            u = random_unitary(d, rng)
            blocks = _blocks(d, rng)
            cm = hs_matrix(block_scalar(u, blocks, rng.uniform(0, 1, len(blocks))))
            s4.append((cm, hs_matrix(block_effect(u, blocks, rng)), model.sample(rng)))
            x = block_effect(u, blocks, rng)
            y = std_product(x.complement(), block_effect(u, blocks, rng))
            s5.append((cm, hs_matrix(x), hs_matrix(y)))
    return {"s1": s1, "s2": s2, "s3": s3, "s4": s4, "s5": s5}


def hs_suite(d=3, samples=300, seed=0, tol=TOL_LOEWNER) -> dict:
    rng = _rng(seed, d)
    model = HSEffects(d, random_density(d, rng), tol)
    rules = check_sea_samples(model, **hs_samples(model, samples, rng))
    wit = hs_witnesses(2)
    ce = hs_condition2_counterexample(model, rng)
    cond1 = []
    for _ in range(samples // 3):
        x, y = model.sample(rng), model.sample(rng)
        a, b = (x, y) if model.leq(x, y) else (y, x) if model.leq(y, x) else (HS_ZERO, y)
        q = model.quotient(a, b)
        cond1.append(float("inf") if q.c is None else model.dist(model.product(b, q.c), a))
    c1 = _summary(cond1, TOL_QUOTIENT)
    return {"suite": "hs", "dim": d, "samples": samples, "seed": seed, "tol": tol,
            "rules": rules, "distinct_W": wit, "condition1": c1,
            "condition2_counterexample": ce,
            "passed": all(r["passed"] for r in rules.values()) and wit["differ"]
            and ce is not None and c1["passed"]}


SUITES = {
    "axioms": axioms_suite,
    "thm48": thm48_suite,
    "thm51": thm51_suite,
    "quotient": quotient_suite,
    "hs": hs_suite,
}


def run_suite(name, dim, samples, seed=0, tol=None) -> dict:
    fn = SUITES[name]
    return fn(dim, samples, seed) if tol is None else fn(dim, samples, seed, tol)
