"""Dominant weights of A_n, partitions, and the offset vectors rho.

A dominant weight lambda = sum lambda_i omega_i (all lambda_i >= 0)
corresponds to the partition mu with mu_i = sum_{j>=i} lambda_j and
mu_{n+1} = 0.  The conventions omega_0 = omega_{n+1} = 0 are encoded here
once and for all.
"""

from __future__ import annotations


class NotAPartition(ValueError):
    pass


class KOutOfRange(ValueError):
    pass


class DominantWeight:
    """Coefficients (lambda_1, ..., lambda_n) on the fundamental weights."""

    __slots__ = ("n", "coords")

    def __init__(self, coords, n=None):
        coords = tuple(int(c) for c in coords)
        if n is None:
            n = len(coords)
        elif len(coords) != n:
            raise ValueError("expected %d coordinates, got %d" % (n, len(coords)))
        if any(c < 0 for c in coords):
            raise ValueError("not dominant: %r" % (coords,))
        self.n = n
        self.coords = coords

    @classmethod
    def parse(cls, text, n=None):
        return cls([int(s) for s in text.split(",")] if text else [], n)

    def __eq__(self, other):
        return (
            isinstance(other, DominantWeight)
            and self.n == other.n
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.n, self.coords))

    def __repr__(self):
        return "DominantWeight(%r)" % (self.coords,)

    def __str__(self):
        return ",".join(str(c) for c in self.coords)

    def __getitem__(self, i):
        """1-based coordinate access with omega_0 = omega_{n+1} = 0."""
        if 1 <= i <= self.n:
            return self.coords[i - 1]
        if i == 0 or i == self.n + 1:
            return 0
        raise IndexError(i)

    @property
    def size(self):
        """|weight_to_partition(self)| = sum i*lambda_i."""
        return sum(i * c for i, c in enumerate(self.coords, start=1))


class Partition:
    """Weakly decreasing nonnegative integers; trailing zeros normalized away."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise NotAPartition("not weakly decreasing: %r" % (parts,))
        if parts and parts[-1] < 0:
            raise NotAPartition("negative part: %r" % (parts,))
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        self.parts = parts

    @classmethod
    def parse(cls, text):
        return cls([int(s) for s in text.split(",")] if text else [])

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "Partition(%r)" % (self.parts,)

    def __str__(self):
        return ",".join(str(p) for p in self.parts) if self.parts else ""

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        """0-based part access; parts beyond the length are 0."""
        if isinstance(i, slice):
            return self.parts[i]
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    @property
    def size(self):
        return sum(self.parts)

    def padded(self, m):
        if len(self.parts) > m:
            raise ValueError("length %d exceeds %d" % (len(self.parts), m))
        return self.parts + (0,) * (m - len(self.parts))

    def contains(self, other):
        return all(self[i] >= other[i] for i in range(len(other)))


def weight_to_partition(lam):
    """The partition mu with mu_i = sum_{j>=i} lambda_j, mu_{n+1} = 0."""
    parts = []
    total = 0
    for c in reversed(lam.coords):
        total += c
        parts.append(total)
    parts.reverse()
    return Partition(parts)


def partition_to_weight(kappa, n):
    """lambda_i = kappa_i - kappa_{i+1}; requires length(kappa) <= n+1."""
    if len(kappa) > n + 1:
        raise ValueError("partition %r too long for rank %d" % (kappa, n))
    return DominantWeight([kappa[i] - kappa[i + 1] for i in range(n)], n)


def reduce_partition(kappa, nvars=None):
    """Subtract the last part from every part: (kappa - kappa_m (1^m), kappa_m).

    `nvars` is the ambient variable count m; when omitted the partition is
    taken to already include its last part (so a full-length tuple must be
    passed for the shift to be visible).
    """
    if nvars is None:
        nvars = len(kappa)
    if len(kappa) > nvars:
        raise ValueError("partition %r too long for %d variables" % (kappa, nvars))
    shift = kappa[nvars - 1] if len(kappa) == nvars else 0
    if shift == 0:
        return (kappa if isinstance(kappa, Partition) else Partition(kappa), 0)
    return (Partition([p - shift for p in kappa]), shift)


class WeightOffset:
    """The offset rho attached to a multi-index theta in a reduced expansion."""

    __slots__ = ("n", "k", "r", "theta", "value")

    def __init__(self, n, k, r, theta, value):
        self.n = n
        self.k = k
        self.r = r
        self.theta = tuple(theta)
        self.value = tuple(value)

    def add_to(self, lam):
        """Componentwise lam + rho as a raw integer vector (may be negative)."""
        return tuple(a + b for a, b in zip(lam.coords, self.value))

    def __repr__(self):
        return "WeightOffset(value=%r)" % (self.value,)


def rho_offset(theta, k, r, n, variant):
    """The omega-basis offset rho for a multi-index theta in N^{n-1}.

    variant "pieri" includes the (r - |theta|)(omega_k - omega_{k-1}) term;
    variant "recurrence" omits it.  Empty index ranges contribute zero.
    """
    if not 1 <= k <= n:
        raise KOutOfRange("k=%d out of range for n=%d" % (k, n))
    if variant not in ("pieri", "recurrence"):
        raise ValueError("unknown variant %r" % (variant,))
    theta = tuple(theta)
    if len(theta) != n - 1:
        raise ValueError("theta must have %d entries" % (n - 1,))
    if any(x < 0 for x in theta):
        raise ValueError("negative theta entry: %r" % (theta,))

    def th(i):  # 1-based, zero outside 1..n-1
        return theta[i - 1] if 1 <= i <= n - 1 else 0

    size = sum(theta)
    rho = [0] * n  # coefficients on omega_1..omega_n

    def bump(i, c):
        if 1 <= i <= n and c:
            rho[i - 1] += c

    for i in range(1, k - 1):
        bump(i, th(i) - th(i + 1))
    bump(k - 1, th(k - 1))
    if variant == "pieri":
        bump(k, r - size)
        bump(k - 1, -(r - size))
    bump(k + 1, -th(k))
    for i in range(k + 2, n + 1):
        bump(i, th(i - 2) - th(i - 1))
    return WeightOffset(n, k, r, theta, rho)
