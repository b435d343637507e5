"""Root-closure membership with re-checkable certificates.

Elements of the localization are written num / PI^j with a PI-power
denominator: since p itself is a PI-power, every p-power denominator
reduces to this shape, and divisibility questions stay exact and
one-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tower import NotDivisibleError, TowerCtx, TowerElem


class HypothesisNotMetError(ValueError):
    """Precondition of a certified construction failed."""


class CertificateSearchError(RuntimeError):
    """A search that is guaranteed to succeed came up empty: library bug."""


class LocalElem:
    """num / PI^denom_exp in canonical form (denominator minimal)."""

    __slots__ = ("num", "denom_exp")

    def __init__(self, num: TowerElem, denom_exp: int = 0, *, _canonical: bool = False):
        if denom_exp < 0:
            raise ValueError("denominator exponent must be non-negative")
        if not _canonical:
            if num.is_zero:
                denom_exp = 0
            else:
                while denom_exp > 0:
                    try:
                        reduced = num.pi_divide(1)
                    except NotDivisibleError:
                        break
                    num = reduced
                    denom_exp -= 1
        self.num = num
        self.denom_exp = denom_exp

    # ------------------------------------------------------------------
    @property
    def ctx(self) -> TowerCtx:
        return self.num.ctx

    @property
    def level(self) -> int:
        return self.num.ctx.level

    @property
    def is_integral(self) -> bool:
        return self.denom_exp == 0

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @classmethod
    def from_tower(cls, num: TowerElem) -> "LocalElem":
        return cls(num, 0, _canonical=True)

    @classmethod
    def zero(cls, ctx: TowerCtx) -> "LocalElem":
        return cls(TowerElem.zero(ctx), 0, _canonical=True)

    def embed(self, to_level: int) -> "LocalElem":
        delta = to_level - self.level
        if delta < 0:
            raise ValueError("can only embed into a deeper level")
        if delta == 0:
            return self
        f = self.ctx.p**delta
        # an irreducible denominator stays irreducible: embedding maps the
        # failing fiber of the PI-division onto a failing fiber
        return LocalElem(self.num.embed(to_level), self.denom_exp * f, _canonical=True)

    # ------------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, int):
            return LocalElem(TowerElem.integer(self.ctx, other), 0, _canonical=True)
        if isinstance(other, TowerElem):
            return LocalElem(other, 0, _canonical=True)
        if isinstance(other, LocalElem):
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.ctx != self.ctx:
            raise ValueError("context mismatch")
        j = max(self.denom_exp, other.denom_exp)
        a = self.num * TowerElem.monomial(self.ctx, j - self.denom_exp, 0, 0)
        b = other.num * TowerElem.monomial(self.ctx, j - other.denom_exp, 0, 0)
        return LocalElem(a + b, j)

    __radd__ = __add__

    def __neg__(self):
        return LocalElem(-self.num, self.denom_exp, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LocalElem(self.num * other, self.denom_exp)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.ctx != self.ctx:
            raise ValueError("context mismatch")
        return LocalElem(self.num * other.num, self.denom_exp + other.denom_exp)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("exponent must be non-negative")
        return LocalElem(self.num**e, self.denom_exp * e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.denom_exp == other.denom_exp

    __hash__ = None

    def __repr__(self):
        if self.denom_exp == 0:
            return f"LocalElem({self.num!r})"
        return f"LocalElem({self.num!r} / PI^{self.denom_exp})"


@dataclass(frozen=True)
class ClosureCert:
    """Witness that elem lies in the root closure: elem^(p^m) is the
    honest ring element ``witness``.  Re-checkable from scratch."""

    elem: LocalElem
    m: int
    witness: TowerElem


@dataclass(frozen=True)
class NotMember:
    """No certificate found with exponent <= m_max.

    This is bound-relative: a larger exponent could still succeed, so
    it is not a proof of non-membership (see definite_nonmember for the
    structural negative that is).
    """

    m_max: int


def membership(c: LocalElem, m_max: int) -> ClosureCert | NotMember:
    """Smallest m <= m_max with c^(p^m) integral, as a certificate."""
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    p = c.ctx.p
    power = c.num
    for m in range(m_max + 1):
        if m:
            power = power**p
        try:
            witness = power.pi_divide(c.denom_exp * p**m)
        except NotDivisibleError:
            continue
        return ClosureCert(c, m, witness)
    return NotMember(m_max)


def validate_cert(cert: ClosureCert) -> bool:
    """Recompute the witness from the element and compare."""
    p = cert.elem.ctx.p
    power = cert.elem.num ** (p**cert.m)
    try:
        witness = power.pi_divide(cert.elem.denom_exp * p**cert.m)
    except NotDivisibleError:
        return False
    return witness == cert.witness


def definite_nonmember(c: LocalElem) -> bool:
    """Structural proof of non-membership for a narrow shape.

    If num mod p is a single monomial with no PI factor, every p-power
    of it is again a single unit-coefficient monomial off the PI line
    (the quotient rewrite maps pure powers to pure powers mod p), so no
    exponent can ever clear the denominator.
    """
    if c.denom_exp == 0:
        return False
    r = c.num.reduce_mod_p()
    if len(r.terms) != 1:
        return False
    ((a, _, _),) = r.terms
    return a == 0


def closure_add(s: ClosureCert, t: ClosureCert) -> ClosureCert:
    """Certificate for the sum of two certified elements.

    The search bound 2*k*p^n + n + 1 (n the larger certificate
    exponent, k the larger denominator exponent) is a proven upper
    bound, so coming up empty is a library bug, not a result.
    """
    if s.elem.ctx != t.elem.ctx:
        raise ValueError("certificates must share a context and level")
    p = s.elem.ctx.p
    n = max(s.m, t.m)
    k = max(s.elem.denom_exp, t.elem.denom_exp)
    bound = 2 * k * p**n + n + 1
    got = membership(s.elem + t.elem, bound)
    if isinstance(got, NotMember):
        raise CertificateSearchError(f"sum certificate missing below bound {bound}")
    return got


def certified_pi_factor(a: TowerElem, n: int, m_max: int | None = None) -> ClosureCert:
    """Certify a / PI given that a^(p^n) is divisible by p.

    The hypothesis makes (a/PI)^(p^n) = a^(p^n)/p an honest ring
    element, so a certificate with exponent <= n always exists; failing
    to find one would be a library bug.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    p = a.ctx.p
    powered = a ** (p**n)
    try:
        powered.p_divide()
    except NotDivisibleError as exc:
        raise HypothesisNotMetError(
            f"a^(p^{n}) is not divisible by p (monomial {exc.monomial})"
        ) from exc
    bound = n if m_max is None else max(n, m_max)
    got = membership(LocalElem(a, 1), bound)
    if isinstance(got, NotMember) or got.m > n:
        raise CertificateSearchError("pi-factor certificate must exist at exponent <= n")
    return got
