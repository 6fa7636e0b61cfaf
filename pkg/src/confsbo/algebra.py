"""Exact scalar and polynomial arithmetic for the whole package.

Four nested rings, all exact (no floating point anywhere):

  Scalar       Gaussian rational  a + b*I  with a, b arbitrary-precision
               rationals.  The base field; fourth roots of unity are exact.
  ParamScalar  univariate polynomial in one distinguished parameter symbol
               (written ``u``) with Scalar coefficients.  The spectral weight
               is kept symbolic so operator identities can be established
               identically in the parameter rather than at samples.
  MPoly        sparse multivariate polynomial in n coordinate variables with
               ParamScalar coefficients.  Exponent vectors are n-tuples.
  RatFunc      quotient of two MPoly.  Always normalized by rational content
               and a deterministic leading-sign rule; full multivariate gcd
               reduction is available via :meth:`RatFunc.reduced`.

Equality of rational functions is decided by cross-multiplication and is
therefore independent of the reduction policy.

Canonical text renderings (``render_*``) are deterministic and are the exact
inverse of the strict parsers (``parse_*``); JSON emitted elsewhere in the
package uses these renderings verbatim.
"""

from __future__ import annotations

import re as _re

try:  # gmpy2 rationals are drop-in compatible with Fraction and much faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as _Q

from math import gcd as _int_gcd

__all__ = [
    "Scalar",
    "ParamScalar",
    "MPoly",
    "RatFunc",
    "rational",
    "scalar",
    "param_u",
    "param_const",
    "param_gcd",
    "mpoly_gcd",
    "parse_rational",
    "parse_scalar",
    "parse_param",
    "parse_mpoly",
    "render_param",
    "render_mpoly",
]

_RATIONAL_RE = _re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text):
    """Parse an exact rational string like ``-3/2``.  Rejects anything else,
    in particular decimal points."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational: {text!r}")
    return _Q(text)


def rational(x):
    """Coerce an int, rational, or exact rational string to the backend type."""
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating point is not allowed in exact arithmetic")
    return _Q(x)


class Scalar:
    """Gaussian rational a + b*I, immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rational(re))
        object.__setattr__(self, "im", rational(im))

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return not self.re and not self.im

    def is_rational(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _as_scalar(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_scalar(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_scalar(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * _as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return _as_scalar(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("Scalar powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return Scalar(self.re, -self.im)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, str)) or type(other) is _Q:
            other = _as_scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- rendering ----------------------------------------------------------
    def render(self):
        """Canonical text form: "0", "-3/2", "I", "1/2-3*I", ..."""
        if not self.im:
            return str(self.re)
        if self.im == 1:
            imag = "I"
        elif self.im == -1:
            imag = "-I"
        else:
            imag = f"{self.im}*I"
        if not self.re:
            return imag
        if self.im > 0:
            return f"{self.re}+{imag}"
        return f"{self.re}{imag}"

    def __repr__(self):
        return f"Scalar({self.render()})"


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, str)) or type(x) is _Q:
        return Scalar(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def scalar(re, im=0):
    return Scalar(re, im)


_SCALAR_RE = _re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)?"
    r"(?:(?P<sign>(?<=.)[+-]|^[+-]?)(?:(?P<ic>\d+(?:/\d+)?)\*)?I)?$"
)


def parse_scalar(text):
    """Strict inverse of :meth:`Scalar.render`."""
    text = text.strip()
    if text == "":
        raise ValueError("empty scalar")
    if "I" not in text:
        return Scalar(parse_rational(text))
    m = _SCALAR_RE.match(text)
    if not m or text.count("I") != 1:
        raise ValueError(f"malformed scalar: {text!r}")
    re_part = m.group("re") or "0"
    sign = m.group("sign") or "+"
    if m.group("re") is None and sign in ("", "+") and not text.startswith("+"):
        # forms like "I", "-I", "3*I" keep the sign inside the groups
        pass
    coeff = m.group("ic") or "1"
    im = parse_rational(coeff)
    if sign == "-":
        im = -im
    return Scalar(parse_rational(re_part), im)


class ParamScalar:
    """Polynomial in the distinguished parameter symbol with Scalar
    coefficients, stored dense by power with the leading coefficient
    nonzero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("ParamScalar is immutable")

    # -- structure ----------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self):
        if not self.coeffs:
            return ZERO
        if len(self.coeffs) > 1:
            raise ValueError("ParamScalar is not constant")
        return self.coeffs[0]

    def leading(self):
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _as_param(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return ParamScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_param(other))

    def __rsub__(self, other):
        return _as_param(other) - self

    def __mul__(self, other):
        other = _as_param(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PARAM_ZERO
        if len(a) == 1:
            c = a[0]
            return ParamScalar([c * x for x in b])
        if len(b) == 1:
            c = b[0]
            return ParamScalar([x * c for x in a])
        out = [ZERO] * (len(a) + len(b) - 1)
        for j, cj in enumerate(a):
            if cj.is_zero():
                continue
            for k, ck in enumerate(b):
                out[j + k] = out[j + k] + cj * ck
        return ParamScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero Scalar constant only."""
        if isinstance(other, ParamScalar):
            other = other.constant()
        other = _as_scalar(other)
        inv = other.inverse()
        return ParamScalar([c * inv for c in self.coeffs])

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise TypeError("ParamScalar powers must be nonnegative integers")
        out = PARAM_ONE
        for _ in range(k):
            out = out * self
        return out

    def eval(self, u0):
        """Exact evaluation at a Scalar; a ring homomorphism."""
        u0 = _as_scalar(u0)
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * u0 + c
        return out

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Scalar)) or type(other) is _Q:
            other = _as_param(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def render(self, name="u"):
        return render_param(self, name)

    def __repr__(self):
        return f"ParamScalar({self.render()})"


def _as_param(x):
    if isinstance(x, ParamScalar):
        return x
    if isinstance(x, (int, Scalar)) or type(x) is _Q:
        return ParamScalar([_as_scalar(x)])
    raise TypeError(f"cannot coerce {type(x).__name__} to ParamScalar")


PARAM_ZERO = ParamScalar()
PARAM_ONE = ParamScalar([ONE])
U = ParamScalar([ZERO, ONE])


def param_u():
    """The parameter symbol itself."""
    return U


def param_const(x):
    return _as_param(x)


def param_gcd(a, b):
    """Monic gcd of two parameter polynomials (Euclid over the Gaussian
    rationals)."""
    a, b = _as_param(a), _as_param(b)
    while not b.is_zero():
        a, b = b, _param_mod(a, b)
    if a.is_zero():
        return PARAM_ZERO
    return a / a.leading()


def _param_mod(a, b):
    if b.is_zero():
        raise ZeroDivisionError("ParamScalar mod by zero")
    r = list(a.coeffs)
    db, lb = b.degree, b.leading()
    while len(r) - 1 >= db and r:
        while r and r[-1].is_zero():
            r.pop()
        if len(r) - 1 < db:
            break
        q = r[-1] / lb
        shift = len(r) - 1 - db
        for k, c in enumerate(b.coeffs):
            r[shift + k] = r[shift + k] - q * c
        r.pop()
    return ParamScalar(r)


def _coeff_sign_token(c):
    """Render one Scalar coefficient as (joiner_sign, body) with ``body``
    suitable for prefixing a monomial."""
    if c.is_rational():
        if c.re < 0:
            return "-", str(-c.re)
        return "+", str(c.re)
    return "+", f"({c.render()})"


def render_param(p, name="u"):
    p = _as_param(p)
    if p.is_zero():
        return "0"
    pieces = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        sign, body = _coeff_sign_token(c)
        if k == 0:
            mono = ""
        elif k == 1:
            mono = name
        else:
            mono = f"{name}^{k}"
        if mono:
            if body == "1":
                body = mono
            else:
                body = f"{body}*{mono}"
        pieces.append((sign, body))
    out = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


class MPoly:
    """Sparse multivariate polynomial over ParamScalar.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero
    ParamScalar coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _as_param(c)
                if c.is_zero():
                    continue
                if len(e) != nvars:
                    raise ValueError("exponent arity mismatch")
                clean[tuple(e)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MPoly is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: _as_param(c)})

    @classmethod
    def var(cls, nvars, k):
        if not 0 <= k < nvars:
            raise IndexError(f"variable index {k} out of range for {nvars} variables")
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): PARAM_ONE})

    # -- structure ----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant(self):
        c = PARAM_ZERO
        for e, v in self.terms.items():
            if sum(e):
                raise ValueError("MPoly is not constant")
            c = v
        return c

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, k):
        return max((e[k] for e in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.nvars, _as_param(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = _as_param(other)
            if c.is_zero():
                return MPoly(self.nvars)
            return MPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise TypeError("MPoly powers must be nonnegative integers")
        out = MPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, k):
        """Exact partial derivative with respect to variable ``k``."""
        if not 0 <= k < self.nvars:
            raise IndexError(f"variable index {k} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                continue
            e2 = list(e)
            e2[k] -= 1
            out[tuple(e2)] = c * e[k]
        return MPoly(self.nvars, out)

    def diff_multi(self, alpha):
        p = self
        for k, a in enumerate(alpha):
            for _ in range(a):
                p = p.diff(k)
                if p.is_zero():
                    return p
        return p

    def eval(self, point):
        """Evaluate at Scalars; coefficients stay ParamScalar."""
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        point = [_as_scalar(x) for x in point]
        out = PARAM_ZERO
        for e, c in self.terms.items():
            m = ONE
            for x, k in zip(point, e):
                if k:
                    m = m * x**k
            out = out + c * m
        return out

    def eval_param(self, u0):
        """Specialize the parameter symbol at a Scalar."""
        u0 = _as_scalar(u0)
        return MPoly(self.nvars, {e: ParamScalar([c.eval(u0)]) for e, c in self.terms.items()})

    def subs_call(self, args):
        """Substitute arbitrary ring elements (e.g. RatFunc or MPoly) for the
        variables.  ``args[k]`` must support +, * and integer powers."""
        if len(args) != self.nvars:
            raise ValueError("substitution arity mismatch")
        powers = [dict() for _ in range(self.nvars)]
        out = None
        for e, c in sorted(self.terms.items()):
            m = None
            for k, d in enumerate(e):
                if not d:
                    continue
                pk = powers[k].get(d)
                if pk is None:
                    pk = args[k] ** d
                    powers[k][d] = pk
                m = pk if m is None else m * pk
            piece = c if m is None else m * c
            out = piece if out is None else out + piece
        return out

    def drop_last_var(self):
        """Project to nvars-1 variables after substituting 0 for the last."""
        out = {}
        for e, c in self.terms.items():
            if e[-1]:
                continue
            out[e[:-1]] = c
        return MPoly(self.nvars - 1, out)

    def append_vars(self, extra):
        """Embed into a ring with ``extra`` more trailing variables."""
        if extra == 0:
            return self
        pad = (0,) * extra
        return MPoly(self.nvars + extra, {e + pad: c for e, c in self.terms.items()})

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Scalar, ParamScalar)) or type(other) is _Q:
            other = MPoly.const(self.nvars, _as_param(other))
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def render(self, varname="x", param_name="u"):
        return render_mpoly(self, varname, param_name)

    def __repr__(self):
        return f"MPoly({self.nvars}; {self.render()})"


def _grlex_key(e):
    return (sum(e), e)


def render_mpoly(p, varname="x", param_name="u"):
    """Graded-lex descending term order; variables are 1-based in the text."""
    if p.is_zero():
        return "0"
    pieces = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            f"{varname}{k + 1}" + (f"^{d}" if d > 1 else "")
            for k, d in enumerate(e)
            if d
        )
        if c.is_constant():
            sign, body = _coeff_sign_token(c.constant())
        else:
            sign, body = "+", f"({render_param(c, param_name)})"
        if mono:
            body = mono if body == "1" else f"{body}*{mono}"
        pieces.append((sign, body))
    out = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Strict parsers for the canonical renderings
# ---------------------------------------------------------------------------

def _split_terms(text):
    """Split on top-level ' + ' / ' - ' (never inside parentheses)."""
    terms, depth, start, sign = [], 0, 0, "+"
    k = 0
    while k < len(text):
        ch = text[k]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", k):
            terms.append((sign, text[start:k]))
            sign, k, start = "+", k + 3, k + 3
            continue
        elif depth == 0 and text.startswith(" - ", k):
            terms.append((sign, text[start:k]))
            sign, k, start = "-", k + 3, k + 3
            continue
        k += 1
    terms.append((sign, text[start:]))
    return terms


def _parse_param_direct(text, name):
    out = PARAM_ZERO
    pow_re = _re.compile(rf"^{_re.escape(name)}(?:\^(\d+))?$")
    for sign, body in _split_terms(text.strip()):
        factors = []
        depth, start = 0, 0
        for k, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "*" and depth == 0:
                factors.append(body[start:k])
                start = k + 1
        factors.append(body[start:])
        coeff = ONE
        power = 0
        seen_coeff = False
        for f in factors:
            m = pow_re.match(f)
            if m:
                power += int(m.group(1) or 1)
            elif f.startswith("(") and f.endswith(")"):
                coeff = coeff * parse_scalar(f[1:-1])
                seen_coeff = True
            else:
                coeff = coeff * Scalar(parse_rational(f))
                seen_coeff = True
        if not seen_coeff and not factors:
            raise ValueError(f"empty term in {text!r}")
        if sign == "-":
            coeff = -coeff
        out = out + ParamScalar([ZERO] * power + [coeff])
    return out


def parse_param_text(text, name="u"):
    return _parse_param_direct(text, name)


# keep the public name simple
parse_param = parse_param_text


def parse_mpoly(text, nvars, varname="x", param_name="u"):
    text = text.strip()
    if text == "0":
        return MPoly.zero(nvars)
    var_re = _re.compile(rf"^{_re.escape(varname)}(\d+)(?:\^(\d+))?$")
    out = MPoly.zero(nvars)
    for sign, body in _split_terms(text):
        factors = []
        depth, start = 0, 0
        for k, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "*" and depth == 0:
                factors.append(body[start:k])
                start = k + 1
        factors.append(body[start:])
        coeff = PARAM_ONE
        exps = [0] * nvars
        for f in factors:
            m = var_re.match(f)
            if m:
                idx = int(m.group(1)) - 1
                if not 0 <= idx < nvars:
                    raise ValueError(f"variable {f!r} out of range")
                exps[idx] += int(m.group(2) or 1)
            elif f.startswith("(") and f.endswith(")"):
                coeff = coeff * parse_param(f[1:-1], param_name)
            else:
                coeff = coeff * _as_param(Scalar(parse_rational(f)))
        if sign == "-":
            coeff = -coeff
        out = out + MPoly(nvars, {tuple(exps): coeff})
    return out


# ---------------------------------------------------------------------------
# Multivariate gcd (primitive pseudo-remainder sequence) for RatFunc.reduced
# ---------------------------------------------------------------------------
# Internally polynomials are flattened to dicts {exponent tuple: Scalar} over
# n + 1 variables, the parameter symbol being the last one.


def _flatten(p):
    out = {}
    for e, c in p.terms.items():
        for k, s in enumerate(c.coeffs):
            if not s.is_zero():
                out[e + (k,)] = s
    return out


def _unflatten(f, nvars):
    groups = {}
    for e, s in f.items():
        base, k = e[:-1], e[-1]
        groups.setdefault(base, {})[k] = s
    terms = {}
    for base, cs in groups.items():
        top = max(cs)
        terms[base] = ParamScalar([cs.get(k, ZERO) for k in range(top + 1)])
    return MPoly(nvars, terms)


def _flat_mul(f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 * c2
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def _flat_sub(f, g):
    out = dict(f)
    for e, c in g.items():
        s = out.get(e)
        s = -c if s is None else s - c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _flat_scale(f, c):
    return {e: v * c for e, v in f.items()}


def _flat_lt(f):
    e = max(f, key=_grlex_key)
    return e, f[e]


def _flat_exact_div(f, d):
    """Exact division; raises ArithmeticError when d does not divide f."""
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    f = dict(f)
    q = {}
    de, dc = _flat_lt(d)
    dc_inv = dc.inverse()
    while f:
        fe, fc = _flat_lt(f)
        qe = tuple(a - b for a, b in zip(fe, de))
        if any(x < 0 for x in qe):
            raise ArithmeticError("inexact polynomial division")
        qc = fc * dc_inv
        q[qe] = qc
        f = _flat_sub(f, _flat_mul({qe: qc}, d))
    return q


def _main_var(f, g):
    n = None
    for poly in (f, g):
        for e in poly:
            for k in range(len(e) - 1, -1, -1):
                if e[k]:
                    n = k if n is None else max(n, k)
                    break
    return n


def _split_main(f, k):
    """View f as univariate in variable k: {deg: flat poly without k}."""
    out = {}
    for e, c in f.items():
        d = e[k]
        e0 = e[:k] + (0,) + e[k + 1:]
        out.setdefault(d, {})[e0] = c
    return out


def _join_main(coeffs, k):
    out = {}
    for d, poly in coeffs.items():
        for e, c in poly.items():
            out[e[:k] + (d,) + e[k + 1:]] = c
    return out


def _flat_content(f, k):
    """gcd of the univariate-in-k coefficients of f."""
    g = {}
    for d, poly in _split_main(f, k).items():
        g = _flat_gcd(g, poly)
    return g


def _flat_normalize(f):
    if not f:
        return f
    _, lc = _flat_lt(f)
    return _flat_scale(f, lc.inverse())


def _prem(f, g, k):
    """Classical pseudo-remainder in variable k: lc(g)^(df-dg+1) f mod g."""
    nv = len(next(iter(g)))
    gs = _split_main(g, k)
    dg = max(gs)
    lg = gs[dg]
    r = f
    while r:
        rs = _split_main(r, k)
        dr = max(rs)
        if dr < dg:
            break
        lr = rs[dr]
        mono = {tuple((dr - dg) if i == k else 0 for i in range(nv)): ONE}
        r = _flat_sub(_flat_mul(r, lg), _flat_mul(_flat_mul(mono, lr), g))
    return r


def _flat_gcd(f, g):
    if not f:
        return _flat_normalize(g)
    if not g:
        return _flat_normalize(f)
    k = _main_var(f, g)
    if k is None:
        return {(0,) * len(next(iter(f))): ONE}
    if not any(e[k] for e in f) or not any(e[k] for e in g):
        # k occurs in only one of them: gcd divides the content in k
        cf = _flat_content(f, k)
        cg = _flat_content(g, k)
        return _flat_gcd(cf, cg)
    cf, cg = _flat_content(f, k), _flat_content(g, k)
    cont = _flat_gcd(cf, cg)
    fp = _flat_exact_div(f, cf)
    gp = _flat_exact_div(g, cg)
    if max(_split_main(fp, k)) < max(_split_main(gp, k)):
        fp, gp = gp, fp
    while gp:
        r = _prem(fp, gp, k)
        if not r:
            fp = gp
            break
        fp, gp = gp, _flat_exact_div(r, _flat_content(r, k))
        if not any(e[k] for e in fp):
            fp = {(0,) * len(next(iter(fp))): ONE}
            break
    pp = _flat_exact_div(fp, _flat_content(fp, k)) if any(e[k] for e in fp) else fp
    return _flat_normalize(_flat_mul(cont, pp))


def mpoly_gcd(a, b):
    """Monic gcd of two MPoly over the Gaussian rationals (parameter symbol
    treated as an extra variable)."""
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    g = _flat_gcd(_flatten(a), _flatten(b))
    if not g:
        return MPoly.zero(a.nvars)
    return _unflatten(g, a.nvars)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

def _q_gcd(a, b):
    """gcd of two nonnegative backend rationals."""
    return _Q(_int_gcd(int(a.numerator) * int(b.denominator),
                       int(b.numerator) * int(a.denominator)),
              int(a.denominator) * int(b.denominator))


def _rat_content(p):
    """Positive rational content over all Scalar components; 0 for zero."""
    g = _Q(0)
    for c in p.terms.values():
        for s in c.coeffs:
            for part in (s.re, s.im):
                if part:
                    part = -part if part < 0 else part
                    g = part if not g else _q_gcd(g, part)
    return g


class RatFunc:
    """Quotient of two MPoly; denominator nonzero.

    Normalization on construction divides out the common rational content and
    fixes the sign of the denominator's graded-lex leading coefficient, which
    keeps coefficient growth bounded without a full gcd.  Equality is decided
    by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MPoly):
            raise TypeError("RatFunc numerator must be an MPoly")
        if den is None:
            den = MPoly.const(num.nvars, 1)
        if not isinstance(den, MPoly):
            raise TypeError("RatFunc denominator must be an MPoly")
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = MPoly.const(num.nvars, 1)
        else:
            cn, cd = _rat_content(num), _rat_content(den)
            g = _q_gcd(cn, cd)
            if g != 1:
                inv = _as_param(Scalar(1 / g))
                num = num * inv
                den = den * inv
        lead = den.terms[max(den.terms, key=_grlex_key)]
        ls = lead.leading()
        if ls.re < 0 or (not ls.re and ls.im < 0):
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def from_mpoly(cls, p):
        return cls(p)

    @classmethod
    def const(cls, nvars, c):
        return cls(MPoly.const(nvars, c))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MPoly):
            return RatFunc(other)
        return RatFunc(MPoly.const(self.nvars, _as_param(other)))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("RatFunc powers must be integers")
        if k < 0:
            return self.reciprocal() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def diff(self, k):
        """Partial derivative by the quotient rule."""
        n = self.num.diff(k) * self.den - self.num * self.den.diff(k)
        return RatFunc(n, self.den * self.den)

    def eval(self, point):
        d = self.den.eval(point)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        n = self.num.eval(point)
        if not (n.is_constant() and d.is_constant()):
            raise ValueError("parameter-dependent value where a Scalar is required")
        return n.constant() / d.constant()

    def __eq__(self, other):
        if isinstance(other, (int, Scalar, ParamScalar, MPoly)) or type(other) is _Q:
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def reduced(self):
        """Fully gcd-reduced representative (optional, potentially costly)."""
        if self.num.is_zero():
            return self
        g = mpoly_gcd(self.num, self.den)
        if g.is_zero() or (g.is_constant() and g.constant().is_constant()):
            return self
        num = _unflatten(_flat_exact_div(_flatten(self.num), _flatten(g)), self.nvars)
        den = _unflatten(_flat_exact_div(_flatten(self.den), _flatten(g)), self.nvars)
        return RatFunc(num, den)

    def render(self, varname="x", param_name="u"):
        n = render_mpoly(self.num, varname, param_name)
        if self.den.is_constant() and self.den.constant() == PARAM_ONE:
            return n
        return f"({n})/({render_mpoly(self.den, varname, param_name)})"

    def __repr__(self):
        return f"RatFunc({self.render()})"
