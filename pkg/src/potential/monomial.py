"""
Monomials and Shape Products
----------------------------
This module provides Monomial, a sparse Laurent monomial in the diagram variables
with an optional power of the zero region, and ShapeProduct, an exact product of
monomials and their shape parameters M' = 1/(1-M) and M'' = 1 - 1/M.
"""
import logging

from ..errors import BranchPointError

# Configure logging
logger = logging.getLogger(__name__)


class Monomial:
    """A product of variables raised to integer powers."""

    __slots__ = ("powers", "zero")

    def __init__(self, powers=None, zero=0):
        """
        Initialize a monomial.

        Args:
            powers (dict): Variable index -> exponent; zero exponents are dropped
            zero (int): Power of the zero-region factor (positive in the numerator)
        """
        items = (powers or {}).items()
        self.powers = tuple(sorted((int(k), int(e)) for k, e in items if e != 0))
        self.zero = int(zero)

    @classmethod
    def var(cls, index):
        return cls({index: 1})

    @classmethod
    def one(cls):
        return cls()

    def as_dict(self):
        return dict(self.powers)

    def exponent(self, index):
        return self.as_dict().get(index, 0)

    def variables(self):
        return [k for k, _ in self.powers]

    @property
    def is_constant(self):
        return not self.powers and self.zero == 0

    def __mul__(self, other):
        powers = self.as_dict()
        for k, e in other.powers:
            powers[k] = powers.get(k, 0) + e
        return Monomial(powers, self.zero + other.zero)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, exponent):
        return Monomial({k: e * exponent for k, e in self.powers}, self.zero * exponent)

    def inverse(self):
        return self ** -1

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.powers == other.powers and self.zero == other.zero

    def __hash__(self):
        return hash((self.powers, self.zero))

    def __lt__(self, other):
        return (self.zero, self.powers) < (other.zero, other.powers)

    def substitute(self, mapping):
        """
        Replace symbols by variables or constants.

        Args:
            mapping (dict): Symbol -> variable index, 'unit' or 'zero'

        Returns:
            Monomial: The substituted monomial
        """
        powers = {}
        zero = self.zero
        for k, e in self.powers:
            target = mapping[k]
            if target == 'unit':
                continue
            if target == 'zero':
                zero += e
                continue
            powers[target] = powers.get(target, 0) + e
        return Monomial(powers, zero)

    def evaluate(self, x):
        """Value at the point x (sequence of complex numbers)."""
        if self.zero > 0:
            return 0j
        if self.zero < 0:
            raise BranchPointError(f"{self} divides by the zero region")
        value = complex(1.0)
        for k, e in self.powers:
            base = complex(x[k])
            if base == 0:
                raise BranchPointError(f"variable {k + 1} vanishes in {self}")
            value *= base ** e
        return value

    def format(self, names=None):
        def name(k):
            return names[k] if names else f"x{k + 1}"

        def part(items):
            return "*".join(name(k) + (f"^{e}" if e > 1 else "") for k, e in items)

        numerator = [(k, e) for k, e in self.powers if e > 0]
        denominator = [(k, -e) for k, e in self.powers if e < 0]
        top = part(numerator) or "1"
        if self.zero > 0:
            top = "0" if not numerator else f"0*{top}"
        bottom = part(denominator)
        if self.zero < 0:
            bottom = "0" if not bottom else f"0*{bottom}"
        return f"{top}/{bottom}" if bottom else top

    def to_dict(self):
        return {'powers': [[k, e] for k, e in self.powers], 'zero': self.zero}

    @classmethod
    def from_dict(cls, data):
        return cls({k: e for k, e in data['powers']}, data.get('zero', 0))

    def __repr__(self):
        return f"Monomial({self.format()})"

    def __str__(self):
        return self.format()


# Factor kinds: M, M' = 1/(1-M), M'' = 1 - 1/M
PLAIN = "plain"
PRIME = "prime"
DPRIME = "dprime"


class ShapeProduct:
    """An exact product of shape-parameter factors with a sign."""

    def __init__(self, factors=None, sign=1):
        """
        Initialize a shape product.

        Args:
            factors (dict): (kind, Monomial) -> integer exponent
            sign (int): +1 or -1
        """
        self.factors = {key: e for key, e in (factors or {}).items() if e != 0}
        self.sign = 1 if sign >= 0 else -1

    @classmethod
    def from_log_terms(cls, one_minus, plain):
        """
        Canonicalize exp of a sum of logs.

        (1-M)^(-e) becomes M'^e, (1-M)^e becomes (-1)^e M^e M''^e, and all plain
        factors merge into one monomial.

        Args:
            one_minus (dict): Monomial M -> exponent of (1 - M)
            plain (Monomial): Product of the plain monomial factors

        Returns:
            ShapeProduct: The canonical form
        """
        factors = {}
        sign = 1
        for monomial, e in one_minus.items():
            if e == 0:
                continue
            if e < 0:
                key = (PRIME, monomial)
                factors[key] = factors.get(key, 0) - e
            else:
                key = (DPRIME, monomial)
                factors[key] = factors.get(key, 0) + e
                plain = plain * monomial ** e
                if e % 2:
                    sign = -sign
        if not plain.is_constant:
            factors[(PLAIN, plain)] = 1
        return cls(factors, sign)

    def items(self):
        order = {PLAIN: 2, PRIME: 0, DPRIME: 1}
        return sorted(self.factors.items(), key=lambda item: (order[item[0][0]], item[0][1]))

    def evaluate(self, x):
        value = complex(self.sign)
        for (kind, monomial), e in self.items():
            m = monomial.evaluate(x)
            if kind == PLAIN:
                factor = m
            elif kind == PRIME:
                if m == 1:
                    raise BranchPointError(f"({monomial})' is infinite")
                factor = 1.0 / (1.0 - m)
            else:
                if m == 0:
                    raise BranchPointError(f"({monomial})'' is infinite")
                factor = 1.0 - 1.0 / m
            value *= factor ** e
        return value

    def residual(self, x):
        return self.evaluate(x) - 1.0

    def format(self, names=None):
        marks = {PLAIN: "", PRIME: "'", DPRIME: "''"}
        parts = []
        for (kind, monomial), e in self.items():
            text = f"({monomial.format(names)}){marks[kind]}"
            parts.append(text if e == 1 else f"{text}^{e}")
        if self.sign < 0:
            parts.append("(-1)")
        return " ".join(parts) or "1"

    def to_dict(self):
        return {
            'sign': self.sign,
            'factors': [{'kind': kind, 'monomial': m.to_dict(), 'exponent': e}
                        for (kind, m), e in self.items()],
        }

    @classmethod
    def from_dict(cls, data):
        factors = {(f['kind'], Monomial.from_dict(f['monomial'])): f['exponent'] for f in data['factors']}
        return cls(factors, data['sign'])

    def __eq__(self, other):
        return isinstance(other, ShapeProduct) and self.sign == other.sign and self.factors == other.factors

    def __str__(self):
        return self.format()
