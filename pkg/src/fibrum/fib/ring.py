from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import FormatError, PreconditionError
from ..util import is_prime


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: integers, rationals, or a prime field."""

    tag: str
    p: int = 0

    def __post_init__(self):
        if self.tag not in ("Z", "Q", "Fp"):
            raise PreconditionError(f"unknown ring tag {self.tag!r}")
        if self.tag == "Fp" and not is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.tag == "Fp" else self.tag

    @property
    def is_field(self) -> bool:
        return self.tag != "Z"

    def coerce(self, v):
        if self.tag == "Z":
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise PreconditionError(f"{v} is not an integer")
                return int(v.numerator)
            return int(v)
        if self.tag == "Q":
            return Fraction(v)
        v = Fraction(v)
        return v.numerator * pow(v.denominator, -1, self.p) % self.p

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        return (a + b) % self.p if self.tag == "Fp" else a + b

    def mul(self, a, b):
        return (a * b) % self.p if self.tag == "Fp" else a * b

    def neg(self, a):
        return (-a) % self.p if self.tag == "Fp" else -a

    def inv(self, a):
        if self.tag == "Z":
            if a not in (1, -1):
                raise PreconditionError(f"{a} is not a unit in Z")
            return a
        if self.tag == "Q":
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        try:
            return self.coerce(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad coefficient {s!r}") from exc

    @classmethod
    def from_name(cls, name: str) -> "Ring":
        if name in ("Z", "Q"):
            return cls(name)
        if name.startswith("F") and name[1:].isdigit():
            return cls("Fp", int(name[1:]))
        raise FormatError(f"unknown ring {name!r}")


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Fp", p)
