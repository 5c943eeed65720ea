"""Message objects and their size accounting.

A message is a small tuple of non-negative integers plus a 4-bit type tag.
The canonical encoding is self-delimiting: tag, then for each field a 6-bit
bit-length header followed by the field's bits. ``size_bits`` is the exact
length of that encoding, which is what the CONGEST budget check consumes.
Values must stay below 2^63, matching the model assumption that node
weights and identifiers are polynomially bounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

TAG_BITS = 4
LEN_BITS = 6
_MAX_FIELD_BITS = 63


class WireError(ValueError):
    pass


def _field_bits(value: int) -> int:
    if value < 0:
        raise WireError(f"message fields must be non-negative, got {value}")
    width = max(1, value.bit_length())
    if width > _MAX_FIELD_BITS:
        raise WireError(f"message field {value} exceeds {_MAX_FIELD_BITS} bits")
    return width


@dataclass(frozen=True)
class Message:
    """An immutable message: type tag plus integer fields."""

    tag: int
    values: tuple[int, ...] = ()
    size_bits: int = field(init=False)

    def __post_init__(self):
        if not 0 <= self.tag < (1 << TAG_BITS):
            raise WireError(f"tag {self.tag} does not fit in {TAG_BITS} bits")
        bits = TAG_BITS + sum(LEN_BITS + _field_bits(v) for v in self.values)
        object.__setattr__(self, "size_bits", bits)

    @property
    def payload(self) -> bytes:
        """Canonical byte encoding, zero-padded to a byte boundary."""
        acc = self.tag
        length = TAG_BITS
        for v in self.values:
            w = _field_bits(v)
            acc = (acc << LEN_BITS) | w
            acc = (acc << w) | v
            length += LEN_BITS + w
        pad = (-length) % 8
        return (acc << pad).to_bytes((length + pad) // 8, "big")


def decode(payload: bytes, n_fields: int) -> Message:
    """Inverse of ``Message.payload`` given the field count."""
    acc = int.from_bytes(payload, "big")
    total = len(payload) * 8
    pos = 0

    def take(width: int) -> int:
        nonlocal pos
        pos += width
        return (acc >> (total - pos)) & ((1 << width) - 1)

    tag = take(TAG_BITS)
    values = []
    for _ in range(n_fields):
        width = take(LEN_BITS)
        values.append(take(width))
    return Message(tag, tuple(values))
