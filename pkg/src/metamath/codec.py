"""Self-delimiting binary codes and binary/ASCII conversions.

Bit strings are plain ``str`` objects over the alphabet ``"01"``.
"""

from __future__ import annotations

import enum

from .errors import Malformed, NotTextEncodable, Truncated


class Scheme(str, enum.Enum):
    DOUBLED = "doubled"
    HEADER = "header"
    TWO_HEADER = "two-header"


def check_bits(bits: str) -> str:
    if any(c not in "01" for c in bits):
        raise Malformed(f"not a bit string: {bits!r}")
    return bits


def number_to_bits(n: int) -> str:
    if n < 0:
        raise ValueError("naturals only")
    return format(n, "b")


def bits_to_number(bits: str) -> int:
    if not bits:
        raise ValueError("empty bit string has no value")
    return int(check_bits(bits), 2)


def numeral_length(n: int) -> int:
    """Length of the binary numeral of n; numeral_length(0) == 1."""
    return max(n.bit_length(), 1)


def encode_doubled(payload: str) -> str:
    return "".join(b + b for b in check_bits(payload)) + "01"


def encode_header(payload: str) -> str:
    return encode_doubled(number_to_bits(len(payload))) + payload


def encode_two_header(payload: str) -> str:
    length = number_to_bits(len(payload))
    return encode_doubled(number_to_bits(len(length))) + length + payload


def encode(scheme, payload: str) -> str:
    scheme = Scheme(scheme)
    if scheme is Scheme.DOUBLED:
        return encode_doubled(payload)
    if scheme is Scheme.HEADER:
        return encode_header(payload)
    return encode_two_header(payload)


def _decode_doubled(stream: str) -> tuple[str, str]:
    out = []
    i = 0
    while True:
        pair = stream[i : i + 2]
        if len(pair) < 2:
            raise Truncated(f"stream ends inside a doubled region at bit {i}")
        i += 2
        if pair[0] != pair[1]:
            # either unequal pair terminates; the encoder only writes 01
            return "".join(out), stream[i:]
        out.append(pair[0])


def _take(stream: str, n: int, what: str) -> tuple[str, str]:
    if len(stream) < n:
        raise Truncated(f"{what}: need {n} bits, have {len(stream)}")
    return stream[:n], stream[n:]


def _numeral(bits: str) -> int:
    # numerals have no leading zeros apart from "0" itself
    if not bits or (len(bits) > 1 and bits[0] == "0"):
        raise Malformed(f"bad length numeral {bits!r}")
    return int(bits, 2)


def decode(scheme, stream: str) -> tuple[str, str]:
    """Split one codeword off the front of ``stream``.

    Returns ``(payload, remainder)``; the remainder is left untouched.
    """
    scheme = Scheme(scheme)
    check_bits(stream)
    if scheme is Scheme.DOUBLED:
        return _decode_doubled(stream)
    if scheme is Scheme.HEADER:
        head, rest = _decode_doubled(stream)
        return _take(rest, _numeral(head), "payload")
    head, rest = _decode_doubled(stream)
    length_bits, rest = _take(rest, _numeral(head), "length header")
    return _take(rest, _numeral(length_bits), "payload")


def decode_all(scheme, stream: str) -> list[str]:
    """Decode a concatenation of codewords completely."""
    out = []
    while stream:
        payload, stream = decode(scheme, stream)
        out.append(payload)
    return out


def encoded_length(scheme, n: int) -> int:
    """Closed-form codeword length for an n-bit payload."""
    scheme = Scheme(scheme)
    if scheme is Scheme.DOUBLED:
        return 2 * n + 2
    if scheme is Scheme.HEADER:
        return 2 * numeral_length(n) + 2 + n
    m = numeral_length(n)
    return 2 * numeral_length(m) + 2 + m + n


def text_to_number(text: str) -> int:
    """A leading 1 bit followed by the 8-bit ASCII code of each character."""
    bits = "1"
    for ch in text:
        code = ord(ch)
        if code > 127:
            raise NotTextEncodable(f"{ch!r} is not ASCII")
        bits += format(code, "08b")
    return int(bits, 2)


def number_to_text(n: int) -> str:
    bits = format(n, "b") if n > 0 else ""
    if not bits or (len(bits) - 1) % 8:
        raise NotTextEncodable(f"{n} is not 1 followed by whole octets")
    out = []
    for i in range(1, len(bits), 8):
        code = int(bits[i : i + 8], 2)
        if code > 127:
            raise NotTextEncodable(f"octet {bits[i:i + 8]} is not an ASCII code")
        out.append(chr(code))
    return "".join(out)
