"""Middleware call representation shared by the COBOL and Java extractors.

A middleware call is the unit of the sequence-alignment alphabet: a family
(CICS / SQL / IMS), a call type within the family (WRITE-FILE, ABEND,
SQL-SELECT, IMS-GN, ...) and a normalized parameter map. Two calls from
opposite sides of a translation compare by (family, call_type) and by the
parameters both sides were able to extract.
"""

from __future__ import annotations

from dataclasses import dataclass, field

FAMILY_CICS = "CICS"
FAMILY_SQL = "SQL"
FAMILY_IMS = "IMS"

FAMILIES = (FAMILY_CICS, FAMILY_SQL, FAMILY_IMS)


def normalize_param_value(value):
    """Normalize one parameter value for cross-language comparison.

    Quotes are stripped, numeric literals compare by value, booleans pass
    through, everything else is compared as a case-preserved string.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, float)):
        return float(value) if isinstance(value, float) else value
    text = str(value).strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in ("'", '"'):
        text = text[1:-1]
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def normalize_params(params: dict) -> dict:
    """Case-fold keys and normalize values; drops None values."""
    out = {}
    for key, value in params.items():
        norm = normalize_param_value(value)
        if norm is not None:
            out[key.lower()] = norm
    return out


@dataclass(frozen=True)
class MiddlewareCall:
    """One typed, parameterized middleware operation.

    ``source_ref`` points back to where the call was found: a COBOL statement
    index or a Java source line, depending on the extractor.
    """

    family: str
    call_type: str
    params: dict = field(default_factory=dict, hash=False, compare=False)
    source_ref: int | None = field(default=None, hash=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "params", normalize_params(self.params))

    def same_type(self, other: "MiddlewareCall") -> bool:
        return self.family == other.family and self.call_type == other.call_type

    def params_equal(self, other: "MiddlewareCall") -> bool:
        """Compare over the keys both sides carry.

        Extractors on each side see different amounts of detail (COBOL option
        lists vs. Java argument values), so only shared keys are comparable;
        a side missing a key is never penalized.
        """
        shared = self.params.keys() & other.params.keys()
        return all(self.params[k] == other.params[k] for k in shared)

    def label(self) -> str:
        return f"{self.family} {self.call_type}"
