"""Pull a usable numeric or categorical answer out of free-form response text."""

from __future__ import annotations

import re
from typing import Optional

# Accepted unit spellings per query unit, with multiplicative conversion
# factors into the query unit. Anything else in the response is out of band.
_UNIT_FORMS: dict[str, dict[str, float]] = {
    "GPa": {"gpa": 1.0, "gigapascal": 1.0, "gigapascals": 1.0, "mbar": 100.0},
    "eV": {"ev": 1.0, "electronvolt": 1.0, "electronvolts": 1.0, "mev": 1e-3},
    "eV/atom": {
        "ev/atom": 1.0,
        "ev per atom": 1.0,
        "mev/atom": 1e-3,
        "mev per atom": 1e-3,
    },
    "µB/f.u.": {
        "µb/f.u.": 1.0,
        "μb/f.u.": 1.0,
        "ub/f.u.": 1.0,
        "µb per formula unit": 1.0,
        "μb per formula unit": 1.0,
        "bohr magnetons per formula unit": 1.0,
        "µb": 1.0,
        "μb": 1.0,
        "ub": 1.0,
    },
}

_NUMBER = r"[-+]?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?"

_ORDERING_FORMS: list[tuple[str, str, int]] = [
    # Word forms are case-insensitive; the short codes must match exactly.
    (r"\bantiferromagnetic\b", "AFM", re.IGNORECASE),
    (r"\bferrimagnetic\b", "FiM", re.IGNORECASE),
    (r"\bferromagnetic\b", "FM", re.IGNORECASE),
    (r"\bnon[- ]?magnetic\b", "NM", re.IGNORECASE),
    (r"\bAFM\b", "AFM", 0),
    (r"\bFiM\b", "FiM", 0),
    (r"\bFM\b", "FM", 0),
    (r"\bNM\b", "NM", 0),
    (r"\bunknown\b", "unknown", re.IGNORECASE),
]

ORDERING_LABELS = ("FM", "FiM", "AFM", "NM", "unknown")


def _unit_patterns(unit: str) -> list[tuple[re.Pattern, float]]:
    forms = _UNIT_FORMS.get(unit)
    if forms is None:
        raise ValueError(f"unsupported unit {unit!r}")
    patterns = []
    for text, factor in sorted(forms.items(), key=lambda kv: -len(kv[0])):
        escaped = re.escape(text).replace(r"\ ", r"\s+")
        patterns.append(
            (re.compile(rf"({_NUMBER})\s*{escaped}(?![A-Za-z])", re.IGNORECASE), factor)
        )
    return patterns


def extract_numeric(response: str, unit: str) -> Optional[float]:
    """Last number adjacent to a recognized spelling of ``unit``, converted.

    Returns None when no unit-qualified number is present (refusals, bare
    numbers, foreign units).
    """
    best: tuple[int, float] | None = None
    for pattern, factor in _unit_patterns(unit):
        for m in pattern.finditer(response):
            pos = m.start()
            if best is None or pos >= best[0]:
                best = (pos, float(m.group(1)) * factor)
    return None if best is None else best[1]


def extract_ordering(response: str) -> Optional[str]:
    """Last magnetic-ordering label mentioned in the response."""
    best: tuple[int, str] | None = None
    for pattern_text, label, flags in _ORDERING_FORMS:
        for m in re.finditer(pattern_text, response, flags):
            if best is None or m.start() > best[0]:
                best = (m.start(), label)
    return None if best is None else best[1]


def extract_value(response: str, property_name: str, unit: str | None) -> Optional[object]:
    """Extract the answer for one property; None signals an invalid response."""
    if not response or not response.strip():
        return None
    if property_name == "magnetic_ordering":
        return extract_ordering(response)
    if not unit or unit == "none":
        # Unitless numeric property: take the last bare number.
        matches = list(re.finditer(_NUMBER, response))
        return float(matches[-1].group(0)) if matches else None
    return extract_numeric(response, unit)
