"""Canonical number handling: 3-decimal precision everywhere we emit."""


def q3(x: float) -> float:
    """Quantize to 3 decimals; the double nearest the decimal value."""
    return round(float(x), 3)


def fmt_number(x: float) -> str:
    """Format a float at 3-decimal precision without trailing zeros.

    ``float(fmt_number(x)) == q3(x)`` holds for finite x, so quantized
    values survive a text round trip unchanged.
    """
    v = q3(x)
    if v == 0.0:
        v = 0.0  # normalize -0.0
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return s if s else "0"


def try_parse_float(s):
    """float(s) or None; tolerates surrounding whitespace and a px suffix."""
    if s is None:
        return None
    t = s.strip()
    if t.endswith("px"):
        t = t[:-2].strip()
    try:
        return float(t)
    except ValueError:
        return None
