from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from utils.config import Config


def format_number(value: Union[int, float, Fraction], decimal_places: int = 12) -> str:
    """Format an exact or floating value for reports.

    Args:
        value: Rational or floating point number
        decimal_places: Significant digits kept for floats

    Returns:
        "p/q" for exact values, a %g rendering for floats
    """
    if isinstance(value, float):
        return f"{value:.{decimal_places}g}"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_index(indices: Iterable[int]) -> str:
    """Render zero-based tensor indices one-based, e.g. (0, 1) -> "12"."""
    return "".join(str(i + 1) for i in indices)


def format_christoffel(k: int, m: int, l: int) -> str:
    """Label of the Christoffel coefficient Gamma^k_{ml} (zero-based input)."""
    return f"Gamma^{k + 1}_{m + 1}{l + 1}"


def format_multi_index(alpha: Sequence[int]) -> str:
    """Comma string key used in operator files, e.g. (2, 1) -> "2,1"."""
    return ",".join(str(a) for a in alpha)


def truncate_expression(text: str, chars: Optional[int] = None) -> str:
    """Truncate a long expression for log output.

    Args:
        text: The expression text
        chars: Number of characters to keep in total (Config.EXPRESSION_PREVIEW by default)

    Returns:
        Truncated expression string
    """
    chars = Config.EXPRESSION_PREVIEW if chars is None else chars
    if not isinstance(text, str) or len(text) <= chars:
        return text
    keep = max(chars // 2 - 2, 1)
    return f"{text[:keep]} ... {text[-keep:]}"
