import pytest

from volform.cli import FUNCTIONS
from volform.scalars import make_ring
from volform.textio import parse_expr


@pytest.fixture
def P():
    """``P(text, kind="poly", n=3)`` parses an expression in the given ring."""
    def parse(text, kind="poly", n=3):
        return parse_expr(text, make_ring(kind, n), FUNCTIONS)
    return parse
