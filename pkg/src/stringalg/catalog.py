"""A few small string algebras used throughout the examples and tests."""

from .algebra import StringAlgebra


def xy_algebra() -> StringAlgebra:
    """k[x,y]/(xy): one vertex, loops x and y, relations xy and yx."""
    return StringAlgebra.build(["v"], [("x", "v", "v"), ("y", "v", "v")], [("x", "y"), ("y", "x")])


def square_zero_algebra() -> StringAlgebra:
    """k<x,y>/(x^2, y^2)."""
    return StringAlgebra.build(["v"], [("x", "v", "v"), ("y", "v", "v")], [("x", "x"), ("y", "y")])


def gentle_three() -> StringAlgebra:
    """Kronecker pair a, b : 1 -> 2 followed by c : 2 -> 3 with c a = 0."""
    return StringAlgebra.build(["1", "2", "3"], [("a", "2", "1"), ("b", "2", "1"), ("c", "3", "2")],
                               [("c", "a")])


def a2() -> StringAlgebra:
    """The quiver 1 -> 2 with a single arrow."""
    return StringAlgebra.build(["1", "2"], [("a", "2", "1")], [])
