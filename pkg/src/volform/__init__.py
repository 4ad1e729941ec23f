"""Exact volume-form Cartan calculus and the Leibniz algebra of (n-2)-forms."""
from .scalars import (GaussianRational, Poly, PolyRing, Trig, TrigRing, derive,
                      integrate_torus, make_ring, poly_ring, primitive_in_axis, trig_ring)
from .forms import (Decomposable, DegreeError, Form, MultiVec, NotDecomposableError,
                    contract, d, delta, delta_explicit, divergence, flat,
                    hamiltonian_field, hamiltonian_field_bivector, leibniz_bracket,
                    leibniz_bracket_bivector, lie_bracket, lie_derivative, sharp, wedge)

__version__ = "0.1.0"
