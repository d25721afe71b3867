"""Python bindings for the excalc C++ core.

Exposes symbolic scalar fields and exterior forms with Wirtinger calculus,
plus a small quadrature helper; the heavy machinery (bundles, Chern-Weil,
Cech-de Rham, residues) lives in the C++ CLI.
"""
from _excalc import ExcalcError, Form, ScalarField, integrate_circle

__all__ = ["ExcalcError", "Form", "ScalarField", "integrate_circle"]
