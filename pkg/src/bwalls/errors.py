"""Exception hierarchy. Every user-facing failure derives from BwallsError."""
from __future__ import annotations


class BwallsError(Exception):
    pass


class DegenerateQuadraticError(BwallsError, ValueError):
    pass


class LatticeError(BwallsError, ValueError):
    """Bad Gram matrix, wrong signature, or mismatched class dimensions."""


class SignatureError(LatticeError):
    def __init__(self, inertia: tuple[int, int, int]):
        pos, neg, zero = inertia
        super().__init__(
            f"intersection form must have signature (1, rho-1); "
            f"got {pos} positive, {neg} negative, {zero} zero"
        )
        self.inertia = inertia


class EnumerationLimitError(BwallsError, RuntimeError):
    pass


class ChernError(BwallsError, ValueError):
    pass


class WallError(BwallsError, ValueError):
    pass


class NoChamberCrossing(WallError):
    pass


class InputError(BwallsError, ValueError):
    """Malformed surface document or CLI argument."""
