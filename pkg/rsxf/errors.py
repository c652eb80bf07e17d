"""Exception hierarchy shared by the codec, the container tools and the CLI."""

from __future__ import annotations

from typing import Any, Dict, Optional


class RsxfError(Exception):
    """Base class for every error raised by rsxf."""


class FieldConstructionError(RsxfError, ValueError):
    """Unsupported field size or a reduction polynomial that is not primitive."""


class GFZeroDivisionError(RsxfError, ZeroDivisionError):
    """Inversion of the zero element or division by the zero polynomial."""


class BasisConstructionError(RsxfError, ValueError):
    """Basis of the wrong size or with linearly dependent elements."""


class TransformSizeError(RsxfError, ValueError):
    """Transform level above m or an input that is not 2^k long."""


class DegreeOverflowError(RsxfError, ValueError):
    """Product degree outside the supported range."""


class NewtonInputError(RsxfError, ValueError):
    """Newton iteration input is not of degree 2^j - 1."""


class HgcdPreconditionError(RsxfError, ValueError):
    """Half-GCD called outside its degree contract."""


class InvariantViolation(RsxfError, AssertionError):
    """A self-checking postcondition did not hold."""


class CodeParamsError(RsxfError, ValueError):
    """Invalid (m, t) code configuration."""


class SizeMismatchError(RsxfError, ValueError):
    """Message or received word of the wrong length."""


class KeyEquationError(RsxfError, ValueError):
    """Key equation asked to solve for a zero syndrome."""


class LocatorError(RsxfError, ValueError):
    """Error locator that is zero or longer than the correction radius allows."""


class ErrorValueError(RsxfError):
    """Derivative of the error locator vanishes at a located root."""


class ContainerError(RsxfError, ValueError):
    """Structured failure while reading or writing an RSXF container."""

    def __init__(self, code: str, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail
        self.context = context or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"status": "error", "code": self.code, "detail": self.detail, **self.context}
