"""Slotted active-slot and continuous busy-interval scheduling.

Thin package front for the compiled module. Installed wheels carry the
extension inside the package; in a build tree it sits on sys.path instead,
so fall back to the top-level name.
"""

try:
    from ._chronoshed import *  # noqa: F401,F403
    from . import _chronoshed as _impl
except ImportError:  # build tree: extension lives next to the other binaries
    from _chronoshed import *  # noqa: F401,F403
    import _chronoshed as _impl

__version__ = _impl.__version__
__all__ = sorted(n for n in dir(_impl) if not n.startswith("_"))
