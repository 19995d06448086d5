"""Multi-trip single-vehicle routing with AND-type precedence constraints.

Thin package wrapper around the compiled extension module. Installed wheels
carry the extension inside the package; in-tree builds put it on sys.path.
"""

try:
    from ._mtvrp import *  # noqa: F401,F403
    from . import _mtvrp as _ext
except ImportError:  # pragma: no cover - in-tree build layout
    from _mtvrp import *  # noqa: F401,F403
    import _mtvrp as _ext

__version__ = "0.1.0"
__all__ = [name for name in dir(_ext) if not name.startswith("_")]
