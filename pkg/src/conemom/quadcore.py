"""Select the quadrature kernel at import.

The compiled ``_quadcore`` extension is used when it imports; otherwise the
pure-Python twin.  Set ``CONEMOM_PURE_PYTHON=1`` to force the fallback.
"""

import os

from conemom import _quadcore_py

if os.environ.get("CONEMOM_PURE_PYTHON") == "1":
    _impl = _quadcore_py
else:
    try:
        from conemom import _quadcore as _impl
    except ImportError:
        _impl = _quadcore_py

BACKEND = "cython" if _impl is not _quadcore_py else "python"
gk_integrate = _impl.gk_integrate
STATUS_OK = _quadcore_py.STATUS_OK
STATUS_LIMIT = _quadcore_py.STATUS_LIMIT
STATUS_DOMAIN = _quadcore_py.STATUS_DOMAIN

__all__ = ["BACKEND", "gk_integrate", "STATUS_OK", "STATUS_LIMIT", "STATUS_DOMAIN"]
