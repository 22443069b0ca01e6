"""Select the PBW straightening kernel.

The compiled extension is used when it was built and ``COLORQUANT_PURE`` is
not set to a true value; otherwise the pure-Python module is used.  Both
expose the same ``Straightener`` class.
"""

from __future__ import annotations

import os

from . import _straighten as _pure

BACKEND = "python"
Straightener = _pure.Straightener

if os.environ.get("COLORQUANT_PURE", "").lower() not in ("1", "true", "yes"):
    try:
        from . import _straighten_c as _compiled
    except ImportError:
        pass
    else:
        Straightener = _compiled.Straightener
        BACKEND = "cython"

PureStraightener = _pure.Straightener


def compiled_straightener():
    """The compiled class, or None when the extension is unavailable."""
    try:
        from . import _straighten_c
    except ImportError:
        return None
    return _straighten_c.Straightener
