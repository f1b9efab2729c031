"""Python interface to the lidonor core.

The heavy lifting lives in the compiled _lidonor module; this package
just re-exports it under a stable name.
"""

from _lidonor import *  # noqa: F401,F403
from _lidonor import __doc__  # noqa: F401
