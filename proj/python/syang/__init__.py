from ._syang import *  # noqa: F401,F403
from ._syang import __doc__  # noqa: F401
