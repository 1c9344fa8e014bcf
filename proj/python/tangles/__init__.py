from tangles._core import *  # noqa: F401,F403
from tangles._core import __version__  # noqa: F401
