from ._chatsumm import *  # noqa: F401,F403
from ._chatsumm import __version__  # noqa: F401
