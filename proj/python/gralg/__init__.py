"""Group relation algebras over finite cyclic groups.

Construction of full group relation algebras from index systems,
measurability analysis of finite atomic relation algebras, scaffold
construction, and explicit complete representations.
"""

from ._gralg import *  # noqa: F401,F403
from ._gralg import __doc__  # noqa: F401
