"""Python surface of the addition benchmark core."""

try:
    from addbench._addbench import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout: module sits next to the package
    from _addbench import *  # noqa: F401,F403

__version__ = "0.1.0"
