"""quandlekit: exact computation with finite quandles and the groups around them."""

from .errors import QuandleKitError

__all__ = ["QuandleKitError"]
__version__ = "0.1.0"
