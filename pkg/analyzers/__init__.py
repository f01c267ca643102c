from .uncertainty import UncertaintyAnalyzer
from .validation import TheoremValidator

__all__ = ["TheoremValidator", "UncertaintyAnalyzer"]
