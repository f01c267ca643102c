from .quaternion import Quaternion
from .signal import Grid1D, Grid2D, GridMask, QSignal1D, QSignal2D

__all__ = ["Grid1D", "Grid2D", "GridMask", "QSignal1D", "QSignal2D", "Quaternion"]
