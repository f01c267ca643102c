from .images import read_pbm, read_ppm, write_pbm, write_ppm
from .qsig import read_qsig, write_qsig

__all__ = ["read_pbm", "read_ppm", "read_qsig", "write_pbm", "write_ppm", "write_qsig"]
