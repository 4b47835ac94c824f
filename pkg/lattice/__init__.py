from .shells import Shell, shell_count, shell_full, shell_imaginary
from .counts import TripleStat, table_diag222, table_diag222_direct, triple_count

__all__ = [
    "Shell",
    "shell_count",
    "shell_full",
    "shell_imaginary",
    "TripleStat",
    "table_diag222",
    "table_diag222_direct",
    "triple_count",
]
