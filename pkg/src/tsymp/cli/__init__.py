from .codec import read_tensor, write_tensor
from .main import main

__all__ = ["main", "read_tensor", "write_tensor"]
