"""Classification of low-dimensional nilpotent evolution algebras by annihilator extensions."""

__version__ = "0.1.0"
