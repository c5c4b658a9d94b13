"""Module entry point so ``python -m powex`` mirrors the console script."""
from .cli import main

main()
