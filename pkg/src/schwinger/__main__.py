"""Allow ``python -m schwinger`` alongside the console script."""
import sys

from .cli import main

sys.exit(main())
