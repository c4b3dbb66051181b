"""Module entry point: ``python -m mrucc``."""

import sys

from .cli import main

sys.exit(main())
