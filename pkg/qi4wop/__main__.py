"""Entry point for ``python -m qi4wop``."""

import sys

from .cli import main

sys.exit(main())
