"""Permet `python -m polarisation_likes`."""

import sys

from polarisation_likes.cli import main

sys.exit(main())
