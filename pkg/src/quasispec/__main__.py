import sys

from quasispec.cli import main

sys.exit(main())
