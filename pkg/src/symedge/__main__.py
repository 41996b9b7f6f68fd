import sys

from symedge.cli import main

sys.exit(main())
