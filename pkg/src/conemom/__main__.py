import sys

from conemom.cli import main

sys.exit(main())
