import sys

from cycletrace.cli import main

sys.exit(main())
