import sys

from semiharmonic.cli import main

sys.exit(main())
