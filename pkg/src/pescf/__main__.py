import sys

from pescf.cli import main

sys.exit(main())
