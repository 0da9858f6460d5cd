import sys

from productlocc.cli import main

sys.exit(main())
