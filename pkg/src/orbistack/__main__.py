import sys

from orbistack.cli import main

sys.exit(main())
