import sys

from kothe.cli import main

sys.exit(main())
