import sys

from deltashock.cli import main

sys.exit(main())
