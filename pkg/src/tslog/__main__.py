import sys

from tslog.cli import main

sys.exit(main())
