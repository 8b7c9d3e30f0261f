import sys

from degrank.cli import main

sys.exit(main())
