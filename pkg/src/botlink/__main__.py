import sys

from botlink.cli import main

sys.exit(main())
