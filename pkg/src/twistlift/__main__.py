import sys

from twistlift.cli import main

sys.exit(main())
