import sys

from drinfeld_covers.cli import main

sys.exit(main())
