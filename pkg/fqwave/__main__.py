"""Allow running fqwave as a module: python -m fqwave"""

import sys
from fqwave.cli import main

if __name__ == "__main__":
    sys.exit(main())
