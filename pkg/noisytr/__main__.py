import sys

from noisytr.main import main

sys.exit(main())
