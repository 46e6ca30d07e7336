import os
import sys

# keep test runs from writing the application log next to the sources
os.environ.setdefault("LOG_FILE", os.devnull)

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
