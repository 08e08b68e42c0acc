"""
Main entry point for the surrocep command-line tool
"""
import sys

from presentation.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
