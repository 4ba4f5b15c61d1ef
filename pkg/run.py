#!/usr/bin/env python
"""
Simple script to correctly execute the pcoords_quadrics package.
"""
from pcoords_quadrics.main import main

if __name__ == "__main__":
    main()
