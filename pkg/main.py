#!/usr/bin/env python3
"""
Flag-variety dHYM toolkit entry point.
Usage: python main.py <command> --type A2 --parabolic "" --omega 2,2 ...
"""
from src.cli.commands import main

if __name__ == "__main__":
    main()
