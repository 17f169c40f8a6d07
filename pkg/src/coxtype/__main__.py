"""Entry point for running coxtype as a module: python -m coxtype."""

from coxtype.cli import main

if __name__ == "__main__":
    main()
