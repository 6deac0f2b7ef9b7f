"""Allow ``python -m nckit`` to behave like the installed console script."""

from .cli import run

if __name__ == "__main__":
    run()
