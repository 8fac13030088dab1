"""Command-line front end and on-disk formats."""
