"""Command-line front end: session scripts, record emission and the reproduction pipeline."""
