"""Command-line front end for the conservative bandit benchmark."""
