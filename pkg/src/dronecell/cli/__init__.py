"""Command-line front end: scenario files, reports, and subcommands."""
