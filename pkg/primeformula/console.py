from rich.console import Console

# Shared by the logging handler; stdout is reserved for command results.
stderr_console = Console(stderr=True)
