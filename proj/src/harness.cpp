// Placeholder; suite implementation lands with the harness header.
