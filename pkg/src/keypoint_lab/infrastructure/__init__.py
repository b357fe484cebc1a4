"""Infrastructure layer: codecs, stores, rendering, logging and wiring."""
