"""Request/response schemas, handlers, and the HTTP app wrapping the core."""
