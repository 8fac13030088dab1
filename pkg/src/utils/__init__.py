"""Configuration and error types shared across drindex."""
