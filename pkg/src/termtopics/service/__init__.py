"""Persistence, HTTP API and CLI around the topic detection pipeline."""
