"""Column schemas for the tables magflow reads and writes."""
