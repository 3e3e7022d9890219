# Report data models
