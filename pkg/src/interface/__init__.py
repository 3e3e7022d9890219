# Command-line and service front ends
