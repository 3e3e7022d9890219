# Blocked fractional factorial plans over prime fields
