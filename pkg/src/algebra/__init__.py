# Finite-field and exact rational linear algebra
