# Linear-model analysis, search and claim checking
