# Plans, effects, incidence and expansion
