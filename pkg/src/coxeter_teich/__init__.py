"""Teichmüller polynomials of alternating-sign Coxeter links of plane trees."""
