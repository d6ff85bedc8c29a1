"""Kumar correspondence toolkit: graded modules, Groebner bases and vector bundle triples."""
