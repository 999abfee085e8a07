"""Random Coxeter groups: labelled random graphs, nerves, hyperbolicity and FC-type."""
