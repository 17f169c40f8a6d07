"""Root data, Weyl groups, admissible sets, and the Coxeter-type computations."""
