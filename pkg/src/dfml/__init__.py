"""Distribution-free modal logic: frames, stable-set semantics, canonical frames, proofs and countermodels."""
